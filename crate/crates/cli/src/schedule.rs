//! Parsing of radius schedules and numeric lists.

use flatgap::FlatError;

fn number(s: &str) -> Result<f64, FlatError> {
    let v: f64 = s.trim().parse().map_err(|_| FlatError::Parse(format!("not a number: {s:?}")))?;
    if !v.is_finite() {
        return Err(FlatError::Parse(format!("not a finite number: {s:?}")));
    }
    Ok(v)
}

/// `a,b,c`, or `a..b` stepping by `a`, or `a..b:step`. The result must be
/// positive and strictly increasing.
pub fn radii(arg: &str) -> Result<Vec<f64>, FlatError> {
    let out = if let Some((lo, rest)) = arg.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((hi, step)) => (number(hi)?, number(step)?),
            None => (number(rest)?, number(lo)?),
        };
        let lo = number(lo)?;
        if step <= 0.0 || hi < lo {
            return Err(FlatError::Parse(format!("bad range {arg:?}")));
        }
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        (0..=n).map(|i| lo + step * i as f64).collect()
    } else {
        list(arg)?
    };
    if out.is_empty() || out[0] <= 0.0 || out.windows(2).any(|w| w[1] <= w[0]) {
        return Err(FlatError::Parse(format!("R schedule {arg:?} must be positive and strictly increasing")));
    }
    Ok(out)
}

pub fn list(arg: &str) -> Result<Vec<f64>, FlatError> {
    arg.split(',').filter(|s| !s.trim().is_empty()).map(number).collect()
}

pub fn counts(arg: &str) -> Result<Vec<usize>, FlatError> {
    arg.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| FlatError::Parse(format!("not a count: {s:?}"))))
        .collect()
}

/// A trial count such as `100000` or `1e5`.
pub fn trials(arg: &str) -> Result<u64, FlatError> {
    let v = number(arg)?;
    if v < 1.0 || v.fract() != 0.0 || v > 1e12 {
        return Err(FlatError::Parse(format!("trials must be a positive integer, got {arg:?}")));
    }
    Ok(v as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(radii("10..50").unwrap(), vec![10.0, 20.0, 30.0, 40.0, 50.0]);
        assert_eq!(radii("1..2:0.5").unwrap(), vec![1.0, 1.5, 2.0]);
        assert_eq!(radii("5,10,20").unwrap(), vec![5.0, 10.0, 20.0]);
        assert!(radii("10,5").is_err());
        assert!(radii("0..3:1").is_err());
    }

    #[test]
    fn trial_counts() {
        assert_eq!(trials("1e5").unwrap(), 100_000);
        assert!(trials("2.5").is_err());
        assert!(trials("0").is_err());
    }
}
