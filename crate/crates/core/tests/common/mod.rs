#![allow(dead_code)]

use std::collections::BTreeSet;

use num_integer::Integer;

/// Primitive integer vectors with `p² + q² ≤ r²`, by brute force.
pub fn gcd_grid(r: f64) -> BTreeSet<(i64, i64)> {
    let m = r.floor() as i64;
    let mut out = BTreeSet::new();
    for p in -m..=m {
        for q in -m..=m {
            if (p, q) != (0, 0) && p.gcd(&q) == 1 && ((p * p + q * q) as f64) <= r * r {
                out.insert((p, q));
            }
        }
    }
    out
}
