//! Exact measure of the level sets `{θ : N^θ_R = k}` by sweeping arc
//! endpoints around the circle.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use serde::Serialize;

use crate::enumeration::HolonomySet;
use crate::geometry::vector::PlanarVector;

/// `2π` as an unevaluated sum of two doubles.
const TAU_LO: f64 = 2.449_293_598_294_706_4e-16;

/// A double-double number `hi + lo`, normalized so `|lo| ≤ ulp(hi)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    const TAU: Dd = Dd { hi: TAU, lo: TAU_LO };

    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let t = s.lo + self.lo + o.lo;
        two_sum(s.hi, t)
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }

    fn cmp(&self, o: &Dd) -> Ordering {
        self.hi.total_cmp(&o.hi).then(self.lo.total_cmp(&o.lo))
    }
}

/// Compensated (Neumaier) sum.
#[derive(Clone, Copy, Debug, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelMeasure {
    pub radius: f64,
    pub sigma: f64,
    pub c: f64,
    /// Distinct vectors with `cR ≤ |v| ≤ R`.
    pub qualifying: usize,
    /// `measure[k] = λ(θ : N^θ_R = k)`.
    pub measure: Vec<f64>,
}

impl LevelMeasure {
    pub fn measure_of(&self, k: usize) -> f64 {
        self.measure.get(k).copied().unwrap_or(0.0)
    }

    /// `λ(k) / 2π`.
    pub fn probability(&self, k: usize) -> f64 {
        self.measure_of(k) / TAU
    }

    pub fn total(&self) -> f64 {
        let mut s = Neumaier::default();
        self.measure.iter().for_each(|&m| s.add(m));
        s.total()
    }

    pub fn first_moment(&self) -> f64 {
        let mut s = Neumaier::default();
        self.measure.iter().enumerate().for_each(|(k, &m)| s.add(k as f64 * m));
        s.total()
    }
}

/// Level-set measures for arcs of half-width `σ/R²` around each vector
/// with `cR ≤ |v| ≤ R`.
pub fn theta_level_measure(set: &HolonomySet, r: f64, sigma: f64, c: f64) -> LevelMeasure {
    let vectors: Vec<PlanarVector> = set
        .distinct_vectors()
        .into_iter()
        .filter(|v| {
            let n = v.norm();
            n > 0.0 && n >= c * r && n <= r
        })
        .collect();
    level_measure_of_arcs(&vectors.iter().map(|v| v.angle()).collect::<Vec<_>>(), sigma / (r * r), r, sigma, c)
}

/// Sweep for arcs of common half-width `h` centred at `centers` (each in
/// `[0, 2π)`).
pub fn level_measure_of_arcs(centers: &[f64], h: f64, r: f64, sigma: f64, c: f64) -> LevelMeasure {
    let full_turns = (2.0 * h / TAU).floor();
    let base = full_turns as usize * centers.len();
    let rem_half = (2.0 * h - full_turns * TAU) / 2.0;
    // (position, is_open): closings sort first at equal positions
    let mut events: Vec<(Dd, bool)> = Vec::with_capacity(4 * centers.len());
    if rem_half > 0.0 {
        for &phi in centers {
            let mut start = two_sum(phi, -rem_half);
            let mut end = two_sum(phi, rem_half);
            if start.hi < 0.0 {
                start = start.add(Dd::TAU);
            }
            if end.cmp(&Dd::TAU) == Ordering::Greater {
                end = end.add(Dd::TAU.neg());
            }
            if start.cmp(&end) == Ordering::Less {
                events.push((start, true));
                events.push((end, false));
            } else {
                // wraps through 0
                events.push((start, true));
                events.push((Dd::TAU, false));
                events.push((Dd::ZERO, true));
                events.push((end, false));
            }
        }
    }
    events.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut sums: Vec<Neumaier> = vec![Neumaier::default(); base + centers.len() + 1];
    let mut level = base;
    let mut prev = Dd::ZERO;
    for (pos, open) in events {
        let len = pos.add(prev.neg()).value();
        if len > 0.0 {
            sums[level].add(len);
        }
        prev = pos;
        if open {
            level += 1;
        } else {
            level -= 1;
        }
    }
    let tail = Dd::TAU.add(prev.neg()).value();
    if tail > 0.0 {
        sums[level].add(tail);
    }
    let mut measure: Vec<f64> = sums.iter().map(Neumaier::total).collect();
    while measure.len() > 1 && measure.last() == Some(&0.0) {
        measure.pop();
    }
    LevelMeasure { radius: r, sigma, c, qualifying: centers.len(), measure }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn single_vector() {
        let s = HolonomySet::from_vectors([PlanarVector::new(10.0, 0.0)], 10.0);
        let m = theta_level_measure(&s, 10.0, 1.0, 0.0);
        assert!((m.measure_of(1) - 2.0 / 100.0).abs() < 1e-17);
        assert!((m.measure_of(0) - (TAU - 0.02)).abs() < 1e-15);
    }

    #[test]
    fn antipodal_disjoint_arcs() {
        let s = HolonomySet::from_vectors([PlanarVector::new(1.0, 0.0), PlanarVector::new(-1.0, 0.0)], 1.0);
        let m = theta_level_measure(&s, 1.0, 0.1, 0.0);
        assert!((m.measure_of(1) - 0.4).abs() < 1e-15);
        assert_eq!(m.measure_of(2), 0.0);
    }

    #[test]
    fn arc_longer_than_circle() {
        let m = level_measure_of_arcs(&[0.5], 4.0, 1.0, 4.0, 0.0);
        // total length 8 = one full turn plus 8 − 2π
        assert!((m.measure_of(2) - (8.0 - TAU)).abs() < 1e-14);
        assert!((m.measure_of(1) - (2.0 * TAU - 8.0)).abs() < 1e-14);
        assert!((m.first_moment() - 8.0).abs() < 1e-14);
    }

    #[test]
    fn coincident_endpoints_leave_no_sliver() {
        let h = PI / 4.0;
        let m = level_measure_of_arcs(&[h, 3.0 * h], h, 1.0, 1.0, 0.0);
        assert_eq!(m.measure.len(), 2);
        assert!((m.measure_of(1) - PI).abs() < 1e-15);
    }
}
