use serde::Serialize;

use super::holonomy::{same_ray, HolonomySet};
use crate::geometry::exact::{ExactVector, QuadField};
use crate::geometry::vector::PlanarVector;

/// Group items, already sorted by angle in `[0, 2π)`, into runs along the
/// same ray. The last run is merged into the first when they coincide
/// across angle 0.
pub fn group_by_ray<T>(
    items: &[T],
    field: Option<QuadField>,
    get: impl Fn(&T) -> (PlanarVector, Option<ExactVector>),
) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, item) in items.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if same_ray(field, get(&items[g[0]]), get(item)) => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    if groups.len() > 1 && same_ray(field, get(&items[groups[0][0]]), get(&items[groups[groups.len() - 1][0]])) {
        let mut last = groups.pop().expect("at least two groups");
        last.append(&mut groups[0]);
        groups[0] = last;
    }
    groups
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Direction {
    pub angle: f64,
    pub multiplicity: usize,
    /// Shortest holonomy vector in this direction.
    pub representative: PlanarVector,
}

/// Distinct directions `θ_1 < … < θ_n` of a holonomy set.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct DirectionSet {
    directions: Vec<Direction>,
}

impl DirectionSet {
    pub fn from_directions(mut directions: Vec<Direction>) -> Self {
        directions.sort_by(|a, b| a.angle.total_cmp(&b.angle));
        DirectionSet { directions }
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    /// Number of distinct directions, `Ñ`.
    pub fn distinct_count(&self) -> usize {
        self.directions.len()
    }

    /// Number of holonomy vectors counted with multiplicity, `N`.
    pub fn total_count(&self) -> usize {
        self.directions.iter().map(|d| d.multiplicity).sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.directions.iter().map(|d| d.multiplicity).max().unwrap_or(0)
    }

    pub fn angles(&self) -> Vec<f64> {
        self.directions.iter().map(|d| d.angle).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }
}

pub fn direction_set(set: &HolonomySet) -> DirectionSet {
    let entries = set.entries();
    let groups = group_by_ray(entries, set.field(), |e| (e.vector, e.exact));
    let directions = groups
        .iter()
        .map(|g| {
            let rep = g
                .iter()
                .map(|&i| entries[i].vector)
                .min_by(|a, b| a.norm_sq().total_cmp(&b.norm_sq()))
                .expect("groups are nonempty");
            Direction { angle: rep.angle(), multiplicity: g.len(), representative: rep }
        })
        .collect();
    DirectionSet::from_directions(directions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn two_opposite_vectors() {
        let s = HolonomySet::from_vectors([PlanarVector::new(1.0, 0.0), PlanarVector::new(-1.0, 0.0)], 1.0);
        let d = direction_set(&s);
        assert_eq!(d.angles(), vec![0.0, PI]);
        assert_eq!((d.distinct_count(), d.total_count()), (2, 2));
    }

    #[test]
    fn parallel_vectors_share_a_direction() {
        let v = |x, y| PlanarVector::new(x, y);
        let s = HolonomySet::from_vectors([v(1.0, 1.0), v(2.0, 2.0), v(1.0, -1e-17), v(3.0, 0.0)], 5.0);
        let d = direction_set(&s);
        assert_eq!(d.distinct_count(), 2);
        assert_eq!(d.total_count(), 4);
        assert_eq!(d.max_multiplicity(), 2);
    }

    #[test]
    fn empty_set() {
        assert!(direction_set(&HolonomySet::from_vectors([], 1.0)).is_empty());
    }
}
