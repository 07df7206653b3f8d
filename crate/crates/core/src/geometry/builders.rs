//! Named example surfaces.

use super::exact::{ExactReal, Rational};
use super::surface::TranslationSurface;
use super::vector::PlanarVector;
use crate::billiards::BilliardTable;
use crate::error::{FlatError, Result};

fn ints(pts: &[(i64, i64)]) -> Vec<(ExactReal, ExactReal)> {
    pts.iter().map(|&(x, y)| (ExactReal::integer(x), ExactReal::integer(y))).collect()
}

/// Unit square with opposite sides glued and its corner marked.
pub fn build_square_torus() -> TranslationSurface {
    TranslationSurface::from_exact(
        &[ints(&[(0, 0), (1, 0), (1, 1), (0, 1)])],
        vec![((0, 0), (0, 2)), ((0, 1), (0, 3))],
        None,
    )
    .expect("integer square is exact")
    .with_label((0, 0), "z")
}

/// Regular octagon with side 1 and opposite sides glued; one cone point of
/// angle 6π.
pub fn build_regular_octagon() -> TranslationSurface {
    let s = ExactReal::parse("sqrt(2)/2").unwrap();
    let z = ExactReal::integer(0);
    let one = ExactReal::integer(1);
    let one_s = one.add(&s).unwrap();
    let two_s = s.add(&s).unwrap();
    let one_2s = one.add(&two_s).unwrap();
    let ms = s.neg();
    let verts = vec![
        (z, z),
        (one, z),
        (one_s, s),
        (one_s, one_s),
        (one, one_2s),
        (z, one_2s),
        (ms, one_s),
        (ms, s),
    ];
    let gluings = (0..4).map(|i| ((0, i), (0, i + 4))).collect();
    TranslationSurface::from_exact(&[verts], gluings, None).expect("octagon coordinates lie in Q(sqrt 2)")
}

/// The barrier table `P_α`: the unit square with a wall `{1/2} × [0, α]`,
/// split into two pieces along the segment from the wall tip to `(1,1)`.
pub fn barrier_table(alpha: &ExactReal) -> Result<BilliardTable> {
    let a = alpha.to_f64();
    if !(a > 0.0 && a < 1.0) {
        return Err(FlatError::InvalidParameter(format!("barrier height {a} outside (0,1)")));
    }
    let half = ExactReal::ratio(1, 2)?;
    let (z, one) = (ExactReal::integer(0), ExactReal::integer(1));
    let left = vec![(z, z), (half, z), (half, *alpha), (one, one), (z, one)];
    let right = vec![(half, z), (one, z), (one, one), (half, *alpha)];
    BilliardTable::from_exact(&[left, right], vec![((0, 2), (1, 2))])
}

/// The barrier surface `ω_α`: unfold `P_α` by its four reflections, drop the
/// removable marked points, and rescale lengths by 1/2 to unit area.
pub fn build_barrier_surface_exact(alpha: &ExactReal) -> Result<TranslationSurface> {
    let unfolded = barrier_table(alpha)?.unfold()?;
    unfolded.forget_marked_points()?.scale(Rational::new(1, 2)?)
}

/// Floating-point barrier surface. Use [`build_barrier_surface_exact`] when
/// α has an exact form, so direction coincidences are decided exactly.
pub fn build_barrier_surface(alpha: f64) -> Result<TranslationSurface> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(FlatError::InvalidParameter(format!("barrier height {alpha} outside (0,1)")));
    }
    let half = PlanarVector::new(0.5, 0.0);
    let tip = PlanarVector::new(0.5, alpha);
    let (o, x1, xy, y1) = (
        PlanarVector::new(0.0, 0.0),
        PlanarVector::new(1.0, 0.0),
        PlanarVector::new(1.0, 1.0),
        PlanarVector::new(0.0, 1.0),
    );
    let table = BilliardTable::new(vec![vec![o, half, tip, xy, y1], vec![half, x1, xy, tip]], vec![((0, 2), (1, 2))])?;
    let unfolded = table.unfold()?.forget_marked_points()?;
    let polys = unfolded.polygons().iter().map(|p| p.iter().map(|v| v.scale(0.5)).collect()).collect();
    Ok(TranslationSurface::from_parts(polys, unfolded.gluings().to_vec(), Some(unfolded.labels().to_vec())))
}

/// Unit square torus with an `a × b` torus glued in along a horizontal slit
/// of length `s`. The slit endpoints become two cone points of angle 4π.
pub fn build_glued_torus(a: f64, b: f64, s: f64) -> Result<TranslationSurface> {
    if !(a > 0.0 && b > 0.0 && s > 0.0 && s < a.min(b) && s < 1.0) {
        return Err(FlatError::InvalidParameter(format!(
            "glued torus needs a, b, s > 0 and s < min(a, b, 1); got a={a}, b={b}, s={s}"
        )));
    }
    let rect = |w: f64, h: f64| {
        vec![
            PlanarVector::new(0.0, 0.0),
            PlanarVector::new(s, 0.0),
            PlanarVector::new(w, 0.0),
            PlanarVector::new(w, h),
            PlanarVector::new(s, h),
            PlanarVector::new(0.0, h),
        ]
    };
    let gluings = vec![
        ((0, 1), (0, 3)),
        ((0, 2), (0, 5)),
        ((1, 1), (1, 3)),
        ((1, 2), (1, 5)),
        ((0, 0), (1, 4)),
        ((0, 4), (1, 0)),
    ];
    let surface = TranslationSurface::from_parts(vec![rect(1.0, 1.0), rect(a, b)], gluings, None);
    surface.topology()?;
    Ok(surface)
}
