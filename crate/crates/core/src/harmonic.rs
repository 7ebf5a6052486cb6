//! Harmonic counterparts of the holomorphy tools: mean-value residuals,
//! Poisson extension on discs and harmonicity maps of pointwise limits.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{CPoint, Disc};
use crate::osgood::classify::{classify_cells, CellMap, ClassifierParams, Property};
use crate::sequence::FunctionSequence;

/// Smallest circle quadrature accepted by the mean-value test.
pub const MIN_MEAN_VALUE_NODES: usize = 32;

/// Cells classified harmonic, exceptional or undetermined.
pub type HarmonicityMap = CellMap;

/// `|u(c) - (1/n) Σ u(c + r e^{2πik/n})|`.
pub fn mean_value_residual(u: impl Fn(CPoint) -> f64, center: CPoint, r: f64, n: usize) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::invalid(format!("radius {r} must be > 0")));
    }
    if n < MIN_MEAN_VALUE_NODES {
        return Err(Error::invalid(format!(
            "mean-value test needs at least {MIN_MEAN_VALUE_NODES} nodes, got {n}"
        )));
    }
    let mean = (0..n)
        .map(|k| u(center + Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64)))
        .sum::<f64>()
        / n as f64;
    Ok((u(center) - mean).abs())
}

/// Angles `2πk/n` of the boundary nodes used by [`poisson_extend`].
pub fn boundary_angles(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| 2.0 * PI * k as f64 / n as f64)
}

/// Trapezoidal Poisson integral of `boundary` (values at equally spaced
/// angles on the circle `|z - center| = radius`) evaluated at `w`.
pub fn poisson_extend(boundary: &[f64], center: CPoint, radius: f64, w: CPoint) -> Result<f64> {
    if boundary.is_empty() {
        return Err(Error::invalid("no boundary values"));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::invalid(format!("radius {radius} must be > 0")));
    }
    let d = w - center;
    let rho = d.norm();
    if !(rho < radius) {
        return Err(Error::invalid(format!("{w} is not inside the circle")));
    }
    let theta_w = d.arg();
    let n = boundary.len();
    let num = radius * radius - rho * rho;
    Ok(boundary
        .iter()
        .zip(boundary_angles(n))
        .map(|(b, t)| b * num / (radius * radius - 2.0 * radius * rho * (t - theta_w).cos() + rho * rho))
        .sum::<f64>()
        / n as f64)
}

/// Mean-value residual of `Re f_j` on the circle `(center, radius)`.
pub(crate) fn mean_value_residual_of(
    seq: &FunctionSequence,
    j: usize,
    center: CPoint,
    radius: f64,
    nodes: usize,
) -> Result<f64> {
    let n = nodes.max(MIN_MEAN_VALUE_NODES);
    let values = (0..n)
        .map(|k| seq.eval(j, center + Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64)))
        .collect::<Result<Vec<_>>>()?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::invalid(format!("radius {radius} must be > 0")));
    }
    let mean = values.iter().map(|v| v.re).sum::<f64>() / n as f64;
    Ok((seq.eval(j, center)?.re - mean).abs())
}

/// Classifies every cell for harmonicity of the pointwise limit of `Re f_j`.
pub fn classify_harmonicity(seq: &FunctionSequence, params: &ClassifierParams) -> Result<HarmonicityMap> {
    classify_cells(&seq.real_part(), params, Property::Harmonic, &mean_value_residual_of)
}

/// `u_j` = Poisson extension to the disc of radius `radius` of the data
/// `Σ_{k=0}^{j} 2^{-k} cos kθ`, sampled at `nodes` boundary points. The
/// declared domain is the concentric disc of radius `0.95 · radius`.
pub fn poisson_family(j_max: usize, radius: f64, nodes: usize) -> Result<FunctionSequence> {
    let disc = Disc::new(Complex64::new(0.0, 0.0), 0.95 * radius)?;
    if nodes < MIN_MEAN_VALUE_NODES {
        return Err(Error::invalid("too few boundary nodes"));
    }
    let data: Vec<Vec<f64>> = (1..=j_max)
        .map(|j| {
            boundary_angles(nodes)
                .map(|t| (0..=j).map(|k| (k as f64 * t).cos() / 2f64.powi(k as i32)).sum())
                .collect()
        })
        .collect();
    Ok(FunctionSequence::new(j_max, "Poisson extensions", move |j, z| {
        let v = poisson_extend(&data[j - 1], Complex64::new(0.0, 0.0), radius, z).unwrap_or(f64::NAN);
        Complex64::new(v, 0.0)
    })?
    .with_domain(disc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CellGrid;
    use crate::osgood::{classify_holomorphy, Verdict};
    use crate::sequence::{constant, geometric_partial_sums, koebe_partial_sums};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mean_value_oracles() {
        let o = c(0.0, 0.0);
        assert!(mean_value_residual(|z| (z * z).re, o, 0.5, 64).unwrap() < 1e-12);
        assert!((mean_value_residual(|z| z.norm_sqr(), o, 0.5, 64).unwrap() - 0.25).abs() < 1e-12);
        assert_eq!(mean_value_residual(|_| 7.0, o, 0.5, 64).unwrap(), 0.0);
        assert!(mean_value_residual(|_| 7.0, o, 0.0, 64).is_err());
        assert!(mean_value_residual(|_| 7.0, o, 0.5, 31).is_err());
    }

    #[test]
    fn poisson_oracles() {
        let o = c(0.0, 0.0);
        let ones = vec![1.0; 128];
        assert!((poisson_extend(&ones, o, 1.0, c(0.4, -0.3)).unwrap() - 1.0).abs() < 1e-12);
        let cos1: Vec<f64> = boundary_angles(256).map(f64::cos).collect();
        assert!((poisson_extend(&cos1, o, 1.0, c(0.3, 0.0)).unwrap() - 0.3).abs() < 1e-8);
        let cos2: Vec<f64> = boundary_angles(256).map(|t| (2.0 * t).cos()).collect();
        assert!((poisson_extend(&cos2, o, 1.0, c(0.5, 0.0)).unwrap() - 0.25).abs() < 1e-8);
        assert!(poisson_extend(&cos2, o, 1.0, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn constant_family_is_harmonic() {
        let params = ClassifierParams::new(CellGrid::square(0.9, 6).unwrap(), vec![(3, 5)]);
        let map = classify_harmonicity(&constant(c(2.0, -1.0), 5).unwrap(), &params).unwrap();
        assert_eq!(map.count(Verdict::Regular), 36);
    }

    #[test]
    fn poisson_family_is_harmonic_inside() {
        let seq = poisson_family(40, 1.0, 256).unwrap();
        let params = ClassifierParams::new(CellGrid::square(0.6, 6).unwrap(), vec![(30, 40)]);
        let map = classify_harmonicity(&seq, &params).unwrap();
        assert_eq!(map.count(Verdict::Exceptional), 0);
        assert!(map.count(Verdict::Regular) > 0);
    }

    #[test]
    fn holomorphic_cells_stay_harmonic() {
        let fams = [geometric_partial_sums(120).unwrap(), koebe_partial_sums(200, 0.8).unwrap()];
        for seq in fams {
            let params = ClassifierParams::new(CellGrid::square(0.7, 7).unwrap(), vec![(seq.j_max() - 20, seq.j_max())]);
            let holo = classify_holomorphy(&seq, &params).unwrap();
            let harm = classify_harmonicity(&seq, &params).unwrap();
            for (h, u) in holo.reports.iter().zip(&harm.reports) {
                if h.verdict == Verdict::Regular {
                    assert_eq!(u.verdict, Verdict::Regular, "cell {:?}", (h.ix, h.iy));
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn harmonic_poly(coeffs: &[(f64, f64)], z: Complex64) -> f64 {
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| {
                    let p = z.powu(k as u32);
                    a * p.re + b * p.im
                })
                .sum()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn poisson_reproduces_harmonic_polynomials(
                coeffs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 5),
                rho in 0.0..0.9f64,
                angle in 0.0..6.28f64,
            ) {
                let center = c(0.1, -0.2);
                let radius = 1.3;
                let boundary: Vec<f64> = boundary_angles(256)
                    .map(|t| harmonic_poly(&coeffs, center + Complex64::from_polar(radius, t)))
                    .collect();
                let w = center + Complex64::from_polar(rho * radius, angle);
                let got = poisson_extend(&boundary, center, radius, w).unwrap();
                prop_assert!((got - harmonic_poly(&coeffs, w)).abs() < 1e-8);
            }

            #[test]
            fn poisson_output_has_the_mean_value_property(
                data in prop::collection::vec(-1.0..1.0f64, 64),
                cx in -0.3..0.3f64,
                cy in -0.3..0.3f64,
                r in 0.05..0.4f64,
            ) {
                let o = c(0.0, 0.0);
                let res = mean_value_residual(|z| poisson_extend(&data, o, 1.0, z).unwrap(), c(cx, cy), r, 64).unwrap();
                prop_assert!(res <= 1e-6, "{}", res);
            }
        }
    }
}
