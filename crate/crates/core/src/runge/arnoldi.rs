//! Polynomial bases orthogonalized on a node set (Vandermonde with Arnoldi).
//!
//! The basis `q_0, …, q_n` satisfies `w q_k = Σ_{l<=k+1} H[l][k] q_l`, so any
//! point can be evaluated by replaying the recurrence without ever forming
//! monomials.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hessenberg record of an Arnoldi orthogonalization.
///
/// Column `k` stores `H[0..=k+1][k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArnoldiBasis {
    columns: Vec<Vec<Complex64>>,
}

impl ArnoldiBasis {
    /// Orthogonalizes `1, w, …, w^degree` on `nodes` and returns the basis
    /// together with the `m × (degree + 1)` matrix of basis values, whose
    /// columns have norm `sqrt(m)`.
    pub fn build(nodes: &[Complex64], degree: usize) -> Result<(Self, DMatrix<Complex64>)> {
        let m = nodes.len();
        if m <= degree {
            return Err(Error::invalid(format!(
                "{m} nodes cannot determine a degree-{degree} basis"
            )));
        }
        let mf = m as f64;
        let mut q = DMatrix::<Complex64>::zeros(m, degree + 1);
        q.column_mut(0).fill(Complex64::new(1.0, 0.0));
        let mut columns = Vec::with_capacity(degree);
        for k in 0..degree {
            let mut v: DVector<Complex64> =
                DVector::from_iterator(m, nodes.iter().zip(q.column(k).iter()).map(|(w, qk)| w * qk));
            let mut h = vec![Complex64::new(0.0, 0.0); k + 2];
            // Two passes of modified Gram-Schmidt keep the columns orthogonal
            // even when the node set is badly distributed.
            for _ in 0..2 {
                for (l, hl) in h.iter_mut().enumerate().take(k + 1) {
                    let col = q.column(l);
                    let coef = col.dotc(&v) / mf;
                    v.axpy(-coef, &col, Complex64::new(1.0, 0.0));
                    *hl += coef;
                }
            }
            let norm = v.norm() / mf.sqrt();
            if !(norm > 1e-13) {
                return Err(Error::invalid(format!(
                    "node set supports only degree {k}, not {degree}"
                )));
            }
            h[k + 1] = Complex64::new(norm, 0.0);
            q.column_mut(k + 1).copy_from(&(v / Complex64::new(norm, 0.0)));
            columns.push(h);
        }
        Ok((ArnoldiBasis { columns }, q))
    }

    pub fn degree(&self) -> usize {
        self.columns.len()
    }

    /// The basis of the first `degree + 1` polynomials.
    pub fn truncated(&self, degree: usize) -> Self {
        ArnoldiBasis {
            columns: self.columns[..degree.min(self.columns.len())].to_vec(),
        }
    }

    /// Values `q_0(w), …, q_n(w)`.
    pub fn basis_at(&self, w: Complex64) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.degree() + 1);
        out.push(Complex64::new(1.0, 0.0));
        for (k, h) in self.columns.iter().enumerate() {
            let mut v = w * out[k];
            for l in 0..=k {
                v -= h[l] * out[l];
            }
            out.push(v / h[k + 1]);
        }
        out
    }

    /// `Σ c_k q_k(w)`.
    pub fn eval(&self, coefficients: &[Complex64], w: Complex64) -> Complex64 {
        self.basis_at(w)
            .iter()
            .zip(coefficients)
            .map(|(q, c)| q * c)
            .sum()
    }
}

/// Least-squares solve of `min ‖a x − b‖` by Householder QR.
pub fn least_squares(a: DMatrix<Complex64>, b: &DVector<Complex64>) -> Result<DVector<Complex64>> {
    let n = a.ncols();
    let qr = a.qr();
    let mut rhs = b.clone();
    qr.q_tr_mul(&mut rhs);
    let r = qr.r();
    r.solve_upper_triangular(&rhs.rows(0, n).into_owned())
        .ok_or_else(|| Error::invalid("rank-deficient least-squares system"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nodes(m: usize) -> Vec<Complex64> {
        (0..m)
            .map(|k| Complex64::from_polar(0.5 + 0.4 * (k as f64 * 0.37).sin(), k as f64))
            .collect()
    }

    #[test]
    fn basis_columns_are_orthonormal() {
        let x = nodes(200);
        let (_, q) = ArnoldiBasis::build(&x, 12).unwrap();
        let g = q.adjoint() * &q / Complex64::new(200.0, 0.0);
        for i in 0..13 {
            for j in 0..13 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g[(i, j)] - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn recurrence_replays_the_fit_matrix() {
        let x = nodes(100);
        let (basis, q) = ArnoldiBasis::build(&x, 9).unwrap();
        for (i, &w) in x.iter().enumerate() {
            let row = basis.basis_at(w);
            for k in 0..10 {
                assert!((row[k] - q[(i, k)]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn fits_a_polynomial_exactly() {
        let x = nodes(80);
        let f = |w: Complex64| w * w * w - 2.0 * w + Complex64::new(0.5, 1.0);
        let (basis, q) = ArnoldiBasis::build(&x, 5).unwrap();
        let b = DVector::from_iterator(80, x.iter().map(|&w| f(w)));
        let c = least_squares(q, &b).unwrap();
        let probe = Complex64::new(0.1, -0.7);
        assert!((basis.eval(c.as_slice(), probe) - f(probe)).norm() < 1e-12);
    }

    #[test]
    fn too_few_nodes_is_an_error() {
        assert!(ArnoldiBasis::build(&nodes(3), 3).is_err());
    }
}
