//! Discrete complex minimax fit `min_c max_i |(Q c)_i - b_i|` as a
//! second-order cone program.

use clarabel::algebra::CscMatrix;
use clarabel::solver::{
    DefaultSettingsBuilder, DefaultSolver, IPSolver, SolverStatus, SupportedConeT,
};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Variables are `(Re c, Im c, t)`, or `(Re c, t)` when `real` is set; each
/// node contributes the cone `(t, Re r_i, Im r_i) ∈ SOC(3)` with `r = Q c - b`.
pub fn minimax(q: &DMatrix<Complex64>, b: &DVector<Complex64>, real: bool) -> Result<Vec<Complex64>> {
    let (m, n) = q.shape();
    let n_imag = if real { 0 } else { n };
    let nv = n + n_imag + 1;
    let t = nv - 1;
    // Rows 3i, 3i+1, 3i+2 of the constraint matrix hold node i. Columns are
    // assembled in order so the CSC arrays are built directly.
    let mut colptr = Vec::with_capacity(nv + 1);
    let mut rowval = Vec::with_capacity(4 * m * n + m);
    let mut nzval = Vec::with_capacity(4 * m * n + m);
    colptr.push(0);
    for k in 0..n {
        for i in 0..m {
            let v = q[(i, k)];
            rowval.extend([3 * i + 1, 3 * i + 2]);
            nzval.extend([-v.re, -v.im]);
        }
        colptr.push(rowval.len());
    }
    for k in 0..n_imag {
        for i in 0..m {
            let v = q[(i, k)];
            rowval.extend([3 * i + 1, 3 * i + 2]);
            nzval.extend([v.im, -v.re]);
        }
        colptr.push(rowval.len());
    }
    for i in 0..m {
        rowval.push(3 * i);
        nzval.push(-1.0);
    }
    colptr.push(rowval.len());
    let a = CscMatrix::new(3 * m, nv, colptr, rowval, nzval);
    let rhs: Vec<f64> = b.iter().flat_map(|bi| [0.0, -bi.re, -bi.im]).collect();
    let p = CscMatrix::<f64>::zeros((nv, nv));
    let mut cost = vec![0.0; nv];
    cost[t] = 1.0;
    let cones = vec![SupportedConeT::SecondOrderConeT(3); m];
    let settings = DefaultSettingsBuilder::default()
        .verbose(false)
        .max_iter(200)
        .build()
        .map_err(|e| Error::invalid(format!("solver settings: {e:?}")))?;
    let mut solver = DefaultSolver::new(&p, &cost, &a, &rhs, &cones, settings)
        .map_err(|e| Error::invalid(format!("solver setup: {e:?}")))?;
    solver.solve();
    match solver.solution.status {
        SolverStatus::Solved | SolverStatus::AlmostSolved => {}
        other => return Err(Error::invalid(format!("minimax solve ended with {other:?}"))),
    }
    let x = &solver.solution.x;
    Ok((0..n)
        .map(|k| Complex64::new(x[k], if real { 0.0 } else { x[n + k] }))
        .collect())
}
