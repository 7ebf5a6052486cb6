//! Indexed families `f_1, f_2, …` of complex functions, the common input of
//! every analyzer.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{CPoint, Disc, Domain};

type Evaluator = dyn Fn(usize, CPoint) -> Complex64 + Send + Sync;

/// A deterministic family `f_j`, `1 <= j <= j_max`.
#[derive(Clone)]
pub struct FunctionSequence {
    eval: Arc<Evaluator>,
    j_max: usize,
    description: String,
    domain: Option<Arc<dyn Domain>>,
}

impl fmt::Debug for FunctionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionSequence")
            .field("j_max", &self.j_max)
            .field("description", &self.description)
            .field("domain", &self.domain)
            .finish()
    }
}

impl FunctionSequence {
    pub fn new(
        j_max: usize,
        description: impl Into<String>,
        eval: impl Fn(usize, CPoint) -> Complex64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if j_max == 0 {
            return Err(Error::invalid("a sequence needs j_max >= 1"));
        }
        Ok(FunctionSequence {
            eval: Arc::new(eval),
            j_max,
            description: description.into(),
            domain: None,
        })
    }

    pub fn with_domain(mut self, domain: impl Domain + 'static) -> Self {
        self.domain = Some(Arc::new(domain));
        self
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn domain(&self) -> Option<&dyn Domain> {
        self.domain.as_deref()
    }

    /// `f_j(z)`; fails on an index outside `1..=j_max` or a non-finite value.
    pub fn eval(&self, j: usize, z: CPoint) -> Result<Complex64> {
        if j == 0 || j > self.j_max {
            return Err(Error::invalid(format!(
                "index {j} outside 1..={}",
                self.j_max
            )));
        }
        let v = (self.eval)(j, z);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation {
                index: j,
                point: z,
                reason: format!("non-finite value {v}"),
            })
        }
    }

    /// `f_j(z)` without the finiteness check, for callers that handle overflow.
    pub fn eval_unchecked(&self, j: usize, z: CPoint) -> Complex64 {
        (self.eval)(j, z)
    }

    /// Checks that every index of `pairs` lies in `1..=j_max`.
    pub fn check_pairs(&self, pairs: &[(usize, usize)]) -> Result<()> {
        for &(l, m) in pairs {
            for j in [l, m] {
                if j == 0 || j > self.j_max {
                    return Err(Error::invalid(format!(
                        "pair index {j} outside 1..={}",
                        self.j_max
                    )));
                }
            }
        }
        Ok(())
    }

    /// Real parts `Re f_j`, as a sequence with zero imaginary part.
    pub fn real_part(&self) -> FunctionSequence {
        let inner = self.clone();
        FunctionSequence {
            eval: Arc::new(move |j, z| Complex64::new(inner.eval_unchecked(j, z).re, 0.0)),
            j_max: self.j_max,
            description: format!("Re of {}", self.description),
            domain: self.domain.clone(),
        }
    }
}

/// `f_j ≡ c`.
pub fn constant(c: Complex64, j_max: usize) -> Result<FunctionSequence> {
    FunctionSequence::new(j_max, format!("constant {c}"), move |_, _| c)
}

/// `f_j ≡ j`: unbounded in `j` at every point.
pub fn index_valued(j_max: usize) -> Result<FunctionSequence> {
    FunctionSequence::new(j_max, "f_j = j", |j, _| Complex64::new(j as f64, 0.0))
}

/// `f_j(z) = z^j`.
pub fn powers(j_max: usize) -> Result<FunctionSequence> {
    FunctionSequence::new(j_max, "f_j = z^j", |j, z| z.powu(j as u32))
}

/// `f_j(z) = Σ_{k=0}^{j} z^k`, converging to `1/(1-z)` on the unit disc.
pub fn geometric_partial_sums(j_max: usize) -> Result<FunctionSequence> {
    FunctionSequence::new(j_max, "geometric partial sums", |j, z| {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for _ in 0..j {
            term *= z;
            sum += term;
        }
        sum
    })
    .map(|s| s.with_domain(Disc { center: Complex64::new(0.0, 0.0), radius: 1.0 }))
}

/// Partial sums `Σ_{k=1}^{j} k z^k` of the Koebe function `z/(1-z)^2`.
pub fn koebe_partial_sums(j_max: usize, radius: f64) -> Result<FunctionSequence> {
    let disc = Disc::new(Complex64::new(0.0, 0.0), radius)?;
    if radius >= 1.0 {
        return Err(Error::invalid("Koebe partial sums need a radius below 1"));
    }
    Ok(FunctionSequence::new(j_max, "Koebe partial sums", |j, z| {
        let mut power = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 1..=j {
            power *= z;
            sum += power * k as f64;
        }
        sum
    })?
    .with_domain(disc))
}

/// The Koebe function `z/(1-z)^2`.
pub fn koebe(z: CPoint) -> Complex64 {
    z / ((1.0 - z) * (1.0 - z))
}
