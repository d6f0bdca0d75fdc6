//! Mutual information of the jointly Gaussian system (X1, X2, Y, Z) from
//! log-determinants of its covariance, independent of the closed forms.

use std::fmt;

use nalgebra::{DMatrix, Matrix4};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::ChannelParams;

/// Relative pivot size below which a block is treated as singular.
const SINGULAR_REL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Var {
    X1 = 0,
    X2 = 1,
    Y = 2,
    Z = 3,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X1 => "X1",
            Var::X2 => "X2",
            Var::Y => "Y",
            Var::Z => "Z",
        })
    }
}

/// The information terms the rate functions are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MiTerm {
    /// I(X1,X2;Y)
    SumY,
    /// I(X1,X2;Z)
    SumZ,
    /// I(X1;Y|X2)
    X1YGivenX2,
    /// I(X2;Y|X1)
    X2YGivenX1,
    /// I(X1;X2)
    X1X2,
    /// I(X1;Z)
    X1Z,
    /// I(X2;Z)
    X2Z,
    /// I(X1;Z|X2)
    X1ZGivenX2,
    /// I(X2;Z|X1)
    X2ZGivenX1,
}

impl MiTerm {
    pub const ALL: [MiTerm; 9] = [
        MiTerm::SumY,
        MiTerm::SumZ,
        MiTerm::X1YGivenX2,
        MiTerm::X2YGivenX1,
        MiTerm::X1X2,
        MiTerm::X1Z,
        MiTerm::X2Z,
        MiTerm::X1ZGivenX2,
        MiTerm::X2ZGivenX1,
    ];

    /// `(A, B, C)` in `I(A;B|C)`.
    pub fn sets(self) -> (&'static [Var], &'static [Var], &'static [Var]) {
        use Var::*;
        match self {
            MiTerm::SumY => (&[X1, X2], &[Y], &[]),
            MiTerm::SumZ => (&[X1, X2], &[Z], &[]),
            MiTerm::X1YGivenX2 => (&[X1], &[Y], &[X2]),
            MiTerm::X2YGivenX1 => (&[X2], &[Y], &[X1]),
            MiTerm::X1X2 => (&[X1], &[X2], &[]),
            MiTerm::X1Z => (&[X1], &[Z], &[]),
            MiTerm::X2Z => (&[X2], &[Z], &[]),
            MiTerm::X1ZGivenX2 => (&[X1], &[Z], &[X2]),
            MiTerm::X2ZGivenX1 => (&[X2], &[Z], &[X1]),
        }
    }
}

impl fmt::Display for MiTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = self.sets();
        let join = |vs: &[Var]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        if c.is_empty() {
            write!(f, "I({};{})", join(a), join(b))
        } else {
            write!(f, "I({};{}|{})", join(a), join(b), join(c))
        }
    }
}

/// Covariance of `(X1, X2, Y, Z)` with `Y = X1 + X2 + N` and
/// `Z = sqrt(g) (X1 + X2) + N'`, unit-variance independent noises.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSystem {
    cov: Matrix4<f64>,
}

impl GaussianSystem {
    pub fn new(params: &ChannelParams, rho: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&rho) {
            return Err(Error::Domain {
                function: "GaussianSystem",
                rho,
                lo: -1.0,
                hi: 1.0,
            });
        }
        let (p1, p2, g) = (params.p1(), params.p2(), params.g());
        let k = rho * (p1 * p2).sqrt();
        let s = p1 + p2 + 2.0 * k;
        let sg = g.sqrt();
        let (a1, a2) = (p1 + k, p2 + k);
        #[rustfmt::skip]
        let cov = Matrix4::new(
            p1,       k,        a1,      sg * a1,
            k,        p2,       a2,      sg * a2,
            a1,       a2,       1.0 + s, sg * s,
            sg * a1,  sg * a2,  sg * s,  1.0 + g * s,
        );
        Ok(GaussianSystem { cov })
    }

    pub fn covariance(&self) -> &Matrix4<f64> {
        &self.cov
    }

    /// Natural log-determinant of the principal block on `vars`; the empty
    /// block has determinant 1.
    fn log_det(&self, vars: &[Var]) -> Result<f64> {
        if vars.is_empty() {
            return Ok(0.0);
        }
        let idx: Vec<usize> = vars.iter().map(|&v| v as usize).collect();
        let block = DMatrix::from_fn(idx.len(), idx.len(), |i, j| self.cov[(idx[i], idx[j])]);
        let singular = |det: f64| Error::SingularCovariance {
            block: vars.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
            det,
        };
        let chol = block
            .clone()
            .cholesky()
            .ok_or_else(|| singular(block.determinant()))?;
        let l = chol.l_dirty();
        let mut acc = 0.0;
        for i in 0..idx.len() {
            let d = l[(i, i)];
            // A pivot that has cancelled down to rounding noise means the
            // block is rank deficient, not merely ill-conditioned.
            if !(d * d > SINGULAR_REL * block[(i, i)]) {
                return Err(singular(block.determinant()));
            }
            acc += 2.0 * d.ln();
        }
        Ok(acc)
    }

    /// `I(A;B|C)` in bits for arbitrary disjoint variable sets.
    pub fn conditional_mi(&self, a: &[Var], b: &[Var], c: &[Var]) -> Result<f64> {
        let union = |xs: &[&[Var]]| xs.concat();
        let ac = self.log_det(&union(&[a, c]))?;
        let bc = self.log_det(&union(&[b, c]))?;
        let cc = self.log_det(c)?;
        let abc = self.log_det(&union(&[a, b, c]))?;
        Ok(0.5 * (ac + bc - cc - abc) / std::f64::consts::LN_2)
    }
}

/// One of the named information terms, in bits.
pub fn gaussian_mi(system: &GaussianSystem, term: MiTerm) -> Result<f64> {
    let (a, b, c) = term.sets();
    system.conditional_mi(a, b, c)
}
