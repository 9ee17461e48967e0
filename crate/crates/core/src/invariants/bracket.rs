//! Two-dimensional Temperley-Lieb representation of `B_3` and the bracket
//! of 3-braid closures.

use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::gates::catalog;
use crate::tensor::{Complex, ComplexMatrix, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BracketParams {
    a: Complex,
    d: Complex,
    theta: Option<f64>,
}

impl BracketParams {
    /// `A = e^{i theta}`, so `d = -2 cos(2 theta)`.
    pub fn from_theta(theta: f64) -> Self {
        let a = Complex::from_polar(1.0, theta);
        BracketParams { a, d: Complex::new(-2.0 * (2.0 * theta).cos(), 0.0), theta: Some(theta) }
    }

    /// Any nonzero `A`, with `d = -A^2 - A^-2`.
    pub fn from_a(a: Complex) -> Result<Self> {
        if a.norm() == 0.0 || !a.is_finite() {
            return Err(Error::ZeroWeight);
        }
        let d = -(a * a) - (a * a).inv();
        Ok(BracketParams { a, d, theta: None })
    }

    pub fn a(&self) -> Complex {
        self.a
    }

    pub fn d(&self) -> Complex {
        self.d
    }

    pub fn theta(&self) -> Option<f64> {
        self.theta
    }
}

/// `U1` and `U2` at the loop value of `p`.
pub fn tl_generators(p: &BracketParams) -> Result<(ComplexMatrix, ComplexMatrix)> {
    Ok((catalog::tl_u1(p.d), catalog::tl_u2(p.d)?))
}

/// `Phi(s_1) = A I + A^-1 U1` and `Phi(s_2) = A I + A^-1 U2`.
pub fn phi_generators(p: &BracketParams) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let (u1, u2) = tl_generators(p)?;
    let id = ComplexMatrix::identity(2).scale(p.a);
    let ainv = p.a.inv();
    Ok((id.add(&u1.scale(ainv))?, id.add(&u2.scale(ainv))?))
}

/// `Phi(b)`, first letter applied first.
pub fn tl_rep3(b: &BraidWord, p: &BracketParams) -> Result<ComplexMatrix> {
    if b.n_strands() != 3 {
        return Err(Error::StrandMismatch { left: 3, right: b.n_strands() });
    }
    let (p1, p2) = phi_generators(p)?;
    let mut inverses: [Option<ComplexMatrix>; 2] = [None, None];
    let mut acc = ComplexMatrix::identity(2);
    for &g in b.letters() {
        let k = g.unsigned_abs() as usize - 1;
        let base = if k == 0 { &p1 } else { &p2 };
        let m = if g > 0 {
            base.clone()
        } else {
            if inverses[k].is_none() {
                inverses[k] = Some(base.inverse()?);
            }
            inverses[k].clone().expect("just set")
        };
        acc = m.matmul(&acc)?;
    }
    Ok(acc)
}

/// `tr Phi(b) + A^{writhe} (d^2 - 2)`; the identity braid gives `d^2`.
pub fn bracket3(b: &BraidWord, p: &BracketParams) -> Result<Complex> {
    let phi = tl_rep3(b, p)?;
    let w = b.writhe() as i32;
    Ok(phi.trace() + p.a.powi(w) * (p.d * p.d - 2.0))
}

/// `max` unitarity residual of `Phi(s_1)`, `Phi(s_2)`, or `None` where the
/// representation is undefined (`d = 0`).
pub fn phi_unitarity_residual(p: &BracketParams) -> Option<f64> {
    let (p1, p2) = phi_generators(p).ok()?;
    Some(p1.unitarity_residual().max(p2.unitarity_residual()))
}

pub fn phi_is_unitary(p: &BracketParams, tol: Tolerance) -> bool {
    phi_unitarity_residual(p).is_some_and(|r| r <= tol.eps())
}

/// `n` equally spaced angles covering `[-pi/6, pi/6]`.
pub fn unitary_theta_grid(n: usize) -> Vec<f64> {
    let lim = std::f64::consts::PI / 6.0;
    match n {
        0 => vec![],
        1 => vec![0.0],
        _ => (0..n).map(|k| -lim + 2.0 * lim * k as f64 / (n - 1) as f64).collect(),
    }
}
