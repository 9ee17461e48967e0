use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::catalog;
use crate::tensor::{Complex, ComplexMatrix, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CnotCount {
    Zero,
    One,
    Two,
    More,
}

impl CnotCount {
    pub fn as_str(self) -> &'static str {
        match self {
            CnotCount::Zero => "0",
            CnotCount::One => "1",
            CnotCount::Two => "2",
            CnotCount::More => "more",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CnotClass {
    pub class: CnotCount,
    pub gamma_trace: Complex,
    /// `max |gamma^2 + I|`.
    pub gamma_sq_residual: f64,
}

/// `U / det(U)^(1/4)`, principal root.
pub fn to_special_unitary(u: &ComplexMatrix) -> ComplexMatrix {
    let root = u.determinant().powf(0.25);
    u.scale(root.inv())
}

/// `gamma(U) = U E U^T E` on the determinant-one normalization of `U`.
pub fn gamma(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    if u.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, actual: u.dim() });
    }
    let su = to_special_unitary(u);
    let e = catalog::e_magic();
    su.matmul(&e)?.matmul(&su.transpose())?.matmul(&e)
}

/// Minimal number of CNOTs (with local gates) needed to build `u`.
///
/// The fourth-root choice in the normalization can flip `gamma` by a sign, so
/// the zero class accepts `gamma = +-I`; the other conditions are unaffected.
pub fn cnot_count_class(u: &ComplexMatrix, tol: Tolerance) -> Result<CnotClass> {
    if u.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, actual: u.dim() });
    }
    u.ensure_unitary(Tolerance::new(tol.eps().max(1e-12))?)?;
    let g = gamma(u)?;
    let id = ComplexMatrix::identity(4);
    let tr = g.trace();
    let sq_res = g.matmul(&g)?.add(&id)?.max_abs();
    let eps = tol.eps();
    let class = if g.max_abs_diff(&id)? <= eps || g.add(&id)?.max_abs() <= eps {
        CnotCount::Zero
    } else if tr.norm() <= eps && sq_res <= eps {
        CnotCount::One
    } else if tr.im.abs() <= eps {
        CnotCount::Two
    } else {
        CnotCount::More
    };
    Ok(CnotClass { class, gamma_trace: tr, gamma_sq_residual: sq_res })
}
