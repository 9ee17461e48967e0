//! Explicit CNOT decompositions from the Yang-Baxter gates.

use serde::Serialize;

use crate::error::Result;
use crate::gates::catalog;
use crate::tensor::{Complex, ComplexMatrix, Tolerance, ONE};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub name: &'static str,
    pub holds: bool,
    pub residual: f64,
    pub phase: Complex,
    pub tolerance: f64,
}

/// `Q D Q`; equals CNOT with no phase freedom.
pub fn qdq_expression() -> Result<ComplexMatrix> {
    let q = catalog::q_conjugator();
    q.matmul(&catalog::d())?.matmul(&q)
}

/// `(lambda (x) mu) R0 (I (x) sigma) R0 (H (x) H)` with a pluggable `sigma`.
pub fn sigma_expression(sigma: &ComplexMatrix) -> Result<ComplexMatrix> {
    let r0 = catalog::r0();
    let h = catalog::hadamard();
    let i2 = ComplexMatrix::identity(2);
    catalog::local_lambda()
        .kron(&catalog::local_mu())
        .matmul(&r0)?
        .matmul(&i2.kron(sigma))?
        .matmul(&r0)?
        .matmul(&h.kron(&h))
}

/// `M R N` with `M = alpha (x) beta`, `N = gamma (x) delta`.
pub fn mrn_expression(r: &ComplexMatrix) -> Result<ComplexMatrix> {
    let m = catalog::local_alpha().kron(&catalog::local_beta());
    let n = catalog::local_gamma().kron(&catalog::local_delta());
    m.matmul(r)?.matmul(&n)
}

pub fn verify_qdq() -> Result<DecompositionReport> {
    let residual = qdq_expression()?.max_abs_diff(&catalog::cnot())?;
    let tol = Tolerance::EXACT.eps();
    Ok(DecompositionReport { name: "qdq", holds: residual <= tol, residual, phase: ONE, tolerance: tol })
}

fn up_to_phase(name: &'static str, expr: &ComplexMatrix) -> Result<DecompositionReport> {
    let target = catalog::cnot();
    let (holds, phase) = expr.equal_up_to_phase(&target, Tolerance::PHASE)?;
    let residual = expr.max_abs_diff(&target.scale(phase))?;
    Ok(DecompositionReport { name, holds, residual, phase, tolerance: Tolerance::PHASE.eps() })
}

pub fn verify_sigma() -> Result<DecompositionReport> {
    up_to_phase("sigma", &sigma_expression(&catalog::local_sigma())?)
}

pub fn verify_mrn() -> Result<DecompositionReport> {
    up_to_phase("mrn", &mrn_expression(&catalog::r())?)
}

/// Same as [`verify_mrn`] but with a caller-supplied `R`.
pub fn verify_mrn_with(r: &ComplexMatrix) -> Result<DecompositionReport> {
    up_to_phase("mrn", &mrn_expression(r)?)
}
