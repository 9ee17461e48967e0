use crate::error::{Error, Result};
use crate::gates::catalog;
use crate::tensor::ComplexMatrix;

fn require_two_qubit(r: &ComplexMatrix) -> Result<()> {
    if r.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, actual: r.dim() });
    }
    Ok(())
}

/// `max |(R(x)I)(I(x)R)(R(x)I) - (I(x)R)(R(x)I)(I(x)R)|` on three qubits.
pub fn check_ybe_braided(r: &ComplexMatrix) -> Result<f64> {
    require_two_qubit(r)?;
    let id = ComplexMatrix::identity(2);
    let a = r.kron(&id);
    let b = id.kron(r);
    let lhs = a.matmul(&b)?.matmul(&a)?;
    let rhs = b.matmul(&a)?.matmul(&b)?;
    lhs.max_abs_diff(&rhs)
}

/// `r` acting on qubits 1 and 3 of three: conjugate `r (x) I` by the swap of qubits 2 and 3.
pub fn place_13(r: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_two_qubit(r)?;
    let id = ComplexMatrix::identity(2);
    let s23 = id.kron(&catalog::swap());
    s23.matmul(&r.kron(&id))?.matmul(&s23)
}

/// Residual of `r12 r13 r23 = r23 r13 r12`.
pub fn check_ybe_algebraic(r: &ComplexMatrix) -> Result<f64> {
    require_two_qubit(r)?;
    let id = ComplexMatrix::identity(2);
    let r12 = r.kron(&id);
    let r23 = id.kron(r);
    let r13 = place_13(r)?;
    let lhs = r12.matmul(&r13)?.matmul(&r23)?;
    let rhs = r23.matmul(&r13)?.matmul(&r12)?;
    lhs.max_abs_diff(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{Complex, ONE};

    fn phase(t: f64) -> Complex {
        Complex::from_polar(1.0, t)
    }

    #[test]
    fn braided_solutions() {
        assert!(check_ybe_braided(&catalog::r()).unwrap() <= 1e-12);
        assert!(check_ybe_braided(&catalog::swap()).unwrap() <= 1e-12);
        let rp = catalog::r_prime(phase(0.3), phase(1.7), phase(-2.2), phase(2.9)).unwrap();
        assert!(check_ybe_braided(&rp).unwrap() <= 1e-12);
        let rpp = catalog::r_double_prime(phase(0.4), phase(1.1), phase(1.1), phase(-0.5)).unwrap();
        assert!(check_ybe_braided(&rpp).unwrap() <= 1e-12);
    }

    #[test]
    fn r_double_prime_needs_equal_middle_entries() {
        let rpp = catalog::r_double_prime(ONE, phase(0.5), phase(1.5), ONE).unwrap();
        assert!(check_ybe_braided(&rpp).unwrap() > 0.1);
    }

    #[test]
    fn perturbed_r_fails() {
        let r = catalog::r();
        let mut e = r.entries().to_vec();
        e[0] += Complex::new(0.01, 0.0);
        let bad = ComplexMatrix::new(4, e).unwrap();
        let res = check_ybe_braided(&bad).unwrap();
        // Independent numpy evaluation of the perturbed products gives 0.01.
        assert!(res > 1e-3, "residual {res}");
        assert!((res - 0.01).abs() < 1e-12);
    }

    #[test]
    fn algebraic_solutions() {
        assert!(check_ybe_algebraic(&catalog::d()).unwrap() <= 1e-12);
        let p = catalog::p(phase(0.2), phase(-1.3), phase(2.5), phase(0.9)).unwrap();
        assert!(check_ybe_algebraic(&p).unwrap() <= 1e-12);
        let sr = catalog::swap().matmul(&catalog::r()).unwrap();
        assert!(check_ybe_algebraic(&sr).unwrap() <= 1e-12);
        // R itself only solves the braided form.
        assert!(check_ybe_algebraic(&catalog::r()).unwrap() > 0.1);
    }

    #[test]
    fn cnot_is_not_braided_solution() {
        assert!(check_ybe_braided(&catalog::cnot()).unwrap() > 0.1);
    }

    #[test]
    fn wrong_dimension() {
        assert!(check_ybe_braided(&ComplexMatrix::identity(2)).is_err());
        assert!(check_ybe_algebraic(&ComplexMatrix::identity(8)).is_err());
    }
}
