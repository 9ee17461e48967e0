//! Named gates with fixed matrices.
//!
//! The single-qubit `X`, `Y`, `Z` here are the *modified* Paulis used by the
//! teleportation basis, not the conventional ones: `X = diag(1, -1)` (the
//! conventional Z), `Y` is the bit flip (conventional X), and
//! `Z = [[0, 1], [-1, 0]]` (conventional `-iY`).

use std::f64::consts::FRAC_1_SQRT_2 as S;

use crate::error::{Error, Result};
use crate::tensor::{Complex, ComplexMatrix, ONE, ZERO};

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

const UNIT_TOL: f64 = 1e-12;

fn check_unit(params: &[Complex]) -> Result<()> {
    for p in params {
        if (p.norm() - 1.0).abs() > UNIT_TOL {
            return Err(Error::Parse(format!("parameter {p} is not a unit complex number")));
        }
    }
    Ok(())
}

/// The Bell-basis change matrix; braided Yang-Baxter solution of order eight.
pub fn r() -> ComplexMatrix {
    ComplexMatrix::from_real(4, &[S, 0., 0., S, 0., S, -S, 0., 0., S, S, 0., -S, 0., 0., S])
}

/// `sqrt(2) * R`, the integer generator behind the exact backend.
pub const R_SCALED_INT: [[i64; 4]; 4] = [[1, 0, 0, 1], [0, 1, -1, 0], [0, 1, 1, 0], [-1, 0, 0, 1]];

/// `R'`: `|00> -> a|00>, |01> -> c|10>, |10> -> b|01>, |11> -> d|11>`.
pub fn r_prime(a: Complex, b: Complex, cc: Complex, d: Complex) -> Result<ComplexMatrix> {
    check_unit(&[a, b, cc, d])?;
    Ok(r_prime_unchecked(a, b, cc, d))
}

/// `R'` without the unit-modulus check (the linking state sum allows any nonzero weights).
pub fn r_prime_unchecked(a: Complex, b: Complex, cc: Complex, d: Complex) -> ComplexMatrix {
    ComplexMatrix::from_complex(
        4,
        &[a, ZERO, ZERO, ZERO, ZERO, ZERO, b, ZERO, ZERO, cc, ZERO, ZERO, ZERO, ZERO, ZERO, d],
    )
}

/// `R''`, antidiagonal corners and diagonal middle.
///
/// This is a braided Yang-Baxter solution only when `b == c`; other
/// parameters still build a unitary but fail the braided check.
pub fn r_double_prime(a: Complex, b: Complex, cc: Complex, d: Complex) -> Result<ComplexMatrix> {
    check_unit(&[a, b, cc, d])?;
    Ok(ComplexMatrix::from_complex(
        4,
        &[ZERO, ZERO, ZERO, a, ZERO, b, ZERO, ZERO, ZERO, ZERO, cc, ZERO, d, ZERO, ZERO, ZERO],
    ))
}

/// `R'` at `a = b = c = 1, d = -1`; equals `D` composed with SWAP.
pub fn r0() -> ComplexMatrix {
    r_prime_unchecked(ONE, ONE, ONE, -ONE)
}

/// Diagonal phase gate `P(a, b, c, d)`.
pub fn p(a: Complex, b: Complex, cc: Complex, d: Complex) -> Result<ComplexMatrix> {
    check_unit(&[a, b, cc, d])?;
    Ok(ComplexMatrix::diagonal(&[a, b, cc, d]))
}

/// Controlled-Z, `diag(1, 1, 1, -1)`.
pub fn d() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[ONE, ONE, ONE, -ONE])
}

pub fn swap() -> ComplexMatrix {
    r_prime_unchecked(ONE, ONE, ONE, ONE)
}

/// Control on qubit 1, target qubit 2.
pub fn cnot() -> ComplexMatrix {
    ComplexMatrix::from_real(4, &[1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0.])
}

pub fn hadamard() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[S, S, S, -S])
}

/// The conjugator for `D`: `I (x) H` in big-endian order.
pub fn q_conjugator() -> ComplexMatrix {
    ComplexMatrix::from_real(4, &[S, S, 0., 0., S, -S, 0., 0., 0., 0., S, S, 0., 0., S, -S])
}

/// Magic-basis matrix of the CNOT-count criterion; equals `-(sigma_y (x) sigma_y)`.
pub fn e_magic() -> ComplexMatrix {
    ComplexMatrix::from_real(4, &[0., 0., 0., 1., 0., 0., -1., 0., 0., -1., 0., 0., 1., 0., 0., 0.])
}

pub fn x_tele() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[1., 0., 0., -1.])
}

pub fn y_tele() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[0., 1., 1., 0.])
}

pub fn z_tele() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[0., 1., -1., 0.])
}

// Local factors of the R0 decomposition.

pub fn local_sigma() -> ComplexMatrix {
    ComplexMatrix::from_complex(2, &[c(S, 0.), c(0., S), c(0., S), c(S, 0.)])
}

pub fn local_lambda() -> ComplexMatrix {
    ComplexMatrix::from_complex(2, &[c(S, 0.), c(S, 0.), c(0., S), c(0., -S)])
}

pub fn local_mu() -> ComplexMatrix {
    ComplexMatrix::from_complex(2, &[c(0.5, -0.5), c(0.5, 0.5), c(0.5, -0.5), c(-0.5, -0.5)])
}

// Local factors of the R decomposition, `CNOT = (alpha (x) beta) R (gamma (x) delta)`.

pub fn local_alpha() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[S, S, S, -S])
}

pub fn local_beta() -> ComplexMatrix {
    ComplexMatrix::from_complex(2, &[c(-S, 0.), c(S, 0.), c(0., S), c(0., S)])
}

pub fn local_gamma() -> ComplexMatrix {
    ComplexMatrix::from_complex(2, &[c(S, 0.), c(0., S), c(S, 0.), c(0., -S)])
}

pub fn local_delta() -> ComplexMatrix {
    ComplexMatrix::from_complex(2, &[c(-1., 0.), ZERO, ZERO, c(0., -1.)])
}

/// Temperley-Lieb generator `U1 = [[d, 0], [0, 0]]`. Not unitary.
pub fn tl_u1(d: Complex) -> ComplexMatrix {
    ComplexMatrix::from_complex(2, &[d, ZERO, ZERO, ZERO])
}

/// `U2 = [[1/d, s], [s, d - 1/d]]` with `s = sqrt(1 - d^-2)`. Requires `d != 0`.
///
/// For real `d` with `|d|` at 1 up to rounding, the radicand is snapped to
/// zero so that the branch stays real.
pub fn tl_u2(d: Complex) -> Result<ComplexMatrix> {
    if d.norm() < 1e-12 {
        return Err(Error::Singular("loop value d vanishes".into()));
    }
    let inv = d.inv();
    let mut rad = ONE - inv * inv;
    if rad.im.abs() <= 64.0 * f64::EPSILON && rad.re.abs() <= 64.0 * f64::EPSILON {
        rad = ZERO;
    }
    let s = rad.sqrt();
    Ok(ComplexMatrix::from_complex(2, &[inv, s, s, d - inv]))
}

/// Every fixed unitary in the catalog, by name.
pub fn unitary_catalog() -> Vec<(&'static str, ComplexMatrix)> {
    vec![
        ("R", r()),
        ("R0", r0()),
        ("D", d()),
        ("SWAP", swap()),
        ("CNOT", cnot()),
        ("E", e_magic()),
        ("Q", q_conjugator()),
        ("H", hadamard()),
        ("X", x_tele()),
        ("Y", y_tele()),
        ("Z", z_tele()),
        ("sigma", local_sigma()),
        ("lambda", local_lambda()),
        ("mu", local_mu()),
        ("alpha", local_alpha()),
        ("beta", local_beta()),
        ("gamma", local_gamma()),
        ("delta", local_delta()),
    ]
}

/// Parse `"re,im,re,im,..."` into complex numbers.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex>> {
    let nums: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect::<Result<_>>()?;
    if !nums.len().is_multiple_of(2) {
        return Err(Error::Parse(format!("complex list needs re,im pairs: {s:?}")));
    }
    Ok(nums.chunks(2).map(|p| c(p[0], p[1])).collect())
}

fn four(s: &str) -> Result<[Complex; 4]> {
    let v = parse_complex_list(s)?;
    v.try_into().map_err(|v: Vec<Complex>| Error::Parse(format!("expected 4 complex parameters, got {}", v.len())))
}

fn one(s: &str) -> Result<Complex> {
    let v = parse_complex_list(s)?;
    match v.as_slice() {
        [z] => Ok(*z),
        _ => Err(Error::Parse(format!("expected 1 complex parameter, got {}", v.len()))),
    }
}

/// Resolve a gate by name: `R`, `Rinv`, `R0`, `D`, `SWAP`, `CNOT`, `E`, `Q`,
/// `H`, `X`, `Y`, `Z`, the local factors, or a parameterized form such as
/// `Rprime:1,0,1,0,1,0,-1,0`, `Rdprime:...`, `P:...`, `U1:d_re,d_im`, `U2:...`.
pub fn resolve(name: &str) -> Result<ComplexMatrix> {
    let (head, args) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let unknown = || Error::Unknown { kind: "gate", name: name.to_string() };
    match (head, args) {
        ("Rprime", Some(a)) => {
            let [a, b, cc, d] = four(a)?;
            r_prime(a, b, cc, d)
        }
        ("Rdprime", Some(a)) => {
            let [a, b, cc, d] = four(a)?;
            r_double_prime(a, b, cc, d)
        }
        ("P", Some(a)) => {
            let [a, b, cc, d] = four(a)?;
            p(a, b, cc, d)
        }
        ("U1", Some(a)) => Ok(tl_u1(one(a)?)),
        ("U2", Some(a)) => tl_u2(one(a)?),
        ("Rinv", None) => Ok(r().dagger()),
        ("I2", None) => Ok(ComplexMatrix::identity(2)),
        ("I4", None) => Ok(ComplexMatrix::identity(4)),
        (h, None) => unitary_catalog().into_iter().find(|(n, _)| *n == h).map(|(_, m)| m).ok_or_else(unknown),
        _ => Err(unknown()),
    }
}
