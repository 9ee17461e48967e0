use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::catalog;
use crate::tensor::{Complex, ComplexMatrix, Tolerance, ONE, ZERO};

/// `a d - b c` of a normalized two-qubit state; zero exactly for product states.
pub fn concurrence_determinant(psi: &[Complex]) -> Result<Complex> {
    if psi.len() != 4 {
        return Err(Error::DimensionMismatch { left: 4, right: psi.len() });
    }
    let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((psi[0] * psi[3] - psi[1] * psi[2]) / norm_sq)
}

/// Entangled iff `|ad - bc| > tol` for the normalized state.
pub fn state_is_entangled(psi: &[Complex], tol: Tolerance) -> Result<bool> {
    Ok(concurrence_determinant(psi)?.norm() > tol.eps())
}

/// Operator-Schmidt realignment: `out[(i,j),(k,l)] = g[(i,k),(j,l)]`.
/// A two-qubit `g` is `A (x) B` exactly when this has rank one.
pub fn realign(g: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(4, |row, col| {
        let (i, j) = (row / 2, row % 2);
        let (k, l) = (col / 2, col % 2);
        g.get(2 * i + k, 2 * j + l)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglingVerdict {
    pub entangling: bool,
    /// A product state `|alpha>|beta>` (as two single-qubit vectors) whose image is entangled.
    pub witness: Option<([Complex; 2], [Complex; 2])>,
    /// Operator-Schmidt ranks of `g` and `g * SWAP`.
    pub schmidt_ranks: (usize, usize),
}

fn product(a: &[Complex; 2], b: &[Complex; 2]) -> [Complex; 4] {
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

fn witness_candidates() -> Vec<[Complex; 2]> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    vec![
        [ONE, ZERO],
        [ZERO, ONE],
        [Complex::new(s, 0.), Complex::new(s, 0.)],
        [Complex::new(s, 0.), Complex::new(-s, 0.)],
    ]
}

fn random_qubit(rng: &mut ChaCha8Rng) -> [Complex; 2] {
    let theta: f64 = rng.random_range(0.0..std::f64::consts::PI);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    [Complex::new((theta / 2.0).cos(), 0.0), Complex::from_polar((theta / 2.0).sin(), phi)]
}

/// Decide whether a two-qubit unitary can entangle a product state.
///
/// The decision is the operator-Schmidt rank of `g` and of `g * SWAP`: a
/// unitary that keeps every product state a product is local or local times
/// SWAP. The witness search (basis and Hadamard-basis products, then seeded
/// random products) only certifies a positive answer.
pub fn is_entangling(g: &ComplexMatrix, tol: Tolerance, seed: u64) -> Result<EntanglingVerdict> {
    if g.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, actual: g.dim() });
    }
    g.ensure_unitary(Tolerance::new(tol.eps().max(1e-12))?)?;
    let rank_tol = tol.eps().max(1e-12);
    let r1 = realign(g).rank(rank_tol);
    let r2 = realign(&g.matmul(&catalog::swap())?).rank(rank_tol);
    let entangling = r1 > 1 && r2 > 1;
    let mut witness = None;
    if entangling {
        let certifies = |a: &[Complex; 2], b: &[Complex; 2]| -> Result<bool> {
            let img = g.apply(&product(a, b))?;
            state_is_entangled(&img, tol)
        };
        let cands = witness_candidates();
        'scan: for a in &cands {
            for b in &cands {
                if certifies(a, b)? {
                    witness = Some((*a, *b));
                    break 'scan;
                }
            }
        }
        if witness.is_none() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..4096 {
                let (a, b) = (random_qubit(&mut rng), random_qubit(&mut rng));
                if certifies(&a, &b)? {
                    witness = Some((a, b));
                    break;
                }
            }
        }
    }
    Ok(EntanglingVerdict { entangling, witness, schmidt_ranks: (r1, r2) })
}
