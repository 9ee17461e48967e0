//! Integer matrices with a global `sqrt(2)` scale.
//!
//! An [`ExactScaledMatrix`] with entries `M` and exponent `e` stands for
//! `M * sqrt(2)^(-e)`. Products of the scaled generator `sqrt(2) R` stay
//! integral, so traces of braid representations are computed with no
//! rounding at all.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::tensor::{Complex, ComplexMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ExactScaledMatrix {
    dim: usize,
    entries: Vec<i128>,
    scale_exp: u32,
}

impl ExactScaledMatrix {
    pub fn new(dim: usize, entries: Vec<i128>, scale_exp: u32) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::EntryCount { expected: dim * dim, actual: entries.len() });
        }
        Ok(ExactScaledMatrix { dim, entries, scale_exp })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        ExactScaledMatrix { dim, entries, scale_exp: 0 }
    }

    pub fn from_i64(rows: &[[i64; 4]; 4], scale_exp: u32) -> Self {
        let entries = rows.iter().flatten().map(|&x| x as i128).collect();
        ExactScaledMatrix { dim: 4, entries, scale_exp }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn int_entries(&self) -> &[i128] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> i128 {
        self.entries[row * self.dim + col]
    }

    pub fn scale_exp(&self) -> u32 {
        self.scale_exp
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let entries = (0..n * n).map(|k| self.entries[(k % n) * n + k / n]).collect();
        ExactScaledMatrix { dim: n, entries, scale_exp: self.scale_exp }
    }

    /// Integer trace; the value is `trace * sqrt(2)^(-scale_exp)`.
    pub fn int_trace(&self) -> Result<i128> {
        (0..self.dim).try_fold(0i128, |acc, i| acc.checked_add(self.get(i, i)).ok_or(Error::Overflow))
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        let s = std::f64::consts::SQRT_2.powi(-(self.scale_exp as i32));
        ComplexMatrix::from_fn(self.dim, |i, j| Complex::new(self.get(i, j) as f64 * s, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let n = self.dim;
        let scale_exp = self.scale_exp.checked_add(other.scale_exp).ok_or(Error::Overflow)?;
        let mut out = vec![0i128; n * n];
        let mut overflow = false;
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    match a.checked_mul(other.get(k, j)).and_then(|p| out[i * n + j].checked_add(p)) {
                        Some(v) => out[i * n + j] = v,
                        None => overflow = true,
                    }
                }
            }
        }
        if overflow {
            return Err(Error::Overflow);
        }
        Ok(ExactScaledMatrix { dim: n, entries: out, scale_exp })
    }

    /// `embed(gate, first, n) * self` for an integer gate on consecutive
    /// qubits; scale exponents add.
    pub fn left_apply_local(&self, gate: &ExactScaledMatrix, first: usize, exec: Execution) -> Result<Self> {
        let n = qubits(self.dim).ok_or(Error::WrongDimension { expected: 2, actual: self.dim })?;
        let k = qubits(gate.dim).ok_or(Error::WrongDimension { expected: 2, actual: gate.dim })?;
        if first == 0 || first + k - 1 > n {
            return Err(Error::StrandOutOfRange { index: first, n_strands: n });
        }
        let scale_exp = self.scale_exp.checked_add(gate.scale_exp).ok_or(Error::Overflow)?;
        let lo_bits = n + 1 - first - k;
        let gdim = gate.dim;
        let mid_mask = (gdim - 1) << lo_bits;
        let dim = self.dim;
        let mut entries = vec![0i128; dim * dim];
        let overflow = std::sync::atomic::AtomicBool::new(false);
        par::fill_chunks(exec, &mut entries, dim, |row, out| {
            let mid = (row & mid_mask) >> lo_bits;
            let base = row & !mid_mask;
            for mid_in in 0..gdim {
                let g = gate.get(mid, mid_in);
                if g == 0 {
                    continue;
                }
                let src = &self.entries[(base | (mid_in << lo_bits)) * dim..][..dim];
                for (o, &s) in out.iter_mut().zip(src) {
                    match g.checked_mul(s).and_then(|p| o.checked_add(p)) {
                        Some(v) => *o = v,
                        None => overflow.store(true, std::sync::atomic::Ordering::Relaxed),
                    }
                }
            }
        });
        if overflow.into_inner() {
            return Err(Error::Overflow);
        }
        Ok(ExactScaledMatrix { dim, entries, scale_exp })
    }

    /// Same value at a larger exponent. Only even steps keep entries integral.
    pub fn rescale_to(&self, scale_exp: u32) -> Result<Self> {
        if scale_exp < self.scale_exp || !(scale_exp - self.scale_exp).is_multiple_of(2) {
            return Err(Error::SelfCheck(format!("cannot rescale exponent {} to {}", self.scale_exp, scale_exp)));
        }
        let factor = 1i128.checked_shl((scale_exp - self.scale_exp) / 2).filter(|f| *f > 0).ok_or(Error::Overflow)?;
        let entries =
            self.entries.iter().map(|&x| x.checked_mul(factor).ok_or(Error::Overflow)).collect::<Result<_>>()?;
        Ok(ExactScaledMatrix { dim: self.dim, entries, scale_exp })
    }

    /// Exact sum. Exponents must have equal parity, since `sqrt(2)` times an
    /// integer matrix is not integral.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let e = self.scale_exp.max(other.scale_exp);
        let (a, b) = (self.rescale_to(e)?, other.rescale_to(e)?);
        let entries = a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(ExactScaledMatrix { dim: self.dim, entries, scale_exp: e })
    }

    /// Exact value equality.
    ///
    /// Values at exponents of different parity can only agree when both are
    /// zero, because `sqrt(2)` is irrational.
    pub fn exact_eq(&self, other: &Self) -> bool {
        if self.dim != other.dim {
            return false;
        }
        if self.scale_exp % 2 != other.scale_exp % 2 {
            return self.entries.iter().all(|&x| x == 0) && other.entries.iter().all(|&x| x == 0);
        }
        let e = self.scale_exp.max(other.scale_exp);
        match (self.rescale_to(e), other.rescale_to(e)) {
            (Ok(a), Ok(b)) => a.entries == b.entries,
            _ => false,
        }
    }
}

fn qubits(dim: usize) -> Option<usize> {
    dim.is_power_of_two().then(|| dim.trailing_zeros() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::catalog;

    fn r_scaled() -> ExactScaledMatrix {
        ExactScaledMatrix::from_i64(&catalog::R_SCALED_INT, 1)
    }

    #[test]
    fn scaled_generator_is_r() {
        let diff = r_scaled().to_complex().max_abs_diff(&catalog::r()).unwrap();
        assert!(diff <= 1e-15);
        assert!(r_scaled().int_entries().iter().all(|x| x.abs() <= 1));
    }

    #[test]
    fn r_plus_inverse_is_sqrt2() {
        let sum = r_scaled().add(&r_scaled().transpose()).unwrap();
        let sqrt2_id =
            ExactScaledMatrix::new(4, ExactScaledMatrix::identity(4).entries.iter().map(|x| 2 * x).collect(), 1)
                .unwrap();
        assert!(sum.exact_eq(&sqrt2_id));
        assert!(!sum.exact_eq(&ExactScaledMatrix::identity(4)));
    }

    #[test]
    fn eighth_power_is_identity() {
        let r = r_scaled();
        let r8 = (0..8).fold(ExactScaledMatrix::identity(4), |acc, _| acc.matmul(&r).unwrap());
        assert_eq!(r8.scale_exp(), 8);
        assert!(r8.exact_eq(&ExactScaledMatrix::identity(4)));
        let r4 = (0..4).fold(ExactScaledMatrix::identity(4), |acc, _| acc.matmul(&r).unwrap());
        assert!(r4.add(&ExactScaledMatrix::identity(4)).unwrap().int_entries().iter().all(|&x| x == 0));
    }

    #[test]
    fn parity_rules() {
        let id = ExactScaledMatrix::identity(2);
        assert!(id.rescale_to(1).is_err());
        let id2 = id.rescale_to(2).unwrap();
        assert_eq!(id2.get(0, 0), 2);
        assert!(id.exact_eq(&id2));
        assert!(id.add(&ExactScaledMatrix::new(2, vec![1, 0, 0, 1], 1).unwrap()).is_err());
        let z0 = ExactScaledMatrix::new(2, vec![0; 4], 0).unwrap();
        let z1 = ExactScaledMatrix::new(2, vec![0; 4], 1).unwrap();
        assert!(z0.exact_eq(&z1));
    }

    #[test]
    fn local_apply_matches_embedded_float() {
        let mut m = ExactScaledMatrix::identity(8);
        for (first, inv) in [(1, false), (2, true), (1, false)] {
            let g = if inv { r_scaled().transpose() } else { r_scaled() };
            m = m.left_apply_local(&g, first, Execution::Sequential).unwrap();
        }
        let r = catalog::r();
        let f = ComplexMatrix::embed(&r, 1, 3)
            .unwrap()
            .matmul(&ComplexMatrix::embed(&r.dagger(), 2, 3).unwrap())
            .unwrap()
            .matmul(&ComplexMatrix::embed(&r, 1, 3).unwrap())
            .unwrap();
        assert!(m.to_complex().max_abs_diff(&f).unwrap() <= 1e-12);
        let p = ExactScaledMatrix::identity(8).left_apply_local(&r_scaled(), 2, Execution::Parallel).unwrap();
        let s = ExactScaledMatrix::identity(8).left_apply_local(&r_scaled(), 2, Execution::Sequential).unwrap();
        assert_eq!(p, s);
    }

    #[test]
    fn overflow_is_reported() {
        let big = ExactScaledMatrix::new(2, vec![i128::MAX, 0, 0, 1], 0).unwrap();
        assert_eq!(big.matmul(&big), Err(Error::Overflow));
        assert_eq!(big.rescale_to(2), Err(Error::Overflow));
    }
}
