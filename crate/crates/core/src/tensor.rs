//! Dense complex matrices of dimension `2^k`.
//!
//! Basis order is big-endian: for two qubits the rows and columns run
//! `|00>, |01>, |10>, |11>`, and qubit 1 is the most significant bit. Every
//! other module inherits this convention. Matrices are immutable; each
//! operation returns a new value.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Execution};

pub type Complex = Complex64;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

/// Entrywise comparison threshold on the max-absolute-entry norm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tolerance(f64);

impl Tolerance {
    /// For identities that hold exactly in real arithmetic.
    pub const EXACT: Tolerance = Tolerance(1e-12);
    /// For phase-fitted comparisons.
    pub const PHASE: Tolerance = Tolerance(1e-9);

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps >= 0.0 {
            Ok(Tolerance(eps))
        } else {
            Err(Error::Parse(format!("tolerance must be a nonnegative number, got {eps}")))
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::EXACT
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<Complex>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EntryCount { expected: 1, actual: 0 });
        }
        if entries.len() != dim * dim {
            return Err(Error::EntryCount { expected: dim * dim, actual: entries.len() });
        }
        if let Some(i) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(ComplexMatrix { dim, entries })
    }

    /// Row-major real entries. Panics on a bad length; meant for literals.
    pub fn from_real(dim: usize, values: &[f64]) -> Self {
        assert_eq!(values.len(), dim * dim, "from_real: wrong entry count");
        Self::new(dim, values.iter().map(|&x| Complex::new(x, 0.0)).collect()).expect("from_real: non-finite literal")
    }

    /// Row-major complex entries. Panics on a bad length; meant for literals.
    pub fn from_complex(dim: usize, values: &[Complex]) -> Self {
        Self::new(dim, values.to_vec()).expect("from_complex: bad literal")
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        ComplexMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix { dim, entries: vec![ZERO; dim * dim] }
    }

    pub fn diagonal(values: &[Complex]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { ZERO })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[Complex] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    /// Number of qubits when the dimension is a power of two.
    pub fn qubits(&self) -> Option<usize> {
        self.dim.is_power_of_two().then(|| self.dim.trailing_zeros() as usize)
    }

    pub fn scale(&self, c: Complex) -> Self {
        ComplexMatrix { dim: self.dim, entries: self.entries.iter().map(|z| z * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |a_ij - b_ij|`, the residual norm used throughout.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// `kron(a, b)[(i*db + k), (j*db + l)] = a[i,j] * b[k,l]`.
    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let dim = da * db;
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..da {
            for j in 0..da {
                let a = self.get(i, j);
                if a == ZERO {
                    continue;
                }
                for k in 0..db {
                    let row = (i * db + k) * dim + j * db;
                    for l in 0..db {
                        entries[row + l] = a * other.get(k, l);
                    }
                }
            }
        }
        ComplexMatrix { dim, entries }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.matmul_with(other, Execution::default())
    }

    /// Row-parallel dense product.
    pub fn matmul_with(&self, other: &Self, exec: Execution) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut entries = vec![ZERO; n * n];
        par::fill_chunks(exec, &mut entries, n, |i, out| {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == ZERO {
                    continue;
                }
                let brow = &other.entries[k * n..(k + 1) * n];
                for (o, b) in out.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        });
        Ok(ComplexMatrix { dim: n, entries })
    }

    /// Product of a sequence, applied right to left: `ms[0] * ms[1] * ...`.
    pub fn product<'a>(dim: usize, ms: impl IntoIterator<Item = &'a ComplexMatrix>) -> Result<Self> {
        ms.into_iter().try_fold(Self::identity(dim), |acc, m| acc.matmul(m))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.dim), |acc, _| acc.matmul(self).expect("same dimension"))
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        ComplexMatrix { dim: self.dim, entries: self.entries.iter().map(|z| z.conj()).collect() }
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Contract the last tensor factor of dimension `sub_dim`:
    /// `out[a,b] = sum_k self[(a,k),(b,k)]`.
    pub fn partial_trace_last(&self, sub_dim: usize) -> Result<Self> {
        if sub_dim == 0 || !self.dim.is_multiple_of(sub_dim) {
            return Err(Error::NotDivisible { dim: self.dim, sub_dim });
        }
        let outer = self.dim / sub_dim;
        Ok(Self::from_fn(outer, |a, b| (0..sub_dim).map(|k| self.get(a * sub_dim + k, b * sub_dim + k)).sum()))
    }

    /// Residual `max |A A^dagger - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let prod = self.matmul(&self.dagger()).expect("same dimension");
        prod.max_abs_diff(&Self::identity(self.dim)).expect("same dimension")
    }

    pub fn is_unitary(&self, tol: Tolerance) -> bool {
        self.unitarity_residual() <= tol.eps()
    }

    pub fn ensure_unitary(&self, tol: Tolerance) -> Result<()> {
        let r = self.unitarity_residual();
        if r <= tol.eps() {
            Ok(())
        } else {
            Err(Error::NotUnitary(r))
        }
    }

    /// Fit a unit phase `lambda` with `self ~ lambda * other`.
    ///
    /// The phase comes from the entry where `other` is largest in magnitude.
    /// Returns whether `max |self - lambda * other| <= tol` and the fitted phase.
    pub fn equal_up_to_phase(&self, other: &Self, tol: Tolerance) -> Result<(bool, Complex)> {
        self.check_same_dim(other)?;
        let (k, bmax) = other.entries.iter().enumerate().map(|(k, z)| (k, z.norm())).fold((0, -1.0), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        });
        if bmax <= 0.0 {
            return Ok((self.max_abs() <= tol.eps(), ONE));
        }
        let ratio = self.entries[k] / other.entries[k];
        let phase = if ratio.norm() > 0.0 { ratio / ratio.norm() } else { ONE };
        let residual = self.max_abs_diff(&other.scale(phase))?;
        Ok((residual <= tol.eps(), phase))
    }

    pub fn apply(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: v.len() });
        }
        Ok((0..self.dim).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    /// `I^{(first-1)} (x) gate (x) I^{...}` on `n_qubits`, with `first` 1-based.
    pub fn embed(gate: &ComplexMatrix, first: usize, n_qubits: usize) -> Result<Self> {
        let k = gate.qubits().ok_or(Error::WrongDimension { expected: 2, actual: gate.dim })?;
        if first == 0 || first + k - 1 > n_qubits {
            return Err(Error::StrandOutOfRange { index: first, n_strands: n_qubits });
        }
        let left = Self::identity(1 << (first - 1));
        let right = Self::identity(1 << (n_qubits + 1 - first - k));
        Ok(left.kron(gate).kron(&right))
    }

    /// `embed(gate, first, n) * self`, without materialising the embedded gate.
    ///
    /// Row `r` splits as `(hi, mid, lo)` with `mid` the gate's qubits; each
    /// output row mixes the `2^k` input rows sharing `hi` and `lo`.
    pub fn left_apply_local(&self, gate: &ComplexMatrix, first: usize, exec: Execution) -> Result<Self> {
        let n = self.qubits().ok_or(Error::WrongDimension { expected: 2, actual: self.dim })?;
        let k = gate.qubits().ok_or(Error::WrongDimension { expected: 2, actual: gate.dim })?;
        if first == 0 || first + k - 1 > n {
            return Err(Error::StrandOutOfRange { index: first, n_strands: n });
        }
        let lo_bits = n + 1 - first - k;
        let gdim = gate.dim;
        let mid_mask = (gdim - 1) << lo_bits;
        let dim = self.dim;
        let mut entries = vec![ZERO; dim * dim];
        par::fill_chunks(exec, &mut entries, dim, |row, out| {
            let mid = (row & mid_mask) >> lo_bits;
            let base = row & !mid_mask;
            for mid_in in 0..gdim {
                let g = gate.get(mid, mid_in);
                if g == ZERO {
                    continue;
                }
                let src = base | (mid_in << lo_bits);
                for (o, s) in out.iter_mut().zip(self.row(src)) {
                    *o += g * s;
                }
            }
        });
        Ok(ComplexMatrix { dim, entries })
    }

    /// Numerical rank by Gaussian elimination with complete pivoting.
    pub fn rank(&self, tol: f64) -> usize {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut rank = 0;
        let mut rows: Vec<usize> = (0..n).collect();
        let mut cols: Vec<usize> = (0..n).collect();
        for step in 0..n {
            let mut best = (step, step, 0.0);
            for (ri, &r) in rows.iter().enumerate().skip(step) {
                for (ci, &c) in cols.iter().enumerate().skip(step) {
                    let m = a[r * n + c].norm();
                    if m > best.2 {
                        best = (ri, ci, m);
                    }
                }
            }
            if best.2 <= tol {
                break;
            }
            rows.swap(step, best.0);
            cols.swap(step, best.1);
            let (pr, pc) = (rows[step], cols[step]);
            let pivot = a[pr * n + pc];
            for &r in &rows[step + 1..] {
                let f = a[r * n + pc] / pivot;
                for &c in &cols[step..] {
                    let v = a[pr * n + c];
                    a[r * n + c] -= f * v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant by LU with partial pivoting.
    pub fn determinant(&self) -> Complex {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = ONE;
        for col in 0..n {
            let p =
                (col..n).max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm())).expect("nonempty");
            if a[p * n + col] == ZERO {
                return ZERO;
            }
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = a[col * n + col];
            det *= pivot;
            for r in col + 1..n {
                let f = a[r * n + col] / pivot;
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= f * v;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; `Singular` when a pivot falls below `1e-14` relative.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for col in 0..n {
            let p =
                (col..n).max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm())).expect("nonempty");
            if a[p * n + col].norm() <= 1e-14 * scale {
                return Err(Error::Singular("matrix has no inverse".into()));
            }
            for j in 0..n {
                a.swap(p * n + j, col * n + j);
                inv.swap(p * n + j, col * n + j);
            }
            let pivot = a[col * n + col];
            for j in 0..n {
                a[col * n + j] /= pivot;
                inv[col * n + j] /= pivot;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f == ZERO {
                    continue;
                }
                for j in 0..n {
                    let (av, iv) = (a[col * n + j], inv[col * n + j]);
                    a[r * n + j] -= f * av;
                    inv[r * n + j] -= f * iv;
                }
            }
        }
        Ok(ComplexMatrix { dim: n, entries: inv })
    }
}

/// Wire format: `{ "dim": k, "entries": [[re, im], ...] }`, row-major.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        MatrixJson { dim: m.dim, entries: m.entries.iter().map(|z| [z.re, z.im]).collect() }
    }
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        ComplexMatrix::new(j.dim, j.entries.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        ComplexMatrix::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl ComplexMatrix {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson::from(self)).expect("plain data")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: MatrixJson = serde_json::from_str(s)?;
        j.try_into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::catalog;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn arb_matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim)
            .prop_map(move |v| ComplexMatrix::new(dim, v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap())
    }

    /// Scalar double loop, independent of the block layout in `kron`.
    fn kron_oracle(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        let (da, db) = (a.dim(), b.dim());
        ComplexMatrix::from_fn(da * db, |r, s| a.get(r / db, s / db) * b.get(r % db, s % db))
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn q_conjugator_is_hadamard_on_second_qubit() {
        // Q acts as H on the second qubit in big-endian order.
        let q = catalog::q_conjugator();
        let h = catalog::hadamard();
        let i2 = ComplexMatrix::identity(2);
        assert!(i2.kron(&h).max_abs_diff(&q).unwrap() <= 1e-15);
        assert!(h.kron(&i2).max_abs_diff(&q).unwrap() > 0.5);
    }

    #[test]
    fn kron_of_modified_paulis_matches_loop_oracle() {
        let x = catalog::x_tele();
        let y = catalog::y_tele();
        let k = x.kron(&y);
        assert_eq!(k, kron_oracle(&x, &y));
        let expected = ComplexMatrix::from_real(4, &[0., 1., 0., 0., 1., 0., 0., 0., 0., 0., 0., -1., 0., 0., -1., 0.]);
        assert_eq!(k, expected);
    }

    #[test]
    fn matmul_dimension_mismatch() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(4);
        assert!(matches!(a.matmul(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn products_and_adjoints_of_r() {
        let r = catalog::r();
        let id = ComplexMatrix::identity(4);
        assert!(r.matmul(&r.dagger()).unwrap().max_abs_diff(&id).unwrap() <= 1e-12);
        assert_eq!(id.matmul(&r).unwrap(), r);
        assert_eq!(ComplexMatrix::identity(4).dagger(), id);
    }

    #[test]
    fn traces() {
        assert_eq!(ComplexMatrix::identity(4).trace(), c(4.0, 0.0));
        let tr = catalog::r().trace();
        assert!((tr - c(2.0 * 2f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn partial_traces_of_r() {
        let sqrt2_i = ComplexMatrix::identity(2).scale(c(2f64.sqrt(), 0.0));
        let r = catalog::r();
        assert!(r.partial_trace_last(2).unwrap().max_abs_diff(&sqrt2_i).unwrap() <= 1e-12);
        let rinv = r.dagger();
        assert!(rinv.partial_trace_last(2).unwrap().max_abs_diff(&sqrt2_i).unwrap() <= 1e-12);
        let two_i = ComplexMatrix::identity(2).scale(c(2.0, 0.0));
        assert_eq!(ComplexMatrix::identity(4).partial_trace_last(2).unwrap(), two_i);
        assert!(matches!(r.partial_trace_last(3), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn unitarity() {
        assert!(catalog::r().is_unitary(Tolerance::EXACT));
        assert!(ComplexMatrix::identity(8).is_unitary(Tolerance::EXACT));
        let u1 = catalog::tl_u1(c(-1.5, 0.0));
        assert!(!u1.is_unitary(Tolerance::EXACT));
    }

    #[test]
    fn phase_fit() {
        let m = catalog::r();
        let (eq, ph) = m.equal_up_to_phase(&m, Tolerance::PHASE).unwrap();
        assert!(eq && (ph - ONE).norm() < 1e-15);
        let neg = m.scale(c(-1.0, 0.0));
        let (eq, ph) = neg.equal_up_to_phase(&m, Tolerance::PHASE).unwrap();
        assert!(eq && (ph + ONE).norm() < 1e-15);
        let (eq, _) = catalog::d().equal_up_to_phase(&catalog::cnot(), Tolerance::PHASE).unwrap();
        assert!(!eq);
    }

    #[test]
    fn embed_matches_left_apply() {
        let r = catalog::r();
        let base = ComplexMatrix::from_fn(8, |i, j| c(i as f64 - j as f64, (i * j) as f64 * 0.1));
        for first in 1..=2 {
            let dense = ComplexMatrix::embed(&r, first, 3).unwrap().matmul(&base).unwrap();
            for exec in [Execution::Sequential, Execution::Parallel] {
                let fast = base.left_apply_local(&r, first, exec).unwrap();
                assert!(dense.max_abs_diff(&fast).unwrap() < 1e-13);
            }
        }
        assert!(ComplexMatrix::embed(&r, 3, 3).is_err());
    }

    #[test]
    fn inverse_rank_determinant() {
        let r = catalog::r();
        let inv = r.inverse().unwrap();
        assert!(inv.max_abs_diff(&r.dagger()).unwrap() < 1e-14);
        assert_eq!(r.rank(1e-12), 4);
        let outer = ComplexMatrix::from_fn(4, |i, j| c((i + 1) as f64 * (j + 1) as f64, 0.0));
        assert_eq!(outer.rank(1e-12), 1);
        assert!(outer.inverse().is_err());
        assert!((catalog::d().determinant() + ONE).norm() < 1e-15);
        assert!((catalog::swap().determinant() + ONE).norm() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let m = catalog::local_sigma();
        let s = serde_json::to_string(&MatrixJson::from(&m)).unwrap();
        assert_eq!(ComplexMatrix::from_json_str(&s).unwrap(), m);
        assert!(ComplexMatrix::from_json_str(r#"{"dim":2,"entries":[[1,0]]}"#).is_err());
    }

    proptest! {
        #[test]
        fn kron_is_associative(a in arb_matrix(2), b in arb_matrix(2), cm in arb_matrix(2)) {
            let l = a.kron(&b).kron(&cm);
            let r = a.kron(&b.kron(&cm));
            prop_assert!(l.max_abs_diff(&r).unwrap() <= 1e-15);
        }

        #[test]
        fn kron_matches_oracle(a in arb_matrix(2), b in arb_matrix(4)) {
            prop_assert_eq!(a.kron(&b), kron_oracle(&a, &b));
        }

        #[test]
        fn trace_is_cyclic(a in arb_matrix(4), b in arb_matrix(4)) {
            let ab = a.matmul(&b).unwrap().trace();
            let ba = b.matmul(&a).unwrap().trace();
            prop_assert!((ab - ba).norm() <= 1e-12);
        }

        #[test]
        fn partial_trace_of_product(a in arb_matrix(4), b in arb_matrix(2)) {
            let lhs = a.kron(&b).partial_trace_last(2).unwrap();
            let rhs = a.scale(b.trace());
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12);
        }

        #[test]
        fn dagger_is_involution(a in arb_matrix(4)) {
            prop_assert_eq!(a.dagger().dagger(), a);
        }

        #[test]
        fn unitaries_closed_under_product(i in 0usize..32, j in 0usize..32) {
            let gates = catalog::unitary_catalog();
            let (u, v) = (&gates[i % gates.len()].1, &gates[j % gates.len()].1);
            let uv = if u.dim() == v.dim() { u.matmul(v).unwrap() } else { u.kron(v) };
            prop_assert!(uv.is_unitary(Tolerance::EXACT));
        }
    }
}
