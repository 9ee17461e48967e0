//! The standard braid group representation `s_i -> I (x) .. (x) R (x) .. (x) I`
//! and circuits that mix braiding letters with single-strand gates.
//!
//! Letters act in word order: the matrix of `g_1 g_2 ... g_L` is
//! `M_L ... M_2 M_1`, so the first letter is the first gate a state meets.

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::exact::ExactScaledMatrix;
use crate::gates::catalog;
use crate::par::Execution;
use crate::tensor::{ComplexMatrix, MatrixJson, Tolerance};

/// Largest strand count accepted by the dense representations (dimension 4096).
pub const MAX_STRANDS: usize = 12;

pub fn check_strand_guard(n_strands: usize) -> Result<()> {
    if n_strands > MAX_STRANDS {
        return Err(Error::Guard { what: "strand count", value: n_strands, limit: MAX_STRANDS });
    }
    Ok(())
}

fn inverse_gate(r: &ComplexMatrix) -> Result<ComplexMatrix> {
    if r.is_unitary(Tolerance::EXACT) {
        Ok(r.dagger())
    } else {
        r.inverse()
    }
}

pub fn rep_matrix(b: &BraidWord, r: &ComplexMatrix) -> Result<ComplexMatrix> {
    rep_matrix_with(b, r, Execution::default())
}

pub fn rep_matrix_with(b: &BraidWord, r: &ComplexMatrix, exec: Execution) -> Result<ComplexMatrix> {
    if r.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, actual: r.dim() });
    }
    check_strand_guard(b.n_strands())?;
    let r_inv = if b.letters().iter().any(|&g| g < 0) { Some(inverse_gate(r)?) } else { None };
    let mut acc = ComplexMatrix::identity(1 << b.n_strands());
    for &g in b.letters() {
        let gate = if g > 0 { r } else { r_inv.as_ref().expect("computed above") };
        acc = acc.left_apply_local(gate, g.unsigned_abs() as usize, exec)?;
    }
    Ok(acc)
}

/// Exact representation for the catalog `R`, built from the integer matrix
/// `sqrt(2) R` (and its transpose for inverse letters). `scale_exp` equals
/// the word length.
pub fn rep_exact(b: &BraidWord) -> Result<ExactScaledMatrix> {
    rep_exact_with(b, Execution::default())
}

pub fn rep_exact_with(b: &BraidWord, exec: Execution) -> Result<ExactScaledMatrix> {
    rep_exact_using(b, &ExactScaledMatrix::from_i64(&catalog::R_SCALED_INT, 1), exec)
}

/// Exact representation for another integer generator; inverse letters use
/// its transpose, so `gen` should be orthogonal up to its scale.
pub fn rep_exact_using(b: &BraidWord, gen: &ExactScaledMatrix, exec: Execution) -> Result<ExactScaledMatrix> {
    check_strand_guard(b.n_strands())?;
    if gen.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, actual: gen.dim() });
    }
    let gen_inv = gen.transpose();
    let mut acc = ExactScaledMatrix::identity(1 << b.n_strands());
    for &g in b.letters() {
        let gate = if g > 0 { gen } else { &gen_inv };
        acc = acc.left_apply_local(gate, g.unsigned_abs() as usize, exec)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub enum CircuitItem {
    Braid(i32),
    /// 1-based strand and a 2x2 gate.
    Local {
        strand: usize,
        gate: ComplexMatrix,
    },
}

/// Braiding letters interleaved with single-strand gates, in application order.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedCircuit {
    n_strands: usize,
    items: Vec<CircuitItem>,
}

impl ExtendedCircuit {
    pub fn new(n_strands: usize, items: Vec<CircuitItem>) -> Result<Self> {
        if n_strands == 0 {
            return Err(Error::Parse("a circuit needs at least one strand".into()));
        }
        for item in &items {
            match item {
                CircuitItem::Braid(g) => {
                    if *g == 0 || g.unsigned_abs() as usize >= n_strands {
                        return Err(Error::GeneratorOutOfRange { index: *g, n_strands });
                    }
                }
                CircuitItem::Local { strand, gate } => {
                    if *strand == 0 || *strand > n_strands {
                        return Err(Error::StrandOutOfRange { index: *strand, n_strands });
                    }
                    if gate.dim() != 2 {
                        return Err(Error::WrongDimension { expected: 2, actual: gate.dim() });
                    }
                }
            }
        }
        Ok(ExtendedCircuit { n_strands, items })
    }

    pub fn n_strands(&self) -> usize {
        self.n_strands
    }

    pub fn items(&self) -> &[CircuitItem] {
        &self.items
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: CircuitJson = serde_json::from_str(s)?;
        let items = raw
            .items
            .into_iter()
            .map(|it| match it {
                ItemJson::Braid(g) => Ok(CircuitItem::Braid(g)),
                ItemJson::Local { strand, gate } => {
                    let gate = ComplexMatrix::try_from(MatrixJson { dim: 2, entries: gate })?;
                    Ok(CircuitItem::Local { strand, gate })
                }
            })
            .collect::<Result<_>>()?;
        Self::new(raw.n, items)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<ItemJson> = self
            .items
            .iter()
            .map(|it| match it {
                CircuitItem::Braid(g) => ItemJson::Braid(*g),
                CircuitItem::Local { strand, gate } => {
                    ItemJson::Local { strand: *strand, gate: MatrixJson::from(gate).entries }
                }
            })
            .collect();
        serde_json::to_value(CircuitJson { n: self.n_strands, items }).expect("plain data")
    }
}

#[derive(Serialize, Deserialize)]
struct CircuitJson {
    n: usize,
    items: Vec<ItemJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ItemJson {
    Braid(i32),
    Local { strand: usize, gate: Vec<[f64; 2]> },
}

pub fn circuit_matrix(c: &ExtendedCircuit, r: &ComplexMatrix) -> Result<ComplexMatrix> {
    if r.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, actual: r.dim() });
    }
    check_strand_guard(c.n_strands)?;
    let exec = Execution::default();
    let r_inv = inverse_gate(r)?;
    let mut acc = ComplexMatrix::identity(1 << c.n_strands);
    for item in &c.items {
        acc = match item {
            CircuitItem::Braid(g) => {
                let gate = if *g > 0 { r } else { &r_inv };
                acc.left_apply_local(gate, g.unsigned_abs() as usize, exec)?
            }
            CircuitItem::Local { strand, gate } => acc.left_apply_local(gate, *strand, exec)?,
        };
    }
    Ok(acc)
}
