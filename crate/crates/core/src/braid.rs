//! Braid words: parsing, group operations, closure structure, Markov moves.
//!
//! Text syntax is whitespace-separated nonzero integers, optionally prefixed
//! with `n=K;` to fix the strand count: `"n=3; 1 1 -2 1 -2"`. Letter `g`
//! stands for generator `s_|g|`, positive letters being the positive
//! crossing; the opposite sign is its inverse. Letters are read first to
//! last, and the first letter acts first on states.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n_strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n_strands: usize, letters: Vec<i32>) -> Result<Self> {
        if n_strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for &g in &letters {
            if g == 0 {
                return Err(Error::Parse("zero is not a braid letter".into()));
            }
            if g.unsigned_abs() as usize >= n_strands {
                return Err(Error::GeneratorOutOfRange { index: g, n_strands });
            }
        }
        Ok(BraidWord { n_strands, letters })
    }

    pub fn identity(n_strands: usize) -> Self {
        assert!(n_strands >= 1);
        BraidWord { n_strands, letters: Vec::new() }
    }

    /// `s^k` in `B_2` (negative `k` gives inverse letters).
    pub fn power(n_strands: usize, generator: i32, k: i32) -> Result<Self> {
        let letter = if k >= 0 { generator } else { -generator };
        Self::new(n_strands, vec![letter; k.unsigned_abs() as usize])
    }

    pub fn n_strands(&self) -> usize {
        self.n_strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Exponent sum.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&g| g.signum() as i64).sum()
    }

    /// Reverse the letters and flip every sign.
    pub fn inverse(&self) -> Self {
        BraidWord { n_strands: self.n_strands, letters: self.letters.iter().rev().map(|g| -g).collect() }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.n_strands != other.n_strands {
            return Err(Error::StrandMismatch { left: self.n_strands, right: other.n_strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n_strands: self.n_strands, letters })
    }

    /// Same letters on more strands.
    pub fn widen(&self, n_strands: usize) -> Result<Self> {
        Self::new(n_strands, self.letters.clone())
    }

    /// Copy with letter `site` replaced (`Some`) or removed (`None`).
    pub fn with_site(&self, site: usize, letter: Option<i32>) -> Result<Self> {
        if site >= self.letters.len() {
            return Err(Error::BadSite { site, len: self.letters.len() });
        }
        let mut letters = self.letters.clone();
        match letter {
            Some(g) => letters[site] = g,
            None => {
                letters.remove(site);
            }
        }
        Self::new(self.n_strands, letters)
    }

    /// `perm[p]` is the bottom position reached by the strand starting at top position `p` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut strand_at: Vec<usize> = (0..self.n_strands).collect();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize;
            strand_at.swap(i - 1, i);
        }
        let mut perm = vec![0; self.n_strands];
        for (pos, &strand) in strand_at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Components, writhe and pairwise linking numbers of the closure.
    pub fn closure_info(&self) -> ClosureInfo {
        let perm = self.permutation();
        let n = self.n_strands;

        // Closing joins bottom position p to top position p, so the strand
        // that starts at p continues as the strand starting at perm[p].
        let mut component_of_strand = vec![0usize; n];
        let mut count = 0;
        for start in 0..n {
            if component_of_strand[start] != 0 {
                continue;
            }
            count += 1;
            let mut s = start;
            while component_of_strand[s] == 0 {
                component_of_strand[s] = count;
                s = perm[s];
            }
        }

        let mut crossings: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        let mut strand_at: Vec<usize> = (0..n).collect();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize;
            let ca = component_of_strand[strand_at[i - 1]];
            let cb = component_of_strand[strand_at[i]];
            if ca != cb {
                *crossings.entry((ca.min(cb), ca.max(cb))).or_default() += g.signum() as i64;
            }
            strand_at.swap(i - 1, i);
        }

        ClosureInfo { component_count: count, component_of_strand, writhe: self.writhe(), signed_crossings: crossings }
    }

    /// Cancel adjacent `s_i s_i^-1` pairs until none remain. No braid relations are applied.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            if out.last() == Some(&-g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        BraidWord { n_strands: self.n_strands, letters: out }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let info = self.closure_info();
        serde_json::json!({
            "n": self.n_strands,
            "letters": self.letters,
            "components": info.component_count,
            "writhe": info.writhe,
            "linking": info.linking_triples().iter().map(|&(i, j, lk)| [i as i64, j as i64, lk]).collect::<Vec<_>>(),
        })
    }
}

/// Markov move 1: `g b g^-1`.
pub fn markov_conjugate(b: &BraidWord, g: &BraidWord) -> Result<BraidWord> {
    g.concat(b)?.concat(&g.inverse())
}

/// Markov move 2: add a strand and append `s_n^{sign}`.
pub fn markov_stabilize(b: &BraidWord, positive: bool) -> BraidWord {
    let n = b.n_strands as i32;
    let mut letters = b.letters.clone();
    letters.push(if positive { n } else { -n });
    BraidWord { n_strands: b.n_strands + 1, letters }
}

pub fn parse_braid(text: &str) -> Result<BraidWord> {
    text.parse()
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (explicit_n, body) = match text.split_once(';') {
            Some((head, rest)) => {
                let head = head.trim();
                let value = head
                    .strip_prefix("n=")
                    .or_else(|| head.strip_prefix("n ="))
                    .ok_or_else(|| Error::Parse(format!("expected `n=K;` prefix, got {head:?}")))?;
                let n: usize =
                    value.trim().parse().map_err(|e| Error::Parse(format!("strand count {value:?}: {e}")))?;
                (Some(n), rest)
            }
            None => (None, text),
        };
        let letters: Vec<i32> = body
            .split_whitespace()
            .map(|t| t.parse::<i32>().map_err(|e| Error::Parse(format!("letter {t:?}: {e}"))))
            .collect::<Result<_>>()?;
        let n = match explicit_n {
            Some(n) => n,
            None => {
                let max = letters
                    .iter()
                    .map(|g| g.unsigned_abs() as usize)
                    .max()
                    .ok_or_else(|| Error::Parse("empty braid word needs an explicit `n=K;`".into()))?;
                max + 1
            }
        };
        BraidWord::new(n, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.n_strands)?;
        for g in &self.letters {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureInfo {
    pub component_count: usize,
    /// Component id (1-based) of the strand starting at each top position.
    pub component_of_strand: Vec<usize>,
    pub writhe: i64,
    /// Signed count of crossings between each pair of distinct components
    /// (twice the linking number).
    #[serde(skip)]
    signed_crossings: BTreeMap<(usize, usize), i64>,
}

impl ClosureInfo {
    /// Linking number as a half-integer, `signed crossings / 2`.
    pub fn linking_half(&self, i: usize, j: usize) -> f64 {
        self.signed_count(i, j) as f64 / 2.0
    }

    pub fn signed_count(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return 0;
        }
        *self.signed_crossings.get(&(i.min(j), i.max(j))).unwrap_or(&0)
    }

    /// Integral linking number of two distinct closed components.
    pub fn linking_number(&self, i: usize, j: usize) -> i64 {
        let twice = self.signed_count(i, j);
        assert!(twice % 2 == 0, "odd inter-component crossing count {twice} between {i} and {j}");
        twice / 2
    }

    /// `(i, j, lk)` for every pair `i < j`.
    pub fn linking_triples(&self) -> Vec<(usize, usize, i64)> {
        let c = self.component_count;
        (1..=c).flat_map(|i| (i + 1..=c).map(move |j| (i, j))).map(|(i, j)| (i, j, self.linking_number(i, j))).collect()
    }
}
