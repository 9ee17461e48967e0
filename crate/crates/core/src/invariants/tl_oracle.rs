//! Bracket of a braid closure by direct state sum over crossing smoothings.
//!
//! Every letter is smoothed either to the identity or to the cup-cap
//! generator `e_i`; the resulting planar diagrams are stitched together
//! through the word, closed, and their loops counted. A state contributes
//! its smoothing weight times `d^(loops - 1)`, which makes the trivial braid
//! on `n` strands evaluate to `d^(n-1)`.

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::invariants::bracket::BracketParams;
use crate::par::{self, Execution};
use crate::tensor::{Complex, ONE};

pub const MAX_LETTERS: usize = 16;

/// A Temperley-Lieb diagram on `n` strands: a planar pairing of the top
/// points `0..n` and bottom points `n..2n`, plus the loops removed so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TlDiagram {
    pair: Vec<usize>,
    loops: u32,
}

impl TlDiagram {
    pub fn identity(n: usize) -> Self {
        let pair = (0..2 * n).map(|p| if p < n { p + n } else { p - n }).collect();
        TlDiagram { pair, loops: 0 }
    }

    /// Cup-cap joining strands `i` and `i + 1` (1-based `i`).
    pub fn generator(n: usize, i: usize) -> Self {
        let mut d = Self::identity(n);
        let (a, b) = (i - 1, i);
        d.pair[a] = b;
        d.pair[b] = a;
        d.pair[n + a] = n + b;
        d.pair[n + b] = n + a;
        d
    }

    pub fn n_strands(&self) -> usize {
        self.pair.len() / 2
    }

    pub fn loops(&self) -> u32 {
        self.loops
    }

    /// Stack `next` below `self`.
    pub fn then(&self, next: &TlDiagram) -> TlDiagram {
        let n = self.n_strands();
        let mut pair = vec![usize::MAX; 2 * n];
        let mut seen = vec![false; n];

        // Outer points: tops of `self` (0..n) and bottoms of `next` (n..2n).
        for start in 0..2 * n {
            if pair[start] != usize::MAX {
                continue;
            }
            let mut in_self = start < n;
            let mut q = if in_self { self.pair[start] } else { next.pair[start] };
            let end = loop {
                if in_self {
                    if q < n {
                        break q;
                    }
                    let mid = q - n;
                    seen[mid] = true;
                    q = next.pair[mid];
                    in_self = false;
                } else {
                    if q >= n {
                        break q;
                    }
                    seen[q] = true;
                    q = self.pair[n + q];
                    in_self = true;
                }
            };
            pair[start] = end;
            pair[end] = start;
        }

        // Whatever is left in the middle closes up into loops.
        let mut loops = self.loops + next.loops;
        for j in 0..n {
            if seen[j] {
                continue;
            }
            loops += 1;
            let mut cur = j;
            loop {
                seen[cur] = true;
                let a = next.pair[cur];
                seen[a] = true;
                let b = self.pair[n + a] - n;
                if b == j {
                    break;
                }
                cur = b;
            }
        }
        TlDiagram { pair, loops }
    }

    /// Loops of the trace closure (top `i` joined to bottom `i`), including
    /// those already removed.
    pub fn closure_loops(&self) -> u32 {
        let n = self.n_strands();
        let mut seen = vec![false; 2 * n];
        let mut count = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut p = start;
            loop {
                seen[p] = true;
                let q = self.pair[p];
                seen[q] = true;
                p = if q < n { q + n } else { q - n };
                if p == start {
                    break;
                }
            }
        }
        self.loops + count
    }
}

pub fn bracket_oracle(b: &BraidWord, p: &BracketParams) -> Result<Complex> {
    bracket_oracle_with(b, p, Execution::default())
}

pub fn bracket_oracle_with(b: &BraidWord, p: &BracketParams, exec: Execution) -> Result<Complex> {
    let len = b.len();
    if len > MAX_LETTERS {
        return Err(Error::Guard { what: "braid length for the state sum", value: len, limit: MAX_LETTERS });
    }
    let n = b.n_strands();
    let a = p.a();
    let ainv = a.inv();
    let d = p.d();
    let id = TlDiagram::identity(n);
    let gens: Vec<TlDiagram> =
        b.letters().iter().map(|&g| TlDiagram::generator(n, g.unsigned_abs() as usize)).collect();

    Ok(par::sum_range(exec, 1usize << len, Complex::new(0.0, 0.0), |state| {
        let mut diagram = id.clone();
        let mut weight = ONE;
        for (k, &g) in b.letters().iter().enumerate() {
            let cup = (state >> k) & 1 == 1;
            // Positive crossings: A for the identity smoothing, A^-1 for cup-cap.
            weight *= if cup == (g > 0) { ainv } else { a };
            if cup {
                diagram = diagram.then(&gens[k]);
            }
        }
        weight * d.powi(diagram.closure_loops() as i32 - 1)
    }))
}
