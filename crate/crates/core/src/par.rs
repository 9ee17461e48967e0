//! Execution strategy for the data-parallel inner loops.
//!
//! Every hot loop in the crate (dense products, local-gate application,
//! state-sum enumeration, shot sampling) is written as an indexed map or sum
//! and routed through the helpers here. With the `parallel` feature the
//! helpers dispatch to rayon; without it, or when [`Execution::Sequential`]
//! is requested, they run on the calling thread. Results are identical in
//! both modes: maps preserve index order and sums over exact types are
//! associative. Floating sums are reduced in a fixed chunk order so the
//! parallel result does not depend on the thread count.

use std::ops::Add;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Whether this request will actually fan out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Below this many items the parallel path is not worth the scheduling cost.
const MIN_PARALLEL_LEN: usize = 64;

/// `(0..len).map(f).collect()`, in index order.
pub fn map_range<T, F>(exec: Execution, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && len >= MIN_PARALLEL_LEN {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Fill `out` in place with `f(index)`, row-chunked by `chunk`.
pub fn fill_chunks<T, F>(exec: Execution, out: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    assert!(chunk > 0);
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && out.len() / chunk >= 2 {
        use rayon::prelude::*;
        out.par_chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
        return;
    }
    let _ = exec;
    for (i, c) in out.chunks_mut(chunk).enumerate() {
        f(i, c);
    }
}

/// Sum of `f(i)` for `i in 0..len`.
///
/// The range is cut into fixed blocks whose partial sums are combined left to
/// right, so floating results match between the two execution modes.
pub fn sum_range<T, F>(exec: Execution, len: usize, zero: T, f: F) -> T
where
    T: Add<Output = T> + Clone + Send + Sync,
    F: Fn(usize) -> T + Sync + Send,
{
    const BLOCK: usize = 256;
    let blocks = len.div_ceil(BLOCK);
    let partial = map_range(exec, blocks, |b| {
        let lo = b * BLOCK;
        let hi = (lo + BLOCK).min(len);
        (lo..hi).fold(zero.clone(), |acc, i| acc + f(i))
    });
    partial.into_iter().fold(zero, |acc, p| acc + p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let seq = map_range(Execution::Sequential, 1000, |i| i * i);
        let par = map_range(Execution::Parallel, 1000, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(seq[31], 961);
    }

    #[test]
    fn float_sum_is_mode_independent() {
        let f = |i: usize| 1.0 / (1.0 + i as f64);
        let a = sum_range(Execution::Sequential, 100_000, 0.0, f);
        let b = sum_range(Execution::Parallel, 100_000, 0.0, f);
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn fill_chunks_covers_every_row() {
        let mut v = vec![0usize; 40];
        fill_chunks(Execution::Parallel, &mut v, 4, |row, c| {
            for x in c.iter_mut() {
                *x = row;
            }
        });
        assert_eq!(v[0], 0);
        assert_eq!(v[39], 9);
    }
}
