//! Linking-number state sum for the diagonal (`R'`-type) vertex model.
//!
//! Each component of the closure gets one of two labels. A crossing whose
//! strands carry equal labels weighs `a`, unequal labels weigh `c`; negative
//! crossings use `1/a` and `1/c`. On two-component links the normalized sum
//! `Z = a^(-writhe) * Sigma` equals `2 (1 + (c/a)^(2 lk))`.

use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::tensor::{Complex, ONE};

pub const MAX_COMPONENTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkingWeights {
    a: Complex,
    c: Complex,
}

impl LinkingWeights {
    pub fn new(a: Complex, c: Complex) -> Result<Self> {
        if a.norm() == 0.0 || c.norm() == 0.0 || !a.is_finite() || !c.is_finite() {
            return Err(Error::ZeroWeight);
        }
        Ok(LinkingWeights { a, c })
    }

    pub fn a(&self) -> Complex {
        self.a
    }

    pub fn c(&self) -> Complex {
        self.c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkingSum {
    pub sigma: Complex,
    pub z: Complex,
}

pub fn linking_state_sum(b: &BraidWord, w: LinkingWeights) -> Result<LinkingSum> {
    linking_state_sum_with(b, w, Execution::default())
}

pub fn linking_state_sum_with(b: &BraidWord, w: LinkingWeights, exec: Execution) -> Result<LinkingSum> {
    let info = b.closure_info();
    let count = info.component_count;
    if count > MAX_COMPONENTS {
        return Err(Error::Guard { what: "component count", value: count, limit: MAX_COMPONENTS });
    }

    // (component bit of each strand, weight if equal, weight if different)
    let mut crossings = Vec::with_capacity(b.len());
    let mut strand_at: Vec<usize> = (0..b.n_strands()).collect();
    for &g in b.letters() {
        let i = g.unsigned_abs() as usize;
        let ca = info.component_of_strand[strand_at[i - 1]] - 1;
        let cb = info.component_of_strand[strand_at[i]] - 1;
        let (same, diff) = if g > 0 { (w.a, w.c) } else { (w.a.inv(), w.c.inv()) };
        crossings.push((ca, cb, same, diff));
        strand_at.swap(i - 1, i);
    }

    let sigma = par::sum_range(exec, 1usize << count, Complex::new(0.0, 0.0), |labels| {
        crossings.iter().fold(ONE, |acc, &(ca, cb, same, diff)| {
            let equal = (labels >> ca) & 1 == (labels >> cb) & 1;
            acc * if equal { same } else { diff }
        })
    });
    let z = sigma * w.a.powi(-(info.writhe as i32));
    Ok(LinkingSum { sigma, z })
}

/// `2 (1 + (c^2 / a^2)^lk)`.
pub fn two_component_formula(w: LinkingWeights, lk: i64) -> Complex {
    let ratio = (w.c * w.c) / (w.a * w.a);
    (ONE + ratio.powi(lk as i32)) * 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit(t: f64) -> Complex {
        Complex::from_polar(1.0, t)
    }

    fn close(a: Complex, b: Complex) -> bool {
        (a - b).norm() <= 1e-12 * (1.0 + b.norm())
    }

    #[test]
    fn hopf_link() {
        let w = LinkingWeights::new(unit(0.4), unit(-1.3)).unwrap();
        let s = linking_state_sum(&"1 1".parse().unwrap(), w).unwrap();
        assert!(close(s.sigma, (w.a() * w.a() + w.c() * w.c()) * 2.0));
        let r = w.c() / w.a();
        assert!(close(s.z, (ONE + r * r) * 2.0));
    }

    #[test]
    fn unlink_and_torus_links() {
        let w = LinkingWeights::new(unit(1.1), Complex::new(0.3, 0.7)).unwrap();
        let s = linking_state_sum(&BraidWord::identity(2), w).unwrap();
        assert!(close(s.z, Complex::new(4.0, 0.0)));
        for k in 0..=5 {
            let b = BraidWord::power(2, 1, 2 * k).unwrap();
            let s = linking_state_sum(&b, w).unwrap();
            assert!(close(s.z, two_component_formula(w, k as i64)), "k={k}");
        }
    }

    #[test]
    fn weights_must_be_nonzero() {
        assert_eq!(LinkingWeights::new(Complex::new(0.0, 0.0), ONE), Err(Error::ZeroWeight));
    }

    #[test]
    fn one_component_sum() {
        // Every crossing of a knot is a self-crossing: Sigma = 2 a^w.
        let w = LinkingWeights::new(unit(0.3), unit(2.0)).unwrap();
        let s = linking_state_sum(&"n=2; 1 1 1".parse().unwrap(), w).unwrap();
        assert!(close(s.z, Complex::new(2.0, 0.0)));
    }

    #[test]
    fn component_guard() {
        let w = LinkingWeights::new(ONE, ONE).unwrap();
        let err = linking_state_sum(&BraidWord::identity(21), w).unwrap_err();
        assert!(err.is_guard());
    }

    proptest! {
        #[test]
        fn two_component_words_match_formula(
            letters in prop::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..=10),
            ta in -3.0f64..3.0, tc in -3.0f64..3.0,
        ) {
            let b = BraidWord::new(3, letters).unwrap();
            let info = b.closure_info();
            prop_assume!(info.component_count == 2);
            let w = LinkingWeights::new(unit(ta), unit(tc)).unwrap();
            let s = linking_state_sum(&b, w).unwrap();
            prop_assert!(close(s.z, two_component_formula(w, info.linking_number(1, 2))));
        }

        #[test]
        fn modes_agree(letters in prop::collection::vec(prop_oneof![Just(1i32), Just(-2), Just(3), Just(-3)], 0..=10)) {
            let b = BraidWord::new(8, letters).unwrap();
            let w = LinkingWeights::new(unit(0.2), unit(0.9)).unwrap();
            let s = linking_state_sum_with(&b, w, Execution::Sequential).unwrap();
            let p = linking_state_sum_with(&b, w, Execution::Parallel).unwrap();
            prop_assert_eq!(s, p);
        }
    }
}
