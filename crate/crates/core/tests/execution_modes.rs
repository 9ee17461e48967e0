//! Sequential and parallel execution give identical results.

use braidgate::gates::catalog;
use braidgate::invariants::bracket::BracketParams;
use braidgate::invariants::linking::{linking_state_sum_with, LinkingWeights};
use braidgate::invariants::tau::tau_with;
use braidgate::invariants::tl_oracle::bracket_oracle_with;
use braidgate::quantum::{random_unitary, sample_trace_probability_with};
use braidgate::rep::{rep_exact_with, rep_matrix_with};
use braidgate::{BraidWord, Complex, Execution};

use Execution::{Parallel, Sequential};

fn w(s: &str) -> BraidWord {
    s.parse().unwrap()
}

#[test]
fn dense_and_exact_representations() {
    let b = w("n=7; 1 2 3 4 5 6 -1 -3 -5 2 4 6 1");
    assert_eq!(rep_exact_with(&b, Sequential).unwrap(), rep_exact_with(&b, Parallel).unwrap());
    assert_eq!(tau_with(&b, Sequential).unwrap(), tau_with(&b, Parallel).unwrap());
    let r = catalog::r();
    assert_eq!(rep_matrix_with(&b, &r, Sequential).unwrap(), rep_matrix_with(&b, &r, Parallel).unwrap());
    let a = random_unitary(96, 1);
    let c = random_unitary(96, 2);
    assert_eq!(a.matmul_with(&c, Sequential).unwrap(), a.matmul_with(&c, Parallel).unwrap());
}

#[test]
fn state_sums() {
    let p = BracketParams::from_theta(0.41);
    let b = w("1 -2 1 -2 1 2 2 -1 1 -2");
    assert_eq!(bracket_oracle_with(&b, &p, Sequential).unwrap(), bracket_oracle_with(&b, &p, Parallel).unwrap());
    let weights = LinkingWeights::new(Complex::new(0.3, 0.9), Complex::new(-1.1, 0.2)).unwrap();
    let chain = BraidWord::new(9, vec![1, 1, 3, 3, 5, 5, 7, 7]).unwrap();
    assert_eq!(
        linking_state_sum_with(&chain, weights, Sequential).unwrap(),
        linking_state_sum_with(&chain, weights, Parallel).unwrap()
    );
}

#[test]
fn sampling() {
    let u = random_unitary(8, 3);
    let seq = sample_trace_probability_with(&u, 50_000, 99, Sequential).unwrap();
    let par = sample_trace_probability_with(&u, 50_000, 99, Parallel).unwrap();
    assert_eq!(seq, par);
}
