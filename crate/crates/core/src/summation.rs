//! Fixed-order pairwise summation.
//!
//! Quadrature accumulations and report aggregates go through these helpers so
//! that results are independent of chunking and identical from run to run.

use crate::algebra::{Multivector, Scalar};

const LEAF: usize = 8;

pub fn pairwise_sum_f64(values: &[f64]) -> f64 {
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum_f64(&values[..mid]) + pairwise_sum_f64(&values[mid..])
}

pub fn pairwise_sum_multivectors<S: Scalar>(values: &[Multivector<S>]) -> Multivector<S> {
    assert!(!values.is_empty(), "cannot sum an empty multivector slice");
    if values.len() <= LEAF {
        let mut acc = values[0].clone();
        for v in &values[1..] {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    &pairwise_sum_multivectors(&values[..mid]) + &pairwise_sum_multivectors(&values[mid..])
}
