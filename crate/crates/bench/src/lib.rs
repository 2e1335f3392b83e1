//! Shared fixtures for the benchmarks.

use superfock_core::{Cyclotomic, FockShape, PrimitiveParams, Rational, SuperDim};

/// A fixed spread of elements of ℚ(ζ₈) with small and large coefficients.
pub fn sample_cyclotomics() -> Vec<Cyclotomic> {
    (1..=8)
        .map(|k| {
            let r = |a: i64, b: i64| Rational::new(a * k, b + k);
            Cyclotomic::new(r(3, 1), r(-5, 2), r(7, 3), r(-11, 4))
        })
        .collect()
}

pub fn shape(m: usize, n: usize, odd: bool, l: usize) -> FockShape {
    FockShape::new(SuperDim::new(m, n, odd), l).expect("benchmark shape within limits")
}

/// Parameters of a moderately large primitive vector on `osp(4/5)`.
pub fn large_params() -> (PrimitiveParams, SuperDim) {
    (PrimitiveParams::new(4, vec![2, 1], vec![1, 2]), SuperDim::new(2, 2, true))
}
