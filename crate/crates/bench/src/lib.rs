//! Shared fixtures for the benchmarks.

use rchi_core::{Bisector, CartanType, CoverDatum, QuadraticInput, RootDatum};

pub fn cover(t: CartanType, r: usize, q: Vec<i64>, n: u32) -> CoverDatum {
    CoverDatum::new(RootDatum::preset(t, r).unwrap(), QuadraticInput::OnSimpleCoroots(q), Bisector::StandardUpper, n, 1)
        .unwrap()
}
