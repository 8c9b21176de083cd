//! Shared helpers for the pipeline benchmarks.

use quadmops::rational::{rat, Rational};
use quadmops::RatMatrix;

/// A dense invertible rational matrix with pseudo-random small entries,
/// deterministic in `seed`.
pub fn dense_matrix(n: usize, seed: u64) -> RatMatrix {
    let mut state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut m = RatMatrix::from_fn(n, n, |_, _| {
        let num = (next() % 19) as i64 - 9;
        let den = (next() % 7) as i64 + 1;
        rat(num, den)
    });
    // Diagonal dominance keeps the matrix invertible without a search.
    for i in 0..n {
        let bumped = m.at(i, i) + Rational::from_integer(64.into());
        m.set(i, i, bumped);
    }
    m
}
