//! Inputs shared by the benchmarks.

use gysin_core::{FlagGeometry, TPoly};

/// `(t_1 + ... + t_d)^k`
pub fn power_of_sum(d: usize, k: u32) -> TPoly {
    (0..d)
        .fold(TPoly::zero(d), |acc, i| acc.add(&TPoly::var(d, i)).unwrap())
        .pow(k)
        .unwrap()
}

/// The class whose pushforward is the degree of the fiber in its Plücker-type embedding.
pub fn degree_input(g: &FlagGeometry) -> TPoly {
    power_of_sum(g.d(), g.fiber_dim().max(0) as u32)
}
