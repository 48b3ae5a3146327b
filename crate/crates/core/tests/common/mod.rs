#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmf::{generate_front, FrontShape, FrontSpec, ObjectiveVector, ReferenceSet};

pub fn p(x: f64, y: f64) -> ObjectiveVector {
    ObjectiveVector::xy(x, y).unwrap()
}

pub fn front(shape: FrontShape, n: usize) -> ReferenceSet {
    generate_front(&FrontSpec::new(shape, n)).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Points scattered around the front: a vertical offset of up to `spread`
/// in either direction, plus a few far away.
pub fn scatter(
    shape: FrontShape,
    n: usize,
    spread: f64,
    rng: &mut impl Rng,
) -> Vec<ObjectiveVector> {
    (0..n)
        .map(|i| {
            if i % 10 == 9 {
                p(rng.gen_range(-0.5..1.5), rng.gen_range(-0.5..1.5))
            } else {
                let x: f64 = rng.gen_range(0.0..1.0);
                p(x, shape.eval(x) + rng.gen_range(-spread..spread))
            }
        })
        .collect()
}
