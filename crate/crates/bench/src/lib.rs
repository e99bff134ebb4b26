//! Shared fixtures for the criterion benches.

use std::sync::Arc;

use gabidulin_core::code::DEFAULT_BOX;
use gabidulin_core::scaling::random_independent;
use gabidulin_core::{channel, FieldElement, FieldTower, GabidulinCode, Message, ReceivedWord, SkewPoly, SubspaceBasis};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn tower(p: u32, g: u32) -> Arc<FieldTower> {
    FieldTower::new(p, g).expect("valid field")
}

/// `count` seeded random elements with coordinates in `[-bound, bound]`.
pub fn elements(tower: &Arc<FieldTower>, count: usize, seed: u64, bound: i64) -> Vec<FieldElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| FieldElement::random(tower, &mut rng, bound)).collect()
}

pub fn poly(tower: &Arc<FieldTower>, degree: usize, seed: u64) -> SkewPoly {
    SkewPoly::from_coeffs(tower, elements(tower, degree + 1, seed, DEFAULT_BOX)).expect("same tower")
}

pub struct Instance {
    pub code: GabidulinCode,
    pub message: Message,
    pub received: ReceivedWord,
}

/// An [n, k] code with a received word carrying an error of rank τ.
pub fn instance(tower: &Arc<FieldTower>, n: usize, k: usize, tau: usize, seed: u64) -> Instance {
    let code = GabidulinCode::new(tower, n, k, None).expect("valid code");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let message = code.random_message(&mut rng, DEFAULT_BOX);
    let (received, _) = channel(&code, &message, tau, seed).expect("valid rank");
    Instance { code, message, received }
}

/// A random s-dimensional subspace with coordinates in `{-1, 0, 1}`.
pub fn subspace(tower: &Arc<FieldTower>, s: usize, seed: u64) -> SubspaceBasis {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vectors = random_independent(tower, s, &mut rng, 1).expect("s <= m");
    SubspaceBasis::new(tower, vectors).expect("independent")
}
