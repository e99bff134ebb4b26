//! The four rank weights of a vector over L and the induced distances.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::construction::span_poly;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::linalg::{rank_over_k, rank_over_l};

/// ω₁ … ω₄ of one vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    /// Degree of the annihilator of the K-span of the entries.
    pub w1: usize,
    /// Rank over L of X_θ.
    pub w2: usize,
    /// Rank over K of X_θ.
    pub w3: usize,
    /// Rank over K of the coordinate matrix X_B.
    pub w4: usize,
}

impl RankProfile {
    /// ω₁ = ω₂ ≤ ω₃ = ω₄
    pub fn satisfies_chain(&self) -> bool {
        self.w1 == self.w2 && self.w2 <= self.w3 && self.w3 == self.w4
    }

    pub fn get(&self, i: usize) -> Result<usize> {
        match i {
            1 => Ok(self.w1),
            2 => Ok(self.w2),
            3 => Ok(self.w3),
            4 => Ok(self.w4),
            _ => Err(Error::MetricIndex(i)),
        }
    }
}

/// The m×n matrix whose row j is (θʲ(v₁), …, θʲ(vₙ)).
pub fn theta_matrix(tower: &Arc<FieldTower>, v: &[FieldElement]) -> Vec<Vec<FieldElement>> {
    (0..tower.degree()).map(|j| v.iter().map(|x| x.theta_pow(j)).collect()).collect()
}

pub fn rank_weights(tower: &Arc<FieldTower>, v: &[FieldElement]) -> RankProfile {
    if v.is_empty() {
        return RankProfile { w1: 0, w2: 0, w3: 0, w4: 0 };
    }
    let x_theta = theta_matrix(tower, v);
    RankProfile {
        w1: span_poly(tower, v).degree().unwrap_or(0),
        w2: rank_over_l(&x_theta),
        w3: rank_over_k(&x_theta),
        // X_B is a single row of L-entries blown up into coordinates
        w4: rank_over_k(&[v.to_vec()]),
    }
}

/// d_{R,i}(x, y) = ωᵢ(x − y) for i ∈ 1..=4.
pub fn rank_distance(tower: &Arc<FieldTower>, x: &[FieldElement], y: &[FieldElement], i: usize) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), got: y.len() });
    }
    if !(1..=4).contains(&i) {
        return Err(Error::MetricIndex(i));
    }
    let diff: Vec<FieldElement> = x.iter().zip(y).map(|(a, b)| a.checked_sub(b)).collect::<Result<_>>()?;
    if i == 1 {
        // avoid the L-rank computations when only ω₁ is asked for
        return Ok(span_poly(tower, &diff).degree().unwrap_or(0));
    }
    rank_weights(tower, &diff).get(i)
}
