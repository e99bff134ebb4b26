//! Operation-count scaling of decoding and of the annihilator construction.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::campaign::{run_trial, trial_seed, SolverChoice};
use crate::code::{GabidulinCode, DEFAULT_BOX};
use crate::construction::{annihilator, SubspaceBasis};
use crate::counter::count_ops;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::linalg::Echelon;

/// Largest acceptable growth of the mean operation count when the size doubles.
pub const DOUBLING_LIMIT: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub size: usize,
    pub mean_ops: f64,
    /// mean_ops relative to the previous row, or `null` for the first row.
    pub ratio: Option<f64>,
    /// The ratio rescaled to a doubling of the size: ratio^(1 / log₂(size / prev)).
    pub doubling_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingTable {
    pub p: u32,
    pub g: u32,
    pub rows: Vec<ScalingRow>,
}

impl ScalingTable {
    fn from_means(p: u32, g: u32, means: Vec<(usize, f64)>) -> Self {
        let mut rows: Vec<ScalingRow> = Vec::with_capacity(means.len());
        for (i, &(size, mean_ops)) in means.iter().enumerate() {
            let (ratio, doubling_ratio) = if i == 0 {
                (None, None)
            } else {
                let (prev, prev_ops) = means[i - 1];
                let r = mean_ops / prev_ops;
                let octaves = (size as f64 / prev as f64).log2();
                (Some(r), Some(r.powf(1.0 / octaves)))
            };
            rows.push(ScalingRow { size, mean_ops, ratio, doubling_ratio });
        }
        ScalingTable { p, g, rows }
    }

    /// Rows whose doubling-equivalent ratio exceeds `limit`.
    pub fn violations(&self, limit: f64) -> Vec<&ScalingRow> {
        self.rows.iter().filter(|r| r.doubling_ratio.is_some_and(|d| d > limit)).collect()
    }

    pub fn render(&self) -> String {
        let mut out = format!("{:>6} {:>14} {:>8} {:>8}\n", "size", "mean_ops", "ratio", "x2");
        for r in &self.rows {
            let fmt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.3}"));
            out += &format!("{:>6} {:>14.1} {:>8} {:>8}\n", r.size, r.mean_ops, fmt(r.ratio), fmt(r.doubling_ratio));
        }
        out
    }
}

/// Mean total operation count of decoding [n, n/3] codes with errors of rank
/// ⌊(n − k)/2⌋, over `seeds` seeded trials per length.
pub fn decode_scaling(p: u32, g: u32, sizes: &[usize], seeds: usize, solver: SolverChoice) -> Result<ScalingTable> {
    let tower = FieldTower::new(p, g)?;
    let mut means = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let k = (n / 3).max(1);
        let code = GabidulinCode::new(&tower, n, k, None)?;
        let tau = (n - k) / 2;
        let mut total = 0u64;
        for s in 0..seeds {
            let rec = run_trial(&code, tau, s, trial_seed(n as u64, tau, s), solver, DEFAULT_BOX, false)?;
            if !rec.success {
                return Err(Error::InvalidCode(format!("decoding failed at n = {n}, seed {s}")));
            }
            total += rec.ops.total();
        }
        means.push((n, total as f64 / seeds.max(1) as f64));
    }
    Ok(ScalingTable::from_means(p, g, means))
}

/// `s` K-independent elements with coordinates in `[-bound, bound]`.
pub fn random_independent<R: rand::Rng + ?Sized>(
    tower: &std::sync::Arc<FieldTower>,
    s: usize,
    rng: &mut R,
    bound: i64,
) -> Result<Vec<FieldElement>> {
    if s > tower.degree() {
        return Err(Error::RankOutOfRange { tau: s, max: tower.degree() });
    }
    let mut ech = Echelon::new(tower.degree());
    let mut out = Vec::with_capacity(s);
    while out.len() < s {
        let x = FieldElement::random(tower, rng, bound);
        if ech.insert(x.numerators().to_vec()) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Mean operation count of the annihilator of random s-dimensional subspaces.
pub fn annihilator_scaling(p: u32, g: u32, dims: &[usize], seeds: usize, bound: i64) -> Result<ScalingTable> {
    let tower = FieldTower::new(p, g)?;
    let mut means = Vec::with_capacity(dims.len());
    for &s in dims {
        let mut total = 0u64;
        for seed in 0..seeds {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(p as u64, s, seed));
            let basis = SubspaceBasis::new(&tower, random_independent(&tower, s, &mut rng, bound)?)?;
            let (a, ops) = count_ops(|| annihilator(&basis));
            debug_assert_eq!(a?.degree(), Some(s));
            total += ops.total();
        }
        means.push((s, total as f64 / seeds.max(1) as f64));
    }
    Ok(ScalingTable::from_means(p, g, means))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios() {
        let t = ScalingTable::from_means(5, 2, vec![(2, 10.0), (4, 40.0), (12, 1000.0)]);
        assert_eq!(t.rows[0].ratio, None);
        assert_eq!(t.rows[1].ratio, Some(4.0));
        assert!((t.rows[1].doubling_ratio.unwrap() - 4.0).abs() < 1e-12);
        assert!(t.violations(DOUBLING_LIMIT).len() == 1);
        assert!(t.render().lines().count() == 4);
    }

    #[test]
    fn small_annihilator_growth() {
        let t = annihilator_scaling(7, 3, &[2, 4], 2, 1).unwrap();
        assert!(t.rows[1].mean_ops > t.rows[0].mean_ops);
    }
}
