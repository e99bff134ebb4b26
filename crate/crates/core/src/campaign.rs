//! Seeded Monte-Carlo decoding campaigns.
//!
//! Every trial draws its message and error from its own ChaCha stream, seeded
//! from the campaign seed, τ and the trial index, so trials are independent
//! and can run in any order. Aggregation happens after sorting by
//! (τ, index), which makes reports byte-identical for a fixed configuration.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{channel_with_rng, GabidulinCode, DEFAULT_BOX};
use crate::counter::OpCounts;
use crate::decoder::{check_key_equation, decode_detailed, error_span, DecodeDetails, DecodeFailure, Solver};
use crate::error::{Error, Result};
use crate::field::FieldTower;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverChoice {
    Popov,
    Eea,
    /// Decode with the weak-Popov solver and cross-check against the EEA.
    Both,
}

impl SolverChoice {
    pub fn primary(self) -> Solver {
        match self {
            SolverChoice::Popov | SolverChoice::Both => Solver::Popov,
            SolverChoice::Eea => Solver::Eea,
        }
    }
}

impl fmt::Display for SolverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverChoice::Popov => "popov",
            SolverChoice::Eea => "eea",
            SolverChoice::Both => "both",
        })
    }
}

impl FromStr for SolverChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "popov" => Ok(SolverChoice::Popov),
            "eea" => Ok(SolverChoice::Eea),
            "both" => Ok(SolverChoice::Both),
            _ => Err(Error::Parse(format!("unknown solver {s:?} (expected popov, eea or both)"))),
        }
    }
}

fn default_box() -> i64 {
    DEFAULT_BOX
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub p: u32,
    pub g: u32,
    pub n: usize,
    pub k: usize,
    pub tau_min: usize,
    pub tau_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub solver: SolverChoice,
    /// Random coordinates are integers in `[-coeff_box, coeff_box]`.
    #[serde(default = "default_box")]
    pub coeff_box: i64,
}

impl CampaignConfig {
    /// Checks every field and builds the code.
    pub fn build_code(&self) -> Result<GabidulinCode> {
        let tower = FieldTower::new(self.p, self.g)?;
        let code = GabidulinCode::new(&tower, self.n, self.k, None)?;
        let max = self.n.min(tower.degree());
        if self.tau_max > max {
            return Err(Error::RankOutOfRange { tau: self.tau_max, max });
        }
        if self.tau_min > self.tau_max {
            return Err(Error::InvalidCode(format!("empty tau range {}..={}", self.tau_min, self.tau_max)));
        }
        if self.trials == 0 {
            return Err(Error::InvalidCode("trials must be positive".into()));
        }
        if self.coeff_box < 1 {
            return Err(Error::InvalidCode("coeff_box must be positive".into()));
        }
        Ok(code)
    }
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index` at rank `tau`.
pub fn trial_seed(master: u64, tau: usize, index: usize) -> u64 {
    mix(master ^ mix(((tau as u64) << 32) | index as u64))
}

/// Result of one trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub tau: usize,
    pub index: usize,
    pub success: bool,
    pub failure: Option<DecodeFailure>,
    pub ops: OpCounts,
    /// Whether both solvers agree up to a left scalar (only for `both`).
    pub solvers_agree: Option<bool>,
    /// Λ·r̂ ≡ Λ·f mod M_g with Λ from the injected error (only when verifying).
    pub key_equation: Option<bool>,
    /// Normalized λ is monic of degree τ, equals Λ, annihilates every error
    /// coordinate, and Ω = Λ·f (only when verifying a successful decode).
    pub solution_shape: Option<bool>,
    /// deg λ ≤ τ, deg ω < τ + k and λ(r̂(gᵢ)) = ω(gᵢ) for all i (only when verifying).
    pub reconstruction: Option<bool>,
}

fn solutions_agree(a: &DecodeDetails, b: &DecodeDetails) -> Result<bool> {
    Ok(match (&a.srp, &b.srp) {
        (Some(x), Some(y)) => x.proportional_to(y)?,
        (None, None) => true,
        _ => false,
    })
}

/// Runs one seeded trial: random message, rank-τ error, decode.
pub fn run_trial(
    code: &GabidulinCode,
    tau: usize,
    index: usize,
    seed: u64,
    solver: SolverChoice,
    coeff_box: i64,
    verify: bool,
) -> Result<TrialRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let msg = code.random_message(&mut rng, coeff_box);
    let (r, e) = channel_with_rng(code, &msg, tau, &mut rng, coeff_box)?;
    let details = decode_detailed(code, &r, solver.primary())?;
    let success = details.result.as_ref().is_ok_and(|f| f == &msg);

    let solvers_agree = match solver {
        SolverChoice::Both => Some(solutions_agree(&details, &decode_detailed(code, &r, Solver::Eea)?)?),
        _ => None,
    };

    let (mut key_equation, mut solution_shape, mut reconstruction) = (None, None, None);
    if verify {
        let tower = code.tower();
        let f = msg.poly();
        let lambda = error_span(tower, &e);
        key_equation = Some(check_key_equation(&lambda, &details.rhat, f, code.mg())?);
        if let (true, Some(norm)) = (success, &details.normalized) {
            let shape = norm.lambda.is_monic()
                && norm.lambda.degree() == Some(tau)
                && norm.lambda == lambda
                && e.iter().all(|ei| norm.lambda.evaluate(ei).is_zero())
                && norm.omega == &lambda * f;
            solution_shape = Some(shape);
        }
        if let Some(srp) = &details.srp {
            let degrees_ok = srp.lambda.degree() <= Some(tau)
                && srp.omega.degree().map_or(true, |d| d < tau + code.k());
            let consistent = code
                .points()
                .iter()
                .all(|g| srp.lambda.evaluate(&details.rhat.evaluate(g)) == srp.omega.evaluate(g));
            reconstruction = Some(degrees_ok && consistent);
        } else {
            reconstruction = Some(false);
        }
    }

    Ok(TrialRecord {
        tau,
        index,
        success,
        failure: details.result.as_ref().err().copied(),
        ops: details.trace.total_ops,
        solvers_agree,
        key_equation,
        solution_shape,
        reconstruction,
    })
}

/// Runs `trials` trials for every τ in `taus`, in parallel, returning records
/// sorted by (τ, index).
pub fn run_trials(
    code: &GabidulinCode,
    taus: &[usize],
    trials: usize,
    seed: u64,
    solver: SolverChoice,
    coeff_box: i64,
    verify: bool,
) -> Result<Vec<TrialRecord>> {
    let jobs: Vec<(usize, usize)> = taus.iter().flat_map(|&t| (0..trials).map(move |i| (t, i))).collect();
    let mut records = jobs
        .par_iter()
        .map(|&(tau, i)| run_trial(code, tau, i, trial_seed(seed, tau, i), solver, coeff_box, verify))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| (r.tau, r.index));
    Ok(records)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauSummary {
    pub tau: usize,
    pub successes: usize,
    pub trials: usize,
    pub mean_ops: f64,
    pub max_ops: u64,
    pub max_coeff_bits: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub per_tau: Vec<TauSummary>,
    /// Fraction of trials where both solvers agree; `null` unless the
    /// campaign ran with `both`.
    pub solver_agreement: Option<f64>,
}

impl CampaignReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn all_succeeded(&self) -> bool {
        self.per_tau.iter().all(|t| t.successes == t.trials)
    }
}

pub fn summarize(config: &CampaignConfig, records: &[TrialRecord]) -> CampaignReport {
    let per_tau = (config.tau_min..=config.tau_max)
        .map(|tau| {
            let rs: Vec<&TrialRecord> = records.iter().filter(|r| r.tau == tau).collect();
            let total: u64 = rs.iter().map(|r| r.ops.total()).sum();
            TauSummary {
                tau,
                successes: rs.iter().filter(|r| r.success).count(),
                trials: rs.len(),
                mean_ops: if rs.is_empty() { 0.0 } else { total as f64 / rs.len() as f64 },
                max_ops: rs.iter().map(|r| r.ops.total()).max().unwrap_or(0),
                max_coeff_bits: rs.iter().map(|r| r.ops.max_coeff_bits).max().unwrap_or(0),
            }
        })
        .collect();
    let solver_agreement = (config.solver == SolverChoice::Both && !records.is_empty()).then(|| {
        let agree = records.iter().filter(|r| r.solvers_agree == Some(true)).count();
        agree as f64 / records.len() as f64
    });
    CampaignReport { config: config.clone(), per_tau, solver_agreement }
}

pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    let code = config.build_code()?;
    let taus: Vec<usize> = (config.tau_min..=config.tau_max).collect();
    let records = run_trials(&code, &taus, config.trials, config.seed, config.solver, config.coeff_box, false)?;
    Ok(summarize(config, &records))
}
