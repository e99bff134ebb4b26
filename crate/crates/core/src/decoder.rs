//! Key-equation decoding of Gabidulin codes.
//!
//! The received word is interpolated to r̂ and the shift-register problem
//!
//! ```text
//! λ·r̂ ≡ ω  mod M_g,   deg ω < deg λ + k,   deg λ minimal
//! ```
//!
//! is solved either by row reduction of a 2×2 module basis to weak Popov form
//! or by the extended Euclidean algorithm with right division. Below half the
//! minimum distance every solution is a scalar multiple of (Λ, Λ·f), where Λ
//! is the error span polynomial, so f is recovered by one division.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::{GabidulinCode, Message, ReceivedWord};
use crate::construction::{interpolate, span_poly};
use crate::counter::{count_ops, OpCounts};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::skew::{congruent, SkewPoly};

/// Input of the shift-register problem.
#[derive(Debug, Clone)]
pub struct SrpInstance {
    pub rhat: SkewPoly,
    pub mg: SkewPoly,
    pub k: usize,
}

impl SrpInstance {
    pub fn new(rhat: SkewPoly, mg: SkewPoly, k: usize) -> Result<Self> {
        let Some(n) = mg.degree() else {
            return Err(Error::ZeroDivisor);
        };
        if rhat.degree() >= Some(n) {
            return Err(Error::InvalidCode(format!("deg r̂ must be below deg M = {n}")));
        }
        Ok(SrpInstance { rhat, mg, k })
    }

    fn n(&self) -> usize {
        self.mg.degree().expect("checked at construction")
    }
}

/// A pair (λ, ω) with λ·r̂ ≡ ω mod M_g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrpSolution {
    pub lambda: SkewPoly,
    pub omega: SkewPoly,
}

impl SrpSolution {
    /// Congruence plus the degree condition deg ω < deg λ + k.
    pub fn is_valid_for(&self, inst: &SrpInstance) -> Result<bool> {
        if self.lambda.is_zero() {
            return Ok(false);
        }
        let lhs = self.lambda.checked_mul(&inst.rhat)?;
        Ok(congruent(&lhs, &self.omega, &inst.mg)? && degree_condition(&self.lambda, &self.omega, inst.k))
    }

    /// Scales to a monic λ: (λ, ω) ↦ c⁻¹·(λ, ω) with c the leading
    /// coefficient of λ.
    pub fn normalized(&self) -> Result<SrpSolution> {
        let lead = self.lambda.leading_coeff().ok_or(Error::ZeroDivisor)?;
        let s = lead.inv()?;
        Ok(SrpSolution { lambda: self.lambda.scale_left(&s), omega: self.omega.scale_left(&s) })
    }

    /// Whether the two solutions agree up to a nonzero left scalar.
    pub fn proportional_to(&self, other: &SrpSolution) -> Result<bool> {
        Ok(self.normalized()? == other.normalized()?)
    }
}

fn degree_condition(lambda: &SkewPoly, omega: &SkewPoly, k: usize) -> bool {
    match (lambda.degree(), omega.degree()) {
        (Some(dl), Some(dw)) => dw < dl + k,
        (Some(_), None) => true,
        (None, _) => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    /// Row reduction to weak Popov form.
    Popov,
    /// Extended Euclidean algorithm.
    Eea,
}

impl Solver {
    pub fn solve(self, inst: &SrpInstance) -> std::result::Result<SrpSolution, DecodeFailure> {
        match self {
            Solver::Popov => solve_srp_popov(inst),
            Solver::Eea => solve_srp_eea(inst),
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solver::Popov => "popov",
            Solver::Eea => "eea",
        })
    }
}

impl FromStr for Solver {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "popov" => Ok(Solver::Popov),
            "eea" => Ok(Solver::Eea),
            _ => Err(Error::Parse(format!("unknown solver {s:?}"))),
        }
    }
}

/// Why a received word could not be decoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, thiserror::Error)]
#[serde(rename_all = "kebab-case")]
pub enum DecodeFailure {
    #[error("division of Ω by Λ left a nonzero remainder")]
    RemainderNonzero,
    #[error("recovered polynomial has degree >= k")]
    DegreeTooLarge,
    #[error("shift-register problem has no solution satisfying the degree condition")]
    SrpNoSolution,
}

/// Outcome of one decoding attempt.
pub type DecodeResult = std::result::Result<Message, DecodeFailure>;

/// Left multiplication by c·x^δ: Σ c·θ^δ(aⱼ) x^{j+δ}.
fn mul_monomial_left(c: &FieldElement, shift: usize, a: &SkewPoly) -> SkewPoly {
    let tower = a.tower();
    let mut coeffs = vec![FieldElement::zero(tower); shift];
    coeffs.extend(a.coeffs().iter().map(|aj| if aj.is_zero() { aj.clone() } else { c * &aj.theta_pow(shift) }));
    SkewPoly::from_coeffs(tower, coeffs).expect("same tower")
}

/// One row (λ, ω) of the module basis.
#[derive(Debug, Clone)]
struct Row {
    entries: [SkewPoly; 2],
}

impl Row {
    /// Leading position and its unshifted degree under the shift (k − 1, 0).
    /// Ties go to the λ column.
    fn leading(&self, k: usize) -> (usize, usize) {
        let shifted_lambda = self.entries[0].degree().map(|d| d + k - 1);
        let omega = self.entries[1].degree();
        match shifted_lambda {
            Some(sl) if Some(sl) >= omega => (0, sl + 1 - k),
            _ => (1, omega.expect("module rows are nonzero")),
        }
    }

    /// self −= (c·x^δ)·other, cancelling the leading term in `col`.
    fn reduce_by(&mut self, other: &Row, col: usize, shift: usize) {
        let lead_self = self.entries[col].leading_coeff().expect("nonzero leading entry");
        let lead_other = other.entries[col].leading_coeff().expect("nonzero leading entry");
        let c = lead_self.div(&lead_other.theta_pow(shift)).expect("nonzero leading coefficient");
        for j in 0..2 {
            if other.entries[j].is_zero() {
                continue;
            }
            let t = mul_monomial_left(&c, shift, &other.entries[j]);
            self.entries[j] = &self.entries[j] - &t;
        }
    }
}

/// Solves the SRP by reducing the basis {(1, r̂), (0, M_g)} of the left
/// L[x;θ]-module of solutions to the congruence to weak Popov form, with the
/// λ column shifted by k − 1. The row whose leading position is λ has minimal
/// deg λ among all module elements satisfying deg ω < deg λ + k.
pub fn solve_srp_popov(inst: &SrpInstance) -> std::result::Result<SrpSolution, DecodeFailure> {
    let tower = inst.mg.tower();
    let k = inst.k.max(1);
    let mut rows = [
        Row { entries: [SkewPoly::one(tower), inst.rhat.clone()] },
        Row { entries: [SkewPoly::zero(tower), inst.mg.clone()] },
    ];
    loop {
        let (c0, d0) = rows[0].leading(k);
        let (c1, d1) = rows[1].leading(k);
        if c0 != c1 {
            break;
        }
        let (big, small, shift) = if d0 >= d1 { (0, 1, d0 - d1) } else { (1, 0, d1 - d0) };
        let other = rows[small].clone();
        rows[big].reduce_by(&other, c0, shift);
    }
    let row = rows.into_iter().find(|r| r.leading(k).0 == 0).ok_or(DecodeFailure::SrpNoSolution)?;
    let [lambda, omega] = row.entries;
    if !degree_condition(&lambda, &omega, inst.k) {
        return Err(DecodeFailure::SrpNoSolution);
    }
    Ok(SrpSolution { lambda, omega })
}

/// Solves the SRP with the right-division Euclidean algorithm on (M_g, r̂),
/// tracking the cofactor vᵢ with rᵢ ≡ vᵢ·r̂ mod M_g, and stopping at the first
/// remainder with deg rᵢ < (n + k)/2.
pub fn solve_srp_eea(inst: &SrpInstance) -> std::result::Result<SrpSolution, DecodeFailure> {
    let tower = inst.mg.tower();
    let bound = inst.n() + inst.k;
    let above = |r: &SkewPoly| r.degree().is_some_and(|d| 2 * d >= bound);
    let mut r_prev = inst.mg.clone();
    let mut r_cur = inst.rhat.clone();
    let mut v_prev = SkewPoly::zero(tower);
    let mut v_cur = SkewPoly::one(tower);
    while above(&r_cur) {
        let (q, rem) = r_prev.right_divide(&r_cur).expect("current remainder is nonzero");
        let v_next = &v_prev - &(&q * &v_cur);
        r_prev = std::mem::replace(&mut r_cur, rem);
        v_prev = std::mem::replace(&mut v_cur, v_next);
    }
    if !degree_condition(&v_cur, &r_cur, inst.k) {
        return Err(DecodeFailure::SrpNoSolution);
    }
    Ok(SrpSolution { lambda: v_cur, omega: r_cur })
}

/// Error span polynomial Λ: the annihilator of span(e₁, …, eₙ).
pub fn error_span(tower: &Arc<FieldTower>, e: &[FieldElement]) -> SkewPoly {
    span_poly(tower, e)
}

/// Λ·r̂ ≡ Λ·f mod M_g.
pub fn check_key_equation(lambda: &SkewPoly, rhat: &SkewPoly, f: &SkewPoly, mg: &SkewPoly) -> Result<bool> {
    congruent(&lambda.checked_mul(rhat)?, &lambda.checked_mul(f)?, mg)
}

/// Per-stage record of one decode.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeTrace {
    pub solver: Option<Solver>,
    pub rhat_degree: Option<usize>,
    pub lambda_degree: Option<usize>,
    pub omega_degree: Option<usize>,
    pub quotient_degree: Option<usize>,
    pub remainder_zero: Option<bool>,
    pub failure: Option<DecodeFailure>,
    pub interpolate_ops: OpCounts,
    pub srp_ops: OpCounts,
    pub normalize_ops: OpCounts,
    pub divide_ops: OpCounts,
    pub total_ops: OpCounts,
}

/// Intermediate results of a decode, kept for verification.
#[derive(Debug, Clone)]
pub struct DecodeDetails {
    pub rhat: SkewPoly,
    pub srp: Option<SrpSolution>,
    /// (Λ, Ω) after normalization.
    pub normalized: Option<SrpSolution>,
    pub result: DecodeResult,
    pub trace: DecodeTrace,
}

/// Decodes a received word. Fails with a library error only on malformed
/// input; decoding failures are reported in the inner result.
pub fn decode(code: &GabidulinCode, r: &ReceivedWord, solver: Solver) -> Result<DecodeResult> {
    Ok(decode_detailed(code, r, solver)?.result)
}

/// [`decode`] with intermediate polynomials and per-stage operation counts.
pub fn decode_detailed(code: &GabidulinCode, r: &ReceivedWord, solver: Solver) -> Result<DecodeDetails> {
    if r.symbols.len() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), got: r.symbols.len() });
    }
    if r.symbols.iter().any(|s| !s.tower().same_as(code.tower())) {
        return Err(Error::TowerMismatch);
    }
    let mut trace = DecodeTrace { solver: Some(solver), ..Default::default() };
    let details = |rhat, srp, normalized, result: DecodeResult, mut trace: DecodeTrace| {
        for ops in [trace.interpolate_ops, trace.srp_ops, trace.normalize_ops, trace.divide_ops] {
            trace.total_ops.merge(&ops);
        }
        trace.failure = result.as_ref().err().copied();
        DecodeDetails { rhat, srp, normalized, result, trace }
    };

    let (rhat, ops) = count_ops(|| interpolate(code.tower(), code.points(), &r.symbols));
    let rhat = rhat?;
    trace.interpolate_ops = ops;
    trace.rhat_degree = rhat.degree();

    let inst = SrpInstance::new(rhat.clone(), code.mg().clone(), code.k())?;
    let (srp, ops) = count_ops(|| solver.solve(&inst));
    trace.srp_ops = ops;
    let srp = match srp {
        Ok(s) => s,
        Err(f) => return Ok(details(rhat, None, None, Err(f), trace)),
    };
    trace.lambda_degree = srp.lambda.degree();
    trace.omega_degree = srp.omega.degree();

    let (normalized, ops) = count_ops(|| srp.normalized());
    let normalized = normalized?;
    trace.normalize_ops = ops;

    // Ω = Λ·f, so f is the quotient of dividing Ω by Λ from the left.
    let (division, ops) = count_ops(|| normalized.omega.left_divide(&normalized.lambda));
    let (quotient, remainder) = division?;
    trace.divide_ops = ops;
    trace.quotient_degree = quotient.degree();
    trace.remainder_zero = Some(remainder.is_zero());

    let result = if !remainder.is_zero() {
        Err(DecodeFailure::RemainderNonzero)
    } else if quotient.degree().is_some_and(|d| d >= code.k()) {
        Err(DecodeFailure::DegreeTooLarge)
    } else {
        Ok(Message::new(quotient, code.k())?)
    };
    Ok(details(rhat, Some(srp), Some(normalized), result, trace))
}
