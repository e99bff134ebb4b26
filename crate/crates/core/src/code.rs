//! Gabidulin codes over L: evaluation codes of θ-polynomials of degree < k at
//! n K-linearly independent points.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construction::{annihilator, span_poly, SubspaceBasis};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::linalg::Echelon;
use crate::rational::Rational;
use crate::skew::SkewPoly;

/// Coordinates of random errors and messages are integers in `[-DEFAULT_BOX, DEFAULT_BOX]`.
pub const DEFAULT_BOX: i64 = 9;

#[derive(Debug, Clone)]
pub struct GabidulinCode {
    tower: Arc<FieldTower>,
    n: usize,
    k: usize,
    points: Vec<FieldElement>,
    mg: SkewPoly,
}

impl GabidulinCode {
    /// Builds the [n, k] code. Without explicit points the evaluation points
    /// default to 1, ζ, …, ζ^{n−1}.
    pub fn new(tower: &Arc<FieldTower>, n: usize, k: usize, points: Option<Vec<FieldElement>>) -> Result<Self> {
        let m = tower.degree();
        if n == 0 || n > m {
            return Err(Error::InvalidCode(format!("length n = {n} must satisfy 1 <= n <= m = {m}")));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidCode(format!("dimension k = {k} must satisfy 1 <= k <= n = {n}")));
        }
        let points = match points {
            Some(p) if p.len() != n => return Err(Error::LengthMismatch { expected: n, got: p.len() }),
            Some(p) => p,
            None => (0..n).map(|j| FieldElement::zeta_pow(tower, j)).collect(),
        };
        let basis = SubspaceBasis::new(tower, points)?;
        let mg = annihilator(&basis)?;
        debug_assert_eq!(mg.degree(), Some(n));
        Ok(GabidulinCode { tower: tower.clone(), n, k, points: basis.vectors().to_vec(), mg })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum rank distance n − k + 1.
    pub fn d(&self) -> usize {
        self.n - self.k + 1
    }

    /// Largest rank τ with 2τ < d.
    pub fn max_correctable(&self) -> usize {
        (self.n - self.k) / 2
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    /// Annihilator of span(g₁, …, gₙ), degree n.
    pub fn mg(&self) -> &SkewPoly {
        &self.mg
    }

    /// cᵢ = f(gᵢ).
    pub fn encode(&self, msg: &Message) -> Result<Vec<FieldElement>> {
        let f = msg.poly();
        if !f.tower().same_as(&self.tower) {
            return Err(Error::TowerMismatch);
        }
        if let Some(d) = f.degree().filter(|&d| d >= self.k) {
            return Err(Error::MessageDegree { degree: d, k: self.k });
        }
        Ok(self.points.iter().map(|g| f.evaluate(g)).collect())
    }

    pub fn random_message<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Message {
        let coeffs = (0..self.k).map(|_| FieldElement::random(&self.tower, rng, bound)).collect();
        Message { f: SkewPoly::from_coeffs(&self.tower, coeffs).expect("same tower") }
    }
}

/// An information polynomial with deg f < k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message {
    f: SkewPoly,
}

impl Message {
    pub fn new(f: SkewPoly, k: usize) -> Result<Self> {
        match f.degree() {
            Some(d) if d >= k => Err(Error::MessageDegree { degree: d, k }),
            _ => Ok(Message { f }),
        }
    }

    pub fn poly(&self) -> &SkewPoly {
        &self.f
    }

    pub fn into_poly(self) -> SkewPoly {
        self.f
    }
}

/// r = c + e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceivedWord {
    pub symbols: Vec<FieldElement>,
}

/// A length-n error of rank exactly τ: e = a·B with a a K-independent
/// τ-tuple over L and B a rank-τ τ×n integer matrix, both drawn from the box
/// `[-bound, bound]` and resampled until the rank conditions hold.
pub fn random_rank_error<R: Rng + ?Sized>(
    tower: &Arc<FieldTower>,
    n: usize,
    tau: usize,
    rng: &mut R,
    bound: i64,
) -> Result<Vec<FieldElement>> {
    let max = n.min(tower.degree());
    if tau > max {
        return Err(Error::RankOutOfRange { tau, max });
    }
    loop {
        let mut ech = Echelon::new(tower.degree());
        let mut a = Vec::with_capacity(tau);
        while a.len() < tau {
            let x = FieldElement::random(tower, rng, bound);
            if ech.insert(x.numerators().to_vec()) {
                a.push(x);
            }
        }
        let b = loop {
            let b: Vec<Vec<i64>> =
                (0..tau).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
            let mut ech = Echelon::new(n);
            let full = b.iter().all(|row| ech.insert(row.iter().map(|&x| x.into()).collect()));
            if full {
                break b;
            }
        };
        let e: Vec<FieldElement> = (0..n)
            .map(|j| {
                a.iter().zip(&b).fold(FieldElement::zero(tower), |acc, (ai, row)| {
                    if row[j] == 0 {
                        acc
                    } else {
                        &acc + &ai.scale(&Rational::from_integer(row[j].into()))
                    }
                })
            })
            .collect();
        if span_poly(tower, &e).degree().unwrap_or(0) == tau {
            return Ok(e);
        }
    }
}

/// Encodes `msg` and adds a seeded random error of rank τ. Returns the
/// received word together with the injected error.
pub fn channel(code: &GabidulinCode, msg: &Message, tau: usize, seed: u64) -> Result<(ReceivedWord, Vec<FieldElement>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    channel_with_rng(code, msg, tau, &mut rng, DEFAULT_BOX)
}

pub fn channel_with_rng<R: Rng + ?Sized>(
    code: &GabidulinCode,
    msg: &Message,
    tau: usize,
    rng: &mut R,
    bound: i64,
) -> Result<(ReceivedWord, Vec<FieldElement>)> {
    let c = code.encode(msg)?;
    let e = random_rank_error(code.tower(), code.n(), tau, rng, bound)?;
    let symbols = c.iter().zip(&e).map(|(ci, ei)| ci + ei).collect();
    Ok((ReceivedWord { symbols }, e))
}
