//! The θ-polynomial ring L[x;θ]: ordinary addition, multiplication under the
//! commutation rule x·α = θ(α)·x, evaluation α ↦ Σ aᵢθⁱ(α), and Euclidean
//! division from either side.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};

/// A θ-polynomial. Coefficients are indexed by the power of x and carry no
/// trailing zeros; the zero polynomial has no coefficients and degree `None`.
#[derive(Clone)]
pub struct SkewPoly {
    tower: Arc<FieldTower>,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.tower.same_as(&other.tower) && self.coeffs == other.coeffs
    }
}

impl Eq for SkewPoly {}

/// Sum of two degrees with −∞ absorbing.
pub fn degree_add(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    Some(a? + b?)
}

impl SkewPoly {
    pub fn zero(tower: &Arc<FieldTower>) -> Self {
        SkewPoly { tower: tower.clone(), coeffs: Vec::new() }
    }

    pub fn one(tower: &Arc<FieldTower>) -> Self {
        Self::constant(FieldElement::one(tower))
    }

    /// The indeterminate x.
    pub fn x(tower: &Arc<FieldTower>) -> Self {
        Self::monomial(FieldElement::one(tower), 1)
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial(c, 0)
    }

    /// c·x^d
    pub fn monomial(c: FieldElement, d: usize) -> Self {
        let tower = c.tower().clone();
        if c.is_zero() {
            return Self::zero(&tower);
        }
        let mut coeffs = vec![FieldElement::zero(&tower); d];
        coeffs.push(c);
        SkewPoly { tower, coeffs }
    }

    /// Builds a polynomial from coefficients (lowest power first), stripping
    /// trailing zeros.
    pub fn from_coeffs(tower: &Arc<FieldTower>, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.tower().same_as(tower)) {
            return Err(Error::TowerMismatch);
        }
        let mut p = SkewPoly { tower: tower.clone(), coeffs };
        p.trim();
        Ok(p)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FieldElement::zero(&self.tower))
    }

    /// Degree, with `None` standing for −∞ (the zero polynomial).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    /// Largest bit size of any coefficient.
    pub fn bit_size(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bit_size()).max().unwrap_or(0)
    }

    fn check_tower(&self, other: &SkewPoly) -> Result<()> {
        if self.tower.same_as(&other.tower) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    fn combine(&self, other: &SkewPoly, subtract: bool) -> SkewPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            let c = match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) if subtract => a - b,
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) if subtract => -b,
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            coeffs.push(c);
        }
        let mut p = SkewPoly { tower: self.tower.clone(), coeffs };
        p.trim();
        p
    }

    pub fn checked_add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_tower(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_tower(other)?;
        Ok(self.combine(other, true))
    }

    /// Left multiplication by a scalar: c·a = Σ (c·aᵢ) xⁱ.
    pub fn scale_left(&self, c: &FieldElement) -> SkewPoly {
        if c.is_zero() {
            return Self::zero(&self.tower);
        }
        SkewPoly {
            tower: self.tower.clone(),
            coeffs: self.coeffs.iter().map(|a| c * a).collect(),
        }
    }

    /// x·a = Σ θ(aᵢ) x^{i+1}.
    pub fn mul_x_left(&self) -> SkewPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(FieldElement::zero(&self.tower));
        coeffs.extend(self.coeffs.iter().map(|a| a.theta()));
        SkewPoly { tower: self.tower.clone(), coeffs }
    }

    /// Product in L[x;θ]: (aᵢxⁱ)(bⱼxʲ) = aᵢθⁱ(bⱼ)x^{i+j}.
    pub fn checked_mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_tower(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.tower));
        }
        let mut out: Vec<Option<FieldElement>> = vec![None; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = a * &b.theta_pow(i);
                let slot = &mut out[i + j];
                *slot = Some(match slot.take() {
                    Some(acc) => &acc + &term,
                    None => term,
                });
            }
        }
        let coeffs = out
            .into_iter()
            .map(|c| c.unwrap_or_else(|| FieldElement::zero(&self.tower)))
            .collect();
        // leading coefficients multiply to a nonzero value (θ is injective)
        Ok(SkewPoly { tower: self.tower.clone(), coeffs })
    }

    /// Evaluation map α ↦ Σ aᵢ θⁱ(α).
    pub fn evaluate(&self, alpha: &FieldElement) -> FieldElement {
        let mut acc: Option<FieldElement> = None;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let term = a * &alpha.theta_pow(i);
            acc = Some(match acc {
                Some(s) => &s + &term,
                None => term,
            });
        }
        acc.unwrap_or_else(|| FieldElement::zero(&self.tower))
    }

    /// Right division: returns (χ, ϱ) with self = χ·b + ϱ and deg ϱ < deg b.
    pub fn right_divide(&self, b: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.check_tower(b)?;
        let db = b.degree().ok_or(Error::ZeroDivisor)?;
        let Some(da) = self.degree().filter(|&da| da >= db) else {
            return Ok((Self::zero(&self.tower), self.clone()));
        };
        let lead_inv = b.coeffs[db].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::zero(&self.tower); da - db + 1];
        for d in (db..=da).rev() {
            if rem[d].is_zero() {
                continue;
            }
            let shift = d - db;
            // (q x^shift)·b has leading coefficient q·θ^shift(lead b)
            let q = &rem[d] * &lead_inv.theta_pow(shift);
            for j in 0..db {
                if b.coeffs[j].is_zero() {
                    continue;
                }
                let t = &q * &b.coeffs[j].theta_pow(shift);
                rem[j + shift] = &rem[j + shift] - &t;
            }
            rem[d] = FieldElement::zero(&self.tower);
            quot[shift] = q;
        }
        rem.truncate(db);
        let mut r = SkewPoly { tower: self.tower.clone(), coeffs: rem };
        r.trim();
        let mut q = SkewPoly { tower: self.tower.clone(), coeffs: quot };
        q.trim();
        Ok((q, r))
    }

    /// Left division: returns (χ, ϱ) with self = b·χ + ϱ and deg ϱ < deg b.
    pub fn left_divide(&self, b: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.check_tower(b)?;
        let db = b.degree().ok_or(Error::ZeroDivisor)?;
        let Some(da) = self.degree().filter(|&da| da >= db) else {
            return Ok((Self::zero(&self.tower), self.clone()));
        };
        let lead_inv = b.coeffs[db].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::zero(&self.tower); da - db + 1];
        for d in (db..=da).rev() {
            if rem[d].is_zero() {
                continue;
            }
            let shift = d - db;
            // b·(q x^shift) has leading coefficient lead(b)·θ^db(q)
            let q = (&lead_inv * &rem[d]).theta_inv_pow(db);
            for (j, bj) in b.coeffs.iter().enumerate().take(db) {
                if bj.is_zero() {
                    continue;
                }
                let t = bj * &q.theta_pow(j);
                rem[j + shift] = &rem[j + shift] - &t;
            }
            rem[d] = FieldElement::zero(&self.tower);
            quot[shift] = q;
        }
        rem.truncate(db);
        let mut r = SkewPoly { tower: self.tower.clone(), coeffs: rem };
        r.trim();
        let mut q = SkewPoly { tower: self.tower.clone(), coeffs: quot };
        q.trim();
        Ok((q, r))
    }

    /// Remainder of right division by `c`.
    pub fn mod_right(&self, c: &SkewPoly) -> Result<SkewPoly> {
        Ok(self.right_divide(c)?.1)
    }
}

/// a ≡ b mod c, i.e. a = b + d·c for some d.
pub fn congruent(a: &SkewPoly, b: &SkewPoly, c: &SkewPoly) -> Result<bool> {
    Ok(a.checked_sub(b)?.mod_right(c)?.is_zero())
}

impl Add for &SkewPoly {
    type Output = SkewPoly;
    fn add(self, rhs: &SkewPoly) -> SkewPoly {
        self.checked_add(rhs).expect("polynomials from different towers")
    }
}

impl Sub for &SkewPoly {
    type Output = SkewPoly;
    fn sub(self, rhs: &SkewPoly) -> SkewPoly {
        self.checked_sub(rhs).expect("polynomials from different towers")
    }
}

impl Mul for &SkewPoly {
    type Output = SkewPoly;
    fn mul(self, rhs: &SkewPoly) -> SkewPoly {
        self.checked_mul(rhs).expect("polynomials from different towers")
    }
}

impl Neg for &SkewPoly {
    type Output = SkewPoly;
    fn neg(self) -> SkewPoly {
        SkewPoly { tower: self.tower.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p3() -> Arc<FieldTower> {
        FieldTower::new(3, 2).unwrap()
    }

    fn c(t: &Arc<FieldTower>, n: i64) -> SkewPoly {
        SkewPoly::constant(FieldElement::from_int(t, n))
    }

    fn random_poly(t: &Arc<FieldTower>, rng: &mut ChaCha8Rng, deg: usize) -> SkewPoly {
        let mut coeffs: Vec<FieldElement> = (0..=deg).map(|_| FieldElement::random(t, rng, 5)).collect();
        while coeffs[deg].is_zero() {
            coeffs[deg] = FieldElement::random(t, rng, 5);
        }
        SkewPoly::from_coeffs(t, coeffs).unwrap()
    }

    #[test]
    fn addition_examples() {
        let t = p3();
        let x = SkewPoly::x(&t);
        let x2 = &x * &x;
        let a = &x2 + &c(&t, 1);
        assert_eq!(&a + &SkewPoly::zero(&t), a);
        let b = &a + &(-&x2);
        assert_eq!(b, c(&t, 1));
        assert_eq!(b.degree(), Some(0));
        assert_eq!((&a - &a).degree(), None);
    }

    #[test]
    fn commutation_rule() {
        let t = p3();
        let z = FieldElement::zeta_pow(&t, 1);
        let x = SkewPoly::x(&t);
        let xz = &x * &SkewPoly::constant(z.clone());
        assert_eq!(xz, SkewPoly::monomial(FieldElement::zeta_pow(&t, 2), 1));
        let zx = &SkewPoly::constant(z) * &x;
        assert_ne!(xz, zx);
    }

    #[test]
    fn difference_of_squares() {
        let t = p3();
        let x = SkewPoly::x(&t);
        let prod = &(&x + &c(&t, 1)) * &(&x - &c(&t, 1));
        assert_eq!(prod, &(&x * &x) - &c(&t, 1));
        assert_eq!(&SkewPoly::one(&t) * &prod, prod);
        assert_eq!(&prod * &SkewPoly::one(&t), prod);
    }

    #[test]
    fn evaluation_examples() {
        let t = p3();
        let z = FieldElement::zeta_pow(&t, 1);
        assert_eq!(SkewPoly::x(&t).evaluate(&z), FieldElement::zeta_pow(&t, 2));
        let k = FieldElement::from_ints(&t, &[2, -1]).unwrap();
        assert_eq!(SkewPoly::constant(k.clone()).evaluate(&z), &k * &z);
        assert!(SkewPoly::zero(&t).evaluate(&z).is_zero());
    }

    #[test]
    fn division_examples() {
        let t = p3();
        let x = SkewPoly::x(&t);
        let x2 = &x * &x;
        let (q, r) = x2.right_divide(&(&x - &c(&t, 1))).unwrap();
        assert_eq!(q, &x + &c(&t, 1));
        assert_eq!(r, c(&t, 1));
        assert!(congruent(&x2, &c(&t, 1), &(&x - &c(&t, 1))).unwrap());

        let (q, r) = x2.right_divide(&x2).unwrap();
        assert_eq!((q, r), (SkewPoly::one(&t), SkewPoly::zero(&t)));
        let (q, r) = x2.left_divide(&x2).unwrap();
        assert_eq!((q, r), (SkewPoly::one(&t), SkewPoly::zero(&t)));

        let (q, r) = x.right_divide(&x2).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, x);
        let (q, r) = x.left_divide(&x2).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, x);

        assert_eq!(x.mod_right(&x2).unwrap(), x);
        assert!(congruent(&x2, &x2, &x).unwrap());
        assert_eq!(x.right_divide(&SkewPoly::zero(&t)).unwrap_err(), Error::ZeroDivisor);
        assert_eq!(x.left_divide(&SkewPoly::zero(&t)).unwrap_err(), Error::ZeroDivisor);
    }

    #[test]
    fn left_division_undoes_commutation() {
        let t = p3();
        let z = FieldElement::zeta_pow(&t, 1);
        let x = SkewPoly::x(&t);
        let a = &x * &SkewPoly::constant(z.clone());
        let (q, r) = a.left_divide(&x).unwrap();
        assert_eq!(q, SkewPoly::constant(z));
        assert!(r.is_zero());
    }

    #[test]
    fn mixed_towers_rejected() {
        let a = SkewPoly::x(&p3());
        let b = SkewPoly::x(&FieldTower::new(5, 2).unwrap());
        assert_eq!(a.checked_mul(&b).unwrap_err(), Error::TowerMismatch);
        assert_eq!(a.checked_add(&b).unwrap_err(), Error::TowerMismatch);
    }

    #[test]
    fn random_ring_identities() {
        let t = FieldTower::new(5, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let a = random_poly(&t, &mut rng, 3);
            let b = random_poly(&t, &mut rng, 2);
            let c2 = random_poly(&t, &mut rng, 2);
            assert_eq!(&(&a * &b) * &c2, &a * &(&b * &c2));
            assert_eq!(&a * &(&b + &c2), &(&a * &b) + &(&a * &c2));
            assert_eq!(&(&b + &c2) * &a, &(&b * &a) + &(&c2 * &a));
            assert_eq!((&a * &b).degree(), Some(5));
            assert!((&a + &b).degree() <= a.degree().max(b.degree()));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn division_identities(seed in any::<u64>(), da in 0usize..6, db in 0usize..4) {
            let t = FieldTower::new(7, 3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_poly(&t, &mut rng, da);
            let b = random_poly(&t, &mut rng, db);

            let (q, r) = a.right_divide(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a.clone());
            prop_assert!(r.degree() < b.degree());
            // uniqueness: dividing χ·b + ϱ again reproduces the pair
            let (q2, r2) = (&(&q * &b) + &r).right_divide(&b).unwrap();
            prop_assert_eq!((&q2, &r2), (&q, &r));

            let (q, r) = a.left_divide(&b).unwrap();
            prop_assert_eq!(&(&b * &q) + &r, a.clone());
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn evaluation_is_composition_and_linear(seed in any::<u64>(), k1 in -9i64..10, k2 in -9i64..10) {
            let t = FieldTower::new(5, 2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_poly(&t, &mut rng, 3);
            let b = random_poly(&t, &mut rng, 2);
            let u = FieldElement::random(&t, &mut rng, 9);
            let v = FieldElement::random(&t, &mut rng, 9);
            prop_assert_eq!((&a * &b).evaluate(&u), a.evaluate(&b.evaluate(&u)));

            let q1 = crate::rational::rat(k1);
            let q2 = crate::rational::rat(k2);
            let lhs = a.evaluate(&(&u.scale(&q1) + &v.scale(&q2)));
            let rhs = &a.evaluate(&u).scale(&q1) + &a.evaluate(&v).scale(&q2);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
