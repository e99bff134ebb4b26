//! The cyclotomic field L = Q(ζ_p) over K = Q with the automorphism θ: ζ ↦ ζ^g.
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{m−1} (m = p − 1) as a
//! vector of integer numerators over one positive common denominator. The
//! pair is kept primitive: gcd(numerators, denominator) = 1, so two elements
//! are equal exactly when their stored data are equal. Individual coordinates
//! are exposed as canonical [`Rational`]s.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::counter::{self, OpKind};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::Rational;

/// The tower Q ⊆ Q(ζ_p) together with a generator θ of its Galois group.
#[derive(Debug)]
pub struct FieldTower {
    p: u32,
    g: u32,
    m: usize,
    /// `g_pow[i] = g^i mod p` for `0 <= i < m`.
    g_pow: Vec<u32>,
    theta_images: Vec<Vec<Rational>>,
    char_theta: Vec<Rational>,
    squarefree_certified: bool,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn multiplicative_order(g: u32, p: u32) -> u32 {
    let mut x = g % p;
    let mut ord = 1;
    while x != 1 {
        x = ((x as u64 * g as u64) % p as u64) as u32;
        ord += 1;
        if ord > p {
            return 0;
        }
    }
    ord
}

impl FieldTower {
    /// Builds Q(ζ_p) with θ: ζ ↦ ζ^g.
    ///
    /// Rejects non-prime `p`, a `g` that is not a primitive root modulo `p`,
    /// and towers whose θ has a characteristic polynomial with repeated roots.
    pub fn new(p: u32, g: u32) -> Result<Arc<FieldTower>> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if g <= 1 || g >= p || multiplicative_order(g, p) != p - 1 {
            return Err(Error::NotPrimitiveRoot { p, g });
        }
        let m = (p - 1) as usize;
        let mut g_pow = Vec::with_capacity(m);
        let mut x = 1u32;
        for _ in 0..m {
            g_pow.push(x);
            x = ((x as u64 * g as u64) % p as u64) as u32;
        }

        // Column j holds the coordinates of θ(ζ^j).
        let mut theta_images = vec![vec![Rational::zero(); m]; m];
        for j in 0..m {
            let e = (j as u64 * g as u64 % p as u64) as usize;
            if e < m {
                theta_images[e][j] = Rational::one();
            } else {
                for row in theta_images.iter_mut() {
                    row[j] = -Rational::one();
                }
            }
        }
        let char_theta = linalg::charpoly(&theta_images);
        let derivative = linalg::poly_derivative(&char_theta);
        let squarefree_certified = linalg::poly_gcd(&char_theta, &derivative).len() == 1;
        if !squarefree_certified {
            return Err(Error::NotSquareFree);
        }
        Ok(Arc::new(FieldTower {
            p,
            g,
            m,
            g_pow,
            theta_images,
            char_theta,
            squarefree_certified,
        }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    /// Extension degree m = p − 1.
    pub fn degree(&self) -> usize {
        self.m
    }

    /// Matrix of θ in the power basis; column j is θ(ζ^j).
    pub fn theta_images(&self) -> &[Vec<Rational>] {
        &self.theta_images
    }

    /// Characteristic polynomial of θ, coefficients lowest degree first.
    pub fn char_theta(&self) -> &[Rational] {
        &self.char_theta
    }

    pub fn squarefree_certified(&self) -> bool {
        self.squarefree_certified
    }

    pub fn same_as(&self, other: &FieldTower) -> bool {
        std::ptr::eq(self, other) || (self.p == other.p && self.g == other.g)
    }

    /// Exponent h with θ^i(ζ) = ζ^h.
    fn theta_exponent(&self, i: usize) -> u32 {
        self.g_pow[i % self.m]
    }

    /// Exponent h with θ^{-i}(ζ) = ζ^h.
    pub(crate) fn inverse_theta_power(&self, i: usize) -> usize {
        (self.m - i % self.m) % self.m
    }
}

/// An element of L in the power basis.
#[derive(Clone)]
pub struct FieldElement {
    tower: Arc<FieldTower>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.tower.same_as(&other.tower) && self.den == other.den && self.num == other.num
    }
}

impl Eq for FieldElement {}

fn normalize(num: &mut [BigInt], den: &mut BigInt) {
    if den.is_negative() {
        for x in num.iter_mut() {
            *x = -&*x;
        }
        *den = -&*den;
    }
    let mut g = den.clone();
    let mut any = false;
    for x in num.iter() {
        if !x.is_zero() {
            any = true;
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if !any {
        *den = BigInt::one();
        return;
    }
    if !g.is_one() {
        for x in num.iter_mut() {
            *x = &*x / &g;
        }
        *den = &*den / &g;
    }
}

impl FieldElement {
    pub fn zero(tower: &Arc<FieldTower>) -> Self {
        FieldElement {
            tower: tower.clone(),
            num: vec![BigInt::zero(); tower.m],
            den: BigInt::one(),
        }
    }

    pub fn one(tower: &Arc<FieldTower>) -> Self {
        Self::from_rational(tower, &Rational::one())
    }

    pub fn from_int(tower: &Arc<FieldTower>, n: i64) -> Self {
        Self::from_rational(tower, &Rational::from_integer(BigInt::from(n)))
    }

    /// The image of a base-field scalar.
    pub fn from_rational(tower: &Arc<FieldTower>, q: &Rational) -> Self {
        let mut num = vec![BigInt::zero(); tower.m];
        num[0] = q.numer().clone();
        FieldElement { tower: tower.clone(), num, den: q.denom().clone() }
    }

    /// ζ^j for any j ≥ 0.
    pub fn zeta_pow(tower: &Arc<FieldTower>, j: usize) -> Self {
        let mut out = Self::zero(tower);
        out.add_monomial(j % tower.p as usize, &BigInt::one());
        out
    }

    /// Element with the given power-basis coordinates.
    pub fn from_coords(tower: &Arc<FieldTower>, coords: &[Rational]) -> Result<Self> {
        if coords.len() != tower.m {
            return Err(Error::LengthMismatch { expected: tower.m, got: coords.len() });
        }
        let den = coords.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut num: Vec<BigInt> = coords.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        let mut den = den;
        normalize(&mut num, &mut den);
        Ok(FieldElement { tower: tower.clone(), num, den })
    }

    /// Element with integer coordinates.
    pub fn from_ints(tower: &Arc<FieldTower>, coords: &[i64]) -> Result<Self> {
        if coords.len() != tower.m {
            return Err(Error::LengthMismatch { expected: tower.m, got: coords.len() });
        }
        let mut num: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        let mut den = BigInt::one();
        normalize(&mut num, &mut den);
        Ok(FieldElement { tower: tower.clone(), num, den })
    }

    /// Random element whose coordinates are integers in `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(tower: &Arc<FieldTower>, rng: &mut R, bound: i64) -> Self {
        let coords: Vec<i64> = (0..tower.m).map(|_| rng.gen_range(-bound..=bound)).collect();
        Self::from_ints(tower, &coords).expect("length matches tower")
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    /// Canonical rational coordinates in the power basis.
    pub fn coords(&self) -> Vec<Rational> {
        self.num.iter().map(|n| Rational::new(n.clone(), self.den.clone())).collect()
    }

    /// Integer numerators over [`Self::denominator`]; proportional to the
    /// coordinate vector, which is all that K-linear rank computations need.
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|x| x.is_zero())
    }

    /// Whether the element lies in the base field K = Q.
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|x| x.is_zero())
    }

    /// Largest bit length among the numerators and the common denominator.
    pub fn bit_size(&self) -> u64 {
        self.num.iter().map(|x| x.bits()).max().unwrap_or(0).max(self.den.bits())
    }

    fn check_tower(&self, other: &Self) -> Result<()> {
        if self.tower.same_as(&other.tower) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    /// Adds c·ζ^e to the numerator vector, 0 ≤ e < p.
    fn add_monomial(&mut self, e: usize, c: &BigInt) {
        let m = self.tower.m;
        if e < m {
            self.num[e] += c;
        } else {
            // ζ^{p-1} = -(1 + ζ + … + ζ^{p-2})
            for x in self.num.iter_mut() {
                *x -= c;
            }
        }
    }

    fn add_raw(&self, other: &Self, negate: bool) -> Self {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let l = self.den.lcm(&other.den);
            let sa = &l / &self.den;
            let sb = &l / &other.den;
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let (x, y) = (a * &sa, b * &sb);
                    if negate {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect();
            (num, l)
        };
        let mut out = FieldElement { tower: self.tower.clone(), num, den };
        normalize(&mut out.num, &mut out.den);
        out
    }

    pub(crate) fn mul_raw(&self, other: &Self) -> Self {
        let p = self.tower.p as usize;
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = if i + j >= p { i + j - p } else { i + j };
                acc[k] += a * b;
            }
        }
        let top = acc.pop().unwrap();
        if !top.is_zero() {
            for x in acc.iter_mut() {
                *x -= &top;
            }
        }
        let mut out = FieldElement { tower: self.tower.clone(), num: acc, den: &self.den * &other.den };
        normalize(&mut out.num, &mut out.den);
        out
    }

    /// Applies the automorphism ζ ↦ ζ^h (h coprime to p). The map and its
    /// inverse have integer matrices, so the representation stays primitive.
    fn galois_raw(&self, h: u32) -> Self {
        if h == 1 {
            return self.clone();
        }
        let p = self.tower.p as u64;
        let mut out = FieldElement {
            tower: self.tower.clone(),
            num: vec![BigInt::zero(); self.tower.m],
            den: self.den.clone(),
        };
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                out.add_monomial((j as u64 * h as u64 % p) as usize, c);
            }
        }
        out
    }

    fn neg_raw(&self) -> Self {
        FieldElement {
            tower: self.tower.clone(),
            num: self.num.iter().map(|x| -x).collect(),
            den: self.den.clone(),
        }
    }

    fn inv_raw(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let (num, den) = if self.is_rational() {
            let mut num = vec![BigInt::zero(); self.tower.m];
            num[0] = self.den.clone();
            (num, self.num[0].clone())
        } else {
            // a^{-1} = (∏_{σ≠id} σ(a)) / N(a), where N(a) = a·∏σ(a) ∈ Q.
            let p = self.tower.p;
            let mut prod = self.galois_raw(2);
            for h in 3..p {
                prod = prod.mul_raw(&self.galois_raw(h));
            }
            let norm = self.mul_raw(&prod);
            debug_assert!(norm.is_rational());
            // prod / (norm.num[0] / norm.den)
            let num = prod.num.iter().map(|x| x * &norm.den).collect();
            (num, &prod.den * &norm.num[0])
        };
        let mut out = FieldElement { tower: self.tower.clone(), num, den };
        normalize(&mut out.num, &mut out.den);
        Ok(out)
    }

    fn record(kind: OpKind, result: &Self) {
        counter::record(kind, || result.bit_size());
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_tower(other)?;
        let out = self.add_raw(other, false);
        Self::record(OpKind::Add, &out);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_tower(other)?;
        let out = self.add_raw(other, true);
        Self::record(OpKind::Add, &out);
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_tower(other)?;
        let out = self.mul_raw(other);
        Self::record(OpKind::Mul, &out);
        Ok(out)
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Self> {
        let out = self.inv_raw()?;
        Self::record(OpKind::Inv, &out);
        Ok(out)
    }

    /// `self / other`, counted as one inversion and one multiplication.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_tower(other)?;
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    /// θ^i(self). Costs one pass over the coordinates regardless of i.
    pub fn theta_pow(&self, i: usize) -> Self {
        let out = self.galois_raw(self.tower.theta_exponent(i));
        Self::record(OpKind::Theta, &out);
        out
    }

    pub fn theta(&self) -> Self {
        self.theta_pow(1)
    }

    /// θ^{-i}(self) = θ^{m−i}(self).
    pub fn theta_inv_pow(&self, i: usize) -> Self {
        self.theta_pow(self.tower.inverse_theta_power(i))
    }

    /// Multiplication by a base-field scalar.
    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = FieldElement {
            tower: self.tower.clone(),
            num: self.num.iter().map(|x| x * q.numer()).collect(),
            den: &self.den * q.denom(),
        };
        normalize(&mut out.num, &mut out.den);
        Self::record(OpKind::Mul, &out);
        out
    }
}

/// θ^i(a); see [`FieldElement::theta_pow`].
pub fn apply_theta(a: &FieldElement, i: usize) -> FieldElement {
    a.theta_pow(i)
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field elements from different towers")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field elements from different towers")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field elements from different towers")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let out = self.neg_raw();
        FieldElement::record(OpKind::Add, &out);
        out
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if j == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{j}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{is_canonical, rat, rat_frac};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(coeffs: &[i64]) -> Vec<Rational> {
        coeffs.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn tower_p5_g2() {
        let t = FieldTower::new(5, 2).unwrap();
        assert_eq!(t.degree(), 4);
        assert_eq!(t.char_theta(), poly(&[-1, 0, 0, 0, 1]).as_slice());
        assert!(t.squarefree_certified());
    }

    #[test]
    fn tower_p3_g2() {
        let t = FieldTower::new(3, 2).unwrap();
        assert_eq!(t.degree(), 2);
        assert_eq!(t.char_theta(), poly(&[-1, 0, 1]).as_slice());
    }

    #[test]
    fn tower_rejections() {
        assert_eq!(FieldTower::new(5, 4).unwrap_err(), Error::NotPrimitiveRoot { p: 5, g: 4 });
        assert_eq!(FieldTower::new(9, 2).unwrap_err(), Error::NotPrime(9));
        assert_eq!(FieldTower::new(2, 1).unwrap_err(), Error::NotPrime(2));
        assert!(FieldTower::new(7, 1).is_err());
        assert!(FieldTower::new(7, 7).is_err());
    }

    #[test]
    fn all_primitive_roots_certified() {
        for p in [3u32, 5, 7, 11, 13] {
            for g in 2..p {
                if multiplicative_order(g, p) != p - 1 {
                    continue;
                }
                let t = FieldTower::new(p, g).unwrap();
                assert!(t.squarefree_certified());
                // θ permutes the conjugates of ζ cyclically: char poly x^m - 1
                let mut expected = vec![Rational::zero(); p as usize];
                expected[0] = rat(-1);
                expected[p as usize - 1] = rat(1);
                assert_eq!(t.char_theta(), expected.as_slice(), "p={p} g={g}");
            }
        }
    }

    #[test]
    fn zeta_times_zeta4_is_one() {
        let t = FieldTower::new(5, 2).unwrap();
        let z = FieldElement::zeta_pow(&t, 1);
        let z4 = FieldElement::zeta_pow(&t, 4);
        assert_eq!(z4, FieldElement::from_ints(&t, &[-1, -1, -1, -1]).unwrap());
        assert!((&z * &z4).is_one());
    }

    #[test]
    fn p3_product_example() {
        let t = FieldTower::new(3, 2).unwrap();
        let one_plus_z = FieldElement::from_ints(&t, &[1, 1]).unwrap();
        let one_plus_z2 = &FieldElement::one(&t) + &FieldElement::zeta_pow(&t, 2);
        assert_eq!(one_plus_z2, FieldElement::from_ints(&t, &[0, -1]).unwrap());
        assert!((&one_plus_z * &one_plus_z2).is_one());
    }

    #[test]
    fn theta_examples() {
        let t3 = FieldTower::new(3, 2).unwrap();
        let z = FieldElement::zeta_pow(&t3, 1);
        assert_eq!(z.theta(), FieldElement::zeta_pow(&t3, 2));
        let q = FieldElement::from_rational(&t3, &rat_frac(-7, 3));
        assert_eq!(q.theta(), q);

        let t5 = FieldTower::new(5, 2).unwrap();
        assert_eq!(FieldElement::zeta_pow(&t5, 3).theta(), FieldElement::zeta_pow(&t5, 1));
        let a = FieldElement::from_ints(&t5, &[1, 2, 3, 4]).unwrap();
        assert_eq!(a.theta_pow(0), a);
        assert_eq!(a.theta_inv_pow(1).theta(), a);
    }

    #[test]
    fn theta_order_is_m() {
        for (p, g) in [(3, 2), (5, 3), (7, 3), (11, 2), (13, 6)] {
            let t = FieldTower::new(p, g).unwrap();
            for j in 0..t.degree() {
                let b = FieldElement::zeta_pow(&t, j);
                let mut x = b.clone();
                for _ in 0..t.degree() {
                    x = x.theta();
                }
                assert_eq!(x, b);
            }
        }
    }

    #[test]
    fn theta_matrix_matches_application() {
        let t = FieldTower::new(7, 3).unwrap();
        for j in 0..t.degree() {
            let img = FieldElement::zeta_pow(&t, j).theta().coords();
            let col: Vec<Rational> = t.theta_images().iter().map(|row| row[j].clone()).collect();
            assert_eq!(img, col);
        }
    }

    #[test]
    fn inverse_and_errors() {
        let t = FieldTower::new(7, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = FieldElement::random(&t, &mut rng, 9);
            if a.is_zero() {
                continue;
            }
            let b = a.inv().unwrap();
            assert!((&a * &b).is_one());
        }
        assert_eq!(FieldElement::zero(&t).inv().unwrap_err(), Error::ZeroInverse);
        let half = FieldElement::from_rational(&t, &rat_frac(1, 2));
        assert_eq!(half.inv().unwrap(), FieldElement::from_int(&t, 2));

        let other = FieldTower::new(5, 2).unwrap();
        let x = FieldElement::one(&other);
        assert_eq!(half.checked_add(&x).unwrap_err(), Error::TowerMismatch);
        assert_eq!(half.checked_mul(&x).unwrap_err(), Error::TowerMismatch);
    }

    #[test]
    fn coordinates_canonical() {
        let t = FieldTower::new(5, 2).unwrap();
        let a = FieldElement::from_coords(&t, &[rat_frac(2, 4), rat(0), rat_frac(-3, 9), rat(1)]).unwrap();
        for c in a.coords() {
            assert!(is_canonical(&c));
        }
        assert_eq!(a.coords()[2], rat_frac(-1, 3));
        assert!(FieldElement::from_coords(&t, &[rat(1)]).is_err());
    }

    #[test]
    fn display() {
        let t = FieldTower::new(5, 2).unwrap();
        let a = FieldElement::from_coords(&t, &[rat(1), rat(-1), rat(0), rat_frac(1, 2)]).unwrap();
        assert_eq!(a.to_string(), "1 - z + 1/2*z^3");
        assert_eq!(FieldElement::zero(&t).to_string(), "0");
    }
}
