//! Annihilator polynomials of K-subspaces of L and interpolation through
//! K-linearly independent points.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::linalg::Echelon;
use crate::skew::SkewPoly;

/// A list of elements of L certified to be linearly independent over K.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    tower: Arc<FieldTower>,
    vectors: Vec<FieldElement>,
}

impl SubspaceBasis {
    /// Certifies independence of `vectors`; fails with
    /// [`Error::DependentPoints`] otherwise.
    pub fn new(tower: &Arc<FieldTower>, vectors: Vec<FieldElement>) -> Result<Self> {
        let mut ech = Echelon::new(tower.degree());
        for v in &vectors {
            if !v.tower().same_as(tower) {
                return Err(Error::TowerMismatch);
            }
            if !ech.insert(v.numerators().to_vec()) {
                return Err(Error::DependentPoints);
            }
        }
        Ok(SubspaceBasis { tower: tower.clone(), vectors })
    }

    /// Extracts a K-basis of span(`vectors`), keeping the first element of
    /// each independent extension in input order. Zero and dependent entries
    /// are skipped.
    pub fn spanned_by(tower: &Arc<FieldTower>, vectors: &[FieldElement]) -> Self {
        let mut ech = Echelon::new(tower.degree());
        let mut basis = Vec::new();
        for v in vectors {
            if ech.rank() == tower.degree() {
                break;
            }
            if ech.insert(v.numerators().to_vec()) {
                basis.push(v.clone());
            }
        }
        SubspaceBasis { tower: tower.clone(), vectors: basis }
    }

    pub fn vectors(&self) -> &[FieldElement] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    /// Whether `v` lies in the K-span of the basis.
    pub fn contains(&self, v: &FieldElement) -> bool {
        let mut ech = Echelon::new(self.tower.degree());
        for b in &self.vectors {
            ech.insert(b.numerators().to_vec());
        }
        !ech.is_independent(v.numerators().to_vec())
    }
}

/// The monic annihilator polynomial of span(`basis`), built one basis vector
/// at a time: A₀ = 1, Aᵢ = (x − θ(Aᵢ₋₁(uᵢ))/Aᵢ₋₁(uᵢ))·Aᵢ₋₁.
///
/// Uses O(s²) operations in L for a basis of size s. A vanishing
/// Aᵢ₋₁(uᵢ) means the input was dependent and is reported as
/// [`Error::DependentPoints`].
pub fn annihilator(basis: &SubspaceBasis) -> Result<SkewPoly> {
    annihilator_of(&basis.tower, &basis.vectors)
}

pub(crate) fn annihilator_of(tower: &Arc<FieldTower>, vectors: &[FieldElement]) -> Result<SkewPoly> {
    let mut a = SkewPoly::one(tower);
    for u in vectors {
        a = extend_annihilator(&a, &a.evaluate(u))?;
    }
    Ok(a)
}

/// (x − θ(v)/v)·a where v = a(u) ≠ 0.
fn extend_annihilator(a: &SkewPoly, value: &FieldElement) -> Result<SkewPoly> {
    if value.is_zero() {
        return Err(Error::DependentPoints);
    }
    let c = value.theta().div(value)?;
    Ok(&a.mul_x_left() - &a.scale_left(&c))
}

/// Annihilator of the K-span of arbitrary elements (zero and repeated entries
/// allowed). Its degree is the dimension of the span.
pub fn span_poly(tower: &Arc<FieldTower>, v: &[FieldElement]) -> SkewPoly {
    let basis = SubspaceBasis::spanned_by(tower, v);
    annihilator(&basis).expect("extracted basis is independent")
}

/// The unique r̂ with deg r̂ < n and r̂(gᵢ) = rᵢ, for K-linearly independent
/// points gᵢ.
///
/// Newton-style: keeps p (interpolating the first i points) and A (the
/// annihilator of those points), and sets p ← p + c·A with
/// c = (rᵢ − p(gᵢ)) / A(gᵢ). O(n²) operations in L.
pub fn interpolate(tower: &Arc<FieldTower>, points: &[FieldElement], values: &[FieldElement]) -> Result<SkewPoly> {
    if points.len() != values.len() {
        return Err(Error::LengthMismatch { expected: points.len(), got: values.len() });
    }
    let mut p = SkewPoly::zero(tower);
    let mut a = SkewPoly::one(tower);
    let last = points.len().saturating_sub(1);
    for (i, (g, r)) in points.iter().zip(values).enumerate() {
        let a_at_g = a.evaluate(g);
        if a_at_g.is_zero() {
            return Err(Error::DependentPoints);
        }
        let residual = r - &p.evaluate(g);
        if !residual.is_zero() {
            let c = residual.div(&a_at_g)?;
            p = &p + &a.scale_left(&c);
        }
        if i < last {
            a = extend_annihilator(&a, &a_at_g)?;
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p3() -> Arc<FieldTower> {
        FieldTower::new(3, 2).unwrap()
    }

    fn xpoly(t: &Arc<FieldTower>, coeffs: &[i64]) -> SkewPoly {
        SkewPoly::from_coeffs(t, coeffs.iter().map(|&c| FieldElement::from_int(t, c)).collect()).unwrap()
    }

    #[test]
    fn annihilator_examples() {
        let t = p3();
        let one = FieldElement::one(&t);
        let z = FieldElement::zeta_pow(&t, 1);

        let empty = SubspaceBasis::new(&t, vec![]).unwrap();
        assert_eq!(annihilator(&empty).unwrap(), SkewPoly::one(&t));

        let b1 = SubspaceBasis::new(&t, vec![one.clone()]).unwrap();
        assert_eq!(annihilator(&b1).unwrap(), xpoly(&t, &[-1, 1]));

        let b2 = SubspaceBasis::new(&t, vec![one.clone(), z.clone()]).unwrap();
        assert_eq!(annihilator(&b2).unwrap(), xpoly(&t, &[-1, 0, 1]));
    }

    #[test]
    fn dependent_basis_rejected() {
        let t = p3();
        let one = FieldElement::one(&t);
        let two = FieldElement::from_int(&t, 2);
        assert_eq!(SubspaceBasis::new(&t, vec![one.clone(), two.clone()]).unwrap_err(), Error::DependentPoints);
        assert_eq!(annihilator_of(&t, &[one, two]).unwrap_err(), Error::DependentPoints);
    }

    #[test]
    fn span_poly_examples() {
        let t = p3();
        let zero = FieldElement::zero(&t);
        assert_eq!(span_poly(&t, &[zero.clone(), zero.clone(), zero]), SkewPoly::one(&t));
        let one = FieldElement::one(&t);
        let two = FieldElement::from_int(&t, 2);
        assert_eq!(span_poly(&t, &[one.clone(), two]), xpoly(&t, &[-1, 1]));
        let z = FieldElement::zeta_pow(&t, 1);
        assert_eq!(span_poly(&t, &[one, z.clone()]), xpoly(&t, &[-1, 0, 1]));
        // span{ζ}: x − θ(ζ)/ζ = x − ζ
        let expected = SkewPoly::from_coeffs(&t, vec![-&z, FieldElement::one(&t)]).unwrap();
        assert_eq!(span_poly(&t, &[z.clone(), FieldElement::zero(&t)]), expected);
    }

    #[test]
    fn interpolation_examples() {
        let t = p3();
        let one = FieldElement::one(&t);
        let z = FieldElement::zeta_pow(&t, 1);
        let c = FieldElement::from_ints(&t, &[3, -2]).unwrap();
        assert_eq!(interpolate(&t, &[one.clone()], &[c.clone()]).unwrap(), SkewPoly::constant(c));

        let pts = vec![one.clone(), z.clone()];
        assert_eq!(interpolate(&t, &pts, &pts).unwrap(), SkewPoly::one(&t));

        let vals = vec![one.clone(), FieldElement::zeta_pow(&t, 2)];
        assert_eq!(interpolate(&t, &pts, &vals).unwrap(), SkewPoly::x(&t));

        let dep = vec![one.clone(), FieldElement::from_int(&t, 3)];
        assert_eq!(interpolate(&t, &dep, &vals).unwrap_err(), Error::DependentPoints);
        assert!(interpolate(&t, &pts, &vals[..1]).is_err());
        assert!(interpolate(&t, &[], &[]).unwrap().is_zero());
    }

    #[test]
    fn contains_matches_span() {
        let t = FieldTower::new(5, 2).unwrap();
        let z = FieldElement::zeta_pow(&t, 1);
        let b = SubspaceBasis::new(&t, vec![FieldElement::one(&t), z.clone()]).unwrap();
        let inside = &FieldElement::from_int(&t, 3) + &z.scale(&rat(-2));
        assert!(b.contains(&inside));
        assert!(!b.contains(&FieldElement::zeta_pow(&t, 2)));
    }
}
