//! JSON interchange formats.
//!
//! Field elements are arrays of m `"num/den"` strings (power-basis
//! coordinates); θ-polynomials are arrays of field elements indexed by the
//! power of x.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::{GabidulinCode, Message, ReceivedWord};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::rational::{format_rational, parse_rational};
use crate::skew::SkewPoly;

pub type ElementJson = Vec<String>;

/// `{p, g}`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub p: u32,
    pub g: u32,
}

impl TowerSpec {
    pub fn of(tower: &FieldTower) -> Self {
        TowerSpec { p: tower.p(), g: tower.g() }
    }

    pub fn build(&self) -> Result<Arc<FieldTower>> {
        FieldTower::new(self.p, self.g)
    }
}

pub fn element_to_json(a: &FieldElement) -> ElementJson {
    a.coords().iter().map(format_rational).collect()
}

pub fn element_from_json(tower: &Arc<FieldTower>, coords: &[String]) -> Result<FieldElement> {
    let q = coords.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
    FieldElement::from_coords(tower, &q)
}

pub fn poly_to_json(a: &SkewPoly) -> Vec<ElementJson> {
    a.coeffs().iter().map(element_to_json).collect()
}

pub fn poly_from_json(tower: &Arc<FieldTower>, coeffs: &[ElementJson]) -> Result<SkewPoly> {
    let c = coeffs.iter().map(|e| element_from_json(tower, e)).collect::<Result<Vec<_>>>()?;
    SkewPoly::from_coeffs(tower, c)
}

/// `{"k": int, "coeffs": [[rational-string × m] …]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MessageFile {
    pub k: usize,
    pub coeffs: Vec<ElementJson>,
}

impl MessageFile {
    pub fn from_message(msg: &Message, k: usize) -> Self {
        MessageFile { k, coeffs: poly_to_json(msg.poly()) }
    }

    pub fn to_message(&self, tower: &Arc<FieldTower>) -> Result<Message> {
        Message::new(poly_from_json(tower, &self.coeffs)?, self.k)
    }
}

/// `{"n": int, "symbols": [[rational-string × m] …]}`, used for codewords,
/// received words and plain vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorFile {
    pub n: usize,
    pub symbols: Vec<ElementJson>,
}

impl VectorFile {
    pub fn from_symbols(symbols: &[FieldElement]) -> Self {
        VectorFile { n: symbols.len(), symbols: symbols.iter().map(element_to_json).collect() }
    }

    pub fn to_symbols(&self, tower: &Arc<FieldTower>) -> Result<Vec<FieldElement>> {
        if self.symbols.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: self.symbols.len() });
        }
        self.symbols.iter().map(|s| element_from_json(tower, s)).collect()
    }

    pub fn to_received(&self, tower: &Arc<FieldTower>) -> Result<ReceivedWord> {
        Ok(ReceivedWord { symbols: self.to_symbols(tower)? })
    }
}

/// Code description: `{"field": {p, g}, "n": int, "k": int, "points": [...]?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeConfig {
    pub field: TowerSpec,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<ElementJson>>,
}

impl CodeConfig {
    pub fn build(&self) -> Result<GabidulinCode> {
        let tower = self.field.build()?;
        let points = match &self.points {
            Some(pts) => Some(pts.iter().map(|p| element_from_json(&tower, p)).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        GabidulinCode::new(&tower, self.n, self.k, points)
    }
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn element_format() {
        let t = FieldTower::new(3, 2).unwrap();
        let a = FieldElement::from_coords(&t, &[crate::rational::rat_frac(1, 2), crate::rational::rat(-3)]).unwrap();
        assert_eq!(element_to_json(&a), vec!["1/2".to_string(), "-3/1".to_string()]);
        let json = serde_json::to_string(&TowerSpec::of(&t)).unwrap();
        assert_eq!(json, r#"{"p":3,"g":2}"#);
        assert!(element_from_json(&t, &["1".into()]).is_err());
        assert!(element_from_json(&t, &["1".into(), "a/b".into()]).is_err());
    }

    #[test]
    fn message_file_checks_degree() {
        let t = FieldTower::new(5, 2).unwrap();
        let x = SkewPoly::x(&t);
        let file = MessageFile { k: 1, coeffs: poly_to_json(&x) };
        assert_eq!(file.to_message(&t).unwrap_err(), Error::MessageDegree { degree: 1, k: 1 });
        let file: MessageFile = parse_json(r#"{"k": 2, "coeffs": [["0","1","0","0"]]}"#).unwrap();
        assert_eq!(file.to_message(&t).unwrap().poly(), &SkewPoly::constant(FieldElement::zeta_pow(&t, 1)));
    }

    #[test]
    fn vector_file_length_checked() {
        let t = FieldTower::new(3, 2).unwrap();
        let f = VectorFile { n: 2, symbols: vec![vec!["1/1".into(), "0/1".into()]] };
        assert!(f.to_symbols(&t).is_err());
    }

    #[test]
    fn code_config_builds() {
        let cfg: CodeConfig = parse_json(r#"{"field": {"p": 5, "g": 2}, "n": 4, "k": 2}"#).unwrap();
        let code = cfg.build().unwrap();
        assert_eq!(code.d(), 3);
        let cfg: CodeConfig =
            parse_json(r#"{"field": {"p": 3, "g": 2}, "n": 2, "k": 1, "points": [["1","0"], ["2","0"]]}"#).unwrap();
        assert_eq!(cfg.build().unwrap_err(), Error::DependentPoints);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn poly_json_round_trip(seed in any::<u64>(), deg in 0usize..5) {
            let t = FieldTower::new(7, 3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let coeffs: Vec<FieldElement> = (0..=deg)
                .map(|_| {
                    let a = FieldElement::random(&t, &mut rng, 50);
                    let b = FieldElement::random(&t, &mut rng, 50);
                    if b.is_zero() { a } else { a.div(&b).unwrap() }
                })
                .collect();
            let p = SkewPoly::from_coeffs(&t, coeffs).unwrap();
            let text = serde_json::to_string(&poly_to_json(&p)).unwrap();
            let back: Vec<ElementJson> = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(poly_from_json(&t, &back).unwrap(), p);
        }
    }
}
