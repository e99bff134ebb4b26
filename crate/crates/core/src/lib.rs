//! Gabidulin codes over the cyclotomic field Q(ζ_p) with a skew-polynomial
//! key-equation decoder.
//!
//! The base field is K = Q, the extension is L = Q(ζ_p) of degree m = p − 1,
//! and θ is the automorphism ζ ↦ ζ^g for a primitive root g mod p.

pub mod campaign;
pub mod code;
pub mod construction;
pub mod counter;
pub mod decoder;
pub mod error;
pub mod field;
pub mod io;
pub mod linalg;
pub mod rank;
pub mod rational;
pub mod scaling;
pub mod skew;

pub use campaign::{run_campaign, CampaignConfig, CampaignReport, SolverChoice, TrialRecord};
pub use code::{channel, random_rank_error, GabidulinCode, Message, ReceivedWord};
pub use construction::{annihilator, interpolate, span_poly, SubspaceBasis};
pub use counter::{count_ops, OpCounts};
pub use decoder::{decode, decode_detailed, DecodeFailure, DecodeResult, DecodeTrace, Solver, SrpInstance, SrpSolution};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldTower};
pub use rank::{rank_distance, rank_weights, RankProfile};
pub use rational::Rational;
pub use skew::SkewPoly;
