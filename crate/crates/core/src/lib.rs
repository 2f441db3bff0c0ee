//! Finite fan loops.
//!
//! A loop is a set with a multiplication that has an identity and unique left
//! and right division. A *fan loop* is a loop in which every associator
//! `t(a,b,c) = ((ab)c)/(a(bc))` and `p(a,b,c) = (a(bc))\((ab)c)` lies in the
//! nucleus. This crate works with finite loops given by Cayley tables:
//!
//! - [`loops`]: tables, divisions, associators, nuclei, the fan and classification.
//! - [`laws`]: a registry of identities checked exhaustively with witnesses.
//! - [`quotient`]: normal subloops, cosets and quotient loops.
//! - [`products`]: direct products, smashed products and Cayley–Dickson basis loops.
//! - [`lp`]: an exact rational simplex solver.
//! - [`haar`]: covering numbers, ratio functionals and the left-invariant measure.
//! - [`census`]: enumeration of reduced Latin squares.
//! - [`catalog`]: small groups used as test fixtures and corpus material.

pub mod catalog;
pub mod census;
pub mod haar;
pub mod laws;
pub mod loops;
pub mod lp;
pub mod products;
pub mod quotient;
pub mod rational;

pub use census::{CensusError, CensusFilter, CensusQuery};
pub use haar::{HaarError, InvariantMeasure, LoopFunction, TranslateMode};
pub use laws::{IdentityLaw, LawError, LawReport, LawStatus};
pub use loops::{classify, fan, nucleus_parts, verify_loop, ElementSet, FiniteLoop, LoopAnalysis, LoopError, NucleusParts};
pub use lp::{LpProblem, LpSolution, LpStatus};
pub use products::{ProductError, SmashingData, SmashingViolation};
pub use quotient::{CosetDecomposition, QuotientError};
pub use rational::Rational;
