//! Finite relational models of the quantum state.
//!
//! A quantum state is described here without numbers: four relations on
//! N-point regions of space, two for amplitude (`geq`, `sum`) and two for
//! phase (clockwise betweenness `cb`, signed-difference congruence `cong`).
//! The crate checks the axioms those relations must satisfy, builds the
//! numerical representations they guarantee, verifies that every two
//! representations differ only by the familiar gauge freedom (a positive
//! amplitude scale and a global phase shift), and translates between
//! discretized wave functions and the relations.
//!
//! Module map:
//!
//! * [`structures`] – region ids, the two relational structures, JSON file format.
//! * [`checker`] – axiom decision procedures with lexicographically minimal witnesses.
//! * [`represent`] – representation builders, verifiers and uniqueness checks.
//! * [`bridge`] – wave-function grids, relation extraction, gauge fitting, Born rule.
//! * [`search`] – canonical model generators, the naive enumeration oracle and
//!   counterexample search.

pub mod axiom;
pub mod bridge;
pub mod checker;
pub mod rational;
pub mod represent;
pub mod search;
pub mod structures;
mod table;

pub use axiom::{Axiom, AxiomReport, CheckConfig, Family, Status};
pub use rational::Rational;
pub use structures::{AmplitudeStructure, PhaseStructure, RegionId, Structure};
