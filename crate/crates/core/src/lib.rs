//! Parametric cost time Petri nets: model, concrete semantics, symbolic
//! state classes and cost-optimal parameter synthesis.
//!
//! Typical use: parse a model with [`io::parse_model`], build a [`Goal`],
//! then call one of the synthesis procedures in [`synthesis`].

// Errors carry exact rationals for diagnostics; they are cold paths.
#![allow(clippy::result_large_err)]

pub mod class;
pub mod goal;
pub mod io;
pub mod net;
pub mod semantics;
pub mod synthesis;

pub use class::{initial_class, ClassError, StateClass, SubsumptionMode};
pub use goal::{Goal, GoalError};
pub use io::{parse_model, render_human, render_model, ModelDocument, QueryEcho, ResultDocument};
pub use net::{
    Bound, Diagnostic, Diagnostics, Marking, Net, NetDescription, NetError, StaticInterval,
    Valuation,
};
pub use polyhedra;
pub use semantics::{
    oracle_min_cost, replay, replay_trace, ConcreteState, OracleOutcome, TimedWord,
};
pub use synthesis::{
    bounded_synth, inf_synth, int_bounded_synth, int_inf_synth, ExplorationConfig, OptResult,
    SearchOrder, Status, SynthesisError, SynthesisResult,
};
