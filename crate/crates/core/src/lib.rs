//! Contest success functions that extract the prize value through effort,
//! with a numerical equilibrium oracle to check them.
//!
//! The math is generic over [`Scalar`] (`f32` or `f64`); the aliases below fix
//! the double-precision types used by the command-line front end.

pub mod cli;
pub mod contest;
pub mod csf;
pub mod equilibrium;
pub mod error;
pub mod scalar;
pub mod search;
pub mod theory;

pub use contest::{
    aggregate_effort, argmax_set, is_common_value, max_value, payoff, ContestGame, EffortProfile,
    ValueProfile, WinProbabilities,
};
pub use csf::{CsfKind, CsfSpec};
pub use equilibrium::{
    best_response, best_response_dynamics, cluster_certificates, grid_scan, regret,
    verify_equilibrium, BestResponse, Cluster, Dynamics, EquilibriumCertificate, SearchConfig,
    TrajectoryStep,
};
pub use error::{ContestError, Result};
pub use scalar::Scalar;
pub use theory::{ActiveSet, ExtractivenessReport, Verdict};

pub type Game = ContestGame<f64>;
pub type Values = ValueProfile<f64>;
pub type Efforts = EffortProfile<f64>;
pub type Csf = CsfSpec<f64>;
pub type Search = SearchConfig<f64>;
pub type Certificate = EquilibriumCertificate<f64>;
pub type Report = ExtractivenessReport<f64>;

pub type GameF32 = ContestGame<f32>;
pub type ValuesF32 = ValueProfile<f32>;
pub type EffortsF32 = EffortProfile<f32>;
pub type SearchF32 = SearchConfig<f32>;
