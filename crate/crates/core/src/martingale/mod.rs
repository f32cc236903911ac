//! Discrete and continuous-time martingale experiments: exact transforms on
//! binary trees, the Haar system, Euler simulations of stochastic-integral
//! pairs and the space-time projection.

pub mod haar;
pub mod sde;
pub mod spacetime;
pub mod tree;

pub use haar::{haar_paley_check, haar_paley_fuzz, HaarFuzzReport};
pub use sde::{
    simulate_ensemble, simulate_pair, EnsembleSpec, PairKind, PathEnsemble, SimulationDiagnostics, SimulationOutcome,
    SimulationReport, WeakTypeCheck,
};
pub use spacetime::{spacetime_projection_estimate, spacetime_symbol, SpacetimeEstimate, SpacetimeSpec, StepRule};
pub use tree::{
    exhaustive_transform_ratio, near_extremal_search, supermartingale_check, transform_fuzz, DyadicTree,
    NearExtremalReport, SupermartingaleReport, TransformFuzzReport, TransformKind, TransformSpec,
};
