//! Thermal-state entanglement of general two-spin-1/2 dimers in a magnetic
//! field.
//!
//! The crate computes Gibbs states of the general traceless pair model in
//! closed form, quantifies their entanglement (concurrence, negativity,
//! Horodecki CHSH parameter), classifies dimers into toric equivalence
//! classes with a symmetric/antisymmetric duality map, and extracts
//! entanglement transition curves in the temperature-field plane.
//!
//! Every analytic path is paired with an independent oracle: the X-state
//! Gibbs form against a dense eigendecomposition, and the X-state
//! concurrence against the Wootters spin-flip formula.

pub mod classification;
pub mod error;
pub mod measures;
pub mod model;
pub mod phasediagram;
pub mod thermal;

pub use classification::{
    dual_map, duality_residuals, is_dual_pair, qubit2_flip_conjugate, same_class, sample_class,
    sample_class_grid, torus_invariants, TorusInvariants, DEFAULT_CLASS_TOL,
};
pub use error::{Error, Result};
pub use measures::{
    chsh_parameter, concurrence_branches, concurrence_wootters, concurrence_x, correlation_matrix,
    negativity, partial_transpose, ConcurrencePair,
};
pub use model::{
    compile_spec, couplings_from_spin_convention, derived_quantities, hamiltonian_matrix, Category,
    Convention, DerivedAngles, DimerSpec, GeneralCouplings, Matrix4c, PairCouplings,
};
pub use phasediagram::{
    concurrence_grid, critical_temperatures, default_t_range, entangled_area, heisenberg_tc,
    linspace, linspace_open, negativity_grid, transition_curve, Branch, CurvePoint, DiagramGrid,
    TransitionCurve, DEFAULT_SOLVER_TOL, SCAN_POINTS,
};
pub use thermal::{
    block_energies, log_partition_function, partition_function, thermal_state,
    thermal_state_oracle, XState,
};
