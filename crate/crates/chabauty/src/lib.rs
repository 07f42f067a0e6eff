//! Closed subgroups of `R`, `C` and the three-dimensional Heisenberg group,
//! computationally: canonical representations across strata, the Chabauty
//! metric and convergence verdicts, Mahler-type compactness certificates,
//! Eisenstein invariants `g2, g3, Δ, j` with certified error, the sphere
//! parametrization of the subgroup space of the plane, and the lattice
//! calculus of the Heisenberg group.
//!
//! Organization:
//! - [`exact`]: rationals, quadratic surds, exact complex numbers, small
//!   integer linear algebra;
//! - [`ambient`]: the Heisenberg group product, commutators, automorphisms
//!   and dilations, in float and exact modes;
//! - [`euclid`]: subgroups of `R` and `C` — classification, reduction, duals,
//!   distances, enumeration, exact closures;
//! - [`metric`]: the generic Chabauty-metric engine and compactness verdicts;
//! - [`invariants`]: Eisenstein sums, two independent summation routes, and
//!   numerical inversion;
//! - [`sphere`]: the sphere parametrization of the subgroup space of `C`;
//! - [`heis`]: subgroups of the Heisenberg group and its metric plugin;
//! - [`descriptor`]: JSON descriptors shared with the CLI.

pub mod ambient;
pub mod descriptor;
pub mod error;
pub mod euclid;
pub mod exact;
pub mod heis;
pub mod invariants;
pub mod metric;
pub mod sphere;
pub mod support;

pub use ambient::{HeisAutomorphism, HeisElement, HeisElementExact};
pub use error::{InvariantError, MetricError, SubgroupError};
pub use euclid::{
    closure_of_generated, cross, reduce_basis, ClosedSubgroupC, ClosedSubgroupR, CANONICAL_TOL,
};
pub use heis::{
    example11_lattice, example11_limit, heis_mahler_verdict, lattice_witness_near_pullback,
    make_lambda_n, HSpace, HeisLattice, HeisStratum, HeisSubgroup,
};
pub use invariants::{
    eisenstein, eisenstein_shell, extended_g_prime, invert_g, invert_j, LatticeInvariants,
};
pub use metric::{
    chabauty_distance, halo_predicate, limit_verdict, mahler_verdict, neighborhood_check,
    AmbientSpace, CSpace, DistanceResult, LimitReport, MahlerReport, MetricConfig, RSpace,
};
pub use sphere::{curve_membership, forward_f, inverse_f, sigma, trefoil_point, CurvePosition,
    SpherePoint};
pub use support::{Piece, SpacePoint, Support};
