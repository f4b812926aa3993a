//! Principal eigenvalues of the weighted p-Laplacian with sign-changing
//! weights on planar lattice domains, their large-p limits, and the
//! geometric quantities that govern those limits.

pub mod commands;
pub mod config;
pub mod edt;
pub mod error;
pub mod field;
pub mod geo;
pub mod grid;
pub mod io;
pub mod plap;
pub mod viscosity;
pub mod weight;

pub use edt::{edt, DistanceField};
pub use error::{Error, Result};
pub use field::{Potential, ScalarField};
pub use geo::{cone_field, pack, r_minus, r_plus, GeoLimits, PackOptions, PackingResult};
pub use grid::{disk, rasterize, rect, DomainMask, Grid, Node, Primitive, Region, Shape};
pub use plap::{
    dirichlet_energy_p, mu1, solve_lambda1, sweep, two_cone_upper_bound, weighted_mass_p,
    EigenResult, SolverOptions, SweepRecord,
};
pub use weight::{build_weight, negate, WeightField, WeightSpec};
