//! Ternary relations: degree, cylinder detection, the derived relation `G`
//! and its fiber laws, the Cauchy–Schwarz transfer from `F` to `G`, and the
//! instance families used by the scaling experiments.

mod degree;
mod derived;
mod family;

pub use degree::{cylindrical_witness, delta_degree, flatten, CylinderWitness, DeltaDegree};
pub use derived::{
    cauchy_schwarz_check, check_g_fiber_bounds, derive_g, large_subset_trim, CauchySchwarzReport,
    DerivedG, FiberReport, PointSetCheck, TrimReport, DEFAULT_BUDGET,
};
pub use family::{make_family, BlockSize, FamilySpec, Group, RelationFamily, ScaledGrid, Twist};
