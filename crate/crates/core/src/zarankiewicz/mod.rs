//! `K_{s,t}` detection, Kővári–Sós–Turán bounds, exponent arithmetic and the
//! certified recursive counter.

mod certify;
mod exponents;
mod kst;

pub use certify::{certified_count, default_r, BoundCertificate, Case};
pub use exponents::{distal_delta_bound, exponent_params, kst_bound, ExponentParams};
pub use kst::{find_kst, find_kst_within, kst_free_decomposition, Decomposition, KstWitness};
