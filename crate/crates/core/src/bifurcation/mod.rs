//! The Green operator of the linearised profile equation, its identities,
//! and the reduced bifurcation map with its nondegeneracy check.

mod gmap;
mod green;
mod lemma3;

pub use gmap::{
    dzg_apply, dzg_finite_difference, dzg_matrix, g_eval, lemma4_kernel_check, pack_z,
    smallest_singular_value, unpack_z, Lemma4Report, ZTriple, SINGULAR_VALUE_THRESHOLD,
};
pub use green::{build_green_basis, GreenBasis, VBarSamples, DEFAULT_GREEN_GRID};
pub use lemma3::{exchange_residual, lemma3_verify, p_poly, IntervalCheck, Lemma3Report, Residual};
