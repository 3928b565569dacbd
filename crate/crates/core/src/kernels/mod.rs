//! Cotangent and digamma kernels, root systems, and the auxiliary series
//! that the identities are built from.

mod kernel;
mod roots;
pub mod fast;

pub use kernel::{
    a_k, a_k_with, a_main, alpha_fn, alpha_fn_via_c1, alpha_k, b_kl, b_kl_with, b_main, b_peak, beta_fn,
    beta_fn_reflected, c_k, c_k_with, c_main, cot_bound_constant, fm_gm, pair_sum_sides, series_constant, FamilyKind,
    KernelValue, SeriesConstant,
};
pub use roots::{partial_fraction_even, partial_fraction_odd, RootSystem};
