//! Archimedean zeta integral pieces and the convergence criteria for
//! integrals of Bessel functions.

mod convergence;
mod gamma;
mod integral;
mod quadrature;
mod whittaker;

pub use convergence::{
    convergence_predicate, default_radii, double_integral_partials, gauss_legendre, lp_exponents,
    lp_norm_check, lp_norm_check_with_radii, scalar_product, BesselSpec, Classification, LpReport,
    PartialCurve, ScalarProduct, ScalarProductConfig,
};
pub use gamma::{gamma_complex, ln_gamma_complex};
pub use integral::{
    closed_form_ckj, extract_ckj, extract_ckj_with_tol, q_kj, z_infinity, z_infinity_quadrature,
    z_kj_closed, z_kj_quadrature, z_prefactor, CkjEntry, CkjTable, ZetaParams,
};
pub use quadrature::{exp_sinh, tanh_sinh, DeConfig};
pub use whittaker::{tricomi_u, whittaker_w, whittaker_w_tol};
