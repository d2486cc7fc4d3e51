mod checks;
mod dynamical;
mod golden;
mod twist;

pub use checks::{check_hecke, check_qdybe, check_qybe, quasiclassical_check, quasiclassical_check_dyn};
pub use dynamical::{
    dynamical_J_T, dynamical_R_T, dynamical_product, dynamical_product_with, flatten, gauge_quantum, r_from_twist,
    DynSeries, Flattening, SeriesTensor,
};
pub use twist::{
    build_J_Ts, build_R_Ts, comb_factor, diagonal_exponents, reversal_factor, twist_factor_jk, twist_factor_jk_with,
    twist_factors, CombFactor, Reversal, TwistFactors,
};
pub use golden::{
    first_mismatch, flip_closed_form, flip_coefficient, geometric_inverse, golden_closed_forms, identity_closed_form,
    row_weight_shift, GoldenOutcome,
};
