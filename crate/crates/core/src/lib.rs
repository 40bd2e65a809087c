//! Integrals of products of Bessel functions: vanishing predictions, closed
//! forms, oscillatory quadrature, angular delta-function oracles, and the
//! tight-binding physics built on them.

pub mod bloch;
pub mod closed_form;
pub mod constraints;
pub mod delta_oracle;
pub mod error;
pub mod estimate;
pub mod numeric;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
pub use estimate::{CrossCheck, Estimate, Flags, Method};
pub use constraints::{
    check_charge_neutrality, check_convergence, check_polygonal, predict_vanishing, ConstraintReport,
    Factor, IntegralSpec, PolygonalStatus,
};
pub use closed_form::{eval_exton, lauricella_fc, LauricellaParams};
pub use quad::{
    eval_bessel_product, eval_bessel_product_with, eval_trig_bessel, eval_trig_bessel_with, QuadMethod,
    TrigBesselSpec,
};
pub use delta_oracle::{
    eval_2d_angular, eval_3d_angular, threshold_scan, trig_expansion_3d, AngularBudget, ScatterSpec, ThresholdFit,
    Weight,
};
pub use bloch::{
    conductivity_jj, dos_hypercubic, dos_square_closed, honeycomb_dispersion, kink_scan, s_functions, umklapp_f,
    umklapp_rate, HoneycombModel, HypercubicLattice,
};
