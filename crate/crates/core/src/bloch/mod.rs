//! Tight-binding physics built on the Bessel-product integrals: densities of
//! states, conductivity, the honeycomb umklapp rate and its kinks.

mod dos;
mod honeycomb;
mod kinks;

pub use dos::{
    conductivity_jj, dos_hypercubic, dos_square_closed, dos_sum_rule, DosConvention, HypercubicLattice,
};
pub use honeycomb::{
    fermi_velocity, honeycomb_dispersion, k_point, s_functions, umklapp_f, umklapp_rate, HoneycombModel,
    ModelValidity, SFunctions,
};
pub use kinks::{kink_scan, Kink};
