//! Chambers, Stokes factors and their ordered products.

mod chamber;
mod dt;
mod product;

pub use chamber::{thin_dt, Chamber, Charge};
pub use dt::DtModel;
pub use product::{
    an_stokes, bounded_phase_chambers, factor_coefficient, factor_product, generic_chamber, joyce_point, multiply_factors,
    natural_lifts, phase_chambers, pipeline, stokes_factor, stokes_factors, stokes_product, verify_an_jet, AnJetReport,
    Factor, NaturalLifts, StokesData,
};
