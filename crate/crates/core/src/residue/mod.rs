//! Replica contour integrals evaluated as exact residues.
//!
//! Every residue is the coefficient of `z^-1` in a Laurent expansion at
//! `z = 0` whose coefficients live in the field of rational functions of `u`.

mod fab;
mod identities;
mod two_point;

pub use fab::{
    exp_mean_moments, fab, fab_generalized, generalized_moments, laurent_coefficient, moments_of, mp_literal, FabCache,
    FabValue,
};
pub use identities::{
    identity_residual_ab, identity_residual_n, k2_residual, ode_residual, verify_identity, verify_ode, verify_t1,
    Identity, Ode,
};
pub use two_point::{two_point_series, TwoPointValue};
