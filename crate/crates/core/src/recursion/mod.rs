//! Table generators for the four recursion schemes and the two operator
//! equations that check them independently.

mod do_norbury;
mod gauss;
mod glag;
mod vk;

pub use do_norbury::{c1_closed_form, do_norbury_table, laguerre_ode_check, LagCTable};
pub use gauss::{gauss_hz_table, GaussBTable};
pub use glag::{glag_boundary_residuals, glag_k1_table, glag_w1_ode_check, HalfGenusTable};
pub use vk::{consistency_form, constraint_report, moment, scaled_row, vk_table, VTable};
