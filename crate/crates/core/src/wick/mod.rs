//! Symbolic-in-`N` moment oracles by explicit Wick pairing enumeration.

mod enumerate;
mod moment;

pub use enumerate::{
    complex_wishart_moment, connected_counts, connected_moments, gue_moment, wishart_counts, TracePattern, GUE_LIMIT,
    WISHART_LIMIT,
};
pub use moment::{genus_extract, Dim, MomentPoly, RectMoment};
