//! Separation constructions: cushion polynomials, side descriptions used as
//! membership oracles, exponent searches, and the separator builders.

pub mod cushion;
pub mod ops;
pub mod search;
pub mod sides;

pub use cushion::{kappa_poly, kappa_poly_capped, mu_poly, Cushion, CushionParams, Mu};
pub use ops::{
    adjust_with_cushion, globalize_local_separator, merge_local_separators,
    separate_disjoint, separate_finite_intersection, AdjustOutput, LocalSep, SepOutput,
};
pub use search::{find_exponent, shrink_constant, Evidence, FoundConstant, FoundConstants, PredOutcome};
pub use sides::{sample_in_ball, SideDesc, Window, ZariskiSet};
