//! Exact double Hurwitz numbers, their chamber polynomials over the resonance
//! arrangement, and genus-0 wall crossings.

pub mod chambers;
pub mod cli;
pub mod exact;
pub mod hurwitz;
pub mod identities;
pub mod piecewise;
pub mod symgroup;
