//! Twinned order polytopes `Δ(P,−Q)` of pairs of finite posets: the point
//! configuration and its interior-origin test, the toric ideal with a
//! binomial Buchberger engine, and Ehrhart data with the reflexive, Fano and
//! normality checks. All arithmetic is exact.

pub mod ehrhart;
pub mod geometry;
pub mod groebner;
pub mod hull;
pub mod lp;
pub mod poset;
pub mod toric;
