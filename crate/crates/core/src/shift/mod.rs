//! Countable and finite Markov shifts: Gurevič entropy, return series, Vere-Jones
//! classification, maximal measures, entropy at infinity and zeta functions.

pub mod graph;
pub mod measure;
pub mod perron;
pub mod returns;
pub mod zeta;

pub use graph::ShiftGraph;
pub use measure::{
    depth_exhaustion, entropy_at_infinity, markov_entropy, max_measure, prefix_exhaustion, rokhlin_entropy,
    EntropyAtInfinity, MarkovMeasure, MaxMeasure,
};
pub use perron::{eigen, entropy, entropy_or_zero, spr_convergence, EigenData, EntropyReport, SprFit};
pub use returns::{classify, partial_sums_exact, return_series, Certainty, Classification, ReturnSeries, VjClass};
pub use zeta::{local_zeta, semi_local_zeta, LocalZeta, RationalFunction, SemiLocalZeta};
