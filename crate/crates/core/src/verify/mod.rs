//! Numerical checks of the variational and Gibbs properties.

pub mod lemmas;
pub mod tangent;
pub mod weak_gibbs;

pub use lemmas::{
    constrained_partition, decoupling_1d_check, lemma_211_check, lemma_212_check, InequalityCheck,
    Lemma211Params, LemmaContext, LemmaReport,
};
pub use tangent::{tangent_derivative_check, TangentReport};
pub use weak_gibbs::{gibbs_constant, weak_gibbs_scan, WeakGibbsReport, WeakGibbsRow};
