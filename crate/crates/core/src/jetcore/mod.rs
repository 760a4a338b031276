//! Germs, 2-jets, Monge normalization and the `a_002` reduction.

pub mod germ;
pub mod jet;
pub mod lemma;
pub mod monge;

pub use germ::{parse_germ, Coeff, PolyMapGerm, Term};
pub use jet::{jet2, Jet2};
pub use lemma::{reduce_lemma_change, LemmaReduction};
pub use monge::{fundamental_forms, monge_normalize, FundamentalForms, MongeJet, TransformRecord};
