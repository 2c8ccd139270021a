//! Shift spaces presented by labelled graphs, and the objects that live in them.

pub mod alphabet;
pub mod block_code;
pub mod enumerate;
pub mod point;
pub mod presentation;
pub mod word;

pub use alphabet::{Alphabet, Sym};
pub use block_code::{apply_block_code, factor_gap_bound, factor_presentation, BlockCode};
pub use enumerate::{
    allowed_blocks, check_volume, enumerate_words, enumeration_cap, for_each_word, is_allowed,
    set_enumeration_cap, DEFAULT_ENUMERATION_CAP,
};
pub use point::{check_splice, splice, Point, Splice, SpliceCheck};
pub use presentation::{DecouplingCertificate, Edge, GapVariant, SoficPresentation};
pub use word::{Configuration, Cylinder, Interval, Word};
