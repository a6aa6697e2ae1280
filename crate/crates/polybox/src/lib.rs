//! Polybox codes: words over an alphabet with complementation, the boxes
//! they describe, and the combinatorics of cube tilings built on them.
//!
//! Coordinates are 0-based throughout the library.

pub mod alphabet;
pub mod bitset;
pub mod budget;
pub mod classify;
pub mod code;
pub mod error;
pub mod iso;
pub mod keller;
pub mod measure;
pub mod rigidity;
pub mod tiling;
pub mod word;

pub use alphabet::{Alphabet, Letter};
pub use budget::Budget;
pub use code::{validate_polybox_code, Distribution, Group, PolyboxCode};
pub use error::{Error, Result};
pub use iso::{apply_isomorphism, canonical_form, IsoGroup, Isomorphism, LetterMap};
pub use word::{is_dichotomous, is_twin_pair, Word};
