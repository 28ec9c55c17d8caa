//! Translation of first-order monadic logic of order into temporal logic with
//! strict Until and Since by way of existential normal forms over chains of
//! points, together with a brute-force finite-chain oracle for both logics.

pub mod error;
pub mod formulas;
pub mod generate;
pub mod normal_form;
pub mod semantics;
pub mod translate;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use translate::{kamp, translate_with_trace, Translator};
