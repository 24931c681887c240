//! Presentation files, reports and the `qhd` command line on top of
//! [`qhd_core`].

pub mod presentation;
pub mod report;
pub mod run;

pub use presentation::{parse_order, parse_presentation, FieldMode, ParseError, Presentation};
