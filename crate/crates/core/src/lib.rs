//! Exact ambiguity analysis and synthesis for invertible weighted finite
//! automata over number fields.

pub mod config;
pub mod error;
pub mod exactfield;
pub mod exactlinalg;
pub mod groupdec;
pub mod repsplit;
pub mod spectral;
pub mod synth;
pub mod wfa;
pub mod wire;

pub use error::{Error, Result};
