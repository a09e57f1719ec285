//! File formats, configuration and the parallel experiment harness around
//! [`noisenet_core`].

pub mod config;
mod error;
pub mod experiments;
pub mod formats;
pub mod output;

pub use error::{Error, Result};
pub use noisenet_core as core;
