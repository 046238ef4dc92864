//! Files, formats, network and the command line around `matcha-core`.

pub mod annotate;
pub mod check;
pub mod cli;
pub mod config;
pub mod data;
pub mod export;
pub mod guidance;
pub mod mine;
pub mod preview;
pub mod project;
pub mod xml;

pub use matcha_core as core;
