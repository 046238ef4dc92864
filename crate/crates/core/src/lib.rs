//! Core analysis for compiling Google Play data safety labels from Android
//! sources: Java front end, privacy annotation model, detectors, SDK
//! knowledge base and label merging. IO-free; the `matcha` crate supplies
//! files, network and the command line.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod java;
pub mod span;
pub mod annotation;
pub mod diag;
pub mod taxonomy;
pub mod detect;
pub mod sdk;
pub mod label;
pub mod wizard;
pub mod analysis;
