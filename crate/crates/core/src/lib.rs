//! Script-invariance probes for sparse-autoencoder features.
//!
//! Serbian is written in two scripts with a one-to-one letter mapping, so the
//! same sentence can be fed to a model in Latin and in Cyrillic while its
//! meaning stays fixed. This crate builds the triplet corpus, reads hidden
//! state dumps, encodes them through a JumpReLU SAE, compares active-feature
//! sets with Jaccard similarity across fourteen comparison types, and writes
//! the summary tables and confound analyses.
//!
//! | module | role |
//! |---|---|
//! | [`translit`] | Latin ↔ Cyrillic transliteration and round-trip checks |
//! | [`corpus`] | triplet dataset, validation, comparison-pair enumeration |
//! | [`tensorio`] | `ACTV1` / `SAEW1` / `EMBV1` binary formats |
//! | [`saefeat`] | JumpReLU encoding, active sets, Jaccard similarity |
//! | [`analysis`] | per-cell summaries, aggregation, checks, statistics |
//! | [`synth`] | seeded synthetic fixtures and brute-force oracles |
//! | [`run`] | end-to-end orchestration and report writing |

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod run;
pub mod saefeat;
pub mod synth;
pub mod tensorio;
pub mod translit;

pub use error::{Error, Result};
