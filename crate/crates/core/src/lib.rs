//! CAN bus traffic simulation and bit-level entropy intrusion detection.
//!
//! This crate simulates a single shared CAN bus (periodic ECU traffic,
//! bitwise arbitration, message-injection attacks) and implements an
//! intrusion detection system that watches the Shannon entropy of each
//! of the 11 identifier bits. Detection compares per-bit entropy against
//! a golden template built from attack-free traffic; once a window is
//! flagged, the direction of the per-bit probability deviations is used
//! to infer which identifier(s) were injected.
//!
//! The main pieces:
//!
//! - [`can`]: frame representation, identifier bit decomposition, and
//!   arbitration semantics.
//! - [`traffic`]: benign traffic generation and CAN log file I/O.
//! - [`bus`]: discrete-event simulation of the shared bus.
//! - [`entropy`]: per-bit probability and binary entropy over windows.
//! - [`detector`]: golden template construction and window verdicts.
//! - [`inference`]: constraint derivation and candidate ID ranking.
//! - [`attacks`]: malicious request streams for four attack scenarios.
//! - [`scenario`]: scenario files combining traffic and attack configs.
//! - [`evaluation`]: end-to-end evaluation harness and report.

pub mod attacks;
pub mod bus;
pub mod can;
pub mod detector;
pub mod entropy;
mod error;
pub mod evaluation;
pub mod inference;
pub mod scenario;
pub mod traffic;

pub use error::{Error, Result};
