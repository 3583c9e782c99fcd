//! Certificates, tables and grid sweeps on top of `wsec-core`.

pub mod cert;
pub mod grid;

pub use cert::{certify, Certificate, Outcome, Request};
