//! Command-line front end for the three-level maser engine simulator:
//! configuration ingestion, parameter-grid sweeps, CSV emission, and a
//! self-verification suite.

pub mod config;
pub mod csv_out;
pub mod sweep;
pub mod verify;
