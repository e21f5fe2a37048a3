//! Simulation toolkit for free-space quantum links between LEO satellites,
//! high- and low-altitude platforms, and ground stations.
//!
//! The crate is organised bottom-up:
//!
//! - [`geometry`]: circular-orbit pass geometry (elevation, range, slew rate).
//! - [`atmosphere`]: Hufnagel-Valley turbulence, Bufton wind with slew, and
//!   the Fried length, Greenwood frequency and scintillation index.
//! - [`channel`]: diffraction, pointing-jitter and fixed losses, background counts.
//! - [`qkd`]: finite-key decoy-state BB84 key length and its parameter search.
//! - [`entanglement`]: pair-distribution fidelity under background light.
//! - [`scenario`], [`studies`], [`report`], [`svg`]: scenario files, the four
//!   studies, deterministic CSV reports and SVG figures.
//!
//! Runnable walkthroughs of each capability live in `examples/`; the `qlink`
//! binary exposes the studies on the command line.

pub mod atmosphere;
pub mod channel;
pub mod entanglement;
pub mod error;
pub mod geometry;
pub mod optim;
pub mod qkd;
pub mod quadrature;
pub mod report;
pub mod scenario;
pub mod studies;
pub mod svg;

pub use error::{Error, Result};
