//! Autocorrelation-receiver (ACR) detection for binary, differentially
//! encoded impulse-radio UWB bursts.
//!
//! The crate is organised along the receive chain:
//!
//! - [`waveform`]: transmit pulse, multipath channel, matched receive filter,
//!   differential encoding and sampled burst synthesis.
//! - [`acr`]: the L-branch autocorrelation front-end producing the
//!   correlation statistics `Z[l][i]`, either per block ([`acr::ZMatrix`]) or
//!   as a streaming band ([`acr::ZBand`]).
//! - [`detectors`]: DD, exhaustive sequence estimation, sphere-decoder MSDD,
//!   Viterbi detection and the block/sorted/continuous decision-feedback
//!   detectors.
//! - [`complexity`]: real-valued addition counting for every decision unit.
//! - [`harness`]: Monte Carlo BER/complexity sweeps and CSV output.
//!
//! Runnable walkthroughs of each stage live in the crate's `examples/`
//! directory.

pub mod acr;
pub mod complexity;
pub mod detectors;
pub mod error;
pub mod harness;
pub mod rng;
pub mod waveform;

pub use error::{Error, Result};
pub use waveform::SymbolSeq;

/// Hard decision with the crate-wide tie rule `sign(0) = +1`.
#[inline]
pub fn sign(x: f64) -> i8 {
    if x < 0.0 {
        -1
    } else {
        1
    }
}
