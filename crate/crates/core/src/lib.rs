//! Rigorous verification of periodic isolating segments for the forced
//! Boussinesq equation
//!
//! ```text
//! u_tt = u_xx + β u_xxxx + σ (u²)_xx + ε f(t, x)
//! ```
//!
//! with periodic, even, zero-average boundary conditions. Solutions are
//! written in diagonalized Fourier coordinates `u_k^±`; a candidate segment
//! consists of `M` explicit low-mode boxes plus a power-law tail
//! `|u_k^±| ≤ C / k^s`. The verifier checks, in outward-rounded interval
//! arithmetic, that the vector field of every Galerkin projection crosses
//! the segment faces transversally, which yields a τ-periodic solution for
//! every period τ and every forcing within the given bounds.

pub mod certificate;
pub mod config;
pub mod error;
pub mod interval;
pub mod isolation;
pub mod model;
pub mod nonlinearity;
pub mod norms;
pub mod reference;
pub mod refinement;
pub mod sandbox;
pub mod segment;
pub mod serde_repr;

pub use certificate::{build_certificate, Certificate};
pub use error::{Error, Result};
pub use interval::{Interval, IntervalError};
pub use isolation::{check_high, check_low, verify, VerificationReport};
pub use model::{family_forcing, DiagPoint, Forcing, ForcingFamily, Problem};
pub use nonlinearity::NEnclosures;
pub use refinement::{refine, RefineOptions};
pub use segment::{ModeBox, Segment};
