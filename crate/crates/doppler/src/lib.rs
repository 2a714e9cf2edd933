//! Doppler-effect models.
//!
//! Every operation takes the wave speed explicitly; [`core::C`] is only a
//! convenience constant.

pub mod acoustic;
pub mod applications;
pub mod atmosphere;
pub mod classical;
pub mod core;
pub mod error;
pub mod gravity_accel;
pub mod numeric;
pub mod oracle;
pub mod relativistic;

pub use error::{DopplerError, Result};
