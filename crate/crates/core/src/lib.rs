//! Two-point G² Hermite interpolation with rational spirals.
//!
//! A conic arc in normalized position is mapped by a Moebius transformation
//! onto a rational quartic whose curvature is monotone. Sweeping the free
//! parameter gives a one-parameter family of spirals; special members reduce
//! to rational cubics.

pub mod cli;
pub mod conic;
pub mod cubic;
pub mod error;
pub mod family;
pub mod io;
pub mod poly;
pub mod problem;
pub mod sampling;
pub mod server;
pub mod svg;

pub use error::{Error, Result};
