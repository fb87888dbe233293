//! Subspace codes built from function spaces on algebraic curves over finite
//! fields, together with exact verification of their parameters and a
//! simulator for the operator channel with a minimum-distance decoder.

pub mod channel;
pub mod codefile;
pub mod curve;
pub mod error;
pub mod fqlinalg;
pub mod gf;
pub mod netcode;
pub mod rrspace;
pub mod series;

pub use error::Error;
