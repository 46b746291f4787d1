//! Computations for the Maskit embedding of the twice-punctured torus.
//!
//! * [`word`]: free-group words and the representation `ρ(τ1, τ2)`.
//! * [`poly`]: exact trace polynomials and the top-terms coordinate oracle.
//! * [`lamination`]: canonical coordinates, disjointness, wheels, enumeration.
//! * [`domain`]: membership bounds and fundamental disks.
//! * [`tracer`]: pleating rays and planes by numerical continuation.
//! * [`limitset`]: orbit enumeration and rendering.
//! * [`geom`]: complex distance, bending angle, complex length.

pub mod config;
pub mod domain;
pub mod geom;
pub mod lamination;
pub mod limitset;
pub mod poly;
pub mod tracer;
pub mod word;

pub use config::RunConfig;
pub use lamination::{CanonicalCoords, RationalLamination};
pub use poly::BiPoly;
pub use word::{parse_word, GroupWord, Mat2C, ParameterPoint};
