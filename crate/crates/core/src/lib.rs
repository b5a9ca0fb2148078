//! Mutually orthogoval projective and affine planes.
//!
//! Two planes of the same order on the same points are orthogoval when every
//! line of one meets every line of the other in at most two points. This
//! crate builds such sets (conjugated Cremona pairs, pencils of conics, φ_k
//! triples, a cyclic quadruple of order 3, the large set of STS(9), and
//! matrix-power spread families), verifies them exhaustively, searches for
//! new ones, and compiles them into covering perfect hash families and
//! strength-3 covering arrays.

pub mod construct;
pub mod covering;
pub(crate) mod cover;
pub mod error;
pub mod ext;
pub mod field;
pub mod geometry;
pub mod gf2;
pub mod io;
pub mod pipeline;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
