//! Multigraded free resolutions of monomial ideals, initial modules of their
//! syzygy modules under position-over-term orders, and Stanley depth.
//!
//! The crate is organised bottom-up:
//!
//! - [`monomial`], [`ideal`]: exponent vectors, monomials, monomial ideals.
//! - [`module`]: free multigraded modules with ordered bases and exact term sums.
//! - [`complexes`]: Taylor, Koszul, mapping-cone and Eliahou–Kervaire complexes,
//!   minimization and per-degree exactness certificates.
//! - [`groebner`]: Buchberger's algorithm over free modules, used as an oracle for
//!   initial modules.
//! - [`syzygy`]: closed forms and structural checks for initial modules of syzygies.
//! - [`stanley`]: characteristic posets, interval partitions and exact Stanley depth.
//! - [`blocks`]: circular block structures and the constructive squarefree bound.
//! - [`instances`], [`verify`]: seeded instance generation and the verification
//!   harness behind the `verify` command.


pub mod blocks;
pub mod complexes;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod instances;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod stanley;
pub mod syzygy;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, Q};
pub use ideal::MonomialIdeal;
pub use monomial::{Monomial, MonomialOrder, Multidegree};
