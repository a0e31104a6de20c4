//! Exact q-series engine for counting involution-invariant curves on
//! Calabi-Yau threefolds.
//!
//! The crate computes the refined curve counts `n_{g,h}(d; type)` of a
//! local Abelian or Nikulin surface from lattice theta functions and a
//! Jacobi-form quotient, entirely in exact arithmetic. It provides:
//!
//! - a windowed Laurent-series ring over big integers and rationals
//!   ([`qseries`], [`laurent`], [`window`]);
//! - the `psi`-basis machinery for symmetric Laurent polynomials and the
//!   multi-cover substitutions ([`psi`]);
//! - constructors for the named modular forms ([`forms`]);
//! - glue-class enumeration and theta series for the Kummer and Nikulin
//!   lattices, with a brute-force oracle ([`lattice`]);
//! - extraction of the KKV series and the refined invariant tables
//!   ([`invariants`]), generic multi-cover inversion ([`cover`]);
//! - independent reconstructions of three closed-form examples
//!   ([`worked`]) and verification suites over all of the above
//!   ([`verify`]).
//!
//! The `gvcount` binary exposes the tables and verification suites on the
//! command line; the `examples/` directory has one runnable example per
//! capability.

pub mod cover;
pub mod error;
pub mod fixtures;
pub mod forms;
pub mod invariants;
pub mod lattice;
pub mod laurent;
pub mod output;
pub mod psi;
pub mod qseries;
pub mod verify;
pub mod window;
pub mod worked;

pub use error::{Error, Result};
pub use laurent::{Coeff, HalfInt, Laurent2};
pub use qseries::QSeries;
pub use window::{WPoly, WindowSeries};
