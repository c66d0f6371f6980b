//! Multisegments, ladder representations and the combinatorics of their
//! products in the Grothendieck ring of `GL_n` over a p-adic field.
//!
//! * [`segments`] — segments on ℤ, multisegments, supports, parsing.
//! * [`width`] — ladders, width, minimal ladder covers.
//! * [`ring`] — the Grothendieck ring in the standard and irreducible bases.
//! * [`jacquet`] — Jacquet modules of ladders and the geometric lemma.
//! * [`multiplicity`] — the multiplicity-one recursion and candidate search.
//! * [`kl`] — exact decompositions through Kazhdan–Lusztig polynomials
//!   (feature `kl-oracle`).
//! * [`cli`] — the `multiseg` command-line front end (feature `cli`).

pub mod error;
pub mod jacquet;
pub mod multiplicity;
pub mod ring;
pub mod segments;
pub mod width;

#[cfg(feature = "kl-oracle")]
pub mod kl;

#[cfg(feature = "cli")]
pub mod cli;

pub use error::{Error, Result};
pub use ring::{Basis, RingElement};
pub use segments::{Multisegment, Segment, SupportVector};
