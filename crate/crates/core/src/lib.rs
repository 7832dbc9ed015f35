//! Exact invariants of crossed products `C(X) ⋊ G` for a finite group `G`
//! acting simplicially on a finite simplicial complex `X`.
//!
//! The crate is organised bottom-up:
//!
//! * [`grouptheory`]: multiplication-table groups, conjugacy data, cyclotomic
//!   numbers, character tables, restriction multiplicities;
//! * [`gcomplex`]: simplicial complexes with group actions, orbits,
//!   stabilizers, fixed subcomplexes, quotients and isotropy strata;
//! * [`homology`]: integral and rational homology, Euler characteristics,
//!   rational K-ranks, invariant cohomology;
//! * [`crossed`]: fiber block decompositions and the specialization poset
//!   of primitive ideals;
//! * [`ktheory`]: the conjugacy-class localization of rational equivariant
//!   K-theory, equivariant Euler characteristics and integral K-groups for
//!   isolated singular orbits;
//! * [`report`]: command reports shared by the command-line tool and the
//!   browser demo.

pub mod crossed;
pub mod error;
pub mod gcomplex;
pub mod grouptheory;
pub mod homology;
pub mod ktheory;
pub mod report;

pub use error::{Error, Result};
