//! Extended causal justifications for labelled logic programs.
//!
//! The crate evaluates the causal well-founded model of a labelled normal
//! program. Every atom receives a causal value: a sum of justification
//! graphs whose vertices are rule labels, possibly negated once (inhibitors)
//! or twice (enablers). The values can be projected onto causal-graph
//! stable-model justifications ([`cg`]) and onto Boolean why-not provenance
//! ([`wnp`]).
//!
//! ```
//! use ecj::program::parse_program;
//! use ecj::wfs::{causal_wfm, query, QLiteral};
//!
//! let p = parse_program("r1: p :- d, not a.\nr2: a :- not h.\nd.\nh.").unwrap();
//! let w = causal_wfm(&p).unwrap();
//! let v = query(&w, &QLiteral::parse("not a").unwrap()).unwrap();
//! assert_eq!(v.to_string(), "~~h + ~r2");
//! ```

pub mod algebra;
pub mod cg;
pub mod cli;
pub mod error;
pub mod program;
pub mod wfs;
pub mod wnp;

pub use error::{Error, Result};
