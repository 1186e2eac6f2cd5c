//! Certified hamiltonicity verification for Cayley graphs of small composite
//! orders.
//!
//! The crate is organised as a stack. `groups` provides dense-table finite
//! groups, a built-in catalog of all isomorphism types for the orders the
//! verifier touches, and linear characters. `gensets` enumerates generating
//! sets up to automorphism and inverses. `graphs` and `hamilton` provide
//! Cayley graphs, certificate validation, and exact plus heuristic cycle
//! search. `voltage` carries the symbolic cyclotomic arithmetic used to rule
//! out all but finitely many primes at once. `specialcases` holds explicit
//! cycle constructions for quotient shapes the generic route cannot settle.
//! `pipeline` drives the sweep over orders kp, writes reports through
//! `report`, and `revalidate` re-checks every emitted certificate from raw
//! data without touching the search code.

pub mod cli;
pub mod gensets;
pub mod graphs;
pub mod groups;
pub mod hamilton;
pub mod pipeline;
pub mod report;
pub mod revalidate;
pub mod specialcases;
pub mod voltage;
