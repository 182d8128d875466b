//! Galois rings, projective Hjelmslev planes over finite local rings, conics
//! and arcs in those planes, and complete sets of mutually unbiased bases.
//!
//! The pieces fit together as follows:
//!
//! * [`ring`] builds GF(q), GR(p², r) and GF(q) + eGF(q) with table-driven
//!   arithmetic;
//! * [`plane`] enumerates PH(2, R) with its neighbour classes and the
//!   epimorphism onto PG(2, q), and [`classical`] specializes it to fields;
//! * [`conic`] and [`arc`] study point sets inside those planes;
//! * [`mub`] constructs and verifies q + 1 mutually unbiased bases of ℂ^q;
//! * [`correspondence`] certifies that the bases of a complete MUB set match
//!   the neighbour classes of a proper conic, vector for point;
//! * [`export`] and [`cli`] serialize everything.

pub mod arc;
pub mod classical;
pub mod cli;
pub mod conic;
pub mod correspondence;
pub mod cyclotomic;
pub mod export;
pub mod mub;
pub mod plane;
pub mod ring;

pub use arc::{is_arc, max_arc_search, ArcSearchOptions, ArcSearchResult};
pub use classical::{enumerate_classical, is_nondegenerate_conic_image};
pub use conic::{Conic, ConicAnalysis, ProperVerdict};
pub use correspondence::{certify, CorrespondenceCertificate};
pub use mub::{build_mub_set, Basis, MubSet};
pub use plane::{ElementKind, NeighbourClass, PlaneModel, ProjLine, ProjPoint};
pub use ring::{make_ring, Elem, Ring, RingBuilder, RingDescriptor, RingElement, RingKind};
