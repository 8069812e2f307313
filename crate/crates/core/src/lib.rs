//! Salvetti complexes of Artin groups.
//!
//! Builds the algebraic (co)chain complex of an Artin group from its Coxeter
//! graph and a local system of coefficients, computes (co)homology over exact
//! coefficient rings, and runs the spectral sequence of the filtration by
//! tails of the vertex order.
//!
//! ```
//! use salvetti::coefficients::{LaurentRing, Rationals, Ring};
//! use salvetti::complex::build_cochain_complex;
//! use salvetti::coxeter::CoxeterGraph;
//! use salvetti::homology::compute_homology;
//! use salvetti::localsystems::LocalSystem;
//!
//! let graph = CoxeterGraph::type_a(2);
//! let ring = LaurentRing::new(Rationals);
//! let unit = ring.neg(&ring.variable());
//! let sys = LocalSystem::uniform(&graph, ring, unit).unwrap();
//! let cx = build_cochain_complex(&graph, &sys, 10_000).unwrap();
//! let h = compute_homology(&cx).unwrap();
//! assert_eq!(h.degree(1).unwrap().free_rank, 0);
//! assert_eq!(h.degree(1).unwrap().torsion.len(), 1);
//! ```

pub mod coefficients;
pub mod complex;
pub mod coxeter;
pub mod dynamic;
pub mod homology;
pub mod job;
pub mod localsystems;
pub mod spectral;

use thiserror::Error;

/// Default cap on the number of group elements enumerated in one call.
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid Coxeter graph: {0}")]
    InvalidGraph(String),
    #[error("parabolic subgroup on {{{0}}} is infinite")]
    InfiniteParabolic(String),
    #[error("enumeration of {{{subset}}} needs {needed} elements, cap is {cap}")]
    CapExceeded {
        subset: String,
        needed: u128,
        cap: usize,
    },
    #[error("invalid local system: {0}")]
    InvalidSystem(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 1,
            Error::UnsupportedRing(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
