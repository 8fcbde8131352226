//! Prime spectra of finite and finitely presented commutative monoids.
//!
//! `Spec(M)` is computed three independent ways:
//!
//! * enumerating subsets that are prime ideals ([`spectrum::primes_bruteforce`]),
//! * enumerating homomorphisms `M -> I` into the two-element monoid
//!   `I = {1, 0}` and taking the fibre over `0` ([`spectrum::homs_to_i`]),
//! * reflecting `M` to its semilattice `M^sl`, whose primes are exactly the
//!   complements of principal down-sets, and pulling back along the quotient
//!   map ([`spectrum::spec_monoid`]).
//!
//! Finitely presented monoids, including infinite ones such as `N = <t>`,
//! go through the third route via [`presentation::sl_of_presentation`].
//!
//! Supporting modules cover semilattice order theory and adjoints
//! ([`semilattice`]), congruences ([`congruence`]), finite topologies
//! ([`topology`]), and colimits/inverse limits at finite scale ([`limits`]).

pub mod congruence;
pub mod corpus;
pub mod error;
pub mod hasse;
pub mod limits;
pub mod monoid;
pub mod par;
pub mod presentation;
pub mod semilattice;
pub mod set;
pub mod spectrum;
pub mod table_format;
pub mod topology;
pub mod verify;

pub use error::{Error, Result};
pub use monoid::{FiniteMonoid, MonoidMap};
pub use par::Execution;
pub use presentation::Presentation;
pub use semilattice::{JoinSemilattice, MonotoneMap};
pub use set::ElementSet;
pub use spectrum::{PrimeIdeal, Spectrum};

/// Size limits for exhaustive computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest monoid whose subsets or maps to `I` are enumerated.
    pub subset_elements: usize,
    /// Largest generator count accepted for presentations.
    pub generators: usize,
    /// Largest semilattice materialized as a table.
    pub sl_elements: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { subset_elements: 16, generators: 16, sl_elements: 4096 }
    }
}

impl Caps {
    /// The same cap applied to both enumeration size and generator count.
    pub fn uniform(n: usize) -> Self {
        Self { subset_elements: n, generators: n, ..Self::default() }
    }
}
