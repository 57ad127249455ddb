//! Lucas semigroups and exponent semigroups of rational matrices.
//!
//! A Lucas semigroup is `L(P, Q, R) = { n : U_n(P, Q) * R is an integer }`, where
//! `U_n` is the fundamental Lucas sequence. Every such set is an additive
//! submonoid of the naturals, and the sets that arise this way are exactly the
//! exponent semigroups `{ n : A^n has integer entries }` of 2x2 rational
//! matrices `A`.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: exact integers and rationals, p-adic valuations, primality and
//!   factorization.
//! * [`lucas`]: the sequences `U_n`, `V_n`, their modular streams, and the rank
//!   of appearance of a prime.
//! * [`semigroup`]: eventually periodic sets and canonical descriptors of
//!   submonoids of the naturals (Frobenius number, small elements, generators).
//! * [`classify`]: closed-form local and global Lucas semigroups, the
//!   brute-force oracle they are checked against, and realizability verdicts.
//! * [`matrix`]: exact rational matrices, brute-force and exact exponent
//!   semigroups, and witness construction.
//! * [`pipeline`]: the table reproductions, the counterexample and nonlocal
//!   pipelines, and the oracle sweep, each producing a [`report::Report`].

pub mod arith;
pub mod classify;
pub mod lucas;
pub mod matrix;
pub mod pipeline;
pub mod report;
pub mod semigroup;
pub mod tables;

pub use arith::{factorize, is_prime, ArithError, ExtValuation, Factorization, Prime, Rational, SignedValuation};
pub use classify::{
    classify_global, classify_local, oracle_global, oracle_local, realizability_verdict, GlobalResult, LocalCase,
    LocalResult, Verdict,
};
pub use lucas::{lucas_u, lucas_u_mod, lucas_v, rank_of_appearance, LucasParams, RankData};
pub use matrix::{
    exponent_semigroup_2x2_exact, exponent_semigroup_bruteforce, realize, ExpSemigroupSample, RationalMatrix,
};
pub use semigroup::{EventuallyPeriodicSet, NumericalCore, SemigroupDescriptor, SemigroupError};
