//! Local and global Lucas semigroups.
//!
//! The local semigroup `{ n : v_p(U_n) >= r }` is given in closed form by a
//! case split on `(P, Q, p)`: one of `P, Q` vanishes, `p` is regular (does not
//! divide both), or `p` is special (divides both). The global semigroup
//! `L(P, Q, R) = { n : U_n R ∈ ℤ }` is the intersection of the local ones over
//! the primes of the denominator of `R`.

mod global;
mod local;
mod oracle;
mod verdict;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, ExtValuation};
use crate::lucas::RankData;
use crate::semigroup::{EventuallyPeriodicSet, SemigroupDescriptor};

pub use global::{classify_global, GlobalResult, LocalFactor};
pub use local::classify_local;
pub use oracle::{oracle_global, oracle_local};
pub use verdict::{realizability_verdict, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("period {0} does not fit in 64 bits")]
    PeriodOverflow(String),
}

/// Subcases when `PQ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PqZeroCase {
    /// `Q = 0`, `p ∤ P`.
    QZeroUnitP,
    /// `Q = 0`, `p | P`.
    QZeroPDivisible,
    /// `P = 0`, `p ∤ Q`.
    PZeroUnitQ,
    /// `P = 0`, `p | Q`.
    PZeroQDivisible,
    BothZero,
}

/// Subcases for a regular prime (`PQ != 0`, `p ∤ gcd(P, Q)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularCase {
    PrimeDividesQ,
    OddPrime,
    TwoDividesP,
    /// `p = 2`, `P, Q` odd, `Q ≡ 1 (mod 4)`.
    QOneModFour,
    /// `p = 2`, `P, Q` odd, `Q ≡ 3 (mod 4)`, `r = 1`.
    QThreeModFourFirst,
    /// `p = 2`, `P, Q` odd, `Q ≡ 3 (mod 4)`, `r >= 2`.
    QThreeModFourHigher,
}

/// Subcases for a special prime with `b < 2a`, by the correction term
/// `lambda = v_p(P'^2 - Q')` that enters for `p <= 3` and `2a = b + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShallowCase {
    /// `p <= 3`, `2a = b + 1`, `P'^2 = Q'`: lambda is infinite.
    DegenerateUnits,
    /// `p <= 3`, `2a = b + 1`, `P'^2 != Q'`.
    SmallPrimeCorrection,
    /// No correction (lambda = 0).
    Generic,
}

/// Which closed form produced a local semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum LocalCase {
    /// `r <= 0`: every `n` qualifies.
    Unrestricted,
    PqZero { case: PqZeroCase },
    Regular { case: RegularCase, rank: Option<RankData> },
    /// `p | gcd(P, Q)` with `b > 2a`.
    SpecialSteep { a: u64, b: u64 },
    /// `p | gcd(P, Q)` with `b = 2a`; `unit_rank` is the rank data of `p` in
    /// `U_n(P', Q')`.
    SpecialBalanced { a: u64, b: u64, unit_rank: RankData },
    /// `p | gcd(P, Q)` with `b < 2a`.
    SpecialShallow { a: u64, b: u64, case: ShallowCase, lambda: ExtValuation },
}

/// Labels of the sixteen closed-form leaves, in case-split order.
pub const ALL_LEAVES: [&str; 16] = [
    "pq-zero/q-zero-unit-p",
    "pq-zero/q-zero-p-divisible",
    "pq-zero/p-zero-unit-q",
    "pq-zero/p-zero-q-divisible",
    "pq-zero/both-zero",
    "regular/prime-divides-q",
    "regular/odd-prime",
    "regular/two-divides-p",
    "regular/q-one-mod-four",
    "regular/q-three-mod-four-first",
    "regular/q-three-mod-four-higher",
    "special/steep",
    "special/balanced",
    "special/shallow-degenerate-units",
    "special/shallow-small-prime-correction",
    "special/shallow-generic",
];

impl LocalCase {
    /// Stable `family/subcase` name. `Unrestricted` is `"unrestricted"`;
    /// every other value is one of [`ALL_LEAVES`].
    pub fn label(&self) -> &'static str {
        let index = match self {
            LocalCase::Unrestricted => return "unrestricted",
            LocalCase::PqZero { case } => *case as usize,
            LocalCase::Regular { case, .. } => 5 + *case as usize,
            LocalCase::SpecialSteep { .. } => 11,
            LocalCase::SpecialBalanced { .. } => 12,
            LocalCase::SpecialShallow { case, .. } => 13 + *case as usize,
        };
        ALL_LEAVES[index]
    }

    pub fn is_special(&self) -> bool {
        matches!(
            self,
            LocalCase::SpecialSteep { .. } | LocalCase::SpecialBalanced { .. } | LocalCase::SpecialShallow { .. }
        )
    }
}

/// A local semigroup `{ n : v_p(U_n) >= r }` with the case that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalResult {
    pub case: LocalCase,
    pub set: EventuallyPeriodicSet,
    pub descriptor: SemigroupDescriptor,
}

impl LocalResult {
    fn new(case: LocalCase, set: EventuallyPeriodicSet) -> LocalResult {
        let descriptor = SemigroupDescriptor::from_periodic_set(&set)
            .unwrap_or_else(|e| panic!("closed form for {} is not a semigroup: {e}", case.label()));
        LocalResult { case, set, descriptor }
    }
}

fn checked_period(base: &BigInt) -> Result<u64, ClassifyError> {
    u64::try_from(base).map_err(|_| ClassifyError::PeriodOverflow(base.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn leaf_labels_are_distinct() {
        let set: HashSet<_> = ALL_LEAVES.iter().collect();
        assert_eq!(set.len(), ALL_LEAVES.len());
        assert_eq!(LocalCase::SpecialSteep { a: 1, b: 3 }.label(), "special/steep");
        assert_eq!(
            LocalCase::Regular { case: RegularCase::QThreeModFourHigher, rank: None }.label(),
            "regular/q-three-mod-four-higher"
        );
        assert_eq!(
            LocalCase::SpecialShallow { a: 1, b: 1, case: ShallowCase::Generic, lambda: ExtValuation::Finite(0) }
                .label(),
            "special/shallow-generic"
        );
    }
}
