use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use super::SemigroupError;

/// A set of naturals that is periodic from some point on.
///
/// Membership is `n ∈ exceptional` below `threshold` and
/// `n mod period ∈ residues` from `threshold` on. Values are always stored
/// canonically (minimal period first, then minimal threshold), so two sets are
/// equal exactly when their representations are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EventuallyPeriodicSet {
    threshold: u64,
    period: u64,
    residues: Vec<u64>,
    exceptional: Vec<u64>,
}

impl EventuallyPeriodicSet {
    pub fn new(
        threshold: u64,
        period: u64,
        residues: impl IntoIterator<Item = u64>,
        exceptional: impl IntoIterator<Item = u64>,
    ) -> Result<Self, SemigroupError> {
        if period == 0 {
            return Err(SemigroupError::ZeroPeriod);
        }
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        let exceptional: BTreeSet<u64> = exceptional.into_iter().collect();
        if let Some(&residue) = residues.iter().find(|&&r| r >= period) {
            return Err(SemigroupError::ResidueOutOfRange { residue, period });
        }
        if let Some(&element) = exceptional.iter().find(|&&e| e >= threshold) {
            return Err(SemigroupError::ExceptionalOutOfRange { element, threshold });
        }
        Ok(Self::canonical(
            threshold,
            period,
            residues.into_iter().collect(),
            exceptional.into_iter().collect(),
        ))
    }

    /// Tabulates a predicate that is known to be `period`-periodic from
    /// `threshold` on. Evaluates it on `[0, threshold + period)`.
    pub fn from_predicate(threshold: u64, period: u64, member: impl Fn(u64) -> bool) -> Self {
        assert!(period > 0, "period must be positive");
        let exceptional = (0..threshold).filter(|&n| member(n)).collect();
        let mut residues: Vec<u64> =
            (threshold..threshold + period).filter(|&n| member(n)).map(|n| n % period).collect();
        residues.sort_unstable();
        Self::canonical(threshold, period, residues, exceptional)
    }

    /// `{0}`.
    pub fn zero() -> Self {
        Self::canonical(1, 1, vec![], vec![0])
    }

    pub fn naturals() -> Self {
        Self::canonical(0, 1, vec![0], vec![])
    }

    /// `<m> = mN`; `<0> = {0}`.
    pub fn multiples(m: u64) -> Self {
        if m == 0 {
            return Self::zero();
        }
        Self::canonical(0, m, vec![0], vec![])
    }

    /// `S_m = {0, m, m+1, ...}`.
    pub fn tail(m: u64) -> Self {
        Self::canonical(m, 1, vec![0], if m > 0 { vec![0] } else { vec![] })
    }

    /// `S_m(a; n) = { x ∈ S_m : x ≡ a (mod n) }`.
    pub fn scaled_tail(m: u64, a: u64, n: u64) -> Self {
        assert!(n > 0, "modulus must be positive");
        let a = a % n;
        let exceptional = if a == 0 && m > 0 { vec![0] } else { vec![] };
        Self::canonical(m, n, vec![a], exceptional)
    }

    /// `S_m(n) = <n> ∩ S_m`.
    pub fn modular_tail(m: u64, n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        Self::scaled_tail(m, 0, n)
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn exceptional(&self) -> &[u64] {
        &self.exceptional
    }

    pub fn contains(&self, n: u64) -> bool {
        if n < self.threshold {
            self.exceptional.binary_search(&n).is_ok()
        } else {
            self.in_tail_pattern(n)
        }
    }

    fn in_tail_pattern(&self, n: u64) -> bool {
        self.residues.binary_search(&(n % self.period)).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.exceptional.is_empty() && self.residues.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    /// Members in `[0, n_max]`, ascending. Cost is proportional to the output.
    pub fn members_up_to(&self, n_max: u64) -> Vec<u64> {
        let mut out: Vec<u64> = self.exceptional.iter().copied().take_while(|&e| e <= n_max).collect();
        if self.residues.is_empty() || n_max < self.threshold {
            return out;
        }
        let mut base = self.threshold - self.threshold % self.period;
        while base <= n_max {
            for &r in &self.residues {
                let n = base + r;
                if n > n_max {
                    break;
                }
                if n >= self.threshold {
                    out.push(n);
                }
            }
            base += self.period;
        }
        out
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let threshold = self.threshold.max(other.threshold);
        let period = lcm(self.period, other.period);
        let residues = if self.lift_cost(period) <= other.lift_cost(period) {
            self.lifted_residues(period).filter(|&x| other.in_tail_pattern(x)).collect()
        } else {
            other.lifted_residues(period).filter(|&x| self.in_tail_pattern(x)).collect::<Vec<_>>()
        };
        let mut residues = residues;
        residues.sort_unstable();
        let exceptional = (0..threshold).filter(|&n| self.contains(n) && other.contains(n)).collect();
        Self::canonical(threshold, period, residues, exceptional)
    }

    pub fn union(&self, other: &Self) -> Self {
        let threshold = self.threshold.max(other.threshold);
        let period = lcm(self.period, other.period);
        let mut residues: Vec<u64> = self.lifted_residues(period).chain(other.lifted_residues(period)).collect();
        residues.sort_unstable();
        residues.dedup();
        let exceptional = (0..threshold).filter(|&n| self.contains(n) || other.contains(n)).collect();
        Self::canonical(threshold, period, residues, exceptional)
    }

    /// `k·X = { k x : x ∈ X }` for `k >= 1`.
    pub fn dilate(&self, k: u64) -> Self {
        assert!(k > 0, "dilation factor must be positive");
        Self::canonical(
            self.threshold * k,
            self.period * k,
            self.residues.iter().map(|r| r * k).collect(),
            self.exceptional.iter().map(|e| e * k).collect(),
        )
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        &self.intersect(other) == self
    }

    fn lift_cost(&self, period: u64) -> u64 {
        (self.residues.len() as u64).saturating_mul(period / self.period)
    }

    fn lifted_residues(&self, period: u64) -> impl Iterator<Item = u64> + '_ {
        let step = self.period;
        (0..period / step).flat_map(move |k| self.residues.iter().map(move |r| r + k * step))
    }

    fn canonical(threshold: u64, period: u64, residues: Vec<u64>, exceptional: Vec<u64>) -> Self {
        let mut set = EventuallyPeriodicSet { threshold, period, residues, exceptional };
        set.minimize_period();
        set.minimize_threshold();
        set
    }

    fn minimize_period(&mut self) {
        let full = self.period;
        for d in divisors(full) {
            if d == full {
                return;
            }
            let shifts_cleanly = self.residues.iter().all(|&r| self.residues.binary_search(&((r + d) % full)).is_ok());
            if shifts_cleanly {
                self.residues = self.residues.iter().copied().filter(|&r| r < d).collect();
                self.period = d;
                return;
            }
        }
    }

    fn minimize_threshold(&mut self) {
        while self.threshold > 0 {
            let n = self.threshold - 1;
            let member = self.exceptional.last() == Some(&n);
            if member != self.in_tail_pattern(n) {
                break;
            }
            if member {
                self.exceptional.pop();
            }
            self.threshold = n;
        }
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    (a / a.gcd(&b)).checked_mul(b).expect("period lcm overflows u64")
}

/// Divisors of `n >= 1`, ascending.
fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(set: &EventuallyPeriodicSet, n_max: u64) -> Vec<u64> {
        (0..=n_max).filter(|&n| set.contains(n)).collect()
    }

    fn arb_set() -> impl Strategy<Value = EventuallyPeriodicSet> {
        (0u64..12, 1u64..10).prop_flat_map(|(threshold, period)| {
            (
                Just(threshold),
                Just(period),
                proptest::collection::vec(any::<bool>(), period as usize),
                proptest::collection::vec(any::<bool>(), threshold as usize),
            )
                .prop_map(|(threshold, period, res, exc)| {
                    EventuallyPeriodicSet::new(
                        threshold,
                        period,
                        (0..period).filter(|&r| res[r as usize]),
                        (0..threshold).filter(|&e| exc[e as usize]),
                    )
                    .unwrap()
                })
        })
    }

    #[test]
    fn named_sets() {
        assert_eq!(brute(&EventuallyPeriodicSet::tail(4), 7), vec![0, 4, 5, 6, 7]);
        assert_eq!(EventuallyPeriodicSet::tail(1), EventuallyPeriodicSet::naturals());
        assert_eq!(EventuallyPeriodicSet::multiples(1), EventuallyPeriodicSet::naturals());
        assert_eq!(brute(&EventuallyPeriodicSet::scaled_tail(4, 1, 2), 10), vec![5, 7, 9]);
        assert_eq!(brute(&EventuallyPeriodicSet::modular_tail(5, 3), 12), vec![0, 6, 9, 12]);
        assert_eq!(brute(&EventuallyPeriodicSet::zero(), 5), vec![0]);
    }

    #[test]
    fn canonical_form_is_minimal() {
        let set = EventuallyPeriodicSet::new(10, 6, [0, 2, 4], [0, 2, 4, 6, 8]).unwrap();
        assert_eq!(set, EventuallyPeriodicSet::multiples(2));
        assert_eq!((set.threshold(), set.period(), set.residues()), (0, 2, &[0][..]));
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(EventuallyPeriodicSet::new(0, 0, [], []), Err(SemigroupError::ZeroPeriod));
        assert!(matches!(
            EventuallyPeriodicSet::new(2, 3, [3], []),
            Err(SemigroupError::ResidueOutOfRange { .. })
        ));
        assert!(matches!(
            EventuallyPeriodicSet::new(2, 3, [], [2]),
            Err(SemigroupError::ExceptionalOutOfRange { .. })
        ));
    }

    #[test]
    fn intersection_examples() {
        let evens = EventuallyPeriodicSet::multiples(2);
        let got = evens.intersect(&EventuallyPeriodicSet::tail(6));
        assert_eq!(brute(&got, 14), vec![0, 6, 8, 10, 12, 14]);
        let s = EventuallyPeriodicSet::tail(6);
        assert_eq!(s.intersect(&EventuallyPeriodicSet::naturals()), s);
        // S_a(g1) ∩ S_b(g2) = S_max(a,b)(lcm(g1, g2)), checked pointwise.
        let lhs = EventuallyPeriodicSet::modular_tail(3, 2).intersect(&EventuallyPeriodicSet::modular_tail(5, 3));
        let expected: Vec<u64> = (0..=100).filter(|&n| n == 0 || (n >= 5 && n % 6 == 0)).collect();
        assert_eq!(brute(&lhs, 100), expected);
        assert_eq!(lhs, EventuallyPeriodicSet::modular_tail(5, 6));
    }

    #[test]
    fn dilation() {
        let t = EventuallyPeriodicSet::tail(3);
        assert_eq!(brute(&t.dilate(2), 12), vec![0, 6, 8, 10, 12]);
    }

    proptest! {
        #[test]
        fn intersect_and_union_are_pointwise(a in arb_set(), b in arb_set()) {
            let bound = 4 * (a.period() * b.period() / a.period().gcd(&b.period())) + a.threshold() + b.threshold();
            let i = a.intersect(&b);
            let u = a.union(&b);
            for n in 0..=bound {
                prop_assert_eq!(i.contains(n), a.contains(n) && b.contains(n));
                prop_assert_eq!(u.contains(n), a.contains(n) || b.contains(n));
            }
        }

        #[test]
        fn equal_sets_are_structurally_equal(a in arb_set(), k in 1u64..4, extra in 0u64..10) {
            // Re-encode a with an inflated period and threshold.
            let period = a.period() * k;
            let threshold = a.threshold() + extra;
            let re = EventuallyPeriodicSet::from_predicate(threshold, period, |n| a.contains(n));
            prop_assert_eq!(&re, &a);
            let bound = 10 * period + threshold;
            prop_assert_eq!(brute(&re, bound), brute(&a, bound));
        }

        #[test]
        fn members_up_to_matches_contains(a in arb_set(), n_max in 0u64..80) {
            prop_assert_eq!(a.members_up_to(n_max), brute(&a, n_max));
        }
    }
}
