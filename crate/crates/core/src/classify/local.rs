use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{ExtValuation, Prime};
use crate::lucas::{rank_of_appearance, LucasParams, PrimeSplit, RankData};
use crate::semigroup::EventuallyPeriodicSet;

use super::{checked_period, ClassifyError, LocalCase, LocalResult, PqZeroCase, RegularCase, ShallowCase};

/// Closed form of `{ n : v_p(U_n(P, Q)) >= r }`.
pub fn classify_local(params: &LucasParams, prime: &Prime, r: i64) -> Result<LocalResult, ClassifyError> {
    if r <= 0 {
        return Ok(LocalResult::new(LocalCase::Unrestricted, EventuallyPeriodicSet::naturals()));
    }
    if params.p.is_zero() || params.q.is_zero() {
        let (case, set) = pq_zero(params, prime, r);
        return Ok(LocalResult::new(LocalCase::PqZero { case }, set));
    }
    let split = params.split_at(prime).expect("PQ != 0");
    if split.a == 0 || split.b == 0 {
        let (case, rank, generator) = regular(params, prime, r)?;
        return Ok(LocalResult::new(LocalCase::Regular { case, rank }, EventuallyPeriodicSet::multiples(generator)));
    }
    special(prime, r, split)
}

fn pq_zero(params: &LucasParams, prime: &Prime, r: i64) -> (PqZeroCase, EventuallyPeriodicSet) {
    let valuation = |x: &BigInt| prime.valuation(x).finite().expect("nonzero") as i64;
    match (params.p.is_zero(), params.q.is_zero()) {
        // U_n = P^{n-1}.
        (false, true) if !prime.divides(&params.p) => (PqZeroCase::QZeroUnitP, EventuallyPeriodicSet::zero()),
        (false, true) => {
            let m = Integer::div_ceil(&r, &valuation(&params.p)) + 1;
            (PqZeroCase::QZeroPDivisible, EventuallyPeriodicSet::tail(m as u64))
        }
        // U_n vanishes for even n and is ±Q^{(n-1)/2} for odd n.
        (true, false) if !prime.divides(&params.q) => (PqZeroCase::PZeroUnitQ, EventuallyPeriodicSet::multiples(2)),
        (true, false) => {
            let k = 2 * Integer::div_ceil(&r, &valuation(&params.q)) + 1;
            let set = EventuallyPeriodicSet::multiples(2).union(&EventuallyPeriodicSet::tail(k as u64));
            (PqZeroCase::PZeroQDivisible, set)
        }
        _ => (PqZeroCase::BothZero, EventuallyPeriodicSet::tail(2)),
    }
}

/// `(r - v)_+`.
fn excess(r: i64, v: ExtValuation) -> u32 {
    match v {
        ExtValuation::Infinity => 0,
        ExtValuation::Finite(v) => u32::try_from((r - v as i64).max(0)).expect("exponent fits in u32"),
    }
}

/// Generator `m` of the cyclic local semigroup `<m>` at a regular prime
/// (`m = 0` for `{0}`).
fn regular(
    params: &LucasParams,
    prime: &Prime,
    r: i64,
) -> Result<(RegularCase, Option<RankData>, u64), ClassifyError> {
    if prime.divides(&params.q) {
        return Ok((RegularCase::PrimeDividesQ, None, 0));
    }
    if !prime.is_two() {
        let rank = rank_of_appearance(params, prime).expect("p does not divide Q");
        let generator = prime.pow(excess(r, rank.nu)) * rank.rho;
        return Ok((RegularCase::OddPrime, Some(rank), checked_period(&generator)?));
    }
    let two_power = |e: u32, factor: u64| checked_period(&(BigInt::from(factor) << e));
    if params.p.is_even() {
        let e = 1 + excess(r, prime.valuation(&params.p));
        return Ok((RegularCase::TwoDividesP, None, two_power(e, 1)?));
    }
    if params.q.mod_floor(&BigInt::from(4)) == BigInt::from(1) {
        let e = excess(r, prime.valuation(&params.u(3)));
        return Ok((RegularCase::QOneModFour, None, two_power(e, 3)?));
    }
    if r == 1 {
        return Ok((RegularCase::QThreeModFourFirst, None, 3));
    }
    let e = excess(r, prime.valuation(&params.u(6)));
    Ok((RegularCase::QThreeModFourHigher, None, two_power(e, 6)?))
}

fn special(prime: &Prime, r: i64, split: PrimeSplit) -> Result<LocalResult, ClassifyError> {
    let PrimeSplit { a, b, p_unit, q_unit } = split;
    let (ai, bi) = (a as i64, b as i64);
    let ceil = |x: i64, y: i64| Integer::div_ceil(&x, &y);

    if b > 2 * a {
        let set = EventuallyPeriodicSet::tail(ceil(r + ai, ai) as u64);
        return Ok(LocalResult::new(LocalCase::SpecialSteep { a, b }, set));
    }

    let units = LucasParams { p: p_unit, q: q_unit };
    if b == 2 * a {
        // Union over i of S_i ∩ L(P', Q', p^{-(r + a - a i)}); the last term is S_c.
        let c = ceil(r + ai, ai);
        let mut set = EventuallyPeriodicSet::zero();
        for i in 0..=c {
            let piece = classify_local(&units, prime, r + ai - ai * i)?.set;
            set = set.union(&piece.intersect(&EventuallyPeriodicSet::tail(i as u64)));
        }
        let unit_rank = rank_of_appearance(&units, prime).expect("p does not divide Q'");
        return Ok(LocalResult::new(LocalCase::SpecialBalanced { a, b, unit_rank }, set));
    }

    // b < 2a: even members are 2T, odd members are those >= 2 ceil(r/b) + 1.
    let (case, lambda) = if prime.to_u64().is_some_and(|p| p <= 3) && 2 * a == b + 1 {
        let diff = &units.p * &units.p - &units.q;
        let lambda = prime.valuation(&diff);
        let case = if lambda.is_infinite() { ShallowCase::DegenerateUnits } else { ShallowCase::SmallPrimeCorrection };
        (case, lambda)
    } else {
        (ShallowCase::Generic, ExtValuation::Finite(0))
    };
    let k_bound = r - ai + bi;
    let t = ceil(k_bound, bi).max(0);
    let odd_start = 2 * ceil(r, bi) + 1;
    let p_small = prime.to_u64();
    let in_t = |k: i64| -> bool {
        if k == 0 || k >= t {
            return true;
        }
        let Some(p) = p_small.filter(|&p| (k as u64).is_multiple_of(p)) else {
            return false;
        };
        match lambda {
            ExtValuation::Infinity => true,
            ExtValuation::Finite(lam) => {
                let mut v = 0i64;
                let mut kk = k as u64;
                while kk.is_multiple_of(p) {
                    kk /= p;
                    v += 1;
                }
                v >= k_bound - lam as i64 - bi * k
            }
        }
    };
    let threshold = (2 * t).max(odd_start) as u64;
    let set = EventuallyPeriodicSet::from_predicate(threshold, 1, |n| {
        if n % 2 == 1 {
            n as i64 >= odd_start
        } else {
            in_t((n / 2) as i64)
        }
    });
    Ok(LocalResult::new(LocalCase::SpecialShallow { a, b, case, lambda }, set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::oracle_local;
    use crate::semigroup::SemigroupDescriptor;
    use proptest::prelude::*;

    fn local(p: i64, q: i64, prime: i64, r: i64) -> LocalResult {
        classify_local(&LucasParams::new(p, q), &Prime::new(prime).unwrap(), r).unwrap()
    }

    fn gens(g: &[u64]) -> SemigroupDescriptor {
        SemigroupDescriptor::from_generators(g).unwrap()
    }

    fn agrees_with_oracle(p: i64, q: i64, prime: i64, r: i64) -> Result<(), String> {
        let res = local(p, q, prime, r);
        let n_max = (4 * (res.set.period() + res.set.threshold())).max(60);
        let oracle = oracle_local(&LucasParams::new(p, q), &Prime::new(prime).unwrap(), r, n_max).unwrap();
        let closed = res.set.members_up_to(n_max);
        if oracle == closed {
            Ok(())
        } else {
            Err(format!("({p},{q}) p={prime} r={r} [{}]: closed {closed:?} oracle {oracle:?}", res.case.label()))
        }
    }

    #[test]
    fn examples() {
        assert_eq!(local(18, 8, 3, 1).descriptor, gens(&[2]));
        let steep = local(18, 8, 2, 5);
        assert_eq!(steep.descriptor, SemigroupDescriptor::from_periodic_set(&EventuallyPeriodicSet::tail(6)).unwrap());
        assert_eq!(steep.case, LocalCase::SpecialSteep { a: 1, b: 3 });
        assert_eq!(local(3, 5, 3, 1).descriptor, gens(&[2]));
        assert_eq!(local(2, 0, 2, 3).set, EventuallyPeriodicSet::tail(4));
        assert_eq!(local(0, 2, 2, 2).descriptor, gens(&[2, 5]));
        assert_eq!(local(0, 2, 2, 2).case.label(), "pq-zero/p-zero-q-divisible");
        assert_eq!(local(5, 3, 7, 0).case, LocalCase::Unrestricted);
        assert_eq!(local(5, 3, 7, -4).descriptor, SemigroupDescriptor::All);
    }

    #[test]
    fn examples_match_oracle() {
        for (p, q, prime, r) in [(18, 8, 3, 1), (18, 8, 2, 5), (3, 5, 3, 1), (2, 0, 2, 3), (0, 2, 2, 2)] {
            agrees_with_oracle(p, q, prime, r).unwrap();
        }
    }

    #[test]
    fn one_instance_per_leaf() {
        // (P, Q, p, r) hitting each closed form, checked against the oracle.
        let cases = [
            ((3, 0, 2, 2), "pq-zero/q-zero-unit-p"),
            ((12, 0, 2, 5), "pq-zero/q-zero-p-divisible"),
            ((0, 5, 3, 2), "pq-zero/p-zero-unit-q"),
            ((0, 9, 3, 3), "pq-zero/p-zero-q-divisible"),
            ((0, 0, 5, 1), "pq-zero/both-zero"),
            ((1, 5, 5, 1), "regular/prime-divides-q"),
            ((1, 2, 7, 2), "regular/odd-prime"),
            ((2, 3, 2, 3), "regular/two-divides-p"),
            ((3, 5, 2, 3), "regular/q-one-mod-four"),
            ((1, 3, 2, 1), "regular/q-three-mod-four-first"),
            ((1, 3, 2, 4), "regular/q-three-mod-four-higher"),
            ((2, 8, 2, 3), "special/steep"),
            ((6, 9, 3, 2), "special/balanced"),
            ((2, 2, 2, 3), "special/shallow-degenerate-units"),
            ((2, 6, 2, 3), "special/shallow-small-prime-correction"),
            ((25, 5, 5, 3), "special/shallow-generic"),
        ];
        let mut seen = Vec::new();
        for ((p, q, prime, r), label) in cases {
            assert_eq!(local(p, q, prime, r).case.label(), label, "({p},{q}) p={prime} r={r}");
            agrees_with_oracle(p, q, prime, r).unwrap();
            seen.push(label);
        }
        assert_eq!(seen, crate::classify::ALL_LEAVES.to_vec());
    }

    #[test]
    fn small_grid_matches_oracle() {
        for p in -6..=6 {
            for q in -6..=6 {
                for prime in [2, 3, 5] {
                    for r in 1..=4 {
                        agrees_with_oracle(p, q, prime, r).unwrap();
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn special_results_are_numerical(pu in -9i64..9, qu in -9i64..9, a in 1u32..4, b in 1u32..7, pi in 0usize..3, r in 1i64..8) {
            let prime = [2i64, 3, 5][pi];
            prop_assume!(pu % prime != 0 && qu % prime != 0);
            let (p, q) = (pu * prime.pow(a), qu * prime.pow(b));
            let res = local(p, q, prime, r);
            prop_assert!(res.case.is_special());
            let conductor = res.descriptor.conductor();
            prop_assert!(conductor.is_some_and(|c| c <= 2 * r as u64), "{:?}", res.descriptor);
            let small = res.descriptor.small_elements().unwrap();
            let g = small.iter().fold(0u64, |acc, &x| num_integer::gcd(acc, x));
            prop_assert!(small.is_empty() || g >= 2);
            if let LocalCase::SpecialShallow { b, .. } = res.case {
                let f = res.descriptor.frobenius().unwrap() as i64;
                let bound = 2 * Integer::div_ceil(&r, &(b as i64));
                prop_assert!(f == bound || f == bound - 1, "Frobenius {} vs {}", f, bound);
            }
            prop_assert!(agrees_with_oracle(p, q, prime, r).is_ok());
        }

        #[test]
        fn consecutive_members_force_a_tail(p in -15i64..15, q in -15i64..15, pi in 0usize..6, r in 1i64..6) {
            let res = local(p, q, [2, 3, 5, 7, 11, 13][pi], r);
            let n_max = 2 * (res.set.threshold() + res.set.period()) + 40;
            if let Some(n) = (0..n_max).find(|&n| res.set.contains(n) && res.set.contains(n + 1)) {
                prop_assert!((n..n + 200).all(|k| res.set.contains(k)));
            }
        }
    }
}
