use num_bigint::BigInt;
use num_traits::One;
use serde_json::json;

use crate::arith::Rational;
use crate::classify::{classify_global, oracle_global};
use crate::lucas::LucasParams;
use crate::report::Report;
use crate::semigroup::{EventuallyPeriodicSet, SemigroupDescriptor};

/// Oracle bound for the three semigroups.
pub const NONLOCAL_ORACLE_BOUND: u64 = 200;

/// `L(18, 8, 1/96) = L(18, 8, 3^-1) ∩ L(18, 8, 2^-5) = <6, 8, 10>`, which is
/// neither cyclic, nor numerical, nor one of the `PQ = 0` shapes, so it is not
/// a local Lucas semigroup.
pub fn nonlocal() -> Report {
    let mut report = Report::new("nonlocal");
    let params = LucasParams::new(18, 8);
    let gens = |g: &[u64]| SemigroupDescriptor::from_generators(g).expect("nonempty");
    let tail = |k: u64| SemigroupDescriptor::from_periodic_set(&EventuallyPeriodicSet::tail(k)).expect("semigroup");
    let cases = [("1/3", 3, gens(&[2])), ("1/32", 32, tail(6)), ("1/96", 96, gens(&[6, 8, 10]))];
    let mut sets = Vec::new();
    for (label, d, expected) in cases {
        let r = Rational::new(BigInt::one(), BigInt::from(d));
        let Ok(global) = classify_global(&params, &r) else {
            report.check(format!("L(18,8,{label})"), false, "classification failed");
            continue;
        };
        report.check(
            format!("L(18,8,{label}) = {expected}"),
            global.descriptor == expected,
            global.descriptor.to_json(),
        );
        let oracle = oracle_global(&params, &r, NONLOCAL_ORACLE_BOUND).unwrap_or_default();
        report.check(
            format!("L(18,8,{label}) oracle to {NONLOCAL_ORACLE_BOUND}"),
            oracle == global.set.members_up_to(NONLOCAL_ORACLE_BOUND),
            json!(oracle.len()),
        );
        sets.push(global.set);
    }
    if let [three, two, both] = &sets[..] {
        report.check("intersection of the local semigroups", &three.intersect(two) == both, json!(null));
        let s = SemigroupDescriptor::from_periodic_set(both).expect("semigroup");
        report.check("not cyclic", !s.is_cyclic(), json!(s.minimal_generators()));
        report.check("not numerical", !s.is_numerical(), json!({"gcd": s.gcd()}));
        let pq_zero_shape = match &s {
            SemigroupDescriptor::Zero => true,
            SemigroupDescriptor::Scaled { d: 1, core } if core.members() == [0] => true,
            _ => {
                let g = s.minimal_generators();
                g == [2] || (g.len() == 2 && g[0] == 2 && g[1] % 2 == 1)
            }
        };
        report.check("not a PQ = 0 shape", !pq_zero_shape, json!(s.to_string()));
        report.result = s.to_json();
    }
    report
}
