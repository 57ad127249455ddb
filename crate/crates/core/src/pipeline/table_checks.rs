use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

use crate::arith::{is_prime, Prime};
use crate::classify::{classify_local, oracle_local};
use crate::lucas::LucasParams;
use crate::matrix::{exponent_semigroup_2x2_exact, exponent_semigroup_bruteforce};
use crate::report::Report;
use crate::semigroup::SemigroupDescriptor;
use crate::tables::{
    MATRIX_FAMILIES, PRIMITIVE_DIVISOR_ROWS, PRIMITIVE_P, PRIMITIVE_Q, PRIMITIVE_R, CYCLIC_ROWS,
};

/// Brute-force bound for family parameter `k` is `4k` plus this.
pub const TABLE_ONE_EXTRA_BOUND: u64 = 20;

fn cyclic(m: u64) -> SemigroupDescriptor {
    SemigroupDescriptor::from_generators(&[m]).expect("nonempty")
}

/// Each matrix family against its stated semigroup, by brute force to
/// `4k + 20` and, for 2 x 2 members, by the exact method.
pub fn table_one() -> Report {
    let mut report = Report::new("tables 1");
    let mut rows = Vec::new();
    for family in MATRIX_FAMILIES {
        for k in family.parameters() {
            let a = family.matrix(k.unwrap_or(0));
            let expected = family.semigroup(k.unwrap_or(0));
            let bound = 4 * k.unwrap_or(0) + TABLE_ONE_EXTRA_BOUND;
            let sample = exponent_semigroup_bruteforce(&a, bound);
            let name = match k {
                Some(k) => format!("{} k={k}", family.label()),
                None => family.label().to_owned(),
            };
            report.check(
                format!("{name} brute force to {bound}"),
                sample.agrees_with(&expected),
                json!({"matrix": a, "members": sample.members}),
            );
            if a.dim() == 2 {
                let exact = exponent_semigroup_2x2_exact(&a);
                let ok = exact.as_ref().is_ok_and(|e| e == &expected);
                let detail = exact.map(|e| e.to_json()).unwrap_or_else(|e| json!(e.to_string()));
                report.check(format!("{name} exact"), ok, detail);
            }
            rows.push(json!({"family": family.label(), "k": k, "semigroup": expected.to_string()}));
        }
    }
    report.result = json!({"rows": rows});
    report
}

/// Every `(m, P, Q, p, r)` row: the closed form is `<m>` and the oracle
/// agrees up to `20m`.
pub fn table_two() -> Report {
    let mut report = Report::new("tables 2");
    for row in CYCLIC_ROWS {
        let params = LucasParams::new(row.p, row.q);
        let prime = Prime::new(row.prime).expect("table prime");
        let name = format!("m={} (P,Q)=({},{}) p={} r={}", row.m, row.p, row.q, row.prime, row.r);
        match classify_local(&params, &prime, row.r) {
            Ok(local) => {
                report.check(
                    format!("{name} closed form"),
                    local.descriptor == cyclic(row.m),
                    json!({"case": local.case.label(), "semigroup": local.descriptor.to_string()}),
                );
                let n_max = 20 * row.m;
                let oracle = oracle_local(&params, &prime, row.r, n_max).unwrap_or_default();
                let expected: Vec<u64> = (0..=n_max).step_by(row.m as usize).collect();
                report.check(format!("{name} oracle to {n_max}"), oracle == expected, json!({"members": oracle}));
            }
            Err(e) => {
                report.check(format!("{name} closed form"), false, e.to_string());
            }
        }
    }
    report.result = json!({"rows": CYCLIC_ROWS.len()});
    report
}

/// Every `(m, U_m, primes)` row for `(P, Q) = (1, 2)`: the printed `U_m`,
/// primality, primitivity (no earlier `U_k` and not `D = -7`), and the local
/// semigroup `<m>`.
pub fn table_three() -> Report {
    let mut report = Report::new("tables 3");
    let params = LucasParams::new(PRIMITIVE_P, PRIMITIVE_Q);
    let discriminant = params.discriminant();
    let max_m = PRIMITIVE_DIVISOR_ROWS.iter().map(|r| r.m).max().unwrap_or(0);
    let u = params.u_terms(max_m);
    for row in PRIMITIVE_DIVISOR_ROWS {
        let u_m = &u[row.m as usize];
        report.check(
            format!("m={} U_m", row.m),
            *u_m == BigInt::from(row.u_m),
            json!({"computed": u_m.to_string(), "printed": row.u_m}),
        );
        for &p in row.primes {
            let pb = BigInt::from(p);
            let name = format!("m={} p={p}", row.m);
            let prime_ok = is_prime(&pb);
            let divides = (u_m % &pb).is_zero();
            let earlier = (1..row.m).find(|&k| (&u[k as usize] % &pb).is_zero());
            let divides_d = (&discriminant % &pb).is_zero();
            report.check(
                format!("{name} primitive divisor"),
                prime_ok && divides && earlier.is_none() && !divides_d,
                json!({"prime": prime_ok, "divides_u_m": divides, "earlier_index": earlier, "divides_d": divides_d}),
            );
            if !prime_ok {
                continue;
            }
            let prime = Prime::new(pb).expect("checked prime");
            let local = classify_local(&params, &prime, PRIMITIVE_R);
            let ok = local.as_ref().is_ok_and(|l| l.descriptor == cyclic(row.m));
            let detail = match local {
                Ok(l) => json!({"case": l.case.label(), "semigroup": l.descriptor.to_string()}),
                Err(e) => json!(e.to_string()),
            };
            report.check(format!("{name} closed form"), ok, detail);
        }
    }
    report.result = json!({"rows": PRIMITIVE_DIVISOR_ROWS.len(), "p": PRIMITIVE_P, "q": PRIMITIVE_Q});
    report
}
