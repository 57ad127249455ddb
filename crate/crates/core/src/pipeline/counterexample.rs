use num_integer::Integer;
use serde_json::json;

use crate::classify::{realizability_verdict, Verdict};
use crate::report::Report;
use crate::semigroup::SemigroupDescriptor;

pub const COUNTEREXAMPLE_GENERATORS: [u64; 4] = [5, 7, 16, 18];

/// `<5, 7, 16, 18>`: every small element is lonely and it is ++- avoiding,
/// yet its small elements have gcd 1, so it is not realizable in dimension 2.
pub fn counterexample() -> Report {
    let mut report = Report::new("counterexample");
    let s = SemigroupDescriptor::from_generators(&COUNTEREXAMPLE_GENERATORS).expect("nonempty");
    let small = s.small_elements().unwrap_or_default();
    report.check("small elements", small == [5, 7, 10, 12], json!(small));
    let frobenius = s.frobenius().ok();
    report.check("Frobenius number", frobenius == Some(13), json!(frobenius));
    let lonely: Vec<_> = small.iter().map(|&n| (n, s.is_lonely(n))).collect();
    for &(n, is_lonely) in &lonely {
        report.check(
            format!("lonely({n})"),
            is_lonely,
            json!({"n_minus_1_in_s": s.contains(n - 1), "n_plus_1_in_s": s.contains(n + 1)}),
        );
    }
    report.check("++- avoiding", s.is_plus_plus_minus_avoiding(), json!(null));
    let gcd = small.iter().fold(0u64, |acc, x| acc.gcd(x));
    report.check("gcd of small elements", gcd == 1, json!(gcd));
    let verdict = realizability_verdict(&s);
    let obstruction_ok = matches!(&verdict, Verdict::No { obstruction } if obstruction.contains("gcd 1"));
    report.check("dimension-2 verdict", obstruction_ok, serde_json::to_value(&verdict).unwrap_or_default());
    // Not dimension-2 realizable, and the matricial dimension of a numerical
    // semigroup is at most its multiplicity.
    let lower = if verdict.is_no() { 3 } else { 1 };
    let upper = s.multiplicity().unwrap_or(0);
    report.check("dimension bounds", (lower, upper) == (3, 5), json!({"lower": lower, "upper": upper}));
    report.result = json!({
        "semigroup": s.to_json(),
        "small_elements": small,
        "lonely": lonely.iter().map(|&(n, l)| json!({"n": n, "lonely": l})).collect::<Vec<_>>(),
        "verdict": verdict,
        "obstruction_chain": [
            "every small element is lonely and S is ++- avoiding",
            format!("the small elements have gcd {gcd}"),
            "a numerical Lucas semigroup has no small elements or small elements sharing a factor",
            "so S is not a Lucas semigroup, hence not the exponent semigroup of a 2 x 2 rational matrix",
        ],
        "dimension_bounds": {"lower": lower, "upper": upper},
    });
    report
}
