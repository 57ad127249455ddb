use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::arith::{serde_rational, Prime, Rational};
use crate::lucas::LucasParams;
use crate::matrix::RationalMatrix;
use crate::semigroup::{EventuallyPeriodicSet, SemigroupDescriptor};

use super::{classify_global, classify_local};

/// Evidence that a semigroup is the exponent semigroup of a 2 x 2 (or
/// smaller) rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    Matrix { matrix: RationalMatrix },
    Lucas {
        #[serde(serialize_with = "serialize_display")]
        p: BigInt,
        #[serde(serialize_with = "serialize_display")]
        q: BigInt,
        #[serde(with = "serde_rational")]
        r: Rational,
    },
}

fn serialize_display<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Whether a semigroup is realizable in dimension 2, i.e. is a Lucas
/// semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Yes { witness: Witness, reason: String },
    No { obstruction: String },
    Unknown { reason: String },
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No { .. })
    }
}

/// Lucas parameters for realizable semigroups outside the closed-form
/// families.
const CATALOG: &[(i64, i64, i64)] = &[(18, 8, 96)];

/// Bounded witness search: `|P|, |Q| <= 12`, primes up to 13, exponents up to 6.
const SEARCH_PQ: i64 = 12;
const SEARCH_PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13];
const SEARCH_MAX_R: i64 = 6;

pub fn realizability_verdict(s: &SemigroupDescriptor) -> Verdict {
    if let Some((witness, reason)) = family_witness(s) {
        return Verdict::Yes { witness, reason: reason.to_owned() };
    }
    for &(p, q, d) in CATALOG {
        let r = Rational::new(BigInt::one(), d.into());
        if classify_global(&LucasParams::new(p, q), &r).is_ok_and(|g| &g.descriptor == s) {
            return Verdict::Yes {
                witness: Witness::Lucas { p: p.into(), q: q.into(), r },
                reason: "cataloged Lucas semigroup".to_owned(),
            };
        }
    }
    if let Some(obstruction) = obstruction(s) {
        return Verdict::No { obstruction };
    }
    if let Some(witness) = bounded_search(s) {
        return Verdict::Yes { witness, reason: "found by bounded Lucas parameter search".to_owned() };
    }
    Verdict::Unknown {
        reason: format!(
            "no known obstruction and no witness with |P|, |Q| <= {SEARCH_PQ}, p <= {}, r <= {SEARCH_MAX_R}",
            SEARCH_PRIMES[SEARCH_PRIMES.len() - 1]
        ),
    }
}

fn rational(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

fn int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

fn matrix(rows: Vec<Vec<Rational>>) -> Witness {
    Witness::Matrix { matrix: RationalMatrix::new(rows).expect("square witness") }
}

/// `{0}`, `ℕ`, `<m>`, `S_k` and `<2, k>` with `k` odd, each with its
/// standard witness matrix.
fn family_witness(s: &SemigroupDescriptor) -> Option<(Witness, &'static str)> {
    let one = || int(BigInt::one());
    let zero = || int(BigInt::from(0));
    let two_pow = |e: u64| BigInt::one() << e;
    match s {
        SemigroupDescriptor::Zero => {
            Some((matrix(vec![vec![rational(1.into(), 2.into())]]), "{0} = S([1/2])"))
        }
        SemigroupDescriptor::All => Some((matrix(vec![vec![one()]]), "N = S([1])")),
        SemigroupDescriptor::Scaled { d, core } if core.conductor() == 0 => Some((
            matrix(vec![vec![one(), rational(1.into(), (*d).into())], vec![zero(), one()]]),
            "<m> = S([[1, 1/m], [0, 1]])",
        )),
        SemigroupDescriptor::Scaled { d: 1, core } if core.members() == [0] => {
            let k = core.conductor();
            Some((
                matrix(vec![vec![int(2.into()), rational(1.into(), two_pow(k - 1))], vec![zero(), zero()]]),
                "S_k = S([[2, 2^(1-k)], [0, 0]])",
            ))
        }
        SemigroupDescriptor::Scaled { d: 1, .. } => match s.minimal_generators()[..] {
            [2, k] if k.is_odd() => Some((
                matrix(vec![
                    vec![zero(), rational(1.into(), two_pow((k - 1) / 2))],
                    vec![int(two_pow(k.div_ceil(2))), zero()],
                ]),
                "<2, k> = S([[0, 2^(-(k-1)/2)], [2^((k+1)/2), 0]])",
            )),
            _ => None,
        },
        SemigroupDescriptor::Scaled { .. } => None,
    }
}

/// Necessary conditions for a numerical Lucas semigroup: consecutive members
/// force a tail, and the small elements are empty or share a factor.
fn obstruction(s: &SemigroupDescriptor) -> Option<String> {
    let SemigroupDescriptor::Scaled { d: 1, core } = s else {
        return None;
    };
    let conductor = core.conductor();
    if let Some(n) = (0..conductor).find(|&n| s.contains(n) && s.contains(n + 1) && !s.contains(n + 2)) {
        return Some(format!(
            "not ++- avoiding: {n} and {} are members but {} is not, while consecutive members of a Lucas semigroup force a tail",
            n + 1,
            n + 2
        ));
    }
    let small = core.small_elements();
    let g = small.iter().fold(0u64, |acc, x| acc.gcd(x));
    if !small.is_empty() && g == 1 {
        let listed: Vec<String> = small.iter().map(u64::to_string).collect();
        return Some(format!(
            "the small elements {{{}}} have gcd 1, but in a numerical Lucas semigroup they are absent or share a factor",
            listed.join(",")
        ));
    }
    None
}

/// For each `(P, Q)` in range, takes at every prime the largest exponent whose
/// local semigroup still contains `s` and intersects them: the smallest Lucas
/// semigroup over `s` in the search space for that `(P, Q)`.
fn bounded_search(s: &SemigroupDescriptor) -> Option<Witness> {
    let target = s.to_periodic_set();
    let generators = s.minimal_generators();
    let primes: Vec<Prime> = SEARCH_PRIMES.iter().map(|&p| Prime::new(p).expect("prime")).collect();
    for p in -SEARCH_PQ..=SEARCH_PQ {
        for q in -SEARCH_PQ..=SEARCH_PQ {
            if p == 0 || q == 0 {
                continue;
            }
            let params = LucasParams::new(p, q);
            let mut set = EventuallyPeriodicSet::naturals();
            let mut denominator = BigInt::one();
            for prime in &primes {
                let mut best = None;
                for r in 1..=SEARCH_MAX_R {
                    let local = classify_local(&params, prime, r).ok()?.set;
                    if !generators.iter().all(|&g| local.contains(g)) {
                        break;
                    }
                    best = Some((r, local));
                }
                if let Some((r, local)) = best {
                    set = set.intersect(&local);
                    denominator *= prime.pow(r as u32);
                }
            }
            if set == target {
                return Some(Witness::Lucas { p: p.into(), q: q.into(), r: rational(BigInt::one(), denominator) });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{exponent_semigroup_2x2_exact, exponent_semigroup_bruteforce};

    fn gens(g: &[u64]) -> SemigroupDescriptor {
        SemigroupDescriptor::from_generators(g).unwrap()
    }

    fn witness_realizes(w: &Witness, s: &SemigroupDescriptor) -> bool {
        match w {
            Witness::Matrix { matrix } => {
                let bound = 60;
                let sample = exponent_semigroup_bruteforce(matrix, bound);
                let exact_ok = matrix.dim() != 2 || exponent_semigroup_2x2_exact(matrix).is_ok_and(|e| &e == s);
                sample.agrees_with(s) && exact_ok
            }
            Witness::Lucas { p, q, r } => {
                classify_global(&LucasParams { p: p.clone(), q: q.clone() }, r).unwrap().descriptor == *s
            }
        }
    }

    #[test]
    fn examples() {
        let v = realizability_verdict(&gens(&[5, 7, 16, 18]));
        assert!(matches!(&v, Verdict::No { obstruction } if obstruction.contains("gcd 1")), "{v:?}");
        let v = realizability_verdict(&gens(&[3, 4]));
        assert!(matches!(&v, Verdict::No { obstruction } if obstruction.contains("++-")), "{v:?}");
        match realizability_verdict(&gens(&[7])) {
            Verdict::Yes { witness: Witness::Matrix { matrix }, .. } => {
                assert_eq!(matrix.to_json(), serde_json::json!({"entries": [["1", "1/7"], ["0", "1"]]}));
            }
            other => panic!("{other:?}"),
        }
        match realizability_verdict(&gens(&[6, 8, 10])) {
            Verdict::Yes { witness: Witness::Lucas { p, q, r }, .. } => {
                assert_eq!((p, q, r.to_string()), (18.into(), 8.into(), "1/96".to_owned()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn family_witnesses_are_correct() {
        let mut cases = vec![SemigroupDescriptor::Zero, SemigroupDescriptor::All];
        for k in 2..=9 {
            cases.push(gens(&[k]));
            cases.push(SemigroupDescriptor::from_periodic_set(&EventuallyPeriodicSet::tail(k)).unwrap());
            if k % 2 == 1 {
                cases.push(gens(&[2, k]));
            }
        }
        for s in cases {
            match realizability_verdict(&s) {
                Verdict::Yes { witness, .. } => assert!(witness_realizes(&witness, &s), "{s}"),
                other => panic!("{s}: {other:?}"),
            }
        }
    }

    #[test]
    fn search_finds_other_lucas_semigroups() {
        // A regular-case cycle times a special-prime tail, not in any family.
        let params = LucasParams::new(6, 4);
        let target = classify_global(&params, &Rational::new(BigInt::one(), BigInt::from(2 * 2 * 2 * 3))).unwrap();
        let s = target.descriptor;
        let v = realizability_verdict(&s);
        match &v {
            Verdict::Yes { witness, .. } => assert!(witness_realizes(witness, &s)),
            Verdict::Unknown { .. } => {
                assert!(family_witness(&s).is_none() && obstruction(&s).is_none());
                panic!("{s} is Lucas by construction but the search missed it");
            }
            Verdict::No { obstruction } => panic!("{s} is Lucas by construction: {obstruction}"),
        }
    }

    #[test]
    fn obstruction_free_non_lucas_is_unknown_or_found() {
        // <3, 5, 7> is ++- avoiding with small elements {3}: no obstruction applies.
        let s = gens(&[3, 5, 7]);
        assert!(obstruction(&s).is_none());
        match realizability_verdict(&s) {
            Verdict::Yes { witness, .. } => assert!(witness_realizes(&witness, &s)),
            Verdict::Unknown { .. } => {}
            Verdict::No { obstruction } => panic!("unexpected obstruction {obstruction}"),
        }
    }
}
