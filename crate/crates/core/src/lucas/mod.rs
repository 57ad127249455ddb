//! Lucas sequences `U_n(P, Q)` and `V_n(P, Q)`.
//!
//! `U_0 = 0, U_1 = 1, V_0 = 2, V_1 = P`, and both satisfy
//! `X_{n+2} = P X_{n+1} - Q X_n`.

pub mod word;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, ExtValuation, Prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LucasError {
    #[error("rank of appearance of {prime} is not guaranteed: it divides Q = {q}")]
    PrimeDividesQ { prime: BigInt, q: BigInt },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The integer pair `(P, Q)` of a Lucas sequence. All pairs are admitted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LucasParams {
    pub p: BigInt,
    pub q: BigInt,
}

/// `P = p^a P'`, `Q = p^b Q'` with `p` dividing neither unit part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSplit {
    pub a: u64,
    pub b: u64,
    pub p_unit: BigInt,
    pub q_unit: BigInt,
}

impl LucasParams {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> LucasParams {
        LucasParams { p: p.into(), q: q.into() }
    }

    /// `D = P^2 - 4Q`.
    pub fn discriminant(&self) -> BigInt {
        &self.p * &self.p - 4 * &self.q
    }

    pub fn u(&self, n: u64) -> BigInt {
        lucas_u(self, n)
    }

    pub fn v(&self, n: u64) -> BigInt {
        lucas_v(self, n)
    }

    /// `U_0, ..., U_{n_max}`.
    pub fn u_terms(&self, n_max: u64) -> Vec<BigInt> {
        self.terms(BigInt::zero(), BigInt::one(), n_max)
    }

    /// `V_0, ..., V_{n_max}`.
    pub fn v_terms(&self, n_max: u64) -> Vec<BigInt> {
        self.terms(BigInt::from(2), self.p.clone(), n_max)
    }

    fn terms(&self, x0: BigInt, x1: BigInt, n_max: u64) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(n_max as usize + 1);
        let (mut prev, mut cur) = (x0, x1);
        for _ in 0..=n_max {
            let next = &self.p * &cur - &self.q * &prev;
            out.push(std::mem::replace(&mut prev, std::mem::replace(&mut cur, next)));
        }
        out
    }

    /// Splits off the powers of a prime dividing both `P` and `Q`. `None`
    /// unless `PQ != 0`.
    pub fn split_at(&self, prime: &Prime) -> Option<PrimeSplit> {
        let (ExtValuation::Finite(a), ExtValuation::Finite(b)) = (prime.valuation(&self.p), prime.valuation(&self.q))
        else {
            return None;
        };
        Some(PrimeSplit {
            a,
            b,
            p_unit: &self.p / prime.pow(a as u32),
            q_unit: &self.q / prime.pow(b as u32),
        })
    }

    pub(crate) fn small(&self) -> Option<(i64, i64)> {
        Some((self.p.to_i64()?, self.q.to_i64()?))
    }
}

fn iterate(params: &LucasParams, mut prev: BigInt, mut cur: BigInt, n: u64) -> BigInt {
    for _ in 0..n {
        let next = &params.p * &cur - &params.q * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    prev
}

/// Exact `U_n(P, Q)` by the recurrence.
pub fn lucas_u(params: &LucasParams, n: u64) -> BigInt {
    iterate(params, BigInt::zero(), BigInt::one(), n)
}

/// Exact `V_n(P, Q)` by the recurrence.
pub fn lucas_v(params: &LucasParams, n: u64) -> BigInt {
    iterate(params, BigInt::from(2), params.p.clone(), n)
}

/// Residues `U_0, ..., U_{n_max}` modulo `modulus`, each in `[0, modulus)`.
#[derive(Clone, Debug)]
pub struct LucasResidues {
    p: BigInt,
    q: BigInt,
    modulus: BigInt,
    prev: BigInt,
    cur: BigInt,
    remaining: u64,
}

impl Iterator for LucasResidues {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let next = (&self.p * &self.cur - &self.q * &self.prev).mod_floor(&self.modulus);
        let out = std::mem::replace(&mut self.prev, std::mem::replace(&mut self.cur, next));
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

/// Streams `U_n mod modulus` for `n = 0..=n_max` with constant state.
pub fn lucas_u_mod(params: &LucasParams, modulus: &BigInt, n_max: u64) -> Result<LucasResidues, ArithError> {
    if modulus < &BigInt::from(2) {
        return Err(ArithError::ModulusTooSmall(modulus.clone()));
    }
    Ok(LucasResidues {
        p: params.p.mod_floor(modulus),
        q: params.q.mod_floor(modulus),
        modulus: modulus.clone(),
        prev: BigInt::zero(),
        cur: BigInt::one(),
        remaining: n_max + 1,
    })
}

/// Rank of appearance `rho` (least `n >= 2` with `p | U_n`) and rank exponent
/// `nu = v_p(U_rho)`. `nu` is infinite for degenerate sequences with `U_rho = 0`,
/// e.g. `P = 0` or `P^2 = Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RankData {
    pub rho: u64,
    pub nu: ExtValuation,
}

/// Computes `rho(p)` by scanning `U_n mod p`, then `nu` from the exact `U_rho`.
///
/// Requires `p` not dividing `Q`; the rank then exists and is at most `p + 1`.
/// Running past that bound means the arithmetic is broken, so it panics.
pub fn rank_of_appearance(params: &LucasParams, prime: &Prime) -> Result<RankData, LucasError> {
    if prime.divides(&params.q) {
        return Err(LucasError::PrimeDividesQ { prime: prime.value().clone(), q: params.q.clone() });
    }
    let limit = prime.value() + 1u32;
    let rho = match (params.small(), prime.to_u64()) {
        (Some((p, q)), Some(m)) if m < word::WORD_MODULUS_LIMIT => word::WordLucas::new(p, q, m)
            .residues()
            .enumerate()
            .skip(2)
            .find(|(_, r)| *r == 0)
            .map(|(n, _)| n as u64),
        _ => lucas_u_mod(params, prime.value(), limit.to_u64().unwrap_or(u64::MAX))?
            .enumerate()
            .skip(2)
            .find(|(_, r)| r.is_zero())
            .map(|(n, _)| n as u64),
    };
    let rho = match rho {
        Some(rho) if BigInt::from(rho) <= limit => rho,
        _ => panic!("rank of appearance of {prime} for {params:?} exceeds p + 1; arithmetic bug"),
    };
    let nu = prime.valuation(&lucas_u(params, rho));
    Ok(RankData { rho, nu })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn u_examples() {
        assert_eq!(ints(&LucasParams::new(1, 2).u_terms(9)), vec![0, 1, 1, -1, -3, -1, 5, 7, -3, -17]);
        assert_eq!(ints(&LucasParams::new(3, 2).u_terms(5)), vec![0, 1, 3, 7, 15, 31]);
        for (p, q) in [(0, 0), (-7, 3), (12, -12), (5, 0)] {
            assert_eq!(lucas_u(&LucasParams::new(p, q), 1), BigInt::one());
        }
    }

    #[test]
    fn v_examples() {
        assert_eq!(lucas_v(&LucasParams::new(9, -4), 0), BigInt::from(2));
        // V_2 = P V_1 - Q V_0 = 1 - 4
        assert_eq!(lucas_v(&LucasParams::new(1, 2), 2), BigInt::from(-3));
        assert_eq!(ints(&LucasParams::new(3, 2).v_terms(3)), vec![2, 3, 5, 9]);
    }

    #[test]
    fn residue_examples() {
        let res = |p: i64, q: i64, m: i64, n: u64| -> Vec<i64> {
            lucas_u_mod(&LucasParams::new(p, q), &BigInt::from(m), n).unwrap().map(|x| x.to_i64().unwrap()).collect()
        };
        assert_eq!(res(1, 2, 2, 8), vec![0, 1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(res(18, 8, 3, 4), vec![0, 1, 0, 1, 0]);
        assert_eq!(res(0, 5, 4, 4), vec![0, 1, 0, 3, 0]);
        assert!(lucas_u_mod(&LucasParams::new(1, 1), &BigInt::from(1), 3).is_err());
    }

    #[test]
    fn rank_examples() {
        let rank = |p: i64, q: i64, prime: i64| rank_of_appearance(&LucasParams::new(p, q), &Prime::new(prime).unwrap());
        assert_eq!(rank(1, 2, 7).unwrap().rho, 7);
        assert_eq!(rank(3, 1, 5).unwrap().rho, 5);
        assert_eq!(rank(1, 2, 3).unwrap(), RankData { rho: 4, nu: ExtValuation::Finite(1) });
        assert_eq!(rank(1, 1, 5).unwrap(), RankData { rho: 3, nu: ExtValuation::Infinity });
        assert!(matches!(rank(3, 6, 3), Err(LucasError::PrimeDividesQ { .. })));
    }

    #[test]
    fn split_examples() {
        let s = LucasParams::new(18, 8).split_at(&Prime::new(2).unwrap()).unwrap();
        assert_eq!(s, PrimeSplit { a: 1, b: 3, p_unit: BigInt::from(9), q_unit: BigInt::from(1) });
        assert!(LucasParams::new(0, 8).split_at(&Prime::new(2).unwrap()).is_none());
    }

    #[test]
    fn degenerate_closed_forms() {
        // Q = 0 gives U_n = P^{n-1}; P = 0 gives U_{2i} = 0 and U_{2i+1} = (-Q)^i.
        for p in -6i64..=6 {
            let params = LucasParams::new(p, 0);
            for n in 1..30u64 {
                assert_eq!(params.u(n), num_traits::pow(BigInt::from(p), n as usize - 1));
            }
        }
        for q in -6i64..=6 {
            let params = LucasParams::new(0, q);
            for n in 0..30u64 {
                let expected = if n % 2 == 0 {
                    BigInt::zero()
                } else {
                    num_traits::pow(BigInt::from(-q), (n / 2) as usize)
                };
                assert_eq!(params.u(n), expected, "q={q} n={n}");
            }
        }
    }

    proptest! {
        #[test]
        fn addition_identity(p in -30i64..30, q in -30i64..30, m in 1u64..=50, n in 1u64..=50) {
            let params = LucasParams::new(p, q);
            let lhs = params.u(m + n);
            let rhs = params.u(m) * params.u(n + 1) - &params.q * params.u(m - 1) * params.u(n);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn residues_agree_with_exact(p in -50i64..50, q in -50i64..50, m in 2i64..5000, n in 0u64..80) {
            let params = LucasParams::new(p, q);
            let modulus = BigInt::from(m);
            let stream: Vec<BigInt> = lucas_u_mod(&params, &modulus, n).unwrap().collect();
            let exact: Vec<BigInt> = params.u_terms(n).iter().map(|u| u.mod_floor(&modulus)).collect();
            prop_assert_eq!(stream, exact);
        }

        #[test]
        fn rank_is_least_index(p in -40i64..40, q in -40i64..40, pi in 0usize..8) {
            let prime = Prime::new([2, 3, 5, 7, 11, 13, 17, 19][pi]).unwrap();
            let params = LucasParams::new(p, q);
            prop_assume!(!prime.divides(&params.q));
            let rank = rank_of_appearance(&params, &prime).unwrap();
            prop_assert!(rank.rho >= 2);
            prop_assert!(prime.divides(&params.u(rank.rho)));
            for k in 2..rank.rho {
                prop_assert!(!prime.divides(&params.u(k)));
            }
            prop_assert_eq!(rank.nu, prime.valuation(&params.u(rank.rho)));
            prop_assert!(rank.nu >= ExtValuation::Finite(1));
        }

        #[test]
        fn special_prime_growth(pu in -6i64..6, qu in -6i64..6, a in 1u32..3, b in 1u32..4, pi in 0usize..3) {
            let prime = [2i64, 3, 5][pi];
            prop_assume!(pu != 0 && qu != 0);
            let params = LucasParams::new(pu * prime.pow(a), qu * prime.pow(b));
            let prime = Prime::new(prime).unwrap();
            for n in 1..=60u64 {
                prop_assert!(prime.valuation(&params.u(n)).at_least((n / 2) as i64));
            }
        }
    }
}
