use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{Prime, Rational};
use crate::lucas::word::{WordLucas, WORD_MODULUS_LIMIT};
use crate::lucas::{lucas_u_mod, LucasParams};

use super::ClassifyError;

/// `{ n <= n_max : p^r | U_n }` by direct iteration modulo `p^r`. For
/// `r <= 0` every index qualifies.
pub fn oracle_local(params: &LucasParams, prime: &Prime, r: i64, n_max: u64) -> Result<Vec<u64>, ClassifyError> {
    if r <= 0 {
        return Ok((0..=n_max).collect());
    }
    let exponent = u32::try_from(r).map_err(|_| ClassifyError::PeriodOverflow(format!("{prime}^{r}")))?;
    zero_indices(params, &prime.pow(exponent), n_max)
}

/// `{ n <= n_max : U_n R ∈ ℤ }`, i.e. the indices where the denominator of
/// `R` divides `U_n`.
pub fn oracle_global(params: &LucasParams, r: &Rational, n_max: u64) -> Result<Vec<u64>, ClassifyError> {
    let denominator = r.denom();
    if denominator.is_one() {
        return Ok((0..=n_max).collect());
    }
    zero_indices(params, denominator, n_max)
}

fn zero_indices(params: &LucasParams, modulus: &BigInt, n_max: u64) -> Result<Vec<u64>, ClassifyError> {
    if let (Some((p, q)), Some(m)) = (params.small(), modulus.to_u64()) {
        if m < WORD_MODULUS_LIMIT {
            return Ok(WordLucas::new(p, q, m).zero_indices(n_max));
        }
    }
    Ok(lucas_u_mod(params, modulus, n_max)?
        .enumerate()
        .filter(|(_, u)| u.is_zero())
        .map(|(n, _)| n as u64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational;

    fn prime(p: i64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn local_examples() {
        let got = oracle_local(&LucasParams::new(18, 8), &prime(3), 1, 12).unwrap();
        assert_eq!(got, vec![0, 2, 4, 6, 8, 10, 12]);
        let got = oracle_local(&LucasParams::new(1, 2), &prime(7), 1, 30).unwrap();
        assert_eq!(got, vec![0, 7, 14, 21, 28]);
        for (p, q) in [(0, 0), (5, -3), (-11, 4)] {
            assert_eq!(oracle_local(&LucasParams::new(p, q), &prime(5), 1, 0).unwrap(), vec![0]);
        }
        assert_eq!(oracle_local(&LucasParams::new(2, 0), &prime(2), 3, 8).unwrap(), vec![0, 4, 5, 6, 7, 8]);
        assert_eq!(oracle_local(&LucasParams::new(3, 1), &prime(5), 0, 3).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn word_and_big_paths_agree() {
        // 2^40 exceeds the word limit; compare with the exact valuation of U_n.
        let params = LucasParams::new(6, 8);
        let two = prime(2);
        let got = oracle_local(&params, &two, 40, 60).unwrap();
        let expected: Vec<u64> = (0..=60).filter(|&n| two.valuation(&params.u(n)).at_least(40)).collect();
        assert_eq!(got, expected);
        let params = LucasParams::new(BigInt::from(1) << 70, 3);
        let got = oracle_local(&params, &prime(5), 2, 40).unwrap();
        let expected: Vec<u64> = (0..=40).filter(|&n| prime(5).valuation(&params.u(n)).at_least(2)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn global_uses_the_denominator() {
        let params = LucasParams::new(18, 8);
        let got = oracle_global(&params, &parse_rational("1/96").unwrap(), 20).unwrap();
        assert_eq!(got, vec![0, 6, 8, 10, 12, 14, 16, 18, 20]);
        let same = oracle_global(&params, &parse_rational("-35/96").unwrap(), 20).unwrap();
        assert_eq!(got, same);
        assert_eq!(oracle_global(&params, &parse_rational("4").unwrap(), 3).unwrap(), vec![0, 1, 2, 3]);
    }
}
