use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::prime::{is_prime, is_prime_u64, mul_mod};
use super::{ArithError, Prime};

const TRIAL_LIMIT: u64 = 1000;

/// Prime factorization of `|n|`, primes strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Factorization {
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = Prime> + '_ {
        self.factors.iter().map(|(p, _)| Prime::new_unchecked(p.clone()))
    }

    /// Reassembles `|n|`.
    pub fn product(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }
}

/// Complete factorization of `|n|`; fails on zero.
///
/// Trial division by small numbers, then Pollard-Brent on the cofactor. Fast
/// up to about 19 digits, correct (but slow) beyond.
pub fn factorize(n: &BigInt) -> Result<Factorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::FactorZero);
    }
    let mut rest = n.abs();
    let mut found: BTreeMap<BigInt, u32> = BTreeMap::new();

    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let big_d = BigInt::from(d);
        if &big_d * &big_d > rest {
            break;
        }
        while (&rest % d).is_zero() {
            rest /= d;
            *found.entry(big_d.clone()).or_default() += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }

    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            *found.entry(m).or_default() += 1;
            continue;
        }
        let split = match m.to_u64() {
            Some(small) => BigInt::from(pollard_brent_u64(small)),
            None => pollard_brent_big(&m),
        };
        let other = &m / &split;
        stack.push(split);
        stack.push(other);
    }

    Ok(Factorization { factors: found.into_iter().collect() })
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// A nontrivial divisor of the odd composite `n`.
fn pollard_brent_u64(n: u64) -> u64 {
    debug_assert!(!is_prime_u64(n));
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut x, mut ys);
        let mut g: u64;
        const BATCH: u64 = 128;
        loop {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            loop {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += BATCH;
                if k >= r || g != 1 {
                    break;
                }
            }
            r *= 2;
            if g != 1 {
                break;
            }
        }
        if g == n {
            // Batch overshot: replay one step at a time.
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("Pollard-Brent exhausted all increments")
}

fn pollard_brent_big(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = BigInt::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pairs(f: &Factorization) -> Vec<(i64, u32)> {
        f.factors().iter().map(|(p, e)| (p.to_i64().unwrap(), *e)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(pairs(&factorize(&BigInt::from(96)).unwrap()), vec![(2, 5), (3, 1)]);
        assert_eq!(pairs(&factorize(&BigInt::from(-7193)).unwrap()), vec![(7193, 1)]);
        assert!(factorize(&BigInt::from(1)).unwrap().is_empty());
        assert_eq!(factorize(&BigInt::from(0)), Err(ArithError::FactorZero));
    }

    #[test]
    fn large_semiprimes() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let q = 4_294_967_279u64;
        let n = BigInt::from(p) * BigInt::from(q);
        assert_eq!(
            factorize(&n).unwrap().factors(),
            &[(BigInt::from(q), 1), (BigInt::from(p), 1)]
        );
        let m127 = (BigInt::one() << 127) - 1;
        let n = &m127 * BigInt::from(1_000_003u64) * BigInt::from(1_000_003u64);
        let f = factorize(&n).unwrap();
        assert_eq!(f.factors(), &[(BigInt::from(1_000_003u64), 2), (m127, 1)]);
    }

    #[test]
    fn random_reassembly() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let n: i64 = rng.gen_range(-1_000_000_000_000..1_000_000_000_000);
            if n == 0 {
                continue;
            }
            let f = factorize(&BigInt::from(n)).unwrap();
            assert_eq!(f.product(), BigInt::from(n).abs());
            let primes: Vec<_> = f.factors().iter().map(|(p, _)| p.clone()).collect();
            assert!(primes.windows(2).all(|w| w[0] < w[1]));
            assert!(primes.iter().all(is_prime));
            assert!(f.factors().iter().all(|(_, e)| *e >= 1));
        }
    }
}
