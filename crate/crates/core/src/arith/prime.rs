//! Deterministic primality testing.
//!
//! * `n < 2^32`: trial division.
//! * `n < 3.3 * 10^24`: Miller-Rabin with the first thirteen prime bases, which
//!   is a proof in that range.
//! * beyond: the same Miller-Rabin rounds plus a strong Lucas test (BPSW).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with [`BASES`] is deterministic below this bound.
const MR_DETERMINISTIC_BOUND: &str = "3317044064679887385961981";

/// Primality of `|n|`.
pub fn is_prime(n: &BigInt) -> bool {
    let n = n.magnitude();
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if BASES.iter().any(|&b| (n % b).is_zero()) {
        return false;
    }
    if !BASES.iter().all(|&b| strong_probable_prime(n, &BigUint::from(b))) {
        return false;
    }
    let bound: BigUint = MR_DETERMINISTIC_BOUND.parse().expect("valid constant");
    n < &bound || strong_lucas_probable_prime(n)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    if n < 1 << 32 {
        let mut i = 5;
        while i * i <= n {
            if n.is_multiple_of(i) || n.is_multiple_of(i + 2) {
                return false;
            }
            i += 6;
        }
        return true;
    }
    BASES[..12].iter().all(|&b| strong_probable_prime_u64(n, b))
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime_u64(n: u64, base: u64) -> bool {
    let a = base % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn strong_probable_prime(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = base.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let mut n = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n);
    let mut result = 1;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameters
/// (`D` the first of 5, -7, 9, -11, ... with `(D/n) = -1`, `P = 1`).
fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    let root = n.sqrt();
    if &root * &root == *n {
        return false;
    }
    let nn = BigInt::from(n.clone());
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 if d.magnitude() != n => return false,
            _ => {}
        }
        d = if d.sign() == num_bigint::Sign::Minus { BigInt::from(2) - d } else { -(d + BigInt::from(2)) };
    }
    let q = (BigInt::one() - &d) / 4;
    let reduce = |x: BigInt| x.mod_floor(&nn);
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + &nn } else { x };
        reduce(x >> 1)
    };

    let n_plus_1 = BigInt::from(n.clone()) + BigInt::one();
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let odd_part = &n_plus_1 >> s;

    // Left-to-right binary chain for (U_k, V_k, Q^k) mod n with P = 1.
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    let bits = odd_part.bits();
    for i in (0..bits).rev() {
        u = reduce(&u * &v);
        v = reduce(&v * &v - 2 * &qk);
        qk = reduce(&qk * &qk);
        if odd_part.bit(i) {
            let u_next = half(&u + &v);
            let v_next = half(&d * &u + &v);
            u = u_next;
            v = v_next;
            qk = reduce(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = reduce(&v * &v - 2 * &qk);
        qk = reduce(&qk * &qk);
        if v.is_zero() {
            return true;
        }
    }
    false
}
