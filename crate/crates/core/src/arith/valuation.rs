use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{is_prime, ArithError, Rational};

/// A p-adic valuation of an integer: a natural number, or infinity for zero.
///
/// The derived order puts every finite value below `Infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtValuation {
    Finite(u64),
    Infinity,
}

impl ExtValuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtValuation::Finite(k) => Some(k),
            ExtValuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == ExtValuation::Infinity
    }

    /// `self >= bound`, with a signed bound.
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            ExtValuation::Infinity => true,
            ExtValuation::Finite(k) => bound <= 0 || k >= bound as u64,
        }
    }
}

impl Add for ExtValuation {
    type Output = ExtValuation;

    fn add(self, rhs: ExtValuation) -> ExtValuation {
        match (self, rhs) {
            (ExtValuation::Finite(a), ExtValuation::Finite(b)) => ExtValuation::Finite(a + b),
            _ => ExtValuation::Infinity,
        }
    }
}

impl fmt::Display for ExtValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValuation::Finite(k) => write!(f, "{k}"),
            ExtValuation::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtValuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtValuation::Finite(k) => s.serialize_u64(*k),
            ExtValuation::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Valuation of a rational: `v_p(num) - v_p(den)`, or infinity for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SignedValuation {
    Finite(i64),
    Infinity,
}

impl SignedValuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            SignedValuation::Finite(k) => Some(k),
            SignedValuation::Infinity => None,
        }
    }
}

impl fmt::Display for SignedValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedValuation::Finite(k) => write!(f, "{k}"),
            SignedValuation::Infinity => f.write_str("inf"),
        }
    }
}

/// A verified prime. Construction runs the primality test once so that the
/// hot paths taking a `&Prime` never have to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(BigInt);

impl Prime {
    pub fn new(n: impl Into<BigInt>) -> Result<Prime, ArithError> {
        let n = n.into();
        if n < BigInt::from(2) || !is_prime(&n) {
            return Err(ArithError::NotPrime(n));
        }
        Ok(Prime(n))
    }

    /// Wraps a value already known to be prime (e.g. a factor returned by
    /// [`super::factorize`]).
    pub(crate) fn new_unchecked(n: BigInt) -> Prime {
        debug_assert!(is_prime(&n));
        Prime(n)
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn divides(&self, x: &BigInt) -> bool {
        (x % &self.0).is_zero()
    }

    pub fn pow(&self, e: u32) -> BigInt {
        num_traits::pow(self.0.clone(), e as usize)
    }

    pub fn valuation(&self, x: &BigInt) -> ExtValuation {
        if x.is_zero() {
            return ExtValuation::Infinity;
        }
        if self.0 == BigInt::from(2) {
            return ExtValuation::Finite(x.trailing_zeros().unwrap_or(0));
        }
        let mut k = 0;
        let mut rest = x.abs();
        loop {
            let (quot, rem) = rest.div_rem(&self.0);
            if !rem.is_zero() {
                return ExtValuation::Finite(k);
            }
            rest = quot;
            k += 1;
        }
    }

    pub fn valuation_rational(&self, x: &Rational) -> SignedValuation {
        match (self.valuation(x.numer()), self.valuation(x.denom())) {
            (ExtValuation::Finite(n), ExtValuation::Finite(d)) => SignedValuation::Finite(n as i64 - d as i64),
            _ => SignedValuation::Infinity,
        }
    }

    pub fn is_two(&self) -> bool {
        self.0 == BigInt::from(2)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// `v_p(x)`; fails when `p` is not prime.
pub fn valuation(p: &BigInt, x: &BigInt) -> Result<ExtValuation, ArithError> {
    Ok(Prime::new(p.clone())?.valuation(x))
}

/// `v_p(x)` for rational `x`; fails when `p` is not prime.
pub fn valuation_rational(p: &BigInt, x: &Rational) -> Result<SignedValuation, ArithError> {
    Ok(Prime::new(p.clone())?.valuation_rational(x))
}
