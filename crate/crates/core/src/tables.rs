//! Embedded parameter tables: the four exponent-semigroup matrix families,
//! parameters realizing `<m>` as a local Lucas semigroup for `2 <= m <= 30`,
//! and the primitive divisors of `U_m(1, 2)` for `31 <= m <= 50`.

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::Rational;
use crate::matrix::RationalMatrix;
use crate::semigroup::{EventuallyPeriodicSet, SemigroupDescriptor};

/// A matrix family `k -> A_k` with a known exponent semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFamily {
    /// `[1/2]` gives `{0}`.
    Zero,
    /// `[[2, 2^(1-k)], [0, 0]]` gives `S_k` for `k >= 2`.
    Tail,
    /// `[[1, 1/2], [0, 1]]` gives `<2>`.
    Evens,
    /// `[[0, 2^(-(k-1)/2)], [2^((k+1)/2), 0]]` gives `<2, k>` for odd `k >= 3`.
    TwoAndOdd,
}

pub const MATRIX_FAMILIES: [MatrixFamily; 4] =
    [MatrixFamily::Zero, MatrixFamily::Tail, MatrixFamily::Evens, MatrixFamily::TwoAndOdd];

impl MatrixFamily {
    pub fn label(self) -> &'static str {
        match self {
            MatrixFamily::Zero => "{0}",
            MatrixFamily::Tail => "S_k",
            MatrixFamily::Evens => "<2>",
            MatrixFamily::TwoAndOdd => "<2,k>",
        }
    }

    /// Parameters exercised by the golden checks; `None` for the fixed
    /// matrices.
    pub fn parameters(self) -> Vec<Option<u64>> {
        match self {
            MatrixFamily::Zero | MatrixFamily::Evens => vec![None],
            MatrixFamily::Tail => (2..=9).map(Some).collect(),
            MatrixFamily::TwoAndOdd => vec![Some(3), Some(5), Some(7), Some(9)],
        }
    }

    /// The family member for parameter `k` (ignored by the fixed matrices).
    pub fn matrix(self, k: u64) -> RationalMatrix {
        let int = |n: BigInt| Rational::from_integer(n);
        let inv = |n: BigInt| Rational::new(BigInt::one(), n);
        let two_pow = |e: u64| BigInt::one() << e;
        let rows = match self {
            MatrixFamily::Zero => vec![vec![inv(2.into())]],
            MatrixFamily::Tail => {
                assert!(k >= 2, "S_k needs k >= 2");
                vec![vec![int(2.into()), inv(two_pow(k - 1))], vec![int(0.into()), int(0.into())]]
            }
            MatrixFamily::Evens => vec![vec![int(1.into()), inv(2.into())], vec![int(0.into()), int(1.into())]],
            MatrixFamily::TwoAndOdd => {
                assert!(k >= 3 && k % 2 == 1, "<2, k> needs odd k >= 3");
                vec![vec![int(0.into()), inv(two_pow((k - 1) / 2))], vec![int(two_pow(k.div_ceil(2))), int(0.into())]]
            }
        };
        RationalMatrix::new(rows).expect("square family matrix")
    }

    pub fn semigroup(self, k: u64) -> SemigroupDescriptor {
        match self {
            MatrixFamily::Zero => SemigroupDescriptor::Zero,
            MatrixFamily::Tail => SemigroupDescriptor::from_periodic_set(&EventuallyPeriodicSet::tail(k))
                .expect("tails are semigroups"),
            MatrixFamily::Evens => SemigroupDescriptor::from_generators(&[2]).expect("nonempty"),
            MatrixFamily::TwoAndOdd => SemigroupDescriptor::from_generators(&[2, k]).expect("nonempty"),
        }
    }
}

/// `L(P, Q, p^-r) = <m>`, with the first terms of `U_n(P, Q)` as printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicRow {
    pub m: u64,
    pub p: i64,
    pub q: i64,
    pub prime: u64,
    pub r: i64,
    pub printed_u: &'static [i64],
}

pub const CYCLIC_ROWS: [CyclicRow; 29] = [
    CyclicRow { m: 2, p: 3, q: 5, prime: 3, r: 1, printed_u: &[0, 1, 3, 4, -3, -29, -72, -71, 147, 796, 1653, 979] },
    CyclicRow { m: 3, p: 3, q: 2, prime: 7, r: 1, printed_u: &[0, 1, 3, 7, 15, 31, 63, 127, 255, 511, 1023, 2047] },
    CyclicRow { m: 4, p: 1, q: 2, prime: 3, r: 1, printed_u: &[0, 1, 1, -1, -3, -1, 5, 7, -3, -17, -11, 23] },
    CyclicRow { m: 5, p: 3, q: 1, prime: 5, r: 1, printed_u: &[0, 1, 3, 8, 21, 55, 144, 377, 987, 2584, 6765, 17711] },
    CyclicRow { m: 6, p: 1, q: 2, prime: 5, r: 1, printed_u: &[0, 1, 1, -1, -3, -1, 5, 7, -3, -17, -11, 23, 45, -1, -91, -89] },
    CyclicRow { m: 7, p: 1, q: 2, prime: 7, r: 1, printed_u: &[0, 1, 1, -1, -3, -1, 5, 7, -3, -17, -11, 23, 45, -1, -91, -89, 93, 271] },
    CyclicRow { m: 8, p: 4, q: 3, prime: 41, r: 1, printed_u: &[0, 1, 4, 13, 40, 121, 364, 1093, 3280, 9841, 29524, 885730] },
    CyclicRow { m: 9, p: 1, q: 2, prime: 17, r: 1, printed_u: &[0, 1, 1, -1, -3, -1, 5, 7, -3, -17, -11, 23, 45, -1, -91, -89, 93] },
    CyclicRow { m: 10, p: 1, q: 2, prime: 11, r: 1, printed_u: &[0, 1, 1, -1, -3, -1, 5, 7, -3, -17, -11, 23, 45, -1, -91, -89, 93] },
    CyclicRow { m: 11, p: 1, q: 2, prime: 23, r: 1, printed_u: &[0, 1, 1, -1, -3, -1, 5, 7, -3, -17, -11, 23, 45, -1, -91, -89, 93] },
    CyclicRow { m: 12, p: 3, q: 1, prime: 23, r: 1, printed_u: &[0, 1, 3, 8, 21, 55, 144, 377, 987, 2584, 6765, 17711, 46368, 121393] },
    CyclicRow { m: 13, p: 3, q: 2, prime: 8191, r: 1, printed_u: &[0, 1, 3, 7, 15, 31, 63, 127, 255, 511, 1023, 2047, 4095, 8191, 16383] },
    CyclicRow { m: 14, p: 1, q: 2, prime: 13, r: 1, printed_u: &[0, 1, 1, -1, -3, -1, 5, 7, -3, -17, -11, 23, 45, -1, -91, -89] },
    CyclicRow { m: 15, p: 3, q: 1, prime: 31, r: 1, printed_u: &[0, 1, 3, 8, 21, 55, 144, 377, 987, 2584, 6765, 17711, 46368, 121393, 317811] },
    CyclicRow { m: 16, p: 1, q: 2, prime: 31, r: 1, printed_u: &[0, 1, 1, -1, -3, -1, 5, 7, -3, -17, -11, 23, 45, -1, -91, -89] },
    CyclicRow { m: 17, p: 4, q: 1, prime: 67, r: 1, printed_u: &[0, 1, 4, 15, 56, 209, 780, 2911, 10864, 40545, 151316, 564719, 2107560] },
    CyclicRow { m: 18, p: 3, q: 1, prime: 107, r: 1, printed_u: &[0, 1, 3, 8, 21, 55, 144, 377, 987, 2584, 6765, 17711, 46368, 121393, 317811] },
    CyclicRow { m: 19, p: 3, q: 1, prime: 37, r: 1, printed_u: &[0, 1, 3, 8, 21, 55, 144, 377, 987, 2584, 6765, 17711, 46368, 121393, 317811] },
    CyclicRow { m: 20, p: 1, q: 2, prime: 19, r: 1, printed_u: &[0, 1, 1, -1, -3, -1, 5, 7, -3, -17, -11, 23, 45, -1, -91, -89, 93, 271, 85] },
    CyclicRow { m: 21, p: 3, q: 2, prime: 337, r: 1, printed_u: &[0, 1, 3, 7, 15, 31, 63, 127, 255, 511, 1023, 2047, 4095, 8191, 16383, 32767] },
    CyclicRow { m: 22, p: 3, q: 1, prime: 43, r: 1, printed_u: &[0, 1, 3, 8, 21, 55, 144, 377, 987, 2584, 6765, 17711, 46368, 121393, 317811] },
    CyclicRow { m: 23, p: 13, q: 1, prime: 47, r: 1, printed_u: &[0, 1, 13, 168, 2171, 28055, 362544, 4685017, 60542677, 782369784] },
    CyclicRow { m: 24, p: 11, q: 1, prime: 47, r: 1, printed_u: &[0, 1, 11, 120, 1309, 14279, 155760, 1699081, 18534131, 202176360] },
    CyclicRow { m: 25, p: 3, q: 2, prime: 1801, r: 1, printed_u: &[0, 1, 3, 7, 15, 31, 63, 127, 255, 511, 1023, 2047, 4095, 8191, 16383, 32767] },
    CyclicRow { m: 26, p: 3, q: 2, prime: 2731, r: 1, printed_u: &[0, 1, 3, 7, 15, 31, 63, 127, 255, 511, 1023, 2047, 4095, 8191, 16383, 32767] },
    CyclicRow { m: 27, p: 3, q: 1, prime: 53, r: 1, printed_u: &[0, 1, 3, 8, 21, 55, 144, 377, 987, 2584, 6765, 17711, 46368, 121393, 317811] },
    CyclicRow { m: 28, p: 1, q: 2, prime: 29, r: 1, printed_u: &[0, 1, 1, -1, -3, -1, 5, 7, -3, -17, -11, 23, 45, -1, -91, -89, 93, 271, 85] },
    CyclicRow { m: 29, p: 3, q: 1, prime: 59, r: 1, printed_u: &[0, 1, 3, 8, 21, 55, 144, 377, 987, 2584, 6765, 17711, 46368, 121393, 317811] },
    CyclicRow { m: 30, p: 3, q: 2, prime: 331, r: 1, printed_u: &[0, 1, 3, 7, 15, 31, 63, 127, 255, 511, 1023, 2047, 4095, 8191, 16383, 32767] },
];

/// Known misprints in `CyclicRow::printed_u`: `(m, n, correct U_n)`.
pub const PRINTED_U_ERRATA: [(u64, usize, i64); 1] = [(8, 11, 88573)];

/// `U_m(1, 2)` and its primitive prime divisors, each with exponent 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimitiveDivisorRow {
    pub m: u64,
    pub u_m: i64,
    pub primes: &'static [u64],
}

/// Parameters shared by every [`PrimitiveDivisorRow`].
pub const PRIMITIVE_P: i64 = 1;
pub const PRIMITIVE_Q: i64 = 2;
pub const PRIMITIVE_R: i64 = 1;

pub const PRIMITIVE_DIVISOR_ROWS: [PrimitiveDivisorRow; 20] = [
    PrimitiveDivisorRow { m: 31, u_m: -7193, primes: &[7193] },
    PrimitiveDivisorRow { m: 32, u_m: 41757, primes: &[449] },
    PrimitiveDivisorRow { m: 33, u_m: 56143, primes: &[2441] },
    PrimitiveDivisorRow { m: 34, u_m: -27371, primes: &[101] },
    PrimitiveDivisorRow { m: 35, u_m: -139657, primes: &[71, 281] },
    PrimitiveDivisorRow { m: 36, u_m: -84915, primes: &[37] },
    PrimitiveDivisorRow { m: 37, u_m: 194399, primes: &[73, 2663] },
    PrimitiveDivisorRow { m: 38, u_m: 364229, primes: &[797] },
    PrimitiveDivisorRow { m: 39, u_m: -24569, primes: &[79, 311] },
    PrimitiveDivisorRow { m: 40, u_m: -753027, primes: &[1201] },
    PrimitiveDivisorRow { m: 41, u_m: -703889, primes: &[409, 1721] },
    PrimitiveDivisorRow { m: 42, u_m: 802165, primes: &[43] },
    PrimitiveDivisorRow { m: 43, u_m: 2209943, primes: &[257, 8599] },
    PrimitiveDivisorRow { m: 44, u_m: 605613, primes: &[131] },
    PrimitiveDivisorRow { m: 45, u_m: -3814273, primes: &[2521] },
    PrimitiveDivisorRow { m: 46, u_m: -5025499, primes: &[5197] },
    PrimitiveDivisorRow { m: 47, u_m: 2603047, primes: &[2603047] },
    PrimitiveDivisorRow { m: 48, u_m: 12654045, primes: &[193] },
    PrimitiveDivisorRow { m: 49, u_m: 7447951, primes: &[97, 1567] },
    PrimitiveDivisorRow { m: 50, u_m: -17860139, primes: &[401] },
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lucas::LucasParams;

    #[test]
    fn printed_prefixes_match_except_errata() {
        let mut mismatches = Vec::new();
        for row in CYCLIC_ROWS {
            let u = LucasParams::new(row.p, row.q).u_terms(row.printed_u.len() as u64 - 1);
            for (n, (&printed, actual)) in row.printed_u.iter().zip(&u).enumerate() {
                if BigInt::from(printed) != *actual {
                    mismatches.push((row.m, n, actual.try_into().unwrap()));
                }
            }
        }
        assert_eq!(mismatches, PRINTED_U_ERRATA.to_vec());
    }

    #[test]
    fn rows_are_in_order() {
        assert!(CYCLIC_ROWS.iter().map(|r| r.m).eq(2..=30));
        assert!(PRIMITIVE_DIVISOR_ROWS.iter().map(|r| r.m).eq(31..=50));
    }
}
