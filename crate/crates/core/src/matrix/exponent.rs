use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::Rational;
use crate::classify::classify_global;
use crate::lucas::LucasParams;
use crate::semigroup::{EventuallyPeriodicSet, SemigroupDescriptor};

use super::{MatrixError, RationalMatrix};

/// `{ n <= bound : A^n is integral }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpSemigroupSample {
    pub bound: u64,
    pub members: Vec<u64>,
}

impl ExpSemigroupSample {
    pub fn contains(&self, n: u64) -> bool {
        self.members.binary_search(&n).is_ok()
    }

    /// Whether `s` truncated to the bound has exactly these members.
    pub fn agrees_with(&self, s: &SemigroupDescriptor) -> bool {
        (0..=self.bound).all(|n| s.contains(n) == self.contains(n))
    }
}

/// Tests integrality of `A^n` for `n = 0..=bound`, one multiplication per step.
///
/// Powers are kept as `N / delta` with `delta` the common denominator of `A`
/// and `N` integral, which needs only an exact division by `delta` per step.
/// If some power needs a larger denominator (possible only when the
/// characteristic polynomial is not integral) the scan continues with fully
/// reduced rationals.
pub fn exponent_semigroup_bruteforce(a: &RationalMatrix, bound: u64) -> ExpSemigroupSample {
    let dim = a.dim();
    let delta = a.rows().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = a.rows().flatten().map(|x| (x * &delta).to_integer()).collect();
    let mut numerators: Vec<BigInt> =
        (0..dim * dim).map(|k| if k % (dim + 1) == 0 { delta.clone() } else { BigInt::zero() }).collect();
    let mut members = vec![0];
    for n in 1..=bound {
        let product = integer_product(&numerators, &scaled, dim);
        if product.iter().any(|x| !x.is_multiple_of(&delta)) {
            let rows = product.chunks(dim).map(|r| r.iter().map(|x| Rational::new(x.clone(), &delta * &delta)).collect());
            let power = RationalMatrix::new(rows.collect()).expect("square");
            return rational_scan(a, power, n, bound, members);
        }
        numerators = product.into_iter().map(|x| x / &delta).collect();
        if numerators.iter().all(|x| x.is_multiple_of(&delta)) {
            members.push(n);
        }
    }
    ExpSemigroupSample { bound, members }
}

fn integer_product(x: &[BigInt], y: &[BigInt], dim: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = BigInt::zero();
            for k in 0..dim {
                let (u, v) = (&x[i * dim + k], &y[k * dim + j]);
                if !u.is_zero() && !v.is_zero() {
                    acc += u * v;
                }
            }
            out.push(acc);
        }
    }
    out
}

/// Continues the scan from `power = A^n` with reduced rationals.
fn rational_scan(
    a: &RationalMatrix,
    mut power: RationalMatrix,
    n: u64,
    bound: u64,
    mut members: Vec<u64>,
) -> ExpSemigroupSample {
    for k in n..=bound {
        if k > n {
            power = power.mul(a).expect("same dimension");
        }
        if power.is_integral() {
            members.push(k);
        }
    }
    ExpSemigroupSample { bound, members }
}

/// Exact `S(A)` of a 2 x 2 rational matrix.
///
/// With `P = tr A`, `Q = det A` integral and `b != 0`, `A^n = U_n A - Q U_{n-1} I`
/// so `S(A) = L(P, Q, a) ∩ L(P, Q, b) ∩ L(P, Q, p_A(a) / b)`. This also holds
/// when `Q = 0`. A non-integral characteristic polynomial forces `{0}`.
pub fn exponent_semigroup_2x2_exact(a: &RationalMatrix) -> Result<SemigroupDescriptor, MatrixError> {
    if a.dim() != 2 {
        return Err(MatrixError::NotTwoByTwo(a.dim()));
    }
    if !a.has_integral_charpoly() {
        return Ok(SemigroupDescriptor::Zero);
    }
    let a = if a.get(0, 1).is_zero() && !a.get(1, 0).is_zero() { a.transpose() } else { a.clone() };
    if a.is_diagonal() {
        return Ok(if a.is_integral() { SemigroupDescriptor::All } else { SemigroupDescriptor::Zero });
    }
    let p = a.trace().to_integer();
    let q = a.determinant().to_integer();
    let (top_left, top_right) = (a.get(0, 0), a.get(0, 1));
    let pa = top_left * top_left - Rational::from_integer(p.clone()) * top_left + Rational::from_integer(q.clone());
    let params = LucasParams { p, q };
    let mut set = EventuallyPeriodicSet::naturals();
    for r in [top_left.clone(), top_right.clone(), pa / top_right] {
        set = set.intersect(&classify_global(&params, &r)?.set);
    }
    Ok(SemigroupDescriptor::from_periodic_set(&set).expect("an intersection of semigroups is a semigroup"))
}

/// The matrix `[[0, 1/D], [-QD, P]]` with trace `P`, determinant `Q` and
/// `S(A) = L(P, Q, R)`, where `D` is the reduced denominator of `R`.
pub fn realize(p: &BigInt, q: &BigInt, r: &Rational) -> Result<RationalMatrix, MatrixError> {
    if p.is_zero() || q.is_zero() {
        return Err(MatrixError::PqZero { p: p.clone(), q: q.clone() });
    }
    let d = r.denom().clone();
    RationalMatrix::new(vec![
        vec![Rational::zero(), Rational::new(BigInt::one(), d.clone())],
        vec![Rational::from_integer(-q * d), Rational::from_integer(p.clone())],
    ])
}
