//! Exact rational matrices and their exponent semigroups
//! `S(A) = { n : A^n has integer entries }`.

mod exponent;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::{format_rational, parse_rational, ArithError, Rational};
use crate::classify::ClassifyError;

pub use exponent::{exponent_semigroup_2x2_exact, exponent_semigroup_bruteforce, realize, ExpSemigroupSample};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix has no rows")]
    Empty,
    #[error("row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("dimension mismatch: {0} x {0} times {1} x {1}")]
    DimensionMismatch(usize, usize),
    #[error("expected a 2 x 2 matrix, got {0} x {0}")]
    NotTwoByTwo(usize),
    #[error("the witness construction needs PQ != 0 (got P = {p}, Q = {q})")]
    PqZero { p: BigInt, q: BigInt },
    #[error("invalid matrix JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// A square matrix of reduced rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(MatrixError::Empty);
        }
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
            return Err(MatrixError::NotSquare { row, len: r.len(), dim });
        }
        Ok(RationalMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
    }

    /// Parses entries in the `num/den` format.
    pub fn from_strings<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self, MatrixError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows)
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        let mut entries = vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Rational::one();
        }
        RationalMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for k in 0..n {
                    acc += self.get(i, k) * other.get(k, j);
                }
                entries.push(acc);
            }
        }
        Ok(RationalMatrix { dim: n, entries })
    }

    /// `A^n` by repeated squaring; `A^0 = I`.
    pub fn power(&self, mut n: u64) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base).expect("same dimension");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        result
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        RationalMatrix { dim: n, entries }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalMatrix { dim: self.dim, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimensionMismatch(self.dim, other.dim));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(x, y)| x + y).collect();
        Ok(RationalMatrix { dim: self.dim, entries })
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn determinant(&self) -> Rational {
        let c0 = self.charpoly().swap_remove(0);
        if self.dim.is_multiple_of(2) {
            c0
        } else {
            -c0
        }
    }

    /// Coefficients of `det(xI - A)`, constant term first, by the
    /// Faddeev-LeVerrier recursion.
    pub fn charpoly(&self) -> Vec<Rational> {
        let n = self.dim;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = RationalMatrix { dim: n, entries: vec![Rational::zero(); n * n] };
        for k in 1..=n {
            m = self.mul(&m).expect("same dimension").add(&Self::identity(n).scale(&coeffs[n - k + 1])).expect("same dimension");
            let am = self.mul(&m).expect("same dimension");
            coeffs[n - k] = -am.trace() / Rational::from_integer(BigInt::from(k));
        }
        coeffs
    }

    pub fn has_integral_charpoly(&self) -> bool {
        self.charpoly().iter().all(Rational::is_integer)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(Rational::is_integer)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("matrix JSON is always serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, MatrixError> {
        serde_json::from_value(value.clone()).map_err(|e| MatrixError::Json(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    entries: Vec<Vec<String>>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixJson { entries: self.rows().map(|r| r.iter().map(format_rational).collect()).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        RationalMatrix::from_strings(&raw.entries).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows().map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(", ")).collect();
        write!(f, "[[{}]]", rows.join("], ["))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[&str]]) -> RationalMatrix {
        RationalMatrix::from_strings(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn power_examples() {
        assert_eq!(m(&[&["1", "1/5"], &["0", "1"]]).power(5), m(&[&["1", "1"], &["0", "1"]]));
        assert_eq!(m(&[&["3", "1/7"], &["2", "-1"]]).power(0), RationalMatrix::identity(2));
        assert_eq!(m(&[&["1/2"]]).power(2), m(&[&["1/4"]]));
        let a = m(&[&["1/3", "2"], &["5", "-7/2"]]);
        let mut slow = RationalMatrix::identity(2);
        for n in 0..12 {
            assert_eq!(a.power(n), slow);
            slow = slow.mul(&a).unwrap();
        }
    }

    #[test]
    fn charpoly_and_determinant() {
        let a = m(&[&["0", "1/96"], &["-768", "18"]]);
        let cp = a.charpoly();
        assert_eq!(cp, vec![Rational::from_integer(8.into()), Rational::from_integer((-18).into()), Rational::one()]);
        assert_eq!(a.determinant(), Rational::from_integer(8.into()));
        let b = RationalMatrix::from_integers(&[&[2, 0, 1], &[1, 3, 0], &[0, 1, 4]]).unwrap();
        assert_eq!(b.determinant(), Rational::from_integer(25.into()));
        assert_eq!(b.trace(), Rational::from_integer(9.into()));
        assert!(b.has_integral_charpoly());
        assert!(!m(&[&["1/2"]]).has_integral_charpoly());
    }

    #[test]
    fn shape_checks() {
        assert_eq!(RationalMatrix::new(vec![]), Err(MatrixError::Empty));
        assert!(matches!(
            RationalMatrix::from_integers(&[&[1, 2], &[3]]),
            Err(MatrixError::NotSquare { row: 1, len: 1, dim: 2 })
        ));
        let a = RationalMatrix::identity(2);
        assert!(a.mul(&RationalMatrix::identity(3)).is_err());
        assert!(a.is_diagonal() && a.is_integral());
        assert_eq!(m(&[&["1", "2"], &["3", "4"]]).transpose(), m(&[&["1", "3"], &["2", "4"]]));
    }

    #[test]
    fn json_round_trip() {
        let a = m(&[&["0", "1/96"], &["-768", "18"]]);
        let v = a.to_json();
        assert_eq!(v, serde_json::json!({"entries": [["0", "1/96"], ["-768", "18"]]}));
        assert_eq!(RationalMatrix::from_json(&v).unwrap(), a);
        assert!(RationalMatrix::from_json(&serde_json::json!({"entries": [["1/0"]]})).is_err());
        assert!(RationalMatrix::from_json(&serde_json::json!({"entries": [["1", "2"]]})).is_err());
        assert_eq!(a.to_string(), "[[0, 1/96], [-768, 18]]");
    }
}
