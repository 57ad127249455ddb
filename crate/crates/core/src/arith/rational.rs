use std::str::FromStr;

use super::{ArithError, Rational};

/// Parses `"num/den"` or `"num"`; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let trimmed = s.trim();
    Rational::from_str(trimmed).map_err(|_| ArithError::ParseRational(s.to_string()))
}

/// `"num/den"`, or `"num"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Serde adapter storing rationals as their string form.
pub mod serde_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn format_and_parse() {
        let r = parse_rational("6/-16").unwrap();
        assert_eq!(format_rational(&r), "-3/8");
        assert_eq!(format_rational(&parse_rational(" 18 ").unwrap()), "18");
        assert_eq!(format_rational(&parse_rational("-768/1").unwrap()), "-768");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("one half").is_err());
        assert!(parse_rational("").is_err());
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent(n in -10_000i64..10_000, d in 1i64..10_000) {
            let once = Rational::new(BigInt::from(n), BigInt::from(d));
            let twice = Rational::new(once.numer().clone(), once.denom().clone());
            prop_assert_eq!(&once, &twice);
            prop_assert_eq!(parse_rational(&format_rational(&once)).unwrap(), once);
        }
    }
}
