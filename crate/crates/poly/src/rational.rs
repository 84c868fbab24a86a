use rug::{Integer, Rational};

use crate::PolyError;

/// Canonical text form `num/den`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let bad = || PolyError::BadRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().map_err(|_| bad())?;
            let d: Integer = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::from((n, d)))
        }
        None => {
            let n: Integer = t.parse().map_err(|_| bad())?;
            Ok(Rational::from(n))
        }
    }
}

/// `#[serde(with = "serde_rational")]` adapter using the `num/den` string form.
pub mod serde_rational {
    use rug::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(D::Error::custom)
    }

    /// Same encoding for a sequence of rationals.
    pub mod vec {
        use rug::Rational;
        use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&crate::format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter().map(|s| crate::parse_rational(s).map_err(D::Error::custom)).collect()
        }
    }
}

/// Least common multiple of the denominators.
pub(crate) fn common_denominator<'a>(it: impl IntoIterator<Item = &'a Rational>) -> Integer {
    let mut l = Integer::from(1);
    for r in it {
        l.lcm_mut(r.denom());
    }
    l
}
