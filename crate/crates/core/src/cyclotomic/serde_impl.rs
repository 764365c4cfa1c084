//! JSON form: `{"n": n, "coeffs": [[num, den], ...]}` with reduced fractions.
//!
//! Integers that fit in an `i64` are written as JSON numbers; larger ones are
//! written as decimal strings so the round trip stays exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::totient;
use super::CycNum;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for IntRepr {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(x) => IntRepr::Small(x),
            None => IntRepr::Big(v.to_string()),
        }
    }
}

impl TryFrom<IntRepr> for BigInt {
    type Error = String;
    fn try_from(v: IntRepr) -> Result<Self, String> {
        match v {
            IntRepr::Small(x) => Ok(BigInt::from(x)),
            IntRepr::Big(s) => s.parse().map_err(|_| format!("not an integer: {s:?}")),
        }
    }
}

/// A rational in its `[num, den]` wire form.
#[derive(Serialize, Deserialize)]
pub struct RationalRepr(IntRepr, IntRepr);

impl From<&BigRational> for RationalRepr {
    fn from(q: &BigRational) -> Self {
        RationalRepr(q.numer().into(), q.denom().into())
    }
}

impl TryFrom<RationalRepr> for BigRational {
    type Error = String;
    fn try_from(r: RationalRepr) -> Result<Self, String> {
        let num = BigInt::try_from(r.0)?;
        let den = BigInt::try_from(r.1)?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(num, den))
    }
}

/// Serde adapter for `Vec<BigRational>` fields.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(RationalRepr::from).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<RationalRepr>::deserialize(d)?
            .into_iter()
            .map(|r| BigRational::try_from(r).map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter for `Option<Vec<BigRational>>` fields.
pub mod opt_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigRational>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|v| v.iter().map(RationalRepr::from).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<Vec<BigRational>>, D::Error> {
        Option::<Vec<RationalRepr>>::deserialize(d)?
            .map(|v| {
                v.into_iter()
                    .map(|r| BigRational::try_from(r).map_err(D::Error::custom))
                    .collect()
            })
            .transpose()
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    n: usize,
    #[serde(with = "rational_vec")]
    coeffs: Vec<BigRational>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycNumRepr { n: self.n, coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = CycNumRepr::deserialize(d)?;
        if repr.n == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        // Accept either the canonical φ(n) coefficients or a full exponent
        // vector of length n; both are reduced on the way in.
        let phi = totient(repr.n);
        if repr.coeffs.len() != phi && repr.coeffs.len() != repr.n {
            return Err(D::Error::custom(format!(
                "expected {phi} (or {}) coefficients for conductor {}, got {}",
                repr.n,
                repr.n,
                repr.coeffs.len()
            )));
        }
        Ok(CycNum::from_powers(repr.n, repr.coeffs))
    }
}
