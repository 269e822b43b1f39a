use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, q, Q};

/// A weight given by its coordinates on the fundamental weights.
///
/// Ambient coordinates depend on the root system and are produced by
/// [`super::RootSystem::to_ambient`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    fund: Vec<Q>,
}

impl Weight {
    pub fn new(fund: Vec<Q>) -> Self {
        Weight { fund }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { fund: vec![Q::zero(); rank] }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Weight { fund: c.iter().map(|&x| q(x)).collect() }
    }

    pub fn fund(&self) -> &[Q] {
        &self.fund
    }

    pub fn rank(&self) -> usize {
        self.fund.len()
    }

    pub fn is_zero(&self) -> bool {
        self.fund.iter().all(Zero::is_zero)
    }

    pub fn is_dominant(&self) -> bool {
        self.fund.iter().all(|c| !c.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.fund.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates, if integral and small enough.
    pub fn to_ints(&self) -> Result<Vec<i64>> {
        self.fund
            .iter()
            .map(|c| {
                if !c.is_integer() {
                    return Err(Error::NotIntegral(self.to_string()));
                }
                c.numer().try_into().map_err(|_| Error::Overflow("weight coordinate"))
            })
            .collect()
    }

    pub fn scale(&self, s: &Q) -> Weight {
        Weight { fund: self.fund.iter().map(|c| c * s).collect() }
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight { fund: self.fund.iter().zip(&o.fund).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight { fund: self.fund.iter().zip(&o.fund).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fund.iter().map(fmt_q).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated rational fundamental coordinates, e.g. "1,0,3/2".
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        Ok(Weight { fund: s.split(',').map(parse_q).collect::<Result<_>>()? })
    }
}

/// Serialized in the same text form as [`fmt::Display`].
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn parse_and_display() {
        let w: Weight = "1, 0,3/2".parse().unwrap();
        assert_eq!(w.fund(), &[q(1), q(0), qr(3, 2)]);
        assert_eq!(w.to_string(), "1,0,3/2");
        assert!("".parse::<Weight>().is_err());
        assert!("1,,2".parse::<Weight>().is_err());
    }

    #[test]
    fn dominance_and_integrality() {
        assert!(Weight::from_ints(&[0, 2]).is_dominant());
        assert!(!Weight::from_ints(&[1, -1]).is_dominant());
        let w: Weight = "1/2,1".parse().unwrap();
        assert!(!w.is_integral());
        assert!(w.to_ints().is_err());
        assert_eq!(w.scale(&q(2)).to_ints().unwrap(), vec![1, 2]);
    }
}
