use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quadmap::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    F,
    G,
}

/// An orbit name such as `F13`, `F13'` or `G0`, without ambient dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitBase {
    pub series: Series,
    pub index: u8,
    pub primed: bool,
}

const PRIMED_F: [u8; 6] = [1, 7, 13, 17, 19, 25];

impl OrbitBase {
    pub const fn f(index: u8) -> Self {
        OrbitBase { series: Series::F, index, primed: false }
    }
    pub const fn g(index: u8) -> Self {
        OrbitBase { series: Series::G, index, primed: false }
    }
    pub const fn prime(self) -> Self {
        OrbitBase { primed: true, ..self }
    }

    pub fn is_valid(&self) -> bool {
        match (self.series, self.primed) {
            (Series::F, false) => (1..=29).contains(&self.index),
            (Series::F, true) => PRIMED_F.contains(&self.index),
            (Series::G, false) => self.index <= 4,
            (Series::G, true) => self.index == 3,
        }
    }

    /// The 34 complex orbits: `F1..F29`, then `G0..G4`.
    pub fn complex() -> Vec<OrbitBase> {
        (1..=29).map(OrbitBase::f).chain((0..=4).map(OrbitBase::g)).collect()
    }

    /// The 41 real orbits: the complex list followed by the primed twins.
    pub fn real() -> Vec<OrbitBase> {
        let mut v = Self::complex();
        v.extend(PRIMED_F.iter().map(|&i| OrbitBase::f(i).prime()));
        v.push(OrbitBase::g(3).prime());
        v
    }

    pub fn unprimed(self) -> Self {
        OrbitBase { primed: false, ..self }
    }

    /// Whether the orbit of this complex label splits into two real orbits.
    pub fn has_real_twin(&self) -> bool {
        self.unprimed().prime().is_valid()
    }

    /// Smallest target dimension allowed for a label in this series.
    pub fn min_series_ambient(&self) -> usize {
        match (self.series, self.index) {
            (Series::G, 0) => 5,
            (Series::G, _) => 4,
            _ => 1,
        }
    }
}

impl fmt::Display for OrbitBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.series {
            Series::F => 'F',
            Series::G => 'G',
        };
        write!(f, "{}{}{}", s, self.index, if self.primed { "'" } else { "" })
    }
}

impl FromStr for OrbitBase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::UnknownLabel(s.to_string());
        let mut chars = t.chars();
        let series = match chars.next() {
            Some('F' | 'f') => Series::F,
            Some('G' | 'g') => Series::G,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        let (digits, primed) = match rest.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let digits = digits.trim_start_matches('_');
        let index: u8 = digits.parse().map_err(|_| bad())?;
        let base = OrbitBase { series, index, primed };
        if base.is_valid() {
            Ok(base)
        } else {
            Err(bad())
        }
    }
}

impl Serialize for OrbitBase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OrbitBase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An orbit in a definite target space `K^n` over a definite field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrbitLabel {
    pub base: OrbitBase,
    pub ambient_n: usize,
    pub field: Field,
}

impl OrbitLabel {
    pub fn new(base: OrbitBase, ambient_n: usize, field: Field) -> Result<Self> {
        if !base.is_valid() {
            return Err(Error::UnknownLabel(base.to_string()));
        }
        if base.primed && field != Field::Real {
            return Err(Error::FieldMismatch(format!("{} is a real orbit", base)));
        }
        if ambient_n < base.min_series_ambient().max(1) {
            return Err(Error::DimensionMismatch(format!("{} needs n >= {}", base, base.min_series_ambient())));
        }
        Ok(OrbitLabel { base, ambient_n, field })
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(OrbitBase::complex().len(), 34);
        assert_eq!(OrbitBase::real().len(), 41);
        assert_eq!(OrbitBase::real().iter().filter(|b| b.has_real_twin() && !b.primed).count(), 7);
    }

    #[test]
    fn round_trip() {
        for b in OrbitBase::real() {
            assert_eq!(b.to_string().parse::<OrbitBase>().unwrap(), b);
        }
        assert_eq!("f_13'".parse::<OrbitBase>().unwrap(), OrbitBase::f(13).prime());
        assert!("F30".parse::<OrbitBase>().is_err());
        assert!("F2'".parse::<OrbitBase>().is_err());
        assert!("G4'".parse::<OrbitBase>().is_err());
    }

    #[test]
    fn label_rules() {
        assert!(OrbitLabel::new(OrbitBase::f(13).prime(), 3, Field::Complex).is_err());
        assert!(OrbitLabel::new(OrbitBase::g(0), 4, Field::Complex).is_err());
        assert!(OrbitLabel::new(OrbitBase::g(2), 4, Field::Real).is_ok());
        assert!(OrbitLabel::new(OrbitBase::g(3).prime(), 4, Field::Real).is_ok());
    }
}
