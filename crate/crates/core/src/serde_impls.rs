//! JSON-facing serde impls. Matrices are `{dim, lower}` with the lower
//! triangle row-major; rationals are `"p/q"` strings.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::theta::IterationRecord;
use crate::{DistanceProfile, Rational, RationalSymMatrix, SdpSolution, SdpStatus, SymMatrix};

pub(crate) fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn rational_from_str(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("bad rational {s:?}: {e}"))
}

#[derive(Serialize, Deserialize)]
struct FloatMatrixRepr {
    dim: usize,
    lower: Vec<f64>,
}

impl Serialize for SymMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FloatMatrixRepr {
            dim: self.dim(),
            lower: self.lower().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FloatMatrixRepr::deserialize(d)?;
        SymMatrix::from_lower(r.dim, r.lower).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalMatrixRepr {
    dim: usize,
    lower: Vec<String>,
}

impl Serialize for RationalSymMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalMatrixRepr {
            dim: self.dim(),
            lower: self.lower().iter().map(rational_to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalSymMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RationalMatrixRepr::deserialize(d)?;
        let lower = r
            .lower
            .iter()
            .map(|s| rational_from_str(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        RationalSymMatrix::from_lower(r.dim, lower).map_err(D::Error::custom)
    }
}

impl Serialize for DistanceProfile {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.values().iter().map(rational_to_string))
    }
}

impl<'de> Deserialize<'de> for DistanceProfile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let values = raw
            .iter()
            .map(|s| rational_from_str(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        DistanceProfile::new(values).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SdpSolutionRepr {
    value: f64,
    status: SdpStatus,
    gap: f64,
    iterations: Vec<IterationRecord>,
    x: SymMatrix,
}

impl Serialize for SdpSolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SdpSolutionRepr {
            value: self.value,
            status: self.status,
            gap: self.gap,
            iterations: self.iterations.clone(),
            x: self.x.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SdpSolution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SdpSolutionRepr::deserialize(d)?;
        Ok(SdpSolution {
            value: r.value,
            x: r.x,
            gap: r.gap,
            iterations: r.iterations,
            status: r.status,
        })
    }
}
