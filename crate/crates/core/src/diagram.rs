//! Persistence diagrams and their TSV/JSON formats.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::parse_value;
use crate::error::{Error, Result};
use crate::metric::content_lines;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramPoint {
    pub dim: usize,
    #[serde(with = "extended_real")]
    pub birth: f64,
    #[serde(with = "extended_real")]
    pub death: f64,
}

impl DiagramPoint {
    pub fn new(dim: usize, birth: f64, death: f64) -> Self {
        Self { dim, birth, death }
    }

    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    fn cmp_key(&self, other: &Self) -> std::cmp::Ordering {
        self.dim
            .cmp(&other.dim)
            .then(self.birth.total_cmp(&other.birth))
            .then(self.death.total_cmp(&other.death))
    }
}

/// Multiset of `(dim, birth, death)` points, kept sorted so that equality
/// is multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    points: Vec<DiagramPoint>,
}

impl PersistenceDiagram {
    pub fn new(mut points: Vec<DiagramPoint>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.birth.is_nan() || p.death.is_nan() || p.birth > p.death) {
            return Err(Error::InvalidParameter(format!("invalid diagram point {p:?}")));
        }
        points.sort_by(DiagramPoint::cmp_key);
        Ok(Self { points })
    }

    pub fn points(&self) -> &[DiagramPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points of one homological dimension.
    pub fn in_dim(&self, dim: usize) -> impl Iterator<Item = &DiagramPoint> + '_ {
        self.points.iter().filter(move |p| p.dim == dim)
    }

    pub fn restricted(&self, dim: usize) -> Self {
        Self { points: self.in_dim(dim).copied().collect() }
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.points.iter().map(|p| p.dim).max()
    }

    /// Number of points of dimension `dim` whose bar contains `[a, b]`,
    /// i.e. `birth <= a` and `death > b`.
    pub fn count_containing(&self, dim: usize, a: f64, b: f64) -> usize {
        self.in_dim(dim).filter(|p| p.birth <= a && p.death > b).count()
    }

    /// Moves every H₀ birth to `−∞`.
    pub fn with_h0_births_at_neg_infinity(&self) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| if p.dim == 0 { DiagramPoint { birth: f64::NEG_INFINITY, ..*p } } else { *p })
            .collect();
        Self::new(points).unwrap()
    }

    /// `dim birth death` lines with `inf` for an infinite death.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            writeln!(out, "{}\t{}\t{}", p.dim, fmt_value(p.birth), fmt_value(p.death)).unwrap();
        }
        out
    }

    pub fn parse_tsv(text: &str) -> Result<Self> {
        let points = content_lines(text)
            .map(|(line, l)| {
                let toks: Vec<&str> = l.split_whitespace().collect();
                let bad = |msg: String| Error::Parse { line, msg };
                if toks.len() != 3 {
                    return Err(bad("expected `dim birth death`".into()));
                }
                let dim = toks[0].parse().map_err(|e| bad(format!("bad dimension: {e}")))?;
                let birth = parse_value(toks[1]).ok_or_else(|| bad(format!("bad birth `{}`", toks[1])))?;
                let death = parse_value(toks[2]).ok_or_else(|| bad(format!("bad death `{}`", toks[2])))?;
                Ok(DiagramPoint { dim, birth, death })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    /// JSON array of `{dim, birth, death}` objects; infinities as `"inf"`/`"-inf"`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.points).unwrap()
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let points: Vec<DiagramPoint> = serde_json::from_value(value.clone())?;
        Self::new(points)
    }

    /// Reads either format, detected from the first non-blank character.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('[') {
            Self::from_json(&serde_json::from_str(text)?)
        } else {
            Self::parse_tsv(text)
        }
    }
}

pub(crate) fn fmt_value(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        v.to_string()
    }
}

pub(crate) mod extended_real {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() {
            s.serialize_str(&super::fmt_value(*v))
        } else {
            s.serialize_f64(*v)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(v),
            Raw::Text(t) => crate::complex::parse_value(&t).ok_or_else(|| de::Error::custom(format!("bad value `{t}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> PersistenceDiagram {
        PersistenceDiagram::new(vec![
            DiagramPoint::new(1, 1.0, 2.0),
            DiagramPoint::new(0, 0.0, f64::INFINITY),
            DiagramPoint::new(0, 0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn tsv_format() {
        let d = sample();
        assert_eq!(d.to_tsv(), "0\t0\t1\n0\t0\tinf\n1\t1\t2\n");
        assert_eq!(PersistenceDiagram::parse_tsv(&d.to_tsv()).unwrap(), d);
        assert!(PersistenceDiagram::parse_tsv("0 1\n").is_err());
        assert!(PersistenceDiagram::parse_tsv("0 2 1\n").is_err());
    }

    #[test]
    fn json_mirror() {
        let d = sample().with_h0_births_at_neg_infinity();
        let json = d.to_json();
        assert_eq!(json[0]["birth"], "-inf");
        assert_eq!(json[1]["death"], "inf");
        assert_eq!(PersistenceDiagram::from_json(&json).unwrap(), d);
        assert_eq!(PersistenceDiagram::parse_any(&json.to_string()).unwrap(), d);
    }

    #[test]
    fn containment_counts() {
        let d = sample();
        assert_eq!(d.count_containing(0, 0.5, 0.9), 2);
        assert_eq!(d.count_containing(0, 0.5, 1.0), 1);
        assert_eq!(d.count_containing(1, 1.0, 1.5), 1);
    }
}
