//! TOML manifold and warped-product spec files.
//!
//! ```toml
//! name = "r12"
//! metric_parity = "even"
//! coordinates = [
//!   { name = "t", parity = "even" },
//!   { name = "xi", parity = "odd" },
//!   { name = "eta", parity = "odd" },
//! ]
//!
//! [metric]
//! "t,t" = "-1"
//! "xi,eta" = "-1"
//!
//! [assumptions]
//! h = { gt = 0 }
//!
//! [P]
//! t = "1"
//! ```
//!
//! Omitted metric entries are zero. When only one of `(i,j)` and `(j,i)` is
//! given, the other is completed by graded symmetry; when both are given
//! they are checked against each other when the manifold is built.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geometry::{Chart, Coord, Manifold, VectorField};
use crate::graded::SuperScalar;
use crate::parity::{koszul, Parity};
use crate::scalar::{parse_expr, Assumptions};

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct IntervalSpec {
    pub gt: Option<f64>,
    pub lt: Option<f64>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ManifoldSpec {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub metric_parity: Parity,
    pub coordinates: Vec<Coord>,
    #[serde(default)]
    pub metric: BTreeMap<String, String>,
    #[serde(default)]
    pub assumptions: BTreeMap<String, IntervalSpec>,
    /// Coefficients of the structure field `P`, keyed by coordinate.
    #[serde(default, rename = "P")]
    pub p: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum FactorSpec {
    /// Name of a bundled spec.
    Bundled(String),
    Inline(Box<ManifoldSpec>),
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum PLocation {
    Base,
    Fiber,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PSpec {
    pub location: PLocation,
    #[serde(default)]
    pub coefficients: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct WarpedSpec {
    #[serde(default)]
    pub name: String,
    pub base: FactorSpec,
    pub fiber: FactorSpec,
    /// Warping function, an expression in the base's even coordinates.
    pub h: String,
    #[serde(default, rename = "P")]
    pub p: Option<PSpec>,
}

fn toml_err(e: toml::de::Error) -> Error {
    Error::SpecFormat(e.to_string())
}

impl ManifoldSpec {
    pub fn from_toml(src: &str) -> Result<Self> {
        toml::from_str(src).map_err(toml_err)
    }

    pub fn chart(&self) -> Result<Chart> {
        Chart::new(self.coordinates.clone())
    }

    pub fn assumptions(&self) -> Assumptions {
        let mut a = Assumptions::new();
        for (name, iv) in &self.assumptions {
            a.declare(
                name,
                iv.gt.unwrap_or(f64::NEG_INFINITY),
                iv.lt.unwrap_or(f64::INFINITY),
            );
        }
        a
    }

    /// Reads the metric matrix, completing absent transposed entries.
    pub fn metric_matrix(&self, chart: &Chart) -> Result<Vec<Vec<SuperScalar>>> {
        let n = chart.dim();
        let mut given: Vec<Vec<Option<SuperScalar>>> = vec![vec![None; n]; n];
        for (key, value) in &self.metric {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| Error::SpecFormat(format!("metric key '{key}' must be 'i,j'")))?;
            let i = chart.index(a.trim())?;
            let j = chart.index(b.trim())?;
            let e = parse_expr(value)?;
            given[i][j] = Some(chart.lift_expr(&e)?);
        }
        let mut g = vec![vec![SuperScalar::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                g[i][j] = match (&given[i][j], &given[j][i]) {
                    (Some(v), _) => v.clone(),
                    (None, Some(v)) => v.signed(koszul(chart.parity(i), chart.parity(j))),
                    (None, None) => SuperScalar::zero(),
                };
            }
        }
        Ok(g)
    }

    pub fn build(&self) -> Result<Manifold> {
        let chart = self.chart()?;
        let g = self.metric_matrix(&chart)?;
        Manifold::new(chart, g, self.metric_parity, self.assumptions())
    }

    pub fn build_unchecked(&self) -> Result<Manifold> {
        let chart = self.chart()?;
        let g = self.metric_matrix(&chart)?;
        Ok(Manifold::new_unchecked(chart, g, self.metric_parity, self.assumptions()))
    }

    pub fn p_field(&self, chart: &Chart) -> Result<Option<VectorField>> {
        match &self.p {
            None => Ok(None),
            Some(coeffs) => field_from_map(chart, coeffs).map(Some),
        }
    }
}

/// A vector field from coefficient expressions keyed by coordinate name.
pub fn field_from_map(chart: &Chart, coeffs: &BTreeMap<String, String>) -> Result<VectorField> {
    let mut c = vec![SuperScalar::zero(); chart.dim()];
    for (name, src) in coeffs {
        let i = chart.index(name)?;
        c[i] = chart.lift_expr(&parse_expr(src)?)?;
    }
    VectorField::new(chart, c)
}

/// Parses the compact field syntax `t=1, xi=eta` (coordinate = expression).
pub fn parse_field(chart: &Chart, src: &str) -> Result<VectorField> {
    let mut map = BTreeMap::new();
    for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::SpecFormat(format!("field component '{part}' must be 'coord=expr'")))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    field_from_map(chart, &map)
}

impl WarpedSpec {
    pub fn from_toml(src: &str) -> Result<Self> {
        toml::from_str(src).map_err(toml_err)
    }
}

impl FactorSpec {
    pub fn resolve(&self) -> Result<ManifoldSpec> {
        match self {
            FactorSpec::Inline(m) => Ok((**m).clone()),
            FactorSpec::Bundled(name) => crate::bundled::manifold(name),
        }
    }
}

/// Either kind of spec file, detected by its top-level keys.
#[derive(Clone, Debug)]
pub enum AnySpec {
    Manifold(ManifoldSpec),
    Warped(WarpedSpec),
}

pub fn parse_any(src: &str) -> Result<AnySpec> {
    let value: toml::Table = src.parse().map_err(toml_err)?;
    if value.contains_key("base") || value.contains_key("fiber") {
        WarpedSpec::from_toml(src).map(AnySpec::Warped)
    } else {
        ManifoldSpec::from_toml(src).map(AnySpec::Manifold)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const R12: &str = r#"
        name = "r12"
        coordinates = [
          { name = "t", parity = "even" },
          { name = "xi", parity = "odd" },
          { name = "eta", parity = "odd" },
        ]
        [metric]
        "t,t" = "-1"
        "xi,eta" = "-1"
    "#;

    #[test]
    fn completes_by_graded_symmetry() {
        let spec = ManifoldSpec::from_toml(R12).unwrap();
        let m = spec.build().unwrap();
        assert_eq!(m.entry(2, 1), &SuperScalar::int(1));
        assert_eq!(m.entry(1, 2), &SuperScalar::int(-1));
    }

    #[test]
    fn rejects_asymmetric_entries() {
        let src = R12.replace("\"xi,eta\" = \"-1\"", "\"xi,eta\" = \"-1\"\n\"eta,xi\" = \"-1\"");
        let err = ManifoldSpec::from_toml(&src).unwrap().build().unwrap_err();
        assert!(matches!(err, Error::GradedSymmetry { .. }), "{err}");
    }

    #[test]
    fn rejects_wrong_degree_entries() {
        let src = R12.replace("\"t,t\" = \"-1\"", "\"t,t\" = \"-1\"\n\"t,xi\" = \"1\"");
        let err = ManifoldSpec::from_toml(&src).unwrap().build().unwrap_err();
        assert!(matches!(err, Error::ParityHomogeneity { .. }), "{err}");
    }

    #[test]
    fn rejects_singular_body() {
        let src = R12.replace("\"t,t\" = \"-1\"", "\"t,t\" = \"0\"");
        let err = ManifoldSpec::from_toml(&src).unwrap().build().unwrap_err();
        assert!(matches!(err, Error::SingularBody(_)), "{err}");
    }

    #[test]
    fn field_syntax() {
        let chart = ManifoldSpec::from_toml(R12).unwrap().chart().unwrap();
        let p = parse_field(&chart, "t=1").unwrap();
        assert_eq!(p, VectorField::frame(&chart, 0));
        assert_eq!(parse_field(&chart, "t=xi").unwrap().parity(), Parity::Odd);
        assert!(parse_field(&chart, "t=1, xi=1").is_err());
    }
}
