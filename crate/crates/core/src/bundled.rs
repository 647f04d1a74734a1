//! Spec files shipped with the crate.

use crate::error::{Error, Result};
use crate::specfile::{ManifoldSpec, WarpedSpec};

macro_rules! spec {
    ($name:literal) => {
        ($name, include_str!(concat!("../specs/", $name, ".toml")))
    };
}

pub const MANIFOLDS: &[(&str, &str)] = &[
    spec!("r10"),
    spec!("r12"),
    spec!("flat10"),
    spec!("flat20"),
    spec!("flat22"),
    spec!("flat42"),
    spec!("odd02"),
    spec!("mixed12"),
    spec!("curved12"),
    spec!("hyperbolic2"),
];

pub const WARPED: &[(&str, &str)] = &[
    spec!("warped_r10_flat20"),
    spec!("warped_r10_flat42"),
    spec!("warped_r10_odd02"),
    spec!("warped_r12_mixed12"),
    spec!("warped_r10_curved12"),
    spec!("warped_r10_flat20_pfiber"),
    spec!("warped_r10_curved12_pfiber"),
];

pub fn manifold(name: &str) -> Result<ManifoldSpec> {
    MANIFOLDS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::SpecFormat(format!("no bundled manifold named '{name}'")))
        .and_then(|(_, src)| ManifoldSpec::from_toml(src))
}

pub fn warped(name: &str) -> Result<WarpedSpec> {
    let key = if name.starts_with("warped_") {
        name.to_string()
    } else {
        format!("warped_{name}")
    };
    WARPED
        .iter()
        .find(|(n, _)| *n == key)
        .ok_or_else(|| Error::SpecFormat(format!("no bundled warped product named '{name}'")))
        .and_then(|(_, src)| WarpedSpec::from_toml(src))
}

pub fn warped_all() -> Result<Vec<WarpedSpec>> {
    WARPED.iter().map(|(_, src)| WarpedSpec::from_toml(src)).collect()
}
