//! Example categories shipped with the crate.

use super::validate::validate;
use super::{FusionData, FusionError};
use crate::Tolerance;

const SOURCES: &[(&str, &str)] = &[
    ("hilb", include_str!("../../data/hilb.json")),
    ("z2", include_str!("../../data/z2.json")),
    ("z3", include_str!("../../data/z3.json")),
    ("fibonacci", include_str!("../../data/fibonacci.json")),
    ("ising", include_str!("../../data/ising.json")),
    ("matrix2_hilb", include_str!("../../data/matrix2_hilb.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parse a bundled category and re-check it before handing it out.
pub fn load(name: &str) -> Result<FusionData, FusionError> {
    let src = source(name).ok_or_else(|| FusionError::UnknownLabel(name.to_string()))?;
    let data = FusionData::from_json_str(src)?;
    let cert = validate(&data, &Tolerance::default());
    if !cert.accept {
        return Err(FusionError::Invalid(format!("bundled `{name}`: {}", cert.failures.join(", "))));
    }
    Ok(data)
}

fn get(name: &str) -> FusionData {
    load(name).unwrap_or_else(|e| panic!("{e}"))
}

pub fn hilb() -> FusionData {
    get("hilb")
}

pub fn z2() -> FusionData {
    get("z2")
}

pub fn z3() -> FusionData {
    get("z3")
}

pub fn fibonacci() -> FusionData {
    get("fibonacci")
}

pub fn ising() -> FusionData {
    get("ising")
}

/// `M_2(Hilb)` with simples `e_ij`.
pub fn matrix2_hilb() -> FusionData {
    get("matrix2_hilb")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bundled_validate() {
        for name in names() {
            let data = FusionData::from_json_str(source(name).unwrap()).unwrap();
            let cert = validate(&data, &Tolerance::default());
            assert!(cert.accept, "{name}: {:?}", cert.failures);
            assert!(cert.pentagon_residual < 1e-8, "{name}");
        }
    }
}
