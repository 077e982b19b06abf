//! JSON encoding of complex matrices: row-major nested arrays of `[re, im]`.

use crate::numcore::CMatrix;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub fn to_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Accepts `[re, im]` pairs or bare real numbers as entries.
pub fn from_value(v: &serde_json::Value) -> Result<CMatrix, String> {
    let rows = v.as_array().ok_or("matrix must be an array of rows")?;
    let mut data: Vec<Vec<Complex64>> = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or("matrix row must be an array")?;
        let mut out = Vec::with_capacity(row.len());
        for e in row {
            out.push(entry(e)?);
        }
        data.push(out);
    }
    let cols = data.first().map_or(0, Vec::len);
    if data.iter().any(|r| r.len() != cols) {
        return Err("ragged matrix".into());
    }
    Ok(CMatrix::from_fn(data.len(), cols, |i, j| data[i][j]))
}

pub fn entry(e: &serde_json::Value) -> Result<Complex64, String> {
    if let Some(x) = e.as_f64() {
        return Ok(Complex64::new(x, 0.0));
    }
    match e.as_array().map(Vec::as_slice) {
        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
            _ => Err("complex entry must hold two numbers".into()),
        },
        _ => Err(format!("bad complex entry {e}")),
    }
}

pub fn serialize<S: Serializer>(m: &CMatrix, s: S) -> Result<S::Ok, S::Error> {
    to_rows(m).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CMatrix, D::Error> {
    let v = serde_json::Value::deserialize(d)?;
    from_value(&v).map_err(D::Error::custom)
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(ms: &[CMatrix], s: S) -> Result<S::Ok, S::Error> {
        ms.iter().map(to_rows).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<CMatrix>, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        v.iter()
            .map(|x| from_value(x).map_err(D::Error::custom))
            .collect()
    }
}

/// A single complex number as `[re, im]`.
pub mod scalar {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = CMatrix::from_fn(2, 3, |i, j| Complex64::new(i as f64, j as f64 - 1.0));
        let v = serde_json::to_value(to_rows(&m)).unwrap();
        assert_eq!(from_value(&v).unwrap(), m);
        let real = serde_json::json!([[1.0, 2.0]]);
        assert_eq!(from_value(&real).unwrap()[(0, 1)], Complex64::new(2.0, 0.0));
    }
}
