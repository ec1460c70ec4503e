//! JSON persistence for category data.
//!
//! Schema:
//! ```json
//! {
//!   "group": [m1, ...],
//!   "epsilon": [[1, -1, ...], ...],
//!   "eta": [0, 1, 2, ...],
//!   "A": [[[[re, im], ...], ...], ...],
//!   "d": 4.23606797749979,
//!   "manifest": { ... }
//! }
//! ```
//! Rows and columns follow canonical element order; `"A"` is indexed
//! `[g][h][k]` and may be absent.  Floats round-trip bit-identically.

use crate::abelian::FiniteAbelianGroup;
use crate::category::{dimension, ATensor, CategoryData, EpsilonTable, EtaTable};
use crate::manifest::RunManifest;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("file has no \"A\" tensor")]
    MissingTensor,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryJson {
    pub group: Vec<u32>,
    pub epsilon: Vec<Vec<i8>>,
    pub eta: Vec<u8>,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<Vec<[f64; 2]>>>>,
    pub d: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest: Option<RunManifest>,
}

pub fn category_to_json(c: &CategoryData, manifest: Option<RunManifest>) -> CategoryJson {
    let n = c.group.order();
    let a = c.tensor.as_ref().map(|t| {
        (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| {
                        (0..n)
                            .map(|k| {
                                let v = t.get(g, h, k);
                                [v.re, v.im]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    });
    CategoryJson {
        group: c.group.moduli().to_vec(),
        epsilon: c.eps.rows(),
        eta: c.eta.exponents().to_vec(),
        a,
        d: c.dim,
        manifest,
    }
}

pub fn category_from_json(j: &CategoryJson) -> Result<CategoryData, IoError> {
    if j.group.is_empty() || j.group.contains(&0) {
        return Err(IoError::Parse("invalid group moduli".into()));
    }
    let group = FiniteAbelianGroup::new(&j.group);
    let n = group.order();
    if j.epsilon.len() != n || j.epsilon.iter().any(|row| row.len() != n) {
        return Err(IoError::ShapeMismatch(format!(
            "epsilon must be {n}x{n}"
        )));
    }
    if j.epsilon
        .iter()
        .any(|row| row.iter().any(|&s| s != 1 && s != -1))
    {
        return Err(IoError::Parse("epsilon entries must be ±1".into()));
    }
    if j.eta.len() != n {
        return Err(IoError::ShapeMismatch(format!("eta must have {n} entries")));
    }
    if j.eta.iter().any(|&k| k > 2) {
        return Err(IoError::Parse("eta exponents live in {0,1,2}".into()));
    }
    let tensor = match &j.a {
        None => None,
        Some(a) => {
            let mut vals = Vec::with_capacity(n * n * n);
            if a.len() != n {
                return Err(IoError::ShapeMismatch(format!(
                    "A has {} g-slices, expected {n}",
                    a.len()
                )));
            }
            for gs in a {
                if gs.len() != n {
                    return Err(IoError::ShapeMismatch(format!(
                        "A slice has {} rows, expected {n}",
                        gs.len()
                    )));
                }
                for hs in gs {
                    if hs.len() != n {
                        return Err(IoError::ShapeMismatch(format!(
                            "A row has {} entries, expected {n}",
                            hs.len()
                        )));
                    }
                    for &[re, im] in hs {
                        vals.push(Complex64::new(re, im));
                    }
                }
            }
            Some(ATensor::new(n, vals).map_err(|e| IoError::ShapeMismatch(e.to_string()))?)
        }
    };
    let want_d = dimension(n);
    if (j.d - want_d).abs() > 1e-6 {
        return Err(IoError::Parse(format!(
            "d = {} does not solve d² = 1 + {n}d (expected {want_d})",
            j.d
        )));
    }
    let eps = EpsilonTable::from_rows(&j.epsilon)
        .map_err(|e| IoError::ShapeMismatch(e.to_string()))?;
    let eta = EtaTable::from_exponents(j.eta.clone());
    CategoryData::new(group, eps, eta, tensor).map_err(|e| IoError::ShapeMismatch(e.to_string()))
}

pub fn save_category(
    path: &Path,
    c: &CategoryData,
    manifest: Option<RunManifest>,
) -> Result<(), IoError> {
    let json = category_to_json(c, manifest);
    let text = serde_json::to_string_pretty(&json).map_err(|e| IoError::Parse(e.to_string()))?;
    std::fs::write(path, text)?;
    Ok(())
}

pub fn load_category(path: &Path) -> Result<CategoryData, IoError> {
    let text = std::fs::read_to_string(path)?;
    let json: CategoryJson =
        serde_json::from_str(&text).map_err(|e| IoError::Parse(e.to_string()))?;
    category_from_json(&json)
}

/// Loads just the tensor from a category file.  The caller is responsible
/// for running the axiom verifier on it.
pub fn load_tensor(path: &Path) -> Result<ATensor, IoError> {
    let c = load_category(path)?;
    c.tensor.ok_or(IoError::MissingTensor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn sample_category() -> CategoryData {
        let group = FiniteAbelianGroup::new(&[2, 2]);
        let mut t = ATensor::zeros(4);
        t.set(0, 0, 0, Complex64::new(0.123_456_789_123_456_78, -1e-17));
        t.set(1, 2, 3, Complex64::new(-0.5, 0.25));
        CategoryData::new(
            group,
            presets::epsilon_z2z2_paper(),
            EtaTable::trivial(4),
            Some(t),
        )
        .unwrap()
    }

    #[test]
    fn round_trip_is_bit_identical() {
        let c = sample_category();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.json");
        save_category(&path, &c, None).unwrap();
        let c2 = load_category(&path).unwrap();
        assert_eq!(
            c.tensor.as_ref().unwrap().values(),
            c2.tensor.as_ref().unwrap().values()
        );
        assert_eq!(c.eps, c2.eps);
        assert_eq!(c.eta, c2.eta);
    }

    #[test]
    fn trivial_group_single_entry() {
        let group = FiniteAbelianGroup::new(&[1]);
        let mut t = ATensor::zeros(1);
        t.set(0, 0, 0, Complex64::new(-0.618, 0.0));
        let c = CategoryData::new(
            group,
            EpsilonTable::all_ones(1),
            EtaTable::trivial(1),
            Some(t),
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("triv.json");
        save_category(&path, &c, None).unwrap();
        let tensor = load_tensor(&path).unwrap();
        assert_eq!(tensor.values().len(), 1);
    }

    #[test]
    fn wrong_entry_count_is_shape_mismatch() {
        let c = sample_category();
        let mut j = category_to_json(&c, None);
        j.a.as_mut().unwrap()[0][0].pop();
        let err = category_from_json(&j).unwrap_err();
        assert!(matches!(err, IoError::ShapeMismatch(_)), "{err}");
    }

    #[test]
    fn missing_tensor_reported() {
        let group = FiniteAbelianGroup::new(&[2, 2]);
        let c = CategoryData::new(
            group,
            presets::epsilon_z2z2_paper(),
            EtaTable::trivial(4),
            None,
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.json");
        save_category(&path, &c, None).unwrap();
        assert!(matches!(load_tensor(&path), Err(IoError::MissingTensor)));
    }

    #[test]
    fn bad_d_is_rejected() {
        let c = sample_category();
        let mut j = category_to_json(&c, None);
        j.d = 3.0;
        assert!(category_from_json(&j).is_err());
    }
}
