//! `hopf.json` reading and writing.
//!
//! Sparse tensors are lists of `{i, j, k, re, im}`; vectors are lists of
//! `[re, im]` pairs; matrices are row-major lists of such rows. The star is
//! stored as the matrix applied after conjugating coordinates.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{FiniteHopfStar, HopfData};
use crate::error::{invalid, Error, Result};
use crate::numkernel::{c64, Matrix, Tensor3, Vector};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HopfFile {
    pub dim: usize,
    pub labels: Vec<String>,
    pub tol: f64,
    pub mult: Vec<TensorEntry>,
    pub unit: Vec<[f64; 2]>,
    pub comult: Vec<TensorEntry>,
    pub counit: Vec<[f64; 2]>,
    pub antipode: Vec<Vec<[f64; 2]>>,
    pub star: Vec<Vec<[f64; 2]>>,
}

pub fn vector_to_pairs(v: &Vector) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn pairs_to_vector(p: &[[f64; 2]]) -> Vector {
    Vector::from_iterator(p.len(), p.iter().map(|&[a, b]| c64(a, b)))
}

pub fn matrix_to_rows(m: &Matrix) -> Vec<Vec<[f64; 2]>> {
    m.row_iter()
        .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn rows_to_matrix(rows: &[Vec<[f64; 2]>], n: usize, field: &str) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(invalid(format!("field `{field}` must be a {n}x{n} matrix")));
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        let [a, b] = rows[i][j];
        c64(a, b)
    }))
}

fn tensor_entries(t: &Tensor3) -> Vec<TensorEntry> {
    t.entries()
        .map(|(i, j, k, z)| TensorEntry {
            i,
            j,
            k,
            re: z.re,
            im: z.im,
        })
        .collect()
}

fn densify(entries: &[TensorEntry], n: usize, field: &str) -> Result<Tensor3> {
    let mut t = Tensor3::zeros(n, n, n);
    for e in entries {
        if e.i >= n || e.j >= n || e.k >= n {
            return Err(invalid(format!(
                "field `{field}` has index ({}, {}, {}) outside dimension {n}",
                e.i, e.j, e.k
            )));
        }
        t.add(e.i, e.j, e.k, c64(e.re, e.im));
    }
    Ok(t)
}

impl HopfFile {
    pub fn from_hopf(h: &FiniteHopfStar) -> Self {
        let d = h.data();
        HopfFile {
            dim: h.dim(),
            labels: d.labels.clone(),
            tol: d.tol,
            mult: tensor_entries(&d.mult),
            unit: vector_to_pairs(&d.unit),
            comult: tensor_entries(&d.comult),
            counit: vector_to_pairs(&d.counit),
            antipode: matrix_to_rows(&d.antipode),
            star: matrix_to_rows(&d.star),
        }
    }

    pub fn into_hopf(self) -> Result<FiniteHopfStar> {
        let n = self.dim;
        if self.labels.len() != n {
            return Err(invalid(format!("field `labels` must have {n} entries")));
        }
        for (name, v) in [("unit", &self.unit), ("counit", &self.counit)] {
            if v.len() != n {
                return Err(invalid(format!("field `{name}` must have {n} entries")));
            }
        }
        FiniteHopfStar::new(HopfData {
            labels: self.labels,
            mult: densify(&self.mult, n, "mult")?,
            unit: pairs_to_vector(&self.unit),
            comult: densify(&self.comult, n, "comult")?,
            counit: pairs_to_vector(&self.counit),
            antipode: rows_to_matrix(&self.antipode, n, "antipode")?,
            star: rows_to_matrix(&self.star, n, "star")?,
            tol: self.tol,
        })
    }
}

pub fn to_json(h: &FiniteHopfStar) -> String {
    serde_json::to_string_pretty(&HopfFile::from_hopf(h)).expect("hopf file serializes")
}

pub fn from_json(text: &str, origin: &str) -> Result<FiniteHopfStar> {
    let file: HopfFile = serde_json::from_str(text).map_err(|source| Error::Json {
        path: origin.to_string(),
        source,
    })?;
    file.into_hopf().map_err(|e| match e {
        Error::InvalidInput(msg) => Error::InvalidInput(format!("{origin}: {msg}")),
        other => other,
    })
}

pub fn load(path: &Path) -> Result<FiniteHopfStar> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    from_json(&text, &path.display().to_string())
}

pub fn save(h: &FiniteHopfStar, path: &Path) -> Result<()> {
    fs::write(path, to_json(h)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
