//! `presented.json` reading and writing. Words are lists of generator names.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Generator, Poly, PresentedHopf, Rule, TensorPoly, Word};
use crate::error::{invalid, Error, Result};
use crate::numkernel::c64;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyTerm {
    pub word: Vec<String>,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorTerm {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RuleEntry {
    pub lhs: Vec<String>,
    pub rhs: Vec<PolyTerm>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentedFile {
    pub generators: Vec<GeneratorEntry>,
    pub rules: Vec<RuleEntry>,
    pub delta: Vec<Vec<TensorTerm>>,
    pub eps: Vec<[f64; 2]>,
    pub antipode: Vec<Vec<PolyTerm>>,
    pub star: Vec<Vec<PolyTerm>>,
    pub cutoff: usize,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default)]
    pub tol: Option<f64>,
}

impl PresentedFile {
    /// Terms of a polynomial with words spelled by generator names.
    pub fn poly_terms(p: &PresentedHopf, x: &Poly) -> Vec<PolyTerm> {
        x.terms
            .iter()
            .map(|(w, c)| PolyTerm {
                word: w.iter().map(|&g| p.generators[g].name.clone()).collect(),
                re: c.re,
                im: c.im,
            })
            .collect()
    }

    /// Inverse of [`PresentedFile::poly_terms`]; the result is in normal form.
    pub fn poly_from_terms(p: &PresentedHopf, terms: &[PolyTerm]) -> Result<Poly> {
        let mut x = Poly::zero();
        for t in terms {
            let w = t
                .word
                .iter()
                .map(|n| {
                    p.generator_index(n)
                        .ok_or_else(|| invalid(format!("unknown generator `{n}`")))
                })
                .collect::<Result<Word>>()?;
            x.add_term(w, c64(t.re, t.im));
        }
        p.normal_form(&x.prune())
    }

    pub fn from_presented(p: &PresentedHopf) -> Self {
        let names = |w: &Word| -> Vec<String> {
            w.iter().map(|&g| p.generators[g].name.clone()).collect()
        };
        let poly = |x: &Poly| Self::poly_terms(p, x);
        PresentedFile {
            generators: p
                .generators
                .iter()
                .map(|g| GeneratorEntry {
                    name: g.name.clone(),
                    degree: g.degree,
                })
                .collect(),
            rules: p
                .rules
                .iter()
                .map(|r| RuleEntry {
                    lhs: names(&r.lhs),
                    rhs: poly(&r.rhs),
                })
                .collect(),
            delta: p
                .delta
                .iter()
                .map(|t| {
                    t.terms
                        .iter()
                        .map(|((l, r), c)| TensorTerm {
                            left: names(l),
                            right: names(r),
                            re: c.re,
                            im: c.im,
                        })
                        .collect()
                })
                .collect(),
            eps: p.eps.iter().map(|z| [z.re, z.im]).collect(),
            antipode: p.antipode.iter().map(poly).collect(),
            star: p.star.iter().map(poly).collect(),
            cutoff: p.cutoff,
            params: p.params.clone(),
            tol: Some(p.tol),
        }
    }

    pub fn into_presented(self) -> Result<PresentedHopf> {
        let generators: Vec<Generator> = self
            .generators
            .iter()
            .map(|g| Generator {
                name: g.name.clone(),
                degree: g.degree,
            })
            .collect();
        let word = |w: &[String], field: &str| -> Result<Word> {
            w.iter()
                .map(|n| {
                    generators
                        .iter()
                        .position(|g| &g.name == n)
                        .ok_or_else(|| invalid(format!("field `{field}` names unknown generator `{n}`")))
                })
                .collect()
        };
        let poly = |terms: &[PolyTerm], field: &str| -> Result<Poly> {
            let mut p = Poly::zero();
            for t in terms {
                p.add_term(word(&t.word, field)?, c64(t.re, t.im));
            }
            Ok(p)
        };
        let rules = self
            .rules
            .iter()
            .map(|r| {
                Ok(Rule {
                    lhs: word(&r.lhs, "rules")?,
                    rhs: poly(&r.rhs, "rules")?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let delta = self
            .delta
            .iter()
            .map(|terms| {
                let mut t = TensorPoly::default();
                for e in terms {
                    t.add_term(word(&e.left, "delta")?, word(&e.right, "delta")?, c64(e.re, e.im));
                }
                Ok(t)
            })
            .collect::<Result<Vec<_>>>()?;
        let antipode = self
            .antipode
            .iter()
            .map(|t| poly(t, "antipode"))
            .collect::<Result<Vec<_>>>()?;
        let star = self
            .star
            .iter()
            .map(|t| poly(t, "star"))
            .collect::<Result<Vec<_>>>()?;
        let eps = self.eps.iter().map(|&[a, b]| c64(a, b)).collect();
        let p = PresentedHopf::new(
            generators,
            rules,
            delta,
            eps,
            antipode,
            star,
            self.cutoff,
            self.params,
        )?;
        Ok(match self.tol {
            Some(t) if t > 0.0 => p.with_tol(t),
            Some(_) => return Err(invalid("field `tol` must be positive")),
            None => p,
        })
    }
}

pub fn to_json(p: &PresentedHopf) -> String {
    serde_json::to_string_pretty(&PresentedFile::from_presented(p)).expect("presentation serializes")
}

pub fn from_json(text: &str, origin: &str) -> Result<PresentedHopf> {
    let file: PresentedFile = serde_json::from_str(text).map_err(|source| Error::Json {
        path: origin.to_string(),
        source,
    })?;
    file.into_presented().map_err(|e| match e {
        Error::InvalidInput(msg) => Error::InvalidInput(format!("{origin}: {msg}")),
        other => other,
    })
}

pub fn load(path: &Path) -> Result<PresentedHopf> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    from_json(&text, &path.display().to_string())
}

pub fn save(p: &PresentedHopf, path: &Path) -> Result<()> {
    fs::write(path, to_json(p)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::suq2;

    #[test]
    fn round_trip() {
        let p = suq2(0.5, 6).unwrap();
        let q = from_json(&to_json(&p), "memory").unwrap();
        assert_eq!(q.generators, p.generators);
        assert_eq!(q.rules, p.rules);
        assert_eq!(q.antipode, p.antipode);
        assert_eq!(q.cutoff, 6);
        assert_eq!(q.params, p.params);
    }

    #[test]
    fn unknown_generator_is_named() {
        let p = suq2(0.5, 4).unwrap();
        let mut f = PresentedFile::from_presented(&p);
        f.rules[0].lhs[0] = "z".into();
        let err = f.into_presented().unwrap_err().to_string();
        assert!(err.contains("rules") && err.contains("`z`"), "{err}");
    }
}
