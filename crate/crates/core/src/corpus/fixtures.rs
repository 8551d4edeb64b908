//! Fixture directories: `<dir>/hopf.json` or `<dir>/presented.json`,
//! `<dir>/coideals/*.json`, and `<dir>/manifest.json` with checksums.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{
    group_algebra, group_function_algebra, kac_paljutkin, kac_paljutkin_coideals,
    podles_nonstandard, podles_standard, subgroup_coideal, subgroup_name, suq2, GroupTable,
};
use crate::coideal::{coideal_entry, verify_coideal, CoidealSubalgebra};
use crate::cqgtools::peter_weyl;
use crate::error::{invalid, Error, Result};
use crate::hopfcore::io::{pairs_to_vector, vector_to_pairs};
use crate::hopfcore::{self, verify_hopf, FiniteHopfStar};
use crate::numkernel::{Subspace, Vector};
use crate::presented::{self, truncated_quotient, verify_laws, Poly, PolyTerm, PresentedHopf};

pub const BUILDER_VERSION: &str = concat!("hopfstar-corpus ", env!("CARGO_PKG_VERSION"));

/// Cutoff written into presented fixtures; commands may lower it.
pub const PRESENTED_CUTOFF: usize = 8;

/// Names accepted by [`build_fixture`].
pub const FIXTURE_NAMES: &[&str] = &[
    "z2",
    "z3",
    "z4",
    "s3",
    "d4",
    "group-algebra-s3",
    "kac-paljutkin",
    "suq2-q0.5",
    "suq2-q1",
];

/// A coideal stored as an orthonormal basis of vectors in `hopf.json`
/// coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoidealFile {
    /// sha256 of the parent `hopf.json`
    pub parent: String,
    pub name: String,
    pub basis: Vec<Vec<[f64; 2]>>,
}

/// A coideal of a presented algebra, given by generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentedCoidealFile {
    /// sha256 of the parent `presented.json`
    pub parent: String,
    pub name: String,
    pub generators: Vec<Vec<PolyTerm>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Manifest {
    pub name: String,
    pub builder_version: String,
    pub kind: String,
    /// file name relative to the fixture directory → sha256
    pub checksums: BTreeMap<String, String>,
    pub expected: BTreeMap<String, serde_json::Value>,
    pub residuals: BTreeMap<String, f64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn write(dir: &Path, rel: &str, text: &str, m: &mut Manifest) -> Result<()> {
    let path = dir.join(rel);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| io_err(parent, e))?;
    }
    fs::write(&path, text).map_err(|e| io_err(&path, e))?;
    m.checksums.insert(rel.to_string(), sha256_hex(text.as_bytes()));
    Ok(())
}

fn expect(m: &mut Manifest, key: &str, value: impl Serialize) {
    m.expected
        .insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
}

fn finite_fixture(
    name: &str,
    h: &FiniteHopfStar,
    coideals: &[(String, CoidealSubalgebra)],
    dir: &Path,
) -> Result<Manifest> {
    let mut m = Manifest {
        name: name.to_string(),
        builder_version: BUILDER_VERSION.to_string(),
        kind: "finite".into(),
        ..Default::default()
    };
    let laws = verify_hopf(h);
    if !laws.pass {
        return Err(Error::ConstructionFailure(format!("{name}: Hopf laws fail")));
    }
    for (k, v) in &laws.residuals {
        m.residuals.insert(format!("hopf.{k}"), *v);
    }
    let text = hopfcore::io::to_json(h);
    let parent = sha256_hex(text.as_bytes());
    write(dir, "hopf.json", &text, &mut m)?;
    expect(&mut m, "dim", h.dim());
    if let Ok(pw) = peter_weyl(h.coalgebra(), 0) {
        expect(&mut m, "blocks", pw.sizes());
    }
    let mut dims = BTreeMap::new();
    for (cname, a) in coideals {
        let entry = coideal_entry(&a.space, h);
        if !entry.pass {
            return Err(Error::ConstructionFailure(format!(
                "{name}: coideal {cname} fails verification"
            )));
        }
        for (k, v) in &entry.residuals {
            m.residuals.insert(format!("coideal.{cname}.{k}"), *v);
        }
        let file = CoidealFile {
            parent: parent.clone(),
            name: cname.clone(),
            basis: a.space.vectors().iter().map(vector_to_pairs).collect(),
        };
        let text = serde_json::to_string_pretty(&file).expect("coideal serializes");
        write(dir, &format!("coideals/{cname}.json"), &text, &mut m)?;
        dims.insert(cname.clone(), a.dim());
    }
    expect(&mut m, "coideal_dims", dims);
    Ok(m)
}

fn presented_fixture(
    name: &str,
    p: &PresentedHopf,
    coideals: &[(&str, Vec<Poly>)],
    dir: &Path,
) -> Result<Manifest> {
    let mut m = Manifest {
        name: name.to_string(),
        builder_version: BUILDER_VERSION.to_string(),
        kind: "presented".into(),
        ..Default::default()
    };
    let degree = 4.min(p.cutoff / 2);
    let laws = verify_laws(p, degree)?;
    for (k, v) in &laws.residuals {
        m.residuals.insert(format!("laws.{k}"), *v);
    }
    let text = presented::to_json(p);
    let parent = sha256_hex(text.as_bytes());
    write(dir, "presented.json", &text, &mut m)?;
    expect(&mut m, "cutoff", p.cutoff);
    expect(&mut m, "params", &p.params);
    let mut blocks = BTreeMap::new();
    for (cname, gens) in coideals {
        let check = presented::truncated_coideal_entry(p, gens, degree)?;
        if !check.pass {
            return Err(Error::ConstructionFailure(format!(
                "{name}: coideal {cname} fails verification"
            )));
        }
        for (k, v) in &check.residuals {
            m.residuals.insert(format!("coideal.{cname}.{k}"), *v);
        }
        let tq = truncated_quotient(p, gens, 4)?;
        if let Some(pw) = &tq.pw {
            blocks.insert(cname.to_string(), pw.sizes());
        }
        let file = PresentedCoidealFile {
            parent: parent.clone(),
            name: cname.to_string(),
            generators: gens
                .iter()
                .map(|g| presented::PresentedFile::poly_terms(p, g))
                .collect(),
        };
        let text = serde_json::to_string_pretty(&file).expect("coideal serializes");
        write(dir, &format!("coideals/{cname}.json"), &text, &mut m)?;
    }
    expect(&mut m, "quotient_blocks_degree_4", blocks);
    Ok(m)
}

fn subgroup_coideals(g: &GroupTable) -> Result<Vec<(String, CoidealSubalgebra)>> {
    g.subgroups()
        .into_iter()
        .map(|k| Ok((subgroup_name(g, &k), subgroup_coideal(g, &k)?)))
        .collect()
}

/// Group algebra coideals `ℂ[K]` for the subgroups `K`.
fn group_algebra_coideals(g: &GroupTable, h: &FiniteHopfStar) -> Result<Vec<(String, CoidealSubalgebra)>> {
    g.subgroups()
        .into_iter()
        .map(|k| {
            let vecs: Vec<Vector> = k.iter().map(|&x| h.basis(x)).collect();
            let space = Subspace::span(h.dim(), &vecs, h.tol())?;
            Ok((subgroup_name(g, &k), verify_coideal(&space, h)?))
        })
        .collect()
}

/// Build, verify and write the fixture `name` into `dir`.
pub fn build_fixture(name: &str, dir: &Path) -> Result<Manifest> {
    let manifest = match name {
        "z2" | "z3" | "z4" | "s3" | "d4" => {
            let g = match name {
                "z2" => GroupTable::cyclic(2)?,
                "z3" => GroupTable::cyclic(3)?,
                "z4" => GroupTable::cyclic(4)?,
                "s3" => GroupTable::symmetric3(),
                _ => GroupTable::dihedral4(),
            };
            let h = group_function_algebra(&g)?;
            finite_fixture(name, &h, &subgroup_coideals(&g)?, dir)?
        }
        "group-algebra-s3" => {
            let g = GroupTable::symmetric3();
            let h = group_algebra(&g)?;
            finite_fixture(name, &h, &group_algebra_coideals(&g, &h)?, dir)?
        }
        "kac-paljutkin" => {
            let h = kac_paljutkin()?;
            finite_fixture(name, &h, &kac_paljutkin_coideals()?, dir)?
        }
        "suq2-q0.5" | "suq2-q1" => {
            let q = if name == "suq2-q1" { 1.0 } else { 0.5 };
            let p = suq2(q, PRESENTED_CUTOFF)?;
            let coideals = vec![
                ("podles-standard", podles_standard(&p)?),
                ("podles-nonstandard", podles_nonstandard(&p, 1.0)?),
            ];
            presented_fixture(name, &p, &coideals, dir)?
        }
        other => {
            return Err(invalid(format!(
                "unknown corpus entry `{other}`; known: {}",
                FIXTURE_NAMES.join(", ")
            )))
        }
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    let path = dir.join("manifest.json");
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    fs::write(&path, text).map_err(|e| io_err(&path, e))?;
    Ok(manifest)
}

/// A loaded fixture directory.
#[derive(Clone, Debug)]
pub enum Fixture {
    Finite {
        dir: PathBuf,
        hopf: FiniteHopfStar,
        coideals: Vec<(String, CoidealSubalgebra)>,
    },
    Presented {
        dir: PathBuf,
        presented: PresentedHopf,
        coideals: Vec<(String, Vec<Poly>)>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn coideal_paths(dir: &Path) -> Result<Vec<PathBuf>> {
    let cdir = dir.join("coideals");
    if !cdir.is_dir() {
        return Ok(Vec::new());
    }
    let mut paths: Vec<PathBuf> = fs::read_dir(&cdir)
        .map_err(|e| io_err(&cdir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    Ok(paths)
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, path: &Path) -> Result<T> {
    serde_json::from_str(text).map_err(|source| Error::Json {
        path: path.display().to_string(),
        source,
    })
}

/// Load a fixture directory, checking the manifest checksums when present.
/// `tol` overrides the tolerance stored in the files.
pub fn load_fixture(dir: &Path, tol: Option<f64>) -> Result<Fixture> {
    if tol.is_some_and(|t| !(t > 0.0)) {
        return Err(invalid("tolerance must be positive"));
    }
    let manifest_path = dir.join("manifest.json");
    let manifest: Option<Manifest> = if manifest_path.is_file() {
        Some(parse(&read(&manifest_path)?, &manifest_path)?)
    } else {
        None
    };
    let checked_read = |path: &Path| -> Result<String> {
        let text = read(path)?;
        if let Some(m) = &manifest {
            let rel = path
                .strip_prefix(dir)
                .map(|p| p.to_string_lossy().replace('\\', "/"))
                .unwrap_or_default();
            if let Some(sum) = m.checksums.get(&rel) {
                if *sum != sha256_hex(text.as_bytes()) {
                    return Err(invalid(format!(
                        "{}: checksum does not match manifest.json",
                        path.display()
                    )));
                }
            }
        }
        Ok(text)
    };
    let hopf_path = dir.join("hopf.json");
    let presented_path = dir.join("presented.json");
    if hopf_path.is_file() {
        let text = checked_read(&hopf_path)?;
        let sum = sha256_hex(text.as_bytes());
        let mut hopf = hopfcore::io::from_json(&text, &hopf_path.display().to_string())?;
        if let Some(t) = tol {
            hopf = hopf.with_tol(t)?;
        }
        let mut coideals = Vec::new();
        for path in coideal_paths(dir)? {
            let file: CoidealFile = parse(&checked_read(&path)?, &path)?;
            if file.parent != sum {
                return Err(invalid(format!(
                    "{}: field `parent` does not match hopf.json",
                    path.display()
                )));
            }
            let vecs: Vec<Vector> = file.basis.iter().map(|v| pairs_to_vector(v)).collect();
            if vecs.iter().any(|v| v.len() != hopf.dim()) {
                return Err(invalid(format!(
                    "{}: field `basis` has vectors of the wrong length",
                    path.display()
                )));
            }
            let space = Subspace::span(hopf.dim(), &vecs, hopf.tol())?;
            coideals.push((file.name, verify_coideal(&space, &hopf)?));
        }
        Ok(Fixture::Finite {
            dir: dir.to_path_buf(),
            hopf,
            coideals,
        })
    } else if presented_path.is_file() {
        let text = checked_read(&presented_path)?;
        let sum = sha256_hex(text.as_bytes());
        let mut p = presented::from_json(&text, &presented_path.display().to_string())?;
        if let Some(t) = tol {
            p = p.with_tol(t);
        }
        let mut coideals = Vec::new();
        for path in coideal_paths(dir)? {
            let file: PresentedCoidealFile = parse(&checked_read(&path)?, &path)?;
            if file.parent != sum {
                return Err(invalid(format!(
                    "{}: field `parent` does not match presented.json",
                    path.display()
                )));
            }
            let gens = file
                .generators
                .iter()
                .map(|terms| presented::PresentedFile::poly_from_terms(&p, terms))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            coideals.push((file.name, gens));
        }
        Ok(Fixture::Presented {
            dir: dir.to_path_buf(),
            presented: p,
            coideals,
        })
    } else {
        Err(invalid(format!(
            "{}: neither hopf.json nor presented.json found",
            dir.display()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_round_trip() {
        let tmp = tempfile::tempdir().unwrap();
        for name in ["s3", "kac-paljutkin", "suq2-q0.5"] {
            let dir = tmp.path().join(name);
            let m = build_fixture(name, &dir).unwrap();
            assert_eq!(m.builder_version, BUILDER_VERSION);
            match load_fixture(&dir, None).unwrap() {
                Fixture::Finite { coideals, .. } => {
                    let dims = &m.expected["coideal_dims"];
                    for (n, a) in &coideals {
                        assert_eq!(dims[n.as_str()].as_u64().unwrap() as usize, a.dim());
                    }
                    if name == "s3" {
                        assert_eq!(coideals.len(), 6);
                    }
                }
                Fixture::Presented { coideals, presented, .. } => {
                    assert_eq!(coideals.len(), 2);
                    assert_eq!(presented.cutoff, PRESENTED_CUTOFF);
                }
            }
        }
    }

    #[test]
    fn tampering_is_detected() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path().join("z2");
        build_fixture("z2", &dir).unwrap();
        let path = dir.join("hopf.json");
        let text = fs::read_to_string(&path).unwrap().replacen("1.0", "2.0", 1);
        fs::write(&path, text).unwrap();
        let err = load_fixture(&dir, None).unwrap_err().to_string();
        assert!(err.contains("checksum"), "{err}");
    }

    #[test]
    fn unknown_name_is_rejected() {
        let tmp = tempfile::tempdir().unwrap();
        assert!(build_fixture("nope", tmp.path()).is_err());
    }
}
