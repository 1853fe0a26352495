//! Named objects parsed from the embedded data directory, with the SHA-256
//! of every file checked against `data/SHA256SUMS`.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::groebner::Ideal;
use crate::poly::{Poly, Vars};
use crate::textio::{read_data_file, FileError};

pub struct DataEntry {
    pub name: &'static str,
    pub text: &'static str,
}

macro_rules! entry {
    ($name:literal) => {
        DataEntry { name: $name, text: include_str!(concat!("../../data/", $name)) }
    };
}

pub const DATA: &[DataEntry] = &[
    entry!("f-complex.poly"),
    entry!("f1.poly"),
    entry!("f2.poly"),
    entry!("goldens/groebner.txt"),
    entry!("goldens/series.txt"),
    entry!("h.poly"),
    entry!("hessian-locus.ideal"),
    entry!("ideal-c.ideal"),
    entry!("ideal-d.ideal"),
    entry!("ideal-gamma.ideal"),
    entry!("motzkin.poly"),
    entry!("motzkin-family.poly"),
    entry!("phi.map"),
    entry!("psi.map"),
];

const SUMS: &str = include_str!("../../data/SHA256SUMS");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("{file}: {source}")]
    File { file: String, source: FileError },
    #[error("{0}: hash mismatch")]
    Hash(String),
    #[error("{0}: no recorded hash")]
    MissingHash(String),
    #[error("{file}: {message}")]
    Shape { file: String, message: String },
    #[error("unknown object `{0}`")]
    Unknown(String),
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// `(file, recorded, actual)` for every embedded file.
pub fn hash_table() -> Vec<(&'static str, Option<String>, String)> {
    let recorded: BTreeMap<&str, &str> =
        SUMS.lines().filter_map(|l| l.split_once("  ")).map(|(h, f)| (f.trim(), h.trim())).collect();
    DATA.iter().map(|e| (e.name, recorded.get(e.name).map(|h| h.to_string()), sha256_hex(e.text))).collect()
}

pub fn data_text(name: &str) -> Option<&'static str> {
    DATA.iter().find(|e| e.name == name).map(|e| e.text)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Poly(Poly),
    Ideal(Ideal),
    /// A polynomial map; `images[i]` is the image of `source[i]`.
    Map {
        source: Vars,
        images: Vec<Poly>,
    },
}

#[derive(Clone, Debug)]
pub struct Catalog {
    objects: BTreeMap<String, Object>,
}

impl Catalog {
    pub fn load() -> Result<Self, CatalogError> {
        for (file, recorded, actual) in hash_table() {
            match recorded {
                None => return Err(CatalogError::MissingHash(file.into())),
                Some(h) if h != actual => return Err(CatalogError::Hash(file.into())),
                Some(_) => {}
            }
        }
        let mut objects = BTreeMap::new();
        for e in DATA {
            let Some((id, ext)) = e.name.rsplit_once('.') else { continue };
            let shape = |message: &str| CatalogError::Shape { file: e.name.into(), message: message.into() };
            let obj = match ext {
                "poly" | "ideal" | "map" => {
                    let f =
                        read_data_file(e.text).map_err(|source| CatalogError::File { file: e.name.into(), source })?;
                    match ext {
                        "poly" => match <[Poly; 1]>::try_from(f.polys) {
                            Ok([p]) => Object::Poly(p),
                            Err(_) => return Err(shape("expected exactly one polynomial")),
                        },
                        "ideal" => Object::Ideal(Ideal::new(&f.vars, f.polys).expect("parsed in one ring")),
                        _ => {
                            let source = f.source.ok_or_else(|| shape("map needs a `source:` header"))?;
                            if source.len() != f.polys.len() {
                                return Err(shape("one image per source variable"));
                            }
                            Object::Map { source, images: f.polys }
                        }
                    }
                }
                _ => continue,
            };
            objects.insert(id.to_string(), obj);
        }
        Ok(Self { objects })
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.objects.keys().map(String::as_str)
    }

    pub fn get(&self, id: &str) -> Result<&Object, CatalogError> {
        self.objects.get(id).ok_or_else(|| CatalogError::Unknown(id.into()))
    }

    pub fn poly(&self, id: &str) -> Poly {
        match self.get(id) {
            Ok(Object::Poly(p)) => p.clone(),
            _ => panic!("`{id}` is not a cataloged polynomial"),
        }
    }

    pub fn ideal(&self, id: &str) -> Ideal {
        match self.get(id) {
            Ok(Object::Ideal(i)) => i.clone(),
            _ => panic!("`{id}` is not a cataloged ideal"),
        }
    }

    /// Pulls `p` back along the cataloged map `id`.
    pub fn pullback(&self, id: &str, p: &Poly) -> Poly {
        match self.get(id) {
            Ok(Object::Map { source, images }) => {
                assert_eq!(p.vars(), source, "pullback of a polynomial in the wrong ring");
                p.compose(images).expect("images share one ring")
            }
            _ => panic!("`{id}` is not a cataloged map"),
        }
    }
}

/// Golden reduced bases: section name to variables and basis lines.
pub fn golden_bases() -> BTreeMap<String, (Vars, Vec<String>)> {
    let mut out = BTreeMap::new();
    let mut current: Option<String> = None;
    for line in data_text("goldens/groebner.txt").expect("embedded").lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let (name, vars) = rest.split_once("] vars:").expect("section header");
            out.insert(name.to_string(), (Vars::parse(vars), Vec::new()));
            current = Some(name.to_string());
        } else if let Some(name) = &current {
            out.get_mut(name).expect("section").1.push(line.to_string());
        }
    }
    out
}

/// Golden series values: `key: value` lines.
pub fn golden_series() -> BTreeMap<String, String> {
    data_text("goldens/series.txt")
        .expect("embedded")
        .lines()
        .filter_map(|l| l.split_once(": "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}
