//! Certificate files: a versioned JSON document with sorted keys.
//!
//! Group elements are written as canonical normal-form words (`""` is the
//! identity). Chain coefficients are JSON integers, or decimal strings when
//! they do not fit in 64 bits.

use super::{Check, Rejection};
use crate::disk::CombinatorialDisk;
use crate::group::{Character, Group, GroupElement};
use crate::rips::{Chain, Simplex};
use crate::witness::{EdgePath, Flavor, HomWitness, HtpyWitness, Witness};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub const FORMAT_NAME: &str = "sigmacert";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CertError {
    #[error("certificate is not valid JSON for this format: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported certificate format {format:?} version {version}")]
    Format { format: String, version: u32 },
    #[error("certificate was made for spec hash {found}, the given spec hashes to {expected}")]
    HashMismatch { expected: String, found: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Small(i64),
    Big(String),
}

impl Coefficient {
    fn from_bigint(k: &BigInt) -> Coefficient {
        match k.to_i64() {
            Some(x) => Coefficient::Small(x),
            None => Coefficient::Big(k.to_string()),
        }
    }

    fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Coefficient::Small(x) => Some(BigInt::from(*x)),
            Coefficient::Big(s) => s.parse().ok(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term(pub Coefficient, pub Vec<String>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub simplex: Vec<String>,
    pub image: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathEntry {
    pub simplex: Vec<String>,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskEntry {
    pub simplex: Vec<String>,
    pub labels: Vec<String>,
    pub triangles: Vec<[usize; 3]>,
    pub boundary: Vec<usize>,
}

/// The certificate document as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub format: String,
    pub version: u32,
    pub spec_hash: String,
    pub generators: Vec<String>,
    pub character: BTreeMap<String, String>,
    pub t: String,
    pub n: usize,
    pub m: usize,
    pub flavor: String,
    pub connecting_vector: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<Vec<Vec<TableEntry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paths: Option<Vec<PathEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disks: Option<Vec<DiskEntry>>,
}

fn words(group: &Group, elements: &[GroupElement]) -> Vec<String> {
    elements.iter().map(|g| group.format(g)).collect()
}

impl Certificate {
    pub fn encode(group: &Group, witness: &Witness) -> Certificate {
        let mut cert = Certificate {
            format: FORMAT_NAME.to_string(),
            version: FORMAT_VERSION,
            spec_hash: witness.spec_hash().to_string(),
            generators: group.generator_names().iter().map(|c| c.to_string()).collect(),
            character: witness.chi().value_map(group),
            t: group.format(witness.t()),
            n: witness.n(),
            m: witness.m(),
            flavor: witness.flavor().name().to_string(),
            connecting_vector: witness.connecting_vector().to_vec(),
            tables: None,
            paths: None,
            disks: None,
        };
        match witness {
            Witness::Hom(w) => {
                cert.tables = Some(
                    w.tables
                        .iter()
                        .map(|table| {
                            table
                                .iter()
                                .map(|(x, y)| TableEntry {
                                    simplex: words(group, x.vertices()),
                                    image: y
                                        .terms()
                                        .map(|(s, k)| {
                                            Term(Coefficient::from_bigint(k), words(group, s.vertices()))
                                        })
                                        .collect(),
                                })
                                .collect()
                        })
                        .collect(),
                );
            }
            Witness::Htpy(w) => {
                cert.paths = Some(
                    w.paths
                        .iter()
                        .map(|(x, p)| PathEntry {
                            simplex: words(group, x.vertices()),
                            path: words(group, &p.vertices),
                        })
                        .collect(),
                );
                cert.disks = Some(
                    w.disks
                        .iter()
                        .map(|(x, d)| DiskEntry {
                            simplex: words(group, x.vertices()),
                            labels: words(group, &d.labels),
                            triangles: d.triangles.clone(),
                            boundary: d.boundary.clone(),
                        })
                        .collect(),
                );
            }
        }
        cert
    }

    /// Pretty-printed JSON with keys in sorted order and a trailing newline.
    pub fn to_canonical_json(&self) -> String {
        // going through Value sorts object keys
        let value = serde_json::to_value(self).expect("certificates serialise");
        let mut text = serde_json::to_string_pretty(&value).expect("values serialise");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Certificate, CertError> {
        let cert: Certificate = serde_json::from_str(text)?;
        if cert.format != FORMAT_NAME || cert.version != FORMAT_VERSION {
            return Err(CertError::Format {
                format: cert.format,
                version: cert.version,
            });
        }
        Ok(cert)
    }

    pub fn check_hash(&self, group: &Group) -> Result<(), CertError> {
        if self.spec_hash != group.spec_hash() {
            return Err(CertError::HashMismatch {
                expected: group.spec_hash().to_string(),
                found: self.spec_hash.clone(),
            });
        }
        Ok(())
    }

    /// Turns the document into a witness, rejecting words that are not in
    /// normal form and bodies that do not match the flavor.
    pub fn decode(&self, group: &Group) -> Result<Witness, Rejection> {
        let malformed = |detail: String| Rejection::new(Check::Malformed, detail);
        let names: Vec<String> = group.generator_names().iter().map(|c| c.to_string()).collect();
        if self.generators != names {
            return Err(malformed(format!(
                "generators {:?} differ from the spec's {:?}",
                self.generators, names
            )));
        }
        let element = |w: &String| {
            group
                .parse_canonical(w)
                .map_err(|e| malformed(format!("word {w:?}: {e}")))
        };
        let elements = |ws: &[String]| ws.iter().map(element).collect::<Result<Vec<_>, _>>();
        let simplex = |ws: &[String]| {
            if ws.is_empty() {
                return Err(malformed("empty simplex".into()));
            }
            Ok(Simplex::new(elements(ws)?))
        };
        let chi = Character::from_value_map(group, &self.character)
            .map_err(|e| Rejection::new(Check::Header, format!("character: {e}")))?;
        let t = element(&self.t)?;
        let flavor = Flavor::from_name(&self.flavor)
            .ok_or_else(|| malformed(format!("unknown flavor {:?}", self.flavor)))?;

        match flavor {
            Flavor::Homological => {
                let (Some(tables), None, None) = (&self.tables, &self.paths, &self.disks) else {
                    return Err(malformed("a homological certificate carries exactly `tables`".into()));
                };
                let mut decoded = Vec::with_capacity(tables.len());
                for (q, table) in tables.iter().enumerate() {
                    let mut map = BTreeMap::new();
                    for entry in table {
                        let x = simplex(&entry.simplex)?;
                        if x.dim() != q {
                            return Err(malformed(format!(
                                "simplex {} listed in degree {q}",
                                x.display(group)
                            )));
                        }
                        let mut y = Chain::zero(q);
                        for Term(k, ws) in &entry.image {
                            let s = simplex(ws)?;
                            if s.dim() != q {
                                return Err(malformed(format!(
                                    "image of {} contains {} of the wrong dimension",
                                    x.display(group),
                                    s.display(group)
                                )));
                            }
                            let k = k
                                .to_bigint()
                                .ok_or_else(|| malformed(format!("bad coefficient {k:?}")))?;
                            y.add_term(s, k);
                        }
                        if map.insert(x.clone(), y).is_some() {
                            return Err(malformed(format!("{} listed twice", x.display(group))));
                        }
                    }
                    decoded.push(map);
                }
                Ok(Witness::Hom(HomWitness {
                    spec_hash: self.spec_hash.clone(),
                    chi,
                    t,
                    n: self.n,
                    m: self.m,
                    connecting_vector: self.connecting_vector.clone(),
                    tables: decoded,
                }))
            }
            Flavor::Homotopical => {
                let (None, Some(paths), Some(disks)) = (&self.tables, &self.paths, &self.disks) else {
                    return Err(malformed(
                        "a homotopical certificate carries exactly `paths` and `disks`".into(),
                    ));
                };
                let mut path_map = BTreeMap::new();
                for entry in paths {
                    let x = simplex(&entry.simplex)?;
                    let vertices = elements(&entry.path)?;
                    if x.dim() != 1 || vertices.is_empty() {
                        return Err(malformed(format!("bad path entry for {}", x.display(group))));
                    }
                    if path_map.insert(x.clone(), EdgePath { vertices }).is_some() {
                        return Err(malformed(format!("{} listed twice", x.display(group))));
                    }
                }
                let mut disk_map = BTreeMap::new();
                for entry in disks {
                    let x = simplex(&entry.simplex)?;
                    if x.dim() != 2 {
                        return Err(malformed(format!("bad disk entry for {}", x.display(group))));
                    }
                    let disk = CombinatorialDisk {
                        labels: elements(&entry.labels)?,
                        triangles: entry.triangles.clone(),
                        boundary: entry.boundary.clone(),
                    };
                    if disk_map.insert(x.clone(), disk).is_some() {
                        return Err(malformed(format!("{} listed twice", x.display(group))));
                    }
                }
                Ok(Witness::Htpy(HtpyWitness {
                    spec_hash: self.spec_hash.clone(),
                    chi,
                    t,
                    n: self.n,
                    connecting_vector: self.connecting_vector.clone(),
                    paths: path_map,
                    disks: disk_map,
                }))
            }
        }
    }
}
