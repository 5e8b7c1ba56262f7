//! The open cone of characters certified by a witness.
//!
//! Each entry `x ↦ image` contributes `min_{g ∈ image} ⟨w(g), y⟩ −
//! min_{g′ ∈ x} ⟨w(g′), y⟩`, and `u(y)` is the minimum over entries. The
//! certified set is `u > 0`.

use crate::group::pairing;
use crate::group::{Character, Group, GroupElement};
use crate::rips::Valuation;
use crate::witness::Witness;
use num_rational::BigRational;
use num_traits::Signed;
use std::collections::BTreeSet;
use std::fmt;

/// Source vertices and image vertices of each witness entry. Entries with an
/// empty image (the zero chain) impose nothing.
fn entries(group: &Group, witness: &Witness) -> Vec<(Vec<GroupElement>, Vec<GroupElement>)> {
    let mut out = Vec::new();
    match witness {
        Witness::Hom(w) => {
            for table in &w.tables {
                for (x, y) in table {
                    let image: Vec<GroupElement> = y.vertex_support().into_iter().collect();
                    if !image.is_empty() {
                        out.push((x.vertices().to_vec(), image));
                    }
                }
            }
        }
        Witness::Htpy(w) => {
            out.push((vec![group.identity()], vec![w.t.clone()]));
            for (x, p) in &w.paths {
                out.push((x.vertices().to_vec(), p.vertices.clone()));
            }
            for (x, d) in &w.disks {
                out.push((x.vertices().to_vec(), d.labels.clone()));
            }
        }
    }
    out
}

fn min_pairing(group: &Group, vertices: &[GroupElement], y: &[BigRational]) -> BigRational {
    vertices
        .iter()
        .map(|g| pairing(&group.exponent_vector(g), y))
        .min()
        .expect("nonempty vertex set")
}

/// `u(y)`, `+inf` only for a witness without constraining entries.
pub fn cone_eval(group: &Group, witness: &Witness, y: &Character) -> Valuation {
    entries(group, witness)
        .iter()
        .map(|(source, image)| {
            min_pairing(group, image, y.values()) - min_pairing(group, source, y.values())
        })
        .min()
        .map_or(Valuation::Infinite, Valuation::Finite)
}

pub fn cone_member(group: &Group, witness: &Witness, y: &Character) -> bool {
    match cone_eval(group, witness, y) {
        Valuation::Infinite => true,
        Valuation::Finite(u) => u.is_positive(),
    }
}

/// A conjunction over entries of disjunctions over clauses; a clause is a
/// conjunction of strict inequalities `⟨δ, y⟩ > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDescription {
    pub generators: Vec<char>,
    pub entries: Vec<Vec<Vec<Vec<i64>>>>,
}

/// `min_g ⟨w(g),y⟩ > min_{g′} ⟨w(g′),y⟩` holds iff some source vertex `g′`
/// has `⟨w(g) − w(g′), y⟩ > 0` for every image vertex `g`.
pub fn cone_describe(group: &Group, witness: &Witness) -> ConeDescription {
    let mut seen: BTreeSet<Vec<Vec<Vec<i64>>>> = BTreeSet::new();
    let mut described = Vec::new();
    for (source, image) in entries(group, witness) {
        let images: BTreeSet<Vec<i64>> = image.iter().map(|g| group.exponent_vector(g)).collect();
        let sources: BTreeSet<Vec<i64>> = source.iter().map(|g| group.exponent_vector(g)).collect();
        let mut clauses: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
        for s in &sources {
            let clause: BTreeSet<Vec<i64>> = images
                .iter()
                .map(|w| w.iter().zip(s).map(|(a, b)| a - b).collect())
                .collect();
            // ⟨0, y⟩ > 0 never holds
            if clause.iter().all(|d: &Vec<i64>| d.iter().any(|&x| x != 0)) {
                clauses.insert(clause.into_iter().collect());
            }
        }
        let entry: Vec<Vec<Vec<i64>>> = clauses.into_iter().collect();
        if seen.insert(entry.clone()) {
            described.push(entry);
        }
    }
    ConeDescription {
        generators: group.generator_names().to_vec(),
        entries: described,
    }
}

impl ConeDescription {
    pub fn satisfied_by(&self, y: &[BigRational]) -> bool {
        self.entries.iter().all(|clauses| {
            clauses.iter().any(|clause| {
                clause
                    .iter()
                    .all(|delta| pairing(delta, y).is_positive())
            })
        })
    }

    pub fn inequality_count(&self) -> usize {
        self.entries.iter().flatten().map(Vec::len).sum()
    }

    /// Some entry lost all its clauses to zero differences.
    pub fn is_unsatisfiable(&self) -> bool {
        self.entries.iter().any(Vec::is_empty)
    }
}

fn render_delta(generators: &[char], delta: &[i64]) -> String {
    let mut out = String::new();
    for (c, &x) in generators.iter().zip(delta) {
        if x == 0 {
            continue;
        }
        let sign = if x < 0 { "-" } else if out.is_empty() { "" } else { "+" };
        let magnitude = if x.abs() == 1 { String::new() } else { x.abs().to_string() };
        out.push_str(&format!("{sign}{magnitude}{c}"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for ConeDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|c| c.to_string()).collect();
        writeln!(
            f,
            "all of {} conditions on y = ({}), each a disjunction of strict inequalities:",
            self.entries.len(),
            gens.join(",")
        )?;
        for (i, clauses) in self.entries.iter().enumerate() {
            let parts: Vec<String> = clauses
                .iter()
                .map(|clause| {
                    let ineqs: Vec<String> = clause
                        .iter()
                        .map(|d| format!("{} > 0", render_delta(&self.generators, d)))
                        .collect();
                    format!("[{}]", ineqs.join(" and "))
                })
                .collect();
            if parts.is_empty() {
                writeln!(f, "  {}: false", i + 1)?;
            } else {
                writeln!(f, "  {}: {}", i + 1, parts.join(" or "))?;
            }
        }
        Ok(())
    }
}
