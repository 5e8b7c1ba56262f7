//! Independent certificate checking. Only group arithmetic, chains and disks
//! are used here; nothing from the search modules.

use super::format::{CertError, Certificate};
use super::{Check, Rejection};
use crate::disk::collapse_stutter;
use crate::group::{Group, GroupElement};
use crate::rips::{enumerate_rep_simplices, extend_equivariantly, Chain, Simplex, Valuation};
use crate::witness::{EdgePath, HomWitness, HtpyWitness, Witness};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(Rejection),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => f.write_str("accept"),
            Verdict::Reject(r) => write!(f, "reject: {r}"),
        }
    }
}

/// Parses, checks the spec hash and verifies.
pub fn verify_text(group: &Group, text: &str) -> Result<Verdict, CertError> {
    let cert = Certificate::from_json(text)?;
    verify_certificate(group, &cert)
}

pub fn verify_certificate(group: &Group, cert: &Certificate) -> Result<Verdict, CertError> {
    cert.check_hash(group)?;
    Ok(match cert.decode(group) {
        Ok(w) => verify_witness(group, &w),
        Err(r) => Verdict::Reject(r),
    })
}

pub fn verify_witness(group: &Group, witness: &Witness) -> Verdict {
    let result = match witness {
        Witness::Hom(w) => verify_hom_witness(group, w),
        Witness::Htpy(w) => verify_htpy_witness(group, w),
    };
    match result {
        Ok(()) => Verdict::Accept,
        Err(r) => Verdict::Reject(r),
    }
}

/// Runs `check` over all items in parallel and returns the first failure in
/// item order.
fn first_failure<T: Sync>(
    items: &[T],
    check: impl Fn(&T) -> Result<(), Rejection> + Sync,
) -> Result<(), Rejection> {
    let failures: Vec<Option<Rejection>> = items.par_iter().map(|x| check(x).err()).collect();
    match failures.into_iter().flatten().next() {
        Some(r) => Err(r),
        None => Ok(()),
    }
}

fn complete<V>(
    group: &Group,
    table: &BTreeMap<Simplex, V>,
    q: usize,
    n: usize,
) -> Result<(), Rejection> {
    let reps = enumerate_rep_simplices(group, q, n);
    if let Some(x) = reps.iter().find(|x| !table.contains_key(x)) {
        return Err(Rejection::at(
            Check::Completeness,
            format!("no entry in degree {q}"),
            x.display(group),
        ));
    }
    if table.len() != reps.len() {
        let extra = table
            .keys()
            .find(|x| reps.binary_search(x).is_err())
            .expect("more keys than representatives");
        return Err(Rejection::at(
            Check::Completeness,
            "entry for a simplex that is not an n-small representative".into(),
            extra.display(group),
        ));
    }
    Ok(())
}

fn header(group: &Group, t: &GroupElement, chi_t: &BigRational, cv: &[usize], m: usize) -> Result<(), Rejection> {
    if !chi_t.is_positive() {
        return Err(Rejection::new(
            Check::Header,
            format!("χ(t) = {} is not positive for t = {}", chi_t, group.display(t)),
        ));
    }
    if cv.len() != m + 1 {
        return Err(Rejection::new(
            Check::Header,
            format!("connecting vector has {} entries for m = {m}", cv.len()),
        ));
    }
    Ok(())
}

/// Checks completeness, n-smallness, augmentation, boundary compatibility and
/// the strict valuation raise on every representative entry.
pub fn verify_hom_witness(group: &Group, w: &HomWitness) -> Result<(), Rejection> {
    let chi = &w.chi;
    header(group, &w.t, &chi.eval(group, &w.t), &w.connecting_vector, w.m)?;
    if w.tables.len() != w.m + 1 {
        return Err(Rejection::new(
            Check::Completeness,
            format!("{} tables for m = {}", w.tables.len(), w.m),
        ));
    }
    for (q, table) in w.tables.iter().enumerate() {
        complete(group, table, q, w.n)?;
    }
    let unit = Simplex::new(vec![group.identity()]);
    let aug = w.tables[0][&unit].augmentation().expect("degree 0");
    if aug != BigInt::one() {
        return Err(Rejection::at(
            Check::Augmentation,
            format!("augmentation is {aug}, expected 1"),
            unit.display(group),
        ));
    }
    for (q, table) in w.tables.iter().enumerate() {
        let entries: Vec<(&Simplex, &Chain)> = table.iter().collect();
        first_failure(&entries, |&(x, y)| {
            let locus = || x.display(group);
            if !y.is_k_small(group, w.n) {
                return Err(Rejection::at(
                    Check::Support,
                    format!("image contains a simplex of diameter above n = {}", w.n),
                    locus(),
                ));
            }
            if q > 0 {
                let boundary = Chain::simplex(x.clone()).boundary().expect("q ≥ 1");
                let expected = extend_equivariantly(group, &boundary, q - 1, |s| w.tables[q - 1].get(s))
                    .map_err(|s| {
                        Rejection::at(
                            Check::Completeness,
                            format!("no entry for the face representative {}", s.display(group)),
                            locus(),
                        )
                    })?;
                if y.boundary().expect("q ≥ 1") != expected {
                    return Err(Rejection::at(
                        Check::Boundary,
                        "∂φ(x) differs from φ(∂x)".into(),
                        locus(),
                    ));
                }
            }
            if let Valuation::Finite(v) = y.valuation(group, chi) {
                let raise = v - x.valuation(group, chi);
                if !raise.is_positive() {
                    return Err(Rejection::at(
                        Check::Raise,
                        format!("valuation raise {raise} is not positive"),
                        locus(),
                    ));
                }
            }
            Ok(())
        })?;
    }
    Ok(())
}

fn translate_path(group: &Group, paths: &BTreeMap<Simplex, EdgePath>, a: &GroupElement, b: &GroupElement) -> Vec<GroupElement> {
    let rep = Simplex::new(vec![group.identity(), group.quotient(a, b)]);
    paths[&rep].vertices.iter().map(|v| group.multiply(a, v)).collect()
}

fn expected_loop(group: &Group, paths: &BTreeMap<Simplex, EdgePath>, x: &Simplex) -> Vec<GroupElement> {
    let v = x.vertices();
    let mut out = translate_path(group, paths, &v[0], &v[1]);
    out.extend(translate_path(group, paths, &v[1], &v[2]).into_iter().skip(1));
    out.extend(translate_path(group, paths, &v[0], &v[2]).into_iter().rev().skip(1));
    if out.len() > 1 {
        out.pop();
    }
    out
}

fn strict_raise(
    group: &Group,
    w: &HtpyWitness,
    x: &Simplex,
    labels: &[GroupElement],
) -> Result<(), Rejection> {
    let low = labels
        .iter()
        .map(|g| w.chi.eval(group, g))
        .min()
        .expect("nonempty labels");
    let raise = low - x.valuation(group, &w.chi);
    if raise.is_positive() {
        Ok(())
    } else {
        Err(Rejection::at(
            Check::Raise,
            format!("valuation raise {raise} is not positive"),
            x.display(group),
        ))
    }
}

/// Checks completeness, path endpoints and step lengths, the disk
/// conditions, boundary agreement with the face paths, n-smallness of every
/// triangle and the strict valuation raise.
pub fn verify_htpy_witness(group: &Group, w: &HtpyWitness) -> Result<(), Rejection> {
    let chi_t = w.chi.eval(group, &w.t);
    header(group, &w.t, &chi_t, &w.connecting_vector, 2)?;
    complete(group, &w.paths, 1, w.n)?;
    complete(group, &w.disks, 2, w.n)?;

    let paths: Vec<(&Simplex, &EdgePath)> = w.paths.iter().collect();
    first_failure(&paths, |&(x, p)| {
        let locus = || x.display(group);
        let target = group.multiply(&x.vertices()[1], &w.t);
        let (first, last) = (&p.vertices[0], p.vertices.last().unwrap());
        if first != &w.t || last != &target {
            return Err(Rejection::at(
                Check::PathEndpoints,
                format!(
                    "path runs from {} to {}, expected {} to {}",
                    group.display(first),
                    group.display(last),
                    group.display(&w.t),
                    group.display(&target)
                ),
                locus(),
            ));
        }
        if let Some(step) = p.vertices.windows(2).find(|s| !group.within(&s[0], &s[1], w.n)) {
            return Err(Rejection::at(
                Check::StepTooLong,
                format!(
                    "step {} → {} has length {}",
                    group.display(&step[0]),
                    group.display(&step[1]),
                    group.distance(&step[0], &step[1])
                ),
                locus(),
            ));
        }
        strict_raise(group, w, x, &p.vertices)
    })?;

    let disks: Vec<_> = w.disks.iter().collect();
    first_failure(&disks, |&(x, d)| {
        let locus = || x.display(group);
        d.check()
            .map_err(|e| Rejection::at(Check::NotADisk, e.to_string(), locus()))?;
        let expected = collapse_stutter(&expected_loop(group, &w.paths, x));
        if collapse_stutter(&d.boundary_labels()) != expected {
            return Err(Rejection::at(
                Check::DiskBoundary,
                "boundary labels differ from the loop of face paths".into(),
                locus(),
            ));
        }
        for t in &d.triangles {
            let [a, b, c] = t.map(|i| &d.labels[i]);
            if !(group.within(a, b, w.n) && group.within(b, c, w.n) && group.within(a, c, w.n)) {
                return Err(Rejection::at(
                    Check::Support,
                    format!("triangle {t:?} is not {}-small", w.n),
                    locus(),
                ));
            }
        }
        strict_raise(group, w, x, &d.labels)
    })
}
