use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sigmacert::cert::{
    format::Coefficient, verify_text, verify_witness, CertError, Certificate, Check, Verdict,
};
use sigmacert::disk::CombinatorialDisk;
use sigmacert::group::{Character, Group};
use sigmacert::rips::{extend_equivariantly, Chain, Simplex, Valuation};
use sigmacert::search::{ConnectingVector, Flavor, Outcome, SearchBudget};
use sigmacert::sigma_hom::run_algorithm1;
use sigmacert::sigma_htpy::run_algorithm2;
use sigmacert::witness::{EdgePath, HomWitness, HtpyWitness, Witness};
use std::collections::BTreeMap;

fn z2() -> (Group, Character) {
    let g = Group::from_template("Z^2").unwrap();
    let chi = Character::from_integers(&g, &[1, 0]).unwrap();
    (g, chi)
}

fn hom_witness(g: &Group, chi: &Character, cv: &[usize]) -> HomWitness {
    let cv = ConnectingVector::new(cv.to_vec(), Flavor::Homological);
    match run_algorithm1(g, &cv, chi, &SearchBudget::default()).unwrap() {
        Outcome::Yes(w) => w,
        Outcome::Maybe(r) => panic!("{}", r.render(g)),
    }
}

fn htpy_witness(g: &Group, chi: &Character) -> HtpyWitness {
    let cv = ConnectingVector::new(vec![0, 1, 2], Flavor::Homotopical);
    match run_algorithm2(g, &cv, chi, &SearchBudget::default()).unwrap() {
        Outcome::Yes(w) => w,
        Outcome::Maybe(r) => panic!("{}", r.render(g)),
    }
}

fn s(g: &Group, words: &[&str]) -> Simplex {
    Simplex::new(words.iter().map(|w| g.element(w).unwrap()).collect())
}

fn rejected(v: Verdict) -> Check {
    match v {
        Verdict::Reject(r) => r.check,
        Verdict::Accept => panic!("expected a rejection"),
    }
}

#[test]
fn hom_round_trip() {
    let (g, chi) = z2();
    let w = Witness::Hom(hom_witness(&g, &chi, &[0, 1, 2]));
    let text = Certificate::encode(&g, &w).to_canonical_json();
    assert_eq!(verify_text(&g, &text).unwrap(), Verdict::Accept);
    let parsed = Certificate::from_json(&text).unwrap();
    assert_eq!(parsed.decode(&g).unwrap(), w);
    assert_eq!(parsed.to_canonical_json(), text);
}

#[test]
fn keys_are_sorted() {
    let (g, chi) = z2();
    let w = Witness::Hom(hom_witness(&g, &chi, &[0, 1]));
    let text = Certificate::encode(&g, &w).to_canonical_json();
    let top: Vec<usize> = [
        "\"character\"",
        "\"connecting_vector\"",
        "\"flavor\"",
        "\"format\"",
        "\"generators\"",
        "\"m\"",
        "\"n\"",
        "\"spec_hash\"",
        "\"t\"",
        "\"tables\"",
        "\"version\"",
    ]
    .iter()
    .map(|k| text.find(&format!("\n  {k}")).unwrap_or_else(|| panic!("missing {k}")))
    .collect();
    assert!(top.windows(2).all(|p| p[0] < p[1]));
}

#[test]
fn zero_dimensional_witness() {
    let (g, chi) = z2();
    let w = hom_witness(&g, &chi, &[0]);
    assert_eq!(w.tables.len(), 1);
    assert_eq!(w.tables[0][&s(&g, &[""])], Chain::simplex(s(&g, &["a"])));
    assert!(verify_witness(&g, &Witness::Hom(w)).is_accept());
}

#[test]
fn coefficient_mutations_are_rejected() {
    let (g, chi) = z2();
    let w = Witness::Hom(hom_witness(&g, &chi, &[0, 1, 2]));
    let cert = Certificate::encode(&g, &w);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let mut c = cert.clone();
        let tables = c.tables.as_mut().unwrap();
        let q = rng.gen_range(0..tables.len());
        let nonzero: Vec<usize> = (0..tables[q].len()).filter(|&i| !tables[q][i].image.is_empty()).collect();
        let entry = &mut tables[q][*nonzero.choose(&mut rng).unwrap()];
        let term = rng.gen_range(0..entry.image.len());
        let Coefficient::Small(k) = entry.image[term].0 else { unreachable!() };
        let delta = *[-2i64, -1, 1, 2].choose(&mut rng).unwrap();
        entry.image[term].0 = Coefficient::Small(k + delta);
        let check = rejected(verify_text(&g, &c.to_canonical_json()).unwrap());
        assert!(matches!(check, Check::Boundary | Check::Augmentation), "{check:?}");
    }
}

#[test]
fn long_simplex_in_an_image_is_a_support_violation() {
    let (g, chi) = z2();
    let mut w = hom_witness(&g, &chi, &[0, 1]);
    let x = s(&g, &["", "a"]);
    let mut y = w.tables[1][&x].clone();
    y.add_term(s(&g, &["a", "aab"]), BigInt::one());
    w.tables[1].insert(x, y);
    assert_eq!(rejected(verify_witness(&g, &Witness::Hom(w))), Check::Support);
}

#[test]
fn missing_and_extra_entries() {
    let (g, chi) = z2();
    let w = hom_witness(&g, &chi, &[0, 1]);
    let mut missing = w.clone();
    missing.tables[1].remove(&s(&g, &["", "b"]));
    assert_eq!(rejected(verify_witness(&g, &Witness::Hom(missing))), Check::Completeness);
    let mut extra = w;
    extra.tables[1].insert(s(&g, &["", "aa"]), Chain::zero(1));
    assert_eq!(rejected(verify_witness(&g, &Witness::Hom(extra))), Check::Completeness);
}

#[test]
fn wrong_spec_is_a_hash_error() {
    let (g, chi) = z2();
    let text = Certificate::encode(&g, &Witness::Hom(hom_witness(&g, &chi, &[0, 1]))).to_canonical_json();
    let other = Group::from_template("Z^2 x F_2").unwrap();
    assert!(matches!(verify_text(&other, &text), Err(CertError::HashMismatch { .. })));
    assert!(matches!(verify_text(&g, "{ not json"), Err(CertError::Json(_))));
}

#[test]
fn non_normal_words_are_rejected() {
    let (g, chi) = z2();
    let mut cert = Certificate::encode(&g, &Witness::Hom(hom_witness(&g, &chi, &[0, 1])));
    cert.t = "ba".into();
    assert_eq!(rejected(verify_text(&g, &cert.to_canonical_json()).unwrap()), Check::Malformed);
}

/// Checking representatives covers all translates: `φ(h·x) = h·φ(x)` satisfies
/// the boundary and raise conditions exactly when `φ(x)` does.
#[test]
fn representative_checks_cover_translates() {
    let (g, chi) = z2();
    let w = hom_witness(&g, &chi, &[0, 1, 2]);
    let phi = |q: usize, sigma: &Simplex| -> Chain {
        let (h, rep) = sigma.to_representative(&g);
        w.tables[q][&rep].translate(&g, &h)
    };
    let ball = g.ball(4);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let q = rng.gen_range(1..=2);
        let reps: Vec<&Simplex> = w.tables[q].keys().collect();
        let x = *reps.choose(&mut rng).unwrap();
        let h = ball.choose(&mut rng).unwrap();
        let hx = x.translate(&g, h);
        let image = phi(q, &hx);
        let faces = Chain::simplex(hx.clone()).boundary().unwrap();
        let lower: BTreeMap<Simplex, Chain> = faces
            .terms()
            .map(|(f, _)| (f.clone(), phi(q - 1, f)))
            .collect();
        let expected = extend_by_lookup(&faces, q - 1, &lower);
        assert_eq!(image.boundary().unwrap(), expected);
        assert_eq!(expected, extend_equivariantly(&g, &faces, q - 1, |f| w.tables[q - 1].get(f)).unwrap());
        if let Valuation::Finite(v) = image.valuation(&g, &chi) {
            let raise = v - hx.valuation(&g, &chi);
            assert!(raise.is_positive());
            let Valuation::Finite(v0) = w.tables[q][x].valuation(&g, &chi) else { unreachable!() };
            assert_eq!(raise, v0 - x.valuation(&g, &chi));
        }
    }
}

fn extend_by_lookup(c: &Chain, q: usize, table: &BTreeMap<Simplex, Chain>) -> Chain {
    let mut out = Chain::zero(q);
    for (f, k) in c.terms() {
        out.add_scaled(&table[f], k);
    }
    out
}

#[test]
fn forged_free_group_witness_is_rejected() {
    let g = Group::from_template("F_2").unwrap();
    let chi = Character::from_integers(&g, &[1, 0]).unwrap();
    let e = |w: &str| g.element(w).unwrap();
    let path = |ws: &[&str]| {
        let mut c = Chain::zero(1);
        for p in ws.windows(2) {
            c.add_term(s(&g, &[p[0], p[1]]), BigInt::one());
        }
        c
    };
    // ∂-compatible, but φ(1,b) has to dip to χ = 0
    let table1 = BTreeMap::from([
        (s(&g, &["", ""]), Chain::zero(1)),
        (s(&g, &["", "a"]), path(&["a", "aa"])),
        (s(&g, &["", "A"]), path(&["a", ""])),
        (s(&g, &["", "b"]), path(&["a", "", "b", "ba"])),
        (s(&g, &["", "B"]), path(&["a", "", "B", "Ba"])),
    ]);
    let w = HomWitness {
        spec_hash: g.spec_hash().to_string(),
        chi: chi.clone(),
        t: e("a"),
        n: 1,
        m: 1,
        connecting_vector: vec![0, 1],
        tables: vec![BTreeMap::from([(s(&g, &[""]), Chain::simplex(s(&g, &["a"])))]), table1],
    };
    assert_eq!(rejected(verify_witness(&g, &Witness::Hom(w))), Check::Raise);

    let paths = BTreeMap::from([
        (s(&g, &["", ""]), EdgePath { vertices: vec![e("a")] }),
        (s(&g, &["", "a"]), EdgePath { vertices: vec![e("a"), e("aa")] }),
        (s(&g, &["", "A"]), EdgePath { vertices: vec![e("a"), e("")] }),
        (s(&g, &["", "b"]), EdgePath { vertices: vec![e("a"), e("ba")] }),
        (s(&g, &["", "B"]), EdgePath { vertices: vec![e("a"), e("Ba")] }),
    ]);
    let htpy = HtpyWitness {
        spec_hash: g.spec_hash().to_string(),
        chi,
        t: e("a"),
        n: 1,
        connecting_vector: vec![0, 1, 1],
        paths,
        disks: BTreeMap::new(),
    };
    assert_eq!(rejected(verify_witness(&g, &Witness::Htpy(htpy))), Check::Completeness);
}

#[test]
fn htpy_round_trip_and_disks() {
    let (g, chi) = z2();
    let w = htpy_witness(&g, &chi);
    for d in w.disks.values() {
        d.check().unwrap();
        assert_eq!(d.euler_characteristic(), 1);
    }
    let w = Witness::Htpy(w);
    let text = Certificate::encode(&g, &w).to_canonical_json();
    assert_eq!(verify_text(&g, &text).unwrap(), Verdict::Accept);
    assert_eq!(Certificate::from_json(&text).unwrap().decode(&g).unwrap(), w);
}

#[test]
fn htpy_long_step_is_rejected() {
    let (g, chi) = z2();
    let mut w = htpy_witness(&g, &chi);
    let e = |x: &str| g.element(x).unwrap();
    w.paths.insert(
        s(&g, &["", "a"]),
        EdgePath { vertices: vec![e("a"), e("abbb"), e("aa")] },
    );
    assert_eq!(rejected(verify_witness(&g, &Witness::Htpy(w))), Check::StepTooLong);
}

#[test]
fn htpy_bad_disk_is_rejected() {
    let (g, chi) = z2();
    let mut w = htpy_witness(&g, &chi);
    let x = s(&g, &["", "a", "aa"]);
    let old = w.disks[&x].clone();
    let mut labels = old.labels.clone();
    labels.push(old.labels[0].clone());
    labels.push(old.labels[1].clone());
    let bad = CombinatorialDisk {
        labels,
        triangles: vec![[0, 1, 2], [0, 1, 3], [0, 1, 4]],
        boundary: old.boundary.clone(),
    };
    w.disks.insert(x, bad);
    assert_eq!(rejected(verify_witness(&g, &Witness::Htpy(w))), Check::NotADisk);
}

#[test]
fn htpy_disk_with_the_wrong_boundary_is_rejected() {
    let (g, chi) = z2();
    let mut w = htpy_witness(&g, &chi);
    let x = s(&g, &["", "a", "ab"]);
    let mut d = w.disks[&x].clone();
    d.labels.reverse();
    w.disks.insert(x, d);
    assert_eq!(rejected(verify_witness(&g, &Witness::Htpy(w))), Check::DiskBoundary);
}

#[test]
fn large_coefficients_survive_serialization() {
    let (g, chi) = z2();
    let mut w = hom_witness(&g, &chi, &[0, 1]);
    let x = s(&g, &["", "a"]);
    let mut y = w.tables[1][&x].clone();
    let big: BigInt = "123456789012345678901234567890".parse().unwrap();
    y.add_term(s(&g, &["a", "a"]), big.clone());
    w.tables[1].insert(x.clone(), y);
    let w = Witness::Hom(w);
    let text = Certificate::encode(&g, &w).to_canonical_json();
    assert!(text.contains("\"123456789012345678901234567890\""));
    let back = Certificate::from_json(&text).unwrap().decode(&g).unwrap();
    let Witness::Hom(h) = back else { unreachable!() };
    assert_eq!(h.tables[1][&x].coefficient(&s(&g, &["a", "a"])), big);
}

#[test]
fn same_input_same_bytes() {
    let (g, chi) = z2();
    let text = || Certificate::encode(&g, &Witness::Hom(hom_witness(&g, &chi, &[0, 1, 2]))).to_canonical_json();
    assert_eq!(text(), text());
}
