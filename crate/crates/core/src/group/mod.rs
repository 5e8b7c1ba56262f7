//! Finitely generated groups with a solvable word problem.
//!
//! Elements are canonical words over the generators and their formal inverses.
//! Generators are single lower-case ASCII letters; the upper-case letter is the
//! inverse, so `aB` means `a·b⁻¹`. The identity is the empty word, printed as
//! `1` in listings.

mod affine;
mod character;
mod rewriting;
mod spec;
mod window;

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::RwLock;

use thiserror::Error;

pub use character::{format_rational, parse_rational, Character, CharacterError};
pub(crate) use character::pairing;
pub use rewriting::{RewriteRule, RewritingSystem};
pub use spec::{Backend, GroupSpec};
pub use window::{HalfSpaceWindow, Level};

use affine::AffineBs;

/// Generator `i` is encoded as `2i` and its inverse as `2i + 1`, so the numeric
/// order is the shortlex letter order `a < A < b < B < …` (by generator order).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter(pub u8);

impl Letter {
    pub fn generator(index: usize) -> Letter {
        Letter((index as u8) << 1)
    }

    pub fn index(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// +1 for a generator, -1 for an inverse.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }
}

/// Shortlex comparison of words: shorter first, then lexicographic in letter order.
pub fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Word with every adjacent `x x⁻¹` pair cancelled.
pub fn free_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// A group element, stored as its canonical word. Ordering is shortlex.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GroupElement {
    word: Vec<Letter>,
}

impl GroupElement {
    pub fn letters(&self) -> &[Letter] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.word, &other.word)
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("unknown symbol {symbol:?} in word {word:?}")]
    UnknownSymbol { symbol: char, word: String },
    #[error("word {word:?} is not in normal form (normal form is {normal:?})")]
    NotNormal { word: String, normal: String },
    #[error("invalid generator name {0:?}: generators are distinct single lower-case letters")]
    InvalidGenerator(String),
    #[error("rule {lhs:?} -> {rhs:?} does not strictly decrease in shortlex order")]
    RuleNotDecreasing { lhs: String, rhs: String },
    #[error("rewriting system is not confluent: {word:?} reduces to both {left:?} and {right:?}")]
    NotConfluent {
        word: String,
        left: String,
        right: String,
    },
    #[error("unknown template {0:?}")]
    UnknownTemplate(String),
    #[error("malformed group spec: {0}")]
    Malformed(String),
}

enum Oracle {
    Rewriting(RewritingSystem),
    BaumslagSolitar(AffineBs),
}

#[derive(Default)]
struct BallCache {
    spheres: Vec<Vec<GroupElement>>,
    lengths: HashMap<GroupElement, usize>,
}

/// A loaded group: spec, word-problem oracle and a lazily grown ball cache.
///
/// All public operations take `&self`; the cache is internally synchronised so a
/// `Group` can be shared between worker threads.
pub struct Group {
    spec: GroupSpec,
    alphabet: Vec<char>,
    oracle: Oracle,
    hash: String,
    balls: RwLock<BallCache>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("generators", &self.spec.generators)
            .field("backend", &self.spec.backend)
            .finish()
    }
}

impl Group {
    /// Loads a spec, checking rule orientation and local confluence.
    pub fn new(spec: GroupSpec) -> Result<Group, GroupError> {
        let alphabet = spec::alphabet(&spec.generators)?;
        let oracle = match spec.backend {
            Backend::Rewriting => {
                let rules = spec
                    .rules
                    .iter()
                    .map(|(l, r)| Ok((parse_letters(&alphabet, l)?, parse_letters(&alphabet, r)?)))
                    .collect::<Result<Vec<_>, GroupError>>()?;
                let system = RewritingSystem::new(alphabet.len(), rules)
                    .map_err(|e| e.render(&alphabet))?;
                Oracle::Rewriting(system)
            }
            Backend::BaumslagSolitar { n } => {
                if alphabet.len() != 2 {
                    return Err(GroupError::Malformed(
                        "BS(1,n) needs exactly the generators a and t".into(),
                    ));
                }
                Oracle::BaumslagSolitar(AffineBs::new(n))
            }
        };
        let hash = spec.canonical_hash();
        Ok(Group {
            spec,
            alphabet,
            oracle,
            hash,
            balls: RwLock::new(BallCache::default()),
        })
    }

    pub fn from_template(name: &str) -> Result<Group, GroupError> {
        Group::new(GroupSpec::template(name)?)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Hex SHA-256 of the canonical spec serialisation.
    pub fn spec_hash(&self) -> &str {
        &self.hash
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    pub fn generator_names(&self) -> &[char] {
        &self.alphabet
    }

    /// All letters in shortlex letter order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..2 * self.rank() as u8).map(Letter)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::default()
    }

    pub fn generator(&self, index: usize) -> GroupElement {
        self.normal_form(&[Letter::generator(index)])
    }

    /// True when canonical words are shortlex-minimal, hence geodesic.
    pub fn normal_forms_are_geodesic(&self) -> bool {
        matches!(self.oracle, Oracle::Rewriting(_))
    }

    pub fn parse_word(&self, word: &str) -> Result<Vec<Letter>, GroupError> {
        if word == "1" {
            return Ok(Vec::new());
        }
        parse_letters(&self.alphabet, word)
    }

    /// Parses a raw word and returns its normal form.
    pub fn element(&self, word: &str) -> Result<GroupElement, GroupError> {
        Ok(self.normal_form(&self.parse_word(word)?))
    }

    /// Parses a word that must already be canonical.
    pub fn parse_canonical(&self, word: &str) -> Result<GroupElement, GroupError> {
        let letters = self.parse_word(word)?;
        let g = self.normal_form(&letters);
        if g.word != letters {
            return Err(GroupError::NotNormal {
                word: word.to_string(),
                normal: self.format(&g),
            });
        }
        Ok(g)
    }

    pub fn normal_form(&self, word: &[Letter]) -> GroupElement {
        let word = match &self.oracle {
            Oracle::Rewriting(sys) => sys.reduce(word),
            Oracle::BaumslagSolitar(bs) => bs.canonical(word),
        };
        GroupElement { word }
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        if g.is_identity() {
            return h.clone();
        }
        if h.is_identity() {
            return g.clone();
        }
        let mut w = Vec::with_capacity(g.word.len() + h.word.len());
        w.extend_from_slice(&g.word);
        w.extend_from_slice(&h.word);
        self.normal_form(&w)
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        let w: Vec<Letter> = g.word.iter().rev().map(|l| l.inverse()).collect();
        self.normal_form(&w)
    }

    /// `g⁻¹h`, the element measured by `d(g, h)`.
    pub fn quotient(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let mut w: Vec<Letter> = g.word.iter().rev().map(|l| l.inverse()).collect();
        w.extend_from_slice(&h.word);
        self.normal_form(&w)
    }

    /// Canonical word, empty for the identity.
    pub fn format(&self, g: &GroupElement) -> String {
        format_letters(&self.alphabet, &g.word)
    }

    /// Like [`Group::format`] but prints the identity as `1`.
    pub fn display(&self, g: &GroupElement) -> String {
        if g.is_identity() {
            "1".to_string()
        } else {
            self.format(g)
        }
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        format_letters(&self.alphabet, word)
    }

    /// Word length with respect to the generators. Terminates because balls are finite.
    pub fn word_length(&self, g: &GroupElement) -> usize {
        if self.normal_forms_are_geodesic() {
            return g.word.len();
        }
        let mut radius = 0;
        loop {
            self.ensure_radius(radius);
            if let Some(&l) = self.balls.read().unwrap().lengths.get(g) {
                return l;
            }
            radius += 1;
        }
    }

    pub fn distance(&self, g: &GroupElement, h: &GroupElement) -> usize {
        self.word_length(&self.quotient(g, h))
    }

    /// `d(g, h) ≤ k`, without computing lengths beyond `k`.
    pub fn within(&self, g: &GroupElement, h: &GroupElement, k: usize) -> bool {
        let x = self.quotient(g, h);
        if self.normal_forms_are_geodesic() {
            return x.word.len() <= k;
        }
        self.ensure_radius(k);
        self.balls
            .read()
            .unwrap()
            .lengths
            .get(&x)
            .is_some_and(|&l| l <= k)
    }

    /// Elements of word length exactly `radius`, shortlex sorted.
    pub fn sphere(&self, radius: usize) -> Vec<GroupElement> {
        self.ensure_radius(radius);
        self.balls.read().unwrap().spheres[radius].clone()
    }

    /// `{g : l(g) ≤ radius}`, ordered by length then shortlex.
    pub fn ball(&self, radius: usize) -> Vec<GroupElement> {
        self.ensure_radius(radius);
        let cache = self.balls.read().unwrap();
        cache.spheres[..=radius].iter().flatten().cloned().collect()
    }

    /// All `g·x` with `x` in the ball of the given radius, in the ball's order.
    pub fn translated_ball(&self, g: &GroupElement, radius: usize) -> Vec<GroupElement> {
        self.ball(radius)
            .iter()
            .map(|x| self.multiply(g, x))
            .collect()
    }

    fn ensure_radius(&self, radius: usize) {
        if self.balls.read().unwrap().spheres.len() > radius {
            return;
        }
        let mut cache = self.balls.write().unwrap();
        if cache.spheres.is_empty() {
            cache.spheres.push(vec![self.identity()]);
            cache.lengths.insert(self.identity(), 0);
        }
        while cache.spheres.len() <= radius {
            let r = cache.spheres.len();
            let mut next: HashSet<GroupElement> = HashSet::new();
            for g in &cache.spheres[r - 1] {
                for l in self.letters() {
                    let mut w = g.word.clone();
                    w.push(l);
                    let h = self.normal_form(&w);
                    if !cache.lengths.contains_key(&h) {
                        next.insert(h);
                    }
                }
            }
            let mut sphere: Vec<GroupElement> = next.into_iter().collect();
            sphere.sort();
            for h in &sphere {
                cache.lengths.insert(h.clone(), r);
            }
            cache.spheres.push(sphere);
        }
    }

    /// Exponent sums of the canonical word, one entry per generator.
    pub fn exponent_vector(&self, g: &GroupElement) -> Vec<i64> {
        exponent_sums(self.rank(), &g.word)
    }

    /// Exponent sums of an arbitrary word.
    pub fn word_exponents(&self, word: &[Letter]) -> Vec<i64> {
        exponent_sums(self.rank(), word)
    }

    /// The defining relations as words, used to test characters: rewriting rules
    /// `l → r` contribute `l r⁻¹`.
    pub fn relators(&self) -> Vec<(String, Vec<Letter>)> {
        self.spec
            .rules
            .iter()
            .map(|(l, r)| {
                let mut w = parse_letters(&self.alphabet, l).expect("validated at load");
                let rv = parse_letters(&self.alphabet, r).expect("validated at load");
                w.extend(rv.iter().rev().map(|x| x.inverse()));
                (format!("{l} -> {r}"), w)
            })
            .collect()
    }
}

fn exponent_sums(rank: usize, word: &[Letter]) -> Vec<i64> {
    let mut v = vec![0i64; rank];
    for l in word {
        v[l.index()] += l.sign();
    }
    v
}

pub(crate) fn parse_letters(alphabet: &[char], word: &str) -> Result<Vec<Letter>, GroupError> {
    word.chars()
        .map(|c| {
            let lower = c.to_ascii_lowercase();
            match alphabet.iter().position(|&a| a == lower) {
                Some(i) if c.is_ascii_lowercase() => Ok(Letter::generator(i)),
                Some(i) if c.is_ascii_uppercase() => Ok(Letter::generator(i).inverse()),
                _ => Err(GroupError::UnknownSymbol {
                    symbol: c,
                    word: word.to_string(),
                }),
            }
        })
        .collect()
}

pub(crate) fn format_letters(alphabet: &[char], word: &[Letter]) -> String {
    word.iter()
        .map(|l| {
            let c = alphabet[l.index()];
            if l.is_inverse() {
                c.to_ascii_uppercase()
            } else {
                c
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Group {
        Group::from_template("Z^2").unwrap()
    }

    #[test]
    fn free_reduction_is_implicit() {
        let g = z2();
        assert!(g.element("aA").unwrap().is_identity());
        assert!(g.element("Bb").unwrap().is_identity());
    }

    #[test]
    fn commuting_rule_sorts_letters() {
        let g = z2();
        assert_eq!(g.format(&g.element("ba").unwrap()), "ab");
        assert_eq!(g.format(&g.element("ab").unwrap()), "ab");
        assert_eq!(g.format(&g.element("BAba").unwrap()), "");
    }

    #[test]
    fn multiply_and_inverse() {
        let g = z2();
        let a = g.element("a").unwrap();
        let b = g.element("b").unwrap();
        let ab = g.multiply(&a, &b);
        assert_eq!(g.format(&ab), "ab");
        assert_eq!(g.format(&g.inverse(&ab)), "AB");
        assert!(g.multiply(&ab, &g.inverse(&ab)).is_identity());
    }

    #[test]
    fn unknown_symbol_rejected() {
        let g = z2();
        assert!(matches!(
            g.element("ac"),
            Err(GroupError::UnknownSymbol { symbol: 'c', .. })
        ));
        assert!(g.element("a1").is_err());
    }

    #[test]
    fn word_lengths() {
        let g = z2();
        assert_eq!(g.word_length(&g.identity()), 0);
        assert_eq!(g.word_length(&g.element("a").unwrap()), 1);
        assert_eq!(g.word_length(&g.element("ba").unwrap()), 2);
    }

    #[test]
    fn ball_sizes_z2() {
        let g = z2();
        let sizes: Vec<usize> = (0..=4).map(|r| g.ball(r).len()).collect();
        assert_eq!(sizes, vec![1, 5, 13, 25, 41]);
    }

    #[test]
    fn exponent_vectors() {
        let g = z2();
        assert_eq!(g.exponent_vector(&g.identity()), vec![0, 0]);
        assert_eq!(g.exponent_vector(&g.element("abA").unwrap()), vec![0, 1]);
        assert_eq!(g.exponent_vector(&g.element("aa").unwrap()), vec![2, 0]);
    }

    #[test]
    fn parse_canonical_rejects_unreduced() {
        let g = z2();
        assert!(g.parse_canonical("ab").is_ok());
        assert!(matches!(
            g.parse_canonical("ba"),
            Err(GroupError::NotNormal { .. })
        ));
    }

    #[test]
    fn shortlex_order_on_letters() {
        let g = z2();
        let mut s = g.sphere(1);
        s.sort();
        let words: Vec<String> = s.iter().map(|x| g.format(x)).collect();
        assert_eq!(words, vec!["a", "A", "b", "B"]);
    }
}
