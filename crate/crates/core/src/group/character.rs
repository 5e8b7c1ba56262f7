use super::{Group, GroupElement, Letter};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("not a character: relations {0:?} are not annihilated")]
    Violations(Vec<String>),
    #[error("malformed character: {0}")]
    Malformed(String),
    #[error("the zero character is not allowed here")]
    Zero,
}

/// A homomorphism G → ℚ, stored by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    values: Vec<BigRational>,
    pub name: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct CharacterFile {
    values: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<BigRational, CharacterError> {
    let text = text.trim();
    let bad = || CharacterError::Malformed(format!("{text:?} is not a rational p/q"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// `p/q` in lowest terms, `p` for integers.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl Character {
    /// Accepts `values` iff every defining relation is annihilated.
    pub fn validate(group: &Group, values: Vec<BigRational>) -> Result<Character, CharacterError> {
        if values.len() != group.rank() {
            return Err(CharacterError::Malformed(format!(
                "expected {} values, got {}",
                group.rank(),
                values.len()
            )));
        }
        let violations: Vec<String> = group
            .relators()
            .into_iter()
            .filter(|(_, word)| !pairing(&group.word_exponents(word), &values).is_zero())
            .map(|(name, _)| name)
            .collect();
        if !violations.is_empty() {
            return Err(CharacterError::Violations(violations));
        }
        Ok(Character { values, name: None })
    }

    pub fn from_integers(group: &Group, values: &[i64]) -> Result<Character, CharacterError> {
        Character::validate(
            group,
            values.iter().map(|&v| BigRational::from_integer(v.into())).collect(),
        )
    }

    /// Parses `{"values": {"a": "1", "b": "1/2"}}`, `a=1,b=1/2` or `1,1/2`.
    pub fn parse(group: &Group, text: &str) -> Result<Character, CharacterError> {
        let text = text.trim();
        if text.starts_with('{') {
            let file: CharacterFile = serde_json::from_str(text)
                .map_err(|e| CharacterError::Malformed(e.to_string()))?;
            let mut chi = Character::from_value_map(group, &file.values)?;
            chi.name = file.name;
            return Ok(chi);
        }
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.iter().all(|p| p.contains('=')) {
            let mut values = vec![BigRational::zero(); group.rank()];
            let mut seen = vec![false; group.rank()];
            for p in parts {
                let (k, v) = p.split_once('=').unwrap();
                let idx = single_generator(group, k.trim())?;
                values[idx] = parse_rational(v)?;
                seen[idx] = true;
            }
            if let Some(i) = seen.iter().position(|s| !s) {
                return Err(CharacterError::Malformed(format!(
                    "missing value for generator {}",
                    group.generator_names()[i]
                )));
            }
            return Character::validate(group, values);
        }
        let values = parts
            .into_iter()
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        Character::validate(group, values)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// χ(g) = ⟨w(g), u(χ)⟩.
    pub fn eval(&self, group: &Group, g: &GroupElement) -> BigRational {
        self.eval_word(group, g.letters())
    }

    pub fn eval_word(&self, group: &Group, word: &[Letter]) -> BigRational {
        pairing(&group.word_exponents(word), &self.values)
    }

    /// χ scaled by a positive or negative rational.
    pub fn scaled(&self, factor: &BigRational) -> Character {
        Character {
            values: self.values.iter().map(|v| v * factor).collect(),
            name: None,
        }
    }

    pub fn to_json(&self, group: &Group) -> String {
        let file = CharacterFile {
            values: self.value_map(group),
            name: self.name.clone(),
        };
        serde_json::to_string(&file).expect("serialisable")
    }

    /// Generator name → `p/q` string.
    pub fn value_map(&self, group: &Group) -> BTreeMap<String, String> {
        group
            .generator_names()
            .iter()
            .zip(&self.values)
            .map(|(c, v)| (c.to_string(), format_rational(v)))
            .collect()
    }

    /// Inverse of [`Character::value_map`]; every generator must be present.
    pub fn from_value_map(
        group: &Group,
        map: &BTreeMap<String, String>,
    ) -> Result<Character, CharacterError> {
        let mut values = vec![None; group.rank()];
        for (k, v) in map {
            values[single_generator(group, k)?] = Some(parse_rational(v)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    CharacterError::Malformed(format!(
                        "missing value for generator {}",
                        group.generator_names()[i]
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Character::validate(group, values)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn single_generator(group: &Group, name: &str) -> Result<usize, CharacterError> {
    let mut chars = name.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => group
            .generator_names()
            .iter()
            .position(|&g| g == c)
            .ok_or_else(|| CharacterError::Malformed(format!("unknown generator {name:?}"))),
        _ => Err(CharacterError::Malformed(format!(
            "unknown generator {name:?}"
        ))),
    }
}

pub(crate) fn pairing(exponents: &[i64], values: &[BigRational]) -> BigRational {
    exponents
        .iter()
        .zip(values)
        .filter(|(e, _)| **e != 0)
        .map(|(e, v)| v * BigRational::from_integer(BigInt::from(*e)))
        .fold(BigRational::zero(), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn rationals() {
        assert_eq!(q("3/6"), q("1/2"));
        assert_eq!(format_rational(&q("-4/6")), "-2/3");
        assert_eq!(format_rational(&q("7")), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn z2_accepts_everything() {
        let g = Group::from_template("Z^2").unwrap();
        for v in [[1, 0], [0, 0], [-3, 7]] {
            Character::from_integers(&g, &v).unwrap();
        }
    }

    #[test]
    fn bs12_constraint() {
        let g = Group::from_template("BS(1,2)").unwrap();
        let err = Character::from_integers(&g, &[1, 0]).unwrap_err();
        assert!(matches!(err, CharacterError::Violations(ref v) if v.len() == 1));
        Character::from_integers(&g, &[0, 1]).unwrap();
    }

    #[test]
    fn evaluation_is_additive() {
        let g = Group::from_template("Z^2").unwrap();
        let chi = Character::from_integers(&g, &[1, 0]).unwrap();
        assert_eq!(chi.eval(&g, &g.identity()), q("0"));
        assert_eq!(chi.eval(&g, &g.element("ab").unwrap()), q("1"));
        let x = g.element("aaB").unwrap();
        assert_eq!(chi.eval(&g, &g.inverse(&x)), -chi.eval(&g, &x));
    }

    #[test]
    fn parse_forms() {
        let g = Group::from_template("Z^2").unwrap();
        let a = Character::parse(&g, r#"{"values":{"a":"1","b":"1/2"}}"#).unwrap();
        let b = Character::parse(&g, "a=1, b=1/2").unwrap();
        let c = Character::parse(&g, "1,1/2").unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert!(Character::parse(&g, "1").is_err());
        assert!(Character::parse(&g, "a=1").is_err());
        assert!(Character::parse(&g, "a=1,c=2").is_err());
        assert!(Character::parse(&g, "{oops").is_err());
        assert_eq!(Character::parse(&g, &a.to_json(&g)).unwrap(), a);
    }
}
