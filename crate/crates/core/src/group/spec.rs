//! Group spec files and built-in templates.
//!
//! A spec file is JSON:
//!
//! ```json
//! { "generators": ["a", "b"], "rules": [["ba", "ab"], ["bA", "Ab"], ["Ba", "aB"], ["BA", "AB"]] }
//! ```
//!
//! or a template shortcut such as `{ "template": "Z^2" }`, `{ "template": "F_2" }`,
//! `{ "template": "Z^2 x F_2" }` or `{ "template": "BS(1,2)" }`.

use super::GroupError;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    /// Shortlex rewriting rules plus implicit free reductions.
    Rewriting,
    /// ⟨a, t | t a t⁻¹ = aⁿ⟩ solved through its affine representation.
    BaumslagSolitar { n: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub generators: Vec<String>,
    /// Rewriting rules `(lhs, rhs)`. For BS(1,n) the single defining relation.
    pub rules: Vec<(String, String)>,
    pub backend: Backend,
    pub template: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    #[serde(default)]
    generators: Option<Vec<String>>,
    #[serde(default)]
    rules: Option<Vec<(String, String)>>,
    #[serde(default)]
    template: Option<String>,
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<GroupSpec, GroupError> {
        let raw: RawSpec =
            serde_json::from_str(text).map_err(|e| GroupError::Malformed(e.to_string()))?;
        match (raw.template, raw.generators) {
            (Some(t), None) if raw.rules.is_none() => GroupSpec::template(&t),
            (Some(_), _) => Err(GroupError::Malformed(
                "a template spec cannot also list generators or rules".into(),
            )),
            (None, Some(generators)) => Ok(GroupSpec {
                generators,
                rules: raw.rules.unwrap_or_default(),
                backend: Backend::Rewriting,
                template: None,
            }),
            (None, None) => Err(GroupError::Malformed(
                "spec needs either `generators` or `template`".into(),
            )),
        }
    }

    pub fn to_json(&self) -> String {
        let value = match &self.template {
            Some(t) => serde_json::json!({ "template": t }),
            None => serde_json::json!({ "generators": self.generators, "rules": self.rules }),
        };
        serde_json::to_string_pretty(&value).expect("serialisable")
    }

    /// Built-in presentations: `Z^n`, `F_n`, products joined by `x`, and `BS(1,n)`.
    pub fn template(name: &str) -> Result<GroupSpec, GroupError> {
        let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(n) = compact
            .strip_prefix("BS(1,")
            .and_then(|s| s.strip_suffix(')'))
        {
            let n: u32 = n
                .parse()
                .map_err(|_| GroupError::UnknownTemplate(name.to_string()))?;
            if n == 0 {
                return Err(GroupError::UnknownTemplate(name.to_string()));
            }
            return Ok(GroupSpec {
                generators: vec!["a".into(), "t".into()],
                rules: vec![("taT".into(), "a".repeat(n as usize))],
                backend: Backend::BaumslagSolitar { n },
                template: Some(compact),
            });
        }
        // factors: (number of generators, free abelian?)
        let mut factors: Vec<(usize, bool)> = Vec::new();
        for part in compact.split(['x', '×']) {
            let (abelian, rest) = match part.chars().next() {
                Some('Z') => (true, &part[1..]),
                Some('F') => (false, &part[1..]),
                _ => return Err(GroupError::UnknownTemplate(name.to_string())),
            };
            let digits = rest.trim_start_matches(['^', '_']);
            let k: usize = if digits.is_empty() && abelian {
                1
            } else {
                digits
                    .parse()
                    .map_err(|_| GroupError::UnknownTemplate(name.to_string()))?
            };
            if k == 0 {
                return Err(GroupError::UnknownTemplate(name.to_string()));
            }
            if abelian {
                factors.extend(std::iter::repeat_n((1, true), k));
            } else {
                factors.push((k, false));
            }
        }
        let total: usize = factors.iter().map(|f| f.0).sum();
        if total > 26 {
            return Err(GroupError::UnknownTemplate(name.to_string()));
        }
        let generators: Vec<String> = (0..total)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        // generators in later factors commute past those in earlier ones
        let mut factor_of = Vec::new();
        for (f, (k, _)) in factors.iter().enumerate() {
            factor_of.extend(std::iter::repeat_n(f, *k));
        }
        let mut rules = Vec::new();
        for j in 0..total {
            for i in 0..j {
                if factor_of[i] == factor_of[j] {
                    continue;
                }
                let x = generators[i].clone();
                let y = generators[j].clone();
                let (xi, yi) = (x.to_uppercase(), y.to_uppercase());
                for (yy, xx) in [(&y, &x), (&y, &xi), (&yi, &x), (&yi, &xi)] {
                    rules.push((format!("{yy}{xx}"), format!("{xx}{yy}")));
                }
            }
        }
        Ok(GroupSpec {
            generators,
            rules,
            backend: Backend::Rewriting,
            template: Some(compact),
        })
    }

    /// Hex SHA-256 over a canonical serialisation of generators, rules and backend.
    /// Formatting of the source file does not affect it.
    pub fn canonical_hash(&self) -> String {
        let value = serde_json::json!({
            "backend": self.backend,
            "generators": self.generators,
            "rules": self.rules,
        });
        let text = serde_json::to_string(&value).expect("serialisable");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

pub(crate) fn alphabet(generators: &[String]) -> Result<Vec<char>, GroupError> {
    let mut out: Vec<char> = Vec::new();
    for g in generators {
        let mut chars = g.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_lowercase() && !out.contains(&c) => out.push(c),
            _ => return Err(GroupError::InvalidGenerator(g.clone())),
        }
    }
    if out.is_empty() {
        return Err(GroupError::Malformed("at least one generator is required".into()));
    }
    Ok(out)
}
