//! Shortlex string rewriting with a critical-pair confluence check.

use super::{format_letters, free_reduce, shortlex, GroupError, Letter};
use std::cmp::Ordering;
use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

#[derive(Debug)]
pub(crate) enum RewriteError {
    NotDecreasing(RewriteRule),
    NotConfluent {
        word: Vec<Letter>,
        left: Vec<Letter>,
        right: Vec<Letter>,
    },
}

impl RewriteError {
    pub(crate) fn render(&self, alphabet: &[char]) -> GroupError {
        let f = |w: &[Letter]| format_letters(alphabet, w);
        match self {
            RewriteError::NotDecreasing(rule) => GroupError::RuleNotDecreasing {
                lhs: f(&rule.lhs),
                rhs: f(&rule.rhs),
            },
            RewriteError::NotConfluent { word, left, right } => GroupError::NotConfluent {
                word: f(word),
                left: f(left),
                right: f(right),
            },
        }
    }
}

/// A terminating rewriting system (every rule shortlex-decreasing) that has
/// passed the critical-pair test, so every word has a unique irreducible form.
///
/// Free reductions `x x⁻¹ → ε` are always part of the system.
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    rules: Vec<RewriteRule>,
    by_last: Vec<Vec<usize>>,
}

impl RewritingSystem {
    pub(crate) fn new(
        rank: usize,
        user_rules: Vec<(Vec<Letter>, Vec<Letter>)>,
    ) -> Result<RewritingSystem, RewriteError> {
        let mut rules = Vec::new();
        for l in (0..2 * rank as u8).map(Letter) {
            rules.push(RewriteRule {
                lhs: vec![l, l.inverse()],
                rhs: Vec::new(),
            });
        }
        for (lhs, rhs) in user_rules {
            let rule = RewriteRule { lhs, rhs };
            if rule.lhs.is_empty() || shortlex(&rule.lhs, &rule.rhs) != Ordering::Greater {
                return Err(RewriteError::NotDecreasing(rule));
            }
            if !rules.contains(&rule) {
                rules.push(rule);
            }
        }
        let mut by_last = vec![Vec::new(); 2 * rank];
        for (i, r) in rules.iter().enumerate() {
            by_last[r.lhs.last().unwrap().0 as usize].push(i);
        }
        let system = RewritingSystem { rules, by_last };
        system.check_confluence()?;
        Ok(system)
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// Irreducible descendant of `word`.
    ///
    /// Letters are pushed onto an irreducible stack; whenever a left-hand side
    /// appears as a suffix it is replaced and the right-hand side is fed back in.
    pub fn reduce(&self, word: &[Letter]) -> Vec<Letter> {
        let mut input: VecDeque<Letter> = free_reduce(word).into();
        let mut stack: Vec<Letter> = Vec::with_capacity(input.len());
        while let Some(l) = input.pop_front() {
            stack.push(l);
            let hit = self.by_last[l.0 as usize]
                .iter()
                .map(|&i| &self.rules[i])
                .find(|r| stack.ends_with(&r.lhs));
            if let Some(rule) = hit {
                stack.truncate(stack.len() - rule.lhs.len());
                for &x in rule.rhs.iter().rev() {
                    input.push_front(x);
                }
            }
        }
        stack
    }

    fn check_confluence(&self) -> Result<(), RewriteError> {
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                // suffix of lhs1 overlapping a prefix of lhs2
                let max_overlap = r1.lhs.len().min(r2.lhs.len());
                for k in 1..max_overlap {
                    if r1.lhs[r1.lhs.len() - k..] != r2.lhs[..k] {
                        continue;
                    }
                    let mut word = r1.lhs.clone();
                    word.extend_from_slice(&r2.lhs[k..]);
                    let mut left = r1.rhs.clone();
                    left.extend_from_slice(&r2.lhs[k..]);
                    let mut right = r1.lhs[..r1.lhs.len() - k].to_vec();
                    right.extend_from_slice(&r2.rhs);
                    self.joinable(word, left, right)?;
                }
                // lhs2 occurring inside lhs1
                if i != j && r2.lhs.len() <= r1.lhs.len() {
                    for p in 0..=r1.lhs.len() - r2.lhs.len() {
                        if r1.lhs[p..p + r2.lhs.len()] != r2.lhs[..] {
                            continue;
                        }
                        let mut right = r1.lhs[..p].to_vec();
                        right.extend_from_slice(&r2.rhs);
                        right.extend_from_slice(&r1.lhs[p + r2.lhs.len()..]);
                        self.joinable(r1.lhs.clone(), r1.rhs.clone(), right)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn joinable(
        &self,
        word: Vec<Letter>,
        left: Vec<Letter>,
        right: Vec<Letter>,
    ) -> Result<(), RewriteError> {
        let l = self.reduce(&left);
        let r = self.reduce(&right);
        if l == r {
            Ok(())
        } else {
            Err(RewriteError::NotConfluent {
                word,
                left: l,
                right: r,
            })
        }
    }
}
