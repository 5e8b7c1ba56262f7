use super::{Character, Group, GroupElement};
use num_rational::BigRational;
use std::collections::BTreeSet;

/// Lower bound on χ for a half-space `G_L = {g : χ(g) ≥ L}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Level {
    /// No constraint.
    Unbounded,
    AtLeast(BigRational),
}

impl Level {
    pub fn admits(&self, value: &BigRational) -> bool {
        match self {
            Level::Unbounded => true,
            Level::AtLeast(l) => value >= l,
        }
    }
}

/// The finite set `{g : χ(g) ≥ L, d(g, center_support) ≤ R}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpaceWindow {
    pub level: Level,
    pub center_support: Vec<GroupElement>,
    pub radius: usize,
}

impl HalfSpaceWindow {
    pub fn new(level: Level, center_support: Vec<GroupElement>, radius: usize) -> Self {
        HalfSpaceWindow {
            level,
            center_support,
            radius,
        }
    }

    /// Window elements in shortlex order.
    pub fn elements(&self, group: &Group, chi: &Character) -> Vec<GroupElement> {
        let ball = group.ball(self.radius);
        let mut out = BTreeSet::new();
        for c in &self.center_support {
            for x in &ball {
                let g = group.multiply(c, x);
                if !out.contains(&g) && self.level.admits(&chi.eval(group, &g)) {
                    out.insert(g);
                }
            }
        }
        out.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unbounded_window_is_a_ball() {
        let g = Group::from_template("Z^2").unwrap();
        let chi = Character::from_integers(&g, &[1, 0]).unwrap();
        let w = HalfSpaceWindow::new(Level::Unbounded, vec![g.identity()], 2);
        let mut ball = g.ball(2);
        ball.sort();
        assert_eq!(w.elements(&g, &chi), ball);
    }

    #[test]
    fn half_ball() {
        let g = Group::from_template("Z^2").unwrap();
        let chi = Character::from_integers(&g, &[1, 0]).unwrap();
        let w = HalfSpaceWindow::new(
            Level::AtLeast(BigRational::from_integer(0.into())),
            vec![g.identity()],
            1,
        );
        let words: Vec<String> = w.elements(&g, &chi).iter().map(|x| g.format(x)).collect();
        assert_eq!(words, vec!["", "a", "b", "B"]);
    }

    #[test]
    fn level_above_window_is_empty() {
        let g = Group::from_template("Z^2").unwrap();
        let chi = Character::from_integers(&g, &[1, 0]).unwrap();
        let w = HalfSpaceWindow::new(
            Level::AtLeast(BigRational::from_integer(5.into())),
            vec![g.identity()],
            3,
        );
        assert!(w.elements(&g, &chi).is_empty());
    }
}
