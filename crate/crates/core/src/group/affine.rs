//! Word problem for BS(1,n) = ⟨a, t | t a t⁻¹ = aⁿ⟩ through the faithful affine
//! representation a ↦ (x ↦ x + 1), t ↦ (x ↦ n x).
//!
//! The canonical word of an element is `t^-i a^m t^j` with `i, j ≥ 0` and
//! `n ∤ m` whenever `i, j > 0`. This is a normal form but not a geodesic one.

use super::Letter;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const A: Letter = Letter(0);
const T: Letter = Letter(2);

#[derive(Clone, Debug)]
pub(crate) struct AffineBs {
    n: BigInt,
}

/// `x ↦ n^shift · x + numer / n^denom_exp`.
struct Affine {
    shift: i64,
    numer: BigInt,
    denom_exp: u32,
}

impl AffineBs {
    pub(crate) fn new(n: u32) -> AffineBs {
        AffineBs { n: BigInt::from(n) }
    }

    fn evaluate(&self, word: &[Letter]) -> Affine {
        // compose left to right: (f·g)(x) = f(g(x))
        let mut acc = Affine {
            shift: 0,
            numer: BigInt::zero(),
            denom_exp: 0,
        };
        for &l in word {
            match (l.index(), l.is_inverse()) {
                (0, inv) => {
                    // acc ∘ (x ± 1): adds ±n^shift
                    let step = if inv { -BigInt::one() } else { BigInt::one() };
                    self.add_scaled(&mut acc, step);
                }
                (_, false) => acc.shift += 1,
                (_, true) => acc.shift -= 1,
            }
        }
        acc
    }

    fn add_scaled(&self, acc: &mut Affine, step: BigInt) {
        // numer / n^e + step * n^shift
        if acc.shift >= 0 {
            let scale = num_traits::pow(self.n.clone(), acc.shift as usize)
                * num_traits::pow(self.n.clone(), acc.denom_exp as usize);
            acc.numer += step * scale;
        } else {
            let need = (-acc.shift) as u32;
            if need > acc.denom_exp {
                acc.numer *= num_traits::pow(self.n.clone(), (need - acc.denom_exp) as usize);
                acc.denom_exp = need;
            }
            let scale = num_traits::pow(self.n.clone(), (acc.denom_exp - need) as usize);
            acc.numer += step * scale;
        }
        while acc.denom_exp > 0 && acc.numer.is_multiple_of(&self.n) {
            acc.numer /= &self.n;
            acc.denom_exp -= 1;
        }
        if acc.numer.is_zero() {
            acc.denom_exp = 0;
        }
    }

    pub(crate) fn canonical(&self, word: &[Letter]) -> Vec<Letter> {
        let f = self.evaluate(word);
        // t^-i a^m t^j represents x ↦ n^(j-i) x + m / n^i
        let i = (f.denom_exp as i64).max(-f.shift);
        let j = f.shift + i;
        let m = f.numer * num_traits::pow(self.n.clone(), (i - f.denom_exp as i64) as usize);
        let mut out = Vec::new();
        out.extend(std::iter::repeat_n(T.inverse(), i as usize));
        let count = m.abs().to_usize().expect("exponent fits in memory");
        let a = if m.is_negative() { A.inverse() } else { A };
        out.extend(std::iter::repeat_n(a, count));
        out.extend(std::iter::repeat_n(T, j as usize));
        out
    }
}
