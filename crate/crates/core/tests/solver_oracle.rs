use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sigmacert::linalg::{
    hermite_normal_form, invariant_factors, smith_normal_form, solve_linear, solve_linear_with_kernel,
    IntMatrix,
};
use std::collections::HashSet;

const BOX: i64 = 8;

/// Meet in the middle over `[-BOX, BOX]^6`: all left halves `A[:, 0..3]·x` are
/// stored, then each right half looks up `b − A[:, 3..6]·y`.
fn box_solution(a: &[[i64; 6]; 4], b: &[i64; 4]) -> Option<[i64; 6]> {
    let range: Vec<i64> = (-BOX..=BOX).collect();
    let half = |cols: [usize; 3]| {
        let mut out = Vec::new();
        for &x in &range {
            for &y in &range {
                for &z in &range {
                    let v: [i64; 4] =
                        std::array::from_fn(|r| a[r][cols[0]] * x + a[r][cols[1]] * y + a[r][cols[2]] * z);
                    out.push(([x, y, z], v));
                }
            }
        }
        out
    };
    let left = half([0, 1, 2]);
    let sums: HashSet<[i64; 4]> = left.iter().map(|(_, v)| *v).collect();
    for (yz, v) in half([3, 4, 5]) {
        let need: [i64; 4] = std::array::from_fn(|r| b[r] - v[r]);
        if sums.contains(&need) {
            let (x, _) = left.iter().find(|(_, s)| *s == need).unwrap();
            return Some([x[0], x[1], x[2], yz[0], yz[1], yz[2]]);
        }
    }
    None
}

fn matrix(a: &[[i64; 6]; 4]) -> IntMatrix {
    IntMatrix::from_rows(&a.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn substitutes(a: &[[i64; 6]; 4], b: &[i64; 4], x: &[BigInt]) -> bool {
    (0..4).all(|r| {
        let s: BigInt = (0..6).map(|c| BigInt::from(a[r][c]) * &x[c]).sum();
        s == BigInt::from(b[r])
    })
}

fn random_matrix(rng: &mut ChaCha8Rng) -> [[i64; 6]; 4] {
    std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-3..=3)))
}

#[test]
fn agrees_with_box_search_on_conclusive_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..100 {
        let mut a = random_matrix(&mut rng);
        let b: [i64; 4] = if trial % 2 == 0 {
            let x0: [i64; 6] = std::array::from_fn(|_| rng.gen_range(-2..=2));
            std::array::from_fn(|r| (0..6).map(|c| a[r][c] * x0[c]).sum())
        } else {
            // an even row against an odd right-hand side
            let row = rng.gen_range(0..4);
            a[row] = std::array::from_fn(|_| 2 * rng.gen_range(-1..=1));
            let mut b: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
            b[row] = 2 * rng.gen_range(-1..=1) + 1;
            b
        };
        let bb: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
        let ours = solve_linear(&matrix(&a), &bb);
        let oracle = box_solution(&a, &b);
        assert_eq!(ours.is_some(), oracle.is_some(), "trial {trial}: {a:?} x = {b:?}");
        if let Some(x) = ours {
            assert!(substitutes(&a, &b, &x));
        }
        if let Some(x) = oracle {
            assert!(substitutes(&a, &b, &x.map(BigInt::from)));
        }
    }
}

#[test]
fn sound_on_arbitrary_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let a = random_matrix(&mut rng);
        let b: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        let bb: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
        let (ours, kernel) = solve_linear_with_kernel(&matrix(&a), &bb);
        if box_solution(&a, &b).is_some() {
            assert!(ours.is_some());
        }
        if let Some(x) = ours {
            assert!(substitutes(&a, &b, &x));
        }
        for k in kernel {
            assert!(substitutes(&a, &[0; 4], &k));
        }
    }
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, cols), rows)
}

fn is_unimodular(u: &IntMatrix) -> bool {
    u.determinant().abs() == BigInt::one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hermite_form_is_a_unimodular_reduction(rows in small_matrix(4, 5)) {
        let a = IntMatrix::from_rows(&rows);
        let (h, u) = hermite_normal_form(&a);
        prop_assert!(h.is_hermite());
        prop_assert!(is_unimodular(&u));
        prop_assert_eq!(u.mul(&a), h);
    }

    #[test]
    fn smith_form_is_a_unimodular_diagonalisation(rows in small_matrix(4, 5)) {
        let a = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&a);
        prop_assert!(is_unimodular(&snf.u) && is_unimodular(&snf.v));
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s.clone());
        let d = snf.invariant_factors();
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                if i != j {
                    prop_assert!(snf.s[(i, j)].is_zero());
                }
            }
        }
        prop_assert_eq!(invariant_factors(&a), d);
    }

    #[test]
    fn square_determinant_is_the_product_of_invariant_factors(rows in small_matrix(3, 3)) {
        let a = IntMatrix::from_rows(&rows);
        let d = invariant_factors(&a);
        let det = a.determinant().abs();
        if d.len() < 3 {
            prop_assert!(det.is_zero());
        } else {
            prop_assert_eq!(det, d.iter().fold(BigInt::one(), |acc, x| acc * x));
        }
    }
}
