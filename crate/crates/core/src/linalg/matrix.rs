use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Fraction-free Gaussian elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = v / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * &m[(n - 1, n - 1)]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += k · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Rows `(a, b) ← (x·a + y·b, u·a + v·b)`; the caller keeps `xv − yu = ±1`.
    fn mix_rows(&mut self, a: usize, b: usize, [x, y, u, v]: [&BigInt; 4]) {
        for j in 0..self.cols {
            let (ra, rb) = (self[(a, j)].clone(), self[(b, j)].clone());
            self[(a, j)] = x * &ra + y * &rb;
            self[(b, j)] = u * &ra + v * &rb;
        }
    }

    fn mix_cols(&mut self, a: usize, b: usize, [x, y, u, v]: [&BigInt; 4]) {
        for i in 0..self.rows {
            let (ca, cb) = (self[(i, a)].clone(), self[(i, b)].clone());
            self[(i, a)] = x * &ca + y * &cb;
            self[(i, b)] = u * &ca + v * &cb;
        }
    }

    /// Row echelon form with positive pivots and entries above each pivot in `[0, pivot)`.
    pub fn is_hermite(&self) -> bool {
        let mut last: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..self.rows {
            match self.row(i).iter().position(|x| !x.is_zero()) {
                None => seen_zero = true,
                Some(p) => {
                    if seen_zero || last.is_some_and(|l| p <= l) || !self[(i, p)].is_positive() {
                        return false;
                    }
                    for r in 0..i {
                        let e = &self[(r, p)];
                        if e.is_negative() || e >= &self[(i, p)] {
                            return false;
                        }
                    }
                    last = Some(p);
                }
            }
        }
        true
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U·A` and `U` unimodular.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut r = 0;
    for col in 0..a.cols {
        if r == a.rows {
            break;
        }
        for i in r + 1..a.rows {
            if h[(i, col)].is_zero() {
                continue;
            }
            let (p, q) = (h[(r, col)].clone(), h[(i, col)].clone());
            let e = p.extended_gcd(&q);
            let (pg, qg) = (&p / &e.gcd, &q / &e.gcd);
            let coeffs = [&e.x, &e.y, &-qg, &pg];
            h.mix_rows(r, i, coeffs);
            u.mix_rows(r, i, coeffs);
        }
        if h[(r, col)].is_zero() {
            continue;
        }
        if h[(r, col)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let k = -h[(i, col)].div_floor(&h[(r, col)]);
            h.add_row(i, r, &k);
            u.add_row(i, r, &k);
        }
        r += 1;
    }
    (h, u)
}

/// `S = U·A·V` with `S` diagonal, `d₁ | d₂ | …`, and `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        diagonal_factors(&self.s)
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let mut s = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    smith_in_place(&mut s, Some((&mut u, &mut v)));
    Smith { s, u, v }
}

/// Invariant factors only, without the transforms.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let mut s = a.clone();
    smith_in_place(&mut s, None);
    diagonal_factors(&s)
}

fn diagonal_factors(s: &IntMatrix) -> Vec<BigInt> {
    (0..s.rows.min(s.cols))
        .map(|i| s[(i, i)].clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

fn smith_in_place(s: &mut IntMatrix, mut track: Option<(&mut IntMatrix, &mut IntMatrix)>) {
    let (m, n) = (s.rows, s.cols);
    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = smallest_entry(s, t) else {
            return;
        };
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        if let Some((u, v)) = track.as_mut() {
            u.swap_rows(t, pi);
            v.swap_cols(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let (p, q) = (s[(t, t)].clone(), s[(i, t)].clone());
                let (x, y, c, d) = gcd_step(&p, &q);
                let coeffs = [&x, &y, &c, &d];
                s.mix_rows(t, i, coeffs);
                if let Some((u, _)) = track.as_mut() {
                    u.mix_rows(t, i, coeffs);
                }
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                clean = false;
                let (p, q) = (s[(t, t)].clone(), s[(t, j)].clone());
                let (x, y, c, d) = gcd_step(&p, &q);
                let coeffs = [&x, &y, &c, &d];
                s.mix_cols(t, j, coeffs);
                if let Some((_, v)) = track.as_mut() {
                    v.mix_cols(t, j, coeffs);
                }
            }
            // column ops may have refilled the pivot column
            if clean || (t + 1..m).all(|i| s[(i, t)].is_zero()) {
                let p = s[(t, t)].clone();
                let bad = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !s[(i, j)].is_multiple_of(&p));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        s.add_row(t, i, &BigInt::one());
                        if let Some((u, _)) = track.as_mut() {
                            u.add_row(t, i, &BigInt::one());
                        }
                    }
                }
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            if let Some((u, _)) = track.as_mut() {
                u.negate_row(t);
            }
        }
    }
}

/// Unimodular `[[x, y], [c, d]]` sending `(p, q)` to `(g, 0)`. When `p | q`
/// this is plain elimination, so an already cleared line stays cleared.
fn gcd_step(p: &BigInt, q: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    if q.is_multiple_of(p) {
        return (BigInt::one(), BigInt::zero(), -(q / p), BigInt::one());
    }
    let e = p.extended_gcd(q);
    (e.x, e.y, -(q / &e.gcd), p / &e.gcd)
}

fn smallest_entry(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows {
        for j in t..s.cols {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
