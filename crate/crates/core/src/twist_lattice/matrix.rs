//! Dense integer matrices with Smith and Hermite normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rectangular matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone().into();
        }
        m
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

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &IntegerMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * factor;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * factor;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// `u * m * v == s` with `u`, `v` unimodular and `s` diagonal with each
/// nonzero diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries of `s`, in order.
    pub fn invariants(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k)
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }
}

/// Position of the nonzero entry of least absolute value in the block
/// `rows >= t, cols >= t`, scanning row-major.
fn smallest_nonzero(m: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let x = &m[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smallest nonzero entry restricted to column `t` (rows >= t) and row `t`
/// (cols >= t).
fn smallest_in_cross(m: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let cand = (t..m.rows)
        .map(|i| (i, t))
        .chain((t + 1..m.cols).map(|j| (t, j)));
    for (i, j) in cand {
        let x = &m[(i, j)];
        if x.is_zero() {
            continue;
        }
        match best {
            Some((bi, bj)) if m[(bi, bj)].abs() <= x.abs() => {}
            _ => best = Some((i, j)),
        }
    }
    best
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let (r, c) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntegerMatrix::identity(r);
    let mut v = IntegerMatrix::identity(c);

    for t in 0..r.min(c) {
        let Some((pi, pj)) = smallest_nonzero(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..r {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, t)] / &s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, j)] / &s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let (pi, pj) = smallest_in_cross(&s, t).expect("pivot vanished");
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // divisibility: pull an offending row into the pivot row
            let offending =
                (t + 1..r).find(|&i| (t + 1..c).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)])));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, s, v }
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `m`.
///
/// The result has no zero rows, strictly increasing pivot columns, positive
/// pivots, and entries above each pivot reduced into `[0, pivot)`. It is a
/// canonical basis of the row lattice.
pub fn hermite_normal_form(m: &IntegerMatrix) -> IntegerMatrix {
    let mut a = m.clone();
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        // Euclid on column `col` among rows >= row
        loop {
            let mut best: Option<usize> = None;
            for i in row..a.rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if a[(b, col)].abs() <= a[(i, col)].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(row, b);
            let mut done = true;
            for i in row + 1..a.rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let q = -a[(i, col)].div_floor(&a[(row, col)]);
                a.add_row_multiple(i, row, &q);
                if !a[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(row, col)].is_zero() {
            continue;
        }
        if a[(row, col)].is_negative() {
            a.negate_row(row);
        }
        for i in 0..row {
            let q = -a[(i, col)].div_floor(&a[(row, col)]);
            a.add_row_multiple(i, row, &q);
        }
        pivots.push(col);
        row += 1;
    }
    let mut out = IntegerMatrix::zeros(row, a.cols);
    for i in 0..row {
        for j in 0..a.cols {
            out[(i, j)] = a[(i, j)].clone();
        }
    }
    out
}

/// Canonical basis (HNF rows) of the integer kernel `{x : m x = 0}`.
pub fn integer_kernel(m: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let gens: Vec<Vec<BigInt>> = (rank..m.cols).map(|j| snf.v.column(j)).collect();
    hermite_normal_form(&IntegerMatrix::from_rows(m.cols, &gens))
}

/// Coordinates of `x` in the basis given by the rows of an HNF matrix, if
/// `x` lies in the row lattice.
pub fn hnf_coordinates(hnf: &IntegerMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(hnf.cols, x.len());
    let mut rest = x.to_vec();
    let mut coords = Vec::with_capacity(hnf.rows);
    for i in 0..hnf.rows {
        let col = (0..hnf.cols).find(|&j| !hnf[(i, j)].is_zero())?;
        // entries left of the pivot must already be cleared
        if rest[..col].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let (q, r) = rest[col].div_rem(&hnf[(i, col)]);
        if !r.is_zero() {
            return None;
        }
        for j in 0..hnf.cols {
            let v = &q * &hnf[(i, j)];
            rest[j] -= v;
        }
        coords.push(q);
    }
    rest.iter().all(|v| v.is_zero()).then_some(coords)
}
