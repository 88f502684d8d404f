//! Dense matrices over the integers with arbitrary precision entries,
//! Smith normal form, and the lattice computations built on top of it
//! (solving, kernel bases, column-space bases).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Row-major integer matrix. Entries are arbitrary precision.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    /// Builds a matrix from rows of `i64`, mainly for tests and the CLI.
    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
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

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| c * &self[(i, j)])
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        IntMatrix::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn submatrix_cols(&self, cols: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn submatrix_rows(&self, rows: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)].clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += c * row[b]
    fn add_row(&mut self, a: usize, b: usize, c: &BigInt) {
        for j in 0..self.cols {
            let delta = c * &self[(b, j)];
            self[(a, j)] += delta;
        }
    }

    /// col[a] += c * col[b]
    fn add_col(&mut self, a: usize, b: usize, c: &BigInt) {
        for i in 0..self.rows {
            let delta = c * &self[(i, b)];
            self[(i, a)] += delta;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self[(i, a)].clone();
            self[(i, a)] = v;
        }
    }

    /// Smith normal form `u * m * v = d` with `u`, `v` unimodular, `d`
    /// diagonal with nonnegative entries satisfying `d[i] | d[i+1]`.
    /// Inverses of the transforms are tracked alongside.
    pub fn smith_normal_form(&self) -> Snf {
        let mut d = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut u_inv = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let mut v_inv = IntMatrix::identity(self.cols);

        let n = self.rows.min(self.cols);
        for t in 0..n {
            'pivot: loop {
                // Smallest nonzero entry in the trailing block becomes the pivot.
                let mut best: Option<(usize, usize)> = None;
                for i in t..self.rows {
                    for j in t..self.cols {
                        if d[(i, j)].is_zero() {
                            continue;
                        }
                        match best {
                            None => best = Some((i, j)),
                            Some((bi, bj)) => {
                                if d[(i, j)].abs() < d[(bi, bj)].abs() {
                                    best = Some((i, j));
                                }
                            }
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    // Trailing block is zero; done with the whole matrix.
                    return finish(d, u, u_inv, v, v_inv);
                };
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                u_inv.swap_cols(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                v_inv.swap_rows(t, pj);

                // Reduce column t and row t against the pivot.
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if d[(i, t)].is_zero() {
                        continue;
                    }
                    let q = rounded_div(&d[(i, t)], &d[(t, t)]);
                    if !q.is_zero() {
                        let c = -q;
                        d.add_row(i, t, &c);
                        u.add_row(i, t, &c);
                        u_inv.add_col(t, i, &(-&c));
                    }
                    if !d[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols {
                    if d[(t, j)].is_zero() {
                        continue;
                    }
                    let q = rounded_div(&d[(t, j)], &d[(t, t)]);
                    if !q.is_zero() {
                        let c = -q;
                        d.add_col(j, t, &c);
                        v.add_col(j, t, &c);
                        v_inv.add_row(t, j, &(-&c));
                    }
                    if !d[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue 'pivot;
                }

                // Pivot must divide every entry of the trailing block, so the
                // diagonal comes out with the divisibility chain.
                for i in t + 1..self.rows {
                    for j in t + 1..self.cols {
                        if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                            let one = BigInt::one();
                            d.add_row(t, i, &one);
                            u.add_row(t, i, &one);
                            u_inv.add_col(i, t, &-BigInt::one());
                            continue 'pivot;
                        }
                    }
                }
                break;
            }
        }
        finish(d, u, u_inv, v, v_inv)
    }

    /// One integer solution `x` of `self * x = rhs`, if any exists.
    pub fn solve(&self, rhs: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(rhs.len(), self.rows);
        let snf = self.smith_normal_form();
        let uy = snf.u.mul_vec(rhs);
        let n = self.rows.min(self.cols);
        let mut w = vec![BigInt::zero(); self.cols];
        for i in 0..self.rows {
            let di = if i < n { snf.d[(i, i)].clone() } else { BigInt::zero() };
            if di.is_zero() {
                if !uy[i].is_zero() {
                    return None;
                }
            } else {
                let (q, r) = uy[i].div_rem(&di);
                if !r.is_zero() {
                    return None;
                }
                w[i] = q;
            }
        }
        Some(snf.v.mul_vec(&w))
    }

    /// Solves `self * X = rhs` column by column.
    pub fn solve_matrix(&self, rhs: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(rhs.rows, self.rows);
        let snf = self.smith_normal_form();
        let n = self.rows.min(self.cols);
        let mut out = IntMatrix::zeros(self.cols, rhs.cols);
        for c in 0..rhs.cols {
            let uy = snf.u.mul_vec(&rhs.col(c));
            let mut w = vec![BigInt::zero(); self.cols];
            for i in 0..self.rows {
                let di = if i < n { snf.d[(i, i)].clone() } else { BigInt::zero() };
                if di.is_zero() {
                    if !uy[i].is_zero() {
                        return None;
                    }
                } else {
                    let (q, r) = uy[i].div_rem(&di);
                    if !r.is_zero() {
                        return None;
                    }
                    w[i] = q;
                }
            }
            let x = snf.v.mul_vec(&w);
            for i in 0..self.cols {
                out[(i, c)] = x[i].clone();
            }
        }
        Some(out)
    }

    /// Basis of the lattice `{x : self * x = 0}`, as matrix columns.
    pub fn kernel_basis(&self) -> IntMatrix {
        let snf = self.smith_normal_form();
        let n = self.rows.min(self.cols);
        let free: Vec<usize> = (0..self.cols)
            .filter(|&j| j >= n || snf.d[(j, j)].is_zero())
            .collect();
        snf.v.submatrix_cols(&free)
    }

    /// Basis of the column span lattice, as matrix columns.
    pub fn column_space_basis(&self) -> IntMatrix {
        let snf = self.smith_normal_form();
        let n = self.rows.min(self.cols);
        let mut cols = Vec::new();
        for j in 0..n {
            if snf.d[(j, j)].is_zero() {
                continue;
            }
            cols.push(
                snf.u_inv
                    .col(j)
                    .into_iter()
                    .map(|x| x * &snf.d[(j, j)])
                    .collect::<Vec<_>>(),
            );
        }
        IntMatrix::from_fn(self.rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn is_unimodular(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let snf = self.smith_normal_form();
        (0..self.rows).all(|i| snf.d[(i, i)].is_one())
    }
}

fn finish(d: IntMatrix, mut u: IntMatrix, mut u_inv: IntMatrix, v: IntMatrix, v_inv: IntMatrix) -> Snf {
    let mut d = d;
    let n = d.rows.min(d.cols);
    for i in 0..n {
        if d[(i, i)].is_negative() {
            d.negate_row(i);
            u.negate_row(i);
            u_inv.negate_col(i);
        }
    }
    Snf { d, u, u_inv, v, v_inv }
}

/// Quotient minimizing `|a - q*b|`.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    let two_r = r.abs() * 2;
    if two_r > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Result of [`IntMatrix::smith_normal_form`]: `u * m * v = d`.
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Diagonal entries, padded with zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Free function mirror of [`IntMatrix::smith_normal_form`].
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    m.smith_normal_form()
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self[(i, j)].to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}
