//! Dense linear algebra over the prime field F_p, entries as reduced u64.

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpMatrix {
    pub p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j) % p);
            }
        }
        FpMatrix { p, rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        FpMatrix::from_fn(self.p, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(0u64, |acc, k| {
                (acc + self[(i, k)] * other[(k, j)]) % self.p
            })
        })
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0u64, |acc, j| (acc + self[(i, j)] * (v[j] % self.p)) % self.p))
            .collect()
    }

    fn inv_scalar(&self, a: u64) -> u64 {
        // Fermat inverse; p is prime and a nonzero mod p.
        let mut result = 1u64;
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        result
    }

    /// Row-reduces in place; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self[(r, col)] != 0) else {
                continue;
            };
            for j in 0..self.cols {
                let tmp = self[(row, j)];
                self[(row, j)] = self[(pr, j)];
                self[(pr, j)] = tmp;
            }
            let inv = self.inv_scalar(self[(row, col)]);
            for j in 0..self.cols {
                self[(row, j)] = self[(row, j)] * inv % self.p;
            }
            for r in 0..self.rows {
                if r != row && self[(r, col)] != 0 {
                    let factor = self[(r, col)];
                    for j in 0..self.cols {
                        let sub = factor * self[(row, j)] % self.p;
                        self[(r, j)] = (self[(r, j)] + self.p - sub) % self.p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the null space, as matrix columns.
    pub fn kernel_basis(&self) -> FpMatrix {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FpMatrix::zeros(self.p, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out[(fc, k)] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                out[(pc, k)] = (self.p - m[(r, fc)]) % self.p;
            }
        }
        out
    }

    /// One solution of `self * x = rhs`, if any.
    pub fn solve(&self, rhs: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = FpMatrix::from_fn(self.p, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)]
            } else {
                rhs[i] % self.p
            }
        });
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)];
        }
        Some(x)
    }

    pub fn invert(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::from_fn(self.p, n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)]
            } else {
                u64::from(j - n == i)
            }
        });
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(FpMatrix::from_fn(self.p, n, n, |i, j| aug[(i, n + j)]))
    }
}

impl std::ops::Index<(usize, usize)> for FpMatrix {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FpMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.entries[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_solve() {
        let m = FpMatrix::from_fn(2, 2, 3, |i, j| [[1, 1, 0], [0, 1, 1]][i][j]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        let x = m.solve(&[1, 0]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![1, 0]);
    }

    #[test]
    fn inverse() {
        let m = FpMatrix::from_fn(5, 2, 2, |i, j| [[2, 1], [1, 1]][i][j]);
        let inv = m.invert().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(5, 2));
        let singular = FpMatrix::from_fn(5, 2, 2, |i, j| [[1, 2], [2, 4]][i][j]);
        assert!(singular.invert().is_none());
    }
}
