//! Dense matrices over a small prime field GF(p).
//!
//! Everything in this crate is desk scale (matrices of a few hundred rows at
//! most), so a plain row-major `Vec<u8>` with Gaussian elimination is enough.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    p: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat[GF({})] {}x{}", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[inline]
fn inv_mod(a: u8, p: u8) -> u8 {
    debug_assert!(a % p != 0);
    // p is tiny, so exponentiation by p-2 is cheap
    let (mut base, mut exp, mut acc) = (a as u32 % p as u32, p as u32 - 2, 1u32);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u32;
        }
        base = base * base % p as u32;
        exp >>= 1;
    }
    acc as u8
}

impl Mat {
    pub fn zeros(p: u8, rows: usize, cols: usize) -> Self {
        assert!(p >= 2, "field characteristic must be prime");
        Mat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u8, rows: &[Vec<u8>], cols: usize) -> Self {
        let mut m = Mat::zeros(p, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v % p);
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> u8 {
        self.p
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v % self.p;
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Row-major flattening, used to treat a space of maps as vectors.
    pub fn flatten(&self) -> Vec<u8> {
        self.data.clone()
    }

    pub fn from_flat(p: u8, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat {
            p,
            rows,
            cols,
            data,
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        assert_eq!(self.p, other.p);
        let p = self.p as u32;
        let mut out = Mat::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u32;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j) as u32;
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = ((out.data[idx] as u32 + a * b) % p) as u8;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p as u16;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ((a as u16 + b as u16) % p) as u8)
            .collect();
        Mat::from_flat(self.p, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Mat {
        let p = self.p;
        let data = self.data.iter().map(|&a| (p - a) % p).collect();
        Mat::from_flat(self.p, self.rows, self.cols, data)
    }

    pub fn pow(&self, k: usize) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.p, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Submatrix keeping the listed columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.p, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Places `block` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(self.p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p as u32;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if pr != lead {
                for k in 0..self.cols {
                    self.data.swap(pr * self.cols + k, lead * self.cols + k);
                }
            }
            let inv = inv_mod(self.get(lead, c), self.p) as u32;
            for k in 0..self.cols {
                let idx = lead * self.cols + k;
                self.data[idx] = (self.data[idx] as u32 * inv % p) as u8;
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let f = self.get(r, c) as u32;
                if f == 0 {
                    continue;
                }
                for k in 0..self.cols {
                    let v = self.data[lead * self.cols + k] as u32;
                    if v != 0 {
                        let idx = r * self.cols + k;
                        self.data[idx] = ((self.data[idx] as u32 + p * p - f * v) % p) as u8;
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{v : self * v = 0}`, one vector per entry.
    pub fn nullspace(&self) -> Vec<Vec<u8>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u8; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    let a = m.get(r, f);
                    v[pc] = (p - a) % p;
                }
                v
            })
            .collect()
    }
}

/// Rank of a family of vectors of equal length.
pub fn span_rank(p: u8, vectors: &[Vec<u8>]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v0) => Mat::from_rows(p, vectors, v0.len()).rank(),
    }
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(sw) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, sw);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace_gf2() {
        let m = Mat::from_rows(2, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], 3);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn nullspace_gf3_is_annihilated() {
        let m = Mat::from_rows(3, &[vec![1, 2, 0, 1], vec![2, 1, 1, 0]], 4);
        for v in m.nullspace() {
            let col = Mat::from_flat(3, 4, 1, v);
            assert!(m.mul(&col).is_zero());
        }
        assert_eq!(m.nullspace().len(), 4 - m.rank());
    }

    #[test]
    fn inverse_mod_small_primes() {
        for p in [2u8, 3, 5, 7] {
            for a in 1..p {
                assert_eq!((a as u32 * inv_mod(a, p) as u32) % p as u32, 1);
            }
        }
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(det_i64(&[vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(det_i64(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]), 0);
        assert_eq!(det_i64(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, -1, 0]]), -1);
    }
}
