//! Dense linear algebra over GF(p).

use rayon::prelude::*;

use super::field::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

const PAR_THRESHOLD: usize = 1 << 15;

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Matrix { field, rows: n, cols, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let p = self.field.p() as u64;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let oc = other.cols;
        out.data.par_chunks_mut(oc.max(1)).enumerate().for_each(|(r, orow)| {
            let mut acc = vec![0u64; oc];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * oc..(k + 1) * oc];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x += a * b as u64;
                }
                if k % 4096 == 4095 {
                    for x in acc.iter_mut() {
                        *x %= p;
                    }
                }
            }
            for (o, x) in orow.iter_mut().zip(acc) {
                *o = (x % p) as u32;
            }
        });
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                (row.iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p)) as u32
            })
            .collect()
    }

    /// In-place reduced row echelon form. Returns pivot columns; rows past the
    /// rank are zero afterwards.
    ///
    /// Entries are kept unreduced in u64 during elimination: every update adds
    /// a product of two reduced values (< p^2 < 2^62), and an entry is reduced
    /// only when it is read as a pivot or multiplier.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.p() as u64;
        let cols = self.cols;
        let mut work: Vec<u64> = self.data.iter().map(|&x| x as u64).collect();
        // reduce a whole row once it has seen this many updates
        let flush_every = (u64::MAX / (p * p)).min(1 << 20) as usize - 1;
        let mut updates = 0usize;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| work[i * cols + c] % p != 0) else {
                for i in r..self.rows {
                    work[i * cols + c] = 0;
                }
                continue;
            };
            if pr != r {
                for k in 0..cols {
                    work.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv((work[r * cols + c] % p) as u32) as u64;
            for k in c..cols {
                let v = work[r * cols + k] % p;
                work[r * cols + k] = v * inv % p;
            }
            let pivot_row: Vec<u64> = work[r * cols + c..(r + 1) * cols].to_vec();
            let nz: Vec<usize> = (0..pivot_row.len()).filter(|&k| pivot_row[k] != 0).collect();
            let dense = nz.len() * 4 > pivot_row.len();
            updates += 1;
            let flush = updates >= flush_every;
            if flush {
                updates = 0;
            }
            let work_size = self.rows * (cols - c);
            let elim = |(i, row): (usize, &mut [u64])| {
                if i == r {
                    return;
                }
                let factor = row[c] % p;
                if factor != 0 {
                    let neg = p - factor;
                    let tail = &mut row[c..];
                    if dense {
                        for (x, &y) in tail.iter_mut().zip(&pivot_row) {
                            *x += neg * y;
                        }
                    } else {
                        for &k in &nz {
                            tail[k] += neg * pivot_row[k];
                        }
                    }
                }
                row[c] = 0;
                if flush {
                    for x in row[c..].iter_mut() {
                        *x %= p;
                    }
                }
            };
            if work_size > PAR_THRESHOLD {
                work.par_chunks_mut(cols).enumerate().for_each(elim);
            } else {
                work.chunks_mut(cols).enumerate().for_each(elim);
            }
            pivots.push(c);
            r += 1;
        }
        for (d, w) in self.data.iter_mut().zip(&work) {
            *d = (*w % p) as u32;
        }
        for i in r..self.rows {
            for k in 0..cols {
                self.data[i * cols + k] = 0;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel {v : M v = 0}. Each basis vector has a 1 in
    /// its own free column and zeros in the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Nonzero rows of the reduced echelon form (a canonical row-space basis).
    pub fn row_space(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let k = m.rref().len();
        (0..k).map(|i| m.row(i).to_vec()).collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial det(xI - M), coefficients low to high.
    pub fn charpoly(&self) -> Vec<u32> {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        let n = self.rows;
        let mut h = self.clone();
        // similarity reduction to upper Hessenberg form
        for c in 0..n.saturating_sub(2) {
            let Some(pr) = (c + 1..n).find(|&i| h.get(i, c) != 0) else { continue };
            if pr != c + 1 {
                for k in 0..n {
                    h.data.swap(pr * n + k, (c + 1) * n + k);
                }
                for k in 0..n {
                    h.data.swap(k * n + pr, k * n + c + 1);
                }
            }
            let inv = f.inv(h.get(c + 1, c));
            for i in c + 2..n {
                let t = f.mul(h.get(i, c), inv);
                if t == 0 {
                    continue;
                }
                for k in 0..n {
                    let v = f.sub(h.get(i, k), f.mul(t, h.get(c + 1, k)));
                    h.set(i, k, v);
                }
                for k in 0..n {
                    let v = f.add(h.get(k, c + 1), f.mul(t, h.get(k, i)));
                    h.set(k, c + 1, v);
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} prod_{j} h_{j,j-1} p_{m-i-1}
        let mut polys: Vec<Vec<u32>> = vec![vec![1]];
        for m in 0..n {
            let prev = &polys[m];
            let mut next = vec![0u32; m + 2];
            for (k, &c) in prev.iter().enumerate() {
                next[k + 1] = f.add(next[k + 1], c);
                next[k] = f.sub(next[k], f.mul(h.get(m, m), c));
            }
            let mut prod = 1u32;
            for i in 1..=m {
                prod = f.mul(prod, h.get(m - i + 1, m - i));
                let coef = f.mul(h.get(m - i, m), prod);
                if coef == 0 {
                    continue;
                }
                for (k, &c) in polys[m - i].iter().enumerate() {
                    next[k] = f.sub(next[k], f.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

/// Incrementally built row echelon basis (each stored row has a unit pivot and
/// zeros in the pivot columns of earlier rows).
#[derive(Clone, Debug)]
pub struct Echelon {
    pub field: FieldSpec,
    pub cols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: FieldSpec, cols: usize) -> Self {
        Echelon { field, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Reduces `v` against the basis in place; returns true if it becomes zero.
    pub fn reduce(&self, v: &mut [u32]) -> bool {
        let p = self.field.p() as u64;
        let mut w: Vec<u64> = v.iter().map(|&x| x as u64).collect();
        let flush_every = (u64::MAX / (p * p)).min(1 << 20) as usize - 1;
        for (j, (row, &c)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let f = w[c] % p;
            if f != 0 {
                let neg = p - f;
                for (x, &y) in w[c..].iter_mut().zip(&row[c..]) {
                    *x += neg * y as u64;
                }
            }
            w[c] = 0;
            if j % flush_every == flush_every - 1 {
                for x in w.iter_mut() {
                    *x %= p;
                }
            }
        }
        for (x, y) in v.iter_mut().zip(w) {
            *x = (y % p) as u32;
        }
        v.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns true if the rank grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        if self.reduce(&mut v) {
            return false;
        }
        let c = v.iter().position(|&x| x != 0).unwrap();
        let inv = self.field.inv(v[c]);
        for x in v.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push(v);
        self.pivots.push(c);
        true
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.cols, self.rows.clone())
    }

    /// Basis of the vectors orthogonal to the span, i.e. the kernel of the
    /// matrix whose rows are the basis.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        self.to_matrix().nullspace()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldSpec {
        FieldSpec::new(7).unwrap()
    }

    #[test]
    fn echelon_matches_rank() {
        let f = f7();
        let mut e = Echelon::new(f, 3);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(!e.insert(vec![2, 4, 6]));
        assert!(e.insert(vec![0, 1, 1]));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.nullspace().len(), 1);
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = Matrix::from_rows(f7(), 3, vec![vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let k = m.nullspace();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_and_charpoly() {
        let f = FieldSpec::new(65521).unwrap();
        let m = Matrix::from_rows(f, 3, vec![vec![2, 1, 0], vec![0, 3, 1], vec![1, 0, 5]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 3));
        let cp = m.charpoly();
        // brute-force determinant of xI - M at several x
        for x in [0u32, 1, 2, 10] {
            let mut a = Matrix::identity(f, 3);
            for r in 0..3 {
                for c in 0..3 {
                    let v = if r == c { f.sub(x, m.get(r, c)) } else { f.neg(m.get(r, c)) };
                    a.set(r, c, v);
                }
            }
            let det = {
                let g = |r: usize, c: usize| a.get(r, c);
                let t1 = f.mul(g(0, 0), f.sub(f.mul(g(1, 1), g(2, 2)), f.mul(g(1, 2), g(2, 1))));
                let t2 = f.mul(g(0, 1), f.sub(f.mul(g(1, 0), g(2, 2)), f.mul(g(1, 2), g(2, 0))));
                let t3 = f.mul(g(0, 2), f.sub(f.mul(g(1, 0), g(2, 1)), f.mul(g(1, 1), g(2, 0))));
                f.add(f.sub(t1, t2), t3)
            };
            let val = cp.iter().rev().fold(0u32, |acc, &c| f.add(f.mul(acc, x), c));
            assert_eq!(val, det);
        }
    }
}

#[cfg(test)]
mod rref_oracle {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// Textbook elimination with a reduction after every operation.
    fn naive_rref(f: FieldSpec, rows: usize, cols: usize, mut a: Vec<u32>) -> (usize, Vec<u32>) {
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else { continue };
            for k in 0..cols {
                a.swap(pr * cols + k, r * cols + k);
            }
            let inv = f.inv(a[r * cols + c]);
            for k in 0..cols {
                a[r * cols + k] = f.mul(a[r * cols + k], inv);
            }
            for i in 0..rows {
                if i != r && a[i * cols + c] != 0 {
                    let m = a[i * cols + c];
                    for k in 0..cols {
                        a[i * cols + k] = f.sub(a[i * cols + k], f.mul(m, a[r * cols + k]));
                    }
                }
            }
            r += 1;
        }
        (r, a)
    }

    #[test]
    fn rref_matches_naive_elimination() {
        let f = FieldSpec::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for trial in 0..40 {
            let rows = rng.gen_range(1..300);
            let cols = rng.gen_range(1..300);
            let inner = rng.gen_range(1..200);
            // low rank product plus sparsity
            let a: Vec<u32> = (0..rows * inner).map(|_| if rng.gen_bool(0.5) { f.random(&mut rng) } else { 0 }).collect();
            let b: Vec<u32> = (0..inner * cols).map(|_| f.random(&mut rng)).collect();
            let am = Matrix::from_rows(f, inner, a.chunks(inner).map(|c| c.to_vec()).collect());
            let bm = Matrix::from_rows(f, cols, b.chunks(cols).map(|c| c.to_vec()).collect());
            let m = am.mul(&bm);
            let (rank, reduced) = naive_rref(f, rows, cols, m.data.clone());
            let mut fast = m.clone();
            assert_eq!(fast.rref().len(), rank, "trial {trial}");
            assert_eq!(fast.data, reduced, "trial {trial}");
        }
    }
}
