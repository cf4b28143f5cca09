//! Dense integer matrices and the exact linear algebra used everywhere else:
//! Smith normal form, integer kernels, congruence solving over `Z/N`, and
//! Hermite normal form for canonical lattice bases.
//!
//! Everything here is `i64` arithmetic on small matrices (rank at most a
//! handful); no floating point is involved anywhere.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

/// A dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows; `None` if the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>]) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(IntMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    /// Builds a `rows x cols` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self[(i, j)] == i64::from(i == j)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix: `v^T * self`.
    pub fn vec_mul(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| v[i] * self[(i, j)]).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: i64) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Entrywise reduction into `[0, n)`.
    pub fn reduce_mod(&self, n: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.rem_euclid(n)).collect(),
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i64 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> =
            (0..n).map(|i| self.row(i).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
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

    /// Inverse of a matrix with determinant `±1`; `None` otherwise.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if !self.is_square() {
            return None;
        }
        let snf = smith_normal_form(self);
        if snf.rank != self.rows || snf.diag.iter().any(|&d| d != 1) {
            return None;
        }
        // U A V = I  =>  A^{-1} = V U
        Some(&snf.right * &snf.left)
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

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: i64) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += k * v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: i64) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += k * v;
        }
    }

    /// Rows `(a, b)` become `(k00 a + k01 b, k10 a + k11 b)`.
    fn combine_rows(&mut self, a: usize, b: usize, k: [i64; 4]) {
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)], self[(b, j)]);
            self[(a, j)] = k[0] * x + k[1] * y;
            self[(b, j)] = k[2] * x + k[3] * y;
        }
    }

    /// Columns `(a, b)` become `(k00 a + k01 b, k10 a + k11 b)`.
    fn combine_cols(&mut self, a: usize, b: usize, k: [i64; 4]) {
        for i in 0..self.rows {
            let (x, y) = (self[(i, a)], self[(i, b)]);
            self[(i, a)] = k[0] * x + k[1] * y;
            self[(i, b)] = k[2] * x + k[3] * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    if n == 1 {
        return Some(0);
    }
    let (g, x, _) = extended_gcd(a.rem_euclid(n), n);
    (g == 1).then(|| x.rem_euclid(n))
}

/// Smith normal form `U * A * V = D` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// The `min(m, n)` diagonal entries of `D`; nonzero entries come first,
    /// are positive, and each divides the next.
    pub diag: Vec<i64>,
    /// `U`, an `m x m` unimodular matrix.
    pub left: IntMatrix,
    /// `V`, an `n x n` unimodular matrix.
    pub right: IntMatrix,
    pub rank: usize,
}

/// A determinant-one block sending `(a, b)` to `(gcd, 0)`.
fn bezout_block(a: i64, b: i64) -> [i64; 4] {
    let (g, x, y) = extended_gcd(a, b);
    [x, y, -b / g, a / g]
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let pivot = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| d[(i, j)] != 0)
            .min_by_key(|&(i, j)| d[(i, j)].abs());
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            for i in t + 1..m {
                let b = d[(i, t)];
                if b == 0 {
                    continue;
                }
                let p = d[(t, t)];
                if b % p == 0 {
                    d.add_row_multiple(i, t, -(b / p));
                    u.add_row_multiple(i, t, -(b / p));
                } else {
                    let bezout = bezout_block(p, b);
                    d.combine_rows(t, i, bezout);
                    u.combine_rows(t, i, bezout);
                }
            }
            for j in t + 1..n {
                let b = d[(t, j)];
                if b == 0 {
                    continue;
                }
                let p = d[(t, t)];
                if b % p == 0 {
                    d.add_col_multiple(j, t, -(b / p));
                    v.add_col_multiple(j, t, -(b / p));
                } else {
                    let bezout = bezout_block(p, b);
                    d.combine_cols(t, j, bezout);
                    v.combine_cols(t, j, bezout);
                }
            }
            // column operations may refill column t
            if (t + 1..m).any(|i| d[(i, t)] != 0) {
                continue;
            }
            let p = d[(t, t)];
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[(i, j)] % p != 0));
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, 1);
                    u.add_row_multiple(t, i, 1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let diag = (0..m.min(n)).map(|i| d[(i, i)]).collect();
    SmithForm { diag, left: u, right: v, rank: t }
}

/// Rank over the rationals.
pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank
}

/// A `Z`-basis of the (automatically saturated) kernel `{x in Z^n : A x = 0}`,
/// returned in Hermite normal form.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<i64>> {
    let snf = smith_normal_form(a);
    let basis: Vec<Vec<i64>> = (snf.rank..a.cols()).map(|j| snf.right.column(j)).collect();
    hermite_normal_form(&basis)
}

/// Some integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    let c = snf.left.mul_vec(b);
    let mut y = vec![0i64; a.cols()];
    for (i, &ci) in c.iter().enumerate() {
        if i < snf.rank {
            let di = snf.diag[i];
            if ci % di != 0 {
                return None;
            }
            y[i] = ci / di;
        } else if ci != 0 {
            return None;
        }
    }
    Some(snf.right.mul_vec(&y))
}

/// The canonical particular solution of `A x ≡ b (mod modulus)` with entries
/// in `[0, modulus)`: every free Smith coordinate is set to zero.
pub fn solve_mod(a: &IntMatrix, b: &[i64], modulus: i64) -> Option<Vec<i64>> {
    assert!(modulus >= 1);
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    let c: Vec<i64> = snf.left.mul_vec(b).into_iter().map(|x| x.rem_euclid(modulus)).collect();
    let mut y = vec![0i64; a.cols()];
    for (i, &ci) in c.iter().enumerate() {
        let di = if i < snf.diag.len() { snf.diag[i] } else { 0 };
        let g = gcd(di, modulus);
        if ci % g != 0 {
            return None;
        }
        if i >= a.cols() {
            continue;
        }
        let reduced = modulus / g;
        if reduced == 1 {
            continue;
        }
        let inv = mod_inverse(di / g, reduced).expect("coprime after dividing by gcd");
        y[i] = mul_mod(ci / g, inv, reduced);
    }
    let x = snf.right.mul_vec(&y);
    Some(x.into_iter().map(|e| e.rem_euclid(modulus)).collect())
}

/// The subgroup `{x in (Z/N)^n : A x ≡ 0}` described by generators.
#[derive(Clone, Debug)]
pub struct ModKernel {
    pub modulus: i64,
    /// Ambient dimension `n`.
    pub dim: usize,
    /// Generators `g_i` whose cyclic subgroups form an internal direct sum.
    pub generators: Vec<Vec<i64>>,
    /// Additive order of each generator.
    pub orders: Vec<i64>,
}

impl ModKernel {
    /// Cardinality of the subgroup, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.orders.iter().fold(1u128, |acc, &o| acc.saturating_mul(o as u128))
    }

    /// The element `Σ c_i g_i` reduced into `[0, N)`.
    pub fn combine(&self, coefficients: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.dim];
        for (g, &c) in self.generators.iter().zip(coefficients) {
            for (o, &x) in out.iter_mut().zip(g) {
                *o = (*o + mul_mod(c, x, self.modulus)).rem_euclid(self.modulus);
            }
        }
        out
    }
}

pub fn kernel_mod(a: &IntMatrix, modulus: i64) -> ModKernel {
    let snf = smith_normal_form(a);
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for j in 0..a.cols() {
        let dj = if j < snf.diag.len() { snf.diag[j] } else { 0 };
        let order = gcd(dj, modulus);
        if order == 1 {
            continue;
        }
        let step = modulus / order;
        let g: Vec<i64> =
            snf.right.column(j).into_iter().map(|x| mul_mod(x, step, modulus)).collect();
        generators.push(g);
        orders.push(order);
    }
    ModKernel { modulus, dim: a.cols(), generators, orders }
}

/// Cardinality of the image `A (Z/N)^n` inside `(Z/N)^m`.
pub fn image_order_mod(a: &IntMatrix, modulus: i64) -> u128 {
    let snf = smith_normal_form(a);
    (0..a.rows().min(a.cols()))
        .map(|i| {
            let di = snf.diag[i];
            (modulus / gcd(di, modulus)) as u128
        })
        .product()
}

pub fn mul_mod(a: i64, b: i64, n: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(n as i128)) as i64
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: echelon
/// shape, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are dropped, so the result is a basis.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let Some(width) = rows.first().map(Vec::len) else { return Vec::new() };
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..width {
        if pivot_row == a.len() {
            break;
        }
        loop {
            let nonzero: Vec<usize> =
                (pivot_row..a.len()).filter(|&i| a[i][col] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero.iter().min_by_key(|&&i| a[i][col].abs()).unwrap();
            a.swap(pivot_row, best);
            let mut done = true;
            for i in pivot_row + 1..a.len() {
                if a[i][col] != 0 {
                    let q = a[i][col] / a[pivot_row][col];
                    let (top, rest) = a.split_at_mut(i);
                    for (x, &p) in rest[0].iter_mut().zip(&top[pivot_row]) {
                        *x -= q * p;
                    }
                    if a[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[pivot_row][col] == 0 {
            continue;
        }
        if a[pivot_row][col] < 0 {
            for x in a[pivot_row].iter_mut() {
                *x = -*x;
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    a.truncate(pivot_row);
    for &(r, c) in &pivots {
        let p = a[r][c];
        for i in 0..r {
            let q = a[i][c].div_euclid(p);
            if q != 0 {
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= q * y;
                }
            }
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn check_snf(a: &IntMatrix) {
        let s = smith_normal_form(a);
        let d = &(&s.left * a) * &s.right;
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let expect = if i == j { s.diag[i] } else { 0 };
                assert_eq!(d[(i, j)], expect, "U A V not diagonal for {a:?}");
            }
        }
        assert_eq!(s.left.determinant().abs(), 1);
        assert_eq!(s.right.determinant().abs(), 1);
        for w in s.diag[..s.rank].windows(2) {
            assert_eq!(w[1] % w[0], 0, "divisibility chain broken: {:?}", s.diag);
        }
        assert!(s.diag[..s.rank].iter().all(|&x| x > 0));
        assert!(s.diag[s.rank..].iter().all(|&x| x == 0));
    }

    #[test]
    fn snf_small_examples() {
        check_snf(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        check_snf(&m(&[&[3, 1], &[1, 3]]));
        check_snf(&m(&[&[0, 0], &[0, 0]]));
        check_snf(&m(&[&[6, 4]]));
        check_snf(&m(&[&[2], &[3]]));
        let s = smith_normal_form(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(s.diag, vec![2, 6, 12]);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.determinant(), 1);
        let inv = a.inverse_unimodular().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(m(&[&[2, 0], &[0, 1]]).inverse_unimodular(), None);
        assert_eq!(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]).determinant(), -3);
    }

    #[test]
    fn kernel_of_swap_minus_identity() {
        let a = m(&[&[-1, 1], &[1, -1]]);
        assert_eq!(integer_kernel(&a), vec![vec![1, 1]]);
        assert_eq!(integer_kernel(&IntMatrix::zeros(2, 2)), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn solve_mod_matches_hand_computation() {
        // [[3,1],[1,3]] x = (1,3) mod 8
        let a = m(&[&[3, 1], &[1, 3]]);
        let x = solve_mod(&a, &[1, 3], 8).unwrap();
        let ax = a.mul_vec(&x);
        assert_eq!((ax[0].rem_euclid(8), ax[1].rem_euclid(8)), (1, 3));
        // 2x = 1 mod 4 has no solution
        assert_eq!(solve_mod(&m(&[&[2]]), &[1], 4), None);
    }

    #[test]
    fn kernel_mod_counts() {
        // ker of multiplication by 2 on (Z/8)^2 has 4 elements
        let k = kernel_mod(&m(&[&[2, 0], &[0, 2]]), 8);
        assert_eq!(k.order(), 4);
        assert_eq!(image_order_mod(&m(&[&[4, 0], &[0, 4]]), 8), 4);
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let h = hermite_normal_form(&[vec![2, 2], vec![1, 3]]);
        assert_eq!(h, vec![vec![1, 3], vec![0, 4]]);
        let h2 = hermite_normal_form(&[vec![1, 3], vec![3, 5]]);
        assert_eq!(h, h2);
    }

    #[test]
    fn extended_gcd_identity() {
        for a in -20..20 {
            for b in -20..20 {
                let (g, x, y) = extended_gcd(a, b);
                assert_eq!(g, gcd(a, b));
                assert_eq!(a * x + b * y, g);
            }
        }
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..10, r * c).prop_map(move |data| {
                let rows: Vec<Vec<i64>> = data.chunks(c).map(|ch| ch.to_vec()).collect();
                IntMatrix::from_rows(&rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn snf_reconstructs(a in matrix_strategy()) {
            let s = smith_normal_form(&a);
            let d = &(&s.left * &a) * &s.right;
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    let expect = if i == j { s.diag[i] } else { 0 };
                    prop_assert_eq!(d[(i, j)], expect);
                }
            }
        }

        #[test]
        fn solve_mod_solutions_are_solutions(a in matrix_strategy(), n in 1i64..30, seed in proptest::collection::vec(0i64..30, 4)) {
            // build b in the image so a solution exists
            let x0: Vec<i64> = (0..a.cols()).map(|i| seed[i % seed.len()]).collect();
            let b: Vec<i64> = a.mul_vec(&x0).into_iter().map(|e| e.rem_euclid(n)).collect();
            let x = solve_mod(&a, &b, n).expect("b is in the image");
            let ax: Vec<i64> = a.mul_vec(&x).into_iter().map(|e| e.rem_euclid(n)).collect();
            prop_assert_eq!(ax, b);
        }

        #[test]
        fn kernel_order_matches_enumeration(a in matrix_strategy(), n in 1i64..7) {
            prop_assume!(a.cols() <= 3);
            let cols = a.cols();
            let total = (n as usize).pow(cols as u32);
            let mut count = 0u128;
            for idx in 0..total {
                let mut x = vec![0i64; cols];
                let mut r = idx;
                for e in x.iter_mut() {
                    *e = (r % n as usize) as i64;
                    r /= n as usize;
                }
                if a.mul_vec(&x).iter().all(|e| e.rem_euclid(n) == 0) {
                    count += 1;
                }
            }
            prop_assert_eq!(kernel_mod(&a, n).order(), count);
            prop_assert_eq!(image_order_mod(&a, n) * count, total as u128);
        }

        #[test]
        fn kernel_generators_are_killed(a in matrix_strategy(), n in 1i64..30) {
            let k = kernel_mod(&a, n);
            for g in &k.generators {
                prop_assert!(a.mul_vec(g).iter().all(|e| e.rem_euclid(n) == 0));
            }
        }
    }
}
