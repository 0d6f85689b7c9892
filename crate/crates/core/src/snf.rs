//! Integer matrices, Smith normal form, and the exact solvers built on it.
//!
//! One SNF routine serves every modulus: cocycle relation lattices, coboundary
//! quotients, and the multiplicative constraint systems of the equivalence
//! search all reduce to it.

use num_complex::Complex64;

fn ck_add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("integer overflow in exact linear algebra")
}

fn ck_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("integer overflow in exact linear algebra")
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g, g >= 0.
pub fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// Inverse of a modulo m, for gcd(a, m) = 1, m >= 1.
pub fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let (g, x, _) = egcd(a.rem_euclid(m), m);
    if g != 1 {
        None
    } else {
        Some(x.rem_euclid(m))
    }
}

/// Dense integer matrix with row-major storage.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = IntMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i128 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i128) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut m = IntMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut m = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        m.set(i, j, ck_add(m.get(i, j), ck_mul(a, b)));
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = 0i128;
                for j in 0..self.cols {
                    acc = ck_add(acc, ck_mul(self.get(i, j), v[j]));
                }
                acc
            })
            .collect()
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

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = self.get(i, j);
            self.set(i, j, -v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = self.get(i, j);
            self.set(i, j, -v);
        }
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: i128) {
        for k in 0..self.cols {
            let v = ck_add(self.get(i, k), ck_mul(c, self.get(j, k)));
            self.set(i, k, v);
        }
    }

    /// col_j += c * col_i
    fn add_col(&mut self, j: usize, i: usize, c: i128) {
        for k in 0..self.rows {
            let v = ck_add(self.get(k, j), ck_mul(c, self.get(k, i)));
            self.set(k, j, v);
        }
    }
}

/// Smith normal form `u * a * v = diag(d)` with unimodular transforms and
/// their inverses, `d[i] >= 0` and `d[i] | d[i+1]`.
pub struct Snf {
    pub diag: Vec<i128>,
    pub rank: usize,
    pub u: IntMat,
    pub u_inv: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
}

pub fn smith_normal_form(a: &IntMat) -> Snf {
    let (rows, cols) = (a.rows(), a.cols());
    let mut b = a.clone();
    let mut u = IntMat::identity(rows);
    let mut u_inv = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut v_inv = IntMat::identity(cols);

    // Elementary steps keep b = u * a * v, u * u_inv = I, v * v_inv = I.
    let row_swap = |b: &mut IntMat, u: &mut IntMat, u_inv: &mut IntMat, i: usize, j: usize| {
        b.swap_rows(i, j);
        u.swap_rows(i, j);
        u_inv.swap_cols(i, j);
    };
    let col_swap = |b: &mut IntMat, v: &mut IntMat, v_inv: &mut IntMat, i: usize, j: usize| {
        b.swap_cols(i, j);
        v.swap_cols(i, j);
        v_inv.swap_rows(i, j);
    };
    let row_neg = |b: &mut IntMat, u: &mut IntMat, u_inv: &mut IntMat, i: usize| {
        b.negate_row(i);
        u.negate_row(i);
        u_inv.negate_col(i);
    };
    // row_i += c * row_j
    let row_add = |b: &mut IntMat, u: &mut IntMat, u_inv: &mut IntMat, i: usize, j: usize, c: i128| {
        b.add_row(i, j, c);
        u.add_row(i, j, c);
        u_inv.add_col(j, i, -c);
    };
    // col_j += c * col_i
    let col_add = |b: &mut IntMat, v: &mut IntMat, v_inv: &mut IntMat, j: usize, i: usize, c: i128| {
        b.add_col(j, i, c);
        v.add_col(j, i, c);
        v_inv.add_row(i, j, -c);
    };

    let k_max = rows.min(cols);
    'outer: for k in 0..k_max {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let val = b.get(i, j).abs();
                    if val != 0 && pivot.map_or(true, |(pi, pj)| val < b.get(pi, pj).abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break 'outer };
            row_swap(&mut b, &mut u, &mut u_inv, k, pi);
            col_swap(&mut b, &mut v, &mut v_inv, k, pj);
            if b.get(k, k) < 0 {
                row_neg(&mut b, &mut u, &mut u_inv, k);
            }

            let piv = b.get(k, k);
            let mut clean = true;
            for i in k + 1..rows {
                let q = b.get(i, k).div_euclid(piv);
                if q != 0 {
                    row_add(&mut b, &mut u, &mut u_inv, i, k, -q);
                }
                if b.get(i, k) != 0 {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                let q = b.get(k, j).div_euclid(piv);
                if q != 0 {
                    col_add(&mut b, &mut v, &mut v_inv, j, k, -q);
                }
                if b.get(k, j) != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // Divisibility of the trailing block by the pivot.
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if b.get(i, j) % piv != 0 {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => row_add(&mut b, &mut u, &mut u_inv, k, i, 1),
                None => break,
            }
        }
    }

    let diag: Vec<i128> = (0..k_max).map(|i| b.get(i, i)).collect();
    let rank = diag.iter().filter(|&&d| d != 0).count();
    Snf { diag, rank, u, u_inv, v, v_inv }
}

/// Basis of the integer kernel {x : a x = 0}, returned as matrix columns.
pub fn integer_kernel(a: &IntMat) -> IntMat {
    let s = smith_normal_form(a);
    let n = a.cols();
    let free: Vec<usize> = (0..n)
        .filter(|&i| i >= s.diag.len() || s.diag[i] == 0)
        .collect();
    let mut k = IntMat::zeros(n, free.len());
    for (out, &i) in free.iter().enumerate() {
        for r in 0..n {
            k.set(r, out, s.v.get(r, i));
        }
    }
    k
}

/// The lattice {x in Z^n : a x = 0 mod m}. Contains m Z^n.
pub struct KernelLattice {
    /// Column basis of the lattice: basis = v * diag(t).
    pub basis: IntMat,
    v_inv: IntMat,
    t: Vec<i128>,
}

impl KernelLattice {
    /// Coordinates of lattice members with respect to `basis`.
    /// Panics if a column is not in the lattice.
    pub fn coords(&self, members: &IntMat) -> IntMat {
        let raw = self.v_inv.mul(members);
        let mut out = IntMat::zeros(raw.rows(), raw.cols());
        for i in 0..raw.rows() {
            for j in 0..raw.cols() {
                let v = raw.get(i, j);
                assert!(
                    v % self.t[i] == 0,
                    "vector outside the kernel lattice (row {i})"
                );
                out.set(i, j, v / self.t[i]);
            }
        }
        out
    }
}

pub fn kernel_mod(a: &IntMat, m: i128) -> KernelLattice {
    assert!(m >= 1);
    let s = smith_normal_form(a);
    let n = a.cols();
    let mut t = vec![1i128; n];
    for i in 0..n {
        if i < s.diag.len() && s.diag[i] != 0 {
            t[i] = m / gcd(s.diag[i], m);
        }
    }
    let mut basis = s.v.clone();
    for i in 0..n {
        if t[i] != 1 {
            for r in 0..n {
                basis.set(r, i, ck_mul(basis.get(r, i), t[i]));
            }
        }
    }
    KernelLattice { basis, v_inv: s.v_inv, t }
}

/// Presents Z^n / colspan(rel): returns (elementary divisors padded to n,
/// u_inv whose column i generates the i-th cyclic component).
pub fn quotient_presentation(rel: &IntMat) -> (Vec<i128>, IntMat) {
    let s = smith_normal_form(rel);
    let n = rel.rows();
    let mut divisors = vec![0i128; n];
    for i in 0..s.diag.len().min(n) {
        divisors[i] = s.diag[i];
    }
    (divisors, s.u_inv)
}

/// Solve a x = rhs (mod m) over the integers mod m.
pub fn solve_mod(a: &IntMat, rhs: &[i128], m: i128) -> Option<Vec<i128>> {
    assert!(m >= 1);
    assert_eq!(rhs.len(), a.rows());
    let s = smith_normal_form(a);
    let b = s.u.mul_vec(rhs);
    let n = a.cols();
    let mut y = vec![0i128; n];
    for (j, &bj) in b.iter().enumerate() {
        let d = if j < s.diag.len() { s.diag[j] } else { 0 };
        let bj = bj.rem_euclid(m);
        if d == 0 {
            if bj != 0 {
                return None;
            }
        } else {
            let g = gcd(d, m);
            if bj % g != 0 {
                return None;
            }
            if j < n {
                let md = m / g;
                let inv = mod_inverse((d / g).rem_euclid(md), md).unwrap_or(0);
                y[j] = ((bj / g) % md * inv).rem_euclid(md);
            } else if bj != 0 {
                return None;
            }
        }
    }
    let x = s.v.mul_vec(&y);
    Some(x.iter().map(|&v| v.rem_euclid(m)).collect())
}

fn pow_c(z: Complex64, e: i128) -> Complex64 {
    if e == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let base = if e < 0 { Complex64::new(1.0, 0.0) / z } else { z };
    let mut exp = e.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    let mut sq = base;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= sq;
        }
        sq *= sq;
        exp >>= 1;
    }
    acc
}

fn principal_root(z: Complex64, d: i128) -> Complex64 {
    debug_assert!(d > 0);
    Complex64::from_polar(z.norm().powf(1.0 / d as f64), z.arg() / d as f64)
}

/// Solve prod_i x_i^{a[j][i]} = rhs[j] over nonzero complex numbers.
///
/// Complete: a solution is returned whenever one exists (the coefficient
/// group is divisible, so only the SNF consistency rows can fail).
pub fn solve_multiplicative(a: &IntMat, rhs: &[Complex64], tol: f64) -> Option<Vec<Complex64>> {
    assert_eq!(rhs.len(), a.rows());
    let s = smith_normal_form(a);
    let n = a.cols();
    let one = Complex64::new(1.0, 0.0);

    let mut w = vec![one; n];
    for j in 0..a.rows() {
        let mut sj = one;
        for (k, &r) in rhs.iter().enumerate() {
            let e = s.u.get(j, k);
            if e != 0 {
                sj *= pow_c(r, e);
            }
        }
        let d = if j < s.diag.len() { s.diag[j] } else { 0 };
        if d == 0 {
            if (sj - one).norm() > tol {
                return None;
            }
        } else if j < n {
            w[j] = principal_root(sj, d);
        }
    }

    let mut x = vec![one; n];
    for i in 0..n {
        for (j, &wj) in w.iter().enumerate() {
            let e = s.v.get(i, j);
            if e != 0 && wj != one {
                x[i] *= pow_c(wj, e);
            }
        }
    }
    Some(x)
}
