//! Exact integer linear algebra: Smith and Hermite normal forms, integer
//! kernels and linear congruence solving.
//!
//! Everything is arbitrary precision. Matrices are dense and row-major; the
//! sizes that occur in this crate are small, so no attempt is made at the
//! asymptotically fast algorithms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;

/// Dense integer matrix. Zero rows or zero columns are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i).to_vec())).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed so that `rows` may be empty.
    pub fn from_rows(rows: Vec<Vec<Int>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
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

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for p in 0..self.cols {
                let a = &self[(i, p)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(p, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Int::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    *o += vi * a;
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply_col(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        // Bareiss fraction-free elimination.
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Int::zero(),
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

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
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

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

/// `U · M · V = S` with `U`, `V` unimodular and `S` diagonal with
/// `d₁ | d₂ | …`, all `dᵢ ≥ 0`. `v_inv` is the inverse of `V`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SnfResult {
    /// Diagonal entries `d₁, …, d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);

    // Column operations must be mirrored on V (as columns) and on V⁻¹ (as
    // inverse row operations).
    macro_rules! col_swap {
        ($i:expr, $j:expr) => {{
            a.swap_cols($i, $j);
            v.swap_cols($i, $j);
            v_inv.swap_rows($i, $j);
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: &Int = $q;
            a.add_col_multiple($dst, $src, q);
            v.add_col_multiple($dst, $src, q);
            v_inv.add_row_multiple($src, $dst, &-q);
        }};
    }
    macro_rules! row_swap {
        ($i:expr, $j:expr) => {{
            a.swap_rows($i, $j);
            u.swap_rows($i, $j);
        }};
    }
    macro_rules! row_add {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: &Int = $q;
            a.add_row_multiple($dst, $src, q);
            u.add_row_multiple($dst, $src, q);
        }};
    }

    let mut rank = 0;
    for t in 0..r.min(c) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        row_swap!(t, pi);
        col_swap!(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                row_add!(i, t, &-q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                col_add!(j, t, &-q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // Move the smallest remainder in row/column t to the pivot.
                let mut best = (t, t);
                for i in t + 1..r {
                    if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    row_swap!(t, best.0);
                } else if best.1 != t {
                    col_swap!(t, best.1);
                }
                continue;
            }
            // Row and column clean; enforce divisibility of the trailing block.
            let p = a[(t, t)].clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => row_add!(t, i, &Int::one()),
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        rank = t + 1;
    }
    SnfResult { s: a, u, v, v_inv, rank }
}

/// Row-style Hermite normal form of the lattice spanned by `gens` in ℤⁿ.
/// Returns the nonzero rows: strictly increasing pivot columns, positive
/// pivots, entries above each pivot reduced into `[0, pivot)`. Two generator
/// lists span the same lattice iff their results are equal.
pub fn hermite_rows(gens: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let mut rows: Vec<Vec<Int>> =
        gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
    for g in &rows {
        assert_eq!(g.len(), n, "generator length mismatch");
    }
    if let Some(l) = full_rank_multiple(&rows, n) {
        return hermite_rows_modular(rows, n, &l);
    }
    let mut out: Vec<Vec<Int>> = Vec::new();
    for col in 0..n {
        // Fold the gcd of column `col` over all remaining rows into one pivot row.
        let mut pivot: Option<Vec<Int>> = None;
        let mut rest = Vec::with_capacity(rows.len());
        for row in rows.drain(..) {
            if row[col].is_zero() {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let eg = p[col].extended_gcd(&row[col]);
                    let (g, x, y) = (eg.gcd, eg.x, eg.y);
                    let pa = &p[col] / &g;
                    let rb = &row[col] / &g;
                    let new_p: Vec<Int> = p.iter().zip(&row).map(|(a, b)| &x * a + &y * b).collect();
                    let other: Vec<Int> = p.iter().zip(&row).map(|(a, b)| &rb * a - &pa * b).collect();
                    debug_assert!(other[col].is_zero());
                    if other.iter().any(|v| !v.is_zero()) {
                        rest.push(other);
                    }
                    pivot = Some(new_p);
                }
            }
        }
        rows = rest;
        if let Some(mut p) = pivot {
            if p[col].is_negative() {
                p.iter_mut().for_each(|v| *v = -&*v);
            }
            for prev in out.iter_mut() {
                let q = prev[col].div_floor(&p[col]);
                if !q.is_zero() {
                    for (a, b) in prev.iter_mut().zip(&p) {
                        *a -= &q * b;
                    }
                }
            }
            out.push(p);
        }
    }
    out
}

/// Some `L > 0` with `Lℤⁿ` inside the lattice, read off from generators that
/// are multiples of unit vectors.
fn full_rank_multiple(rows: &[Vec<Int>], n: usize) -> Option<Int> {
    if n == 0 {
        return None;
    }
    let mut unit: Vec<Option<Int>> = vec![None; n];
    for r in rows {
        let mut nz = r.iter().enumerate().filter(|(_, x)| !x.is_zero());
        if let (Some((j, x)), None) = (nz.next(), nz.next()) {
            let x = x.abs();
            unit[j] = Some(match unit[j].take() {
                None => x,
                Some(y) => y.gcd(&x),
            });
        }
    }
    unit.iter().try_fold(Int::one(), |acc, u| u.as_ref().map(|u| acc.lcm(u)))
}

/// Hermite rows of a lattice containing `Lℤⁿ`. Each column's pivot is folded
/// together with `L·e_col`, after which later columns may be reduced mod `L`,
/// so no entry ever exceeds `L` in size.
fn hermite_rows_modular(mut rows: Vec<Vec<Int>>, n: usize, l: &Int) -> Vec<Vec<Int>> {
    for r in rows.iter_mut() {
        r.iter_mut().for_each(|x| *x = x.mod_floor(l));
    }
    let mut out: Vec<Vec<Int>> = Vec::with_capacity(n);
    for col in 0..n {
        let mut p = vec![Int::zero(); n];
        p[col] = l.clone();
        let mut rest = Vec::with_capacity(rows.len());
        for row in rows.drain(..) {
            if row[col].is_zero() {
                rest.push(row);
                continue;
            }
            let eg = p[col].extended_gcd(&row[col]);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let pa = &p[col] / &g;
            let rb = &row[col] / &g;
            let new_p: Vec<Int> = p.iter().zip(&row).map(|(a, b)| (&x * a + &y * b).mod_floor(l)).collect();
            let other: Vec<Int> = p.iter().zip(&row).map(|(a, b)| (&rb * a - &pa * b).mod_floor(l)).collect();
            if other.iter().any(|v| !v.is_zero()) {
                rest.push(other);
            }
            p = new_p;
            // the pivot divides L, so reducing it mod L would lose it
            p[col] = g;
        }
        rows = rest;
        for prev in out.iter_mut() {
            let q = prev[col].div_floor(&p[col]);
            if !q.is_zero() {
                for (a, b) in prev.iter_mut().zip(&p) {
                    *a -= &q * b;
                }
            }
        }
        out.push(p);
    }
    out
}

/// Reduces `v` against Hermite rows; returns the remainder. `v` lies in the
/// lattice iff the remainder is zero.
pub fn hermite_reduce(hnf: &[Vec<Int>], v: &[Int]) -> Vec<Int> {
    let mut v = v.to_vec();
    for row in hnf {
        let col = row.iter().position(|x| !x.is_zero()).expect("zero row in HNF");
        let q = v[col].div_floor(&row[col]);
        if !q.is_zero() {
            for (a, b) in v.iter_mut().zip(row) {
                *a -= &q * b;
            }
        }
    }
    v
}

/// Basis of the integer kernel `{z : M z = 0}` (columns of `V` past the rank).
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<Int>> {
    let snf = smith_normal_form(m);
    (snf.rank..m.cols()).map(|j| snf.v.column(j)).collect()
}

/// Solution set of a system of integer congruences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub particular: Option<Vec<Int>>,
    pub homogeneous: Vec<Vec<Int>>,
}

impl SolutionSet {
    pub fn is_solvable(&self) -> bool {
        self.particular.is_some()
    }
}

/// Solves `H z ≡ rhs` where row `i` is read modulo `moduli[i]` (0 means an
/// exact equation over ℤ). The homogeneous part generates every integer
/// solution of the associated homogeneous system.
pub fn solve_congruences(h: &IntMatrix, rhs: &[Int], moduli: &[Int]) -> SolutionSet {
    assert_eq!(h.rows(), rhs.len());
    assert_eq!(h.rows(), moduli.len());
    if !moduli.is_empty() && moduli.iter().all(|m| !m.is_zero()) {
        return solve_modular(h, rhs, moduli);
    }
    let n = h.cols();
    let slack: Vec<usize> = (0..moduli.len()).filter(|&i| !moduli[i].is_zero()).collect();
    let mut k = IntMatrix::zeros(h.rows(), n + slack.len());
    for i in 0..h.rows() {
        for j in 0..n {
            k[(i, j)] = h[(i, j)].clone();
        }
    }
    for (s, &i) in slack.iter().enumerate() {
        k[(i, n + s)] = moduli[i].clone();
    }
    let snf = smith_normal_form(&k);
    let homogeneous: Vec<Vec<Int>> = (snf.rank..k.cols())
        .map(|j| snf.v.column(j)[..n].to_vec())
        .filter(|v: &Vec<Int>| v.iter().any(|x| !x.is_zero()))
        .collect();
    let c = snf.u.apply_col(rhs);
    let mut w = vec![Int::zero(); k.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < snf.rank {
            let (q, rem) = ci.div_rem(&snf.s[(i, i)]);
            if !rem.is_zero() {
                return SolutionSet { particular: None, homogeneous };
            }
            w[i] = q;
        } else if !ci.is_zero() {
            return SolutionSet { particular: None, homogeneous };
        }
    }
    let z = snf.v.apply_col(&w);
    SolutionSet { particular: Some(z[..n].to_vec()), homogeneous }
}

/// [`solve_congruences`] when every modulus is nonzero. Solutions are
/// periodic modulo `L = lcm(moduli)`, so the system is scaled to a single
/// modulus and diagonalized over ℤ/L, which keeps every entry below `L`.
fn solve_modular(h: &IntMatrix, rhs: &[Int], moduli: &[Int]) -> SolutionSet {
    let (r, n) = (h.rows(), h.cols());
    let l = lcm_all(moduli);
    let md = |x: Int| x.mod_floor(&l);
    let mut a: Vec<Vec<Int>> = (0..r)
        .map(|i| {
            let f = &l / &moduli[i];
            h.row(i).iter().map(|x| md(x * &f)).collect()
        })
        .collect();
    let mut c: Vec<Int> = (0..r).map(|i| md(&rhs[i] * (&l / &moduli[i]))).collect();
    // columns of `v` track the column operations
    let mut v: Vec<Vec<Int>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect()).collect();

    let row_add = |a: &mut Vec<Vec<Int>>, c: &mut Vec<Int>, dst: usize, src: usize, q: &Int| {
        if q.is_zero() {
            return;
        }
        for j in 0..n {
            if !a[src][j].is_zero() {
                let x = &a[dst][j] + q * &a[src][j];
                a[dst][j] = x.mod_floor(&l);
            }
        }
        let x = &c[dst] + q * &c[src];
        c[dst] = x.mod_floor(&l);
    };
    let col_add = |a: &mut Vec<Vec<Int>>, v: &mut Vec<Vec<Int>>, dst: usize, src: usize, q: &Int| {
        if q.is_zero() {
            return;
        }
        for row in a.iter_mut().chain(v.iter_mut()) {
            if !row[src].is_zero() {
                let x = &row[dst] + q * &row[src];
                row[dst] = x.mod_floor(&l);
            }
        }
    };
    let col_swap = |a: &mut Vec<Vec<Int>>, v: &mut Vec<Vec<Int>>, x: usize, y: usize| {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(x, y);
        }
    };

    let mut t = 0;
    while t < r.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..n {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j] < a[bi][bj]) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        c.swap(t, pi);
        col_swap(&mut a, &mut v, t, pj);
        loop {
            for i in t + 1..r {
                let q = a[i][t].div_floor(&a[t][t]);
                row_add(&mut a, &mut c, i, t, &-q);
            }
            for j in t + 1..n {
                let q = a[t][j].div_floor(&a[t][t]);
                col_add(&mut a, &mut v, j, t, &-q);
            }
            let mut best = (t, t);
            for i in t + 1..r {
                if !a[i][t].is_zero() && a[i][t] < a[best.0][best.1] {
                    best = (i, t);
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() && a[t][j] < a[best.0][best.1] {
                    best = (t, j);
                }
            }
            if best == (t, t) {
                break;
            }
            if best.0 != t {
                a.swap(t, best.0);
                c.swap(t, best.0);
            } else {
                col_swap(&mut a, &mut v, t, best.1);
            }
        }
        t += 1;
    }

    // a is now diagonal: d_i w_i ≡ c_i (mod L)
    let mut w = vec![Int::zero(); n];
    let mut w_gens: Vec<Vec<Int>> = Vec::new();
    let mut solvable = true;
    for i in 0..r {
        let d = if i < n { a[i][i].clone() } else { Int::zero() };
        let g = d.gcd(&l);
        if !c[i].is_multiple_of(&g) {
            solvable = false;
            continue;
        }
        if i < n {
            let lg = &l / &g;
            let inv = (&d / &g).extended_gcd(&lg).x;
            w[i] = (&c[i] / &g * inv).mod_floor(&lg);
            let mut e = vec![Int::zero(); n];
            e[i] = lg;
            w_gens.push(e);
        }
    }
    for i in r..n {
        let mut e = vec![Int::zero(); n];
        e[i] = Int::one();
        w_gens.push(e);
    }
    let apply_v = |w: &[Int]| -> Vec<Int> {
        let mut z = vec![Int::zero(); n];
        for (j, wj) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (i, zi) in z.iter_mut().enumerate() {
                if !v[i][j].is_zero() {
                    *zi += &v[i][j] * wj;
                }
            }
        }
        z.into_iter().map(md).collect()
    };
    let mut homogeneous: Vec<Vec<Int>> =
        w_gens.iter().map(|g| apply_v(g)).filter(|z| z.iter().any(|x| !x.is_zero())).collect();
    for j in 0..n {
        let mut e = vec![Int::zero(); n];
        e[j] = l.clone();
        homogeneous.push(e);
    }
    SolutionSet { particular: solvable.then(|| apply_v(&w)), homogeneous }
}

/// Canonical basis of the subgroup generated by `gens` inside
/// `⊕ ℤ/orders[i]` (order 0 meaning ℤ): the Hermite basis of the preimage
/// lattice in ℤⁿ.
pub fn subgroup_canonicalize(orders: &[Int], gens: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = orders.len();
    let mut all: Vec<Vec<Int>> = gens.to_vec();
    for (i, d) in orders.iter().enumerate() {
        if !d.is_zero() {
            let mut e = vec![Int::zero(); n];
            e[i] = d.clone();
            all.push(e);
        }
    }
    hermite_rows(&all, n)
}

/// Reduces each coordinate into its canonical residue range.
pub fn reduce_mod(orders: &[Int], v: &mut [Int]) {
    for (x, d) in v.iter_mut().zip(orders) {
        if !d.is_zero() {
            *x = x.mod_floor(d);
        }
    }
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a Int>) -> Int {
    xs.into_iter().fold(Int::one(), |acc, x| acc.lcm(x))
}
