//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`] and [`BigRational`]; there is no
//! floating point anywhere in the crate. The operations are the ones the cone
//! and polytope code needs: Hermite and Smith normal forms, integer kernels,
//! saturated sublattice bases and coordinates with respect to such bases.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ToricError};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have `cols` entries.
    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(ToricError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().cloned());
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Convenience constructor from small integers. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| to_big(r)).collect();
        IntMatrix::from_rows(&rows, cols).expect("ragged matrix literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(ToricError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Keeps only the first `n` rows.
    pub fn truncate_rows(&self, n: usize) -> IntMatrix {
        let n = n.min(self.rows);
        IntMatrix {
            rows: n,
            cols: self.cols,
            data: self.data[..n * self.cols].to_vec(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(dst, c) - q * self.get(src, c);
            self.set(dst, c, v);
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, dst) - q * self.get(r, src);
            self.set(r, dst, v);
        }
    }

    /// Replaces rows (a, b) by (x*a + y*b, s*a + t*b).
    fn combine_rows(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, s: &BigInt, t: &BigInt) {
        for c in 0..self.cols {
            let ra = self.get(a, c).clone();
            let rb = self.get(b, c).clone();
            self.set(a, c, x * &ra + y * &rb);
            self.set(b, c, s * &ra + t * &rb);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square matrices only.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(ToricError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        Ok(bareiss_determinant(self.row_vecs()))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        rank_of(&self.row_vecs())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_vec(self.row(r)))?;
        }
        write!(f, "]")
    }
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vec_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_scale(a: &[BigInt], k: &BigInt) -> Vec<BigInt> {
    a.iter().map(|x| x * k).collect()
}

pub fn vec_gcd(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = vec_gcd(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Extended gcd with a non-negative gcd: returns (g, x, y) with x*a + y*b = g.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Determinant of the square matrix whose rows are `rows`.
pub fn det_rows(rows: &[Vec<BigInt>]) -> BigInt {
    bareiss_determinant(rows.to_vec())
}

/// Rank over the rationals of a list of equal-length vectors.
pub fn rank_of(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[rank][c].clone();
            let b = m[i][c].clone();
            for j in c..cols {
                let v = &m[i][j] * &a - &m[rank][j] * &b;
                m[i][j] = v;
            }
            let g = vec_gcd(&m[i]);
            if !g.is_zero() && !g.is_one() {
                for x in m[i].iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Row-style Hermite normal form: returns `(h, u)` with `u * m = h`, `u`
/// unimodular, `h` in row echelon form with positive pivots, entries above
/// each pivot reduced into `[0, pivot)`, and zero rows at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivot_row = 0;
    for col in 0..h.cols() {
        if pivot_row == h.rows() {
            break;
        }
        for i in pivot_row + 1..h.rows() {
            if h.get(i, col).is_zero() {
                continue;
            }
            let a = h.get(pivot_row, col).clone();
            let b = h.get(i, col).clone();
            let (g, x, y) = ext_gcd(&a, &b);
            let s = -(&b / &g);
            let t = &a / &g;
            h.combine_rows(pivot_row, i, &x, &y, &s, &t);
            u.combine_rows(pivot_row, i, &x, &y, &s, &t);
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let p = h.get(pivot_row, col).clone();
        for i in 0..pivot_row {
            let q = h.get(i, col).div_floor(&p);
            h.sub_row_multiple(i, pivot_row, &q);
            u.sub_row_multiple(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form `left * m * right = diag`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diag: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// The diagonal entries d_1 | d_2 | ... (including trailing zeros).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.diag.rows().min(self.diag.cols());
        (0..n).map(|i| self.diag.get(i, i).clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut d = m.clone();
    let mut left = IntMatrix::identity(m.rows());
    let mut right = IntMatrix::identity(m.cols());
    let n = m.rows().min(m.cols());
    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block goes to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for r in t..d.rows() {
                for c in t..d.cols() {
                    let v = d.get(r, c);
                    if v.is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(br, bc)| v.abs() < d.get(br, bc).abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((br, bc)) = best else {
                return finish_smith(d, left, right);
            };
            d.swap_rows(t, br);
            left.swap_rows(t, br);
            d.swap_cols(t, bc);
            right.swap_cols(t, bc);

            let p = d.get(t, t).clone();
            let mut clean = true;
            for r in t + 1..d.rows() {
                let q = d.get(r, t).div_floor(&p);
                d.sub_row_multiple(r, t, &q);
                left.sub_row_multiple(r, t, &q);
                if !d.get(r, t).is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..d.cols() {
                let q = d.get(t, c).div_floor(&p);
                d.sub_col_multiple(c, t, &q);
                right.sub_col_multiple(c, t, &q);
                if !d.get(t, c).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: pivot must divide every entry of the trailing block
            let mut offender = None;
            'scan: for r in t + 1..d.rows() {
                for c in t + 1..d.cols() {
                    if !(d.get(r, c) % &p).is_zero() {
                        offender = Some(r);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(r) => {
                    // row t += row r, then reduce again
                    let neg_one = -BigInt::one();
                    d.sub_row_multiple(t, r, &neg_one);
                    left.sub_row_multiple(t, r, &neg_one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
    }
    finish_smith(d, left, right)
}

fn finish_smith(mut d: IntMatrix, mut left: IntMatrix, right: IntMatrix) -> SmithForm {
    let n = d.rows().min(d.cols());
    for t in 0..n {
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
    }
    SmithForm {
        diag: d,
        left,
        right,
    }
}

/// Z-basis (as rows) of the integer kernel `{x in Z^cols : m x = 0}`.
/// The result is saturated by construction.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(&m.transpose());
    let rank = (0..h.rows()).take_while(|&r| !h.row(r).iter().all(Zero::is_zero)).count();
    let rows: Vec<Vec<BigInt>> = (rank..u.rows()).map(|r| u.row(r).to_vec()).collect();
    let kernel = IntMatrix::from_rows(&rows, m.cols()).expect("kernel rows have matching width");
    canonical_basis(&kernel)
}

/// Reduces a set of row generators of a lattice to its HNF basis (zero rows dropped).
pub fn canonical_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(m);
    let rank = (0..h.rows()).take_while(|&r| !h.row(r).iter().all(Zero::is_zero)).count();
    h.truncate_rows(rank)
}

/// Common surface of [`LatticeVector`] and [`DualVector`].
pub trait Coordinates: Sized {
    fn coords(&self) -> &[BigInt];
    fn from_coords(coords: Vec<BigInt>) -> Self;
}

/// A point of the character lattice M.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<BigInt>);

/// A point of the dual lattice N (or of the dual of a sublattice of M).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualVector(pub Vec<BigInt>);

macro_rules! coordinate_type {
    ($t:ident) => {
        impl Coordinates for $t {
            fn coords(&self) -> &[BigInt] {
                &self.0
            }
            fn from_coords(coords: Vec<BigInt>) -> Self {
                $t(coords)
            }
        }

        impl $t {
            pub fn from_i64(v: &[i64]) -> Self {
                $t(to_big(v))
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(Zero::is_zero)
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&fmt_vec(&self.0))
            }
        }
    };
}

coordinate_type!(LatticeVector);
coordinate_type!(DualVector);

impl DualVector {
    pub fn pair(&self, v: &LatticeVector) -> BigInt {
        dot(&self.0, &v.0)
    }
}

/// `v / gcd(v)`, positively proportional to `v`.
pub fn primitive_vector<V: Coordinates>(v: &V) -> Result<V> {
    if v.coords().iter().all(Zero::is_zero) {
        return Err(ToricError::ZeroVector);
    }
    Ok(V::from_coords(primitive(v.coords())))
}

/// Basis (rows) of the saturation `Z^d ∩ span_Q(vectors)`, in Hermite normal form.
pub fn sublattice_basis(span_vectors: &[LatticeVector], ambient_rank: usize) -> Result<IntMatrix> {
    let rows: Vec<Vec<BigInt>> = span_vectors.iter().map(|v| v.0.clone()).collect();
    saturated_basis(&rows, ambient_rank)
}

pub(crate) fn saturated_basis(rows: &[Vec<BigInt>], ambient_rank: usize) -> Result<IntMatrix> {
    let a = IntMatrix::from_rows(rows, ambient_rank)?;
    if a.is_zero() {
        return Ok(IntMatrix::zeros(0, ambient_rank));
    }
    let complement = integer_kernel(&a);
    if complement.rows() == 0 {
        return Ok(IntMatrix::identity(ambient_rank));
    }
    Ok(integer_kernel(&complement))
}

/// A lattice given by independent basis rows, with exact coordinate solving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    basis: IntMatrix,
    pivots: Vec<usize>,
    // inverse of the square submatrix on the pivot columns
    inverse: Vec<Vec<BigRational>>,
}

impl LatticeBasis {
    /// The basis rows must be linearly independent.
    pub fn new(basis: IntMatrix) -> Result<Self> {
        let k = basis.rows();
        let d = basis.cols();
        if rank_of(&basis.row_vecs()) != k {
            return Err(ToricError::Internal("lattice basis rows are dependent".into()));
        }
        let mut pivots = Vec::with_capacity(k);
        for c in 0..d {
            if pivots.len() == k {
                break;
            }
            let mut trial: Vec<Vec<BigInt>> = (0..k)
                .map(|r| pivots.iter().map(|&p| basis.get(r, p).clone()).collect())
                .collect();
            for (r, row) in trial.iter_mut().enumerate() {
                row.push(basis.get(r, c).clone());
            }
            // columns as vectors: transpose so that rank counts columns
            let cols: Vec<Vec<BigInt>> = (0..=pivots.len())
                .map(|j| trial.iter().map(|row| row[j].clone()).collect())
                .collect();
            if rank_of(&cols) == pivots.len() + 1 {
                pivots.push(c);
            }
        }
        let square: Vec<Vec<BigRational>> = (0..k)
            .map(|r| {
                pivots
                    .iter()
                    .map(|&p| BigRational::from_integer(basis.get(r, p).clone()))
                    .collect()
            })
            .collect();
        let inverse = invert_rational(square)
            .ok_or_else(|| ToricError::Internal("singular pivot block".into()))?;
        Ok(LatticeBasis {
            basis,
            pivots,
            inverse,
        })
    }

    pub fn standard(d: usize) -> Self {
        LatticeBasis::new(IntMatrix::identity(d)).expect("identity is a basis")
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    /// Rational coordinates `c` with `c * basis = x`, if `x` is in the rational span.
    pub fn rational_coords(&self, x: &[BigInt]) -> Option<Vec<BigRational>> {
        let k = self.rank();
        let xs: Vec<BigRational> = self
            .pivots
            .iter()
            .map(|&p| BigRational::from_integer(x[p].clone()))
            .collect();
        // c = xs * inverse  (row vector times matrix)
        let c: Vec<BigRational> = (0..k)
            .map(|j| {
                (0..k)
                    .map(|i| &xs[i] * &self.inverse[i][j])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect();
        for col in 0..self.ambient() {
            let mut acc = BigRational::zero();
            for (r, cr) in c.iter().enumerate() {
                acc += cr * BigRational::from_integer(self.basis.get(r, col).clone());
            }
            if acc != BigRational::from_integer(x[col].clone()) {
                return None;
            }
        }
        Some(c)
    }

    /// Integer coordinates of `x`, or `None` if `x` is not a lattice point.
    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.rational_coords(x)?;
        c.into_iter()
            .map(|q| if q.is_integer() { Some(q.to_integer()) } else { None })
            .collect()
    }

    /// `c * basis`.
    pub fn lift(&self, c: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient()];
        for (r, cr) in c.iter().enumerate() {
            for (col, o) in out.iter_mut().enumerate() {
                *o += cr * self.basis.get(r, col);
            }
        }
        out
    }
}

pub(crate) fn invert_rational(mut m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        inv.swap(c, p);
        let pv = m[c][c].clone();
        for j in 0..n {
            m[c][j] = &m[c][j] / &pv;
            inv[c][j] = &inv[c][j] / &pv;
        }
        for r in 0..n {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for j in 0..n {
                let a = &m[c][j] * &f;
                m[r][j] -= a;
                let b = &inv[c][j] * &f;
                inv[r][j] -= b;
            }
        }
    }
    Some(inv)
}

/// Integer vector spanning the orthogonal complement of `n - 1` independent
/// vectors in `Z^n` (generalised cross product by cofactors), made primitive.
pub fn normal_vector(rows: &[Vec<BigInt>], n: usize) -> Vec<BigInt> {
    let mut normal = Vec::with_capacity(n);
    for skip in 0..n {
        let minor: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let d = det_rows(&minor);
        normal.push(if skip % 2 == 0 { d } else { -d });
    }
    primitive(&normal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn hnf_identity_and_already_reduced() {
        let (h, u) = hermite_normal_form(&IntMatrix::identity(2));
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));

        let a = m(&[&[2, 0], &[0, 2]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, a);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_gcd_pivot() {
        let a = m(&[&[2, 4], &[1, 3]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h.get(0, 0), &BigInt::from(1));
        assert_eq!(h.get(1, 0), &BigInt::from(0));
        assert_eq!(u.mul(&a).unwrap(), h);
        assert_eq!(u.determinant().unwrap().abs(), BigInt::from(1));
        // |det| is preserved
        assert_eq!(h.determinant().unwrap(), BigInt::from(2));
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&IntMatrix::identity(3)).diag, IntMatrix::identity(3));
        let s = smith_normal_form(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), to_big(&[1, 6]));
        let z = smith_normal_form(&IntMatrix::zeros(2, 3));
        assert!(z.diag.is_zero());
    }

    #[test]
    fn primitive_vector_examples() {
        let v = primitive_vector(&LatticeVector::from_i64(&[2, 4])).unwrap();
        assert_eq!(v, LatticeVector::from_i64(&[1, 2]));
        let v = primitive_vector(&DualVector::from_i64(&[3, 2])).unwrap();
        assert_eq!(v, DualVector::from_i64(&[3, 2]));
        let v = primitive_vector(&LatticeVector::from_i64(&[-4, 6])).unwrap();
        assert_eq!(v, LatticeVector::from_i64(&[-2, 3]));
        assert_eq!(
            primitive_vector(&LatticeVector::from_i64(&[0, 0])),
            Err(ToricError::ZeroVector)
        );
    }

    #[test]
    fn sublattice_examples() {
        let b = sublattice_basis(&[LatticeVector::from_i64(&[2, 0])], 2).unwrap();
        assert_eq!(b, m(&[&[1, 0]]));
        let b = sublattice_basis(
            &[LatticeVector::from_i64(&[1, 0]), LatticeVector::from_i64(&[0, 1])],
            2,
        )
        .unwrap();
        assert_eq!(b, IntMatrix::identity(2));
        let b = sublattice_basis(&[], 3).unwrap();
        assert_eq!(b.rows(), 0);
        // the line through (2,4,6) saturates to (1,2,3)
        let b = sublattice_basis(&[LatticeVector::from_i64(&[2, 4, 6])], 3).unwrap();
        assert_eq!(b, m(&[&[1, 2, 3]]));
        // {(2,0,0),(0,2,2)} saturates to span{(1,0,0),(0,1,1)}
        let b = sublattice_basis(
            &[LatticeVector::from_i64(&[2, 0, 0]), LatticeVector::from_i64(&[0, 2, 2])],
            3,
        )
        .unwrap();
        assert_eq!(b, m(&[&[1, 0, 0], &[0, 1, 1]]));
    }

    #[test]
    fn lattice_basis_coordinates() {
        let lb = LatticeBasis::new(m(&[&[2, 1]])).unwrap();
        assert_eq!(lb.coords(&to_big(&[4, 2])), Some(to_big(&[2])));
        assert_eq!(lb.coords(&to_big(&[1, 1])), None);
        assert_eq!(lb.lift(&to_big(&[3])), to_big(&[6, 3]));
    }

    #[test]
    fn normal_vector_is_orthogonal() {
        let rows = vec![to_big(&[3, -2, 0]), to_big(&[2, -2, 2])];
        let n = normal_vector(&rows, 3);
        assert_eq!(n, to_big(&[-2, -3, -1]));
    }

    fn small_matrix(r: usize, c: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-6i64..=6, r * c).prop_map(move |v| {
            let rows: Vec<Vec<BigInt>> = v.chunks(c).map(to_big).collect();
            IntMatrix::from_rows(&rows, c).unwrap()
        })
    }

    proptest! {
        #[test]
        fn hnf_properties(a in (1usize..4, 1usize..4).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let (h, u) = hermite_normal_form(&a);
            prop_assert_eq!(u.mul(&a).unwrap(), h.clone());
            prop_assert_eq!(u.determinant().unwrap().abs(), BigInt::one());
            let (h2, _) = hermite_normal_form(&h);
            prop_assert_eq!(h2, h);
        }

        #[test]
        fn snf_properties(a in (1usize..4, 1usize..4).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let s = smith_normal_form(&a);
            let prod = s.left.mul(&a).unwrap().mul(&s.right).unwrap();
            prop_assert_eq!(&prod, &s.diag);
            prop_assert_eq!(s.left.determinant().unwrap().abs(), BigInt::one());
            prop_assert_eq!(s.right.determinant().unwrap().abs(), BigInt::one());
            for r in 0..s.diag.rows() {
                for c in 0..s.diag.cols() {
                    if r != c {
                        prop_assert!(s.diag.get(r, c).is_zero());
                    }
                }
            }
            let f = s.invariant_factors();
            for w in f.windows(2) {
                prop_assert!(!w[0].is_negative());
                if w[0].is_zero() {
                    prop_assert!(w[1].is_zero());
                } else {
                    prop_assert!((&w[1] % &w[0]).is_zero());
                }
            }
            if a.rows() == a.cols() {
                let det = a.determinant().unwrap().abs();
                let p: BigInt = f.iter().product();
                prop_assert_eq!(p, det);
            }
        }

        #[test]
        fn primitive_is_idempotent(v in proptest::collection::vec(-30i64..=30, 1..5)) {
            let lv = LatticeVector::from_i64(&v);
            if lv.is_zero() {
                prop_assert!(primitive_vector(&lv).is_err());
            } else {
                let p = primitive_vector(&lv).unwrap();
                prop_assert_eq!(vec_gcd(&p.0), BigInt::one());
                prop_assert_eq!(primitive_vector(&p).unwrap(), p.clone());
                // positive multiple: v = g * p
                let g = vec_gcd(&lv.0);
                prop_assert_eq!(vec_scale(&p.0, &g), lv.0);
            }
        }

        #[test]
        fn saturation_contains_inputs(vs in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 3), 0..4)) {
            let lvs: Vec<LatticeVector> = vs.iter().map(|v| LatticeVector::from_i64(v)).collect();
            let b = sublattice_basis(&lvs, 3).unwrap();
            let rows: Vec<Vec<BigInt>> = lvs.iter().map(|v| v.0.clone()).collect();
            prop_assert_eq!(b.rows(), rank_of(&rows));
            if b.rows() > 0 {
                let lb = LatticeBasis::new(b.clone()).unwrap();
                for v in &lvs {
                    prop_assert!(lb.coords(&v.0).is_some());
                }
                // output lies in the rational span of the input
                let mut all = rows.clone();
                for r in b.row_vecs() {
                    all.push(r);
                }
                prop_assert_eq!(rank_of(&all), rank_of(&rows));
            }
        }
    }
}
