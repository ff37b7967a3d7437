//! Dense matrices over a `Scalar` field, and matrices of polynomials.
//!
//! `FieldMatrix` does the usual exact linear algebra (rank, kernel,
//! determinant, inverse) by Gaussian elimination, which is legitimate over
//! any of our coefficient fields because every nonzero `Scalar` is
//! invertible. `PolyMatrix` adds determinants of square submatrices and
//! Pfaffians of skew-symmetric ones, both by cofactor-style expansion,
//! which is the right tool at the sizes that occur here (at most 9 x 9).

use crate::poly::{Ctx, MultiPoly, PolyError};
use crate::scalar::{Field, Scalar};
use std::collections::HashMap;

/// Scales a nonzero vector so its first nonzero entry is one.
///
/// This is the canonical representative used everywhere for points and linear
/// forms in projective space; two vectors are proportional exactly when their
/// normalized forms are equal.
pub fn projective_normalize(v: &[crate::scalar::Scalar]) -> Vec<crate::scalar::Scalar> {
    let lead = v
        .iter()
        .find(|s| !s.is_zero())
        .expect("projective representative must be nonzero");
    let inv = lead.inv().expect("nonzero scalar invertible");
    v.iter()
        .map(|s| s.checked_mul(&inv).expect("same field"))
        .collect()
}

/// All k-element subsets of {0, .., n-1} in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Field,
    m: usize,
    n: usize,
    e: Vec<Scalar>, // row-major
}

impl FieldMatrix {
    pub fn zeros(m: usize, n: usize, field: Field) -> FieldMatrix {
        FieldMatrix {
            field,
            m,
            n,
            e: vec![Scalar::zero(field); m * n],
        }
    }

    pub fn identity(n: usize, field: Field) -> FieldMatrix {
        let mut a = FieldMatrix::zeros(n, n, field);
        for i in 0..n {
            a.set(i, i, Scalar::one(field));
        }
        a
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> FieldMatrix {
        let m = rows.len();
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        let field = rows
            .iter()
            .flatten()
            .next()
            .map(|s| s.field())
            .unwrap_or(Field::Rat);
        let mut e = Vec::with_capacity(m * n);
        for r in rows {
            assert_eq!(r.len(), n, "ragged rows");
            for s in r {
                assert_eq!(s.field(), field, "mixed fields in matrix");
                e.push(s);
            }
        }
        FieldMatrix { field, m, n, e }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Scalar>(
        m: usize,
        n: usize,
        field: Field,
        mut f: F,
    ) -> FieldMatrix {
        let mut a = FieldMatrix::zeros(m, n, field);
        for i in 0..m {
            for j in 0..n {
                let s = f(i, j);
                assert_eq!(s.field(), field);
                a.set(i, j, s);
            }
        }
        a
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.e[i * self.n + j] = s;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.e[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> FieldMatrix {
        FieldMatrix::from_fn(self.n, self.m, self.field, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, rhs: &FieldMatrix) -> FieldMatrix {
        assert_eq!((self.m, self.n), (rhs.m, rhs.n));
        FieldMatrix::from_fn(self.m, self.n, self.field, |i, j| {
            self.at(i, j) + rhs.at(i, j)
        })
    }

    pub fn sub(&self, rhs: &FieldMatrix) -> FieldMatrix {
        assert_eq!((self.m, self.n), (rhs.m, rhs.n));
        FieldMatrix::from_fn(self.m, self.n, self.field, |i, j| {
            self.at(i, j) - rhs.at(i, j)
        })
    }

    pub fn neg(&self) -> FieldMatrix {
        FieldMatrix::from_fn(self.m, self.n, self.field, |i, j| self.at(i, j).neg())
    }

    pub fn scale(&self, s: &Scalar) -> FieldMatrix {
        FieldMatrix::from_fn(self.m, self.n, self.field, |i, j| self.at(i, j) * s)
    }

    pub fn mul(&self, rhs: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.n, rhs.m, "dimension mismatch");
        assert_eq!(self.field, rhs.field);
        let mut out = FieldMatrix::zeros(self.m, rhs.n, self.field);
        for i in 0..self.m {
            for k in 0..self.n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.n {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j) + &(a * b);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.n);
        (0..self.m)
            .map(|i| {
                let mut acc = Scalar::zero(self.field);
                for j in 0..self.n {
                    if !self.at(i, j).is_zero() && !v[j].is_zero() {
                        acc = &acc + &(self.at(i, j) * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|s| s.is_zero())
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.m == self.n
            && (0..self.m).all(|i| {
                (i..self.n).all(|j| *self.at(i, j) == self.at(j, i).neg())
            })
    }

    pub fn to_field(&self, target: Field) -> Result<FieldMatrix, PolyError> {
        let mut out = FieldMatrix::zeros(self.m, self.n, target);
        for i in 0..self.m {
            for j in 0..self.n {
                out.set(i, j, crate::poly::convert_coeff(self.at(i, j), target)?);
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..a.n {
            if r == a.m {
                break;
            }
            // find a pivot in column c at or below row r
            let Some(pr) = (r..a.m).find(|&i| !a.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..a.n {
                    let t = a.at(r, j).clone();
                    let s = a.at(pr, j).clone();
                    a.set(r, j, s);
                    a.set(pr, j, t);
                }
            }
            let inv = a.at(r, c).inv().unwrap();
            for j in c..a.n {
                let v = a.at(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..a.m {
                if i == r || a.at(i, c).is_zero() {
                    continue;
                }
                let f = a.at(i, c).clone();
                for j in c..a.n {
                    let v = a.at(i, j) - &(&f * a.at(r, j));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel { v : A v = 0 }.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (rr, pivots) = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.n).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = vec![];
        for &fc in &free {
            let mut v = vec![Scalar::zero(self.field); self.n];
            v[fc] = Scalar::one(self.field);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = rr.at(r, fc).neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.m, self.n, "determinant of a non-square matrix");
        let mut a = self.clone();
        let mut det = Scalar::one(self.field);
        for c in 0..a.n {
            let Some(pr) = (c..a.m).find(|&i| !a.at(i, c).is_zero()) else {
                return Scalar::zero(self.field);
            };
            if pr != c {
                det = det.neg();
                for j in 0..a.n {
                    let t = a.at(c, j).clone();
                    let s = a.at(pr, j).clone();
                    a.set(c, j, s);
                    a.set(pr, j, t);
                }
            }
            det = &det * a.at(c, c);
            let inv = a.at(c, c).inv().unwrap();
            for i in c + 1..a.m {
                if a.at(i, c).is_zero() {
                    continue;
                }
                let f = a.at(i, c) * &inv;
                for j in c..a.n {
                    let v = a.at(i, j) - &(&f * a.at(c, j));
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<FieldMatrix> {
        assert_eq!(self.m, self.n);
        // eliminate on [A | I]
        let mut aug = FieldMatrix::zeros(self.m, 2 * self.n, self.field);
        for i in 0..self.m {
            for j in 0..self.n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.n + i, Scalar::one(self.field));
        }
        let (rr, pivots) = aug.rref();
        if pivots.len() < self.n || pivots[self.n - 1] != self.n - 1 {
            return None;
        }
        Some(FieldMatrix::from_fn(self.m, self.n, self.field, |i, j| {
            rr.at(i, self.n + j).clone()
        }))
    }

    /// Solve A x = b, if consistent (any one solution).
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.m);
        let mut aug = FieldMatrix::zeros(self.m, self.n + 1, self.field);
        for i in 0..self.m {
            for j in 0..self.n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.n, b[i].clone());
        }
        let (rr, pivots) = aug.rref();
        if pivots.contains(&self.n) {
            return None; // inconsistent
        }
        let mut x = vec![Scalar::zero(self.field); self.n];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = rr.at(r, self.n).clone();
        }
        Some(x)
    }

    /// Pfaffian of a skew-symmetric matrix (0 for odd size).
    pub fn pfaffian(&self) -> Scalar {
        assert_eq!(self.m, self.n);
        debug_assert!(self.is_skew_symmetric());
        if self.m % 2 == 1 {
            return Scalar::zero(self.field);
        }
        let rows: Vec<usize> = (0..self.m).collect();
        self.pf_rec(&rows)
    }

    fn pf_rec(&self, rows: &[usize]) -> Scalar {
        if rows.is_empty() {
            return Scalar::one(self.field);
        }
        let r0 = rows[0];
        let mut acc = Scalar::zero(self.field);
        for (j, &rj) in rows.iter().enumerate().skip(1) {
            let a = self.at(r0, rj);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = rows[1..]
                .iter()
                .copied()
                .filter(|&r| r != rj)
                .collect();
            let term = a * &self.pf_rec(&rest);
            if j % 2 == 1 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ctx: Ctx,
    field: Field,
    m: usize,
    n: usize,
    e: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(ctx: &Ctx, field: Field, m: usize, n: usize) -> PolyMatrix {
        PolyMatrix {
            ctx: ctx.clone(),
            field,
            m,
            n,
            e: vec![MultiPoly::zero(ctx, field); m * n],
        }
    }

    pub fn from_rows(ctx: &Ctx, field: Field, rows: Vec<Vec<MultiPoly>>) -> PolyMatrix {
        let m = rows.len();
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut e = Vec::with_capacity(m * n);
        for r in rows {
            assert_eq!(r.len(), n, "ragged rows");
            for p in r {
                assert_eq!(p.field(), field);
                e.push(p);
            }
        }
        PolyMatrix {
            ctx: ctx.clone(),
            field,
            m,
            n,
            e,
        }
    }

    /// Parse a matrix from rows of polynomial strings.
    pub fn parse(ctx: &Ctx, field: Field, rows: &[&[&str]]) -> Result<PolyMatrix, PolyError> {
        let mut out = vec![];
        for r in rows {
            let mut row = vec![];
            for s in r.iter() {
                row.push(MultiPoly::parse(s, ctx, field)?);
            }
            out.push(row);
        }
        Ok(PolyMatrix::from_rows(ctx, field, out))
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, i: usize, j: usize) -> &MultiPoly {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        assert_eq!(p.field(), self.field);
        self.e[i * self.n + j] = p;
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(&self.ctx, self.field, self.n, self.m);
        for i in 0..self.m {
            for j in 0..self.n {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.m, self.n), (rhs.m, rhs.n));
        let mut out = PolyMatrix::zeros(&self.ctx, self.field, self.m, self.n);
        for i in 0..self.m {
            for j in 0..self.n {
                out.set(i, j, self.at(i, j) + rhs.at(i, j));
            }
        }
        out
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> PolyMatrix {
        let mut out = self.clone();
        for p in out.e.iter_mut() {
            *p = p.neg();
        }
        out
    }

    pub fn scale(&self, s: &MultiPoly) -> PolyMatrix {
        let mut out = self.clone();
        for p in out.e.iter_mut() {
            *p = &*p * s;
        }
        out
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.m);
        let mut out = PolyMatrix::zeros(&self.ctx, self.field, self.m, rhs.n);
        for i in 0..self.m {
            for j in 0..rhs.n {
                let mut acc = MultiPoly::zero(&self.ctx, self.field);
                for k in 0..self.n {
                    if self.at(i, k).is_zero() || rhs.at(k, j).is_zero() {
                        continue;
                    }
                    acc = &acc + &(self.at(i, k) * rhs.at(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_field_left(&self, a: &FieldMatrix) -> PolyMatrix {
        assert_eq!(a.cols(), self.m);
        let mut out = PolyMatrix::zeros(&self.ctx, self.field, a.rows(), self.n);
        for i in 0..a.rows() {
            for j in 0..self.n {
                let mut acc = MultiPoly::zero(&self.ctx, self.field);
                for k in 0..self.m {
                    if a.at(i, k).is_zero() || self.at(k, j).is_zero() {
                        continue;
                    }
                    acc = &acc + &self.at(k, j).scale(a.at(i, k));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_field_right(&self, a: &FieldMatrix) -> PolyMatrix {
        assert_eq!(self.n, a.rows());
        let mut out = PolyMatrix::zeros(&self.ctx, self.field, self.m, a.cols());
        for i in 0..self.m {
            for j in 0..a.cols() {
                let mut acc = MultiPoly::zero(&self.ctx, self.field);
                for k in 0..self.n {
                    if self.at(i, k).is_zero() || a.at(k, j).is_zero() {
                        continue;
                    }
                    acc = &acc + &self.at(i, k).scale(a.at(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|p| p.is_zero())
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.m == self.n
            && (0..self.m).all(|i| (i..self.n).all(|j| *self.at(i, j) == self.at(j, i).neg()))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(&self.ctx, self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.at(r, c).clone());
            }
        }
        out
    }

    /// Determinant by cofactor expansion along the sparsest row.
    pub fn det(&self) -> MultiPoly {
        assert_eq!(self.m, self.n);
        let idx: Vec<usize> = (0..self.n).collect();
        self.det_rec(&idx, &idx)
    }

    fn det_rec(&self, rows: &[usize], cols: &[usize]) -> MultiPoly {
        let k = rows.len();
        if k == 0 {
            return MultiPoly::one(&self.ctx, self.field);
        }
        if k == 1 {
            return self.at(rows[0], cols[0]).clone();
        }
        // pick the row with fewest nonzero entries
        let (bi, _) = rows
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                (
                    i,
                    cols.iter().filter(|&&c| !self.at(r, c).is_zero()).count(),
                )
            })
            .min_by_key(|&(_, cnt)| cnt)
            .unwrap();
        let r = rows[bi];
        let sub_rows: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&x| x != r)
            .collect();
        let mut acc = MultiPoly::zero(&self.ctx, self.field);
        for (j, &c) in cols.iter().enumerate() {
            let a = self.at(r, c);
            if a.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = self.det_rec(&sub_rows, &sub_cols);
            let term = a * &minor;
            if (bi + j) % 2 == 0 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        acc
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> MultiPoly {
        assert_eq!(rows.len(), cols.len());
        self.det_rec(rows, cols)
    }

    /// All k x k minors, with their row/column index sets.
    pub fn all_minors(&self, k: usize) -> Vec<(Vec<usize>, Vec<usize>, MultiPoly)> {
        let mut out = vec![];
        for rows in subsets(self.m, k) {
            for cols in subsets(self.n, k) {
                let d = self.minor(&rows, &cols);
                out.push((rows.clone(), cols, d));
            }
        }
        out
    }

    /// Pfaffian of a skew-symmetric matrix (requires even size).
    pub fn pfaffian(&self) -> MultiPoly {
        assert_eq!(self.m, self.n);
        debug_assert!(self.is_skew_symmetric(), "Pfaffian of a non-skew matrix");
        if self.m % 2 == 1 {
            return MultiPoly::zero(&self.ctx, self.field);
        }
        let rows: Vec<usize> = (0..self.m).collect();
        self.pf_rec(&rows)
    }

    /// Pfaffian of the principal submatrix on the given (even-size) index set.
    pub fn sub_pfaffian(&self, rows: &[usize]) -> MultiPoly {
        assert!(rows.len() % 2 == 0);
        self.pf_rec(rows)
    }

    fn pf_rec(&self, rows: &[usize]) -> MultiPoly {
        if rows.is_empty() {
            return MultiPoly::one(&self.ctx, self.field);
        }
        let r0 = rows[0];
        let mut acc = MultiPoly::zero(&self.ctx, self.field);
        for (j, &rj) in rows.iter().enumerate().skip(1) {
            let a = self.at(r0, rj);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = rows[1..]
                .iter()
                .copied()
                .filter(|&r| r != rj)
                .collect();
            let term = a * &self.pf_rec(&rest);
            if j % 2 == 1 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<FieldMatrix, PolyError> {
        let field = point.first().map(|s| s.field()).unwrap_or(self.field);
        let mut out = FieldMatrix::zeros(self.m, self.n, field);
        for i in 0..self.m {
            for j in 0..self.n {
                out.set(i, j, self.at(i, j).evaluate(point)?);
            }
        }
        Ok(out)
    }

    pub fn substitute(&self, map: &HashMap<usize, MultiPoly>) -> Result<PolyMatrix, PolyError> {
        let (tctx, tfield) = match map.values().next() {
            Some(p) => (p.ctx().clone(), p.field()),
            None => (self.ctx.clone(), self.field),
        };
        let mut out = PolyMatrix::zeros(&tctx, tfield, self.m, self.n);
        for i in 0..self.m {
            for j in 0..self.n {
                out.set(i, j, self.at(i, j).substitute(map)?);
            }
        }
        Ok(out)
    }

    pub fn to_field(&self, target: Field) -> Result<PolyMatrix, PolyError> {
        let mut out = PolyMatrix::zeros(&self.ctx, target, self.m, self.n);
        for i in 0..self.m {
            for j in 0..self.n {
                out.set(i, j, self.at(i, j).to_field(target)?);
            }
        }
        Ok(out)
    }

    pub fn entries(&self) -> impl Iterator<Item = &MultiPoly> {
        self.e.iter()
    }
}
