//! Signed monomial operators, exterior-power bookkeeping, and finite group
//! actions by coordinate permutation and root-of-unity scaling.
//!
//! Every finite symmetry used in this library (cyclic coordinate shifts,
//! diagonal scalings by roots of unity, index permutations, and the operators
//! they induce on wedge powers and tensor products) sends each basis vector to
//! a scalar multiple of a single basis vector.  Working with that restricted
//! class keeps orbit and invariant-subspace computations exact and fast.

use std::collections::{HashMap, HashSet};

use crate::mat::{subsets, FieldMatrix, PolyMatrix};
use crate::poly::{Ctx, Mono, MultiPoly};
use crate::scalar::{Field, Scalar, ScalarError};

/// A root of unity of exact order `n` in the given field.
///
/// Cyclotomic fields return their defining root (or a power of it when `n`
/// divides the conductor); prime fields return the smallest element of exact
/// multiplicative order `n`.
pub fn field_root_of_unity(field: &Field, n: u64) -> Result<Scalar, ScalarError> {
    match field {
        Field::Cyc(m) => {
            let z = Scalar::zeta(*m)?;
            let m = *m as u64;
            if m % n != 0 {
                return Err(ScalarError::RootOrderUnavailable(field.clone(), n));
            }
            z.pow_i64((m / n) as i64)
        }
        Field::Fp(p) => Scalar::root_of_unity(*p, n),
        f => Err(ScalarError::RootOrderUnavailable(f.clone(), n)),
    }
}

/// An invertible operator sending basis vector `e_i` to `scale[i] * e_{perm[i]}`.
///
/// Interpreted on coordinate functions, the same data acts by the substitution
/// `z_i -> scale[i] * z_{perm[i]}`; see [`MonomialOp::apply_to_poly`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOp {
    field: Field,
    perm: Vec<usize>,
    scale: Vec<Scalar>,
}

impl MonomialOp {
    pub fn new(field: Field, perm: Vec<usize>, scale: Vec<Scalar>) -> MonomialOp {
        assert_eq!(perm.len(), scale.len(), "permutation/scale length mismatch");
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            assert!(p < n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        MonomialOp { field, perm, scale }
    }

    pub fn identity(field: Field, n: usize) -> MonomialOp {
        MonomialOp {
            field: field.clone(),
            perm: (0..n).collect(),
            scale: vec![Scalar::one(field); n],
        }
    }

    /// Permutation with all scale factors equal to one.
    pub fn permutation(field: Field, perm: Vec<usize>) -> MonomialOp {
        let n = perm.len();
        MonomialOp::new(field, perm, vec![Scalar::one(field.clone()); n])
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scale(&self) -> &[Scalar] {
        &self.scale
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p == i)
            && self.scale.iter().all(|s| s.is_one())
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn after(&self, other: &MonomialOp) -> MonomialOp {
        assert_eq!(self.dim(), other.dim());
        let n = self.dim();
        let mut perm = vec![0usize; n];
        let mut scale = Vec::with_capacity(n);
        for i in 0..n {
            let mid = other.perm[i];
            perm[i] = self.perm[mid];
            scale.push(
                other.scale[i]
                    .checked_mul(&self.scale[mid])
                    .expect("operator scales live in one field"),
            );
        }
        MonomialOp::new(self.field.clone(), perm, scale)
    }

    pub fn inverse(&self) -> MonomialOp {
        let n = self.dim();
        let mut perm = vec![0usize; n];
        let mut scale = vec![Scalar::one(self.field.clone()); n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            scale[self.perm[i]] = self.scale[i].inv().expect("operator scale invertible");
        }
        MonomialOp::new(self.field.clone(), perm, scale)
    }

    pub fn pow(&self, k: u32) -> MonomialOp {
        let mut out = MonomialOp::identity(self.field.clone(), self.dim());
        for _ in 0..k {
            out = self.after(&out);
        }
        out
    }

    /// Matrix whose column `i` is the image of `e_i`.
    pub fn to_matrix(&self) -> FieldMatrix {
        let n = self.dim();
        let mut m = FieldMatrix::zeros(n, n, self.field.clone());
        for i in 0..n {
            m.set(self.perm[i], i, self.scale[i].clone());
        }
        m
    }

    pub fn apply_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim());
        let mut out = vec![Scalar::zero(self.field.clone()); self.dim()];
        for i in 0..self.dim() {
            out[self.perm[i]] = v[i]
                .checked_mul(&self.scale[i])
                .expect("vector entries live in the operator field");
        }
        out
    }

    /// Substitution action on polynomials: `z_i -> scale[i] * z_{perm[i]}`.
    pub fn apply_to_poly(&self, f: &MultiPoly) -> MultiPoly {
        assert_eq!(f.ctx().len(), self.dim(), "variable count mismatch");
        let mut out = MultiPoly::zero(f.ctx(), f.field().clone());
        for (mono, coef) in f.terms() {
            let mut exps = vec![0u16; self.dim()];
            let mut c = coef.clone();
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                exps[self.perm[i]] += e;
                let s = self.scale[i]
                    .pow_i64(e as i64)
                    .expect("scale power in field");
                c = c.checked_mul(&s).expect("coefficient in field");
            }
            out.add_term(Mono(exps), c);
        }
        out
    }

    /// True when `f` is sent to itself by the substitution action.
    pub fn fixes_poly(&self, f: &MultiPoly) -> bool {
        self.apply_to_poly(f) == *f
    }
}

/// Sorts a pair of distinct indices, returning the permutation sign.
pub fn sort2(i: usize, j: usize) -> Option<(i32, (usize, usize))> {
    if i == j {
        None
    } else if i < j {
        Some((1, (i, j)))
    } else {
        Some((-1, (j, i)))
    }
}

/// Sorts a triple of distinct indices, returning the permutation sign.
pub fn sort3(i: usize, j: usize, k: usize) -> Option<(i32, (usize, usize, usize))> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut v = [i, j, k];
    let mut sign = 1;
    // Three-element bubble sort keeps the sign bookkeeping transparent.
    for pass in 0..2 {
        for t in 0..2 - pass {
            if v[t] > v[t + 1] {
                v.swap(t, t + 1);
                sign = -sign;
            }
        }
    }
    Some((sign, (v[0], v[1], v[2])))
}

/// Indexed basis of sorted pairs `(i, j)` with `i < j < n`, in lexicographic order.
pub struct PairBasis {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl PairBasis {
    pub fn new(n: usize) -> PairBasis {
        let pairs: Vec<(usize, usize)> = subsets(n, 2).into_iter().map(|s| (s[0], s[1])).collect();
        let index = pairs.iter().enumerate().map(|(a, &p)| (p, a)).collect();
        PairBasis { n, pairs, index }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        self.index[&(i, j)]
    }
}

/// Indexed basis of sorted triples `(i, j, k)` with `i < j < k < n`.
pub struct TripleBasis {
    pub n: usize,
    pub triples: Vec<(usize, usize, usize)>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl TripleBasis {
    pub fn new(n: usize) -> TripleBasis {
        let triples: Vec<(usize, usize, usize)> = subsets(n, 3)
            .into_iter()
            .map(|s| (s[0], s[1], s[2]))
            .collect();
        let index = triples.iter().enumerate().map(|(a, &t)| (t, a)).collect();
        TripleBasis { n, triples, index }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        self.index[&(i, j, k)]
    }
}

/// Operator induced on the second wedge power, with signs folded into scales.
pub fn induced_pair_op(op: &MonomialOp, basis: &PairBasis) -> MonomialOp {
    assert_eq!(op.dim(), basis.n);
    let mut perm = Vec::with_capacity(basis.len());
    let mut scale = Vec::with_capacity(basis.len());
    for &(i, j) in &basis.pairs {
        let (sign, (a, b)) = sort2(op.perm[i], op.perm[j]).expect("permutation images distinct");
        perm.push(basis.index(a, b));
        let mut s = op.scale[i]
            .checked_mul(&op.scale[j])
            .expect("scales in field");
        if sign < 0 {
            s = s.neg();
        }
        scale.push(s);
    }
    MonomialOp::new(op.field.clone(), perm, scale)
}

/// Operator induced on the third wedge power, with signs folded into scales.
pub fn induced_triple_op(op: &MonomialOp, basis: &TripleBasis) -> MonomialOp {
    assert_eq!(op.dim(), basis.n);
    let mut perm = Vec::with_capacity(basis.len());
    let mut scale = Vec::with_capacity(basis.len());
    for &(i, j, k) in &basis.triples {
        let (sign, (a, b, c)) =
            sort3(op.perm[i], op.perm[j], op.perm[k]).expect("permutation images distinct");
        perm.push(basis.index(a, b, c));
        let mut s = op.scale[i]
            .checked_mul(&op.scale[j])
            .and_then(|t| t.checked_mul(&op.scale[k]))
            .expect("scales in field");
        if sign < 0 {
            s = s.neg();
        }
        scale.push(s);
    }
    MonomialOp::new(op.field.clone(), perm, scale)
}

/// Tensor product operator on `V ⊗ W`, indexed by `i * dim(W) + j`.
pub fn tensor_op(a: &MonomialOp, b: &MonomialOp) -> MonomialOp {
    let (da, db) = (a.dim(), b.dim());
    let mut perm = Vec::with_capacity(da * db);
    let mut scale = Vec::with_capacity(da * db);
    for i in 0..da {
        for j in 0..db {
            perm.push(a.perm[i] * db + b.perm[j]);
            scale.push(
                a.scale[i]
                    .checked_mul(&b.scale[j])
                    .expect("scales in field"),
            );
        }
    }
    MonomialOp::new(a.field.clone(), perm, scale)
}

/// Cyclic shift on five coordinates: `z_i -> z_{i+1}` (indices mod 5).
pub fn shift5(field: Field) -> MonomialOp {
    MonomialOp::permutation(field, (0..5).map(|i| (i + 1) % 5).collect())
}

/// Diagonal scaling `z_i -> ζ^{t·i} z_i` on five coordinates (1-based weights).
pub fn diag5(field: Field, t: i64) -> Result<MonomialOp, ScalarError> {
    let z = field_root_of_unity(&field, 5)?;
    let scale = (0..5)
        .map(|i| z.pow_i64(t * (i as i64 + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MonomialOp::new(field, (0..5).collect(), scale))
}

/// Index of the coordinate labelled by the affine plane point `(r, c)` over F_3.
///
/// The nine coordinates are identified with points of the affine plane in
/// row-major order: index `3r + c` corresponds to `(r, c)`.
pub fn plane_index(r: i64, c: i64) -> usize {
    (r.rem_euclid(3) * 3 + c.rem_euclid(3)) as usize
}

/// Row shift on nine coordinates: `x_{r,c} -> x_{r+1,c}`.
pub fn shift9_row(field: Field) -> MonomialOp {
    let perm = (0..9)
        .map(|i| plane_index(i as i64 / 3 + 1, i as i64 % 3))
        .collect();
    MonomialOp::permutation(field, perm)
}

/// Column shift on nine coordinates: `x_{r,c} -> x_{r,c+1}`.
pub fn shift9_col(field: Field) -> MonomialOp {
    let perm = (0..9)
        .map(|i| plane_index(i as i64 / 3, i as i64 % 3 + 1))
        .collect();
    MonomialOp::permutation(field, perm)
}

/// Diagonal scaling `x_{r,c} -> ω^r x_{r,c}` on nine coordinates.
pub fn diag9_row(field: Field) -> Result<MonomialOp, ScalarError> {
    let w = field_root_of_unity(&field, 3)?;
    let scale = (0..9)
        .map(|i| w.pow_i64(i as i64 / 3))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MonomialOp::new(field, (0..9).collect(), scale))
}

/// Diagonal scaling `x_{r,c} -> ω^c x_{r,c}` on nine coordinates.
pub fn diag9_col(field: Field) -> Result<MonomialOp, ScalarError> {
    let w = field_root_of_unity(&field, 3)?;
    let scale = (0..9)
        .map(|i| w.pow_i64(i as i64 % 3))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MonomialOp::new(field, (0..9).collect(), scale))
}

/// The involution `x_{r,c} -> x_{-r,-c}`.
pub fn iota9(field: Field) -> MonomialOp {
    let perm = (0..9)
        .map(|i| plane_index(-(i as i64 / 3), -(i as i64 % 3)))
        .collect();
    MonomialOp::permutation(field, perm)
}

/// Coset representatives `σ^a τ^b` of the projective Heisenberg action on
/// five coordinates, with `τ` of diagonal weight `t`.
pub fn heisenberg5_ops(field: Field, t: i64) -> Result<Vec<MonomialOp>, ScalarError> {
    let s = shift5(field.clone());
    let d = diag5(field, t)?;
    let mut out = Vec::with_capacity(25);
    for a in 0..5 {
        for b in 0..5 {
            out.push(s.pow(a).after(&d.pow(b)));
        }
    }
    Ok(out)
}

/// Coset representatives `σ1^a σ2^b τ1^c τ2^d` of the projective Heisenberg
/// action on nine coordinates.
pub fn heisenberg9_ops(field: Field) -> Result<Vec<MonomialOp>, ScalarError> {
    let s1 = shift9_row(field.clone());
    let s2 = shift9_col(field.clone());
    let t1 = diag9_row(field.clone())?;
    let t2 = diag9_col(field)?;
    let mut out = Vec::with_capacity(81);
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    out.push(s1.pow(a).after(&s2.pow(b)).after(&t1.pow(c)).after(&t2.pow(d)));
                }
            }
        }
    }
    Ok(out)
}

/// The permutation of the nine coordinates induced by an invertible affine map
/// `(r, c) -> M (r, c) + v` of the plane over F_3.
pub fn affine_perm9(field: Field, m: [[i64; 2]; 2], v: [i64; 2]) -> MonomialOp {
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).rem_euclid(3);
    assert!(det != 0, "affine map must be invertible mod 3");
    let perm = (0..9)
        .map(|i| {
            let (r, c) = (i as i64 / 3, i as i64 % 3);
            plane_index(m[0][0] * r + m[0][1] * c + v[0], m[1][0] * r + m[1][1] * c + v[1])
        })
        .collect();
    MonomialOp::permutation(field, perm)
}

/// All 432 coordinate permutations coming from invertible affine maps of the
/// plane over F_3 (48 linear parts times 9 translations).
pub fn affine_ops9(field: Field) -> Vec<MonomialOp> {
    let mut out = Vec::with_capacity(432);
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    if (a * d - b * c) % 3 == 0 {
                        continue;
                    }
                    for v0 in 0..3 {
                        for v1 in 0..3 {
                            out.push(affine_perm9(
                                field.clone(),
                                [[a, b], [c, d]],
                                [v0, v1],
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Basis of the common fixed space of a family of operators, as row vectors.
pub fn invariant_subspace(ops: &[FieldMatrix]) -> Vec<Vec<Scalar>> {
    assert!(!ops.is_empty());
    let n = ops[0].cols();
    let field = ops[0].field().clone();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for op in ops {
        assert_eq!(op.rows(), n);
        assert_eq!(op.cols(), n);
        let diff = op.sub(&FieldMatrix::identity(n, field.clone()));
        for i in 0..n {
            rows.push(diff.row(i).to_vec());
        }
    }
    FieldMatrix::from_rows(rows).kernel_basis()
}

/// Common fixed space of monomial operators, as row vectors.
pub fn invariants_of_ops(ops: &[MonomialOp]) -> Vec<Vec<Scalar>> {
    let mats: Vec<FieldMatrix> = ops.iter().map(|o| o.to_matrix()).collect();
    invariant_subspace(&mats)
}

/// Whether `v` lies in the row span of `vectors`.
pub fn in_span(vectors: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    if vectors.is_empty() {
        return v.iter().all(|s| s.is_zero());
    }
    let base = FieldMatrix::from_rows(vectors.to_vec()).rank();
    let mut all = vectors.to_vec();
    all.push(v.to_vec());
    FieldMatrix::from_rows(all).rank() == base
}

/// Basis of the homogeneous forms of the given degree fixed by every listed
/// substitution operator.
pub fn invariant_forms(
    ctx: &Ctx,
    field: Field,
    degree: u16,
    ops: &[MonomialOp],
) -> Vec<MultiPoly> {
    let indexer = crate::ideal::DegreeIndexer::new(ctx.len(), degree as usize);
    let dim = indexer.len();
    // Each substitution operator permutes monomials up to scalar, so its
    // action on degree-d forms is again a monomial operator.
    let mut induced = Vec::with_capacity(ops.len());
    for op in ops {
        let mut perm = Vec::with_capacity(dim);
        let mut scale = Vec::with_capacity(dim);
        for t in 0..dim {
            let mono = indexer.mono(t as u32);
            let mut exps = vec![0u16; ctx.len()];
            let mut s = Scalar::one(field.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                exps[op.perm[i]] += e;
                s = s
                    .checked_mul(&op.scale[i].pow_i64(e as i64).expect("scale power"))
                    .expect("scalar product");
            }
            let target = indexer
                .index(&Mono(exps))
                .expect("permuted monomial has the same degree");
            perm.push(target as usize);
            scale.push(s);
        }
        induced.push(MonomialOp::new(field.clone(), perm, scale));
    }
    invariants_of_ops(&induced)
        .into_iter()
        .map(|v| {
            let mut f = MultiPoly::zero(ctx, field.clone());
            for (t, coef) in v.into_iter().enumerate() {
                if !coef.is_zero() {
                    f.add_term(indexer.mono(t as u32).clone(), coef);
                }
            }
            f
        })
        .collect()
}

/// An element of `A ⊗ ∧²B` for five-dimensional `A` and `B`, stored on the
/// basis `a_i ⊗ b_j ∧ b_k` with `j < k`.
pub struct TensorAW2 {
    field: Field,
    pairs: PairBasis,
    coords: Vec<Scalar>,
}

impl TensorAW2 {
    pub fn zero(field: Field) -> TensorAW2 {
        let pairs = PairBasis::new(5);
        let coords = vec![Scalar::zero(field.clone()); 5 * pairs.len()];
        TensorAW2 {
            field,
            pairs,
            coords,
        }
    }

    /// Adds `c · a_i ⊗ b_j ∧ b_k`; unsorted wedge indices contribute a sign.
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, c: i64) {
        let (sign, (a, b)) = sort2(j, k).expect("wedge indices must be distinct");
        let idx = i * self.pairs.len() + self.pairs.index(a, b);
        let add = Scalar::from_i64(sign as i64 * c, self.field.clone());
        self.coords[idx] = self.coords[idx].checked_add(&add).expect("same field");
    }

    pub fn as_vec(&self) -> &[Scalar] {
        &self.coords
    }

    /// The skew matrix over polynomials in `z_1..z_5` obtained by contracting
    /// the `A` factor: entry `(j, k)` is `Σ_i coeff(a_i ⊗ b_j ∧ b_k) z_i`.
    pub fn to_skew_poly_matrix(&self, ctx: &Ctx) -> PolyMatrix {
        assert_eq!(ctx.len(), 5);
        let mut m = PolyMatrix::zeros(ctx, self.field.clone(), 5, 5);
        for i in 0..5 {
            for (pidx, &(j, k)) in self.pairs.pairs.iter().enumerate() {
                let c = &self.coords[i * self.pairs.len() + pidx];
                if c.is_zero() {
                    continue;
                }
                let zi = MultiPoly::var(ctx, self.field.clone(), i).scale(c);
                m.set(j, k, m.at(j, k) + &zi);
                m.set(k, j, m.at(k, j) - &zi);
            }
        }
        m
    }
}

/// An element of the third wedge power of an `n`-dimensional space.
pub struct Wedge3Elem {
    field: Field,
    basis: TripleBasis,
    coords: Vec<Scalar>,
}

impl Wedge3Elem {
    pub fn zero(field: Field, n: usize) -> Wedge3Elem {
        let basis = TripleBasis::new(n);
        let coords = vec![Scalar::zero(field.clone()); basis.len()];
        Wedge3Elem {
            field,
            basis,
            coords,
        }
    }

    /// Adds `c · e_i ∧ e_j ∧ e_k`; unsorted indices contribute a sign.
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, c: i64) {
        let (sign, (a, b, d)) = sort3(i, j, k).expect("wedge indices must be distinct");
        let idx = self.basis.index(a, b, d);
        let add = Scalar::from_i64(sign as i64 * c, self.field.clone());
        self.coords[idx] = self.coords[idx].checked_add(&add).expect("same field");
    }

    pub fn as_vec(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn basis(&self) -> &TripleBasis {
        &self.basis
    }

    /// The skew matrix of linear forms built from the contractions
    /// `∂_m (e_i ∧ e_j ∧ e_k) = δ_{mi} e_{jk} - δ_{mj} e_{ik} + δ_{mk} e_{ij}`:
    /// each triple with coefficient `c` contributes `c z_i` to entry `(j, k)`,
    /// `-c z_j` to `(i, k)`, and `c z_k` to `(i, j)`.
    pub fn to_skew_poly_matrix(&self, ctx: &Ctx) -> PolyMatrix {
        let n = self.basis.n;
        assert_eq!(ctx.len(), n);
        let mut m = PolyMatrix::zeros(ctx, self.field.clone(), n, n);
        let bump = |m: &mut PolyMatrix, r: usize, c: usize, var: usize, coef: &Scalar| {
            let f = MultiPoly::var(ctx, self.field.clone(), var).scale(coef);
            m.set(r, c, m.at(r, c) + &f);
            m.set(c, r, m.at(c, r) - &f);
        };
        for (t, &(i, j, k)) in self.basis.triples.iter().enumerate() {
            let c = self.coords[t].clone();
            if c.is_zero() {
                continue;
            }
            bump(&mut m, j, k, i, &c);
            bump(&mut m, i, k, j, &c.neg());
            bump(&mut m, i, j, k, &c);
        }
        m
    }
}

/// Closes a generating set of monomial operators under composition.
///
/// Returns `None` if the closure exceeds `cap` elements.
pub fn close_group(gens: &[MonomialOp], cap: usize) -> Option<Vec<MonomialOp>> {
    assert!(!gens.is_empty());
    let mut seen: HashSet<MonomialOp> = HashSet::new();
    let id = MonomialOp::identity(gens[0].field().clone(), gens[0].dim());
    let mut queue = vec![id.clone()];
    seen.insert(id);
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        for g in gens {
            let next = g.after(&cur);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push(next);
            }
        }
    }
    Some(queue)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarContext;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z5_names() -> Vec<String> {
        (1..=5).map(|i| format!("z{i}")).collect()
    }

    fn z9_names() -> Vec<String> {
        (1..=9).map(|i| format!("z{i}")).collect()
    }

    fn ctx_of(names: &[String]) -> Ctx {
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        VarContext::new(&refs)
    }

    #[test]
    fn wedge_sign_bookkeeping() {
        assert_eq!(sort3(2, 1, 0), Some((-1, (0, 1, 2))));
        assert_eq!(sort3(1, 2, 0), Some((1, (0, 1, 2))));
        assert_eq!(sort3(0, 0, 1), None);
        let mut v = Wedge3Elem::zero(Field::Rat, 3);
        v.add_term(2, 1, 0, 1);
        assert_eq!(v.as_vec()[0], Scalar::from_i64(-1, Field::Rat));
    }

    #[test]
    fn contraction_matrix_of_a_single_wedge() {
        let names = ["z1", "z2", "z3"];
        let ctx = VarContext::new(&names);
        let mut v = Wedge3Elem::zero(Field::Rat, 3);
        v.add_term(0, 1, 2, 1);
        let m = v.to_skew_poly_matrix(&ctx);
        let expect = PolyMatrix::parse(
            &ctx,
            Field::Rat,
            &[&["0", "z3", "-z2"], &["-z3", "0", "z1"], &["z2", "-z1", "0"]],
        )
        .unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.at(i, j), expect.at(i, j), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn induced_operators_are_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let field = Field::Fp(61);
        let basis = TripleBasis::new(6);
        for _ in 0..5 {
            let mut ops = Vec::new();
            for _ in 0..2 {
                let mut perm: Vec<usize> = (0..6).collect();
                for i in (1..6).rev() {
                    let j = rng.gen_range(0..=i);
                    perm.swap(i, j);
                }
                let scale = (0..6)
                    .map(|_| Scalar::fp(61, rng.gen_range(1..61)).unwrap())
                    .collect();
                ops.push(MonomialOp::new(field.clone(), perm, scale));
            }
            let lhs = induced_triple_op(&ops[0].after(&ops[1]), &basis);
            let rhs = induced_triple_op(&ops[0], &basis).after(&induced_triple_op(&ops[1], &basis));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn heisenberg_invariants_in_a_tensor_wedge_square() {
        // The diagonal scaling on the wedge factor needs twice the weight of
        // the scaling on the plain factor for the central characters to
        // cancel; with that twist the fixed space is exactly two-dimensional.
        let field = Field::Cyc(5);
        let pairs = PairBasis::new(5);
        let s = tensor_op(
            &shift5(field.clone()),
            &induced_pair_op(&shift5(field.clone()), &pairs),
        );
        let t = tensor_op(
            &diag5(field.clone(), 1).unwrap(),
            &induced_pair_op(&diag5(field.clone(), 2).unwrap(), &pairs),
        );
        let inv = invariants_of_ops(&[s, t]);
        assert_eq!(inv.len(), 2);

        let mut h1 = TensorAW2::zero(field.clone());
        let mut h2 = TensorAW2::zero(field.clone());
        for i in 0..5 {
            h1.add_term(i, (i + 2) % 5, (i + 3) % 5, 1);
            h2.add_term(i, (i + 4) % 5, (i + 1) % 5, 1);
        }
        assert!(in_span(&inv, h1.as_vec()));
        assert!(in_span(&inv, h2.as_vec()));

        // Without the twist the central characters do not cancel and nothing
        // is fixed by both generators.
        let t_plain = tensor_op(
            &diag5(field.clone(), 1).unwrap(),
            &induced_pair_op(&diag5(field.clone(), 1).unwrap(), &pairs),
        );
        let s_again = tensor_op(
            &shift5(field.clone()),
            &induced_pair_op(&shift5(field), &pairs),
        );
        let none = invariants_of_ops(&[s_again, t_plain]);
        assert!(none.is_empty());
    }

    #[test]
    fn heisenberg_invariants_in_wedge_cube_of_nine_space() {
        let field = Field::Cyc(3);
        let basis = TripleBasis::new(9);
        let ops: Vec<MonomialOp> = [
            shift9_row(field.clone()),
            shift9_col(field.clone()),
            diag9_row(field.clone()).unwrap(),
            diag9_col(field.clone()).unwrap(),
        ]
        .iter()
        .map(|o| induced_triple_op(o, &basis))
        .collect();
        let inv = invariants_of_ops(&ops);
        assert_eq!(inv.len(), 4);

        let h_triples: [[(usize, usize, usize); 3]; 4] = [
            [(0, 1, 2), (3, 4, 5), (6, 7, 8)],
            [(0, 3, 6), (1, 4, 7), (2, 5, 8)],
            [(0, 4, 8), (1, 5, 6), (2, 3, 7)],
            [(0, 5, 7), (1, 3, 8), (2, 4, 6)],
        ];
        for trips in &h_triples {
            let mut h = Wedge3Elem::zero(field.clone(), 9);
            for &(i, j, k) in trips {
                h.add_term(i, j, k, 1);
            }
            assert!(in_span(&inv, h.as_vec()));
        }
    }

    #[test]
    fn invariant_quintics_in_five_variables() {
        let names = z5_names();
        let ctx = ctx_of(&names);
        let field = Field::Cyc(5);
        let ops = [shift5(field.clone()), diag5(field.clone(), 1).unwrap()];
        let inv = invariant_forms(&ctx, field.clone(), 5, &ops);
        assert_eq!(inv.len(), 6);
        let product = MultiPoly::term(&ctx, field, 1, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]);
        let vecs: Vec<Vec<Scalar>> = {
            let indexer = crate::ideal::DegreeIndexer::new(5, 5);
            inv.iter()
                .chain(std::iter::once(&product))
                .map(|f| {
                    let mut v = vec![Scalar::zero(f.field().clone()); indexer.len()];
                    for (m, c) in f.terms() {
                        v[indexer.index(m).unwrap() as usize] = c.clone();
                    }
                    v
                })
                .collect()
        };
        let (head, last) = vecs.split_at(inv.len());
        assert!(in_span(head, &last[0]));
    }

    #[test]
    fn involution_of_the_affine_plane() {
        let op = iota9(Field::Rat);
        assert_eq!(op.perm()[0], 0);
        let expected_swaps = [(1, 2), (3, 6), (4, 8), (5, 7)];
        for &(a, b) in &expected_swaps {
            assert_eq!(op.perm()[a], b);
            assert_eq!(op.perm()[b], a);
        }
        assert!(affine_ops9(Field::Rat).contains(&op));
    }

    #[test]
    fn affine_group_of_the_plane_has_order_432() {
        let ops = affine_ops9(Field::Rat);
        assert_eq!(ops.len(), 432);
        let set: HashSet<MonomialOp> = ops.iter().cloned().collect();
        assert_eq!(set.len(), 432);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = &ops[rng.gen_range(0..ops.len())];
            let b = &ops[rng.gen_range(0..ops.len())];
            assert!(set.contains(&a.after(b)));
        }
    }

    #[test]
    fn substitution_action_and_group_closure() {
        let names = z9_names();
        let ctx = ctx_of(&names);
        let field = Field::Cyc(3);
        let f = MultiPoly::term(&ctx, field.clone(), 1, &[(0, 1), (1, 1), (2, 1)]);
        let g = shift9_col(field.clone());
        // z1 z2 z3 is the product over a row of the plane, so the column
        // shift permutes its factors and fixes it.
        assert!(g.fixes_poly(&f));
        let h = shift9_row(field.clone());
        let moved = h.apply_to_poly(&f);
        let expect = MultiPoly::term(&ctx, field.clone(), 1, &[(3, 1), (4, 1), (5, 1)]);
        assert_eq!(moved, expect);

        let grp = close_group(
            &[shift9_row(field.clone()), shift9_col(field.clone())],
            100,
        )
        .unwrap();
        assert_eq!(grp.len(), 9);
        assert!(close_group(&[shift9_row(field.clone()), diag9_row(field).unwrap()], 5).is_none());
    }
}
