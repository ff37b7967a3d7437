//! Graded pieces of homogeneous ideals over F_p: ranks, Hilbert function
//! values, and membership with independently checkable certificates.
//!
//! A degree-d slice of an ideal generated by homogeneous polynomials is the
//! row space of { m * g : g a generator, m a monomial of degree d - deg g }
//! inside the vector space spanned by all degree-d monomials. Everything
//! here reduces to sparse Gaussian elimination over F_p on that row space.
//! Elimination only ever reduces a row's *head* against frozen pivot rows,
//! so heads move strictly forward in a fixed column order and termination
//! is immediate; no pivot is ever rewritten after insertion.
//!
//! Membership tests can return a certificate (an explicit combination
//! sum_i c_i * m_i * g_{j_i}) which `verify_certificate` recomputes from
//! scratch with plain polynomial arithmetic.

use crate::modp;
use crate::poly::{Ctx, Mono, MultiPoly, PolyError};
use crate::scalar::{Field, Scalar};
use std::collections::{BTreeMap, HashMap};

/// C(n, k) as u64 (panics on overflow, which our sizes never reach).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Number of monomials of total degree d in n variables.
pub fn monomial_count(n: usize, d: usize) -> u64 {
    binomial((d + n - 1) as u64, (n - 1) as u64)
}

/// Value at degree d of the series numerator(T) / (1-T)^denom_pow.
pub fn hilbert_from_series(numerator: &[i64], denom_pow: usize, d: usize) -> i64 {
    let mut acc: i128 = 0;
    for (k, &c) in numerator.iter().enumerate() {
        if k > d {
            break;
        }
        let e = (d - k) as u64 + denom_pow as u64 - 1;
        acc += c as i128 * binomial(e, denom_pow as u64 - 1) as i128;
    }
    i64::try_from(acc).expect("series value overflow")
}

fn pack_mono(e: &[u16], bits: u32) -> u64 {
    debug_assert!(e.iter().all(|&x| (x as u64) < (1 << bits)));
    let mut key = 0u64;
    for &x in e {
        key = (key << bits) | x as u64;
    }
    key
}

/// Bijection between monomials of fixed total degree and dense indices.
pub struct DegreeIndexer {
    monos: Vec<Mono>,
    lookup: HashMap<u64, u32>,
    bits: u32,
}

impl DegreeIndexer {
    pub fn new(n_vars: usize, d: usize) -> DegreeIndexer {
        assert!(n_vars >= 1 && n_vars <= 16, "indexer range");
        let bits = (64 / n_vars as u32).min(16);
        assert!((d as u64) < (1 << bits), "indexer range");
        let mut monos = Vec::with_capacity(monomial_count(n_vars, d) as usize);
        let mut cur = vec![0u16; n_vars];
        gen_monos(&mut cur, 0, d, &mut monos);
        let lookup = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (pack_mono(&m.0, bits), i as u32))
            .collect();
        DegreeIndexer {
            monos,
            lookup,
            bits,
        }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn mono(&self, i: u32) -> &Mono {
        &self.monos[i as usize]
    }

    pub fn index(&self, m: &Mono) -> Option<u32> {
        if m.0.iter().any(|&x| (x as u64) >= (1 << self.bits)) {
            return None;
        }
        self.lookup.get(&pack_mono(&m.0, self.bits)).copied()
    }
}

fn gen_monos(cur: &mut Vec<u16>, var: usize, remaining: usize, out: &mut Vec<Mono>) {
    if var + 1 == cur.len() {
        cur[var] = remaining as u16;
        out.push(Mono(cur.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        cur[var] = e as u16;
        gen_monos(cur, var + 1, remaining - e, out);
        cur[var] = 0;
    }
}

/// Sparse F_p row: sorted (column, nonzero value) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseRow(pub Vec<(u32, u64)>);

impl SparseRow {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn head(&self) -> Option<u32> {
        self.0.first().map(|&(c, _)| c)
    }

    /// self - c * other, merged in one pass.
    fn sub_scaled(&self, c: u64, other: &SparseRow, p: u64) -> SparseRow {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.0.len() || j < other.0.len() {
            let next = match (self.0.get(i), other.0.get(j)) {
                (Some(&(ca, va)), Some(&(cb, vb))) => {
                    if ca < cb {
                        i += 1;
                        (ca, va)
                    } else if cb < ca {
                        j += 1;
                        (cb, modp::sub_m(0, modp::mul_m(c, vb, p), p))
                    } else {
                        i += 1;
                        j += 1;
                        (ca, modp::sub_m(va, modp::mul_m(c, vb, p), p))
                    }
                }
                (Some(&(ca, va)), None) => {
                    i += 1;
                    (ca, va)
                }
                (None, Some(&(cb, vb))) => {
                    j += 1;
                    (cb, modp::sub_m(0, modp::mul_m(c, vb, p), p))
                }
                (None, None) => unreachable!(),
            };
            if next.1 != 0 {
                out.push(next);
            }
        }
        SparseRow(out)
    }

    fn scale(&mut self, c: u64, p: u64) {
        for (_, v) in self.0.iter_mut() {
            *v = modp::mul_m(*v, c, p);
        }
    }
}

/// Online sparse Gaussian elimination over F_p, optionally tracking how
/// each pivot is expressed in terms of the inserted rows.
pub struct Eliminator {
    p: u64,
    track: bool,
    pivots: Vec<SparseRow>,
    combos: Vec<Vec<(u32, u64)>>,
    head_of: HashMap<u32, u32>, // column -> pivot index
}

impl Eliminator {
    pub fn new(p: u64, track: bool) -> Eliminator {
        Eliminator {
            p,
            track,
            pivots: vec![],
            combos: vec![],
            head_of: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn compress(combo: Vec<(u32, u64)>, p: u64) -> Vec<(u32, u64)> {
        let mut acc: HashMap<u32, u64> = HashMap::new();
        for (id, c) in combo {
            let e = acc.entry(id).or_insert(0);
            *e = modp::add_m(*e, c, p);
        }
        let mut v: Vec<(u32, u64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        v.sort_unstable();
        v
    }

    /// Reduce `row` against the current pivots. Returns the residue and, if
    /// tracking, the pivot combination used: row = residue + sum c_i * pivot_i.
    fn reduce(&self, mut row: SparseRow) -> (SparseRow, Vec<(u32, u64)>) {
        let mut used: Vec<(u32, u64)> = vec![];
        while let Some(h) = row.head() {
            let Some(&pi) = self.head_of.get(&h) else {
                break;
            };
            let c = row.0[0].1; // pivot rows are normalized to lead with 1
            row = row.sub_scaled(c, &self.pivots[pi as usize], self.p);
            if self.track {
                used.push((pi, c));
            }
        }
        (row, used)
    }

    /// Insert a row; returns false if it reduced to zero.
    pub fn insert(&mut self, row: SparseRow, row_id: u32) -> bool {
        let (mut r, used) = self.reduce(row);
        if r.is_zero() {
            return false;
        }
        let lead_inv = modp::inv_m(r.0[0].1, self.p).unwrap();
        r.scale(lead_inv, self.p);
        if self.track {
            // pivot = lead_inv * (row - sum c_i * pivot_i), in original rows
            let mut combo: Vec<(u32, u64)> = vec![(row_id, lead_inv)];
            for (pi, c) in used {
                let s = modp::mul_m(c, lead_inv, self.p);
                for &(id, cc) in &self.combos[pi as usize] {
                    combo.push((id, modp::sub_m(0, modp::mul_m(s, cc, self.p), self.p)));
                }
            }
            self.combos.push(Self::compress(combo, self.p));
        } else {
            self.combos.push(vec![]);
        }
        let h = r.head().unwrap();
        self.head_of.insert(h, self.pivots.len() as u32);
        self.pivots.push(r);
        true
    }

    /// Express `row` in the span of the inserted rows, if possible.
    pub fn try_express(&self, row: SparseRow) -> Option<Vec<(u32, u64)>> {
        assert!(self.track, "expression requires combination tracking");
        let (r, used) = self.reduce(row);
        if !r.is_zero() {
            return None;
        }
        let mut combo: Vec<(u32, u64)> = vec![];
        for (pi, c) in used {
            for &(id, cc) in &self.combos[pi as usize] {
                combo.push((id, modp::mul_m(c, cc, self.p)));
            }
        }
        Some(Self::compress(combo, self.p))
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn in_span(&self, row: SparseRow) -> bool {
        self.reduce(row).0.is_zero()
    }
}

/// Encode an F_p polynomial, shifted by a monomial, as a sparse row.
pub fn poly_to_row(
    f: &MultiPoly,
    shift: Option<&Mono>,
    idx: &DegreeIndexer,
) -> Result<SparseRow, PolyError> {
    let mut entries = Vec::with_capacity(f.num_terms());
    for (m, c) in f.terms() {
        let full = match shift {
            Some(s) => m.mul(s),
            None => m.clone(),
        };
        let col = idx
            .index(&full)
            .ok_or_else(|| PolyError::Parse("monomial outside indexer degree".into()))?;
        let Scalar::Fp { v, .. } = c else {
            return Err(PolyError::Parse("row encoding needs F_p coefficients".into()));
        };
        if *v != 0 {
            entries.push((col, *v));
        }
    }
    entries.sort_unstable_by_key(|&(c, _)| c);
    Ok(SparseRow(entries))
}

/// One term of a membership certificate: coefficient * shift-monomial *
/// generator (by index).
#[derive(Debug, Clone)]
pub struct CertTerm {
    pub gen: usize,
    pub shift: Mono,
    pub coeff: u64,
}

#[derive(Debug, Clone)]
pub struct Membership {
    pub in_ideal: bool,
    pub certificate: Option<Vec<CertTerm>>,
}

/// A homogeneous ideal with F_p coefficients, sliced degree by degree.
pub struct GradedIdeal {
    p: u64,
    ctx: Ctx,
    gens: Vec<MultiPoly>,
    gen_degs: Vec<usize>,
}

impl GradedIdeal {
    /// Generators may be over Q, Q(zeta_n), or F_p; they are reduced mod p.
    /// Zero generators (e.g. ones that vanish mod p) are rejected.
    pub fn new(p: u64, ctx: &Ctx, gens: &[MultiPoly]) -> Result<GradedIdeal, PolyError> {
        let mut fp_gens = vec![];
        let mut degs = vec![];
        for g in gens {
            let gp = g.to_field(Field::Fp(p))?;
            let d = gp
                .homogeneous_degree()
                .ok_or_else(|| PolyError::Parse("inhomogeneous generator".into()))?;
            if gp.is_zero() {
                return Err(PolyError::Parse("generator vanishes mod p".into()));
            }
            fp_gens.push(gp);
            degs.push(d);
        }
        Ok(GradedIdeal {
            p,
            ctx: ctx.clone(),
            gens: fp_gens,
            gen_degs: degs,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    fn fill_degree(&self, d: usize, elim: &mut Eliminator, idx: &DegreeIndexer) -> Vec<(usize, Mono)> {
        let mut row_meta = vec![];
        for (gi, g) in self.gens.iter().enumerate() {
            let dg = self.gen_degs[gi];
            if dg > d {
                continue;
            }
            let shifts = DegreeIndexer::new(self.ctx.len(), d - dg);
            for si in 0..shifts.len() {
                let shift = shifts.mono(si as u32);
                let row = poly_to_row(g, Some(shift), idx).expect("homogeneous row");
                let id = row_meta.len() as u32;
                row_meta.push((gi, shift.clone()));
                elim.insert(row, id);
            }
        }
        row_meta
    }

    /// Dimension of the degree-d piece of the ideal.
    pub fn rank_in_degree(&self, d: usize) -> usize {
        let idx = DegreeIndexer::new(self.ctx.len(), d);
        let mut elim = Eliminator::new(self.p, false);
        self.fill_degree(d, &mut elim, &idx);
        elim.rank()
    }

    /// Hilbert function of the quotient ring at degree d.
    pub fn hilbert_value(&self, d: usize) -> u64 {
        monomial_count(self.ctx.len(), d) - self.rank_in_degree(d) as u64
    }

    /// Does the homogeneous polynomial f lie in the degree-d slice?
    pub fn member_in_degree(
        &self,
        f: &MultiPoly,
        want_certificate: bool,
    ) -> Result<Membership, PolyError> {
        let fp = f.to_field(Field::Fp(self.p))?;
        let d = fp
            .homogeneous_degree()
            .ok_or_else(|| PolyError::Parse("inhomogeneous membership query".into()))?;
        if fp.is_zero() {
            return Ok(Membership {
                in_ideal: true,
                certificate: Some(vec![]),
            });
        }
        let idx = DegreeIndexer::new(self.ctx.len(), d);
        let mut elim = Eliminator::new(self.p, want_certificate);
        let meta = self.fill_degree(d, &mut elim, &idx);
        let target = poly_to_row(&fp, None, &idx)?;
        if want_certificate {
            match elim.try_express(target) {
                None => Ok(Membership {
                    in_ideal: false,
                    certificate: None,
                }),
                Some(combo) => {
                    let cert = combo
                        .into_iter()
                        .map(|(id, c)| {
                            let (gen, shift) = &meta[id as usize];
                            CertTerm {
                                gen: *gen,
                                shift: shift.clone(),
                                coeff: c,
                            }
                        })
                        .collect();
                    Ok(Membership {
                        in_ideal: true,
                        certificate: Some(cert),
                    })
                }
            }
        } else {
            Ok(Membership {
                in_ideal: elim.in_span(target),
                certificate: None,
            })
        }
    }

    /// Recompute a certificate with plain polynomial arithmetic and compare
    /// against f mod p.
    pub fn verify_certificate(&self, f: &MultiPoly, cert: &[CertTerm]) -> Result<bool, PolyError> {
        let fp = f.to_field(Field::Fp(self.p))?;
        let mut acc = MultiPoly::zero(&self.ctx, Field::Fp(self.p));
        for t in cert {
            let g = &self.gens[t.gen];
            let c = Scalar::fp(self.p, t.coeff).expect("valid coefficient");
            acc = &acc + &g.mul_mono(&t.shift, &c);
        }
        Ok(acc == fp)
    }
}

/// Linear rank of a set of homogeneous polynomials, reduced mod p.  Distinct
/// degrees contribute independent blocks, so the total is the sum of the
/// per-degree ranks.
pub fn poly_set_rank(polys: &[MultiPoly], p: u64) -> Result<usize, PolyError> {
    let mut by_degree: BTreeMap<usize, Vec<MultiPoly>> = BTreeMap::new();
    for f in polys {
        let d = f
            .homogeneous_degree()
            .ok_or_else(|| PolyError::Parse("inhomogeneous input".into()))?;
        by_degree.entry(d).or_default().push(f.to_field(Field::Fp(p))?);
    }
    let mut total = 0;
    for (d, fs) in by_degree {
        let ctx = fs[0].ctx().clone();
        let idx = DegreeIndexer::new(ctx.len(), d);
        let mut elim = Eliminator::new(p, false);
        for (i, fp) in fs.iter().enumerate() {
            let row = poly_to_row(fp, None, &idx)?;
            elim.insert(row, i as u32);
        }
        total += elim.rank();
    }
    Ok(total)
}

/// Restrict polynomials to the linear subspace parametrized by
/// big_var_i = sum_j M[i][j] * small_var_j (entries of M over F_p).
pub fn restrict_to_subspace(
    fs: &[MultiPoly],
    small_ctx: &Ctx,
    m: &[Vec<u64>],
    p: u64,
) -> Result<Vec<MultiPoly>, PolyError> {
    let f0 = fs.first().expect("nonempty restriction input");
    assert_eq!(m.len(), f0.ctx().len());
    let field = Field::Fp(p);
    let mut map = HashMap::new();
    for (i, row) in m.iter().enumerate() {
        assert_eq!(row.len(), small_ctx.len());
        let coeffs: Vec<Scalar> = row
            .iter()
            .map(|&v| Scalar::fp(p, v % p).expect("valid prime"))
            .collect();
        let mut form = MultiPoly::linear_form(small_ctx, &coeffs);
        if form.is_zero() {
            form = MultiPoly::zero(small_ctx, field);
        }
        map.insert(i, form);
    }
    fs.iter()
        .map(|f| f.to_field(field)?.substitute(&map))
        .collect()
}

/// A polynomial over `F_p` flattened for fast repeated evaluation in scans.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    p: u64,
    terms: Vec<(u64, Vec<(u16, u16)>)>,
}

impl CompiledPoly {
    /// Compiles a polynomial with `F_p` coefficients; other coefficient
    /// fields must be embedded by the caller first.
    pub fn compile(f: &MultiPoly, p: u64) -> CompiledPoly {
        assert_eq!(f.field(), Field::Fp(p), "compile expects matching F_p");
        let terms = f
            .terms()
            .map(|(m, c)| {
                let Scalar::Fp { v, .. } = c else {
                    unreachable!()
                };
                let exps: Vec<(u16, u16)> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (i as u16, e))
                    .collect();
                (*v, exps)
            })
            .collect();
        CompiledPoly { p, terms }
    }

    pub fn eval(&self, x: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for &(var, e) in exps {
                let mut pw = x[var as usize] % p;
                for _ in 1..e {
                    pw = modp::mul_m(pw, x[var as usize] % p, p);
                }
                t = modp::mul_m(t, pw, p);
            }
            acc = modp::add_m(acc, t, p);
        }
        acc
    }
}

/// Smallest window [d, d+window) on which the Hilbert value is constant;
/// returns (d, value). Used to read off the degree of a finite scheme.
pub fn stabilized_hilbert(
    ideal: &GradedIdeal,
    d_max: usize,
    window: usize,
) -> Option<(usize, u64)> {
    let mut vals = vec![];
    for d in 0..=d_max {
        vals.push(ideal.hilbert_value(d));
    }
    'outer: for d in 1..=d_max.saturating_sub(window - 1) {
        let v = vals[d];
        for k in 1..window {
            if vals[d + k] != v {
                continue 'outer;
            }
        }
        return Some((d, v));
    }
    None
}

/// Dense Gaussian elimination over a small prime field, suited to
/// Macaulay-type blocks whose column count is moderate but whose rows fill
/// in badly under sparse elimination. The working row keeps unreduced
/// accumulators so the inner loop is a plain multiply-add; a reduction
/// happens only when a column is inspected.
pub struct DenseEliminator {
    p: u64,
    cols: usize,
    head_of: Vec<u32>, // column -> pivot index + 1, or 0 when free
    pivots: Vec<Vec<u64>>,
}

impl DenseEliminator {
    pub fn new(p: u64, cols: usize) -> DenseEliminator {
        // Entries below p^2 accumulate without overflow across a full pass.
        assert!(p < (1 << 16), "dense elimination expects a small prime");
        DenseEliminator {
            p,
            cols,
            head_of: vec![0; cols],
            pivots: vec![],
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivot_rows(&self) -> &[Vec<u64>] {
        &self.pivots
    }

    pub fn into_pivots(self) -> Vec<Vec<u64>> {
        self.pivots
    }

    /// Insert a dense row (entries need not be reduced); returns false if
    /// it reduced to zero.
    pub fn insert(&mut self, mut w: Vec<u64>) -> bool {
        assert_eq!(w.len(), self.cols);
        let p = self.p;
        for j in 0..self.cols {
            w[j] %= p;
            if w[j] == 0 {
                continue;
            }
            let pi = self.head_of[j];
            if pi == 0 {
                let inv = modp::inv_m(w[j], p).expect("prime modulus");
                for x in w[..j].iter_mut() {
                    *x = 0;
                }
                for x in w[j..].iter_mut() {
                    *x = modp::mul_m(*x % p, inv, p);
                }
                self.head_of[j] = self.pivots.len() as u32 + 1;
                self.pivots.push(w);
                return true;
            }
            let c = p - w[j];
            let piv = &self.pivots[(pi - 1) as usize];
            for (x, &v) in w[j..].iter_mut().zip(&piv[j..]) {
                *x += c * v;
            }
        }
        false
    }
}

/// Hilbert function values of the ideal generated by homogeneous
/// polynomials, for degrees `0..=d_max`, computed by propagating a pivot
/// basis of each graded piece into the next: the degree-d piece is spanned
/// by the variable shifts of the previous piece plus the generators of
/// degree d.
pub fn hilbert_by_propagation(
    p: u64,
    ctx: &Ctx,
    gens: &[MultiPoly],
    d_max: usize,
) -> Result<Vec<u64>, PolyError> {
    let n = ctx.len();
    let mut by_degree: HashMap<usize, Vec<MultiPoly>> = HashMap::new();
    for f in gens {
        if f.is_zero() {
            continue;
        }
        let d = f
            .homogeneous_degree()
            .ok_or_else(|| PolyError::Parse("inhomogeneous generator".into()))?;
        by_degree.entry(d).or_default().push(f.to_field(Field::Fp(p))?);
    }
    let mut out = Vec::with_capacity(d_max + 1);
    let mut prev: Vec<Vec<u64>> = vec![];
    let mut prev_idx: Option<DegreeIndexer> = None;
    for d in 0..=d_max {
        let idx = DegreeIndexer::new(n, d);
        let cols = idx.len();
        let mut elim = DenseEliminator::new(p, cols);
        if let Some(pidx) = &prev_idx {
            for v in 0..n {
                let mut shift = vec![0u32; pidx.len()];
                for (i, slot) in shift.iter_mut().enumerate() {
                    let mut m = pidx.mono(i as u32).clone();
                    m.0[v] += 1;
                    *slot = idx.index(&m).expect("shift stays within the degree");
                }
                for row in &prev {
                    let mut w = vec![0u64; cols];
                    for (i, &val) in row.iter().enumerate() {
                        if val != 0 {
                            w[shift[i] as usize] = val;
                        }
                    }
                    elim.insert(w);
                }
            }
        }
        if let Some(gs) = by_degree.get(&d) {
            for f in gs {
                let mut w = vec![0u64; cols];
                for (m, c) in f.terms() {
                    let Scalar::Fp { v, .. } = c else { unreachable!() };
                    w[idx.index(m).expect("degree matches") as usize] = *v;
                }
                elim.insert(w);
            }
        }
        out.push((cols - elim.rank()) as u64);
        prev = elim.into_pivots();
        prev_idx = Some(idx);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarContext;

    #[test]
    fn binomials_and_series() {
        assert_eq!(binomial(20, 8), 125970);
        assert_eq!(binomial(18, 8), 43758);
        assert_eq!(monomial_count(9, 2), 45);
        assert_eq!(monomial_count(3, 4), 15);
        // 1/(1-T)^3 counts monomials in 3 variables
        for d in 0..6 {
            assert_eq!(
                hilbert_from_series(&[1], 3, d),
                monomial_count(3, d) as i64
            );
        }
        // (1+T)/(1-T) has values 1, 2, 2, 2, ...
        assert_eq!(hilbert_from_series(&[1, 1], 1, 0), 1);
        assert_eq!(hilbert_from_series(&[1, 1], 1, 5), 2);
    }

    #[test]
    fn indexer_round_trip() {
        let idx = DegreeIndexer::new(3, 4);
        assert_eq!(idx.len(), 15);
        for i in 0..idx.len() as u32 {
            assert_eq!(idx.index(idx.mono(i)), Some(i));
        }
        assert_eq!(idx.index(&Mono(vec![1, 1, 1])), None); // wrong degree
    }

    fn toy_ideal(p: u64) -> (Ctx, GradedIdeal) {
        let ctx = VarContext::new(&["x", "y", "z"]);
        let g1 = MultiPoly::parse("x^2", &ctx, Field::Rat).unwrap();
        let g2 = MultiPoly::parse("x*y", &ctx, Field::Rat).unwrap();
        let ideal = GradedIdeal::new(p, &ctx, &[g1, g2]).unwrap();
        (ctx, ideal)
    }

    #[test]
    fn toy_hilbert_function() {
        // k[x,y,z]/(x^2, xy): degree-d monomials avoiding x^2 and xy are
        // y^b z^c (d+1 of them) plus x z^(d-1), so H(d) = d + 2 for d >= 1
        let (_, ideal) = toy_ideal(61);
        assert_eq!(ideal.hilbert_value(0), 1);
        for d in 1..6 {
            assert_eq!(ideal.hilbert_value(d), d as u64 + 2);
        }
    }

    #[test]
    fn membership_with_certificate() {
        let (ctx, ideal) = toy_ideal(61);
        let f = MultiPoly::parse("x^2*z + 5*x*y*z - x*y*x", &ctx, Field::Rat).unwrap();
        let m = ideal.member_in_degree(&f, true).unwrap();
        assert!(m.in_ideal);
        let cert = m.certificate.unwrap();
        assert!(ideal.verify_certificate(&f, &cert).unwrap());
        // a corrupted certificate must not verify
        if !cert.is_empty() {
            let mut bad = cert.clone();
            bad[0].coeff = (bad[0].coeff + 1) % 61;
            assert!(!ideal.verify_certificate(&f, &bad).unwrap());
        }
        let g = MultiPoly::parse("x*z^2", &ctx, Field::Rat).unwrap();
        assert!(!ideal.member_in_degree(&g, true).unwrap().in_ideal);
        assert!(!ideal.member_in_degree(&g, false).unwrap().in_ideal);
    }

    #[test]
    fn rank_of_poly_set() {
        let ctx = VarContext::new(&["x", "y"]);
        let f = |s: &str| MultiPoly::parse(s, &ctx, Field::Rat).unwrap();
        let polys = vec![f("x^2 + y^2"), f("x^2 - y^2"), f("2*x^2"), f("x*y")];
        assert_eq!(poly_set_rank(&polys, 61).unwrap(), 3);
    }

    #[test]
    fn propagation_agrees_with_direct_shifts() {
        // Same values from the shift-everything construction and from the
        // degree-to-degree pivot propagation, on an inhomogeneous mix of
        // generator degrees.
        let ctx = VarContext::new(&["x", "y", "z", "w"]);
        let f = |s: &str| MultiPoly::parse(s, &ctx, Field::Rat).unwrap();
        let gens = vec![f("x*z - y^2"), f("y*w - z^2"), f("x*w - y*z"), f("x^3 + w^3")];
        for p in [61u64, 181] {
            let ideal = GradedIdeal::new(p, &ctx, &gens).unwrap();
            let vals = hilbert_by_propagation(p, &ctx, &gens, 7).unwrap();
            for d in 0..=7usize {
                assert_eq!(vals[d], ideal.hilbert_value(d), "degree {d} at p={p}");
            }
        }
    }

    #[test]
    fn dense_eliminator_matches_row_rank() {
        let p = 61u64;
        let rows = vec![
            vec![1u64, 2, 3, 4],
            vec![2, 4, 6, 8],
            vec![0, 1, 1, 0],
            vec![1, 3, 4, 4],
            vec![5, 0, 0, 1],
        ];
        let mut elim = DenseEliminator::new(p, 4);
        for r in &rows {
            elim.insert(r.clone());
        }
        assert_eq!(elim.rank(), crate::modp::fp_row_rank(rows, p));
    }

    #[test]
    fn twisted_cubic_slice_degree() {
        // the twisted cubic in P^3 has degree 3; restricting its ideal to a
        // random hyperplane (3 remaining variables) leaves 3 points
        use rand::{Rng, SeedableRng};
        let p = 61;
        let big = VarContext::new(&["x", "y", "z", "w"]);
        let f = |s: &str| MultiPoly::parse(s, &big, Field::Rat).unwrap();
        let gens = vec![f("x*z - y^2"), f("y*w - z^2"), f("x*w - y*z")];
        let small = VarContext::new(&["u0", "u1", "u2"]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let m: Vec<Vec<u64>> = (0..4)
            .map(|_| (0..3).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        let restricted = restrict_to_subspace(&gens, &small, &m, p).unwrap();
        let ideal = GradedIdeal::new(p, &small, &restricted).unwrap();
        let (_, v) = stabilized_hilbert(&ideal, 8, 3).unwrap();
        assert_eq!(v, 3);
    }
}
