//! Sparse multivariate polynomials over an exact `Scalar` field.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors ordered by graded
//! reverse lexicographic order (ascending, so the *last* map entry is the
//! leading term). Canonical form is automatic: no zero coefficients are ever
//! stored and rendering walks terms from the leading one down, which makes
//! `render` deterministic and `parse(render(f)) == f` a real invariant.

use crate::scalar::{Field, Scalar, ScalarError};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, PartialEq, Eq)]
pub struct VarContext {
    names: Vec<String>,
}

pub type Ctx = Arc<VarContext>;

impl VarContext {
    pub fn new(names: &[&str]) -> Ctx {
        let seen: std::collections::HashSet<&str> = names.iter().copied().collect();
        assert_eq!(seen.len(), names.len(), "duplicate variable names");
        Arc::new(VarContext {
            names: names.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

/// Exponent vector with graded reverse lexicographic `Ord` (ascending).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        let (da, db) = (self.degree(), other.degree());
        if da != db {
            return da.cmp(&db);
        }
        // grevlex: with equal degree, the monomial whose rightmost differing
        // exponent is *smaller* is the larger monomial
        for i in (0..self.0.len()).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Equal => continue,
                Less => return Greater,
                Greater => return Less,
            }
        }
        Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable context mismatch")]
    CtxMismatch,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("variable {0:?} is not bound by the substitution")]
    UnboundVar(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("point has {0} coordinates, context has {1} variables")]
    PointLength(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ctx: Ctx,
    field: Field,
    terms: BTreeMap<Mono, Scalar>,
}

/// Convert a coefficient into `target`, along the natural maps
/// Q -> Q(zeta_n), Q -> F_p, Q(zeta_n) -> F_p (canonical root), or identity.
pub fn convert_coeff(s: &Scalar, target: Field) -> Result<Scalar, ScalarError> {
    if s.field() == target {
        return Ok(s.clone());
    }
    match target {
        Field::Cyc(n) => s.promote_cyc(n),
        Field::Fp(p) => s.embed_fp(p),
        other => Err(ScalarError::FieldMismatch(s.field(), other)),
    }
}

impl MultiPoly {
    pub fn zero(ctx: &Ctx, field: Field) -> MultiPoly {
        MultiPoly {
            ctx: ctx.clone(),
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Ctx, value: Scalar) -> MultiPoly {
        let field = value.field();
        let mut p = MultiPoly::zero(ctx, field);
        p.add_term(Mono(vec![0; ctx.len()]), value);
        p
    }

    pub fn one(ctx: &Ctx, field: Field) -> MultiPoly {
        MultiPoly::constant(ctx, Scalar::one(field))
    }

    pub fn var(ctx: &Ctx, field: Field, i: usize) -> MultiPoly {
        assert!(i < ctx.len());
        let mut e = vec![0u16; ctx.len()];
        e[i] = 1;
        let mut p = MultiPoly::zero(ctx, field);
        p.add_term(Mono(e), Scalar::one(field));
        p
    }

    /// Single term from (variable, exponent) pairs and an integer coefficient.
    pub fn term(ctx: &Ctx, field: Field, coef: i64, vars: &[(usize, u16)]) -> MultiPoly {
        let mut e = vec![0u16; ctx.len()];
        for &(v, k) in vars {
            e[v] += k;
        }
        let mut p = MultiPoly::zero(ctx, field);
        p.add_term(Mono(e), Scalar::from_i64(coef, field));
        p
    }

    pub fn linear_form(ctx: &Ctx, coeffs: &[Scalar]) -> MultiPoly {
        assert_eq!(coeffs.len(), ctx.len());
        let field = coeffs
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.field())
            .unwrap_or(Field::Rat);
        let mut p = MultiPoly::zero(ctx, field);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0u16; ctx.len()];
                e[i] = 1;
                p.add_term(Mono(e), c.clone());
            }
        }
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Adds a single canonicalized term, dropping it if the sum vanishes.
    pub fn add_term(&mut self, m: Mono, c: Scalar) {
        debug_assert_eq!(m.0.len(), self.ctx.len());
        debug_assert_eq!(c.field(), self.field);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().checked_add(&c).expect("same field");
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn checked_add(&self, rhs: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !same_ctx(&self.ctx, &rhs.ctx) {
            return Err(PolyError::CtxMismatch);
        }
        if self.field != rhs.field {
            return Err(ScalarError::FieldMismatch(self.field, rhs.field).into());
        }
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.checked_add(&rhs.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(&self.ctx, self.field);
        }
        let mut out = MultiPoly::zero(&self.ctx, self.field);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono, s: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ctx, self.field);
        if s.is_zero() {
            return out;
        }
        for (mm, c) in &self.terms {
            out.add_term(mm.mul(m), c * s);
        }
        out
    }

    pub fn checked_mul(&self, rhs: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !same_ctx(&self.ctx, &rhs.ctx) {
            return Err(PolyError::CtxMismatch);
        }
        if self.field != rhs.field {
            return Err(ScalarError::FieldMismatch(self.field, rhs.field).into());
        }
        let mut out = MultiPoly::zero(&self.ctx, self.field);
        // iterate over the smaller operand on the outside
        let (small, big) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (m, c) in &small.terms {
            for (mm, cc) in &big.terms {
                out.add_term(m.mul(mm), c * cc);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ctx, self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Total degree restricted to a subset of variables (bidegree helper).
    pub fn degree_in(&self, vars: &[usize]) -> Option<usize> {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.0[v] as usize).sum())
            .max()
    }

    /// Some(d) when every term has total degree d (zero counts as degree 0).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => Some(0),
            Some(d) => {
                if it.all(|e| e == d) {
                    Some(d)
                } else {
                    None
                }
            }
        }
    }

    pub fn homogeneous_component(&self, d: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ctx, self.field);
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn differentiate(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ctx, self.field);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut me = m.clone();
            me.0[var] -= 1;
            out.add_term(me, c * &Scalar::from_i64(e as i64, self.field));
        }
        out
    }

    /// Simultaneous substitution. Every variable that occurs must be mapped;
    /// the images must share one context and field. Coefficients are carried
    /// into the target field along the natural embedding.
    pub fn substitute(&self, map: &HashMap<usize, MultiPoly>) -> Result<MultiPoly, PolyError> {
        let (tctx, tfield) = match map.values().next() {
            Some(p) => (p.ctx.clone(), p.field),
            None => (self.ctx.clone(), self.field),
        };
        for p in map.values() {
            if !same_ctx(&p.ctx, &tctx) {
                return Err(PolyError::CtxMismatch);
            }
            if p.field != tfield {
                return Err(ScalarError::FieldMismatch(p.field, tfield).into());
            }
        }
        let mut powers: HashMap<(usize, u16), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero(&tctx, tfield);
        for (m, c) in &self.terms {
            let mut acc = MultiPoly::constant(&tctx, convert_coeff(c, tfield)?);
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = map
                    .get(&v)
                    .ok_or_else(|| PolyError::UnboundVar(self.ctx.name(v).to_string()))?;
                let pw = powers
                    .entry((v, e))
                    .or_insert_with(|| img.pow(e as u32))
                    .clone();
                acc = acc.checked_mul(&pw)?;
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }

    /// Evaluate at a point; coefficients are embedded into the point's field.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar, PolyError> {
        if point.len() != self.ctx.len() {
            return Err(PolyError::PointLength(point.len(), self.ctx.len()));
        }
        let field = point
            .first()
            .map(|s| s.field())
            .unwrap_or(self.field);
        let mut max_e = vec![0u16; self.ctx.len()];
        for m in self.terms.keys() {
            for (v, &e) in m.0.iter().enumerate() {
                max_e[v] = max_e[v].max(e);
            }
        }
        // power tables per variable
        let mut pows: Vec<Vec<Scalar>> = Vec::with_capacity(point.len());
        for (v, x) in point.iter().enumerate() {
            let mut t = vec![Scalar::one(field)];
            for _ in 0..max_e[v] {
                t.push(t.last().unwrap() * x);
            }
            pows.push(t);
        }
        let mut acc = Scalar::zero(field);
        for (m, c) in &self.terms {
            let mut t = convert_coeff(c, field)?;
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &pows[v][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Coefficient-wise field change along the natural embeddings.
    pub fn to_field(&self, target: Field) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero(&self.ctx, target);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), convert_coeff(c, target)?);
        }
        Ok(out)
    }

    /// Exact division: Some(q) with self = q * g, or None if g does not
    /// divide self (or g is zero).
    pub fn exact_div(&self, g: &MultiPoly) -> Option<MultiPoly> {
        if g.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(&self.ctx, self.field);
        let (gm, gc) = g.leading().unwrap();
        let gcinv = gc.inv().ok()?;
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            if !gm.divides(rm) {
                return None;
            }
            let m = rm.div(gm);
            let c = rc * &gcinv;
            q.add_term(m.clone(), c.clone());
            rem = rem.checked_sub(&g.mul_mono(&m, &c)).unwrap();
        }
        Some(q)
    }

    /// Some(lambda) with self = lambda * g (None if not proportional).
    pub fn proportional(&self, g: &MultiPoly) -> Option<Scalar> {
        if self.is_zero() && g.is_zero() {
            return Some(Scalar::one(self.field));
        }
        if self.is_zero() || g.is_zero() {
            return None;
        }
        if self.terms.len() != g.terms.len() {
            return None;
        }
        let (_, fc) = self.leading().unwrap();
        let (_, gc) = g.leading().unwrap();
        let lambda = fc.checked_div(gc).ok()?;
        for ((mf, cf), (mg, cg)) in self.terms.iter().zip(g.terms.iter()) {
            if mf != mg || *cf != &lambda * cg {
                return None;
            }
        }
        Some(lambda)
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = self.render_mono(m);
            let (sign, body) = render_coeff(c, &mono);
            if i == 0 {
                if sign < 0 {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(if sign < 0 { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }

    fn render_mono(&self, m: &Mono) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                if e == 1 {
                    self.ctx.name(v).to_string()
                } else {
                    format!("{}^{}", self.ctx.name(v), e)
                }
            })
            .collect();
        parts.join("*")
    }

    pub fn parse(s: &str, ctx: &Ctx, field: Field) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero(ctx, field);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        if compact == "0" {
            return Ok(out);
        }
        let bytes = compact.as_bytes();
        let mut term_start = 0usize;
        let mut depth = 0i32;
        let mut boundaries: Vec<(usize, i64)> = vec![]; // (start, sign)
        let mut sign: i64 = 1;
        if bytes[0] == b'+' {
            term_start = 1;
        } else if bytes[0] == b'-' {
            term_start = 1;
            sign = -1;
        }
        boundaries.push((term_start, sign));
        let mut i = term_start;
        while i < bytes.len() {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > term_start => {
                    // '^' exponents are unsigned and scalars inside parens are
                    // self-contained, so any top-level sign splits terms
                    boundaries.push((i, if bytes[i] == b'-' { -1 } else { 1 }));
                }
                _ => {}
            }
            i += 1;
        }
        for (k, &(start, sgn)) in boundaries.iter().enumerate() {
            let begin = if k == 0 { start } else { start + 1 };
            let end = boundaries
                .get(k + 1)
                .map(|&(b, _)| b)
                .unwrap_or(compact.len());
            let term = &compact[begin..end];
            let (m, c) = parse_term(term, ctx, field)?;
            let c = if sgn < 0 { c.neg() } else { c };
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// JSON form: array of [exponent-vector, coefficient-string], leading
    /// term first.
    pub fn to_json(&self) -> serde_json::Value {
        let arr: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                serde_json::json!([
                    m.0.iter().map(|&e| e as u64).collect::<Vec<u64>>(),
                    c.render()
                ])
            })
            .collect();
        serde_json::Value::Array(arr)
    }

    pub fn from_json(
        v: &serde_json::Value,
        ctx: &Ctx,
        field: Field,
    ) -> Result<MultiPoly, PolyError> {
        let arr = v
            .as_array()
            .ok_or_else(|| PolyError::Parse("expected array".into()))?;
        let mut out = MultiPoly::zero(ctx, field);
        for entry in arr {
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| PolyError::Parse("expected [exponents, coeff]".into()))?;
            let exps = pair[0]
                .as_array()
                .ok_or_else(|| PolyError::Parse("expected exponent array".into()))?;
            if exps.len() != ctx.len() {
                return Err(PolyError::Parse("exponent vector length".into()));
            }
            let mono = Mono(
                exps.iter()
                    .map(|e| e.as_u64().map(|x| x as u16))
                    .collect::<Option<Vec<u16>>>()
                    .ok_or_else(|| PolyError::Parse("bad exponent".into()))?,
            );
            let cs = pair[1]
                .as_str()
                .ok_or_else(|| PolyError::Parse("expected coefficient string".into()))?;
            let c = Scalar::parse(cs, field)?;
            out.add_term(mono, c);
        }
        Ok(out)
    }
}

/// Returns (sign, body) where sign is only ever -1 for rational-valued
/// coefficients; parenthesized coefficients keep their sign inside.
fn render_coeff(c: &Scalar, mono: &str) -> (i32, String) {
    use num_traits::Signed;
    if let Some(r) = c.as_rational() {
        let sign = if r.is_negative() { -1 } else { 1 };
        let mag = r.abs();
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            mono.to_string()
        } else {
            format!("{mag}*{mono}")
        };
        return (sign, body);
    }
    match c {
        Scalar::Fp { v, .. } => {
            let body = if mono.is_empty() {
                v.to_string()
            } else if *v == 1 {
                mono.to_string()
            } else {
                format!("{v}*{mono}")
            };
            (1, body)
        }
        other => {
            let inner = other.render();
            let body = if mono.is_empty() {
                format!("({inner})")
            } else {
                format!("({inner})*{mono}")
            };
            (1, body)
        }
    }
}

use num_traits::One;

fn parse_term(term: &str, ctx: &Ctx, field: Field) -> Result<(Mono, Scalar), PolyError> {
    if term.is_empty() {
        return Err(PolyError::Parse("empty term".into()));
    }
    // split on '*' at paren depth 0
    let bytes = term.as_bytes();
    let mut factors: Vec<&str> = vec![];
    let mut depth = 0;
    let mut start = 0;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'*' if depth == 0 => {
                factors.push(&term[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    factors.push(&term[start..]);
    let mut coef = Scalar::one(field);
    let mut exps = vec![0u16; ctx.len()];
    for (i, f) in factors.iter().enumerate() {
        if f.is_empty() {
            return Err(PolyError::Parse(format!("empty factor in {term:?}")));
        }
        if f.starts_with('(') {
            if !f.ends_with(')') {
                return Err(PolyError::Parse(format!("unbalanced parens in {f:?}")));
            }
            let inner = &f[1..f.len() - 1];
            let s = Scalar::parse(inner, field)?;
            coef = coef.checked_mul(&s)?;
            continue;
        }
        // variable factor?
        let (name, exp) = match f.find('^') {
            Some(j) => {
                let e: u16 = f[j + 1..]
                    .parse()
                    .map_err(|_| PolyError::Parse(format!("bad exponent in {f:?}")))?;
                (&f[..j], e)
            }
            None => (*f, 1u16),
        };
        if let Some(v) = ctx.index_of(name) {
            exps[v] += exp;
            continue;
        }
        // otherwise it must be a scalar literal in first position
        if i == 0 && !f.contains('^') {
            if let Ok(s) = Scalar::parse(f, field) {
                coef = coef.checked_mul(&s)?;
                continue;
            }
        }
        return Err(PolyError::Parse(format!("unknown factor {f:?}")));
    }
    Ok((Mono(exps), coef))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

macro_rules! poly_binop {
    ($trait:ident, $fn:ident, $checked:ident) => {
        impl std::ops::$trait<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $fn(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("polynomial context/field mismatch")
            }
        }
    };
}
poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

/// Sum of a (possibly empty) iterator of polynomials over a known context.
pub fn poly_sum<'a, I: IntoIterator<Item = &'a MultiPoly>>(
    ctx: &Ctx,
    field: Field,
    it: I,
) -> MultiPoly {
    let mut acc = MultiPoly::zero(ctx, field);
    for p in it {
        acc = &acc + p;
    }
    acc
}
