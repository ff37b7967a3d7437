//! Exact field elements: rationals, cyclotomic fields Q(zeta_n) for a fixed
//! menu of small n, prime fields F_p, and small extension fields F_{p^k}.
//!
//! A `Scalar` knows which field it lives in and arithmetic never mixes fields
//! implicitly; the `checked_*` entry points report mismatches as errors, the
//! operator impls panic (they are for code paths where the field is an
//! established invariant). There is no floating point anywhere.
//!
//! Cyclotomic elements are coefficient vectors over Q in the power basis
//! `1, z, ..., z^(phi(n)-1)`, always reduced modulo the n-th cyclotomic
//! polynomial, so equality of values is literal equality of representations
//! (`Eq`/`Hash` are derived and honest).

use crate::modp;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Cyclotomic orders the crate supports. Everything the verification suite
/// needs lives in Q(w), Q(i), Q(zeta_5) or composites of those.
pub const SUPPORTED_CYCLOTOMIC: [u8; 5] = [3, 4, 5, 12, 15];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// Rational numbers.
    Rat,
    /// Q(zeta_n) for n in `SUPPORTED_CYCLOTOMIC`.
    Cyc(u8),
    /// Prime field, p an odd prime other than 3, p < 2^31.
    Fp(u64),
    /// Degree-k extension of F_p with the canonical modulus for (p, k).
    Ext(u64, u8),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rat => write!(f, "Q"),
            Field::Cyc(n) => write!(f, "Q(zeta_{n})"),
            Field::Fp(p) => write!(f, "F_{p}"),
            Field::Ext(p, k) => write!(f, "F_{{{p}^{k}}}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order {0} not supported (allowed: 3, 4, 5, 12, 15)")]
    UnsupportedCyclotomic(u8),
    #[error("bad characteristic {0}: need an odd prime other than 3, below 2^31")]
    BadCharacteristic(u64),
    #[error("F_{0} has no element of exact multiplicative order {1}")]
    NoRootOfUnity(u64, u64),
    #[error("no root of unity of order {1} in {0}")]
    RootOrderUnavailable(Field, u64),
    #[error("denominator vanishes modulo {0}")]
    DenominatorVanishes(u64),
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
}

pub fn phi_of(n: u8) -> Result<usize, ScalarError> {
    match n {
        3 | 4 => Ok(2),
        5 | 12 => Ok(4),
        15 => Ok(8),
        other => Err(ScalarError::UnsupportedCyclotomic(other)),
    }
}

/// Ascending coefficients of the n-th cyclotomic polynomial (monic).
fn cyclotomic_poly(n: u8) -> &'static [i64] {
    match n {
        3 => &[1, 1, 1],
        4 => &[1, 0, 1],
        5 => &[1, 1, 1, 1, 1],
        12 => &[1, 0, -1, 0, 1],
        15 => &[1, -1, 0, 1, -1, 1, 0, -1, 1],
        _ => unreachable!("unsupported cyclotomic order"),
    }
}

/// Symbol used when rendering elements of Q(zeta_n).
pub fn cyc_symbol(n: u8) -> &'static str {
    match n {
        3 => "w",
        4 => "i",
        5 => "z5",
        12 => "z12",
        15 => "z15",
        _ => unreachable!(),
    }
}

/// Rewrite rows: for e in d..=2d-2, `rows[e-d]` expresses z^e in the power
/// basis. Integer entries since the cyclotomic polynomials are monic over Z.
fn reduction_rows(n: u8) -> &'static Vec<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u8, &'static Vec<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(rows) = guard.get(&n) {
        return rows;
    }
    let phi = cyclotomic_poly(n);
    let d = phi.len() - 1;
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(d.saturating_sub(1));
    // z^d = -(phi - z^d)
    let base: Vec<i64> = phi[..d].iter().map(|c| -c).collect();
    rows.push(base);
    for _ in 1..d.saturating_sub(1) {
        let prev = rows.last().unwrap();
        // multiply by z: shift, then fold the overflowing z^d term back in
        let mut next = vec![0i64; d];
        let carry = prev[d - 1];
        for i in (1..d).rev() {
            next[i] = prev[i - 1];
        }
        for i in 0..d {
            next[i] += carry * rows[0][i];
        }
        rows.push(next);
    }
    let leaked: &'static Vec<Vec<i64>> = Box::leak(Box::new(rows));
    guard.insert(n, leaked);
    leaked
}

/// Canonical irreducible modulus for F_{p^k}: the first monic polynomial
/// x^k + a_{k-1} x^{k-1} + ... + a_0 in the enumeration where
/// (a_0, ..., a_{k-1}) are the base-p digits of m = 0, 1, 2, ...
pub fn canonical_modulus(p: u64, k: u8) -> Vec<u64> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u8), Vec<u64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, k)) {
        return f.clone();
    }
    let k = k as usize;
    let mut m = 0u64;
    let modulus = loop {
        let mut digits = vec![0u64; k];
        let mut t = m;
        for d in digits.iter_mut() {
            *d = t % p;
            t /= p;
        }
        assert!(t == 0, "no irreducible found in range, impossible");
        if poly_irreducible(&digits, p) {
            break digits;
        }
        m += 1;
    };
    cache
        .lock()
        .unwrap()
        .insert((p, k as u8), modulus.clone());
    modulus
}

// --- dense F_p[x] helpers for the extension-field plumbing ---

fn fp_poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    // modulus holds the low coefficients of a monic degree-k polynomial
    let k = modulus.len();
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = modp::add_m(prod[i + j], modp::mul_m(x, y, p), p);
        }
    }
    for e in (k..prod.len()).rev() {
        let c = prod[e];
        if c == 0 {
            continue;
        }
        prod[e] = 0;
        for i in 0..k {
            let sub = modp::mul_m(c, modulus[i], p);
            prod[e - k + i] = modp::sub_m(prod[e - k + i], sub, p);
        }
    }
    prod.truncate(k);
    prod
}

fn fp_poly_powmod(base: &[u64], mut exp: u128, modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len();
    let mut acc = vec![0u64; k];
    acc[0] = 1;
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_poly_mulmod(&acc, &b, modulus, p);
        }
        b = fp_poly_mulmod(&b, &b, modulus, p);
        exp >>= 1;
    }
    acc
}

fn fp_poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_poly_trim(&mut a);
    fp_poly_trim(&mut b);
    while !b.is_empty() {
        let r = fp_poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn fp_poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = modp::inv_m(b[db], p).expect("nonzero leading coefficient");
    while r.len() > db {
        let c = modp::mul_m(*r.last().unwrap(), lead_inv, p);
        let shift = r.len() - 1 - db;
        for i in 0..=db {
            let sub = modp::mul_m(c, b[i], p);
            r[shift + i] = modp::sub_m(r[shift + i], sub, p);
        }
        fp_poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Irreducibility of the monic polynomial x^k + digits over F_p, via the
/// standard Frobenius criterion.
fn poly_irreducible(low: &[u64], p: u64) -> bool {
    let k = low.len();
    if k == 1 {
        return true; // x + a0 always irreducible
    }
    let x = vec![0u64, 1];
    // x^(p^k) == x mod f
    let mut frob = x.clone();
    for _ in 0..k {
        frob = fp_poly_powmod(&frob, p as u128, low, p);
    }
    let mut diff = frob.clone();
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = modp::sub_m(diff[1], 1, p);
    fp_poly_trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    // gcd(x^(p^(k/q)) - x, f) == 1 for each prime q | k
    for (q, _) in modp::factor(k as u64) {
        let j = k / q as usize;
        let mut g = x.clone();
        for _ in 0..j {
            g = fp_poly_powmod(&g, p as u128, low, p);
        }
        let mut diff = g;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = modp::sub_m(diff[1], 1, p);
        fp_poly_trim(&mut diff);
        if diff.is_empty() {
            return false; // x^(p^j) == x means f splits over F_{p^j}
        }
        let mut full = low.to_vec();
        full.push(1);
        if fp_poly_gcd(&diff, &full, p).len() != 1 {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Cyc { n: u8, c: Vec<BigRational> },
    Fp { p: u64, v: u64 },
    Ext { p: u64, k: u8, c: Vec<u64> },
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn validate_prime(p: u64) -> Result<(), ScalarError> {
    if p >= modp::MAX_PRIME || p == 2 || p == 3 || !modp::is_prime(p) {
        Err(ScalarError::BadCharacteristic(p))
    } else {
        Ok(())
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rat,
            Scalar::Cyc { n, .. } => Field::Cyc(*n),
            Scalar::Fp { p, .. } => Field::Fp(*p),
            Scalar::Ext { p, k, .. } => Field::Ext(*p, *k),
        }
    }

    pub fn zero(f: Field) -> Scalar {
        Scalar::from_i64(0, f)
    }

    pub fn one(f: Field) -> Scalar {
        Scalar::from_i64(1, f)
    }

    pub fn from_i64(v: i64, f: Field) -> Scalar {
        match f {
            Field::Rat => Scalar::Rat(rat(v, 1)),
            Field::Cyc(n) => {
                let d = phi_of(n).expect("supported cyclotomic order");
                let mut c = vec![BigRational::zero(); d];
                c[0] = rat(v, 1);
                Scalar::Cyc { n, c }
            }
            Field::Fp(p) => {
                let r = v.rem_euclid(p as i64) as u64;
                Scalar::Fp { p, v: r }
            }
            Field::Ext(p, k) => {
                let mut c = vec![0u64; k as usize];
                c[0] = v.rem_euclid(p as i64) as u64;
                Scalar::Ext { p, k, c }
            }
        }
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Rat(r)
    }

    /// The generator zeta_n of Q(zeta_n).
    pub fn zeta(n: u8) -> Result<Scalar, ScalarError> {
        let d = phi_of(n)?;
        let mut c = vec![BigRational::zero(); d];
        c[1] = BigRational::one();
        Ok(Scalar::Cyc { n, c })
    }

    /// Checked constructor for F_p values.
    pub fn fp(p: u64, v: u64) -> Result<Scalar, ScalarError> {
        validate_prime(p)?;
        Ok(Scalar::Fp { p, v: v % p })
    }

    /// Element of F_{p^k} with the canonical modulus, from power-basis coeffs.
    pub fn ext(p: u64, k: u8, coeffs: &[u64]) -> Result<Scalar, ScalarError> {
        validate_prime(p)?;
        let mut c = vec![0u64; k as usize];
        for (i, &x) in coeffs.iter().enumerate() {
            assert!(i < k as usize, "coefficient vector longer than degree");
            c[i] = x % p;
        }
        canonical_modulus(p, k); // warm the cache, validates (p, k)
        Ok(Scalar::Ext { p, k, c })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Cyc { c, .. } => c.iter().all(|x| x.is_zero()),
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Ext { c, .. } => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.field())
    }

    fn same_field(&self, rhs: &Scalar) -> Result<(), ScalarError> {
        if self.field() == rhs.field() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field(), rhs.field()))
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Cyc { n, c: a }, Scalar::Cyc { c: b, .. }) => Scalar::Cyc {
                n: *n,
                c: a.iter().zip(b).map(|(x, y)| x + y).collect(),
            },
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                p: *p,
                v: modp::add_m(*a, *b, *p),
            },
            (Scalar::Ext { p, k, c: a }, Scalar::Ext { c: b, .. }) => Scalar::Ext {
                p: *p,
                k: *k,
                c: a.iter().zip(b).map(|(x, y)| modp::add_m(*x, *y, *p)).collect(),
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Cyc { n, c } => Scalar::Cyc {
                n: *n,
                c: c.iter().map(|x| -x).collect(),
            },
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: modp::neg_m(*v, *p),
            },
            Scalar::Ext { p, k, c } => Scalar::Ext {
                p: *p,
                k: *k,
                c: c.iter().map(|&x| modp::neg_m(x, *p)).collect(),
            },
        }
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Cyc { n, c: a }, Scalar::Cyc { c: b, .. }) => {
                let d = a.len();
                let mut conv = vec![BigRational::zero(); 2 * d - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let t = x * y;
                        conv[i + j] += t;
                    }
                }
                let rows = reduction_rows(*n);
                for e in (d..conv.len()).rev() {
                    if conv[e].is_zero() {
                        continue;
                    }
                    let carry = std::mem::replace(&mut conv[e], BigRational::zero());
                    for (i, &m) in rows[e - d].iter().enumerate() {
                        if m != 0 {
                            conv[i] += &carry * rat(m, 1);
                        }
                    }
                }
                conv.truncate(d);
                Scalar::Cyc { n: *n, c: conv }
            }
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                p: *p,
                v: modp::mul_m(*a, *b, *p),
            },
            (Scalar::Ext { p, k, c: a }, Scalar::Ext { c: b, .. }) => {
                let modulus = canonical_modulus(*p, *k);
                Scalar::Ext {
                    p: *p,
                    k: *k,
                    c: fp_poly_mulmod(a, b, &modulus, *p),
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Cyc { n, c } => {
                let inv = cyc_inverse(*n, c);
                Scalar::Cyc { n: *n, c: inv }
            }
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: modp::inv_m(*v, *p).expect("nonzero"),
            },
            Scalar::Ext { p, k, c } => {
                let modulus = canonical_modulus(*p, *k);
                let inv = ext_inverse(c, &modulus, *p);
                Scalar::Ext { p: *p, k: *k, c: inv }
            }
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(rhs)?;
        self.checked_mul(&rhs.inv()?)
    }

    pub fn pow_i64(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Scalar::one(self.field());
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.checked_mul(&b)?;
            }
            b = b.checked_mul(&b)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Smallest element of F_p with exact multiplicative order n.
    /// This is the oracle the rest of the crate uses to embed roots of unity.
    pub fn root_of_unity(p: u64, n: u64) -> Result<Scalar, ScalarError> {
        validate_prime(p)?;
        if n == 0 || (p - 1) % n != 0 {
            return Err(ScalarError::NoRootOfUnity(p, n));
        }
        for x in 1..p {
            if modp::order_m(x, p) == n {
                return Ok(Scalar::Fp { p, v: x });
            }
        }
        Err(ScalarError::NoRootOfUnity(p, n))
    }

    /// Image of a rational number in F_p.
    pub fn rational_embed(r: &BigRational, p: u64) -> Result<Scalar, ScalarError> {
        validate_prime(p)?;
        let pbig = BigInt::from(p);
        let num = ((r.numer() % &pbig) + &pbig) % &pbig;
        let den = ((r.denom() % &pbig) + &pbig) % &pbig;
        let num: u64 = num.try_into().unwrap();
        let den: u64 = den.try_into().unwrap();
        let dinv = modp::inv_m(den, p).ok_or(ScalarError::DenominatorVanishes(p))?;
        Ok(Scalar::Fp {
            p,
            v: modp::mul_m(num, dinv, p),
        })
    }

    /// Ring homomorphism Q(zeta_n) -> F_p sending zeta_n to the canonical
    /// root of unity of order n. Rational and F_p inputs pass through
    /// (the latter only when the primes agree).
    pub fn embed_fp(&self, p: u64) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rat(r) => Scalar::rational_embed(r, p),
            Scalar::Cyc { n, c } => {
                let root = match Scalar::root_of_unity(p, *n as u64)? {
                    Scalar::Fp { v, .. } => v,
                    _ => unreachable!(),
                };
                let mut acc = 0u64;
                let mut pw = 1u64;
                for coeff in c {
                    let img = match Scalar::rational_embed(coeff, p)? {
                        Scalar::Fp { v, .. } => v,
                        _ => unreachable!(),
                    };
                    acc = modp::add_m(acc, modp::mul_m(img, pw, p), p);
                    pw = modp::mul_m(pw, root, p);
                }
                Ok(Scalar::Fp { p, v: acc })
            }
            Scalar::Fp { p: q, .. } if *q == p => Ok(self.clone()),
            other => Err(ScalarError::FieldMismatch(other.field(), Field::Fp(p))),
        }
    }

    /// Q -> Q(zeta_n) coefficient embedding (identity on rationals).
    pub fn promote_cyc(&self, n: u8) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rat(r) => {
                let d = phi_of(n)?;
                let mut c = vec![BigRational::zero(); d];
                c[0] = r.clone();
                Ok(Scalar::Cyc { n, c })
            }
            Scalar::Cyc { n: m, .. } if *m == n => Ok(self.clone()),
            other => Err(ScalarError::FieldMismatch(other.field(), Field::Cyc(n))),
        }
    }

    /// The rational value of this scalar, when it has one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Cyc { c, .. } => {
                if c[1..].iter().all(|x| x.is_zero()) {
                    Some(c[0].clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Scalar::Rat(r) => r.to_string(),
            Scalar::Fp { v, .. } => v.to_string(),
            Scalar::Ext { c, .. } => render_power_poly(
                "g",
                &c.iter().map(|&x| rat(x as i64, 1)).collect::<Vec<_>>(),
            ),
            Scalar::Cyc { n, c } => render_power_poly(cyc_symbol(*n), c),
        }
    }

    /// Parse the output of `render` back into a scalar of the given field.
    pub fn parse(s: &str, field: Field) -> Result<Scalar, ScalarError> {
        let s = s.trim();
        let err = || ScalarError::Parse(s.to_string());
        match field {
            Field::Rat => s
                .parse::<BigRational>()
                .map(Scalar::Rat)
                .map_err(|_| err()),
            Field::Fp(p) => {
                let v: u64 = s.parse().map_err(|_| err())?;
                Ok(Scalar::Fp { p, v: v % p })
            }
            Field::Cyc(n) => parse_power_poly(s, cyc_symbol(n)).ok_or_else(err).map(|c| {
                let d = phi_of(n).unwrap();
                let mut full = vec![BigRational::zero(); d];
                for (e, v) in c {
                    assert!(e < d, "exponent out of range in reduced cyclotomic");
                    full[e] = v;
                }
                Scalar::Cyc { n, c: full }
            }),
            Field::Ext(p, k) => parse_power_poly(s, "g").ok_or_else(err).map(|c| {
                let mut full = vec![0u64; k as usize];
                for (e, v) in c {
                    let n = v.numer().clone();
                    let num: i64 = n.try_into().unwrap();
                    full[e] = num.rem_euclid(p as i64) as u64;
                }
                Scalar::Ext { p, k, c: full }
            }),
        }
    }
}

fn cyc_inverse(n: u8, c: &[BigRational]) -> Vec<BigRational> {
    // extended Euclid in Q[x] against the cyclotomic polynomial
    let phi: Vec<BigRational> = cyclotomic_poly(n).iter().map(|&x| rat(x, 1)).collect();
    let f: Vec<BigRational> = c.to_vec();
    let (g, _, t) = rat_poly_xgcd(&phi, &f);
    // g is a nonzero constant (phi is irreducible, f nonzero)
    assert_eq!(g.len(), 1, "cyclotomic polynomial must be coprime to residue");
    let ginv = g[0].clone().recip();
    let mut inv: Vec<BigRational> = t.iter().map(|x| x * &ginv).collect();
    // reduce mod phi just in case, then pad
    while inv.len() >= phi.len() {
        let e = inv.len() - 1;
        let lead = inv.pop().unwrap();
        let rows = reduction_rows(n);
        let d = phi.len() - 1;
        for (i, &m) in rows[e - d].iter().enumerate() {
            if m != 0 {
                inv[i] += &lead * rat(m, 1);
            }
        }
    }
    inv.resize(c.len(), BigRational::zero());
    inv
}

fn rat_poly_trim(v: &mut Vec<BigRational>) {
    while v.last().map(|x| x.is_zero()) == Some(true) {
        v.pop();
    }
}

/// Returns (gcd, s, t) with s*a + t*b = gcd, over Q[x].
fn rat_poly_xgcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    rat_poly_trim(&mut r0);
    rat_poly_trim(&mut r1);
    let mut s0 = vec![BigRational::one()];
    let mut s1: Vec<BigRational> = vec![];
    let mut t0: Vec<BigRational> = vec![];
    let mut t1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = rat_poly_divrem(&r0, &r1);
        let s2 = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
        let t2 = rat_poly_sub(&t0, &rat_poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    (r0, s0, t0)
}

fn rat_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn rat_poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    rat_poly_trim(&mut out);
    out
}

fn rat_poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    rat_poly_trim(&mut r);
    let db = b.len() - 1;
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let c = r.last().unwrap() / &b[db];
        let shift = r.len() - 1 - db;
        q[shift] = c.clone();
        for i in 0..=db {
            let t = &c * &b[i];
            r[shift + i] -= t;
        }
        rat_poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    rat_poly_trim(&mut q);
    (q, r)
}

fn ext_inverse(c: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    // extended Euclid in F_p[x]
    let mut full = modulus.to_vec();
    full.push(1);
    let mut r0 = full;
    let mut r1 = c.to_vec();
    fp_poly_trim(&mut r1);
    let mut t0: Vec<u64> = vec![];
    let mut t1 = vec![1u64];
    while !r1.is_empty() {
        let (q, r) = fp_poly_divrem(&r0, &r1, p);
        let qs = fp_poly_mul(&q, &t1, p);
        let mut t2 = t0.clone();
        if t2.len() < qs.len() {
            t2.resize(qs.len(), 0);
        }
        for (i, &y) in qs.iter().enumerate() {
            t2[i] = modp::sub_m(t2[i], y, p);
        }
        fp_poly_trim(&mut t2);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t2;
    }
    // r0 is a nonzero constant
    let ginv = modp::inv_m(r0[0], p).expect("unit");
    let mut out: Vec<u64> = t0.iter().map(|&x| modp::mul_m(x, ginv, p)).collect();
    out.resize(modulus.len(), 0);
    out
}

fn fp_poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = modp::add_m(out[i + j], modp::mul_m(x, y, p), p);
        }
    }
    out
}

fn fp_poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    fp_poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = modp::inv_m(b[db], p).expect("nonzero");
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db {
        let c = modp::mul_m(*r.last().unwrap(), lead_inv, p);
        let shift = r.len() - 1 - db;
        q[shift] = c;
        for i in 0..=db {
            r[shift + i] = modp::sub_m(r[shift + i], modp::mul_m(c, b[i], p), p);
        }
        fp_poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    (q, r)
}

/// Render `sum c[e] * sym^e` with descending powers, e.g. `-w-1`, `2*z5^3+1/2`.
fn render_power_poly(sym: &str, c: &[BigRational]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (e, v) in c.iter().enumerate().rev() {
        if v.is_zero() {
            continue;
        }
        let mag = v.abs();
        let body = if e == 0 {
            mag.to_string()
        } else {
            let var = if e == 1 {
                sym.to_string()
            } else {
                format!("{sym}^{e}")
            };
            if mag.is_one() {
                var
            } else {
                format!("{mag}*{var}")
            }
        };
        if parts.is_empty() {
            parts.push(if v.is_negative() {
                format!("-{body}")
            } else {
                body
            });
        } else {
            parts.push(format!("{}{}", if v.is_negative() { "-" } else { "+" }, body));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.concat()
    }
}

/// Inverse of `render_power_poly`: returns (exponent, coefficient) pairs.
fn parse_power_poly(s: &str, sym: &str) -> Option<Vec<(usize, BigRational)>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let mut out: Vec<(usize, BigRational)> = Vec::new();
    let mut rest: &str = &s;
    let mut sign = BigRational::one();
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    loop {
        // find end of term: next top-level + or - (no parens in scalar text)
        let end = rest
            .char_indices()
            .position(|(i, ch)| i > 0 && (ch == '+' || ch == '-'))
            .unwrap_or(rest.len());
        let term = &rest[..end];
        let (e, v) = parse_power_term(term, sym)?;
        out.push((e, &sign * v));
        if end == rest.len() {
            break;
        }
        sign = if rest.as_bytes()[end] == b'-' {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        rest = &rest[end + 1..];
    }
    Some(out)
}

fn parse_power_term(term: &str, sym: &str) -> Option<(usize, BigRational)> {
    // forms: "5", "5/2", "w", "w^2", "3*w^2", "3/2*w"
    if let Some(idx) = term.find(sym).filter(|&i| {
        // symbol must start the variable part (i == 0 or preceded by '*')
        i == 0 || term.as_bytes()[i - 1] == b'*'
    }) {
        let coef_part = if idx == 0 { "" } else { &term[..idx - 1] };
        let var_part = &term[idx..];
        let coef = if coef_part.is_empty() {
            BigRational::one()
        } else {
            coef_part.parse().ok()?
        };
        let e = match var_part.strip_prefix(sym) {
            Some("") => 1usize,
            Some(rest) => rest.strip_prefix('^')?.parse().ok()?,
            None => return None,
        };
        Some((e, coef))
    } else {
        Some((0, term.parse().ok()?))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

// Operator impls for code whose field agreement is an invariant; they panic on
// mismatch, which would be a bug, not a data error.
macro_rules! scalar_binop {
    ($trait:ident, $fn:ident, $checked:ident) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
    };
}
scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// Dispatcher used by the CLI surface: one entry point, typed errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(op: ArithOp, a: &Scalar, b: &Scalar) -> Result<Scalar, ScalarError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}
