//! The two complex reflection groups acting on the matrix parameter spaces:
//! an order-600 group on two parameters over Q(ζ5) and an order-155520 group
//! on four parameters over Q(ω), together with their reflection arrangements
//! and the classification of arrangement flats by orbit.
//!
//! Group elements are stored exactly as integer matrices over the ring of
//! cyclotomic integers divided by a power of the ramified prime (5 in the
//! first case, 3 in the second).  This compact form makes closure by
//! breadth-first multiplication and membership hashing cheap.

use std::collections::{HashMap, HashSet};
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::mat::{projective_normalize, FieldMatrix};
use crate::scalar::{phi_of, Field, Scalar};

/// Coordinates of a cyclotomic integer on the power basis 1, ζ, .., ζ^{φ-1}.
pub type CycCoords = [i64; 4];

/// Product in Z[ζ_n] on power-basis coordinates, for n = 3 or n = 5.
pub fn cyc_mul(n: u8, a: &CycCoords, b: &CycCoords) -> CycCoords {
    match n {
        3 => {
            // ω² = -1 - ω
            let c0 = a[0] * b[0] - a[1] * b[1];
            let c1 = a[0] * b[1] + a[1] * b[0] - a[1] * b[1];
            [c0, c1, 0, 0]
        }
        5 => {
            let mut full = [0i64; 7];
            for i in 0..4 {
                for j in 0..4 {
                    full[i + j] += a[i] * b[j];
                }
            }
            // ζ⁵ = 1, then ζ⁴ = -(1 + ζ + ζ² + ζ³).
            full[0] += full[5];
            full[1] += full[6];
            let top = full[4];
            [
                full[0] - top,
                full[1] - top,
                full[2] - top,
                full[3] - top,
            ]
        }
        _ => panic!("cyc_mul supports conductors 3 and 5 only"),
    }
}

pub fn cyc_add(a: &CycCoords, b: &CycCoords) -> CycCoords {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub fn cyc_scale(a: &CycCoords, k: i64) -> CycCoords {
    [a[0] * k, a[1] * k, a[2] * k, a[3] * k]
}

pub fn cyc_is_zero(a: &CycCoords) -> bool {
    a.iter().all(|&x| x == 0)
}

/// A square matrix with entries `(Σ e_i ζ^i) / base^den_pow`, kept in lowest
/// terms with respect to the base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GMat {
    n: u8,
    base: i64,
    den_pow: u32,
    dim: usize,
    e: Vec<CycCoords>,
}

impl GMat {
    pub fn new(n: u8, base: i64, den_pow: u32, dim: usize, e: Vec<CycCoords>) -> GMat {
        assert_eq!(e.len(), dim * dim);
        let mut m = GMat {
            n,
            base,
            den_pow,
            dim,
            e,
        };
        m.reduce();
        m
    }

    pub fn identity(n: u8, base: i64, dim: usize) -> GMat {
        let mut e = vec![[0i64; 4]; dim * dim];
        for i in 0..dim {
            e[i * dim + i][0] = 1;
        }
        GMat {
            n,
            base,
            den_pow: 0,
            dim,
            e,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycCoords {
        &self.e[i * self.dim + j]
    }

    fn reduce(&mut self) {
        while self.den_pow > 0
            && self
                .e
                .iter()
                .all(|c| c.iter().all(|&x| x % self.base == 0))
        {
            for c in self.e.iter_mut() {
                for x in c.iter_mut() {
                    *x /= self.base;
                }
            }
            self.den_pow -= 1;
        }
    }

    pub fn mul(&self, other: &GMat) -> GMat {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut e = vec![[0i64; 4]; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entry(i, k);
                if cyc_is_zero(a) {
                    continue;
                }
                for j in 0..d {
                    let b = other.entry(k, j);
                    if cyc_is_zero(b) {
                        continue;
                    }
                    e[i * d + j] = cyc_add(&e[i * d + j], &cyc_mul(self.n, a, b));
                }
            }
        }
        GMat::new(self.n, self.base, self.den_pow + other.den_pow, d, e)
    }

    pub fn is_identity(&self) -> bool {
        self == &GMat::identity(self.n, self.base, self.dim)
    }

    /// Inverse computed by raising to the order minus one.
    pub fn inverse(&self) -> GMat {
        let mut pow = self.clone();
        let mut prev = GMat::identity(self.n, self.base, self.dim);
        for _ in 0..10_000 {
            if pow.is_identity() {
                return prev;
            }
            prev = pow.clone();
            pow = pow.mul(self);
        }
        panic!("element order exceeds bound");
    }

    /// Numerator of `base^den_pow · (g - 1)`, an integer matrix with the same
    /// rank as `g - 1`.
    pub fn numerator_minus_identity(&self) -> Vec<CycCoords> {
        let mut out = self.e.clone();
        let lead = self.base.pow(self.den_pow);
        for i in 0..self.dim {
            out[i * self.dim + i][0] -= lead;
        }
        out
    }

    /// Exact matrix over the corresponding cyclotomic field.
    pub fn to_field_matrix(&self) -> FieldMatrix {
        let field = Field::Cyc(self.n);
        let phi = phi_of(self.n).expect("supported conductor");
        let den = BigInt::from(self.base.pow(self.den_pow));
        FieldMatrix::from_fn(self.dim, self.dim, field, |i, j| {
            let c = self.entry(i, j);
            Scalar::Cyc {
                n: self.n,
                c: (0..phi)
                    .map(|t| BigRational::new(BigInt::from(c[t]), den.clone()))
                    .collect(),
            }
        })
    }

    /// Applies `base^den_pow · g` to an integer coordinate vector.
    pub fn apply_int(&self, v: &[CycCoords]) -> Vec<CycCoords> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let mut acc = [0i64; 4];
                for j in 0..self.dim {
                    acc = cyc_add(&acc, &cyc_mul(self.n, self.entry(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    /// Whether `g` fixes the integer vector `v` exactly.
    pub fn fixes_int(&self, v: &[CycCoords]) -> bool {
        let lead = self.base.pow(self.den_pow);
        self.apply_int(v)
            .iter()
            .zip(v)
            .all(|(got, want)| *got == cyc_scale(want, lead))
    }

    /// True when all 2x2 minors of `g - 1` vanish but `g` is not the identity.
    pub fn is_reflection(&self) -> bool {
        let num = self.numerator_minus_identity();
        if num.iter().all(cyc_is_zero) {
            return false;
        }
        let d = self.dim;
        for i0 in 0..d {
            for i1 in i0 + 1..d {
                for j0 in 0..d {
                    for j1 in j0 + 1..d {
                        let m = cyc_add(
                            &cyc_mul(self.n, &num[i0 * d + j0], &num[i1 * d + j1]),
                            &cyc_scale(&cyc_mul(self.n, &num[i0 * d + j1], &num[i1 * d + j0]), -1),
                        );
                        if !cyc_is_zero(&m) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Multiplicative order, bounded for safety.
    pub fn order(&self) -> usize {
        let mut pow = self.clone();
        for k in 1..=10_000 {
            if pow.is_identity() {
                return k;
            }
            pow = pow.mul(self);
        }
        panic!("element order exceeds bound");
    }
}

/// Closes a generating set under multiplication; panics if `cap` is exceeded.
pub fn close_matrix_group(gens: &[GMat], cap: usize) -> Vec<GMat> {
    assert!(!gens.is_empty());
    let id = GMat::identity(gens[0].n, gens[0].base, gens[0].dim);
    let mut seen: HashSet<GMat> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        for g in gens {
            let next = g.mul(&cur);
            if seen.insert(next.clone()) {
                assert!(seen.len() <= cap, "group closure exceeded cap {cap}");
                queue.push(next);
            }
        }
    }
    queue
}

fn coords(vals: &[i64]) -> CycCoords {
    let mut c = [0i64; 4];
    c[..vals.len()].copy_from_slice(vals);
    c
}

/// Generators of the rank-2 group over Q(ζ5): a quarter turn and the listed
/// matrix with denominator 5.
pub fn rank2_generators() -> Vec<GMat> {
    let mu = GMat::new(
        5,
        5,
        0,
        2,
        vec![
            coords(&[0]),
            coords(&[-1]),
            coords(&[1]),
            coords(&[0]),
        ],
    );
    // Entries with ζ⁴ rewritten on the power basis 1, ζ, ζ², ζ³.
    let nu = GMat::new(
        5,
        5,
        1,
        2,
        vec![
            coords(&[-1, 3, 2, 1]),
            coords(&[3, 1, -1, 2]),
            coords(&[3, 1, 4, 2]),
            coords(&[1, 2, 3, 4]),
        ],
    );
    vec![mu, nu]
}

/// Generators of the rank-4 group over Q(ω): `-ω` times a signed permutation
/// and the listed matrix with denominator `ω - ω²` (rationalized to 3).
pub fn rank4_generators() -> Vec<GMat> {
    let m = coords(&[0, -1]); // -ω
    let w = coords(&[0, 1]); // ω
    let z = coords(&[0]);
    let mu = GMat::new(
        3,
        3,
        0,
        4,
        vec![
            m, z, z, z, //
            z, w, z, z, //
            z, z, z, w, //
            z, z, w, z,
        ],
    );
    // 1/(ω - ω²) = (-1 - 2ω)/3; the scalar -1 - 2ω is folded into the entries.
    let a = coords(&[-1, -2]); // (-1-2ω)·1
    let b = coords(&[-1, 1]); // (-1-2ω)·(-ω-1)
    let c = coords(&[2, 1]); // (-1-2ω)·ω
    let d = coords(&[1, 2]); // (-1-2ω)·(-1)
    let e = coords(&[-2, -1]); // (-1-2ω)·(-ω)
    let f = coords(&[1, -1]); // (-1-2ω)·(ω+1)
    let g = coords(&[-3]); // (-1-2ω)·(-2ω-1)
    let nu = GMat::new(
        3,
        3,
        1,
        4,
        vec![
            z, a, a, a, //
            z, a, b, c, //
            z, d, e, f, //
            g, z, z, z,
        ],
    );
    vec![mu, nu]
}

static RANK2_GROUP: LazyLock<Vec<GMat>> =
    LazyLock::new(|| close_matrix_group(&rank2_generators(), 1_000));

static RANK4_GROUP: LazyLock<Vec<GMat>> =
    LazyLock::new(|| close_matrix_group(&rank4_generators(), 200_000));

/// All 600 elements of the rank-2 reflection group.
pub fn rank2_group() -> &'static [GMat] {
    &RANK2_GROUP
}

/// All 155520 elements of the rank-4 reflection group.
pub fn rank4_group() -> &'static [GMat] {
    &RANK4_GROUP
}

/// Canonical projective linear forms of the reflection hyperplanes.
///
/// Each reflection `g` has `g - 1` of rank one, so any nonzero row of its
/// numerator spans the defining form of the fixed hyperplane.
pub fn reflection_hyperplanes(elements: &[GMat]) -> Vec<Vec<Scalar>> {
    let mut forms: HashSet<Vec<Scalar>> = HashSet::new();
    for g in elements {
        if !g.is_reflection() {
            continue;
        }
        let num = g.numerator_minus_identity();
        let d = g.dim();
        let phi = phi_of(g.n).expect("supported conductor");
        let row = (0..d)
            .find(|&i| (0..d).any(|j| !cyc_is_zero(&num[i * d + j])))
            .expect("reflection differs from identity");
        let vec: Vec<Scalar> = (0..d)
            .map(|j| Scalar::Cyc {
                n: g.n,
                c: (0..phi)
                    .map(|t| BigRational::from(BigInt::from(num[row * d + j][t])))
                    .collect(),
            })
            .collect();
        forms.insert(projective_normalize(&vec));
    }
    let mut out: Vec<Vec<Scalar>> = forms.into_iter().collect();
    out.sort_by_key(|v| format!("{v:?}"));
    out
}

/// A flat of the hyperplane arrangement: the reduced echelon rows of its
/// defining forms together with a basis of the subspace they cut out.
#[derive(Clone)]
pub struct FlatData {
    pub forms: Vec<Vec<Scalar>>,
    pub basis: Vec<Vec<Scalar>>,
}

/// All flats of one orbit class, keyed by codimension and the number of
/// hyperplanes containing each flat.
pub struct FlatClass {
    pub codim: usize,
    pub through: usize,
    pub flats: Vec<FlatData>,
    pub orbit_size: usize,
    pub pointwise_stabilizer_order: usize,
}

fn rref_rows(rows: Vec<Vec<Scalar>>) -> (usize, Vec<Vec<Scalar>>) {
    let m = FieldMatrix::from_rows(rows);
    let (r, pivots) = m.rref();
    let rank = pivots.len();
    let kept: Vec<Vec<Scalar>> = (0..rank).map(|i| r.row(i).to_vec()).collect();
    (rank, kept)
}

fn flat_key(rows: &[Vec<Scalar>]) -> Vec<Scalar> {
    rows.iter().flatten().cloned().collect()
}

fn form_vanishes_on(form: &[Scalar], basis: &[Vec<Scalar>]) -> bool {
    basis.iter().all(|v| {
        let mut acc = Scalar::zero(form[0].field());
        for (f, x) in form.iter().zip(v) {
            acc = acc
                .checked_add(&f.checked_mul(x).expect("same field"))
                .expect("same field");
        }
        acc.is_zero()
    })
}

fn kernel_of_forms(forms: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    FieldMatrix::from_rows(forms.to_vec()).kernel_basis()
}

/// Orbit of a flat under the group generated by the listed inverse actions,
/// acting on defining forms by right multiplication.
fn flat_orbit_size(start: &[Vec<Scalar>], inv_gens: &[FieldMatrix]) -> usize {
    let mut seen: HashSet<Vec<Scalar>> = HashSet::new();
    let (_, start_rows) = rref_rows(start.to_vec());
    seen.insert(flat_key(&start_rows));
    let mut queue = vec![start_rows];
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        for gi in inv_gens {
            let moved = FieldMatrix::from_rows(cur.clone()).mul(gi);
            let rows: Vec<Vec<Scalar>> = (0..moved.rows()).map(|i| moved.row(i).to_vec()).collect();
            let (_, canon) = rref_rows(rows);
            if seen.insert(flat_key(&canon)) {
                queue.push(canon);
            }
        }
    }
    seen.len()
}

/// Converts a vector over a cyclotomic field to integer coordinates by
/// clearing denominators.
pub fn cyc_vec_integral(v: &[Scalar]) -> Vec<CycCoords> {
    let mut lcm = BigInt::from(1);
    for s in v {
        if let Scalar::Cyc { c, .. } = s {
            for r in c {
                lcm = num_integer::lcm(lcm.clone(), r.denom().abs());
            }
        } else {
            panic!("expected cyclotomic scalar");
        }
    }
    v.iter()
        .map(|s| {
            let Scalar::Cyc { c, .. } = s else {
                unreachable!()
            };
            let mut out = [0i64; 4];
            for (t, r) in c.iter().enumerate() {
                let scaled = r * BigRational::from(lcm.clone());
                assert!(scaled.is_integer());
                out[t] = scaled.numer().to_i64().expect("small integer coordinates");
            }
            out
        })
        .collect()
}

fn pointwise_stabilizer_order(elements: &[GMat], basis: &[Vec<Scalar>]) -> usize {
    let int_basis: Vec<Vec<CycCoords>> = basis.iter().map(|v| cyc_vec_integral(v)).collect();
    elements
        .iter()
        .filter(|g| int_basis.iter().all(|v| g.fixes_int(v)))
        .count()
}

/// Classifies the flats of the rank-4 arrangement of 40 hyperplanes obtained
/// from intersections of up to three hyperplanes.
pub fn rank4_flat_classes() -> &'static [FlatClass] {
    &RANK4_FLATS
}

static RANK4_FLATS: LazyLock<Vec<FlatClass>> = LazyLock::new(|| {
    let group = rank4_group();
    let hyper = reflection_hyperplanes(group);
    assert_eq!(hyper.len(), 40, "rank-4 arrangement has 40 hyperplanes");
    let gens = rank4_generators();
    let inv_gens: Vec<FieldMatrix> = gens.iter().map(|g| g.inverse().to_field_matrix()).collect();

    // Collect distinct flats from intersections of 1, 2, and 3 hyperplanes.
    let mut flats: HashMap<Vec<Scalar>, FlatData> = HashMap::new();
    let mut add_flat = |rows: Vec<Vec<Scalar>>, want_rank: usize| {
        let (rank, canon) = rref_rows(rows);
        if rank != want_rank {
            return;
        }
        flats.entry(flat_key(&canon)).or_insert_with(|| {
            let basis = kernel_of_forms(&canon);
            FlatData {
                forms: canon,
                basis,
            }
        });
    };
    for h in &hyper {
        add_flat(vec![h.clone()], 1);
    }
    for i in 0..hyper.len() {
        for j in i + 1..hyper.len() {
            add_flat(vec![hyper[i].clone(), hyper[j].clone()], 2);
        }
    }
    for i in 0..hyper.len() {
        for j in i + 1..hyper.len() {
            for k in j + 1..hyper.len() {
                add_flat(
                    vec![hyper[i].clone(), hyper[j].clone(), hyper[k].clone()],
                    3,
                );
            }
        }
    }

    // Group by (codimension, number of hyperplanes through the flat).
    let mut classes: HashMap<(usize, usize), Vec<FlatData>> = HashMap::new();
    for fd in flats.into_values() {
        let codim = fd.forms.len();
        let through = hyper
            .iter()
            .filter(|h| form_vanishes_on(h, &fd.basis))
            .count();
        classes.entry((codim, through)).or_default().push(fd);
    }

    let mut out: Vec<FlatClass> = classes
        .into_iter()
        .map(|((codim, through), flats)| {
            let orbit_size = flat_orbit_size(&flats[0].forms, &inv_gens);
            let pointwise_stabilizer_order = pointwise_stabilizer_order(group, &flats[0].basis);
            FlatClass {
                codim,
                through,
                flats,
                orbit_size,
                pointwise_stabilizer_order,
            }
        })
        .collect();
    out.sort_by_key(|c| (c.codim, c.through));
    out
});
