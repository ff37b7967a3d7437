//! Elliptic normal quintics from skew matrices of linear forms in five
//! variables: the quartic Pfaffian equations, the three-row matrix of
//! quadratic monomials whose minors cut out the degree-15 modular surface,
//! that surface's thirty singular points and twenty-five disjoint lines, and
//! the cuspidal degeneration with its parametrization.

use std::collections::HashSet;

use crate::heis::{self, PairBasis, TensorAW2};
use crate::ideal::CompiledPoly;
use crate::mat::{projective_normalize, FieldMatrix, PolyMatrix};
use crate::modp;
use crate::poly::{Ctx, MultiPoly, PolyError, VarContext};
use crate::scalar::{Field, Scalar};

/// Context in the five coordinates `z1..z5`.
pub fn zctx() -> Ctx {
    VarContext::new(&["z1", "z2", "z3", "z4", "z5"])
}

/// Context in two matrix parameters followed by the five coordinates.
pub fn czctx() -> Ctx {
    VarContext::new(&["c1", "c2", "z1", "z2", "z3", "z4", "z5"])
}

/// Context in the two parameters of a projective line.
pub fn stctx() -> Ctx {
    VarContext::new(&["s", "t"])
}

/// The two basis elements of the fixed subspace of `A ⊗ ∧²B` under the
/// simultaneous Heisenberg action (with doubled diagonal weight on `B`).
pub fn cartan_pair(field: Field) -> (TensorAW2, TensorAW2) {
    let mut h1 = TensorAW2::zero(field.clone());
    let mut h2 = TensorAW2::zero(field);
    for i in 0..5 {
        h1.add_term(i, (i + 2) % 5, (i + 3) % 5, 1);
        h2.add_term(i, (i + 4) % 5, (i + 1) % 5, 1);
    }
    (h1, h2)
}

/// The skew matrix of the pencil `c1 h1 + c2 h2` with symbolic parameters:
/// entry `(j, k)` is `Σ_i coeff(a_i ⊗ b_j ∧ b_k) c_? z_i` in the combined
/// context returned by [`czctx`].
pub fn skew_matrix_from_cartan(ctx: &Ctx, field: Field) -> PolyMatrix {
    let (h1, h2) = cartan_pair(field.clone());
    let pairs = PairBasis::new(5);
    let mut m = PolyMatrix::zeros(ctx, field.clone(), 5, 5);
    for (h, cvar) in [(&h1, 0usize), (&h2, 1usize)] {
        for a in 0..5 {
            for (pi, &(j, k)) in pairs.pairs.iter().enumerate() {
                let coef = &h.as_vec()[a * pairs.len() + pi];
                if coef.is_zero() {
                    continue;
                }
                let t =
                    MultiPoly::term(ctx, field.clone(), 1, &[(cvar, 1), (2 + a, 1)]).scale(coef);
                m.set(j, k, m.at(j, k) + &t);
                m.set(k, j, m.at(k, j) - &t);
            }
        }
    }
    m
}

/// The same matrix as printed, entry by entry.
pub fn skew_matrix_printed(ctx: &Ctx, field: Field) -> Result<PolyMatrix, PolyError> {
    PolyMatrix::parse(
        ctx,
        field,
        &[
            &["0", "c1*z4", "c2*z2", "-c2*z5", "-c1*z3"],
            &["-c1*z4", "0", "c1*z5", "c2*z3", "-c2*z1"],
            &["-c2*z2", "-c1*z5", "0", "c1*z1", "c2*z4"],
            &["c2*z5", "-c2*z3", "-c1*z1", "0", "c1*z2"],
            &["c1*z3", "c2*z1", "-c2*z4", "-c1*z2", "0"],
        ],
    )
}

/// The five quadratic equations of the quintic curve:
/// `q_i = c1 c2 z_i² - c1² z_{i+1} z_{i+4} + c2² z_{i+2} z_{i+3}`.
pub fn curve_equations(ctx: &Ctx, field: Field) -> Vec<MultiPoly> {
    (0..5)
        .map(|i| {
            let z = |k: usize| 2 + (i + k) % 5;
            let t1 = MultiPoly::term(ctx, field.clone(), 1, &[(0, 1), (1, 1), (z(0), 2)]);
            let t2 = MultiPoly::term(ctx, field.clone(), -1, &[(0, 2), (z(1), 1), (z(4), 1)]);
            let t3 = MultiPoly::term(ctx, field.clone(), 1, &[(1, 2), (z(2), 1), (z(3), 1)]);
            &(&t1 + &t2) + &t3
        })
        .collect()
}

/// The 3x5 matrix of quadratic monomials whose maximal minors cut out the
/// modular surface; column `i` is `(z_i², z_{i+1} z_{i+4}, z_{i+2} z_{i+3})`.
///
/// `z_offset` locates the coordinate variables inside `ctx`, so the same
/// matrix can be built in a context with extra parameter variables.
pub fn monomial_matrix(ctx: &Ctx, field: Field, z_offset: usize) -> PolyMatrix {
    let z = |i: usize| z_offset + i % 5;
    let mut rows = Vec::with_capacity(3);
    for offs in [(0usize, 0usize), (1, 4), (2, 3)] {
        let row: Vec<MultiPoly> = (0..5)
            .map(|i| {
                if offs == (0, 0) {
                    MultiPoly::term(ctx, field.clone(), 1, &[(z(i), 2)])
                } else {
                    MultiPoly::term(ctx, field.clone(), 1, &[(z(i + offs.0), 1), (z(i + offs.1), 1)])
                }
            })
            .collect();
        rows.push(row);
    }
    PolyMatrix::from_rows(ctx, field, rows)
}

/// The ten maximal minors of the monomial matrix, each of degree six.
pub fn surface_minors(ctx: &Ctx, field: Field) -> Vec<MultiPoly> {
    monomial_matrix(ctx, field, 0)
        .all_minors(3)
        .into_iter()
        .map(|(_, _, m)| m)
        .collect()
}

/// The degree-4 relation vector attached to a pair of columns `i < j`
/// (zero-based): the cross product of column `j` with column `i`.
pub fn relation_vector(ctx: &Ctx, field: Field, i: usize, j: usize) -> [MultiPoly; 3] {
    let m = monomial_matrix(ctx, field, 0);
    let col = |k: usize| [m.at(0, k).clone(), m.at(1, k).clone(), m.at(2, k).clone()];
    let u = col(j);
    let v = col(i);
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

/// Numerator coefficients of the modular surface's Hilbert series over
/// `(1-T)³`.
pub const SURFACE_SERIES_NUMERATOR: [i64; 9] = [1, 2, 3, 4, 5, 6, -3, -2, -1];

/// The 5x2 matrix of cubics presenting the cokernel of the monomial matrix.
pub fn presentation_matrix(ctx: &Ctx, field: Field) -> Result<PolyMatrix, PolyError> {
    PolyMatrix::parse(
        ctx,
        field,
        &[
            &["-z2^2*z4 + z3*z5^2", "z2*z3^2 - z4^2*z5"],
            &["z1^2*z4 - z3^2*z5", "z3*z4^2 - z1*z5^2"],
            &["-z1*z4^2 + z2^2*z5", "-z1^2*z2 + z4*z5^2"],
            &["z1*z3^2 - z2*z5^2", "-z2^2*z3 + z1^2*z5"],
            &["-z1^2*z3 + z2*z4^2", "z1*z2^2 - z3^2*z4"],
        ],
    )
}

/// The nilpotent pencil member written as a sum of decomposable tensors.
pub fn nilpotent_tensor(field: Field) -> TensorAW2 {
    let mut v = TensorAW2::zero(field);
    for (i, j, k) in [
        (5, 1, 5),
        (2, 3, 4),
        (1, 1, 2),
        (3, 3, 5),
        (5, 2, 4),
        (4, 1, 3),
        (2, 2, 5),
        (4, 4, 5),
    ] {
        v.add_term(i - 1, j - 1, k - 1, 1);
    }
    v
}

/// The printed skew matrix of the nilpotent member.
pub fn nilpotent_matrix_printed(ctx: &Ctx, field: Field) -> Result<PolyMatrix, PolyError> {
    PolyMatrix::parse(
        ctx,
        field,
        &[
            &["0", "z1", "z4", "0", "z5"],
            &["-z1", "0", "0", "z5", "z2"],
            &["-z4", "0", "0", "z2", "z3"],
            &["0", "-z5", "-z2", "0", "z4"],
            &["-z5", "-z2", "-z3", "-z4", "0"],
        ],
    )
}

/// Generators of the cuspidal curve's ideal.
pub fn cusp_ideal(ctx: &Ctx, field: Field) -> Result<Vec<MultiPoly>, PolyError> {
    [
        "z1*z2 - z4*z5",
        "z1*z3 - z2*z4",
        "z1*z4 + z5^2",
        "z4^2 + z2*z5",
        "z2^2 - z3*z5",
    ]
    .iter()
    .map(|s| MultiPoly::parse(s, ctx, field.clone()))
    .collect()
}

/// Parametrization of the cuspidal curve over a field containing `i`:
/// `[i t⁵ : s³ t² : s⁵ : i s² t³ : s t⁴]` in the two line parameters.
pub fn cusp_parametrization(ctx: &Ctx, field: Field) -> Result<Vec<MultiPoly>, PolyError> {
    let i = heis::field_root_of_unity(&field, 4)?;
    Ok(vec![
        MultiPoly::term(ctx, field.clone(), 1, &[(1, 5)]).scale(&i),
        MultiPoly::term(ctx, field.clone(), 1, &[(0, 3), (1, 2)]),
        MultiPoly::term(ctx, field.clone(), 1, &[(0, 5)]),
        MultiPoly::term(ctx, field.clone(), 1, &[(0, 2), (1, 3)]).scale(&i),
        MultiPoly::term(ctx, field, 1, &[(0, 1), (1, 4)]),
    ])
}

/// Defining linear forms of the line `L(i, j)` (with `i` one-based mod 5 and
/// `j` a residue mod 5): `z_i`, `z_{i+2} + ζ^j z_{i+3}`, and
/// `ζ^{2j} z_{i+1} + z_{i+4}`, as coefficient vectors.
pub fn line_forms(field: Field, i: usize, j: usize) -> Result<Vec<Vec<Scalar>>, PolyError> {
    let zeta = heis::field_root_of_unity(&field, 5)?;
    let pos = |k: usize| (i - 1 + k) % 5;
    let mut f1 = vec![Scalar::zero(field.clone()); 5];
    f1[pos(0)] = Scalar::one(field.clone());
    let mut f2 = vec![Scalar::zero(field.clone()); 5];
    f2[pos(2)] = Scalar::one(field.clone());
    f2[pos(3)] = zeta.pow_i64(j as i64)?;
    let mut f3 = vec![Scalar::zero(field.clone()); 5];
    f3[pos(1)] = zeta.pow_i64(2 * j as i64)?;
    f3[pos(4)] = Scalar::one(field);
    Ok(vec![f1, f2, f3])
}

/// Parametrization of `L(i, j)` by the two line parameters: the coordinates
/// `(z_{i+1}, z_{i+4})` are `(s, -ζ^{2j} s)` and `(z_{i+2}, z_{i+3})` are
/// `(-ζ^j t, t)`.
pub fn line_parametrization(
    ctx: &Ctx,
    field: Field,
    i: usize,
    j: usize,
) -> Result<Vec<MultiPoly>, PolyError> {
    let zeta = heis::field_root_of_unity(&field, 5)?;
    let pos = |k: usize| (i - 1 + k) % 5;
    let mut out = vec![MultiPoly::zero(ctx, field.clone()); 5];
    out[pos(1)] = MultiPoly::var(ctx, field.clone(), 0);
    out[pos(4)] =
        MultiPoly::var(ctx, field.clone(), 0).scale(&zeta.pow_i64(2 * j as i64)?.neg());
    out[pos(3)] = MultiPoly::var(ctx, field.clone(), 1);
    out[pos(2)] = MultiPoly::var(ctx, field, 1).scale(&zeta.pow_i64(j as i64)?.neg());
    Ok(out)
}

/// The thirty points where the monomial matrix drops to rank one: the five
/// coordinate points together with the points `z_i = ζ^{a i + b i²}`.
pub fn surface_singular_points(field: Field) -> Result<Vec<Vec<Scalar>>, PolyError> {
    let zeta = heis::field_root_of_unity(&field, 5)?;
    let mut out = Vec::with_capacity(30);
    for i in 0..5 {
        let mut pt = vec![Scalar::zero(field.clone()); 5];
        pt[i] = Scalar::one(field.clone());
        out.push(pt);
    }
    for a in 0..5i64 {
        for b in 0..5i64 {
            let pt: Vec<Scalar> = (1..=5i64)
                .map(|i| zeta.pow_i64((a * i + b * i * i).rem_euclid(5)))
                .collect::<Result<_, _>>()?;
            out.push(projective_normalize(&pt));
        }
    }
    Ok(out)
}

/// All points of the projective four-space over `F_p` where every 2x2 minor
/// of the monomial matrix vanishes.
pub fn rank_one_locus_fp(p: u64) -> Result<Vec<Vec<u64>>, PolyError> {
    let ctx = zctx();
    let field = Field::Fp(p);
    let minors: Vec<CompiledPoly> = monomial_matrix(&ctx, field, 0)
        .all_minors(2)
        .into_iter()
        .map(|(_, _, m)| CompiledPoly::compile(&m, p))
        .collect();
    let mut out = Vec::new();
    modp::for_each_projective_point(p, 4, |pt| {
        if minors.iter().all(|m| m.eval(pt) == 0) {
            out.push(pt.to_vec());
        }
    });
    Ok(out)
}

/// All points over `F_p` where the ten cubic entries of the presentation
/// matrix vanish.
pub fn presentation_entries_locus_fp(p: u64) -> Result<Vec<Vec<u64>>, PolyError> {
    let ctx = zctx();
    let field = Field::Fp(p);
    let pres = presentation_matrix(&ctx, field)?;
    let cubics: Vec<CompiledPoly> = pres
        .entries()
        .map(|f| CompiledPoly::compile(f, p))
        .collect();
    let mut out = Vec::new();
    modp::for_each_projective_point(p, 4, |pt| {
        if cubics.iter().all(|m| m.eval(pt) == 0) {
            out.push(pt.to_vec());
        }
    });
    Ok(out)
}

/// Checks over `F_p` that the common zero locus of the invariant quintics is
/// exactly the union of the twenty-five lines.
///
/// The product of the coordinates is itself invariant, so every common zero
/// has a vanishing coordinate; the scan therefore runs over the five
/// coordinate hyperplanes.
pub fn lines_locus_check_fp(p: u64) -> Result<bool, PolyError> {
    let ctx = zctx();
    let field = Field::Fp(p);
    let quintics = heis::invariant_forms(
        &ctx,
        field.clone(),
        5,
        &[
            heis::shift5(field.clone()),
            heis::diag5(field.clone(), 1).map_err(PolyError::from)?,
        ],
    );
    assert_eq!(quintics.len(), 6);
    let compiled: Vec<CompiledPoly> = quintics
        .iter()
        .map(|f| CompiledPoly::compile(f, p))
        .collect();

    // Canonical points on the twenty-five lines.
    let mut on_lines: HashSet<Vec<u64>> = HashSet::new();
    for i in 1..=5 {
        for j in 0..5 {
            let forms = line_forms(field.clone(), i, j)?;
            // Parametrize the line as the kernel of its three forms.
            let kernel = FieldMatrix::from_rows(forms).kernel_basis();
            assert_eq!(kernel.len(), 2);
            let kv: Vec<Vec<u64>> = kernel
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|s| match s {
                            Scalar::Fp { v, .. } => *v,
                            _ => unreachable!(),
                        })
                        .collect()
                })
                .collect();
            modp::for_each_projective_point(p, 1, |st| {
                let pt: Vec<u64> = (0..5)
                    .map(|c| {
                        modp::add_m(
                            modp::mul_m(st[0], kv[0][c], p),
                            modp::mul_m(st[1], kv[1][c], p),
                            p,
                        )
                    })
                    .collect();
                on_lines.insert(canonical_fp(&pt, p));
            });
        }
    }

    // Every line point must kill all six quintics.
    for pt in &on_lines {
        if !compiled.iter().all(|f| f.eval(pt) == 0) {
            return Ok(false);
        }
    }

    // Scan the five coordinate hyperplanes for common zeros.
    let mut ok = true;
    for zero_var in 0..5 {
        modp::for_each_projective_point(p, 3, |rest| {
            if !ok {
                return;
            }
            let mut pt = Vec::with_capacity(5);
            let mut it = rest.iter();
            for c in 0..5 {
                if c == zero_var {
                    pt.push(0);
                } else {
                    pt.push(*it.next().unwrap());
                }
            }
            if compiled.iter().all(|f| f.eval(&pt) == 0)
                && !on_lines.contains(&canonical_fp(&pt, p))
            {
                ok = false;
            }
        });
    }
    Ok(ok)
}

/// Canonical projective representative over `F_p` (first nonzero entry one).
pub fn canonical_fp(pt: &[u64], p: u64) -> Vec<u64> {
    let lead = pt.iter().find(|&&x| x % p != 0).expect("nonzero point");
    let inv = modp::inv_m(lead % p, p).expect("invertible");
    pt.iter().map(|&x| modp::mul_m(x % p, inv, p)).collect()
}

/// Searches the curve attached to `(c1, c2)` over `F_p` for a point where the
/// Jacobian of its five quadrics has rank below three.
pub fn curve_singularity_witness(
    p: u64,
    c1: u64,
    c2: u64,
) -> Result<Option<Vec<u64>>, PolyError> {
    let ctx = czctx();
    let field = Field::Fp(p);
    let eqs = curve_equations(&ctx, field.clone());
    // Specialize the parameters, keeping polynomials in all seven variables
    // for compiled evaluation with a fixed prefix.
    let quadrics: Vec<CompiledPoly> = eqs.iter().map(|f| CompiledPoly::compile(f, p)).collect();
    let jacobian: Vec<Vec<CompiledPoly>> = eqs
        .iter()
        .map(|f| {
            (2..7)
                .map(|v| CompiledPoly::compile(&f.differentiate(v), p))
                .collect()
        })
        .collect();
    let mut witness = None;
    modp::for_each_projective_point(p, 4, |zpt| {
        if witness.is_some() {
            return;
        }
        let mut full = vec![c1, c2];
        full.extend_from_slice(zpt);
        if quadrics.iter().any(|q| q.eval(&full) != 0) {
            return;
        }
        let rows: Vec<Vec<u64>> = jacobian
            .iter()
            .map(|row| row.iter().map(|d| d.eval(&full)).collect())
            .collect();
        if modp::fp_row_rank(rows, p) < 3 {
            witness = Some(zpt.to_vec());
        }
    });
    Ok(witness)
}

/// Exact ideal membership for a homogeneous polynomial against homogeneous
/// generators in the same context, decided by solving one linear system over
/// the coefficient field.
pub fn exact_homogeneous_membership(f: &MultiPoly, gens: &[MultiPoly]) -> bool {
    let Some(target_degree) = f.homogeneous_degree() else {
        return false;
    };
    let ctx = f.ctx();
    let indexer = crate::ideal::DegreeIndexer::new(ctx.len(), target_degree);
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    for g in gens {
        let d = g.homogeneous_degree().expect("homogeneous generator");
        if d > target_degree {
            continue;
        }
        let shifts = crate::ideal::DegreeIndexer::new(ctx.len(), target_degree - d);
        for s in 0..shifts.len() {
            let shifted = g.mul_mono(shifts.mono(s as u32), &Scalar::one(f.field()));
            let mut col = vec![Scalar::zero(f.field()); indexer.len()];
            for (m, c) in shifted.terms() {
                col[indexer.index(m).unwrap() as usize] = c.clone();
            }
            columns.push(col);
        }
    }
    let rows = indexer.len();
    let a = FieldMatrix::from_fn(rows, columns.len(), f.field(), |i, j| columns[j][i].clone());
    let mut b = vec![Scalar::zero(f.field()); rows];
    for (m, c) in f.terms() {
        b[indexer.index(m).unwrap() as usize] = c.clone();
    }
    a.solve(&b).is_some()
}
