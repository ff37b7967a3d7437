//! Degenerations of the nine-variable surface along the strata where some of
//! the parameters `c1..c4` vanish or collide.  The strata are numbered the
//! way the check identifiers name them: stratum 2 is the hyperplane `c4 = 0`
//! (elliptic ruled components), stratum 3 is the flat `c3 = c4 = 0` (nine
//! quadric-surface pieces and a 4-regular intersection graph), stratum 4 is
//! `c2 + c3 = c4 = 0` (a product of a plane cubic with a plane), and stratum
//! 5 is its `c1 -> 0` limit (the cubic degenerates to a triangle).

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{czctx, zctx};
use crate::heis;
use crate::ideal::{hilbert_by_propagation, restrict_to_subspace, CompiledPoly};
use crate::modp;
use crate::poly::{Ctx, Mono, MultiPoly, PolyError, VarContext};
use crate::scalar::{Field, Scalar};

/// Combined-context slot of the coordinate `z_i` (one-based label).
fn zc(i: usize) -> usize {
    3 + i
}

/// Single monomial with integer coefficient in the combined context, with
/// variables given as (slot, exponent) pairs.
fn t(ctx: &Ctx, field: Field, coef: i64, vars: &[(usize, u16)]) -> MultiPoly {
    MultiPoly::term(ctx, field, coef, vars)
}

/// Substitution map sending the listed raw variable indices to zero and
/// fixing every other variable of the context.
pub fn vanish_map(ctx: &Ctx, field: Field, idxs: &[usize]) -> HashMap<usize, MultiPoly> {
    let dead: HashSet<usize> = idxs.iter().copied().collect();
    (0..ctx.len())
        .map(|i| {
            let img = if dead.contains(&i) {
                MultiPoly::zero(ctx, field.clone())
            } else {
                MultiPoly::var(ctx, field.clone(), i)
            };
            (i, img)
        })
        .collect()
}

/// The cubic `lambda (x^3 + y^3 + z^3) + mu xyz` in the three context
/// variables listed in `coords` (raw indices).
pub fn hesse_cubic(ctx: &Ctx, coords: [usize; 3], lambda: &MultiPoly, mu: &MultiPoly) -> MultiPoly {
    let field = lambda.field();
    let cubes = coords
        .iter()
        .map(|&v| t(ctx, field.clone(), 1, &[(v, 3)]))
        .fold(MultiPoly::zero(ctx, field.clone()), |a, b| &a + &b);
    let triple = t(
        ctx,
        field,
        1,
        &[(coords[0], 1), (coords[1], 1), (coords[2], 1)],
    );
    &(lambda * &cubes) + &(mu * &triple)
}

/// Splits a combined-context polynomial into coordinate-monomial buckets:
/// the key is the exponent pattern on the variables from `n_params` onward,
/// the value collects the parameter-part terms (still in the full context).
fn coefficient_split(f: &MultiPoly, n_params: usize) -> BTreeMap<Vec<u16>, MultiPoly> {
    let mut out: BTreeMap<Vec<u16>, MultiPoly> = BTreeMap::new();
    for (m, c) in f.terms() {
        let zpart = m.0[n_params..].to_vec();
        let mut ce = m.0.clone();
        for e in ce.iter_mut().skip(n_params) {
            *e = 0;
        }
        out.entry(zpart)
            .or_insert_with(|| MultiPoly::zero(f.ctx(), f.field()))
            .add_term(Mono(ce), c.clone());
    }
    out
}

/// Whether `f` is a parameter-polynomial multiple of `g` (including zero),
/// reading both as polynomials in the coordinates with coefficients in the
/// first `n_params` variables.  Cross-multiplies coefficient pairs, so the
/// test involves no division.
pub fn proportional_over_parameters(f: &MultiPoly, g: &MultiPoly, n_params: usize) -> bool {
    let fa = coefficient_split(f, n_params);
    let ga = coefficient_split(g, n_params);
    let mut keys: Vec<Vec<u16>> = fa.keys().chain(ga.keys()).cloned().collect();
    keys.sort_unstable();
    keys.dedup();
    let zero = MultiPoly::zero(f.ctx(), f.field());
    let at = |m: &BTreeMap<Vec<u16>, MultiPoly>, k: &Vec<u16>| m.get(k).unwrap_or(&zero).clone();
    for i in 0..keys.len() {
        for j in (i + 1)..keys.len() {
            let lhs = &at(&fa, &keys[i]) * &at(&ga, &keys[j]);
            let rhs = &at(&fa, &keys[j]) * &at(&ga, &keys[i]);
            if lhs != rhs {
                return false;
            }
        }
    }
    // f must not involve coordinate monomials outside g's support unless the
    // cross products above already force them to vanish against everything;
    // with g nonzero this is covered, with g == 0 only f == 0 passes.
    if g.is_zero() {
        return f.is_zero();
    }
    true
}

/// Hilbert values of a seeded random linear slice: the generators are
/// restricted to `k` fresh variables and the graded quotient dimensions are
/// propagated up to `d_max`.
pub fn sliced_hilbert(
    gens: &[MultiPoly],
    p: u64,
    k: usize,
    seed: u64,
    d_max: usize,
) -> Result<Vec<u64>, PolyError> {
    let n = gens.first().map(|f| f.ctx().len()).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m: Vec<Vec<u64>> = (0..n)
        .map(|_| (0..k).map(|_| rng.gen_range(0..p)).collect())
        .collect();
    let names: Vec<String> = (0..k).map(|i| format!("y{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let small = VarContext::new(&refs);
    let restricted: Vec<MultiPoly> = restrict_to_subspace(gens, &small, &m, p)?
        .into_iter()
        .filter(|f| !f.is_zero())
        .collect();
    hilbert_by_propagation(p, &small, &restricted, d_max)
}

// ---------------------------------------------------------------------------
// Stratum 2: c4 = 0.

/// Two parameter polynomials whose nonvanishing keeps a point of the
/// hyperplane `c4 = 0` away from the deeper strata: the first is
/// `c1c2c3((c1^3+c2^3-c3^3)^3 + (3c1c2c3)^3)`, the second
/// `(c1^3-c2^3)(c2^3+c3^3)(c1^3+c3^3)`.
pub fn family2_avoidance(ctx: &Ctx, field: Field) -> (MultiPoly, MultiPoly) {
    let c = |k: usize| MultiPoly::var(ctx, field.clone(), k - 1);
    let cube = |k: usize| t(ctx, field.clone(), 1, &[(k - 1, 3)]);
    let lambda = &(&c(1) * &c(2)) * &c(3);
    let mu = &(&cube(1) + &cube(2)) - &cube(3);
    let first = &lambda * &(&mu.pow(3) + &t(ctx, field.clone(), 27, &[(0, 3), (1, 3), (2, 3)]));
    let second = &(&(&cube(1) - &cube(2)) * &(&cube(2) + &cube(3))) * &(&cube(1) + &cube(3));
    (first, second)
}

/// One-based labels of the coordinates that vanish on each of the three
/// surface components at `c4 = 0`.
pub fn family2_component_zeros() -> [[usize; 3]; 3] {
    [[1, 6, 8], [3, 5, 7], [2, 4, 9]]
}

/// One-based zero labels of the three planes that the singular-locus ideal
/// picks up beyond the surface at `c4 = 0`.  Each is the span of the common
/// zeros of two of the components.
pub fn family2_planes() -> [[usize; 6]; 3] {
    [
        [1, 2, 4, 6, 8, 9],
        [1, 3, 5, 6, 7, 8],
        [2, 3, 4, 5, 7, 9],
    ]
}

/// Printed generators of the first component at `c4 = 0`: three coordinates,
/// three quadrics, and two cubics, in the combined context.
pub fn family2_x1_generators(ctx: &Ctx, field: Field) -> Vec<MultiPoly> {
    let f = &field;
    // Parameter coefficients shared by the three quadrics.
    let a = &t(ctx, f.clone(), 1, &[(0, 1), (1, 3)]) + &t(ctx, f.clone(), 1, &[(0, 1), (2, 3)]);
    let b = &t(ctx, f.clone(), 1, &[(1, 1), (0, 3)]) + &t(ctx, f.clone(), 1, &[(1, 1), (2, 3)]);
    let c = &t(ctx, f.clone(), 1, &[(2, 1), (0, 3)]) - &t(ctx, f.clone(), 1, &[(2, 1), (1, 3)]);
    let z = |i: usize| MultiPoly::var(ctx, f.clone(), zc(i));
    let zz = |i: usize, j: usize| &z(i) * &z(j);
    let quad = |x: MultiPoly, y: MultiPoly, w: MultiPoly| &(&(&a * &x) - &(&b * &y)) - &(&c * &w);
    let q1 = quad(zz(4, 5), zz(3, 9), zz(2, 7));
    let q2 = quad(zz(7, 9), zz(2, 5), zz(3, 4));
    let q3 = quad(zz(2, 3), zz(4, 7), zz(5, 9));
    let lambda = t(ctx, f.clone(), 1, &[(0, 1), (1, 1), (2, 1)]);
    let mu = &(&t(ctx, f.clone(), 1, &[(0, 3)]) + &t(ctx, f.clone(), 1, &[(1, 3)]))
        - &t(ctx, f.clone(), 1, &[(2, 3)]);
    let u1 = hesse_cubic(ctx, [zc(3), zc(5), zc(7)], &lambda, &mu);
    let u2 = hesse_cubic(ctx, [zc(2), zc(4), zc(9)], &lambda, &mu);
    vec![z(1), z(6), z(8), q1, q2, q3, u1, u2]
}

// ---------------------------------------------------------------------------
// Stratum 3: c3 = c4 = 0.

/// The three printed pieces of the first component at `c3 = c4 = 0`: each is
/// (one-based zero labels, quadric in the remaining four coordinates).
pub fn family3_x1_pieces(ctx: &Ctx, field: Field) -> Vec<(Vec<usize>, MultiPoly)> {
    let f = field;
    let q = |i: usize, j: usize, k: usize, l: usize| {
        &t(ctx, f.clone(), 1, &[(1, 2), (zc(i), 1), (zc(j), 1)])
            - &t(ctx, f.clone(), 1, &[(0, 2), (zc(k), 1), (zc(l), 1)])
    };
    vec![
        (vec![1, 2, 6, 7, 8], q(4, 5, 3, 9)),
        (vec![1, 5, 6, 8, 9], q(2, 3, 4, 7)),
        (vec![1, 3, 4, 6, 8], q(7, 9, 2, 5)),
    ]
}

/// The three quadrics cutting the span of the union of the first component's
/// pieces at `c3 = c4 = 0`.
pub fn family3_union_quadrics(ctx: &Ctx, field: Field) -> Vec<MultiPoly> {
    let f = field;
    let q = |i: usize, j: usize, k: usize, l: usize| {
        &t(ctx, f.clone(), 1, &[(0, 2), (zc(i), 1), (zc(j), 1)])
            - &t(ctx, f.clone(), 1, &[(1, 2), (zc(k), 1), (zc(l), 1)])
    };
    vec![q(3, 9, 4, 5), q(2, 5, 7, 9), q(4, 7, 2, 3)]
}

/// One-based zero labels of the six planes the singular-locus ideal picks up
/// beyond the surface at `c3 = c4 = 0`.
pub fn family3_planes() -> [[usize; 6]; 6] {
    [
        [1, 2, 4, 6, 8, 9],
        [1, 2, 5, 6, 7, 9],
        [1, 3, 4, 5, 8, 9],
        [1, 3, 5, 6, 7, 8],
        [2, 3, 4, 5, 7, 9],
        [2, 3, 4, 6, 7, 8],
    ]
}

/// Scales a nonzero polynomial so its first stored term has coefficient one.
fn monic(q: &MultiPoly) -> MultiPoly {
    match q.terms().next() {
        Some((_, c)) => q.scale(&c.inv().expect("nonzero leading coefficient")),
        None => q.clone(),
    }
}

/// All pieces of the surface at the parameter point `(1, 2, 0, 0)` over
/// `F_p`: the orbit of the printed pieces under the order-81 monomial group,
/// as (sorted one-based zero labels, monic quadric) pairs in the coordinate
/// context, sorted for reproducibility.
pub fn family3_pieces_mod(p: u64) -> Result<Vec<(Vec<usize>, MultiPoly)>, PolyError> {
    let field = Field::Fp(p);
    let cz = czctx();
    let z9 = zctx();
    let cs: Vec<Scalar> = [1u64, 2, 0, 0]
        .iter()
        .map(|&v| Scalar::fp(p, v))
        .collect::<Result<_, _>>()?;
    let ops = heis::heisenberg9_ops(field.clone())?;
    let mut frontier: Vec<(Vec<usize>, MultiPoly)> = Vec::new();
    for (zeros, q) in family3_x1_pieces(&cz, Field::Rat) {
        let qn = crate::abelian::specialize_parameters(&q, &z9, field.clone(), &cs)?;
        frontier.push((zeros, monic(&qn)));
    }
    let mut seen: HashSet<(Vec<usize>, String)> = HashSet::new();
    let mut out: Vec<(Vec<usize>, MultiPoly)> = Vec::new();
    while let Some((zeros, q)) = frontier.pop() {
        if !seen.insert((zeros.clone(), format!("{q}"))) {
            continue;
        }
        for op in &ops {
            let mut zimg: Vec<usize> = zeros.iter().map(|&a| op.perm()[a - 1] + 1).collect();
            zimg.sort_unstable();
            let qimg = monic(&op.apply_to_poly(&q));
            frontier.push((zimg, qimg));
        }
        out.push((zeros, q));
    }
    out.sort_by(|a, b| (&a.0, format!("{}", a.1)).cmp(&(&b.0, format!("{}", b.1))));
    Ok(out)
}

/// Classifies the intersection of two coordinate-framed quadric surfaces
/// over `F_p` by brute force: returns (number of common projective points,
/// rank of their coordinate span).  A full line gives `(p + 1, 2)`, a single
/// point `(1, 1)`.
pub fn intersection_profile(
    a: &(Vec<usize>, MultiPoly),
    b: &(Vec<usize>, MultiPoly),
    p: u64,
) -> (usize, usize) {
    let dead: HashSet<usize> = a.0.iter().chain(b.0.iter()).copied().collect();
    let free: Vec<usize> = (1..=9).filter(|i| !dead.contains(i)).collect();
    if free.is_empty() {
        return (0, 0);
    }
    let qa = CompiledPoly::compile(&a.1, p);
    let qb = CompiledPoly::compile(&b.1, p);
    let mut pts: Vec<Vec<u64>> = Vec::new();
    modp::for_each_projective_point(p, free.len() - 1, |coords| {
        let mut full = vec![0u64; 9];
        for (slot, &v) in free.iter().zip(coords) {
            full[slot - 1] = v;
        }
        if qa.eval(&full) == 0 && qb.eval(&full) == 0 {
            pts.push(full);
        }
    });
    let count = pts.len();
    (count, modp::fp_row_rank(pts, p))
}

/// Number of vertex permutations preserving the adjacency matrix.
pub fn permutation_symmetries(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    fn extend(adj: &[Vec<bool>], perm: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
        let i = perm.len();
        if i == adj.len() {
            *count += 1;
            return;
        }
        for img in 0..adj.len() {
            if used[img] {
                continue;
            }
            if (0..i).all(|j| adj[i][j] == adj[img][perm[j]]) {
                perm.push(img);
                used[img] = true;
                extend(adj, perm, used, count);
                perm.pop();
                used[img] = false;
            }
        }
    }
    let mut count = 0;
    extend(adj, &mut Vec::new(), &mut vec![false; n], &mut count);
    count
}

// ---------------------------------------------------------------------------
// Strata 4 and 5: c2 + c3 = c4 = 0, then c1 -> 0.

/// Substitution on the combined context realizing the stratum: `c3 -> -c2`,
/// `c4 -> 0`, all other variables fixed.
pub fn family4_parameter_map(ctx: &Ctx, field: Field) -> HashMap<usize, MultiPoly> {
    let mut map = vanish_map(ctx, field.clone(), &[3]);
    map.insert(2, MultiPoly::var(ctx, field, 1).neg());
    map
}

/// One-based coordinate labels arranged so that the surface quadrics at the
/// stratum become the 2x2 minors of this 3x3 grid.
pub fn family4_grid() -> [[usize; 3]; 3] {
    [[1, 2, 3], [6, 4, 5], [8, 9, 7]]
}

/// The nine quadrics `c2(c1^3 - c2^3)` times the 2x2 minors of the grid, in
/// row-pair/column-pair lexicographic order.
pub fn family4_scaled_minors(ctx: &Ctx, field: Field) -> Vec<MultiPoly> {
    let g = family4_grid();
    let scale = &t(ctx, field.clone(), 1, &[(1, 1), (0, 3)]) - &t(ctx, field.clone(), 1, &[(1, 4)]);
    let mut out = Vec::new();
    for r1 in 0..3 {
        for r2 in (r1 + 1)..3 {
            for s1 in 0..3 {
                for s2 in (s1 + 1)..3 {
                    let m = &t(
                        ctx,
                        field.clone(),
                        1,
                        &[(zc(g[r1][s1]), 1), (zc(g[r2][s2]), 1)],
                    ) - &t(
                        ctx,
                        field.clone(),
                        1,
                        &[(zc(g[r1][s2]), 1), (zc(g[r2][s1]), 1)],
                    );
                    out.push(&scale * &m);
                }
            }
        }
    }
    out
}

/// The ten printed cubics of the product locus at the stratum.  Each has the
/// form `c1c2^2 (m1 + m2 + m3) - (c1^3 + 2c2^3) m4` for coordinate monomials
/// `m_i`.
pub fn family4_cubics(ctx: &Ctx, field: Field) -> Vec<MultiPoly> {
    let f = &field;
    let head = |vars: &[(usize, u16)]| {
        let mut full = vec![(0usize, 1u16), (1, 2)];
        full.extend(vars.iter().map(|&(i, e)| (zc(i), e)));
        t(ctx, f.clone(), 1, &full)
    };
    let tail = |vars: &[(usize, u16)]| {
        let zvars: Vec<(usize, u16)> = vars.iter().map(|&(i, e)| (zc(i), e)).collect();
        let a = {
            let mut v = vec![(0usize, 3u16)];
            v.extend(&zvars);
            t(ctx, f.clone(), 1, &v)
        };
        let b = {
            let mut v = vec![(1usize, 3u16)];
            v.extend(&zvars);
            t(ctx, f.clone(), 2, &v)
        };
        &a + &b
    };
    let build = |m1: &[(usize, u16)], m2: &[(usize, u16)], m3: &[(usize, u16)], m4: &[(usize, u16)]| {
        &(&(&head(m1) + &head(m2)) + &head(m3)) - &tail(m4)
    };
    vec![
        build(&[(1, 3)], &[(6, 3)], &[(8, 3)], &[(1, 1), (6, 1), (8, 1)]),
        build(&[(2, 3)], &[(4, 3)], &[(9, 3)], &[(2, 1), (4, 1), (9, 1)]),
        build(&[(3, 3)], &[(5, 3)], &[(7, 3)], &[(3, 1), (5, 1), (7, 1)]),
        build(
            &[(1, 1), (2, 1), (3, 1)],
            &[(4, 1), (5, 1), (6, 1)],
            &[(7, 1), (8, 1), (9, 1)],
            &[(3, 1), (6, 1), (9, 1)],
        ),
        build(
            &[(2, 1), (3, 2)],
            &[(4, 1), (5, 2)],
            &[(9, 1), (7, 2)],
            &[(3, 1), (5, 1), (9, 1)],
        ),
        build(
            &[(1, 1), (3, 2)],
            &[(6, 1), (5, 2)],
            &[(8, 1), (7, 2)],
            &[(3, 1), (5, 1), (8, 1)],
        ),
        build(
            &[(3, 1), (2, 2)],
            &[(5, 1), (4, 2)],
            &[(7, 1), (9, 2)],
            &[(2, 1), (5, 1), (9, 1)],
        ),
        build(
            &[(1, 1), (2, 2)],
            &[(6, 1), (4, 2)],
            &[(8, 1), (9, 2)],
            &[(2, 1), (6, 1), (9, 1)],
        ),
        build(
            &[(3, 1), (1, 2)],
            &[(5, 1), (6, 2)],
            &[(7, 1), (8, 2)],
            &[(3, 1), (6, 1), (8, 1)],
        ),
        build(
            &[(2, 1), (1, 2)],
            &[(4, 1), (6, 2)],
            &[(9, 1), (8, 2)],
            &[(1, 1), (6, 1), (9, 1)],
        ),
    ]
}

/// Context for the rank-one factorization: two parameters, then the row
/// space `v1..v3` and column space `w1..w3`.
pub fn segre_ctx() -> Ctx {
    VarContext::new(&["c1", "c2", "v1", "v2", "v3", "w1", "w2", "w3"])
}

/// Substitution from the combined context into the factorization context:
/// the stratum parameter map together with `z(grid[r][s]) -> v_r w_s`.
pub fn segre_map(target: &Ctx, field: Field) -> HashMap<usize, MultiPoly> {
    let mut map = HashMap::new();
    map.insert(0, MultiPoly::var(target, field.clone(), 0));
    map.insert(1, MultiPoly::var(target, field.clone(), 1));
    map.insert(2, MultiPoly::var(target, field.clone(), 1).neg());
    map.insert(3, MultiPoly::zero(target, field.clone()));
    let g = family4_grid();
    for (r, row) in g.iter().enumerate() {
        for (s, &label) in row.iter().enumerate() {
            map.insert(
                zc(label),
                t(target, field.clone(), 1, &[(2 + r, 1), (5 + s, 1)]),
            );
        }
    }
    map
}

/// The plane cubic carried by the row space in the factorization context:
/// `c1c2^2 (v1^3 + v2^3 + v3^3) - (c1^3 + 2c2^3) v1v2v3`.
pub fn family4_curve(target: &Ctx, field: Field) -> MultiPoly {
    let lambda = t(target, field.clone(), 1, &[(0, 1), (1, 2)]);
    let mu = &t(target, field.clone(), -1, &[(0, 3)]) + &t(target, field, -2, &[(1, 3)]);
    hesse_cubic(target, [2, 3, 4], &lambda, &mu)
}
