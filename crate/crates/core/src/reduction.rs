//! Linear Kähler reduction: compatible (metric, two-form, complex
//! structure) triples, orthogonal projections, and reduction by a
//! subspace of group directions — in one step or in stages.
//!
//! Everything is generic over the scalar backend: rational runs decide
//! equality exactly, float runs measure stability.  The compatibility
//! convention is `omega(x, y) = g(Jx, y)`, i.e. `Omega = J^T G`, with
//! `J^2 = -I`, `G` symmetric positive definite, `Omega` skew.

use rand::Rng;

use crate::error::{config, degenerate, Result};
use crate::linalg::Mat;
use crate::rational::{rat, Rat};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct CompatibleTriple<S: Scalar> {
    pub dim: usize,
    pub g: Mat<S>,
    pub omega: Mat<S>,
    pub j: Mat<S>,
}

impl<S: Scalar> CompatibleTriple<S> {
    /// Flat model on R^{2m}: identity metric, block rotation `J0`, and
    /// the induced two-form.
    pub fn standard(half: usize) -> Self {
        let dim = 2 * half;
        let g = Mat::<S>::identity(dim);
        let mut j = Mat::<S>::zeros(dim, dim);
        for k in 0..half {
            j[(k, half + k)] = -S::one();
            j[(half + k, k)] = S::one();
        }
        let omega = j.transpose().mul(&g);
        CompatibleTriple { dim, g, omega, j }
    }

    /// Structural consistency: shapes, symmetry, skewness, `J^2 = -I`,
    /// and the compatibility identity.  Positivity of `g` is checked
    /// through the leading principal minors.
    pub fn check(&self) -> Result<()> {
        let n = self.dim;
        for m in [&self.g, &self.omega, &self.j] {
            if m.rows != n || m.cols != n {
                return Err(config("triple matrices must all be dim x dim".to_string()));
            }
        }
        if self.g.sub(&self.g.transpose()).max_abs() > 1e-9 {
            return Err(degenerate("metric is not symmetric".to_string()));
        }
        if self.omega.add(&self.omega.transpose()).max_abs() > 1e-9 {
            return Err(degenerate("two-form is not skew".to_string()));
        }
        let j2 = self.j.mul(&self.j).add(&Mat::<S>::identity(n));
        if j2.max_abs() > 1e-9 {
            return Err(degenerate("complex structure does not square to -I".to_string()));
        }
        let compat = self.omega.sub(&self.j.transpose().mul(&self.g));
        if compat.max_abs() > 1e-9 {
            return Err(degenerate("two-form disagrees with g(J., .)".to_string()));
        }
        for k in 1..=n {
            let mut minor = Mat::<S>::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    minor[(i, j)] = self.g[(i, j)].clone();
                }
            }
            let det = minor.det();
            if det.is_negligible() || det.sign() <= 0 {
                return Err(degenerate("metric is not positive definite".to_string()));
            }
        }
        Ok(())
    }

    pub fn g_form(&self, x: &[S], y: &[S]) -> S {
        bilinear(&self.g, x, y)
    }

    pub fn omega_form(&self, x: &[S], y: &[S]) -> S {
        bilinear(&self.omega, x, y)
    }

    pub fn norm_sq(&self, x: &[S]) -> S {
        self.g_form(x, x)
    }
}

fn bilinear<S: Scalar>(form: &Mat<S>, x: &[S], y: &[S]) -> S {
    let fy = form.mul_vec(y);
    let mut acc = S::zero();
    for (a, b) in x.iter().zip(&fy) {
        acc = acc + a.clone() * b.clone();
    }
    acc
}

/// A maximal linearly independent subset of the given vectors, greedily
/// from the front (rank decisions through the scalar backend).
pub fn independent_subset<S: Scalar>(vectors: &[Vec<S>]) -> Vec<Vec<S>> {
    let mut kept: Vec<Vec<S>> = Vec::new();
    for v in vectors {
        let mut rows = kept.clone();
        rows.push(v.clone());
        let rank_with = Mat::from_rows(rows).rank();
        if rank_with > kept.len() {
            kept.push(v.clone());
        }
    }
    kept
}

/// g-orthogonal projection onto the span of `span` (dependent or empty
/// spanning sets allowed).
pub fn orthogonal_projection<S: Scalar>(g: &Mat<S>, span: &[Vec<S>]) -> Mat<S> {
    let n = g.rows;
    let basis = independent_subset(span);
    if basis.is_empty() {
        return Mat::<S>::zeros(n, n);
    }
    let b = columns_matrix(n, &basis);
    let bt_g = b.transpose().mul(g);
    let gram = bt_g.mul(&b);
    let inv = gram
        .inverse()
        .expect("independent basis has invertible Gram matrix");
    b.mul(&inv).mul(&bt_g)
}

/// Projection onto the g-orthocomplement of the span.
pub fn complement_projection<S: Scalar>(g: &Mat<S>, span: &[Vec<S>]) -> Mat<S> {
    Mat::<S>::identity(g.rows).sub(&orthogonal_projection(g, span))
}

fn columns_matrix<S: Scalar>(n: usize, cols: &[Vec<S>]) -> Mat<S> {
    let mut m = Mat::<S>::zeros(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        assert_eq!(c.len(), n);
        for i in 0..n {
            m[(i, j)] = c[i].clone();
        }
    }
    m
}

/// Deviation between projecting onto the orthocomplement of `V + W` in
/// one step and in two: first away from `W`, then away from the image
/// of `V`.  Zero is the exact statement of the two-stage projection
/// lemma.
pub fn projection_composition_gap<S: Scalar>(
    g: &Mat<S>,
    v_dirs: &[Vec<S>],
    w_dirs: &[Vec<S>],
) -> f64 {
    let mut combined: Vec<Vec<S>> = v_dirs.to_vec();
    combined.extend(w_dirs.iter().cloned());
    let p_full = complement_projection(g, &combined);
    let p1 = complement_projection(g, w_dirs);
    let moved_v: Vec<Vec<S>> = v_dirs.iter().map(|v| p1.mul_vec(v)).collect();
    let p2 = complement_projection(g, &moved_v);
    p_full.sub(&p2.mul(&p1)).max_abs()
}

/// Tangent directions of the zero level of the moment for the group
/// directions `w`: the g-orthocomplement of `J W`.
pub fn moment_level<S: Scalar>(triple: &CompatibleTriple<S>, group: &[Vec<S>]) -> Vec<Vec<S>> {
    let jw: Vec<Vec<S>> = group.iter().map(|w| triple.j.mul_vec(w)).collect();
    let basis = independent_subset(&jw);
    if basis.is_empty() {
        return (0..triple.dim)
            .map(|i| {
                let mut e = vec![S::zero(); triple.dim];
                e[i] = S::one();
                e
            })
            .collect();
    }
    // rows (G b)^T annihilate the complement
    let rows: Vec<Vec<S>> = basis.iter().map(|b| triple.g.mul_vec(b)).collect();
    Mat::from_rows(rows).nullspace()
}

/// The reduced space: an ambient basis of the horizontal subspace with
/// the three structures restricted to it.
#[derive(Clone, Debug)]
pub struct ReducedSpace<S: Scalar> {
    pub basis: Vec<Vec<S>>,
    pub g: Mat<S>,
    pub omega: Mat<S>,
    pub j: Mat<S>,
}

impl<S: Scalar> ReducedSpace<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Ambient vector of reduced coordinates.
    pub fn ambient(&self, coords: &[S]) -> Vec<S> {
        assert_eq!(coords.len(), self.basis.len());
        let n = self.basis.first().map_or(0, Vec::len);
        let mut out = vec![S::zero(); n];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (o, bi) in out.iter_mut().zip(b) {
                *o = o.clone() + c.clone() * bi.clone();
            }
        }
        out
    }

    pub fn triple(&self) -> CompatibleTriple<S> {
        CompatibleTriple {
            dim: self.basis.len(),
            g: self.g.clone(),
            omega: self.omega.clone(),
            j: self.j.clone(),
        }
    }
}

/// Reduction at a point: intersect the level directions with the
/// g-orthocomplement of the group directions, then restrict the triple.
/// Errors if the complex structure does not preserve the intersection
/// (the level was not compatible with the group action).
pub fn reduce<S: Scalar>(
    triple: &CompatibleTriple<S>,
    group: &[Vec<S>],
    level: &[Vec<S>],
) -> Result<ReducedSpace<S>> {
    let n = triple.dim;
    let level_basis = independent_subset(level);
    let group_basis = independent_subset(group);
    // v = L c with (B^T G L) c = 0
    let basis = if level_basis.is_empty() {
        Vec::new()
    } else if group_basis.is_empty() {
        level_basis
    } else {
        let l = columns_matrix(n, &level_basis);
        let b = columns_matrix(n, &group_basis);
        let constraints = b.transpose().mul(&triple.g).mul(&l);
        let null = constraints.nullspace();
        null.iter().map(|c| l.mul_vec(c)).collect()
    };
    let q = columns_matrix(n, &basis);
    let g_q = q.transpose().mul(&triple.g).mul(&q);
    let omega_q = q.transpose().mul(&triple.omega).mul(&q);
    // J on the basis must stay inside the span
    let m = basis.len();
    let mut j_q = Mat::<S>::zeros(m, m);
    for (i, b) in basis.iter().enumerate() {
        let jb = triple.j.mul_vec(b);
        match q.solve(&jb) {
            Some(coords) => {
                for (k, c) in coords.iter().enumerate() {
                    j_q[(k, i)] = c.clone();
                }
            }
            None => {
                return Err(degenerate(
                    "complex structure leaves the reduced space; level and group are incompatible"
                        .to_string(),
                ))
            }
        }
    }
    Ok(ReducedSpace {
        basis,
        g: g_q,
        omega: omega_q,
        j: j_q,
    })
}

/// Reduction by the whole group versus reduction in two stages.  The
/// staged route pushes the second group through the first reduction and
/// reduces again; the report compares the horizontal subspaces and the
/// projections of probe vectors.
#[derive(Clone, Debug)]
pub struct StagesReport<S: Scalar> {
    pub dim_one_shot: usize,
    pub dim_staged: usize,
    pub span_match: bool,
    /// max over probes of the entry gap between the two projections
    pub probe_gap: f64,
    /// squared norms of each probe's horizontal part along both routes
    pub probe_norms: Vec<(S, S)>,
}

pub fn reduce_in_stages_report<S: Scalar>(
    triple: &CompatibleTriple<S>,
    first: &[Vec<S>],
    second: &[Vec<S>],
    probes: &[Vec<S>],
) -> Result<StagesReport<S>> {
    let mut whole: Vec<Vec<S>> = first.to_vec();
    whole.extend(second.iter().cloned());
    let level_whole = moment_level(triple, &whole);
    let one_shot = reduce(triple, &whole, &level_whole)?;

    let level1 = moment_level(triple, first);
    let stage1 = reduce(triple, first, &level1)?;
    // push the second group into stage-1 coordinates through the
    // g-orthogonal projection onto the stage-1 subspace
    let q1 = columns_matrix(triple.dim, &stage1.basis);
    let proj1 = orthogonal_projection(&triple.g, &stage1.basis);
    let second_inside: Vec<Vec<S>> = second
        .iter()
        .map(|w| {
            let moved = proj1.mul_vec(w);
            q1.solve(&moved).expect("projection lands in the subspace")
        })
        .collect();
    let stage1_triple = stage1.triple();
    let level2 = moment_level(&stage1_triple, &second_inside);
    let stage2 = reduce(&stage1_triple, &second_inside, &level2)?;
    // ambient basis of the staged result
    let staged_basis: Vec<Vec<S>> = stage2.basis.iter().map(|c| stage1.ambient(c)).collect();

    // spans agree iff stacking them adds no rank
    let rank_one = Mat::from_rows(one_shot.basis.clone()).rank();
    let rank_staged = Mat::from_rows(staged_basis.clone()).rank();
    let mut stacked = one_shot.basis.clone();
    stacked.extend(staged_basis.iter().cloned());
    let rank_union = Mat::from_rows(stacked).rank();
    let span_match = rank_one == rank_staged && rank_union == rank_one;

    let p_one = orthogonal_projection(&triple.g, &one_shot.basis);
    let p_staged = orthogonal_projection(&triple.g, &staged_basis);
    let mut probe_gap: f64 = 0.0;
    let mut probe_norms = Vec::with_capacity(probes.len());
    for v in probes {
        let a = p_one.mul_vec(v);
        let b = p_staged.mul_vec(v);
        let gap = a
            .iter()
            .zip(&b)
            .map(|(x, y)| (x.clone() - y.clone()).abs_f64())
            .fold(0.0_f64, f64::max);
        probe_gap = probe_gap.max(gap);
        probe_norms.push((triple.norm_sq(&a), triple.norm_sq(&b)));
    }
    Ok(StagesReport {
        dim_one_shot: one_shot.dim(),
        dim_staged: staged_basis.len(),
        span_match,
        probe_gap,
        probe_norms,
    })
}

/// Random exact compatible triple: conjugate the flat model by a random
/// invertible rational matrix.
pub fn random_triple<R: Rng>(half: usize, rng: &mut R) -> CompatibleTriple<Rat> {
    let dim = 2 * half;
    loop {
        let mut a = Mat::<Rat>::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                a[(i, j)] = rat(rng.gen_range(-2..=2), rng.gen_range(1..=2));
            }
        }
        if a.rank() < dim {
            continue;
        }
        let std = CompatibleTriple::<Rat>::standard(half);
        let a_inv = a.inverse().expect("full rank");
        let g = a.transpose().mul(&std.g).mul(&a);
        let omega = a.transpose().mul(&std.omega).mul(&a);
        let j = a_inv.mul(&std.j).mul(&a);
        return CompatibleTriple { dim, g, omega, j };
    }
}

/// Random rational vectors for group directions and probes.
pub fn random_vectors<R: Rng>(dim: usize, count: usize, rng: &mut R) -> Vec<Vec<Rat>> {
    (0..count)
        .map(|_| {
            (0..dim)
                .map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)))
                .collect()
        })
        .collect()
}

/// Entrywise float image of an exact triple.
pub fn triple_to_f64(t: &CompatibleTriple<Rat>) -> CompatibleTriple<f64> {
    let conv = |m: &Mat<Rat>| -> Mat<f64> {
        let mut out = Mat::<f64>::zeros(m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                out[(i, j)] = crate::rational::to_f64(&m[(i, j)]);
            }
        }
        out
    };
    CompatibleTriple {
        dim: t.dim,
        g: conv(&t.g),
        omega: conv(&t.omega),
        j: conv(&t.j),
    }
}

pub fn vectors_to_f64(vs: &[Vec<Rat>]) -> Vec<Vec<f64>> {
    vs.iter().map(|v| crate::rational::v_to_f64(v)).collect()
}
