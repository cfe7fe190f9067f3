//! Exact convex polytopes over the rationals.
//!
//! A polytope is stored with both descriptions: canonical vertex list
//! (identity key) and canonical H-representation (affine-hull equations plus
//! facet inequalities with primitive integer data). Everything is exact; the
//! only floats are the `f64` casts callers make of returned squared
//! distances. Sizes are desk-scale (≤ ~16 points, ambient dimension ≤ 4), so
//! enumeration beats cleverness throughout.

use num_traits::{Signed, Zero};

use crate::combinat::subsets_k;
use crate::error::{config, Result};
use crate::linalg::Mat;
use crate::lp::convex_hull_membership;
use crate::rational::{primitive_scaled, vdot, vsub, Rat};

/// ⟨x, normal⟩ ≤ offset, normal primitive integer within the affine hull.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

/// ⟨x, normal⟩ = offset, normal primitive with positive leading entry.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    pub ambient: usize,
    /// Extreme points, sorted lexicographically — the canonical identity key.
    pub vertices: Vec<Vec<Rat>>,
    /// Base point and direction basis of the affine hull (echelon-canonical).
    pub aff_base: Vec<Rat>,
    pub aff_dirs: Vec<Vec<Rat>>,
    /// Affine-hull cutout: ⟨x, e⟩ = d for all points.
    pub equations: Vec<Hyperplane>,
    /// Facet inequalities, normals inside span(aff_dirs), sorted.
    pub facets: Vec<Halfspace>,
}

impl Polytope {
    pub fn from_points(ambient: usize, points: &[Vec<Rat>]) -> Result<Self> {
        if points.is_empty() {
            return Err(config("polytope needs at least one point"));
        }
        if points.iter().any(|p| p.len() != ambient) {
            return Err(config("point dimension mismatch"));
        }
        let mut pts: Vec<Vec<Rat>> = points.to_vec();
        pts.sort();
        pts.dedup();

        let vertices = extreme_points(&pts);
        let aff_base = vertices[0].clone();
        let diffs: Vec<Vec<Rat>> = vertices[1..].iter().map(|v| vsub(v, &aff_base)).collect();
        let aff_dirs = echelon_basis(ambient, &diffs);
        let equations = hull_equations(ambient, &aff_base, &aff_dirs);
        let facets = enumerate_facets(&vertices, &aff_base, &aff_dirs);
        Ok(Polytope { ambient, vertices, aff_base, aff_dirs, equations, facets })
    }

    /// Vertex enumeration of {x : equations, ⟨x,n⟩ ≤ c}; the region must be
    /// bounded or the result silently drops the unbounded directions, so
    /// callers always pass data already cut to a bounded region.
    pub fn from_h(
        ambient: usize,
        equations: &[Hyperplane],
        ineqs: &[Halfspace],
    ) -> Result<Option<Self>> {
        let verts = h_vertices(ambient, equations, ineqs);
        if verts.is_empty() {
            return Ok(None);
        }
        Ok(Some(Self::from_points(ambient, &verts)?))
    }

    pub fn dim(&self) -> usize {
        self.aff_dirs.len()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|e| vdot(x, &e.normal) == e.offset)
            && self.facets.iter().all(|f| vdot(x, &f.normal) <= f.offset)
    }

    /// Relative interior: on the affine hull, strictly inside every facet.
    pub fn relint_contains(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|e| vdot(x, &e.normal) == e.offset)
            && self.facets.iter().all(|f| vdot(x, &f.normal) < f.offset)
    }

    /// A canonical relative-interior point: the vertex average.
    pub fn relint_point(&self) -> Vec<Rat> {
        let n = Rat::from_integer((self.vertices.len() as i64).into());
        let mut acc = vec![Rat::zero(); self.ambient];
        for v in &self.vertices {
            for (a, x) in acc.iter_mut().zip(v) {
                *a = &*a + x;
            }
        }
        acc.into_iter().map(|a| a / &n).collect()
    }

    /// Exact squared Euclidean distance from x to the polytope, with the
    /// nearest point as witness. Enumerates affinely independent vertex
    /// subsets (the nearest point lies in some simplex of a triangulation
    /// and is the affine projection onto it).
    pub fn min_sq_dist(&self, x: &[Rat]) -> (Rat, Vec<Rat>) {
        let mut best: Option<(Rat, Vec<Rat>)> = None;
        let nv = self.vertices.len();
        for k in 1..=self.dim() + 1 {
            for subset in subsets_k(nv, k) {
                let Some(p) = project_onto_simplex(&self.vertices, &subset, x) else {
                    continue;
                };
                let d = vsub(x, &p);
                let sq = vdot(&d, &d);
                if best.as_ref().is_none_or(|(b, _)| sq < *b) {
                    best = Some((sq, p));
                }
            }
        }
        best.expect("nonempty polytope has a nearest point")
    }

    /// Exact squared distance from x to the relative boundary. For a
    /// lower-dimensional polytope every point is boundary, so a member gets 0.
    pub fn boundary_sq_dist(&self, x: &[Rat]) -> (Rat, Vec<Rat>) {
        if self.dim() == 0 {
            return (Rat::zero(), self.vertices[0].clone());
        }
        let mut best: Option<(Rat, Vec<Rat>)> = None;
        for f in &self.facets {
            let sub = self.facet_polytope(f);
            let (sq, p) = sub.min_sq_dist(x);
            if best.as_ref().is_none_or(|(b, _)| sq < *b) {
                best = Some((sq, p));
            }
        }
        best.expect("positive-dimensional polytope has facets")
    }

    /// Sub-polytope of the vertices lying on a facet hyperplane.
    pub fn facet_polytope(&self, f: &Halfspace) -> Polytope {
        let on: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .filter(|v| vdot(v, &f.normal) == f.offset)
            .cloned()
            .collect();
        Polytope::from_points(self.ambient, &on).expect("facet has vertices")
    }

    /// Intersection with extra halfspaces/equations, or None when empty.
    pub fn intersect(
        &self,
        extra_eqs: &[Hyperplane],
        extra_ineqs: &[Halfspace],
    ) -> Result<Option<Polytope>> {
        let mut eqs = self.equations.clone();
        eqs.extend_from_slice(extra_eqs);
        let mut ineqs = self.facets.clone();
        ineqs.extend_from_slice(extra_ineqs);
        Polytope::from_h(self.ambient, &eqs, &ineqs)
    }

    /// Identity as a point set (canonical vertex lists compared exactly).
    pub fn same_set(&self, other: &Polytope) -> bool {
        self.vertices == other.vertices
    }

    /// Coordinates of x in the affine-hull frame (base + Σ uᵢ dirᵢ); None if
    /// x is off the affine hull.
    pub fn affine_coords(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        if !self.equations.iter().all(|e| vdot(x, &e.normal) == e.offset) {
            return None;
        }
        if self.aff_dirs.is_empty() {
            return Some(Vec::new());
        }
        let d = Mat::from_rows(self.aff_dirs.clone());
        let rhs = d.mul_vec(&vsub(x, &self.aff_base)); // D(x−b); solve G·u = that
        let g = d.mul(&d.transpose());
        g.inverse().map(|gi| gi.mul_vec(&rhs))
    }

    /// Point of the affine hull with the given frame coordinates.
    pub fn from_affine_coords(&self, u: &[Rat]) -> Vec<Rat> {
        let mut x = self.aff_base.clone();
        for (c, dir) in u.iter().zip(&self.aff_dirs) {
            for (xi, di) in x.iter_mut().zip(dir) {
                *xi = &*xi + c * di;
            }
        }
        x
    }
}

/// A box [lo₁,hi₁]×…, as a polytope.
pub fn box_region(bounds: &[(Rat, Rat)]) -> Result<Polytope> {
    let d = bounds.len();
    for (lo, hi) in bounds {
        if lo > hi {
            return Err(config("box with lo > hi"));
        }
    }
    let mut corners = vec![Vec::with_capacity(d)];
    for (lo, hi) in bounds {
        let mut next = Vec::new();
        for c in corners {
            let mut a = c.clone();
            a.push(lo.clone());
            next.push(a);
            if lo != hi {
                let mut b = c;
                b.push(hi.clone());
                next.push(b);
            }
        }
        corners = next;
    }
    Polytope::from_points(d, &corners)
}

fn extreme_points(pts: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if pts.len() == 1 {
        return pts.to_vec();
    }
    let mut verts: Vec<Vec<Rat>> = pts
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            let others: Vec<Vec<Rat>> =
                pts.iter().enumerate().filter(|(j, _)| j != i).map(|(_, q)| q.clone()).collect();
            convex_hull_membership(&others, p).is_err()
        })
        .map(|(_, p)| p.clone())
        .collect();
    verts.sort();
    verts
}

/// Echelon-canonical basis of span(rows).
fn echelon_basis(ambient: usize, rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut mm = Mat::from_rows(rows.to_vec());
    let pivots = {
        // reuse Mat::nullspace machinery indirectly: run a manual echelon
        let mut piv = Vec::new();
        let mut r = 0;
        for c in 0..ambient {
            if r == mm.rows {
                break;
            }
            let hit = (r..mm.rows).find(|&i| !mm[(i, c)].is_zero());
            let Some(hit) = hit else { continue };
            for j in 0..ambient {
                let tmp = mm[(hit, j)].clone();
                mm[(hit, j)] = mm[(r, j)].clone();
                mm[(r, j)] = tmp;
            }
            let inv = Rat::from_integer(1.into()) / mm[(r, c)].clone();
            for j in 0..ambient {
                mm[(r, j)] = mm[(r, j)].clone() * inv.clone();
            }
            for i in 0..mm.rows {
                if i != r && !mm[(i, c)].is_zero() {
                    let f = mm[(i, c)].clone();
                    for j in 0..ambient {
                        let sub = &f * &mm[(r, j)];
                        mm[(i, j)] = &mm[(i, j)] - sub;
                    }
                }
            }
            piv.push(c);
            r += 1;
        }
        piv
    };
    pivots
        .iter()
        .enumerate()
        .map(|(r, _)| (0..ambient).map(|j| mm[(r, j)].clone()).collect())
        .collect()
}

fn hull_equations(ambient: usize, base: &[Rat], dirs: &[Vec<Rat>]) -> Vec<Hyperplane> {
    let normals: Vec<Vec<Rat>> = if dirs.is_empty() {
        (0..ambient)
            .map(|i| {
                let mut e = vec![Rat::zero(); ambient];
                e[i] = Rat::from_integer(1.into());
                e
            })
            .collect()
    } else {
        Mat::from_rows(dirs.to_vec()).nullspace()
    };
    // canonicalize the basis of the orthogonal complement
    let canon = echelon_basis(ambient, &normals);
    canon
        .into_iter()
        .map(|n| {
            let n = crate::rational::primitive_vector(&n);
            let off = vdot(base, &n);
            Hyperplane { normal: n, offset: off }
        })
        .collect()
}

fn enumerate_facets(vertices: &[Vec<Rat>], base: &[Rat], dirs: &[Vec<Rat>]) -> Vec<Halfspace> {
    let a = dirs.len();
    if a == 0 {
        return Vec::new();
    }
    let ambient = base.len();
    let d = Mat::from_rows(dirs.to_vec());
    let gram_inv = d.mul(&d.transpose()).inverse().expect("independent dirs");
    // affine coordinates of every vertex
    let coords: Vec<Vec<Rat>> = vertices
        .iter()
        .map(|v| gram_inv.mul_vec(&d.mul_vec(&vsub(v, base))))
        .collect();

    let mut facets: Vec<Halfspace> = Vec::new();
    for subset in subsets_k(vertices.len(), a) {
        // hyperplane within the hull through these vertices
        let rows: Vec<Vec<Rat>> =
            subset[1..].iter().map(|&i| vsub(&coords[i], &coords[subset[0]])).collect();
        let n_aff = if a == 1 {
            vec![vec![Rat::from_integer(1.into())]]
        } else {
            Mat::from_rows(rows).nullspace()
        };
        if n_aff.len() != 1 {
            continue; // affinely dependent subset or degenerate
        }
        // lift: N = Dᵀ G⁻¹ n_aff lies in span(dirs) with ⟨dirᵢ, N⟩ = n_affᵢ
        let c = gram_inv.mul_vec(&n_aff[0]);
        let mut normal = vec![Rat::zero(); ambient];
        for (ck, dir) in c.iter().zip(dirs) {
            for (nj, dj) in normal.iter_mut().zip(dir) {
                *nj = &*nj + ck * dj;
            }
        }
        let mut offset = vdot(&vertices[subset[0]], &normal);
        // orient inward ≤
        let mut pos = false;
        let mut neg = false;
        for v in vertices {
            let s = vdot(v, &normal) - &offset;
            if s.is_positive() {
                pos = true;
            } else if s.is_negative() {
                neg = true;
            }
        }
        if pos && neg {
            continue; // cuts through the hull: not a facet
        }
        if !pos && !neg {
            continue; // all vertices on it: spans the hull, not a facet
        }
        if pos {
            normal = normal.iter().map(|x| -x).collect();
            offset = -offset;
        }
        let mut scaled = primitive_scaled(&normal);
        // primitive_scaled preserves sign; recompute the offset to match
        let factor = (0..ambient)
            .find(|&j| !normal[j].is_zero())
            .map(|j| &scaled[j] / &normal[j])
            .expect("nonzero normal");
        offset = &offset * &factor;
        if factor.is_negative() {
            // cannot happen (sign-preserving), but keep the invariant obvious
            scaled = scaled.iter().map(|x| -x).collect();
            offset = -offset;
        }
        facets.push(Halfspace { normal: scaled, offset });
    }
    facets.sort();
    facets.dedup();
    facets
}

fn project_onto_simplex(vertices: &[Vec<Rat>], subset: &[usize], x: &[Rat]) -> Option<Vec<Rat>> {
    let q0 = &vertices[subset[0]];
    if subset.len() == 1 {
        return Some(q0.clone());
    }
    let t: Vec<Vec<Rat>> = subset[1..].iter().map(|&i| vsub(&vertices[i], q0)).collect();
    let tm = Mat::from_rows(t.clone());
    let g = tm.mul(&tm.transpose());
    let gi = g.inverse()?; // affinely dependent subset: skip
    let c = gi.mul_vec(&tm.mul_vec(&vsub(x, q0)));
    // barycentric feasibility: cᵢ ≥ 0 and Σc ≤ 1
    if c.iter().any(Signed::is_negative) {
        return None;
    }
    if c.iter().cloned().sum::<Rat>() > Rat::from_integer(1.into()) {
        return None;
    }
    let mut p = q0.clone();
    for (ck, tk) in c.iter().zip(&t) {
        for (pj, tj) in p.iter_mut().zip(tk) {
            *pj = &*pj + ck * tj;
        }
    }
    Some(p)
}

fn h_vertices(ambient: usize, equations: &[Hyperplane], ineqs: &[Halfspace]) -> Vec<Vec<Rat>> {
    let eq_rows: Vec<Vec<Rat>> = equations.iter().map(|e| e.normal.clone()).collect();
    let eq_rank = if eq_rows.is_empty() { 0 } else { Mat::from_rows(eq_rows).rank() };
    let need = ambient - eq_rank;
    let mut verts: Vec<Vec<Rat>> = Vec::new();
    for subset in subsets_k(ineqs.len(), need) {
        let mut rows: Vec<Vec<Rat>> = equations.iter().map(|e| e.normal.clone()).collect();
        let mut rhs: Vec<Rat> = equations.iter().map(|e| e.offset.clone()).collect();
        for &i in &subset {
            rows.push(ineqs[i].normal.clone());
            rhs.push(ineqs[i].offset.clone());
        }
        let m = Mat::from_rows(rows.clone());
        if m.rank() < ambient {
            continue;
        }
        let Some(x) = m.solve(&rhs) else { continue };
        if equations.iter().all(|e| vdot(&x, &e.normal) == e.offset)
            && ineqs.iter().all(|f| vdot(&x, &f.normal) <= f.offset)
        {
            verts.push(x);
        }
    }
    verts.sort();
    verts.dedup();
    verts
}
