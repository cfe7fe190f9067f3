//! Type A root systems in their standard ambient realization.
//!
//! `A_r` lives in `R^{r+1}` with the standard inner product; the simple
//! roots are `e_i - e_{i+1}`.  Keeping the ambient Gram matrix equal to the
//! identity makes every pairing an honest dot product, at the cost of the
//! weights living in the trace-zero hyperplane rather than spanning the
//! ambient space.

use std::collections::{btree_map::Entry, BTreeMap, BTreeSet, VecDeque};

use crate::error::{capability, config, domain, Result};
use crate::linalg::Mat;
use crate::rational::{rat_i, vadd, vdot, vscale, vsub, Rat};
use num_traits::{Signed, Zero};

/// Simple-series tag.  Only the A series is realized; the constructor
/// reports anything else as out of scope rather than silently mis-modeling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Series {
    A,
}

impl Series {
    pub fn parse(s: &str) -> Result<Series> {
        match s.trim() {
            "A" | "a" => Ok(Series::A),
            other => Err(capability(format!(
                "series {other:?} is not implemented (only A)"
            ))),
        }
    }

    pub fn letter(self) -> &'static str {
        "A"
    }
}

pub const MAX_RANK: usize = 4;

/// A root system with its ambient realization and cached derived data.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub series: Series,
    pub rank: usize,
    /// Dimension of the ambient Euclidean space (rank + 1 for A).
    pub ambient: usize,
    simple: Vec<Vec<Rat>>,
    positive: Vec<Vec<Rat>>,
    fundamental: Vec<Vec<Rat>>,
    weyl: Vec<Mat<Rat>>,
}

impl RootSystem {
    pub fn build(series: Series, rank: usize) -> Result<RootSystem> {
        if rank == 0 || rank > MAX_RANK {
            return Err(capability(format!(
                "rank {rank} out of supported range 1..={MAX_RANK}"
            )));
        }
        let ambient = rank + 1;
        let simple: Vec<Vec<Rat>> = (0..rank)
            .map(|i| {
                let mut v = vec![Rat::zero(); ambient];
                v[i] = rat_i(1);
                v[i + 1] = rat_i(-1);
                v
            })
            .collect();
        let positive = positive_roots_by_closure(&simple);
        let fundamental = solve_fundamental_weights(&simple);
        let weyl = weyl_closure(&simple, ambient);
        Ok(RootSystem {
            series,
            rank,
            ambient,
            simple,
            positive,
            fundamental,
            weyl,
        })
    }

    pub fn parse(series: &str, rank: usize) -> Result<RootSystem> {
        RootSystem::build(Series::parse(series)?, rank)
    }

    pub fn simple_roots(&self) -> &[Vec<Rat>] {
        &self.simple
    }

    /// Positive roots, sorted by height and then lexicographically.
    pub fn positive_roots(&self) -> &[Vec<Rat>] {
        &self.positive
    }

    pub fn fundamental_weights(&self) -> &[Vec<Rat>] {
        &self.fundamental
    }

    /// Ambient inner product (the Gram matrix is the identity).
    pub fn inner(&self, a: &[Rat], b: &[Rat]) -> Rat {
        vdot(a, b)
    }

    /// `2a / (a,a)` for a root `a`.
    pub fn coroot(&self, root: &[Rat]) -> Vec<Rat> {
        let nn = vdot(root, root);
        vscale(&(rat_i(2) / nn), root)
    }

    /// `<lam, a^vee>` — the coroot pairing.
    pub fn pair(&self, lam: &[Rat], root: &[Rat]) -> Rat {
        vdot(lam, &self.coroot(root))
    }

    /// `cartan()[i][j] = <alpha_j, alpha_i^vee>`.
    pub fn cartan(&self) -> Vec<Vec<Rat>> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.pair(&self.simple[j], &self.simple[i]))
                    .collect()
            })
            .collect()
    }

    /// Reflection in the hyperplane orthogonal to `root`.
    pub fn reflect(&self, v: &[Rat], root: &[Rat]) -> Vec<Rat> {
        let c = self.pair(v, root);
        vsub(v, &vscale(&c, root))
    }

    /// All Weyl group elements as ambient matrices (permutations for A).
    pub fn weyl_elements(&self) -> &[Mat<Rat>] {
        &self.weyl
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    /// Half the sum of the positive roots; equals the sum of the
    /// fundamental weights.
    pub fn rho(&self) -> Vec<Rat> {
        let mut acc = vec![Rat::zero(); self.ambient];
        for w in &self.fundamental {
            acc = vadd(&acc, w);
        }
        acc
    }

    /// `sum_i coeffs[i] * fw_i`.
    pub fn weight_from_coeffs(&self, coeffs: &[Rat]) -> Result<Vec<Rat>> {
        if coeffs.len() != self.rank {
            return Err(config(format!(
                "expected {} fundamental-weight coefficients, got {}",
                self.rank,
                coeffs.len()
            )));
        }
        let mut acc = vec![Rat::zero(); self.ambient];
        for (c, w) in coeffs.iter().zip(&self.fundamental) {
            acc = vadd(&acc, &vscale(c, w));
        }
        Ok(acc)
    }

    /// Coordinates of `lam` in the fundamental-weight basis:
    /// `<lam, alpha_i^vee>` for each simple root.
    pub fn fw_coefficients(&self, lam: &[Rat]) -> Vec<Rat> {
        self.simple.iter().map(|a| self.pair(lam, a)).collect()
    }

    pub fn is_dominant(&self, lam: &[Rat]) -> bool {
        self.fw_coefficients(lam).iter().all(|c| !c.is_negative())
    }

    /// Unique dominant representative of the Weyl orbit of `v`.
    pub fn dominant_representative(&self, v: &[Rat]) -> Vec<Rat> {
        let mut cur = v.to_vec();
        'outer: loop {
            for a in &self.simple {
                if self.pair(&cur, a).is_negative() {
                    cur = self.reflect(&cur, a);
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Unique antidominant representative (the image under the longest
    /// Weyl element when starting from a dominant vector).
    pub fn antidominant_representative(&self, v: &[Rat]) -> Vec<Rat> {
        let mut cur = v.to_vec();
        'outer: loop {
            for a in &self.simple {
                if self.pair(&cur, a).is_positive() {
                    cur = self.reflect(&cur, a);
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Full Weyl orbit of `v`, sorted lexicographically.
    pub fn weyl_orbit(&self, v: &[Rat]) -> Vec<Vec<Rat>> {
        let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(v.to_vec());
        queue.push_back(v.to_vec());
        while let Some(cur) = queue.pop_front() {
            for a in &self.simple {
                let nxt = self.reflect(&cur, a);
                if seen.insert(nxt.clone()) {
                    queue.push_back(nxt);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Closed dominant chamber faces, indexed by which simple-root walls
    /// they lie on.  Sorted by codimension, then lexicographically.
    pub fn faces(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for mask in 0..(1u64 << self.rank) {
            let vanishing: BTreeSet<usize> =
                (0..self.rank).filter(|i| mask >> i & 1 == 1).collect();
            out.push(Face {
                rank: self.rank,
                vanishing,
            });
        }
        out.sort_by_key(|f| (f.vanishing.len(), f.vanishing.iter().copied().collect::<Vec<_>>()));
        out
    }

    /// The open face of the dominant chamber containing `lam`; errors when
    /// `lam` is not dominant.
    pub fn face_of(&self, lam: &[Rat]) -> Result<Face> {
        let mut vanishing = BTreeSet::new();
        for (i, a) in self.simple.iter().enumerate() {
            let p = self.pair(lam, a);
            if p.is_negative() {
                return Err(domain(format!(
                    "vector pairs negatively with simple root {}; not in the dominant chamber",
                    i + 1
                )));
            }
            if p.is_zero() {
                vanishing.insert(i);
            }
        }
        Ok(Face {
            rank: self.rank,
            vanishing,
        })
    }

    /// A rational point in the relative interior of `face`: the sum of the
    /// fundamental weights for the non-vanishing simple pairings.
    pub fn face_interior_point(&self, face: &Face) -> Vec<Rat> {
        let coeffs: Vec<Rat> = (0..self.rank)
            .map(|i| {
                if face.vanishing.contains(&i) {
                    Rat::zero()
                } else {
                    rat_i(1)
                }
            })
            .collect();
        self.weight_from_coeffs(&coeffs).expect("coeff length")
    }

    /// Indices (into `positive_roots()`) of the positive roots vanishing on
    /// `face` — the positive roots supported on the face's wall set.
    pub fn face_root_indices(&self, face: &Face) -> Vec<usize> {
        let probe = self.face_interior_point(face);
        self.positive
            .iter()
            .enumerate()
            .filter(|(_, a)| self.inner(&probe, a).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Dimension bookkeeping for the compact group attached to a chamber
    /// face: the full algebra, the commutator algebra of the face
    /// centralizer, and the resulting stratum dimension.
    pub fn decomposition_dims(&self, face: &Face) -> DecompDims {
        let n_pos = self.positive.len();
        let face_roots = self.face_root_indices(face).len();
        let dim_k = self.rank + 2 * n_pos;
        let dim_commutator = face.vanishing.len() + 2 * face_roots;
        let dim_face = self.rank - face.vanishing.len();
        DecompDims {
            dim_k,
            dim_torus: self.rank,
            n_positive_roots: n_pos,
            n_face_roots: face_roots,
            dim_commutator,
            dim_face,
            dim_stratum: dim_k - dim_commutator + dim_face,
        }
    }

    /// Index of a positive root in `positive_roots()`, if present.
    pub fn positive_index(&self, root: &[Rat]) -> Option<usize> {
        self.positive.iter().position(|r| r[..] == *root)
    }

    /// Expresses `v` in the simple-root basis; `None` when `v` is outside
    /// their span.
    pub fn simple_coefficients(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let cols: Vec<Vec<Rat>> = self.simple.clone();
        let mut rows = Vec::with_capacity(self.ambient);
        for i in 0..self.ambient {
            rows.push(cols.iter().map(|c| c[i].clone()).collect::<Vec<_>>());
        }
        let m = Mat::from_rows(rows);
        m.solve(v)
    }
}

/// A face of the closed dominant chamber, recorded by the set of simple
/// roots whose walls contain it (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub rank: usize,
    pub vanishing: BTreeSet<usize>,
}

impl Face {
    pub fn new(rank: usize, vanishing: impl IntoIterator<Item = usize>) -> Result<Face> {
        let vanishing: BTreeSet<usize> = vanishing.into_iter().collect();
        if let Some(&bad) = vanishing.iter().find(|&&i| i >= rank) {
            return Err(config(format!(
                "wall index {bad} out of range for rank {rank}"
            )));
        }
        Ok(Face { rank, vanishing })
    }

    pub fn dim(&self) -> usize {
        self.rank - self.vanishing.len()
    }

    pub fn is_interior(&self) -> bool {
        self.vanishing.is_empty()
    }

    /// 1-based wall labels, for display.
    pub fn wall_labels(&self) -> Vec<usize> {
        self.vanishing.iter().map(|i| i + 1).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompDims {
    pub dim_k: usize,
    pub dim_torus: usize,
    pub n_positive_roots: usize,
    pub n_face_roots: usize,
    /// Dimension of the commutator subalgebra of the face centralizer.
    pub dim_commutator: usize,
    pub dim_face: usize,
    pub dim_stratum: usize,
}

fn positive_roots_by_closure(simple: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    // Close the simple roots under simple reflections, then keep the ones
    // whose simple-root coordinates are nonnegative.
    let ambient = simple[0].len();
    let mut all: BTreeSet<Vec<Rat>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<Rat>> = simple.iter().cloned().collect();
    while let Some(cur) = queue.pop_front() {
        for a in simple {
            let nn = vdot(a, a);
            let c = vdot(&cur, a) * rat_i(2) / nn;
            let refl = vsub(&cur, &vscale(&c, a));
            if all.insert(refl.clone()) {
                queue.push_back(refl);
            }
        }
    }
    let coeff_mat = {
        let mut rows = Vec::with_capacity(ambient);
        for i in 0..ambient {
            rows.push(simple.iter().map(|s| s[i].clone()).collect::<Vec<_>>());
        }
        Mat::from_rows(rows)
    };
    let mut positive: Vec<(Rat, Vec<Rat>)> = Vec::new();
    for root in all {
        let coeffs = coeff_mat
            .solve(&root)
            .expect("roots lie in the simple-root span");
        if coeffs.iter().all(|c| !c.is_negative()) {
            let height: Rat = coeffs.iter().fold(Rat::zero(), |a, b| a + b);
            positive.push((height, root));
        }
    }
    positive.sort();
    positive.into_iter().map(|(_, r)| r).collect()
}

fn solve_fundamental_weights(simple: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    // fw_i = sum_k c_k alpha_k with <fw_i, alpha_j^vee> = delta_ij, i.e.
    // solve the Cartan system in the simple-root basis.
    let rank = simple.len();
    let cartan_rows: Vec<Vec<Rat>> = (0..rank)
        .map(|j| {
            (0..rank)
                .map(|k| {
                    let nn = vdot(&simple[j], &simple[j]);
                    vdot(&simple[k], &simple[j]) * rat_i(2) / nn
                })
                .collect()
        })
        .collect();
    let cartan = Mat::from_rows(cartan_rows);
    (0..rank)
        .map(|i| {
            let mut e = vec![Rat::zero(); rank];
            e[i] = rat_i(1);
            let c = cartan.solve(&e).expect("Cartan matrix is invertible");
            let mut acc = vec![Rat::zero(); simple[0].len()];
            for (ck, ak) in c.iter().zip(simple) {
               acc = vadd(&acc, &vscale(ck, ak));
            }
            acc
        })
        .collect()
}

fn reflection_matrix(root: &[Rat], ambient: usize) -> Mat<Rat> {
    let nn = vdot(root, root);
    let mut m = Mat::<Rat>::identity(ambient);
    for i in 0..ambient {
        for j in 0..ambient {
            let delta = root[i].clone() * root[j].clone() * rat_i(2) / nn.clone();
            m[(i, j)] = m[(i, j)].clone() - delta;
        }
    }
    m
}

fn weyl_closure(simple: &[Vec<Rat>], ambient: usize) -> Vec<Mat<Rat>> {
    let gens: Vec<Mat<Rat>> = simple.iter().map(|a| reflection_matrix(a, ambient)).collect();
    let key = |m: &Mat<Rat>| -> Vec<Vec<Rat>> { (0..ambient).map(|i| m.row(i).to_vec()).collect() };
    let id = Mat::<Rat>::identity(ambient);
    let mut seen: BTreeMap<Vec<Vec<Rat>>, Mat<Rat>> = BTreeMap::new();
    seen.insert(key(&id), id.clone());
    let mut queue = VecDeque::new();
    queue.push_back(id);
    while let Some(cur) = queue.pop_front() {
        for g in &gens {
            let nxt = g.mul(&cur);
            if let Entry::Vacant(e) = seen.entry(key(&nxt)) {
                e.insert(nxt.clone());
                queue.push_back(nxt);
            }
        }
    }
    seen.into_values().collect()
}
