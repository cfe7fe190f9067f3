//! Exact semistability for linear torus actions on projectivized weight
//! spaces.
//!
//! A point of P(V) is described by its support: the set of weight lines on
//! which it has a nonzero coordinate. Shifting the moment map by a rational
//! linearization λ turns every stability question into convex geometry on
//! the support's weight polytope, and everything here is decided exactly:
//!
//!   semistable(s, λ) ⟺ λ ∈ conv(weights(s))        (decided by exact LP)
//!   stable(s, λ)     ⟺ λ interior to a full-dimensional hull
//!   m_function       = signed Euclidean distance of λ to the hull
//!                      (> 0 outside, < 0 strictly inside, 0 on the
//!                      boundary and on every lower-dimensional hull)
//!
//! The LP route and the polytope route are deliberately independent; their
//! agreement is one of the oracle checks in the test suites.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::combinat::{bits, nonempty_masks};
use crate::error::{capability, config, domain, Result};
use crate::irrep::Irrep;
use crate::linalg::Mat;
use crate::lp::convex_hull_membership;
use crate::polytope::Polytope;
use crate::rational::{rat, to_f64, vdot, vsub, Rat};
use crate::roots::RootSystem;

/// Enumerating all supports is 2^n work; beyond this the engine refuses.
pub const MAX_ENUMERATED_WEIGHTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigWeight {
    pub coords: Vec<Rat>,
    pub mult: u32,
}

/// A finite list of distinct rational torus weights with multiplicities.
///
/// `rank` is the dimension of the torus; the coordinates may live in a
/// larger ambient space (e.g. the trace-zero hyperplane convention for
/// type-A weights), in which case the weights span at most a rank-dimensional
/// affine subspace. All stability notions measure dimensions against `rank`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightConfig {
    pub rank: usize,
    pub ambient: usize,
    pub weights: Vec<ConfigWeight>,
}

impl WeightConfig {
    pub fn new(rank: usize, weights: Vec<ConfigWeight>) -> Result<Self> {
        if rank == 0 {
            return Err(config("torus rank must be at least 1"));
        }
        let Some(first) = weights.first() else {
            return Err(config("weight list must be nonempty"));
        };
        let ambient = first.coords.len();
        if ambient < rank {
            return Err(config("coordinate dimension below torus rank"));
        }
        if weights.iter().any(|w| w.coords.len() != ambient) {
            return Err(config("weights of mixed coordinate dimension"));
        }
        if weights.iter().any(|w| w.mult == 0) {
            return Err(config("weight multiplicity must be positive"));
        }
        let mut seen: BTreeSet<&[Rat]> = BTreeSet::new();
        for w in &weights {
            if !seen.insert(&w.coords) {
                return Err(config("duplicate weight"));
            }
        }
        let diffs: Vec<Vec<Rat>> =
            weights[1..].iter().map(|w| vsub(&w.coords, &weights[0].coords)).collect();
        if !diffs.is_empty() && Mat::from_rows(diffs).rank() > rank {
            return Err(config("weights span more than the torus rank"));
        }
        Ok(WeightConfig { rank, ambient, weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The full support: every weight index.
    pub fn full_support(&self) -> u64 {
        (1u64 << self.len()) - 1
    }

    fn check_support(&self, s: u64) -> Result<()> {
        if s == 0 {
            return Err(config("empty support"));
        }
        if s >> self.len() != 0 {
            return Err(config("support mask exceeds weight count"));
        }
        Ok(())
    }

    /// Support weights in index order.
    pub fn support_points(&self, s: u64) -> Result<Vec<Vec<Rat>>> {
        self.check_support(s)?;
        Ok(bits(s).into_iter().map(|i| self.weights[i].coords.clone()).collect())
    }

    fn check_point(&self, lam: &[Rat]) -> Result<()> {
        if lam.len() != self.ambient {
            return Err(config("point dimension mismatch"));
        }
        Ok(())
    }
}

/// Weight data of a representation, converted to the convention used here:
/// the moment image of the coordinate line with representation weight w is
/// −w, so the configuration stores the negated weights. This is the one
/// place where that sign flip happens.
pub fn config_from_irrep(rs: &RootSystem, irrep: &Irrep) -> Result<WeightConfig> {
    let weights = irrep
        .weights
        .iter()
        .map(|wm| ConfigWeight {
            coords: wm.weight.iter().map(|x| -x).collect(),
            mult: wm.mult as u32,
        })
        .collect();
    WeightConfig::new(rs.rank, weights)
}

/// Indices of the support whose weights are vertices of the support hull.
/// The hull is unchanged when the support is shrunk to this subset.
pub fn extreme_support(cfg: &WeightConfig, s: u64) -> Result<u64> {
    cfg.check_support(s)?;
    let idx = bits(s);
    if idx.len() == 1 {
        return Ok(s);
    }
    let mut out = 0u64;
    for &i in &idx {
        let others: Vec<Vec<Rat>> = idx
            .iter()
            .filter(|&&j| j != i)
            .map(|&j| cfg.weights[j].coords.clone())
            .collect();
        if convex_hull_membership(&others, &cfg.weights[i].coords).is_err() {
            out |= 1 << i;
        }
    }
    Ok(out)
}

/// Convex hull of the support weights.
pub fn support_hull(cfg: &WeightConfig, s: u64) -> Result<Polytope> {
    Polytope::from_points(cfg.ambient, &cfg.support_points(s)?)
}

/// Semistability at level λ, decided by exact LP (no polytope machinery).
pub fn is_semistable(cfg: &WeightConfig, s: u64, lam: &[Rat]) -> Result<bool> {
    cfg.check_point(lam)?;
    Ok(convex_hull_membership(&cfg.support_points(s)?, lam).is_ok())
}

/// Stability at level λ: the support hull must be full-dimensional (rank
/// dimensions) and contain λ in its interior. Lower-dimensional hulls have a
/// positive-dimensional stabilizer and are never stable.
pub fn is_stable(cfg: &WeightConfig, s: u64, lam: &[Rat]) -> Result<bool> {
    cfg.check_point(lam)?;
    let hull = support_hull(cfg, s)?;
    Ok(hull.dim() == cfg.rank && hull.relint_contains(lam))
}

/// Whether the stabilizer of a point with this support has positive
/// dimension: the differences of support weights span less than the rank.
pub fn has_positive_dim_stabilizer(cfg: &WeightConfig, s: u64) -> Result<bool> {
    let pts = cfg.support_points(s)?;
    let diffs: Vec<Vec<Rat>> = pts[1..].iter().map(|p| vsub(p, &pts[0])).collect();
    let dim = if diffs.is_empty() { 0 } else { Mat::from_rows(diffs).rank() };
    Ok(dim < cfg.rank)
}

/// Support value of the shifted weights against a one-parameter direction:
/// max over the support of ⟨w − λ, dir⟩. Nonnegative for every direction
/// exactly when λ is semistable for the support.
pub fn max_weight(cfg: &WeightConfig, s: u64, lam: &[Rat], dir: &[Rat]) -> Result<Rat> {
    cfg.check_point(lam)?;
    if dir.len() != cfg.ambient {
        return Err(config("direction dimension mismatch"));
    }
    if dir.iter().all(Zero::is_zero) {
        return Err(domain("zero direction"));
    }
    let pts = cfg.support_points(s)?;
    Ok(pts.iter().map(|p| vdot(&vsub(p, lam), dir)).max().expect("nonempty support"))
}

/// The sub-support surviving the one-parameter limit along `dir`: all
/// indices maximizing ⟨w, dir⟩ (ties keep every maximizer).
pub fn limit_support(cfg: &WeightConfig, s: u64, dir: &[Rat]) -> Result<u64> {
    if dir.len() != cfg.ambient {
        return Err(config("direction dimension mismatch"));
    }
    if dir.iter().all(Zero::is_zero) {
        return Err(domain("zero direction"));
    }
    let idx = bits(s);
    cfg.check_support(s)?;
    let vals: Vec<Rat> = idx.iter().map(|&i| vdot(&cfg.weights[i].coords, dir)).collect();
    let best = vals.iter().max().expect("nonempty support").clone();
    let mut out = 0u64;
    for (&i, v) in idx.iter().zip(&vals) {
        if *v == best {
            out |= 1 << i;
        }
    }
    Ok(out)
}

/// Exact evidence for the sign of the numerical function.
#[derive(Debug, Clone, PartialEq)]
pub enum MCertificate {
    /// λ outside the hull: ⟨w − λ, direction⟩ ≤ −⟨direction, direction⟩
    /// for every support weight (direction = λ − nearest hull point).
    Separating { direction: Vec<Rat> },
    /// λ on the hull but not interior: a convex combination expressing λ
    /// over the support points, plus a direction whose shifted weights are
    /// all ≤ 0 with maximum exactly 0.
    OnHull { barycentric: Vec<Rat>, flat: Vec<Rat> },
    /// λ strictly inside a full-dimensional hull: the facet hyperplane
    /// nearest to λ.
    InteriorBall { facet_normal: Vec<Rat>, facet_offset: Rat },
}

/// Signed distance of λ to the support hull, with the sign decided exactly
/// and the magnitude kept as an exact squared distance.
#[derive(Debug, Clone, PartialEq)]
pub struct MValue {
    pub sign: i8,
    pub sq_magnitude: Rat,
    pub certificate: MCertificate,
}

impl MValue {
    /// Signed Euclidean distance as a float.
    pub fn value(&self) -> f64 {
        f64::from(self.sign) * to_f64(&self.sq_magnitude).sqrt()
    }

    pub fn semistable(&self) -> bool {
        self.sign <= 0
    }

    pub fn stable(&self) -> bool {
        self.sign < 0
    }

    /// A direction at which the directional gap attains the signed distance.
    pub fn witness_direction(&self) -> Vec<Rat> {
        match &self.certificate {
            MCertificate::Separating { direction } => direction.clone(),
            MCertificate::OnHull { flat, .. } => flat.clone(),
            MCertificate::InteriorBall { facet_normal, .. } => facet_normal.clone(),
        }
    }
}

/// The numerical function: signed Euclidean distance of the level λ to the
/// support hull P. Positive outside (distance to P), negative strictly
/// inside a full-dimensional P (minus the distance to ∂P), zero on ∂P and
/// everywhere on a lower-dimensional P. M ≤ 0 ⟺ semistable, M < 0 ⟺ stable.
pub fn m_function(cfg: &WeightConfig, s: u64, lam: &[Rat]) -> Result<MValue> {
    cfg.check_point(lam)?;
    let pts = cfg.support_points(s)?;
    let hull = Polytope::from_points(cfg.ambient, &pts)?;
    m_from_hull(cfg, &pts, &hull, lam)
}

/// `m_function` with the hull precomputed, for callers sweeping many λ
/// against one support.
pub fn m_from_hull(
    cfg: &WeightConfig,
    pts: &[Vec<Rat>],
    hull: &Polytope,
    lam: &[Rat],
) -> Result<MValue> {
    cfg.check_point(lam)?;
    if !hull.contains(lam) {
        let (sq, nearest) = hull.min_sq_dist(lam);
        let direction = vsub(lam, &nearest);
        return Ok(MValue {
            sign: 1,
            sq_magnitude: sq,
            certificate: MCertificate::Separating { direction },
        });
    }
    if hull.dim() == cfg.rank && hull.relint_contains(lam) {
        // Interior of a full-dimensional hull: the distance to the boundary
        // is the minimum distance to a facet hyperplane (an interior point's
        // inscribed ball touches the nearest facet's hyperplane first).
        let mut best: Option<(Rat, &crate::polytope::Halfspace)> = None;
        for f in &hull.facets {
            let slack = &f.offset - vdot(lam, &f.normal);
            let sq = &slack * &slack / vdot(&f.normal, &f.normal);
            if best.as_ref().is_none_or(|(b, _)| sq < *b) {
                best = Some((sq, f));
            }
        }
        let (sq, facet) = best.expect("full-dimensional hull has facets");
        return Ok(MValue {
            sign: -1,
            sq_magnitude: sq,
            certificate: MCertificate::InteriorBall {
                facet_normal: facet.normal.clone(),
                facet_offset: facet.offset.clone(),
            },
        });
    }
    // On the hull without being interior: either on the boundary of a
    // full-dimensional hull or anywhere on a lower-dimensional one.
    let barycentric = convex_hull_membership(pts, lam)
        .map_err(|_| domain("hull membership routes disagree"))?;
    let flat = if let Some(eq) = hull.equations.first() {
        eq.normal.clone()
    } else {
        hull.facets
            .iter()
            .find(|f| vdot(lam, &f.normal) == f.offset)
            .map(|f| f.normal.clone())
            .ok_or_else(|| domain("boundary point not on any facet"))?
    };
    Ok(MValue {
        sign: 0,
        sq_magnitude: Rat::zero(),
        certificate: MCertificate::OnHull { barycentric, flat },
    })
}

/// Signed distance from 0 to the boundary of the projection of the shifted
/// support hull onto a direction, scaled by |dir| to stay rational: the
/// projection is the interval [min, max] of ⟨w − λ, dir⟩, and the scaled gap
/// is max(min, −max) — negative when 0 is interior to the interval, positive
/// when 0 is outside, zero on its boundary. The supremum over directions of
/// the unscaled gap is the numerical function.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionalGap {
    pub scaled: Rat,
    pub dir_norm_sq: Rat,
}

impl DirectionalGap {
    pub fn sign(&self) -> i8 {
        match () {
            _ if self.scaled.is_positive() => 1,
            _ if self.scaled.is_negative() => -1,
            _ => 0,
        }
    }

    /// The unscaled signed distance, as a float.
    pub fn value(&self) -> f64 {
        to_f64(&self.scaled) / to_f64(&self.dir_norm_sq).sqrt()
    }
}

pub fn directional_gap(
    cfg: &WeightConfig,
    s: u64,
    lam: &[Rat],
    dir: &[Rat],
) -> Result<DirectionalGap> {
    cfg.check_point(lam)?;
    if dir.len() != cfg.ambient {
        return Err(config("direction dimension mismatch"));
    }
    let dir_norm_sq = vdot(dir, dir);
    if dir_norm_sq.is_zero() {
        return Err(domain("zero direction"));
    }
    let ts: Vec<Rat> = cfg
        .support_points(s)?
        .iter()
        .map(|p| vdot(&vsub(p, lam), dir))
        .collect();
    let tmax = ts.iter().max().expect("nonempty support").clone();
    let tmin = ts.iter().min().expect("nonempty support").clone();
    let scaled = std::cmp::max(tmin, -tmax);
    Ok(DirectionalGap { scaled, dir_norm_sq })
}

/// Directions for a brute-force gap sweep: the witness direction of the
/// m-value, every facet normal and hull equation (both orientations), the
/// coordinate axes, and seeded random rational directions.
pub fn sweep_directions<R: Rng>(
    cfg: &WeightConfig,
    s: u64,
    lam: &[Rat],
    m: &MValue,
    extra: usize,
    rng: &mut R,
) -> Result<Vec<Vec<Rat>>> {
    let hull = support_hull(cfg, s)?;
    let mut dirs: Vec<Vec<Rat>> = vec![m.witness_direction()];
    for f in &hull.facets {
        dirs.push(f.normal.clone());
        dirs.push(f.normal.iter().map(|x| -x).collect());
    }
    for e in &hull.equations {
        dirs.push(e.normal.clone());
        dirs.push(e.normal.iter().map(|x| -x).collect());
    }
    for i in 0..cfg.ambient {
        let mut axis = vec![Rat::zero(); cfg.ambient];
        axis[i] = Rat::from_integer(1.into());
        dirs.push(axis.clone());
        axis[i] = Rat::from_integer((-1).into());
        dirs.push(axis);
    }
    for _ in 0..extra {
        dirs.push(random_direction(cfg.ambient, rng));
    }
    let _ = lam;
    dirs.retain(|d| !d.iter().all(Zero::is_zero));
    Ok(dirs)
}

/// A nonzero random direction with single-digit numerators and denominators.
pub fn random_direction<R: Rng>(ambient: usize, rng: &mut R) -> Vec<Rat> {
    loop {
        let d: Vec<Rat> = (0..ambient)
            .map(|_| rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)))
            .collect();
        if !d.iter().all(Zero::is_zero) {
            return d;
        }
    }
}

/// All nonempty supports grouped by their extreme-support class. Two
/// supports in one class have the same hull, so every semistability
/// fingerprint is a union of classes.
#[derive(Debug, Clone)]
pub struct SupportTable {
    pub masks: Vec<u64>,
    pub class_of: Vec<usize>,
    pub classes: Vec<u64>,
    pub hulls: Vec<Polytope>,
}

/// The set of semistable supports at a level — the object that is constant
/// on chambers.
pub type Fingerprint = BTreeSet<u64>;

pub fn support_table(cfg: &WeightConfig) -> Result<SupportTable> {
    if cfg.len() > MAX_ENUMERATED_WEIGHTS {
        return Err(capability(format!(
            "support enumeration limited to {MAX_ENUMERATED_WEIGHTS} weights"
        )));
    }
    let masks: Vec<u64> = nonempty_masks(cfg.len()).collect();
    let mut class_ids: BTreeMap<u64, usize> = BTreeMap::new();
    let mut classes: Vec<u64> = Vec::new();
    let mut class_of = Vec::with_capacity(masks.len());
    for &s in &masks {
        let ext = extreme_support(cfg, s)?;
        let next = classes.len();
        let id = *class_ids.entry(ext).or_insert_with(|| {
            classes.push(ext);
            next
        });
        class_of.push(id);
    }
    let hulls = classes
        .iter()
        .map(|&c| support_hull(cfg, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(SupportTable { masks, class_of, classes, hulls })
}

impl SupportTable {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Hull-membership bits of λ, one per class, packed into words.
    pub fn membership_profile(&self, lam: &[Rat]) -> Vec<u64> {
        let mut words = vec![0u64; self.classes.len().div_ceil(64)];
        for (i, hull) in self.hulls.iter().enumerate() {
            if hull.contains(lam) {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        words
    }

    pub fn fingerprint(&self, lam: &[Rat]) -> Fingerprint {
        let profile = self.membership_profile(lam);
        self.masks
            .iter()
            .zip(&self.class_of)
            .filter(|&(_, &c)| profile[c / 64] >> (c % 64) & 1 == 1)
            .map(|(&s, _)| s)
            .collect()
    }

    /// The stable supports at λ: semistable with a full-dimensional hull
    /// containing λ strictly inside.
    pub fn stable_fingerprint(&self, rank: usize, lam: &[Rat]) -> Fingerprint {
        self.masks
            .iter()
            .zip(&self.class_of)
            .filter(|&(_, &c)| {
                self.hulls[c].dim() == rank && self.hulls[c].relint_contains(lam)
            })
            .map(|(&s, _)| s)
            .collect()
    }
}

/// Distinct fingerprints over a sample of levels, against the count of
/// extreme-support classes. Every fingerprint is a union of classes, so the
/// number of distinct fingerprints over *all* levels is at most
/// 2^class_count; `bound_holds` checks exactly that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub samples: usize,
    pub distinct_fingerprints: usize,
    pub class_count: usize,
}

impl CensusReport {
    pub fn bound_holds(&self) -> bool {
        // 2^class_count overflows quickly; beyond 63 classes the sample
        // count itself is the binding bound.
        match u32::try_from(self.class_count) {
            Ok(c) if c < 64 => (self.distinct_fingerprints as u64) <= 1u64 << c,
            _ => true,
        }
    }
}

/// Fingerprint census over a level grid, in parallel, reported canonically.
pub fn census(cfg: &WeightConfig, levels: &[Vec<Rat>]) -> Result<CensusReport> {
    let table = support_table(cfg)?;
    for lam in levels {
        cfg.check_point(lam)?;
    }
    let mut profiles: Vec<Vec<u64>> =
        levels.par_iter().map(|lam| table.membership_profile(lam)).collect();
    profiles.sort();
    profiles.dedup();
    Ok(CensusReport {
        samples: levels.len(),
        distinct_fingerprints: profiles.len(),
        class_count: table.class_count(),
    })
}

/// Outcome of the conjugate probe. `CertifiedUnstable` carries an exact
/// destabilizing direction for the stated conjugate (0 = identity, i ≥ 1 the
/// i-th supplied transformation). `CertifiedSemistable` is only issued when
/// no nontrivial conjugates were supplied — for a torus the level test is
/// complete. With conjugates present the probe is one-sided: it can certify
/// instability but never semistability, hence `Undetermined`.
#[derive(Debug, Clone, PartialEq)]
pub enum ProbeOutcome {
    CertifiedUnstable { conjugate: usize, direction: Vec<Rat> },
    CertifiedSemistable,
    Undetermined,
}

/// Semistability probe across weight-set-preserving conjugates (e.g. Weyl
/// elements acting on the weights of a representation) plus random
/// one-parameter directions. Sound for "unstable"; incomplete otherwise.
pub fn conjugate_ss_probe<R: Rng>(
    cfg: &WeightConfig,
    s: u64,
    lam: &[Rat],
    conjugates: &[Mat<Rat>],
    extra_dirs: usize,
    rng: &mut R,
) -> Result<ProbeOutcome> {
    cfg.check_point(lam)?;
    cfg.check_support(s)?;

    // Identity first: the plain level test.
    if let Err(c) = convex_hull_membership(&cfg.support_points(s)?, lam) {
        return Ok(ProbeOutcome::CertifiedUnstable { conjugate: 0, direction: c });
    }

    // Random one-parameter directions on the original support. Subsumed by
    // the LP above, kept as an independent sampling layer.
    for _ in 0..extra_dirs {
        let dir = random_direction(cfg.ambient, rng);
        if max_weight(cfg, s, lam, &dir)?.is_negative() {
            return Ok(ProbeOutcome::CertifiedUnstable { conjugate: 0, direction: dir });
        }
    }

    for (k, g) in conjugates.iter().enumerate() {
        let perm = weight_permutation(cfg, g)?;
        let mut moved = 0u64;
        for i in bits(s) {
            moved |= 1 << perm[i];
        }
        if let Err(c) = convex_hull_membership(&cfg.support_points(moved)?, lam) {
            return Ok(ProbeOutcome::CertifiedUnstable { conjugate: k + 1, direction: c });
        }
    }

    if conjugates.is_empty() {
        Ok(ProbeOutcome::CertifiedSemistable)
    } else {
        Ok(ProbeOutcome::Undetermined)
    }
}

/// The permutation a linear map induces on the weight list: g·wᵢ = w_{π(i)}.
/// Errors when g does not preserve the weight set.
pub fn weight_permutation(cfg: &WeightConfig, g: &Mat<Rat>) -> Result<Vec<usize>> {
    if g.rows != cfg.ambient || g.cols != cfg.ambient {
        return Err(config("transformation dimension mismatch"));
    }
    let mut perm = Vec::with_capacity(cfg.len());
    let mut hit = vec![false; cfg.len()];
    for w in &cfg.weights {
        let img = g.mul_vec(&w.coords);
        let j = cfg
            .weights
            .iter()
            .position(|u| u.coords == img)
            .ok_or_else(|| config("transformation does not preserve the weight set"))?;
        if hit[j] {
            return Err(config("transformation is not injective on the weight set"));
        }
        hit[j] = true;
        perm.push(j);
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w1(xs: &[i64]) -> Vec<ConfigWeight> {
        xs.iter()
            .map(|&x| ConfigWeight { coords: vec![rat_i(x)], mult: 1 })
            .collect()
    }

    fn line_cfg(xs: &[i64]) -> WeightConfig {
        WeightConfig::new(1, w1(xs)).unwrap()
    }

    fn pt(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_i(x)).collect()
    }

    fn square_cfg() -> WeightConfig {
        // unit square corners plus the center
        let coords = [
            vec![0, 0],
            vec![2, 0],
            vec![0, 2],
            vec![2, 2],
            vec![1, 1],
        ];
        let weights = coords
            .iter()
            .map(|c| ConfigWeight { coords: pt(c), mult: 1 })
            .collect();
        WeightConfig::new(2, weights).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(WeightConfig::new(1, vec![]).is_err());
        assert!(WeightConfig::new(0, w1(&[0])).is_err());
        assert!(WeightConfig::new(1, w1(&[1, 1])).is_err());
        let mut ws = w1(&[0, 1]);
        ws[0].mult = 0;
        assert!(WeightConfig::new(1, ws).is_err());
        // two independent directions cannot fit in a rank-1 torus
        let ws = vec![
            ConfigWeight { coords: pt(&[0, 0]), mult: 1 },
            ConfigWeight { coords: pt(&[1, 0]), mult: 1 },
            ConfigWeight { coords: pt(&[0, 1]), mult: 1 },
        ];
        assert!(WeightConfig::new(1, ws).is_err());
    }

    #[test]
    fn extreme_support_drops_interior_weights() {
        let cfg = line_cfg(&[0, 1, 2]);
        assert_eq!(extreme_support(&cfg, 0b001).unwrap(), 0b001);
        assert_eq!(extreme_support(&cfg, 0b111).unwrap(), 0b101);
        assert_eq!(extreme_support(&cfg, 0b011).unwrap(), 0b011);

        let sq = square_cfg();
        // all five weights: the center drops out
        assert_eq!(extreme_support(&sq, 0b11111).unwrap(), 0b01111);

        // idempotence and hull equality on every support
        for s in nonempty_masks(cfg.len()) {
            let e = extreme_support(&cfg, s).unwrap();
            assert_eq!(extreme_support(&cfg, e).unwrap(), e);
            assert!(support_hull(&cfg, s)
                .unwrap()
                .same_set(&support_hull(&cfg, e).unwrap()));
        }
    }

    #[test]
    fn semistable_and_stable_on_an_interval() {
        let cfg = line_cfg(&[-1, 1]);
        let s = 0b11;
        assert!(is_semistable(&cfg, s, &[rat_i(0)]).unwrap());
        assert!(is_stable(&cfg, s, &[rat_i(0)]).unwrap());
        assert!(is_semistable(&cfg, s, &[rat_i(1)]).unwrap());
        assert!(!is_stable(&cfg, s, &[rat_i(1)]).unwrap());
        assert!(!is_semistable(&cfg, s, &[rat_i(2)]).unwrap());
        // a support weight itself is always semistable
        assert!(is_semistable(&cfg, 0b01, &[rat_i(-1)]).unwrap());
        // singleton hulls are never stable
        assert!(!is_stable(&cfg, 0b01, &[rat_i(-1)]).unwrap());
    }

    #[test]
    fn m_function_interval_values() {
        let cfg = line_cfg(&[-1, 1]);
        let s = 0b11;
        let inside = m_function(&cfg, s, &[rat_i(0)]).unwrap();
        assert_eq!(inside.sign, -1);
        assert_eq!(inside.sq_magnitude, rat_i(1));
        assert!((inside.value() + 1.0).abs() < 1e-12);

        let boundary = m_function(&cfg, s, &[rat_i(1)]).unwrap();
        assert_eq!(boundary.sign, 0);
        assert!(boundary.sq_magnitude.is_zero());

        let outside = m_function(&cfg, s, &[rat_i(2)]).unwrap();
        assert_eq!(outside.sign, 1);
        assert_eq!(outside.sq_magnitude, rat_i(1));

        // lower-dimensional hull: zero everywhere on it
        let point = m_function(&cfg, 0b01, &[rat_i(-1)]).unwrap();
        assert_eq!(point.sign, 0);
    }

    #[test]
    fn m_sign_matches_membership_routes() {
        // every support of a plane config, a grid of λ: LP route vs hull route
        let cfg = square_cfg();
        for s in nonempty_masks(cfg.len()) {
            for x in -1..=3i64 {
                for y in -1..=3i64 {
                    let lam = pt(&[x, y]);
                    let m = m_function(&cfg, s, &lam).unwrap();
                    assert_eq!(m.semistable(), is_semistable(&cfg, s, &lam).unwrap());
                    assert_eq!(m.stable(), is_stable(&cfg, s, &lam).unwrap());
                }
            }
        }
    }

    #[test]
    fn m_certificates_are_exact_evidence() {
        let cfg = square_cfg();
        let s = 0b01111; // full square
        // outside: the separating direction has the claimed uniform gap
        let lam = pt(&[4, 1]);
        let m = m_function(&cfg, s, &lam).unwrap();
        let MCertificate::Separating { direction } = &m.certificate else {
            panic!("expected a separating certificate");
        };
        let gap = vdot(direction, direction);
        for p in cfg.support_points(s).unwrap() {
            assert!(vdot(&vsub(&p, &lam), direction) <= -gap.clone());
        }
        assert_eq!(m.sq_magnitude, gap);

        // inside: the witness facet is at the boundary distance
        let lam = vec![rat(1, 2), rat_i(1)];
        let m = m_function(&cfg, s, &lam).unwrap();
        assert_eq!(m.sign, -1);
        assert_eq!(m.sq_magnitude, rat(1, 4));
        let (bsq, _) = support_hull(&cfg, s).unwrap().boundary_sq_dist(&lam);
        assert_eq!(m.sq_magnitude, bsq);

        // on the hull: the barycentric certificate reconstructs λ
        let lam = pt(&[1, 0]);
        let m = m_function(&cfg, s, &lam).unwrap();
        let MCertificate::OnHull { barycentric, flat } = &m.certificate else {
            panic!("expected an on-hull certificate");
        };
        let pts = cfg.support_points(s).unwrap();
        let mut rec = vec![Rat::zero(); 2];
        for (mu, p) in barycentric.iter().zip(&pts) {
            for (r, c) in rec.iter_mut().zip(p) {
                *r = &*r + mu * c;
            }
        }
        assert_eq!(rec, lam);
        let g = directional_gap(&cfg, s, &lam, flat).unwrap();
        assert!(g.scaled.is_zero());
    }

    #[test]
    fn directional_gap_interval_cases() {
        let cfg = line_cfg(&[-1, 1]);
        let s = 0b11;
        // inside: both unit directions see the boundary at distance 1
        let g = directional_gap(&cfg, s, &[rat_i(0)], &[rat_i(1)]).unwrap();
        assert_eq!(g.scaled, rat_i(-1));
        assert_eq!(g.sign(), -1);
        // outside at 2: direction −1 attains the positive distance 1
        let g = directional_gap(&cfg, s, &[rat_i(2)], &[rat_i(-1)]).unwrap();
        assert_eq!(g.scaled, rat_i(1));
        // a support reduced to the level itself: gap zero
        let g = directional_gap(&cfg, 0b01, &[rat_i(-1)], &[rat_i(5)]).unwrap();
        assert!(g.scaled.is_zero());
        assert!(directional_gap(&cfg, s, &[rat_i(0)], &[rat_i(0)]).is_err());
    }

    #[test]
    fn gap_relates_to_max_weight_both_orientations() {
        let cfg = square_cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in [0b00011u64, 0b00111, 0b01111, 0b10001] {
            for _ in 0..20 {
                let lam = random_direction(2, &mut rng);
                let dir = random_direction(2, &mut rng);
                let g = directional_gap(&cfg, s, &lam, &dir).unwrap();
                let plus = max_weight(&cfg, s, &lam, &dir).unwrap();
                let neg_dir: Vec<Rat> = dir.iter().map(|x| -x).collect();
                let minus = max_weight(&cfg, s, &lam, &neg_dir).unwrap();
                assert_eq!(g.scaled, -std::cmp::min(plus, minus));
            }
        }
    }

    #[test]
    fn sweep_attains_m_sign_exactly() {
        let cfg = square_cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in nonempty_masks(cfg.len()) {
            for _ in 0..5 {
                let lam = random_direction(2, &mut rng);
                let m = m_function(&cfg, s, &lam).unwrap();
                let dirs = sweep_directions(&cfg, s, &lam, &m, 16, &mut rng).unwrap();
                let best = dirs
                    .iter()
                    .map(|d| directional_gap(&cfg, s, &lam, d).unwrap())
                    .max_by(|a, b| a.value().partial_cmp(&b.value()).unwrap())
                    .unwrap();
                assert_eq!(best.sign(), m.sign);
                // the sweep never overshoots the true signed distance
                assert!(best.value() <= m.value() + 1e-9);
            }
        }
    }

    #[test]
    fn limit_support_keeps_all_maximizers() {
        let cfg = square_cfg();
        // direction (1,0): corners (2,0) and (2,2) tie
        assert_eq!(limit_support(&cfg, 0b01111, &pt(&[1, 0])).unwrap(), 0b01010);
        // max_weight is attained on the limit support
        let lam = pt(&[0, 0]);
        let dir = pt(&[1, 0]);
        let lim = limit_support(&cfg, 0b01111, &dir).unwrap();
        assert_eq!(
            max_weight(&cfg, 0b01111, &lam, &dir).unwrap(),
            max_weight(&cfg, lim, &lam, &dir).unwrap()
        );
    }

    #[test]
    fn stabilizer_dimension_detection() {
        let sq = square_cfg();
        assert!(has_positive_dim_stabilizer(&sq, 0b00001).unwrap());
        assert!(has_positive_dim_stabilizer(&sq, 0b00011).unwrap());
        assert!(!has_positive_dim_stabilizer(&sq, 0b00111).unwrap());
        // collinear triple: corner, center, corner
        assert!(has_positive_dim_stabilizer(&sq, 0b11001).unwrap());
    }

    #[test]
    fn table_fingerprints_match_lp_route() {
        let cfg = line_cfg(&[0, 1, 2]);
        let table = support_table(&cfg).unwrap();
        assert_eq!(table.class_count(), 6);
        for x in [rat(-1, 2), rat_i(0), rat(1, 2), rat_i(1), rat(3, 2), rat_i(2), rat(5, 2)] {
            let lam = vec![x];
            let fp = table.fingerprint(&lam);
            for s in nonempty_masks(cfg.len()) {
                assert_eq!(fp.contains(&s), is_semistable(&cfg, s, &lam).unwrap());
            }
        }
    }

    #[test]
    fn census_counts_interval_chambers() {
        let cfg = line_cfg(&[0, 1, 2]);
        // dense-ish grid over [0,2] including the wall values
        let levels: Vec<Vec<Rat>> = (0..=40).map(|k| vec![rat(k, 20)]).collect();
        let report = census(&cfg, &levels).unwrap();
        assert_eq!(report.distinct_fingerprints, 5);
        assert_eq!(report.class_count, 6);
        assert!(report.bound_holds());

        let cfg = line_cfg(&[-1, 1]);
        let levels = vec![vec![rat_i(-2)], vec![rat_i(0)], vec![rat_i(2)]];
        let report = census(&cfg, &levels).unwrap();
        assert_eq!(report.distinct_fingerprints, 2);
    }

    #[test]
    fn weight_permutation_round_trip() {
        let rs = RootSystem::build(crate::roots::Series::A, 2).unwrap();
        let adjoint = crate::irrep::irrep_weights(&rs, &[1, 1]).unwrap();
        let cfg = config_from_irrep(&rs, &adjoint).unwrap();
        assert_eq!(cfg.len(), 7);
        for g in rs.weyl_elements() {
            let perm = weight_permutation(&cfg, g).unwrap();
            let mut seen: Vec<usize> = perm.clone();
            seen.sort_unstable();
            assert_eq!(seen, (0..cfg.len()).collect::<Vec<_>>());
        }
        // a non-preserving map is rejected
        let bad = Mat::from_rows(vec![
            pt(&[2, 0, 0]),
            pt(&[0, 2, 0]),
            pt(&[0, 0, 2]),
        ]);
        assert!(weight_permutation(&cfg, &bad).is_err());
    }

    #[test]
    fn probe_certifies_instability_through_a_conjugate() {
        let rs = RootSystem::build(crate::roots::Series::A, 1).unwrap();
        let adjoint = crate::irrep::irrep_weights(&rs, &[2]).unwrap();
        let cfg = config_from_irrep(&rs, &adjoint).unwrap();
        // the highest-weight line alone, at level 0: unstable already for
        // the torus, witnessed by an explicit direction
        let hw = cfg
            .weights
            .iter()
            .position(|w| w.coords == vec![rat_i(-1), rat_i(1)])
            .unwrap();
        let zero = vec![rat_i(0), rat_i(0)];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let out = conjugate_ss_probe(&cfg, 1 << hw, &zero, rs.weyl_elements(), 4, &mut rng)
            .unwrap();
        let ProbeOutcome::CertifiedUnstable { direction, .. } = out else {
            panic!("expected an instability certificate");
        };
        assert!(max_weight(&cfg, 1 << hw, &zero, &direction).unwrap().is_negative());

        // full adjoint support is Weyl-symmetric with 0 in every hull
        let out = conjugate_ss_probe(
            &cfg,
            cfg.full_support(),
            &zero,
            rs.weyl_elements(),
            4,
            &mut rng,
        )
        .unwrap();
        assert_eq!(out, ProbeOutcome::Undetermined);

        // with no conjugates the torus decision is exact
        let out = conjugate_ss_probe(&cfg, cfg.full_support(), &zero, &[], 4, &mut rng).unwrap();
        assert_eq!(out, ProbeOutcome::CertifiedSemistable);
    }

    #[test]
    fn midpoint_convexity_of_the_signed_distance() {
        let cfg = square_cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for s in [0b01111u64, 0b00111, 0b00011] {
            for _ in 0..50 {
                let a = random_direction(2, &mut rng);
                let b = random_direction(2, &mut rng);
                let mid: Vec<Rat> =
                    a.iter().zip(&b).map(|(x, y)| (x + y) / rat_i(2)).collect();
                let ma = m_function(&cfg, s, &a).unwrap().value();
                let mb = m_function(&cfg, s, &b).unwrap().value();
                let mm = m_function(&cfg, s, &mid).unwrap().value();
                assert!(mm <= (ma + mb) / 2.0 + 1e-9);
            }
        }
    }
}
