//! Parameter-simplex constructions for sweeping a family of torus quotients
//! at once: the level map λ(t) over the simplex, the weight data of the
//! added coordinate lines, the rescaling identity satisfied by the two
//! moment-map presentations, an exact nonvanishing certificate on the
//! boundary stratum, and the transport of a wall-and-chamber decomposition
//! from weight space back to the simplex.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::arrangement::{decompose_region, Chamber, ChamberDecomposition, Wall};
use crate::error::{config, domain, Result};
use crate::linalg::Mat;
use crate::lp::feasible;
use crate::polytope::{Halfspace, Hyperplane, Polytope};
use crate::rational::{rat, vadd, vdot, vscale, vzero, Rat};
use crate::roots::RootSystem;
use crate::stability::{support_table, ConfigWeight, WeightConfig};

use std::collections::BTreeMap;

/// A point of the closed parameter simplex: r+1 non-negative barycentric
/// coordinates summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexParam {
    t: Vec<Rat>,
}

impl SimplexParam {
    pub fn new(t: Vec<Rat>) -> Result<Self> {
        if t.len() < 2 {
            return Err(config("simplex parameter needs at least two coordinates"));
        }
        if t.iter().any(|x| x.is_negative()) {
            return Err(config("simplex coordinates must be non-negative"));
        }
        if t.iter().sum::<Rat>() != Rat::one() {
            return Err(config("simplex coordinates must sum to one"));
        }
        Ok(SimplexParam { t })
    }

    /// The i-th vertex e_i of the simplex with r+1 coordinates.
    pub fn vertex(r: usize, i: usize) -> Result<Self> {
        if i > r {
            return Err(domain("vertex index out of range"));
        }
        let mut t = vzero(r + 1);
        t[i] = Rat::one();
        Self::new(t)
    }

    /// Lift of free coordinates (t_1..t_r): t_0 makes up the deficit.
    pub fn from_free(free: &[Rat]) -> Result<Self> {
        let sum: Rat = free.iter().sum();
        let mut t = Vec::with_capacity(free.len() + 1);
        t.push(Rat::one() - sum);
        t.extend_from_slice(free);
        Self::new(t)
    }

    pub fn coords(&self) -> &[Rat] {
        &self.t
    }

    /// The free coordinates (t_1..t_r).
    pub fn free(&self) -> &[Rat] {
        &self.t[1..]
    }

    pub fn rank(&self) -> usize {
        self.t.len() - 1
    }
}

/// A strictly dominant fractional shift, stored by its positive coordinates
/// against the fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonShift {
    coeffs: Vec<Rat>,
}

impl EpsilonShift {
    pub fn new(coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(config("shift needs at least one coordinate"));
        }
        if coeffs.iter().any(|c| !c.is_positive()) {
            return Err(config("shift coordinates must be strictly positive"));
        }
        Ok(EpsilonShift { coeffs })
    }

    pub fn uniform(rank: usize, value: Rat) -> Result<Self> {
        Self::new(vec![value; rank])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// Ambient coordinates Σ_i c_i ϖ_i.
    pub fn weight(&self, rs: &RootSystem) -> Result<Vec<Rat>> {
        if self.coeffs.len() != rs.rank {
            return Err(config("shift rank does not match the root system"));
        }
        rs.weight_from_coeffs(&self.coeffs)
    }
}

/// Torus weights of the r+1 added coordinate lines: the i-th line carries
/// −ϖ_i, with ϖ_0 = 0.
#[derive(Debug, Clone)]
pub struct MasterWeights {
    pub rank: usize,
    pub line_weights: Vec<Vec<Rat>>,
}

impl MasterWeights {
    pub fn new(rs: &RootSystem) -> Self {
        let mut line_weights = vec![vzero(rs.ambient)];
        for w in rs.fundamental_weights() {
            line_weights.push(w.iter().map(|x| -x).collect());
        }
        MasterWeights { rank: rs.rank, line_weights }
    }

    /// The negated line weights {0, ϖ_1, …, ϖ_r} as a weight configuration —
    /// the sign convention the stability layer expects.
    pub fn stability_config(&self) -> Result<WeightConfig> {
        let weights = self
            .line_weights
            .iter()
            .map(|w| ConfigWeight { coords: w.iter().map(|x| -x).collect(), mult: 1 })
            .collect();
        WeightConfig::new(self.rank, weights)
    }
}

/// Exponent matrix of the fractional embedding
/// z ↦ (η, η z_1^{-1}, …, η z_r^{-1}) with η = (z_1⋯z_r)^{1/(r+1)}:
/// row i lists the exponents of z_1..z_r in the i-th output coordinate.
/// Each column sums to zero, so the output coordinates multiply to one.
pub fn product_one_embedding(r: usize) -> Result<Mat<Rat>> {
    if r == 0 {
        return Err(domain("embedding needs rank at least 1"));
    }
    let share = rat(1, (r + 1) as i64);
    let mut rows = vec![vec![share.clone(); r]];
    for i in 0..r {
        let mut row = vec![share.clone(); r];
        row[i] -= Rat::one();
        rows.push(row);
    }
    Ok(Mat::from_rows(rows))
}

/// The torus level swept by the simplex: λ(t) = Σ_i t_i (ϖ_i + ε) with
/// ϖ_0 = 0. Strictly dominant for every t, since the coordinate of λ(t)
/// against α_i^∨ is t_i plus the shift's.
pub fn moment_shift(rs: &RootSystem, t: &SimplexParam, eps: &EpsilonShift) -> Result<Vec<Rat>> {
    if t.rank() != rs.rank {
        return Err(config("simplex rank does not match the root system"));
    }
    let eps_w = eps.weight(rs)?;
    Ok(level_from_free(rs, &eps_w, t.free()))
}

fn level_from_free(rs: &RootSystem, eps_w: &[Rat], free: &[Rat]) -> Vec<Rat> {
    let mut lam = eps_w.to_vec();
    for (ti, w) in free.iter().zip(rs.fundamental_weights()) {
        lam = vadd(&lam, &vscale(ti, w));
    }
    lam
}

/// s'_i = s_i / (1 − Σ s): the squared-norm parameters after the rescaling
/// that trades the affine-cone presentation for the projective one.
pub fn rescale(s: &[Rat]) -> Result<Vec<Rat>> {
    if s.iter().any(|x| x.is_negative()) {
        return Err(domain("norm parameters must be non-negative"));
    }
    let total: Rat = s.iter().sum();
    if total >= Rat::one() {
        return Err(domain("rescaling undefined: parameters sum to 1 or more"));
    }
    let den = Rat::one() - total;
    Ok(s.iter().map(|x| x / &den).collect())
}

/// Exact check of the rescaling identity: with s'_i = s_i/(1 − Σs),
/// verifies s'_i/(1 + Σs') = s_i coordinate-wise in rational arithmetic.
pub fn rescale_identity_check(s: &[Rat]) -> Result<bool> {
    let scaled = rescale(s)?;
    let back = Rat::one() + scaled.iter().sum::<Rat>();
    Ok(scaled.iter().zip(s).all(|(sp, si)| &(sp / &back) == si))
}

/// Smallest k/10 that is a certified upper bound on 1/√(2πr): the least k
/// with k²·2·π_lo·r ≥ 100 for the rational lower bound π_lo < π. Using an
/// upper bound makes the modeled value range contain the true one, so an
/// infeasibility certificate over the model is sound.
pub fn model_coefficient(r: usize) -> Rat {
    let pi_lo = rat(314_159, 100_000);
    let target = rat_from_usize(100);
    let two_pi_r = rat(2, 1) * &pi_lo * rat_from_usize(r);
    let mut k = 1i64;
    while rat(k * k, 1) * &two_pi_r < target {
        k += 1;
    }
    rat(k, 10)
}

fn rat_from_usize(n: usize) -> Rat {
    rat(n as i64, 1)
}

/// Certifies that value + ε − (convex combination of ϖ_1..ϖ_r) cannot vanish
/// while the value ranges over the model simplex conv{0, c·ϖ_i}, by exact
/// LP infeasibility in fundamental-weight coordinates. A degenerate shift
/// (some coordinate zero) fails the check; a shift with Σε ≥ 1 is outside
/// the regime the certificate is about.
pub fn boundary_nonvanishing_check(r: usize, eps: &[Rat]) -> Result<bool> {
    if r == 0 {
        return Err(domain("rank must be at least 1"));
    }
    if eps.len() != r {
        return Err(config("shift length does not match the rank"));
    }
    if eps.iter().any(|e| e.is_negative()) {
        return Err(config("shift coordinates must be non-negative"));
    }
    let total: Rat = eps.iter().sum();
    if total >= Rat::one() {
        return Err(domain("shift too large for the boundary certificate"));
    }
    if eps.iter().any(|e| e.is_zero()) {
        return Ok(false);
    }
    // Zero is attainable iff there are a, b ≥ 0 with Σa ≤ 1, Σb = 1 and
    // c·a_i − b_i = −ε_i for every i (coordinates against independent ϖ_i).
    // Variables: a_1..a_r, b_1..b_r, slack for Σa ≤ 1.
    let c = model_coefficient(r);
    let n = 2 * r + 1;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(r + 2);
    let mut rhs: Vec<Rat> = Vec::with_capacity(r + 2);
    for i in 0..r {
        let mut row = vzero(n);
        row[i] = c.clone();
        row[r + i] = -Rat::one();
        rows.push(row);
        rhs.push(-&eps[i]);
    }
    let mut sum_a = vzero(n);
    for x in sum_a.iter_mut().take(r) {
        *x = Rat::one();
    }
    sum_a[2 * r] = Rat::one();
    rows.push(sum_a);
    rhs.push(Rat::one());
    let mut sum_b = vzero(n);
    for x in sum_b.iter_mut().skip(r).take(r) {
        *x = Rat::one();
    }
    rows.push(sum_b);
    rhs.push(Rat::one());
    Ok(!feasible(&rows, &rhs).is_feasible())
}

/// Pulls a wall-and-chamber decomposition of weight space back to the free
/// coordinates (t_1..t_r) of the parameter simplex through t ↦ λ(t).
/// Chamber fingerprints are recomputed at λ(representative), so they agree
/// with the source decomposition wherever the map lands.
pub fn chamber_transport(
    rs: &RootSystem,
    cfg: &WeightConfig,
    dec: &ChamberDecomposition,
    eps: &EpsilonShift,
) -> Result<ChamberDecomposition> {
    let r = rs.rank;
    if cfg.ambient != rs.ambient || dec.region.ambient != rs.ambient {
        return Err(config("weight-space dimension mismatch"));
    }
    let eps_w = eps.weight(rs)?;

    // Injectivity on the simplex: the differences of the shifted vertices
    // are the fundamental weights, which must be linearly independent.
    let fw = rs.fundamental_weights().to_vec();
    if Mat::from_rows(fw.clone()).rank() != r {
        return Err(config("shifted simplex vertices are affinely dependent"));
    }

    // The source decomposition must cover the image of the simplex.
    for i in 0..=r {
        let vertex = SimplexParam::vertex(r, i)?;
        let image = level_from_free(rs, &eps_w, vertex.free());
        if !dec.region.contains(&image) {
            return Err(config("decomposition region does not contain the simplex image"));
        }
    }

    let simplex = free_simplex(r)?;

    // Pull each wall piece through the affine map: ⟨x,n⟩ ≤ c becomes
    // ⟨t, (⟨ϖ_i,n⟩)_i⟩ ≤ c − ⟨ε,n⟩, and likewise for equations.
    let mut by_piece: BTreeMap<Vec<Vec<Rat>>, (Polytope, Vec<u64>)> = BTreeMap::new();
    'walls: for wall in &dec.walls {
        let mut eqs: Vec<Hyperplane> = Vec::new();
        let mut ineqs: Vec<Halfspace> = Vec::new();
        for eq in &wall.piece.equations {
            let normal: Vec<Rat> = fw.iter().map(|w| vdot(w, &eq.normal)).collect();
            let offset = &eq.offset - vdot(&eps_w, &eq.normal);
            if normal.iter().all(|x| x.is_zero()) {
                if !offset.is_zero() {
                    continue 'walls;
                }
                continue;
            }
            eqs.push(Hyperplane { normal, offset });
        }
        for f in &wall.piece.facets {
            let normal: Vec<Rat> = fw.iter().map(|w| vdot(w, &f.normal)).collect();
            let offset = &f.offset - vdot(&eps_w, &f.normal);
            if normal.iter().all(|x| x.is_zero()) {
                if offset.is_negative() {
                    continue 'walls;
                }
                continue;
            }
            ineqs.push(Halfspace { normal, offset });
        }
        let Some(piece) = simplex.intersect(&eqs, &ineqs)? else {
            continue;
        };
        by_piece
            .entry(piece.vertices.clone())
            .or_insert_with(|| (piece, Vec::new()))
            .1
            .extend(wall.supports.iter().copied());
    }
    let walls: Vec<Wall> = by_piece
        .into_values()
        .map(|(piece, mut supports)| {
            supports.sort_unstable();
            supports.dedup();
            Wall { piece, supports }
        })
        .collect();

    let pieces: Vec<Polytope> = walls.iter().map(|w| w.piece.clone()).collect();
    let comps = decompose_region(&simplex, &pieces)?;
    let table = support_table(cfg)?;
    let chambers = comps
        .into_iter()
        .map(|cells| {
            let representative = cells[0].relint_point();
            let image = level_from_free(rs, &eps_w, &representative);
            let fingerprint = table.fingerprint(&image);
            Chamber { cells, representative, fingerprint }
        })
        .collect();
    Ok(ChamberDecomposition { region: simplex, walls, chambers })
}

/// The free-coordinate simplex {t ∈ R^r : t_i ≥ 0, Σ t_i ≤ 1}.
pub fn free_simplex(r: usize) -> Result<Polytope> {
    if r == 0 {
        return Err(domain("simplex needs rank at least 1"));
    }
    let mut ineqs: Vec<Halfspace> = Vec::new();
    for i in 0..r {
        let mut normal = vzero(r);
        normal[i] = -Rat::one();
        ineqs.push(Halfspace { normal, offset: Rat::zero() });
    }
    ineqs.push(Halfspace { normal: vec![Rat::one(); r], offset: Rat::one() });
    Polytope::from_h(r, &[], &ineqs)?.ok_or_else(|| domain("empty simplex"))
}

/// A uniformly seeded random simplex point with small rational coordinates.
pub fn random_simplex_param<R: Rng>(r: usize, rng: &mut R) -> SimplexParam {
    loop {
        let raw: Vec<Rat> = (0..=r).map(|_| rat(rng.gen_range(0..=9), 1)).collect();
        let total: Rat = raw.iter().sum();
        if total.is_zero() {
            continue;
        }
        let t: Vec<Rat> = raw.iter().map(|x| x / &total).collect();
        return SimplexParam::new(t).expect("normalized coordinates form a simplex point");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::chambers;
    use crate::polytope::box_region;
    use crate::rational::rat_i;
    use crate::roots::Series;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn embedding_exponents_pinned() {
        let m1 = product_one_embedding(1).unwrap();
        assert_eq!((m1.rows, m1.cols), (2, 1));
        assert_eq!(m1.row(0), [rat(1, 2)]);
        assert_eq!(m1.row(1), [rat(-1, 2)]);
        let m2 = product_one_embedding(2).unwrap();
        assert_eq!(m2.row(0), [rat(1, 3), rat(1, 3)]);
        assert_eq!(m2.row(1), [rat(-2, 3), rat(1, 3)]);
        assert_eq!(m2.row(2), [rat(1, 3), rat(-2, 3)]);
        for r in 1..=6 {
            let m = product_one_embedding(r).unwrap();
            for j in 0..r {
                let col_sum: Rat = m.col(j).iter().sum();
                assert!(col_sum.is_zero());
            }
        }
    }

    #[test]
    fn moment_shift_examples_and_interiority() {
        let rs = RootSystem::build(Series::A, 2).unwrap();
        let eps = EpsilonShift::uniform(2, rat(1, 10)).unwrap();
        let eps_w = eps.weight(&rs).unwrap();

        let t0 = SimplexParam::vertex(2, 0).unwrap();
        assert_eq!(moment_shift(&rs, &t0, &eps).unwrap(), eps_w);
        for i in 1..=2 {
            let ti = SimplexParam::vertex(2, i).unwrap();
            let expect = vadd(&rs.fundamental_weights()[i - 1], &eps_w);
            assert_eq!(moment_shift(&rs, &ti, &eps).unwrap(), expect);
        }

        // uniform t with ε = (ϖ_1+ϖ_2)/10: λ = (1/3 + 1/10)(ϖ_1+ϖ_2)
        let bary = SimplexParam::new(vec![rat(1, 3), rat(1, 3), rat(1, 3)]).unwrap();
        let lam = moment_shift(&rs, &bary, &eps).unwrap();
        let fw = rs.fundamental_weights();
        let expect = vscale(&rat(13, 30), &vadd(&fw[0], &fw[1]));
        assert_eq!(lam, expect);

        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..1000 {
            let t = random_simplex_param(2, &mut rng);
            let lam = moment_shift(&rs, &t, &eps).unwrap();
            for alpha in rs.simple_roots() {
                assert!(rs.pair(&lam, alpha).is_positive());
            }
        }
    }

    #[test]
    fn rescale_identity() {
        assert_eq!(rescale(&[rat(1, 4)]).unwrap(), vec![rat(1, 3)]);
        assert!(rescale_identity_check(&[rat(1, 4)]).unwrap());
        assert!(rescale_identity_check(&[Rat::zero(), Rat::zero()]).unwrap());
        // r = 3 with Σ = 7/8
        assert!(rescale_identity_check(&[rat(1, 2), rat(1, 4), rat(1, 8)]).unwrap());
        assert!(rescale_identity_check(&[rat(3, 4), rat(1, 9)]).unwrap());
        assert!(rescale(&[rat(1, 2), rat(1, 2)]).is_err());
        assert!(rescale(&[rat(3, 2)]).is_err());
        assert!(rescale(&[rat(-1, 4)]).is_err());
    }

    #[test]
    fn boundary_certificate() {
        assert_eq!(model_coefficient(1), rat(2, 5));
        assert_eq!(model_coefficient(2), rat(3, 10));
        // small shifts are certified
        assert!(boundary_nonvanishing_check(1, &[rat(1, 100)]).unwrap());
        assert!(boundary_nonvanishing_check(2, &[rat(1, 50), rat(1, 50)]).unwrap());
        // degenerate shift: zero attainable, check fails
        assert!(!boundary_nonvanishing_check(1, &[Rat::zero()]).unwrap());
        // a shift large enough to reach the value range: feasible, so false
        assert!(!boundary_nonvanishing_check(1, &[rat(7, 10)]).unwrap());
        // outside the small-shift regime entirely
        assert!(boundary_nonvanishing_check(1, &[rat_i(1)]).is_err());
        assert!(boundary_nonvanishing_check(1, &[rat(-1, 10)]).is_err());
        assert!(boundary_nonvanishing_check(2, &[rat(1, 50)]).is_err());
    }

    #[test]
    fn transport_point_wall_to_midpoint() {
        // a single weight at ϖ/2 + ε puts a point wall there; its preimage
        // under t ↦ ε + t·ϖ is the midpoint of the simplex edge
        let rs = RootSystem::build(Series::A, 1).unwrap();
        let eps = EpsilonShift::uniform(1, rat(1, 100)).unwrap();
        let eps_w = eps.weight(&rs).unwrap();
        let fw = rs.fundamental_weights()[0].clone();
        let w = vadd(&vscale(&rat(1, 2), &fw), &eps_w);
        let cfg = WeightConfig::new(1, vec![ConfigWeight { coords: w, mult: 1 }]).unwrap();
        let region = box_region(&[(rat_i(-2), rat_i(2)), (rat_i(-2), rat_i(2))]).unwrap();
        let dec = chambers(&cfg, &region).unwrap();
        assert_eq!(dec.walls.len(), 1);

        let transported = chamber_transport(&rs, &cfg, &dec, &eps).unwrap();
        assert_eq!(transported.walls.len(), 1);
        assert_eq!(transported.walls[0].piece.vertices, vec![vec![rat(1, 2)]]);
        assert_eq!(transported.chambers.len(), 2);
    }

    #[test]
    fn transport_master_config_rank_one() {
        let rs = RootSystem::build(Series::A, 1).unwrap();
        let cfg = MasterWeights::new(&rs).stability_config().unwrap();
        let eps = EpsilonShift::uniform(1, rat(1, 10)).unwrap();
        let region = box_region(&[(rat_i(-2), rat_i(2)), (rat_i(-2), rat_i(2))]).unwrap();
        let dec = chambers(&cfg, &region).unwrap();

        let transported = chamber_transport(&rs, &cfg, &dec, &eps).unwrap();
        // of the two point walls 0 and ϖ, only ϖ meets the image, at t = 9/10
        assert_eq!(transported.walls.len(), 1);
        assert_eq!(transported.walls[0].piece.vertices, vec![vec![rat(9, 10)]]);
        assert_eq!(transported.chambers.len(), 2);
        assert_ne!(transported.chambers[0].fingerprint, transported.chambers[1].fingerprint);

        // fingerprint transport: at further samples inside each chamber the
        // source fingerprint at λ(t) matches the chamber's
        let table = support_table(&cfg).unwrap();
        let eps_w = eps.weight(&rs).unwrap();
        let samples = [
            (0usize, rat(1, 10)),
            (0, rat(4, 5)),
            (1, rat(19, 20)),
            (1, rat(99, 100)),
        ];
        for (ci, t) in samples {
            let lam = level_from_free(&rs, &eps_w, &[t]);
            assert_eq!(table.fingerprint(&lam), transported.chambers[ci].fingerprint);
        }
    }

    #[test]
    fn transport_master_config_rank_two() {
        let rs = RootSystem::build(Series::A, 2).unwrap();
        let cfg = MasterWeights::new(&rs).stability_config().unwrap();
        let eps = EpsilonShift::uniform(2, rat(1, 10)).unwrap();
        let fw = rs.fundamental_weights().to_vec();
        // region: a large triangle in the zero-sum plane around the hull
        let verts = vec![
            vscale(&rat_i(-1), &vadd(&fw[0], &fw[1])),
            vscale(&rat_i(2), &fw[0]),
            vscale(&rat_i(2), &fw[1]),
        ];
        let region = Polytope::from_points(rs.ambient, &verts).unwrap();
        let dec = chambers(&cfg, &region).unwrap();

        let transported = chamber_transport(&rs, &cfg, &dec, &eps).unwrap();
        // only the edge conv{ϖ_1, ϖ_2} meets the image; its preimage is the
        // segment from (0, 4/5) to (4/5, 0)
        assert_eq!(transported.walls.len(), 1);
        assert_eq!(
            transported.walls[0].piece.vertices,
            vec![vec![rat(0, 1), rat(4, 5)], vec![rat(4, 5), rat(0, 1)]]
        );
        assert_eq!(transported.chambers.len(), 2);
        assert_ne!(transported.chambers[0].fingerprint, transported.chambers[1].fingerprint);

        // transported fingerprints agree with the source at the images of
        // random interior points of each chamber
        let table = support_table(&cfg).unwrap();
        let eps_w = eps.weight(&rs).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(62);
        for ch in &transported.chambers {
            for _ in 0..10 {
                let cell = &ch.cells[rng.gen_range(0..ch.cells.len())];
                // random convex combination of the cell's relint point and a
                // vertex keeps us inside the cell
                let a = rat(rng.gen_range(1..=9), 10);
                let v = &cell.vertices[rng.gen_range(0..cell.vertices.len())];
                let p = vadd(
                    &vscale(&a, &cell.relint_point()),
                    &vscale(&(Rat::one() - &a), v),
                );
                if !pieces_clear(&transported.walls, &p) {
                    continue;
                }
                let lam = level_from_free(&rs, &eps_w, &p);
                assert_eq!(table.fingerprint(&lam), ch.fingerprint);
            }
        }
    }

    fn pieces_clear(walls: &[Wall], p: &[Rat]) -> bool {
        walls.iter().all(|w| !w.piece.contains(p))
    }

    #[test]
    fn transport_without_walls_is_single_chamber() {
        // a weight far outside the simplex image produces no walls in Δ
        let rs = RootSystem::build(Series::A, 1).unwrap();
        let eps = EpsilonShift::uniform(1, rat(1, 100)).unwrap();
        let w = vscale(&rat_i(5), &rs.fundamental_weights()[0]);
        let cfg = WeightConfig::new(1, vec![ConfigWeight { coords: w, mult: 1 }]).unwrap();
        let region = box_region(&[(rat_i(-6), rat_i(6)), (rat_i(-6), rat_i(6))]).unwrap();
        let dec = chambers(&cfg, &region).unwrap();
        let transported = chamber_transport(&rs, &cfg, &dec, &eps).unwrap();
        assert!(transported.walls.is_empty());
        assert_eq!(transported.chambers.len(), 1);
    }

    #[test]
    fn transport_requires_covering_region() {
        let rs = RootSystem::build(Series::A, 1).unwrap();
        let cfg = MasterWeights::new(&rs).stability_config().unwrap();
        let eps = EpsilonShift::uniform(1, rat(1, 10)).unwrap();
        let region = box_region(&[(rat_i(0), rat(1, 100)), (rat(-1, 100), rat_i(0))]).unwrap();
        let dec = chambers(&cfg, &region).unwrap();
        assert!(chamber_transport(&rs, &cfg, &dec, &eps).is_err());
    }

    #[test]
    fn simplex_param_validation() {
        assert!(SimplexParam::new(vec![rat(1, 2), rat(1, 2)]).is_ok());
        assert!(SimplexParam::new(vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(SimplexParam::new(vec![rat(3, 2), rat(-1, 2)]).is_err());
        assert!(SimplexParam::new(vec![Rat::one()]).is_err());
        let p = SimplexParam::from_free(&[rat(1, 3), rat(1, 3)]).unwrap();
        assert_eq!(p.coords()[0], rat(1, 3));
        assert!(SimplexParam::from_free(&[rat(2, 3), rat(2, 3)]).is_err());
    }

    #[test]
    fn shift_validation() {
        assert!(EpsilonShift::new(vec![]).is_err());
        assert!(EpsilonShift::new(vec![Rat::zero()]).is_err());
        assert!(EpsilonShift::new(vec![rat(-1, 2)]).is_err());
        assert!(EpsilonShift::new(vec![rat(1, 7)]).is_ok());
    }
}
