//! Named verification suites behind the batch entry point. Every suite
//! draws its own seeded samples, re-derives each quantity along independent
//! routes, and reports counterexamples instead of panicking, so a failure
//! comes back with the data that produced it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{config, Result};
use crate::master::rescale_identity_check;
use crate::matrix_lie::random_unitary;
use crate::orbit::{closed_form_gram, kks_gram, moment_deviation, pullback_gram};
use crate::rational::{rat, rat_to_string, vadd, vscale, Rat};
use crate::reduction::{
    projection_composition_gap, random_triple, random_vectors, reduce_in_stages_report,
    triple_to_f64, vectors_to_f64,
};
use crate::roots::{RootSystem, Series, MAX_RANK};
use crate::stability::{
    directional_gap, is_semistable, is_stable, m_function, sweep_directions, ConfigWeight,
    WeightConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    OrbitMetric,
    MomentRecovery,
    ProjectionLemma,
    MOracle,
    Convexity,
    RescaleIdentity,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 6] = [
        SuiteKind::OrbitMetric,
        SuiteKind::MomentRecovery,
        SuiteKind::ProjectionLemma,
        SuiteKind::MOracle,
        SuiteKind::Convexity,
        SuiteKind::RescaleIdentity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::OrbitMetric => "orbit-metric",
            SuiteKind::MomentRecovery => "moment-recovery",
            SuiteKind::ProjectionLemma => "projection-lemma",
            SuiteKind::MOracle => "m-oracle",
            SuiteKind::Convexity => "convexity",
            SuiteKind::RescaleIdentity => "rescale-identity",
        }
    }

    pub fn parse(s: &str) -> Result<SuiteKind> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| config(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Cap on the root-system rank the sweeps visit.
    pub max_rank: usize,
    /// Base sample count; each suite scales it to its own cost.
    pub samples: usize,
    /// Float-route tolerance; exact routes ignore it.
    pub tolerance: f64,
    /// Deliberately corrupt the semistability oracle's sign before checking.
    /// A self-test hook: with this set, the m-oracle suite must fail and
    /// produce a witness, proving the suite can catch a sign regression.
    pub negate_m_sign: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            max_rank: 3,
            samples: 100,
            tolerance: 1e-9,
            negate_m_sign: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub counterexamples: Vec<String>,
}

const MAX_WITNESSES: usize = 5;

impl SuiteReport {
    fn new(kind: SuiteKind) -> Self {
        SuiteReport { suite: kind.name(), cases: 0, failures: 0, counterexamples: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_WITNESSES {
                self.counterexamples.push(witness());
            }
        }
    }
}

pub fn run_suite(kind: SuiteKind, cfg: &SuiteConfig) -> SuiteReport {
    // splitmix spacing gives every suite its own stream under one seed
    let stream = cfg.seed.wrapping_add((kind as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    match kind {
        SuiteKind::OrbitMetric => orbit_metric(cfg, &mut rng),
        SuiteKind::MomentRecovery => moment_recovery(cfg, &mut rng),
        SuiteKind::ProjectionLemma => projection_lemma(cfg, &mut rng),
        SuiteKind::MOracle => m_oracle(cfg, &mut rng),
        SuiteKind::Convexity => convexity(cfg, &mut rng),
        SuiteKind::RescaleIdentity => rescale_identity(cfg, &mut rng),
    }
}

pub fn run_all(cfg: &SuiteConfig) -> Vec<SuiteReport> {
    SuiteKind::ALL.into_iter().map(|k| run_suite(k, cfg)).collect()
}

fn vstr(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(rat_to_string).collect();
    format!("({})", parts.join(", "))
}

/// Random dominant weight supported exactly on the given chamber face.
fn random_face_weight<R: Rng>(rs: &RootSystem, face: &crate::roots::Face, rng: &mut R) -> Vec<Rat> {
    let coeffs: Vec<Rat> = (0..rs.rank)
        .map(|i| {
            if face.vanishing.contains(&i) {
                Rat::from_integer(0.into())
            } else {
                rat(rng.gen_range(1..=9), rng.gen_range(1..=4))
            }
        })
        .collect();
    rs.weight_from_coeffs(&coeffs).expect("coefficient count matches rank")
}

/// The three Gram routes for the orbit directions agree exactly on every
/// chamber face.
fn orbit_metric(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut report = SuiteReport::new(SuiteKind::OrbitMetric);
    let per_face = (cfg.samples / 20).max(1);
    for rank in 1..=cfg.max_rank.min(MAX_RANK) {
        let rs = RootSystem::build(Series::A, rank).expect("supported rank");
        for face in rs.faces() {
            for _ in 0..per_face {
                let lam = random_face_weight(&rs, &face, rng);
                let outcome = (|| -> Result<bool> {
                    let a = pullback_gram(&rs, &lam, &face)?;
                    let b = kks_gram(&rs, &lam, &face)?;
                    let c = closed_form_gram(&rs, &lam, &face)?;
                    Ok(a == c && b == c)
                })();
                report.record(matches!(outcome, Ok(true)), || {
                    format!(
                        "rank {rank}, face vanishing {:?}, lam {}: gram routes disagree",
                        face.vanishing,
                        vstr(&lam)
                    )
                });
            }
        }
    }
    report
}

/// The recovered moment matrix of an embedded orbit point matches
/// -k diag(lam) k* within tolerance.
fn moment_recovery(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut report = SuiteReport::new(SuiteKind::MomentRecovery);
    for _ in 0..cfg.samples {
        let rank = rng.gen_range(1..=cfg.max_rank.min(MAX_RANK));
        let rs = RootSystem::build(Series::A, rank).expect("supported rank");
        let coeffs: Vec<Rat> = (0..rank).map(|_| rat(rng.gen_range(0..=6), 1)).collect();
        let lam = rs.weight_from_coeffs(&coeffs).expect("coefficient count matches rank");
        let k = random_unitary(rs.ambient, rng);
        let dev = moment_deviation(&rs, &lam, &k).expect("dominant weight embeds");
        report.record(dev <= cfg.tolerance, || {
            format!("rank {rank}, lam {}: moment deviation {dev:.3e}", vstr(&lam))
        });
    }
    report
}

/// Projecting away two direction groups in one step or in two agrees:
/// to tolerance along the float route, identically along the exact route.
fn projection_lemma(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut report = SuiteReport::new(SuiteKind::ProjectionLemma);
    for _ in 0..cfg.samples {
        let half = rng.gen_range(1..=5);
        let t = random_triple(half, rng);
        let v = random_vectors(t.dim, rng.gen_range(1..=2), rng);
        let w = random_vectors(t.dim, rng.gen_range(1..=2), rng);
        let tf = triple_to_f64(&t);
        let gap = projection_composition_gap(&tf.g, &vectors_to_f64(&v), &vectors_to_f64(&w));
        report.record(gap <= 1e-10, || {
            format!("dim {}: float projection gap {gap:.3e}", t.dim)
        });
    }
    for _ in 0..(cfg.samples / 10).max(1) {
        let half = rng.gen_range(1..=3);
        let t = random_triple(half, rng);
        let v = random_vectors(t.dim, 1, rng);
        let w = random_vectors(t.dim, 1, rng);
        let gap = projection_composition_gap(&t.g, &v, &w);
        report.record(gap == 0.0, || {
            format!("dim {}: exact projection gap {gap:.3e}", t.dim)
        });
    }
    for _ in 0..(cfg.samples / 20).max(1) {
        let half = rng.gen_range(2..=3);
        let t = random_triple(half, rng);
        let w1 = random_vectors(t.dim, 1, rng);
        let w2 = random_vectors(t.dim, 1, rng);
        let probes = random_vectors(t.dim, 2, rng);
        let outcome = reduce_in_stages_report(&t, &w1, &w2, &probes);
        let ok = outcome
            .as_ref()
            .map(|r| r.span_match && r.probe_gap == 0.0)
            .unwrap_or(false);
        report.record(ok, || format!("dim {}: staged reduction disagrees", t.dim));
    }
    report
}

/// Small random weight configuration for the semistability suites.
fn random_config<R: Rng>(rng: &mut R) -> WeightConfig {
    loop {
        let rank = rng.gen_range(1..=2);
        let count = rng.gen_range(3..=6);
        let weights: Vec<ConfigWeight> = (0..count)
            .map(|_| ConfigWeight {
                coords: (0..rank).map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=2))).collect(),
                mult: 1,
            })
            .collect();
        if let Ok(cfg) = WeightConfig::new(rank, weights) {
            return cfg;
        }
    }
}

fn random_point<R: Rng>(ambient: usize, rng: &mut R) -> Vec<Rat> {
    (0..ambient).map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect()
}

/// The numerical function, the exact semistability decisions, and the
/// directional sweep all tell the same story.
fn m_oracle(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut report = SuiteReport::new(SuiteKind::MOracle);
    let runs = (cfg.samples / 2).max(1);
    for _ in 0..runs {
        let wc = random_config(rng);
        let full = wc.full_support();
        let lam = random_point(wc.ambient, rng);
        let outcome = (|| -> Result<(i8, bool, bool, f64, f64)> {
            let m = m_function(&wc, full, &lam)?;
            let sign = if cfg.negate_m_sign { -m.sign } else { m.sign };
            let ss = is_semistable(&wc, full, &lam)?;
            let st = is_stable(&wc, full, &lam)?;
            let dirs = sweep_directions(&wc, full, &lam, &m, 20, rng)?;
            let mut best = f64::NEG_INFINITY;
            for d in &dirs {
                best = best.max(directional_gap(&wc, full, &lam, d)?.value());
            }
            Ok((sign, ss, st, m.value(), best))
        })();
        match outcome {
            Ok((sign, ss, st, value, best)) => {
                let value = f64::from(sign) * value.abs();
                let sign_consistent = ss == (sign <= 0) && st == (sign < 0);
                let sweep_consistent =
                    best <= value + cfg.tolerance && (best - value).abs() <= cfg.tolerance;
                report.record(sign_consistent && sweep_consistent, || {
                    format!(
                        "lam {}, {} weights: sign {sign}, ss {ss}, stable {st}, \
                         m {value:.6}, sweep sup {best:.6}",
                        vstr(&lam),
                        wc.len()
                    )
                });
            }
            Err(e) => report.record(false, || format!("oracle error: {e}")),
        }
    }
    report
}

/// Midpoint convexity of the numerical function along random segments.
fn convexity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut report = SuiteReport::new(SuiteKind::Convexity);
    for _ in 0..cfg.samples {
        let wc = random_config(rng);
        let full = wc.full_support();
        let a = random_point(wc.ambient, rng);
        let b = random_point(wc.ambient, rng);
        let mid = vscale(&rat(1, 2), &vadd(&a, &b));
        let outcome = (|| -> Result<(f64, f64, f64)> {
            Ok((
                m_function(&wc, full, &a)?.value(),
                m_function(&wc, full, &b)?.value(),
                m_function(&wc, full, &mid)?.value(),
            ))
        })();
        match outcome {
            Ok((ma, mb, mm)) => {
                report.record(mm <= (ma + mb) / 2.0 + cfg.tolerance, || {
                    format!(
                        "a {}, b {}: m(mid) {mm:.6} > avg of {ma:.6}, {mb:.6}",
                        vstr(&a),
                        vstr(&b)
                    )
                });
            }
            Err(e) => report.record(false, || format!("convexity error: {e}")),
        }
    }
    report
}

/// The rescaling identity holds on an exhaustive small grid and at random
/// parameters.
fn rescale_identity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut report = SuiteReport::new(SuiteKind::RescaleIdentity);
    // exhaustive grid: r <= 3 coordinates with denominator 8, sum < 1
    for r in 1..=3usize {
        let mut idx = vec![0i64; r];
        loop {
            if idx.iter().sum::<i64>() < 8 {
                let s: Vec<Rat> = idx.iter().map(|&k| rat(k, 8)).collect();
                let ok = matches!(rescale_identity_check(&s), Ok(true));
                report.record(ok, || format!("grid s {}: identity fails", vstr(&s)));
            }
            let mut i = 0;
            loop {
                if i == r {
                    break;
                }
                idx[i] += 1;
                if idx[i] < 8 {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == r {
                break;
            }
        }
    }
    for _ in 0..cfg.samples {
        let r = rng.gen_range(1..=4);
        let s: Vec<Rat> = (0..r).map(|_| rat(rng.gen_range(0..=9), 40)).collect();
        let ok = matches!(rescale_identity_check(&s), Ok(true));
        report.record(ok, || format!("random s {}: identity fails", vstr(&s)));
    }
    report
}
