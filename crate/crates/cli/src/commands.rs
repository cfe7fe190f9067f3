use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use implosion_core::arrangement::{chambers, Chamber, ChamberDecomposition};
use implosion_core::master::{
    boundary_nonvanishing_check, moment_shift, product_one_embedding, random_simplex_param,
    rescale_identity_check, EpsilonShift,
};
use implosion_core::rational::{parse_rat, rat, rat_to_string, vadd, vscale, vzero, Rat};
use implosion_core::roots::{RootSystem, Series, MAX_RANK};
use implosion_core::stability::support_table;
use implosion_core::suites::{run_all, run_suite, SuiteConfig, SuiteKind};

use crate::dto::{
    fingerprint_hash, hrep, render_vec, ChamberReport, ChamberVerification, ChambersReport,
    ConfigIn, FaceReport, MasterReport, MasterSpecIn, RootsReport, SuiteEntry, VerifyAllReport,
    WallReport,
};
use crate::{Cli, Command, Mode};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] implosion_core::Error),
    #[error("{path}: {err}")]
    Parse { path: String, err: serde_json::Error },
    #[error("{path}: {err}")]
    Io { path: String, err: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

/// Dispatch; Ok(false) means the report was produced but a check failed.
pub fn run(cli: &Cli) -> Result<bool, CliError> {
    if cli.mode == Mode::Float && (cli.tolerance.is_nan() || cli.tolerance <= 0.0) {
        return Err(CliError::Usage("float mode requires a positive tolerance".into()));
    }
    let (body, passed) = match &cli.command {
        Command::Roots { series, rank } => (cmd_roots(cli, series, *rank)?, true),
        Command::Chambers { config, verify, supports } => {
            cmd_chambers(cli, config, *verify, *supports)?
        }
        Command::VerifyAll { suite, rank, samples, negate_m_sign } => {
            cmd_verify_all(cli, suite.as_deref(), *rank, *samples, *negate_m_sign)?
        }
        Command::MasterCheck { spec } => cmd_master_check(cli, spec)?,
    };
    emit(cli.out.as_deref(), &body)?;
    Ok(passed)
}

fn emit(out: Option<&Path>, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, format!("{body}\n"))
            .map_err(|err| CliError::Io { path: path.display().to_string(), err }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(body.as_bytes()).and_then(|_| stdout.write_all(b"\n")) {
                Ok(()) => Ok(()),
                // a closed reading end is not this report's problem
                Err(err) if err.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(err) => Err(CliError::Io { path: "<stdout>".into(), err }),
            }
        }
    }
}

fn json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("report serialization cannot fail")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let raw = fs::read_to_string(path)
        .map_err(|err| CliError::Io { path: path.display().to_string(), err })?;
    serde_json::from_str(&raw)
        .map_err(|err| CliError::Parse { path: path.display().to_string(), err })
}

fn cmd_roots(cli: &Cli, series: &str, rank: usize) -> Result<String, CliError> {
    let rs = RootSystem::parse(series, rank)?;
    let m = cli.mode;
    let faces = rs
        .faces()
        .iter()
        .map(|f| {
            let dims = rs.decomposition_dims(f);
            FaceReport {
                vanishing: f.wall_labels(),
                dim_face: dims.dim_face,
                n_face_roots: dims.n_face_roots,
                dim_commutator: dims.dim_commutator,
                dim_stratum: dims.dim_stratum,
            }
        })
        .collect();
    let report = RootsReport {
        series: rs.series.letter().to_string(),
        rank: rs.rank,
        ambient: rs.ambient,
        positive_root_count: rs.positive_roots().len(),
        weyl_order: rs.weyl_order(),
        dim_k: rs.rank + 2 * rs.positive_roots().len(),
        simple_roots: rs.simple_roots().iter().map(|r| render_vec(m, r)).collect(),
        simple_coroots: rs
            .simple_roots()
            .iter()
            .map(|r| render_vec(m, &rs.coroot(r)))
            .collect(),
        positive_roots: rs.positive_roots().iter().map(|r| render_vec(m, r)).collect(),
        fundamental_weights: rs
            .fundamental_weights()
            .iter()
            .map(|w| render_vec(m, w))
            .collect(),
        cartan: rs.cartan().iter().map(|row| render_vec(m, row)).collect(),
        faces,
    };
    Ok(json(&report))
}

/// A point of the chamber strictly off every wall: random positive vertex
/// combinations of a random cell, falling back to the stored representative.
fn sample_chamber<R: Rng>(ch: &Chamber, dec: &ChamberDecomposition, rng: &mut R) -> Vec<Rat> {
    for _ in 0..100 {
        let cell = &ch.cells[rng.gen_range(0..ch.cells.len())];
        let weights: Vec<Rat> =
            cell.vertices.iter().map(|_| rat(rng.gen_range(1..=9), 1)).collect();
        let total: Rat = weights.iter().sum();
        let mut p = vzero(cell.ambient);
        for (w, v) in weights.iter().zip(&cell.vertices) {
            p = vadd(&p, &vscale(&(w / &total), v));
        }
        if dec.walls.iter().all(|w| !w.piece.contains(&p)) {
            return p;
        }
    }
    ch.representative.clone()
}

fn cmd_chambers(
    cli: &Cli,
    path: &Path,
    verify: bool,
    supports: bool,
) -> Result<(String, bool), CliError> {
    let parsed: ConfigIn = read_json(path)?;
    let (cfg, region) = parsed.build()?;
    let dec = chambers(&cfg, &region)?;
    let table = support_table(&cfg)?;
    let m = cli.mode;

    let walls = dec
        .walls
        .iter()
        .map(|w| WallReport {
            vertices: w.piece.vertices.iter().map(|v| render_vec(m, v)).collect(),
            hrep: hrep(m, &w.piece),
            degenerate_supports: w.supports.clone(),
        })
        .collect();
    let chambers_out = dec
        .chambers
        .iter()
        .map(|c| ChamberReport {
            representative: render_vec(m, &c.representative),
            cells: c.cells.len(),
            fingerprint_sha256: fingerprint_hash(&c.fingerprint),
            semistable_classes: supports.then(|| c.fingerprint.iter().copied().collect()),
        })
        .collect();

    let verification = if verify {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let per = 20usize;
        let mut drift = 0usize;
        for ch in &dec.chambers {
            for _ in 0..per {
                let p = sample_chamber(ch, &dec, &mut rng);
                if table.fingerprint(&p) != ch.fingerprint {
                    drift += 1;
                }
            }
        }
        Some(ChamberVerification { samples_per_chamber: per, drift_failures: drift })
    } else {
        None
    };
    let passed = verification.as_ref().is_none_or(|v| v.drift_failures == 0);

    let report = ChambersReport {
        rank: cfg.rank,
        ambient: cfg.ambient,
        weight_count: cfg.len(),
        support_class_count: table.class_count(),
        region: hrep(m, &dec.region),
        wall_count: dec.walls.len(),
        chamber_count: dec.chambers.len(),
        walls,
        chambers: chambers_out,
        verification,
    };
    Ok((json(&report), passed))
}

fn cmd_verify_all(
    cli: &Cli,
    suite: Option<&str>,
    rank: Option<usize>,
    samples: Option<usize>,
    negate_m_sign: bool,
) -> Result<(String, bool), CliError> {
    let mut cfg = SuiteConfig { seed: cli.seed, tolerance: cli.tolerance, ..SuiteConfig::default() };
    if let Some(r) = rank {
        if r == 0 {
            return Err(CliError::Usage("rank must be at least 1".into()));
        }
        cfg.max_rank = r;
    }
    if let Some(s) = samples {
        if s == 0 {
            return Err(CliError::Usage("sample count must be at least 1".into()));
        }
        cfg.samples = s;
    }
    cfg.negate_m_sign = negate_m_sign;

    let reports = match suite {
        Some(name) => vec![run_suite(SuiteKind::parse(name)?, &cfg)],
        None => run_all(&cfg),
    };
    let suites: Vec<SuiteEntry> = reports
        .iter()
        .map(|r| SuiteEntry {
            suite: r.suite.to_string(),
            cases: r.cases,
            failures: r.failures,
            passed: r.passed(),
            counterexamples: r.counterexamples.clone(),
        })
        .collect();
    let passed = reports.iter().all(|r| r.passed());
    let report = VerifyAllReport {
        seed: cfg.seed,
        max_rank: cfg.max_rank,
        samples: cfg.samples,
        tolerance: cfg.tolerance,
        suites,
        passed,
    };
    Ok((json(&report), passed))
}

const MAX_GRID_POINTS: u128 = 200_000;
const MAX_COUNTEREXAMPLES: usize = 5;

fn cmd_master_check(cli: &Cli, path: &Path) -> Result<(String, bool), CliError> {
    let spec: MasterSpecIn = read_json(path)?;
    if spec.r == 0 {
        return Err(CliError::Usage("r must be at least 1".into()));
    }
    if spec.grid_denominator == 0 {
        return Err(CliError::Usage("grid denominator must be at least 1".into()));
    }
    let eps: Vec<Rat> =
        spec.epsilon.iter().map(|s| parse_rat(s)).collect::<Result<_, _>>()?;
    if eps.len() != spec.r {
        return Err(CliError::Usage(format!(
            "epsilon has {} entries for r = {}",
            eps.len(),
            spec.r
        )));
    }

    let emb = product_one_embedding(spec.r)?;
    let embedding_columns_sum_zero =
        (0..emb.cols).all(|j| emb.col(j).iter().sum::<Rat>() == rat(0, 1));

    // exhaustive s-grid with coordinates k/d and Σs < 1, then random extras
    let den = spec.grid_denominator as i64;
    let grid_points = (den as u128 + 1)
        .checked_pow(spec.r.min(64) as u32)
        .filter(|&n| n <= MAX_GRID_POINTS)
        .ok_or_else(|| {
            implosion_core::Error::Capability(format!(
                "s-grid of (denominator+1)^r points exceeds {MAX_GRID_POINTS}"
            ))
        })?;
    let _ = grid_points;
    let mut rescale_cases = 0usize;
    let mut rescale_failures = 0usize;
    let mut rescale_counterexamples: Vec<Vec<String>> = Vec::new();
    let mut check_s = |s: &[Rat]| -> Result<(), CliError> {
        rescale_cases += 1;
        if !rescale_identity_check(s)? {
            rescale_failures += 1;
            if rescale_counterexamples.len() < MAX_COUNTEREXAMPLES {
                rescale_counterexamples.push(s.iter().map(rat_to_string).collect());
            }
        }
        Ok(())
    };
    let mut digits = vec![0i64; spec.r];
    loop {
        if digits.iter().sum::<i64>() < den {
            let s: Vec<Rat> = digits.iter().map(|&k| rat(k, den)).collect();
            check_s(&s)?;
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                break;
            }
            digits[i] += 1;
            if digits[i] <= den {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            break;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let cap = (39 / spec.r as i64).max(0);
    for _ in 0..spec.random_samples {
        let s: Vec<Rat> = (0..spec.r).map(|_| rat(rng.gen_range(0..=cap), 40)).collect();
        check_s(&s)?;
    }

    let boundary_nonvanishing = boundary_nonvanishing_check(spec.r, &eps)?;

    // moment shifts stay strictly dominant over random simplex parameters
    let mut moment_shift_cases = 0usize;
    let mut moment_shift_failures = 0usize;
    if spec.r <= MAX_RANK {
        if let Ok(shift) = EpsilonShift::new(eps.clone()) {
            let rs = RootSystem::build(Series::A, spec.r)?;
            for _ in 0..200 {
                let t = random_simplex_param(spec.r, &mut rng);
                let lam = moment_shift(&rs, &t, &shift)?;
                moment_shift_cases += 1;
                if !rs.simple_roots().iter().all(|a| rs.pair(&lam, a) > rat(0, 1)) {
                    moment_shift_failures += 1;
                }
            }
        }
    }

    let passed = embedding_columns_sum_zero
        && rescale_failures == 0
        && boundary_nonvanishing
        && moment_shift_failures == 0;
    let report = MasterReport {
        r: spec.r,
        epsilon: spec.epsilon.clone(),
        embedding_columns_sum_zero,
        rescale_cases,
        rescale_failures,
        rescale_counterexamples,
        boundary_nonvanishing,
        moment_shift_cases,
        moment_shift_failures,
        passed,
    };
    Ok((json(&report), passed))
}
