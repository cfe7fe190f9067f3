use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use implosion_core::linalg::Mat;
use implosion_core::polytope::{box_region, Hyperplane, Polytope};
use implosion_core::rational::{parse_rat, rat_to_string, to_f64, vdot, vsub, Rat};
use implosion_core::stability::{ConfigWeight, Fingerprint, WeightConfig};
use implosion_core::Error;

use crate::Mode;

pub fn render(mode: Mode, x: &Rat) -> String {
    match mode {
        Mode::Exact => rat_to_string(x),
        Mode::Float => to_f64(x).to_string(),
    }
}

pub fn render_vec(mode: Mode, v: &[Rat]) -> Vec<String> {
    v.iter().map(|x| render(mode, x)).collect()
}

/// sha-256 over the class ids in ascending order, big-endian.
pub fn fingerprint_hash(fp: &Fingerprint) -> String {
    let mut h = Sha256::new();
    for id in fp {
        h.update(id.to_be_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigIn {
    pub rank: usize,
    pub weights: Vec<WeightIn>,
    /// Optional box region as [lo, hi] rational pairs per coordinate;
    /// defaults to the bounding box of the weights.
    #[serde(default)]
    pub region: Option<Vec<[String; 2]>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightIn {
    pub w: Vec<String>,
    #[serde(default = "one")]
    pub mult: u32,
}

fn one() -> u32 {
    1
}

impl ConfigIn {
    pub fn build(&self) -> Result<(WeightConfig, Polytope), Error> {
        let weights = self
            .weights
            .iter()
            .map(|w| {
                let coords =
                    w.w.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>()?;
                Ok(ConfigWeight { coords, mult: w.mult })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let cfg = WeightConfig::new(self.rank, weights)?;
        let boxed = match &self.region {
            Some(raw) => {
                if raw.len() != cfg.ambient {
                    return Err(Error::Config(format!(
                        "region has {} coordinate bounds, weights have {}",
                        raw.len(),
                        cfg.ambient
                    )));
                }
                let bounds = raw
                    .iter()
                    .map(|[lo, hi]| Ok((parse_rat(lo)?, parse_rat(hi)?)))
                    .collect::<Result<Vec<_>, Error>>()?;
                box_region(&bounds)?
            }
            None => {
                let bounds: Vec<(Rat, Rat)> = (0..cfg.ambient)
                    .map(|j| {
                        let col: Vec<&Rat> =
                            cfg.weights.iter().map(|w| &w.coords[j]).collect();
                        let lo = col.iter().min().unwrap();
                        let hi = col.iter().max().unwrap();
                        ((*lo).clone(), (*hi).clone())
                    })
                    .collect();
                box_region(&bounds)?
            }
        };
        // The arrangement lives in the affine span of the weights; clipping the
        // box to it keeps wall pieces codimension one inside the region.
        let base = &cfg.weights[0].coords;
        let dirs: Vec<Vec<Rat>> =
            cfg.weights.iter().map(|w| vsub(&w.coords, base)).collect();
        let eqs: Vec<Hyperplane> = Mat::from_rows(dirs)
            .nullspace()
            .into_iter()
            .map(|n| {
                let offset = vdot(&n, base);
                Hyperplane { normal: n, offset }
            })
            .collect();
        let region = boxed.intersect(&eqs, &[])?.ok_or_else(|| {
            Error::Config("region does not meet the affine span of the weights".into())
        })?;
        Ok((cfg, region))
    }
}

#[derive(Serialize)]
pub struct LinearRelation {
    pub normal: Vec<String>,
    pub offset: String,
}

/// H-representation: equations carve the affine hull, facets bound inside it.
#[derive(Serialize)]
pub struct HRep {
    pub equations: Vec<LinearRelation>,
    pub facets: Vec<LinearRelation>,
}

pub fn hrep(mode: Mode, p: &Polytope) -> HRep {
    HRep {
        equations: p
            .equations
            .iter()
            .map(|e| LinearRelation {
                normal: render_vec(mode, &e.normal),
                offset: render(mode, &e.offset),
            })
            .collect(),
        facets: p
            .facets
            .iter()
            .map(|f| LinearRelation {
                normal: render_vec(mode, &f.normal),
                offset: render(mode, &f.offset),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct FaceReport {
    pub vanishing: Vec<usize>,
    pub dim_face: usize,
    pub n_face_roots: usize,
    pub dim_commutator: usize,
    pub dim_stratum: usize,
}

#[derive(Serialize)]
pub struct RootsReport {
    pub series: String,
    pub rank: usize,
    pub ambient: usize,
    pub positive_root_count: usize,
    pub weyl_order: usize,
    pub dim_k: usize,
    pub simple_roots: Vec<Vec<String>>,
    pub simple_coroots: Vec<Vec<String>>,
    pub positive_roots: Vec<Vec<String>>,
    pub fundamental_weights: Vec<Vec<String>>,
    pub cartan: Vec<Vec<String>>,
    pub faces: Vec<FaceReport>,
}

#[derive(Serialize)]
pub struct WallReport {
    pub vertices: Vec<Vec<String>>,
    pub hrep: HRep,
    pub degenerate_supports: Vec<u64>,
}

#[derive(Serialize)]
pub struct ChamberReport {
    pub representative: Vec<String>,
    pub cells: usize,
    pub fingerprint_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semistable_classes: Option<Vec<u64>>,
}

#[derive(Serialize)]
pub struct ChamberVerification {
    pub samples_per_chamber: usize,
    pub drift_failures: usize,
}

#[derive(Serialize)]
pub struct ChambersReport {
    pub rank: usize,
    pub ambient: usize,
    pub weight_count: usize,
    pub support_class_count: usize,
    pub region: HRep,
    pub wall_count: usize,
    pub chamber_count: usize,
    pub walls: Vec<WallReport>,
    pub chambers: Vec<ChamberReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<ChamberVerification>,
}

#[derive(Serialize)]
pub struct SuiteEntry {
    pub suite: String,
    pub cases: usize,
    pub failures: usize,
    pub passed: bool,
    pub counterexamples: Vec<String>,
}

#[derive(Serialize)]
pub struct VerifyAllReport {
    pub seed: u64,
    pub max_rank: usize,
    pub samples: usize,
    pub tolerance: f64,
    pub suites: Vec<SuiteEntry>,
    pub passed: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MasterSpecIn {
    pub r: usize,
    /// Fundamental-weight coefficients of the shift, as rational strings.
    pub epsilon: Vec<String>,
    /// Exhaustive s-grid denominator: all s with coordinates k/d, Σs < 1.
    #[serde(default = "default_grid")]
    pub grid_denominator: u32,
    /// Extra random s-samples on top of the grid.
    #[serde(default = "default_samples")]
    pub random_samples: usize,
}

fn default_grid() -> u32 {
    8
}

fn default_samples() -> usize {
    100
}

#[derive(Serialize)]
pub struct MasterReport {
    pub r: usize,
    pub epsilon: Vec<String>,
    pub embedding_columns_sum_zero: bool,
    pub rescale_cases: usize,
    pub rescale_failures: usize,
    pub rescale_counterexamples: Vec<Vec<String>>,
    pub boundary_nonvanishing: bool,
    pub moment_shift_cases: usize,
    pub moment_shift_failures: usize,
    pub passed: bool,
}
