//! Weights and multiplicities of irreducible highest-weight representations.
//!
//! Multiplicities come from the Freudenthal recursion, evaluated only on
//! dominant weights and extended over Weyl orbits; the Weyl dimension
//! formula is computed independently so the two can be played against each
//! other in tests.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{config, domain, Result};
use crate::rational::{rat_i, vadd, vscale, Rat};
use crate::roots::RootSystem;

/// One weight of a representation with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMult {
    pub weight: Vec<Rat>,
    pub mult: u64,
}

/// A fully expanded irreducible representation: highest weight, dimension,
/// and every weight with multiplicity (sorted lexicographically).
#[derive(Clone, Debug)]
pub struct Irrep {
    pub highest: Vec<Rat>,
    pub dim: u64,
    pub weights: Vec<WeightMult>,
}

impl Irrep {
    pub fn multiplicity_of(&self, w: &[Rat]) -> u64 {
        self.weights
            .iter()
            .find(|wm| wm.weight[..] == *w)
            .map(|wm| wm.mult)
            .unwrap_or(0)
    }
}

/// Dimension by the Weyl product formula.  `coeffs` are the nonnegative
/// integer coordinates of the highest weight in the fundamental-weight
/// basis.
pub fn weyl_dim(rs: &RootSystem, coeffs: &[i64]) -> Result<u64> {
    let lam = highest_weight(rs, coeffs)?;
    let rho = rs.rho();
    let lam_rho = vadd(&lam, &rho);
    let mut num = rat_i(1);
    let mut den = rat_i(1);
    for a in rs.positive_roots() {
        num *= rs.pair(&lam_rho, a);
        den *= rs.pair(&rho, a);
    }
    let q = num / den;
    if !q.is_integer() {
        return Err(domain("Weyl dimension did not come out integral"));
    }
    q.to_integer()
        .to_u64()
        .ok_or_else(|| domain("representation dimension overflows u64"))
}

/// All weights of the irreducible representation with the given
/// fundamental-weight coordinates, via Freudenthal's recursion.
pub fn irrep_weights(rs: &RootSystem, coeffs: &[i64]) -> Result<Irrep> {
    let lam = highest_weight(rs, coeffs)?;
    let rho = rs.rho();
    let lam_rho = vadd(&lam, &rho);
    let lam_rho_sq = rs.inner(&lam_rho, &lam_rho);

    // The lowest weight is the antidominant Weyl translate of lam; every
    // weight of the representation sits between the two, so the difference
    // bounds the simple-root coordinates of lam - mu componentwise.
    let lowest = rs.antidominant_representative(&lam);
    let diff = crate::rational::vsub(&lam, &lowest);
    let bounds_r = rs
        .simple_coefficients(&diff)
        .ok_or_else(|| domain("weight difference left the root lattice"))?;
    let mut bounds = Vec::with_capacity(rs.rank);
    for b in &bounds_r {
        if !b.is_integer() || b.is_negative() {
            return Err(domain("weight difference is not a nonnegative root-lattice vector"));
        }
        bounds.push(b.to_integer().to_u64().unwrap());
    }

    // Enumerate lam - sum k_i alpha_i over the componentwise box, keep the
    // dominant ones, and order them by level (total root-height removed)
    // so each Freudenthal evaluation only consults already-known values.
    let mut dominants: Vec<(u64, Vec<Rat>)> = Vec::new();
    let mut idx = vec![0u64; rs.rank];
    loop {
        let mut mu = lam.clone();
        let mut level = 0u64;
        for (i, &k) in idx.iter().enumerate() {
            if k > 0 {
                mu = crate::rational::vsub(&mu, &vscale(&rat_i(k as i64), &rs.simple_roots()[i]));
                level += k;
            }
        }
        if rs.is_dominant(&mu) {
            dominants.push((level, mu));
        }
        // odometer increment over the box
        let mut pos = 0;
        loop {
            if pos == rs.rank {
                break;
            }
            if idx[pos] < bounds[pos] {
                idx[pos] += 1;
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == rs.rank {
            break;
        }
    }
    dominants.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

    let mut mults: BTreeMap<Vec<Rat>, u64> = BTreeMap::new();
    for (level, mu) in &dominants {
        if *level == 0 {
            mults.insert(mu.clone(), 1);
            continue;
        }
        let mu_rho = vadd(mu, &rho);
        let denom = lam_rho_sq.clone() - rs.inner(&mu_rho, &mu_rho);
        if denom.is_zero() {
            // same length as the highest weight: not a weight of the module
            continue;
        }
        let mut num = Rat::zero();
        for a in rs.positive_roots() {
            let mut k = 1i64;
            loop {
                let shifted = vadd(mu, &vscale(&rat_i(k), a));
                let dom = rs.dominant_representative(&shifted);
                let m = mults.get(&dom).copied().unwrap_or(0);
                if m == 0 {
                    // once we leave the weight polytope along a root ray we
                    // never re-enter it
                    if !weight_below(rs, &shifted, &lam) {
                        break;
                    }
                } else {
                    num += rat_i(2 * m as i64) * rs.inner(&shifted, a);
                }
                k += 1;
            }
        }
        let m = num / denom;
        if m.is_negative() || !m.is_integer() {
            return Err(domain("Freudenthal recursion produced a non-integer multiplicity"));
        }
        let m = m.to_integer().to_u64().unwrap();
        if m > 0 {
            mults.insert(mu.clone(), m);
        }
    }

    // expand over Weyl orbits
    let mut weights = Vec::new();
    let mut dim = 0u64;
    for (mu, m) in &mults {
        for w in rs.weyl_orbit(mu) {
            dim += *m;
            weights.push(WeightMult {
                weight: w,
                mult: *m,
            });
        }
    }
    weights.sort_by(|a, b| a.weight.cmp(&b.weight));
    Ok(Irrep {
        highest: lam,
        dim,
        weights,
    })
}

fn highest_weight(rs: &RootSystem, coeffs: &[i64]) -> Result<Vec<Rat>> {
    if coeffs.len() != rs.rank {
        return Err(config(format!(
            "expected {} highest-weight coordinates, got {}",
            rs.rank,
            coeffs.len()
        )));
    }
    if let Some(&bad) = coeffs.iter().find(|&&c| c < 0) {
        return Err(domain(format!(
            "highest-weight coordinate {bad} is negative"
        )));
    }
    let rats: Vec<Rat> = coeffs.iter().map(|&c| rat_i(c)).collect();
    rs.weight_from_coeffs(&rats)
}

/// Is `lam - mu` a nonnegative combination of simple roots?
fn weight_below(rs: &RootSystem, mu: &[Rat], lam: &[Rat]) -> bool {
    let diff = crate::rational::vsub(lam, mu);
    match rs.simple_coefficients(&diff) {
        Some(cs) => cs.iter().all(|c| !c.is_negative()),
        None => false,
    }
}
