//! Wall-and-chamber decompositions of a level region.
//!
//! Walls are the support hulls with positive-dimensional stabilizer, cut to
//! the region. Chambers are the connected components of the complement:
//! the region is subdivided by the affine hulls of the codimension-one wall
//! pieces, and adjacent cells are glued back together whenever their shared
//! facet is not entirely covered by wall pieces — hyperplanes overshoot the
//! bounded pieces they carry, and the glue-back undoes exactly that. All of
//! it is exact; the region dimension is capped at 3 because the cell count
//! of an exact arrangement grows too fast beyond that.

use std::collections::BTreeMap;

use crate::combinat::nonempty_masks;
use crate::error::{capability, config, Result};
use crate::polytope::{Halfspace, Hyperplane, Polytope};
use crate::rational::{primitive_vector, rat, rat_i, vadd, vdot, vscale, Rat};
use crate::stability::{
    has_positive_dim_stabilizer, support_hull, support_table, Fingerprint, WeightConfig,
    MAX_ENUMERATED_WEIGHTS,
};

/// A wall piece with every degenerate support that produces it.
#[derive(Debug, Clone)]
pub struct Wall {
    pub piece: Polytope,
    pub supports: Vec<u64>,
}

/// A connected component of the region minus the walls: the convex cells it
/// is made of, a rational interior representative, and the semistable
/// fingerprint at that representative.
#[derive(Debug, Clone)]
pub struct Chamber {
    pub cells: Vec<Polytope>,
    pub representative: Vec<Rat>,
    pub fingerprint: Fingerprint,
}

#[derive(Debug, Clone)]
pub struct ChamberDecomposition {
    pub region: Polytope,
    pub walls: Vec<Wall>,
    pub chambers: Vec<Chamber>,
}

/// Wall pieces inside the region: for every support whose stabilizer has
/// positive dimension, its (lower-dimensional) hull intersected with the
/// region, deduplicated by canonical vertex set.
pub fn walls(cfg: &WeightConfig, region: &Polytope) -> Result<Vec<Wall>> {
    if region.ambient != cfg.ambient {
        return Err(config("region dimension mismatch"));
    }
    if cfg.len() > MAX_ENUMERATED_WEIGHTS {
        return Err(capability(format!(
            "wall enumeration limited to {MAX_ENUMERATED_WEIGHTS} weights"
        )));
    }
    let mut by_piece: BTreeMap<Vec<Vec<Rat>>, (Polytope, Vec<u64>)> = BTreeMap::new();
    for s in nonempty_masks(cfg.len()) {
        if !has_positive_dim_stabilizer(cfg, s)? {
            continue;
        }
        let hull = support_hull(cfg, s)?;
        let Some(piece) = region.intersect(&hull.equations, &hull.facets)? else {
            continue;
        };
        by_piece
            .entry(piece.vertices.clone())
            .or_insert_with(|| (piece, Vec::new()))
            .1
            .push(s);
    }
    Ok(by_piece
        .into_values()
        .map(|(piece, mut supports)| {
            supports.sort_unstable();
            Wall { piece, supports }
        })
        .collect())
}

/// Connected components of `region` minus the pieces, each as a list of
/// closed convex cells (lexicographically least cell first). Cells whose
/// interior lies inside a full-dimensional piece are discarded with the
/// walls; merging across a shared facet happens exactly when the facet is
/// not covered by the pieces.
pub fn decompose_region(region: &Polytope, pieces: &[Polytope]) -> Result<Vec<Vec<Polytope>>> {
    let dim = region.dim();
    if dim > 3 {
        return Err(capability("chamber subdivision supports region dimension at most 3"));
    }

    // Cutting hyperplanes: affine hulls of codim-1 pieces, facet hyperplanes
    // of full-dimensional ones.
    let mut planes: Vec<Hyperplane> = Vec::new();
    for p in pieces {
        if p.dim() + 1 == dim {
            for eq in &p.equations {
                if !region.vertices.iter().all(|v| vdot(v, &eq.normal) == eq.offset) {
                    planes.push(eq.clone());
                }
            }
        } else if p.dim() == dim {
            for f in &p.facets {
                planes.push(canonical_hyperplane(&f.normal, &f.offset));
            }
        }
    }
    planes.sort();
    planes.dedup();

    let mut cells: Vec<Polytope> = vec![region.clone()];
    for h in &planes {
        let mut next: Vec<Polytope> = Vec::new();
        for cell in cells {
            let vals: Vec<Rat> = cell.vertices.iter().map(|v| vdot(v, &h.normal)).collect();
            let below = vals.iter().any(|v| *v < h.offset);
            let above = vals.iter().any(|v| *v > h.offset);
            if below && above {
                let lo = Halfspace { normal: h.normal.clone(), offset: h.offset.clone() };
                let hi = Halfspace {
                    normal: h.normal.iter().map(|x| -x).collect(),
                    offset: -&h.offset,
                };
                for side in [lo, hi] {
                    if let Some(part) = cell.intersect(&[], &[side])? {
                        if part.dim() == dim {
                            next.push(part);
                        }
                    }
                }
            } else {
                next.push(cell);
            }
        }
        cells = next;
    }
    cells.sort_by(|a, b| a.vertices.cmp(&b.vertices));

    // Cells swallowed by a full-dimensional piece belong to the walls.
    let full_pieces: Vec<&Polytope> = pieces.iter().filter(|p| p.dim() == dim).collect();
    if !full_pieces.is_empty() {
        cells.retain(|c| {
            let x = c.relint_point();
            !full_pieces.iter().any(|p| p.contains(&x))
        });
    }

    // Glue adjacent cells back together across uncovered facets.
    let mut parent: Vec<usize> = (0..cells.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    let relevant: Vec<&Polytope> = pieces.iter().filter(|p| p.dim() + 1 >= dim).collect();
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            let Some(shared) = cells[i].intersect(&cells[j].equations, &cells[j].facets)? else {
                continue;
            };
            if shared.dim() + 1 != dim {
                continue;
            }
            if !covered(&shared, &relevant)? {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }

    let mut comps: BTreeMap<usize, Vec<Polytope>> = BTreeMap::new();
    for (i, cell) in cells.iter().enumerate() {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(cell.clone());
    }
    let mut out: Vec<Vec<Polytope>> = comps.into_values().collect();
    for comp in &mut out {
        comp.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    }
    out.sort_by(|a, b| a[0].vertices.cmp(&b[0].vertices));
    Ok(out)
}

/// Whether the pieces cover `f` entirely. Exact recursive peeling: take a
/// piece, keep the parts of `f` sticking out past each of its facets, and
/// ask the remaining pieces to cover those.
fn covered(f: &Polytope, pieces: &[&Polytope]) -> Result<bool> {
    let parts: Vec<Polytope> = pieces
        .iter()
        .filter_map(|q| f.intersect(&q.equations, &q.facets).transpose())
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|qf| qf.dim() == f.dim())
        .collect();
    cover_rec(f, &parts)
}

fn cover_rec(f: &Polytope, parts: &[Polytope]) -> Result<bool> {
    let Some((q, rest)) = parts.split_first() else {
        return Ok(false);
    };
    let mut leftovers: Vec<Polytope> = Vec::new();
    let mut core = f.clone();
    for facet in &q.facets {
        let beyond = Halfspace {
            normal: facet.normal.iter().map(|x| -x).collect(),
            offset: -&facet.offset,
        };
        if let Some(out) = core.intersect(&[], &[beyond])? {
            if out.dim() == f.dim() {
                leftovers.push(out);
            }
        }
        match core.intersect(&[], std::slice::from_ref(facet))? {
            Some(inside) => core = inside,
            None => break,
        }
    }
    for piece in leftovers {
        let sub: Vec<Polytope> = rest
            .iter()
            .filter_map(|p| piece.intersect(&p.equations, &p.facets).transpose())
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|pf| pf.dim() == piece.dim())
            .collect();
        if !cover_rec(&piece, &sub)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn canonical_hyperplane(normal: &[Rat], offset: &Rat) -> Hyperplane {
    let n = primitive_vector(normal);
    let factor = normal
        .iter()
        .zip(&n)
        .find(|(a, _)| !num_traits::Zero::is_zero(*a))
        .map(|(a, b)| b / a)
        .expect("nonzero normal");
    Hyperplane { normal: n, offset: offset * &factor }
}

/// Interior point of the first cell, strictly off every piece. Pieces of
/// codimension two or more do not cut, so they can run through the plain
/// vertex average (a lone point weight centered in the region does); the
/// average is then nudged toward cell vertices until it clears.
fn representative(cells: &[Polytope], pieces: &[Polytope]) -> Vec<Rat> {
    let cell = &cells[0];
    let base = cell.relint_point();
    let off = |x: &[Rat]| pieces.iter().all(|p| !p.contains(x));
    if off(&base) {
        return base;
    }
    for v in &cell.vertices {
        let mut delta = rat(1, 2);
        for _ in 0..16 {
            let p = vadd(&vscale(&(rat_i(1) - &delta), &base), &vscale(&delta, v));
            if off(&p) {
                return p;
            }
            delta /= rat_i(2);
        }
    }
    base
}

/// Walls and chambers of the region, with fingerprints at canonical
/// representatives.
pub fn chambers(cfg: &WeightConfig, region: &Polytope) -> Result<ChamberDecomposition> {
    let walls = walls(cfg, region)?;
    let pieces: Vec<Polytope> = walls.iter().map(|w| w.piece.clone()).collect();
    let comps = decompose_region(region, &pieces)?;
    let table = support_table(cfg)?;
    let chambers = comps
        .into_iter()
        .map(|cells| {
            let representative = representative(&cells, &pieces);
            let fingerprint = table.fingerprint(&representative);
            Chamber { cells, representative, fingerprint }
        })
        .collect();
    Ok(ChamberDecomposition { region: region.clone(), walls, chambers })
}
