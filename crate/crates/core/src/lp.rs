//! Exact rational linear programming, feasibility form.
//!
//! Phase-I simplex with Bland's rule over `Rat`: decides {x ≥ 0 : A·x = b}
//! and, when the system is infeasible, returns a Farkas certificate y with
//! yᵀA ≥ 0 and yᵀb < 0 that callers can hand out as a separating functional.
//! Bland's rule makes termination unconditional; problem sizes here are a
//! handful of rows, so no effort is spent on efficiency.

use num_traits::{Signed, Zero};

use crate::rational::{vdot, Rat};

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    /// A point of the feasible region.
    Feasible(Vec<Rat>),
    /// Farkas certificate: yᵀA ≥ 0 componentwise and yᵀb < 0.
    Infeasible(Vec<Rat>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Decides whether {x ≥ 0 : A·x = b} is nonempty.
pub fn feasible(a: &[Vec<Rat>], b: &[Rat]) -> Feasibility {
    let m = a.len();
    assert_eq!(m, b.len(), "row count mismatch");
    let n = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|row| row.len() == n), "ragged constraint rows");

    // Normalize rows to b ≥ 0, remembering signs for the certificate.
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    let mut signs: Vec<bool> = Vec::with_capacity(m); // true = negated
    for i in 0..m {
        if b[i].is_negative() {
            rows.push(a[i].iter().map(|x| -x).collect());
            rhs.push(-&b[i]);
            signs.push(true);
        } else {
            rows.push(a[i].clone());
            rhs.push(b[i].clone());
            signs.push(false);
        }
    }

    // Tableau columns: n real variables then m artificials (initial basis).
    // Minimize the artificial sum; reduced costs r_j = c_j − Σ_i T_ij·c_B(i).
    let ncols = n + m;
    let mut tab = rows;
    for (i, row) in tab.iter_mut().enumerate() {
        for k in 0..m {
            row.push(if k == i { Rat::from_integer(1.into()) } else { Rat::zero() });
        }
    }
    let mut basis: Vec<usize> = (n..ncols).collect();
    let mut cost: Vec<Rat> = (0..ncols)
        .map(|j| {
            let colsum: Rat = tab.iter().map(|row| row[j].clone()).sum();
            let cj = if j >= n { Rat::from_integer(1.into()) } else { Rat::zero() };
            cj - colsum
        })
        .collect();
    let mut obj: Rat = -rhs.iter().cloned().sum::<Rat>(); // −(current artificial sum)

    // Bland: enter on the lowest-index column with negative reduced cost.
    while let Some(enter) = (0..ncols).find(|&j| cost[j].is_negative()) {
        // Ratio test; ties broken by lowest basic-variable index (Bland).
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &rhs[i] / &tab[i][enter];
                let better = match &best {
                    None => true,
                    Some(r) => ratio < *r || (ratio == *r && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(li) = leave else {
            // Phase-I objective is bounded below by 0, so an unbounded ray
            // cannot occur with consistent arithmetic.
            unreachable!("phase-I simplex reported unbounded");
        };

        // Pivot on (li, enter).
        let pivot = tab[li][enter].clone();
        for x in tab[li].iter_mut() {
            *x = &*x / &pivot;
        }
        rhs[li] = &rhs[li] / &pivot;
        let prow = tab[li].clone();
        for i in 0..m {
            if i != li && !tab[i][enter].is_zero() {
                let f = tab[i][enter].clone();
                for (x, p) in tab[i].iter_mut().zip(&prow) {
                    let sub = &f * p;
                    *x = &*x - sub;
                }
                let sub = &f * &rhs[li];
                rhs[i] = &rhs[i] - sub;
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (c, p) in cost.iter_mut().zip(&prow) {
                let sub = &f * p;
                *c = &*c - sub;
            }
            let sub = &f * &rhs[li];
            obj = &obj - sub;
        }
        basis[li] = enter;
    }

    let artificial_sum = -obj;
    if artificial_sum.is_zero() {
        let mut x = vec![Rat::zero(); n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                x[bv] = rhs[i].clone();
            }
        }
        Feasibility::Feasible(x)
    } else {
        // Dual of the normalized problem from artificial reduced costs:
        // r_{n+i} = 1 − y'_i, so y'_i = 1 − r_{n+i}; then y'ᵀA' ≤ 0, y'ᵀb' > 0.
        // Undo row negations and flip sign to the stated convention.
        let y: Vec<Rat> = (0..m)
            .map(|i| {
                let yi = Rat::from_integer(1.into()) - &cost[n + i];
                let yi = if signs[i] { -yi } else { yi };
                -yi
            })
            .collect();
        Feasibility::Infeasible(y)
    }
}

/// Whether x ∈ conv(points); on the negative side, the Farkas certificate is
/// folded into a strict separating functional c with
/// max_p ⟨p, c⟩ < ⟨x, c⟩.
pub fn convex_hull_membership(points: &[Vec<Rat>], x: &[Rat]) -> Result<Vec<Rat>, Vec<Rat>> {
    assert!(!points.is_empty(), "empty point set");
    let d = x.len();
    assert!(points.iter().all(|p| p.len() == d), "dimension mismatch");
    // rows: d coordinate equations plus the affine row Σμ = 1
    let mut a: Vec<Vec<Rat>> = (0..d)
        .map(|k| points.iter().map(|p| p[k].clone()).collect())
        .collect();
    a.push(vec![Rat::from_integer(1.into()); points.len()]);
    let mut b = x.to_vec();
    b.push(Rat::from_integer(1.into()));
    match feasible(&a, &b) {
        Feasibility::Feasible(mu) => Ok(mu),
        Feasibility::Infeasible(y) => {
            // yᵀA ≥ 0: ⟨p, c⟩ + y_d ≥ 0 for every point, with c = y[..d];
            // yᵀb < 0: ⟨x, c⟩ + y_d < 0. So −c separates x strictly from the hull.
            let c: Vec<Rat> = y[..d].iter().map(|v| -v).collect();
            debug_assert!(points
                .iter()
                .all(|p| vdot(p, &c) < vdot(x, &c)));
            Err(c)
        }
    }
}
