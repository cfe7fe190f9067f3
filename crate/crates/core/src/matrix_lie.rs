//! Matrix realization of su(n) and its actions on exterior powers.
//!
//! The compact algebra is realized by skew-Hermitian traceless matrices
//! with Gaussian-rational entries, so bracket computations and weight
//! pairings stay exact.  For a positive root `e_a - e_b` the root-space
//! basis is
//!
//!   U = E_ab - E_ba,   V = i(E_ab + E_ba),   coroot = i(E_aa - E_bb),
//!
//! which satisfies `[U, V] = 2 * coroot`.  A real weight vector `lam`
//! pairs with `X` through the diagonal: `<lam, X> = sum_k lam_k Im X_kk`,
//! so the coroot matrix pairs to `lam_a - lam_b` exactly as the abstract
//! coroot does.

use num_complex::Complex;
use num_traits::ToPrimitive;

use crate::combinat::subsets_k;
use crate::error::{config, Result};
use crate::linalg::Mat;
use crate::rational::Rat;
use crate::roots::RootSystem;
use crate::scalar::{ComplexScalar, Scalar};

pub type CRat = Complex<Rat>;
pub type C64 = Complex<f64>;

/// `E_ab` as an n-by-n complex rational matrix.
pub fn elem(n: usize, a: usize, b: usize) -> Mat<CRat> {
    let mut m = Mat::<CRat>::zeros(n, n);
    m[(a, b)] = <CRat as Scalar>::one();
    m
}

fn root_support(root: &[Rat]) -> (usize, usize) {
    // positive roots of A are e_a - e_b with a < b
    let a = root.iter().position(|c| c == &Rat::from_integer(1.into()));
    let b = root.iter().position(|c| c == &Rat::from_integer((-1).into()));
    match (a, b) {
        (Some(a), Some(b)) => (a, b),
        _ => panic!("not a type-A root: {root:?}"),
    }
}

/// `E_ab - E_ba` for the positive root `e_a - e_b`.
pub fn u_matrix(rs: &RootSystem, root: &[Rat]) -> Mat<CRat> {
    let (a, b) = root_support(root);
    let mut m = Mat::<CRat>::zeros(rs.ambient, rs.ambient);
    m[(a, b)] = <CRat as Scalar>::one();
    m[(b, a)] = -<CRat as Scalar>::one();
    m
}

/// `i(E_ab + E_ba)` for the positive root `e_a - e_b`.
pub fn v_matrix(rs: &RootSystem, root: &[Rat]) -> Mat<CRat> {
    let (a, b) = root_support(root);
    let mut m = Mat::<CRat>::zeros(rs.ambient, rs.ambient);
    m[(a, b)] = <CRat as ComplexScalar>::i();
    m[(b, a)] = <CRat as ComplexScalar>::i();
    m
}

/// `i * diag(t)` for a real vector `t` (skew-Hermitian; traceless when
/// `t` sums to zero).
pub fn torus_matrix(t: &[Rat]) -> Mat<CRat> {
    let n = t.len();
    let mut m = Mat::<CRat>::zeros(n, n);
    for (k, c) in t.iter().enumerate() {
        m[(k, k)] = Complex::new(<Rat as Scalar>::zero(), c.clone());
    }
    m
}

/// `i(E_aa - E_bb)` for the positive root `e_a - e_b`.
pub fn coroot_matrix(rs: &RootSystem, root: &[Rat]) -> Mat<CRat> {
    let _ = rs;
    torus_matrix(root)
}

pub fn commutator<S: Scalar>(x: &Mat<S>, y: &Mat<S>) -> Mat<S> {
    x.mul(y).sub(&y.mul(x))
}

pub fn adjoint<S: ComplexScalar>(x: &Mat<S>) -> Mat<S> {
    let mut out = Mat::<S>::zeros(x.cols, x.rows);
    for i in 0..x.rows {
        for j in 0..x.cols {
            out[(j, i)] = x[(i, j)].conj_c();
        }
    }
    out
}

pub fn is_skew_hermitian<S: ComplexScalar>(x: &Mat<S>) -> bool {
    x.add(&adjoint(x)).max_abs() == 0.0
}

pub fn is_traceless<S: Scalar>(x: &Mat<S>) -> bool {
    let mut tr = S::zero();
    for i in 0..x.rows {
        tr = tr + x[(i, i)].clone();
    }
    tr.is_negligible()
}

/// `<lam, X> = sum_k lam_k Im(X_kk)` — the diagonal pairing identifying
/// real ambient vectors with functionals on the compact algebra.
pub fn trace_pairing<S: ComplexScalar>(lam: &[S::Real], x: &Mat<S>) -> S::Real {
    let mut acc = <S::Real as Scalar>::zero();
    for (k, c) in lam.iter().enumerate() {
        acc = acc + c.clone() * x[(k, k)].im_part();
    }
    acc
}

/// The closed two-form on a coadjoint orbit, evaluated on algebra
/// directions at the real point `lam`: `<lam, [X, Y]>`.
pub fn kks_form<S: ComplexScalar>(lam: &[S::Real], x: &Mat<S>, y: &Mat<S>) -> S::Real {
    trace_pairing(lam, &commutator(x, y))
}

/// Hermitian product of coordinate vectors, linear in the first argument
/// and conjugate-linear in the second.
pub fn herm_dot<S: ComplexScalar>(u: &[S], v: &[S]) -> S {
    assert_eq!(u.len(), v.len());
    let mut acc = S::zero();
    for (a, b) in u.iter().zip(v) {
        acc = acc + a.clone() * b.conj_c();
    }
    acc
}

pub fn herm_norm_sq<S: ComplexScalar>(u: &[S]) -> S::Real {
    herm_dot(u, u).re_part()
}

/// Exterior power of the defining space: ordered basis of p-element index
/// subsets (lexicographic), with the derivation action of matrices.
#[derive(Clone, Debug)]
pub struct WedgeSpace {
    pub n: usize,
    pub p: usize,
    pub basis: Vec<Vec<usize>>,
}

impl WedgeSpace {
    pub fn new(n: usize, p: usize) -> Result<WedgeSpace> {
        if p == 0 || p > n {
            return Err(config(format!("wedge degree {p} out of range 1..={n}")));
        }
        Ok(WedgeSpace {
            n,
            p,
            basis: subsets_k(n, p),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, subset: &[usize]) -> Option<usize> {
        self.basis.iter().position(|s| s[..] == *subset)
    }

    /// Coordinates of `e_0 ^ ... ^ e_{p-1}` — the lexicographically first
    /// basis vector, which is the highest-weight line for the standard
    /// dominance order.
    pub fn leading_vector<S: Scalar>(&self) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[0] = S::one();
        v
    }

    /// Weight of a basis subset under the diagonal torus: the 0/1
    /// indicator of the subset, shifted to trace zero.
    pub fn basis_weight(&self, idx: usize) -> Vec<Rat> {
        let shift = crate::rational::rat(self.p as i64, self.n as i64);
        (0..self.n)
            .map(|k| {
                let ind = if self.basis[idx].contains(&k) {
                    Rat::from_integer(1.into())
                } else {
                    <Rat as Scalar>::zero()
                };
                ind - shift.clone()
            })
            .collect()
    }

    /// Derivation action on the exterior power: each tensor slot is hit by
    /// `x` in turn, with the reordering sign.
    pub fn action<S: Scalar>(&self, x: &Mat<S>) -> Mat<S> {
        assert_eq!(x.rows, self.n);
        assert_eq!(x.cols, self.n);
        let d = self.dim();
        let mut out = Mat::<S>::zeros(d, d);
        for (col, subset) in self.basis.iter().enumerate() {
            for (slot, &t) in subset.iter().enumerate() {
                for a in 0..self.n {
                    let coeff = x[(a, t)].clone();
                    if coeff.is_negligible() && coeff == S::zero() {
                        continue;
                    }
                    if a == t {
                        out[(col, col)] = out[(col, col)].clone() + coeff;
                        continue;
                    }
                    if subset.contains(&a) {
                        continue; // repeated factor kills the wedge
                    }
                    let mut target: Vec<usize> =
                        subset.iter().copied().filter(|&s| s != t).collect();
                    let insert_at = target.partition_point(|&s| s < a);
                    target.insert(insert_at, a);
                    let row = self
                        .index_of(&target)
                        .expect("replacement subset is a basis element");
                    let sign_flips = (slot as i64 - insert_at as i64).unsigned_abs();
                    let signed = if sign_flips % 2 == 0 { coeff } else { -coeff };
                    out[(row, col)] = out[(row, col)].clone() + signed;
                }
            }
        }
        out
    }
}

/// One column of the multiplicative action of `k` on the exterior power:
/// the image of `e_{cols[0]} ^ ... ^ e_{cols[p-1]}`, whose coordinates are
/// the p-by-p minors of `k` on those columns.
pub fn wedge_minor_column<S: Scalar>(w: &WedgeSpace, k: &Mat<S>, cols: &[usize]) -> Vec<S> {
    assert_eq!(cols.len(), w.p);
    assert_eq!(k.rows, w.n);
    w.basis
        .iter()
        .map(|row_set| {
            let mut minor = Mat::<S>::zeros(w.p, w.p);
            for (i, &r) in row_set.iter().enumerate() {
                for (j, &c) in cols.iter().enumerate() {
                    minor[(i, j)] = k[(r, c)].clone();
                }
            }
            minor.det()
        })
        .collect()
}

/// Entrywise conversion to the float backend.
pub fn mat_to_c64(x: &Mat<CRat>) -> Mat<C64> {
    let mut out = Mat::<C64>::zeros(x.rows, x.cols);
    for i in 0..x.rows {
        for j in 0..x.cols {
            let c = &x[(i, j)];
            out[(i, j)] = Complex::new(
                c.re.to_f64().unwrap_or(f64::NAN),
                c.im.to_f64().unwrap_or(f64::NAN),
            );
        }
    }
    out
}

/// Lift of a real rational matrix to complex entries.
pub fn mat_to_crat(x: &Mat<Rat>) -> Mat<CRat> {
    let mut out = Mat::<CRat>::zeros(x.rows, x.cols);
    for i in 0..x.rows {
        for j in 0..x.cols {
            out[(i, j)] = Complex::new(x[(i, j)].clone(), <Rat as Scalar>::zero());
        }
    }
    out
}

pub fn vec_to_c64(v: &[CRat]) -> Vec<C64> {
    v.iter()
        .map(|c| {
            Complex::new(
                c.re.to_f64().unwrap_or(f64::NAN),
                c.im.to_f64().unwrap_or(f64::NAN),
            )
        })
        .collect()
}

/// Random unitary via Gram–Schmidt on a complex Gaussian matrix.
pub fn random_unitary<R: rand::Rng>(n: usize, rng: &mut R) -> Mat<C64> {
    fn gauss<R: rand::Rng>(rng: &mut R) -> f64 {
        // Box-Muller from two uniforms
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0f64);
        let u2: f64 = rng.gen_range(0.0..1.0f64);
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
    loop {
        let mut cols: Vec<Vec<C64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| Complex::new(gauss(rng), gauss(rng)))
                    .collect()
            })
            .collect();
        let mut ok = true;
        for j in 0..n {
            for k in 0..j {
                let proj = herm_dot(&cols[j], &cols[k]);
                let ck = cols[k].clone();
                for (cj, b) in cols[j].iter_mut().zip(&ck) {
                    *cj -= proj * b;
                }
            }
            let norm = herm_norm_sq(&cols[j]).sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            for c in cols[j].iter_mut() {
                *c /= norm;
            }
        }
        if !ok {
            continue;
        }
        let mut m = Mat::<C64>::zeros(n, n);
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                m[(i, j)] = *c;
            }
        }
        return m;
    }
}

/// Weyl group elements as exact complex unitaries (signed permutations are
/// not needed; type A Weyl matrices are genuine permutations).
pub fn weyl_unitaries(rs: &RootSystem) -> Vec<Mat<CRat>> {
    rs.weyl_elements().iter().map(mat_to_crat).collect()
}
