//! Implosion vectors in the universal representation space, their moment
//! data, and the pullback of the ambient metric to group orbits.
//!
//! The representation space is `E = sum over p of Λ^p C^n` (p = 1..n-1).
//! A vector is stored one summand at a time as a *scaled* amplitude
//! squared together with exact coordinates, so every quadratic quantity —
//! moments, Gram matrices, norms — is a finite rational (or float)
//! expression with no transcendental constants left over.  The scaling
//! constant is fixed once and for all by two pinned identities:
//!
//!   <mu(v), X>  = - sum_p a_p Im (X.w_p, w_p)        (moment pairing)
//!   g(A, B)     = 2 sum_p a_p Re (A.w_p, B.w_p)      (pullback metric)
//!
//! With these, the vector attached to a dominant weight `lam` (amplitudes
//! `a_p = <lam, alpha_p^vee>`, directions the leading wedge vectors moved
//! by a unitary `k`) has moment exactly `-k diag(lam) k*` and pullback
//! Gram exactly the orbit Gram `2<lam, alpha^vee>` per root-space
//! direction.

use num_traits::Signed;

use crate::error::{config, domain, Result};
use crate::linalg::Mat;
use crate::matrix_lie::{
    adjoint, commutator, herm_dot, trace_pairing, u_matrix, v_matrix, wedge_minor_column,
    WedgeSpace,
};
use crate::rational::Rat;
use crate::roots::{DecompDims, Face, RootSystem};
use crate::scalar::{ComplexScalar, Scalar};

/// A vector in `E`, one summand per exterior degree `p = 1..=n-1`.
/// `amp_sq` holds the squared amplitude with the transcendental
/// normalization already divided out, so it transforms like a squared
/// norm under everything we do.
#[derive(Clone, Debug)]
pub struct ImplosionVector<S: ComplexScalar> {
    pub n: usize,
    /// `(amp_sq, coordinates in the lex subset basis)`, index p-1.
    pub summands: Vec<(S::Real, Vec<S>)>,
}

impl<S: ComplexScalar> ImplosionVector<S> {
    pub fn zero(n: usize) -> Self {
        let summands = (1..n)
            .map(|p| {
                let dim = WedgeSpace::new(n, p).expect("degree in range").dim();
                (<S::Real as Scalar>::zero(), vec![S::zero(); dim])
            })
            .collect();
        ImplosionVector { n, summands }
    }

    /// A single-summand vector: degree `p` with the given scaled squared
    /// amplitude and coordinates.
    pub fn single(n: usize, p: usize, amp_sq: S::Real, coords: Vec<S>) -> Result<Self> {
        if p == 0 || p >= n {
            return Err(config(format!("summand degree {p} out of range 1..={}", n - 1)));
        }
        let mut v = Self::zero(n);
        let want = v.summands[p - 1].1.len();
        if coords.len() != want {
            return Err(config(format!(
                "degree-{p} summand needs {want} coordinates, got {}",
                coords.len()
            )));
        }
        v.summands[p - 1] = (amp_sq, coords);
        Ok(v)
    }

    /// Scaled squared norm: `sum_p amp_sq_p * |w_p|^2`.
    pub fn norm_sq_scaled(&self) -> S::Real {
        let mut acc = <S::Real as Scalar>::zero();
        for (a, w) in &self.summands {
            acc = acc + a.clone() * crate::matrix_lie::herm_norm_sq(w);
        }
        acc
    }
}

/// The implosion embedding of a group-orbit point: dominant `lam` gives
/// the amplitudes (its fundamental-weight coordinates), the unitary `k`
/// moves the leading wedge directions.
pub fn embed_implosion<S: ComplexScalar>(
    rs: &RootSystem,
    lam: &[Rat],
    k: &Mat<S>,
) -> Result<ImplosionVector<S>> {
    let n = rs.ambient;
    if lam.len() != n {
        return Err(config(format!(
            "weight has {} coordinates, ambient dimension is {n}",
            lam.len()
        )));
    }
    if k.rows != n || k.cols != n {
        return Err(config("unitary has the wrong shape".to_string()));
    }
    let mut v = ImplosionVector::<S>::zero(n);
    for (p_idx, alpha) in rs.simple_roots().iter().enumerate() {
        let c = rs.pair(lam, alpha);
        if c.is_negative() {
            return Err(domain(
                "weight is not dominant; implosion points carry dominant weights".to_string(),
            ));
        }
        let p = p_idx + 1;
        let w = WedgeSpace::new(n, p)?;
        let cols: Vec<usize> = (0..p).collect();
        let coords = wedge_minor_column(&w, k, &cols);
        v.summands[p_idx] = (<S::Real as Scalar>::from_rat(&c), coords);
    }
    Ok(v)
}

/// `<mu(v), X>` for skew-Hermitian `X`, by the pinned moment formula.
pub fn moment_pairing<S: ComplexScalar>(v: &ImplosionVector<S>, x: &Mat<S>) -> S::Real {
    let mut acc = <S::Real as Scalar>::zero();
    for (p_idx, (a, w)) in v.summands.iter().enumerate() {
        let ws = WedgeSpace::new(v.n, p_idx + 1).expect("stored degree valid");
        let xw = ws.action(x).mul_vec(w);
        acc = acc + a.clone() * herm_dot(&xw, w).im_part();
    }
    -acc
}

fn diag_su<S: ComplexScalar>(n: usize, j: usize) -> Mat<S> {
    // i(E_jj - I/n), the traceless skew-Hermitian diagonal probe
    let mut m = Mat::<S>::zeros(n, n);
    let inv_n = crate::rational::rat(1, n as i64);
    for k in 0..n {
        let val = if k == j {
            Rat::from_integer(1.into()) - inv_n.clone()
        } else {
            -inv_n.clone()
        };
        m[(k, k)] = S::from_parts(
            <S::Real as Scalar>::zero(),
            <S::Real as Scalar>::from_rat(&val),
        );
    }
    m
}

fn offdiag_real<S: ComplexScalar>(n: usize, a: usize, b: usize) -> Mat<S> {
    // E_ab - E_ba
    let mut m = Mat::<S>::zeros(n, n);
    m[(a, b)] = S::one();
    m[(b, a)] = -S::one();
    m
}

fn offdiag_imag<S: ComplexScalar>(n: usize, a: usize, b: usize) -> Mat<S> {
    // i(E_ab + E_ba)
    let mut m = Mat::<S>::zeros(n, n);
    m[(a, b)] = S::i();
    m[(b, a)] = S::i();
    m
}

/// The moment of `v` against the diagonal probes: ambient coordinates of
/// the torus part of the moment (a trace-zero real vector).
pub fn t_moment_ambient<S: ComplexScalar>(v: &ImplosionVector<S>) -> Vec<S::Real> {
    (0..v.n)
        .map(|j| moment_pairing(v, &diag_su::<S>(v.n, j)))
        .collect()
}

/// The full moment of `v` assembled as a Hermitian traceless matrix `M`
/// with `<mu(v), X> = Im tr(M X)`.
pub fn k_moment_matrix<S: ComplexScalar>(v: &ImplosionVector<S>) -> Mat<S> {
    let n = v.n;
    let two = <S::Real as Scalar>::from_i64(2);
    let mut m = Mat::<S>::zeros(n, n);
    for j in 0..n {
        let d = moment_pairing(v, &diag_su::<S>(n, j));
        m[(j, j)] = S::from_re(d);
    }
    for a in 0..n {
        for b in (a + 1)..n {
            let pa = moment_pairing(v, &offdiag_real::<S>(n, a, b));
            let pb = moment_pairing(v, &offdiag_imag::<S>(n, a, b));
            let re = pb.clone() / two.clone();
            let im = -(pa.clone() / two.clone());
            m[(a, b)] = S::from_parts(re.clone(), im.clone());
            m[(b, a)] = S::from_parts(re, -im);
        }
    }
    m
}

/// What the moment of the embedded orbit point must be: `-k diag(lam) k*`.
pub fn expected_k_moment<S: ComplexScalar>(lam: &[Rat], k: &Mat<S>) -> Mat<S> {
    let n = lam.len();
    let mut d = Mat::<S>::zeros(n, n);
    for (j, c) in lam.iter().enumerate() {
        d[(j, j)] = S::from_rat(c);
    }
    let prod = k.mul(&d).mul(&adjoint(k));
    Mat::<S>::zeros(n, n).sub(&prod)
}

/// Max entry deviation between the recovered and expected moment of the
/// embedding of `(lam, k)`.
pub fn moment_deviation<S: ComplexScalar>(
    rs: &RootSystem,
    lam: &[Rat],
    k: &Mat<S>,
) -> Result<f64> {
    let v = embed_implosion(rs, lam, k)?;
    let got = k_moment_matrix(&v);
    let want = expected_k_moment(lam, k);
    Ok(got.sub(&want).max_abs())
}

/// The root directions transverse to a chamber face: positive roots not
/// vanishing on it.  These label the orbit directions `U, V` per root.
#[derive(Clone, Debug)]
pub struct OrbitFrame {
    pub roots: Vec<Vec<Rat>>,
}

impl OrbitFrame {
    /// Frame directions in basis order `U_0, V_0, U_1, V_1, ...`.
    pub fn len(&self) -> usize {
        2 * self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

pub fn orbit_frame(rs: &RootSystem, face: &Face) -> OrbitFrame {
    let vanishing = rs.face_root_indices(face);
    let roots = rs
        .positive_roots()
        .iter()
        .enumerate()
        .filter(|(i, _)| !vanishing.contains(i))
        .map(|(_, r)| r.clone())
        .collect();
    OrbitFrame { roots }
}

fn frame_matrices(rs: &RootSystem, frame: &OrbitFrame) -> Vec<Mat<crate::matrix_lie::CRat>> {
    let mut out = Vec::with_capacity(frame.len());
    for root in &frame.roots {
        out.push(u_matrix(rs, root));
        out.push(v_matrix(rs, root));
    }
    out
}

/// Complex-structure image of a frame matrix: `J(U) = -V`, `J(V) = U`.
fn frame_j_matrices(rs: &RootSystem, frame: &OrbitFrame) -> Vec<Mat<crate::matrix_lie::CRat>> {
    let mut out = Vec::with_capacity(frame.len());
    for root in &frame.roots {
        let u = u_matrix(rs, root);
        let v = v_matrix(rs, root);
        out.push(Mat::zeros(rs.ambient, rs.ambient).sub(&v));
        out.push(u);
    }
    out
}

fn check_face(rs: &RootSystem, lam: &[Rat], face: &Face) -> Result<()> {
    let actual = rs.face_of(lam)?;
    if actual != *face {
        return Err(domain(format!(
            "weight lies on face with walls {:?}, not the requested walls {:?}; \
             Gram comparisons need the weight in the relative interior",
            actual.wall_labels(),
            face.wall_labels()
        )));
    }
    Ok(())
}

/// Orbit metric Gram through the closed two-form and the complex
/// structure: `g(A, B) = <lam, [J(A), B]>`.
pub fn kks_gram(rs: &RootSystem, lam: &[Rat], face: &Face) -> Result<Mat<Rat>> {
    check_face(rs, lam, face)?;
    let frame = orbit_frame(rs, face);
    let mats = frame_matrices(rs, &frame);
    let jmats = frame_j_matrices(rs, &frame);
    let d = frame.len();
    let mut g = Mat::<Rat>::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            g[(i, j)] = trace_pairing(lam, &commutator(&jmats[i], &mats[j]));
        }
    }
    Ok(g)
}

/// Orbit metric Gram pulled back through the implosion embedding: frame
/// directions act on the embedded vector, and the ambient metric pairs
/// the images.
pub fn pullback_gram(rs: &RootSystem, lam: &[Rat], face: &Face) -> Result<Mat<Rat>> {
    check_face(rs, lam, face)?;
    let frame = orbit_frame(rs, face);
    let mats = frame_matrices(rs, &frame);
    let v = embed_implosion::<crate::matrix_lie::CRat>(rs, lam, &Mat::identity(rs.ambient))?;
    // per frame direction and degree: the image of the leading vector
    let mut images: Vec<Vec<Vec<crate::matrix_lie::CRat>>> = Vec::with_capacity(mats.len());
    for x in &mats {
        let mut per_degree = Vec::with_capacity(v.summands.len());
        for (p_idx, (_, w)) in v.summands.iter().enumerate() {
            let ws = WedgeSpace::new(v.n, p_idx + 1)?;
            per_degree.push(ws.action(x).mul_vec(w));
        }
        images.push(per_degree);
    }
    let d = frame.len();
    let mut g = Mat::<Rat>::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = Rat::from_integer(0.into());
            for (p_idx, (a, _)) in v.summands.iter().enumerate() {
                let dot = herm_dot(&images[i][p_idx], &images[j][p_idx]).re_part();
                acc += a.clone() * dot;
            }
            g[(i, j)] = acc * Rat::from_integer(2.into());
        }
    }
    Ok(g)
}

/// The closed form both Gram routes must produce: `2 <lam, alpha^vee>` on
/// the two directions of each frame root, zero elsewhere.
pub fn closed_form_gram(rs: &RootSystem, lam: &[Rat], face: &Face) -> Result<Mat<Rat>> {
    check_face(rs, lam, face)?;
    let frame = orbit_frame(rs, face);
    let d = frame.len();
    let mut g = Mat::<Rat>::zeros(d, d);
    for (t, root) in frame.roots.iter().enumerate() {
        let val = Rat::from_integer(2.into()) * rs.pair(lam, root);
        g[(2 * t, 2 * t)] = val.clone();
        g[(2 * t + 1, 2 * t + 1)] = val;
    }
    Ok(g)
}

/// One row of the stratification table: a chamber face and the dimension
/// bookkeeping of its associated groups and stratum.
#[derive(Clone, Debug)]
pub struct StratumRow {
    pub face: Face,
    pub dims: DecompDims,
}

pub fn strata_table(rs: &RootSystem) -> Vec<StratumRow> {
    rs.faces()
        .into_iter()
        .map(|face| {
            let dims = rs.decomposition_dims(&face);
            StratumRow { face, dims }
        })
        .collect()
}
