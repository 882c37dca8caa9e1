//! First-factor projections of product states in a subspace.
//!
//! For `L` a subspace of 2, 3 qubits, the set `X` of points of the projective
//! line arising as first factors of product states in `L` is either all of
//! P^1 or finite with at most m! elements. Membership of a fixed first factor
//! `(a,b)` reduces to the matrix `Q(a,b)` (the pairing of `(a,b) (x) w`
//! against a basis of the orthogonal complement) having a product vector in
//! its kernel, and `Q` is linear in `(a,b)`, so `X` is cut out by binary
//! forms: 2x2 minors for m = 2, and cofactor-kernel conditions of degree 6
//! for m = 3. The forms are eliminated exactly (gcd), roots are extracted,
//! and every candidate is re-verified by an independent numeric membership
//! test. Ill-conditioned eliminations surface as indeterminate errors.

use num_complex::Complex64;

use super::binform::{dedupe_points, gcd_many, BinForm, ProjectivePoint};
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, CVector, Subspace};

/// Verified membership threshold for candidate points (relative residual).
const VERIFY_PASS: f64 = 1e-7;
/// Candidates with residual between the pass mark and this are neither
/// accepted nor safely rejected.
const VERIFY_GRAY: f64 = 1e-3;
/// Relative tolerance for a form to count as identically zero.
const FORM_ZERO: f64 = 1e-9;
/// Euclid zero-remainder tolerance for the eliminant gcds.
const GCD_TOL: f64 = 1e-7;

#[derive(Debug, Clone)]
pub enum ProdcountOutcome {
    /// Every first factor extends to a product state in L.
    AllOfP1,
    /// The finite set of first-factor points (at most m!).
    Finite(Vec<ProjectivePoint>),
}

/// The two coefficient matrices of `Q(a,b) = a Q_a + b Q_b`, rows indexed by
/// a basis of the orthogonal complement of L, columns by the basis of the
/// trailing factors.
struct Pencil {
    qa: CMatrix,
    qb: CMatrix,
    /// Frobenius-squared scale of the pencil, for residual normalization.
    scale_sq: f64,
}

impl Pencil {
    fn build(space: &Subspace, m: usize) -> Pencil {
        let comp = space.complement();
        let rows = comp.dim();
        let cols = 1usize << (m - 1);
        let mut qa = CMatrix::zeros(rows, cols);
        let mut qb = CMatrix::zeros(rows, cols);
        for r in 0..rows {
            let l = comp.basis().column(r);
            for j in 0..cols {
                qa[(r, j)] = l[j].conj();
                qb[(r, j)] = l[cols + j].conj();
            }
        }
        let scale_sq = qa.norm_squared().max(qb.norm_squared()).max(1e-300);
        Pencil { qa, qb, scale_sq }
    }

    fn rows(&self) -> usize {
        self.qa.nrows()
    }

    fn cols(&self) -> usize {
        self.qa.ncols()
    }

    fn at(&self, a: Complex64, b: Complex64) -> CMatrix {
        &self.qa * a + &self.qb * b
    }

    fn form(&self, r: usize, j: usize) -> BinForm {
        BinForm::linear(self.qa[(r, j)], self.qb[(r, j)])
    }

    /// Polynomial determinant of the submatrix on `rows` x `cols`.
    fn poly_minor(&self, rows: &[usize], cols: &[usize]) -> BinForm {
        assert_eq!(rows.len(), cols.len());
        match rows.len() {
            1 => self.form(rows[0], cols[0]),
            nn => {
                let mut acc = BinForm::zero(nn);
                for (i, &cc) in cols.iter().enumerate() {
                    let sub_cols: Vec<usize> =
                        cols.iter().copied().filter(|&x| x != cc).collect();
                    let minor = self.poly_minor(&rows[1..], &sub_cols);
                    let term = self.form(rows[0], cc).mul(&minor);
                    let signed = if i % 2 == 0 { term } else { term.scale(c(-1.0, 0.0)) };
                    acc = acc.add(&signed);
                }
                acc
            }
        }
    }

    /// Numeric rank at a point from the right Gram spectrum.
    fn rank_at(&self, a: Complex64, b: Complex64) -> usize {
        let q = self.at(a, b);
        let gram = q.adjoint() * &q;
        let eig = gram.symmetric_eigen();
        let emax = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
        if emax <= 0.0 {
            return 0;
        }
        eig.eigenvalues.iter().filter(|ev| **ev > 1e-12 * emax).count()
    }

    /// Max rank over a few fixed generic sample points.
    fn generic_rank(&self) -> usize {
        SAMPLE_POINTS
            .iter()
            .map(|&(ar, ai, br, bi)| self.rank_at(c(ar, ai), c(br, bi)))
            .max()
            .unwrap_or(0)
    }
}

const SAMPLE_POINTS: [(f64, f64, f64, f64); 3] = [
    (0.83660254, 0.11237243, 0.42532540, -0.32743362),
    (-0.29389263, 0.64278761, 0.51449576, 0.47552826),
    (0.17364818, -0.76604444, -0.39073113, 0.48480962),
];

/// Compute the set X of first-factor projections of product states in L.
/// Supported for m in {2, 3}.
pub fn prodcount_points(space: &Subspace, m: usize) -> Result<ProdcountOutcome> {
    match m {
        2 => prodcount_m2(space),
        3 => prodcount_m3(space),
        _ => Err(Error::InvalidParameter(format!(
            "prodcount is exact only for m in {{2,3}}, got {m}"
        ))),
    }
}

fn prodcount_m2(space: &Subspace) -> Result<ProdcountOutcome> {
    if space.ambient_dim() != 4 {
        return Err(Error::DimensionMismatch("prodcount m=2 needs ambient dim 4".into()));
    }
    if space.dim() == 0 {
        return Ok(ProdcountOutcome::Finite(Vec::new()));
    }
    let pencil = Pencil::build(space, 2);
    if pencil.rows() <= 1 {
        // At most one linear condition on the second factor: every first
        // factor extends.
        return Ok(ProdcountOutcome::AllOfP1);
    }
    // (a,b) in X iff rank Q(a,b) <= 1 iff all 2x2 row minors vanish.
    let mut minors = Vec::new();
    for r in 0..pencil.rows() {
        for s in (r + 1)..pencil.rows() {
            minors.push(pencil.poly_minor(&[r, s], &[0, 1]));
        }
    }
    finish_from_forms(2, &pencil, minors)
}

fn prodcount_m3(space: &Subspace) -> Result<ProdcountOutcome> {
    if space.ambient_dim() != 8 {
        return Err(Error::DimensionMismatch("prodcount m=3 needs ambient dim 8".into()));
    }
    if space.dim() == 0 {
        return Ok(ProdcountOutcome::Finite(Vec::new()));
    }
    let pencil = Pencil::build(space, 3);
    if pencil.rows() <= 2 {
        // Kernel of Q(a,b) is at least 2-dimensional everywhere, and any
        // 2-dim space of 2x2 matrices contains a rank-one element.
        return Ok(ProdcountOutcome::AllOfP1);
    }
    let r_gen = pencil.generic_rank();
    if r_gen <= 2 {
        // Rank can only drop on closed subsets, so the kernel is >= 2-dim
        // everywhere.
        return Ok(ProdcountOutcome::AllOfP1);
    }
    if r_gen == 3 {
        // Pick three rows of generic rank 3 and parametrize the kernel by
        // cofactors: w_c(a,b) = (-1)^c det(R without column c), cubic forms.
        let rsel = best_row_triple(&pencil)?;
        let w = cofactor_kernel(&pencil, &rsel);
        // rank-one (product) condition on the reshaped kernel vector
        let g6 = w[0].mul(&w[3]).sub(&w[1].mul(&w[2]));
        let mut forms = vec![g6];
        // remaining rows must also annihilate the kernel vector
        for r in 0..pencil.rows() {
            if rsel.contains(&r) {
                continue;
            }
            let mut h = BinForm::zero(4);
            for (cc, wc) in w.iter().enumerate() {
                h = h.add(&pencil.form(r, cc).mul(wc));
            }
            forms.push(h);
        }
        finish_from_forms(3, &pencil, forms)
    } else {
        // Generic rank 4: membership first requires a rank drop, i.e. all
        // 4x4 row minors vanish.
        let rows = pencil.rows();
        let mut minors = Vec::new();
        let cols = [0usize, 1, 2, 3];
        for quad in combinations(rows, 4) {
            minors.push(pencil.poly_minor(&quad, &cols));
        }
        finish_from_forms(3, &pencil, minors)
    }
}

/// Shared tail: drop zero forms, gcd the rest, root-find, verify each
/// candidate with the numeric membership test.
fn finish_from_forms(
    m: usize,
    pencil: &Pencil,
    forms: Vec<BinForm>,
) -> Result<ProdcountOutcome> {
    let scale = forms.iter().map(|f| f.max_abs()).fold(0.0, f64::max);
    let nonzero: Vec<BinForm> = forms
        .into_iter()
        .filter(|f| !f.is_zero(FORM_ZERO, scale))
        .collect();
    if nonzero.is_empty() {
        return Ok(ProdcountOutcome::AllOfP1);
    }
    let (g, well_conditioned) = gcd_many(&nonzero, GCD_TOL).expect("nonempty");
    if !well_conditioned {
        return Err(Error::Indeterminate(
            "eliminant gcd decision fell in the gray band".into(),
        ));
    }
    if g.deg() == 0 {
        return Ok(ProdcountOutcome::Finite(Vec::new()));
    }
    let candidates = g.roots(1e-9);
    let mut verified = Vec::new();
    for p in candidates {
        let res = membership_residual(pencil, m, p.a, p.b);
        if res < VERIFY_PASS {
            verified.push(p);
        } else if res < VERIFY_GRAY {
            return Err(Error::Indeterminate(format!(
                "candidate point has borderline membership residual {res:.3e}"
            )));
        } else {
            // A clear non-member root means the gcd overshot the true
            // eliminant; the elimination cannot be trusted.
            return Err(Error::Indeterminate(format!(
                "eliminant root fails membership (residual {res:.3e})"
            )));
        }
    }
    Ok(ProdcountOutcome::Finite(dedupe_points(verified)))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn best_row_triple(pencil: &Pencil) -> Result<Vec<usize>> {
    let mut best: Option<(f64, Vec<usize>)> = None;
    let (ar, ai, br, bi) = SAMPLE_POINTS[0];
    let q = pencil.at(c(ar, ai), c(br, bi));
    for triple in combinations(pencil.rows(), 3) {
        let mut sub = CMatrix::zeros(3, pencil.cols());
        for (i, &r) in triple.iter().enumerate() {
            sub.row_mut(i).copy_from(&q.row(r));
        }
        let gram = &sub * sub.adjoint();
        let s3 = gram
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
            .max(0.0)
            .sqrt();
        if best.as_ref().map_or(true, |(b, _)| s3 > *b) {
            best = Some((s3, triple));
        }
    }
    let (s3, triple) = best.ok_or_else(|| Error::Indeterminate("no row triple".into()))?;
    if s3 < 1e-10 {
        return Err(Error::Indeterminate(
            "no well-conditioned rank-3 row triple in the pencil".into(),
        ));
    }
    Ok(triple)
}

/// Cofactor parametrization of the kernel of a 3x4 polynomial matrix:
/// w_c = (-1)^c det(R minus column c).
fn cofactor_kernel(pencil: &Pencil, rows: &[usize]) -> [BinForm; 4] {
    let all_cols = [0usize, 1, 2, 3];
    let mut out: Vec<BinForm> = Vec::with_capacity(4);
    for drop in 0..4 {
        let cols: Vec<usize> = all_cols.iter().copied().filter(|&x| x != drop).collect();
        let minor = pencil.poly_minor(rows, &cols);
        out.push(if drop % 2 == 0 { minor } else { minor.scale(c(-1.0, 0.0)) });
    }
    [out.remove(0), out.remove(0), out.remove(0), out.remove(0)]
}

/// Relative residual of the best product vector in the kernel of Q(a,b):
/// `min_{unit product w} |Q w|^2 / sigma_max(Q)^2`. Zero when `(a,b)` lies
/// in X.
fn membership_residual(pencil: &Pencil, m: usize, a: Complex64, b: Complex64) -> f64 {
    // normalize the point so |a|^2 + |b|^2 = 1
    let pn = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / pn, b / pn);
    let q = pencil.at(a, b);
    let h = q.adjoint() * &q;
    let min = match m {
        2 => {
            // plain minimal eigenvalue of the 2x2 Gram matrix
            let (lo, _) = herm2_eigbounds(&h);
            lo
        }
        3 => min_product_quadratic(&h),
        _ => unreachable!(),
    };
    // Normalize by the pencil scale rather than |Q(a,b)|: at points where
    // the whole fiber degenerates, Q itself vanishes and the point is a
    // member.
    (min / pencil.scale_sq).max(0.0)
}

/// Public wrapper used by the grid oracle and by point lifting.
pub fn point_membership_residual(space: &Subspace, m: usize, a: Complex64, b: Complex64) -> f64 {
    let pencil = Pencil::build(space, m);
    if pencil.rows() == 0 {
        return 0.0;
    }
    membership_residual(&pencil, m, a, b)
}

/// Eigenvalue bounds of a 2x2 Hermitian matrix (analytic).
fn herm2_eigbounds(h: &CMatrix) -> (f64, f64) {
    let p = h[(0, 0)].re;
    let r = h[(1, 1)].re;
    let q = h[(0, 1)];
    let mid = 0.5 * (p + r);
    let rad = (0.25 * (p - r) * (p - r) + q.norm_sqr()).sqrt();
    (mid - rad, mid + rad)
}

fn herm2_min_vec(h: &CMatrix) -> CVector {
    let (lo, _) = herm2_eigbounds(h);
    let p = h[(0, 0)].re;
    let q = h[(0, 1)];
    let mut v = CVector::zeros(2);
    if q.norm() > 1e-14 * (p.abs() + h[(1, 1)].re.abs() + 1e-300) {
        v[0] = q;
        v[1] = c(lo - p, 0.0);
    } else if p <= h[(1, 1)].re {
        v[0] = c(1.0, 0.0);
    } else {
        v[1] = c(1.0, 0.0);
    }
    let nrm = v.norm();
    if nrm == 0.0 {
        v[0] = c(1.0, 0.0);
        return v;
    }
    v / c(nrm, 0.0)
}

/// Minimum of `<chi (x) xi| H |chi (x) xi>` over unit chi, xi in C^2, for a
/// 4x4 Hermitian PSD H. Alternating exact 2x2 eigensteps from four fixed
/// starts.
fn min_product_quadratic(h: &CMatrix) -> f64 {
    let starts = [
        (c(1.0, 0.0), c(0.0, 0.0)),
        (c(0.0, 0.0), c(1.0, 0.0)),
        (c(std::f64::consts::FRAC_1_SQRT_2, 0.0), c(std::f64::consts::FRAC_1_SQRT_2, 0.0)),
        (c(std::f64::consts::FRAC_1_SQRT_2, 0.0), c(0.0, std::f64::consts::FRAC_1_SQRT_2)),
    ];
    let mut best = f64::INFINITY;
    for (s0, s1) in starts {
        let mut chi = CVector::zeros(2);
        chi[0] = s0;
        chi[1] = s1;
        let mut val = f64::INFINITY;
        for _ in 0..60 {
            // best xi given chi
            let mut mxi = CMatrix::zeros(2, 2);
            for pp in 0..2 {
                for qq in 0..2 {
                    let mut acc = c(0.0, 0.0);
                    for i in 0..2 {
                        for ip in 0..2 {
                            acc += chi[i].conj() * chi[ip] * h[(2 * i + pp, 2 * ip + qq)];
                        }
                    }
                    mxi[(pp, qq)] = acc;
                }
            }
            let xi = herm2_min_vec(&mxi);
            // best chi given xi
            let mut mchi = CMatrix::zeros(2, 2);
            for i in 0..2 {
                for ip in 0..2 {
                    let mut acc = c(0.0, 0.0);
                    for pp in 0..2 {
                        for qq in 0..2 {
                            acc += xi[pp].conj() * xi[qq] * h[(2 * i + pp, 2 * ip + qq)];
                        }
                    }
                    mchi[(i, ip)] = acc;
                }
            }
            chi = herm2_min_vec(&mchi);
            let (lo, _) = herm2_eigbounds(&mchi);
            if (val - lo).abs() < 1e-16 {
                val = lo;
                break;
            }
            val = lo;
        }
        best = best.min(val);
    }
    best.max(0.0)
}

/// Lift a first-factor point to a full product state in L, returning the
/// per-factor states and the residual of the assembled state against L.
pub fn lift_point(
    space: &Subspace,
    m: usize,
    point: &ProjectivePoint,
) -> Option<(Vec<CVector>, f64)> {
    let pencil = Pencil::build(space, m);
    let cols = 1usize << (m - 1);
    let kernel = if pencil.rows() == 0 {
        crate::linalg::identity(cols)
    } else {
        let q = pencil.at(point.a, point.b);
        crate::linalg::null_space(&q, 1e-8)
    };
    if kernel.ncols() == 0 {
        return None;
    }
    let tail_factors: Vec<CVector> = match m {
        2 => vec![kernel.column(0).into_owned()],
        3 => {
            let (chi, xi) = product_in_matrix_space(&kernel)?;
            vec![chi, xi]
        }
        _ => return None,
    };
    let mut first = CVector::zeros(2);
    first[0] = point.a;
    first[1] = point.b;
    let nrm = first.norm();
    first /= c(nrm, 0.0);
    let mut factors = vec![first];
    for f in tail_factors {
        let nf = f.norm();
        factors.push(f / c(nf, 0.0));
    }
    // re-solve the remaining factors with the first factor pinned to the
    // reported point
    let dims = vec![2usize; m];
    let residual = super::search::polish_product(space, &dims, &mut factors, &[0], 80);
    Some((factors, residual))
}

/// Find a rank-one element chi xi^T in the column space of a 4-row matrix of
/// reshaped 2x2 matrices.
fn product_in_matrix_space(kernel: &CMatrix) -> Option<(CVector, CVector)> {
    let reshape = |v: &CVector| -> CMatrix {
        CMatrix::from_fn(2, 2, |i, j| v[2 * i + j])
    };
    let rank1_factors = |mat: &CMatrix| -> Option<(CVector, CVector)> {
        // chi from the top eigenvector of M M*, xi from the contraction
        // xi_j = sum_i conj(chi_i) M[i, j]
        let gram = mat * mat.adjoint();
        let eig = gram.symmetric_eigen();
        let (top, other) = if eig.eigenvalues[0] >= eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
        let l1 = eig.eigenvalues[top].max(0.0);
        let l2 = eig.eigenvalues[other].max(0.0);
        if l1 <= 0.0 || l2 > 1e-10 * l1 {
            return None;
        }
        let chi = eig.eigenvectors.column(top).into_owned();
        let row = chi.adjoint() * mat;
        let xi = CVector::from_fn(2, |j, _| row[(0, j)]);
        Some((chi, xi))
    };
    match kernel.ncols() {
        0 => None,
        1 => {
            let mat = reshape(&kernel.column(0).into_owned());
            rank1_factors(&mat)
        }
        _ => {
            // det(t0 K0 + t1 K1) is a binary quadratic; each root gives a
            // rank-one pencil member.
            let k0 = reshape(&kernel.column(0).into_owned());
            let k1 = reshape(&kernel.column(1).into_owned());
            let f00 = BinForm::linear(k0[(0, 0)], k1[(0, 0)]);
            let f01 = BinForm::linear(k0[(0, 1)], k1[(0, 1)]);
            let f10 = BinForm::linear(k0[(1, 0)], k1[(1, 0)]);
            let f11 = BinForm::linear(k0[(1, 1)], k1[(1, 1)]);
            let det = f00.mul(&f11).sub(&f01.mul(&f10));
            if det.is_zero(1e-12, det.max_abs().max(1.0)) {
                // entire pencil is rank <= 1; k0 itself works
                return rank1_factors(&k0);
            }
            for root in det.roots(1e-10) {
                let mat = &k0 * root.a + &k1 * root.b;
                if mat.norm() > 1e-9 {
                    if let Some(pair) = rank1_factors(&mat) {
                        return Some(pair);
                    }
                }
            }
            None
        }
    }
}

/// Result of the mesh-refined Bloch-sphere scan.
#[derive(Debug)]
pub struct GridCheck {
    pub agrees: bool,
    pub detected: Vec<ProjectivePoint>,
    pub detail: String,
}

/// Independent grid oracle: scan the Bloch sphere of first factors at coarse
/// resolution, refine every sub-threshold neighborhood down to `fine` (in
/// radians), and compare the detected membership set against a reported
/// outcome. Zero-disagreement is required for `agrees`.
pub fn bloch_grid_check(
    space: &Subspace,
    m: usize,
    outcome: &ProdcountOutcome,
    fine: f64,
) -> GridCheck {
    let pencil = Pencil::build(space, m);
    let coarse = 0.02f64;
    let member_tol = 1e-6;
    let suspect_tol = 1e-2;
    let at = |theta: f64, phi: f64| -> (Complex64, Complex64) {
        (
            c((theta / 2.0).cos(), 0.0),
            Complex64::from_polar((theta / 2.0).sin(), phi),
        )
    };
    let residual = |theta: f64, phi: f64| -> f64 {
        let (a, b) = at(theta, phi);
        if pencil.rows() == 0 {
            0.0
        } else {
            membership_residual(&pencil, m, a, b)
        }
    };
    let theta_steps = (std::f64::consts::PI / coarse).ceil() as usize + 1;
    let phi_steps = (2.0 * std::f64::consts::PI / coarse).ceil() as usize;
    let mut members_everywhere = true;
    let mut suspects: Vec<(f64, f64)> = Vec::new();
    for ti in 0..=theta_steps {
        let theta = std::f64::consts::PI * ti as f64 / theta_steps as f64;
        for pi_ in 0..phi_steps {
            let phi = 2.0 * std::f64::consts::PI * pi_ as f64 / phi_steps as f64;
            let r = residual(theta, phi);
            if r >= member_tol {
                members_everywhere = false;
            }
            if r < suspect_tol {
                suspects.push((theta, phi));
            }
        }
    }
    match outcome {
        ProdcountOutcome::AllOfP1 => {
            let agrees = members_everywhere;
            GridCheck {
                agrees,
                detected: Vec::new(),
                detail: if agrees {
                    "all grid points are members".into()
                } else {
                    "reported P1 but grid found non-members".into()
                },
            }
        }
        ProdcountOutcome::Finite(reported) => {
            if members_everywhere {
                return GridCheck {
                    agrees: false,
                    detected: Vec::new(),
                    detail: "reported finite but grid members everywhere".into(),
                };
            }
            // refine suspect neighborhoods to the fine resolution
            let mut detected: Vec<ProjectivePoint> = Vec::new();
            for (t0, p0) in suspects {
                let span = coarse;
                let steps = (2.0 * span / fine).ceil() as i64;
                let mut best = (f64::INFINITY, t0, p0);
                for dt in -steps / 2..=steps / 2 {
                    for dp in -steps / 2..=steps / 2 {
                        let t = (t0 + dt as f64 * fine).clamp(0.0, std::f64::consts::PI);
                        let p = p0 + dp as f64 * fine;
                        let r = residual(t, p);
                        if r < best.0 {
                            best = (r, t, p);
                        }
                    }
                }
                if best.0 < member_tol {
                    let (a, b) = at(best.1, best.2);
                    detected.push(ProjectivePoint::new(a, b));
                }
            }
            let detected = cluster_points(detected, 3.0 * coarse);
            // match detected against reported within a chordal tolerance
            let tol = 3.0 * fine;
            let mut agrees = true;
            let mut detail = String::new();
            for d in &detected {
                if !reported.iter().any(|r| r.distance(d) < tol) {
                    agrees = false;
                    detail = format!("grid point not reported: ({}, {})", d.a, d.b);
                }
            }
            for r in reported {
                if !detected.iter().any(|d| d.distance(r) < tol) {
                    agrees = false;
                    detail = format!("reported point missed by grid: ({}, {})", r.a, r.b);
                }
            }
            GridCheck { agrees, detected, detail }
        }
    }
}

fn cluster_points(points: Vec<ProjectivePoint>, radius: f64) -> Vec<ProjectivePoint> {
    let mut out: Vec<ProjectivePoint> = Vec::new();
    for p in points {
        if !out.iter().any(|q| q.distance(&p) < radius) {
            out.push(p);
        }
    }
    out
}
