//! Dense complex linear algebra shared by every other module: tensor
//! products, partial traces, rank-revealing decompositions, kernels and
//! orthogonal complements, plus seeded Haar-random state generation.
//!
//! Conventions fixed here and relied on everywhere else:
//! - qubits are indexed `0..n` and qubit 0 is the **most significant**
//!   tensor factor, so basis state `|b_0 b_1 ... b_{n-1}>` has index
//!   `sum b_q << (n-1-q)`;
//! - rank decisions use a tolerance relative to the largest
//!   eigenvalue/singular value, default [`DEFAULT_TOL`].

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Default relative rank tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Max entrywise deviation from Hermiticity.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

pub fn ensure_hermitian(m: &CMatrix, tol: f64) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "expected square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let defect = hermiticity_defect(m);
    if defect > tol {
        return Err(Error::NonHermitian(defect));
    }
    Ok(())
}

/// Kronecker product. Dimensions multiply.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn tensor_vec(a: &CVector, b: &CVector) -> CVector {
    let mut out = CVector::zeros(a.len() * b.len());
    for i in 0..a.len() {
        for j in 0..b.len() {
            out[i * b.len() + j] = a[i] * b[j];
        }
    }
    out
}

/// Tensor product of a list of single-qubit (or small) factors, leftmost
/// factor most significant.
pub fn tensor_all(factors: &[CVector]) -> CVector {
    let mut out = CVector::from_element(1, c(1.0, 0.0));
    for f in factors {
        out = tensor_vec(&out, f);
    }
    out
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn basis_vector(dim: usize, idx: usize) -> CVector {
    let mut v = CVector::zeros(dim);
    v[idx] = c(1.0, 0.0);
    v
}

/// Scatter the bits of `sub_idx` (over the sorted qubit positions `positions`)
/// into an n-qubit basis index, leaving all other bits zero.
pub fn embed_bits(sub_idx: usize, positions: &[usize], n: usize) -> usize {
    let mut full = 0usize;
    let k = positions.len();
    for (rank, &q) in positions.iter().enumerate() {
        let bit = (sub_idx >> (k - 1 - rank)) & 1;
        full |= bit << (n - 1 - q);
    }
    full
}

/// Complement of a sorted qubit subset within `0..n`.
pub fn complement_set(subset: &[usize], n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n - subset.len());
    let mut it = subset.iter().peekable();
    for q in 0..n {
        if it.peek() == Some(&&q) {
            it.next();
        } else {
            out.push(q);
        }
    }
    out
}

/// Reduced density matrix on the sorted qubit subset `keep`.
///
/// `rho` must be a 2^n x 2^n density matrix (Hermitian; trace is preserved,
/// not checked). Returns the 2^|keep| x 2^|keep| partial trace over the
/// complement of `keep`.
pub fn partial_trace(rho: &CMatrix, n: usize, keep: &[usize]) -> Result<CMatrix> {
    let dim = 1usize << n;
    if rho.nrows() != dim || rho.ncols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "partial_trace: expected {dim}x{dim}, got {}x{}",
            rho.nrows(),
            rho.ncols()
        )));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&q| q >= n) {
        return Err(Error::InvalidParameter(
            "partial_trace: keep must be a sorted subset of 0..n".into(),
        ));
    }
    let traced = complement_set(keep, n);
    let kd = 1usize << keep.len();
    let td = 1usize << traced.len();
    let mut out = CMatrix::zeros(kd, kd);
    for i in 0..kd {
        let fi = embed_bits(i, keep, n);
        for j in 0..kd {
            let fj = embed_bits(j, keep, n);
            let mut acc = c(0.0, 0.0);
            for e in 0..td {
                let fe = embed_bits(e, &traced, n);
                acc += rho[(fi | fe, fj | fe)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Reshape an n-qubit state into a matrix whose rows are indexed by the
/// sorted qubit subset `rows` and columns by its complement.
pub fn reshape_state(psi: &CVector, n: usize, rows: &[usize]) -> CMatrix {
    let cols = complement_set(rows, n);
    let rd = 1usize << rows.len();
    let cd = 1usize << cols.len();
    let mut m = CMatrix::zeros(rd, cd);
    for r in 0..rd {
        let fr = embed_bits(r, rows, n);
        for cc in 0..cd {
            let fc = embed_bits(cc, &cols, n);
            m[(r, cc)] = psi[fr | fc];
        }
    }
    m
}

/// A linear subspace held as an orthonormal column basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: CMatrix,
    tol: f64,
}

impl Subspace {
    /// Wrap an already-orthonormal basis. Checked to within `10 * tol`.
    pub fn from_orthonormal(basis: CMatrix, tol: f64) -> Result<Self> {
        let ambient_dim = basis.nrows();
        let gram = basis.adjoint() * &basis;
        let defect = (&gram - identity(basis.ncols())).norm();
        if defect > 10.0 * tol.max(DEFAULT_TOL) {
            return Err(Error::InvalidParameter(format!(
                "basis columns not orthonormal (defect {defect:.3e})"
            )));
        }
        Ok(Subspace { ambient_dim, basis, tol })
    }

    /// Orthonormalize arbitrary spanning columns, dropping rank-deficient
    /// directions at relative tolerance `tol`.
    pub fn from_columns(cols: &CMatrix, tol: f64) -> Self {
        let basis = orthonormal_column_space(cols, tol);
        Subspace { ambient_dim: cols.nrows(), basis, tol }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: identity(ambient_dim),
            tol: DEFAULT_TOL,
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: CMatrix::zeros(ambient_dim, 0),
            tol: DEFAULT_TOL,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Projector B B* onto the subspace.
    pub fn projector(&self) -> CMatrix {
        if self.dim() == 0 {
            return CMatrix::zeros(self.ambient_dim, self.ambient_dim);
        }
        &self.basis * self.basis.adjoint()
    }

    /// Project a vector onto the subspace.
    pub fn project(&self, v: &CVector) -> CVector {
        if self.dim() == 0 {
            return CVector::zeros(self.ambient_dim);
        }
        &self.basis * (self.basis.adjoint() * v)
    }

    /// Squared norm distance of a unit vector from the subspace.
    pub fn residual(&self, v: &CVector) -> f64 {
        let p = self.project(v);
        (v - p).norm_squared()
    }

    /// Orthogonal complement within the ambient space.
    pub fn complement(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient_dim);
        }
        let p = identity(self.ambient_dim) - self.projector();
        // The complement projector is Hermitian with eigenvalues {0, 1};
        // keep eigenvectors at eigenvalue ~1.
        let eig = p.symmetric_eigen();
        let mut cols = Vec::new();
        for (i, ev) in eig.eigenvalues.iter().enumerate() {
            if *ev > 0.5 {
                cols.push(eig.eigenvectors.column(i).into_owned());
            }
        }
        let basis = if cols.is_empty() {
            CMatrix::zeros(self.ambient_dim, 0)
        } else {
            CMatrix::from_columns(&cols)
        };
        Subspace {
            ambient_dim: self.ambient_dim,
            basis,
            tol: self.tol,
        }
    }

    /// Intersection with another subspace of the same ambient dimension,
    /// computed as the common kernel of the two complement projectors.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(
                "subspace intersection: ambient dims differ".into(),
            ));
        }
        let a = identity(self.ambient_dim) - self.projector();
        let b = identity(self.ambient_dim) - other.projector();
        kernel_intersection(&[a, b], self.ambient_dim, self.tol.max(other.tol))
    }
}

/// Orthonormal basis of the column space.
///
/// Built on the Hermitian eigendecomposition of the Gram matrix (the complex
/// SVD of rank-deficient matrices is not reliable in this stack), so `tol`
/// thresholds the *squared* singular values relative to the largest one —
/// matching the eigenvalue tolerance used by [`support`].
pub fn orthonormal_column_space(m: &CMatrix, tol: f64) -> CMatrix {
    if m.ncols() == 0 || m.nrows() == 0 {
        return CMatrix::zeros(m.nrows(), 0);
    }
    if m.nrows() <= m.ncols() {
        // eigenvectors of M M* with nonnegligible eigenvalue
        let gram = m * m.adjoint();
        let eig = gram.symmetric_eigen();
        let emax = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
        let mut cols = Vec::new();
        for (i, ev) in eig.eigenvalues.iter().enumerate() {
            if emax > 0.0 && *ev > tol * emax {
                cols.push(eig.eigenvectors.column(i).into_owned());
            }
        }
        if cols.is_empty() {
            CMatrix::zeros(m.nrows(), 0)
        } else {
            CMatrix::from_columns(&cols)
        }
    } else {
        // tall matrix: right Gram is smaller; lift v through M and normalize
        let gram = m.adjoint() * m;
        let eig = gram.symmetric_eigen();
        let emax = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
        let mut cols = Vec::new();
        for (i, ev) in eig.eigenvalues.iter().enumerate() {
            if emax > 0.0 && *ev > tol * emax {
                let u = m * eig.eigenvectors.column(i);
                let nrm = u.norm();
                cols.push(u / c(nrm, 0.0));
            }
        }
        if cols.is_empty() {
            CMatrix::zeros(m.nrows(), 0)
        } else {
            // re-orthonormalize: lifted vectors are orthogonal in exact
            // arithmetic but can drift for clustered eigenvalues
            gram_schmidt(CMatrix::from_columns(&cols))
        }
    }
}

fn gram_schmidt(mut m: CMatrix) -> CMatrix {
    let mut kept: Vec<CVector> = Vec::new();
    for j in 0..m.ncols() {
        let mut v = m.column(j).into_owned();
        for _round in 0..2 {
            for u in &kept {
                let overlap = (u.adjoint() * &v)[(0, 0)];
                v -= u * overlap;
            }
        }
        let nrm = v.norm();
        if nrm > 1e-12 {
            kept.push(v / c(nrm, 0.0));
        }
    }
    if kept.is_empty() {
        m = CMatrix::zeros(m.nrows(), 0);
        m
    } else {
        CMatrix::from_columns(&kept)
    }
}

/// Threshold on eigenvalues of the right Gram matrix used for null-space
/// membership: squared singular values below this (relative to the largest)
/// count as zero.
fn gram_null_threshold(tol: f64) -> f64 {
    (tol * tol).max(1e-12)
}

/// Null space of a (possibly rectangular) matrix at relative tolerance,
/// computed from the right Gram matrix.
pub fn null_space(m: &CMatrix, tol: f64) -> CMatrix {
    let cols = m.ncols();
    if cols == 0 {
        return CMatrix::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return identity(cols);
    }
    let gram = m.adjoint() * m;
    let eig = gram.symmetric_eigen();
    let emax = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let thresh = gram_null_threshold(tol);
    let mut null_cols = Vec::new();
    for (i, ev) in eig.eigenvalues.iter().enumerate() {
        if emax <= 0.0 || *ev <= thresh * emax {
            null_cols.push(eig.eigenvectors.column(i).into_owned());
        }
    }
    if null_cols.is_empty() {
        CMatrix::zeros(cols, 0)
    } else {
        CMatrix::from_columns(&null_cols)
    }
}

/// Span of eigenvectors of a PSD Hermitian matrix with eigenvalue above
/// `tol` relative to the largest eigenvalue.
pub fn support(rho: &CMatrix, tol: f64) -> Result<Subspace> {
    ensure_hermitian(rho, 1e-8)?;
    let eig = rho.clone().symmetric_eigen();
    let emax = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let mut cols = Vec::new();
    for (i, ev) in eig.eigenvalues.iter().enumerate() {
        if emax > 0.0 && *ev > tol * emax {
            cols.push(eig.eigenvectors.column(i).into_owned());
        }
    }
    let basis = if cols.is_empty() {
        CMatrix::zeros(rho.nrows(), 0)
    } else {
        CMatrix::from_columns(&cols)
    };
    Subspace::from_orthonormal(basis, tol)
}

/// Span of eigenvectors with eigenvalue at or below the relative tolerance;
/// the orthogonal complement of [`support`].
pub fn kernel(rho: &CMatrix, tol: f64) -> Result<Subspace> {
    ensure_hermitian(rho, 1e-8)?;
    let eig = rho.clone().symmetric_eigen();
    let emax = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let mut cols = Vec::new();
    for (i, ev) in eig.eigenvalues.iter().enumerate() {
        if emax == 0.0 || *ev <= tol * emax {
            cols.push(eig.eigenvectors.column(i).into_owned());
        }
    }
    let basis = if cols.is_empty() {
        CMatrix::zeros(rho.nrows(), 0)
    } else {
        CMatrix::from_columns(&cols)
    };
    Subspace::from_orthonormal(basis, tol)
}

/// Common null space of a list of constraint matrices with `ambient_dim`
/// columns each. The empty list yields the full space.
pub fn kernel_intersection(
    constraints: &[CMatrix],
    ambient_dim: usize,
    tol: f64,
) -> Result<Subspace> {
    let mut total_rows = 0usize;
    for cst in constraints {
        if cst.ncols() != ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "kernel_intersection: constraint has {} columns, ambient is {ambient_dim}",
                cst.ncols()
            )));
        }
        total_rows += cst.nrows();
    }
    if total_rows == 0 {
        return Ok(Subspace::full(ambient_dim));
    }
    let mut stacked = CMatrix::zeros(total_rows, ambient_dim);
    let mut at = 0usize;
    for cst in constraints {
        stacked
            .view_mut((at, 0), (cst.nrows(), ambient_dim))
            .copy_from(cst);
        at += cst.nrows();
    }
    let basis = null_space(&stacked, tol);
    Subspace::from_orthonormal(basis, tol)
}

/// Support of the reduced density matrix of a pure state on the sorted
/// subset `keep`, computed from the reshaped amplitude matrix rather than
/// the density matrix. Equivalent to `support(partial_trace(..))`.
pub fn state_support(psi: &CVector, n: usize, keep: &[usize], tol: f64) -> Subspace {
    let m = reshape_state(psi, n, keep);
    let basis = orthonormal_column_space(&m, tol);
    Subspace {
        ambient_dim: 1usize << keep.len(),
        basis,
        tol,
    }
}

/// Haar-random pure state on `n` qubits (normalized complex Gaussian).
pub fn haar_state<R: Rng>(n: usize, rng: &mut R) -> CVector {
    let dim = 1usize << n;
    gaussian_vector(dim, rng)
}

/// Normalized complex Gaussian vector in the given dimension.
pub fn gaussian_vector<R: Rng>(dim: usize, rng: &mut R) -> CVector {
    let mut v = CVector::zeros(dim);
    for i in 0..dim {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        v[i] = c(re, im);
    }
    let nrm = v.norm();
    v / c(nrm, 0.0)
}

/// Random product state: one Gaussian-normalized factor per qubit.
pub fn random_product_state<R: Rng>(n: usize, rng: &mut R) -> (CVector, Vec<CVector>) {
    let factors: Vec<CVector> = (0..n).map(|_| gaussian_vector(2, rng)).collect();
    (tensor_all(&factors), factors)
}

/// Haar-random subspace of the given dimension.
pub fn random_subspace<R: Rng>(ambient_dim: usize, dim: usize, rng: &mut R) -> Subspace {
    assert!(dim <= ambient_dim);
    let mut m = CMatrix::zeros(ambient_dim, dim);
    for j in 0..dim {
        m.set_column(j, &gaussian_vector(ambient_dim, rng));
    }
    Subspace::from_columns(&m, DEFAULT_TOL)
}

/// Projector onto a random subspace of the orthogonal complement of `v`.
pub fn random_projector_orthogonal_to<R: Rng>(
    v: &CVector,
    rank: usize,
    rng: &mut R,
) -> Result<CMatrix> {
    let dim = v.len();
    if rank > dim - 1 {
        return Err(Error::InvalidParameter(format!(
            "rank {rank} exceeds complement dimension {}",
            dim - 1
        )));
    }
    // Draw rank Gaussian vectors, project out v, orthonormalize.
    let vn = v / c(v.norm(), 0.0);
    let mut cols = CMatrix::zeros(dim, rank);
    for j in 0..rank {
        let g = gaussian_vector(dim, rng);
        let overlap = vn.adjoint() * &g;
        let g = g - &vn * overlap[(0, 0)];
        cols.set_column(j, &g);
    }
    let basis = orthonormal_column_space(&cols, DEFAULT_TOL);
    if basis.ncols() != rank {
        // Measure-zero degeneracy; retry with fresh randomness.
        return random_projector_orthogonal_to(v, rank, rng);
    }
    Ok(&basis * basis.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    fn random_density(n: usize, rng: &mut ChaCha12Rng) -> CMatrix {
        let psi = haar_state(n, rng);
        &psi * psi.adjoint()
    }

    #[test]
    fn tensor_identity_case() {
        let i2 = identity(2);
        assert_eq!(tensor(&i2, &i2), identity(4));
    }

    #[test]
    fn tensor_basis_case() {
        let zero = basis_vector(2, 0);
        let one = basis_vector(2, 1);
        let out = tensor_vec(&zero, &one);
        assert_eq!(out, basis_vector(4, 1));
    }

    #[test]
    fn tensor_bitflip_on_00() {
        // (X x X)|00> = |11>, expanded by hand: the 4x4 product maps index 0 to 3.
        let x = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let xx = tensor(&x, &x);
        let out = &xx * basis_vector(4, 0);
        assert!((out - basis_vector(4, 3)).norm() < 1e-12);
    }

    #[test]
    fn tensor_mixed_product_property() {
        let mut r = rng(7);
        for _ in 0..20 {
            let a = CMatrix::from_fn(3, 3, |_, _| c(r.gen::<f64>() - 0.5, r.gen::<f64>() - 0.5));
            let b = CMatrix::from_fn(2, 2, |_, _| c(r.gen::<f64>() - 0.5, r.gen::<f64>() - 0.5));
            let x = gaussian_vector(3, &mut r);
            let y = gaussian_vector(2, &mut r);
            let lhs = tensor(&a, &b) * tensor_vec(&x, &y);
            let rhs = tensor_vec(&(&a * &x), &(&b * &y));
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn tensor_associative() {
        let mut r = rng(8);
        let a = CMatrix::from_fn(2, 2, |_, _| c(r.gen::<f64>() - 0.5, r.gen::<f64>() - 0.5));
        let b = CMatrix::from_fn(2, 3, |_, _| c(r.gen::<f64>() - 0.5, r.gen::<f64>() - 0.5));
        let d = CMatrix::from_fn(3, 2, |_, _| c(r.gen::<f64>() - 0.5, r.gen::<f64>() - 0.5));
        let lhs = tensor(&tensor(&a, &b), &d);
        let rhs = tensor(&a, &tensor(&b, &d));
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_product_state() {
        // rho = |00><00|, keep qubit 0 -> |0><0|
        let psi = basis_vector(4, 0);
        let rho = &psi * psi.adjoint();
        let red = partial_trace(&rho, 2, &[0]).unwrap();
        let expect = &basis_vector(2, 0) * basis_vector(2, 0).adjoint();
        assert!((red - expect).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_bell_state() {
        // |Phi+> = (|00> + |11>)/sqrt(2), either marginal is I/2
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut psi = CVector::zeros(4);
        psi[0] = c(s, 0.0);
        psi[3] = c(s, 0.0);
        let rho = &psi * psi.adjoint();
        let red = partial_trace(&rho, 2, &[0]).unwrap();
        assert!((red - identity(2) * c(0.5, 0.0)).norm() < 1e-12);
    }

    /// Independent einsum-style contraction oracle for the partial trace.
    fn partial_trace_oracle(psi: &CVector, n: usize, keep: &[usize]) -> CMatrix {
        let traced = complement_set(keep, n);
        let kd = 1usize << keep.len();
        let td = 1usize << traced.len();
        let mut out = CMatrix::zeros(kd, kd);
        for i in 0..kd {
            for j in 0..kd {
                let mut acc = c(0.0, 0.0);
                for e in 0..td {
                    let fi = embed_bits(i, keep, n) | embed_bits(e, &traced, n);
                    let fj = embed_bits(j, keep, n) | embed_bits(e, &traced, n);
                    acc += psi[fi] * psi[fj].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    #[test]
    fn partial_trace_matches_contraction_oracle() {
        let mut r = rng(11);
        let psi = haar_state(3, &mut r);
        let rho = &psi * psi.adjoint();
        let red = partial_trace(&rho, 3, &[0, 2]).unwrap();
        let oracle = partial_trace_oracle(&psi, 3, &[0, 2]);
        assert!((red - oracle).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_composes() {
        let mut r = rng(13);
        for _ in 0..10 {
            let rho = random_density(4, &mut r);
            // trace out qubit 3 then qubit 1 == keep {0,2} directly
            let step1 = partial_trace(&rho, 4, &[0, 1, 2]).unwrap();
            let step2 = partial_trace(&step1, 3, &[0, 2]).unwrap();
            let direct = partial_trace(&rho, 4, &[0, 2]).unwrap();
            assert!((step2 - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn support_full_space_for_maximally_mixed() {
        let rho = identity(2) * c(0.5, 0.0);
        let s = support(&rho, DEFAULT_TOL).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn support_rank_one() {
        let psi = basis_vector(2, 0);
        let rho = &psi * psi.adjoint();
        let s = support(&rho, DEFAULT_TOL).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.residual(&psi) < 1e-20);
    }

    #[test]
    fn support_by_spectral_synthesis() {
        // Eigenvalues {0.7, 0.3, 1e-14, 0} at tol 1e-10 -> 2-dim support.
        let mut r = rng(17);
        let u = {
            let m = CMatrix::from_fn(4, 4, |_, _| c(r.gen::<f64>() - 0.5, r.gen::<f64>() - 0.5));
            orthonormal_column_space(&m, 1e-14)
        };
        assert_eq!(u.ncols(), 4);
        let evals = [0.7, 0.3, 1e-14, 0.0];
        let mut rho = CMatrix::zeros(4, 4);
        for (i, ev) in evals.iter().enumerate() {
            let col = u.column(i).into_owned();
            rho += &col * col.adjoint() * c(*ev, 0.0);
        }
        let s = support(&rho, 1e-10).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn support_rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]);
        assert!(matches!(support(&m, 1e-10), Err(Error::NonHermitian(_))));
    }

    #[test]
    fn support_plus_kernel_is_identity() {
        let mut r = rng(19);
        for _ in 0..10 {
            let rho = {
                let a = random_density(3, &mut r);
                let b = random_density(3, &mut r);
                a * c(0.4, 0.0) + b * c(0.6, 0.0)
            };
            let s = support(&rho, DEFAULT_TOL).unwrap();
            let k = kernel(&rho, DEFAULT_TOL).unwrap();
            assert_eq!(s.dim() + k.dim(), 8);
            let sum = s.projector() + k.projector();
            assert!((sum - identity(8)).norm() < 1e-10);
        }
    }

    #[test]
    fn kernel_intersection_empty_list() {
        let s = kernel_intersection(&[], 4, DEFAULT_TOL).unwrap();
        assert_eq!(s.dim(), 4);
    }

    #[test]
    fn kernel_intersection_single_bra() {
        // constraint <00| in dim 4 -> 3-dim space orthogonal to |00>
        let bra = basis_vector(4, 0).adjoint();
        let m = CMatrix::from_rows(&[bra.row(0).into_owned()]);
        let s = kernel_intersection(&[m], 4, DEFAULT_TOL).unwrap();
        assert_eq!(s.dim(), 3);
        assert!(s.project(&basis_vector(4, 0)).norm() < 1e-12);
    }

    #[test]
    fn kernel_intersection_matches_svd_rank_oracle() {
        let mut r = rng(23);
        for _ in 0..10 {
            let v1 = gaussian_vector(8, &mut r);
            let v2 = gaussian_vector(8, &mut r);
            let c1 = CMatrix::from_rows(&[v1.adjoint().row(0).into_owned()]);
            let c2 = CMatrix::from_rows(&[v2.adjoint().row(0).into_owned()]);
            let s = kernel_intersection(&[c1.clone(), c2.clone()], 8, DEFAULT_TOL).unwrap();
            assert_eq!(s.dim(), 6);
            // oracle: rank of the stacked matrix via singular values
            let mut stacked = CMatrix::zeros(2, 8);
            stacked.view_mut((0, 0), (1, 8)).copy_from(&c1);
            stacked.view_mut((1, 0), (1, 8)).copy_from(&c2);
            let sv = stacked.svd(false, false).singular_values;
            let rank = sv.iter().filter(|s| **s > 1e-10).count();
            assert_eq!(s.dim(), 8 - rank);
            // every basis vector annihilated by both constraints
            for j in 0..s.dim() {
                let b = s.basis().column(j).into_owned();
                assert!((&c1 * &b).norm() < 1e-10);
                assert!((&c2 * &b).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn state_support_matches_partial_trace_route() {
        let mut r = rng(29);
        for _ in 0..10 {
            let psi = haar_state(4, &mut r);
            let rho = &psi * psi.adjoint();
            let keep = [1usize, 3];
            let a = state_support(&psi, 4, &keep, DEFAULT_TOL);
            let red = partial_trace(&rho, 4, &keep).unwrap();
            let b = support(&red, DEFAULT_TOL).unwrap();
            assert_eq!(a.dim(), b.dim());
            assert!((a.projector() - b.projector()).norm() < 1e-9);
        }
    }

    #[test]
    fn complement_roundtrip() {
        let mut r = rng(31);
        let s = random_subspace(6, 2, &mut r);
        let comp = s.complement();
        assert_eq!(comp.dim(), 4);
        assert!((s.projector() + comp.projector() - identity(6)).norm() < 1e-9);
    }

    #[test]
    fn haar_state_deterministic_under_seed() {
        let a = haar_state(3, &mut rng(42));
        let b = haar_state(3, &mut rng(42));
        assert_eq!(a, b);
    }
}
