//! Quantum k-SAT instance model: n qubits with a projector on each k-subset,
//! restriction to qubit subsets, and seeded generators of instances that are
//! certified satisfiable or certified far from product-satisfiable.
//!
//! Subsets are sorted, 0-based, and absent map entries denote the zero
//! projector, so dense instances (34 220 subsets at n = 60, k = 3) only store
//! their nontrivial constraints.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    self, c, embed_bits, haar_state, partial_trace, random_product_state,
    random_projector_orthogonal_to, tensor_all, CMatrix, CVector,
};

/// Tolerance for projector validity (Hermitian, idempotent).
pub const PROJECTOR_TOL: f64 = 1e-10;
/// Tolerance for certificate witnesses annihilating their instance.
pub const WITNESS_TOL: f64 = 1e-9;

/// An instance of quantum k-SAT on `n` qubits.
#[derive(Debug, Clone)]
pub struct QSatInstance {
    n: usize,
    k: usize,
    projectors: BTreeMap<Vec<usize>, CMatrix>,
}

impl QSatInstance {
    /// Build an instance, validating every stored projector.
    pub fn new(
        n: usize,
        k: usize,
        projectors: BTreeMap<Vec<usize>, CMatrix>,
    ) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!(
                "locality k={k} out of range for n={n}"
            )));
        }
        let dim = 1usize << k;
        for (subset, p) in &projectors {
            if subset.len() != k
                || subset.windows(2).any(|w| w[0] >= w[1])
                || subset.iter().any(|&q| q >= n)
            {
                return Err(Error::InvalidParameter(format!(
                    "subset {subset:?} is not a sorted k-subset of 0..{n}"
                )));
            }
            if p.nrows() != dim || p.ncols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "projector on {subset:?} is {}x{}, expected {dim}x{dim}",
                    p.nrows(),
                    p.ncols()
                )));
            }
            validate_projector(p)?;
        }
        Ok(QSatInstance { n, k, projectors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Nontrivial projectors, keyed by sorted subset.
    pub fn projectors(&self) -> &BTreeMap<Vec<usize>, CMatrix> {
        &self.projectors
    }

    pub fn num_nontrivial(&self) -> usize {
        self.projectors.len()
    }

    /// Projector on a given sorted subset; absent entries are zero.
    pub fn projector(&self, subset: &[usize]) -> Option<&CMatrix> {
        self.projectors.get(subset)
    }

    /// Restriction to the sorted subset `c_set`: keeps exactly the projectors
    /// whose subset lies inside `c_set`, relabelling qubits
    /// order-preservingly. If `|c_set| < k` the result has no projectors.
    pub fn restrict(&self, c_set: &[usize]) -> Result<QSatInstance> {
        if c_set.is_empty()
            || c_set.windows(2).any(|w| w[0] >= w[1])
            || c_set.iter().any(|&q| q >= self.n)
        {
            return Err(Error::InvalidParameter(
                "restrict: C must be a nonempty sorted subset of 0..n".into(),
            ));
        }
        let relabel: BTreeMap<usize, usize> =
            c_set.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let mut kept = BTreeMap::new();
        if c_set.len() >= self.k {
            for (subset, p) in &self.projectors {
                if subset.iter().all(|q| relabel.contains_key(q)) {
                    let new_subset: Vec<usize> = subset.iter().map(|q| relabel[q]).collect();
                    kept.insert(new_subset, p.clone());
                }
            }
        }
        // |C| < k leaves no room for any k-subset: trivially satisfiable
        // instance with degenerate locality min(k, |C|).
        QSatInstance::new(c_set.len(), self.k.min(c_set.len()), kept)
    }

    /// Max over constraints of the norm the projector leaves on a global
    /// state. Only usable at small n.
    pub fn max_constraint_residual_state(&self, psi: &CVector) -> Result<f64> {
        let dim = 1usize << self.n;
        if psi.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "state has dim {}, expected {dim}",
                psi.len()
            )));
        }
        let mut worst = 0.0f64;
        for (subset, p) in &self.projectors {
            let out = apply_local(psi, self.n, subset, p);
            worst = worst.max(out.norm());
        }
        Ok(worst)
    }

    /// Max over constraints of `|Pi_s phi_s|` for a product state given by
    /// per-qubit factors. Scales to large n.
    pub fn max_constraint_residual_product(&self, factors: &[CVector]) -> Result<f64> {
        if factors.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{} factors for {} qubits",
                factors.len(),
                self.n
            )));
        }
        let mut worst = 0.0f64;
        for (subset, p) in &self.projectors {
            let local: Vec<CVector> = subset.iter().map(|&q| factors[q].clone()).collect();
            let phi = tensor_all(&local);
            worst = worst.max((p * phi).norm());
        }
        Ok(worst)
    }

    /// Total energy `sum_s <phi_s| Pi_s |phi_s>` of a product state.
    pub fn product_energy(&self, factors: &[CVector]) -> Result<f64> {
        if factors.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{} factors for {} qubits",
                factors.len(),
                self.n
            )));
        }
        let mut total = 0.0f64;
        for (subset, p) in &self.projectors {
            let local: Vec<CVector> = subset.iter().map(|&q| factors[q].clone()).collect();
            let phi = tensor_all(&local);
            total += (phi.adjoint() * p * &phi)[(0, 0)].re;
        }
        Ok(total)
    }
}

fn validate_projector(p: &CMatrix) -> Result<()> {
    let h = linalg::hermiticity_defect(p);
    if h > PROJECTOR_TOL {
        return Err(Error::NonHermitian(h));
    }
    let idem = (p * p - p).norm();
    if idem > PROJECTOR_TOL * (1.0 + p.norm()) {
        return Err(Error::InvalidParameter(format!(
            "matrix is not idempotent (|P^2 - P| = {idem:.3e})"
        )));
    }
    Ok(())
}

/// Apply an operator living on the sorted qubit subset `subset` to an
/// n-qubit state.
pub fn apply_local(psi: &CVector, n: usize, subset: &[usize], op: &CMatrix) -> CVector {
    let rest = linalg::complement_set(subset, n);
    let kd = 1usize << subset.len();
    let rd = 1usize << rest.len();
    let mut out = CVector::zeros(psi.len());
    let mut block = CVector::zeros(kd);
    for e in 0..rd {
        let fe = embed_bits(e, &rest, n);
        for a in 0..kd {
            block[a] = psi[embed_bits(a, subset, n) | fe];
        }
        let w = op * &block;
        for a in 0..kd {
            out[embed_bits(a, subset, n) | fe] = w[a];
        }
    }
    out
}

/// Witness carried by a certificate.
#[derive(Debug, Clone)]
pub enum Witness {
    /// Per-qubit factors of a product state.
    Product(Vec<CVector>),
    /// Full amplitude vector of a (generally entangled) state.
    State(CVector),
}

/// Ground truth attached to a generated instance.
#[derive(Debug, Clone)]
pub struct InstanceCertificate {
    pub kind: CertificateKind,
    pub witness: Option<Witness>,
    pub eps: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    #[serde(rename = "satisfiable-by-product")]
    SatisfiableByProduct,
    #[serde(rename = "satisfiable-entangled")]
    SatisfiableEntangled,
    #[serde(rename = "eps-far")]
    EpsFar,
}

impl InstanceCertificate {
    /// Check the certificate against its instance: satisfiable witnesses must
    /// annihilate every projector within [`WITNESS_TOL`]; eps-far certificates
    /// must carry eps in (0,1).
    pub fn verify(&self, inst: &QSatInstance) -> Result<()> {
        match self.kind {
            CertificateKind::EpsFar => {
                let eps = self
                    .eps
                    .ok_or_else(|| Error::InvalidParameter("eps-far without eps".into()))?;
                if !(0.0 < eps && eps < 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "eps = {eps} outside (0,1)"
                    )));
                }
                Ok(())
            }
            _ => {
                let witness = self
                    .witness
                    .as_ref()
                    .ok_or_else(|| Error::InvalidParameter("satisfiable without witness".into()))?;
                let resid = match witness {
                    Witness::Product(f) => inst.max_constraint_residual_product(f)?,
                    Witness::State(psi) => inst.max_constraint_residual_state(psi)?,
                };
                if resid > WITNESS_TOL {
                    return Err(Error::InvalidParameter(format!(
                        "witness residual {resid:.3e} exceeds {WITNESS_TOL:.0e}"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// How many kernel directions each generated projector excludes.
#[derive(Debug, Clone, Copy)]
pub enum RankProfile {
    Fixed(usize),
    /// Inclusive uniform range.
    Uniform(usize, usize),
}

impl RankProfile {
    fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        match *self {
            RankProfile::Fixed(r) => r,
            RankProfile::Uniform(lo, hi) => rng.gen_range(lo..=hi),
        }
    }

    fn max(&self) -> usize {
        match *self {
            RankProfile::Fixed(r) => r,
            RankProfile::Uniform(_, hi) => hi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatMode {
    ProductGroundState,
    EntangledGroundState,
}

/// Entangled-mode generation needs the full 2^n state vector.
const ENTANGLED_MODE_MAX_N: usize = 14;

/// Generate a certified satisfiable instance.
///
/// Product mode draws a random product state `phi` and, for every k-subset s,
/// a projector onto a random subspace of the orthogonal complement of
/// `phi_s`, with rank from `rank_profile`. Entangled mode draws a random
/// global state and sets each projector to the projector onto the kernel of
/// the reduced density matrix on s.
pub fn gen_satisfiable(
    n: usize,
    k: usize,
    seed: u64,
    mode: SatMode,
    rank_profile: RankProfile,
) -> Result<(QSatInstance, InstanceCertificate)> {
    if n < k || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "need n >= k >= 1, got n={n}, k={k}"
        )));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    match mode {
        SatMode::ProductGroundState => {
            let max_rank = (1usize << k) - 1;
            if rank_profile.max() > max_rank {
                return Err(Error::InvalidParameter(format!(
                    "rank profile exceeds 2^k - 1 = {max_rank}"
                )));
            }
            let (_, factors) = random_product_state(n, &mut rng);
            let mut projectors = BTreeMap::new();
            for subset in (0..n).combinations(k) {
                let rank = rank_profile.sample(&mut rng);
                if rank == 0 {
                    continue;
                }
                let local: Vec<CVector> = subset.iter().map(|&q| factors[q].clone()).collect();
                let phi_s = tensor_all(&local);
                let p = random_projector_orthogonal_to(&phi_s, rank, &mut rng)?;
                projectors.insert(subset, clean_projector(p));
            }
            let inst = QSatInstance::new(n, k, projectors)?;
            let cert = InstanceCertificate {
                kind: CertificateKind::SatisfiableByProduct,
                witness: Some(Witness::Product(factors)),
                eps: None,
            };
            Ok((inst, cert))
        }
        SatMode::EntangledGroundState => {
            if n > ENTANGLED_MODE_MAX_N {
                return Err(Error::InvalidParameter(format!(
                    "entangled mode needs the full state vector; n={n} exceeds {ENTANGLED_MODE_MAX_N}"
                )));
            }
            let psi = haar_state(n, &mut rng);
            let rho = &psi * psi.adjoint();
            let mut projectors = BTreeMap::new();
            for subset in (0..n).combinations(k) {
                let red = partial_trace(&rho, n, &subset)?;
                let ker = linalg::kernel(&red, linalg::DEFAULT_TOL)?;
                if ker.dim() == 0 {
                    continue;
                }
                projectors.insert(subset, clean_projector(ker.projector()));
            }
            let inst = QSatInstance::new(n, k, projectors)?;
            let cert = InstanceCertificate {
                kind: CertificateKind::SatisfiableEntangled,
                witness: Some(Witness::State(psi)),
                eps: None,
            };
            Ok((inst, cert))
        }
    }
}

/// Families of instances with analytically certified distance from
/// product-satisfiability.
#[derive(Debug, Clone, Copy)]
pub enum FarFamily {
    /// Every k-subset carries the identity projector; any surviving
    /// constraint kills every product state, so all of them must be removed.
    AllIdentity,
    /// Identity projectors on all k-subsets of a block of ceil(rho * n)
    /// vertices.
    DenseLocalBlock { rho: f64 },
}

/// Generate a certified eps-far instance. `requested_eps` above the family's
/// certified value is rejected.
pub fn gen_far(
    n: usize,
    k: usize,
    _seed: u64,
    family: FarFamily,
    requested_eps: Option<f64>,
) -> Result<(QSatInstance, InstanceCertificate)> {
    if n < k || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "need n >= k >= 1, got n={n}, k={k}"
        )));
    }
    let dim = 1usize << k;
    let block: Vec<usize> = match family {
        FarFamily::AllIdentity => (0..n).collect(),
        FarFamily::DenseLocalBlock { rho } => {
            if !(0.0 < rho && rho <= 1.0) {
                return Err(Error::InvalidParameter(format!("rho = {rho} outside (0,1]")));
            }
            let b = (rho * n as f64).ceil() as usize;
            if b < k {
                return Err(Error::InvalidParameter(format!(
                    "block size {b} smaller than k={k}"
                )));
            }
            (0..b).collect()
        }
    };
    let mut projectors = BTreeMap::new();
    for subset in block.iter().copied().combinations(k) {
        projectors.insert(subset, linalg::identity(dim));
    }
    let count = projectors.len() as f64;
    let eps = count / (n as f64).powi(k as i32);
    if let Some(req) = requested_eps {
        if req > eps {
            return Err(Error::InvalidParameter(format!(
                "requested eps {req} exceeds certified value {eps}"
            )));
        }
    }
    let inst = QSatInstance::new(n, k, projectors)?;
    let cert = InstanceCertificate {
        kind: CertificateKind::EpsFar,
        witness: None,
        eps: Some(requested_eps.unwrap_or(eps)),
    };
    Ok((inst, cert))
}

/// Symmetrize away antihermitian rounding dust so generated projectors pass
/// validation at [`PROJECTOR_TOL`].
fn clean_projector(p: CMatrix) -> CMatrix {
    (&p + p.adjoint()) * c(0.5, 0.0)
}

// ---------------------------------------------------------------------------
// Serialization (instance file format)
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ProjectorEntry {
    subset: Vec<usize>,
    /// Row-major [re, im] pairs.
    matrix: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    n: usize,
    k: usize,
    projectors: Vec<ProjectorEntry>,
}

impl QSatInstance {
    pub fn to_json(&self) -> String {
        let projectors = self
            .projectors
            .iter()
            .map(|(subset, p)| ProjectorEntry {
                subset: subset.clone(),
                matrix: matrix_to_pairs(p),
            })
            .collect();
        let file = InstanceFile { n: self.n, k: self.k, projectors };
        serde_json::to_string_pretty(&file).expect("instance serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile =
            serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))?;
        let dim = 1usize << file.k;
        let mut projectors = BTreeMap::new();
        for entry in file.projectors {
            if entry.matrix.len() != dim * dim {
                return Err(Error::Serialization(format!(
                    "projector on {:?} has {} entries, expected {}",
                    entry.subset,
                    entry.matrix.len(),
                    dim * dim
                )));
            }
            let m = CMatrix::from_fn(dim, dim, |i, j| {
                let [re, im] = entry.matrix[i * dim + j];
                c(re, im)
            });
            projectors.insert(entry.subset, m);
        }
        QSatInstance::new(file.n, file.k, projectors)
    }
}

fn matrix_to_pairs(m: &CMatrix) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.push([m[(i, j)].re, m[(i, j)].im]);
        }
    }
    out
}

fn vector_to_pairs(v: &CVector) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn pairs_to_vector(pairs: &[[f64; 2]]) -> CVector {
    CVector::from_fn(pairs.len(), |i, _| c(pairs[i][0], pairs[i][1]))
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type")]
enum WitnessFile {
    #[serde(rename = "product")]
    Product { factors: Vec<Vec<[f64; 2]>> },
    #[serde(rename = "state")]
    State { amplitudes: Vec<[f64; 2]> },
}

#[derive(Serialize, Deserialize)]
struct CertificateFile {
    kind: CertificateKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessFile>,
}

impl InstanceCertificate {
    pub fn to_json(&self) -> String {
        let witness = self.witness.as_ref().map(|w| match w {
            Witness::Product(factors) => WitnessFile::Product {
                factors: factors.iter().map(vector_to_pairs).collect(),
            },
            Witness::State(psi) => WitnessFile::State {
                amplitudes: vector_to_pairs(psi),
            },
        });
        let file = CertificateFile { kind: self.kind, eps: self.eps, witness };
        serde_json::to_string_pretty(&file).expect("certificate serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CertificateFile =
            serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))?;
        let witness = file.witness.map(|w| match w {
            WitnessFile::Product { factors } => {
                Witness::Product(factors.iter().map(|f| pairs_to_vector(f)).collect())
            }
            WitnessFile::State { amplitudes } => Witness::State(pairs_to_vector(&amplitudes)),
        });
        Ok(InstanceCertificate { kind: file.kind, eps: file.eps, witness })
    }
}
