//! Polynomial system construction for product-state satisfiability of a
//! local instance on c qubits.
//!
//! Unknown product state `phi_i = x_{i0}|0> + x_{i1}|1>`. Every rank-one
//! component `|a_ij>` of every projector contributes one equation
//! `<a_ij | phi_{s_i}> = 0`, and each qubit carries a nondegeneracy equation
//! `(x_{i0} y_{i0} - 1)(x_{i1} y_{i1} - 1) = 0` with fresh variables y, so a
//! solution may be rescaled rather than normalized. Altogether
//! `c + sum_i r_i` equations in `4c` variables.

use super::gauss::GaussQ;
use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::model::QSatInstance;

/// The polynomial system of one local product-satisfiability check.
#[derive(Debug, Clone)]
pub struct PolySystem {
    pub num_vars: usize,
    pub num_qubits: usize,
    /// Ranks r_i of the instantiated projectors, in subset order.
    pub ranks: Vec<usize>,
    pub equations: Vec<Poly>,
}

impl PolySystem {
    pub fn x_var(c: usize, qubit: usize, level: usize) -> usize {
        debug_assert!(level < 2);
        let _ = c;
        2 * qubit + level
    }

    pub fn y_var(c: usize, qubit: usize, level: usize) -> usize {
        debug_assert!(level < 2);
        2 * c + 2 * qubit + level
    }
}

/// Eigenvectors of an idempotent Hermitian matrix with eigenvalue above 1/2:
/// its rank-one components.
pub fn projector_components(p: &crate::linalg::CMatrix) -> Vec<CVector> {
    let eig = p.clone().symmetric_eigen();
    let mut comps = Vec::new();
    for (i, ev) in eig.eigenvalues.iter().enumerate() {
        if *ev > 0.5 {
            comps.push(eig.eigenvectors.column(i).into_owned());
        }
    }
    comps
}

/// Build the system for a local instance (all of whose qubits participate).
pub fn build_system(local: &QSatInstance) -> Result<PolySystem> {
    let c = local.n();
    if c == 0 {
        return Err(Error::InvalidParameter("empty local instance".into()));
    }
    let nv = 4 * c;
    let mut equations = Vec::new();
    let mut ranks = Vec::new();
    for (subset, p) in local.projectors() {
        let comps = projector_components(p);
        ranks.push(comps.len());
        let k = subset.len();
        for a in &comps {
            // <a | phi_s> = sum over bit strings of conj(a[bits]) prod_t x_{q_t, bit_t}
            let mut poly = Poly::zero(nv);
            for bits in 0..(1usize << k) {
                let amp = a[bits].conj();
                if amp.norm() < 1e-15 {
                    continue;
                }
                let mut expo = vec![0u32; nv];
                for (t, &q) in subset.iter().enumerate() {
                    let bit = (bits >> (k - 1 - t)) & 1;
                    expo[PolySystem::x_var(c, q, bit)] += 1;
                }
                poly.add_term(Monomial(expo), GaussQ::from_f64_dyadic(amp.re, amp.im));
            }
            if !poly.is_zero() {
                equations.push(poly);
            } else {
                // a zero row would silently drop an equation; keep the count
                // honest by acknowledging it as trivially satisfied
                equations.push(Poly::zero(nv));
            }
        }
    }
    // nondegeneracy: (x_{i0} y_{i0} - 1)(x_{i1} y_{i1} - 1) = 0
    for i in 0..c {
        let x0 = Poly::var(nv, PolySystem::x_var(c, i, 0));
        let x1 = Poly::var(nv, PolySystem::x_var(c, i, 1));
        let y0 = Poly::var(nv, PolySystem::y_var(c, i, 0));
        let y1 = Poly::var(nv, PolySystem::y_var(c, i, 1));
        let one = Poly::constant(nv, GaussQ::one());
        let f = x0.mul(&y0).sub(&one).mul(&x1.mul(&y1).sub(&one));
        equations.push(f);
    }
    let system = PolySystem { num_vars: nv, num_qubits: c, ranks, equations };
    debug_assert_eq!(
        system.equations.len(),
        c + system.ranks.iter().sum::<usize>()
    );
    Ok(system)
}

/// Dehomogenized branch system. The nondegeneracy equations say that for
/// every qubit one of the two amplitudes is invertible; `branch` picks which
/// (bit i of `branch` selects the pinned level of qubit i). That amplitude
/// scales to 1, because every constraint is homogeneous in each qubit's
/// amplitude pair, leaving one free variable per qubit: variable i is the
/// un-pinned amplitude of qubit i. The full system is solvable iff some
/// branch system is.
pub fn build_branch_system(local: &QSatInstance, branch: usize) -> Result<Vec<Poly>> {
    let c = local.n();
    if c == 0 || c >= usize::BITS as usize {
        return Err(Error::InvalidParameter("bad qubit count".into()));
    }
    let nv = c;
    let pinned = |i: usize| (branch >> (c - 1 - i)) & 1;
    let mut equations = Vec::new();
    for (subset, p) in local.projectors() {
        let comps = projector_components(p);
        let k = subset.len();
        for a in &comps {
            let mut poly = Poly::zero(nv);
            for bits in 0..(1usize << k) {
                let amp = a[bits].conj();
                if amp.norm() < 1e-15 {
                    continue;
                }
                let mut expo = vec![0u32; nv];
                for (t, &q) in subset.iter().enumerate() {
                    let bit = (bits >> (k - 1 - t)) & 1;
                    // the pinned level contributes the constant 1
                    if bit != pinned(q) {
                        expo[q] += 1;
                    }
                }
                poly.add_term(Monomial(expo), GaussQ::from_f64_dyadic(amp.re, amp.im));
            }
            equations.push(poly);
        }
    }
    Ok(equations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{basis_vector, identity};
    use std::collections::BTreeMap;

    #[test]
    fn zero_projector_instance_has_only_nondegeneracy() {
        let inst = QSatInstance::new(2, 2, BTreeMap::new()).unwrap();
        let sys = build_system(&inst).unwrap();
        assert_eq!(sys.equations.len(), 2);
        assert_eq!(sys.num_vars, 8);
        for eq in &sys.equations {
            assert_eq!(eq.total_degree(), 4);
        }
    }

    #[test]
    fn rank_one_11_projector_equation() {
        // |11><11| on 2 qubits: the constraint equation is x_{0,1} x_{1,1}
        let v = basis_vector(4, 3);
        let p = &v * v.adjoint();
        let mut map = BTreeMap::new();
        map.insert(vec![0, 1], p);
        let inst = QSatInstance::new(2, 2, map).unwrap();
        let sys = build_system(&inst).unwrap();
        assert_eq!(sys.equations.len(), 3);
        assert_eq!(sys.ranks, vec![1]);
        let constraint = &sys.equations[0];
        assert_eq!(constraint.terms.len(), 1);
        let (m, _) = constraint.leading().unwrap();
        let mut expect = vec![0u32; 8];
        expect[PolySystem::x_var(2, 0, 1)] = 1;
        expect[PolySystem::x_var(2, 1, 1)] = 1;
        assert_eq!(m.0, expect);
    }

    #[test]
    fn identity_projector_contributes_full_rank() {
        let mut map = BTreeMap::new();
        map.insert(vec![0, 1], identity(4));
        let inst = QSatInstance::new(2, 2, map).unwrap();
        let sys = build_system(&inst).unwrap();
        assert_eq!(sys.ranks, vec![4]);
        assert_eq!(sys.equations.len(), 6);
    }
}
