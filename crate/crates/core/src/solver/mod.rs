//! Product-state satisfiability of a restricted instance: an exact
//! polynomial-system backend (Groebner basis feasibility over the Gaussian
//! rationals) and a numeric alternating-minimization backend.

mod buchberger;
mod build;
mod gauss;
mod numeric;
mod poly;

pub use buchberger::{groebner_basis, groebner_basis_capped, is_unit_ideal, DEFAULT_COEFF_BIT_CAP, DEFAULT_SPAIR_BUDGET};
pub use build::{build_branch_system, build_system, projector_components, PolySystem};
pub use gauss::GaussQ;
pub use numeric::{canonical_phase, solve_numeric};
pub use poly::{Monomial, Poly};

use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::model::QSatInstance;
use crate::subspace::SearchSettings;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    Sat,
    Unsat,
    Indeterminate,
}

impl VerdictKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictKind::Sat => "SAT",
            VerdictKind::Unsat => "UNSAT",
            VerdictKind::Indeterminate => "INDETERMINATE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Numeric,
}

/// Verdict of a product-satisfiability check.
#[derive(Debug, Clone)]
pub struct SolverVerdict {
    pub verdict: VerdictKind,
    pub witness: Option<Vec<CVector>>,
    pub backend: Backend,
    pub residual: Option<f64>,
}

/// Exact decision through the reduced Groebner basis: UNSAT iff the basis
/// is {1}. Exceeding the S-pair budget yields an indeterminate verdict.
pub fn solve_exact(sys: &PolySystem) -> SolverVerdict {
    solve_exact_with_budget(sys, DEFAULT_SPAIR_BUDGET)
}

pub fn solve_exact_with_budget(sys: &PolySystem, budget: usize) -> SolverVerdict {
    let gens: Vec<Poly> = sys.equations.iter().filter(|p| !p.is_zero()).cloned().collect();
    match groebner_basis(&gens, budget) {
        Ok(basis) => {
            let verdict = if is_unit_ideal(&basis) {
                VerdictKind::Unsat
            } else {
                VerdictKind::Sat
            };
            SolverVerdict { verdict, witness: None, backend: Backend::Exact, residual: None }
        }
        Err(Error::BudgetExceeded(_)) => SolverVerdict {
            verdict: VerdictKind::Indeterminate,
            witness: None,
            backend: Backend::Exact,
            residual: None,
        },
        Err(e) => panic!("unexpected Groebner failure: {e}"),
    }
}

/// Exact decision straight from a local instance, by the branch
/// decomposition of the nondegeneracy equations: each qubit has one
/// invertible amplitude which scales to 1, so the system splits into 2^c
/// dehomogenized systems of c variables each and is satisfiable iff some
/// branch is. Every branch is decided by its reduced Groebner basis, so the
/// Nullstellensatz certificate structure is unchanged while the variable
/// count drops from 4c to c.
pub fn solve_exact_instance(local: &QSatInstance) -> Result<SolverVerdict> {
    solve_exact_instance_with_budget(local, DEFAULT_SPAIR_BUDGET)
}

pub fn solve_exact_instance_with_budget(
    local: &QSatInstance,
    budget: usize,
) -> Result<SolverVerdict> {
    solve_exact_instance_capped(local, budget, DEFAULT_COEFF_BIT_CAP)
}

/// Branch-decomposed exact decision with explicit S-pair and coefficient
/// caps; both exhaust to an indeterminate verdict.
pub fn solve_exact_instance_capped(
    local: &QSatInstance,
    budget: usize,
    bit_cap: u64,
) -> Result<SolverVerdict> {
    let c = local.n();
    if c > 4 {
        return Err(Error::InvalidParameter(format!(
            "exact backend is tractable for c <= 4 qubits, got {c}"
        )));
    }
    if local.num_nontrivial() == 0 {
        return Ok(SolverVerdict {
            verdict: VerdictKind::Sat,
            witness: None,
            backend: Backend::Exact,
            residual: None,
        });
    }
    let mut saw_budget_exhaustion = false;
    for branch in 0..(1usize << c) {
        let gens = build_branch_system(local, branch)?;
        let nonzero: Vec<Poly> = gens.into_iter().filter(|p| !p.is_zero()).collect();
        if nonzero.is_empty() {
            return Ok(SolverVerdict {
                verdict: VerdictKind::Sat,
                witness: None,
                backend: Backend::Exact,
                residual: None,
            });
        }
        match groebner_basis_capped(&nonzero, budget, bit_cap) {
            Ok(basis) => {
                if !is_unit_ideal(&basis) {
                    return Ok(SolverVerdict {
                        verdict: VerdictKind::Sat,
                        witness: None,
                        backend: Backend::Exact,
                        residual: None,
                    });
                }
            }
            Err(Error::BudgetExceeded(_)) => {
                saw_budget_exhaustion = true;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(SolverVerdict {
        verdict: if saw_budget_exhaustion {
            VerdictKind::Indeterminate
        } else {
            VerdictKind::Unsat
        },
        witness: None,
        backend: Backend::Exact,
        residual: None,
    })
}
