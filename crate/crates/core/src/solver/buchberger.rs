//! Buchberger's algorithm over the Gaussian rationals with grevlex order,
//! the first Buchberger criterion, and an S-pair budget as a safety valve.

use super::poly::Poly;
use crate::error::{Error, Result};

/// Hard cap on processed S-pairs.
pub const DEFAULT_SPAIR_BUDGET: usize = 1_000_000;

/// Hard cap on coefficient size (bits of the largest integer part) during
/// basis completion. Exact arithmetic on generic inputs can swell far past
/// any useful size; hitting the cap surfaces as an indeterminate verdict,
/// the same safety valve as the S-pair budget.
pub const DEFAULT_COEFF_BIT_CAP: u64 = 12_000;

/// Reduced Groebner basis of the ideal generated by `gens`.
///
/// Buchberger with the normal selection strategy (smallest lcm first), the
/// coprimality criterion, the chain criterion, and content-normalized
/// basis elements to hold coefficient growth down. Deterministic: identical
/// inputs produce the identical basis. Exceeding the S-pair budget is a
/// [`Error::BudgetExceeded`].
pub fn groebner_basis(gens: &[Poly], budget: usize) -> Result<Vec<Poly>> {
    groebner_basis_capped(gens, budget, DEFAULT_COEFF_BIT_CAP)
}

pub fn groebner_basis_capped(
    gens: &[Poly],
    budget: usize,
    bit_cap: u64,
) -> Result<Vec<Poly>> {
    use std::cmp::Reverse;
    use std::collections::{BinaryHeap, HashSet};

    let nv = gens.first().map_or(0, |p| p.num_vars);
    let mut basis: Vec<Poly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.normalize_content())
        .collect();
    basis.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    basis.dedup();
    if basis.is_empty() {
        return Ok(Vec::new());
    }

    type Key = (u32, crate::solver::poly::Monomial, usize, usize);
    let mut queue: BinaryHeap<Reverse<Key>> = BinaryHeap::new();
    let mut retired: HashSet<(usize, usize)> = HashSet::new();
    let make_key = |basis: &[Poly], i: usize, j: usize| -> Key {
        let lm_i = basis[i].leading().unwrap().0;
        let lm_j = basis[j].leading().unwrap().0;
        let lcm = lm_i.lcm(lm_j);
        (lcm.degree(), lcm, i, j)
    };
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            queue.push(Reverse(make_key(&basis, i, j)));
        }
    }

    let trace = std::env::var("QSAT_GB_TRACE").is_ok();
    let mut processed = 0usize;
    while let Some(Reverse((_, lcm, i, j))) = queue.pop() {
        processed += 1;
        if processed > budget {
            return Err(Error::BudgetExceeded(format!(
                "Buchberger S-pair budget of {budget} exhausted"
            )));
        }
        if trace && processed % 25 == 0 {
            let max_terms = basis.iter().map(|p| p.terms.len()).max().unwrap_or(0);
            let max_bits = basis
                .iter()
                .flat_map(|p| p.terms.values())
                .map(|c| c.re.numer().bits().max(c.im.numer().bits()))
                .max()
                .unwrap_or(0);
            eprintln!(
                "gb: pairs={} queued={} basis={} max_terms={max_terms} max_bits={max_bits}",
                processed,
                queue.len(),
                basis.len()
            );
        }
        retired.insert((i, j));
        let lm_i = basis[i].leading().unwrap().0.clone();
        let lm_j = basis[j].leading().unwrap().0.clone();
        // first criterion: coprime leading monomials reduce to zero
        if lm_i.coprime(&lm_j) {
            continue;
        }
        // chain criterion: a third element dividing the lcm whose pairs with
        // both ends are already settled makes this pair redundant
        let mut chained = false;
        for (t, other) in basis.iter().enumerate() {
            if t == i || t == j {
                continue;
            }
            let lm_t = other.leading().unwrap().0;
            if lm_t.divides(&lcm)
                && retired.contains(&(t.min(i), t.max(i)))
                && retired.contains(&(t.min(j), t.max(j)))
            {
                chained = true;
                break;
            }
        }
        if chained {
            continue;
        }
        let qi = lm_i.quotient(&lcm);
        let qj = lm_j.quotient(&lcm);
        let (lc_i, lc_j) = (
            basis[i].leading().unwrap().1.clone(),
            basis[j].leading().unwrap().1.clone(),
        );
        // cross-scale by leading coefficients to cancel the lcm term exactly
        let spoly = basis[i]
            .mul_term(&qi, &lc_j)
            .sub(&basis[j].mul_term(&qj, &lc_i));
        let rem = top_reduce(spoly, &basis, bit_cap)?;
        if rem.is_zero() {
            continue;
        }
        // a constant in the ideal makes it the unit ideal; stop early
        if rem.leading().map(|(m, _)| m.is_one()).unwrap_or(false) {
            let one = Poly::constant(nv.max(rem.num_vars), super::gauss::GaussQ::one());
            return Ok(vec![one]);
        }
        let new_idx = basis.len();
        basis.push(rem);
        for t in 0..new_idx {
            queue.push(Reverse(make_key(&basis, t, new_idx)));
        }
    }
    Ok(inter_reduce(basis))
}

/// Fraction-free top-reduction: eliminate the leading term while it is
/// divisible by some basis leading term, cross-multiplying by leading
/// coefficients to stay in Gaussian integers, and stripping the integer
/// content after every step so coefficients track the true invariant growth
/// instead of swelling.
fn top_reduce(mut cur: Poly, basis: &[Poly], bit_cap: u64) -> Result<Poly> {
    let trace = std::env::var("QSAT_GB_TRACE").is_ok();
    let mut steps = 0usize;
    'outer: loop {
        if trace && steps % 50 == 49 {
            let bits = cur
                .terms
                .values()
                .map(|c| c.re.numer().bits().max(c.im.numer().bits()))
                .max()
                .unwrap_or(0);
            eprintln!("  top_reduce: step={steps} terms={} bits={bits}", cur.terms.len());
        }
        steps += 1;
        let Some((lm, lc)) = cur.leading().map(|(m, c)| (m.clone(), c.clone())) else {
            return Ok(cur);
        };
        for d in basis {
            let (dm, dc) = d.leading().expect("nonzero basis element");
            if dm.divides(&lm) {
                let q = dm.quotient(&lm);
                let dc = dc.clone();
                // cur <- dc * cur - lc * x^q * d
                let mut next = cur.scale(&dc);
                for (m, c) in &d.terms {
                    next.add_term(m.mul(&q), c.mul(&lc).neg());
                }
                cur = next.normalize_content();
                let bits = cur
                    .terms
                    .values()
                    .map(|c| c.re.numer().bits().max(c.im.numer().bits()))
                    .max()
                    .unwrap_or(0);
                if bits > bit_cap {
                    return Err(Error::BudgetExceeded(format!(
                        "coefficient size {bits} bits exceeds the cap {bit_cap}"
                    )));
                }
                continue 'outer;
            }
        }
        return Ok(cur);
    }
}

/// Minimal reduced basis: leading terms pairwise indivisible, every element
/// fully reduced against the others, all monic, sorted for determinism.
fn inter_reduce(mut basis: Vec<Poly>) -> Vec<Poly> {
    // drop elements whose leading monomial is divisible by another's
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lm_i = basis[i].leading().unwrap().0.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lm_j = basis[j].leading().unwrap().0;
            if lm_j.divides(&lm_i) && (lm_j != &lm_i || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<Poly> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(p, k)| if k { Some(p) } else { None })
        .collect();
    // tail-reduce each element against the rest until stable
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<Poly> = minimal
                .iter()
                .enumerate()
                .filter_map(|(j, p)| if j != i { Some(p.clone()) } else { None })
                .collect();
            let reduced = minimal[i].reduce(&others).monic();
            if reduced != minimal[i] {
                minimal[i] = reduced;
                changed = true;
            }
        }
        minimal.retain(|p| !p.is_zero());
        if !changed {
            break;
        }
    }
    minimal.sort_by(|a, b| {
        let la = a.leading().unwrap().0;
        let lb = b.leading().unwrap().0;
        la.cmp(lb)
    });
    minimal
}

/// Nullstellensatz test: the system has no complex solution iff its reduced
/// Groebner basis is {1}.
pub fn is_unit_ideal(basis: &[Poly]) -> bool {
    basis.len() == 1
        && basis[0]
            .leading()
            .map(|(m, c)| m.is_one() && !c.is_zero())
            .unwrap_or(false)
}
