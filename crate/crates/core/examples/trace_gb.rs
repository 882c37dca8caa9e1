use qsat_core::linalg::*;
use qsat_core::model::QSatInstance;
use qsat_core::solver::*;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::collections::BTreeMap;
use itertools::Itertools;

fn random_rank1(n: usize, k: usize, m: usize, seed: u64) -> QSatInstance {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut map = BTreeMap::new();
    let subsets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let mut order: Vec<usize> = (0..subsets.len()).collect();
    use rand::seq::SliceRandom;
    order.shuffle(&mut rng);
    for &idx in order.iter().take(m) {
        let v = gaussian_vector(1 << k, &mut rng);
        let p = &v * v.adjoint();
        let p = (&p + p.adjoint()) * num_complex::Complex64::new(0.5, 0.0);
        map.insert(subsets[idx].clone(), p);
    }
    QSatInstance::new(n, k, map).unwrap()
}

fn main() {
    let inst = random_rank1(4, 3, 4, 10);
    let gens = build_branch_system(&inst, 0).unwrap();
    eprintln!("branch 0: {} equations", gens.len());
    let _ = groebner_basis(&gens, 2000);
    eprintln!("finished");
}
