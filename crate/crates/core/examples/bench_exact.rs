use qsat_core::linalg::*;
use qsat_core::model::*;
use qsat_core::solver::*;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::collections::BTreeMap;
use std::time::Instant;
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

fn run(label: &str, local: &QSatInstance, bits: u64) {
    let t = Instant::now();
    let out = solve_exact_instance_capped(local, 50_000, bits).unwrap();
    println!("{label} [cap {bits}]: {:?} in {:.2?}", out.verdict, t.elapsed());
}

fn main() {
    for bits in [3000u64, 6000] {
        run("k3c4 m4 s10", &random_rank1(4, 3, 4, 10), bits);
    }
    run("k3c4 m3 s30", &random_rank1(4, 3, 3, 30), 6000);
    run("k3c4 m2 s40", &random_rank1(4, 3, 2, 40), 6000);
    run("k3c4 m1 s50", &random_rank1(4, 3, 1, 50), 6000);
    run("k2c4 m6 s20", &random_rank1(4, 2, 6, 20), 6000);
    run("k2c4 m5 s21", &random_rank1(4, 2, 5, 21), 6000);
    run("k2c4 m4 s22", &random_rank1(4, 2, 4, 22), 6000);
    let (far, _) = gen_far(4, 3, 0, FarFamily::AllIdentity, None).unwrap();
    run("k3c4 identity", &far, 6000);
    let (far2, _) = gen_far(4, 2, 0, FarFamily::AllIdentity, None).unwrap();
    run("k2c4 identity", &far2, 6000);
    let (inst, _) = gen_satisfiable(6, 3, 0, SatMode::ProductGroundState, RankProfile::Fixed(1)).unwrap();
    run("k3c4 planted-rounded", &inst.restrict(&[0, 2, 3, 5]).unwrap(), 6000);
    let (inst2, _) = gen_satisfiable(6, 2, 1, SatMode::ProductGroundState, RankProfile::Fixed(1)).unwrap();
    run("k2c4 planted-rounded", &inst2.restrict(&[0, 2, 3, 5]).unwrap(), 6000);
    let (inst3, _) = gen_satisfiable(6, 2, 2, SatMode::ProductGroundState, RankProfile::Fixed(1)).unwrap();
    run("k2c3 planted-rounded", &inst3.restrict(&[0, 2, 4]).unwrap(), 6000);
    run("k2c3 m3 s60", &random_rank1(3, 2, 3, 60), 6000);
    run("k3c3 m1 s70", &random_rank1(3, 3, 1, 70), 6000);
}
