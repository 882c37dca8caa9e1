//! Uniform hypergraphs, shadows and partial shadows, exact rational edge
//! densities, the odd-edge construction, and degree concentration for a
//! random vertex — with every inequality checked through exact rational or
//! interval arithmetic so verdicts never hinge on float rounding.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::bounds;
use crate::error::{Error, Result};

/// A k-uniform hypergraph on vertices 0..n with an explicit edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: BTreeSet<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, k: usize, edges: BTreeSet<Vec<usize>>) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!("edge size {k} out of range for n={n}")));
        }
        for e in &edges {
            if e.len() != k || e.windows(2).any(|w| w[0] >= w[1]) || e.iter().any(|&v| v >= n) {
                return Err(Error::InvalidParameter(format!(
                    "edge {e:?} is not a sorted {k}-subset of 0..{n}"
                )));
            }
        }
        Ok(Hypergraph { n, k, edges })
    }

    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Hypergraph::new(n, k, BTreeSet::new())
    }

    pub fn complete(n: usize, k: usize) -> Result<Self> {
        let edges: BTreeSet<Vec<usize>> = (0..n).combinations(k).collect();
        Hypergraph::new(n, k, edges)
    }

    /// Exactly `m` distinct edges drawn uniformly without replacement.
    pub fn random_exact(n: usize, k: usize, m: usize, seed: u64) -> Result<Self> {
        let all: Vec<Vec<usize>> = (0..n).combinations(k).collect();
        if m > all.len() {
            return Err(Error::InvalidParameter(format!(
                "{m} edges requested but only {} exist",
                all.len()
            )));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..all.len()).collect();
        // partial Fisher-Yates
        for i in 0..m {
            let j = rng.gen_range(i..order.len());
            order.swap(i, j);
        }
        let edges: BTreeSet<Vec<usize>> = order[..m].iter().map(|&i| all[i].clone()).collect();
        Hypergraph::new(n, k, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &BTreeSet<Vec<usize>> {
        &self.edges
    }

    pub fn contains(&self, edge: &[usize]) -> bool {
        self.edges.contains(edge)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count()
    }

    /// Exact edge density |E| / C(n, k).
    pub fn density(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.edges.len()),
            BigInt::from(binom_big(self.n, self.k)),
        )
    }

    /// The k2-shadow: all k2-subsets contained in some edge.
    pub fn shadow(&self, k2: usize) -> Result<Hypergraph> {
        if k2 > self.k {
            return Err(Error::InvalidParameter(format!(
                "shadow size {k2} exceeds edge size {}",
                self.k
            )));
        }
        let mut edges = BTreeSet::new();
        for e in &self.edges {
            for sub in e.iter().copied().combinations(k2) {
                edges.insert(sub);
            }
        }
        Hypergraph::new(self.n, k2, edges)
    }
}

/// Exact binomial coefficient.
pub fn binom_big(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// The binomial polynomial x(x-1)...(x-c+1)/c! for real x.
pub fn binom_real(x: f64, c: usize) -> f64 {
    let mut num = 1.0f64;
    for i in 0..c {
        num *= x - i as f64;
    }
    let mut den = 1.0f64;
    for i in 1..=c {
        den *= i as f64;
    }
    num / den
}

/// The same polynomial over exact rationals.
pub fn binom_rational(x: &BigRational, c: usize) -> BigRational {
    let mut num = BigRational::one();
    for i in 0..c {
        num *= x - BigRational::from_integer(BigInt::from(i));
    }
    let mut den = BigRational::one();
    for i in 1..=c {
        den *= BigRational::from_integer(BigInt::from(i));
    }
    num / den
}

// ---------------------------------------------------------------------------
// Exact interval arithmetic (rational endpoints)
// ---------------------------------------------------------------------------

/// Closed interval with exact rational endpoints. Arithmetic is outward by
/// construction since the endpoints are exact; intervals only widen where a
/// genuinely irrational quantity (an n-th root) enters.
#[derive(Debug, Clone)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn point(x: BigRational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn div(&self, other: &RatInterval) -> Result<RatInterval> {
        if other.lo.is_negative() != other.hi.is_negative()
            || other.lo.is_zero()
            || other.hi.is_zero()
        {
            return Err(Error::Indeterminate(
                "interval division by an interval containing zero".into(),
            ));
        }
        let inv = RatInterval { lo: other.hi.recip(), hi: other.lo.recip() };
        Ok(self.mul(&inv))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.lo), rat_to_f64(&self.hi))
    }
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Binomial polynomial over an interval argument.
fn binom_interval(x: &RatInterval, c: usize) -> RatInterval {
    let mut acc = RatInterval::point(BigRational::one());
    for i in 0..c {
        let shifted = RatInterval {
            lo: &x.lo - BigRational::from_integer(BigInt::from(i)),
            hi: &x.hi - BigRational::from_integer(BigInt::from(i)),
        };
        acc = acc.mul(&shifted);
    }
    let mut den = BigRational::one();
    for i in 1..=c {
        den *= BigRational::from_integer(BigInt::from(i));
    }
    RatInterval { lo: acc.lo / &den, hi: acc.hi / &den }
}

/// theta^(1/c) enclosed to width 2^-100 (< 1e-30) by dyadic bisection.
/// Requires theta in [0, 1].
pub fn nth_root_interval(theta: &BigRational, c: usize) -> Result<RatInterval> {
    if theta.is_negative() || theta > &BigRational::one() {
        return Err(Error::InvalidParameter("root argument outside [0,1]".into()));
    }
    if theta.is_zero() {
        return Ok(RatInterval::point(BigRational::zero()));
    }
    if theta == &BigRational::one() {
        return Ok(RatInterval::point(BigRational::one()));
    }
    let mut lo = BigRational::zero();
    let mut hi = BigRational::one();
    for _ in 0..100 {
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        let mut p = BigRational::one();
        for _ in 0..c {
            p *= &mid;
        }
        match p.cmp(theta) {
            std::cmp::Ordering::Equal => return Ok(RatInterval::point(mid)),
            std::cmp::Ordering::Less => lo = mid,
            std::cmp::Ordering::Greater => hi = mid,
        }
    }
    Ok(RatInterval { lo, hi })
}

// ---------------------------------------------------------------------------
// Binomial scaling identity
// ---------------------------------------------------------------------------

/// Outcome of the scaling identity check
/// `theta C(x,c) = C(theta^(1/c) x, c) + alpha C(theta^(1/c) x, c-1)`.
#[derive(Debug, Clone)]
pub struct BinomScalingReport {
    /// Enclosure of alpha computed from the identity.
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    /// The identity's derivation divides by C(theta^(1/c) x, c-1), which is
    /// positive only when theta^(1/c) x > c - 2; outside that range the
    /// statement does not apply.
    pub in_domain: bool,
    /// alpha in [0,1) and theta C(x,c) <= C(theta^(1/c) x + 1, c), both
    /// certified through the interval enclosure.
    pub holds: bool,
}

pub fn check_binom_scaling(
    theta: &BigRational,
    x: &BigRational,
    c: usize,
) -> Result<BinomScalingReport> {
    if c == 0 {
        return Err(Error::InvalidParameter("c must be positive".into()));
    }
    if theta.is_negative() || theta > &BigRational::one() {
        return Err(Error::InvalidParameter("theta outside [0,1]".into()));
    }
    if x < &BigRational::from_integer(BigInt::from(c)) {
        return Err(Error::InvalidParameter("need x >= c".into()));
    }
    let root = nth_root_interval(theta, c)?;
    let xi = RatInterval::point(x.clone());
    let m = root.mul(&xi);
    let c_minus_2 = BigRational::from_integer(BigInt::from(c as i64 - 2));
    let in_domain = m.lo > c_minus_2;
    let lhs = RatInterval::point(theta * binom_rational(x, c));
    let m_c = binom_interval(&m, c);
    let m_c1 = binom_interval(&m, c - 1);
    if !in_domain {
        return Ok(BinomScalingReport {
            alpha_lo: f64::NAN,
            alpha_hi: f64::NAN,
            in_domain,
            holds: false,
        });
    }
    let alpha = lhs.sub(&m_c).div(&m_c1)?;
    let (alpha_lo, alpha_hi) = alpha.to_f64();
    // inequality side: theta C(x,c) <= C(theta^(1/c) x + 1, c)
    let m_plus_1 = RatInterval {
        lo: &m.lo + BigRational::one(),
        hi: &m.hi + BigRational::one(),
    };
    let rhs = binom_interval(&m_plus_1, c);
    let tiny = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(25));
    let alpha_in_range = alpha.lo >= -tiny.clone() && alpha.hi < BigRational::one();
    let inequality = lhs.hi <= rhs.lo;
    Ok(BinomScalingReport {
        alpha_lo,
        alpha_hi,
        in_domain,
        holds: alpha_in_range && inequality,
    })
}

// ---------------------------------------------------------------------------
// Shadow density
// ---------------------------------------------------------------------------

/// Exact-density report against a closed-form bound.
#[derive(Debug, Clone)]
pub struct DensityReport {
    pub theta: BigRational,
    pub bound: f64,
    pub satisfied: bool,
}

/// Shadow density bound: theta|_k >= (theta^(1/l) - 2/n)^k, verified with the
/// bound's upper enclosure so "satisfied" is never a rounding artifact.
pub fn check_shadow_density(g: &Hypergraph, k: usize) -> Result<DensityReport> {
    let shadow = g.shadow(k)?;
    let theta_k = shadow.density();
    let theta = g.density();
    let root = nth_root_interval(&theta, g.k())?;
    let two_over_n = BigRational::new(BigInt::from(2), BigInt::from(g.n()));
    let base = RatInterval {
        lo: &root.lo - &two_over_n,
        hi: &root.hi - &two_over_n,
    };
    // negative base means the bound is vacuous
    let bound = if base.hi.is_negative() || base.hi.is_zero() {
        RatInterval::point(BigRational::zero())
    } else {
        let clamped = RatInterval {
            lo: if base.lo.is_negative() { BigRational::zero() } else { base.lo.clone() },
            hi: base.hi.clone(),
        };
        let mut acc = RatInterval::point(BigRational::one());
        for _ in 0..k {
            acc = acc.mul(&clamped);
        }
        acc
    };
    let satisfied = theta_k >= bound.hi;
    Ok(DensityReport {
        theta: theta_k,
        bound: rat_to_f64(&bound.hi),
        satisfied,
    })
}

// ---------------------------------------------------------------------------
// Partial shadows
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShadowStrategy {
    /// Greedily reuse already-chosen subsets: a pessimistic proxy for the
    /// true density minimizer.
    AdversarialMin,
    Random { seed: u64 },
}

/// A partial (k, omega)-shadow: from each edge keep floor(omega * C(l,k)) of
/// its k-subsets, chosen by the strategy.
pub fn partial_shadow(
    g: &Hypergraph,
    k: usize,
    omega: &BigRational,
    strategy: ShadowStrategy,
) -> Result<Hypergraph> {
    if k > g.k() {
        return Err(Error::InvalidParameter("shadow size exceeds edge size".into()));
    }
    if omega.is_negative() || omega > &BigRational::one() {
        return Err(Error::InvalidParameter("omega outside [0,1]".into()));
    }
    let per_edge_total = binom_big(g.k(), k);
    let quota_rat = omega * BigRational::from_integer(BigInt::from(per_edge_total));
    let quota = quota_rat.floor().to_integer().to_usize().ok_or_else(|| {
        Error::InvalidParameter("quota overflow".into())
    })?;
    let mut rng = match strategy {
        ShadowStrategy::Random { seed } => Some(ChaCha12Rng::seed_from_u64(seed)),
        ShadowStrategy::AdversarialMin => None,
    };
    let mut chosen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for e in g.edges() {
        let mut subs: Vec<Vec<usize>> = e.iter().copied().combinations(k).collect();
        match &mut rng {
            Some(r) => {
                // Fisher-Yates prefix
                for i in 0..quota.min(subs.len()) {
                    let j = r.gen_range(i..subs.len());
                    subs.swap(i, j);
                }
            }
            None => {
                // prefer subsets already chosen (maximal overlap), then lex
                subs.sort_by_key(|s| (!chosen.contains(s), s.clone()));
            }
        }
        for s in subs.into_iter().take(quota) {
            chosen.insert(s);
        }
    }
    Hypergraph::new(g.n(), k, chosen)
}

/// Report for the partial-shadow density bound theta|_{k,1/2} >= theta / K_A.
#[derive(Debug, Clone)]
pub struct PartialShadowReport {
    pub c: usize,
    pub l: usize,
    pub k: usize,
    pub theta: BigRational,
    pub theta_partial: BigRational,
    pub k_a: f64,
    pub bound: f64,
    pub satisfied: bool,
}

/// Shape parameters of the partial-shadow density bound for a given edge
/// size: l = n/2^c + delta with -3 <= delta < -1, and k = l/2 + eps with
/// -1/2 <= eps <= 0 (so k = floor(l/2)).
pub fn partial_shadow_shape(n: usize, l: usize) -> Result<(usize, usize)> {
    if l < 2 {
        return Err(Error::InvalidParameter("edge size must be at least 2".into()));
    }
    let k = l / 2;
    // find integer c >= 1 with n/2^c in (l+1, l+3]
    let mut c = 1usize;
    loop {
        let pow = (1u128 << c) as f64;
        let ratio = n as f64 / pow;
        if ratio <= (l + 1) as f64 {
            return Err(Error::InvalidParameter(format!(
                "no admissible c: n/2^c fell to {ratio} at c={c} for l={l}"
            )));
        }
        if ratio <= (l + 3) as f64 {
            return Ok((c, k));
        }
        c += 1;
        if c > 60 {
            return Err(Error::InvalidParameter("no admissible c below 61".into()));
        }
    }
}

/// Check the partial-shadow density bound at omega = 1/2 under the
/// adversarial-min strategy. Shape constraints unmet are rejected.
pub fn check_partial_shadow_density(g: &Hypergraph, a: f64) -> Result<PartialShadowReport> {
    let (c, k) = partial_shadow_shape(g.n(), g.k())?;
    let n = g.n() as f64;
    if (g.n() as u64) < 3 * (1u64 << c) {
        return Err(Error::InvalidParameter(format!(
            "n = {} below the first size bound 3 * 2^{c}",
            g.n()
        )));
    }
    let theta = g.density();
    let theta_f = rat_to_f64(&theta);
    if theta_f <= 0.0 {
        return Err(Error::InvalidParameter("empty hypergraph".into()));
    }
    let second = 3.0 * 2f64.powi(c as i32 + 1)
        * (0.5 + (a.powf(1.0 / 3.0) / 4.0 - theta_f.ln()) / a.ln());
    if n < second - 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "n = {n} below the second size bound {second:.3}"
        )));
    }
    let omega = BigRational::new(BigInt::one(), BigInt::from(2));
    let sh = partial_shadow(g, k, &omega, ShadowStrategy::AdversarialMin)?;
    let theta_partial = sh.density();
    let ka = bounds::k_a(a)?;
    // conservative comparison margin for the irrational K_A
    let bound = theta_f / (ka * (1.0 - 1e-12));
    let satisfied = rat_to_f64(&theta_partial) >= bound;
    Ok(PartialShadowReport {
        c,
        l: g.k(),
        k,
        theta,
        theta_partial,
        k_a: ka,
        bound,
        satisfied,
    })
}

/// Smallest n (with its l, k) admissible for the partial-shadow bound at the
/// given c and density target.
pub fn smallest_admissible(c: usize, a: f64, theta: f64) -> Option<(usize, usize, usize)> {
    if !(0.0 < theta && theta <= 1.0) || a <= 1.0 {
        return None;
    }
    let second = 3.0 * 2f64.powi(c as i32 + 1)
        * (0.5 + (a.powf(1.0 / 3.0) / 4.0 - theta.ln()) / a.ln());
    let lower = (3.0 * 2f64.powi(c as i32)).max(second).ceil() as usize;
    for n in lower..(lower + (8 << c).max(64)) {
        // l ranges over integers with n/2^c in (l+1, l+3]
        let ratio = n as f64 / 2f64.powi(c as i32);
        let lmin = (ratio - 3.0).ceil().max(2.0) as usize;
        let lmax = (ratio - 1.0).ceil() as usize;
        for l in lmin..=lmax {
            let delta = l as f64 - ratio;
            if !(-3.0 <= delta && delta < -1.0) {
                continue;
            }
            if l / 2 < 1 {
                continue;
            }
            if partial_shadow_shape(n, l).is_ok() {
                return Some((n, l, l / 2));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Odd-edge construction
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OddChoice {
    /// Add X itself as an edge.
    TakeSubset,
    /// Add every (n-1)/2-subset of the complement of X.
    TakeComplementShadow,
}

/// Build the (n-1)/2-regular hypergraph of the odd-edge construction: for
/// every (n-1)/2-subset X, either X joins the edge set or all
/// (n-1)/2-subsets of its complement do. The density is always at least 1/2.
pub fn odd_construction(n: usize, choices: &[OddChoice]) -> Result<DensityReport> {
    if n % 2 == 0 || n < 3 {
        return Err(Error::InvalidParameter("n must be odd and at least 3".into()));
    }
    let h = (n - 1) / 2;
    let subsets: Vec<Vec<usize>> = (0..n).combinations(h).collect();
    if choices.len() != subsets.len() {
        return Err(Error::InvalidParameter(format!(
            "{} choices for {} subsets",
            choices.len(),
            subsets.len()
        )));
    }
    let mut edges: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (x, choice) in subsets.iter().zip(choices) {
        match choice {
            OddChoice::TakeSubset => {
                edges.insert(x.clone());
            }
            OddChoice::TakeComplementShadow => {
                let comp = crate::linalg::complement_set(x, n);
                for sub in comp.iter().copied().combinations(h) {
                    edges.insert(sub);
                }
            }
        }
    }
    let g = Hypergraph::new(n, h, edges)?;
    let theta = g.density();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Ok(DensityReport {
        satisfied: theta >= half,
        bound: 0.5,
        theta,
    })
}

/// Exhaustive minimum density over all choice configurations; n = 5 only
/// (the configuration space grows as 2^C(n, (n-1)/2)).
pub fn odd_exhaustive_min(n: usize) -> Result<BigRational> {
    if n != 5 {
        return Err(Error::InvalidParameter(
            "exhaustive sweep is limited to n = 5".into(),
        ));
    }
    let count = binom_big(n, (n - 1) / 2).to_usize().unwrap();
    let mut min: Option<BigRational> = None;
    for mask in 0u64..(1u64 << count) {
        let choices: Vec<OddChoice> = (0..count)
            .map(|i| {
                if (mask >> i) & 1 == 0 {
                    OddChoice::TakeSubset
                } else {
                    OddChoice::TakeComplementShadow
                }
            })
            .collect();
        let report = odd_construction(n, &choices)?;
        if min.as_ref().map_or(true, |m| report.theta < *m) {
            min = Some(report.theta);
        }
    }
    Ok(min.unwrap())
}

/// Minimum density over random configurations.
pub fn odd_random_min(n: usize, trials: usize, seed: u64) -> Result<BigRational> {
    let count = binom_big(n, (n - 1) / 2)
        .to_usize()
        .ok_or_else(|| Error::InvalidParameter("too many subsets".into()))?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut min: Option<BigRational> = None;
    for _ in 0..trials {
        let choices: Vec<OddChoice> = (0..count)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    OddChoice::TakeSubset
                } else {
                    OddChoice::TakeComplementShadow
                }
            })
            .collect();
        let report = odd_construction(n, &choices)?;
        if min.as_ref().map_or(true, |m| report.theta < *m) {
            min = Some(report.theta);
        }
    }
    min.ok_or_else(|| Error::InvalidParameter("zero trials".into()))
}

// ---------------------------------------------------------------------------
// Degree of a random vertex
// ---------------------------------------------------------------------------

/// Edge-membership models for degree sampling. Explicit graphs give exact
/// densities and degrees; the complete graph is analytic; the Bernoulli
/// model defines membership by a keyed hash so graphs far beyond
/// enumeration can be sampled.
#[derive(Debug, Clone)]
pub enum DegreeModel<'a> {
    Explicit(&'a Hypergraph),
    Complete { n: usize, k: usize },
    Bernoulli { n: usize, k: usize, p: f64, seed: u64 },
}

impl<'a> DegreeModel<'a> {
    fn n(&self) -> usize {
        match self {
            DegreeModel::Explicit(g) => g.n(),
            DegreeModel::Complete { n, .. } | DegreeModel::Bernoulli { n, .. } => *n,
        }
    }

    fn k(&self) -> usize {
        match self {
            DegreeModel::Explicit(g) => g.k(),
            DegreeModel::Complete { k, .. } | DegreeModel::Bernoulli { k, .. } => *k,
        }
    }

    fn contains(&self, edge: &[usize]) -> bool {
        match self {
            DegreeModel::Explicit(g) => g.contains(edge),
            DegreeModel::Complete { .. } => true,
            DegreeModel::Bernoulli { p, seed, .. } => {
                let h = subset_hash(*seed, edge);
                (h as f64) < *p * (u64::MAX as f64)
            }
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Stable keyed hash of a sorted subset; platform-independent so seeded
/// runs reproduce byte-for-byte.
fn subset_hash(seed: u64, subset: &[usize]) -> u64 {
    let mut h = splitmix64(seed ^ 0x5bf0_3635_dead_beef);
    for &q in subset {
        h = splitmix64(h ^ (q as u64).wrapping_add(0x100));
    }
    h
}

/// Empirical tail report for the degree-of-a-random-vertex bound.
#[derive(Debug, Clone)]
pub struct TailReport {
    pub theta: f64,
    pub threshold: f64,
    pub tail: f64,
    /// Binomial standard error of the tail estimate.
    pub sigma: f64,
    pub vertex_trials: usize,
}

/// Estimate `Pr[|theta - tau| >= min(Delta(alpha,beta,n), (1-theta)(1-alpha))]`
/// over a uniformly random vertex, where tau is the vertex's normalized
/// degree. For explicit and complete models degrees are exact; under the
/// Bernoulli model both the density and the per-vertex degree fraction are
/// estimated from `edge_samples` subset draws.
pub fn degree_concentration(
    model: &DegreeModel,
    alpha: f64,
    vertex_trials: usize,
    edge_samples: usize,
    seed: u64,
) -> Result<TailReport> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::InvalidParameter("alpha outside (0,1)".into()));
    }
    let n = model.n();
    let k = model.k();
    let beta = k as f64 / n as f64;
    if !(0.0 < beta && beta < 1.0) {
        return Err(Error::InvalidParameter("need 0 < k < n".into()));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    // density: exact when available, else estimated
    let theta = match model {
        DegreeModel::Explicit(g) => rat_to_f64(&g.density()),
        DegreeModel::Complete { .. } => 1.0,
        DegreeModel::Bernoulli { .. } => {
            let mut hits = 0usize;
            for _ in 0..edge_samples {
                let e = sample_subset(n, k, &mut rng);
                if model.contains(&e) {
                    hits += 1;
                }
            }
            hits as f64 / edge_samples as f64
        }
    };
    let width = bounds::delta(alpha, beta, n)?;
    let threshold = width.min((1.0 - theta) * (1.0 - alpha));
    let mut exceed = 0usize;
    for _ in 0..vertex_trials {
        let v = rng.gen_range(0..n);
        let tau = match model {
            DegreeModel::Explicit(g) => {
                let total = binom_big(n - 1, k - 1).to_f64().unwrap();
                g.degree(v) as f64 / total
            }
            DegreeModel::Complete { .. } => 1.0,
            DegreeModel::Bernoulli { .. } => {
                let mut hits = 0usize;
                for _ in 0..edge_samples {
                    let e = sample_subset_containing(n, k, v, &mut rng);
                    if model.contains(&e) {
                        hits += 1;
                    }
                }
                hits as f64 / edge_samples as f64
            }
        };
        // strict at a zero threshold: the deviation bound degenerates to 0
        // at theta = 1 where the deviation itself is identically 0
        let dev = (theta - tau).abs();
        if dev >= threshold && (threshold > 0.0 || dev > 0.0) {
            exceed += 1;
        }
    }
    let tail = exceed as f64 / vertex_trials as f64;
    let sigma = (tail * (1.0 - tail) / vertex_trials as f64).sqrt();
    Ok(TailReport { theta, threshold, tail, sigma, vertex_trials })
}

fn sample_subset<R: Rng>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    // Floyd's algorithm
    let mut chosen = BTreeSet::new();
    for j in (n - k)..n {
        let t = rng.gen_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    chosen.into_iter().collect()
}

fn sample_subset_containing<R: Rng>(n: usize, k: usize, v: usize, rng: &mut R) -> Vec<usize> {
    loop {
        let mut e = sample_subset(n, k - 1, rng);
        // sample over the other n-1 vertices by skipping v
        for q in e.iter_mut() {
            if *q >= v {
                *q += 1;
            }
        }
        let mut full = e;
        full.push(v);
        full.sort_unstable();
        full.dedup();
        if full.len() == k {
            return full;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn binom_real_values() {
        assert_eq!(binom_real(10.0, 3), 120.0);
        assert!((binom_real(2.5, 2) - 1.875).abs() < 1e-15);
        for c in 1..8 {
            assert_eq!(binom_real(c as f64 - 1.0, c), 0.0);
        }
    }

    #[test]
    fn binom_scaling_theta_one() {
        let report = check_binom_scaling(&rat(1, 1), &rat(10, 1), 3).unwrap();
        assert!(report.in_domain);
        assert!(report.holds);
        assert!(report.alpha_lo.abs() < 1e-20 && report.alpha_hi.abs() < 1e-20);
    }

    #[test]
    fn binom_scaling_eighth() {
        // theta = 1/8, x = 10, c = 3: alpha = 1/2 exactly and 15 <= C(6,3) = 20
        let report = check_binom_scaling(&rat(1, 8), &rat(10, 1), 3).unwrap();
        assert!(report.in_domain);
        assert!(report.holds);
        assert!((report.alpha_lo - 0.5).abs() < 1e-12);
        assert!((report.alpha_hi - 0.5).abs() < 1e-12);
    }

    #[test]
    fn binom_scaling_out_of_domain_detected() {
        // theta = 1/20, c = 5, x = 5: theta^(1/5) x ~ 2.75 < 3 = c - 2
        let report = check_binom_scaling(&rat(1, 20), &rat(5, 1), 5).unwrap();
        assert!(!report.in_domain);
        assert!(!report.holds);
    }

    #[test]
    fn shadow_of_complete_is_complete() {
        let g = Hypergraph::complete(4, 3).unwrap();
        let s = g.shadow(2).unwrap();
        assert_eq!(s, Hypergraph::complete(4, 2).unwrap());
    }

    #[test]
    fn shadow_of_single_edge() {
        let mut edges = BTreeSet::new();
        edges.insert(vec![0, 1, 2]);
        let g = Hypergraph::new(5, 3, edges).unwrap();
        let s = g.shadow(2).unwrap();
        let expect: BTreeSet<Vec<usize>> =
            [vec![0, 1], vec![0, 2], vec![1, 2]].into_iter().collect();
        assert_eq!(s.edges(), &expect);
        assert!(Hypergraph::empty(5, 3).unwrap().shadow(2).unwrap().num_edges() == 0);
    }

    #[test]
    fn shadow_matches_subset_lattice_oracle() {
        for seed in 0..10u64 {
            let g = Hypergraph::random_exact(8, 4, 20, seed).unwrap();
            let s = g.shadow(2).unwrap();
            // oracle: a 2-subset is in the shadow iff contained in some edge
            for pair in (0..8usize).combinations(2) {
                let expected = g
                    .edges()
                    .iter()
                    .any(|e| pair.iter().all(|v| e.binary_search(v).is_ok()));
                assert_eq!(s.contains(&pair), expected, "pair {pair:?}");
            }
        }
    }

    #[test]
    fn shadow_density_bound_complete() {
        let g = Hypergraph::complete(8, 4).unwrap();
        let r = check_shadow_density(&g, 2).unwrap();
        assert!(r.satisfied);
        assert_eq!(r.theta, BigRational::one());
    }

    #[test]
    fn shadow_density_bound_random_sweep() {
        for n in 6..=10usize {
            for l in 3..=5usize.min(n - 1) {
                for seed in 0..8u64 {
                    let total = binom_big(n, l).to_usize().unwrap();
                    let m = ((total as f64) * 0.3).round().max(1.0) as usize;
                    let g = Hypergraph::random_exact(n, l, m, seed).unwrap();
                    for k in 2..l {
                        let r = check_shadow_density(&g, k).unwrap();
                        assert!(r.satisfied, "violation at n={n} l={l} k={k} seed={seed}");
                    }
                }
            }
        }
    }

    #[test]
    fn partial_shadow_full_omega_equals_shadow() {
        let g = Hypergraph::random_exact(8, 4, 15, 3).unwrap();
        let full = partial_shadow(&g, 2, &rat(1, 1), ShadowStrategy::AdversarialMin).unwrap();
        assert_eq!(&full, &g.shadow(2).unwrap());
    }

    #[test]
    fn partial_shadow_zero_quota_is_empty() {
        let g = Hypergraph::random_exact(8, 4, 15, 4).unwrap();
        // omega = 1/12 gives floor(6/12) = 0 chosen pairs per edge
        let s = partial_shadow(&g, 2, &rat(1, 12), ShadowStrategy::AdversarialMin).unwrap();
        assert_eq!(s.num_edges(), 0);
    }

    #[test]
    fn partial_shadow_single_edge_half() {
        let mut edges = BTreeSet::new();
        edges.insert(vec![0, 1, 2, 3]);
        let g = Hypergraph::new(6, 4, edges).unwrap();
        let s = partial_shadow(&g, 2, &rat(1, 2), ShadowStrategy::AdversarialMin).unwrap();
        assert_eq!(s.num_edges(), 3);
    }

    #[test]
    fn smallest_admissible_shape_for_c2() {
        // at the paper's A and theta >= 0.93 the smallest admissible n for
        // c = 2 is 25 with l = 5, k = 2
        let a = crate::bounds::paper_choice_a();
        let (n, l, k) = smallest_admissible(2, a, 0.93).unwrap();
        assert_eq!((n, l, k), (25, 4, 2));
        let (c, kk) = partial_shadow_shape(n, l).unwrap();
        assert_eq!((c, kk), (2, 2));
    }

    #[test]
    fn partial_shadow_density_bound_at_min_scale() {
        let a = crate::bounds::paper_choice_a();
        let (n, l, _) = smallest_admissible(2, a, 0.93).unwrap();
        let total = binom_big(n, l).to_usize().unwrap();
        let m = ((total as f64) * 0.95).round() as usize;
        for seed in 0..3u64 {
            let g = Hypergraph::random_exact(n, l, m, seed).unwrap();
            let r = check_partial_shadow_density(&g, a).unwrap();
            assert!(r.satisfied, "density bound failed: {r:?}");
            assert!((r.k_a - 4.0).abs() < 1e-9);
        }
    }

    #[test]
    fn odd_construction_all_take_subset_is_complete() {
        let count = binom_big(5, 2).to_usize().unwrap();
        let choices = vec![OddChoice::TakeSubset; count];
        let r = odd_construction(5, &choices).unwrap();
        assert_eq!(r.theta, BigRational::one());
        assert!(r.satisfied);
    }

    #[test]
    fn odd_exhaustive_min_at_five() {
        // minimal configuration leaves C(4,2) = 6 of the 10 possible edges
        let min = odd_exhaustive_min(5).unwrap();
        assert_eq!(min, rat(6, 10));
        assert!(min >= rat(1, 2));
    }

    #[test]
    fn odd_random_sweep_at_seven() {
        let min = odd_random_min(7, 300, 9).unwrap();
        assert!(min >= rat(1, 2), "min density {min}");
    }

    #[test]
    fn degree_concentration_complete_graph() {
        let model = DegreeModel::Complete { n: 40, k: 20 };
        let r = degree_concentration(&model, 0.3, 500, 0, 7).unwrap();
        assert_eq!(r.tail, 0.0);
        assert_eq!(r.theta, 1.0);
    }

    #[test]
    fn degree_concentration_explicit_small() {
        let g = Hypergraph::random_exact(12, 6, 400, 5).unwrap();
        let model = DegreeModel::Explicit(&g);
        let r = degree_concentration(&model, 0.3, 2000, 0, 11).unwrap();
        assert!(r.tail <= 0.3 + 3.0 * r.sigma + 1e-12, "{r:?}");
    }

    #[test]
    fn degree_concentration_bernoulli_smoke() {
        let model = DegreeModel::Bernoulli { n: 60, k: 30, p: 0.5, seed: 42 };
        let r = degree_concentration(&model, 0.3, 300, 800, 13).unwrap();
        assert!((r.theta - 0.5).abs() < 0.1, "estimated density {}", r.theta);
        assert!(r.tail <= 0.3 + 3.0 * r.sigma + 1e-12, "{r:?}");
    }

    #[test]
    fn density_two_binomial_routes_agree() {
        for seed in 0..5u64 {
            let g = Hypergraph::random_exact(9, 3, 30, seed).unwrap();
            let exact = g.density();
            let real = g.num_edges() as f64 / binom_real(9.0, 3);
            assert!((rat_to_f64(&exact) - real).abs() < 1e-12);
        }
    }
}
