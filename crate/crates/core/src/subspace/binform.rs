//! Homogeneous binary forms over the complex numbers: the small polynomial
//! toolkit behind the product-point eliminants. Degrees stay at or below 6,
//! so plain Euclid and Durand-Kerner iteration are enough.

use num_complex::Complex64;

use crate::linalg::c;

/// `f(a,b) = sum coeffs[i] a^(deg-i) b^i` with `deg = coeffs.len() - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinForm {
    pub coeffs: Vec<Complex64>,
}

/// A point of the complex projective line, stored with the larger-magnitude
/// coordinate normalized to 1.
#[derive(Debug, Clone)]
pub struct ProjectivePoint {
    pub a: Complex64,
    pub b: Complex64,
}

impl ProjectivePoint {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        assert!(a.norm() > 0.0 || b.norm() > 0.0, "projective point needs a nonzero coordinate");
        if a.norm() >= b.norm() {
            ProjectivePoint { a: c(1.0, 0.0), b: b / a }
        } else {
            ProjectivePoint { a: a / b, b: c(1.0, 0.0) }
        }
    }

    /// Chordal (Fubini-Study) distance; phase-invariant, in [0, 1].
    pub fn distance(&self, other: &ProjectivePoint) -> f64 {
        let n1 = self.a.norm_sqr() + self.b.norm_sqr();
        let n2 = other.a.norm_sqr() + other.b.norm_sqr();
        let inner = self.a.conj() * other.a + self.b.conj() * other.b;
        let overlap = inner.norm_sqr() / (n1 * n2);
        (1.0 - overlap.min(1.0)).max(0.0).sqrt()
    }

    pub fn approx_eq(&self, other: &ProjectivePoint) -> bool {
        self.distance(other) < 1e-8
    }
}

impl BinForm {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty());
        BinForm { coeffs }
    }

    pub fn zero(deg: usize) -> Self {
        BinForm { coeffs: vec![c(0.0, 0.0); deg + 1] }
    }

    /// Degree-1 form `alpha * a + beta * b`.
    pub fn linear(alpha: Complex64, beta: Complex64) -> Self {
        BinForm { coeffs: vec![alpha, beta] }
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64, scale: f64) -> bool {
        self.max_abs() <= tol * scale.max(1e-300)
    }

    pub fn eval(&self, a: Complex64, b: Complex64) -> Complex64 {
        let d = self.deg();
        let mut acc = c(0.0, 0.0);
        let mut ap = vec![c(1.0, 0.0); d + 1];
        let mut bp = vec![c(1.0, 0.0); d + 1];
        for i in 1..=d {
            ap[i] = ap[i - 1] * a;
            bp[i] = bp[i - 1] * b;
        }
        for (i, co) in self.coeffs.iter().enumerate() {
            acc += co * ap[d - i] * bp[i];
        }
        acc
    }

    pub fn mul(&self, other: &BinForm) -> BinForm {
        let mut out = vec![c(0.0, 0.0); self.deg() + other.deg() + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        BinForm { coeffs: out }
    }

    pub fn sub(&self, other: &BinForm) -> BinForm {
        assert_eq!(self.deg(), other.deg(), "degree mismatch in subtraction");
        BinForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn add(&self, other: &BinForm) -> BinForm {
        assert_eq!(self.deg(), other.deg(), "degree mismatch in addition");
        BinForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> BinForm {
        BinForm { coeffs: self.coeffs.iter().map(|x| x * s).collect() }
    }

    /// Multiplicity of the root [0:1], i.e. the power of `a` dividing the
    /// form: the number of leading coefficients below tolerance, counted from
    /// the high-degree end in `b`.
    fn a_multiplicity(&self, tol: f64) -> usize {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0;
        }
        let mut m = 0;
        for i in (0..self.coeffs.len()).rev() {
            if self.coeffs[i].norm() <= tol * scale {
                m += 1;
            } else {
                break;
            }
        }
        m
    }

    /// Dehomogenization u(t) = f(1, t), trimmed at relative tolerance.
    fn univariate(&self, tol: f64) -> Vec<Complex64> {
        let scale = self.max_abs();
        let mut u = self.coeffs.clone();
        while u.len() > 1 && u.last().unwrap().norm() <= tol * scale {
            u.pop();
        }
        u
    }

    /// All projective roots with multiplicity flattened out (each root listed
    /// once; a cluster returned by the solver is deduplicated by the caller).
    pub fn roots(&self, tol: f64) -> Vec<ProjectivePoint> {
        let scale = self.max_abs();
        if scale == 0.0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        if self.a_multiplicity(tol) > 0 {
            out.push(ProjectivePoint::new(c(0.0, 0.0), c(1.0, 0.0)));
        }
        let u = self.univariate(tol);
        for t in durand_kerner(&u) {
            out.push(ProjectivePoint::new(c(1.0, 0.0), t));
        }
        dedupe_points(out)
    }
}

pub fn dedupe_points(points: Vec<ProjectivePoint>) -> Vec<ProjectivePoint> {
    let mut out: Vec<ProjectivePoint> = Vec::new();
    for p in points {
        if !out.iter().any(|q| q.distance(&p) < 1e-6) {
            out.push(p);
        }
    }
    out
}

/// Roots of a univariate complex polynomial by Durand-Kerner iteration.
/// Adequate for the degree <= 6 eliminants handled here.
pub fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|z| z / lead).collect();
    // Cauchy bound on root magnitude
    let radius = 1.0
        + monic[..n]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
    let seed = c(0.4, 0.9);
    let mut zs: Vec<Complex64> = (0..n)
        .map(|i| seed.powu(i as u32 + 1) * c(radius, 0.0))
        .collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = c(0.0, 0.0);
        for co in monic.iter().rev() {
            acc = acc * z + co;
        }
        acc
    };
    for _ in 0..600 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = c(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= zs[i] - zs[j];
                }
            }
            if denom.norm() < 1e-300 {
                denom = c(1e-300, 0.0);
            }
            let delta = eval(zs[i]) / denom;
            zs[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-14 * radius.max(1.0) {
            break;
        }
    }
    zs
}

/// Greatest common divisor of two binary forms by Euclid on the
/// dehomogenizations plus shared powers of `a`.
///
/// Returns the gcd and a conditioning flag; a `false` flag means a
/// zero-remainder decision fell inside the gray band and downstream verdicts
/// should be treated as indeterminate.
pub fn gcd(f: &BinForm, g: &BinForm, tol: f64) -> (BinForm, bool) {
    let sf = f.max_abs();
    let sg = g.max_abs();
    if sf == 0.0 {
        return (g.clone(), true);
    }
    if sg == 0.0 {
        return (f.clone(), true);
    }
    let a_common = f.a_multiplicity(tol).min(g.a_multiplicity(tol));
    let mut u = normalize(f.univariate(tol));
    let mut v = normalize(g.univariate(tol));
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    let mut well_conditioned = true;
    loop {
        if v.len() == 1 {
            // nonzero constant: coprime dehomogenizations
            if v[0].norm() > tol {
                let mut coeffs = vec![c(1.0, 0.0)];
                coeffs.extend(std::iter::repeat(c(0.0, 0.0)).take(a_common));
                return (BinForm { coeffs }, well_conditioned);
            }
            break;
        }
        let r = poly_rem(&u, &v);
        let rn = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if rn <= tol {
            if rn > tol * 0.01 {
                well_conditioned = false;
            }
            break;
        }
        if rn <= tol * 100.0 {
            well_conditioned = false;
        }
        u = v;
        v = normalize(trim(r, tol));
    }
    // v is the univariate gcd; homogenize and restore the shared a-power.
    let mut coeffs = normalize(v);
    coeffs.extend(std::iter::repeat(c(0.0, 0.0)).take(a_common));
    (BinForm { coeffs }, well_conditioned)
}

/// gcd of a whole family, with conditioning AND-ed together.
pub fn gcd_many(forms: &[BinForm], tol: f64) -> Option<(BinForm, bool)> {
    let mut it = forms.iter();
    let first = it.next()?;
    let mut acc = first.clone();
    let mut ok = true;
    for f in it {
        let (g, cond) = gcd(&acc, f, tol);
        acc = g;
        ok &= cond;
    }
    Some((acc, ok))
}

fn normalize(mut p: Vec<Complex64>) -> Vec<Complex64> {
    let m = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if m > 0.0 {
        for z in &mut p {
            *z /= m;
        }
    }
    p
}

fn trim(mut p: Vec<Complex64>, tol: f64) -> Vec<Complex64> {
    let m = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
    while p.len() > 1 && p.last().unwrap().norm() <= tol * m.max(1e-300) {
        p.pop();
    }
    p
}

/// Remainder of univariate division (coefficients ascending).
fn poly_rem(num: &[Complex64], den: &[Complex64]) -> Vec<Complex64> {
    let dn = den.len() - 1;
    let lead = den[dn];
    let mut r = num.to_vec();
    while r.len() > dn {
        let k = r.len() - 1;
        let q = r[k] / lead;
        for i in 0..=dn {
            let idx = k - dn + i;
            r[idx] = r[idx] - q * den[i];
        }
        r.pop();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(re: &[f64]) -> BinForm {
        BinForm::new(re.iter().map(|&x| c(x, 0.0)).collect())
    }

    #[test]
    fn eval_and_mul() {
        // (a + b) * (a - b) = a^2 - b^2
        let f = form(&[1.0, 1.0]);
        let g = form(&[1.0, -1.0]);
        let h = f.mul(&g);
        assert_eq!(h.deg(), 2);
        assert!((h.eval(c(2.0, 0.0), c(1.0, 0.0)) - c(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn roots_of_ab() {
        // a*b has roots [1:0] and [0:1]
        let f = form(&[0.0, 1.0, 0.0]);
        let roots = f.roots(1e-10);
        assert_eq!(roots.len(), 2);
        let zero = ProjectivePoint::new(c(1.0, 0.0), c(0.0, 0.0));
        let inf = ProjectivePoint::new(c(0.0, 0.0), c(1.0, 0.0));
        assert!(roots.iter().any(|r| r.approx_eq(&zero)));
        assert!(roots.iter().any(|r| r.approx_eq(&inf)));
    }

    #[test]
    fn durand_kerner_quartic() {
        // (t-1)(t-2)(t-3)(t-4) = 24 - 50t + 35t^2 - 10t^3 + t^4
        let coeffs = [24.0, -50.0, 35.0, -10.0, 1.0].map(|x| c(x, 0.0));
        let mut roots: Vec<f64> = durand_kerner(&coeffs).iter().map(|z| z.re).collect();
        roots.sort_by(f64::total_cmp);
        for (r, expect) in roots.iter().zip([1.0, 2.0, 3.0, 4.0]) {
            assert!((r - expect).abs() < 1e-8, "{r} vs {expect}");
        }
    }

    #[test]
    fn gcd_shared_factor() {
        // gcd((a+b)(a-b), (a+b)(a-2b)) = a+b up to scale
        let f = form(&[1.0, 1.0]).mul(&form(&[1.0, -1.0]));
        let g = form(&[1.0, 1.0]).mul(&form(&[1.0, -2.0]));
        let (h, ok) = gcd(&f, &g, 1e-9);
        assert!(ok);
        assert_eq!(h.deg(), 1);
        let ratio = h.coeffs[1] / h.coeffs[0];
        assert!((ratio - c(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn gcd_coprime_is_constant() {
        let f = form(&[1.0, 1.0]);
        let g = form(&[1.0, -1.0]);
        let (h, ok) = gcd(&f, &g, 1e-9);
        assert!(ok);
        assert_eq!(h.deg(), 0);
    }

    #[test]
    fn gcd_with_a_powers() {
        // gcd(a^2 * (a+b), a * (a+2b)) = a
        let a2 = form(&[1.0, 0.0, 0.0]);
        let f = a2.mul(&form(&[1.0, 1.0]));
        let g = form(&[1.0, 0.0]).mul(&form(&[1.0, 2.0]));
        let (h, ok) = gcd(&f, &g, 1e-9);
        assert!(ok);
        assert_eq!(h.deg(), 1);
        // h should vanish at [0:1]
        assert!(h.eval(c(0.0, 0.0), c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn projective_point_normalization() {
        // the larger-magnitude coordinate is pinned to 1
        let p = ProjectivePoint::new(c(0.0, 2.0), c(1.0, 0.0));
        assert!((p.a - c(1.0, 0.0)).norm() < 1e-15);
        assert!((p.b - c(0.0, -0.5)).norm() < 1e-15);
        // phase invariance of distance
        let q = ProjectivePoint::new(c(0.0, -4.0), c(-2.0, 0.0));
        assert!(p.distance(&q) < 1e-12);
    }
}
