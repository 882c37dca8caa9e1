//! Multivariate polynomials over the Gaussian rationals with the
//! graded-reverse-lexicographic term order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::gauss::GaussQ;

/// Exponent vector. Total degree graded, ties broken reverse-lex: of two
/// monomials with equal degree, the one whose rightmost differing exponent
/// is smaller is the larger monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, idx: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let da = self.degree();
        let db = other.degree();
        if da != db {
            return da.cmp(&db);
        }
        // reverse lex on the difference, scanning from the right
        for i in (0..self.0.len()).rev() {
            if self.0[i] != other.0[i] {
                // smaller rightmost exponent ranks higher
                return other.0[i].cmp(&self.0[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; the map's maximal key is the leading monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub num_vars: usize,
    pub terms: BTreeMap<Monomial, GaussQ>,
}

impl Poly {
    pub fn zero(num_vars: usize) -> Self {
        Poly { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: GaussQ) -> Self {
        let mut p = Poly::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(num_vars), c);
        }
        p
    }

    pub fn var(num_vars: usize, idx: usize) -> Self {
        let mut p = Poly::zero(num_vars);
        p.terms.insert(Monomial::var(num_vars, idx), GaussQ::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &GaussQ)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &GaussQ) -> Poly {
        let mut out = Poly::zero(self.num_vars);
        for (mm, cc) in &self.terms {
            out.add_term(mm.mul(m), cc.mul(c));
        }
        out
    }

    pub fn scale(&self, c: &GaussQ) -> Poly {
        let mut out = Poly::zero(self.num_vars);
        for (m, cc) in &self.terms {
            out.add_term(m.clone(), cc.mul(c));
        }
        out
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => self.scale(&lc.inv()),
        }
    }

    /// Rescale to a primitive Gaussian-integer form: clear denominators,
    /// divide by the integer content, and fix the unit so the leading
    /// coefficient has positive real part (or zero real and positive
    /// imaginary). Any nonzero scalar multiple generates the same ideal;
    /// this one keeps coefficients small and the representation canonical.
    pub fn normalize_content(&self) -> Poly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Signed, Zero};
        if self.terms.is_empty() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.re.denom());
            denom_lcm = denom_lcm.lcm(c.im.denom());
        }
        let mut content = BigInt::zero();
        let mut ints: Vec<(BigInt, BigInt)> = Vec::with_capacity(self.terms.len());
        for c in self.terms.values() {
            let re = c.re.numer() * (&denom_lcm / c.re.denom());
            let im = c.im.numer() * (&denom_lcm / c.im.denom());
            content = content.gcd(&re).gcd(&im);
            ints.push((re, im));
        }
        if content.is_zero() {
            content = BigInt::one();
        }
        let mut out = Poly::zero(self.num_vars);
        for ((m, _), (re, im)) in self.terms.iter().zip(ints) {
            let c = super::gauss::GaussQ {
                re: num_rational::BigRational::from_integer(&re / &content),
                im: num_rational::BigRational::from_integer(&im / &content),
            };
            out.terms.insert(m.clone(), c);
        }
        // unit normalization by the leading coefficient's quadrant
        if let Some((_, lc)) = out.leading() {
            let unit: Option<super::gauss::GaussQ> = if lc.re.is_zero() {
                // rotate a purely imaginary lead onto the real axis
                Some(super::gauss::GaussQ {
                    re: num_rational::BigRational::zero(),
                    im: -num_rational::BigRational::one(),
                })
            } else if lc.re.is_negative() {
                Some(super::gauss::GaussQ::from_int(-1))
            } else {
                None
            };
            if let Some(u) = unit {
                let mut fixed = out.scale(&u);
                if let Some((_, lc2)) = fixed.leading() {
                    if lc2.re.is_negative() {
                        fixed = fixed.scale(&super::gauss::GaussQ::from_int(-1));
                    }
                }
                return fixed;
            }
        }
        out
    }

    /// Remainder of `self` on division by the family `divisors`. The
    /// subtraction of each reducer multiple happens in place.
    pub fn reduce(&self, divisors: &[Poly]) -> Poly {
        let mut rem = Poly::zero(self.num_vars);
        let mut cur = self.clone();
        'outer: while let Some((lm, lc)) = cur.leading().map(|(m, c)| (m.clone(), c.clone())) {
            for d in divisors {
                if let Some((dm, dc)) = d.leading() {
                    if dm.divides(&lm) {
                        let q = dm.quotient(&lm);
                        let factor = lc.div(dc);
                        for (m, c) in &d.terms {
                            cur.add_term(m.mul(&q), c.mul(&factor).neg());
                        }
                        continue 'outer;
                    }
                }
            }
            // leading term irreducible: move it to the remainder
            cur.terms.remove(&lm);
            rem.add_term(lm, lc);
        }
        rem
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn grevlex_ordering() {
        // degree dominates
        assert!(m(&[2, 0]) > m(&[1, 0]));
        // x^2 y > x y^2 > y^3 in grevlex (x = var 0)
        assert!(m(&[2, 1, 0]) > m(&[1, 2, 0]));
        assert!(m(&[1, 2, 0]) > m(&[0, 3, 0]));
        // classic grevlex vs lex separator: x y z > x^2 ... no; check
        // x^1 y^1 z^0 vs x^1 y^0 z^1: rightmost difference at z, smaller z wins
        assert!(m(&[1, 1, 0]) > m(&[1, 0, 1]));
    }

    #[test]
    fn reduce_univariate() {
        // (x^2 - 1) reduced by (x - 1) leaves 0 remainder after two steps
        let nv = 1;
        let x = Poly::var(nv, 0);
        let one = Poly::constant(nv, GaussQ::one());
        let f = x.mul(&x).sub(&one);
        let g = x.sub(&one);
        let r = f.reduce(&[g]);
        assert!(r.is_zero(), "{r:?}");
    }

    #[test]
    fn reduce_moves_irreducible_terms() {
        let nv = 2;
        let x = Poly::var(nv, 0);
        let y = Poly::var(nv, 1);
        // reduce x*y + y by x: remainder y... x*y is divisible by x; the
        // quotient y*x cancels exactly, leaving y
        let f = x.mul(&y).add(&y);
        let r = f.reduce(&[x]);
        assert_eq!(r, y);
    }
}
