use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::{GaussRat, Rat};

/// Dense exponent vector, one slot per ring variable.
pub type Exponent = Vec<u32>;

/// Multivariate polynomial over Q(i) in a fixed number of variables.
///
/// The term map never stores a zero coefficient, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, GaussRat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: GaussRat) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, GaussRat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::monomial(e, GaussRat::one())
    }

    pub fn monomial(exp: Exponent, c: GaussRat) -> Self {
        let mut p = MPoly::zero(exp.len());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> GaussRat {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    pub fn add_term(&mut self, exp: Exponent, c: &GaussRat) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &GaussRat) -> MPoly {
        if s.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn scale_rat(&self, s: &Rat) -> MPoly {
        self.scale(&GaussRat::real(s.clone()))
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, &(c * &GaussRat::real(Rat::from_integer(e[var].into()))));
        }
        out
    }

    /// Conjugates every coefficient and renames variable `i` to `perm[i]`.
    pub fn conj_with(&self, perm: &[usize]) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; self.nvars];
            for (i, &k) in e.iter().enumerate() {
                e2[perm[i]] += k;
            }
            out.add_term(e2, &c.conj());
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`. All images must share one ring.
    pub fn compose(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut cache: Vec<Vec<MPoly>> = vec![vec![MPoly::one(target)]; self.nvars];
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap().mul(&images[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][k as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Fixes the listed variables to rational values; the ring is unchanged.
    pub fn specialize(&self, values: &[(usize, Rat)]) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut c = c.clone();
            let mut e2 = e.clone();
            for (v, val) in values {
                let k = e2[*v];
                if k > 0 {
                    c = &c * &GaussRat::real(num_traits::pow(val.clone(), k as usize));
                    e2[*v] = 0;
                }
            }
            out.add_term(e2, &c);
        }
        out
    }

    /// Evaluates at a point given for every variable.
    pub fn eval(&self, point: &[GaussRat]) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = &t * &point[i];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Maps variable `i` of this ring to variable `map[i]` of a ring with `nvars` slots.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> MPoly {
        let mut out = MPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    e2[map[i]] += k;
                }
            }
            out.add_term(e2, c);
        }
        out
    }

    /// Real and imaginary parts as polynomials with real coefficients,
    /// treating every variable as real.
    pub fn re_im(&self) -> (MPoly, MPoly) {
        let mut re = MPoly::zero(self.nvars);
        let mut im = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            re.add_term(e.clone(), &GaussRat::real(c.re.clone()));
            im.add_term(e.clone(), &GaussRat::real(c.im.clone()));
        }
        (re, im)
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                .collect();
            let pure_neg_im = c.re.is_zero() && c.im < Rat::zero();
            let (neg, mag) = if (c.is_real() && c.re < Rat::zero()) || pure_neg_im {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if idx > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            if mono.is_empty() {
                let _ = write!(s, "{mag}");
            } else if mag.is_one() {
                s.push_str(&mono.join("*"));
            } else {
                let _ = write!(s, "{}*{}", mag, mono.join("*"));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};
    use proptest::prelude::*;

    fn c(n: i64) -> GaussRat {
        GaussRat::real(int(n))
    }

    #[test]
    fn zero_checks() {
        // vars: z, zb, a
        let z = MPoly::var(3, 0);
        let zb = MPoly::var(3, 1);
        let a = MPoly::var(3, 2);
        assert!(z.add(&zb.scale(&c(0))).sub(&z).is_zero());
        assert!(a.mul(&z).sub(&z.mul(&a)).is_zero());
        assert!(!a.mul(&z).sub(&z).is_zero());
    }

    #[test]
    fn derivative_and_compose() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = x.pow(3).mul(&y); // x^3 y
        assert_eq!(p.derivative(0), x.pow(2).mul(&y).scale(&c(3)));
        // x -> x + y, y -> 2
        let q = p.compose(&[x.add(&y), MPoly::constant(2, c(2))]);
        assert_eq!(q, x.add(&y).pow(3).scale(&c(2)));
    }

    #[test]
    fn specialize_parameter() {
        let x = MPoly::var(2, 0);
        let a = MPoly::var(2, 1);
        let p = a.pow(2).mul(&x).add(&a);
        assert_eq!(p.specialize(&[(1, rat(3, 2))]), x.scale_rat(&rat(9, 4)).add(&MPoly::constant(2, GaussRat::real(rat(3, 2)))));
    }

    fn small_poly() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec(((0u32..3, 0u32..3), -4i64..5, -3i64..4), 0..5).prop_map(|ts| {
            let mut p = MPoly::zero(2);
            for ((a, b), re, im) in ts {
                p.add_term(vec![a, b], &GaussRat::new(int(re), int(im)));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
            prop_assert_eq!(p.add(&q), q.add(&p));
            prop_assert!(p.sub(&p).is_zero());
        }
    }
}
