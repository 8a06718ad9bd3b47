use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::Rational;
use super::ring::{Monomial, Ring};
use super::text::{format_terms, parse_terms};
use crate::error::{Error, Result};

/// An element of a truncated ring: a sparse sum of normal-form monomials.
///
/// Zero coefficients are never stored.
#[derive(Debug, Clone)]
pub struct GradedClass {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for GradedClass {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for GradedClass {}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GradedClass {
    pub fn zero(ring: &Ring) -> Self {
        GradedClass {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, q: Rational) -> Self {
        Self::from_monomial(ring, Monomial::one(ring.len()), q)
    }

    /// `q * m`, or zero when `m` is beyond the truncation.
    pub fn from_monomial(ring: &Ring, m: Monomial, q: Rational) -> Self {
        let mut c = Self::zero(ring);
        c.accumulate(m, q);
        c
    }

    /// The generator at position `index`.
    ///
    /// Panics if `index` is out of range.
    pub fn gen(ring: &Ring, index: usize) -> Self {
        assert!(index < ring.len(), "generator index {index} out of range");
        let mut e = vec![0; ring.len()];
        e[index] = 1;
        Self::from_monomial(ring, Monomial(e), Rational::one())
    }

    pub fn generator(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{name}` in {ring}")))?;
        Ok(Self::gen(ring, i))
    }

    /// Builds a class from arbitrary terms, truncating monomials beyond the nilpotency bounds.
    pub fn from_terms(
        ring: &Ring,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut c = Self::zero(ring);
        for (m, q) in terms {
            if m.0.len() != ring.len() {
                return Err(Error::RingMismatch);
            }
            c.accumulate(m, q);
        }
        Ok(c)
    }

    fn accumulate(&mut self, m: Monomial, q: Rational) {
        if q.is_zero() || !self.ring.is_normal(&m) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(q);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms ordered by total degree, then monomial order.
    pub fn ordered_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            self.ring
                .degree_of(a.0)
                .cmp(&self.ring.degree_of(b.0))
                .then(a.0.cmp(b.0))
        });
        v
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ring.len()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.accumulate(m.clone(), q.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    /// Product in normal form; monomials past the truncation vanish.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (ma, qa) in &self.terms {
            for (mb, qb) in &other.terms {
                out.accumulate(ma.mul(mb), qa * qb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(&self.ring);
        }
        GradedClass {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    fn neg_ref(&self) -> Self {
        GradedClass {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse via the truncated geometric series.
    pub fn invert_unit(&self) -> Result<Self> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = a0.recip();
        // self = a0 * (1 + n) with n nilpotent of order at most top_degree + 1
        let n = (self - &Self::constant(&self.ring, a0)).scale(&inv0);
        let minus_n = -&n;
        let mut sum = Self::one(&self.ring);
        let mut power = Self::one(&self.ring);
        for _ in 0..self.ring.top_degree() {
            power = &power * &minus_n;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(&inv0))
    }

    /// The homogeneous component of total degree `d`.
    pub fn component(&self, d: u32) -> Self {
        GradedClass {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.degree_of(m) == d)
                .map(|(m, q)| (m.clone(), q.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components keyed by degree.
    pub fn components(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, q) in &self.terms {
            out.entry(self.ring.degree_of(m))
                .or_insert_with(|| Self::zero(&self.ring))
                .terms
                .insert(m.clone(), q.clone());
        }
        out
    }

    /// `Some(d)` when every term has degree `d`; `None` for zero or mixed classes.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| self.ring.degree_of(m));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Coefficient of the fundamental top monomial.
    pub fn integrate_top(&self) -> Rational {
        self.coefficient(&self.ring.top_monomial())
    }

    /// Ring homomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[GradedClass]) -> Result<GradedClass> {
        if images.len() != self.ring.len() {
            return Err(Error::RingMismatch);
        }
        let target = match images.first() {
            Some(c) => c.ring.clone(),
            None => return Err(Error::RingMismatch),
        };
        if images.iter().any(|c| !same_ring(&c.ring, &target)) {
            return Err(Error::RingMismatch);
        }
        let mut out = GradedClass::zero(&target);
        for (m, q) in &self.terms {
            let mut t = GradedClass::constant(&target, q.clone());
            for (img, e) in images.iter().zip(&m.0) {
                if *e > 0 {
                    t = &t * &img.pow(*e);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn parse(ring: &Ring, src: &str) -> Result<Self> {
        let mut c = Self::zero(ring);
        for (q, factors) in parse_terms(src)? {
            let mut e = vec![0; ring.len()];
            for (name, p) in factors {
                let i = ring
                    .index_of(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown generator `{name}` in {ring}")))?;
                e[i] += p;
            }
            c.accumulate(Monomial(e), q);
        }
        Ok(c)
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.ordered_terms();
        f.write_str(&format_terms(
            terms
                .into_iter()
                .map(|(m, q)| (q, self.ring.format_monomial(m))),
        ))
    }
}

// Operator forms panic on ring mismatch; use the `try_*`/`multiply` methods for checked access.
impl Add for &GradedClass {
    type Output = GradedClass;
    fn add(self, rhs: &GradedClass) -> GradedClass {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &GradedClass {
    type Output = GradedClass;
    fn sub(self, rhs: &GradedClass) -> GradedClass {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &GradedClass {
    type Output = GradedClass;
    fn mul(self, rhs: &GradedClass) -> GradedClass {
        self.multiply(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &GradedClass {
    type Output = GradedClass;
    fn neg(self) -> GradedClass {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::algebra::ring::RingSpec;

    fn p2() -> Ring {
        RingSpec::new([("h", 1, 2)]).unwrap()
    }

    fn p2p3() -> Ring {
        RingSpec::new([("h", 1, 2), ("H", 1, 3)]).unwrap()
    }

    fn cls(r: &Ring, s: &str) -> GradedClass {
        GradedClass::parse(r, s).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let r = p2();
        assert_eq!(
            &cls(&r, "1 + h") * &cls(&r, "1 + h"),
            cls(&r, "1 + 2*h + h^2")
        );
        assert!((&cls(&r, "h^2") * &cls(&r, "h")).is_zero());
        let r = p2p3();
        assert_eq!(
            &cls(&r, "1 + h + H") * &cls(&r, "1 - h"),
            cls(&r, "1 + H - h^2 - h*H")
        );
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = GradedClass::one(&p2());
        let b = GradedClass::one(&p2p3());
        assert_eq!(a.multiply(&b).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn inverse_examples() {
        let r = p2();
        assert_eq!(
            cls(&r, "1 + h").invert_unit().unwrap(),
            cls(&r, "1 - h + h^2")
        );
        let p = RingSpec::new([("p", 1, 1)]).unwrap();
        assert_eq!(
            cls(&p, "1 + 2*p").invert_unit().unwrap(),
            cls(&p, "1 - 2*p")
        );
        assert_eq!(cls(&r, "h").invert_unit().unwrap_err(), Error::NotAUnit);
        assert_eq!(cls(&r, "3").invert_unit().unwrap(), cls(&r, "1/3"));
    }

    #[test]
    fn component_examples() {
        let r = p2();
        let a = cls(&r, "1 + 2*h").pow(4);
        assert_eq!(a.component(1), cls(&r, "8*h"));
        let b = &a * &cls(&r, "1 + h").pow(3).invert_unit().unwrap();
        assert_eq!(b.component(2), cls(&r, "6*h^2"));
        assert!(a.component(5).is_zero());
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(cls(&p2(), "h^2").integrate_top(), int(1));
        assert_eq!(cls(&p2p3(), "h^2*H^3").integrate_top(), int(1));
        assert_eq!(cls(&p2(), "h").integrate_top(), int(0));
    }

    #[test]
    fn printing_round_trips() {
        let r = p2p3();
        for s in ["1 + 5*h + 6*h^2", "-h + 2*H - 3/2*h^2*H", "0", "h^2*H^3"] {
            assert_eq!(cls(&r, s).to_string(), s);
        }
        assert_eq!(cls(&r, "H + h + 1").to_string(), "1 + h + H");
        assert!(GradedClass::parse(&r, "x").is_err());
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let y = RingSpec::new([("H", 1, 3)]).unwrap();
        let x = p2();
        let img = [cls(&x, "2*h")];
        assert_eq!(
            cls(&y, "1 + H + H^2").substitute(&img).unwrap(),
            cls(&x, "1 + 2*h + 4*h^2")
        );
    }
}
