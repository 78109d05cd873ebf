use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::field::FieldSpec;
use super::monomial::{Monomial, MonomialOrder};
use super::AlgebraError;

/// Polynomial ring GF(p)[x0..x(n-1)] with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: FieldSpec,
    pub nvars: usize,
    pub order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new(field: FieldSpec, nvars: usize, order: MonomialOrder) -> Ring {
        assert!(nvars >= 1, "a polynomial ring needs at least one variable");
        if let MonomialOrder::Elimination(k) = order {
            assert!(k <= nvars);
        }
        Arc::new(PolyRing { field, nvars, order })
    }

    pub fn grevlex(field: FieldSpec, nvars: usize) -> Ring {
        Self::new(field, nvars, MonomialOrder::GRevLex)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.cmp_with(b, self.order)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        PolyRing::new(self.field, self.nvars, order)
    }
}

/// Sparse polynomial. Terms are stored strictly descending in the ring order
/// with nonzero coefficients.
#[derive(Clone)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_poly(self))
    }
}

impl Poly {
    pub fn zero(ring: &Ring) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: u32) -> Self {
        let c = c % ring.field.p();
        let terms = if c == 0 { vec![] } else { vec![(Monomial::one(ring.nvars), c)] };
        Poly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Poly { ring: ring.clone(), terms: vec![(Monomial::var(ring.nvars, i), 1)] }
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: u32) -> Self {
        let c = c % ring.field.p();
        if c == 0 {
            return Self::zero(ring);
        }
        Poly { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, u32)>) -> Self {
        let f = ring.field;
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % f.p();
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = f.add(last.1, c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|t| t.1 != 0);
        Poly { ring: ring.clone(), terms: out }
    }

    /// Linear form sum(coeffs[i] * x_i).
    pub fn linear(ring: &Ring, coeffs: &[u32]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (Monomial::var(ring.nvars, i), c))
            .collect();
        Self::from_terms(ring, terms)
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    /// Maximal total degree; -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|t| t.0.degree() as i64).max().unwrap_or(-1)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    pub fn check_ring(&self, other: &Poly) -> Result<(), AlgebraError> {
        if *self.ring != *other.ring {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(())
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let f = self.ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { f.neg(b[j].1) } else { b[j].1 };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { f.sub(a[i].1, b[j].1) } else { f.add(a[i].1, b[j].1) };
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { f.neg(t.1) } else { t.1 };
            out.push((t.0.clone(), c));
        }
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert!(*self.ring == *other.ring);
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        debug_assert!(*self.ring == *other.ring);
        self.merge(other, true)
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.ring.field.neg(1))
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.ring.field;
        let c = c % f.p();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    /// c * m * self (the order is multiplicative, so sortedness is preserved).
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Poly {
        let f = self.ring.field;
        if c % f.p() == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(*a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = self.ring.field;
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.len() * other.len());
        let p = f.p() as u64;
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = acc.entry(m1.mul(m2)).or_insert(0);
                *e = (*e + (*c1 as u64) * (*c2 as u64)) % p;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (m, c as u32)).collect();
        Poly::from_terms(&self.ring, terms)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::constant(&self.ring, 1);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.ring.field.inv(*c);
                self.scale(inv)
            }
        }
    }

    pub fn eval(&self, point: &[u32]) -> u32 {
        let f = self.ring.field;
        let p = f.p() as u64;
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut v = *c as u64;
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    v = v * f.pow(point[i], e as u64) as u64 % p;
                }
            }
            acc = (acc + v) % p;
        }
        acc as u32
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let f = self.ring.field;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps()[i] > 0)
            .map(|(m, c)| {
                let mut e = m.exps().to_vec();
                let k = e[i];
                e[i] -= 1;
                (Monomial::from_exps(e), f.mul(*c, k as u32 % f.p()))
            })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    /// Substitutes `images[i]` for x_i; the result lives in the images' ring.
    pub fn substitute(&self, target: &Ring, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars);
        let f = target.field;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|g| vec![Poly::constant(target, 1), g.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, *c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            for (mm, cc) in t.terms {
                let v = acc.entry(mm).or_insert(0);
                *v = f.add(*v, cc);
            }
        }
        Poly::from_terms(target, acc.into_iter().collect())
    }

    /// Same polynomial viewed in another ring with the same number of variables.
    pub fn to_ring(&self, target: &Ring) -> Poly {
        assert_eq!(target.nvars, self.ring.nvars);
        Poly::from_terms(target, self.terms.clone())
    }

    /// Coefficient vector against a list of monomials (missing monomials give 0).
    pub fn coefficients_in(&self, index: &HashMap<Monomial, usize>, len: usize) -> Option<Vec<u32>> {
        let mut v = vec![0u32; len];
        for (m, c) in &self.terms {
            v[*index.get(m)?] = *c;
        }
        Some(v)
    }

    pub fn from_coefficients(ring: &Ring, monomials: &[Monomial], coeffs: &[u32]) -> Poly {
        let terms = monomials
            .iter()
            .zip(coeffs.iter())
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        Poly::from_terms(ring, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> Ring {
        PolyRing::grevlex(FieldSpec::new(7).unwrap(), n)
    }

    #[test]
    fn arithmetic_basics() {
        let r = ring(2);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        // (x+y)^2 = x^2 + 2xy + y^2
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.eval(&[1, 1]), 4);
        assert!(sq.sub(&sq).is_zero());
        assert!(sq.is_homogeneous());
    }

    #[test]
    fn derivative_and_substitution() {
        let r = ring(2);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let f = x.pow(3).add(&x.mul(&y)); // x^3 + xy
        let dx = f.derivative(0);
        assert_eq!(dx.eval(&[2, 3]), (3 * 4 + 3) % 7);
        let r1 = ring(1);
        let t = Poly::var(&r1, 0);
        let g = f.substitute(&r1, &[t.clone(), t.clone()]); // t^3 + t^2
        assert_eq!(g.eval(&[2]), 12 % 7);
    }
}
