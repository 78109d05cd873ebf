use std::sync::OnceLock;

use super::gb::{groebner, normal_form, GbOptions};
use super::monomial::{Monomial, MonomialOrder};
use super::poly::{Poly, PolyRing, Ring};
use super::AlgebraError;

/// Ideal given by generators, with a lazily computed reduced Gröbner basis.
#[derive(Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Self, AlgebraError> {
        for g in &gens {
            if **g.ring() != **ring {
                return Err(AlgebraError::RingMismatch);
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: vec![], gb: OnceLock::new() }
    }

    /// The irrelevant ideal (x0, ..., xn).
    pub fn irrelevant(ring: &Ring) -> Self {
        let gens = (0..ring.nvars).map(|i| Poly::var(ring, i)).collect();
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn gb_with(&self, opts: GbOptions) -> Result<&[Poly], AlgebraError> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = groebner(&self.gens, opts)?;
        Ok(self.gb.get_or_init(|| g))
    }

    pub fn gb(&self) -> Result<&[Poly], AlgebraError> {
        self.gb_with(GbOptions::default())
    }

    /// The ideal generated by its own reduced Gröbner basis.
    pub fn with_gb(&self) -> Result<Ideal, AlgebraError> {
        let g = self.gb()?.to_vec();
        let out = Ideal::new(&self.ring, g.clone())?;
        let _ = out.gb.set(g);
        Ok(out)
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly, AlgebraError> {
        if **f.ring() != *self.ring {
            return Err(AlgebraError::RingMismatch);
        }
        normal_form(f, self.gb()?)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool, AlgebraError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, AlgebraError> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same reduced Gröbner basis (requires equal rings).
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool, AlgebraError> {
        Ok(self.gb()? == other.gb()?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, AlgebraError> {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal, AlgebraError> {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b));
            }
        }
        Ideal::new(&self.ring, g)
    }

    /// Generators of I ∩ k[x_k..x_{n-1}], returned in a grevlex ring on the
    /// remaining variables (renumbered from x0). Requires an elimination order
    /// for the first k variables (or lex).
    pub fn eliminate(&self, k: usize) -> Result<Ideal, AlgebraError> {
        if k == 0 {
            return Ok(self.clone());
        }
        match self.ring.order {
            MonomialOrder::Elimination(j) if j == k => {}
            MonomialOrder::Lex => {}
            _ => return Err(AlgebraError::WrongOrder),
        }
        if k >= self.ring.nvars {
            return Err(AlgebraError::WrongOrder);
        }
        let sub = PolyRing::new(self.ring.field, self.ring.nvars - k, MonomialOrder::GRevLex);
        let gens = self
            .gb()?
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exps()[..k].iter().all(|&e| e == 0)))
            .map(|g| drop_leading_vars(g, &sub, k))
            .collect();
        Ideal::new(&sub, gens)
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, AlgebraError> {
        if *self.ring != *other.ring {
            return Err(AlgebraError::RingMismatch);
        }
        let n = self.ring.nvars;
        let big = PolyRing::new(self.ring.field, n + 1, MonomialOrder::Elimination(1));
        let t = Poly::var(&big, 0);
        let one_minus_t = Poly::constant(&big, 1).sub(&t);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(t.mul(&prepend_var(g, &big)));
        }
        for g in &other.gens {
            gens.push(one_minus_t.mul(&prepend_var(g, &big)));
        }
        let elim = Ideal::new(&big, gens)?.eliminate(1)?;
        let gens = elim.gens.iter().map(|g| g.to_ring(&self.ring)).collect();
        Ideal::new(&self.ring, gens)
    }

    /// I : (f)
    pub fn quotient_poly(&self, f: &Poly) -> Result<Ideal, AlgebraError> {
        if f.is_zero() {
            return Ok(Ideal::new(&self.ring, vec![Poly::constant(&self.ring, 1)])?);
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let inter = self.intersect(&principal)?;
        let gens = inter.gens.iter().map(|g| exact_div(g, f)).collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// I : J = ∩ (I : g) over generators g of J.
    pub fn quotient(&self, j: &Ideal) -> Result<Ideal, AlgebraError> {
        if *self.ring != *j.ring {
            return Err(AlgebraError::RingMismatch);
        }
        let mut acc: Option<Ideal> = None;
        for g in &j.gens {
            let q = self.quotient_poly(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?.with_gb()?,
            });
        }
        match acc {
            None => Ideal::new(&self.ring, vec![Poly::constant(&self.ring, 1)]),
            Some(a) => a.with_gb(),
        }
    }

    /// I : J^∞
    pub fn saturate(&self, j: &Ideal) -> Result<Ideal, AlgebraError> {
        let mut cur = self.with_gb()?;
        loop {
            let next = cur.quotient(j)?;
            if next.same_ideal(&cur)? {
                return Ok(next);
            }
            cur = next;
        }
    }
}

fn prepend_var(g: &Poly, big: &Ring) -> Poly {
    let terms = g
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut e = Vec::with_capacity(m.nvars() + 1);
            e.push(0);
            e.extend_from_slice(m.exps());
            (Monomial::from_exps(e), *c)
        })
        .collect();
    Poly::from_terms(big, terms)
}

fn drop_leading_vars(g: &Poly, sub: &Ring, k: usize) -> Poly {
    let terms = g.terms().iter().map(|(m, c)| (Monomial::from_exps(m.exps()[k..].to_vec()), *c)).collect();
    Poly::from_terms(sub, terms)
}

/// f / g when g divides f exactly.
pub fn exact_div(f: &Poly, g: &Poly) -> Result<Poly, AlgebraError> {
    let ring = f.ring().clone();
    let field = ring.field;
    let (lg, cg) = g.lead().ok_or(AlgebraError::ZeroPolynomial)?;
    let inv = field.inv(*cg);
    let mut rem = f.clone();
    let mut q = Vec::new();
    while let Some((lm, lc)) = rem.lead().cloned() {
        if !lg.divides(&lm) {
            return Err(AlgebraError::NotDivisible);
        }
        let m = lg.quotient_of(&lm);
        let c = field.mul(lc, inv);
        rem = rem.sub(&g.mul_term(&m, c));
        q.push((m, c));
    }
    Ok(Poly::from_terms(&ring, q))
}

#[cfg(test)]
mod tests {
    use super::super::field::FieldSpec;
    use super::*;

    #[test]
    fn quotient_of_principal() {
        let r = PolyRing::grevlex(FieldSpec::default(), 2);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let i = Ideal::new(&r, vec![x.mul(&y)]).unwrap();
        let j = Ideal::new(&r, vec![x.clone()]).unwrap();
        let q = i.quotient(&j).unwrap();
        assert_eq!(q.gb().unwrap(), &[y.clone()]);
    }

    #[test]
    fn conic_elimination() {
        // vars s, t, x, y, z with s, t eliminated
        let r = PolyRing::new(FieldSpec::default(), 5, MonomialOrder::Elimination(2));
        let v: Vec<Poly> = (0..5).map(|i| Poly::var(&r, i)).collect();
        let gens = vec![
            v[2].sub(&v[0].pow(2)),
            v[3].sub(&v[0].mul(&v[1])),
            v[4].sub(&v[1].pow(2)),
        ];
        let e = Ideal::new(&r, gens).unwrap().eliminate(2).unwrap();
        let sub = e.ring().clone();
        let w: Vec<Poly> = (0..3).map(|i| Poly::var(&sub, i)).collect();
        let conic = w[1].pow(2).sub(&w[0].mul(&w[2]));
        assert!(e.contains(&conic).unwrap());
    }

    #[test]
    fn elimination_needs_matching_order() {
        let r = PolyRing::grevlex(FieldSpec::default(), 3);
        let i = Ideal::new(&r, vec![Poly::var(&r, 0)]).unwrap();
        assert!(matches!(i.eliminate(1), Err(AlgebraError::WrongOrder)));
        assert_eq!(i.eliminate(0).unwrap().gens(), i.gens());
    }
}
