//! Buchberger's algorithm with sugar pair selection and the Gebauer–Möller
//! installation of the product and chain criteria.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};

use super::monomial::{Monomial, MonomialOrder};
use super::poly::{Poly, Ring};
use super::AlgebraError;

pub const DEFAULT_DEGREE_CAP: u32 = 12;

#[derive(Clone, Copy, Debug)]
pub struct GbOptions {
    /// Abort once a pair of sugar degree above this cap is selected.
    pub degree_cap: u32,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { degree_cap: DEFAULT_DEGREE_CAP }
    }
}

struct HeapKey {
    m: Monomial,
    order: MonomialOrder,
}

impl PartialEq for HeapKey {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}
impl Eq for HeapKey {}
impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m.cmp_with(&other.m, self.order)
    }
}

/// Bitmask of the variables occurring in a monomial, for quick non-divisibility tests.
fn support_mask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exps().iter().enumerate() {
        if e > 0 {
            mask |= 1 << (i % 64);
        }
    }
    mask
}

/// Reducer set: polynomials with their lead monomials and support masks.
pub(crate) struct Reducers<'a> {
    polys: Vec<&'a Poly>,
    masks: Vec<u64>,
}

impl<'a> Reducers<'a> {
    pub(crate) fn new(polys: impl IntoIterator<Item = &'a Poly>) -> Self {
        let polys: Vec<&Poly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        let masks = polys.iter().map(|p| support_mask(p.lead_monomial().unwrap())).collect();
        Reducers { polys, masks }
    }

    fn find(&self, m: &Monomial) -> Option<&'a Poly> {
        let mm = support_mask(m);
        for (p, &mask) in self.polys.iter().zip(&self.masks) {
            if mask & !mm == 0 && p.lead_monomial().unwrap().divides(m) {
                return Some(p);
            }
        }
        None
    }
}

/// Full reduction of `f` by the reducers (lead and tail).
pub(crate) fn reduce_full(f: &Poly, reducers: &Reducers<'_>) -> Poly {
    let ring = f.ring().clone();
    let field = ring.field;
    let p = field.p() as u64;
    let mut coeffs: HashMap<Monomial, u32> = HashMap::with_capacity(f.len() * 4);
    let mut heap: BinaryHeap<HeapKey> = BinaryHeap::with_capacity(f.len() * 4);
    for (m, c) in f.terms() {
        coeffs.insert(m.clone(), *c);
        heap.push(HeapKey { m: m.clone(), order: ring.order });
    }
    let mut out: Vec<(Monomial, u32)> = Vec::new();
    while let Some(HeapKey { m, .. }) = heap.pop() {
        let c = match coeffs.remove(&m) {
            Some(c) if c != 0 => c,
            _ => continue,
        };
        match reducers.find(&m) {
            None => out.push((m, c)),
            Some(g) => {
                let (lm, lc) = g.lead().unwrap();
                let q = lm.quotient_of(&m);
                // g is monic in practice, but do not rely on it
                let factor = p - field.div(c, *lc) as u64;
                for (t, tc) in &g.terms()[1..] {
                    let mono = t.mul(&q);
                    let add = (factor * *tc as u64 % p) as u32;
                    match coeffs.entry(mono) {
                        Entry::Occupied(mut e) => {
                            let v = e.get_mut();
                            *v = field.add(*v, add);
                        }
                        Entry::Vacant(e) => {
                            heap.push(HeapKey { m: e.key().clone(), order: ring.order });
                            e.insert(add);
                        }
                    }
                }
            }
        }
    }
    Poly::from_terms(&ring, out)
}

/// Normal form of `f` with respect to a Gröbner basis.
pub fn normal_form(f: &Poly, gb: &[Poly]) -> Result<Poly, AlgebraError> {
    if let Some(g) = gb.first() {
        f.check_ring(g)?;
    }
    Ok(reduce_full(f, &Reducers::new(gb)))
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn spoly(f: &Poly, g: &Poly, lcm: &Monomial) -> Poly {
    let (lf, cf) = f.lead().unwrap();
    let (lg, cg) = g.lead().unwrap();
    let field = f.ring().field;
    let a = f.mul_term(&lf.quotient_of(lcm), field.inv(*cf));
    let b = g.mul_term(&lg.quotient_of(lcm), field.inv(*cg));
    a.sub(&b)
}

/// Reduced Gröbner basis (monic, sorted by ascending lead monomial).
pub fn groebner(gens: &[Poly], opts: GbOptions) -> Result<Vec<Poly>, AlgebraError> {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return Ok(vec![]);
    };
    let ring = first.ring().clone();
    for g in gens {
        g.check_ring(first)?;
    }
    let mut basis: Vec<Poly> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    inputs.sort_by(|a, b| {
        a.degree().cmp(&b.degree()).then_with(|| ring.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()))
    });
    for g in inputs {
        let reduced = {
            let red = Reducers::new(basis.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p));
            reduce_full(&g, &red)
        };
        if reduced.is_zero() {
            continue;
        }
        let s = g.degree() as u32;
        install(&ring, &mut basis, &mut sugar, &mut active, &mut pairs, reduced.monic(), s);
    }

    while !pairs.is_empty() {
        // smallest sugar, then smallest lcm
        let idx = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a].sugar.cmp(&pairs[b].sugar).then_with(|| ring.cmp(&pairs[a].lcm, &pairs[b].lcm))
            })
            .unwrap();
        let pair = pairs.swap_remove(idx);
        if pair.sugar > opts.degree_cap {
            return Err(AlgebraError::CapExceeded(opts.degree_cap));
        }
        let s = spoly(&basis[pair.i], &basis[pair.j], &pair.lcm);
        let red = Reducers::new(basis.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p));
        let h = reduce_full(&s, &red);
        if h.is_zero() {
            continue;
        }
        install(&ring, &mut basis, &mut sugar, &mut active, &mut pairs, h.monic(), pair.sugar);
    }

    let mut result: Vec<Poly> = basis.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    interreduce(&ring, &mut result);
    Ok(result)
}

fn install(
    ring: &Ring,
    basis: &mut Vec<Poly>,
    sugar: &mut Vec<u32>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Poly,
    s: u32,
) {
    let t = basis.len();
    let lh = h.lead_monomial().unwrap().clone();

    // old pairs whose lcm is divisible by lt(h), unless one of the new lcms coincides with it
    pairs.retain(|pr| {
        if !lh.divides(&pr.lcm) {
            return true;
        }
        let li = lh.lcm(basis[pr.i].lead_monomial().unwrap());
        let lj = lh.lcm(basis[pr.j].lead_monomial().unwrap());
        li == pr.lcm || lj == pr.lcm
    });

    // candidate new pairs
    let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
    for i in 0..t {
        if !active[i] {
            continue;
        }
        let li = basis[i].lead_monomial().unwrap();
        cands.push((i, li.lcm(&lh), li.gcd_is_one(&lh)));
    }
    // chain criterion among new pairs: drop lcms properly divisible by another
    let mut keep = vec![true; cands.len()];
    for a in 0..cands.len() {
        for b in 0..cands.len() {
            if a != b && keep[b] && cands[b].1 != cands[a].1 && cands[b].1.divides(&cands[a].1) {
                keep[a] = false;
                break;
            }
        }
    }
    // equal lcms: keep one representative; if any is coprime, the whole class is dropped
    let mut by_lcm: HashMap<Monomial, (usize, bool)> = HashMap::new();
    for (k, c) in cands.iter().enumerate() {
        if !keep[k] {
            continue;
        }
        let e = by_lcm.entry(c.1.clone()).or_insert((k, false));
        e.1 |= c.2;
    }
    let mut chosen: Vec<usize> = by_lcm.into_values().filter(|(_, coprime)| !coprime).map(|(k, _)| k).collect();
    chosen.sort_unstable();
    for k in chosen {
        let (i, lcm, _) = &cands[k];
        let li = basis[*i].lead_monomial().unwrap();
        let si = sugar[*i] + li.quotient_of(lcm).degree();
        let st = s + lh.quotient_of(lcm).degree();
        pairs.push(Pair { i: *i, j: t, lcm: lcm.clone(), sugar: si.max(st) });
    }

    for i in 0..t {
        if active[i] && lh.divides(basis[i].lead_monomial().unwrap()) {
            active[i] = false;
        }
    }
    let _ = ring;
    basis.push(h);
    sugar.push(s);
    active.push(true);
}

/// Minimalizes and tail-reduces a Gröbner basis in place; sorts by lead.
pub fn interreduce(ring: &Ring, gb: &mut Vec<Poly>) {
    gb.retain(|p| !p.is_zero());
    gb.sort_by(|a, b| ring.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
    let mut minimal: Vec<Poly> = Vec::new();
    for g in gb.drain(..) {
        let lg = g.lead_monomial().unwrap();
        if minimal.iter().any(|m| m.lead_monomial().unwrap().divides(lg)) {
            continue;
        }
        minimal.push(g);
    }
    let n = minimal.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let g = &minimal[k];
        let (lm, lc) = g.lead().unwrap();
        let tail = Poly::from_terms(ring, g.terms()[1..].to_vec());
        let red = Reducers::new(minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p));
        let tail = reduce_full(&tail, &red);
        let full = Poly::monomial(ring, lm.clone(), *lc).add(&tail);
        out.push(full.monic());
    }
    *gb = out;
}

#[cfg(test)]
mod tests {
    use super::super::field::FieldSpec;
    use super::super::poly::PolyRing;
    use super::*;

    #[test]
    fn identity_case() {
        let r = PolyRing::grevlex(FieldSpec::default(), 2);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let gb = groebner(&[x.clone(), y.clone()], GbOptions::default()).unwrap();
        assert_eq!(gb, vec![y, x]);
    }

    #[test]
    fn hand_reduced_example_contains_y_cubed() {
        // <x^2, xy + y^2>: S(x^2, xy+y^2) = y*x^2 - x*(xy+y^2) = -xy^2 -> reduces to y^3
        let r = PolyRing::grevlex(FieldSpec::default(), 2);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let gens = [x.pow(2), x.mul(&y).add(&y.pow(2))];
        let gb = groebner(&gens, GbOptions::default()).unwrap();
        assert!(gb.contains(&y.pow(3)));
        assert!(normal_form(&y.pow(3), &gb).unwrap().is_zero());
        assert!(!normal_form(&y.pow(2), &gb).unwrap().is_zero());
    }

    #[test]
    fn cap_is_enforced() {
        let r = PolyRing::grevlex(FieldSpec::default(), 3);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let z = Poly::var(&r, 2);
        let gens = [x.pow(3).sub(&y.pow(2).mul(&z)), x.mul(&y).sub(&z.pow(2))];
        let res = groebner(&gens, GbOptions { degree_cap: 3 });
        assert!(matches!(res, Err(AlgebraError::CapExceeded(3))));
    }
}
