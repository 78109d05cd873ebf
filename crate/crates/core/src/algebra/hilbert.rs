//! Hilbert series and polynomial of homogeneous ideals via initial ideals.

use num_rational::Ratio;

use super::ideal::Ideal;
use super::monomial::Monomial;
use super::AlgebraError;

pub type Q = Ratio<i128>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// Numerator h(t) of HS(t) = h(t) / (1-t)^(dim+1), with h(1) != 0.
    pub numerator: Vec<i128>,
    /// Projective dimension, or -1 for the empty scheme.
    pub dim: i64,
    pub degree: i128,
    /// Hilbert polynomial coefficients, low to high.
    pub poly: Vec<Q>,
}

impl HilbertData {
    pub fn eval_poly(&self, s: i64) -> Q {
        let x = Q::from_integer(s as i128);
        self.poly.iter().rev().fold(Q::from_integer(0), |acc, c| acc * x + c)
    }

    /// Arithmetic genus of a curve section: difference the Hilbert polynomial
    /// down to a curve, then genus = 1 - constant term.
    pub fn sectional_genus(&self) -> Option<i128> {
        if self.dim < 1 {
            return None;
        }
        let mut p = self.poly.clone();
        for _ in 0..self.dim - 1 {
            p = difference(&p);
        }
        let c = p.first().copied().unwrap_or_else(|| Q::from_integer(0));
        if !c.is_integer() {
            return None;
        }
        Some(1 - c.to_integer())
    }

    /// Value of the Hilbert function in degree s.
    pub fn hilbert_function(&self, s: usize) -> i128 {
        let n = (self.dim + 1) as usize;
        // coefficient of t^s in h(t) / (1-t)^n
        let mut total = 0i128;
        for (i, &h) in self.numerator.iter().enumerate() {
            if i > s {
                break;
            }
            total += h * binom_i((s - i + n) as i128 - 1, n as i128 - 1);
        }
        if n == 0 {
            return *self.numerator.get(s).unwrap_or(&0);
        }
        total
    }
}

fn binom_i(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r = 1i128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// p(s) - p(s-1)
fn difference(p: &[Q]) -> Vec<Q> {
    let shifted = compose_shift(p, -1);
    let mut out: Vec<Q> = p.iter().zip(shifted.iter()).map(|(a, b)| a - b).collect();
    while out.len() > 1 && out.last() == Some(&Q::from_integer(0)) {
        out.pop();
    }
    out
}

/// Coefficients of p(s + a).
fn compose_shift(p: &[Q], a: i128) -> Vec<Q> {
    let mut out = vec![Q::from_integer(0); p.len()];
    let mut pow: Vec<Q> = vec![Q::from_integer(1)];
    for c in p {
        for (k, v) in pow.iter().enumerate() {
            out[k] += c * v;
        }
        // pow *= (s + a)
        let mut next = vec![Q::from_integer(0); pow.len() + 1];
        for (k, v) in pow.iter().enumerate() {
            next[k + 1] += v;
            next[k] += v * Q::from_integer(a);
        }
        pow = next;
    }
    out
}

fn poly_mul_i(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_i(a: &[i128], b: &[i128]) -> Vec<i128> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect()
}

fn one_minus_t_pow(d: usize) -> Vec<i128> {
    let mut v = vec![0i128; d + 1];
    v[0] = 1;
    v[d] -= 1;
    v
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator K(t) of the Hilbert series of S/M, HS = K(t) / (1-t)^n.
pub fn monomial_numerator(gens: &[Monomial]) -> Vec<i128> {
    numerator_rec(minimalize(gens.to_vec()))
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    let n = gens[0].nvars();
    // pairwise coprime generators: product formula
    let mut used = vec![false; n];
    let mut coprime = true;
    'outer: for g in &gens {
        for (i, &e) in g.exps().iter().enumerate() {
            if e > 0 {
                if used[i] {
                    coprime = false;
                    break 'outer;
                }
                used[i] = true;
            }
        }
    }
    if coprime {
        let mut acc = vec![1i128];
        for g in &gens {
            acc = poly_mul_i(&acc, &one_minus_t_pow(g.degree() as usize));
        }
        return acc;
    }
    // pivot on a power of the most frequent variable among non-simple generators
    let mut count = vec![0usize; n];
    for g in &gens {
        let support = g.exps().iter().filter(|&&e| e > 0).count();
        if support > 1 {
            for (i, &e) in g.exps().iter().enumerate() {
                if e > 0 {
                    count[i] += 1;
                }
            }
        }
    }
    let var = (0..n).max_by_key(|&i| (count[i], std::cmp::Reverse(i))).unwrap();
    let mut es: Vec<u16> = gens.iter().map(|g| g.exps()[var]).filter(|&e| e > 0).collect();
    es.sort_unstable();
    let e = es[(es.len() - 1) / 2];
    let mut pe = vec![0u16; n];
    pe[var] = e;
    let pivot = Monomial::from_exps(pe);
    // HS(M) = HS(M + p) + t^deg(p) HS(M : p)
    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut ex = g.exps().to_vec();
            ex[var] = ex[var].saturating_sub(e);
            Monomial::from_exps(ex)
        })
        .collect();
    let a = numerator_rec(minimalize(plus));
    let b = numerator_rec(minimalize(colon));
    let mut shifted = vec![0i128; e as usize];
    shifted.extend(b);
    add_i(&a, &shifted)
}

/// Hilbert data of S/I for a homogeneous ideal I.
pub fn hilbert(ideal: &Ideal) -> Result<HilbertData, AlgebraError> {
    if !ideal.is_homogeneous() {
        return Err(AlgebraError::NotHomogeneous);
    }
    let n = ideal.ring().nvars;
    let leads: Vec<Monomial> = ideal.gb()?.iter().map(|g| g.lead_monomial().unwrap().clone()).collect();
    Ok(from_numerator(monomial_numerator(&leads), n))
}

/// Reduces K(t)/(1-t)^n to lowest terms and extracts dimension data.
pub fn from_numerator(mut k: Vec<i128>, n: usize) -> HilbertData {
    while k.len() > 1 && k.last() == Some(&0) {
        k.pop();
    }
    if k.iter().all(|&c| c == 0) {
        return HilbertData { numerator: vec![0], dim: -1, degree: 0, poly: vec![] };
    }
    let mut d = n;
    while d > 0 && k.iter().sum::<i128>() == 0 {
        // divide by (1 - t)
        let mut q = vec![0i128; k.len() - 1];
        let mut acc = 0i128;
        for i in 0..k.len() - 1 {
            acc += k[i];
            q[i] = acc;
        }
        k = q;
        d -= 1;
    }
    let degree = k.iter().sum::<i128>();
    let dim = d as i64 - 1;
    // HP(s) = sum_i h_i C(s - i + d - 1, d - 1)
    let mut poly = vec![Q::from_integer(0)];
    if d > 0 {
        let mut fact = 1i128;
        for j in 1..d as i128 {
            fact *= j;
        }
        for (i, &h) in k.iter().enumerate() {
            if h == 0 {
                continue;
            }
            // prod_{j=1}^{d-1} (s - i + j)
            let mut prod = vec![Q::from_integer(1)];
            for j in 1..d as i128 {
                let a = Q::from_integer(j - i as i128);
                let mut next = vec![Q::from_integer(0); prod.len() + 1];
                for (t, v) in prod.iter().enumerate() {
                    next[t + 1] += v;
                    next[t] += v * a;
                }
                prod = next;
            }
            if poly.len() < prod.len() {
                poly.resize(prod.len(), Q::from_integer(0));
            }
            for (t, v) in prod.iter().enumerate() {
                poly[t] += v * Q::new(h, fact);
            }
        }
    }
    while poly.len() > 1 && poly.last() == Some(&Q::from_integer(0)) {
        poly.pop();
    }
    HilbertData { numerator: k, dim, degree, poly }
}

#[cfg(test)]
mod tests {
    use super::super::field::FieldSpec;
    use super::super::poly::{Poly, PolyRing};
    use super::*;

    #[test]
    fn twisted_cubic() {
        let r = PolyRing::grevlex(FieldSpec::default(), 4);
        let v: Vec<Poly> = (0..4).map(|i| Poly::var(&r, i)).collect();
        let gens = vec![
            v[0].mul(&v[2]).sub(&v[1].pow(2)),
            v[0].mul(&v[3]).sub(&v[1].mul(&v[2])),
            v[1].mul(&v[3]).sub(&v[2].pow(2)),
        ];
        let h = hilbert(&Ideal::new(&r, gens).unwrap()).unwrap();
        assert_eq!(h.dim, 1);
        assert_eq!(h.degree, 3);
        assert_eq!(h.sectional_genus(), Some(0));
        // HP(s) = 3s + 1
        assert_eq!(h.poly, vec![Q::from_integer(1), Q::from_integer(3)]);
        assert_eq!(h.hilbert_function(2), 7);
    }

    #[test]
    fn quartic_surface() {
        let r = PolyRing::grevlex(FieldSpec::default(), 4);
        let f = (0..4).fold(Poly::zero(&r), |acc, i| acc.add(&Poly::var(&r, i).pow(4)));
        let h = hilbert(&Ideal::new(&r, vec![f]).unwrap()).unwrap();
        assert_eq!(h.dim, 2);
        assert_eq!(h.degree, 4);
        assert_eq!(h.sectional_genus(), Some(3));
        // HP(s) = 2s^2 + 2
        assert_eq!(h.eval_poly(3), Q::from_integer(20));
    }

    #[test]
    fn numerator_against_counting() {
        // brute-force count of standard monomials for (x^2, xy, y^3) in 3 vars
        let gens = vec![
            Monomial::from_exps(vec![2, 0, 0]),
            Monomial::from_exps(vec![1, 1, 0]),
            Monomial::from_exps(vec![0, 3, 0]),
        ];
        let h = from_numerator(monomial_numerator(&gens), 3);
        for s in 0..8 {
            let brute = super::super::monomial::monomials_of_degree(3, s)
                .into_iter()
                .filter(|m| !gens.iter().any(|g| g.divides(m)))
                .count() as i128;
            assert_eq!(h.hilbert_function(s as usize), brute);
        }
    }

    #[test]
    fn empty_scheme() {
        let r = PolyRing::grevlex(FieldSpec::default(), 3);
        let h = hilbert(&Ideal::irrelevant(&r)).unwrap();
        assert_eq!(h.dim, -1);
    }
}
