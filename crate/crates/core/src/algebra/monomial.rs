use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Monomial order tags. `Elimination(k)` is the block order that first compares
/// the total degree in the first `k` variables, then breaks ties by grevlex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    GRevLex,
    Elimination(usize),
    Lex,
}

/// Exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: Box<[u16]>,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps)
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { deg: 0, exps: vec![0; nvars].into_boxed_slice() }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0u16; nvars];
        e[i] = 1;
        Monomial { deg: 1, exps: e.into_boxed_slice() }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { deg, exps: exps.into_boxed_slice() }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Box<[u16]> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial { deg: self.deg + other.deg, exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps: Box<[u16]> = other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect();
        Monomial { deg: other.deg - self.deg, exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        Monomial::from_exps(exps)
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn block_degree(&self, k: usize) -> u32 {
        self.exps[..k].iter().map(|&e| e as u32).sum()
    }

    pub fn cmp_with(&self, other: &Monomial, order: MonomialOrder) -> Ordering {
        match order {
            MonomialOrder::GRevLex => grevlex(self, other),
            MonomialOrder::Elimination(k) => self
                .block_degree(k)
                .cmp(&other.block_degree(k))
                .then_with(|| grevlex(self, other)),
            MonomialOrder::Lex => self.exps.cmp(&other.exps),
        }
    }
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.deg.cmp(&b.deg) {
        Ordering::Equal => {
            for i in (0..a.exps.len()).rev() {
                match a.exps[i].cmp(&b.exps[i]) {
                    Ordering::Equal => continue,
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

/// All monomials of total degree `d` in `n` variables, in descending grevlex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left as u16;
            out.push(Monomial::from_exps(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by(|a, b| b.cmp_with(a, MonomialOrder::GRevLex));
    out
}

/// Binomial coefficient as u64 (small arguments only).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x0*x2 < x1^2 in grevlex
        let a = Monomial::from_exps(vec![1, 0, 1]);
        let b = Monomial::from_exps(vec![0, 2, 0]);
        assert_eq!(a.cmp_with(&b, MonomialOrder::GRevLex), Ordering::Less);
        assert_eq!(a.cmp_with(&b, MonomialOrder::Lex), Ordering::Greater);
    }

    #[test]
    fn elimination_prefers_block() {
        let a = Monomial::from_exps(vec![1, 0, 0]);
        let b = Monomial::from_exps(vec![0, 5, 5]);
        assert_eq!(a.cmp_with(&b, MonomialOrder::Elimination(1)), Ordering::Greater);
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(15, 2).len(), 120);
        assert_eq!(binomial(46, 2), 1035);
        let m = monomials_of_degree(4, 3);
        assert_eq!(m.len() as u64, binomial(6, 3));
        for w in m.windows(2) {
            assert_eq!(w[0].cmp_with(&w[1], MonomialOrder::GRevLex), Ordering::Greater);
        }
    }
}
