//! The rank-2 lattice Λ^{d,n}_g with basis h1 (polarization, h1² = 2g-2) and
//! h2 (marked curve, h1·h2 = d, h2² = n).

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice [{0}, {1}; {1}, {2}] is not hyperbolic")]
    NotHyperbolic(i64, i64, i64),
    #[error("genus must be at least 2, got {0}")]
    Genus(i64),
    #[error("class has non-positive square {0}")]
    NotPositive(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub const fn new(a: i64, b: i64) -> Self {
        DivisorClass { a, b }
    }

    pub fn neg(self) -> Self {
        DivisorClass::new(-self.a, -self.b)
    }

    pub fn add(self, o: Self) -> Self {
        DivisorClass::new(self.a + o.a, self.b + o.b)
    }

    pub fn sub(self, o: Self) -> Self {
        DivisorClass::new(self.a - o.a, self.b - o.b)
    }

    pub fn is_primitive(self) -> bool {
        gcd(self.a, self.b) == 1
    }
}

impl std::fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.a, self.b) {
            (0, 0) => write!(f, "0"),
            (a, 0) => write!(f, "{}", coeff(a, "h1")),
            (0, b) => write!(f, "{}", coeff(b, "h2")),
            (a, b) if b > 0 => write!(f, "{}+{}", coeff(a, "h1"), coeff(b, "h2")),
            (a, b) => write!(f, "{}-{}", coeff(a, "h1"), coeff(-b, "h2")),
        }
    }
}

fn coeff(c: i64, name: &str) -> String {
    match c {
        1 => name.to_string(),
        -1 => format!("-{name}"),
        _ => format!("{c}{name}"),
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub const H1: DivisorClass = DivisorClass::new(1, 0);
pub const H2: DivisorClass = DivisorClass::new(0, 1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeK3 {
    pub g: i64,
    pub d: i64,
    pub n: i64,
}

impl LatticeK3 {
    pub fn new(g: i64, d: i64, n: i64) -> Result<Self, LatticeError> {
        if g < 2 {
            return Err(LatticeError::Genus(g));
        }
        let l = LatticeK3 { g, d, n };
        if l.discriminant() >= 0 {
            return Err(LatticeError::NotHyperbolic(2 * g - 2, d, n));
        }
        Ok(l)
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        [[2 * self.g - 2, self.d], [self.d, self.n]]
    }

    /// (2g-2) n - d², negative for a hyperbolic lattice.
    pub fn discriminant(&self) -> i64 {
        (2 * self.g - 2) * self.n - self.d * self.d
    }

    pub fn dot(&self, x: DivisorClass, y: DivisorClass) -> i64 {
        let m = self.matrix();
        x.a * y.a * m[0][0] + (x.a * y.b + x.b * y.a) * m[0][1] + x.b * y.b * m[1][1]
    }

    pub fn square(&self, x: DivisorClass) -> i64 {
        let s = self.dot(x, x);
        debug_assert!(s % 2 == 0, "even lattice");
        s
    }

    pub fn genus_of(&self, x: DivisorClass) -> i64 {
        self.square(x) / 2 + 1
    }

    /// All (-2)-classes R with 0 <= R·h1 <= bound, one of each ±R pair (the one
    /// with R·h1 > 0, or with positive h2-coefficient when R·h1 = 0). The list
    /// is complete for that degree range: for fixed k = R·h1 the h2-coefficient
    /// satisfies b² = (2 h1² + k²) / (-disc).
    pub fn minus_two_classes(&self, bound: i64) -> MinusTwoCertificate {
        let classes = (0..=bound).flat_map(|k| self.minus_two_of_degree(k)).collect();
        MinusTwoCertificate { degree_bound: bound, classes }
    }

    /// (-2)-classes R with R·h1 = k, normalized as above for k = 0.
    fn minus_two_of_degree(&self, k: i64) -> Vec<DivisorClass> {
        let l2 = 2 * self.g - 2;
        let num = 2 * l2 + k * k;
        let den = -self.discriminant();
        if num % den != 0 {
            return vec![];
        }
        let Some(b) = isqrt_exact(num / den) else { return vec![] };
        let mut out = Vec::new();
        for b in if b == 0 { vec![0] } else { vec![b, -b] } {
            if k == 0 && b < 0 {
                continue;
            }
            if (k - self.d * b) % l2 == 0 {
                let r = DivisorClass::new((k - self.d * b) / l2, b);
                debug_assert_eq!(self.square(r), -2);
                out.push(r);
            }
        }
        out
    }

    /// Screening for D to be big and nef: D² > 0, D·h1 > 0 and no (-2)-class R
    /// that is effective (R·h1 > 0, or R = h2) with R·D < 0.
    pub fn is_big_nef_candidate(&self, dclass: DivisorClass) -> NefVerdict {
        let square = self.square(dclass);
        let degree = self.dot(dclass, H1);
        if square <= 0 || degree <= 0 {
            return NefVerdict { candidate: false, square, degree, witnesses: vec![], degree_bound: 0 };
        }
        let bound = self.separating_degree_bound(dclass);
        let mut witnesses: Vec<DivisorClass> = self
            .minus_two_classes(bound)
            .classes
            .into_iter()
            .filter(|&r| (self.dot(r, H1) > 0 || r == H2) && self.dot(r, dclass) < 0)
            .collect();
        if self.square(H2) == -2 && self.dot(H2, dclass) < 0 && !witnesses.contains(&H2) {
            witnesses.push(H2);
        }
        NefVerdict { candidate: witnesses.is_empty(), square, degree, witnesses, degree_bound: bound }
    }

    /// A degree k0 such that every (-2)-class R with R·h1 > k0 has R·D > 0.
    /// Writing R = (k / h1²) h1 + b (h2 - (d / h1²) h1) with b² = (2 h1² + k²) / (-disc),
    /// R·D = α k ± γ sqrt(2 h1² + k²); for D in the positive cone the slope
    /// dominates, so R·D is increasing in k once positive.
    fn separating_degree_bound(&self, dclass: DivisorClass) -> i64 {
        let l2 = (2 * self.g - 2) as f64;
        let disc = -(self.discriminant() as f64);
        let dd = self.dot(dclass, H1) as f64;
        let alpha = dd / l2;
        let gamma = (self.dot(dclass, H2) as f64 - (self.d as f64 / l2) * dd).abs() / disc.sqrt();
        let f = |k: f64, sign: f64| alpha * k + sign * gamma * (2.0 * l2 + k * k).sqrt();
        let mut k = 1i64;
        while f(k as f64, 1.0) <= 1e-9 || f(k as f64, -1.0) <= 1e-9 {
            k += 1;
            if k > 1_000_000 {
                break;
            }
        }
        k.max(2 * self.g - 2)
    }

    /// D² / 2 + 1 and whether D is primitive.
    pub fn nl_target_genus(&self, dclass: DivisorClass) -> Result<(i64, bool), LatticeError> {
        let s = self.square(dclass);
        if s <= 0 {
            return Err(LatticeError::NotPositive(s));
        }
        Ok((s / 2 + 1, dclass.is_primitive()))
    }

    /// Riemann–Roch estimate of h⁰ for an effective candidate class, or None.
    pub fn h0_estimate(&self, m: DivisorClass) -> Option<i64> {
        if m == DivisorClass::new(0, 0) {
            return Some(1);
        }
        let s = self.square(m);
        let deg = self.dot(m, H1);
        let effective = deg > 0 || (m == H2 && self.square(H2) == -2);
        if !effective {
            return None;
        }
        match s {
            -2 => Some(1),
            0 => {
                let k = gcd(m.a, m.b);
                Some(k + 1)
            }
            s if s > 0 => Some(2 + s / 2),
            _ => None,
        }
    }

    /// Searches decompositions D = M + N into effective candidates with
    /// coefficients bounded by 4g, comparing h⁰(M)·h⁰(N) with h⁰(D).
    pub fn brill_noether_general(&self, dclass: DivisorClass) -> BnVerdict {
        let h0 = 2 + self.square(dclass) / 2;
        let bound = 4 * self.g.max(1) * (1 + dclass.a.abs().max(dclass.b.abs()));
        let mut worst: Option<BnWitness> = None;
        for a in -bound..=bound {
            for b in -bound..=bound {
                let m = DivisorClass::new(a, b);
                let n = dclass.sub(m);
                if m == DivisorClass::new(0, 0) || n == DivisorClass::new(0, 0) {
                    continue;
                }
                let (Some(hm), Some(hn)) = (self.h0_estimate(m), self.h0_estimate(n)) else { continue };
                if hm < 2 || hn < 2 {
                    continue;
                }
                let w = BnWitness { m, n, h0_m: hm, h0_n: hn };
                if worst.as_ref().is_none_or(|x| w.product() > x.product()) {
                    worst = Some(w);
                }
            }
        }
        let general = worst.as_ref().is_none_or(|w| w.product() < h0);
        BnVerdict { general, h0, worst }
    }

    /// JSON report on a class: lattice, square, genus, primitivity, Brill–Noether
    /// generality and the witnesses behind the verdicts.
    pub fn report(&self, dclass: DivisorClass) -> Value {
        let nef = self.is_big_nef_candidate(dclass);
        let bn = self.brill_noether_general(dclass);
        let square = self.square(dclass);
        json!({
            "lattice": self.matrix(),
            "class": [dclass.a, dclass.b],
            "square": square,
            "genus": square / 2 + 1,
            "primitive": dclass.is_primitive(),
            "big_nef_candidate": nef.candidate,
            "bn_general": bn.general,
            "witnesses": {
                "minus_two": nef.witnesses.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "bn": bn.worst.as_ref().map(|w| json!({
                    "m": w.m.to_string(),
                    "n": w.n.to_string(),
                    "h0_m": w.h0_m,
                    "h0_n": w.h0_n,
                    "product": w.product(),
                    "h0": bn.h0,
                })),
            },
            "notes": "h0 values are Riemann-Roch estimates without h1 corrections; nefness is a screening, not a proof",
        })
    }
}

fn isqrt_exact(x: i64) -> Option<i64> {
    if x < 0 {
        return None;
    }
    let r = (x as f64).sqrt().round() as i64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s >= 0 && s * s == x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusTwoCertificate {
    /// Every (-2)-class with |R·h1| <= degree_bound is listed (up to sign).
    pub degree_bound: i64,
    pub classes: Vec<DivisorClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefVerdict {
    pub candidate: bool,
    pub square: i64,
    pub degree: i64,
    pub witnesses: Vec<DivisorClass>,
    pub degree_bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BnWitness {
    pub m: DivisorClass,
    pub n: DivisorClass,
    pub h0_m: i64,
    pub h0_n: i64,
}

impl BnWitness {
    pub fn product(&self) -> i64 {
        self.h0_m * self.h0_n
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BnVerdict {
    pub general: bool,
    pub h0: i64,
    pub worst: Option<BnWitness>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hyperbolic() {
        assert!(LatticeK3::new(2, 1, 1).is_err());
        assert!(LatticeK3::new(1, 3, 0).is_err());
    }

    #[test]
    fn minus_two_classes_match_brute_force() {
        for (g, d, n) in [(5, 9, 0), (5, 3, -2), (12, 0, -2), (7, 2, -2), (4, 1, -2)] {
            let l = LatticeK3::new(g, d, n).unwrap();
            let bound = 60;
            let cert = l.minus_two_classes(bound);
            let mut brute = Vec::new();
            for a in -400..=400i64 {
                for b in -400..=400i64 {
                    let r = DivisorClass::new(a, b);
                    let k = l.dot(r, H1);
                    if l.square(r) == -2 && ((1..=bound).contains(&k) || (k == 0 && b > 0)) {
                        brute.push(r);
                    }
                }
            }
            let mut got = cert.classes.clone();
            got.sort_by_key(|r| (r.a, r.b));
            brute.sort_by_key(|r| (r.a, r.b));
            assert_eq!(got, brute, "lattice ({g},{d},{n})");
        }
    }

    #[test]
    fn h0_of_isotropic_multiples() {
        let l = LatticeK3::new(5, 9, 0).unwrap();
        assert_eq!(l.h0_estimate(DivisorClass::new(0, 3)), Some(4));
        assert_eq!(l.h0_estimate(H1), Some(6));
    }
}
