//! Dense univariate polynomials over GF(p), coefficients stored low to high.

use rand::Rng;

use super::field::FieldSpec;
use super::AlgebraError;

pub type UPoly = Vec<u32>;

pub fn trim(mut a: UPoly) -> UPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn eval(f: FieldSpec, a: &[u32], x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn sub(f: FieldSpec, a: &[u32], b: &[u32]) -> UPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
}

pub fn mul(f: FieldSpec, a: &[u32], b: &[u32]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let p = f.p() as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
        }
    }
    trim(out.into_iter().map(|v| v as u32).collect())
}

/// Quotient and remainder; panics if `b` is zero.
pub fn divrem(f: FieldSpec, a: &[u32], b: &[u32]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = f.inv(b[db]);
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![0u32; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], inv);
        let shift = dr - db;
        q[shift] = c;
        for (i, &bc) in b[..=db].iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bc));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(f: FieldSpec, a: &[u32]) -> UPoly {
    match degree(a) {
        None => vec![],
        Some(d) => {
            let inv = f.inv(a[d]);
            a[..=d].iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

pub fn gcd(f: FieldSpec, a: &[u32], b: &[u32]) -> UPoly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// base^e mod modulus.
pub fn powmod(f: FieldSpec, base: &[u32], mut e: u64, modulus: &[u32]) -> UPoly {
    let mut result: UPoly = vec![1];
    let mut b = divrem(f, base, modulus).1;
    while e > 0 {
        if e & 1 == 1 {
            result = divrem(f, &mul(f, &result, &b), modulus).1;
        }
        b = divrem(f, &mul(f, &b, &b), modulus).1;
        e >>= 1;
    }
    result
}

/// Distinct roots in GF(p), sorted ascending.
pub fn roots(f: FieldSpec, a: &[u32], rng: &mut impl Rng) -> Result<Vec<u32>, AlgebraError> {
    let a = trim(a.to_vec());
    let d = degree(&a).ok_or(AlgebraError::ZeroPolynomial)?;
    if d == 0 {
        return Ok(vec![]);
    }
    let p = f.p();
    if p < 64 {
        return Ok((0..p).filter(|&x| eval(f, &a, x) == 0).collect());
    }
    let a = monic(f, &a);
    // product of the distinct linear factors: gcd(a, x^p - x)
    let xp = powmod(f, &[0, 1], p as u64, &a);
    let g = gcd(f, &a, &sub(f, &xp, &[0, 1]));
    let mut out = Vec::new();
    split(f, g, rng, &mut out);
    out.sort_unstable();
    Ok(out)
}

fn split(f: FieldSpec, g: UPoly, rng: &mut impl Rng, out: &mut Vec<u32>) {
    match degree(&g) {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(f.div(g[0], g[1]))),
        Some(_) => loop {
            let shift = f.random(rng);
            let h = powmod(f, &[shift, 1], (f.p() as u64 - 1) / 2, &g);
            let h = sub(f, &h, &[1]);
            let d = gcd(f, &g, &h);
            let dd = degree(&d).unwrap_or(0);
            if dd > 0 && dd < degree(&g).unwrap() {
                let (q, _) = divrem(f, &g, &d);
                split(f, d, rng, out);
                split(f, q, rng, out);
                return;
            }
        },
    }
}

/// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
pub fn interpolate(f: FieldSpec, xs: &[u32], ys: &[u32]) -> UPoly {
    let mut result: UPoly = vec![];
    for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
        if yi == 0 {
            continue;
        }
        let mut num: UPoly = vec![1];
        let mut den = 1u32;
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                num = mul(f, &num, &[f.neg(xj), 1]);
                den = f.mul(den, f.sub(xi, xj));
            }
        }
        let c = f.div(yi, den);
        let term: UPoly = num.iter().map(|&v| f.mul(v, c)).collect();
        let n = result.len().max(term.len());
        result = (0..n)
            .map(|k| f.add(*result.get(k).unwrap_or(&0), *term.get(k).unwrap_or(&0)))
            .collect();
    }
    trim(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_field_roots() {
        let f = FieldSpec::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // x^2 - 1
        assert_eq!(roots(f, &[6, 0, 1], &mut rng).unwrap(), vec![1, 6]);
        // (x-2)(x-3)(x^2+1): exhaustive evaluation over GF(7) as oracle
        let poly = mul(f, &mul(f, &[5, 1], &[4, 1]), &[1, 0, 1]);
        let brute: Vec<u32> = (0..7).filter(|&x| eval(f, &poly, x) == 0).collect();
        assert_eq!(brute, vec![2, 3]);
        assert_eq!(roots(f, &poly, &mut rng).unwrap(), brute);
    }

    #[test]
    fn planted_roots_large_field() {
        let f = FieldSpec::new(65521).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut planted: Vec<u32> = (0..30).map(|_| f.random(&mut rng)).collect();
        planted.sort_unstable();
        planted.dedup();
        let mut poly: UPoly = vec![1];
        for &r in &planted {
            poly = mul(f, &poly, &[f.neg(r), 1]);
        }
        // an irreducible quadratic factor does not add roots
        poly = mul(f, &poly, &[f.neg(3), 0, 1]);
        let found = roots(f, &poly, &mut rng).unwrap();
        let extra: Vec<u32> = (0..65521).filter(|&x| f.mul(x, x) == 3).collect();
        let mut expected = planted.clone();
        expected.extend(extra);
        expected.sort_unstable();
        assert_eq!(found, expected);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        let f = FieldSpec::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(roots(f, &[0, 0], &mut rng).is_err());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = FieldSpec::new(65521).unwrap();
        let poly = vec![3, 0, 5, 1];
        let xs = [1, 2, 3, 4, 5];
        let ys: Vec<u32> = xs.iter().map(|&x| eval(f, &poly, x)).collect();
        assert_eq!(interpolate(f, &xs, &ys), poly);
    }
}
