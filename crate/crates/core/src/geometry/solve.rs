//! Rational points of zero-dimensional homogeneous ideals.
//!
//! The quotient ring in a degree t where the Hilbert function has stabilized
//! carries commuting multiplication operators x_i / l for a generic linear
//! form l. Their joint eigenvectors give the points.

use std::collections::HashMap;

use rand::Rng;

use super::point::PointP;
use super::GeometryError;
use crate::algebra::linalg::Matrix;
use crate::algebra::monomial::monomials_of_degree;
use crate::algebra::univariate;
use crate::algebra::{Monomial, Poly, Ring};

const MAX_DEGREE: u32 = 8;

struct Graded {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    reduced: Matrix,
    pivot_row: Vec<Option<usize>>,
    standard: Vec<usize>,
}

fn macaulay(ring: &Ring, gens: &[Poly], t: u32) -> Graded {
    let n = ring.nvars;
    let monos = monomials_of_degree(n, t);
    let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let e = g.degree();
        if e < 0 || e as u32 > t {
            continue;
        }
        for u in monomials_of_degree(n, t - e as u32) {
            let mut row = vec![0u32; monos.len()];
            for (m, c) in g.terms() {
                row[index[&u.mul(m)]] = *c;
            }
            rows.push(row);
        }
    }
    let mut reduced = Matrix::from_rows(ring.field, monos.len(), rows);
    let pivots = reduced.rref();
    let mut pivot_row = vec![None; monos.len()];
    for (r, &c) in pivots.iter().enumerate() {
        pivot_row[c] = Some(r);
    }
    let standard = (0..monos.len()).filter(|&c| pivot_row[c].is_none()).collect();
    Graded { monos, index, reduced, pivot_row, standard }
}

impl Graded {
    /// Normal form of a single monomial, in coordinates of the standard monomials.
    fn nf_monomial(&self, m: &Monomial, out: &mut [u32], coeff: u32, field: crate::algebra::FieldSpec) {
        let c = self.index[m];
        match self.pivot_row[c] {
            None => {
                let k = self.standard.binary_search(&c).unwrap();
                out[k] = field.add(out[k], coeff);
            }
            Some(r) => {
                let row = self.reduced.row(r);
                for (k, &sc) in self.standard.iter().enumerate() {
                    if row[sc] != 0 {
                        out[k] = field.sub(out[k], field.mul(coeff, row[sc]));
                    }
                }
            }
        }
    }
}

/// All GF(p)-rational points of the zero-dimensional scheme cut out by `gens`,
/// restricted to simple eigenvalues. Points are verified against `gens`.
pub fn rational_points(ring: &Ring, gens: &[Poly], rng: &mut impl Rng) -> Result<Vec<PointP>, GeometryError> {
    let gens: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(GeometryError::Invalid("slice equations must be homogeneous".into()));
    }
    let maxdeg = gens.iter().map(|g| g.degree().max(1) as u32).max().unwrap_or(1);
    // Macaulay bound for a zero-dimensional complete intersection
    let mut degs: Vec<u32> = gens.iter().map(|g| g.degree().max(1) as u32).collect();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    let bound = MAX_DEGREE.max(degs.iter().take(ring.nvars).map(|d| d - 1).sum::<u32>() + 2);
    let mut lower = macaulay(ring, &gens, maxdeg);
    let mut t = maxdeg;
    loop {
        let upper = macaulay(ring, &gens, t + 1);
        let h = lower.standard.len();
        if upper.standard.is_empty() {
            return Ok(vec![]);
        }
        if h == upper.standard.len() {
            if let Some(pts) = eigen_points(ring, &gens, &lower, &upper, rng)? {
                return Ok(pts);
            }
        }
        t += 1;
        if t >= bound {
            return Err(GeometryError::RetryBudget("Hilbert function of slice did not stabilize".into()));
        }
        lower = upper;
    }
}

fn eigen_points(
    ring: &Ring,
    gens: &[Poly],
    lower: &Graded,
    upper: &Graded,
    rng: &mut impl Rng,
) -> Result<Option<Vec<PointP>>, GeometryError> {
    let field = ring.field;
    let n = ring.nvars;
    let h = lower.standard.len();
    let basis: Vec<&Monomial> = lower.standard.iter().map(|&c| &lower.monos[c]).collect();
    // multiplication by each variable, as h x h matrices (column k = image of basis k)
    let mut mult: Vec<Matrix> = Vec::with_capacity(n);
    for i in 0..n {
        let xi = Monomial::var(n, i);
        let mut m = Matrix::zeros(field, h, h);
        for (k, b) in basis.iter().enumerate() {
            let mut col = vec![0u32; h];
            upper.nf_monomial(&b.mul(&xi), &mut col, 1, field);
            for (r, v) in col.into_iter().enumerate() {
                m.set(r, k, v);
            }
        }
        mult.push(m);
    }
    let combine = |coeffs: &[u32]| {
        let mut out = Matrix::zeros(field, h, h);
        for (c, m) in coeffs.iter().zip(&mult) {
            for (o, v) in out.data.iter_mut().zip(&m.data) {
                *o = field.add(*o, field.mul(*c, *v));
            }
        }
        out
    };
    for _attempt in 0..4 {
        let l: Vec<u32> = (0..n).map(|_| field.random(rng)).collect();
        let Some(l_inv) = combine(&l).inverse() else { continue };
        let ops: Vec<Matrix> = mult.iter().map(|m| l_inv.mul(m)).collect();
        let c: Vec<u32> = (0..n).map(|_| field.random(rng)).collect();
        let mut t = Matrix::zeros(field, h, h);
        for (ci, op) in c.iter().zip(&ops) {
            for (o, v) in t.data.iter_mut().zip(&op.data) {
                *o = field.add(*o, field.mul(*ci, *v));
            }
        }
        // the operators must commute on a genuine coordinate ring
        if ops.len() > 1 && ops[0].mul(&ops[1]) != ops[1].mul(&ops[0]) {
            return Ok(None);
        }
        let cp = t.charpoly();
        let roots = univariate::roots(field, &cp, rng)?;
        let mut pts = Vec::new();
        for lam in roots {
            let mut shifted = t.clone();
            for d in 0..h {
                let v = shifted.get(d, d);
                shifted.set(d, d, field.sub(v, lam));
            }
            let ker = shifted.nullspace();
            if ker.len() != 1 {
                continue;
            }
            let v = &ker[0];
            let k = v.iter().position(|&x| x != 0).unwrap();
            let inv = field.inv(v[k]);
            let coords: Vec<u32> = ops.iter().map(|op| field.mul(op.mul_vec(v)[k], inv)).collect();
            if let Some(p) = PointP::new(field, coords) {
                if p.satisfies(gens) {
                    pts.push(p);
                }
            }
        }
        return Ok(Some(pts));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, PolyRing};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn planted_points_are_recovered() {
        let f = FieldSpec::default();
        let r = PolyRing::grevlex(f, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // four points in PP^2, ideal from conics through them
        let pts: Vec<Vec<u32>> = (0..4).map(|_| (0..3).map(|_| f.random(&mut rng)).collect()).collect();
        let monos = monomials_of_degree(3, 2);
        let rows: Vec<Vec<u32>> = pts.iter().map(|p| super::super::point::eval_monomials(f, &monos, p)).collect();
        let ker = Matrix::from_rows(f, monos.len(), rows).nullspace();
        assert_eq!(ker.len(), 2);
        let gens: Vec<Poly> = ker.iter().map(|v| Poly::from_coefficients(&r, &monos, v)).collect();
        let found = rational_points(&r, &gens, &mut rng).unwrap();
        let mut expected: Vec<PointP> = pts.into_iter().map(|p| PointP::new(f, p).unwrap()).collect();
        let mut found_sorted = found.clone();
        expected.sort_by(|a, b| a.coords().cmp(b.coords()));
        found_sorted.sort_by(|a, b| a.coords().cmp(b.coords()));
        assert_eq!(found_sorted, expected);
    }

    #[test]
    fn empty_scheme_has_no_points() {
        let f = FieldSpec::default();
        let r = PolyRing::grevlex(f, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let gens = vec![Poly::var(&r, 0), Poly::var(&r, 1)];
        assert!(rational_points(&r, &gens, &mut rng).unwrap().is_empty());
    }
}
