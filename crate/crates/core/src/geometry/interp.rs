//! Linear systems of forms through sampled points.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::point::{eval_monomials, PointP};
use super::subscheme::Subscheme;
use super::GeometryError;
use crate::algebra::linalg::{Echelon, Matrix};
use crate::algebra::monomial::{binomial, monomials_of_degree};
use crate::algebra::{FieldSpec, Monomial, Poly, Ring};

/// Largest number of monomials for which a degree is interpolated.
pub const MONOMIAL_CAP: usize = 6000;

#[derive(Clone, Debug)]
pub struct FormsOptions {
    /// Upper bound on conditions used, as a fraction above the monomial count.
    pub margin: f64,
    /// Fresh points used to verify an interpolated basis.
    pub resample: usize,
    /// Consecutive non-increasing points after which the rank is taken as final.
    pub stable_after: usize,
    pub seed: u64,
}

impl Default for FormsOptions {
    fn default() -> Self {
        FormsOptions { margin: 0.25, resample: 200, stable_after: 24, seed: 0 }
    }
}

impl FormsOptions {
    pub fn with_seed(seed: u64) -> Self {
        FormsOptions { seed, ..Default::default() }
    }
}

/// Conditions a point imposes on the coefficients of a degree-d form: its value
/// (m = 1) or all first partials (m = 2).
pub fn condition_rows_at(field: FieldSpec, monos: &[Monomial], point: &[u32], m: u32) -> Vec<Vec<u32>> {
    if m == 1 {
        return vec![eval_monomials(field, monos, point)];
    }
    let n = point.len();
    let lowered: Vec<Vec<Option<(Monomial, u32)>>> = monos
        .iter()
        .map(|mono| {
            (0..n)
                .map(|j| {
                    let e = mono.exps()[j];
                    (e > 0).then(|| {
                        let mut ex = mono.exps().to_vec();
                        ex[j] -= 1;
                        (Monomial::from_exps(ex), e as u32)
                    })
                })
                .collect()
        })
        .collect();
    (0..n)
        .map(|j| {
            let ms: Vec<Monomial> = lowered
                .iter()
                .map(|l| l[j].as_ref().map(|(m, _)| m.clone()).unwrap_or_else(|| Monomial::one(n)))
                .collect();
            let vals = eval_monomials(field, &ms, point);
            lowered
                .iter()
                .zip(vals)
                .map(|(l, v)| match &l[j] {
                    Some((_, e)) => field.mul(v, *e % field.p()),
                    None => 0,
                })
                .collect()
        })
        .collect()
}

fn vanishes_to_order(f: &Poly, partials: &[Poly], p: &PointP) -> bool {
    f.eval(p.coords()) == 0 && partials.iter().all(|g| g.eval(p.coords()) == 0)
}

/// Adaptive evaluation rank of degree-d conditions at points of `v`.
fn condition_echelon(
    v: &Subscheme,
    monos: &[Monomial],
    m: u32,
    opts: &FormsOptions,
    rng: &mut ChaCha8Rng,
) -> Result<Echelon, GeometryError> {
    let field = v.field();
    let mut ech = Echelon::new(field, monos.len());
    let budget = ((monos.len() as f64) * (1.0 + opts.margin)).ceil() as usize + opts.stable_after;
    let mut used = 0;
    let mut idle = 0;
    while !ech.is_full() && idle < opts.stable_after && used < budget {
        let chunk = (ech.cols - ech.rank()).clamp(8, 64);
        for p in v.sample(chunk, rng.gen())? {
            let mut grew = false;
            for row in condition_rows_at(field, monos, p.coords(), m) {
                grew |= ech.insert(row);
            }
            used += 1;
            idle = if grew { 0 } else { idle + 1 };
            if ech.is_full() || idle >= opts.stable_after {
                break;
            }
        }
    }
    if idle < opts.stable_after && !ech.is_full() {
        return Err(GeometryError::Unstable(format!(
            "rank still growing after {used} points ({} monomials)",
            monos.len()
        )));
    }
    Ok(ech)
}

/// Basis of the degree-d forms vanishing to order at least m along `v`.
pub fn forms_through(v: &Subscheme, d: u32, m: u32, opts: &FormsOptions) -> Result<Vec<Poly>, GeometryError> {
    if !(1..=2).contains(&m) || d < m {
        return Err(GeometryError::Invalid(format!("unsupported degree {d} / multiplicity {m}")));
    }
    let ring = v.ring().clone();
    let monos = monomials_of_degree(ring.nvars, d);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let ech = condition_echelon(v, &monos, m, opts, &mut rng)?;
    let forms: Vec<Poly> = ech.nullspace().iter().map(|c| Poly::from_coefficients(&ring, &monos, c)).collect();
    verify_forms(v, &forms, m, opts.resample, rng.gen())?;
    Ok(forms)
}

fn verify_forms(v: &Subscheme, forms: &[Poly], m: u32, count: usize, seed: u64) -> Result<(), GeometryError> {
    if forms.is_empty() || count == 0 {
        return Ok(());
    }
    let n = v.ring().nvars;
    let partials: Vec<Vec<Poly>> =
        forms.iter().map(|f| if m == 2 { (0..n).map(|j| f.derivative(j)).collect() } else { vec![] }).collect();
    for p in v.sample(count, seed)? {
        for (f, ps) in forms.iter().zip(&partials) {
            if !vanishes_to_order(f, ps, &p) {
                return Err(GeometryError::Unstable("form fails on a resampled point".into()));
            }
        }
    }
    Ok(())
}

/// Degree-d forms through an explicit finite point set.
pub fn forms_through_points(ring: &Ring, d: u32, points: &[PointP]) -> Vec<Poly> {
    let monos = monomials_of_degree(ring.nvars, d);
    let mut ech = Echelon::new(ring.field, monos.len());
    for p in points {
        ech.insert(eval_monomials(ring.field, &monos, p.coords()));
    }
    ech.nullspace().iter().map(|c| Poly::from_coefficients(ring, &monos, c)).collect()
}

/// Ideal generators of a sampled variety, degree by degree.
#[derive(Clone, Debug)]
pub struct InterpolatedIdeal {
    /// Minimal generators, sorted by degree.
    pub gens: Vec<Poly>,
    /// Number of minimal generators in each degree.
    pub histogram: BTreeMap<u32, usize>,
    /// Dimension of the degree-d part of the ideal, for each interpolated degree.
    pub dims: BTreeMap<u32, usize>,
    /// Degrees that were not examined because of the monomial cap.
    pub skipped: Vec<u32>,
}

/// Minimal generators of the ideal of the points of `v` in degrees 1..=max_degree.
pub fn ideal_through_points(v: &Subscheme, max_degree: u32, opts: &FormsOptions) -> Result<InterpolatedIdeal, GeometryError> {
    let ring = v.ring().clone();
    let n = ring.nvars;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut gens = Vec::new();
    let mut histogram = BTreeMap::new();
    let mut dims = BTreeMap::new();
    let mut skipped = Vec::new();
    // basis of the ideal in the previous degree
    let mut prev: Vec<Poly> = Vec::new();
    for d in 1..=max_degree {
        let nmon = binomial((n + d as usize - 1) as u64, d as u64) as usize;
        if nmon > MONOMIAL_CAP {
            skipped.extend(d..=max_degree);
            break;
        }
        let monos = monomials_of_degree(n, d);
        let eval = condition_echelon(v, &monos, 1, opts, &mut rng)?;
        let dim_d = nmon - eval.rank();
        dims.insert(d, dim_d);
        if dim_d == 0 {
            prev.clear();
            continue;
        }
        let generated = multiples_echelon(&ring, &prev, &monos);
        let span_rank = generated.as_ref().map(|g| g.rank()).unwrap_or(0);
        if span_rank > dim_d {
            return Err(GeometryError::Unstable(format!("degree {d}: multiples exceed interpolated dimension")));
        }
        if span_rank == dim_d {
            let g = generated.unwrap();
            prev = g.to_matrix().row_vecs().iter().map(|c| Poly::from_coefficients(&ring, &monos, c)).collect();
            continue;
        }
        let basis: Vec<Poly> = eval.nullspace().iter().map(|c| Poly::from_coefficients(&ring, &monos, c)).collect();
        let mut span = generated.unwrap_or_else(|| Echelon::new(ring.field, nmon));
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut new = 0;
        for f in &basis {
            if span.insert(f.coefficients_in(&index, nmon).unwrap()) {
                gens.push(f.clone());
                new += 1;
            }
        }
        histogram.insert(d, new);
        prev = basis;
    }
    let mut all_gens = Vec::new();
    for g in gens {
        all_gens.push(g);
    }
    verify_forms(v, &all_gens, 1, opts.resample, rng.gen())?;
    Ok(InterpolatedIdeal { gens: all_gens, histogram, dims, skipped })
}

/// Echelon basis of the span of x_i * f for f in `lower` (None if `lower` is empty).
fn multiples_echelon(ring: &Ring, lower: &[Poly], monos: &[Monomial]) -> Option<Echelon> {
    if lower.is_empty() {
        return None;
    }
    let n = ring.nvars;
    let index: std::collections::HashMap<Monomial, usize> =
        monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::with_capacity(lower.len() * n);
    for f in lower {
        for i in 0..n {
            let xi = Monomial::var(n, i);
            let mut row = vec![0u32; monos.len()];
            for (m, c) in f.terms() {
                row[index[&m.mul(&xi)]] = *c;
            }
            rows.push(row);
        }
    }
    let mut mat = Matrix::from_rows(ring.field, monos.len(), rows);
    let rank = mat.rref().len();
    let mut ech = Echelon::new(ring.field, monos.len());
    for r in 0..rank {
        ech.insert(mat.row(r).to_vec());
    }
    Some(ech)
}

/// Generator-degree histogram of a list of homogeneous forms.
pub fn degree_histogram(gens: &[Poly]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for g in gens {
        *h.entry(g.degree() as u32).or_insert(0) += 1;
    }
    h
}

/// Renders a histogram as `{({2}, 66), ({3}, 4)}`.
pub fn format_histogram(h: &BTreeMap<u32, usize>) -> String {
    let parts: Vec<String> = h.iter().filter(|(_, &c)| c > 0).map(|(d, c)| format!("({{{d}}}, {c})")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Keeps the generators needed to span `forms` together with `base`, in order.
pub fn minimal_generators(ring: &Ring, base: &[Poly], forms: &[Poly]) -> Vec<Poly> {
    let Some(d) = forms.first().map(|f| f.degree() as u32) else { return vec![] };
    let monos = monomials_of_degree(ring.nvars, d);
    let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = Echelon::new(ring.field, monos.len());
    for b in base {
        ech.insert(b.coefficients_in(&index, monos.len()).expect("degree mismatch"));
    }
    forms
        .iter()
        .filter(|f| ech.insert(f.coefficients_in(&index, monos.len()).expect("degree mismatch")))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{Ideal, PolyRing};
    use crate::geometry::subscheme::Sampler;

    fn veronese_surface() -> Subscheme {
        let f = FieldSpec::default();
        let src = Arc::new(Subscheme::projective_space(f, 2));
        let forms = monomials_of_degree(3, 2).into_iter().map(|m| Poly::monomial(src.ring(), m, 1)).collect();
        let r = PolyRing::grevlex(f, 6);
        Subscheme::new(Ideal::zero(&r), 2, Sampler::Image { source: src, forms })
    }

    #[test]
    fn quadrics_through_veronese() {
        let v = veronese_surface();
        let q = forms_through(&v, 2, 1, &FormsOptions::with_seed(1)).unwrap();
        assert_eq!(q.len(), 6);
        // 2x2 minors of the symmetric matrix of coordinates lie in the span
        let r = v.ring().clone();
        let x = |i| Poly::var(&r, i);
        // coordinates ordered as monomials_of_degree(3,2): s^2, st, t^2, su, tu, u^2
        let minor = x(0).mul(&x(2)).sub(&x(1).pow(2));
        let base: Vec<Poly> = q.clone();
        assert!(minimal_generators(&r, &base, &[minor]).is_empty());
    }

    #[test]
    fn twisted_cubic_ideal_histogram() {
        let f = FieldSpec::default();
        let src = Arc::new(Subscheme::projective_space(f, 1));
        let forms = monomials_of_degree(2, 3).into_iter().map(|m| Poly::monomial(src.ring(), m, 1)).collect();
        let r = PolyRing::grevlex(f, 4);
        let c = Subscheme::new(Ideal::zero(&r), 1, Sampler::Image { source: src, forms });
        let id = ideal_through_points(&c, 3, &FormsOptions::with_seed(2)).unwrap();
        assert_eq!(format_histogram(&id.histogram), "{({2}, 3)}");
        assert_eq!(id.dims[&3], 20 - 10);
    }

    #[test]
    fn double_conditions_at_points() {
        // cubics in PP^2 singular at 3 general points: 10 - 9 = 1 (the triangle)
        let f = FieldSpec::default();
        let r = PolyRing::grevlex(f, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pts: Vec<Vec<u32>> = (0..3).map(|_| (0..3).map(|_| f.random(&mut rng)).collect()).collect();
        let monos = monomials_of_degree(3, 3);
        let mut ech = Echelon::new(f, monos.len());
        for p in &pts {
            for row in condition_rows_at(f, &monos, p, 2) {
                ech.insert(row);
            }
        }
        assert_eq!(monos.len() - ech.rank(), 1);
        let _ = r;
    }
}
