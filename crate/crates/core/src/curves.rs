//! Random marked curves: rational curves, elliptic curves, and genus-2 curves
//! of degree 7 on a smooth quadric threefold.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::linalg::{Echelon, Matrix};
use crate::algebra::monomial::{binomial, monomials_of_degree};
use crate::algebra::{FieldSpec, Ideal, Poly, PolyRing, Ring};
use crate::geometry::interp::{condition_rows_at, ideal_through_points, MONOMIAL_CAP};
use crate::geometry::maps::derive_seed;
use crate::geometry::point::random_vector;
use crate::geometry::{FormsOptions, GeometryError, PointP, Sampler, Subscheme};

const RESAMPLE_BUDGET: u64 = 16;

/// Random (rows x cols) matrix.
pub fn random_matrix(field: FieldSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_rows(field, cols, (0..rows).map(|_| random_vector(field, cols, rng)).collect())
}

/// The forms sum_j a_ij f_j, one per row of `a`.
pub fn combine(a: &Matrix, forms: &[Poly]) -> Vec<Poly> {
    let ring = forms[0].ring().clone();
    (0..a.rows)
        .map(|i| {
            forms
                .iter()
                .zip(a.row(i))
                .filter(|(_, &c)| c != 0)
                .fold(Poly::zero(&ring), |acc, (f, &c)| acc.add(&f.scale(c)))
        })
        .collect()
}

/// Degree up to which the ideal of a nondegenerate curve of degree `d` spanning
/// PP^`span` is interpolated: the regularity bound d - span + 2, limited by the
/// monomial cap.
fn interpolation_degree(d: u32, span: usize, n: usize) -> u32 {
    let mut t = (d as i64 - span as i64 + 2).max(2) as u32;
    while t > 2 && binomial((n + t as usize) as u64, t as u64) as usize > MONOMIAL_CAP {
        t -= 1;
    }
    t
}

/// Subscheme of the image of `source` under `forms`, with its ideal interpolated.
fn curve_image(source: Arc<Subscheme>, forms: Vec<Poly>, d: u32, span: usize, seed: u64) -> Result<Subscheme, GeometryError> {
    let n = forms.len();
    let ring = PolyRing::grevlex(source.field(), n);
    let sampled = Subscheme::new(Ideal::zero(&ring), 1, Sampler::Image { source, forms });
    let t = interpolation_degree(d, span, n - 1);
    let ideal = ideal_through_points(&sampled, t, &FormsOptions::with_seed(seed))?;
    Ok(Subscheme::new(Ideal::new(&ring, ideal.gens)?, 1, sampled.sampler().clone()))
}

/// Smooth rational curve of degree d in PP^n: the rational normal curve pushed
/// through a random linear map (an embedding of PP^d if d <= n, a projection otherwise).
pub fn rational_curve(field: FieldSpec, d: u32, n: usize, seed: u64) -> Result<Subscheme, GeometryError> {
    if d < 1 || n < 2 {
        return Err(GeometryError::Invalid(format!("no rational curve of degree {d} in PP^{n}")));
    }
    let line = Arc::new(Subscheme::projective_space(field, 1));
    let monos: Vec<Poly> =
        monomials_of_degree(2, d).into_iter().map(|m| Poly::monomial(line.ring(), m, 1)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_matrix(field, n + 1, monos.len(), &mut rng);
    curve_image(line, combine(&a, &monos), d, (d as usize).min(n), derive_seed(seed, 1))
}

/// A random plane cubic without singular points.
pub fn smooth_plane_cubic(field: FieldSpec, rng: &mut ChaCha8Rng) -> Result<Subscheme, GeometryError> {
    let r = PolyRing::grevlex(field, 3);
    let monos = monomials_of_degree(3, 3);
    for _ in 0..RESAMPLE_BUDGET {
        let f = Poly::from_coefficients(&r, &monos, &random_vector(field, monos.len(), rng));
        if is_smooth_hypersurface(&f)? {
            return Ok(Subscheme::new(Ideal::new(&r, vec![f])?, 1, Sampler::Slice));
        }
    }
    Err(GeometryError::RetryBudget("no smooth plane cubic".into()))
}

/// True if f and its partials have no common zero.
pub fn is_smooth_hypersurface(f: &Poly) -> Result<bool, GeometryError> {
    let r = f.ring();
    let mut gens = vec![f.clone()];
    gens.extend((0..r.nvars).map(|i| f.derivative(i)));
    Ok(crate::algebra::hilbert(&Ideal::new(r, gens)?)?.dim < 0)
}

/// Smooth genus-1 curve of degree d in PP^n, embedded by a line bundle of the
/// form mH - Δ on a plane cubic, with 3m >= d and |Δ| = 3m - d.
pub fn elliptic_curve(field: FieldSpec, d: u32, n: usize, seed: u64) -> Result<Subscheme, GeometryError> {
    if d < 3 || n < 2 {
        return Err(GeometryError::Invalid(format!("no elliptic curve of degree {d} in PP^{n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cubic = Arc::new(smooth_plane_cubic(field, &mut rng)?);
    let r = cubic.ring().clone();
    let m = d.div_ceil(3);
    let delta = cubic.sample((3 * m - d) as usize, derive_seed(seed, 2))?;
    let system = forms_mod_hypersurface(&r, &cubic.gens()[0], m, &delta);
    if system.len() != d as usize {
        return Err(GeometryError::Unstable(format!("embedding system has {} sections, expected {d}", system.len())));
    }
    let a = random_matrix(field, n + 1, system.len(), &mut rng);
    curve_image(cubic, combine(&a, &system), d, (d as usize - 1).min(n), derive_seed(seed, 3))
}

/// Degree-m forms through `points`, taken modulo multiples of the hypersurface f.
fn forms_mod_hypersurface(r: &Ring, f: &Poly, m: u32, points: &[PointP]) -> Vec<Poly> {
    let monos = monomials_of_degree(r.nvars, m);
    let index = monos.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let mut ech = Echelon::new(r.field, monos.len());
    let k = f.degree() as u32;
    if m >= k {
        for u in monomials_of_degree(r.nvars, m - k) {
            ech.insert(f.mul_term(&u, 1).coefficients_in(&index, monos.len()).unwrap());
        }
    }
    let through = crate::geometry::forms_through_points(r, m, points);
    through.into_iter().filter(|g| ech.insert(g.coefficients_in(&index, monos.len()).unwrap())).collect()
}

/// A smooth quadric Q in PP^4 and a smooth curve C ⊂ Q of degree 7 and genus 2,
/// the image of a plane quintic with four nodes under the cubics through them.
pub fn genus2_curve_deg7_on_quadric(field: FieldSpec, seed: u64) -> Result<(Subscheme, Subscheme), GeometryError> {
    let plane = PolyRing::grevlex(field, 3);
    for attempt in 0..RESAMPLE_BUDGET {
        let s = derive_seed(seed, 100 + attempt);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let nodes: Vec<PointP> =
            (0..4).filter_map(|_| PointP::new(field, random_vector(field, 3, &mut rng))).collect();
        // quintics singular at the nodes
        let monos = monomials_of_degree(3, 5);
        let rows: Vec<Vec<u32>> = nodes.iter().flat_map(|p| condition_rows_at(field, &monos, p.coords(), 2)).collect();
        let system = Matrix::from_rows(field, monos.len(), rows).nullspace();
        if system.len() != 9 {
            continue;
        }
        let coeffs = combine_vectors(field, &system, &mut rng);
        let quintic = Poly::from_coefficients(&plane, &monos, &coeffs);
        let source = Arc::new(Subscheme::new(Ideal::new(&plane, vec![quintic])?, 1, Sampler::Slice));
        let cubics = crate::geometry::forms_through_points(&plane, 3, &nodes);
        if cubics.len() != 6 {
            continue;
        }
        let a = random_matrix(field, 5, 6, &mut rng);
        let curve = match curve_image(source, combine(&a, &cubics), 7, 4, derive_seed(s, 1)) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let h = curve.hilbert()?;
        if (h.dim, h.degree, h.sectional_genus()) != (1, 7, Some(2)) {
            continue;
        }
        let quadrics: Vec<Poly> = curve.gens().iter().filter(|g| g.degree() == 2).cloned().collect();
        if quadrics.len() < 2 {
            continue;
        }
        let q = combine(&random_matrix(field, 1, quadrics.len(), &mut rng), &quadrics).remove(0);
        if quadric_rank(&q) != 5 {
            continue;
        }
        let quadric = Subscheme::new(Ideal::new(curve.ring(), vec![q])?, 3, Sampler::Slice);
        return Ok((quadric, curve));
    }
    Err(GeometryError::RetryBudget("no smooth genus-2 curve of degree 7 on a smooth quadric".into()))
}

fn combine_vectors(field: FieldSpec, vs: &[Vec<u32>], rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut out = vec![0u32; vs[0].len()];
    for v in vs {
        let c = field.random(rng);
        for (o, x) in out.iter_mut().zip(v) {
            *o = field.add(*o, field.mul(c, *x));
        }
    }
    out
}

/// Rank of the symmetric matrix of a quadratic form (p odd).
pub fn quadric_rank(q: &Poly) -> usize {
    let r = q.ring();
    let n = r.nvars;
    let zero = vec![0u32; n];
    let rows: Vec<Vec<u32>> =
        (0..n).map(|i| (0..n).map(|j| q.derivative(i).derivative(j).eval(&zero)).collect()).collect();
    Matrix::from_rows(r.field, n, rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::singular_sample;

    fn genus_degree(c: &Subscheme) -> (i64, i128, Option<i128>) {
        let h = c.hilbert().unwrap();
        (h.dim, h.degree, h.sectional_genus())
    }

    #[test]
    fn line_in_space() {
        let c = rational_curve(FieldSpec::default(), 1, 3, 1).unwrap();
        assert_eq!(genus_degree(&c), (1, 1, Some(0)));
        assert_eq!(c.gens().len(), 2);
    }

    #[test]
    fn twisted_cubic_polynomial() {
        let c = rational_curve(FieldSpec::default(), 3, 3, 2).unwrap();
        let h = c.hilbert().unwrap();
        assert_eq!(h.eval_poly(5), crate::algebra::hilbert::Q::from_integer(16));
        assert_eq!(genus_degree(&c), (1, 3, Some(0)));
        assert!(singular_sample(&c, 30, 3).unwrap().all_smooth());
    }

    #[test]
    fn projected_sextic_is_quadratically_normal() {
        let c = rational_curve(FieldSpec::default(), 6, 4, 3).unwrap();
        assert_eq!(genus_degree(&c), (1, 6, Some(0)));
        assert_eq!(c.gens().iter().filter(|g| g.degree() == 2).count(), 2);
    }

    #[test]
    fn elliptic_quartic_is_two_quadrics() {
        let c = elliptic_curve(FieldSpec::default(), 4, 3, 4).unwrap();
        assert_eq!(genus_degree(&c), (1, 4, Some(1)));
        assert_eq!(c.gens().len(), 2);
    }

    #[test]
    fn elliptic_normal_nonic() {
        let c = elliptic_curve(FieldSpec::default(), 9, 8, 5).unwrap();
        assert_eq!(genus_degree(&c), (1, 9, Some(1)));
        // nondegenerate: no linear forms
        assert!(c.gens().iter().all(|g| g.degree() >= 2));
    }

    #[test]
    fn elliptic_nonic_in_five_space() {
        let c = elliptic_curve(FieldSpec::default(), 9, 5, 6).unwrap();
        assert_eq!(genus_degree(&c), (1, 9, Some(1)));
    }

    #[test]
    fn genus_two_curve_on_quadric() {
        let (q, c) = genus2_curve_deg7_on_quadric(FieldSpec::default(), 7).unwrap();
        assert_eq!(genus_degree(&c), (1, 7, Some(2)));
        assert_eq!(quadric_rank(&q.gens()[0]), 5);
        assert!(c.sample(10, 1).unwrap().iter().all(|p| q.contains_point(p)));
    }
}
