//! Prime Fano threefolds X_{2g-2} ⊂ PP^{g+1} with a marked point or rational curve.
//!
//! For g = 6..9 these are linear (and for g = 6 also quadratic) sections of the
//! Mukai model through the marked datum. V_18 and V_22 are images of a smooth
//! quadric Q ⊂ PP^4 under quintics double along a curve: a genus-2 curve of
//! degree 7 for V_18, a rational sextic for V_22.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{mukai_model, ModelRecord};
use crate::algebra::linalg::Echelon;
use crate::algebra::monomial::monomials_of_degree;
use crate::algebra::{FieldSpec, Ideal, Poly, PolyRing, Ring};
use crate::curves::{combine, genus2_curve_deg7_on_quadric, quadric_rank, random_matrix, rational_curve};
use crate::geometry::interp::{ideal_through_points, minimal_generators};
use crate::geometry::maps::{derive_seed, is_smooth_at};
use crate::geometry::point::random_vector;
use crate::geometry::{
    forms_through, forms_through_points, image, FormsOptions, GeometryError, LinearChart, PointP, RationalMap, Sampler,
    Subscheme,
};

const RESAMPLE_BUDGET: u64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FanoMarking {
    None,
    Point,
    Line,
    Conic,
}

/// The quadric, the curve blown up on it, and the divisor contracted by the
/// map to the threefold.
#[derive(Clone, Debug)]
pub struct QuadricData {
    pub quadric: Arc<Subscheme>,
    pub curve: Arc<Subscheme>,
    pub contracted: Option<Arc<Subscheme>>,
}

#[derive(Clone, Debug)]
pub struct FanoRecord {
    pub g: u32,
    pub threefold: Arc<Subscheme>,
    pub parameterization: Option<RationalMap>,
    pub point: Option<PointP>,
    pub curve: Option<Arc<Subscheme>>,
    pub quadric_data: Option<QuadricData>,
}

pub fn fano_threefold(field: FieldSpec, g: u32, marking: FanoMarking, seed: u64) -> Result<FanoRecord, GeometryError> {
    match g {
        6..=9 => mukai_section(field, g, marking, seed),
        10 => {
            let mut f = v18(field, seed)?;
            mark_image(&mut f, marking, seed)?;
            Ok(f)
        }
        12 => {
            let mut f = v22(field, seed)?;
            mark_image(&mut f, marking, seed)?;
            Ok(f)
        }
        _ => Err(GeometryError::Invalid(format!("no prime Fano threefold of genus {g} in scope"))),
    }
}

/// Random linear forms vanishing on the span of `points`.
pub fn linear_forms_through(ring: &Ring, points: &[PointP], count: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let basis = forms_through_points(ring, 1, points);
    if basis.is_empty() {
        return vec![];
    }
    combine(&random_matrix(ring.field, count, basis.len(), rng), &basis)
}

/// A random quadric containing the span of `points` and the extra quadrics given.
fn quadric_through(ring: &Ring, points: &[PointP], extra: &[Poly], rng: &mut ChaCha8Rng) -> Poly {
    let field = ring.field;
    let mut q = Poly::zero(ring);
    if points.is_empty() {
        let monos = monomials_of_degree(ring.nvars, 2);
        return Poly::from_coefficients(ring, &monos, &random_vector(field, monos.len(), rng));
    }
    for l in forms_through_points(ring, 1, points) {
        let m = Poly::linear(ring, &random_vector(field, ring.nvars, rng));
        q = q.add(&l.mul(&m));
    }
    for e in extra {
        q = q.add(&e.scale(field.random_nonzero(rng)));
    }
    q
}

/// Marked rational curve on a Mukai model, as the image of a rational curve in
/// the source of the parameterization. Lines come from lines through one base
/// point; conics from general lines (quadric maps) or from conics through two
/// base points (the cubic map of genus 9).
fn marked_curve(model: &ModelRecord, g: u32, marking: FanoMarking, seed: u64) -> Result<Subscheme, GeometryError> {
    let map = model.parameterization.as_ref().expect("parameterized model");
    let base = model.base_locus.as_ref().expect("base locus");
    let field = map.source.field();
    let src = map.source.ring().clone();
    let line = PolyRing::grevlex(field, 2);
    let (l, mu) = (Poly::var(&line, 0), Poly::var(&line, 1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_vector(field, src.nvars, &mut rng);
    let param: Vec<Poly> = match (marking, g) {
        (FanoMarking::Line, _) => {
            let b = base.random_point(derive_seed(seed, 1))?;
            (0..src.nvars).map(|i| l.scale(a[i]).add(&mu.scale(b.coords()[i]))).collect()
        }
        (FanoMarking::Conic, 9) => {
            let pts = base.sample(2, derive_seed(seed, 2))?;
            let (b1, b2) = (pts[0].coords(), pts[1].coords());
            let (l2, lm, m2) = (l.pow(2), l.mul(&mu), mu.pow(2));
            (0..src.nvars).map(|i| l2.scale(b1[i]).add(&lm.scale(a[i])).add(&m2.scale(b2[i]))).collect()
        }
        (FanoMarking::Conic, _) => {
            let c = random_vector(field, src.nvars, &mut rng);
            (0..src.nvars).map(|i| l.scale(a[i]).add(&mu.scale(c[i]))).collect()
        }
        _ => unreachable!(),
    };
    let forms: Vec<Poly> = map.forms.iter().map(|f| f.substitute(&line, &param)).collect();
    // strip the common factor vanishing at the base points
    let forms = strip_common_factor(&forms);
    let target = model.variety.ring().clone();
    let source = Arc::new(Subscheme::projective_space(field, 1));
    let sampled = Subscheme::new(Ideal::zero(&target), 1, Sampler::Image { source, forms });
    let ideal = ideal_through_points(&sampled, 2, &FormsOptions::with_seed(derive_seed(seed, 3)))?;
    let curve = Subscheme::new(Ideal::new(&target, ideal.gens)?, 1, sampled.sampler().clone());
    let expected = if marking == FanoMarking::Line { 1 } else { 2 };
    if curve.hilbert()?.degree != expected {
        return Err(GeometryError::Unstable("marked curve has the wrong degree".into()));
    }
    Ok(curve)
}

/// Divides binary forms by the largest common power of each variable.
fn strip_common_factor(forms: &[Poly]) -> Vec<Poly> {
    let ring = forms[0].ring().clone();
    let nonzero: Vec<&Poly> = forms.iter().filter(|f| !f.is_zero()).collect();
    let mut low = vec![u16::MAX; ring.nvars];
    for f in &nonzero {
        for (m, _) in f.terms() {
            for (k, &e) in m.exps().iter().enumerate() {
                low[k] = low[k].min(e);
            }
        }
    }
    let divisor = crate::algebra::Monomial::from_exps(low);
    forms
        .iter()
        .map(|f| {
            let terms = f.terms().iter().map(|(m, c)| (divisor.quotient_of(m), *c)).collect();
            Poly::from_terms(&ring, terms)
        })
        .collect()
}

fn mukai_section(field: FieldSpec, g: u32, marking: FanoMarking, seed: u64) -> Result<FanoRecord, GeometryError> {
    let model = mukai_model(field, g, derive_seed(seed, 10))?;
    let sigma = &model.variety;
    let ambient = sigma.ring().clone();
    for attempt in 0..RESAMPLE_BUDGET {
        let s = derive_seed(seed, 20 + attempt);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        // the marked datum in the ambient space of the model
        let (point, curve) = match marking {
            FanoMarking::None => (None, None),
            FanoMarking::Point => (Some(sigma.random_point(derive_seed(s, 1))?), None),
            FanoMarking::Line | FanoMarking::Conic => match marked_curve(&model, g, marking, derive_seed(s, 2)) {
                Ok(c) => (None, Some(c)),
                Err(GeometryError::Unstable(_)) => continue,
                Err(e) => return Err(e),
            },
        };
        let span_points: Vec<PointP> = match (&point, &curve) {
            (Some(p), _) => vec![p.clone()],
            (_, Some(c)) => c.sample(8, derive_seed(s, 3))?,
            _ => vec![],
        };
        let quadratic = g == 6;
        let codim = sigma.dim() - 3 - usize::from(quadratic);
        let hyperplanes = if span_points.is_empty() {
            crate::geometry::maps::random_linear_forms(&ambient, codim, &mut rng)
        } else {
            linear_forms_through(&ambient, &span_points, codim, &mut rng)
        };
        let chart = LinearChart::new(&ambient, &hyperplanes, point.as_ref())?;
        let mut x = chart.section(sigma, codim)?;
        if quadratic {
            let conic_quadrics: Vec<Poly> =
                curve.iter().flat_map(|c| c.gens().iter().filter(|q| q.degree() == 2).cloned()).collect();
            let q = quadric_through(&ambient, &span_points, &conic_quadrics, &mut rng);
            let mut gens = x.gens().to_vec();
            gens.push(chart.pull(&q));
            x = Subscheme::new(Ideal::new(&chart.ring, gens)?, 3, Sampler::Slice);
        }
        let point = point.map(|p| chart.pull_point(&p).expect("point lies in the chart"));
        if let Some(p) = &point {
            if !is_smooth_at(&x, p)? {
                continue;
            }
        }
        let curve = curve.map(|c| chart.pull_subscheme(&c)).transpose()?;
        return Ok(FanoRecord {
            g,
            threefold: Arc::new(x),
            parameterization: None,
            point,
            curve: curve.map(Arc::new),
            quadric_data: None,
        });
    }
    Err(GeometryError::RetryBudget(format!("no genus-{g} Fano section smooth at the marked datum")))
}

/// Forms of degree 5 double along `curve`, independent modulo the quadric.
fn quintic_system(quadric: &Poly, curve: &Subscheme, seed: u64) -> Result<Vec<Poly>, GeometryError> {
    let ring = curve.ring().clone();
    let forms = forms_through(curve, 5, 2, &FormsOptions::with_seed(seed))?;
    let monos = monomials_of_degree(ring.nvars, 5);
    let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = Echelon::new(ring.field, monos.len());
    for u in monomials_of_degree(ring.nvars, 3) {
        ech.insert(quadric.mul_term(&u, 1).coefficients_in(&index, monos.len()).unwrap());
    }
    Ok(forms.into_iter().filter(|f| ech.insert(f.coefficients_in(&index, monos.len()).unwrap())).collect())
}

fn quadric_image(
    g: u32,
    quadric: Subscheme,
    curve: Subscheme,
    contracted: Option<Subscheme>,
    seed: u64,
) -> Result<FanoRecord, GeometryError> {
    let q = quadric.gens()[0].clone();
    let system = quintic_system(&q, &curve, derive_seed(seed, 1))?;
    if system.len() != g as usize + 2 {
        return Err(GeometryError::Unstable(format!(
            "quintic system has dimension {}, expected {}",
            system.len(),
            g + 2
        )));
    }
    let quadric = Arc::new(quadric);
    let map = RationalMap::new(quadric.clone(), system)?;
    let (x, _) = image(&map, 2, &FormsOptions::with_seed(derive_seed(seed, 2)))?;
    if x.dim() != 3 {
        return Err(GeometryError::Unstable(format!("image has dimension {}", x.dim())));
    }
    Ok(FanoRecord {
        g,
        threefold: Arc::new(x),
        parameterization: Some(map),
        point: None,
        curve: None,
        quadric_data: Some(QuadricData {
            quadric,
            curve: Arc::new(curve),
            contracted: contracted.map(Arc::new),
        }),
    })
}

/// V_18 ⊂ PP^11: the quadric threefold mapped by quintics double along a
/// genus-2 curve of degree 7.
pub fn v18(field: FieldSpec, seed: u64) -> Result<FanoRecord, GeometryError> {
    let mut last = None;
    for attempt in 0..RESAMPLE_BUDGET {
        let s = derive_seed(seed, 40 + attempt);
        let (quadric, curve) = genus2_curve_deg7_on_quadric(field, s)?;
        let q = quadric.gens()[0].clone();
        let divisor = quadric_divisor(&q, &curve)?;
        match quadric_image(10, quadric, curve, divisor, s) {
            Ok(f) => return Ok(f),
            Err(e @ GeometryError::Unstable(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| GeometryError::RetryBudget("V_18".into())))
}

/// The surface cut on Q by the other quadric through the curve, if unique.
fn quadric_divisor(q: &Poly, curve: &Subscheme) -> Result<Option<Subscheme>, GeometryError> {
    let ring = curve.ring().clone();
    let quadrics: Vec<Poly> = curve.gens().iter().filter(|g| g.degree() == 2).cloned().collect();
    let others = minimal_generators(&ring, std::slice::from_ref(q), &quadrics);
    if others.len() != 1 {
        return Ok(None);
    }
    Ok(Some(Subscheme::new(Ideal::new(&ring, vec![q.clone(), others[0].clone()])?, 2, Sampler::Slice)))
}

/// V_22 ⊂ PP^13: a smooth quadric Q ⊂ PP^4 mapped by the quintics double along
/// a quadratically normal rational sextic Γ ⊂ Q. The unique member of
/// |I_{Γ/Q}(2)| is contracted onto a conic, which is carried along.
pub fn v22(field: FieldSpec, seed: u64) -> Result<FanoRecord, GeometryError> {
    let mut last = None;
    for attempt in 0..RESAMPLE_BUDGET {
        let s = derive_seed(seed, 60 + attempt);
        let gamma = rational_curve(field, 6, 4, s)?;
        let quadrics: Vec<Poly> = gamma.gens().iter().filter(|g| g.degree() == 2).cloned().collect();
        if quadrics.len() != 2 {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(s, 1));
        let q = combine(&random_matrix(field, 1, 2, &mut rng), &quadrics).remove(0);
        if quadric_rank(&q) != 5 {
            continue;
        }
        let ring = gamma.ring().clone();
        let divisor = quadric_divisor(&q, &gamma)?;
        let quadric = Subscheme::new(Ideal::new(&ring, vec![q])?, 3, Sampler::Slice);
        match quadric_image(12, quadric, gamma, divisor, s) {
            Ok(f) => return Ok(f),
            Err(e @ GeometryError::Unstable(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| GeometryError::RetryBudget("V_22".into())))
}

/// The conic onto which the quadric divisor through the blown-up curve is
/// contracted (V_18 and V_22).
pub fn contracted_conic(f: &FanoRecord, seed: u64) -> Result<Subscheme, GeometryError> {
    let (Some(map), Some(data)) = (&f.parameterization, &f.quadric_data) else {
        return Err(GeometryError::Invalid("no contracted divisor".into()));
    };
    let Some(divisor) = &data.contracted else {
        return Err(GeometryError::Invalid("no contracted divisor".into()));
    };
    let ring = f.threefold.ring().clone();
    let sampled =
        Subscheme::new(Ideal::zero(&ring), 1, Sampler::Image { source: divisor.clone(), forms: map.forms.clone() });
    let ideal = ideal_through_points(&sampled, 2, &FormsOptions::with_seed(seed))?;
    let conic = Subscheme::new(Ideal::new(&ring, ideal.gens)?, 1, Sampler::Slice);
    let h = conic.hilbert()?;
    if (h.dim, h.degree) != (1, 2) {
        return Err(GeometryError::Unstable("contracted divisor is not a conic".into()));
    }
    Ok(conic)
}

/// A line on the threefold: the image of a line in Q meeting the blown-up
/// curve twice (quintics double along the curve restrict to degree 5 - 4).
fn bisecant_line_image(f: &FanoRecord, seed: u64) -> Result<Option<Subscheme>, GeometryError> {
    let (Some(map), Some(data)) = (&f.parameterization, &f.quadric_data) else {
        return Err(GeometryError::Invalid("no quadric parameterization".into()));
    };
    let ring = data.quadric.ring().clone();
    let field = ring.field;
    let q = &data.quadric.gens()[0];
    let c1 = data.curve.random_point(seed)?;
    let tangent: Vec<u32> = (0..ring.nvars).map(|j| q.derivative(j).eval(c1.coords())).collect();
    let mut gens = data.curve.gens().to_vec();
    gens.push(Poly::linear(&ring, &tangent));
    let section = Subscheme::new(Ideal::new(&ring, gens)?, 0, Sampler::Slice);
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 1));
    let Some(c2) = section.sample_batch(&mut rng)?.into_iter().find(|p| *p != c1) else { return Ok(None) };
    let line = PolyRing::grevlex(field, 2);
    let (l, mu) = (Poly::var(&line, 0), Poly::var(&line, 1));
    let param: Vec<Poly> =
        (0..ring.nvars).map(|i| l.scale(c1.coords()[i]).add(&mu.scale(c2.coords()[i]))).collect();
    let forms = strip_common_factor(&map.forms.iter().map(|g| g.substitute(&line, &param)).collect::<Vec<_>>());
    if forms.iter().all(|g| g.is_zero()) || forms[0].degree() != 1 {
        return Ok(None);
    }
    let target = f.threefold.ring().clone();
    let source = Arc::new(Subscheme::projective_space(field, 1));
    let sampled = Subscheme::new(Ideal::zero(&target), 1, Sampler::Image { source, forms });
    let ideal = ideal_through_points(&sampled, 1, &FormsOptions::with_seed(derive_seed(seed, 2)))?;
    if ideal.gens.len() + 2 != target.nvars {
        return Ok(None);
    }
    let l = Subscheme::new(Ideal::new(&target, ideal.gens)?, 1, sampled.sampler().clone());
    Ok(Some(l))
}

/// A conic on the threefold: the image of a conic in Q meeting the blown-up
/// curve in four points (degree 10 - 8). Projecting the curve from a secant
/// line c1c2 gives a nodal plane curve; the plane spanned by the line and the
/// fibre over a node meets the curve in four points.
fn four_secant_conic_image(f: &FanoRecord, seed: u64) -> Result<Option<Subscheme>, GeometryError> {
    let (Some(map), Some(data)) = (&f.parameterization, &f.quadric_data) else {
        return Err(GeometryError::Invalid("no quadric parameterization".into()));
    };
    let ring = data.quadric.ring().clone();
    let field = ring.field;
    let pts = data.curve.sample(2, seed)?;
    if pts[0] == pts[1] {
        return Ok(None);
    }
    let proj = forms_through_points(&ring, 1, &pts);
    let plane_curve = Subscheme::new(
        Ideal::zero(&PolyRing::grevlex(field, 3)),
        1,
        Sampler::Image { source: data.curve.clone(), forms: proj.clone() },
    );
    let ideal = ideal_through_points(&plane_curve, 6, &FormsOptions::with_seed(derive_seed(seed, 1)))?;
    let [quintic] = ideal.gens.as_slice() else { return Ok(None) };
    let mut sing = vec![quintic.clone()];
    sing.extend((0..3).map(|j| quintic.derivative(j)));
    let nodes = Subscheme::new(Ideal::new(quintic.ring(), sing)?, 0, Sampler::Slice);
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 2));
    let Some(node) = nodes.sample_batch(&mut rng)?.into_iter().next() else { return Ok(None) };
    let y = node.coords();
    let plane_eqs =
        [(0, 1), (0, 2), (1, 2)].map(|(i, j)| proj[i].scale(y[j]).sub(&proj[j].scale(y[i]))).to_vec();
    let chart = LinearChart::new(&ring, &plane_eqs, Some(&pts[0]))?;
    if chart.dim() != 2 {
        return Ok(None);
    }
    // conic q = 0 in the plane through e0, parameterized by lines through e0
    let q = chart.pull(&data.quadric.gens()[0]);
    let line = PolyRing::grevlex(field, 2);
    let (l, mu) = (Poly::var(&line, 0), Poly::var(&line, 1));
    let u = [Poly::zero(&line), l.clone(), mu.clone()];
    let qu = q.substitute(&line, &u);
    let grad: Vec<u32> = (0..3).map(|j| q.derivative(j).eval(&[1, 0, 0])).collect();
    let b = l.scale(grad[1]).add(&mu.scale(grad[2]));
    let chart_param = [qu, b.mul(&l).neg(), b.mul(&mu).neg()];
    let ambient_param: Vec<Poly> = (0..ring.nvars)
        .map(|i| (0..3).fold(Poly::zero(&line), |acc, j| acc.add(&chart_param[j].scale(chart.basis.get(i, j)))))
        .collect();
    if !data.quadric.gens()[0].substitute(&line, &ambient_param).is_zero() {
        return Ok(None);
    }
    let forms: Vec<Poly> = map.forms.iter().map(|g| g.substitute(&line, &ambient_param)).collect();
    let target = f.threefold.ring().clone();
    let source = Arc::new(Subscheme::projective_space(field, 1));
    let sampled = Subscheme::new(Ideal::zero(&target), 1, Sampler::Image { source, forms });
    let ideal = ideal_through_points(&sampled, 2, &FormsOptions::with_seed(derive_seed(seed, 3)))?;
    let conic = Subscheme::new(Ideal::new(&target, ideal.gens)?, 1, sampled.sampler().clone());
    let h = conic.hilbert()?;
    Ok(((h.dim, h.degree) == (1, 2)).then_some(conic))
}

fn mark_image(f: &mut FanoRecord, marking: FanoMarking, seed: u64) -> Result<(), GeometryError> {
    match marking {
        FanoMarking::None => {}
        FanoMarking::Point => {
            for attempt in 0..RESAMPLE_BUDGET {
                let p = f.threefold.random_point(derive_seed(seed, 80 + attempt))?;
                if is_smooth_at(&f.threefold, &p)? {
                    f.point = Some(p);
                    return Ok(());
                }
            }
            return Err(GeometryError::RetryBudget("no smooth marked point".into()));
        }
        FanoMarking::Conic if f.g == 12 => f.curve = Some(Arc::new(contracted_conic(f, derive_seed(seed, 90))?)),
        FanoMarking::Conic => {
            for attempt in 0..RESAMPLE_BUDGET {
                match four_secant_conic_image(f, derive_seed(seed, 120 + attempt)) {
                    Ok(Some(c)) => {
                        f.curve = Some(Arc::new(c));
                        return Ok(());
                    }
                    Ok(None) | Err(GeometryError::Unstable(_)) | Err(GeometryError::RetryBudget(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            return Err(GeometryError::RetryBudget("no four-secant conic in the quadric".into()));
        }
        FanoMarking::Line => {
            for attempt in 0..RESAMPLE_BUDGET {
                match bisecant_line_image(f, derive_seed(seed, 100 + attempt)) {
                    Ok(Some(l)) => {
                        f.curve = Some(Arc::new(l));
                        return Ok(());
                    }
                    Ok(None) | Err(GeometryError::Unstable(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            return Err(GeometryError::RetryBudget("no bisecant line in the quadric".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_eight_threefold_through_a_point() {
        let f = fano_threefold(FieldSpec::default(), 8, FanoMarking::Point, 1).unwrap();
        let x = &f.threefold;
        assert_eq!(x.ambient_dim(), 9);
        let h = x.hilbert().unwrap();
        assert_eq!((h.dim, h.degree), (3, 14));
        assert!(x.contains_point(f.point.as_ref().unwrap()));
    }

    #[test]
    fn lines_and_conics_on_genus_seven() {
        for (marking, degree) in [(FanoMarking::Line, 1), (FanoMarking::Conic, 2)] {
            let f = fano_threefold(FieldSpec::default(), 7, marking, 2).unwrap();
            let c = f.curve.as_ref().unwrap();
            assert_eq!(c.hilbert().unwrap().degree, degree);
            assert!(c.sample(5, 1).unwrap().iter().all(|p| f.threefold.contains_point(p)));
        }
    }

    #[test]
    fn v22_and_its_conic() {
        let f = fano_threefold(FieldSpec::default(), 12, FanoMarking::Conic, 3).unwrap();
        let x = &f.threefold;
        assert_eq!(x.ambient_dim(), 13);
        assert_eq!(x.gens().len(), 45);
        let h = x.hilbert().unwrap();
        assert_eq!((h.dim, h.degree), (3, 22));
        let c = f.curve.as_ref().unwrap();
        assert!(c.sample(5, 1).unwrap().iter().all(|p| x.contains_point(p)));
    }

    #[test]
    fn v18_through_a_point() {
        let f = fano_threefold(FieldSpec::default(), 10, FanoMarking::Point, 4).unwrap();
        let x = &f.threefold;
        assert_eq!(x.ambient_dim(), 11);
        let h = x.hilbert().unwrap();
        assert_eq!((h.dim, h.degree), (3, 18));
    }

    #[test]
    fn quadric_threefolds_carry_lines_and_conics() {
        for (g, marking, degree) in [(10, FanoMarking::Conic, 2), (10, FanoMarking::Line, 1), (12, FanoMarking::Line, 1)] {
            let f = fano_threefold(FieldSpec::default(), g, marking, 3).unwrap();
            let c = f.curve.as_ref().unwrap();
            let h = c.hilbert().unwrap();
            assert_eq!((h.dim, h.degree), (1, degree), "genus {g}");
            assert!(c.sample(5, 1).unwrap().iter().all(|p| f.threefold.contains_point(p)));
        }
    }
}
