//! K3 surfaces of genus 3, 4, 5 as complete intersections of type (4), (2,3)
//! and (2,2,2) containing a rational or elliptic curve, or with a node.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{K3Error, K3Record, Marked, RESAMPLE_BUDGET};
use crate::algebra::{FieldSpec, Ideal, Poly, Ring};
use crate::curves::{combine, elliptic_curve, random_matrix, rational_curve};
use crate::geometry::maps::{derive_seed, singular_sample, tangent_cone_rank};
use crate::geometry::point::random_vector;
use crate::geometry::{forms_through, FormsOptions, GeometryError, PointP, Sampler, Subscheme};
use crate::lattice::LatticeK3;

const SMOOTHNESS_SAMPLE: usize = 30;

/// Degrees of the complete intersection for genus 3, 4, 5.
pub fn ci_degrees(g: u32) -> &'static [u32] {
    match g {
        3 => &[4],
        4 => &[2, 3],
        5 => &[2, 2, 2],
        _ => &[],
    }
}

/// A K3 surface of genus g in {3,4,5} with lattice Λ^{d,n}_g: containing a
/// rational curve of degree d (n = -2, d >= 1), an elliptic curve of degree d
/// (n = 0), or with a node (d = 0, n = -2).
pub fn k3_ci(field: FieldSpec, g: u32, d: u32, n: i64, seed: u64) -> Result<K3Record, K3Error> {
    if ci_degrees(g).is_empty() {
        return Err(K3Error::Unsupported(format!("genus {g} is not a complete intersection")));
    }
    let lattice = LatticeK3::new(g as i64, d as i64, n)?;
    let mut last = None;
    for attempt in 0..RESAMPLE_BUDGET {
        let s = derive_seed(seed, attempt);
        let marked = match (d, n) {
            (0, -2) => None,
            (_, -2) => Some(rational_curve(field, d, g as usize, derive_seed(s, 1))?),
            (_, 0) => Some(elliptic_curve(field, d, g as usize, derive_seed(s, 1))?),
            _ => return Err(K3Error::Unsupported(format!("no complete intersection route for ({d}, {g}, {n})"))),
        };
        let result = match &marked {
            Some(c) => ci_through(c, g, s).map(|o| o.map(|surf| (surf, Marked::Curve(Arc::new(c.clone()))))),
            None => nodal_ci(field, g, s).map(|o| o.map(|(surf, p)| (surf, Marked::Node(p)))),
        };
        match result {
            Ok(Some((surface, marked))) => {
                let mut rec = K3Record {
                    surface: Arc::new(surface),
                    marked,
                    lattice: Some(lattice),
                    polarization: crate::lattice::H1,
                    genus: g as i64,
                    seed,
                    trace: vec![],
                };
                rec.push_trace("k3_ci", json!({"g": g, "d": d, "n": n, "attempt": attempt}));
                return Ok(rec);
            }
            Ok(None) => {}
            Err(e @ (GeometryError::Unstable(_) | GeometryError::RetryBudget(_))) => last = Some(e),
            Err(e) => return Err(e.into()),
        }
    }
    Err(K3Error::Construction(format!(
        "complete intersection of genus {g} through the curve: resample budget exhausted ({})",
        last.map(|e| e.to_string()).unwrap_or_else(|| "singular members".into())
    )))
}

/// A smooth complete intersection of genus g, without marking.
pub fn k3_ci_unmarked(field: FieldSpec, g: u32, seed: u64) -> Result<K3Record, K3Error> {
    let ring = crate::algebra::PolyRing::grevlex(field, g as usize + 1);
    for attempt in 0..RESAMPLE_BUDGET {
        let s = derive_seed(seed, attempt);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let forms: Vec<Poly> = ci_degrees(g).iter().map(|&e| random_form(&ring, e, &mut rng)).collect();
        let surface = Subscheme::new(Ideal::new(&ring, forms)?, 2, Sampler::Slice);
        if singular_sample(&surface, SMOOTHNESS_SAMPLE, derive_seed(s, 1))?.all_smooth() {
            let mut rec = K3Record {
                surface: Arc::new(surface),
                marked: Marked::None,
                lattice: None,
                polarization: crate::lattice::H1,
                genus: g as i64,
                seed,
                trace: vec![],
            };
            rec.push_trace("k3_ci", json!({"g": g, "attempt": attempt}));
            return Ok(rec);
        }
    }
    Err(K3Error::Construction(format!("no smooth complete intersection of genus {g}")))
}

fn random_form(ring: &Ring, e: u32, rng: &mut ChaCha8Rng) -> Poly {
    let monos = crate::algebra::monomial::monomials_of_degree(ring.nvars, e);
    Poly::from_coefficients(ring, &monos, &random_vector(ring.field, monos.len(), rng))
}

/// Random members of the linear systems |I_C(e)| for the complete
/// intersection degrees e, if the result is a smooth surface.
fn ci_through(curve: &Subscheme, g: u32, seed: u64) -> Result<Option<Subscheme>, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 2));
    let mut forms = Vec::new();
    for (i, &e) in ci_degrees(g).iter().enumerate() {
        let system = forms_through(curve, e, 1, &FormsOptions::with_seed(derive_seed(seed, 3 + i as u64)))?;
        if system.is_empty() {
            return Err(GeometryError::Unstable(format!("no forms of degree {e} through the curve")));
        }
        forms.push(combine(&random_matrix(curve.field(), 1, system.len(), &mut rng), &system).remove(0));
    }
    let surface = Subscheme::new(Ideal::new(curve.ring(), forms)?, 2, Sampler::Slice);
    let smooth = singular_sample(&surface, SMOOTHNESS_SAMPLE, derive_seed(seed, 9))?.all_smooth()
        && curve
            .sample(SMOOTHNESS_SAMPLE / 3, derive_seed(seed, 10))?
            .iter()
            .all(|p| crate::geometry::is_smooth_at(&surface, p).unwrap_or(false));
    Ok(smooth.then_some(surface))
}

/// A complete intersection whose last form is singular at a random point.
fn nodal_ci(field: FieldSpec, g: u32, seed: u64) -> Result<Option<(Subscheme, PointP)>, GeometryError> {
    let ring = crate::algebra::PolyRing::grevlex(field, g as usize + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 2));
    let p = PointP::new(field, random_vector(field, ring.nvars, &mut rng)).expect("nonzero");
    let point = Subscheme::linear(&ring, crate::geometry::forms_through_points(&ring, 1, std::slice::from_ref(&p)))?;
    let degrees = ci_degrees(g);
    let mut forms = Vec::new();
    for (i, &e) in degrees.iter().enumerate() {
        let m = if i + 1 == degrees.len() { 2 } else { 1 };
        let system = forms_through(&point, e, m, &FormsOptions::with_seed(derive_seed(seed, 3 + i as u64)))?;
        forms.push(combine(&random_matrix(field, 1, system.len(), &mut rng), &system).remove(0));
    }
    let surface = Subscheme::new(Ideal::new(&ring, forms)?, 2, Sampler::Slice);
    if !singular_sample(&surface, SMOOTHNESS_SAMPLE, derive_seed(seed, 9))?.all_smooth() {
        return Ok(None);
    }
    Ok((tangent_cone_rank(&surface, &p, derive_seed(seed, 10))? == (3, 3)).then_some((surface, p)))
}
