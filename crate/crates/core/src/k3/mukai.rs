//! K3 surfaces as hyperplane sections of prime Fano threefolds, and
//! projection from a node.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{K3Error, K3Record, Marked, RESAMPLE_BUDGET};
use crate::algebra::{FieldSpec, Ideal, Poly};
use crate::curves::{combine, random_matrix};
use crate::geometry::maps::{derive_seed, jacobian, random_linear_forms, singular_sample, tangent_cone_rank};
use crate::geometry::section::{independent_by_degree, minimalize};
use crate::geometry::{
    forms_through_points, image, FormsOptions, GeometryError, LinearChart, PointP, RationalMap, Sampler, Subscheme,
};
use crate::lattice::LatticeK3;
use crate::models::fano::linear_forms_through;
use crate::models::{fano_threefold, FanoMarking};

/// Points sampled when checking that a section has only the expected singularities.
const SMOOTHNESS_SAMPLE: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Marking {
    None,
    Node,
    Line,
    Conic,
}

impl Marking {
    fn fano(self) -> FanoMarking {
        match self {
            Marking::None => FanoMarking::None,
            Marking::Node => FanoMarking::Point,
            Marking::Line => FanoMarking::Line,
            Marking::Conic => FanoMarking::Conic,
        }
    }

    fn degree(self) -> Option<i64> {
        match self {
            Marking::None => None,
            Marking::Node => Some(0),
            Marking::Line => Some(1),
            Marking::Conic => Some(2),
        }
    }
}

/// A hyperplane section of a prime Fano threefold X ⊂ PP^{g+1} of genus g:
/// general for `None`, tangent to X at the marked point for `Node`, and
/// containing the marked line or conic otherwise.
pub fn k3_mukai(field: FieldSpec, g: u32, marking: Marking, seed: u64) -> Result<K3Record, K3Error> {
    if !(6..=10).contains(&g) && g != 12 {
        return Err(K3Error::Unsupported(format!("no Mukai model of genus {g} in scope")));
    }
    let mut last = None;
    for attempt in 0..RESAMPLE_BUDGET {
        let s = derive_seed(seed, attempt);
        match mukai_attempt(field, g, marking, s) {
            Ok(Some(mut rec)) => {
                rec.seed = seed;
                rec.push_trace("k3_mukai", json!({"g": g, "marking": format!("{marking:?}"), "attempt": attempt}));
                return Ok(rec);
            }
            Ok(None) => {}
            Err(e @ (GeometryError::Unstable(_) | GeometryError::RetryBudget(_))) => last = Some(e),
            Err(e) => return Err(e.into()),
        }
    }
    Err(K3Error::Construction(format!(
        "genus-{g} section with {marking:?} marking: resample budget exhausted ({})",
        last.map(|e| e.to_string()).unwrap_or_else(|| "singular sections".into())
    )))
}

fn mukai_attempt(field: FieldSpec, g: u32, marking: Marking, seed: u64) -> Result<Option<K3Record>, GeometryError> {
    let fano = fano_threefold(field, g, marking.fano(), derive_seed(seed, 1))?;
    let x = &fano.threefold;
    let ambient = x.ring().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 2));
    let hyperplane = match marking {
        Marking::None => random_linear_forms(&ambient, 1, &mut rng).remove(0),
        Marking::Node => {
            let p = fano.point.as_ref().expect("marked point");
            let rows: Vec<Poly> = jacobian(x.gens(), p).row_space().iter().map(|r| Poly::linear(&ambient, r)).collect();
            combine(&random_matrix(field, 1, rows.len(), &mut rng), &rows).remove(0)
        }
        Marking::Line | Marking::Conic => {
            let c = fano.curve.as_ref().expect("marked curve");
            let pts = c.sample(8, derive_seed(seed, 3))?;
            linear_forms_through(&ambient, &pts, 1, &mut rng).remove(0)
        }
    };
    let chart = LinearChart::new(&ambient, &[hyperplane], fano.point.as_ref())?;
    let surface = chart.section(x, 1)?;
    let marked = match marking {
        Marking::None => Marked::None,
        Marking::Node => Marked::Node(chart.pull_point(fano.point.as_ref().unwrap()).expect("node in chart")),
        Marking::Line | Marking::Conic => Marked::Curve(Arc::new(chart.pull_subscheme(fano.curve.as_ref().unwrap())?)),
    };
    if !section_is_admissible(&surface, &marked, derive_seed(seed, 4))? {
        return Ok(None);
    }
    let lattice = marking.degree().map(|d| LatticeK3::new(g as i64, d, -2)).transpose().expect("hyperbolic");
    Ok(Some(K3Record {
        surface: Arc::new(surface),
        marked,
        lattice,
        polarization: crate::lattice::H1,
        genus: g as i64,
        seed,
        trace: vec![],
    }))
}

/// Smooth at sampled points, and at a marked node singular with a rank-3
/// tangent cone.
fn section_is_admissible(surface: &Subscheme, marked: &Marked, seed: u64) -> Result<bool, GeometryError> {
    if !singular_sample(surface, SMOOTHNESS_SAMPLE, seed)?.all_smooth() {
        return Ok(false);
    }
    match marked {
        Marked::Node(p) => Ok(tangent_cone_rank(surface, p, seed)? == (3, 3)),
        _ => Ok(true),
    }
}

/// Projection of a nodal K3 surface of genus g from its node: a K3 surface of
/// genus g-1 containing the conic onto which the exceptional curve maps (the
/// section of the image by the projected tangent space at the node).
pub fn node_project(k: &K3Record, seed: u64) -> Result<K3Record, K3Error> {
    let Some(node) = k.node() else {
        return Err(K3Error::Unsupported("projection from a node needs a node-marked surface".into()));
    };
    let s = &k.surface;
    let (tangent, rank) = tangent_cone_rank(s, node, derive_seed(seed, 1))?;
    if (tangent, rank) != (3, 3) {
        return Err(K3Error::Rejected {
            class: crate::lattice::H2,
            reason: format!("not a simple node: tangent space of dimension {tangent}, tangent cone of rank {rank}"),
        });
    }
    let ring = s.ring().clone();
    let forms = forms_through_points(&ring, 1, std::slice::from_ref(node));
    let map = RationalMap::new(s.clone(), forms.clone())?;
    let (projected, _) = image(&map, 3, &FormsOptions::with_seed(derive_seed(seed, 2)))?;
    if projected.dim() != 2 {
        return Err(K3Error::Construction(format!("projection has dimension {}", projected.dim())));
    }
    // the plane spanned by the images of the tangent directions at the node
    let target = projected.ring().clone();
    let tangent_space = jacobian(s.gens(), node).nullspace();
    let images: Vec<PointP> = tangent_space
        .iter()
        .filter_map(|w| PointP::new(ring.field, forms.iter().map(|f| f.eval(w)).collect()))
        .collect();
    let plane = forms_through_points(&target, 1, &images);
    let mut gens = plane.clone();
    gens.extend(projected.gens().iter().cloned());
    let gens = minimalize(&target, independent_by_degree(&target, gens));
    let conic = Subscheme::new(Ideal::new(&target, gens)?, 1, Sampler::Slice);
    let h = conic.hilbert()?;
    if (h.dim, h.degree) != (1, 2) {
        return Err(K3Error::Construction(format!(
            "exceptional curve maps to a curve of dimension {} and degree {}",
            h.dim, h.degree
        )));
    }
    let genus = k.genus - 1;
    let mut trace = k.trace.clone();
    trace.push(super::TraceStep { step: "node_project".into(), params: json!({"from_genus": k.genus}) });
    Ok(K3Record {
        surface: Arc::new(projected),
        marked: Marked::Curve(Arc::new(conic)),
        lattice: Some(LatticeK3::new(genus, 2, -2)?),
        polarization: crate::lattice::H1,
        genus,
        seed: k.seed,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodal_genus_seven_projects_to_genus_six_with_conic() {
        let f = FieldSpec::default();
        let nodal = k3_mukai(f, 7, Marking::Node, 5).unwrap();
        assert_eq!(nodal.ambient_dim(), 7);
        let h = nodal.surface.hilbert().unwrap();
        assert_eq!((h.dim, h.degree), (2, 12));
        let projected = node_project(&nodal, 6).unwrap();
        assert_eq!(projected.ambient_dim(), 6);
        let h = projected.surface.hilbert().unwrap();
        assert_eq!((h.dim, h.degree, h.sectional_genus()), (2, 10, Some(6)));
        let conic = projected.curve().unwrap();
        assert!(conic.sample(5, 1).unwrap().iter().all(|p| projected.surface.contains_point(p)));
    }
}
