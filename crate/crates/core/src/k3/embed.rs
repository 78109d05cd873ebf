//! Re-embedding a lattice-polarized K3 surface by |aL + bC|, where L is the
//! current hyperplane class and C the marked class.
//!
//! b = 0 uses all forms of degree a, b = -1 the forms of degree a through the
//! marked curve or node. For b = 1, a form F of the smallest degree k with
//! kL - C effective and of positive degree is chosen through C; on S it cuts
//! C + D', and the forms of degree a + k through D' restrict to |aL + C|.
//! Larger b iterates the b = 1 step.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{K3Error, K3Record, Marked, RESAMPLE_BUDGET};
use crate::algebra::linalg::Matrix;
use crate::algebra::monomial::monomials_of_degree;
use crate::algebra::Poly;
use crate::curves::{combine, random_matrix};
use crate::geometry::maps::derive_seed;
use crate::geometry::section::hypersurface_section;
use crate::geometry::{
    forms_through, forms_through_points, image, FormsOptions, GeometryError, RationalMap, Sampler, Subscheme,
};
use crate::lattice::{DivisorClass, LatticeK3, H2};

/// Largest degree k tried for the hypersurface through C in a b = 1 step.
pub const RESIDUAL_DEGREE_CAP: i64 = 4;
/// Degree up to which the ideal of an embedded surface or curve is interpolated.
pub const IDEAL_DEGREE: u32 = 3;

/// The class aL + bC in the lattice basis.
pub fn target_class(k: &K3Record, a: i64, b: i64) -> DivisorClass {
    let p = k.polarization;
    DivisorClass::new(a * p.a, a * p.b + b)
}

/// Checks that aL + bC is big and passes the nef screening; returns the class
/// and its lattice.
pub fn screen(k: &K3Record, a: i64, b: i64) -> Result<(LatticeK3, DivisorClass), K3Error> {
    let Some(lattice) = k.lattice else {
        return Err(K3Error::Unsupported("re-embedding needs a lattice-polarized surface".into()));
    };
    let class = target_class(k, a, b);
    let square = lattice.square(class);
    if square <= 0 {
        return Err(K3Error::Rejected { class, reason: format!("not big: square {square} <= 0") });
    }
    let nef = lattice.is_big_nef_candidate(class);
    if !nef.candidate {
        let w: Vec<String> = nef
            .witnesses
            .iter()
            .map(|r| format!("{r} with ({class}).({r}) = {}", lattice.dot(class, *r)))
            .collect();
        return Err(K3Error::Rejected { class, reason: format!("not nef: effective (-2)-class {}", w.join(", ")) });
    }
    Ok((lattice, class))
}

/// The surface embedded by |aL + bC|, with the marked curve transported.
pub fn embed(k: &K3Record, a: i64, b: i64, seed: u64) -> Result<K3Record, K3Error> {
    let (lattice, class) = screen(k, a, b)?;
    if b <= -2 {
        return Err(K3Error::Unsupported(format!("coefficient b = {b} of the marked class: only b >= -1 is supported")));
    }
    if b > 0 && k.node().is_some() {
        return Err(K3Error::Unsupported(
            "positive multiples of the exceptional class of a node are not supported".into(),
        ));
    }
    if b >= 2 {
        let step = embed(k, a, 1, seed)?;
        return embed(&step, 1, b - 1, derive_seed(seed, 0xb));
    }
    let expected = (2 + lattice.square(class) / 2) as usize;
    let mut last = None;
    for attempt in 0..RESAMPLE_BUDGET {
        let s = derive_seed(seed, attempt);
        match embed_attempt(k, a, b, expected, s) {
            Ok((forms, mut params)) => {
                let mut out = finish(k, lattice, class, b, forms, s)?;
                params["attempt"] = json!(attempt);
                out.push_trace("embed", params);
                return Ok(out);
            }
            Err(e @ (GeometryError::Unstable(_) | GeometryError::RetryBudget(_))) => last = Some(e),
            Err(e) => return Err(e.into()),
        }
    }
    Err(K3Error::Construction(format!(
        "embedding by {class}: resample budget exhausted ({})",
        last.map(|e| e.to_string()).unwrap_or_default()
    )))
}

/// Forms spanning the linear system on S, with step parameters.
fn embed_attempt(k: &K3Record, a: i64, b: i64, expected: usize, seed: u64) -> Result<(Vec<Poly>, Value), GeometryError> {
    let s = &k.surface;
    let ring = s.ring();
    let opts = FormsOptions::with_seed(derive_seed(seed, 1));
    let mut params = json!({"a": a, "b": b});
    let forms = match (b, &k.marked) {
        (0, _) => {
            let monos = monomials_of_degree(ring.nvars, a as u32);
            monos.iter().map(|m| Poly::from_terms(ring, vec![(m.clone(), 1)])).collect()
        }
        (-1, Marked::Curve(c)) => forms_through(c, a as u32, 1, &opts)?,
        (-1, Marked::Node(p)) => forms_through_points(ring, a as u32, std::slice::from_ref(p)),
        (1, Marked::Curve(c)) => {
            let (forms, step) = residual_forms(k, c, a, seed)?;
            params["residual"] = step;
            forms
        }
        _ => return Err(GeometryError::Invalid("the marked class has no representative".into())),
    };
    let forms = independent_on(s, forms, derive_seed(seed, 2))?;
    if forms.len() != expected {
        return Err(GeometryError::Unstable(format!(
            "linear system has dimension {}, expected 2 + D^2/2 = {expected}",
            forms.len()
        )));
    }
    params["dimension"] = json!(forms.len());
    Ok((forms, params))
}

/// A b = 1 step: forms of degree a + k through the residual D' of C in a
/// degree-k hypersurface section.
fn residual_forms(k: &K3Record, c: &Subscheme, a: i64, seed: u64) -> Result<(Vec<Poly>, Value), GeometryError> {
    let l = k.lattice.expect("screened");
    let (pp, pc, n) = (l.square(k.polarization), l.dot(k.polarization, H2), l.n);
    let Some(deg) = (1..=RESIDUAL_DEGREE_CAP).find(|&t| t * t * pp - 2 * t * pc + n >= -2 && t * pp - pc > 0) else {
        return Err(GeometryError::Invalid(format!("no residual hypersurface of degree <= {RESIDUAL_DEGREE_CAP}")));
    };
    let s = &k.surface;
    let system = forms_through(c, deg as u32, 1, &FormsOptions::with_seed(derive_seed(seed, 3)))?;
    if system.is_empty() {
        return Err(GeometryError::Unstable(format!("no forms of degree {deg} through the curve")));
    }
    let pts = s.sample(8, derive_seed(seed, 4))?;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 5));
    let f = combine(&random_matrix(s.field(), 1, system.len(), &mut rng), &system).remove(0);
    if pts.iter().all(|p| f.eval(p.coords()) == 0) {
        return Err(GeometryError::Unstable("hypersurface through the curve contains the surface".into()));
    }
    let carrier = Arc::new(hypersurface_section(s, &f)?);
    let residual = Subscheme::new(
        carrier.ideal().clone(),
        1,
        Sampler::Residual { carrier, exclude: c.gens().to_vec() },
    );
    let forms = forms_through(&residual, (a + deg) as u32, 1, &FormsOptions::with_seed(derive_seed(seed, 6)))?;
    Ok((forms, json!({"k": deg, "residual_degree": deg * pp - pc})))
}

/// A maximal subset of `forms` linearly independent as functions on `s`.
fn independent_on(s: &Subscheme, forms: Vec<Poly>, seed: u64) -> Result<Vec<Poly>, GeometryError> {
    let pts = s.sample(forms.len() + 32, seed)?;
    let rows = pts.iter().map(|p| forms.iter().map(|f| f.eval(p.coords())).collect()).collect();
    let pivots = Matrix::from_rows(s.field(), forms.len(), rows).rref();
    Ok(pivots.into_iter().map(|j| forms[j].clone()).collect())
}

fn finish(
    k: &K3Record,
    lattice: LatticeK3,
    class: DivisorClass,
    b: i64,
    forms: Vec<Poly>,
    seed: u64,
) -> Result<K3Record, K3Error> {
    let map = RationalMap::new(k.surface.clone(), forms.clone())?;
    let (surface, _) = image(&map, IDEAL_DEGREE, &FormsOptions::with_seed(derive_seed(seed, 7)))?;
    if surface.dim() != 2 {
        return Err(K3Error::Construction(format!("image has dimension {}", surface.dim())));
    }
    let marked = match &k.marked {
        // a (-2)-curve with D·C = 0 is contracted to the node of the image
        Marked::Curve(c) if b >= 0 && lattice.dot(class, H2) == 0 => {
            let p = c.sample(1, derive_seed(seed, 8))?.remove(0);
            map.apply(&p).map(Marked::Node).unwrap_or(Marked::None)
        }
        Marked::Curve(c) if b >= 0 => {
            let (curve, _) =
                image(&RationalMap::new(c.clone(), forms.clone())?, IDEAL_DEGREE, &FormsOptions::with_seed(derive_seed(seed, 8)))?;
            Marked::Curve(Arc::new(curve))
        }
        Marked::Node(p) if b == 0 => map.apply(p).map(Marked::Node).unwrap_or(Marked::None),
        _ => Marked::None,
    };
    Ok(K3Record {
        surface: Arc::new(surface),
        marked,
        lattice: Some(lattice),
        polarization: class,
        genus: lattice.genus_of(class),
        seed: k.seed,
        trace: k.trace.clone(),
    })
}
