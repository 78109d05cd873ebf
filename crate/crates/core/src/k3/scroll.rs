//! K3 surfaces with an elliptic pencil of degree 3, 4 or 5, on rational
//! normal scrolls swept out by the spans of the pencil members.
//!
//! Base cases have L^2 in {4, 6, 8} (d = 3), {4, .., 10} (d = 4) or
//! {4, .., 12} (d = 5); higher genus is reached by re-embedding with
//! |L + mE|, which raises the genus by m·d.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{embed, k3_ci, K3Error, K3Record, Marked, RESAMPLE_BUDGET};
use crate::algebra::{FieldSpec, Ideal};
use crate::geometry::maps::{derive_seed, singular_sample};
use crate::geometry::section::independent_by_degree;
use crate::geometry::{ideal_through_points, FormsOptions, GeometryError, Sampler, Subscheme};
use crate::lattice::{LatticeK3, H1};
use crate::models::scroll::{pfaffian_surface, random_skew, segre_scroll, Scroll, ScrollKind};

const SMOOTHNESS_SAMPLE: usize = 30;

/// The four scroll examples, as (genus, pencil degree).
pub const SCROLL_EXAMPLES: [(u32, u32); 4] = [(5, 3), (6, 4), (6, 5), (7, 5)];

/// Genera of the base cases for pencil degree d.
pub fn base_genera(d: u32) -> &'static [u32] {
    match d {
        3 => &[3, 4, 5],
        4 => &[3, 4, 5, 6],
        5 => &[3, 4, 5, 6, 7],
        _ => &[],
    }
}

/// A K3 surface of genus g >= 3 with lattice Λ^{d,0}_g, d in {3, 4, 5}, with
/// one member of the elliptic pencil marked.
pub fn k3_scroll(field: FieldSpec, g: u32, d: u32, seed: u64) -> Result<K3Record, K3Error> {
    let Some(&g0) = base_genera(d).iter().find(|&&g0| g0 <= g && (g - g0) % d == 0) else {
        return Err(K3Error::Unsupported(format!("no scroll construction for genus {g} and pencil degree {d}")));
    };
    let base = if SCROLL_EXAMPLES.contains(&(g0, d)) {
        scroll_example(field, g0, d, seed)?
    } else {
        k3_ci(field, g0, d, 0, seed)?
    };
    let m = ((g - g0) / d) as i64;
    if m == 0 {
        return Ok(base);
    }
    let mut rec = rebase(embed(&base, 1, m, derive_seed(seed, 0x5c))?)?;
    rec.push_trace("k3_scroll", json!({"g": g, "d": d, "base_genus": g0, "m": m}));
    Ok(rec)
}

/// Rewrites the lattice in the basis (current polarization, marked class).
/// Only valid when the polarization is h1 + m h2, a unimodular change of basis.
pub fn rebase(mut k: K3Record) -> Result<K3Record, K3Error> {
    let (Some(l), 1) = (k.lattice, k.polarization.a) else {
        return Ok(k);
    };
    let p = k.polarization;
    k.lattice = Some(LatticeK3::new(l.genus_of(p), l.dot(p, crate::lattice::H2), l.n)?);
    k.polarization = H1;
    Ok(k)
}

/// One of the four scroll examples: (5,3) a (2,3) divisor on PP^1 x PP^2;
/// (6,4) forms of bidegree (1,2) and (2,2) on the cone in PP^6; (6,5)
/// Pfaffians of a (1,1) matrix on a rank-4 quadric; (7,5) Pfaffians of the
/// mixed pattern on the cone in PP^7.
pub fn scroll_example(field: FieldSpec, g: u32, d: u32, seed: u64) -> Result<K3Record, K3Error> {
    let kind = match (g, d) {
        (5, 3) => ScrollKind::P1xP2InP5,
        (6, 4) => ScrollKind::ConeP1xP2InP6,
        (6, 5) => ScrollKind::Rank4QuadricInP6,
        (7, 5) => ScrollKind::ConeP1xP2InP7,
        _ => return Err(K3Error::Unsupported(format!("no scroll example of genus {g} and pencil degree {d}"))),
    };
    let scroll = segre_scroll(field, kind)?;
    let lattice = LatticeK3::new(g as i64, d as i64, 0)?;
    let mut last = None;
    for attempt in 0..RESAMPLE_BUDGET {
        let s = derive_seed(seed, attempt);
        match example_attempt(&scroll, g, d, s) {
            Ok(Some((surface, pencil))) => {
                let mut rec = K3Record {
                    surface: Arc::new(surface),
                    marked: Marked::Curve(Arc::new(pencil)),
                    lattice: Some(lattice),
                    polarization: H1,
                    genus: g as i64,
                    seed,
                    trace: vec![],
                };
                rec.push_trace("scroll_example", json!({"g": g, "d": d, "scroll": format!("{kind:?}"), "attempt": attempt}));
                return Ok(rec);
            }
            Ok(None) => {}
            Err(e @ (GeometryError::Unstable(_) | GeometryError::RetryBudget(_))) => last = Some(e),
            Err(e) => return Err(e.into()),
        }
    }
    Err(K3Error::Construction(format!(
        "scroll example ({g}, {d}): resample budget exhausted ({})",
        last.map(|e| e.to_string()).unwrap_or_else(|| "singular surfaces".into())
    )))
}

fn example_attempt(scroll: &Scroll, g: u32, d: u32, seed: u64) -> Result<Option<(Subscheme, Subscheme)>, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let surface = match (g, d) {
        (5, 3) => scroll.cut(&[scroll.random_form(2, 3, &mut rng)], 2)?,
        (6, 4) => scroll.cut(&[scroll.random_form(1, 2, &mut rng), scroll.random_form(2, 2, &mut rng)], 2)?,
        (6, 5) => {
            let pattern = vec![vec![Some((1, 1)); 5]; 5];
            pfaffian_surface(scroll, &random_skew(scroll, &pattern, &mut rng))?
        }
        _ => {
            // the printed (1,0) entries have class H - R: K_S = K_X + t with
            // t = 4H + (entry class) must vanish, and K_X = -5H + R
            let (h, r) = (Some((1, 1)), Some((0, 1)));
            let pattern = vec![
                vec![None, None, h, h, h],
                vec![None, None, h, h, h],
                vec![h, h, None, r, r],
                vec![h, h, r, None, r],
                vec![h, h, r, r, None],
            ];
            pfaffian_surface(scroll, &random_skew(scroll, &pattern, &mut rng))?
        }
    };
    if !singular_sample(&surface, SMOOTHNESS_SAMPLE, derive_seed(seed, 1))?.all_smooth() {
        return Ok(None);
    }
    let field = scroll.cox.field;
    let (a, b) = (field.random(&mut rng), field.random_nonzero(&mut rng));
    Ok(Some((surface.clone(), pencil_member(scroll, &surface, a, b, derive_seed(seed, 2))?)))
}

/// The member of the elliptic pencil over (a : b): the surface cut by the
/// span of the ruling, with ideal interpolated up to degree 3.
pub fn pencil_member(scroll: &Scroll, surface: &Subscheme, a: u32, b: u32, seed: u64) -> Result<Subscheme, GeometryError> {
    let ring = surface.ring();
    let mut gens = surface.gens().to_vec();
    gens.extend(scroll.ruling_forms(a, b));
    let cut = Subscheme::new(Ideal::new(ring, independent_by_degree(ring, gens))?, 1, Sampler::Slice);
    let ideal = ideal_through_points(&cut, 3, &FormsOptions::with_seed(seed))?;
    Ok(Subscheme::new(Ideal::new(ring, ideal.gens)?, 1, Sampler::Slice))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trigonal_genus_five_on_segre_threefold() {
        let k = k3_scroll(FieldSpec::default(), 5, 3, 1).unwrap();
        let h = k.surface.hilbert().unwrap();
        assert_eq!((h.dim, h.degree, h.sectional_genus()), (2, 8, Some(5)));
        let e = k.curve().unwrap().hilbert().unwrap();
        assert_eq!((e.dim, e.degree, e.sectional_genus()), (1, 3, Some(1)));
    }
}
