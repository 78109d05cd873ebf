//! Mukai models as images of projective spaces under forms through a fixed
//! base locus in a hyperplane.

use std::sync::Arc;

use super::grassmannian::plucker_quadrics;
use super::{det, ModelRecord};
use crate::algebra::{FieldSpec, Ideal, Poly, Ring};
use crate::geometry::section::independent_by_degree;
use crate::geometry::{image, FormsOptions, GeometryError, RationalMap, Sampler, Subscheme};

/// The Mukai model of genus g: Σ_6 (cone over G(1,4)), Σ_7 = OG(5,10),
/// Σ_8 = G(1,5), Σ_9 = LG(3,6). Genus 10 and 12 are the Fano threefolds
/// V_18 and V_22 (see [`super::fano`]).
pub fn mukai_model(field: FieldSpec, g: u32, seed: u64) -> Result<ModelRecord, GeometryError> {
    match g {
        6..=9 => parameterized_model(field, g, seed),
        10 | 12 => {
            let f = super::fano::fano_threefold(field, g, super::FanoMarking::None, seed)?;
            Ok(ModelRecord {
                name: format!("V_{}", 2 * g - 2),
                variety: f.threefold.clone(),
                parameterization: f.parameterization.clone(),
                base_locus: None,
            })
        }
        _ => Err(GeometryError::Invalid(format!("no Mukai model of genus {g}"))),
    }
}

/// Source dimension, base locus equations (in x_0..x_{m-1}, inside x_m = 0),
/// its dimension, and the forms defining the map.
struct Recipe {
    name: &'static str,
    m: usize,
    base: Vec<Poly>,
    base_dim: usize,
    forms: Vec<Poly>,
}

fn recipe(source: &Ring, g: u32) -> Recipe {
    let x = |i: usize| Poly::var(source, i);
    let m = source.nvars - 1;
    let last_times_all = || (0..=m).map(|i| x(m).mul(&x(i))).collect::<Vec<_>>();
    match g {
        6 => {
            // cone over PP^1 x PP^2 ⊂ PP^5 with vertex e_6, inside x_7 = 0
            let base = two_by_two_minors(&[vec![x(0), x(1), x(2)], vec![x(3), x(4), x(5)]]);
            let mut forms = base.clone();
            forms.extend(last_times_all());
            Recipe { name: "cone over G(1,4)", m, base, base_dim: 4, forms }
        }
        7 => {
            let base = plucker_quadrics(source, 4, 0);
            let mut forms = base.clone();
            forms.extend(last_times_all());
            Recipe { name: "OG(5,10)", m, base, base_dim: 6, forms }
        }
        8 => {
            let base = two_by_two_minors(&[(0..4).map(x).collect(), (4..8).map(x).collect()]);
            let mut forms = base.clone();
            forms.extend(last_times_all());
            Recipe { name: "G(1,5)", m, base, base_dim: 4, forms }
        }
        9 => {
            // Veronese surface: rank-one symmetric 3x3 matrices
            let sym = vec![vec![x(0), x(1), x(2)], vec![x(1), x(3), x(4)], vec![x(2), x(4), x(5)]];
            let mut base = Vec::new();
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                for (k, l) in [(0, 1), (0, 2), (1, 2)] {
                    base.push(sym[i][k].mul(&sym[j][l]).sub(&sym[i][l].mul(&sym[j][k])));
                }
            }
            let base = independent_by_degree(source, base);
            let x6 = x(6);
            let mut forms: Vec<Poly> = (0..=6).map(|i| x6.pow(2).mul(&x(i))).collect();
            forms.extend(base.iter().map(|q| x6.mul(q)));
            forms.push(det(&sym));
            Recipe { name: "LG(3,6)", m, base, base_dim: 2, forms }
        }
        _ => unreachable!(),
    }
}

fn source_dim(g: u32) -> usize {
    match g {
        6 => 7,
        7 => 10,
        8 => 8,
        9 => 6,
        _ => unreachable!(),
    }
}

fn two_by_two_minors(rows: &[Vec<Poly>]) -> Vec<Poly> {
    let n = rows[0].len();
    let mut out = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            out.push(rows[0][j].mul(&rows[1][k]).sub(&rows[0][k].mul(&rows[1][j])));
        }
    }
    out
}

fn parameterized_model(field: FieldSpec, g: u32, seed: u64) -> Result<ModelRecord, GeometryError> {
    let source = Arc::new(Subscheme::projective_space(field, source_dim(g)));
    let r = recipe(source.ring(), g);
    let mut base_gens = r.base.clone();
    base_gens.push(Poly::var(source.ring(), r.m));
    let base = Subscheme::new(Ideal::new(source.ring(), base_gens)?, r.base_dim, Sampler::Slice);
    let map = RationalMap::new(source, r.forms)?;
    let (variety, _) = image(&map, 2, &FormsOptions::with_seed(seed))?;
    Ok(ModelRecord {
        name: r.name.to_string(),
        variety: Arc::new(variety),
        parameterization: Some(map),
        base_locus: Some(Arc::new(base)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(g: u32, dim: usize, ambient: usize, quadrics: usize) -> ModelRecord {
        let m = mukai_model(FieldSpec::default(), g, g as u64).unwrap();
        assert_eq!(m.variety.dim(), dim);
        assert_eq!(m.variety.ambient_dim(), ambient);
        assert_eq!(m.variety.gens().len(), quadrics);
        assert!(m.variety.gens().iter().all(|q| q.degree() == 2));
        m
    }

    #[test]
    fn sigma_six_is_a_seven_dimensional_cone() {
        let m = check(6, 7, 10, 5);
        assert_eq!(m.variety.hilbert().unwrap().degree, 5);
    }

    #[test]
    fn sigma_eight_is_g15() {
        let m = check(8, 8, 14, 15);
        let h = m.variety.hilbert().unwrap();
        assert_eq!((h.dim, h.degree), (8, 14));
    }

    #[test]
    fn sigma_nine_is_lg36() {
        let m = check(9, 6, 13, 21);
        assert_eq!(m.variety.hilbert().unwrap().degree, 16);
    }

    #[test]
    fn base_locus_points_are_base_points() {
        let m = mukai_model(FieldSpec::default(), 9, 1).unwrap();
        let base = m.base_locus.unwrap();
        let map = m.parameterization.unwrap();
        for p in base.sample(5, 3).unwrap() {
            assert!(map.apply(&p).is_none());
        }
    }
}
