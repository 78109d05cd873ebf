use std::sync::Arc;

use super::{maximal_minors, subsets, ModelRecord};
use crate::algebra::{FieldSpec, Poly, Ring};
use crate::geometry::{image, FormsOptions, GeometryError, RationalMap, Subscheme};

/// G(k, n) of k-planes in PP^n in its Plücker embedding: the image of the
/// (k+1) x (n+1) matrices under their maximal minors, with ideal interpolated
/// in degree <= 2.
pub fn grassmannian(field: FieldSpec, k: usize, n: usize, seed: u64) -> Result<ModelRecord, GeometryError> {
    if k >= n {
        return Err(GeometryError::Invalid(format!("no Grassmannian G({k},{n})")));
    }
    let (rows, cols) = (k + 1, n + 1);
    let source = Arc::new(Subscheme::projective_space(field, rows * cols - 1));
    let r = source.ring().clone();
    let m: Vec<Vec<Poly>> = (0..rows).map(|i| (0..cols).map(|j| Poly::var(&r, i * cols + j)).collect()).collect();
    let map = RationalMap::new(source, maximal_minors(&m))?;
    let (variety, _) = image(&map, 2, &FormsOptions::with_seed(seed))?;
    Ok(ModelRecord {
        name: format!("G({k},{n})"),
        variety: Arc::new(variety),
        parameterization: Some(map),
        base_locus: None,
    })
}

/// The three-term Plücker quadrics of G(1, n), in the coordinates p_ij (i < j,
/// lexicographic) occupying variables offset.. of `ring`.
pub fn plucker_quadrics(ring: &Ring, n: usize, offset: usize) -> Vec<Poly> {
    let pairs = subsets(n + 1, 2);
    let p = |i: usize, j: usize| {
        let idx = pairs.iter().position(|s| s[0] == i && s[1] == j).unwrap();
        Poly::var(ring, offset + idx)
    };
    subsets(n + 1, 4)
        .into_iter()
        .map(|s| {
            let (a, b, c, d) = (s[0], s[1], s[2], s[3]);
            p(a, b).mul(&p(c, d)).sub(&p(a, c).mul(&p(b, d))).add(&p(a, d).mul(&p(b, c)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ideal;

    #[test]
    fn projective_plane_is_its_own_grassmannian() {
        let g = grassmannian(FieldSpec::default(), 1, 2, 1).unwrap();
        assert_eq!(g.variety.ambient_dim(), 2);
        assert!(g.variety.gens().is_empty());
        assert_eq!(g.variety.dim(), 2);
    }

    #[test]
    fn lines_in_four_space() {
        let g = grassmannian(FieldSpec::default(), 1, 4, 2).unwrap();
        let v = &g.variety;
        assert_eq!(v.gens().len(), 5);
        let h = v.hilbert().unwrap();
        assert_eq!((h.dim, h.degree), (6, 5));
        // interpolated quadrics span the classical Plücker relations
        let explicit = Ideal::new(v.ring(), plucker_quadrics(v.ring(), 4, 0)).unwrap();
        assert!(v.ideal().same_ideal(&explicit).unwrap());
    }
}
