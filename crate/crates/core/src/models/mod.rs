//! Ambient models: Grassmannians, Mukai models, scrolls and Pfaffian loci,
//! and prime Fano threefolds.

pub mod fano;
pub mod grassmannian;
pub mod mukai;
pub mod scroll;

use std::sync::Arc;

use crate::algebra::Poly;
use crate::geometry::{RationalMap, Subscheme};

pub use fano::{fano_threefold, v22, FanoMarking, FanoRecord};
pub use grassmannian::{grassmannian, plucker_quadrics};
pub use mukai::mukai_model;
pub use scroll::{pfaffian_surface, pfaffians, segre_scroll, Scroll, ScrollKind};

/// A projective variety together with the parameterization used to sample it.
#[derive(Clone, Debug)]
pub struct ModelRecord {
    pub name: String,
    pub variety: Arc<Subscheme>,
    pub parameterization: Option<RationalMap>,
    /// Base locus of the parameterization in its source, when it is a
    /// map of projective space defined by forms through a known subscheme.
    pub base_locus: Option<Arc<Subscheme>>,
}

/// Determinant of a square matrix of polynomials, by expansion along the first row.
pub fn det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let ring = m[0][0].ring().clone();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = Poly::zero(&ring);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = m[0][j].mul(&det(&minor));
        out = if j % 2 == 0 { out.add(&term) } else { out.sub(&term) };
    }
    out
}

/// All maximal minors of a k x n matrix (k <= n), columns in lexicographic order.
pub fn maximal_minors(m: &[Vec<Poly>]) -> Vec<Poly> {
    let k = m.len();
    let n = m[0].len();
    subsets(n, k)
        .into_iter()
        .map(|cols| det(&m.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect::<Vec<_>>()))
        .collect()
}

/// k-element subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, PolyRing};

    #[test]
    fn determinant_of_generic_two_by_two() {
        let r = PolyRing::grevlex(FieldSpec::default(), 4);
        let x = |i| Poly::var(&r, i);
        let d = det(&[vec![x(0), x(1)], vec![x(2), x(3)]]);
        assert_eq!(d, x(0).mul(&x(3)).sub(&x(1).mul(&x(2))));
        assert_eq!(subsets(4, 2).len(), 6);
    }
}
