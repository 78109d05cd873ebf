//! Linear sections, presented in coordinates of the cutting subspace.

use std::sync::Arc;

use super::interp::minimal_generators;
use super::point::PointP;
use super::subscheme::{linear_matrix, Sampler, Subscheme};
use super::GeometryError;
use crate::algebra::linalg::{Echelon, Matrix};
use crate::algebra::monomial::monomials_of_degree;
use crate::algebra::{Ideal, Poly, PolyRing, Ring};

/// A linear subspace PP^k ⊂ PP^n with a chosen basis; column j of `basis` is
/// the image of the j-th coordinate point.
#[derive(Clone, Debug)]
pub struct LinearChart {
    pub basis: Matrix,
    pub ring: Ring,
}

impl LinearChart {
    /// Chart on the common zero set of `forms`. If `first` is given it must lie
    /// in the subspace and becomes the first coordinate point.
    pub fn new(ambient: &Ring, forms: &[Poly], first: Option<&PointP>) -> Result<Self, GeometryError> {
        let n = ambient.nvars;
        let mut kernel = linear_matrix(ambient, forms).nullspace();
        if kernel.is_empty() {
            return Err(GeometryError::Invalid("empty linear subspace".into()));
        }
        if let Some(p) = first {
            if forms.iter().any(|f| f.eval(p.coords()) != 0) {
                return Err(GeometryError::NotOnScheme);
            }
            // exchange one kernel vector for p, keeping a basis
            let mut ech = crate::algebra::linalg::Echelon::new(ambient.field, n);
            ech.insert(p.coords().to_vec());
            let mut chosen = vec![p.coords().to_vec()];
            for v in kernel {
                if ech.insert(v.clone()) {
                    chosen.push(v);
                }
            }
            kernel = chosen;
        }
        let k = kernel.len();
        let mut basis = Matrix::zeros(ambient.field, n, k);
        for (j, v) in kernel.iter().enumerate() {
            for (i, &x) in v.iter().enumerate() {
                basis.set(i, j, x);
            }
        }
        Ok(LinearChart { basis, ring: PolyRing::grevlex(ambient.field, k) })
    }

    pub fn dim(&self) -> usize {
        self.ring.nvars - 1
    }

    /// Ambient coordinates as linear forms in the chart variables.
    pub fn coordinate_forms(&self) -> Vec<Poly> {
        (0..self.basis.rows).map(|i| Poly::linear(&self.ring, self.basis.row(i))).collect()
    }

    /// Pulls an ambient form back to the chart.
    pub fn pull(&self, f: &Poly) -> Poly {
        f.substitute(&self.ring, &self.coordinate_forms())
    }

    pub fn push_point(&self, y: &PointP) -> Option<PointP> {
        PointP::new(self.ring.field, self.basis.mul_vec(y.coords()))
    }

    /// Chart coordinates of an ambient point of the subspace.
    pub fn pull_point(&self, x: &PointP) -> Option<PointP> {
        let field = self.ring.field;
        let (n, k) = (self.basis.rows, self.basis.cols);
        let mut aug = Matrix::zeros(field, n, k + 1);
        for i in 0..n {
            for j in 0..k {
                aug.set(i, j, self.basis.get(i, j));
            }
            aug.set(i, k, x.coords()[i]);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&k) || pivots.len() < k {
            return None;
        }
        let y: Vec<u32> = (0..k).map(|j| aug.get(j, k)).collect();
        PointP::new(field, y)
    }

    /// A subscheme contained in the subspace, in chart coordinates. Images keep
    /// their parameterization; anything else is sampled by slicing.
    pub fn pull_subscheme(&self, v: &Subscheme) -> Result<Subscheme, GeometryError> {
        let gens = independent_by_degree(&self.ring, v.gens().iter().map(|f| self.pull(f)).collect());
        let gens = minimalize(&self.ring, gens);
        let sampler = match v.sampler() {
            Sampler::Image { source, forms } => {
                let m = self.left_inverse();
                let pushed = (0..m.rows).map(|j| combine_forms(source.ring(), m.row(j), forms)).collect();
                Sampler::Image { source: source.clone(), forms: pushed }
            }
            _ => Sampler::Slice,
        };
        Ok(Subscheme::new(Ideal::new(&self.ring, gens)?, v.dim(), sampler))
    }

    /// Linear forms on the ambient space cutting out the subspace.
    pub fn equations(&self) -> Vec<Vec<u32>> {
        self.basis.transpose().nullspace()
    }

    /// A k x n matrix M with M * basis = identity.
    pub fn left_inverse(&self) -> Matrix {
        let field = self.ring.field;
        let (n, k) = (self.basis.rows, self.basis.cols);
        let mut bt = self.basis.transpose();
        let rows = bt.rref();
        let mut square = Matrix::zeros(field, k, k);
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..k {
                square.set(i, j, self.basis.get(r, j));
            }
        }
        let inv = square.inverse().expect("basis has full rank");
        let mut m = Matrix::zeros(field, k, n);
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..k {
                m.set(j, r, inv.get(j, i));
            }
        }
        m
    }

    /// The section of `v` by this subspace, of dimension `v.dim() - codim`.
    /// Hyperplane sections of images are sampled through the corresponding
    /// section of the source (deeper sections could meet the base locus of the
    /// map in excess dimension); anything else is sampled by slicing.
    pub fn section(&self, v: &Subscheme, codim: usize) -> Result<Subscheme, GeometryError> {
        if codim > v.dim() {
            return Err(GeometryError::Invalid("section of negative dimension".into()));
        }
        let gens = independent_by_degree(&self.ring, v.gens().iter().map(|g| self.pull(g)).collect());
        let sampler = match v.sampler() {
            Sampler::Image { source, forms } if codim == 1 && source.dim() >= 1 => {
                let mut cut = source.gens().to_vec();
                for w in self.equations() {
                    cut.push(combine_forms(source.ring(), &w, forms));
                }
                let cut = independent_by_degree(source.ring(), cut);
                let src = Subscheme::new(Ideal::new(source.ring(), cut)?, source.dim() - codim, Sampler::Slice);
                let m = self.left_inverse();
                let pushed = (0..m.rows).map(|j| combine_forms(source.ring(), m.row(j), forms)).collect();
                Sampler::Image { source: Arc::new(src), forms: pushed }
            }
            _ => Sampler::Slice,
        };
        Ok(Subscheme::new(Ideal::new(&self.ring, gens)?, v.dim() - codim, sampler))
    }
}

/// The section of `v` by the hypersurface f = 0, of dimension one less.
/// Images of equidimensional sources are sampled through the corresponding
/// section of the source, recursively; anything else is sampled by slicing.
pub fn hypersurface_section(v: &Subscheme, f: &Poly) -> Result<Subscheme, GeometryError> {
    if v.dim() == 0 {
        return Err(GeometryError::Invalid("section of negative dimension".into()));
    }
    let mut gens = v.gens().to_vec();
    gens.push(f.clone());
    let sampler = match v.sampler() {
        Sampler::Image { source, forms } if source.dim() == v.dim() => {
            let pulled = f.substitute(source.ring(), forms);
            Sampler::Image { source: Arc::new(hypersurface_section(source, &pulled)?), forms: forms.clone() }
        }
        _ => Sampler::Slice,
    };
    Ok(Subscheme::new(Ideal::new(v.ring(), gens)?, v.dim() - 1, sampler))
}

/// Drops generators lying in the ideal generated by the lower-degree ones and
/// the earlier ones of the same degree.
pub fn minimalize(ring: &Ring, gens: Vec<Poly>) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    let mut sorted: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by_key(|g| g.degree());
    for g in sorted {
        let d = g.degree() as u32;
        let monos = monomials_of_degree(ring.nvars, d);
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech = Echelon::new(ring.field, monos.len());
        for f in &out {
            let e = d - f.degree() as u32;
            for u in monomials_of_degree(ring.nvars, e) {
                ech.insert(f.mul_term(&u, 1).coefficients_in(&index, monos.len()).unwrap());
            }
        }
        if ech.insert(g.coefficients_in(&index, monos.len()).unwrap()) {
            out.push(g);
        }
    }
    out
}

/// Σ c_i f_i.
pub fn combine_forms(ring: &Ring, c: &[u32], forms: &[Poly]) -> Poly {
    let mut out = Poly::zero(ring);
    for (&ci, f) in c.iter().zip(forms) {
        if ci != 0 {
            out = out.add(&f.scale(ci));
        }
    }
    out
}

/// Drops forms that are linearly dependent on earlier forms of the same degree.
pub fn independent_by_degree(ring: &Ring, forms: Vec<Poly>) -> Vec<Poly> {
    let mut by_degree: std::collections::BTreeMap<i64, Vec<Poly>> = Default::default();
    for f in forms.into_iter().filter(|f| !f.is_zero()) {
        by_degree.entry(f.degree()).or_default().push(f);
    }
    by_degree.into_values().flat_map(|fs| minimal_generators(ring, &[], &fs)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    #[test]
    fn hyperplane_section_of_quadric_surface() {
        let f = FieldSpec::default();
        let r = PolyRing::grevlex(f, 4);
        let x = |i| Poly::var(&r, i);
        let q = x(0).mul(&x(3)).sub(&x(1).mul(&x(2)));
        let v = Subscheme::new(Ideal::new(&r, vec![q]).unwrap(), 2, Sampler::Slice);
        let p = PointP::new(f, vec![1, 0, 0, 0]).unwrap();
        let h = x(3).add(&x(1).scale(5));
        let chart = LinearChart::new(&r, &[h.clone()], Some(&p)).unwrap();
        assert_eq!(chart.dim(), 2);
        assert_eq!(chart.pull_point(&p).unwrap().coords(), &[1, 0, 0]);
        let c = chart.section(&v, 1).unwrap();
        let hd = c.hilbert().unwrap();
        assert_eq!((hd.dim, hd.degree), (1, 2));
        for y in c.sample(5, 2).unwrap() {
            let x = chart.push_point(&y).unwrap();
            assert!(v.contains_point(&x) && h.eval(x.coords()) == 0);
            assert_eq!(chart.pull_point(&x).unwrap(), y);
        }
    }
}
