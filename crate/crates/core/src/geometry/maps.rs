use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::interp::{ideal_through_points, FormsOptions, InterpolatedIdeal};
use super::point::PointP;
use super::subscheme::{linear_matrix, Sampler, Subscheme};
use super::GeometryError;
use crate::algebra::linalg::Matrix;
use crate::algebra::{Ideal, MonomialOrder, Poly, PolyRing};

/// A rational map given by forms of a common degree on a source subscheme.
#[derive(Clone, Debug)]
pub struct RationalMap {
    pub source: Arc<Subscheme>,
    pub forms: Vec<Poly>,
}

impl RationalMap {
    pub fn new(source: Arc<Subscheme>, forms: Vec<Poly>) -> Result<Self, GeometryError> {
        let Some(first) = forms.first() else {
            return Err(GeometryError::Invalid("a map needs at least one form".into()));
        };
        let d = first.degree();
        for f in &forms {
            if **f.ring() != **source.ring() {
                return Err(GeometryError::Algebra(crate::algebra::AlgebraError::RingMismatch));
            }
            if !f.is_zero() && (f.degree() != d || !f.is_homogeneous()) {
                return Err(GeometryError::Invalid("forms must be homogeneous of one degree".into()));
            }
        }
        Ok(RationalMap { source, forms })
    }

    pub fn target_dim(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn apply(&self, p: &PointP) -> Option<PointP> {
        super::point::map_point(self.source.field(), &self.forms, p.coords())
    }

    /// Dimension of the image, from the rank of the differential at a random point.
    pub fn image_dim(&self, seed: u64) -> Result<usize, GeometryError> {
        let p = self.source.random_point(seed)?;
        let tangent = jacobian(self.source.gens(), &p).nullspace();
        let field = self.source.field();
        let n = self.source.ring().nvars;
        let diff: Vec<Poly> = self.forms.clone();
        let partials: Vec<Vec<u32>> =
            diff.iter().map(|f| (0..n).map(|j| f.derivative(j).eval(p.coords())).collect()).collect();
        let jf = Matrix::from_rows(field, n, partials);
        let images: Vec<Vec<u32>> = tangent.iter().map(|w| jf.mul_vec(w)).collect();
        let rank = Matrix::from_rows(field, self.forms.len(), images).rank();
        Ok(rank.saturating_sub(1))
    }

    /// The image as a sampled subscheme with an empty ideal (see [`image`]).
    pub fn image_sampler(&self, dim: usize) -> Subscheme {
        let ring = PolyRing::grevlex(self.source.field(), self.forms.len());
        Subscheme::new(
            Ideal::zero(&ring),
            dim,
            Sampler::Image { source: self.source.clone(), forms: self.forms.clone() },
        )
    }
}

/// Jacobian matrix of `gens` at `p` (rows = generators).
pub fn jacobian(gens: &[Poly], p: &PointP) -> Matrix {
    let n = p.len();
    let field = gens.first().map(|g| g.ring().field).unwrap_or_default();
    let rows: Vec<Vec<u32>> = gens.iter().map(|g| (0..n).map(|j| g.derivative(j).eval(p.coords())).collect()).collect();
    Matrix::from_rows(field, n, rows)
}

/// Closure of the image, with ideal interpolated in degrees up to `max_degree`
/// and verified on fresh points.
pub fn image(
    f: &RationalMap,
    max_degree: u32,
    opts: &FormsOptions,
) -> Result<(Subscheme, InterpolatedIdeal), GeometryError> {
    let dim = f.image_dim(opts.seed ^ 0x9e37_79b9)?;
    let sampled = f.image_sampler(dim);
    let ideal = ideal_through_points(&sampled, max_degree, opts)?;
    let out = Subscheme::new(Ideal::new(sampled.ring(), ideal.gens.clone())?, dim, sampled.sampler().clone());
    Ok((out, ideal))
}

/// Exact image of a map from a subscheme by elimination in the graph
/// (small instances only).
pub fn image_by_elimination(f: &RationalMap) -> Result<Ideal, GeometryError> {
    let src = f.source.ring();
    let m = src.nvars;
    let n = f.forms.len();
    // variables: t, s_0..s_{m-1}, y_0..y_{n-1}
    let big = PolyRing::new(src.field, 1 + m + n, MonomialOrder::Elimination(1 + m));
    let images: Vec<Poly> = (0..m).map(|i| Poly::var(&big, 1 + i)).collect();
    let t = Poly::var(&big, 0);
    let mut gens: Vec<Poly> = f.source.gens().iter().map(|g| g.substitute(&big, &images)).collect();
    for (j, form) in f.forms.iter().enumerate() {
        gens.push(Poly::var(&big, 1 + m + j).sub(&t.mul(&form.substitute(&big, &images))));
    }
    Ok(Ideal::new(&big, gens)?.eliminate(1 + m)?)
}

/// Linear projection of `v` from the linear subspace `center`.
pub fn project(
    v: &Arc<Subscheme>,
    center: &Subscheme,
    max_degree: u32,
    opts: &FormsOptions,
) -> Result<(Subscheme, InterpolatedIdeal), GeometryError> {
    let ring = v.ring();
    let lin = linear_matrix(ring, center.gens()).row_space();
    if lin.is_empty() {
        return Err(GeometryError::CenterContainsScheme);
    }
    let forms: Vec<Poly> = lin.iter().map(|row| Poly::linear(ring, row)).collect();
    let pts = v.sample(8, opts.seed ^ 0x5151)?;
    if pts.iter().all(|p| forms.iter().all(|f| f.eval(p.coords()) == 0)) {
        return Err(GeometryError::CenterContainsScheme);
    }
    image(&RationalMap::new(v.clone(), forms)?, max_degree, opts)
}

/// Projective tangent space at q, as a linear subscheme.
pub fn tangent_space(v: &Subscheme, q: &PointP) -> Result<Subscheme, GeometryError> {
    if !v.contains_point(q) {
        return Err(GeometryError::NotOnScheme);
    }
    let ring = v.ring();
    let rows = jacobian(v.gens(), q).row_space();
    let forms = rows.iter().map(|r| Poly::linear(ring, r)).collect();
    Subscheme::linear(ring, forms)
}

pub fn is_smooth_at(v: &Subscheme, q: &PointP) -> Result<bool, GeometryError> {
    Ok(tangent_space(v, q)?.dim() == v.dim())
}

/// Dimension of the tangent space at q and rank of the tangent-cone quadric
/// there, read off the second-order Taylor expansion in the affine chart of
/// the first nonzero coordinate of q. At a hypersurface singularity of a
/// surface the tangent space is 3-dimensional and a simple node has rank 3.
pub fn tangent_cone_rank(v: &Subscheme, q: &PointP, seed: u64) -> Result<(usize, usize), GeometryError> {
    if !v.contains_point(q) {
        return Err(GeometryError::NotOnScheme);
    }
    let field = v.field();
    let n = v.ring().nvars;
    let k = q.coords().iter().position(|&c| c != 0).expect("nonzero point");
    let others: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    let gens = v.gens();
    let first: Vec<Vec<Poly>> = gens.iter().map(|g| others.iter().map(|&i| g.derivative(i)).collect()).collect();
    let jac = Matrix::from_rows(
        field,
        others.len(),
        first.iter().map(|ds| ds.iter().map(|d| d.eval(q.coords())).collect()).collect(),
    );
    let tangent = jac.nullspace();
    let left = jac.transpose().nullspace();
    if left.is_empty() || tangent.is_empty() {
        return Ok((tangent.len(), 0));
    }
    let hessians: Vec<Matrix> = first
        .iter()
        .map(|ds| {
            let rows = ds.iter().map(|d| others.iter().map(|&j| d.derivative(j).eval(q.coords())).collect()).collect();
            Matrix::from_rows(field, others.len(), rows)
        })
        .collect();
    let b = Matrix::from_rows(field, others.len(), tangent.clone()).transpose();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..2 {
        let mut h = Matrix::zeros(field, others.len(), others.len());
        for w in &left {
            let c = field.random(&mut rng);
            for (wi, hess) in w.iter().zip(&hessians) {
                let coeff = field.mul(c, *wi);
                if coeff == 0 {
                    continue;
                }
                for (o, x) in h.data.iter_mut().zip(&hess.data) {
                    *o = field.add(*o, field.mul(coeff, *x));
                }
            }
        }
        let restricted = b.transpose().mul(&h).mul(&b);
        best = best.max(restricted.rank());
    }
    Ok((tangent.len(), best))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularReport {
    pub sampled: usize,
    pub singular: Vec<PointP>,
}

impl SingularReport {
    pub fn all_smooth(&self) -> bool {
        self.singular.is_empty()
    }
}

pub fn singular_sample(v: &Subscheme, trials: usize, seed: u64) -> Result<SingularReport, GeometryError> {
    let n = v.ring().nvars;
    let partials: Vec<Vec<Poly>> = v.gens().iter().map(|g| (0..n).map(|j| g.derivative(j)).collect()).collect();
    let codim = n - 1 - v.dim();
    let mut singular = Vec::new();
    let pts = v.sample(trials, seed)?;
    for p in &pts {
        let rows: Vec<Vec<u32>> = partials.iter().map(|ds| ds.iter().map(|d| d.eval(p.coords())).collect()).collect();
        if Matrix::from_rows(v.field(), n, rows).rank() < codim {
            singular.push(p.clone());
        }
    }
    Ok(SingularReport { sampled: pts.len(), singular })
}

/// Random linear forms, used for general linear sections.
pub fn random_linear_forms(ring: &crate::algebra::Ring, count: usize, rng: &mut impl Rng) -> Vec<Poly> {
    (0..count)
        .map(|_| {
            let c: Vec<u32> = (0..ring.nvars).map(|_| ring.field.random(rng)).collect();
            Poly::linear(ring, &c)
        })
        .collect()
}

/// Deterministic child seed.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    ChaCha8Rng::seed_from_u64(seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15)).gen()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::monomials_of_degree;
    use crate::algebra::FieldSpec;

    fn twisted_cubic_map() -> RationalMap {
        let f = FieldSpec::default();
        let src = Arc::new(Subscheme::projective_space(f, 1));
        let forms = monomials_of_degree(2, 3).into_iter().map(|m| Poly::monomial(src.ring(), m, 1)).collect();
        RationalMap::new(src, forms).unwrap()
    }

    #[test]
    fn twisted_cubic_image_matches_elimination() {
        let map = twisted_cubic_map();
        let (c, id) = image(&map, 2, &FormsOptions::with_seed(3)).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(id.gens.len(), 3);
        let h = c.hilbert().unwrap();
        assert_eq!((h.dim, h.degree), (1, 3));
        let exact = image_by_elimination(&map).unwrap();
        let exact_ideal = Ideal::new(c.ring(), exact.gens().iter().map(|g| g.to_ring(c.ring())).collect()).unwrap();
        assert!(exact_ideal.contains_ideal(c.ideal()).unwrap());
        assert!(c.ideal().contains_ideal(&exact_ideal).unwrap());
    }

    #[test]
    fn projecting_twisted_cubic_from_point_on_it() {
        let map = twisted_cubic_map();
        let (c, _) = image(&map, 2, &FormsOptions::with_seed(4)).unwrap();
        let c = Arc::new(c);
        let q = c.random_point(8).unwrap();
        let center = Subscheme::linear(
            c.ring(),
            super::super::interp::forms_through_points(c.ring(), 1, &[q]),
        )
        .unwrap();
        assert_eq!(center.dim(), 0);
        let (conic, id) = project(&c, &center, 2, &FormsOptions::with_seed(5)).unwrap();
        assert_eq!(conic.ambient_dim(), 2);
        assert_eq!(id.gens.len(), 1);
        assert_eq!(conic.hilbert().unwrap().degree, 2);
    }

    #[test]
    fn cone_vertex_is_singular() {
        let f = FieldSpec::default();
        let r = PolyRing::grevlex(f, 4);
        let x = |i| Poly::var(&r, i);
        let cone = x(0).mul(&x(2)).sub(&x(1).pow(2));
        let v = Subscheme::new(Ideal::new(&r, vec![cone]).unwrap(), 2, Sampler::Slice);
        let vertex = PointP::new(f, vec![0, 0, 0, 1]).unwrap();
        assert!(!is_smooth_at(&v, &vertex).unwrap());
        let smooth = PointP::new(f, vec![1, 0, 0, 5]).unwrap();
        assert!(is_smooth_at(&v, &smooth).unwrap());
        assert!(singular_sample(&v, 20, 1).unwrap().all_smooth());
    }
}
