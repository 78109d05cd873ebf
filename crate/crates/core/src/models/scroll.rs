//! Rational normal scrolls over PP^1 (and their cones), with bigraded
//! coordinates, and Pfaffian subschemes on them.
//!
//! Coordinates: ruling variables s_0, s_1 of bidegree (1,0), fiber variables
//! t_j of bidegree (0,1) and vertex variables v_k of bidegree (1,1). The
//! ambient coordinates are x_{ij} = s_i t_j followed by the v_k.

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::monomial::monomials_of_degree;
use crate::algebra::{FieldSpec, Ideal, Monomial, Poly, PolyRing, Ring};
use crate::geometry::point::random_vector;
use crate::geometry::section::independent_by_degree;
use crate::geometry::{GeometryError, Sampler, Subscheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScrollKind {
    /// PP^1 x PP^2 ⊂ PP^5.
    P1xP2InP5,
    /// Cone over PP^1 x PP^2 with a point vertex, in PP^6.
    ConeP1xP2InP6,
    /// Cone over PP^1 x PP^2 with a line vertex, in PP^7.
    ConeP1xP2InP7,
    /// Quadric of rank 4 in PP^6 (cone over PP^1 x PP^1 with a plane vertex).
    Rank4QuadricInP6,
}

impl ScrollKind {
    /// (number of fiber variables, number of vertex variables)
    pub fn shape(self) -> (usize, usize) {
        match self {
            ScrollKind::P1xP2InP5 => (3, 0),
            ScrollKind::ConeP1xP2InP6 => (3, 1),
            ScrollKind::ConeP1xP2InP7 => (3, 2),
            ScrollKind::Rank4QuadricInP6 => (2, 3),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Scroll {
    pub kind: ScrollKind,
    pub variety: Arc<Subscheme>,
    /// Bigraded coordinate ring: s_0, s_1, t_0.., v_0..
    pub cox: Ring,
    pub fiber: usize,
    pub vertex: usize,
}

pub fn segre_scroll(field: FieldSpec, kind: ScrollKind) -> Result<Scroll, GeometryError> {
    let (r, e) = kind.shape();
    let ambient = PolyRing::grevlex(field, 2 * r + e);
    let x = |i: usize, j: usize| Poly::var(&ambient, i * r + j);
    let mut minors = Vec::new();
    for j in 0..r {
        for k in j + 1..r {
            minors.push(x(0, j).mul(&x(1, k)).sub(&x(0, k).mul(&x(1, j))));
        }
    }
    let variety = Subscheme::new(Ideal::new(&ambient, minors)?, r + e, Sampler::Slice);
    Ok(Scroll {
        kind,
        variety: Arc::new(variety),
        cox: PolyRing::grevlex(field, 2 + r + e),
        fiber: r,
        vertex: e,
    })
}

impl Scroll {
    pub fn ambient(&self) -> &Ring {
        self.variety.ring()
    }

    pub fn s(&self, i: usize) -> Poly {
        Poly::var(&self.cox, i)
    }

    pub fn t(&self, j: usize) -> Poly {
        Poly::var(&self.cox, 2 + j)
    }

    pub fn v(&self, k: usize) -> Poly {
        Poly::var(&self.cox, 2 + self.fiber + k)
    }

    pub fn bidegree(&self, m: &Monomial) -> (u32, u32) {
        let e = m.exps();
        let s: u32 = e[..2].iter().map(|&x| x as u32).sum();
        let t: u32 = e[2..2 + self.fiber].iter().map(|&x| x as u32).sum();
        let v: u32 = e[2 + self.fiber..].iter().map(|&x| x as u32).sum();
        (s + v, t + v)
    }

    /// Bidegree of a nonzero bihomogeneous form.
    pub fn form_bidegree(&self, f: &Poly) -> Option<(u32, u32)> {
        let mut it = f.terms().iter().map(|(m, _)| self.bidegree(m));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// All monomials of bidegree (a, b).
    pub fn monomials(&self, a: u32, b: u32) -> Vec<Monomial> {
        let (r, e) = (self.fiber, self.vertex);
        let mut out = Vec::new();
        let max_v = if e == 0 { 0 } else { a.min(b) };
        for c in 0..=max_v {
            for ms in monomials_of_degree(2, a - c) {
                for mt in monomials_of_degree(r, b - c) {
                    let vs = if e == 0 { vec![Monomial::one(0)] } else { monomials_of_degree(e, c) };
                    for mv in vs {
                        let mut ex = ms.exps().to_vec();
                        ex.extend_from_slice(mt.exps());
                        ex.extend_from_slice(mv.exps());
                        out.push(Monomial::from_exps(ex));
                    }
                }
            }
        }
        out
    }

    pub fn random_form(&self, a: u32, b: u32, rng: &mut ChaCha8Rng) -> Poly {
        let monos = self.monomials(a, b);
        let coeffs = random_vector(self.cox.field, monos.len(), rng);
        Poly::from_coefficients(&self.cox, &monos, &coeffs)
    }

    /// Ambient forms cutting the same subscheme of the scroll as the
    /// bihomogeneous form f: f times every monomial that balances its bidegree.
    pub fn to_ambient(&self, f: &Poly) -> Result<Vec<Poly>, GeometryError> {
        let Some((a, b)) = self.form_bidegree(f) else {
            return Err(GeometryError::Invalid("form is not bihomogeneous".into()));
        };
        let multipliers: Vec<Monomial> = if a >= b {
            monomials_of_degree(self.fiber, a - b)
                .into_iter()
                .map(|m| {
                    let mut ex = vec![0u16; 2];
                    ex.extend_from_slice(m.exps());
                    ex.resize(self.cox.nvars, 0);
                    Monomial::from_exps(ex)
                })
                .collect()
        } else {
            monomials_of_degree(2, b - a)
                .into_iter()
                .map(|m| {
                    let mut ex = m.exps().to_vec();
                    ex.resize(self.cox.nvars, 0);
                    Monomial::from_exps(ex)
                })
                .collect()
        };
        Ok(multipliers.iter().map(|u| self.balanced_to_ambient(&f.mul_term(u, 1))).collect())
    }

    /// Rewrites a form of bidegree (m, m) in the ambient coordinates.
    fn balanced_to_ambient(&self, f: &Poly) -> Poly {
        let r = self.fiber;
        let amb = self.ambient();
        let terms = f
            .terms()
            .iter()
            .map(|(m, c)| {
                let e = m.exps();
                let expand = |slice: &[u16]| -> Vec<usize> {
                    slice.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect()
                };
                let ss = expand(&e[..2]);
                let ts = expand(&e[2..2 + r]);
                let mut ex = vec![0u16; amb.nvars];
                for (i, j) in ss.iter().zip(&ts) {
                    ex[i * r + j] += 1;
                }
                for (k, &x) in e[2 + r..].iter().enumerate() {
                    ex[2 * r + k] += x;
                }
                (Monomial::from_exps(ex), *c)
            })
            .collect();
        Poly::from_terms(amb, terms)
    }

    /// Subscheme of the scroll cut by bihomogeneous forms, of the given dimension.
    pub fn cut(&self, forms: &[Poly], dim: usize) -> Result<Subscheme, GeometryError> {
        let mut gens = self.variety.gens().to_vec();
        for f in forms {
            gens.extend(self.to_ambient(f)?);
        }
        let gens = independent_by_degree(self.ambient(), gens);
        Ok(Subscheme::new(Ideal::new(self.ambient(), gens)?, dim, Sampler::Slice))
    }

    /// Linear forms cutting out the span of the fiber over the point (a : b) of PP^1.
    pub fn ruling_forms(&self, a: u32, b: u32) -> Vec<Poly> {
        let field = self.cox.field;
        let amb = self.ambient();
        let r = self.fiber;
        (0..r)
            .map(|j| {
                let mut c = vec![0u32; amb.nvars];
                c[j] = b;
                c[r + j] = field.neg(a);
                Poly::linear(amb, &c)
            })
            .collect()
    }
}

/// The 4x4 principal Pfaffians of a skew-symmetric matrix, one per 4-subset of indices.
pub fn pfaffians(m: &[Vec<Poly>]) -> Vec<Poly> {
    super::subsets(m.len(), 4)
        .into_iter()
        .map(|s| {
            let (a, b, c, d) = (s[0], s[1], s[2], s[3]);
            m[a][b].mul(&m[c][d]).sub(&m[a][c].mul(&m[b][d])).add(&m[a][d].mul(&m[b][c]))
        })
        .collect()
}

/// Random skew-symmetric matrix on the scroll whose (i, j) entry, i < j, has
/// the prescribed bidegree (None for zero).
pub fn random_skew(scroll: &Scroll, pattern: &[Vec<Option<(u32, u32)>>], rng: &mut ChaCha8Rng) -> Vec<Vec<Poly>> {
    let n = pattern.len();
    let mut m = vec![vec![Poly::zero(&scroll.cox); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if let Some((a, b)) = pattern[i][j] {
                let f = scroll.random_form(a, b, rng);
                m[j][i] = f.neg();
                m[i][j] = f;
            }
        }
    }
    m
}

/// The surface cut on the scroll by the 4x4 Pfaffians of a 5x5 skew matrix.
pub fn pfaffian_surface(scroll: &Scroll, m: &[Vec<Poly>]) -> Result<Subscheme, GeometryError> {
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if *x != m[j][i].neg() {
                return Err(GeometryError::Invalid("matrix is not skew-symmetric".into()));
            }
        }
    }
    let pf: Vec<Poly> = pfaffians(m).into_iter().filter(|p| !p.is_zero()).collect();
    scroll.cut(&pf, 2)
}
