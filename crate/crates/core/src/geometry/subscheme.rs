use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::point::{map_point, random_vector, PointP};
use super::solve::rational_points;
use super::GeometryError;
use crate::algebra::linalg::Matrix;
use crate::algebra::text::{format_header, format_poly, parse_header, parse_poly};
use crate::algebra::{hilbert, FieldSpec, HilbertData, Ideal, Poly, PolyRing, Ring};

/// How random rational points of a subscheme are produced.
#[derive(Clone, Debug)]
pub enum Sampler {
    /// All of projective space (zero ideal).
    Free,
    /// Ideal generated by linear forms.
    Linear,
    /// Cut with a random linear space of complementary dimension and solve.
    Slice,
    /// Push forward points of `source` along `forms`.
    Image { source: Arc<Subscheme>, forms: Vec<Poly> },
    /// Points of `carrier` at which some form of `exclude` does not vanish.
    Residual { carrier: Arc<Subscheme>, exclude: Vec<Poly> },
}

/// Projective subscheme of PP^{nvars-1} with a known dimension and a point sampler.
///
/// Ideals are expected to be saturated: either given by all forms of bounded
/// degree vanishing on sampled points, or saturated explicitly via
/// [`Subscheme::saturating`].
#[derive(Clone, Debug)]
pub struct Subscheme {
    ideal: Ideal,
    dim: usize,
    sampler: Sampler,
    hilbert: OnceLock<HilbertData>,
}

const BATCH: usize = 16;

impl Subscheme {
    pub fn new(ideal: Ideal, dim: usize, sampler: Sampler) -> Self {
        Subscheme { ideal, dim, sampler, hilbert: OnceLock::new() }
    }

    pub fn projective_space(field: FieldSpec, n: usize) -> Self {
        let ring = PolyRing::grevlex(field, n + 1);
        Self::new(Ideal::zero(&ring), n, Sampler::Free)
    }

    /// Linear subspace cut out by the given linear forms.
    pub fn linear(ring: &Ring, forms: Vec<Poly>) -> Result<Self, GeometryError> {
        if forms.iter().any(|f| !f.is_zero() && f.degree() != 1 || !f.is_homogeneous()) {
            return Err(GeometryError::Invalid("linear subspace needs linear forms".into()));
        }
        let rank = linear_matrix(ring, &forms).rank();
        if rank >= ring.nvars {
            return Err(GeometryError::Invalid("empty linear subspace".into()));
        }
        let ideal = Ideal::new(ring, forms)?;
        Ok(Self::new(ideal, ring.nvars - 1 - rank, Sampler::Linear))
    }

    /// Builds from generators after saturating with respect to the irrelevant ideal.
    pub fn saturating(ideal: Ideal, dim: usize, sampler: Sampler) -> Result<Self, GeometryError> {
        let sat = ideal.saturate(&Ideal::irrelevant(ideal.ring()))?;
        Ok(Self::new(sat, dim, sampler))
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    pub fn field(&self) -> FieldSpec {
        self.ring().field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ring().nvars - 1
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn gens(&self) -> &[Poly] {
        self.ideal.gens()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sampler(&self) -> &Sampler {
        &self.sampler
    }

    pub fn with_sampler(&self, sampler: Sampler) -> Self {
        Self::new(self.ideal.clone(), self.dim, sampler)
    }

    pub fn contains_point(&self, p: &PointP) -> bool {
        p.satisfies(self.gens())
    }

    pub fn hilbert(&self) -> Result<&HilbertData, GeometryError> {
        if let Some(h) = self.hilbert.get() {
            return Ok(h);
        }
        let h = hilbert(&self.ideal)?;
        Ok(self.hilbert.get_or_init(|| h))
    }

    /// One sampling attempt; may return zero or several points.
    pub fn sample_batch(&self, rng: &mut ChaCha8Rng) -> Result<Vec<PointP>, GeometryError> {
        let field = self.field();
        let n = self.ring().nvars;
        match &self.sampler {
            Sampler::Free => Ok(PointP::new(field, random_vector(field, n, rng)).into_iter().collect()),
            Sampler::Linear => {
                let basis = linear_matrix(self.ring(), self.gens()).nullspace();
                let mut v = vec![0u32; n];
                for b in &basis {
                    let c = field.random(rng);
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = field.add(*x, field.mul(c, *y));
                    }
                }
                Ok(PointP::new(field, v).into_iter().collect())
            }
            Sampler::Slice => self.slice_points(rng),
            Sampler::Image { source, forms } => Ok(source
                .sample_batch(rng)?
                .iter()
                .filter_map(|p| map_point(field, forms, p.coords()))
                .collect()),
            Sampler::Residual { carrier, exclude } => Ok(carrier
                .sample_batch(rng)?
                .into_iter()
                .filter(|p| exclude.iter().any(|f| f.eval(p.coords()) != 0))
                .collect()),
        }
    }

    fn slice_points(&self, rng: &mut ChaCha8Rng) -> Result<Vec<PointP>, GeometryError> {
        let field = self.field();
        let n = self.ring().nvars;
        let k = n - self.dim;
        let small = PolyRing::grevlex(field, k);
        let a: Vec<Vec<u32>> = (0..n).map(|_| random_vector(field, k, rng)).collect();
        let images: Vec<Poly> = a.iter().map(|row| Poly::linear(&small, row)).collect();
        let restricted: Vec<Poly> = self.gens().iter().map(|g| g.substitute(&small, &images)).collect();
        let pts = rational_points(&small, &restricted, rng)?;
        Ok(pts
            .into_iter()
            .filter_map(|y| {
                let x: Vec<u32> = a
                    .iter()
                    .map(|row| row.iter().zip(y.coords()).fold(0, |acc, (u, v)| field.add(acc, field.mul(*u, *v))))
                    .collect();
                PointP::new(field, x)
            })
            .filter(|p| self.contains_point(p))
            .collect())
    }

    /// `count` points, deterministic in `seed` regardless of thread scheduling.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<PointP>, GeometryError> {
        let mut master = ChaCha8Rng::seed_from_u64(seed);
        let budget = 64 + 16 * count;
        let mut attempts = 0;
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            if attempts >= budget {
                return Err(GeometryError::RetryBudget(format!(
                    "found {} of {} points after {} attempts",
                    out.len(),
                    count,
                    attempts
                )));
            }
            let want = (count - out.len()).clamp(1, 4 * BATCH);
            let seeds: Vec<u64> = (0..want).map(|_| master.gen()).collect();
            attempts += want;
            let batches: Vec<Result<Vec<PointP>, GeometryError>> = seeds
                .par_iter()
                .map(|&s| self.sample_batch(&mut ChaCha8Rng::seed_from_u64(s)))
                .collect();
            for b in batches {
                out.extend(b?);
            }
        }
        out.truncate(count);
        Ok(out)
    }

    pub fn random_point(&self, seed: u64) -> Result<PointP, GeometryError> {
        Ok(self.sample(1, seed)?.remove(0))
    }

    pub fn to_json(&self) -> Value {
        let sampler = match &self.sampler {
            Sampler::Free => json!({"kind": "free"}),
            Sampler::Linear => json!({"kind": "linear"}),
            Sampler::Slice => json!({"kind": "slice"}),
            Sampler::Image { source, forms } => json!({
                "kind": "image",
                "source": source.to_json(),
                "forms": forms.iter().map(format_poly).collect::<Vec<_>>(),
            }),
            Sampler::Residual { carrier, exclude } => json!({
                "kind": "residual",
                "carrier": carrier.to_json(),
                "exclude": exclude.iter().map(format_poly).collect::<Vec<_>>(),
            }),
        };
        json!({
            "ring": format_header(self.ring()),
            "dim": self.dim,
            "gens": self.gens().iter().map(format_poly).collect::<Vec<_>>(),
            "sampler": sampler,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, GeometryError> {
        let bad = |what: &str| GeometryError::Serde(format!("missing or invalid `{what}`"));
        let ring = parse_header(v["ring"].as_str().ok_or_else(|| bad("ring"))?)?;
        let dim = v["dim"].as_u64().ok_or_else(|| bad("dim"))? as usize;
        let gens = parse_list(&ring, &v["gens"])?;
        let s = &v["sampler"];
        let sampler = match s["kind"].as_str().ok_or_else(|| bad("sampler.kind"))? {
            "free" => Sampler::Free,
            "linear" => Sampler::Linear,
            "slice" => Sampler::Slice,
            "image" => {
                let source = Subscheme::from_json(&s["source"])?;
                let forms = parse_list(source.ring(), &s["forms"])?;
                Sampler::Image { source: Arc::new(source), forms }
            }
            "residual" => {
                let carrier = Subscheme::from_json(&s["carrier"])?;
                let exclude = parse_list(carrier.ring(), &s["exclude"])?;
                Sampler::Residual { carrier: Arc::new(carrier), exclude }
            }
            other => return Err(GeometryError::Serde(format!("unknown sampler `{other}`"))),
        };
        Ok(Self::new(Ideal::new(&ring, gens)?, dim, sampler))
    }
}

fn parse_list(ring: &Ring, v: &Value) -> Result<Vec<Poly>, GeometryError> {
    v.as_array()
        .ok_or_else(|| GeometryError::Serde("expected a list of polynomials".into()))?
        .iter()
        .map(|s| {
            let s = s.as_str().ok_or_else(|| GeometryError::Serde("polynomial must be a string".into()))?;
            Ok(parse_poly(ring, s)?)
        })
        .collect()
}

/// Coefficient matrix of linear forms (rows) against the variables.
pub fn linear_matrix(ring: &Ring, forms: &[Poly]) -> Matrix {
    let n = ring.nvars;
    let rows = forms
        .iter()
        .map(|f| {
            let mut row = vec![0u32; n];
            for (m, c) in f.terms() {
                if let Some(i) = m.exps().iter().position(|&e| e == 1) {
                    row[i] = *c;
                }
            }
            row
        })
        .collect();
    Matrix::from_rows(ring.field, n, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_on_plane_cubic() {
        let f = FieldSpec::default();
        let r = PolyRing::grevlex(f, 3);
        let (x, y, z) = (Poly::var(&r, 0), Poly::var(&r, 1), Poly::var(&r, 2));
        let cubic = y.pow(2).mul(&z).sub(&x.pow(3)).add(&x.mul(&z.pow(2)));
        let c = Subscheme::new(Ideal::new(&r, vec![cubic.clone()]).unwrap(), 1, Sampler::Slice);
        let pts = c.sample(20, 5).unwrap();
        assert_eq!(pts.len(), 20);
        // direct substitution
        assert!(pts.iter().all(|p| cubic.eval(p.coords()) == 0));
        assert_eq!(pts, c.sample(20, 5).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let f = FieldSpec::default();
        let src = Arc::new(Subscheme::projective_space(f, 1));
        let r = PolyRing::grevlex(f, 4);
        let s1 = src.ring().clone();
        let (s, t) = (Poly::var(&s1, 0), Poly::var(&s1, 1));
        let forms = vec![s.pow(3), s.pow(2).mul(&t), s.mul(&t.pow(2)), t.pow(3)];
        let v = Subscheme::new(Ideal::zero(&r), 1, Sampler::Image { source: src, forms });
        let back = Subscheme::from_json(&v.to_json()).unwrap();
        assert_eq!(back.to_json(), v.to_json());
        assert_eq!(back.sample(5, 1).unwrap(), v.sample(5, 1).unwrap());
    }
}
