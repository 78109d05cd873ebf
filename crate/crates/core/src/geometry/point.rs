use rand::Rng;

use crate::algebra::{FieldSpec, Monomial, Poly};

/// A point of projective space, normalized so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointP(Vec<u32>);

impl PointP {
    /// Returns None for the zero vector.
    pub fn new(field: FieldSpec, mut coords: Vec<u32>) -> Option<Self> {
        let lead = *coords.iter().find(|&&c| c != 0)?;
        let inv = field.inv(lead);
        for c in coords.iter_mut() {
            *c = field.mul(*c, inv);
        }
        Some(PointP(coords))
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn satisfies(&self, gens: &[Poly]) -> bool {
        gens.iter().all(|g| g.eval(&self.0) == 0)
    }
}

pub fn random_vector(field: FieldSpec, n: usize, rng: &mut impl Rng) -> Vec<u32> {
    (0..n).map(|_| field.random(rng)).collect()
}

/// Values of each monomial at a point, using a shared table of powers.
pub fn eval_monomials(field: FieldSpec, monos: &[Monomial], point: &[u32]) -> Vec<u32> {
    let maxe = monos.iter().flat_map(|m| m.exps().iter().copied()).max().unwrap_or(0) as usize;
    let powers: Vec<Vec<u32>> = point
        .iter()
        .map(|&x| {
            let mut v = Vec::with_capacity(maxe + 1);
            v.push(1u32);
            for k in 1..=maxe {
                v.push(field.mul(v[k - 1], x));
            }
            v
        })
        .collect();
    monos
        .iter()
        .map(|m| {
            m.exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(1u32, |acc, (i, &e)| field.mul(acc, powers[i][e as usize]))
        })
        .collect()
}

/// Evaluates forms at a point; None if they all vanish there.
pub fn map_point(field: FieldSpec, forms: &[Poly], point: &[u32]) -> Option<PointP> {
    PointP::new(field, forms.iter().map(|f| f.eval(point)).collect())
}
