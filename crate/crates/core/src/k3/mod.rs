//! Lattice-polarized K3 surfaces: construction pipelines, re-embedding and
//! certificates.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::FieldSpec;
use crate::geometry::{GeometryError, PointP, Subscheme};
use crate::lattice::{DivisorClass, LatticeError, LatticeK3, H1};

pub mod certify;
pub mod ci;
pub mod embed;
pub mod mukai;
pub mod record;
pub mod scroll;

pub use certify::{certify, expected_counts, Certificate, Check, Level, Status};
pub use ci::k3_ci;
pub use embed::embed;
pub use mukai::{k3_mukai, node_project, Marking};
pub use scroll::k3_scroll;

/// Resample budget for every randomized choice in a pipeline.
pub const RESAMPLE_BUDGET: u64 = 16;

#[derive(Debug, Error)]
pub enum K3Error {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{0}")]
    Unsupported(String),
    #[error("class {class} is rejected: {reason}")]
    Rejected { class: DivisorClass, reason: String },
    #[error("construction failed: {0}")]
    Construction(String),
}

impl From<crate::algebra::AlgebraError> for K3Error {
    fn from(e: crate::algebra::AlgebraError) -> Self {
        K3Error::Geometry(e.into())
    }
}

/// The second lattice generator: a curve on the surface, or the exceptional
/// curve over a node, represented by the node.
#[derive(Clone, Debug)]
pub enum Marked {
    None,
    Curve(Arc<Subscheme>),
    Node(PointP),
}

/// One step of a construction, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: String,
    pub params: Value,
}

#[derive(Clone, Debug)]
pub struct K3Record {
    pub surface: Arc<Subscheme>,
    pub marked: Marked,
    /// Lattice in the basis (h1, h2) = (original hyperplane class, marked
    /// class); None when unmarked.
    pub lattice: Option<LatticeK3>,
    /// Class of the current hyperplane section in the lattice basis.
    pub polarization: DivisorClass,
    pub genus: i64,
    pub seed: u64,
    pub trace: Vec<TraceStep>,
}

impl K3Record {
    pub fn field(&self) -> FieldSpec {
        self.surface.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.surface.ambient_dim()
    }

    pub fn degree(&self) -> i64 {
        2 * self.genus - 2
    }

    pub fn curve(&self) -> Option<&Arc<Subscheme>> {
        match &self.marked {
            Marked::Curve(c) => Some(c),
            _ => None,
        }
    }

    pub fn node(&self) -> Option<&PointP> {
        match &self.marked {
            Marked::Node(p) => Some(p),
            _ => None,
        }
    }

    pub fn push_trace(&mut self, step: &str, params: Value) {
        self.trace.push(TraceStep { step: step.to_string(), params });
    }

    /// `K3 surface with rank 2 lattice [8, 9; 9, 0]` for lattice-polarized
    /// records, `K3 surface of genus g and degree 2g-2 in PP^g` otherwise.
    pub fn summary(&self) -> String {
        match &self.lattice {
            Some(l) if self.polarization == H1 => {
                let m = l.matrix();
                format!("K3 surface with rank 2 lattice [{}, {}; {}, {}]", m[0][0], m[0][1], m[1][0], m[1][1])
            }
            _ => self.embedded_summary(),
        }
    }

    pub fn embedded_summary(&self) -> String {
        format!("K3 surface of genus {} and degree {} in PP^{}", self.genus, self.degree(), self.ambient_dim())
    }

    pub fn metadata(&self) -> Value {
        json!({
            "g": self.genus,
            "d": self.lattice.map(|l| l.d),
            "n": self.lattice.map(|l| l.n),
            "ambient": self.ambient_dim(),
            "degree": self.degree(),
            "seed": self.seed,
            "p": self.field().p(),
            "polarization": [self.polarization.a, self.polarization.b],
            "trace": self.trace,
        })
    }
}

/// Whether (d, g, n) is one of the lattices of the supported table:
/// (i)-(iii) nodes, lines and conics, (iv) rational curves on complete
/// intersections, (v)/(vi) elliptic curves.
pub fn in_table(d: i64, g: i64, n: i64) -> bool {
    match n {
        -2 => match d {
            0 | 1 => (3..=10).contains(&g) || g == 12,
            2 => (3..=12).contains(&g),
            3..=6 => (3..=5).contains(&g),
            7 | 8 => g == 3 || g == 5,
            _ => false,
        },
        0 => match d {
            3..=5 => g >= 3,
            6 => (3..=5).contains(&g),
            7 => (3..=5).contains(&g),
            8 => g == 3 || g == 5,
            9 => g == 5,
            _ => false,
        },
        _ => false,
    }
}

/// The table rows, for error messages.
pub const TABLE: &str = "\
  (i)   [2g-2, 0; 0, -2]  g in {3..10, 12}
  (ii)  [2g-2, 1; 1, -2]  g in {3..10, 12}
  (iii) [2g-2, 2; 2, -2]  g in {3..12}
  (iv)  [2g-2, d; d, -2]  g in {3,4,5}, 3 <= d <= 6, and (g,d) in {(3,7),(3,8),(5,7),(5,8)}
  (v)   [2g-2, d; d, 0]   any g >= 3, 3 <= d <= 5
  (vi)  [2g-2, d; d, 0]   (g,d) in {(3,6),(3,7),(3,8),(4,6),(4,7),(5,6),...,(5,9)}";

/// Builds a random K3 surface with lattice Λ^{d,n}_g.
pub fn construct(field: FieldSpec, d: i64, g: i64, n: i64, seed: u64) -> Result<K3Record, K3Error> {
    if !in_table(d, g, n) {
        return Err(K3Error::Unsupported(format!(
            "lattice (d, g, n) = ({d}, {g}, {n}) is not supported; supported lattices:\n{TABLE}"
        )));
    }
    let mut rec = match (g, d, n) {
        (_, 3..=5, 0) => k3_scroll(field, g as u32, d as u32, seed)?,
        (3..=5, _, _) => k3_ci(field, g as u32, d as u32, n, seed)?,
        (11, 2, -2) => node_project(&k3_mukai(field, 12, Marking::Node, seed)?, seed)?,
        (_, 0, -2) => k3_mukai(field, g as u32, Marking::Node, seed)?,
        (_, 1, -2) => k3_mukai(field, g as u32, Marking::Line, seed)?,
        (_, 2, -2) => k3_mukai(field, g as u32, Marking::Conic, seed)?,
        _ => unreachable!("table membership checked above"),
    };
    rec.push_trace("construct", json!({"d": d, "g": g, "n": n}));
    Ok(rec)
}

/// A random K3 surface of genus g in PP^g, for 3 <= g <= 12 except 11.
pub fn construct_genus(field: FieldSpec, g: i64, seed: u64) -> Result<K3Record, K3Error> {
    match g {
        3..=5 => Ok(ci::k3_ci_unmarked(field, g as u32, seed)?),
        6..=10 | 12 => k3_mukai(field, g as u32, Marking::None, seed),
        11 => Err(K3Error::Unsupported(
            "a general K3 surface of genus 11 needs the Gushel-Mukai fourfold construction, which is out of \
             scope; a genus-11 surface containing a conic is available as --lattice 2,11,-2"
                .into(),
        )),
        _ => Err(K3Error::Unsupported(format!("genus must satisfy 3 <= g <= 12, got {g}"))),
    }
}
