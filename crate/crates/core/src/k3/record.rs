//! `.k3` files: JSON metadata with the full surface and curve data, plus
//! text-format ideal sidecars.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value};

use super::{K3Error, K3Record, Marked, TraceStep};
use crate::algebra::text::format_ideal;
use crate::geometry::{GeometryError, PointP, Subscheme};
use crate::lattice::LatticeK3;

pub const FORMAT_VERSION: u64 = 1;

impl K3Record {
    pub fn to_json(&self) -> Value {
        let marked = match &self.marked {
            Marked::None => json!({"kind": "none"}),
            Marked::Curve(c) => json!({"kind": "curve", "curve": c.to_json()}),
            Marked::Node(p) => json!({"kind": "node", "point": p.coords()}),
        };
        let mut meta = self.metadata();
        meta["format"] = json!(FORMAT_VERSION);
        meta["lattice"] = json!(self.lattice);
        meta["surface"] = self.surface.to_json();
        meta["marked"] = marked;
        meta
    }

    pub fn from_json(v: &Value) -> Result<Self, K3Error> {
        let bad = |what: &str| K3Error::Geometry(GeometryError::Serde(format!("missing or invalid `{what}`")));
        let surface = Arc::new(Subscheme::from_json(&v["surface"])?);
        let marked = match v["marked"]["kind"].as_str().ok_or_else(|| bad("marked.kind"))? {
            "none" => Marked::None,
            "curve" => Marked::Curve(Arc::new(Subscheme::from_json(&v["marked"]["curve"])?)),
            "node" => {
                let coords: Vec<u32> = serde_json::from_value(v["marked"]["point"].clone()).map_err(|_| bad("point"))?;
                Marked::Node(PointP::new(surface.field(), coords).ok_or_else(|| bad("point"))?)
            }
            _ => return Err(bad("marked.kind")),
        };
        let lattice: Option<LatticeK3> = serde_json::from_value(v["lattice"].clone()).map_err(|_| bad("lattice"))?;
        let pol: [i64; 2] = serde_json::from_value(v["polarization"].clone()).map_err(|_| bad("polarization"))?;
        let trace: Vec<TraceStep> = serde_json::from_value(v["trace"].clone()).map_err(|_| bad("trace"))?;
        Ok(K3Record {
            surface,
            marked,
            lattice,
            polarization: crate::lattice::DivisorClass::new(pol[0], pol[1]),
            genus: v["g"].as_i64().ok_or_else(|| bad("g"))?,
            seed: v["seed"].as_u64().ok_or_else(|| bad("seed"))?,
            trace,
        })
    }

    /// Writes `path` and the sidecars `<path>.surface.ideal` and (when a curve
    /// is marked) `<path>.curve.ideal`, each atomically.
    pub fn save(&self, path: &Path, certificate: Option<Value>) -> Result<(), K3Error> {
        let mut v = self.to_json();
        if let Some(c) = certificate {
            v["certificate"] = c;
        }
        let text = serde_json::to_string_pretty(&v).expect("json");
        write_atomic(path, &text)?;
        write_atomic(&sidecar(path, "surface"), &format_ideal(self.surface.ring(), self.surface.gens()))?;
        if let Some(c) = self.curve() {
            write_atomic(&sidecar(path, "curve"), &format_ideal(c.ring(), c.gens()))?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, K3Error> {
        let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| K3Error::Geometry(GeometryError::Serde(format!("{}: {e}", path.display()))))?;
        Self::from_json(&v)
    }
}

pub fn sidecar(path: &Path, what: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(format!(".{what}.ideal"));
    PathBuf::from(s)
}

fn io_error(path: &Path, e: std::io::Error) -> K3Error {
    K3Error::Geometry(GeometryError::Serde(format!("{}: {e}", path.display())))
}

fn write_atomic(path: &Path, text: &str) -> Result<(), K3Error> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, text).map_err(|e| io_error(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| io_error(path, e))
}
