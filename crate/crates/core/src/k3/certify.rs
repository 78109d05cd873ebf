//! Certificates: numerical checks on a constructed surface, each recorded as
//! PASS, SKIPPED or FAIL with a value or reason.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{K3Record, Marked};
use crate::algebra::hilbert::Q;
use crate::geometry::interp::{degree_histogram, format_histogram, ideal_through_points, MONOMIAL_CAP};
use crate::geometry::maps::{derive_seed, singular_sample, tangent_cone_rank};
use crate::geometry::section::minimalize;
use crate::geometry::FormsOptions;
use crate::lattice::H2;

/// Fresh points used for the membership check.
pub const MEMBERSHIP_POINTS: usize = 200;
/// Points used for the smoothness sample.
pub const SMOOTHNESS_POINTS: usize = 50;
/// Generators are compared with interpolation up to this degree.
pub const GENERATOR_DEGREE: u32 = 3;
/// Largest number of variables for which a full Gröbner-basis Hilbert
/// computation is attempted.
pub const HILBERT_VARIABLE_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Fast,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Skipped,
    Fail,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Skipped => "SKIPPED",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub level: Level,
    pub checks: Vec<Check>,
    /// Degrees of minimal generators of the surface ideal.
    pub histogram: BTreeMap<u32, usize>,
    pub lattice: Option<Value>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `{({2}, 66)}`
    pub fn histogram_string(&self) -> String {
        format_histogram(&self.histogram)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("certificate serializes")
    }

    fn push(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { name: name.into(), status, detail: detail.into() });
    }

    fn skip(&mut self, name: &str, reason: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status: Status::Skipped, detail: reason.into() });
    }
}

/// h⁰(L) = g + 1 and the number of quadrics C(g+2, 2) - (4g - 2) containing a
/// projectively normal K3 surface of genus g in PP^g.
pub fn expected_counts(g: i64) -> (i64, i64) {
    ((g + 1), (g + 2) * (g + 1) / 2 - (4 * g - 2))
}

/// Runs the checks of the given level. Failures are recorded, never thrown.
pub fn certify(k: &K3Record, level: Level, seed: u64) -> Certificate {
    let s = &k.surface;
    let g = k.genus;
    let mut cert = Certificate { level, checks: vec![], histogram: BTreeMap::new(), lattice: None };
    let minimal = minimalize(s.ring(), s.gens().to_vec());
    cert.histogram = degree_histogram(&minimal);

    cert.push("ambient", s.ambient_dim() as i64 == g, format!("PP^{} for genus {g}", s.ambient_dim()));

    let (_, quadrics) = expected_counts(g);
    match ideal_through_points(s, GENERATOR_DEGREE, &FormsOptions::with_seed(derive_seed(seed, 1))) {
        Ok(ideal) => {
            let interpolated = ideal.dims.get(&2).copied().unwrap_or(0) as i64;
            let stored = cert.histogram.get(&2).copied().unwrap_or(0) as i64;
            let linear = ideal.dims.get(&1).copied().unwrap_or(0);
            cert.push(
                "quadrics",
                interpolated == quadrics && stored == quadrics && linear == 0,
                format!("{interpolated} interpolated, {stored} in the ideal, {quadrics} expected"),
            );
            if ideal.skipped.is_empty() {
                let low: BTreeMap<u32, usize> =
                    cert.histogram.iter().filter(|(d, _)| **d <= GENERATOR_DEGREE).map(|(d, c)| (*d, *c)).collect();
                let found: BTreeMap<u32, usize> = ideal.histogram.iter().filter(|(_, c)| **c > 0).map(|(d, c)| (*d, *c)).collect();
                cert.push(
                    "generators",
                    found == low,
                    format!(
                        "minimal generators up to degree {GENERATOR_DEGREE}: {} interpolated, {} in the ideal",
                        format_histogram(&found),
                        format_histogram(&low)
                    ),
                );
            } else {
                let d = ideal.skipped[0];
                cert.skip("generators", format!("cap: degree-{d} forms in PP^{} exceed {MONOMIAL_CAP} monomials", s.ambient_dim()));
            }
        }
        Err(e) => cert.push("quadrics", false, e.to_string()),
    }

    match s.sample(MEMBERSHIP_POINTS, derive_seed(seed, 2)) {
        Ok(pts) => {
            let good = pts.iter().filter(|p| s.contains_point(p)).count();
            cert.push("membership", good == pts.len(), format!("{good}/{}", pts.len()));
        }
        Err(e) => cert.push("membership", false, e.to_string()),
    }

    match singular_sample(s, SMOOTHNESS_POINTS, derive_seed(seed, 3)) {
        Ok(r) => {
            let stray = r.singular.iter().filter(|p| k.node() != Some(*p)).count();
            cert.push("smoothness", stray == 0, format!("{} sampled, {stray} singular", r.sampled));
        }
        Err(e) => cert.push("smoothness", false, e.to_string()),
    }

    if let Marked::Node(p) = &k.marked {
        match tangent_cone_rank(s, p, derive_seed(seed, 4)) {
            Ok((t, r)) => cert.push("node", (t, r) == (3, 3), format!("tangent space dim {t}, tangent cone rank {r}")),
            Err(e) => cert.push("node", false, e.to_string()),
        }
    }

    if let Some(c) = k.curve() {
        match c.sample(20, derive_seed(seed, 5)) {
            Ok(pts) => {
                let inside = pts.iter().filter(|p| s.contains_point(p)).count();
                cert.push("curve_points", inside == pts.len(), format!("{inside}/{} curve points on the surface", pts.len()));
            }
            Err(e) => cert.push("curve_points", false, e.to_string()),
        }
    }

    if let Some(l) = &k.lattice {
        let report = l.report(k.polarization);
        let square = l.square(k.polarization);
        let nef = report["big_nef_candidate"].as_bool().unwrap_or(false);
        cert.push(
            "lattice",
            square == 2 * g - 2 && nef,
            format!(
                "L^2 = {square}, primitive: {}, big and nef candidate: {nef}, Brill-Noether general: {}",
                report["primitive"], report["bn_general"]
            ),
        );
        cert.lattice = Some(report);
    }

    if level == Level::Full {
        full_checks(k, &mut cert);
    } else if s.ring().nvars > HILBERT_VARIABLE_CAP {
        cert.skip("hilbert", format!("cap: {} variables exceeds {HILBERT_VARIABLE_CAP}", s.ring().nvars));
    } else {
        cert.skip("hilbert", "full level only");
    }
    cert
}

fn full_checks(k: &K3Record, cert: &mut Certificate) {
    let s = &k.surface;
    let g = k.genus;
    if s.ring().nvars > HILBERT_VARIABLE_CAP {
        cert.skip("hilbert", format!("cap: {} variables exceeds {HILBERT_VARIABLE_CAP}", s.ring().nvars));
    } else {
        match s.hilbert() {
            Ok(h) => {
                let expected = vec![Q::from_integer(2), Q::from_integer(0), Q::from_integer(g as i128 - 1)];
                let genus = h.sectional_genus();
                cert.push(
                    "hilbert",
                    h.dim == 2 && h.degree == (2 * g - 2) as i128 && h.poly == expected && genus == Some(g as i128),
                    format!(
                        "dim {}, degree {}, sectional genus {}, P(t) = {}",
                        h.dim,
                        h.degree,
                        genus.map(|x| x.to_string()).unwrap_or_else(|| "?".into()),
                        format_poly(&h.poly)
                    ),
                );
            }
            Err(e) => cert.skip("hilbert", format!("cap: {e}")),
        }
    }
    let (Some(l), Some(c)) = (&k.lattice, k.curve()) else { return };
    match s.ideal().gens().iter().try_fold(true, |acc, f| c.ideal().contains(f).map(|b| acc && b)) {
        Ok(inside) => cert.push("curve_containment", inside, "I_S ⊆ I_C by normal forms"),
        Err(e) => cert.skip("curve_containment", format!("cap: {e}")),
    }
    match c.hilbert() {
        Ok(h) => {
            let pa = h.poly.first().map(|c0| 1 - c0.to_integer()).unwrap_or(0);
            let lc = l.dot(k.polarization, H2);
            let ok = h.dim == 1 && h.degree == lc as i128 && 2 * pa - 2 == l.n as i128;
            cert.push(
                "adjunction",
                ok,
                format!("deg C = {} (L.C = {lc}), p_a = {pa}, 2p_a - 2 = {} (C^2 = {})", h.degree, 2 * pa - 2, l.n),
            );
        }
        Err(e) => cert.skip("adjunction", format!("cap: {e}")),
    }
}

fn format_poly(coeffs: &[Q]) -> String {
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if *c == Q::from_integer(0) {
            continue;
        }
        parts.push(match i {
            0 => c.to_string(),
            1 => format!("{c}t"),
            _ => format!("{c}t^{i}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn riemann_roch_counts() {
        assert_eq!(expected_counts(14), (15, 66));
        assert_eq!(expected_counts(44), (45, 861));
        assert_eq!(expected_counts(3), (4, 0));
        assert_eq!(expected_counts(22).1, 190);
    }

    #[test]
    fn json_round_trip() {
        let cert = Certificate {
            level: Level::Fast,
            checks: vec![Check { name: "a".into(), status: Status::Skipped, detail: "cap".into() }],
            histogram: [(2, 66)].into_iter().collect(),
            lattice: None,
        };
        let v = cert.to_json();
        assert_eq!(v["checks"][0]["status"], json!("SKIPPED"));
        assert_eq!(serde_json::from_value::<Certificate>(v).unwrap(), cert);
        assert_eq!(cert.histogram_string(), "{({2}, 66)}");
    }
}
