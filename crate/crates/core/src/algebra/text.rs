//! Plain-text ideal format.
//!
//! ```text
//! ring p=65521 vars=x0..x3 order=grevlex
//! 1*x0*x2 + 65520*x1^2
//! ```
//!
//! One polynomial per line, terms in ring order, coefficients in `[1, p-1]`.

use std::fmt::Write as _;

use super::field::FieldSpec;
use super::monomial::{Monomial, MonomialOrder};
use super::poly::{Poly, PolyRing, Ring};
use super::AlgebraError;

pub fn format_term(m: &Monomial, c: u32) -> String {
    let mut s = c.to_string();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => {
                let _ = write!(s, "*x{i}");
            }
            _ => {
                let _ = write!(s, "*x{i}^{e}");
            }
        }
    }
    s
}

pub fn format_poly(f: &Poly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    f.terms().iter().map(|(m, c)| format_term(m, *c)).collect::<Vec<_>>().join(" + ")
}

fn order_tag(o: MonomialOrder) -> String {
    match o {
        MonomialOrder::GRevLex => "grevlex".into(),
        MonomialOrder::Lex => "lex".into(),
        MonomialOrder::Elimination(k) => format!("elim{k}"),
    }
}

pub fn format_header(ring: &PolyRing) -> String {
    format!("ring p={} vars=x0..x{} order={}", ring.field.p(), ring.nvars - 1, order_tag(ring.order))
}

/// Serializes a ring together with a list of generators.
pub fn format_ideal(ring: &PolyRing, gens: &[Poly]) -> String {
    let mut s = format_header(ring);
    s.push('\n');
    for g in gens {
        s.push_str(&format_poly(g));
        s.push('\n');
    }
    s
}

fn parse_err(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse(msg.into())
}

pub fn parse_header(line: &str) -> Result<Ring, AlgebraError> {
    let mut p = None;
    let mut n = None;
    let mut order = MonomialOrder::GRevLex;
    let mut words = line.split_whitespace();
    if words.next() != Some("ring") {
        return Err(parse_err("header must start with `ring`"));
    }
    for w in words {
        if let Some(v) = w.strip_prefix("p=") {
            p = Some(v.parse::<u32>().map_err(|_| parse_err("bad prime"))?);
        } else if let Some(v) = w.strip_prefix("vars=x0..x") {
            n = Some(v.parse::<usize>().map_err(|_| parse_err("bad variable range"))? + 1);
        } else if let Some(v) = w.strip_prefix("order=") {
            order = match v {
                "grevlex" => MonomialOrder::GRevLex,
                "lex" => MonomialOrder::Lex,
                other => match other.strip_prefix("elim") {
                    Some(k) => MonomialOrder::Elimination(k.parse().map_err(|_| parse_err("bad order"))?),
                    None => return Err(parse_err(format!("unknown order {other}"))),
                },
            };
        } else {
            return Err(parse_err(format!("unexpected header field {w}")));
        }
    }
    let field = FieldSpec::new(p.ok_or_else(|| parse_err("missing p"))?)?;
    let n = n.ok_or_else(|| parse_err("missing vars"))?;
    Ok(PolyRing::new(field, n, order))
}

pub fn parse_poly(ring: &Ring, line: &str) -> Result<Poly, AlgebraError> {
    let line = line.trim();
    if line == "0" {
        return Ok(Poly::zero(ring));
    }
    let mut terms = Vec::new();
    for term in line.split('+') {
        let mut parts = term.trim().split('*');
        let c: u32 = parts
            .next()
            .ok_or_else(|| parse_err("empty term"))?
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad coefficient in `{term}`")))?;
        let mut exps = vec![0u16; ring.nvars];
        for factor in parts {
            let factor = factor.trim();
            let (v, e) = match factor.split_once('^') {
                Some((v, e)) => (v, e.parse::<u16>().map_err(|_| parse_err("bad exponent"))?),
                None => (factor, 1),
            };
            let i: usize = v
                .strip_prefix('x')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| parse_err(format!("bad variable `{v}`")))?;
            if i >= ring.nvars {
                return Err(parse_err(format!("variable x{i} outside ring")));
            }
            exps[i] += e;
        }
        terms.push((Monomial::from_exps(exps), c % ring.field.p()));
    }
    Ok(Poly::from_terms(ring, terms))
}

pub fn parse_ideal(text: &str) -> Result<(Ring, Vec<Poly>), AlgebraError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let ring = parse_header(lines.next().ok_or_else(|| parse_err("empty input"))?)?;
    let gens = lines.map(|l| parse_poly(&ring, l)).collect::<Result<Vec<_>, _>>()?;
    Ok((ring, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_exactly() {
        let r = PolyRing::grevlex(FieldSpec::new(65521).unwrap(), 4);
        let f = Poly::var(&r, 1).pow(2).sub(&Poly::var(&r, 0).mul(&Poly::var(&r, 2)));
        let text = format_ideal(&r, &[f.clone()]);
        assert_eq!(text, "ring p=65521 vars=x0..x3 order=grevlex\n1*x1^2 + 65520*x0*x2\n");
        let (r2, g) = parse_ideal(&text).unwrap();
        assert_eq!(*r2, *r);
        assert_eq!(g[0], f);
    }
}
