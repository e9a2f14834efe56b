//! The line-oriented text format for complexes.
//!
//! ```text
//! # comment
//! ring F2[U,V]
//! gen s-1 -2 0
//! gen r0 -1 -1
//! gen s1 0 -2
//! d r0 s-1 0 1
//! d r0 s1 1 0
//! iota r0 r0 0 0
//! ```
//!
//! Over `F2[U]` a generator line carries one grading and a term line one
//! exponent: `gen t0 0`, `d t1 t2 1`. Term lines read `kind from to exps`
//! and mean that `kind(from)` contains the monomial times `to`. Output is
//! canonical: generators in stored order, then `d` and `iota` terms sorted by
//! source index, target index and monomial.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::chain::{BaseRing, BiGrading, Complex, Generator, Map, U, UV};
use crate::error::{Error, Result};
use crate::involutive::{Involutive, IotaComplex, IotaKComplex};
use crate::ring::{UTerm, UVTerm};

/// A parsed document: a knot complex or an ι-complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexDocument {
    Knot(IotaKComplex),
    Iota(IotaComplex),
}

impl ComplexDocument {
    pub fn ring_tag(&self) -> &'static str {
        match self {
            ComplexDocument::Knot(_) => UV::TAG,
            ComplexDocument::Iota(_) => U::TAG,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            ComplexDocument::Knot(k) => serialize(k),
            ComplexDocument::Iota(k) => serialize(k),
        }
    }
}

/// Parsing and printing of gradings and monomials.
pub trait TextRing: BaseRing {
    fn write_gr(out: &mut String, g: Self::Gr);
    fn write_mono(out: &mut String, m: Self::Mono);
    fn parse_gr(fields: &[&str]) -> std::result::Result<Self::Gr, String>;
    fn parse_mono(fields: &[&str]) -> std::result::Result<Self::Mono, String>;
    fn mono_key(m: Self::Mono) -> (u32, u32);
}

fn int<T: std::str::FromStr>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|_| format!("bad number {s:?}"))
}

fn arity(fields: &[&str], n: usize) -> std::result::Result<(), String> {
    if fields.len() == n {
        Ok(())
    } else {
        Err(format!("expected {n} numbers, got {}", fields.len()))
    }
}

impl TextRing for UV {
    fn write_gr(out: &mut String, g: BiGrading) {
        let _ = write!(out, "{} {}", g.w, g.z);
    }
    fn write_mono(out: &mut String, m: UVTerm) {
        let _ = write!(out, "{} {}", m.u, m.v);
    }
    fn parse_gr(f: &[&str]) -> std::result::Result<BiGrading, String> {
        arity(f, 2)?;
        Ok(BiGrading::new(int(f[0])?, int(f[1])?))
    }
    fn parse_mono(f: &[&str]) -> std::result::Result<UVTerm, String> {
        arity(f, 2)?;
        Ok(UVTerm::new(int(f[0])?, int(f[1])?))
    }
    fn mono_key(m: UVTerm) -> (u32, u32) {
        (m.u, m.v)
    }
}

impl TextRing for U {
    fn write_gr(out: &mut String, g: i64) {
        let _ = write!(out, "{g}");
    }
    fn write_mono(out: &mut String, m: UTerm) {
        let _ = write!(out, "{}", m.0);
    }
    fn parse_gr(f: &[&str]) -> std::result::Result<i64, String> {
        arity(f, 1)?;
        int(f[0])
    }
    fn parse_mono(f: &[&str]) -> std::result::Result<UTerm, String> {
        arity(f, 1)?;
        Ok(UTerm(int(f[0])?))
    }
    fn mono_key(m: UTerm) -> (u32, u32) {
        (m.0, 0)
    }
}

fn write_terms<R: TextRing>(out: &mut String, kind: &str, c: &Complex<R>, m: &Map<R>) {
    for (s, t, p) in m.entries() {
        let mut monos: Vec<R::Mono> = p.terms().collect();
        monos.sort_by_key(|&x| R::mono_key(x));
        for x in monos {
            let _ = write!(out, "{kind} {} {} ", c.name(s), c.name(t));
            R::write_mono(out, x);
            out.push('\n');
        }
    }
}

/// Canonical text of a complex with involution.
pub fn serialize<R: TextRing>(x: &Involutive<R>) -> String {
    let c = x.complex();
    let mut out = format!("ring {}\n", R::TAG);
    for g in c.generators() {
        let _ = write!(out, "gen {} ", g.name);
        R::write_gr(&mut out, g.gr);
        out.push('\n');
    }
    write_terms(&mut out, "d", c, c.d());
    write_terms(&mut out, "iota", c, x.iota());
    out
}

fn parse_with<R: TextRing>(lines: &[(usize, Vec<&str>)]) -> Result<Involutive<R>> {
    let mut gens: Vec<Generator<R::Gr>> = Vec::new();
    let mut index = std::collections::HashMap::new();
    let mut terms: Vec<(usize, bool, usize, usize, R::Mono)> = Vec::new();
    let mut seen = HashSet::new();
    for (ln, f) in lines {
        let ln = *ln;
        match f[0] {
            "gen" => {
                if !terms.is_empty() {
                    return Err(Error::parse(ln, "generators must precede terms"));
                }
                let name = f.get(1).ok_or_else(|| Error::parse(ln, "gen needs a name"))?;
                let gr = R::parse_gr(&f[2..]).map_err(|e| Error::parse(ln, format!("generator {name}: {e}")))?;
                if index.insert(name.to_string(), gens.len()).is_some() {
                    return Err(Error::parse(ln, format!("duplicate generator {name}")));
                }
                gens.push(Generator::new(*name, gr));
            }
            kind @ ("d" | "iota") => {
                if f.len() < 3 {
                    return Err(Error::parse(ln, format!("{kind} needs a source and a target")));
                }
                let resolve = |name: &str| {
                    index.get(name).copied().ok_or_else(|| Error::parse(ln, format!("unknown generator {name:?}")))
                };
                let (s, t) = (resolve(f[1])?, resolve(f[2])?);
                let m =
                    R::parse_mono(&f[3..]).map_err(|e| Error::parse(ln, format!("{kind} {} {}: {e}", f[1], f[2])))?;
                let is_iota = kind == "iota";
                if !seen.insert((is_iota, s, t, R::mono_key(m))) {
                    return Err(Error::parse(ln, format!("duplicate term {kind} {} {}", f[1], f[2])));
                }
                let (deg, skew) = if is_iota { (R::diagonal(0), R::SKEW_INVOLUTION) } else { (R::d_degree(), false) };
                let src_gr = if skew { R::twist(gens[s].gr) } else { gens[s].gr };
                if gens[t].gr + R::mono_grading(m) != src_gr + deg {
                    return Err(Error::parse(
                        ln,
                        format!("term {kind} {} {} {m} violates the grading rule", f[1], f[2]),
                    ));
                }
                terms.push((ln, is_iota, s, t, m));
            }
            other => return Err(Error::parse(ln, format!("unknown keyword {other:?}"))),
        }
    }
    let n = gens.len();
    let mut d = Map::zero(n, n, false);
    let mut iota = Map::zero(n, n, R::SKEW_INVOLUTION);
    for &(_, is_iota, s, t, m) in &terms {
        if is_iota {
            iota.add_term(s, t, m);
        } else {
            d.add_term(s, t, m);
        }
    }
    Involutive::new(Complex::new(gens, d)?, iota)
}

/// Parses a document. Errors carry the line number and name the offending
/// entry.
pub fn deserialize(text: &str) -> Result<ComplexDocument> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if !line.is_empty() {
            lines.push((i + 1, line.split_whitespace().collect::<Vec<_>>()));
        }
    }
    let Some((ln, first)) = lines.first() else {
        return Err(Error::parse(0, "empty document"));
    };
    if first[0] != "ring" || first.len() != 2 {
        return Err(Error::parse(*ln, "the first line must be `ring F2[U,V]` or `ring F2[U]`"));
    }
    match first[1] {
        t if t == UV::TAG => Ok(ComplexDocument::Knot(parse_with::<UV>(&lines[1..])?)),
        t if t == U::TAG => Ok(ComplexDocument::Iota(parse_with::<U>(&lines[1..])?)),
        t => Err(Error::parse(*ln, format!("unknown ring tag {t:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::trefoil;

    #[test]
    fn trefoil_round_trip() {
        let text = serialize(&trefoil());
        let doc = deserialize(&text).unwrap();
        assert_eq!(doc, ComplexDocument::Knot(trefoil()));
        assert_eq!(doc.to_text(), text);
    }

    #[test]
    fn errors_name_the_entry() {
        let bad = "ring F2[U]\ngen a 0\nd a zz 0\n";
        let e = deserialize(bad).unwrap_err().to_string();
        assert!(e.contains("zz") && e.contains('3'), "{e}");
        let e = deserialize("ring F2[W]\n").unwrap_err().to_string();
        assert!(e.contains("F2[W]"), "{e}");
        let e = deserialize("ring F2[U]\ngen a 0\ngen b 0\nd a b 0\n").unwrap_err().to_string();
        assert!(e.contains("grading"), "{e}");
        let e = deserialize("ring F2[U]\ngen a 0\ngen b -1\nd a b 0\nd a b 0\n").unwrap_err().to_string();
        assert!(e.contains("duplicate"), "{e}");
        assert!(deserialize("ring F2[U]\ngen a 0\ngen a 0\n").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let doc = deserialize("# unit\n\nring F2[U]  # tag\ngen 1 0\niota 1 1 0\n").unwrap();
        assert_eq!(doc, ComplexDocument::Iota(IotaComplex::unit()));
    }
}
