//! The MMPH string format and the coordinatization text format.

use std::collections::HashMap;
use std::fmt::Write as _;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::coord::{Coordinatization, ExactScalar, ExactVector, Ring};
use crate::error::{CoordParseError, ParseError};
use crate::hypergraph::Mmph;
use crate::label::{is_base_char, VertexLabel};

/// Parses one MMPH string such as `123,34,45,567,78,81,26.`.
///
/// Whitespace between labels is ignored. Without an explicit `dimension`
/// the largest hyperedge size is used.
pub fn parse_mmph(text: &str, dimension: Option<usize>) -> Result<Mmph, ParseError> {
    let bytes = text.as_bytes();
    let mut edges: Vec<Vec<VertexLabel>> = Vec::new();
    let mut current: Vec<VertexLabel> = Vec::new();
    let mut plus: Option<(usize, u16)> = None;
    let mut end = None;
    let mut seen_any = false;

    for (pos, &c) in bytes.iter().enumerate() {
        match c {
            b'+' => {
                seen_any = true;
                let (start, n) = plus.unwrap_or((pos, 0));
                plus = Some((start, n + 1));
            }
            b',' | b'.' => {
                seen_any = true;
                if let Some((start, _)) = plus {
                    return Err(ParseError::DanglingPlus { pos: start });
                }
                if current.is_empty() {
                    return Err(ParseError::EmptyEdge { edge: edges.len() });
                }
                edges.push(std::mem::take(&mut current));
                if c == b'.' {
                    end = Some(pos);
                    break;
                }
            }
            c if c.is_ascii_whitespace() => {
                if plus.is_some() {
                    return Err(ParseError::IllegalChar { pos, ch: c as char });
                }
            }
            c if is_base_char(c) => {
                seen_any = true;
                let n = plus.take().map_or(0, |(_, n)| n);
                current.push(VertexLabel::new(n, c).expect("checked base char"));
            }
            _ => {
                let ch = text[pos..].chars().next().unwrap_or('?');
                return Err(ParseError::IllegalChar { pos, ch });
            }
        }
    }

    let Some(end) = end else {
        if let Some((start, _)) = plus {
            return Err(ParseError::DanglingPlus { pos: start });
        }
        return Err(if seen_any { ParseError::MissingPeriod } else { ParseError::Empty });
    };
    if let Some(off) = bytes[end + 1..].iter().position(|c| !c.is_ascii_whitespace()) {
        return Err(ParseError::TrailingInput { pos: end + 1 + off });
    }

    let mut keys: HashMap<Vec<VertexLabel>, usize> = HashMap::new();
    for (i, edge) in edges.iter().enumerate() {
        let mut key = edge.clone();
        key.sort_unstable();
        if let Some(w) = key.windows(2).find(|w| w[0] == w[1]) {
            return Err(ParseError::RepeatedVertex { edge: i, label: w[0] });
        }
        if let Some(&first) = keys.get(&key) {
            return Err(ParseError::DuplicateEdge { first, second: i });
        }
        keys.insert(key, i);
    }

    let needed = edges.iter().map(Vec::len).max().unwrap_or(0);
    let dimension = match dimension {
        Some(given) if given < needed => return Err(ParseError::DimensionTooSmall { given, needed }),
        Some(given) => given,
        None => needed,
    };
    Ok(Mmph::from_label_edges(dimension, &edges))
}

/// Parses a batch of MMPH strings, each terminated by its own `.`.
pub fn parse_many(text: &str, dimension: Option<usize>) -> Result<Vec<Mmph>, ParseError> {
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.trim().is_empty() {
        let cut = rest.find('.').ok_or(ParseError::MissingPeriod)?;
        out.push(parse_mmph(&rest[..=cut], dimension)?);
        rest = &rest[cut + 1..];
    }
    if out.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(out)
}

/// Writes the canonical string: comma-separated hyperedges, a final `.`,
/// no whitespace.
pub fn serialize_mmph(h: &Mmph) -> String {
    let mut s = String::new();
    for (i, edge) in h.edges().iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        for &v in edge {
            write!(s, "{}", h.vertices()[v]).expect("write to string");
        }
    }
    s.push('.');
    s
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Strict,
    Lenient,
}

/// The structural rules of an MMPH.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rule {
    /// Every vertex lies in some hyperedge.
    IsolatedVertex,
    /// Hyperedges have between 2 and n vertices.
    EdgeSize,
    /// Two hyperedges share exactly one vertex. Informational.
    SingleIntersection,
    /// Two hyperedges share more than n - 2 vertices.
    LargeIntersection,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::IsolatedVertex => "isolated-vertex",
            Rule::EdgeSize => "edge-size",
            Rule::SingleIntersection => "single-intersection",
            Rule::LargeIntersection => "large-intersection",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub rule: Rule,
    pub edges: Vec<usize>,
    pub message: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// No findings of any rule, including single intersections.
    pub strict_pass: bool,
    /// No findings other than single intersections.
    pub lenient_pass: bool,
}

/// Sizes of all nonempty pairwise hyperedge intersections.
fn intersections(h: &Mmph) -> Vec<((usize, usize), usize)> {
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); h.k()];
    for (e, edge) in h.edges().iter().enumerate() {
        for &v in edge {
            through[v].push(e);
        }
    }
    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    for es in &through {
        for (i, &a) in es.iter().enumerate() {
            for &b in &es[i + 1..] {
                *counts.entry((a, b)).or_default() += 1;
            }
        }
    }
    let mut out: Vec<_> = counts.into_iter().collect();
    out.sort_unstable();
    out
}

/// Checks the structural rules. Single intersections are only listed in
/// strict mode and never affect `lenient_pass`.
pub fn validate(h: &Mmph, mode: Mode) -> ValidationReport {
    let n = h.dimension();
    let mut hard = Vec::new();
    let mut soft = Vec::new();

    for (v, &m) in h.multiplicity_vec().iter().enumerate() {
        if m == 0 {
            hard.push(Violation {
                rule: Rule::IsolatedVertex,
                edges: vec![],
                message: format!("vertex {} is in no hyperedge", h.vertices()[v]),
            });
        }
    }
    for (e, edge) in h.edges().iter().enumerate() {
        if edge.len() < 2 || edge.len() > n {
            hard.push(Violation {
                rule: Rule::EdgeSize,
                edges: vec![e],
                message: format!("hyperedge {e} has {} vertices, allowed 2..={n}", edge.len()),
            });
        }
    }
    for ((a, b), c) in intersections(h) {
        if c + 2 > n {
            hard.push(Violation {
                rule: Rule::LargeIntersection,
                edges: vec![a, b],
                message: format!("hyperedges {a} and {b} share {c} vertices, more than {}", n.saturating_sub(2)),
            });
        } else if c == 1 {
            soft.push(Violation {
                rule: Rule::SingleIntersection,
                edges: vec![a, b],
                message: format!("hyperedges {a} and {b} share a single vertex"),
            });
        }
    }

    let lenient_pass = hard.is_empty();
    let strict_pass = lenient_pass && soft.is_empty();
    let mut violations = hard;
    if mode == Mode::Strict {
        violations.extend(soft);
    }
    ValidationReport { violations, strict_pass, lenient_pass }
}

fn parse_coeff(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) || !den.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num.parse().ok()?, den))
}

fn parse_term(term: &str, ring: Ring, line: usize) -> Result<ExactScalar, CoordParseError> {
    let unknown = || CoordParseError::UnknownToken { line, token: term.to_string() };
    let split = term.find(|c: char| c.is_ascii_alphabetic()).unwrap_or(term.len());
    let (coeff, sym) = term.split_at(split);
    let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
    let c = if coeff.is_empty() {
        if sym.is_empty() {
            return Err(unknown());
        }
        BigRational::from_integer(1.into())
    } else {
        parse_coeff(coeff).ok_or_else(unknown)?
    };
    let need = |r: Ring| {
        if ring == r {
            Ok(())
        } else {
            Err(CoordParseError::WrongRing { line, token: sym.to_string(), ring: ring.name() })
        }
    };
    let base = match sym {
        "" => return Ok(ExactScalar::new(ring, c, BigRational::zero())),
        "phi" => {
            need(Ring::Golden)?;
            ExactScalar::alpha(ring)
        }
        "w" => {
            need(Ring::Eisenstein)?;
            ExactScalar::alpha(ring)
        }
        "w2" => {
            need(Ring::Eisenstein)?;
            ExactScalar::omega_squared()
        }
        _ => return Err(unknown()),
    };
    Ok(&ExactScalar::new(ring, c, BigRational::zero()) * &base)
}

/// Parses one component: a signed sum of at most two terms, each an
/// optional rational coefficient and an optional `phi`, `w` or `w2`.
pub fn parse_scalar(text: &str, ring: Ring) -> Result<ExactScalar, CoordParseError> {
    parse_scalar_at(text, ring, 0)
}

fn parse_scalar_at(text: &str, ring: Ring, line: usize) -> Result<ExactScalar, CoordParseError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let unknown = || CoordParseError::UnknownToken { line, token: text.trim().to_string() };
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if (c == '+' || c == '-') && i > 0 {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    if terms.len() > 2 {
        return Err(unknown());
    }
    let mut acc = ExactScalar::zero(ring);
    for t in terms {
        let (neg, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let v = parse_term(body, ring, line)?;
        acc = if neg { &acc - &v } else { &acc + &v };
    }
    Ok(acc)
}

/// Reads the label at the start of a coordinatization line and returns it
/// with the remaining text.
fn split_label(line: &str) -> Option<(VertexLabel, &str)> {
    let bytes = line.as_bytes();
    let pluses = bytes.iter().take_while(|&&b| b == b'+').count();
    let base = *bytes.get(pluses)?;
    let label = VertexLabel::new(u16::try_from(pluses).ok()?, base)?;
    Some((label, &line[pluses + 1..]))
}

/// Parses lines of the form `<label> = (c1,...,cn)`.
///
/// Blank lines are skipped. A line starting with `#` is a comment unless the
/// `#` is a label followed by `=`.
pub fn parse_coordinatization(text: &str, ring: Ring) -> Result<Coordinatization, CoordParseError> {
    let mut vectors = IndexMap::new();
    let mut dimension = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if !rest.trim_start().starts_with('=') {
                continue;
            }
        }
        let (label, rest) = split_label(line).ok_or(CoordParseError::BadLabel { line: line_no })?;
        let rest = rest.trim_start();
        let body = rest
            .strip_prefix('=')
            .map(str::trim)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or(CoordParseError::Syntax { line: line_no })?;
        let comps = body
            .split(',')
            .map(|c| parse_scalar_at(c, ring, line_no))
            .collect::<Result<Vec<_>, _>>()?;
        let expected = *dimension.get_or_insert(comps.len());
        if comps.len() != expected {
            return Err(CoordParseError::Ragged { line: line_no, got: comps.len(), expected });
        }
        let v = ExactVector::new(ring, comps);
        if v.is_zero() {
            return Err(CoordParseError::ZeroVector { line: line_no, label });
        }
        if vectors.insert(label, v).is_some() {
            return Err(CoordParseError::DuplicateLabel { line: line_no, label });
        }
    }
    let dimension = dimension.ok_or(CoordParseError::Empty)?;
    Ok(Coordinatization::new(ring, dimension, vectors).expect("vectors checked while parsing"))
}

/// Writes one `label = (...)` line per vector.
pub fn format_coordinatization(c: &Coordinatization) -> String {
    let mut s = String::new();
    for (label, v) in c.vectors() {
        writeln!(s, "{label} = {v}").expect("write to string");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Result<Mmph, ParseError> {
        parse_mmph(s, None)
    }

    #[test]
    fn bug_string() {
        let h = p("123,34,45,567,78,81,26.").unwrap();
        assert_eq!((h.k(), h.l(), h.dimension()), (8, 7, 3));
    }

    #[test]
    fn explicit_dimension() {
        let h = parse_mmph("12.", Some(3)).unwrap();
        assert_eq!((h.k(), h.l(), h.dimension()), (2, 1, 3));
        assert_eq!(
            parse_mmph("1234.", Some(3)),
            Err(ParseError::DimensionTooSmall { given: 3, needed: 4 })
        );
    }

    #[test]
    fn plus_prefix() {
        let h = p("1+A2,+A3.").unwrap();
        let names: Vec<String> = h.vertices().iter().map(ToString::to_string).collect();
        assert_eq!(names, ["1", "+A", "2", "3"]);
        assert_eq!(h.l(), 2);
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(p("12,\n 34 .").unwrap(), p("12,34.").unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(p("12,34"), Err(ParseError::MissingPeriod));
        assert_eq!(p(""), Err(ParseError::Empty));
        assert_eq!(p("10,34."), Err(ParseError::IllegalChar { pos: 1, ch: '0' }));
        assert_eq!(p("12,3+."), Err(ParseError::DanglingPlus { pos: 4 }));
        assert_eq!(p("1+ 2."), Err(ParseError::IllegalChar { pos: 2, ch: ' ' }));
        assert_eq!(p("12,,34."), Err(ParseError::EmptyEdge { edge: 1 }));
        assert_eq!(p("121."), Err(ParseError::RepeatedVertex { edge: 0, label: VertexLabel::parse("1").unwrap() }));
        assert_eq!(p("12,34,21."), Err(ParseError::DuplicateEdge { first: 0, second: 2 }));
        assert_eq!(p("12. 3"), Err(ParseError::TrailingInput { pos: 4 }));
        assert!(matches!(p("1é."), Err(ParseError::IllegalChar { pos: 1, ch: 'é' })));
    }

    #[test]
    fn serialize_examples() {
        assert_eq!(serialize_mmph(&p("12,34,1234.").unwrap()), "12,34,1234.");
        assert_eq!(serialize_mmph(&p("12.").unwrap()), "12.");
    }

    #[test]
    fn batch() {
        let hs = parse_many("12,34.\n123,34,45,567,78,81,26.\n", None).unwrap();
        assert_eq!(hs.len(), 2);
        assert_eq!(hs[1].l(), 7);
    }

    #[test]
    fn validation() {
        let bug = p("123,34,45,567,78,81,26.").unwrap();
        let r = validate(&bug, Mode::Strict);
        assert!(r.lenient_pass && !r.strict_pass);
        assert!(r.violations.iter().any(|v| v.rule == Rule::SingleIntersection && v.edges == [0, 1]));
        assert!(validate(&bug, Mode::Lenient).violations.is_empty());

        let bad = parse_mmph("1234,1235.", Some(4)).unwrap();
        let r = validate(&bad, Mode::Lenient);
        assert!(!r.lenient_pass);
        assert_eq!(r.violations[0].rule, Rule::LargeIntersection);

        let small = p("1,23.").unwrap();
        assert!(validate(&small, Mode::Lenient).violations.iter().any(|v| v.rule == Rule::EdgeSize));
    }

    #[test]
    fn scalars() {
        let g = |s| parse_scalar(s, Ring::Golden).unwrap();
        assert_eq!(g("phi-1"), ExactScalar::from_ints(Ring::Golden, -1, 1));
        assert_eq!(g("-phi"), ExactScalar::from_ints(Ring::Golden, 0, -1));
        assert_eq!(g("1-phi"), ExactScalar::from_ints(Ring::Golden, 1, -1));
        assert_eq!(g("3*phi+2"), ExactScalar::from_ints(Ring::Golden, 2, 3));
        let e = |s| parse_scalar(s, Ring::Eisenstein).unwrap();
        assert_eq!(e("w2"), ExactScalar::from_ints(Ring::Eisenstein, -1, -1));
        assert_eq!(e("-w2"), ExactScalar::from_ints(Ring::Eisenstein, 1, 1));
        assert_eq!(parse_scalar("-2", Ring::Rational).unwrap(), ExactScalar::int(Ring::Rational, -2));
        assert_eq!(
            parse_scalar("1/2", Ring::Rational).unwrap(),
            ExactScalar::new(Ring::Rational, BigRational::new(1.into(), 2.into()), BigRational::zero())
        );
        assert!(matches!(parse_scalar("phi", Ring::Rational), Err(CoordParseError::WrongRing { .. })));
        assert!(matches!(parse_scalar("w", Ring::Golden), Err(CoordParseError::WrongRing { .. })));
        assert!(matches!(parse_scalar("x", Ring::Golden), Err(CoordParseError::UnknownToken { .. })));
        assert!(matches!(parse_scalar("1+phi+1", Ring::Golden), Err(CoordParseError::UnknownToken { .. })));
        assert!(matches!(parse_scalar("", Ring::Golden), Err(CoordParseError::UnknownToken { .. })));
    }

    #[test]
    fn coordinatization_text() {
        let c = parse_coordinatization("1 = (0,0,1)", Ring::Rational).unwrap();
        assert_eq!(c.dimension(), 3);
        let v = c.get(VertexLabel::parse("1").unwrap()).unwrap();
        assert_eq!(*v, ExactVector::from_ints(Ring::Rational, &[0, 0, 1]));

        let c = parse_coordinatization("2 = (phi-1,0,-phi,0)", Ring::Golden).unwrap();
        assert_eq!(c.get(VertexLabel::parse("2").unwrap()).unwrap().to_string(), "(phi-1,0,-phi,0)");

        let c = parse_coordinatization("w = (w,1,1,w2,1,w)", Ring::Eisenstein).unwrap();
        assert_eq!(c.get(VertexLabel::parse("w").unwrap()).unwrap().to_string(), "(w,1,1,w2,1,w)");
    }

    #[test]
    fn coordinatization_comments_and_odd_labels() {
        let text = "# header\n\n# = (1,0)\n= = (0,1)\n+1 = (1,1)\n";
        let c = parse_coordinatization(text, Ring::Rational).unwrap();
        let labels: Vec<String> = c.vectors().keys().map(ToString::to_string).collect();
        assert_eq!(labels, ["#", "=", "+1"]);
        assert_eq!(parse_coordinatization(&format_coordinatization(&c), Ring::Rational).unwrap(), c);
    }

    #[test]
    fn coordinatization_errors() {
        let r = |s| parse_coordinatization(s, Ring::Rational);
        assert!(matches!(r("1 = (1,0)\n2 = (0,1,0)"), Err(CoordParseError::Ragged { line: 2, .. })));
        assert!(matches!(r("1 = (1,0)\n1 = (0,1)"), Err(CoordParseError::DuplicateLabel { line: 2, .. })));
        assert!(matches!(r("1 = (1,0"), Err(CoordParseError::Syntax { line: 1 })));
        assert!(matches!(r("0 = (1,0)"), Err(CoordParseError::BadLabel { line: 1 })));
        assert!(matches!(r("1 = (0,0)"), Err(CoordParseError::ZeroVector { .. })));
        assert!(matches!(r("# only a comment"), Err(CoordParseError::Empty)));
    }
}
