//! Text formats: the instance grammar, certificates and census reports.
//!
//! Instances are line oriented:
//!
//! ```text
//! # K_{3,3} with a bad 2-assignment
//! parts 3 3
//! k 2
//! L 0: 1 2
//! ...
//! ```
//!
//! `del u v` lines delete edges. Without a `k` line, `k` is the smallest list
//! size.
//!
//! Certificates and reports are [`Document`]s: `key: value` lines, with
//! `key:` opening a block indented by two spaces. Colourings use
//! `color v = c` lines so they can be checked without this crate.

use std::fmt::Write as _;

use crate::census::{CensusReport, ClassRecord};
use crate::graph::Graph;
use crate::lists::{CanonicalForm, ColorSet, ListAssignment};
use crate::solver::{Certificate, Coloring, GroupingViolator, NonColorability};
use crate::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| perr(line, format!("expected a nonnegative integer, got {tok:?}")))
}

/// Parses an instance file.
pub fn parse_instance(text: &str) -> Result<(Graph, ListAssignment)> {
    let mut parts: Option<(usize, Vec<usize>)> = None;
    let mut dels: Vec<(usize, (usize, usize))> = Vec::new();
    let mut k: Option<usize> = None;
    let mut lists: Vec<(usize, usize, ColorSet)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let toks: Vec<&str> = rest.split_whitespace().collect();
        match head {
            "parts" => {
                if parts.is_some() {
                    return Err(perr(ln, "repeated parts line"));
                }
                let sizes = toks.iter().map(|t| num(ln, t)).collect::<Result<Vec<_>>>()?;
                parts = Some((ln, sizes));
            }
            "del" => {
                let [u, v] = toks[..] else {
                    return Err(perr(ln, "del takes two vertices"));
                };
                dels.push((ln, (num(ln, u)?, num(ln, v)?)));
            }
            "k" => {
                let [t] = toks[..] else {
                    return Err(perr(ln, "k takes one value"));
                };
                if k.replace(num(ln, t)?).is_some() {
                    return Err(perr(ln, "repeated k line"));
                }
            }
            "L" => {
                let (v, colors) = rest.split_once(':').ok_or_else(|| perr(ln, "expected `L v: colours`"))?;
                let v = num(ln, v.trim())?;
                let colors = colors
                    .split_whitespace()
                    .map(|t| num(ln, t))
                    .collect::<Result<Vec<_>>>()?;
                let set = ColorSet::from_colors(colors.iter().copied()).map_err(|e| perr(ln, e.to_string()))?;
                if set.len() != colors.len() {
                    return Err(perr(ln, "repeated colour in list"));
                }
                lists.push((ln, v, set));
            }
            other => return Err(perr(ln, format!("unknown directive {other:?}"))),
        }
    }
    let (pln, sizes) = parts.ok_or_else(|| perr(text.lines().count().max(1), "missing parts line"))?;
    let mut g = Graph::multipartite(&sizes).map_err(|e| perr(pln, e.to_string()))?;
    for (ln, e) in dels {
        g = g.delete_edges([e]).map_err(|err| perr(ln, err.to_string()))?;
    }
    let mut slots: Vec<Option<ColorSet>> = vec![None; g.n()];
    for &(ln, v, set) in &lists {
        let slot = slots
            .get_mut(v)
            .ok_or_else(|| perr(ln, format!("list on unknown vertex {v}")))?;
        if slot.replace(set).is_some() {
            return Err(perr(ln, format!("second list for vertex {v}")));
        }
    }
    let end = text.lines().count().max(1);
    let lists = slots
        .into_iter()
        .enumerate()
        .map(|(v, s)| s.ok_or_else(|| perr(end, format!("vertex {v} has no list"))))
        .collect::<Result<Vec<_>>>()?;
    let min = lists.iter().map(|l| l.len()).min().unwrap_or(0);
    let l = ListAssignment::new(lists, k.unwrap_or(min)).map_err(|e| perr(end, e.to_string()))?;
    Ok((g, l))
}

/// Canonical spelling: `parts`, sorted `del` lines, `k`, then one `L` line
/// per vertex.
pub fn emit_instance(g: &Graph, l: &ListAssignment) -> String {
    let mut out = String::new();
    let sizes: Vec<String> = g.part_sizes().iter().map(|s| s.to_string()).collect();
    writeln!(out, "parts {}", sizes.join(" ")).unwrap();
    for (u, v) in g.deleted() {
        writeln!(out, "del {u} {v}").unwrap();
    }
    writeln!(out, "k {}", l.k()).unwrap();
    for (v, list) in l.lists().iter().enumerate() {
        write!(out, "L {v}:").unwrap();
        for c in list.iter() {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(String),
    Block(Vec<Entry>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: Value,
    /// Spelled `key = value` rather than `key: value`.
    pub assign: bool,
}

impl Entry {
    pub fn scalar(key: impl Into<String>, value: impl ToString) -> Self {
        Entry { key: key.into(), value: Value::Scalar(value.to_string()), assign: false }
    }

    pub fn block(key: impl Into<String>, entries: Vec<Entry>) -> Self {
        Entry { key: key.into(), value: Value::Block(entries), assign: false }
    }

    fn assignment(key: impl Into<String>, value: impl ToString) -> Self {
        Entry { key: key.into(), value: Value::Scalar(value.to_string()), assign: true }
    }
}

/// A versioned tree of `key: value` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub version: u32,
    pub entries: Vec<Entry>,
}

impl Document {
    pub fn new(entries: Vec<Entry>) -> Self {
        Document { version: FORMAT_VERSION, entries }
    }

    pub fn emit(&self) -> String {
        let mut out = format!("version: {}\n", self.version);
        emit_entries(&self.entries, 0, &mut out);
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let body = raw.trim_start_matches(' ');
            let indent = raw.len() - body.len();
            if indent % 2 != 0 || raw.starts_with('\t') {
                return Err(perr(i + 1, "indentation must be a multiple of two spaces"));
            }
            lines.push((i + 1, indent / 2, body.trim_end_matches('\r')));
        }
        let Some(&(ln, 0, first)) = lines.first() else {
            return Err(perr(1, "missing version header"));
        };
        let version = first
            .strip_prefix("version: ")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| perr(ln, "expected `version: N`"))?;
        if version != FORMAT_VERSION {
            return Err(perr(ln, format!("unsupported version {version}")));
        }
        let mut pos = 1;
        let entries = parse_entries(&lines, &mut pos, 0)?;
        if let Some(&(ln, ..)) = lines.get(pos) {
            return Err(perr(ln, "unexpected indentation"));
        }
        Ok(Document { version, entries })
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        find(&self.entries, key)
    }
}

fn find<'a>(entries: &'a [Entry], key: &str) -> Option<&'a Value> {
    entries.iter().find(|e| e.key == key).map(|e| &e.value)
}

fn emit_entries(entries: &[Entry], depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for e in entries {
        match &e.value {
            Value::Scalar(s) if e.assign => writeln!(out, "{pad}{} = {s}", e.key).unwrap(),
            Value::Scalar(s) => writeln!(out, "{pad}{}: {s}", e.key).unwrap(),
            Value::Block(b) => {
                writeln!(out, "{pad}{}:", e.key).unwrap();
                emit_entries(b, depth + 1, out);
            }
        }
    }
}

fn parse_entries(lines: &[(usize, usize, &str)], pos: &mut usize, depth: usize) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    while let Some(&(ln, d, body)) = lines.get(*pos) {
        if d < depth {
            break;
        }
        if d > depth {
            return Err(perr(ln, "unexpected indentation"));
        }
        *pos += 1;
        if let Some((key, value)) = body.split_once(": ") {
            out.push(Entry::scalar(key, value));
        } else if let Some(key) = body.strip_suffix(':') {
            let nested = parse_entries(lines, pos, depth + 1)?;
            out.push(Entry::block(key, nested));
        } else if let Some((key, value)) = body.split_once(" = ") {
            out.push(Entry::assignment(key, value));
        } else {
            return Err(perr(ln, format!("expected `key: value`, got {body:?}")));
        }
    }
    Ok(out)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn set_text(s: ColorSet) -> String {
    if s.is_empty() {
        "-".into()
    } else {
        join(s.iter(), " ")
    }
}

fn mask_text(m: u32) -> String {
    join((0..32).filter(|v| m >> v & 1 == 1), ".")
}

fn scalar<'a>(entries: &'a [Entry], key: &str) -> Result<&'a str> {
    match find(entries, key) {
        Some(Value::Scalar(s)) => Ok(s),
        _ => Err(Error::Invalid(format!("missing field {key:?}"))),
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Invalid(format!("bad {what}: {s:?}")))
}

fn parse_set(s: &str) -> Result<ColorSet> {
    if s == "-" {
        return Ok(ColorSet::EMPTY);
    }
    ColorSet::from_colors(s.split_whitespace().map(|t| parse_num(t, "colour")).collect::<Result<Vec<usize>>>()?)
}

fn parse_mask(s: &str) -> Result<u32> {
    s.split('.').try_fold(0u32, |m, t| {
        let v: u32 = parse_num(t, "vertex")?;
        if v >= 32 {
            return Err(Error::Invalid(format!("vertex {v} out of range")));
        }
        Ok(m | 1 << v)
    })
}

/// Certificate as a document. Non-colourability bundles list one
/// `violator` block per grouping: the restricted growth string of each part
/// (`partition`), the violating classes (`X`, vertices joined by `.`) and the
/// union of their contracted lists (`Y`).
pub fn certificate_document(cert: &Certificate) -> Document {
    let mut entries = Vec::new();
    match cert {
        Certificate::Coloring(c) => {
            entries.push(Entry::scalar("certificate", "coloring"));
            entries.push(Entry::scalar("vertices", c.0.len()));
            for (v, &col) in c.0.iter().enumerate() {
                entries.push(Entry::assignment(format!("color {v}"), col));
            }
        }
        Certificate::NonColorability(nc) => {
            entries.push(Entry::scalar("certificate", "non-colorability"));
            entries.push(Entry::scalar("violators", nc.violators.len()));
            for gv in &nc.violators {
                entries.push(Entry::block(
                    "violator",
                    vec![
                        Entry::scalar(
                            "partition",
                            join(gv.grouping.iter().map(|r| join(r.iter(), "")), "|"),
                        ),
                        Entry::scalar("X", join(gv.classes.iter().map(|&m| mask_text(m)), " ")),
                        Entry::scalar("Y", set_text(gv.colors)),
                    ],
                ));
            }
        }
        Certificate::Exhaustive => entries.push(Entry::scalar("certificate", "exhaustive")),
    }
    Document::new(entries)
}

pub fn emit_certificate(cert: &Certificate) -> String {
    certificate_document(cert).emit()
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let doc = Document::parse(text)?;
    let entries = &doc.entries;
    match scalar(entries, "certificate")? {
        "coloring" => {
            let n: usize = parse_num(scalar(entries, "vertices")?, "vertex count")?;
            let mut colors = vec![None; n];
            for e in entries.iter().filter(|e| e.key.starts_with("color ")) {
                let v: usize = parse_num(&e.key["color ".len()..], "vertex")?;
                let Value::Scalar(c) = &e.value else {
                    return Err(Error::Invalid(format!("{} is not a scalar", e.key)));
                };
                let slot = colors
                    .get_mut(v)
                    .ok_or_else(|| Error::Invalid(format!("vertex {v} out of range")))?;
                if slot.replace(parse_num::<u8>(c, "colour")?).is_some() {
                    return Err(Error::Invalid(format!("vertex {v} coloured twice")));
                }
            }
            let colors = colors
                .into_iter()
                .enumerate()
                .map(|(v, c)| c.ok_or_else(|| Error::Invalid(format!("vertex {v} uncoloured"))))
                .collect::<Result<_>>()?;
            Ok(Certificate::Coloring(Coloring(colors)))
        }
        "non-colorability" => {
            let count: usize = parse_num(scalar(entries, "violators")?, "violator count")?;
            let mut violators = Vec::new();
            for e in entries.iter().filter(|e| e.key == "violator") {
                let Value::Block(b) = &e.value else {
                    return Err(Error::Invalid("violator must be a block".into()));
                };
                let grouping = scalar(b, "partition")?
                    .split('|')
                    .map(|r| {
                        r.chars()
                            .map(|ch| {
                                ch.to_digit(10)
                                    .map(|d| d as u8)
                                    .ok_or_else(|| Error::Invalid(format!("bad partition digit {ch:?}")))
                            })
                            .collect()
                    })
                    .collect::<Result<_>>()?;
                let classes = scalar(b, "X")?.split_whitespace().map(parse_mask).collect::<Result<_>>()?;
                let colors = parse_set(scalar(b, "Y")?)?;
                violators.push(GroupingViolator { grouping, classes, colors });
            }
            if violators.len() != count {
                return Err(Error::Invalid(format!("{} violator blocks, header says {count}", violators.len())));
            }
            Ok(Certificate::NonColorability(NonColorability { violators }))
        }
        "exhaustive" => Ok(Certificate::Exhaustive),
        other => Err(Error::Invalid(format!("unknown certificate kind {other:?}"))),
    }
}

pub fn report_document(r: &CensusReport) -> Document {
    let mut entries = vec![
        Entry::scalar("report", &r.name),
        Entry::scalar("shape", join(&r.shape, " ")),
        Entry::scalar("k", r.k),
        Entry::scalar("constraints", &r.constraints),
    ];
    if let Some(seed) = r.seed {
        entries.push(Entry::scalar("seed", seed));
    }
    entries.extend([
        Entry::scalar("total", r.total),
        Entry::scalar("bad", r.bad),
        Entry::scalar("bad_iso_classes", r.iso_classes()),
        Entry::scalar("violations", r.violations.len()),
        Entry::scalar("wall_ms", r.wall_ms),
    ]);
    if !r.details.is_empty() {
        entries.push(Entry::block(
            "details",
            r.details.iter().map(|(k, v)| Entry::scalar(k, v)).collect(),
        ));
    }
    for c in &r.classes {
        let mut b = vec![Entry::scalar("form", c.form.to_hex()), Entry::scalar("count", c.count)];
        if let Some(w) = &c.witness {
            b.push(Entry::scalar("witness", w));
        }
        entries.push(Entry::block("class", b));
    }
    for v in &r.violations {
        entries.push(Entry::scalar("violation", v));
    }
    Document::new(entries)
}

pub fn emit_report(r: &CensusReport) -> String {
    report_document(r).emit()
}

pub fn parse_report(text: &str) -> Result<CensusReport> {
    let doc = Document::parse(text)?;
    let e = &doc.entries;
    let shape = scalar(e, "shape")?
        .split_whitespace()
        .map(|t| parse_num(t, "part size"))
        .collect::<Result<_>>()?;
    let details = match find(e, "details") {
        Some(Value::Block(b)) => b
            .iter()
            .map(|x| match &x.value {
                Value::Scalar(s) => Ok((x.key.clone(), s.clone())),
                Value::Block(_) => Err(Error::Invalid("nested detail".into())),
            })
            .collect::<Result<_>>()?,
        Some(Value::Scalar(_)) => return Err(Error::Invalid("details must be a block".into())),
        None => Vec::new(),
    };
    let classes = e
        .iter()
        .filter(|x| x.key == "class")
        .map(|x| {
            let Value::Block(b) = &x.value else {
                return Err(Error::Invalid("class must be a block".into()));
            };
            Ok(ClassRecord {
                form: CanonicalForm::from_hex(scalar(b, "form")?)
                    .ok_or_else(|| Error::Invalid("bad canonical form".into()))?,
                count: parse_num(scalar(b, "count")?, "count")?,
                witness: scalar(b, "witness").ok().map(String::from),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let violations: Vec<String> = e
        .iter()
        .filter(|x| x.key == "violation")
        .filter_map(|x| match &x.value {
            Value::Scalar(s) => Some(s.clone()),
            Value::Block(_) => None,
        })
        .collect();
    let report = CensusReport {
        name: scalar(e, "report")?.into(),
        shape,
        k: parse_num(scalar(e, "k")?, "k")?,
        constraints: scalar(e, "constraints")?.into(),
        total: parse_num(scalar(e, "total")?, "total")?,
        bad: parse_num(scalar(e, "bad")?, "bad")?,
        classes,
        details,
        violations,
        seed: scalar(e, "seed").ok().map(|s| parse_num(s, "seed")).transpose()?,
        wall_ms: parse_num(scalar(e, "wall_ms")?, "wall_ms")?,
    };
    let iso: usize = parse_num(scalar(e, "bad_iso_classes")?, "class count")?;
    if iso != report.iso_classes() {
        return Err(Error::Invalid(format!("{} class blocks, header says {iso}", report.iso_classes())));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_k33_bad, make_unique3, K33Variant};
    use crate::solver::{solve, solve_by_partitions, Method};

    const DISJOINT: &str = "parts 3 3\nk 2\nL 0: 1 2\nL 1: 1 3\nL 2: 4 5\nL 3: 1 4\nL 4: 1 5\nL 5: 2 3\n";

    #[test]
    fn parses_disjoint_variant() {
        let (g, l) = parse_instance(DISJOINT).unwrap();
        assert_eq!((g.clone(), l.clone()), make_k33_bad(K33Variant::Disjoint));
        assert_eq!(emit_instance(&g, &l), DISJOINT);
    }

    #[test]
    fn single_vertex() {
        let (g, l) = parse_instance("parts 1\nk 1\nL 0: 1\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(l.list(0), ColorSet::from_colors([1]).unwrap());
    }

    #[test]
    fn comments_and_inferred_k() {
        let (_, l) = parse_instance("# c\nparts 1 1  # two\nL 0: 1 2 3\nL 1: 4 5\n").unwrap();
        assert_eq!(l.k(), 2);
    }

    #[test]
    fn instance_errors_carry_lines() {
        let cases = [
            ("parts 3 3\ndel 0 1\n", 2),
            ("parts 1\nL 0: 64\n", 2),
            ("parts 1\nL 3: 1\n", 2),
            ("parts 1\nL 0: 1\nfoo\n", 3),
            ("parts 2\nk 2\nL 0: 1 2\nL 1: 1\n", 4),
            ("parts 1\nL 0 1\n", 2),
            ("L 0: 1\n", 1),
        ];
        for (text, line) in cases {
            match parse_instance(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                r => panic!("{text:?} gave {r:?}"),
            }
        }
    }

    #[test]
    fn deletions_round_trip() {
        let text = "parts 2 2\ndel 0 2\ndel 1 3\nk 1\nL 0: 0\nL 1: 0\nL 2: 0\nL 3: 1\n";
        let (g, l) = parse_instance(text).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(emit_instance(&g, &l), text);
    }

    #[test]
    fn coloring_certificate_lines() {
        let (g, l) = make_k33_bad(K33Variant::Disjoint);
        let mut lists = l.lists().to_vec();
        lists[0].insert(9);
        let l = ListAssignment::from_lists(lists);
        let cert = solve(&g, &l, Method::Both).unwrap();
        let text = emit_certificate(&cert);
        assert!(text.lines().any(|x| x.starts_with("color 0 = ")));
        assert_eq!(parse_certificate(&text).unwrap(), cert);
    }

    #[test]
    fn unique3_bundle_has_125_records() {
        let (g, l) = make_unique3(4, None, None).unwrap();
        let cert: Certificate = solve_by_partitions(&g, &l).unwrap().into();
        let text = emit_certificate(&cert);
        assert_eq!(text.matches("violator:").count(), 125);
        assert_eq!(parse_certificate(&text).unwrap(), cert);
    }

    #[test]
    fn report_round_trip() {
        let r = CensusReport {
            name: "x".into(),
            shape: vec![3, 3],
            k: 2,
            constraints: "max-colors=5".into(),
            total: 10,
            bad: 2,
            classes: vec![ClassRecord {
                form: CanonicalForm::from_hex("00ff").unwrap(),
                count: 2,
                witness: Some("w: with colon".into()),
            }],
            details: vec![("a".into(), "1".into())],
            violations: vec!["oops".into()],
            seed: Some(9),
            wall_ms: 3,
        };
        let text = emit_report(&r);
        assert!(text.starts_with("version: 1\n"));
        assert!(text.contains("bad_iso_classes: 1\n"));
        assert_eq!(parse_report(&text).unwrap(), r);
    }

    #[test]
    fn document_rejects_bad_indent() {
        assert!(Document::parse("version: 1\n a: b\n").is_err());
        assert!(Document::parse("version: 2\n").is_err());
        assert!(Document::parse("version: 1\na:\n    b: c\n").is_err());
    }
}
