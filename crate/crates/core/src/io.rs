//! Line-oriented text formats.
//!
//! Every format is a sequence of records, one per line, starting with a tag
//! word. Blank lines and lines starting with `#` are ignored on input. All
//! writers emit records in a canonical order, so parsing and re-writing
//! reproduces the input bytes of anything they produced. Floats are written
//! with Rust's shortest round-trip formatting.

use std::collections::{BTreeMap, HashSet};
use std::str::{FromStr, SplitWhitespace};

use crate::graph::{FractionalOrientation, Graph, PartialOrientation};
use crate::query::{QueryAnswer, QueryOutcome};
use crate::synthesize::{HierarchyNode, Interval, PartitionHierarchy, TreeModel};
use crate::verify::DualCertificate;
use crate::{Error, Result};

/// One significant line, split into tokens after its tag.
struct Record<'a> {
    line: usize,
    tag: &'a str,
    rest: SplitWhitespace<'a>,
}

impl Record<'_> {
    fn next<T: FromStr>(&mut self, what: &str) -> Result<T> {
        let tok = self.rest.next().ok_or_else(|| Error::parse(self.line, format!("missing {what}")))?;
        tok.parse().map_err(|_| Error::parse(self.line, format!("bad {what} `{tok}`")))
    }

    fn rest_as<T: FromStr>(&mut self, what: &str) -> Result<Vec<T>> {
        let line = self.line;
        self.rest
            .by_ref()
            .map(|tok| tok.parse().map_err(|_| Error::parse(line, format!("bad {what} `{tok}`"))))
            .collect()
    }

    fn end(&mut self) -> Result<()> {
        match self.rest.next() {
            None => Ok(()),
            Some(tok) => Err(Error::parse(self.line, format!("unexpected `{tok}`"))),
        }
    }

    fn unknown<T>(&self) -> Result<T> {
        Err(Error::parse(self.line, format!("unknown record `{}`", self.tag)))
    }
}

fn records(text: &str) -> impl Iterator<Item = Record<'_>> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            return None;
        }
        let mut rest = l.split_whitespace();
        let tag = rest.next()?;
        Some(Record { line: i + 1, tag, rest })
    })
}

/// Maps a semantic error onto the line that caused it.
fn at<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } | Error::Io(_) => e,
        other => Error::parse(line, other.to_string()),
    })
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("p {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        s += &format!("e {u} {v}\n");
    }
    s
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut last = 1;
    for mut rec in records(text) {
        last = rec.line;
        match (rec.tag, header) {
            ("p", None) => {
                header = Some((rec.next("vertex count")?, rec.next("edge count")?));
                rec.end()?;
            }
            ("p", Some(_)) => return Err(Error::parse(rec.line, "repeated header")),
            ("e", Some((n, _))) => {
                let (u, v): (usize, usize) = (rec.next("endpoint")?, rec.next("endpoint")?);
                rec.end()?;
                if u >= n || v >= n {
                    return Err(Error::parse(rec.line, format!("edge ({u}, {v}) outside 0..{n}")));
                }
                if u == v {
                    return Err(Error::parse(rec.line, format!("loop at {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(Error::parse(rec.line, format!("edge ({u}, {v}) repeated")));
                }
                edges.push((u, v));
            }
            ("e", None) => return Err(Error::parse(rec.line, "edge before `p` header")),
            _ => return rec.unknown(),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(last, "missing `p` header"))?;
    if edges.len() != m {
        return Err(Error::parse(last, format!("header announces {m} edges, found {}", edges.len())));
    }
    at(last, Graph::from_edges(n, edges))
}

pub fn write_orientation(h: &PartialOrientation) -> String {
    h.arcs().map(|(u, v)| format!("a {u} {v}\n")).collect()
}

/// Arcs must be edges of `g`.
pub fn parse_orientation(text: &str, g: &Graph) -> Result<PartialOrientation> {
    let mut h = PartialOrientation::empty(g.n());
    for mut rec in records(text) {
        if rec.tag != "a" {
            return rec.unknown();
        }
        let (u, v) = (rec.next("tail")?, rec.next("head")?);
        rec.end()?;
        at(rec.line, check_pair(g, u, v))?;
        at(rec.line, h.add_arc(g, u, v))?;
    }
    Ok(h)
}

fn check_pair(g: &Graph, u: usize, v: usize) -> Result<()> {
    g.check_vertex(u)?;
    g.check_vertex(v)
}

pub fn write_fractional(p: &FractionalOrientation) -> String {
    p.entries().map(|(u, v, w)| format!("w {u} {v} {w}\n")).collect()
}

pub fn parse_fractional(text: &str, g: &Graph) -> Result<FractionalOrientation> {
    let mut p = FractionalOrientation::zeros(g.n());
    for mut rec in records(text) {
        if rec.tag != "w" {
            return rec.unknown();
        }
        let (u, v, w): (usize, usize, f64) = (rec.next("tail")?, rec.next("head")?, rec.next("weight")?);
        rec.end()?;
        at(rec.line, check_pair(g, u, v))?;
        at(rec.line, p.set(g, u, v, w))?;
    }
    Ok(p)
}

/// Untagged `u v` lines.
pub fn write_pairs(pairs: &[(usize, usize)]) -> String {
    pairs.iter().map(|(u, v)| format!("{u} {v}\n")).collect()
}

pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        let parse = |t: &str| t.parse::<usize>().map_err(|_| Error::parse(i + 1, format!("bad vertex `{t}`")));
        match toks[..] {
            [a, b] => out.push((parse(a)?, parse(b)?)),
            _ => return Err(Error::parse(i + 1, "expected `u v`")),
        }
    }
    Ok(out)
}

pub fn write_dual(y: &BTreeMap<(usize, usize), f64>) -> String {
    y.iter().map(|((u, v), w)| format!("y {u} {v} {w}\n")).collect()
}

pub fn write_certificate(cert: &DualCertificate) -> String {
    write_dual(&cert.y)
}

/// Pair weights keyed with `u < v`; repeated pairs are an error.
pub fn parse_dual(text: &str) -> Result<BTreeMap<(usize, usize), f64>> {
    let mut y = BTreeMap::new();
    for mut rec in records(text) {
        if rec.tag != "y" {
            return rec.unknown();
        }
        let (u, v, w): (usize, usize, f64) = (rec.next("vertex")?, rec.next("vertex")?, rec.next("weight")?);
        rec.end()?;
        if u == v {
            return Err(Error::parse(rec.line, "pair with equal ends"));
        }
        if y.insert((u.min(v), u.max(v)), w).is_some() {
            return Err(Error::parse(rec.line, format!("pair ({u}, {v}) repeated")));
        }
    }
    Ok(y)
}

pub fn write_tree_model(t: &TreeModel) -> String {
    let mut s = format!("tm {} {} {}\n", t.m(), t.d(), t.leaf_count());
    for x in 0..t.leaf_count() {
        s += &format!("l {x} {}\n", t.label(x));
    }
    for x in 0..t.node_count() {
        if let Some(p) = t.parent(x) {
            s += &format!("t {x} {p}\n");
        }
    }
    for i in 1..=t.d() {
        for (a, b) in t.signature(i) {
            s += &format!("s {i} {a} {b}\n");
        }
    }
    s
}

/// Node ids run over `0..N` where `N - 1` is the largest id mentioned; the
/// root is the one node without a `t` record.
pub fn parse_tree_model(text: &str) -> Result<TreeModel> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut labels: BTreeMap<usize, usize> = BTreeMap::new();
    let mut parents: BTreeMap<usize, usize> = BTreeMap::new();
    let mut sig: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut last = 1;
    for mut rec in records(text) {
        last = rec.line;
        if rec.tag == "tm" {
            if header.is_some() {
                return Err(Error::parse(rec.line, "repeated header"));
            }
            let h = (rec.next("m")?, rec.next("d")?, rec.next("leaf count")?);
            rec.end()?;
            sig = vec![Vec::new(); h.1];
            header = Some(h);
            continue;
        }
        let Some((_, d, leaves)) = header else {
            return Err(Error::parse(rec.line, "record before `tm` header"));
        };
        match rec.tag {
            "l" => {
                let (x, l): (usize, usize) = (rec.next("leaf")?, rec.next("label")?);
                rec.end()?;
                if x >= leaves {
                    return Err(Error::parse(rec.line, format!("leaf id {x} outside 0..{leaves}")));
                }
                if labels.insert(x, l).is_some() {
                    return Err(Error::parse(rec.line, format!("leaf {x} labelled twice")));
                }
            }
            "t" => {
                let (c, p): (usize, usize) = (rec.next("child")?, rec.next("parent")?);
                rec.end()?;
                if parents.insert(c, p).is_some() {
                    return Err(Error::parse(rec.line, format!("node {c} has two parents")));
                }
            }
            "s" => {
                let (i, a, b): (usize, usize, usize) = (rec.next("level")?, rec.next("label")?, rec.next("label")?);
                rec.end()?;
                if i == 0 || i > d {
                    return Err(Error::parse(rec.line, format!("level {i} outside 1..={d}")));
                }
                sig[i - 1].push((a, b));
            }
            _ => return rec.unknown(),
        }
    }
    let (m, d, leaves) = header.ok_or_else(|| Error::parse(last, "missing `tm` header"))?;
    let nodes = parents.iter().map(|(&c, &p)| c.max(p) + 1).max().unwrap_or(0).max(leaves);
    let label = (0..leaves)
        .map(|x| labels.get(&x).copied().ok_or_else(|| Error::parse(last, format!("leaf {x} has no label"))))
        .collect::<Result<Vec<_>>>()?;
    let parent = (0..nodes).map(|x| parents.get(&x).copied()).collect();
    at(last, TreeModel::new(m, d, leaves, parent, label, sig))
}

pub fn write_intervals(set: &[Interval]) -> String {
    set.iter().map(|(l, r)| format!("i {l} {r}\n")).collect()
}

pub fn parse_intervals(text: &str) -> Result<Vec<Interval>> {
    let mut out = Vec::new();
    for mut rec in records(text) {
        if rec.tag != "i" {
            return rec.unknown();
        }
        let iv: Interval = (rec.next("left end")?, rec.next("right end")?);
        rec.end()?;
        out.push(iv);
    }
    Ok(out)
}

pub fn write_hierarchy(h: &PartitionHierarchy) -> String {
    let mut s = String::new();
    for (id, node) in &h.nodes {
        match node {
            HierarchyNode::Leaf(vs) => {
                s += &format!("leaf {id}");
                for v in vs {
                    s += &format!(" {v}");
                }
                s.push('\n');
            }
            HierarchyNode::Split(l, r) => s += &format!("node {id} {l} {r}\n"),
        }
    }
    s + &format!("root {}\n", h.root)
}

pub fn parse_hierarchy(text: &str) -> Result<PartitionHierarchy> {
    let mut nodes = BTreeMap::new();
    let mut root = None;
    let mut last = 1;
    for mut rec in records(text) {
        last = rec.line;
        let node = match rec.tag {
            "leaf" => {
                let id = rec.next("node id")?;
                (id, HierarchyNode::Leaf(rec.rest_as("vertex")?))
            }
            "node" => {
                let id = rec.next("node id")?;
                let split = HierarchyNode::Split(rec.next("child")?, rec.next("child")?);
                rec.end()?;
                (id, split)
            }
            "root" => {
                if root.replace(rec.next("node id")?).is_some() {
                    return Err(Error::parse(rec.line, "repeated root"));
                }
                rec.end()?;
                continue;
            }
            _ => return rec.unknown(),
        };
        if nodes.insert(node.0, node.1).is_some() {
            return Err(Error::parse(rec.line, "repeated node id"));
        }
    }
    let root = root.ok_or_else(|| Error::parse(last, "missing `root` record"))?;
    Ok(PartitionHierarchy { nodes, root })
}

/// `key value...` lines, keys sorted. Values keep their inner spacing
/// normalised to single spaces.
pub type Metadata = BTreeMap<String, String>;

pub fn write_metadata(meta: &Metadata) -> String {
    meta.iter().map(|(k, v)| if v.is_empty() { format!("{k}\n") } else { format!("{k} {v}\n") }).collect()
}

pub fn parse_metadata(text: &str) -> Result<Metadata> {
    let mut meta = Metadata::new();
    for rec in records(text) {
        let value = rec.rest.collect::<Vec<_>>().join(" ");
        if meta.insert(rec.tag.to_string(), value).is_some() {
            return Err(Error::parse(rec.line, format!("key `{}` repeated", rec.tag)));
        }
    }
    Ok(meta)
}

/// Space-separated list, the metadata encoding of a vertex set.
pub fn join_list<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// `u v dist path...` or `u v >r`.
pub fn format_query_line(u: usize, v: usize, answer: &QueryAnswer) -> String {
    match answer.outcome {
        QueryOutcome::Distance(d) => format!("{u} {v} {d} {}", join_list(&answer.path)),
        QueryOutcome::GreaterThan(r) => format!("{u} {v} >{r}"),
    }
}
