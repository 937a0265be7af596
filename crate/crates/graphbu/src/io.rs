//! Parsers for the line-oriented input formats and the generator-word
//! grammar.
//!
//! Graph files:
//!
//! ```text
//! # comment
//! graph 4
//! v 0: 1
//! v 1: 0 2 3
//! v 2: 1
//! v 3: 1
//! tau v 0 2        # involution files only: vertex orbits
//! tau e 0-1 2-1    # optional, checked against the vertex map
//! ```
//!
//! Neighbor lists are in embedding order and may repeat a neighbor (a
//! parallel edge) or the vertex itself twice (a loop); plain graphs are
//! made simplicial by subdivision on load, involuted graphs must be
//! simplicial already.
//!
//! Words: generators `z1`, `(r,(s,t))`, `((s,t),r)`, `{r,(s,t)}`, joined
//! with `*`, powered with `^k`, identity `1`, whitespace insignificant.

use std::collections::HashMap;
use std::path::Path;

use crate::complex::{Cell, GCell};
use crate::error::{Error, Result};
use crate::graph::{subdivide_to_simplicial, Graph, MultiGraph, OrderedGraph};
use crate::involution::InvolutionGraph;
use crate::word::{FreeWord, Sign};

#[derive(Debug)]
pub struct GraphFile {
    pub multigraph: MultiGraph,
    pub tau_vertices: Vec<(u32, u32)>,
    pub tau_edges: Vec<((u32, u32), (u32, u32))>,
}

pub fn parse_graph_text(text: &str) -> Result<GraphFile> {
    let mut declared: Option<usize> = None;
    let mut ids: Vec<u32> = Vec::new();
    let mut raw_lists: Vec<(usize, Vec<u32>)> = Vec::new(); // (line, neighbors)
    let mut tau_vertices = Vec::new();
    let mut tau_edges = Vec::new();
    let perr = |line: usize, msg: String| Error::Parse { line, msg };

    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("graph") => {
                let n = parts
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| perr(line_no, "expected `graph <vertex count>`".into()))?;
                if declared.replace(n).is_some() {
                    return Err(perr(line_no, "duplicate graph header".into()));
                }
            }
            Some("v") => {
                let rest = line[1..].trim_start();
                let (id_part, nbr_part) = rest
                    .split_once(':')
                    .ok_or_else(|| perr(line_no, "expected `v <id>: <neighbors>`".into()))?;
                let id = id_part
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| perr(line_no, format!("bad vertex id `{}`", id_part.trim())))?;
                if ids.contains(&id) {
                    return Err(perr(line_no, format!("duplicate vertex {id}")));
                }
                let nbrs = nbr_part
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<u32>()
                            .map_err(|_| perr(line_no, format!("bad neighbor `{t}`")))
                    })
                    .collect::<Result<Vec<u32>>>()?;
                ids.push(id);
                raw_lists.push((line_no, nbrs));
            }
            Some("tau") => match parts.next() {
                Some("v") => {
                    let a = parts.next().and_then(|t| t.parse::<u32>().ok());
                    let b = parts.next().and_then(|t| t.parse::<u32>().ok());
                    match (a, b) {
                        (Some(a), Some(b)) => tau_vertices.push((a, b)),
                        _ => return Err(perr(line_no, "expected `tau v <id> <id>`".into())),
                    }
                }
                Some("e") => {
                    let edge = |tok: Option<&str>| -> Result<(u32, u32)> {
                        let t = tok.ok_or_else(|| {
                            perr(line_no, "expected `tau e <u>-<v> <u>-<v>`".into())
                        })?;
                        let (u, v) = t
                            .split_once('-')
                            .ok_or_else(|| perr(line_no, format!("bad edge `{t}`")))?;
                        Ok((
                            u.parse()
                                .map_err(|_| perr(line_no, format!("bad edge `{t}`")))?,
                            v.parse()
                                .map_err(|_| perr(line_no, format!("bad edge `{t}`")))?,
                        ))
                    };
                    let e1 = edge(parts.next())?;
                    let e2 = edge(parts.next())?;
                    tau_edges.push((e1, e2));
                }
                _ => return Err(perr(line_no, "expected `tau v ...` or `tau e ...`".into())),
            },
            Some(tok) => return Err(perr(line_no, format!("unknown directive `{tok}`"))),
            None => unreachable!(),
        }
    }
    let n = declared.ok_or_else(|| perr(0, "missing `graph <n>` header".into()))?;
    if ids.len() != n {
        return Err(Error::InvalidGraph(format!(
            "header declares {n} vertices, found {} `v` lines",
            ids.len()
        )));
    }
    let index: HashMap<u32, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut lists: Vec<Vec<usize>> = Vec::with_capacity(n);
    for (line_no, nbrs) in &raw_lists {
        let mut list = Vec::with_capacity(nbrs.len());
        for nb in nbrs {
            let &idx = index
                .get(nb)
                .ok_or_else(|| perr(*line_no, format!("neighbor {nb} is not a declared vertex")))?;
            list.push(idx);
        }
        lists.push(list);
    }
    let multigraph = MultiGraph::from_neighbor_lists(lists, ids)?;
    Ok(GraphFile {
        multigraph,
        tau_vertices,
        tau_edges,
    })
}

/// Loads a target graph, inserting subdivision vertices if needed.
pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    let file = parse_graph_text(&text)?;
    if !file.tau_vertices.is_empty() || !file.tau_edges.is_empty() {
        return Err(Error::InvalidInput(format!(
            "{} carries involution data; it is a source graph, not a target",
            path.display()
        )));
    }
    subdivide_to_simplicial(&file.multigraph)
}

/// Loads a source graph with its involution. The graph must already be
/// simplicial so the declared involution acts on the given cells.
pub fn load_involution_graph(path: &Path) -> Result<InvolutionGraph> {
    let text = std::fs::read_to_string(path)?;
    let file = parse_graph_text(&text)?;
    involution_from_file(&file)
}

pub fn involution_from_file(file: &GraphFile) -> Result<InvolutionGraph> {
    let mg = &file.multigraph;
    let lists: Vec<Vec<usize>> = mg
        .slots
        .iter()
        .map(|l| l.iter().map(|s| s.nbr).collect())
        .collect();
    let gamma = Graph::new(lists, mg.labels.clone()).map_err(|e| {
        Error::InvalidInvolution(format!(
            "source graph must be simplicial so the involution is cellular on its own vertices \
             (subdivide it first): {e}"
        ))
    })?;
    if file.tau_vertices.is_empty() {
        return Err(Error::InvalidInvolution(
            "no `tau v` lines in the source file".into(),
        ));
    }
    let n = gamma.vertex_count();
    let mut tau: Vec<Option<usize>> = vec![None; n];
    for &(a, b) in &file.tau_vertices {
        let ia = gamma
            .index_of_label(a)
            .ok_or_else(|| Error::InvalidInvolution(format!("tau names unknown vertex {a}")))?;
        let ib = gamma
            .index_of_label(b)
            .ok_or_else(|| Error::InvalidInvolution(format!("tau names unknown vertex {b}")))?;
        for (x, y) in [(ia, ib), (ib, ia)] {
            if let Some(old) = tau[x] {
                if old != y {
                    return Err(Error::InvalidInvolution(format!(
                        "vertex {} is assigned two different images",
                        gamma.label(x)
                    )));
                }
            }
            tau[x] = Some(y);
        }
    }
    let tau: Vec<usize> = tau
        .into_iter()
        .enumerate()
        .map(|(v, t)| {
            t.ok_or_else(|| {
                Error::InvalidInvolution(format!("vertex {} has no image", gamma.label(v)))
            })
        })
        .collect::<Result<_>>()?;
    let ig = InvolutionGraph::new(gamma, tau)?;
    // optional edge-orbit lines are cross-checked against the vertex map
    for &((a, b), (c, d)) in &file.tau_edges {
        let g = ig.gamma();
        let resolve = |l: u32| {
            g.index_of_label(l)
                .ok_or_else(|| Error::InvalidInvolution(format!("tau e names unknown vertex {l}")))
        };
        let (ia, ib, ic, id) = (resolve(a)?, resolve(b)?, resolve(c)?, resolve(d)?);
        if !g.has_edge(ia, ib) || !g.has_edge(ic, id) {
            return Err(Error::InvalidInvolution(format!(
                "tau e names a non-edge {a}-{b} or {c}-{d}"
            )));
        }
        let image = (ig.tau(ia).min(ig.tau(ib)), ig.tau(ia).max(ig.tau(ib)));
        if image != (ic.min(id), ic.max(id)) {
            return Err(Error::InvalidInvolution(format!(
                "declared edge orbit {a}-{b} -> {c}-{d} disagrees with the vertex map"
            )));
        }
    }
    Ok(ig)
}

/// A parsed generator name, before resolution against a graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenName {
    Z(usize),
    VertexFirst(usize, (usize, usize)),
    EdgeFirst((usize, usize), usize),
    Unordered(usize, (usize, usize)),
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(s: &str) -> Cursor {
        Cursor {
            chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            got => Err(Error::InvalidInput(format!(
                "word syntax: expected `{c}` at position {}, found {}",
                self.pos,
                got.map_or("end of input".to_string(), |g| format!("`{g}`"))
            ))),
        }
    }

    fn parse_usize(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::InvalidInput(format!(
                "word syntax: expected a number at position {}",
                self.pos
            )));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| Error::InvalidInput(format!("number `{s}` out of range")))
    }

    fn parse_i64(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = self.parse_usize()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn parse_edge(&mut self) -> Result<(usize, usize)> {
        self.expect('(')?;
        let s = self.parse_usize()?;
        self.expect(',')?;
        let t = self.parse_usize()?;
        self.expect(')')?;
        if s >= t {
            return Err(Error::InvalidInput(format!(
                "edge ({s},{t}) must list its smaller endpoint first"
            )));
        }
        Ok((s, t))
    }

    fn parse_gen(&mut self) -> Result<GenName> {
        match self.peek() {
            Some('z') => {
                self.pos += 1;
                Ok(GenName::Z(self.parse_usize()?))
            }
            Some('{') => {
                self.pos += 1;
                let r = self.parse_usize()?;
                self.expect(',')?;
                let e = self.parse_edge()?;
                self.expect('}')?;
                Ok(GenName::Unordered(r, e))
            }
            Some('(') => {
                self.pos += 1;
                if self.peek() == Some('(') {
                    let e = self.parse_edge()?;
                    self.expect(',')?;
                    let r = self.parse_usize()?;
                    self.expect(')')?;
                    Ok(GenName::EdgeFirst(e, r))
                } else {
                    let r = self.parse_usize()?;
                    self.expect(',')?;
                    let e = self.parse_edge()?;
                    self.expect(')')?;
                    Ok(GenName::VertexFirst(r, e))
                }
            }
            got => Err(Error::InvalidInput(format!(
                "word syntax: expected a generator at position {}, found {}",
                self.pos,
                got.map_or("end of input".to_string(), |g| format!("`{g}`"))
            ))),
        }
    }
}

/// Parses a word in the generator grammar. The empty string and `1`
/// denote the identity.
pub fn parse_word(input: &str) -> Result<FreeWord<GenName>> {
    let mut cur = Cursor::new(input);
    let mut word = FreeWord::identity();
    if cur.peek().is_none() {
        return Ok(word);
    }
    loop {
        if cur.peek() == Some('1') {
            cur.pos += 1; // identity factor
        } else {
            let gen = cur.parse_gen()?;
            let exp = if cur.peek() == Some('^') {
                cur.pos += 1;
                cur.parse_i64()?
            } else {
                1
            };
            let letter = FreeWord::letter(gen, Sign::Plus).pow(exp);
            word = word.concat(&letter);
        }
        match cur.bump() {
            None => break,
            Some('*') => continue,
            Some(c) => {
                return Err(Error::InvalidInput(format!(
                    "word syntax: expected `*` between factors, found `{c}` at position {}",
                    cur.pos
                )))
            }
        }
    }
    Ok(word)
}

/// Resolves a parsed word against the deleted-edge alphabet.
pub fn resolve_zword(og: &OrderedGraph, w: &FreeWord<GenName>) -> Result<crate::braid::ZWord> {
    let mut out = crate::braid::ZWord::identity();
    for (g, s) in w.iter() {
        match g {
            GenName::Z(i) => {
                let edge = og.z_edge(*i).ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "z{i} is out of range; the target has {} deleted edges",
                        og.deleted_edges().len()
                    ))
                })?;
                out.push(edge, *s);
            }
            _ => {
                return Err(Error::InvalidInput(
                    "class words must use only z generators".into(),
                ))
            }
        }
    }
    Ok(out)
}

/// Resolves a parsed word as ordered (pure-braid) generators.
pub fn resolve_pword(w: &FreeWord<GenName>) -> Result<crate::braid::PWord> {
    let mut out = crate::braid::PWord::identity();
    for (g, s) in w.iter() {
        let cell = match g {
            GenName::VertexFirst(r, (a, b)) => ordered_cell(*r, (*a, *b), true)?,
            GenName::EdgeFirst((a, b), r) => ordered_cell(*r, (*a, *b), false)?,
            _ => {
                return Err(Error::InvalidInput(
                    "expected ordered generators `(r,(s,t))` or `((s,t),r)`".into(),
                ))
            }
        };
        out.push(cell, *s);
    }
    Ok(out)
}

/// Resolves a parsed word as unordered (full-braid) generators.
pub fn resolve_bword(w: &FreeWord<GenName>) -> Result<crate::braid::BWord> {
    let mut out = crate::braid::BWord::identity();
    for (g, s) in w.iter() {
        match g {
            GenName::Unordered(r, (a, b)) => {
                disjoint_check(*r, (*a, *b))?;
                out.push(Cell::unordered(GCell::V(*r), GCell::edge(*a, *b)), *s);
            }
            _ => {
                return Err(Error::InvalidInput(
                    "expected unordered generators `{r,(s,t)}`".into(),
                ))
            }
        }
    }
    Ok(out)
}

fn disjoint_check(r: usize, (s, t): (usize, usize)) -> Result<()> {
    if r == s || r == t {
        return Err(Error::InvalidInput(format!(
            "generator vertex {r} lies on its edge ({s},{t})"
        )));
    }
    Ok(())
}

fn ordered_cell(r: usize, e: (usize, usize), vertex_first: bool) -> Result<Cell> {
    disjoint_check(r, e)?;
    Ok(if vertex_first {
        Cell::ordered(GCell::V(r), GCell::edge(e.0, e.1))
    } else {
        Cell::ordered(GCell::edge(e.0, e.1), GCell::V(r))
    })
}

/// Loads a class file: one word per line over the z alphabet, comments
/// and blank lines skipped.
pub fn load_class(path: &Path, og: &OrderedGraph) -> Result<Vec<crate::braid::ZWord>> {
    let text = std::fs::read_to_string(path)?;
    parse_class_text(&text, og)
}

pub fn parse_class_text(text: &str, og: &OrderedGraph) -> Result<Vec<crate::braid::ZWord>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let w = parse_word(line).map_err(|e| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?;
        out.push(resolve_zword(og, &w).map_err(|e| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?);
    }
    Ok(out)
}

/// Renders a graph in the input format, embedding order preserved.
pub fn render_graph(g: &Graph) -> String {
    let mut out = format!("graph {}\n", g.vertex_count());
    for v in 0..g.vertex_count() {
        let nbrs: Vec<String> = g
            .neighbors(v)
            .iter()
            .map(|&w| g.label(w).to_string())
            .collect();
        out.push_str(&format!("v {}: {}\n", g.label(v), nbrs.join(" ")));
    }
    out
}

pub fn render_involution_graph(ig: &InvolutionGraph) -> String {
    let g = ig.gamma();
    let mut out = render_graph(g);
    let mut seen = vec![false; g.vertex_count()];
    for v in 0..g.vertex_count() {
        if !seen[v] {
            seen[v] = true;
            seen[ig.tau(v)] = true;
            out.push_str(&format!("tau v {} {}\n", g.label(v), g.label(ig.tau(v))));
        }
    }
    out
}
