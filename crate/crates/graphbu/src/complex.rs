//! Discrete models of the two-point configuration spaces of a graph.
//!
//! A cell is a pair of disjoint closed cells of the graph (vertex or edge),
//! ordered for the model of the ordered configuration space and unordered
//! for its quotient. The complex stores the Hasse diagram of face relations
//! and the orientation convention for 1-cells: the cell with vertex
//! ingredient `u` and edge ingredient `(v1,v2)` runs from "u with v1" to
//! "u with v2".

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::OrderedGraph;
use crate::word::Sign;

/// A closed cell of the base graph: a vertex or an edge `(lo, hi)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum GCell {
    V(usize),
    E(usize, usize),
}

impl GCell {
    pub fn edge(lo: usize, hi: usize) -> GCell {
        assert!(lo < hi, "edge endpoints must be ordered");
        GCell::E(lo, hi)
    }

    pub fn dim(&self) -> usize {
        match self {
            GCell::V(_) => 0,
            GCell::E(..) => 1,
        }
    }

    pub fn closure_contains(&self, v: usize) -> bool {
        match *self {
            GCell::V(u) => u == v,
            GCell::E(a, b) => a == v || b == v,
        }
    }

    pub fn disjoint(&self, other: &GCell) -> bool {
        match *self {
            GCell::V(u) => !other.closure_contains(u),
            GCell::E(a, b) => !other.closure_contains(a) && !other.closure_contains(b),
        }
    }
}

impl fmt::Display for GCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GCell::V(v) => write!(f, "{v}"),
            GCell::E(a, b) => write!(f, "({a},{b})"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum CellKind {
    Ordered,
    Unordered,
}

/// A cell of one of the two models. For unordered cells the ingredients
/// are kept in canonical order (vertices before edges, then by value), so
/// equality is syntactic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cell {
    pub kind: CellKind,
    pub a: GCell,
    pub b: GCell,
}

impl Cell {
    pub fn ordered(a: GCell, b: GCell) -> Cell {
        debug_assert!(a.disjoint(&b), "cell ingredients must be disjoint");
        Cell {
            kind: CellKind::Ordered,
            a,
            b,
        }
    }

    pub fn unordered(a: GCell, b: GCell) -> Cell {
        debug_assert!(a.disjoint(&b), "cell ingredients must be disjoint");
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        Cell {
            kind: CellKind::Unordered,
            a,
            b,
        }
    }

    pub fn dim(&self) -> usize {
        self.a.dim() + self.b.dim()
    }

    /// Swaps the coordinates of an ordered cell (the deck transformation).
    pub fn swap(&self) -> Cell {
        assert_eq!(self.kind, CellKind::Ordered);
        Cell {
            kind: CellKind::Ordered,
            a: self.b,
            b: self.a,
        }
    }

    /// The orbit of an ordered cell under the coordinate swap.
    pub fn project(&self) -> Cell {
        assert_eq!(self.kind, CellKind::Ordered);
        Cell::unordered(self.a, self.b)
    }

    /// The two ordered cells over an unordered cell.
    pub fn lifts(&self) -> [Cell; 2] {
        assert_eq!(self.kind, CellKind::Unordered);
        [Cell::ordered(self.a, self.b), Cell::ordered(self.b, self.a)]
    }

    /// Ingredients as (vertex, edge) for a 1-cell.
    pub fn vertex_edge(&self) -> Option<(usize, (usize, usize))> {
        match (self.a, self.b) {
            (GCell::V(u), GCell::E(s, t)) | (GCell::E(s, t), GCell::V(u)) => Some((u, (s, t))),
            _ => None,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CellKind::Ordered => write!(f, "({},{})", self.a, self.b),
            CellKind::Unordered => write!(f, "{{{},{}}}", self.a, self.b),
        }
    }
}

pub type CellId = usize;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Dir {
    Fwd,
    Back,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Fwd => Dir::Back,
            Dir::Back => Dir::Fwd,
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            Dir::Fwd => Sign::Plus,
            Dir::Back => Sign::Minus,
        }
    }
}

/// One of the two configuration complexes, as an explicit cell poset.
/// Cell ids index the canonical (dimension, ingredients) sort, so they are
/// stable across runs.
pub struct CellComplex {
    pub kind: CellKind,
    cells: Vec<Cell>,
    index: HashMap<Cell, CellId>,
    faces: Vec<Vec<CellId>>,
    cofaces: Vec<Vec<CellId>>,
    dim_ranges: [std::ops::Range<usize>; 3],
}

impl CellComplex {
    pub fn cell(&self, id: CellId) -> Cell {
        self.cells[id]
    }

    pub fn id_of(&self, cell: &Cell) -> Option<CellId> {
        self.index.get(cell).copied()
    }

    pub fn require(&self, cell: &Cell) -> Result<CellId> {
        self.id_of(cell).ok_or_else(|| {
            Error::InvalidInput(format!("cell {cell} does not belong to the complex"))
        })
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn dim(&self, id: CellId) -> usize {
        self.cells[id].dim()
    }

    pub fn ids_of_dim(&self, d: usize) -> std::ops::Range<usize> {
        self.dim_ranges[d].clone()
    }

    pub fn count_of_dim(&self, d: usize) -> usize {
        self.dim_ranges[d].len()
    }

    pub fn faces(&self, id: CellId) -> &[CellId] {
        &self.faces[id]
    }

    pub fn cofaces(&self, id: CellId) -> &[CellId] {
        &self.cofaces[id]
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=2)
            .map(|d| (1 - 2 * (d as i64 % 2)) * self.count_of_dim(d) as i64)
            .sum()
    }

    /// Initial and terminal 0-cells of a 1-cell under the orientation
    /// convention.
    pub fn endpoints(&self, id: CellId) -> (CellId, CellId) {
        let c = self.cells[id];
        assert_eq!(c.dim(), 1, "endpoints are defined for 1-cells");
        let (init, term) = endpoints_of(c);
        (self.index[&init], self.index[&term])
    }

    /// The boundary of a 2-cell as a closed edge path of its four sides,
    /// starting from the corner with both lower endpoints.
    pub fn boundary_square(&self, id: CellId) -> EdgePath {
        let c = self.cells[id];
        assert_eq!(c.dim(), 2, "boundary squares are defined for 2-cells");
        let (e1, e2) = match (c.a, c.b) {
            (GCell::E(a1, b1), GCell::E(a2, b2)) => ((a1, b1), (a2, b2)),
            _ => unreachable!("2-cells have two edge ingredients"),
        };
        let (u1, v1) = e1;
        let (u2, v2) = e2;
        let mk = |x: GCell, y: GCell| match c.kind {
            CellKind::Ordered => Cell::ordered(x, y),
            CellKind::Unordered => Cell::unordered(x, y),
        };
        let start = self.index[&mk(GCell::V(u1), GCell::V(u2))];
        let steps = vec![
            (self.index[&mk(GCell::E(u1, v1), GCell::V(u2))], Dir::Fwd),
            (self.index[&mk(GCell::V(v1), GCell::E(u2, v2))], Dir::Fwd),
            (self.index[&mk(GCell::E(u1, v1), GCell::V(v2))], Dir::Back),
            (self.index[&mk(GCell::V(u1), GCell::E(u2, v2))], Dir::Back),
        ];
        EdgePath { start, steps }
    }

    /// Connected components of the 1-skeleton.
    pub fn component_count(&self) -> usize {
        let zero = self.ids_of_dim(0);
        if zero.is_empty() {
            return 0;
        }
        let mut comp: HashMap<CellId, usize> = HashMap::new();
        let mut count = 0;
        for v in zero.clone() {
            if comp.contains_key(&v) {
                continue;
            }
            count += 1;
            let mut stack = vec![v];
            comp.insert(v, count);
            while let Some(u) = stack.pop() {
                for &e in self.cofaces(u) {
                    if self.dim(e) != 1 {
                        continue;
                    }
                    for &w in self.faces(e) {
                        if let std::collections::hash_map::Entry::Vacant(e) = comp.entry(w) {
                            e.insert(count);
                            stack.push(w);
                        }
                    }
                }
            }
        }
        count
    }

    /// Canonical cell dump, one line per cell, for golden tests.
    pub fn dump(&self) -> String {
        let mut lines: Vec<String> = self
            .cells
            .iter()
            .map(|c| format!("{}:{}", c, c.dim()))
            .collect();
        lines.sort();
        lines.join("\n")
    }
}

fn endpoints_of(c: Cell) -> (Cell, Cell) {
    match (c.kind, c.a, c.b) {
        (CellKind::Ordered, GCell::V(u), GCell::E(s, t)) => (
            Cell::ordered(GCell::V(u), GCell::V(s)),
            Cell::ordered(GCell::V(u), GCell::V(t)),
        ),
        (CellKind::Ordered, GCell::E(s, t), GCell::V(u)) => (
            Cell::ordered(GCell::V(s), GCell::V(u)),
            Cell::ordered(GCell::V(t), GCell::V(u)),
        ),
        (CellKind::Unordered, _, _) => {
            let (u, (s, t)) = c.vertex_edge().expect("1-cell has a vertex and an edge");
            (
                Cell::unordered(GCell::V(u), GCell::V(s)),
                Cell::unordered(GCell::V(u), GCell::V(t)),
            )
        }
        _ => panic!("not a 1-cell"),
    }
}

/// Enumerates every pair of disjoint closed cells of the graph.
pub fn build_complex(og: &OrderedGraph, kind: CellKind) -> CellComplex {
    let n = og.vertex_count();
    let mut gcells: Vec<GCell> = (0..n).map(GCell::V).collect();
    gcells.extend(
        og.graph()
            .edges()
            .into_iter()
            .map(|(u, v)| GCell::edge(u, v)),
    );

    let mut cells: Vec<Cell> = Vec::new();
    match kind {
        CellKind::Ordered => {
            for &a in &gcells {
                for &b in &gcells {
                    if a.disjoint(&b) {
                        cells.push(Cell::ordered(a, b));
                    }
                }
            }
        }
        CellKind::Unordered => {
            for (i, &a) in gcells.iter().enumerate() {
                for &b in &gcells[i + 1..] {
                    if a.disjoint(&b) {
                        cells.push(Cell::unordered(a, b));
                    }
                }
            }
        }
    }
    cells.sort_by_key(|c| (c.dim(), *c));
    cells.dedup();

    let index: HashMap<Cell, CellId> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dim_ranges = [0..0, 0..0, 0..0];
    for (d, range) in dim_ranges.iter_mut().enumerate() {
        let lo = cells.partition_point(|c| c.dim() < d);
        let hi = cells.partition_point(|c| c.dim() <= d);
        *range = lo..hi;
    }

    let mut faces: Vec<Vec<CellId>> = vec![Vec::new(); cells.len()];
    let mut cofaces: Vec<Vec<CellId>> = vec![Vec::new(); cells.len()];
    for (id, &c) in cells.iter().enumerate() {
        let fs: Vec<Cell> = match c.dim() {
            0 => Vec::new(),
            1 => {
                let (i, t) = endpoints_of(c);
                vec![i, t]
            }
            2 => match (c.a, c.b) {
                (GCell::E(u1, v1), GCell::E(u2, v2)) => {
                    let mk = |x: GCell, y: GCell| match kind {
                        CellKind::Ordered => Cell::ordered(x, y),
                        CellKind::Unordered => Cell::unordered(x, y),
                    };
                    vec![
                        mk(GCell::E(u1, v1), GCell::V(u2)),
                        mk(GCell::E(u1, v1), GCell::V(v2)),
                        mk(GCell::V(u1), GCell::E(u2, v2)),
                        mk(GCell::V(v1), GCell::E(u2, v2)),
                    ]
                }
                _ => unreachable!(),
            },
            _ => unreachable!(),
        };
        let mut ids: Vec<CellId> = fs.iter().map(|f| index[f]).collect();
        ids.sort_unstable();
        ids.dedup();
        for &f in &ids {
            cofaces[f].push(id);
        }
        faces[id] = ids;
    }

    CellComplex {
        kind,
        cells,
        index,
        faces,
        cofaces,
        dim_ranges,
    }
}

/// An edge path in the 1-skeleton: a start 0-cell and directed 1-cell steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePath {
    pub start: CellId,
    pub steps: Vec<(CellId, Dir)>,
}

impl EdgePath {
    pub fn empty(start: CellId) -> EdgePath {
        EdgePath {
            start,
            steps: Vec::new(),
        }
    }

    pub fn end(&self, cx: &CellComplex) -> CellId {
        let mut cur = self.start;
        for &(e, d) in &self.steps {
            let (i, t) = cx.endpoints(e);
            cur = match d {
                Dir::Fwd => t,
                Dir::Back => i,
            };
        }
        cur
    }

    pub fn is_closed(&self, cx: &CellComplex) -> bool {
        self.end(cx) == self.start
    }

    /// Checks that consecutive steps chain head to tail.
    pub fn validate(&self, cx: &CellComplex) -> Result<()> {
        let mut cur = self.start;
        for &(e, d) in &self.steps {
            if cx.dim(e) != 1 {
                return Err(Error::InvalidInput(format!(
                    "path step {} is not a 1-cell",
                    cx.cell(e)
                )));
            }
            let (i, t) = cx.endpoints(e);
            let (from, to) = match d {
                Dir::Fwd => (i, t),
                Dir::Back => (t, i),
            };
            if from != cur {
                return Err(Error::InvalidInput(format!(
                    "path step {} does not start at {}",
                    cx.cell(e),
                    cx.cell(cur)
                )));
            }
            cur = to;
        }
        Ok(())
    }

    pub fn reverse(&self, cx: &CellComplex) -> EdgePath {
        EdgePath {
            start: self.end(cx),
            steps: self
                .steps
                .iter()
                .rev()
                .map(|&(e, d)| (e, d.flip()))
                .collect(),
        }
    }

    pub fn concat(&self, cx: &CellComplex, other: &EdgePath) -> EdgePath {
        debug_assert_eq!(self.end(cx), other.start, "paths must chain");
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().copied());
        EdgePath {
            start: self.start,
            steps,
        }
    }
}

/// Pushes a path of the ordered complex down to the unordered one.
pub fn project_path(d2: &CellComplex, ud2: &CellComplex, path: &EdgePath) -> EdgePath {
    assert_eq!(d2.kind, CellKind::Ordered);
    assert_eq!(ud2.kind, CellKind::Unordered);
    let start = ud2.index[&d2.cell(path.start).project()];
    let steps = path
        .steps
        .iter()
        .map(|&(e, d)| {
            let cell = d2.cell(e);
            let proj = ud2.index[&cell.project()];
            // the projection preserves the orientation convention: both the
            // ordered cell and its image run from "u with s" to "u with t"
            (proj, d)
        })
        .collect();
    EdgePath { start, steps }
}

/// Lifts a path of the unordered complex through the double covering,
/// starting at a chosen ordered 0-cell over the path's start.
pub fn lift_path(
    ud2: &CellComplex,
    d2: &CellComplex,
    path: &EdgePath,
    start: CellId,
) -> Result<EdgePath> {
    assert_eq!(d2.kind, CellKind::Ordered);
    assert_eq!(ud2.kind, CellKind::Unordered);
    let start_cell = d2.cell(start);
    if ud2.require(&start_cell.project())? != path.start {
        return Err(Error::InvalidInput(format!(
            "lift start {} does not project to the path start {}",
            start_cell,
            ud2.cell(path.start)
        )));
    }
    let mut cur = start_cell;
    let mut steps = Vec::with_capacity(path.steps.len());
    for &(e, d) in &path.steps {
        let (u, (s, t)) = ud2
            .cell(e)
            .vertex_edge()
            .ok_or_else(|| Error::InvalidInput("path step is not a 1-cell".into()))?;
        // the step leaves the 0-cell {u, from} where from is s (forward) or t (backward)
        let from = match d {
            Dir::Fwd => s,
            Dir::Back => t,
        };
        let to = match d {
            Dir::Fwd => t,
            Dir::Back => s,
        };
        let lifted = match (cur.a, cur.b) {
            (GCell::V(x), GCell::V(y)) if x == u && y == from => {
                cur = Cell::ordered(GCell::V(u), GCell::V(to));
                Cell::ordered(GCell::V(u), GCell::edge(s, t))
            }
            (GCell::V(x), GCell::V(y)) if x == from && y == u => {
                cur = Cell::ordered(GCell::V(to), GCell::V(u));
                Cell::ordered(GCell::edge(s, t), GCell::V(u))
            }
            _ => {
                return Err(Error::Internal(format!(
                    "lift lost the covering: at {} over step {}",
                    cur,
                    ud2.cell(e)
                )))
            }
        };
        steps.push((d2.require(&lifted)?, d));
    }
    Ok(EdgePath { start, steps })
}
