//! The built-in graph corpus used by the verification suite and the
//! shipped example files: a handful of named graphs covering every branch
//! of the machinery, a seeded random-graph generator, and the involuted
//! source graphs.

use rand::Rng;

use crate::error::Result;
use crate::graph::{Graph, MultiGraph};
use crate::involution::InvolutionGraph;

pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
    pub root: Option<u32>,
    pub tree: Option<Vec<(u32, u32)>>,
}

impl CorpusEntry {
    fn plain(name: &str, graph: Graph) -> CorpusEntry {
        CorpusEntry {
            name: name.to_string(),
            graph,
            root: None,
            tree: None,
        }
    }
}

pub fn star_y() -> Graph {
    Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap()
}

pub fn h_tree() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap()
}

pub fn k4() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

pub fn k5() -> Graph {
    let mut edges = Vec::new();
    for u in 0..5 {
        for v in u + 1..5 {
            edges.push((u, v));
        }
    }
    Graph::from_edges(5, &edges).unwrap()
}

pub fn k33() -> Graph {
    let mut edges = Vec::new();
    for u in 0..3 {
        for v in 3..6 {
            edges.push((u, v));
        }
    }
    Graph::from_edges(6, &edges).unwrap()
}

/// Two vertices joined by three edges, subdivided into a simplicial graph.
pub fn theta_graph() -> Graph {
    let raw =
        MultiGraph::from_neighbor_lists(vec![vec![1, 1, 1], vec![0, 0, 0]], vec![0, 1]).unwrap();
    crate::graph::subdivide_to_simplicial(&raw).unwrap()
}

/// A 4-cycle with one chord. Under the default ordering the first deleted
/// edge spans root to last vertex, which exercises the anchor fallback of
/// the linear branch.
pub fn circle_with_chord() -> Graph {
    Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap()
}

/// A 5-cycle with one chord; its default ordering keeps the first deleted
/// edge as the linear-branch anchor.
pub fn circle5_with_chord() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)]).unwrap()
}

/// Triangle with a pendant vertex: one independent cycle, linear tree.
pub fn triangle_tail() -> Graph {
    Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (1, 3)]).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// The named corpus. The second theta entry forces a spanning-path tree,
/// which turns its construction branch from essential to linear, so both
/// branches run on the same graph.
pub fn named_corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry::plain("star_y", star_y()),
        CorpusEntry::plain("h_tree", h_tree()),
        CorpusEntry::plain("k4", k4()),
        CorpusEntry {
            name: "theta_path_tree".to_string(),
            graph: theta_graph(),
            root: Some(3),
            tree: Some(vec![(0, 3), (0, 2), (1, 2), (1, 4)]),
        },
        CorpusEntry::plain("k5", k5()),
        CorpusEntry::plain("k33", k33()),
        CorpusEntry::plain("theta", theta_graph()),
        CorpusEntry::plain("circle_chord", circle_with_chord()),
        CorpusEntry::plain("circle5_chord", circle5_with_chord()),
        CorpusEntry::plain("triangle_tail", triangle_tail()),
    ]
}

/// A random connected simplicial graph with at most `max_vertices`
/// vertices: a random tree plus a few random chords.
pub fn random_graph(rng: &mut impl Rng, max_vertices: usize) -> Result<Graph> {
    let n = rng.gen_range(4..=max_vertices);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        let p = rng.gen_range(0..v);
        edges.push((p, v));
    }
    let extra = rng.gen_range(0..=4);
    let mut attempts = 0;
    let mut added = 0;
    while added < extra && attempts < 40 {
        attempts += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let e = (u.min(v), u.max(v));
        if u != v && !edges.contains(&e) {
            edges.push(e);
            added += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// 2n-cycle with the antipodal involution; Euler characteristic zero.
pub fn antipodal_cycle(n: usize) -> InvolutionGraph {
    let total = 2 * n;
    let g = cycle(total);
    let tau = (0..total).map(|i| (i + n) % total).collect();
    InvolutionGraph::new(g, tau).unwrap()
}

/// Two branch vertices joined by `2h` disjoint length-2 paths; the
/// involution swaps the branch vertices and pairs the paths, giving
/// Euler characteristic `2 - 2h`.
pub fn banana(h: usize) -> InvolutionGraph {
    let k = 2 * h;
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((0, 2 + i));
        edges.push((1, 2 + i));
    }
    let g = Graph::from_edges(2 + k, &edges).unwrap();
    let mut tau = vec![0; 2 + k];
    tau[0] = 1;
    tau[1] = 0;
    for i in 0..h {
        tau[2 + 2 * i] = 2 + 2 * i + 1;
        tau[2 + 2 * i + 1] = 2 + 2 * i;
    }
    InvolutionGraph::new(g, tau).unwrap()
}

/// Involuted sources spanning ranks m = 0, 1, 2.
pub fn involution_corpus() -> Vec<(&'static str, InvolutionGraph)> {
    vec![
        ("antipodal_c6", antipodal_cycle(3)),
        ("banana4", banana(2)),
        ("banana6", banana(3)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::model_report;
    use crate::graph::{order_graph, subdivide_to_simplicial};
    use crate::io::{parse_graph_text, render_graph, render_involution_graph};
    use std::path::PathBuf;

    fn corpus_dir() -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
    }

    /// The shipped corpus files, generated from the builders above. The
    /// theta file is left raw to exercise subdivision on load.
    fn shipped_files() -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = Vec::new();
        let graphs: Vec<(&str, String)> = vec![
            ("star_y", render_graph(&star_y())),
            ("h_tree", render_graph(&h_tree())),
            ("k4", render_graph(&k4())),
            ("k5", render_graph(&k5())),
            ("k33", render_graph(&k33())),
            ("theta", "graph 2\nv 0: 1 1 1\nv 1: 0 0 0\n".to_string()),
            ("circle_chord", render_graph(&circle_with_chord())),
            ("circle5_chord", render_graph(&circle5_with_chord())),
            ("triangle_tail", render_graph(&triangle_tail())),
            ("c4", render_graph(&cycle(4))),
            ("path3", "graph 3\nv 0: 1\nv 1: 0 2\nv 2: 1\n".to_string()),
        ];
        for (name, text) in graphs {
            let parsed = parse_graph_text(&text).unwrap();
            let graph = subdivide_to_simplicial(&parsed.multigraph).unwrap();
            let og = order_graph(&graph, None, None).unwrap();
            let golden = model_report(name, &graph, &og).unwrap();
            out.push((format!("{name}.graph"), text));
            out.push((format!("{name}.golden"), golden));
        }
        for (name, ig) in involution_corpus() {
            out.push((format!("gamma_{name}.graph"), render_involution_graph(&ig)));
        }
        out.push(("class_trivial.txt".into(), "1\n".into()));
        out.push(("class_circle_odd.txt".into(), "z1^3\n".into()));
        out.push(("class_circle_even.txt".into(), "z1^2\n".into()));
        out.push((
            "class_banana4_theta.txt".into(),
            "# images of a, a1, a1' as words in the deleted edges\nz1\nz2^-1\nz1*z2\n".into(),
        ));
        out
    }

    #[test]
    fn shipped_corpus_matches_builders() {
        for (name, expected) in shipped_files() {
            let path = corpus_dir().join(&name);
            let actual = std::fs::read_to_string(&path)
                .unwrap_or_else(|_| panic!("missing corpus file {name}; run the regenerate test"));
            assert_eq!(actual, expected, "corpus file {name} is out of date");
        }
    }

    #[test]
    #[ignore = "writes the corpus directory; run explicitly after format changes"]
    fn regenerate_corpus_files() {
        std::fs::create_dir_all(corpus_dir()).unwrap();
        for (name, content) in shipped_files() {
            std::fs::write(corpus_dir().join(name), content).unwrap();
        }
    }

    #[test]
    fn theta_raw_file_subdivides_to_the_builder_graph() {
        let parsed = parse_graph_text("graph 2\nv 0: 1 1 1\nv 1: 0 0 0\n").unwrap();
        let graph = subdivide_to_simplicial(&parsed.multigraph).unwrap();
        assert_eq!(graph, theta_graph());
    }
}
