//! Command implementations behind the binary: census reports, morphism
//! evaluation, decision certificates, and the verification run. All
//! output is line-oriented key-value text so golden files diff cleanly;
//! every command is deterministic for a fixed seed and input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::braid::{conjugate_by_sigma, iota, p1, theta, BraidSystem};
use crate::bu::{decide, graph_class, zword_string, Outcome, Witness};
use crate::complex::{build_complex, CellKind};
use crate::corpus::CorpusEntry;
use crate::error::{Error, Result};
use crate::graph::{order_graph, Graph, OrderedGraph};
use crate::involution::{quotient, spanning_basis};
use crate::io;
use crate::morse::build_field;
use crate::verify::{run_suite, CriterionReport, SuiteConfig};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Format {
    #[default]
    Human,
    Machine,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "human" => Ok(Format::Human),
            "machine" => Ok(Format::Machine),
            other => Err(Error::InvalidInput(format!(
                "unknown format `{other}`; use `human` or `machine`"
            ))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct GraphArgs {
    pub path: PathBuf,
    pub root: Option<u32>,
    pub tree: Option<Vec<(u32, u32)>>,
}

impl GraphArgs {
    fn ordered(&self) -> Result<(Graph, OrderedGraph)> {
        let g = io::load_graph(&self.path)?;
        let og = order_graph(&g, self.root, self.tree.as_deref())?;
        Ok((g, og))
    }
}

/// `a-b,c-d` pairs for the `--tree` flag.
pub fn parse_tree_flag(s: &str) -> Result<Vec<(u32, u32)>> {
    s.split(',')
        .map(|pair| {
            let (a, b) = pair.trim().split_once('-').ok_or_else(|| {
                Error::InvalidInput(format!("bad tree edge `{pair}`; use `a-b,c-d`"))
            })?;
            Ok((
                a.trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad vertex `{a}`")))?,
                b.trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad vertex `{b}`")))?,
            ))
        })
        .collect()
}

/// Builds the complexes and gradient fields and reports the census.
pub fn cmd_model(args: &GraphArgs, dump: Option<CellKind>, _format: Format) -> Result<String> {
    let (g, og) = args.ordered()?;
    let name = args
        .path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    if let Some(kind) = dump {
        let cx = build_complex(&og, kind);
        return Ok(cx.dump() + "\n");
    }
    model_report(&name, &g, &og)
}

/// The census text for one graph; also the golden-file format.
pub fn model_report(name: &str, g: &Graph, og: &OrderedGraph) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "graph: {name}").unwrap();
    writeln!(out, "type: {}", graph_class(g).name()).unwrap();
    writeln!(out, "vertices: {}", og.vertex_count()).unwrap();
    writeln!(out, "edges: {}", og.graph().edge_count()).unwrap();
    writeln!(out, "root-label: {}", og.graph().label(0)).unwrap();
    let numbering: Vec<String> = (0..og.vertex_count())
        .map(|v| format!("{}:{v}", og.graph().label(v)))
        .collect();
    writeln!(out, "numbering: {}", numbering.join(" ")).unwrap();
    let tree: Vec<String> = og.tree_edges().map(|(u, v)| format!("({u},{v})")).collect();
    writeln!(
        out,
        "tree-edges: {}",
        if tree.is_empty() {
            "-".into()
        } else {
            tree.join(" ")
        }
    )
    .unwrap();
    let deleted: Vec<String> = og
        .deleted_edges()
        .iter()
        .enumerate()
        .map(|(i, (x, y))| format!("z{}=({x},{y})", i + 1))
        .collect();
    writeln!(
        out,
        "deleted-edges: {}",
        if deleted.is_empty() {
            "-".into()
        } else {
            deleted.join(" ")
        }
    )
    .unwrap();
    for (kind, label) in [
        (CellKind::Ordered, "ordered"),
        (CellKind::Unordered, "unordered"),
    ] {
        let cx = build_complex(og, kind);
        let field = build_field(og, &cx)?;
        let census = field.census(&cx);
        writeln!(out, "complex {label}:").unwrap();
        writeln!(
            out,
            "  cells: dim0={} dim1={} dim2={} total={}",
            cx.count_of_dim(0),
            cx.count_of_dim(1),
            cx.count_of_dim(2),
            cx.cell_count()
        )
        .unwrap();
        writeln!(out, "  euler: {}", cx.euler_characteristic()).unwrap();
        writeln!(out, "  components: {}", cx.component_count()).unwrap();
        writeln!(
            out,
            "  critical: dim0={} dim1={} dim2={}",
            census[0], census[1], census[2]
        )
        .unwrap();
        for d in 0..=2 {
            let cells: Vec<String> = field
                .critical_of_dim(&cx, d)
                .into_iter()
                .map(|id| cx.cell(id).to_string())
                .collect();
            if !cells.is_empty() {
                writeln!(out, "  critical-cells dim{d}: {}", cells.join(" ")).unwrap();
            }
        }
    }
    writeln!(out, "field: valid").unwrap();
    Ok(out)
}

/// Evaluates one of the braid morphisms on a word.
pub fn cmd_map(args: &GraphArgs, morphism: &str, word: &str) -> Result<String> {
    let (_, og) = args.ordered()?;
    let sys = BraidSystem::build(og)?;
    let parsed = io::parse_word(word)?;
    let out = match morphism {
        "iota" => {
            let w = io::resolve_pword(&parsed)?;
            iota(&sys.gens, &w)?.to_string()
        }
        "theta" => {
            let w = io::resolve_bword(&parsed)?;
            theta(&w)?.to_string()
        }
        "p1" => {
            let w = io::resolve_pword(&parsed)?;
            zword_string(&sys.og, &p1(&sys.og, &w)?)
        }
        "conj_sigma" => {
            let w = io::resolve_pword(&parsed)?;
            conjugate_by_sigma(&sys.gens, &w)?.to_string()
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown morphism `{other}`; use iota, theta, p1, or conj_sigma"
            )))
        }
    };
    Ok(out + "\n")
}

/// The full decision pipeline; returns the certificate text and whether
/// the property fails (exit code 10).
pub fn cmd_decide(
    gamma_path: &Path,
    target_args: &GraphArgs,
    class_path: &Path,
    format: Format,
) -> Result<(String, bool)> {
    let ig = io::load_involution_graph(gamma_path)?;
    let (target, og) = target_args.ordered()?;
    let words = io::load_class(class_path, &og)?;
    let class_strings: Vec<String> = words.iter().map(|w| zword_string(&og, w)).collect();
    let decision = decide(
        &ig,
        &target,
        words,
        target_args.root,
        target_args.tree.as_deref(),
    )?;

    let q = quotient(&ig);
    let basis = spanning_basis(&q.mg, 0);
    let mut out = String::new();
    writeln!(out, "gamma: {}", gamma_path.display()).unwrap();
    writeln!(out, "gamma-vertices: {}", ig.gamma().vertex_count()).unwrap();
    writeln!(out, "gamma-euler: {}", ig.gamma().euler_characteristic()).unwrap();
    writeln!(out, "m: {}", decision.m).unwrap();
    writeln!(out, "quotient-rank: {}", basis.gens.len()).unwrap();
    writeln!(out, "target: {}", target_args.path.display()).unwrap();
    writeln!(out, "target-type: {}", decision.class.name()).unwrap();
    writeln!(out, "deleted-edges: {}", decision.deleted_edges).unwrap();
    if let Some(branch) = decision.branch {
        writeln!(out, "branch: {}", branch.name()).unwrap();
    }
    writeln!(out, "class: {}", class_strings.join(" | ")).unwrap();
    let fails = decision.fails();
    match &decision.outcome {
        Outcome::Holds { reason } => {
            writeln!(out, "decision: holds").unwrap();
            writeln!(out, "reason: {reason}").unwrap();
        }
        Outcome::Fails { witness } => {
            match witness {
                Witness::Circle { psi_c, psi_ci } => {
                    writeln!(out, "psi(c): {psi_c}").unwrap();
                    for (i, q) in psi_ci.iter().enumerate() {
                        writeln!(out, "psi(c{}): {q}", i + 1).unwrap();
                    }
                    writeln!(
                        out,
                        "check theta2(psi(c)): {} expected 1 ok",
                        psi_c.rem_euclid(2)
                    )
                    .unwrap();
                }
                Witness::Braid {
                    sigma,
                    rho,
                    lambdas,
                    psi,
                    phi,
                    checks,
                } => {
                    writeln!(out, "sigma: {sigma}").unwrap();
                    writeln!(out, "rho: {rho}").unwrap();
                    for (z, cell) in lambdas {
                        writeln!(out, "lambda {z}: {cell}").unwrap();
                    }
                    for (i, w) in psi.iter().enumerate() {
                        if i == 0 {
                            writeln!(out, "psi(c): {w}").unwrap();
                        } else {
                            writeln!(out, "psi(c{i}): {w}").unwrap();
                        }
                    }
                    let phi_names: Vec<String> = std::iter::once("a".to_string())
                        .chain(
                            (1..)
                                .take((phi.len() - 1) / 2)
                                .flat_map(|i| [format!("a{i}"), format!("a{i}'")]),
                        )
                        .collect();
                    for (name, w) in phi_names.iter().zip(phi) {
                        writeln!(out, "phi({name}): {w}").unwrap();
                    }
                    for c in checks {
                        writeln!(
                            out,
                            "check {}: {} expected {} ok",
                            c.label, c.actual, c.expected
                        )
                        .unwrap();
                    }
                }
            }
            writeln!(out, "decision: fails").unwrap();
        }
    }
    if format == Format::Human {
        writeln!(
            out,
            "{}",
            if fails {
                "the class admits a coincidence-free representative; the certificate above verifies"
            } else {
                "every representative of this class has a coincidence"
            }
        )
        .unwrap();
    }
    Ok((out, fails))
}

pub struct VerifyArgs {
    pub dir: Option<PathBuf>,
    pub config: SuiteConfig,
}

/// Runs the oracle suite over a directory of graph files (or the built-in
/// corpus), compares golden census files when present, and appends the
/// CLI sanity criterion. Returns the report text and overall success.
pub fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool)> {
    let mut out = String::new();
    let mut golden_failures = 0usize;
    let mut goldens = 0usize;
    let entries: Vec<CorpusEntry> = match &args.dir {
        None => crate::corpus::named_corpus(),
        Some(dir) => {
            let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "graph"))
                .collect();
            files.sort();
            let mut list = Vec::new();
            for path in files {
                let stem = path.file_stem().unwrap().to_string_lossy().into_owned();
                // skip involuted sources; they are inputs to `decide`
                let text = std::fs::read_to_string(&path)?;
                let parsed = io::parse_graph_text(&text)?;
                if !parsed.tau_vertices.is_empty() {
                    continue;
                }
                let graph = crate::graph::subdivide_to_simplicial(&parsed.multigraph)?;
                // golden census comparison, when a sibling file exists
                let golden_path = path.with_extension("golden");
                if golden_path.exists() {
                    goldens += 1;
                    let og = order_graph(&graph, None, None)?;
                    let actual = model_report(&stem, &graph, &og)?;
                    let expected = std::fs::read_to_string(&golden_path)?;
                    if actual != expected {
                        golden_failures += 1;
                        writeln!(out, "golden {stem}: MISMATCH").unwrap();
                        for diff in diff_lines(&expected, &actual) {
                            writeln!(out, "  {diff}").unwrap();
                        }
                    } else {
                        writeln!(out, "golden {stem}: ok").unwrap();
                    }
                }
                list.push(CorpusEntry {
                    name: stem,
                    graph,
                    root: None,
                    tree: None,
                });
            }
            list
        }
    };

    let mut reports = if entries.is_empty() && args.config.random_graphs == 0 {
        writeln!(out, "0 cases").unwrap();
        Vec::new()
    } else {
        run_suite(&entries, &args.config)
    };
    if !entries.is_empty() || args.config.random_graphs > 0 {
        reports.push(criterion10_cli_sanity());
    }
    let mut all_pass = golden_failures == 0;
    for r in &reports {
        writeln!(out, "{}", r.line()).unwrap();
        for f in &r.failures {
            writeln!(out, "  {f}").unwrap();
        }
        all_pass &= r.pass();
    }
    let passed = reports.iter().filter(|r| r.pass()).count();
    writeln!(
        out,
        "verify: {} ({}/{} criteria, {} goldens)",
        if all_pass { "PASS" } else { "FAIL" },
        passed,
        reports.len(),
        goldens
    )
    .unwrap();
    Ok((out, all_pass))
}

fn diff_lines(expected: &str, actual: &str) -> Vec<String> {
    let mut out = Vec::new();
    let (e, a): (Vec<&str>, Vec<&str>) = (expected.lines().collect(), actual.lines().collect());
    for i in 0..e.len().max(a.len()) {
        let (le, la) = (
            e.get(i).copied().unwrap_or(""),
            a.get(i).copied().unwrap_or(""),
        );
        if le != la {
            out.push(format!("- {le}"));
            out.push(format!("+ {la}"));
        }
        if out.len() >= 12 {
            out.push("...".into());
            break;
        }
    }
    out
}

/// Desk-scale sanity: the unordered model of the star has exactly one
/// critical 1-cell and its generator loop switches sheets, reproduced
/// through the command layer.
pub fn criterion10_cli_sanity() -> CriterionReport {
    let mut rep = CriterionReport {
        index: 10,
        name: "command-layer sanity on the star".into(),
        cases: 0,
        failures: Vec::new(),
    };
    let g = crate::corpus::star_y();
    rep.cases += 1;
    match order_graph(&g, Some(0), None).and_then(|og| model_report("star_y", &g, &og)) {
        Ok(report) => {
            if !report.contains("critical: dim0=1 dim1=1 dim2=0") {
                rep.failures
                    .push("unordered census of the star is not 1/1/0".into());
            }
            if !report.contains("critical-cells dim1: {2,(1,3)}") {
                rep.failures
                    .push("critical 1-cell of the star is not {2,(1,3)}".into());
            }
        }
        Err(e) => rep.failures.push(format!("model: {e}")),
    }
    rep.cases += 1;
    let map_out = (|| -> Result<(String, u8)> {
        let og = order_graph(&g, Some(0), None)?;
        let sys = BraidSystem::build(og)?;
        let parsed = io::parse_word("{2,(1,3)}")?;
        let w = io::resolve_bword(&parsed)?;
        Ok((
            theta(&w)?.to_string(),
            crate::braid::theta_lift_parity(&sys, &w)?,
        ))
    })();
    match map_out {
        Ok((printed, lifted)) => {
            if printed != "1" || lifted != 1 {
                rep.failures.push(format!(
                    "parity of the star generator printed {printed}, lift parity {lifted}"
                ));
            }
        }
        Err(e) => rep.failures.push(format!("map: {e}")),
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::Builder::new()
            .suffix(".graph")
            .tempfile()
            .unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn model_star_reports_census() {
        let f = write_temp(&io::render_graph(&crate::corpus::star_y()));
        let args = GraphArgs {
            path: f.path().to_path_buf(),
            root: Some(0),
            tree: None,
        };
        let out = cmd_model(&args, None, Format::Machine).unwrap();
        assert!(out.contains("type: tree"));
        assert!(out.contains("critical: dim0=1 dim1=1 dim2=0"));
        assert!(out.contains("critical-cells dim1: {2,(1,3)}"));
    }

    #[test]
    fn model_interval_reports_two_components() {
        let path_graph = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let f = write_temp(&io::render_graph(&path_graph));
        let args = GraphArgs {
            path: f.path().to_path_buf(),
            root: None,
            tree: None,
        };
        let out = cmd_model(&args, None, Format::Machine).unwrap();
        assert!(out.contains("type: interval"));
        assert!(out.contains("components: 2"));
    }

    #[test]
    fn model_dump_is_sorted() {
        let f = write_temp(&io::render_graph(&crate::corpus::star_y()));
        let args = GraphArgs {
            path: f.path().to_path_buf(),
            root: Some(0),
            tree: None,
        };
        let out = cmd_model(&args, Some(CellKind::Unordered), Format::Machine).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        let mut sorted = lines.clone();
        sorted.sort();
        assert_eq!(lines, sorted);
        assert!(out.contains("{0,1}:0"));
    }

    #[test]
    fn map_examples() {
        let f = write_temp(&io::render_graph(&crate::corpus::star_y()));
        let args = GraphArgs {
            path: f.path().to_path_buf(),
            root: Some(0),
            tree: None,
        };
        assert_eq!(cmd_map(&args, "theta", "{2,(1,3)}").unwrap(), "1\n");
        assert_eq!(cmd_map(&args, "iota", "").unwrap(), "1\n");
        assert_eq!(
            cmd_map(&args, "iota", "((1,3),2)").unwrap(),
            "{2,(1,3)}^2\n"
        );
        // rho-style generators project to their deleted edge
        let g = crate::corpus::triangle_tail();
        let f2 = write_temp(&io::render_graph(&g));
        let args2 = GraphArgs {
            path: f2.path().to_path_buf(),
            root: None,
            tree: None,
        };
        let og = order_graph(&g, None, None).unwrap();
        let (x, y) = og.deleted_edges()[0];
        let out = cmd_map(&args2, "p1", &format!("(({x},{y}),{})", x + 1)).unwrap();
        assert_eq!(out, "z1\n");
    }

    #[test]
    fn map_rejects_unknown_morphism() {
        let f = write_temp(&io::render_graph(&crate::corpus::star_y()));
        let args = GraphArgs {
            path: f.path().to_path_buf(),
            root: Some(0),
            tree: None,
        };
        assert!(cmd_map(&args, "nosuch", "1").is_err());
    }

    #[test]
    fn decide_certificate_roundtrip() {
        let gamma = write_temp(&io::render_involution_graph(
            &crate::corpus::antipodal_cycle(3),
        ));
        let target = write_temp(&io::render_graph(&crate::corpus::star_y()));
        let class = write_temp("1\n");
        let (out, fails) = cmd_decide(
            gamma.path(),
            &GraphArgs {
                path: target.path().to_path_buf(),
                root: Some(0),
                tree: None,
            },
            class.path(),
            Format::Machine,
        )
        .unwrap();
        assert!(fails);
        assert!(out.contains("target-type: tree"));
        assert!(out.contains("psi(c): {2,(1,3)}"));
        assert!(out.contains("decision: fails"));
    }

    #[test]
    fn decide_circle_holds_on_even_class() {
        let gamma = write_temp(&io::render_involution_graph(
            &crate::corpus::antipodal_cycle(3),
        ));
        let target = write_temp(&io::render_graph(&crate::corpus::cycle(4)));
        let class = write_temp("z1^2\n");
        let (out, fails) = cmd_decide(
            gamma.path(),
            &GraphArgs {
                path: target.path().to_path_buf(),
                root: None,
                tree: None,
            },
            class.path(),
            Format::Machine,
        )
        .unwrap();
        assert!(!fails);
        assert!(out.contains("decision: holds"));
    }

    #[test]
    fn verify_empty_dir_reports_zero_cases() {
        let dir = tempfile::tempdir().unwrap();
        let args = VerifyArgs {
            dir: Some(dir.path().to_path_buf()),
            config: SuiteConfig {
                random_graphs: 0,
                ..SuiteConfig::default()
            },
        };
        let (out, pass) = cmd_verify(&args).unwrap();
        assert!(pass);
        assert!(out.contains("0 cases"));
    }

    #[test]
    fn verify_detects_corrupted_golden() {
        let dir = tempfile::tempdir().unwrap();
        let g = crate::corpus::star_y();
        std::fs::write(dir.path().join("star.graph"), io::render_graph(&g)).unwrap();
        std::fs::write(dir.path().join("star.golden"), "graph: star\nwrong\n").unwrap();
        let args = VerifyArgs {
            dir: Some(dir.path().to_path_buf()),
            config: SuiteConfig {
                random_graphs: 0,
                fuzz_classes_per_branch: 5,
                theta_random_words: 5,
                ..SuiteConfig::default()
            },
        };
        let (out, pass) = cmd_verify(&args).unwrap();
        assert!(!pass);
        assert!(out.contains("golden star: MISMATCH"));
        assert!(out.contains("+ type: tree"));
    }

    #[test]
    fn cli_sanity_criterion_passes() {
        let rep = criterion10_cli_sanity();
        assert!(rep.pass(), "{:?}", rep.failures);
    }
}
