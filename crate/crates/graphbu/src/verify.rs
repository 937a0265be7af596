//! The oracle-equivalence suite: every closed-form table is replayed
//! against an independent computation over a corpus of graphs, and the
//! witness constructions are fuzzed end to end. The CLI `verify` command
//! and the acceptance test both run this module.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{
    conjugate_by_sigma, iota, iota_oracle, p1, p1_oracle, theta, theta_lift_parity, BWord,
    BraidSystem, PWord, ZWord,
};
use crate::bu::{
    build_key_elements, circle_brute_force, classify_circle, construct_witness, graph_class,
    Branch, CircleOutcome, GraphClass, HomotopyClass, KeyElements,
};
use crate::complex::{build_complex, CellKind};
use crate::corpus::{named_corpus, random_graph, CorpusEntry};
use crate::error::Result;
use crate::graph::order_graph;
use crate::morse::build_field;
use crate::word::Sign;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub random_graphs: usize,
    pub max_vertices: usize,
    pub fuzz_classes_per_branch: usize,
    pub theta_random_words: usize,
    pub max_word_len: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0x5eed,
            random_graphs: 20,
            max_vertices: 12,
            fuzz_classes_per_branch: 500,
            theta_random_words: 1000,
            max_word_len: 8,
        }
    }
}

#[derive(Debug)]
pub struct CriterionReport {
    pub index: usize,
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CriterionReport {
    fn new(index: usize, name: &str) -> CriterionReport {
        CriterionReport {
            index,
            name: name.to_string(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn line(&self) -> String {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        format!(
            "criterion {}: {}: {} ({} cases)",
            self.index, self.name, status, self.cases
        )
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 8 {
            self.failures.push(msg);
        } else if self.failures.len() == 8 {
            self.failures.push("... more failures suppressed".into());
        }
    }
}

struct Prepared {
    name: String,
    class: GraphClass,
    sys: Option<BraidSystem>,
}

/// Runs the whole suite over the given corpus entries plus seeded random
/// graphs. Returns one report per criterion.
pub fn run_suite(entries: &[CorpusEntry], cfg: &SuiteConfig) -> Vec<CriterionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut reports = Vec::new();

    let mut c1 = CriterionReport::new(1, "gradient-field validity and critical 0-cell census");
    let mut c2 = CriterionReport::new(2, "euler characteristic is matching-invariant");
    let mut prepared: Vec<Prepared> = Vec::new();

    let mut all: Vec<CorpusEntry> = entries
        .iter()
        .map(|e| CorpusEntry {
            name: e.name.clone(),
            graph: e.graph.clone(),
            root: e.root,
            tree: e.tree.clone(),
        })
        .collect();
    for i in 0..cfg.random_graphs {
        match random_graph(&mut rng, cfg.max_vertices) {
            Ok(graph) => all.push(CorpusEntry {
                name: format!("random_{i:02}"),
                graph,
                root: None,
                tree: None,
            }),
            Err(e) => c1.fail(format!("random_{i:02}: generation failed: {e}")),
        }
    }

    for CorpusEntry {
        name,
        graph,
        root,
        tree,
    } in &all
    {
        c1.cases += 1;
        let og = match order_graph(graph, *root, tree.as_deref()) {
            Ok(og) => og,
            Err(e) => {
                c1.fail(format!("{name}: ordering failed: {e}"));
                continue;
            }
        };
        let class = graph_class(graph);
        // field validity on both complexes, independent of the braid system
        let mut field_ok = true;
        for kind in [CellKind::Ordered, CellKind::Unordered] {
            let cx = build_complex(&og, kind);
            match build_field(&og, &cx) {
                Ok(field) => {
                    c2.cases += 1;
                    let census = field.census(&cx);
                    let crit_euler = census[0] as i64 - census[1] as i64 + census[2] as i64;
                    if cx.euler_characteristic() != crit_euler {
                        c2.fail(format!(
                            "{name} ({kind:?}): complex euler {} != critical euler {}",
                            cx.euler_characteristic(),
                            crit_euler
                        ));
                    }
                }
                Err(e) => {
                    field_ok = false;
                    c1.fail(format!("{name} ({kind:?}): {e}"));
                }
            }
        }
        if !field_ok {
            continue;
        }
        let sys = if class == GraphClass::Interval {
            None
        } else {
            match BraidSystem::build(og) {
                Ok(sys) => Some(sys),
                Err(e) => {
                    c1.fail(format!("{name}: braid system failed: {e}"));
                    None
                }
            }
        };
        prepared.push(Prepared {
            name: name.clone(),
            class,
            sys,
        });
    }
    reports.push(c1);
    reports.push(c2);

    reports.push(criterion3_iota(&prepared));
    reports.push(criterion4_conjugation(&prepared));
    reports.push(criterion5_theta(&prepared, cfg, &mut rng));
    reports.push(criterion6_p1(&prepared));
    reports.push(criterion7_key_elements(&prepared));
    reports.push(criterion8_witness_fuzz(&prepared, cfg, &mut rng));
    reports.push(criterion9_circle(&mut rng));

    reports
}

fn systems(prepared: &[Prepared]) -> impl Iterator<Item = (&str, &BraidSystem)> {
    prepared
        .iter()
        .filter_map(|p| p.sys.as_ref().map(|s| (p.name.as_str(), s)))
}

fn criterion3_iota(prepared: &[Prepared]) -> CriterionReport {
    let mut rep = CriterionReport::new(3, "inclusion closed form equals the loop oracle");
    for (name, sys) in systems(prepared) {
        for cell in &sys.gens.p2 {
            rep.cases += 1;
            let closed = match iota(&sys.gens, &PWord::letter(*cell, Sign::Plus)) {
                Ok(w) => w,
                Err(e) => {
                    rep.fail(format!("{name} {cell}: {e}"));
                    continue;
                }
            };
            match iota_oracle(sys, cell) {
                Ok(oracle) => {
                    if closed != oracle {
                        rep.fail(format!("{name} {cell}: closed {closed} != oracle {oracle}"));
                    }
                }
                Err(e) => rep.fail(format!("{name} {cell}: oracle failed: {e}")),
            }
        }
        // the squared identity for the distinguished generator
        rep.cases += 1;
        match iota(&sys.gens, &sys.gens.rho_word()) {
            Ok(w) => {
                if w != sys.gens.sigma_word().pow(2) {
                    rep.fail(format!("{name}: inclusion of rho is {w}, not sigma^2"));
                }
            }
            Err(e) => rep.fail(format!("{name}: {e}")),
        }
    }
    rep
}

fn criterion4_conjugation(prepared: &[Prepared]) -> CriterionReport {
    let mut rep = CriterionReport::new(4, "conjugation table matches the inclusion");
    for (name, sys) in systems(prepared) {
        let sg = sys.gens.sigma_word();
        for cell in &sys.gens.p2 {
            rep.cases += 1;
            let w = PWord::letter(*cell, Sign::Plus);
            let outcome: Result<(BWord, BWord)> = (|| {
                let lhs = iota(&sys.gens, &conjugate_by_sigma(&sys.gens, &w)?)?;
                let rhs = sg.concat(&iota(&sys.gens, &w)?).concat(&sg.inverse());
                Ok((lhs, rhs))
            })();
            match outcome {
                Ok((lhs, rhs)) => {
                    if lhs != rhs {
                        rep.fail(format!("{name} {cell}: {lhs} != {rhs}"));
                    }
                }
                Err(e) => rep.fail(format!("{name} {cell}: {e}")),
            }
        }
    }
    rep
}

fn criterion5_theta(
    prepared: &[Prepared],
    cfg: &SuiteConfig,
    rng: &mut ChaCha8Rng,
) -> CriterionReport {
    let mut rep =
        CriterionReport::new(5, "parity equals sheet swap; parity vanishes on pure words");
    for (name, sys) in systems(prepared) {
        for cell in &sys.gens.b2 {
            rep.cases += 1;
            let w = BWord::letter(*cell, Sign::Plus);
            match (theta(&w), theta_lift_parity(sys, &w)) {
                (Ok(t), Ok(l)) => {
                    if t != l {
                        rep.fail(format!("{name} {cell}: table {t} != lift {l}"));
                    }
                }
                (Err(e), _) | (_, Err(e)) => rep.fail(format!("{name} {cell}: {e}")),
            }
        }
    }
    // random pure words spread across the systems
    let sys_list: Vec<(&str, &BraidSystem)> = systems(prepared).collect();
    if !sys_list.is_empty() {
        for i in 0..cfg.theta_random_words {
            let (name, sys) = sys_list[i % sys_list.len()];
            rep.cases += 1;
            let mut w = PWord::identity();
            for _ in 0..rng.gen_range(0..=cfg.max_word_len) {
                let cell = sys.gens.p2[rng.gen_range(0..sys.gens.p2.len())];
                w.push(
                    cell,
                    if rng.gen_bool(0.5) {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    },
                );
            }
            match iota(&sys.gens, &w).and_then(|img| theta(&img)) {
                Ok(0) => {}
                Ok(t) => rep.fail(format!("{name}: pure word has parity {t}")),
                Err(e) => rep.fail(format!("{name}: {e}")),
            }
        }
    }
    rep
}

fn criterion6_p1(prepared: &[Prepared]) -> CriterionReport {
    let mut rep = CriterionReport::new(6, "first-coordinate projection equals the loop oracle");
    for (name, sys) in systems(prepared) {
        for cell in &sys.gens.p2 {
            rep.cases += 1;
            let w = PWord::letter(*cell, Sign::Plus);
            match (p1(&sys.og, &w), p1_oracle(sys, &w)) {
                (Ok(closed), Ok(oracle)) => {
                    if closed != oracle {
                        rep.fail(format!(
                            "{name} {cell}: closed {closed:?} != oracle {oracle:?}"
                        ));
                    }
                }
                (Err(e), _) | (_, Err(e)) => rep.fail(format!("{name} {cell}: {e}")),
            }
        }
    }
    rep
}

fn criterion7_key_elements(prepared: &[Prepared]) -> CriterionReport {
    let mut rep = CriterionReport::new(7, "key-element projection identities on both branches");
    let mut saw_essential = false;
    let mut saw_linear = false;
    for p in prepared {
        if !matches!(p.class, GraphClass::Tree | GraphClass::General) {
            continue;
        }
        let Some(sys) = p.sys.as_ref() else { continue };
        rep.cases += 1;
        match build_key_elements(sys) {
            Ok(key) => match key.branch {
                Branch::EssentialVertex => saw_essential = true,
                Branch::LinearTree => saw_linear = true,
            },
            Err(e) => rep.fail(format!("{}: {e}", p.name)),
        }
    }
    if !saw_essential {
        rep.fail("no essential-vertex branch exercised by the corpus".into());
    }
    if !saw_linear {
        rep.fail("no linear-tree branch exercised by the corpus".into());
    }
    rep
}

fn criterion8_witness_fuzz(
    prepared: &[Prepared],
    cfg: &SuiteConfig,
    rng: &mut ChaCha8Rng,
) -> CriterionReport {
    let mut rep = CriterionReport::new(8, "fuzzed witness diagrams verify on both branches");
    let mut by_branch: [Vec<(&str, &BraidSystem, KeyElements)>; 2] = [Vec::new(), Vec::new()];
    for p in prepared {
        if !matches!(p.class, GraphClass::Tree | GraphClass::General) {
            continue;
        }
        let Some(sys) = p.sys.as_ref() else { continue };
        if sys.og.deleted_edges().len() > 3 {
            continue;
        }
        if let Ok(key) = build_key_elements(sys) {
            let slot = match key.branch {
                Branch::EssentialVertex => 0,
                Branch::LinearTree => 1,
            };
            by_branch[slot].push((p.name.as_str(), sys, key));
        }
    }
    for (slot, label) in [(0usize, "essential-vertex"), (1usize, "linear-tree")] {
        let pool = &by_branch[slot];
        if pool.is_empty() {
            rep.fail(format!("no {label} systems available for fuzzing"));
            continue;
        }
        for i in 0..cfg.fuzz_classes_per_branch {
            let (name, sys, key) = &pool[i % pool.len()];
            rep.cases += 1;
            let z = sys.og.deleted_edges();
            let m = rng.gen_range(0..=2usize);
            let words: Vec<ZWord> = (0..2 * m + 1)
                .map(|_| {
                    let mut w = ZWord::identity();
                    if !z.is_empty() {
                        for _ in 0..rng.gen_range(0..=cfg.max_word_len) {
                            let e = z[rng.gen_range(0..z.len())];
                            w.push(
                                e,
                                if rng.gen_bool(0.5) {
                                    Sign::Plus
                                } else {
                                    Sign::Minus
                                },
                            );
                        }
                    }
                    w
                })
                .collect();
            let outcome = HomotopyClass::new(words, m, &sys.og)
                .and_then(|alpha| construct_witness(sys, key, &alpha));
            if let Err(e) = outcome {
                rep.fail(format!("{name} (m={m}): {e}"));
            }
        }
    }
    rep
}

fn criterion9_circle(rng: &mut ChaCha8Rng) -> CriterionReport {
    let mut rep = CriterionReport::new(9, "circle classifier agrees with bounded brute force");
    let bound = 7i64;
    for m in 0..=2usize {
        let len = 2 * m + 1;
        let mut tuple = vec![-3i64; len];
        loop {
            rep.cases += 1;
            let closed = match classify_circle(&tuple) {
                Ok(CircleOutcome::Fails { .. }) => true,
                Ok(CircleOutcome::Holds { .. }) => false,
                Err(e) => {
                    rep.fail(format!("{tuple:?}: {e}"));
                    false
                }
            };
            if closed != circle_brute_force(&tuple, bound) {
                rep.fail(format!(
                    "{tuple:?}: closed form {closed}, brute force disagrees"
                ));
            }
            // next tuple in the box [-3, 3]^len
            let mut i = 0;
            loop {
                if i == len {
                    break;
                }
                tuple[i] += 1;
                if tuple[i] <= 3 {
                    break;
                }
                tuple[i] = -3;
                i += 1;
            }
            if i == len {
                break;
            }
        }
    }
    let _ = rng;
    rep
}

/// The default acceptance run: the named corpus plus seeded random graphs.
pub fn run_default_suite(cfg: &SuiteConfig) -> Vec<CriterionReport> {
    run_suite(&named_corpus(), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        // a scaled-down run keeps module tests fast; the acceptance test
        // runs the full configuration
        let cfg = SuiteConfig {
            random_graphs: 4,
            max_vertices: 8,
            fuzz_classes_per_branch: 25,
            theta_random_words: 60,
            ..SuiteConfig::default()
        };
        let reports = run_default_suite(&cfg);
        assert_eq!(reports.len(), 9);
        for r in &reports {
            assert!(r.pass(), "{}\n{}", r.line(), r.failures.join("\n"));
            assert!(r.cases > 0, "criterion {} ran no cases", r.index);
        }
    }
}
