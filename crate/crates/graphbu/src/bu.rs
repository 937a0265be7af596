//! Decides the Borsuk-Ulam property for a based homotopy class of maps
//! from an involuted graph to a target graph, and certifies failures with
//! a verified pair of morphisms into the braid groups of the target.
//!
//! The target splits into four cases up to homeomorphism. Maps to an
//! interval always admit a coincidence. For a circle the braid groups are
//! infinite cyclic and the classifier is arithmetic. For every other
//! target the property fails for every class, and the witness morphisms
//! are assembled from key pure-braid elements whose first-coordinate
//! projections realize the deleted-edge generators.

use std::collections::BTreeMap;

use crate::braid::{
    conjugate_by_sigma, iota, p1, sigma_parity_rewrite, theta, BWord, BraidSystem, PWord, ZWord,
};
use crate::complex::{Cell, GCell};
use crate::error::{Error, Result};
use crate::graph::{order_graph, Graph, OrderedGraph};
use crate::involution::{adapt_basis, quotient, spanning_basis, AdaptedBasis, InvolutionGraph};
use crate::morse::linear_special_edge;
use crate::word::{format_word, Sign};

/// Homeomorphism type of a connected graph, read off degree invariants
/// that smoothing degree-2 vertices leaves unchanged.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphClass {
    Interval,
    Circle,
    Tree,
    General,
}

impl GraphClass {
    pub fn name(&self) -> &'static str {
        match self {
            GraphClass::Interval => "interval",
            GraphClass::Circle => "circle",
            GraphClass::Tree => "tree",
            GraphClass::General => "general",
        }
    }
}

pub fn graph_class(g: &Graph) -> GraphClass {
    let acyclic = g.first_betti() == 0;
    let max_deg = (0..g.vertex_count())
        .map(|v| g.degree(v))
        .max()
        .unwrap_or(0);
    if acyclic && max_deg <= 2 {
        GraphClass::Interval
    } else if !acyclic && max_deg == 2 {
        GraphClass::Circle
    } else if acyclic {
        GraphClass::Tree
    } else {
        GraphClass::General
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Branch {
    EssentialVertex,
    LinearTree,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::EssentialVertex => "essential-vertex",
            Branch::LinearTree => "linear-tree",
        }
    }
}

/// The pure-braid elements that realize the deleted-edge generators under
/// the first-coordinate projection, together with the distinguished
/// generators. Verified against the braid tables at construction time.
pub struct KeyElements {
    pub branch: Branch,
    /// One cell per deleted edge.
    pub lambda: BTreeMap<(usize, usize), Cell>,
    /// The deleted edge anchoring the linear-tree constructions.
    pub special: Option<(usize, usize)>,
    /// The companion vertex of the special edge in the linear branch.
    pub x1_prime: Option<usize>,
}

impl KeyElements {
    pub fn lambda_word(&self, edge: (usize, usize)) -> PWord {
        PWord::letter(self.lambda[&edge], Sign::Plus)
    }
}

pub fn build_key_elements(sys: &BraidSystem) -> Result<KeyElements> {
    let og = &sys.og;
    let branch = if og.essential_vertex().is_some() {
        Branch::EssentialVertex
    } else {
        Branch::LinearTree
    };
    let mut lambda = BTreeMap::new();
    let (special, x1_prime) = match branch {
        Branch::EssentialVertex => {
            for &(x, y) in og.deleted_edges() {
                lambda.insert((x, y), Cell::ordered(GCell::V(x + 1), GCell::edge(x, y)));
            }
            (None, None)
        }
        Branch::LinearTree => {
            let (xs, ys) = linear_special_edge(og)?;
            let n = og.vertex_count() - 1;
            let xp = if xs > 0 {
                0
            } else {
                debug_assert!(
                    ys < n,
                    "special edge selection guarantees a companion vertex"
                );
                ys + 1
            };
            lambda.insert((xs, ys), Cell::ordered(GCell::V(xp), GCell::edge(xs, ys)));
            for &(x, y) in og.deleted_edges() {
                if (x, y) != (xs, ys) {
                    lambda.insert((x, y), Cell::ordered(GCell::V(x + 1), GCell::edge(x, y)));
                }
            }
            (Some((xs, ys)), Some(xp))
        }
    };
    let key = KeyElements {
        branch,
        lambda,
        special,
        x1_prime,
    };
    verify_key_identities(sys, &key)?;
    Ok(key)
}

/// The identities that the whole construction rests on: the distinguished
/// pure generator is the square of the distinguished full generator, and
/// the first-coordinate projections of the key elements and their sigma
/// conjugates realize the deleted edges.
fn verify_key_identities(sys: &BraidSystem, key: &KeyElements) -> Result<()> {
    let gens = &sys.gens;
    let og = &sys.og;
    let fail = |what: String| Error::Internal(format!("key-element identity failed: {what}"));

    if iota(gens, &gens.rho_word())? != gens.sigma_word().pow(2) {
        return Err(fail(
            "rho is not the square of sigma under the inclusion".into(),
        ));
    }
    let p1_rho = p1(og, &gens.rho_word())?;
    let expected_rho: ZWord = match key.branch {
        Branch::EssentialVertex => ZWord::identity(),
        Branch::LinearTree => ZWord::letter(key.special.unwrap(), Sign::Plus),
    };
    if p1_rho != expected_rho {
        return Err(fail(format!(
            "p1(rho) = {}, expected {}",
            zword_string(og, &p1_rho),
            zword_string(og, &expected_rho)
        )));
    }
    for (&edge, &cell) in &key.lambda {
        if !gens.is_p2_gen(&cell) {
            return Err(fail(format!("{cell} is not a critical generator")));
        }
        let lam = key.lambda_word(edge);
        if !p1(og, &lam)?.is_identity() {
            return Err(fail(format!("p1 does not vanish on {cell}")));
        }
        let conj = conjugate_by_sigma(gens, &lam)?;
        let got = p1(og, &conj)?;
        let expected = match key.branch {
            Branch::EssentialVertex => ZWord::letter(edge, Sign::Plus),
            Branch::LinearTree => {
                let s = key.special.unwrap();
                if edge == s {
                    ZWord::letter(s, Sign::Plus)
                } else {
                    ZWord::letter(edge, Sign::Plus).concat(&ZWord::letter(s, Sign::Minus))
                }
            }
        };
        if got != expected {
            return Err(fail(format!(
                "p1(sigma {cell} sigma^-1) = {}, expected {}",
                zword_string(og, &got),
                zword_string(og, &expected)
            )));
        }
    }
    Ok(())
}

/// A based homotopy class of maps into the target, as the tuple of images
/// of the adapted generators upstairs: `(w, w_1, w'_1, ..., w_m, w'_m)`.
#[derive(Clone, Debug)]
pub struct HomotopyClass {
    pub words: Vec<ZWord>,
}

impl HomotopyClass {
    pub fn new(words: Vec<ZWord>, m: usize, og: &OrderedGraph) -> Result<HomotopyClass> {
        if words.len() != 2 * m + 1 {
            return Err(Error::InvalidInput(format!(
                "class tuple has {} words, expected {}",
                words.len(),
                2 * m + 1
            )));
        }
        for w in &words {
            for ((x, y), _) in w.iter() {
                if og.z_index((*x, *y)).is_none() {
                    return Err(Error::InvalidInput(format!(
                        "class word uses ({x},{y}), which is not a deleted edge of the target"
                    )));
                }
            }
        }
        Ok(HomotopyClass { words })
    }

    pub fn head(&self) -> &ZWord {
        &self.words[0]
    }

    pub fn pair(&self, i: usize) -> (&ZWord, &ZWord) {
        (&self.words[2 * i + 1], &self.words[2 * i + 2])
    }

    pub fn m(&self) -> usize {
        (self.words.len() - 1) / 2
    }
}

#[derive(Clone, Debug)]
pub struct WitnessCheck {
    pub label: String,
    pub actual: String,
    pub expected: String,
}

/// Generator images of the two witness morphisms together with the
/// verification transcript. Construction fails unless every check passes,
/// so an emitted diagram is always verified.
pub struct WitnessDiagram {
    /// Images of `c, c_1, ..., c_m` in the full braid group.
    pub psi: Vec<BWord>,
    /// Images of `a, a_1, a'_1, ..., a_m, a'_m` in the pure braid group.
    pub phi: Vec<PWord>,
    pub checks: Vec<WitnessCheck>,
}

/// Builds and verifies the witness morphisms for one homotopy class.
///
/// The full-braid images substitute key elements for the deleted edges of
/// each class word and append the distinguished generator to force the
/// correct parities. The pure-braid images are the canonical combinations
/// of the full-braid ones, rewritten into pure generators by the parity
/// scan, and checked against the class under the first-coordinate
/// projection.
pub fn construct_witness(
    sys: &BraidSystem,
    key: &KeyElements,
    alpha: &HomotopyClass,
) -> Result<WitnessDiagram> {
    let gens = &sys.gens;
    let og = &sys.og;
    let m = alpha.m();

    let psi_c: BWord;
    let mut psi_ci: Vec<BWord> = Vec::with_capacity(m);
    match key.branch {
        Branch::EssentialVertex => {
            let sub = |w: &ZWord| -> PWord { w.map(|e| key.lambda_word(*e)) };
            psi_c = iota(gens, &sub(alpha.head()))?.concat(&gens.sigma_word());
            for i in 0..m {
                let (wi, wpi) = alpha.pair(i);
                let img = gens
                    .sigma_word()
                    .concat(&iota(gens, &sub(wi))?)
                    .concat(&gens.sigma_word().inverse())
                    .concat(&iota(gens, &sub(wpi))?);
                psi_ci.push(img);
            }
        }
        Branch::LinearTree => {
            let s = key.special.unwrap();
            // rewrite w z_s^-1 over the alphabet t_s = z_s, t_e = z_e z_s^-1,
            // then substitute the key elements for the t letters
            let ell = |w: &ZWord| -> PWord {
                let shifted = w.concat(&ZWord::letter(s, Sign::Minus));
                shifted.map(|&e| {
                    if e == s {
                        key.lambda_word(s)
                    } else {
                        key.lambda_word(e).concat(&key.lambda_word(s))
                    }
                })
            };
            let lam_s = iota(gens, &key.lambda_word(s))?;
            psi_c = iota(gens, &ell(alpha.head()))?.concat(&gens.sigma_word());
            for i in 0..m {
                let (wi, wpi) = alpha.pair(i);
                let img = gens
                    .sigma_word()
                    .concat(&iota(gens, &ell(wi))?)
                    .concat(&gens.sigma_word())
                    .concat(&lam_s.inverse())
                    .concat(&iota(gens, &ell(wpi))?)
                    .concat(&lam_s);
                psi_ci.push(img);
            }
        }
    }

    let mut checks = Vec::new();
    let mut push_parity = |label: String, w: &BWord, expected: u8| -> Result<()> {
        let got = theta(w)?;
        checks.push(WitnessCheck {
            label,
            actual: got.to_string(),
            expected: expected.to_string(),
        });
        if got != expected {
            return Err(Error::Internal(format!(
                "witness verification failed: parity of {w} is {got}, expected {expected}"
            )));
        }
        Ok(())
    };
    push_parity("theta2(psi(c))".into(), &psi_c, 1)?;
    for (i, w) in psi_ci.iter().enumerate() {
        push_parity(format!("theta2(psi(c{}))", i + 1), w, 0)?;
    }

    // phi images and the projection checks
    let mut phi = Vec::with_capacity(2 * m + 1);
    let mut verify_phi = |label: String, b2: BWord, expected: &ZWord| -> Result<PWord> {
        let p2_word = sigma_parity_rewrite(gens, &b2)?;
        let projected = p1(og, &p2_word)?;
        checks.push(WitnessCheck {
            label: format!("p1({label})"),
            actual: zword_string(og, &projected),
            expected: zword_string(og, expected),
        });
        if projected != *expected {
            return Err(Error::Internal(format!(
                "witness verification failed: p1({label}) = {}, class word is {}",
                zword_string(og, &projected),
                zword_string(og, expected)
            )));
        }
        Ok(p2_word)
    };
    phi.push(verify_phi(
        "phi(a)".into(),
        psi_c.concat(&psi_c),
        alpha.head(),
    )?);
    for (i, psi_i) in psi_ci.iter().enumerate() {
        let (wi, wpi) = alpha.pair(i);
        phi.push(verify_phi(format!("phi(a{})", i + 1), psi_i.clone(), wi)?);
        let conj = psi_c.concat(psi_i).concat(&psi_c.inverse());
        phi.push(verify_phi(format!("phi(a{}')", i + 1), conj, wpi)?);
    }

    let mut psi = vec![psi_c];
    psi.extend(psi_ci);
    Ok(WitnessDiagram { psi, phi, checks })
}

/// Outcome of the circle classifier.
pub enum CircleOutcome {
    Holds { reason: String },
    Fails { psi_c: i64, psi_ci: Vec<i64> },
}

/// For a circle target the braid groups are infinite cyclic, the pure
/// subgroup sits at index two, and the classifier is arithmetic: the
/// property fails exactly for tuples `(p, p_1, p_1, ..., p_m, p_m)` with
/// `p` odd.
pub fn classify_circle(tuple: &[i64]) -> Result<CircleOutcome> {
    if tuple.len() % 2 != 1 {
        return Err(Error::InvalidInput(format!(
            "circle class tuple has even length {}",
            tuple.len()
        )));
    }
    let m = (tuple.len() - 1) / 2;
    let p = tuple[0];
    if p % 2 == 0 {
        return Ok(CircleOutcome::Holds {
            reason: format!(
                "first coordinate {p} is even, so no lift of the required parity exists"
            ),
        });
    }
    for i in 0..m {
        let (a, b) = (tuple[2 * i + 1], tuple[2 * i + 2]);
        if a != b {
            return Ok(CircleOutcome::Holds {
                reason: format!(
                    "coordinates {} and {} of pair {} differ, so the class is not restricted from \
                     the quotient",
                    a,
                    b,
                    i + 1
                ),
            });
        }
    }
    Ok(CircleOutcome::Fails {
        psi_c: p,
        psi_ci: (0..m).map(|i| 2 * tuple[2 * i + 1]).collect(),
    })
}

/// Brute-force companion of [`classify_circle`]: searches for a morphism
/// tuple (odd head, even tail) within a bound whose restriction is the
/// given class.
pub fn circle_brute_force(tuple: &[i64], bound: i64) -> bool {
    let m = (tuple.len() - 1) / 2;
    let p = tuple[0];
    if p.abs() > bound || p % 2 == 0 {
        return false;
    }
    // psi(c) = p forces phi(a) = p; psi(c_i) = q_i even forces
    // phi(a_i) = phi(a'_i) = q_i / 2
    (0..m).all(|i| {
        let (a, b) = (tuple[2 * i + 1], tuple[2 * i + 2]);
        a == b && (2 * a).abs() <= bound
    })
}

#[derive(Clone, Debug)]
pub enum Witness {
    Braid {
        sigma: String,
        rho: String,
        lambdas: Vec<(String, String)>,
        psi: Vec<String>,
        phi: Vec<String>,
        checks: Vec<WitnessCheck>,
    },
    Circle {
        psi_c: i64,
        psi_ci: Vec<i64>,
    },
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Holds { reason: String },
    Fails { witness: Witness },
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub class: GraphClass,
    pub branch: Option<Branch>,
    pub m: usize,
    pub deleted_edges: usize,
    pub outcome: Outcome,
}

impl Decision {
    pub fn fails(&self) -> bool {
        matches!(self.outcome, Outcome::Fails { .. })
    }
}

/// Full decision pipeline for one involuted source, target, and class.
pub fn decide(
    ig: &InvolutionGraph,
    target: &Graph,
    alpha_words: Vec<ZWord>,
    root: Option<u32>,
    tree: Option<&[(u32, u32)]>,
) -> Result<Decision> {
    let adapted = analyze_source(ig)?;
    let m = adapted.m;
    let class = graph_class(target);
    let og = order_graph(target, root, tree)?;
    let alpha = HomotopyClass::new(alpha_words, m, &og)?;
    let k = og.deleted_edges().len();

    match class {
        GraphClass::Interval => {
            for w in &alpha.words {
                if !w.is_identity() {
                    return Err(Error::InvalidInput(
                        "an interval target carries only the trivial class".into(),
                    ));
                }
            }
            Ok(Decision {
                class,
                branch: None,
                m,
                deleted_edges: k,
                outcome: Outcome::Holds {
                    reason: "difference arguments give a coincidence for every map to an interval"
                        .into(),
                },
            })
        }
        GraphClass::Circle => {
            let tuple: Vec<i64> = alpha.words.iter().map(|w| w.exponent_sum()).collect();
            match classify_circle(&tuple)? {
                CircleOutcome::Holds { reason } => Ok(Decision {
                    class,
                    branch: None,
                    m,
                    deleted_edges: k,
                    outcome: Outcome::Holds { reason },
                }),
                CircleOutcome::Fails { psi_c, psi_ci } => Ok(Decision {
                    class,
                    branch: None,
                    m,
                    deleted_edges: k,
                    outcome: Outcome::Fails {
                        witness: Witness::Circle { psi_c, psi_ci },
                    },
                }),
            }
        }
        GraphClass::Tree | GraphClass::General => {
            let sys = BraidSystem::build(og)?;
            let key = build_key_elements(&sys)?;
            let diagram = construct_witness(&sys, &key, &alpha)?;
            let lambdas = sys
                .og
                .deleted_edges()
                .iter()
                .map(|&e| {
                    (
                        format!("z{}", sys.og.z_index(e).unwrap()),
                        key.lambda[&e].to_string(),
                    )
                })
                .collect();
            let witness = Witness::Braid {
                sigma: sys.gens.sigma.to_string(),
                rho: sys.gens.rho.to_string(),
                lambdas,
                psi: diagram.psi.iter().map(|w| w.to_string()).collect(),
                phi: diagram.phi.iter().map(|w| w.to_string()).collect(),
                checks: diagram.checks,
            };
            Ok(Decision {
                class,
                branch: Some(key.branch),
                m,
                deleted_edges: k,
                outcome: Outcome::Fails { witness },
            })
        }
    }
}

/// Quotient, basis, and adapted generators of the source, with the rank
/// bookkeeping checked.
pub fn analyze_source(ig: &InvolutionGraph) -> Result<AdaptedBasis> {
    let q = quotient(ig);
    let basis = spanning_basis(&q.mg, 0);
    adapt_basis(ig, &q, &basis)
}

pub fn zword_string(og: &OrderedGraph, w: &ZWord) -> String {
    format_word(w, |e| match og.z_index(*e) {
        Some(i) => format!("z{i}"),
        None => format!("({},{})", e.0, e.1),
    })
}
