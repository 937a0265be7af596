//! The source graph of the problem: a finite connected simplicial graph
//! with a free cellular involution, its quotient graph, the parity
//! morphism classifying the double covering, and a generating set of the
//! quotient's fundamental group adapted to that parity.

use std::collections::HashMap;

use crate::complex::Dir;
use crate::error::{Error, Result};
use crate::graph::{Graph, MultiGraph, Slot};
use crate::word::{FreeWord, Sign};

/// Words over the non-tree edges of the quotient (letters are generator
/// indices into [`SpanningBasis::gens`]).
pub type QWord = FreeWord<usize>;

#[derive(Clone, Debug)]
pub struct InvolutionGraph {
    gamma: Graph,
    tau: Vec<usize>,
}

impl InvolutionGraph {
    pub fn new(gamma: Graph, tau: Vec<usize>) -> Result<InvolutionGraph> {
        let n = gamma.vertex_count();
        if tau.len() != n {
            return Err(Error::InvalidInvolution(format!(
                "involution assigns {} vertices, graph has {}",
                tau.len(),
                n
            )));
        }
        let mut offenders = Vec::new();
        for v in 0..n {
            if tau[v] >= n {
                return Err(Error::InvalidInvolution(format!(
                    "vertex {} maps outside the graph",
                    gamma.label(v)
                )));
            }
            if tau[tau[v]] != v {
                offenders.push(format!("vertex {} (not an involution)", gamma.label(v)));
            }
            if tau[v] == v {
                offenders.push(format!("vertex {} (fixed)", gamma.label(v)));
            }
        }
        for (u, v) in gamma.edges() {
            let (iu, iv) = (tau[u], tau[v]);
            if !gamma.has_edge(iu, iv) {
                offenders.push(format!(
                    "edge {}-{} (image {}-{} is not an edge)",
                    gamma.label(u),
                    gamma.label(v),
                    gamma.label(iu),
                    gamma.label(iv)
                ));
            } else if (iu.min(iv), iu.max(iv)) == (u, v) {
                // the edge flips onto itself end for end, fixing its midpoint
                offenders.push(format!(
                    "edge {}-{} (fixed)",
                    gamma.label(u),
                    gamma.label(v)
                ));
            }
        }
        if !offenders.is_empty() {
            return Err(Error::InvalidInvolution(format!(
                "the involution is not free and cellular; offending cells: {}",
                offenders.join(", ")
            )));
        }
        let ig = InvolutionGraph { gamma, tau };
        let chi = ig.gamma.euler_characteristic();
        if chi > 0 || chi % 2 != 0 {
            return Err(Error::Internal(format!(
                "free involution on a connected graph forces an even non-positive Euler \
                 characteristic, got {chi}"
            )));
        }
        Ok(ig)
    }

    pub fn gamma(&self) -> &Graph {
        &self.gamma
    }

    pub fn tau(&self, v: usize) -> usize {
        self.tau[v]
    }

    /// Half the number of independent cycles beyond the circle: the
    /// quotient has fundamental rank `m + 1`, the graph itself `2m + 1`.
    pub fn m(&self) -> usize {
        (-self.gamma.euler_characteristic() / 2) as usize
    }
}

/// The quotient graph, kept as a multigraph (orbit identifications can
/// create parallel edges), together with the covering data.
pub struct Quotient {
    pub mg: MultiGraph,
    /// Graph vertex -> quotient vertex.
    pub vertex_orbit: Vec<usize>,
    /// Quotient vertex -> smallest representative vertex upstairs.
    pub vertex_reps: Vec<usize>,
    /// Quotient edge -> the two edges upstairs, as endpoint pairs.
    pub edge_lifts: Vec<[(usize, usize); 2]>,
}

pub fn quotient(ig: &InvolutionGraph) -> Quotient {
    let g = ig.gamma();
    let n = g.vertex_count();
    let mut vertex_orbit = vec![usize::MAX; n];
    let mut vertex_reps = Vec::new();
    for v in 0..n {
        if vertex_orbit[v] == usize::MAX {
            let id = vertex_reps.len();
            vertex_orbit[v] = id;
            vertex_orbit[ig.tau(v)] = id;
            vertex_reps.push(v);
        }
    }
    let edges = g.edges();
    let edge_index: HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut edge_orbit = vec![usize::MAX; edges.len()];
    let mut edge_lifts = Vec::new();
    let mut qedges: Vec<(usize, usize)> = Vec::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if edge_orbit[i] != usize::MAX {
            continue;
        }
        let (iu, iv) = (ig.tau(u), ig.tau(v));
        let mate = edge_index[&(iu.min(iv), iu.max(iv))];
        let id = qedges.len();
        edge_orbit[i] = id;
        edge_orbit[mate] = id;
        edge_lifts.push([edges[i], edges[mate]]);
        qedges.push((vertex_orbit[u], vertex_orbit[v]));
    }
    let mut slots: Vec<Vec<Slot>> = vec![Vec::new(); vertex_reps.len()];
    for (eid, &(a, b)) in qedges.iter().enumerate() {
        slots[a].push(Slot { nbr: b, edge: eid });
        slots[b].push(Slot { nbr: a, edge: eid });
    }
    let labels: Vec<u32> = vertex_reps.iter().map(|&v| g.label(v)).collect();
    let mg = MultiGraph {
        slots,
        edges: qedges,
        labels,
    };
    Quotient {
        mg,
        vertex_orbit,
        vertex_reps,
        edge_lifts,
    }
}

/// A spanning tree of a multigraph with the non-tree edges as free
/// generators of the fundamental group at the base vertex.
pub struct SpanningBasis {
    pub base: usize,
    parent_step: Vec<Option<(usize, usize)>>,
    pub gens: Vec<usize>,
}

pub fn spanning_basis(mg: &MultiGraph, base: usize) -> SpanningBasis {
    let n = mg.vertex_count();
    let mut parent_step: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut tree_edge = vec![false; mg.edges.len()];
    seen[base] = true;
    let mut queue = std::collections::VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for s in &mg.slots[v] {
            if s.nbr != v && !seen[s.nbr] {
                seen[s.nbr] = true;
                tree_edge[s.edge] = true;
                parent_step[s.nbr] = Some((v, s.edge));
                queue.push_back(s.nbr);
            }
        }
    }
    let gens: Vec<usize> = (0..mg.edges.len()).filter(|&e| !tree_edge[e]).collect();
    SpanningBasis {
        base,
        parent_step,
        gens,
    }
}

/// An edge path in a multigraph; a forward step runs an edge from its
/// stored first endpoint to its second.
#[derive(Clone, Debug)]
pub struct MPath {
    pub start: usize,
    pub steps: Vec<(usize, Dir)>,
}

impl MPath {
    pub fn end(&self, mg: &MultiGraph) -> usize {
        let mut at = self.start;
        for &(e, d) in &self.steps {
            let (a, b) = mg.edges[e];
            at = match d {
                Dir::Fwd => {
                    debug_assert_eq!(at, a);
                    b
                }
                Dir::Back => {
                    debug_assert_eq!(at, b);
                    a
                }
            };
        }
        at
    }
}

impl SpanningBasis {
    /// Tree path from the base to `v`.
    fn path_to(&self, mg: &MultiGraph, v: usize) -> MPath {
        let mut steps = Vec::new();
        let mut cur = v;
        while let Some((p, e)) = self.parent_step[cur] {
            let (a, _b) = mg.edges[e];
            let dir = if a == p { Dir::Fwd } else { Dir::Back };
            steps.push((e, dir));
            cur = p;
        }
        steps.reverse();
        MPath {
            start: self.base,
            steps,
        }
    }

    /// The loop of one generator: out along the tree, across the edge,
    /// back along the tree.
    pub fn generator_loop(&self, mg: &MultiGraph, gen_index: usize) -> MPath {
        let e = self.gens[gen_index];
        let (a, b) = mg.edges[e];
        let mut path = self.path_to(mg, a);
        path.steps.push((e, Dir::Fwd));
        let back = self.path_to(mg, b);
        let mut rev: Vec<(usize, Dir)> = back
            .steps
            .iter()
            .rev()
            .map(|&(e, d)| (e, d.flip()))
            .collect();
        path.steps.append(&mut rev);
        path
    }

    /// The loop of a word over the generator alphabet.
    pub fn word_loop(&self, mg: &MultiGraph, w: &QWord) -> MPath {
        let mut steps = Vec::new();
        for (gi, sign) in w.iter() {
            let l = self.generator_loop(mg, *gi);
            match sign {
                Sign::Plus => steps.extend(l.steps),
                Sign::Minus => steps.extend(l.steps.iter().rev().map(|&(e, d)| (e, d.flip()))),
            }
        }
        MPath {
            start: self.base,
            steps,
        }
    }
}

/// Lifts a quotient loop at the base orbit to the graph upstairs, starting
/// at the orbit representative, and reports whether the endpoint switched
/// sheets. This is the parity morphism of the double covering.
pub fn theta1_of_loop(ig: &InvolutionGraph, q: &Quotient, path: &MPath) -> Result<u8> {
    let start = q.vertex_reps[path.start];
    let mut at = start;
    for &(e, d) in &path.steps {
        let (qa, qb) = q.mg.edges[e];
        let (from, to) = match d {
            Dir::Fwd => (qa, qb),
            Dir::Back => (qb, qa),
        };
        if q.vertex_orbit[at] != from {
            return Err(Error::Internal("quotient path is not continuous".into()));
        }
        // exactly one of the two lifts of the edge is incident to `at`
        let mut next = None;
        for &(u, v) in &q.edge_lifts[e] {
            if u == at || v == at {
                let other = if u == at { v } else { u };
                if next.replace(other).is_some() {
                    return Err(Error::Internal(
                        "both lifts of a quotient edge meet one vertex; the involution fixes an edge"
                            .into(),
                    ));
                }
            }
        }
        let next = next.ok_or_else(|| {
            Error::Internal("no lift of a quotient edge at the current vertex".into())
        })?;
        if q.vertex_orbit[next] != to {
            return Err(Error::Internal(
                "lifted edge lands in the wrong orbit".into(),
            ));
        }
        at = next;
    }
    if at == start {
        Ok(0)
    } else if at == ig.tau(start) {
        Ok(1)
    } else {
        Err(Error::Internal(
            "lift of a loop ended outside the fiber".into(),
        ))
    }
}

/// Parity of a word over the quotient generators, computed by lifting.
pub fn theta1_of_word(
    ig: &InvolutionGraph,
    q: &Quotient,
    basis: &SpanningBasis,
    w: &QWord,
) -> Result<u8> {
    theta1_of_loop(ig, q, &basis.word_loop(&q.mg, w))
}

/// The generating data prepared for the covering: `c` with parity 1,
/// `c_1..c_m` with parity 0 downstairs, and the index-2 subgroup basis
/// `a = c^2`, `a_i = c_i`, `a'_i = c c_i c^-1` upstairs.
pub struct AdaptedBasis {
    pub m: usize,
    /// `c, c_1, ..., c_m` as words over the raw generator alphabet.
    pub c_words: Vec<QWord>,
    /// Parities of the adapted generators: `[1, 0, 0, ...]`.
    pub theta: Vec<u8>,
    /// `a, a_1, a'_1, ..., a_m, a'_m` as words over the adapted alphabet
    /// (letter `i` stands for `c_words[i]`).
    pub gamma_words: Vec<FreeWord<usize>>,
}

impl AdaptedBasis {
    /// Expands a word over the adapted alphabet into the raw alphabet.
    pub fn expand(&self, w: &FreeWord<usize>) -> QWord {
        w.map(|&i| self.c_words[i].clone())
    }
}

pub fn adapt_basis(
    ig: &InvolutionGraph,
    q: &Quotient,
    basis: &SpanningBasis,
) -> Result<AdaptedBasis> {
    let m = ig.m();
    if basis.gens.len() != m + 1 {
        return Err(Error::Internal(format!(
            "quotient has fundamental rank {}, expected {}",
            basis.gens.len(),
            m + 1
        )));
    }
    let parities: Vec<u8> = (0..basis.gens.len())
        .map(|i| theta1_of_word(ig, q, basis, &QWord::letter(i, Sign::Plus)))
        .collect::<Result<_>>()?;
    let lead = parities.iter().position(|&p| p == 1).ok_or_else(|| {
        Error::Internal("parity vanishes on a whole basis, contradicting a free involution".into())
    })?;
    // c is the first parity-1 generator; the others are adjusted by c when
    // their own parity is 1
    let c = QWord::letter(lead, Sign::Plus);
    let mut c_words = vec![c.clone()];
    for i in (0..basis.gens.len()).filter(|&i| i != lead) {
        let w = QWord::letter(i, Sign::Plus);
        c_words.push(if parities[i] == 1 { c.concat(&w) } else { w });
    }
    // verify the parities by lifting, not by bookkeeping
    let mut theta = Vec::with_capacity(m + 1);
    for (i, w) in c_words.iter().enumerate() {
        let p = theta1_of_word(ig, q, basis, w)?;
        let expected = u8::from(i == 0);
        if p != expected {
            return Err(Error::Internal(format!(
                "adapted generator {i} has parity {p}, expected {expected}"
            )));
        }
        theta.push(p);
    }
    let gamma_words = index2_subgroup_basis(m);
    // the subgroup words must lift to closed loops
    let out = AdaptedBasis {
        m,
        c_words,
        theta,
        gamma_words,
    };
    for w in &out.gamma_words {
        if theta1_of_word(ig, q, basis, &out.expand(w))? != 0 {
            return Err(Error::Internal(
                "subgroup generator does not lift to a loop".into(),
            ));
        }
    }
    Ok(out)
}

/// Free generators of the kernel of the parity map on `F(c, c_1..c_m)`,
/// produced by the Reidemeister-Schreier rewriting with transversal
/// `{1, c}`: for each transversal element `u` and generator `x`, the word
/// `u x (u x)bar^-1`, with trivial entries dropped. The outcome is
/// `c^2, c_1, c c_1 c^-1, ..., c_m, c c_m c^-1` in that order.
pub fn index2_subgroup_basis(m: usize) -> Vec<FreeWord<usize>> {
    let rep = |p: u8| -> FreeWord<usize> {
        if p == 0 {
            FreeWord::identity()
        } else {
            FreeWord::letter(0, Sign::Plus)
        }
    };
    let theta_of = |x: usize| u8::from(x == 0);
    let mut out = Vec::with_capacity(2 * m + 1);
    // u = c, x = c gives a = c^2; the (u = 1, x = c) entry is trivial
    for x in 0..=m {
        for p in [0u8, 1u8] {
            let word = rep(p)
                .concat(&FreeWord::letter(x, Sign::Plus))
                .concat(&rep(p ^ theta_of(x)).inverse());
            if !word.is_identity() {
                out.push(word);
            }
        }
    }
    // order as a, a_1, a'_1, ..., a_m, a'_m: the loop above yields
    // [a, a_1, a'_1, ...] already because x = 0 contributes only once
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::corpus::{antipodal_cycle, banana};

    #[test]
    fn antipodal_cycle_quotients_to_a_cycle() {
        let ig = antipodal_cycle(3);
        let q = quotient(&ig);
        assert_eq!(q.mg.vertex_count(), 3);
        assert_eq!(q.mg.edge_count(), 3);
        assert_eq!(ig.m(), 0);
    }

    #[test]
    fn banana_euler_counts() {
        let ig = banana(2);
        assert_eq!(ig.gamma().euler_characteristic(), -2);
        assert_eq!(ig.m(), 1);
        let q = quotient(&ig);
        assert_eq!(q.mg.euler_characteristic(), -1);
        let basis = spanning_basis(&q.mg, 0);
        assert_eq!(basis.gens.len(), 2); // rank m + 1
                                         // the graph upstairs has rank 2m + 1
        let upstairs = spanning_basis(&MultiGraph::from_graph(ig.gamma()), 0);
        assert_eq!(upstairs.gens.len(), 2 * ig.m() + 1);
    }

    #[test]
    fn fundamental_rank_matches_euler_on_the_corpus() {
        for (name, ig) in crate::corpus::involution_corpus() {
            for (mg, chi) in [
                (
                    MultiGraph::from_graph(ig.gamma()),
                    ig.gamma().euler_characteristic(),
                ),
                (quotient(&ig).mg, ig.gamma().euler_characteristic() / 2),
            ] {
                let basis = spanning_basis(&mg, 0);
                assert_eq!(basis.gens.len() as i64, 1 - chi, "{name}");
            }
        }
    }

    #[test]
    fn fixed_vertices_are_rejected() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let err = InvolutionGraph::new(g, vec![0, 3, 2, 1]).unwrap_err();
        assert!(err.to_string().contains("fixed"));
    }

    #[test]
    fn end_for_end_edge_swaps_are_rejected() {
        // 4-cycle with tau exchanging the two ends of two opposite edges
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let err = InvolutionGraph::new(g, vec![1, 0, 3, 2]).unwrap_err();
        assert!(err.to_string().contains("edge"));
    }

    #[test]
    fn non_cellular_maps_are_rejected() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 3)])
            .unwrap();
        // antipodal map of the 6-cycle does not preserve the chord 0-3...
        // it does ((0,3) -> (3,0)), so that chord is a fixed edge instead
        let err = InvolutionGraph::new(g, vec![3, 4, 5, 0, 1, 2]).unwrap_err();
        assert!(err.to_string().contains("fixed") || err.to_string().contains("not an edge"));
    }

    #[test]
    fn antipodal_core_loop_has_parity_one() {
        let ig = antipodal_cycle(4);
        let q = quotient(&ig);
        let basis = spanning_basis(&q.mg, 0);
        assert_eq!(basis.gens.len(), 1);
        let one = QWord::letter(0, Sign::Plus);
        assert_eq!(theta1_of_word(&ig, &q, &basis, &one).unwrap(), 1);
        // squares are parity zero
        assert_eq!(theta1_of_word(&ig, &q, &basis, &one.pow(2)).unwrap(), 0);
        // the constant loop is parity zero
        assert_eq!(
            theta1_of_word(&ig, &q, &basis, &QWord::identity()).unwrap(),
            0
        );
    }

    #[test]
    fn theta1_is_additive_on_random_words() {
        let ig = banana(2);
        let q = quotient(&ig);
        let basis = spanning_basis(&q.mg, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let random_word = |rng: &mut ChaCha8Rng| {
            let mut w = QWord::identity();
            for _ in 0..rng.gen_range(0..6) {
                w.push(
                    rng.gen_range(0..basis.gens.len()),
                    if rng.gen_bool(0.5) {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    },
                );
            }
            w
        };
        for _ in 0..50 {
            let (w1, w2) = (random_word(&mut rng), random_word(&mut rng));
            let lhs = theta1_of_word(&ig, &q, &basis, &w1.concat(&w2)).unwrap();
            let rhs = theta1_of_word(&ig, &q, &basis, &w1).unwrap()
                ^ theta1_of_word(&ig, &q, &basis, &w2).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn adapted_basis_of_the_circle() {
        let ig = antipodal_cycle(3);
        let q = quotient(&ig);
        let basis = spanning_basis(&q.mg, 0);
        let ab = adapt_basis(&ig, &q, &basis).unwrap();
        assert_eq!(ab.m, 0);
        assert_eq!(ab.c_words.len(), 1);
        assert_eq!(ab.gamma_words.len(), 1);
        // a = c^2
        assert_eq!(ab.gamma_words[0], FreeWord::letter(0, Sign::Plus).pow(2));
    }

    #[test]
    fn adapted_basis_of_the_banana() {
        let ig = banana(2);
        let q = quotient(&ig);
        let basis = spanning_basis(&q.mg, 0);
        let ab = adapt_basis(&ig, &q, &basis).unwrap();
        assert_eq!(ab.m, 1);
        assert_eq!(ab.theta, vec![1, 0]);
        assert_eq!(ab.gamma_words.len(), 3);
        let c = FreeWord::letter(0usize, Sign::Plus);
        let c1 = FreeWord::letter(1usize, Sign::Plus);
        assert_eq!(ab.gamma_words[0], c.pow(2));
        assert_eq!(ab.gamma_words[1], c1.clone());
        assert_eq!(ab.gamma_words[2], c.concat(&c1).concat(&c.inverse()));
    }

    #[test]
    fn subgroup_words_are_distinct_to_length_four() {
        use std::collections::HashMap;
        let ig = banana(2);
        let q = quotient(&ig);
        let basis = spanning_basis(&q.mg, 0);
        let ab = adapt_basis(&ig, &q, &basis).unwrap();
        let letters: Vec<(usize, Sign)> = (0..ab.gamma_words.len())
            .flat_map(|i| [(i, Sign::Plus), (i, Sign::Minus)])
            .collect();
        let mut images: HashMap<QWord, FreeWord<usize>> = HashMap::new();
        let mut frontier = vec![FreeWord::<usize>::identity()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &frontier {
                for &(l, s) in &letters {
                    let mut w2 = w.clone();
                    w2.push(l, s);
                    if w2.len() == w.len() + 1 {
                        next.push(w2);
                    }
                }
            }
            for w in &next {
                // expand gamma-alphabet -> adapted alphabet -> raw alphabet
                let raw = ab.expand(&w.map(|&i| ab.gamma_words[i].clone()));
                if let Some(prev) = images.insert(raw, w.clone()) {
                    panic!("subgroup words {prev:?} and {w:?} collide");
                }
            }
            frontier = next;
        }
    }
}
