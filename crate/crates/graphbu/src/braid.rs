//! The two-strand braid groups of a graph on their Morse generators.
//!
//! Generators are named by their critical 1-cells, so the case analysis
//! of every morphism reads the vertex and edge of the cell directly. The
//! closed-form tables are the production path; each of them has an
//! independent oracle that walks representing loops through the covering
//! and the collapsed trees, and the two are compared in tests.

use crate::complex::{
    build_complex, lift_path, project_path, Cell, CellComplex, CellId, CellKind, Dir, EdgePath,
    GCell,
};
use crate::error::{Error, Result};
use crate::graph::OrderedGraph;
use crate::morse::{
    build_field, build_trees, select_connecting_cell, CollapsedTrees, GradientField,
};
use crate::word::{FreeWord, Sign};

/// Word in the pure-braid generators (ordered critical 1-cells).
pub type PWord = FreeWord<Cell>;
/// Word in the full-braid generators (unordered critical 1-cells).
pub type BWord = FreeWord<Cell>;
/// Word in the deleted-edge generators of the fundamental group.
pub type ZWord = FreeWord<(usize, usize)>;

/// Position of the vertex of a 1-cell relative to its edge span.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Zone {
    Below,  // r < s < t
    Inside, // s < r < t
    Above,  // s < t < r
}

pub fn zone(r: usize, s: usize, t: usize) -> Zone {
    debug_assert!(s < t && r != s && r != t);
    if r < s {
        Zone::Below
    } else if r < t {
        Zone::Inside
    } else {
        Zone::Above
    }
}

/// The generator alphabets of both braid groups over one graph.
pub struct GeneratorTable {
    /// Ordered critical 1-cells other than the connecting cell.
    pub p2: Vec<Cell>,
    /// Unordered critical 1-cells.
    pub b2: Vec<Cell>,
    /// The connecting cell `(a,(b,c))`, consumed by the spanning tree.
    pub connecting: Cell,
    /// `{a,(b,c)}`, the distinguished full-braid generator.
    pub sigma: Cell,
    /// `((b,c),a)`, the distinguished pure-braid generator.
    pub rho: Cell,
    /// Deleted edges, the free generators of the fundamental group.
    pub z: Vec<(usize, usize)>,
}

impl GeneratorTable {
    pub fn is_p2_gen(&self, c: &Cell) -> bool {
        self.p2.binary_search(c).is_ok()
    }

    pub fn is_b2_gen(&self, c: &Cell) -> bool {
        self.b2.binary_search(c).is_ok()
    }

    pub fn sigma_word(&self) -> BWord {
        FreeWord::letter(self.sigma, Sign::Plus)
    }

    pub fn rho_word(&self) -> PWord {
        FreeWord::letter(self.rho, Sign::Plus)
    }
}

/// Everything needed to compute in the braid groups of one ordered graph:
/// both complexes, their gradient fields, the collapsed trees, and the
/// generator table.
pub struct BraidSystem {
    pub og: OrderedGraph,
    pub d2: CellComplex,
    pub d2_field: GradientField,
    pub d2_trees: CollapsedTrees,
    pub ud2: CellComplex,
    pub ud2_field: GradientField,
    pub ud2_trees: CollapsedTrees,
    pub gens: GeneratorTable,
}

impl BraidSystem {
    pub fn build(og: OrderedGraph) -> Result<BraidSystem> {
        let d2 = build_complex(&og, CellKind::Ordered);
        let ud2 = build_complex(&og, CellKind::Unordered);
        let d2_field = build_field(&og, &d2)?;
        let ud2_field = build_field(&og, &ud2)?;
        let connecting = select_connecting_cell(&og, &d2, &d2_field)?;
        let d2_trees = build_trees(&og, &d2, &d2_field, Some(connecting))?;
        let ud2_trees = build_trees(&og, &ud2, &ud2_field, None)?;

        let connecting_cell = d2.cell(connecting);
        let mut p2: Vec<Cell> = d2_field
            .critical_of_dim(&d2, 1)
            .into_iter()
            .map(|id| d2.cell(id))
            .filter(|c| *c != connecting_cell)
            .collect();
        p2.sort();
        let mut b2: Vec<Cell> = ud2_field
            .critical_of_dim(&ud2, 1)
            .into_iter()
            .map(|id| ud2.cell(id))
            .collect();
        b2.sort();
        let sigma = connecting_cell.project();
        let rho = connecting_cell.swap();
        if b2.binary_search(&sigma).is_err() || p2.binary_search(&rho).is_err() {
            return Err(Error::Internal(
                "distinguished generators are missing from the critical census".into(),
            ));
        }
        let gens = GeneratorTable {
            p2,
            b2,
            connecting: connecting_cell,
            sigma,
            rho,
            z: og.deleted_edges().to_vec(),
        };
        Ok(BraidSystem {
            og,
            d2,
            d2_field,
            d2_trees,
            ud2,
            ud2_field,
            ud2_trees,
            gens,
        })
    }

    pub fn base_ordered(&self) -> CellId {
        self.d2_trees.base()
    }

    /// The swapped base 0-cell, reached by sheet-switching loops.
    pub fn swapped_base(&self) -> CellId {
        let base = self.d2.cell(self.d2_trees.base());
        self.d2
            .id_of(&base.swap())
            .expect("swap of the base is a cell")
    }
}

/// The representing loop of a critical 1-cell outside the tree: the tree
/// path to its initial endpoint, the cell itself, and the tree path back
/// from the terminal endpoint.
pub fn represent(cx: &CellComplex, trees: &CollapsedTrees, cell: &Cell) -> Result<EdgePath> {
    let id = cx.require(cell)?;
    if trees.contains_1cell(id) {
        return Err(Error::InvalidInput(format!(
            "{cell} lies in the collapsed tree and represents the identity"
        )));
    }
    let (init, term) = cx.endpoints(id);
    let out = trees.base_path(cx, init);
    let step = EdgePath {
        start: init,
        steps: vec![(id, Dir::Fwd)],
    };
    let back = trees.base_path(cx, term).reverse(cx);
    Ok(out.concat(cx, &step).concat(cx, &back))
}

/// The loop of a word: representing loops of its letters, reversed for
/// inverse letters, concatenated at the base point.
pub fn word_loop(cx: &CellComplex, trees: &CollapsedTrees, w: &FreeWord<Cell>) -> Result<EdgePath> {
    let mut path = EdgePath::empty(trees.base());
    for (cell, sign) in w.iter() {
        let rep = represent(cx, trees, cell)?;
        let rep = if *sign == Sign::Minus {
            rep.reverse(cx)
        } else {
            rep
        };
        path = path.concat(cx, &rep);
    }
    Ok(path)
}

fn cell_parts(c: &Cell) -> Result<(usize, (usize, usize), bool)> {
    let (u, (s, t)) = c
        .vertex_edge()
        .ok_or_else(|| Error::InvalidInput(format!("{c} is not a 1-cell")))?;
    let vertex_first = matches!(c.a, GCell::V(_));
    Ok((u, (s, t), vertex_first))
}

/// The inclusion of the pure braid group into the full one, on words.
/// Each ordered generator maps to a product of its orbit cell and the
/// distinguished generator, by the position of the vertex in the edge span.
pub fn iota(gens: &GeneratorTable, w: &PWord) -> Result<BWord> {
    let mut out = BWord::identity();
    for (cell, sign) in w.iter() {
        if !gens.is_p2_gen(cell) {
            return Err(unknown_generator(cell, &gens.p2));
        }
        let img = iota_letter(gens, cell)?;
        let img = if *sign == Sign::Minus {
            img.inverse()
        } else {
            img
        };
        out = out.concat(&img);
    }
    Ok(out)
}

fn iota_letter(gens: &GeneratorTable, cell: &Cell) -> Result<BWord> {
    let (r, (s, t), vertex_first) = cell_parts(cell)?;
    let h = Cell::unordered(GCell::V(r), GCell::edge(s, t));
    let h = FreeWord::letter(h, Sign::Plus);
    let sg = gens.sigma_word();
    let word = match (vertex_first, zone(r, s, t)) {
        (true, Zone::Below) => h,
        (true, Zone::Inside) => sg.inverse().concat(&h),
        (true, Zone::Above) => sg.inverse().concat(&h).concat(&sg),
        (false, Zone::Below) => sg.inverse().concat(&h).concat(&sg),
        (false, Zone::Inside) => h.concat(&sg),
        (false, Zone::Above) => h,
    };
    Ok(word)
}

/// Conjugation by the distinguished full-braid generator, which preserves
/// the pure braid group. The connecting cell itself is not a generator
/// and is rejected.
pub fn conjugate_by_sigma(gens: &GeneratorTable, w: &PWord) -> Result<PWord> {
    let mut out = PWord::identity();
    for (cell, sign) in w.iter() {
        if !gens.is_p2_gen(cell) {
            return Err(unknown_generator(cell, &gens.p2));
        }
        let img = conjugate_letter(gens, cell)?;
        let img = if *sign == Sign::Minus {
            img.inverse()
        } else {
            img
        };
        out = out.concat(&img);
    }
    Ok(out)
}

fn conjugate_letter(gens: &GeneratorTable, cell: &Cell) -> Result<PWord> {
    let (r, (s, t), vertex_first) = cell_parts(cell)?;
    let vf = FreeWord::letter(Cell::ordered(GCell::V(r), GCell::edge(s, t)), Sign::Plus);
    let ef = FreeWord::letter(Cell::ordered(GCell::edge(s, t), GCell::V(r)), Sign::Plus);
    let rho = gens.rho_word();
    let word = match (vertex_first, zone(r, s, t)) {
        (true, Zone::Below) => rho.concat(&ef).concat(&rho.inverse()),
        (true, Zone::Inside) => ef.concat(&rho.inverse()),
        (true, Zone::Above) => ef,
        (false, Zone::Below) => vf,
        (false, Zone::Inside) => {
            if *cell == gens.rho {
                rho
            } else {
                rho.concat(&vf)
            }
        }
        (false, Zone::Above) => rho.concat(&vf).concat(&rho.inverse()),
    };
    Ok(word)
}

/// The parity bit of one full-braid generator: 1 exactly when the vertex
/// sits inside the edge span.
pub fn theta_letter(cell: &Cell) -> Result<u8> {
    let (r, (s, t), _) = cell_parts(cell)?;
    Ok(match zone(r, s, t) {
        Zone::Inside => 1,
        _ => 0,
    })
}

/// The classifying morphism to parity: the sum of letter bits, exponent
/// signs irrelevant.
pub fn theta(w: &BWord) -> Result<u8> {
    let mut bit = 0u8;
    for (cell, _) in w.iter() {
        bit ^= theta_letter(cell)?;
    }
    Ok(bit)
}

/// First-coordinate projection to the fundamental group of the graph:
/// vertex-first generators die, edge-first generators map to their edge
/// when it is deleted.
pub fn p1(og: &OrderedGraph, w: &PWord) -> Result<ZWord> {
    let mut out = ZWord::identity();
    for (cell, sign) in w.iter() {
        let (_, (s, t), vertex_first) = cell_parts(cell)?;
        if !vertex_first && og.is_deleted(s, t) {
            out.push((s, t), *sign);
        }
    }
    Ok(out)
}

/// Rewrites a parity-zero word of the full braid group into pure-braid
/// generators by a left-to-right coset scan with transversal `{1, sigma}`.
/// The inclusion maps the result back to the input word exactly.
pub fn sigma_parity_rewrite(gens: &GeneratorTable, w: &BWord) -> Result<PWord> {
    if theta(w)? != 0 {
        return Err(Error::InvalidInput(
            "word has parity 1, so it lies outside the pure braid group".into(),
        ));
    }
    let mut parity = 0u8;
    let mut out = PWord::identity();
    for (cell, sign) in w.iter() {
        if !gens.is_b2_gen(cell) {
            return Err(unknown_generator(cell, &gens.b2));
        }
        match sign {
            Sign::Plus => {
                let img = coset_letter(gens, cell, parity)?;
                out = out.concat(&img);
                parity ^= theta_letter(cell)?;
            }
            Sign::Minus => {
                parity ^= theta_letter(cell)?;
                let img = coset_letter(gens, cell, parity)?;
                out = out.concat(&img.inverse());
            }
        }
    }
    debug_assert_eq!(parity, 0);
    Ok(out)
}

/// The pure-braid word of `sigma^p * h * sigma^-(p + theta(h))`.
fn coset_letter(gens: &GeneratorTable, cell: &Cell, parity: u8) -> Result<PWord> {
    let (r, (s, t), _) = cell_parts(cell)?;
    if *cell == gens.sigma {
        return Ok(match parity {
            0 => PWord::identity(),
            _ => gens.rho_word(),
        });
    }
    let vf = FreeWord::letter(Cell::ordered(GCell::V(r), GCell::edge(s, t)), Sign::Plus);
    let ef = FreeWord::letter(Cell::ordered(GCell::edge(s, t), GCell::V(r)), Sign::Plus);
    let rho = gens.rho_word();
    let word = match (parity, zone(r, s, t)) {
        (0, Zone::Below) => vf,
        (0, Zone::Above) => ef,
        (0, Zone::Inside) => ef.concat(&rho.inverse()),
        (_, Zone::Below) => rho.concat(&ef).concat(&rho.inverse()),
        (_, Zone::Above) => rho.concat(&vf).concat(&rho.inverse()),
        (_, Zone::Inside) => rho.concat(&vf),
    };
    Ok(word)
}

fn unknown_generator(cell: &Cell, known: &[Cell]) -> Error {
    let mut list: Vec<String> = known.iter().map(|c| c.to_string()).collect();
    let suggestions = if list.len() > 12 {
        list.truncate(12);
        format!("{} ...", list.join(" "))
    } else {
        list.join(" ")
    };
    Error::InvalidInput(format!(
        "unknown generator {cell}; known generators: {suggestions}"
    ))
}

// ---------------------------------------------------------------------------
// Oracles. These recompute the closed forms by walking actual loops; they
// are deliberately independent of the tables above.
// ---------------------------------------------------------------------------

/// Oracle for the inclusion: project the representing loop of a pure-braid
/// generator through the covering and normalize it in the unordered complex.
pub fn iota_oracle(sys: &BraidSystem, cell: &Cell) -> Result<BWord> {
    let rep = represent(&sys.d2, &sys.d2_trees, cell)?;
    let projected = project_path(&sys.d2, &sys.ud2, &rep);
    crate::morse::normalize_loop(&sys.ud2, &sys.ud2_field, &sys.ud2_trees, &projected)
}

/// Oracle for the parity morphism: lift the loop of the word through the
/// covering and report whether the endpoint switched sheets.
pub fn theta_lift_parity(sys: &BraidSystem, w: &BWord) -> Result<u8> {
    let path = word_loop(&sys.ud2, &sys.ud2_trees, w)?;
    let lift = lift_path(&sys.ud2, &sys.d2, &path, sys.base_ordered())?;
    let end = lift.end(&sys.d2);
    if end == sys.base_ordered() {
        Ok(0)
    } else if end == sys.swapped_base() {
        Ok(1)
    } else {
        Err(Error::Internal(
            "lift of a loop ended off the fiber of the base point".into(),
        ))
    }
}

/// Oracle for the first-coordinate projection: push the loop of the word
/// to the graph by first coordinates and read off the deleted edges.
pub fn p1_oracle(sys: &BraidSystem, w: &PWord) -> Result<ZWord> {
    let path = word_loop(&sys.d2, &sys.d2_trees, w)?;
    let mut out = ZWord::identity();
    let mut at = match sys.d2.cell(path.start).a {
        GCell::V(v) => v,
        _ => unreachable!("0-cells have vertex ingredients"),
    };
    for &(e, dir) in &path.steps {
        let c = sys.d2.cell(e);
        match (c.a, c.b) {
            (GCell::E(s, t), GCell::V(_)) => {
                let (from, to) = match dir {
                    Dir::Fwd => (s, t),
                    Dir::Back => (t, s),
                };
                if from != at {
                    return Err(Error::Internal(
                        "first-coordinate path is not continuous".into(),
                    ));
                }
                if sys.og.is_deleted(s, t) {
                    out.push((s, t), dir.sign());
                }
                at = to;
            }
            (GCell::V(_), GCell::E(..)) => {} // first coordinate rests
            _ => unreachable!("path steps are 1-cells"),
        }
    }
    if at != 0 {
        return Err(Error::Internal(
            "first-coordinate loop did not close at the root".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{order_graph, Graph};
    use crate::morse::normalize_loop;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn star_y_system() -> BraidSystem {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        BraidSystem::build(order_graph(&g, Some(0), None).unwrap()).unwrap()
    }

    fn circle_chord_system() -> BraidSystem {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        BraidSystem::build(order_graph(&g, None, None).unwrap()).unwrap()
    }

    fn theta_sub_system() -> BraidSystem {
        // two branch vertices joined by three length-2 paths
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (2, 4), (1, 3), (0, 4)]).unwrap();
        BraidSystem::build(order_graph(&g, None, None).unwrap()).unwrap()
    }

    fn random_pword(rng: &mut ChaCha8Rng, gens: &GeneratorTable, len: usize) -> PWord {
        let mut w = PWord::identity();
        for _ in 0..len {
            let cell = gens.p2[rng.gen_range(0..gens.p2.len())];
            let sign = if rng.gen_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            };
            w.push(cell, sign);
        }
        w
    }

    #[test]
    fn star_y_generators() {
        let sys = star_y_system();
        assert_eq!(sys.gens.b2.len(), 1);
        assert_eq!(sys.gens.p2.len(), 1);
        assert_eq!(
            sys.gens.sigma,
            Cell::unordered(GCell::V(2), GCell::edge(1, 3))
        );
        assert_eq!(sys.gens.rho, Cell::ordered(GCell::edge(1, 3), GCell::V(2)));
    }

    #[test]
    fn representing_loops_normalize_to_single_letters() {
        for sys in [star_y_system(), circle_chord_system(), theta_sub_system()] {
            for cell in &sys.gens.p2 {
                let rep = represent(&sys.d2, &sys.d2_trees, cell).unwrap();
                let w = normalize_loop(&sys.d2, &sys.d2_field, &sys.d2_trees, &rep).unwrap();
                assert_eq!(w, PWord::letter(*cell, Sign::Plus));
            }
            for cell in &sys.gens.b2 {
                let rep = represent(&sys.ud2, &sys.ud2_trees, cell).unwrap();
                let w = normalize_loop(&sys.ud2, &sys.ud2_field, &sys.ud2_trees, &rep).unwrap();
                assert_eq!(w, BWord::letter(*cell, Sign::Plus));
            }
        }
    }

    #[test]
    fn representing_the_connecting_cell_is_rejected() {
        let sys = star_y_system();
        assert!(represent(&sys.d2, &sys.d2_trees, &sys.gens.connecting).is_err());
    }

    #[test]
    fn iota_of_rho_is_sigma_squared() {
        for sys in [star_y_system(), circle_chord_system(), theta_sub_system()] {
            let img = iota(&sys.gens, &sys.gens.rho_word()).unwrap();
            assert_eq!(img, sys.gens.sigma_word().pow(2));
        }
    }

    #[test]
    fn iota_matches_the_loop_oracle_on_all_generators() {
        for sys in [star_y_system(), circle_chord_system(), theta_sub_system()] {
            for cell in &sys.gens.p2 {
                let closed = iota(&sys.gens, &PWord::letter(*cell, Sign::Plus)).unwrap();
                let oracle = iota_oracle(&sys, cell).unwrap();
                assert_eq!(closed, oracle, "generator {cell}");
            }
        }
    }

    #[test]
    fn conjugation_matches_iota_conjugation() {
        for sys in [circle_chord_system(), theta_sub_system()] {
            let sg = sys.gens.sigma_word();
            for cell in &sys.gens.p2 {
                let lhs = iota(
                    &sys.gens,
                    &conjugate_by_sigma(&sys.gens, &PWord::letter(*cell, Sign::Plus)).unwrap(),
                )
                .unwrap();
                let rhs = sg
                    .concat(&iota(&sys.gens, &PWord::letter(*cell, Sign::Plus)).unwrap())
                    .concat(&sg.inverse());
                assert_eq!(lhs, rhs, "generator {cell}");
            }
        }
    }

    #[test]
    fn conjugating_twice_is_conjugation_by_rho() {
        let sys = theta_sub_system();
        let rho = sys.gens.rho_word();
        for cell in &sys.gens.p2 {
            let w = PWord::letter(*cell, Sign::Plus);
            let twice =
                conjugate_by_sigma(&sys.gens, &conjugate_by_sigma(&sys.gens, &w).unwrap()).unwrap();
            let via_rho = rho.concat(&w).concat(&rho.inverse());
            // compare through the inclusion, where both sides reduce freely
            assert_eq!(
                iota(&sys.gens, &twice).unwrap(),
                iota(&sys.gens, &via_rho).unwrap(),
                "generator {cell}"
            );
        }
    }

    #[test]
    fn theta_values_on_cells() {
        assert_eq!(
            theta_letter(&Cell::unordered(GCell::V(2), GCell::edge(1, 3))).unwrap(),
            1
        );
        assert_eq!(
            theta_letter(&Cell::unordered(GCell::V(0), GCell::edge(1, 2))).unwrap(),
            0
        );
        assert_eq!(theta(&BWord::identity()).unwrap(), 0);
    }

    #[test]
    fn theta_of_sigma_is_one_and_matches_the_lift() {
        for sys in [star_y_system(), circle_chord_system(), theta_sub_system()] {
            let sg = sys.gens.sigma_word();
            assert_eq!(theta(&sg).unwrap(), 1);
            assert_eq!(theta_lift_parity(&sys, &sg).unwrap(), 1);
            for cell in &sys.gens.b2 {
                let w = BWord::letter(*cell, Sign::Plus);
                assert_eq!(
                    theta(&w).unwrap(),
                    theta_lift_parity(&sys, &w).unwrap(),
                    "{cell}"
                );
            }
        }
    }

    #[test]
    fn theta_vanishes_on_pure_braid_words() {
        let sys = circle_chord_system();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let w = random_pword(&mut rng, &sys.gens, 6);
            assert_eq!(theta(&iota(&sys.gens, &w).unwrap()).unwrap(), 0);
        }
    }

    #[test]
    fn p1_closed_form_and_oracle_agree() {
        for sys in [circle_chord_system(), theta_sub_system()] {
            for cell in &sys.gens.p2 {
                let w = PWord::letter(*cell, Sign::Plus);
                assert_eq!(
                    p1(&sys.og, &w).unwrap(),
                    p1_oracle(&sys, &w).unwrap(),
                    "{cell}"
                );
            }
            // and on some random words
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..25 {
                let w = random_pword(&mut rng, &sys.gens, 6);
                assert_eq!(p1(&sys.og, &w).unwrap(), p1_oracle(&sys, &w).unwrap());
            }
        }
    }

    #[test]
    fn p1_kills_vertex_first_generators() {
        let sys = theta_sub_system();
        for cell in &sys.gens.p2 {
            if matches!(cell.a, GCell::V(_)) {
                assert!(p1(&sys.og, &PWord::letter(*cell, Sign::Plus))
                    .unwrap()
                    .is_identity());
            }
        }
    }

    #[test]
    fn parity_rewrite_sections_iota() {
        for sys in [circle_chord_system(), theta_sub_system()] {
            // sigma^2 -> rho
            let s2 = sys.gens.sigma_word().pow(2);
            assert_eq!(
                sigma_parity_rewrite(&sys.gens, &s2).unwrap(),
                sys.gens.rho_word()
            );
            // iota(g) -> g for every generator
            for cell in &sys.gens.p2 {
                let w = PWord::letter(*cell, Sign::Plus);
                let img = iota(&sys.gens, &w).unwrap();
                assert_eq!(sigma_parity_rewrite(&sys.gens, &img).unwrap(), w, "{cell}");
            }
            // round trip on random parity-zero words
            let mut rng = ChaCha8Rng::seed_from_u64(23);
            for _ in 0..200 {
                let mut w = BWord::identity();
                for _ in 0..8 {
                    let cell = sys.gens.b2[rng.gen_range(0..sys.gens.b2.len())];
                    let sign = if rng.gen_bool(0.5) {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    };
                    w.push(cell, sign);
                }
                if theta(&w).unwrap() != 0 {
                    w = w.concat(&sys.gens.sigma_word());
                }
                let back = iota(&sys.gens, &sigma_parity_rewrite(&sys.gens, &w).unwrap()).unwrap();
                assert_eq!(back, w);
            }
        }
    }

    #[test]
    fn parity_one_words_are_rejected() {
        let sys = star_y_system();
        assert!(sigma_parity_rewrite(&sys.gens, &sys.gens.sigma_word()).is_err());
    }

    #[test]
    fn unknown_generators_are_rejected_with_suggestions() {
        let sys = star_y_system();
        let bogus = Cell::ordered(GCell::V(0), GCell::edge(1, 2));
        let err = iota(&sys.gens, &PWord::letter(bogus, Sign::Plus)).unwrap_err();
        assert!(err.to_string().contains("known generators"));
    }

    #[test]
    fn double_lift_of_sigma_loop_normalizes_to_sigma_squared() {
        // lift the distinguished generator loop twice through the covering;
        // the concatenation closes up, its projection normalizes to
        // sigma^2, and that matches the inclusion of the swapped cell
        for sys in [circle_chord_system(), theta_sub_system()] {
            let rep = represent(&sys.ud2, &sys.ud2_trees, &sys.gens.sigma).unwrap();
            let first = lift_path(&sys.ud2, &sys.d2, &rep, sys.base_ordered()).unwrap();
            assert_eq!(first.end(&sys.d2), sys.swapped_base());
            let second = lift_path(&sys.ud2, &sys.d2, &rep, first.end(&sys.d2)).unwrap();
            let total = first.concat(&sys.d2, &second);
            assert!(total.is_closed(&sys.d2));
            let projected = project_path(&sys.d2, &sys.ud2, &total);
            let w =
                crate::morse::normalize_loop(&sys.ud2, &sys.ud2_field, &sys.ud2_trees, &projected)
                    .unwrap();
            assert_eq!(w, sys.gens.sigma_word().pow(2));
            assert_eq!(w, iota(&sys.gens, &sys.gens.rho_word()).unwrap());
        }
    }

    #[test]
    fn iota_is_injective_on_short_words() {
        use std::collections::HashMap;
        let sys = circle_chord_system();
        let gens = &sys.gens;
        let letters: Vec<(Cell, Sign)> = gens
            .p2
            .iter()
            .flat_map(|&c| [(c, Sign::Plus), (c, Sign::Minus)])
            .collect();
        let mut images: HashMap<BWord, PWord> = HashMap::new();
        let mut frontier: Vec<PWord> = vec![PWord::identity()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &frontier {
                for (c, s) in &letters {
                    let mut w2 = w.clone();
                    w2.push(*c, *s);
                    if w2.len() != w.len() + 1 {
                        continue; // cancelled, already seen at a shorter length
                    }
                    next.push(w2);
                }
            }
            for w in &next {
                let img = iota(gens, w).unwrap();
                if let Some(prev) = images.insert(img, w.clone()) {
                    panic!("iota collision between {prev:?} and {w:?}");
                }
            }
            frontier = next;
        }
    }
}
