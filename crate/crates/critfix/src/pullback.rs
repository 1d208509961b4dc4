//! Lifting curves through a blow-up cover.
//!
//! Cutting the sphere along the spanning tree leaves one disk. Its full
//! preimage under the cover is tiled by `degree` sheets, each mapping
//! homeomorphically onto the disk; the walls between sheets are the
//! preimage copies of the tree edges. Only the primary copies coincide
//! with the tree downstairs, so only they contribute letters when a
//! lifted path is read as a word. Tracking which wall a lift crosses
//! gives both the sheet permutation and the restriction of every
//! generator, and from those the pullbacks of any curve word.

use crate::blowup::BlowupCover;
use crate::curves::{free_reduce, invert_word, CurveWord, Letter, SpanningTree};
use crate::rotation_map::{Dart, RotationSystem};
use crate::{Error, Result};

/// Which preimage copy of a tree edge a wall is. Primary copies are the
/// tree edges themselves; secondary and patch copies are invisible to
/// word reading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WallKind {
    Primary,
    Secondary,
    PatchCopy { patch: usize },
}

/// The preimage of the spanning tree, embedded in the covering sphere,
/// together with the sheet structure of its complement.
pub struct OverlayComplex {
    tree: SpanningTree,
    complex: RotationSystem,
    wall_gen: Vec<usize>,
    wall_kind: Vec<WallKind>,
    n_gens: usize,
    n_sheets: usize,
    /// For sheet `c` and side index `2 * gen + end`, the wall dart of the
    /// sheet's boundary walk lying over that side of the tree polygon.
    dart_at: Vec<Vec<Dart>>,
    adjacent: Vec<Vec<usize>>,
    real: Vec<Vec<bool>>,
}

impl OverlayComplex {
    pub fn build(cover: &BlowupCover, tree: &SpanningTree) -> Result<OverlayComplex> {
        let base = cover.base();
        let rebuilt = SpanningTree::new(base, tree.edges().to_vec())
            .map_err(|_| Error::MismatchedBase)?;
        if rebuilt.polygon() != tree.polygon() {
            return Err(Error::MismatchedBase);
        }

        let n_vertices = base.n_vertices();
        let n_edges = base.n_edges();
        let n_gens = tree.n_generators();

        // Vertices: the originals, then one copy per patch of every base
        // vertex not an endpoint of the blown edge.
        let mut names: Vec<String> =
            (0..n_vertices).map(|v| base.vertex_name(v).to_string()).collect();
        let mut copy_vtx = vec![vec![usize::MAX; n_vertices]; n_edges];
        for j in 0..n_edges {
            let [u, v] = base.edge_ends(j);
            for w in 0..n_vertices {
                if w == u || w == v {
                    copy_vtx[j][w] = w;
                } else {
                    copy_vtx[j][w] = names.len();
                    names.push(format!("p{}:{}", j, base.vertex_name(w)));
                }
            }
        }

        // Walls: primary and secondary copies of each tree edge, then one
        // copy per patch of every tree edge other than the blown one.
        let mut ends: Vec<[usize; 2]> = Vec::new();
        let mut wall_gen: Vec<usize> = Vec::new();
        let mut wall_kind: Vec<WallKind> = Vec::new();
        for i in 0..n_gens {
            let e = tree.edge_of_generator(i);
            ends.push(base.edge_ends(e));
            wall_gen.push(i);
            wall_kind.push(WallKind::Primary);
            ends.push(base.edge_ends(e));
            wall_gen.push(i);
            wall_kind.push(WallKind::Secondary);
        }
        let mut copy_edge = vec![vec![usize::MAX; n_gens]; n_edges];
        for j in 0..n_edges {
            for i in 0..n_gens {
                let e = tree.edge_of_generator(i);
                if e == j {
                    continue;
                }
                let [u, v] = base.edge_ends(e);
                copy_edge[j][i] = ends.len();
                ends.push([copy_vtx[j][u], copy_vtx[j][v]]);
                wall_gen.push(i);
                wall_kind.push(WallKind::PatchCopy { patch: j });
            }
        }

        // Rotations at an original vertex: walk the base rotation; a tree
        // dart contributes its two copies with the patch sector caught
        // between them, a non-tree dart only the sector. The sector over
        // patch `j` holds copies of the remaining tree darts in the base
        // order cut open at the blown edge. Patch sheets preserve
        // orientation, so copied vertices keep the base rotation order.
        let mut rotations: Vec<Vec<[usize; 2]>> = Vec::with_capacity(names.len());
        for u in 0..n_vertices {
            let rot = base.rotation(u);
            let mut list: Vec<[usize; 2]> = Vec::new();
            for (p, d) in rot.iter().enumerate() {
                let (j, s) = (d.edge(), d.end());
                let sector = |list: &mut Vec<[usize; 2]>| {
                    for k in 1..rot.len() {
                        let q = rot[(p + k) % rot.len()];
                        if let Some(i) = tree.generator_of(q.edge()) {
                            list.push([copy_edge[j][i], q.end()]);
                        }
                    }
                };
                if let Some(i) = tree.generator_of(j) {
                    let (first, second) = if s == cover.anchor_end(j) {
                        (2 * i, 2 * i + 1)
                    } else {
                        (2 * i + 1, 2 * i)
                    };
                    list.push([first, s]);
                    sector(&mut list);
                    list.push([second, s]);
                } else {
                    sector(&mut list);
                }
            }
            rotations.push(list);
        }
        for j in 0..n_edges {
            let [eu, ev] = base.edge_ends(j);
            for w in 0..n_vertices {
                if w == eu || w == ev {
                    continue;
                }
                let list = base
                    .rotation(w)
                    .iter()
                    .filter_map(|d| {
                        tree.generator_of(d.edge()).map(|i| [copy_edge[j][i], d.end()])
                    })
                    .collect();
                rotations.push(list);
            }
        }

        let complex = RotationSystem::new(names, ends, rotations)
            .expect("overlay complex is structurally coherent");
        let n_sheets = cover.degree();
        assert_eq!(complex.n_faces(), n_sheets, "one sheet per covering degree");

        let mut dart_at = vec![vec![Dart(usize::MAX); 2 * n_gens]; n_sheets];
        for (c, walk) in complex.face_walks().iter().enumerate() {
            assert_eq!(walk.len(), 2 * n_gens, "sheet walk covers the polygon once");
            for &d in walk.darts() {
                let slot = &mut dart_at[c][2 * wall_gen[d.edge()] + d.end()];
                assert_eq!(slot.0, usize::MAX, "polygon side lifted twice");
                *slot = d;
            }
        }
        let adjacent: Vec<Vec<usize>> = dart_at
            .iter()
            .map(|row| row.iter().map(|d| complex.face_of(d.opposite())).collect())
            .collect();
        let real: Vec<Vec<bool>> = dart_at
            .iter()
            .map(|row| {
                row.iter()
                    .map(|d| wall_kind[d.edge()] == WallKind::Primary)
                    .collect()
            })
            .collect();

        Ok(OverlayComplex {
            tree: rebuilt,
            complex,
            wall_gen,
            wall_kind,
            n_gens,
            n_sheets,
            dart_at,
            adjacent,
            real,
        })
    }

    pub fn n_sheets(&self) -> usize {
        self.n_sheets
    }

    pub fn n_generators(&self) -> usize {
        self.n_gens
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    /// The preimage of the tree as a rotation system on the cover sphere.
    pub fn complex(&self) -> &RotationSystem {
        &self.complex
    }

    pub fn wall_generator(&self, wall: usize) -> usize {
        self.wall_gen[wall]
    }

    pub fn wall_kind(&self, wall: usize) -> WallKind {
        self.wall_kind[wall]
    }

    /// Wall dart of `sheet`'s boundary lying over polygon side `(gen, end)`.
    pub fn wall_dart(&self, sheet: usize, gen: usize, end: usize) -> Dart {
        self.dart_at[sheet][2 * gen + end]
    }

    /// Sheet on the far side of the wall lying over polygon side
    /// `(gen, end)` of `sheet`.
    pub fn adjacent_sheet(&self, sheet: usize, gen: usize, end: usize) -> usize {
        self.adjacent[sheet][2 * gen + end]
    }

    pub fn crossing_is_real(&self, sheet: usize, gen: usize, end: usize) -> bool {
        self.real[sheet][2 * gen + end]
    }

    /// Lift one letter from `sheet`: the sheet the lift ends in, plus the
    /// letter it contributes when the crossed wall is a primary copy.
    pub fn step(&self, sheet: usize, letter: Letter) -> (usize, Option<Letter>) {
        let gen = letter.unsigned_abs() as usize - 1;
        let end = usize::from(letter > 0);
        let idx = 2 * gen + end;
        let next = self.adjacent[sheet][idx];
        let out = self.real[sheet][idx].then_some(letter);
        (next, out)
    }

    /// Lift a word letter by letter from `sheet`; returns the arrival
    /// sheet and the crossing word the lift traces out.
    pub fn lift_word(&self, sheet: usize, letters: &[Letter]) -> (usize, Vec<Letter>) {
        let mut c = sheet;
        let mut out = Vec::new();
        for &l in letters {
            let (next, crossing) = self.step(c, l);
            out.extend(crossing);
            c = next;
        }
        (c, out)
    }

    /// Sheet permutation induced by lifting `letters` from every sheet.
    pub fn permutation_of(&self, letters: &[Letter]) -> Vec<usize> {
        (0..self.n_sheets).map(|c| self.lift_word(c, letters).0).collect()
    }

    /// Pullback components of a curve: one reduced word per cycle of the
    /// sheet permutation, sorted.
    pub fn pullback(&self, w: &CurveWord) -> Vec<CurveWord> {
        pullback_by(self.n_sheets, w, |c, letters| self.lift_word(c, letters))
    }

    /// Tabulated form of the lifting data: one permutation and one
    /// restriction word per generator and sheet.
    pub fn wreath_recursion(&self) -> WreathRecursion {
        let mut perms = Vec::with_capacity(self.n_gens);
        let mut restrictions = Vec::with_capacity(self.n_gens);
        for g in 0..self.n_gens {
            let mut perm = Vec::with_capacity(self.n_sheets);
            let mut restr = Vec::with_capacity(self.n_sheets);
            for c in 0..self.n_sheets {
                let (next, out) = self.step(c, (g + 1) as Letter);
                perm.push(next);
                restr.push(out.into_iter().collect());
            }
            perms.push(perm);
            restrictions.push(restr);
        }
        let inverse_perms = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0; p.len()];
                for (c, &pc) in p.iter().enumerate() {
                    inv[pc] = c;
                }
                inv
            })
            .collect();
        WreathRecursion {
            n_gens: self.n_gens,
            n_sheets: self.n_sheets,
            perms,
            inverse_perms,
            restrictions,
        }
    }
}

/// A wreath-product presentation of the lifting action: for each
/// generator, a permutation of the sheets and a restriction word per
/// sheet. Words lift by composing restrictions; an inverse letter lifts
/// through the sheet it permutes from.
pub struct WreathRecursion {
    n_gens: usize,
    n_sheets: usize,
    perms: Vec<Vec<usize>>,
    inverse_perms: Vec<Vec<usize>>,
    restrictions: Vec<Vec<Vec<Letter>>>,
}

impl WreathRecursion {
    pub fn n_generators(&self) -> usize {
        self.n_gens
    }

    pub fn n_sheets(&self) -> usize {
        self.n_sheets
    }

    pub fn perm(&self, gen: usize) -> &[usize] {
        &self.perms[gen]
    }

    pub fn restriction(&self, gen: usize, sheet: usize) -> &[Letter] {
        &self.restrictions[gen][sheet]
    }

    pub fn lift_word(&self, sheet: usize, letters: &[Letter]) -> (usize, Vec<Letter>) {
        let mut c = sheet;
        let mut out = Vec::new();
        for &l in letters {
            let g = l.unsigned_abs() as usize - 1;
            if l > 0 {
                out.extend_from_slice(&self.restrictions[g][c]);
                c = self.perms[g][c];
            } else {
                let pre = self.inverse_perms[g][c];
                out.extend(invert_word(&self.restrictions[g][pre]));
                c = pre;
            }
        }
        (c, free_reduce(&out))
    }

    pub fn permutation_of(&self, letters: &[Letter]) -> Vec<usize> {
        (0..self.n_sheets).map(|c| self.lift_word(c, letters).0).collect()
    }

    pub fn pullback(&self, w: &CurveWord) -> Vec<CurveWord> {
        pullback_by(self.n_sheets, w, |c, letters| self.lift_word(c, letters))
    }
}

fn pullback_by<F>(n_sheets: usize, w: &CurveWord, lift: F) -> Vec<CurveWord>
where
    F: Fn(usize, &[Letter]) -> (usize, Vec<Letter>),
{
    let letters = w.letters();
    let mut seen = vec![false; n_sheets];
    let mut out = Vec::new();
    for start in 0..n_sheets {
        if seen[start] {
            continue;
        }
        let mut word = Vec::new();
        let mut c = start;
        loop {
            seen[c] = true;
            let (next, crossings) = lift(c, letters);
            word.extend(crossings);
            c = next;
            if c == start {
                break;
            }
        }
        out.push(CurveWord::reduce(&word));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::blow_up;
    use crate::curves::{conjugate_normal_form, peripheral_letters};
    use crate::fixtures;
    use crate::tischler::ChargeGraph;
    use proptest::prelude::*;

    fn overlay_for(base: RotationSystem, tree_edges: Option<Vec<usize>>) -> OverlayComplex {
        let g = ChargeGraph::new(base).unwrap();
        let tree = match tree_edges {
            Some(e) => SpanningTree::new(&g, e).unwrap(),
            None => SpanningTree::greedy(&g),
        };
        let cover = blow_up(&g);
        OverlayComplex::build(&cover, &tree).unwrap()
    }

    #[test]
    fn single_edge_is_an_adding_machine() {
        let o = overlay_for(fixtures::single_edge(), None);
        assert_eq!(o.n_sheets(), 2);
        let w = o.wreath_recursion();
        assert_eq!(w.perm(0), &[1, 0]);
        assert_eq!(w.restriction(0, 0), &[] as &[Letter]);
        assert_eq!(w.restriction(0, 1), &[1]);
        // A loop around one endpoint pulls back to a single loop.
        assert_eq!(
            o.pullback(&CurveWord::reduce(&[1])),
            vec![CurveWord::reduce(&[1])]
        );
        // The trivial word pulls back to one trivial word per sheet.
        assert_eq!(
            o.pullback(&CurveWord::trivial()),
            vec![CurveWord::trivial(), CurveWord::trivial()]
        );
    }

    #[test]
    fn two_star_recursion_matches_hand_computation() {
        let o = overlay_for(fixtures::path2(), None);
        assert_eq!(o.n_sheets(), 3);
        let w = o.wreath_recursion();
        assert_eq!(w.perm(0), &[1, 0, 2]);
        assert_eq!(w.perm(1), &[2, 1, 0]);
        let empty: &[Letter] = &[];
        assert_eq!(w.restriction(0, 0), empty);
        assert_eq!(w.restriction(0, 1), &[1]);
        assert_eq!(w.restriction(0, 2), empty);
        assert_eq!(w.restriction(1, 0), empty);
        assert_eq!(w.restriction(1, 1), empty);
        assert_eq!(w.restriction(1, 2), &[2]);
    }

    #[test]
    fn sheet_counts_match_degree() {
        assert_eq!(overlay_for(fixtures::fig1(), Some(vec![0, 1, 2])).n_sheets(), 5);
        assert_eq!(overlay_for(fixtures::star(3), None).n_sheets(), 4);
        assert_eq!(overlay_for(fixtures::triangle(), None).n_sheets(), 4);
    }

    #[test]
    fn adjacency_is_involutive() {
        for base in [
            fixtures::single_edge(),
            fixtures::path2(),
            fixtures::triangle(),
            fixtures::star(3),
            fixtures::fig1(),
        ] {
            let o = overlay_for(base, None);
            for c in 0..o.n_sheets() {
                for g in 0..o.n_generators() {
                    for s in 0..2 {
                        let other = o.adjacent_sheet(c, g, s);
                        assert_eq!(o.adjacent_sheet(other, g, 1 - s), c);
                        assert_eq!(
                            o.crossing_is_real(c, g, s),
                            o.crossing_is_real(other, g, 1 - s)
                        );
                    }
                }
            }
            // Each generator has exactly one real crossing per direction.
            for g in 0..o.n_generators() {
                let count = (0..o.n_sheets())
                    .filter(|&c| o.crossing_is_real(c, g, 1))
                    .count();
                assert_eq!(count, 1);
            }
        }
    }

    #[test]
    fn peripheral_loops_lift_coherently() {
        for base in [
            fixtures::single_edge(),
            fixtures::path2(),
            fixtures::triangle(),
            fixtures::star(3),
            fixtures::fig1(),
        ] {
            let g = ChargeGraph::new(base).unwrap();
            let tree = SpanningTree::greedy(&g);
            let cover = blow_up(&g);
            let o = OverlayComplex::build(&cover, &tree).unwrap();
            for v in 0..g.n_vertices() {
                let letters = peripheral_letters(&g, &tree, v);
                let perm = o.permutation_of(&letters);
                let mut seen = vec![false; o.n_sheets()];
                let mut long_cycles = 0;
                for start in 0..o.n_sheets() {
                    if seen[start] {
                        continue;
                    }
                    let mut cycle = Vec::new();
                    let mut composed = Vec::new();
                    let mut c = start;
                    loop {
                        seen[c] = true;
                        cycle.push(c);
                        let (_, word) = o.lift_word(c, &letters);
                        composed.extend(word);
                        c = perm[c];
                        if c == start {
                            break;
                        }
                    }
                    if cycle.len() == 1 {
                        assert!(free_reduce(&composed).is_empty());
                    } else {
                        long_cycles += 1;
                        assert_eq!(cycle.len(), g.degree(v) + 1);
                        assert_eq!(
                            conjugate_normal_form(&composed),
                            conjugate_normal_form(&letters)
                        );
                    }
                }
                assert_eq!(long_cycles, 1);
            }
        }
    }

    #[test]
    fn mismatched_tree_is_rejected() {
        let g = ChargeGraph::new(fixtures::fig1()).unwrap();
        let other = ChargeGraph::new(fixtures::star(3)).unwrap();
        let tree = SpanningTree::greedy(&other);
        let cover = blow_up(&g);
        assert!(matches!(
            OverlayComplex::build(&cover, &tree),
            Err(Error::MismatchedBase)
        ));
    }

    #[test]
    fn reference_curve_has_three_pullbacks() {
        let o = overlay_for(fixtures::fig1(), Some(vec![0, 1, 2]));
        let w = CurveWord::reduce(&fixtures::reference_curve_letters());
        let pulled = o.pullback(&w);
        let complexities: Vec<usize> = pulled.iter().map(|p| p.complexity()).collect();
        assert_eq!(pulled.len(), 3);
        assert_eq!(complexities, vec![0, 1, 1]);
        let rec = o.wreath_recursion();
        assert_eq!(rec.pullback(&w), pulled);
    }

    fn letter_strategy(n_gens: i32) -> impl Strategy<Value = Letter> {
        (1..=n_gens, any::<bool>()).prop_map(|(g, neg)| if neg { -g } else { g })
    }

    proptest! {
        #[test]
        fn routes_agree_and_complexity_never_grows(
            raw in prop::collection::vec(letter_strategy(3), 0..12)
        ) {
            let o = overlay_for(fixtures::fig1(), Some(vec![0, 1, 2]));
            let rec = o.wreath_recursion();
            let w = CurveWord::reduce(&raw);
            let via_overlay = o.pullback(&w);
            let via_recursion = rec.pullback(&w);
            prop_assert_eq!(&via_overlay, &via_recursion);
            let total: usize = via_overlay.iter().map(|p| p.complexity()).sum();
            prop_assert!(total <= w.complexity());
        }
    }
}
