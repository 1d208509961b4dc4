//! Curve classes on the sphere punctured at the charge vertices, written as
//! cyclic words over spanning-tree generators.
//!
//! Cutting the sphere along a spanning tree leaves one disk whose boundary
//! is the tree polygon; generator `x_i` crosses tree edge i once, entering
//! through the polygon side that carries end 1 of the edge. A free homotopy
//! class is then a cyclic word, and the cyclically reduced length is the
//! complexity used throughout.

use crate::error::{Error, Result};
use crate::rotation_map::Dart;
use crate::tischler::ChargeGraph;

/// Letters are nonzero integers: `+(i+1)` crosses tree generator i forward,
/// `-(i+1)` backward.
pub type Letter = i32;

pub fn invert_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&l| -l).collect()
}

/// Stack reduction of adjacent inverse pairs.
pub fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        debug_assert!(l != 0);
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction plus cancellation across the wrap.
pub fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut v = free_reduce(w);
    while v.len() >= 2 && v[0] == -*v.last().unwrap() {
        v.pop();
        v.remove(0);
    }
    v
}

/// Letter order used for all normal forms: x1 < X1 < x2 < X2 < ...
fn letter_key(l: Letter) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

fn word_cmp(a: &[Letter], b: &[Letter]) -> std::cmp::Ordering {
    let keys =
        |w: &[Letter]| w.iter().map(|&l| letter_key(l)).collect::<Vec<_>>();
    keys(a).cmp(&keys(b))
}

fn min_rotation(w: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    let mut best: Option<Vec<Letter>> = None;
    for r in 0..n {
        let cand: Vec<Letter> = (0..n).map(|i| w[(r + i) % n]).collect();
        if best
            .as_ref()
            .map_or(true, |b| word_cmp(&cand, b) == std::cmp::Ordering::Less)
        {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

/// Oriented conjugacy normal form: cyclically reduce, then take the least
/// rotation. Two words get equal forms exactly when they are conjugate.
pub fn conjugate_normal_form(w: &[Letter]) -> Vec<Letter> {
    min_rotation(&cyclic_reduce(w))
}

/// An unoriented cyclic word in normal form: cyclically reduced, least among
/// all rotations of itself and of its inverse. Represents the isotopy class
/// of an unoriented closed curve.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CurveWord {
    letters: Vec<Letter>,
}

impl CurveWord {
    pub fn reduce(raw: &[Letter]) -> CurveWord {
        let v = cyclic_reduce(raw);
        if v.is_empty() {
            return CurveWord { letters: v };
        }
        let fwd = min_rotation(&v);
        let bwd = min_rotation(&invert_word(&v));
        let letters = if word_cmp(&bwd, &fwd) == std::cmp::Ordering::Less {
            bwd
        } else {
            fwd
        };
        CurveWord { letters }
    }

    pub fn trivial() -> CurveWord {
        CurveWord { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    /// Cyclically reduced length; the total intersection number with the
    /// spanning tree.
    pub fn complexity(&self) -> usize {
        self.letters.len()
    }

    /// Crossings of tree generator `gen` (0-based), either sign.
    pub fn edge_count(&self, gen: usize) -> usize {
        self.letters
            .iter()
            .filter(|l| l.unsigned_abs() as usize == gen + 1)
            .count()
    }

    /// Largest generator index mentioned, plus one.
    pub fn max_generator(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }
}

impl PartialOrd for CurveWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CurveWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| word_cmp(&self.letters, &other.letters))
    }
}

impl std::fmt::Display for CurveWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_word(&self.letters))
    }
}

/// Word syntax: whitespace-separated `x<i>` / `X<i>` tokens, 1-based; the
/// empty word prints as `1`.
pub fn format_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&l| {
            if l > 0 {
                format!("x{}", l)
            } else {
                format!("X{}", -l)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_word(input: &str, n_gens: usize) -> Result<Vec<Letter>> {
    let trimmed = input.trim();
    if trimmed.is_empty() || trimmed == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for tok in trimmed.split_whitespace() {
        let (sign, digits) = match tok.strip_prefix('x') {
            Some(rest) => (1i32, rest),
            None => match tok.strip_prefix('X') {
                Some(rest) => (-1i32, rest),
                None => {
                    return Err(Error::WordSyntax {
                        input: input.into(),
                        reason: format!("token {:?} must start with x or X", tok),
                    })
                }
            },
        };
        let idx: usize = digits.parse().map_err(|_| Error::WordSyntax {
            input: input.into(),
            reason: format!("token {:?} has no index", tok),
        })?;
        if idx == 0 || idx > n_gens {
            return Err(Error::UnknownGenerator {
                gen: idx,
                available: n_gens,
            });
        }
        out.push(sign * idx as i32);
    }
    Ok(out)
}

/// A spanning tree of a charge graph, with its polygon: the single face walk
/// of the tree, whose sides (tree darts) index the generator crossings.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    edges: Vec<usize>,
    gen_of: Vec<Option<usize>>,
    polygon: Vec<Dart>,
    side_pos: Vec<Option<usize>>,
}

impl SpanningTree {
    /// Validates that `edges` (base edge ids, any order) form a spanning
    /// tree of `g` and computes the polygon.
    pub fn new(g: &ChargeGraph, edges: Vec<usize>) -> Result<SpanningTree> {
        let mut sorted = edges;
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.last().is_some_and(|&e| e >= g.n_edges()) {
            return Err(Error::InvalidSpanningTree {
                reason: format!(
                    "edge id {} out of range",
                    sorted.last().unwrap()
                ),
            });
        }
        if sorted.len() != g.n_vertices() - 1 {
            return Err(Error::InvalidSpanningTree {
                reason: format!(
                    "{} distinct edges given, a spanning tree needs {}",
                    sorted.len(),
                    g.n_vertices() - 1
                ),
            });
        }
        let mut gen_of = vec![None; g.n_edges()];
        for (i, &e) in sorted.iter().enumerate() {
            gen_of[e] = Some(i);
        }

        // Sub-rotation-system of the tree: same vertices, filtered rotations.
        let sub_edges: Vec<[usize; 2]> =
            sorted.iter().map(|&e| g.edge_ends(e)).collect();
        let sub_rotations: Vec<Vec<[usize; 2]>> = (0..g.n_vertices())
            .map(|v| {
                g.rotation(v)
                    .iter()
                    .filter_map(|d| gen_of[d.edge()].map(|i| [i, d.end()]))
                    .collect()
            })
            .collect();
        let sub = crate::rotation_map::RotationSystem::new(
            g.vertex_names().to_vec(),
            sub_edges,
            sub_rotations,
        )
        .expect("tree subsystem inherits validity");
        if !sub.is_connected() {
            return Err(Error::InvalidSpanningTree {
                reason: "edge set does not span the graph".into(),
            });
        }
        debug_assert_eq!(sub.n_faces(), 1);

        let polygon: Vec<Dart> = sub.face_walks()[0]
            .darts()
            .iter()
            .map(|d| Dart::new(sorted[d.edge()], d.end()))
            .collect();
        let mut side_pos = vec![None; g.n_darts()];
        for (p, &d) in polygon.iter().enumerate() {
            debug_assert!(side_pos[d.0].is_none());
            side_pos[d.0] = Some(p);
        }
        Ok(SpanningTree {
            edges: sorted,
            gen_of,
            polygon,
            side_pos,
        })
    }

    /// Smallest-index spanning tree: scan edges in order, keep the acyclic
    /// ones.
    pub fn greedy(g: &ChargeGraph) -> SpanningTree {
        let mut parent: Vec<usize> = (0..g.n_vertices()).collect();
        fn find(parent: &mut Vec<usize>, v: usize) -> usize {
            if parent[v] != v {
                let r = find(parent, parent[v]);
                parent[v] = r;
            }
            parent[v]
        }
        let mut chosen = Vec::with_capacity(g.n_vertices() - 1);
        for e in 0..g.n_edges() {
            let [u, v] = g.edge_ends(e);
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                chosen.push(e);
            }
        }
        SpanningTree::new(g, chosen).expect("greedy selection spans a connected graph")
    }

    /// Tree edges, sorted; generator i crosses `edges()[i]`.
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn n_generators(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.gen_of.get(e).is_some_and(|g| g.is_some())
    }

    pub fn generator_of(&self, e: usize) -> Option<usize> {
        self.gen_of.get(e).copied().flatten()
    }

    pub fn edge_of_generator(&self, i: usize) -> usize {
        self.edges[i]
    }

    /// The tree polygon: face walk of the tree as base darts, length
    /// 2 * (vertex count - 1).
    pub fn polygon(&self) -> &[Dart] {
        &self.polygon
    }

    /// Position of a tree dart along the polygon walk.
    pub fn side_position(&self, d: Dart) -> Option<usize> {
        self.side_pos.get(d.0).copied().flatten()
    }
}

/// Letters of a small counterclockwise loop around `v`, in rotation order
/// starting at the first tree dart stored at `v`: each incident tree edge is
/// crossed once, positively when the loop passes its end 1.
pub fn peripheral_letters(g: &ChargeGraph, tree: &SpanningTree, v: usize) -> Vec<Letter> {
    g.rotation(v)
        .iter()
        .filter_map(|d| {
            tree.generator_of(d.edge()).map(|i| {
                let magnitude = (i + 1) as i32;
                if d.end() == 1 {
                    magnitude
                } else {
                    -magnitude
                }
            })
        })
        .collect()
}

pub fn peripheral_word(g: &ChargeGraph, tree: &SpanningTree, v: usize) -> CurveWord {
    CurveWord::reduce(&peripheral_letters(g, tree, v))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SimpleVerdict {
    Simple,
    NonSimple,
    Unknown,
}

pub const DEFAULT_SIMPLE_CAP: usize = 10;

/// Decides whether the class has an embedded representative, by exhaustive
/// search over the orders in which the strands may cross each tree edge.
///
/// The curve meets the cut disk in `complexity` strands, each a chord of the
/// polygon between two crossing appearances. A crossing on edge e appears on
/// both polygon sides of e; the two sides are glued reversing the boundary
/// direction, so positions within side (e,0) grow with the order along the
/// edge and positions within side (e,1) shrink with it. The class is simple
/// exactly when some choice of per-edge orders makes all chords pairwise
/// non-interleaving on the boundary circle.
pub fn is_simple(w: &CurveWord, tree: &SpanningTree, cap: usize) -> SimpleVerdict {
    let k = w.complexity();
    if k <= 1 {
        return SimpleVerdict::Simple;
    }
    if k > cap {
        return SimpleVerdict::Unknown;
    }
    let mut search = ArrangementSearch::new(w, tree);
    if search.run() {
        SimpleVerdict::Simple
    } else {
        SimpleVerdict::NonSimple
    }
}

/// One endpoint of a strand: a crossing appearance on a polygon side.
#[derive(Clone, Copy)]
struct Appearance {
    crossing: usize,
    walk_pos: usize,
    side_end: usize,
}

struct ArrangementSearch {
    k: usize,
    on_edge: Vec<Vec<usize>>,
    count_on_edge_of: Vec<usize>,
    apps: Vec<Appearance>,
    chords: Vec<[usize; 2]>,
    rank: Vec<Option<usize>>,
    ready: Vec<usize>,
    edge_order: Vec<usize>,
}

impl ArrangementSearch {
    fn new(w: &CurveWord, tree: &SpanningTree) -> ArrangementSearch {
        let letters = w.letters();
        let k = letters.len();
        let n_gens = tree.n_generators();
        let mut on_edge: Vec<Vec<usize>> = vec![Vec::new(); n_gens];
        let mut edge_of = Vec::with_capacity(k);
        for (i, &l) in letters.iter().enumerate() {
            let g = l.unsigned_abs() as usize - 1;
            on_edge[g].push(i);
            edge_of.push(g);
        }
        // Appearance 2i exits crossing i, appearance 2i+1 re-enters it; a
        // positive letter exits through the side carrying end 1.
        let mut apps = Vec::with_capacity(2 * k);
        for (i, &l) in letters.iter().enumerate() {
            let e = tree.edge_of_generator(edge_of[i]);
            let exit_end = if l > 0 { 1 } else { 0 };
            for side_end in [exit_end, 1 - exit_end] {
                let d = Dart::new(e, side_end);
                apps.push(Appearance {
                    crossing: i,
                    walk_pos: tree
                        .side_position(d)
                        .expect("tree darts lie on the polygon"),
                    side_end,
                });
            }
        }
        let chords: Vec<[usize; 2]> =
            (0..k).map(|i| [2 * i + 1, 2 * ((i + 1) % k)]).collect();
        let mut edge_order: Vec<usize> =
            (0..n_gens).filter(|&g| !on_edge[g].is_empty()).collect();
        edge_order.sort_by_key(|&g| std::cmp::Reverse(on_edge[g].len()));
        let count_on_edge_of =
            (0..k).map(|i| on_edge[edge_of[i]].len()).collect();
        ArrangementSearch {
            k,
            on_edge,
            count_on_edge_of,
            apps,
            chords,
            rank: vec![None; k],
            ready: Vec::new(),
            edge_order,
        }
    }

    fn position(&self, app: usize) -> (usize, usize) {
        let a = &self.apps[app];
        let r = self.rank[a.crossing].expect("positioned appearance");
        let within = if a.side_end == 0 {
            r
        } else {
            self.count_on_edge_of[a.crossing] - 1 - r
        };
        (a.walk_pos, within)
    }

    fn chord_ready(&self, c: usize) -> bool {
        let [a, b] = self.chords[c];
        self.rank[self.apps[a].crossing].is_some()
            && self.rank[self.apps[b].crossing].is_some()
    }

    fn interleaves(&self, c1: usize, c2: usize) -> bool {
        let span = |c: usize| {
            let [a, b] = self.chords[c];
            let (p, q) = (self.position(a), self.position(b));
            if p < q {
                (p, q)
            } else {
                (q, p)
            }
        };
        let (a1, b1) = span(c1);
        let (a2, b2) = span(c2);
        (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1)
    }

    fn run(&mut self) -> bool {
        self.place(0, 0)
    }

    /// Assign ranks along `edge_order[ei]` one slot at a time; a chord is
    /// checked against the settled ones as soon as both its endpoints have
    /// ranks, which prunes most of the permutation tree.
    fn place(&mut self, ei: usize, slot: usize) -> bool {
        if ei == self.edge_order.len() {
            return true;
        }
        let e = self.edge_order[ei];
        if slot == self.on_edge[e].len() {
            return self.place(ei + 1, 0);
        }
        let candidates: Vec<usize> = self.on_edge[e]
            .iter()
            .copied()
            .filter(|&c| self.rank[c].is_none())
            .collect();
        for c in candidates {
            self.rank[c] = Some(slot);
            let fresh: Vec<usize> = [c, (c + self.k - 1) % self.k]
                .into_iter()
                .filter(|&ch| self.chord_ready(ch) && !self.ready.contains(&ch))
                .collect();
            let ok = fresh.iter().all(|&ch| {
                self.ready.iter().all(|&old| !self.interleaves(ch, old))
            }) && (fresh.len() < 2 || !self.interleaves(fresh[0], fresh[1]));
            if ok {
                let added = fresh.len();
                self.ready.extend(fresh);
                if self.place(ei, slot + 1) {
                    return true;
                }
                self.ready.truncate(self.ready.len() - added);
            }
            self.rank[c] = None;
        }
        false
    }
}
