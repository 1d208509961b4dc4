//! The finite set of curve classes that pullback funnels into.
//!
//! Lifting a word sends each letter to exactly one real crossing of the
//! same generator, spread over the pullback components, so per-generator
//! crossing counts never grow. Words in which every generator appears at
//! most once therefore form a closed set that every orbit eventually
//! enters; this module materializes that set, iterates words into it,
//! and tabulates the induced transition structure.

use std::collections::BTreeMap;

use crate::curves::{is_simple, CurveWord, Letter, SimpleVerdict, SpanningTree};
use crate::pullback::OverlayComplex;
use crate::{Error, Result};

/// Whether every generator appears at most once in the reduced word.
pub fn in_attractor(w: &CurveWord) -> bool {
    let n = w.max_generator();
    (0..n).all(|g| w.edge_count(g) <= 1)
}

/// All reduced classes over `n_gens` generators in which each generator
/// appears at most once, sorted. Built by ranging over generator
/// subsets, orders, and signs, then collapsing to normal forms.
pub fn attractor_set(n_gens: usize) -> Vec<CurveWord> {
    let mut found: Vec<CurveWord> = vec![CurveWord::trivial()];
    let mut subset: Vec<Letter> = Vec::new();
    fn grow(n_gens: usize, next: usize, subset: &mut Vec<Letter>, found: &mut Vec<CurveWord>) {
        for g in next..n_gens {
            subset.push((g + 1) as Letter);
            arrangements(subset, &mut Vec::new(), &mut vec![false; subset.len()], found);
            grow(n_gens, g + 1, subset, found);
            subset.pop();
        }
    }
    fn arrangements(
        pool: &[Letter],
        word: &mut Vec<Letter>,
        used: &mut [bool],
        found: &mut Vec<CurveWord>,
    ) {
        if word.len() == pool.len() {
            found.push(CurveWord::reduce(word));
            return;
        }
        for i in 0..pool.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            for l in [pool[i], -pool[i]] {
                word.push(l);
                arrangements(pool, word, used, found);
                word.pop();
            }
            used[i] = false;
        }
    }
    grow(n_gens, 0, &mut subset, &mut found);
    found.sort();
    found.dedup();
    found
}

/// History of repeated pullback, one sorted deduplicated generation per
/// step, beginning with the input word itself.
pub struct PullbackIteration {
    pub steps: Vec<Vec<CurveWord>>,
    /// First step at which every word lies in the attractor set.
    pub converged_at: Option<usize>,
}

/// Default iteration budget: linear in the starting complexity, with one
/// extra round per generator to absorb plateaus. Simple curves converge
/// well inside it; powers of peripheral loops never converge at all.
pub fn default_max_steps(w: &CurveWord, n_gens: usize) -> usize {
    w.complexity() + n_gens + 1
}

/// Repeatedly pulls back the whole current generation until every word
/// has entered the attractor set or `max_steps` generations have passed.
pub fn iterate_to_attractor(
    overlay: &OverlayComplex,
    w: &CurveWord,
    max_steps: usize,
) -> PullbackIteration {
    let mut steps = vec![vec![w.clone()]];
    loop {
        let current = steps.last().unwrap();
        if current.iter().all(in_attractor) {
            return PullbackIteration {
                converged_at: Some(steps.len() - 1),
                steps,
            };
        }
        if steps.len() > max_steps {
            return PullbackIteration {
                steps,
                converged_at: None,
            };
        }
        let mut next: Vec<CurveWord> = current
            .iter()
            .flat_map(|v| overlay.pullback(v))
            .collect();
        next.sort();
        next.dedup();
        steps.push(next);
    }
}

/// The pullback action restricted to the attractor set: node `i` sends
/// `multiplicity` components onto node `j` per `(j, multiplicity)` entry.
pub struct TransitionGraph {
    nodes: Vec<CurveWord>,
    arcs: Vec<Vec<(usize, usize)>>,
    verdicts: Vec<SimpleVerdict>,
}

impl TransitionGraph {
    pub fn nodes(&self) -> &[CurveWord] {
        &self.nodes
    }

    /// Outgoing arcs of node `i` as `(target, multiplicity)`, sorted.
    pub fn arcs_from(&self, i: usize) -> &[(usize, usize)] {
        &self.arcs[i]
    }

    pub fn verdict(&self, i: usize) -> SimpleVerdict {
        self.verdicts[i]
    }

    pub fn node_index(&self, w: &CurveWord) -> Option<usize> {
        self.nodes.binary_search(w).ok()
    }
}

/// Tabulates pullback on the whole attractor set, verifying closure.
pub fn transition_graph(
    overlay: &OverlayComplex,
    tree: &SpanningTree,
    simple_cap: usize,
) -> Result<TransitionGraph> {
    let nodes = attractor_set(overlay.n_generators());
    let index: BTreeMap<&CurveWord, usize> =
        nodes.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut arcs = Vec::with_capacity(nodes.len());
    for w in &nodes {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for pulled in overlay.pullback(w) {
            let Some(&j) = index.get(&pulled) else {
                return Err(Error::AttractorClosure {
                    word: pulled.to_string(),
                });
            };
            *counts.entry(j).or_insert(0) += 1;
        }
        arcs.push(counts.into_iter().collect());
    }
    let verdicts = nodes.iter().map(|w| is_simple(w, tree, simple_cap)).collect();
    Ok(TransitionGraph {
        nodes,
        arcs,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::blow_up;
    use crate::curves::DEFAULT_SIMPLE_CAP;
    use crate::fixtures;
    use crate::tischler::ChargeGraph;
    use proptest::prelude::*;

    fn overlay_and_tree(
        base: crate::rotation_map::RotationSystem,
        tree_edges: Option<Vec<usize>>,
    ) -> (OverlayComplex, SpanningTree) {
        let g = ChargeGraph::new(base).unwrap();
        let tree = match tree_edges {
            Some(e) => SpanningTree::new(&g, e).unwrap(),
            None => SpanningTree::greedy(&g),
        };
        let cover = blow_up(&g);
        (OverlayComplex::build(&cover, &tree).unwrap(), tree)
    }

    /// Independent route: all short words over the alphabet, filtered by
    /// the defining count property after reduction.
    fn brute_attractor_set(n_gens: usize) -> Vec<CurveWord> {
        let letters: Vec<Letter> = (1..=n_gens as Letter).flat_map(|g| [g, -g]).collect();
        let mut found = vec![CurveWord::trivial()];
        let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
        while let Some(w) = stack.pop() {
            if w.len() == n_gens {
                continue;
            }
            for &l in &letters {
                let mut next = w.clone();
                next.push(l);
                let reduced = CurveWord::reduce(&next);
                if in_attractor(&reduced) {
                    found.push(reduced);
                }
                stack.push(next);
            }
        }
        found.sort();
        found.dedup();
        found
    }

    #[test]
    fn attractor_set_matches_brute_enumeration() {
        for n in 0..=3 {
            assert_eq!(attractor_set(n), brute_attractor_set(n), "n_gens = {n}");
        }
    }

    #[test]
    fn small_attractor_sets_are_known() {
        assert_eq!(attractor_set(0), vec![CurveWord::trivial()]);
        assert_eq!(
            attractor_set(1),
            vec![CurveWord::trivial(), CurveWord::reduce(&[1])]
        );
        let two = attractor_set(2);
        assert_eq!(
            two,
            vec![
                CurveWord::trivial(),
                CurveWord::reduce(&[1]),
                CurveWord::reduce(&[2]),
                CurveWord::reduce(&[1, 2]),
                CurveWord::reduce(&[1, -2]),
            ]
        );
    }

    #[test]
    fn reference_curve_converges() {
        let (overlay, _) = overlay_and_tree(fixtures::fig1(), Some(vec![0, 1, 2]));
        let w = CurveWord::reduce(&fixtures::reference_curve_letters());
        let run = iterate_to_attractor(&overlay, &w, default_max_steps(&w, 3));
        assert_eq!(run.converged_at, Some(1));
        assert_eq!(
            run.steps[1],
            vec![
                CurveWord::trivial(),
                CurveWord::reduce(&[1]),
                CurveWord::reduce(&[2]),
            ]
        );
    }

    #[test]
    fn transition_graph_is_closed_on_small_maps() {
        for (base, tree_edges) in [
            (fixtures::single_edge(), None),
            (fixtures::path2(), None),
            (fixtures::triangle(), None),
            (fixtures::fig1(), Some(vec![0, 1, 2])),
        ] {
            let (overlay, tree) = overlay_and_tree(base, tree_edges);
            let t = transition_graph(&overlay, &tree, DEFAULT_SIMPLE_CAP).unwrap();
            assert_eq!(t.nodes().len(), attractor_set(overlay.n_generators()).len());
            // Every node's pullback components all land inside the set,
            // and each node's arc multiplicities sum to its component count.
            for i in 0..t.nodes().len() {
                let total: usize = t.arcs_from(i).iter().map(|&(_, m)| m).sum();
                assert_eq!(total, overlay.pullback(&t.nodes()[i]).len());
                assert!(t.arcs_from(i).iter().all(|&(j, _)| j < t.nodes().len()));
            }
            // Attractor words are short, so every verdict is decided.
            assert!((0..t.nodes().len())
                .all(|i| t.verdict(i) != SimpleVerdict::Unknown));
        }
    }

    #[test]
    fn trivial_word_is_a_fixed_point() {
        let (overlay, _) = overlay_and_tree(fixtures::path2(), None);
        let run = iterate_to_attractor(&overlay, &CurveWord::trivial(), 3);
        assert_eq!(run.converged_at, Some(0));
        assert_eq!(run.steps.len(), 1);
    }

    fn letter_strategy(n_gens: i32) -> impl Strategy<Value = Letter> {
        (1..=n_gens, any::<bool>()).prop_map(|(g, neg)| if neg { -g } else { g })
    }

    proptest! {
        #[test]
        fn iteration_never_raises_complexity(
            raw in prop::collection::vec(letter_strategy(3), 0..10)
        ) {
            let (overlay, tree) = overlay_and_tree(fixtures::fig1(), Some(vec![0, 1, 2]));
            let w = CurveWord::reduce(&raw);
            let run = iterate_to_attractor(&overlay, &w, default_max_steps(&w, 3));
            let mut bound = w.complexity();
            for step in &run.steps[1..] {
                for word in step {
                    prop_assert!(word.complexity() <= bound);
                }
                bound = step.iter().map(|v| v.complexity()).max().unwrap_or(0);
            }
            // Convergence is guaranteed for embedded curves; powers of
            // peripheral loops, for instance, may cycle forever.
            if is_simple(&w, &tree, DEFAULT_SIMPLE_CAP) == SimpleVerdict::Simple {
                prop_assert!(run.converged_at.is_some());
            }
        }

        #[test]
        fn per_generator_counts_never_grow(
            raw in prop::collection::vec(letter_strategy(3), 0..10)
        ) {
            let (overlay, _) = overlay_and_tree(fixtures::fig1(), Some(vec![0, 1, 2]));
            let w = CurveWord::reduce(&raw);
            for pulled in overlay.pullback(&w) {
                for g in 0..3 {
                    prop_assert!(pulled.edge_count(g) <= w.edge_count(g));
                }
            }
        }
    }
}
