//! Enumeration of charge graphs by edge count, and the derived census.
//!
//! Growth search: every charge graph with one more edge arises from a
//! smaller one by adding an edge between existing vertices (at any pair
//! of rotation slots) or hanging a new leaf (at any slot), because a
//! graph with no leaf has a cycle and dropping a cycle edge keeps it
//! connected and spherical. Canonical codes collapse relabelings.

use std::collections::{BTreeSet, HashMap};

use crate::attractor::attractor_set;
use crate::rotation_map::{CanonicalCode, RotationSystem};
use crate::tischler::{radial_tischler, ChargeGraph};
use crate::{Error, Result};

/// Largest edge count the growth search accepts.
pub const MAX_ENUM_EDGES: usize = 7;

/// All isomorphism classes of charge graphs with exactly `n_edges` edges,
/// as deterministic canonical representatives sorted by code.
pub fn enumerate_charge_graphs(n_edges: usize) -> Result<Vec<ChargeGraph>> {
    if n_edges == 0 || n_edges > MAX_ENUM_EDGES {
        return Err(Error::EdgeCountRange(n_edges, MAX_ENUM_EDGES));
    }
    let seed = RotationSystem::new(
        vec!["v0".into(), "v1".into()],
        vec![[0, 1]],
        vec![vec![[0, 0]], vec![[0, 1]]],
    )
    .unwrap();
    let mut level: Vec<CanonicalCode> = vec![seed.canonical_form()];
    for _ in 1..n_edges {
        let mut next: BTreeSet<CanonicalCode> = BTreeSet::new();
        for code in &level {
            let g = RotationSystem::from_canonical(code);
            for h in extensions(&g) {
                if h.is_spherical() {
                    next.insert(h.canonical_form());
                }
            }
        }
        level = next.into_iter().collect();
    }
    Ok(level
        .iter()
        .map(|code| {
            ChargeGraph::new(RotationSystem::from_canonical(code))
                .expect("growth search preserves charge graph invariants")
        })
        .collect())
}

/// Every one-edge extension of `g`: a new edge between two distinct
/// existing vertices at each pair of insertion slots, or a new leaf at
/// each slot. Spherality is checked by the caller.
fn extensions(g: &RotationSystem) -> Vec<RotationSystem> {
    let nv = g.n_vertices();
    let ne = g.n_edges();
    let names: Vec<String> = (0..nv).map(|v| g.vertex_name(v).to_string()).collect();
    let base_rot: Vec<Vec<[usize; 2]>> = (0..nv)
        .map(|v| g.rotation(v).iter().map(|d| [d.edge(), d.end()]).collect())
        .collect();
    let mut out = Vec::new();
    let mut push = |names: Vec<String>, edges: Vec<[usize; 2]>, rot: Vec<Vec<[usize; 2]>>| {
        out.push(RotationSystem::new(names, edges, rot).expect("extension is well formed"));
    };
    for u in 0..nv {
        for su in 0..base_rot[u].len() {
            // New edge to a later vertex, at every slot pair.
            for v in u + 1..nv {
                for sv in 0..base_rot[v].len() {
                    let mut rot = base_rot.clone();
                    rot[u].insert(su + 1, [ne, 0]);
                    rot[v].insert(sv + 1, [ne, 1]);
                    let mut edges: Vec<[usize; 2]> = g.edges().to_vec();
                    edges.push([u, v]);
                    push(names.clone(), edges, rot);
                }
            }
            // New leaf hanging off u.
            let mut rot = base_rot.clone();
            rot[u].insert(su + 1, [ne, 0]);
            rot.push(vec![[ne, 1]]);
            let mut edges: Vec<[usize; 2]> = g.edges().to_vec();
            edges.push([u, nv]);
            let mut names = names.clone();
            names.push(format!("v{nv}"));
            push(names, edges, rot);
        }
    }
    out
}

/// One census line: the class, its size data, and derived invariants.
pub struct CensusRow {
    pub n_edges: usize,
    pub code_hex: String,
    pub fingerprint: u64,
    pub n_vertices: usize,
    /// Base valences, ascending; the cover's local degrees are these + 1.
    pub degrees: Vec<usize>,
    /// Vertex, edge, and face counts of the radial model.
    pub tischler: [usize; 3],
    /// Number of attractor classes over the spanning-tree generators.
    pub attractor_size: usize,
    /// Whether the class differs from its mirror image.
    pub chiral: bool,
}

/// Census of every class with 1 up to `max_edges` edges, grouped by edge
/// count in canonical code order.
pub fn census(max_edges: usize) -> Result<Vec<CensusRow>> {
    if max_edges == 0 || max_edges > MAX_ENUM_EDGES {
        return Err(Error::EdgeCountRange(max_edges, MAX_ENUM_EDGES));
    }
    let mut attractor_sizes: HashMap<usize, usize> = HashMap::new();
    let mut rows = Vec::new();
    for n_edges in 1..=max_edges {
        for g in &enumerate_charge_graphs(n_edges)? {
            let code = g.canonical_form();
            let mut degrees: Vec<usize> = (0..g.n_vertices()).map(|v| g.degree(v)).collect();
            degrees.sort_unstable();
            let model = radial_tischler(g);
            let t = model.system();
            let n_gens = g.n_vertices() - 1;
            let attractor_size = *attractor_sizes
                .entry(n_gens)
                .or_insert_with(|| attractor_set(n_gens).len());
            rows.push(CensusRow {
                n_edges,
                code_hex: code.hex(),
                fingerprint: code.fingerprint(),
                n_vertices: g.n_vertices(),
                degrees,
                tischler: [t.n_vertices(), t.n_edges(), t.n_faces()],
                attractor_size,
                chiral: code != g.mirrored().canonical_form(),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation_map::are_isomorphic;

    /// Independent route for small sizes: fix the edge pairing on `2n`
    /// darts and range over every rotation permutation, keeping the
    /// loopless connected spherical ones.
    fn brute_classes(n_edges: usize) -> BTreeSet<CanonicalCode> {
        let darts = 2 * n_edges;
        let mut found = BTreeSet::new();
        let mut perm: Vec<usize> = (0..darts).collect();
        loop {
            if let Some(code) = charge_code_of(&perm, n_edges) {
                found.insert(code);
            }
            if !next_permutation(&mut perm) {
                return found;
            }
        }
    }

    fn charge_code_of(sigma: &[usize], n_edges: usize) -> Option<CanonicalCode> {
        let darts = sigma.len();
        let mut cycle_of = vec![usize::MAX; darts];
        let mut rotations: Vec<Vec<[usize; 2]>> = Vec::new();
        for start in 0..darts {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let mut list = Vec::new();
            let mut d = start;
            while cycle_of[d] == usize::MAX {
                cycle_of[d] = rotations.len();
                list.push([d / 2, d % 2]);
                d = sigma[d];
            }
            debug_assert_eq!(d, start, "permutation orbits close up");
            rotations.push(list);
        }
        let mut edges = Vec::with_capacity(n_edges);
        for e in 0..n_edges {
            let (u, v) = (cycle_of[2 * e], cycle_of[2 * e + 1]);
            if u == v {
                return None; // loop edge
            }
            edges.push([u, v]);
        }
        let names = (0..rotations.len()).map(|v| format!("v{v}")).collect();
        let g = RotationSystem::new(names, edges, rotations).ok()?;
        (g.is_connected() && g.is_spherical()).then(|| g.canonical_form())
    }

    /// Lexicographic next permutation; false once wrapped around.
    fn next_permutation(p: &mut [usize]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn growth_matches_brute_enumeration() {
        for n in 1..=4 {
            let grown: BTreeSet<CanonicalCode> = enumerate_charge_graphs(n)
                .unwrap()
                .iter()
                .map(|g| g.canonical_form())
                .collect();
            assert_eq!(grown, brute_classes(n), "n_edges = {n}");
        }
    }

    #[test]
    fn small_class_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate_charge_graphs(n).unwrap().len())
            .collect();
        assert_eq!(counts[0], 1);
        assert_eq!(counts[1], 2);
        assert_eq!(counts[2], 5);
        // Frozen from the two agreeing enumeration routes.
        assert_eq!(counts[3], brute_classes(4).len());
        assert!(counts[4] > counts[3]);
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert!(matches!(
            enumerate_charge_graphs(0),
            Err(Error::EdgeCountRange(0, MAX_ENUM_EDGES))
        ));
        assert!(matches!(
            enumerate_charge_graphs(MAX_ENUM_EDGES + 1),
            Err(Error::EdgeCountRange(_, MAX_ENUM_EDGES))
        ));
    }

    #[test]
    fn representatives_are_canonical_and_distinct() {
        for n in 1..=4 {
            let graphs = enumerate_charge_graphs(n).unwrap();
            let codes: BTreeSet<CanonicalCode> =
                graphs.iter().map(|g| g.canonical_form()).collect();
            assert_eq!(codes.len(), graphs.len());
            for g in &graphs {
                assert_eq!(g.n_edges(), n);
                let rebuilt = RotationSystem::from_canonical(&g.canonical_form());
                assert!(are_isomorphic(g.system(), &rebuilt));
            }
        }
    }

    #[test]
    fn class_set_is_mirror_closed() {
        for n in 1..=4 {
            let codes: BTreeSet<CanonicalCode> = enumerate_charge_graphs(n)
                .unwrap()
                .iter()
                .map(|g| g.canonical_form())
                .collect();
            for code in &codes {
                let mirror = RotationSystem::from_canonical(code).mirrored().canonical_form();
                assert!(codes.contains(&mirror));
            }
        }
    }

    #[test]
    fn census_rows_are_consistent() {
        let max = 4;
        let rows = census(max).unwrap();
        let expected: usize = (1..=max)
            .map(|n| enumerate_charge_graphs(n).unwrap().len())
            .sum();
        assert_eq!(rows.len(), expected);
        for row in rows {
            let n = row.n_edges;
            assert!(1 <= n && n <= max);
            let d = n + 1;
            assert_eq!(row.degrees.iter().sum::<usize>(), 2 * n);
            assert_eq!(row.tischler, [d + 1, 2 * n, d - 1]);
            assert_eq!(row.attractor_size, attractor_set(row.n_vertices - 1).len());
        }
    }
}
