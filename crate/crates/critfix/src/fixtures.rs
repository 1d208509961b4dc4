//! Graph builders and proptest strategies shared by module tests.

use proptest::prelude::*;

use crate::rotation_map::{Dart, RotationSystem};

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{}", i)).collect()
}

/// The running reference graph: 4 vertices, 4 edges, faces of walk length 6
/// and 2. Vertices: 0 and 3 of degree 3, 1 and 2 of degree 1. Edges:
/// e1 = (0,1), e2 = (2,3), e3 = (0,3), e4 = (0,3).
pub fn fig1() -> RotationSystem {
    RotationSystem::new(
        vec!["-1".into(), "-c".into(), "c".into(), "1".into()],
        vec![[0, 1], [2, 3], [0, 3], [0, 3]],
        vec![
            vec![[0, 0], [2, 0], [3, 0]],
            vec![[0, 1]],
            vec![[1, 0]],
            vec![[2, 1], [1, 1], [3, 1]],
        ],
    )
    .unwrap()
}

pub fn single_edge() -> RotationSystem {
    RotationSystem::new(
        names(2),
        vec![[0, 1]],
        vec![vec![[0, 0]], vec![[0, 1]]],
    )
    .unwrap()
}

pub fn double_edge() -> RotationSystem {
    RotationSystem::new(
        names(2),
        vec![[0, 1], [0, 1]],
        vec![vec![[0, 0], [1, 0]], vec![[1, 1], [0, 1]]],
    )
    .unwrap()
}

pub fn path2() -> RotationSystem {
    RotationSystem::new(
        names(3),
        vec![[0, 1], [1, 2]],
        vec![vec![[0, 0]], vec![[0, 1], [1, 0]], vec![[1, 1]]],
    )
    .unwrap()
}

pub fn triangle() -> RotationSystem {
    RotationSystem::new(
        names(3),
        vec![[0, 1], [1, 2], [0, 2]],
        vec![
            vec![[0, 0], [2, 0]],
            vec![[0, 1], [1, 0]],
            vec![[1, 1], [2, 1]],
        ],
    )
    .unwrap()
}

/// Star with k edges: vertex 0 in the center, leaves 1..=k.
pub fn star(k: usize) -> RotationSystem {
    let edges: Vec<[usize; 2]> = (0..k).map(|i| [0, i + 1]).collect();
    let mut rotations: Vec<Vec<[usize; 2]>> = vec![(0..k).map(|e| [e, 0]).collect()];
    for e in 0..k {
        rotations.push(vec![[e, 1]]);
    }
    RotationSystem::new(names(k + 1), edges, rotations).unwrap()
}

pub fn two_disjoint_edges() -> RotationSystem {
    RotationSystem::new(
        names(4),
        vec![[0, 1], [2, 3]],
        vec![vec![[0, 0]], vec![[0, 1]], vec![[1, 0]], vec![[1, 1]]],
    )
    .unwrap()
}

/// K4 with one of the 16 rotation choices: bit v of `mask` reverses the
/// cyclic order at vertex v.
pub fn k4(mask: u32) -> RotationSystem {
    let edges = vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
    let base: Vec<Vec<[usize; 2]>> = vec![
        vec![[0, 0], [1, 0], [2, 0]],
        vec![[0, 1], [3, 0], [4, 0]],
        vec![[1, 1], [3, 1], [5, 0]],
        vec![[2, 1], [4, 1], [5, 1]],
    ];
    let rotations = base
        .into_iter()
        .enumerate()
        .map(|(v, list)| {
            if mask & (1 << v) != 0 {
                list.into_iter().rev().collect()
            } else {
                list
            }
        })
        .collect();
    RotationSystem::new(names(4), edges, rotations).unwrap()
}

/// The embedded curve on `fig1` crossing edges e1 and e2 once and e3 twice:
/// the boundary of a thickened arc joining the two leaf punctures through
/// both parallel edges. Under the pinned crossing orientation (entering a
/// tree edge at its end-1 side is positive) it reads x1 X3 X2 x3.
pub fn reference_curve_letters() -> Vec<i32> {
    vec![1, -3, -2, 3]
}

/// Rebuilds `g` under a vertex permutation, an edge permutation, per-edge
/// end swaps, and cyclic shifts of the rotation lists. All of these preserve
/// the isomorphism class.
pub fn relabel(
    g: &RotationSystem,
    vperm: &[usize],
    eperm: &[usize],
    flips: &[bool],
    shifts: &[usize],
) -> RotationSystem {
    let nv = g.n_vertices();
    let mut vertices = vec![String::new(); nv];
    for v in 0..nv {
        vertices[vperm[v]] = format!("w{}", v);
    }
    let mut edges = vec![[0usize; 2]; g.n_edges()];
    for e in 0..g.n_edges() {
        let [a, b] = g.edge_ends(e);
        edges[eperm[e]] = if flips[e] {
            [vperm[b], vperm[a]]
        } else {
            [vperm[a], vperm[b]]
        };
    }
    let map_dart = |d: Dart| -> [usize; 2] {
        let s = if flips[d.edge()] { 1 - d.end() } else { d.end() };
        [eperm[d.edge()], s]
    };
    let mut rotations = vec![Vec::new(); nv];
    for v in 0..nv {
        let list = g.rotation(v);
        let k = list.len();
        let out: Vec<[usize; 2]> = (0..k)
            .map(|i| map_dart(list[(i + shifts[v]) % k]))
            .collect();
        rotations[vperm[v]] = out;
    }
    RotationSystem::new(vertices, edges, rotations).unwrap()
}

fn build_system(nv: usize, raw: &[(usize, usize)], keys: &[u64]) -> RotationSystem {
    let edges: Vec<[usize; 2]> = raw
        .iter()
        .map(|&(a, off)| {
            let u = a % nv;
            [u, (u + 1 + off % (nv - 1)) % nv]
        })
        .collect();
    let mut order: Vec<usize> = (0..2 * edges.len()).collect();
    order.sort_by_key(|&d| keys[d]);
    let mut rotations: Vec<Vec<[usize; 2]>> = vec![Vec::new(); nv];
    for d in order {
        let dart = Dart(d);
        rotations[edges[dart.edge()][dart.end()]].push([dart.edge(), dart.end()]);
    }
    RotationSystem::new(names(nv), edges, rotations).unwrap()
}

/// Valid rotation systems with up to `max_edges` edges on 2 to 5 vertices;
/// connectivity and sphericity are not forced.
pub fn arbitrary_system(max_edges: usize) -> impl Strategy<Value = RotationSystem> {
    (2usize..=5, 1usize..=max_edges)
        .prop_flat_map(|(nv, ne)| {
            (
                Just(nv),
                prop::collection::vec((0usize..nv, 0usize..(nv - 1)), ne),
                prop::collection::vec(any::<u64>(), 2 * ne),
            )
        })
        .prop_map(|(nv, raw, keys)| build_system(nv, &raw, &keys))
}

/// A system together with a random relabeling of it.
pub fn system_with_relabeling() -> impl Strategy<Value = (RotationSystem, RotationSystem)> {
    arbitrary_system(5)
        .prop_flat_map(|g| {
            let nv = g.n_vertices();
            let ne = g.n_edges();
            (
                Just(g),
                Just((0..nv).collect::<Vec<_>>()).prop_shuffle(),
                Just((0..ne).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec(any::<bool>(), ne),
                prop::collection::vec(0usize..8, nv),
            )
        })
        .prop_map(|(g, vperm, eperm, flips, shifts)| {
            let relabeled = relabel(&g, &vperm, &eperm, &flips, &shifts);
            (g, relabeled)
        })
}
