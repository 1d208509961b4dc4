//! The blow-up branched-cover model: every edge of a charge graph is doubled
//! into a bigon patch, producing a degree N+1 cover of the sphere by itself
//! in which the graph complement maps cell by cell onto itself.

use crate::rotation_map::{Dart, FaceWalk, RotationSystem};
use crate::tischler::ChargeGraph;

/// Blown cell data over a charge graph. Edge `j` of the base splits into
/// `2j` (the primary copy, kept isotopic to the original arc) and `2j + 1`
/// (the secondary copy on the far side of the bigon patch `D_j`).
#[derive(Clone, Debug)]
pub struct BlowupCover {
    base: ChargeGraph,
    blown: RotationSystem,
    patches: Vec<usize>,
    face_map: Vec<Option<usize>>,
}

impl BlowupCover {
    pub fn base(&self) -> &ChargeGraph {
        &self.base
    }

    pub fn blown(&self) -> &RotationSystem {
        &self.blown
    }

    /// Blown face id of the bigon patch over base edge `j`.
    pub fn patches(&self) -> &[usize] {
        &self.patches
    }

    /// Base face behind each blown face; `None` on the patches.
    pub fn face_map(&self) -> &[Option<usize>] {
        &self.face_map
    }

    pub fn primary_copy(&self, j: usize) -> usize {
        2 * j
    }

    pub fn secondary_copy(&self, j: usize) -> usize {
        2 * j + 1
    }

    /// Topological degree of the cover.
    pub fn degree(&self) -> usize {
        self.base.n_edges() + 1
    }

    /// Local degree at a fixed vertex: one more than its base valence.
    pub fn local_degree(&self, v: usize) -> usize {
        self.base.degree(v) + 1
    }

    /// End of base edge `j` at which the primary copy precedes the
    /// secondary one counterclockwise.
    pub fn anchor_end(&self, j: usize) -> usize {
        anchor_end(self.base.system(), j)
    }
}

/// End index at which the lower-indexed endpoint of base edge `j` sits; the
/// primary copy precedes the secondary one counterclockwise at that end.
fn anchor_end(base: &RotationSystem, j: usize) -> usize {
    let [u, v] = base.edge_ends(j);
    usize::from(u > v)
}

/// Doubles every edge in place. Where dart `(j, s)` sat in a rotation, the
/// two copies take two consecutive slots, ordered so that the face caught
/// between them closes into a bigon: primary first at the anchor end,
/// secondary first at the other.
pub fn blow_up(g: &ChargeGraph) -> BlowupCover {
    let base = g.system();
    let mut rotations: Vec<Vec<[usize; 2]>> = Vec::with_capacity(base.n_vertices());
    for v in 0..base.n_vertices() {
        let mut list = Vec::with_capacity(2 * base.degree(v));
        for d in base.rotation(v) {
            let (j, s) = (d.edge(), d.end());
            let copies = if s == anchor_end(base, j) {
                [[2 * j, s], [2 * j + 1, s]]
            } else {
                [[2 * j + 1, s], [2 * j, s]]
            };
            list.extend(copies);
        }
        rotations.push(list);
    }
    let edges: Vec<[usize; 2]> = (0..base.n_edges())
        .flat_map(|j| {
            let ends = base.edge_ends(j);
            [ends, ends]
        })
        .collect();
    let blown = RotationSystem::new(base.vertex_names().to_vec(), edges, rotations)
        .expect("doubling preserves structural validity");
    debug_assert!(blown.is_spherical());

    let mut patches = Vec::with_capacity(base.n_edges());
    let mut face_map = vec![None; blown.n_faces()];
    let mut is_patch = vec![false; blown.n_faces()];
    for j in 0..base.n_edges() {
        let l = anchor_end(base, j);
        let f = blown.face_of(Dart::new(2 * j + 1, l));
        let walk = &blown.face_walks()[f];
        debug_assert_eq!(walk.len(), 2);
        debug_assert!(walk.darts().contains(&Dart::new(2 * j, 1 - l)));
        patches.push(f);
        is_patch[f] = true;
    }
    for (f, walk) in blown.face_walks().iter().enumerate() {
        if is_patch[f] {
            continue;
        }
        let target = project_walk(base, walk);
        debug_assert!(target.is_some(), "non-patch face must project onto a base face");
        face_map[f] = target;
    }
    debug_assert_eq!(
        face_map.iter().flatten().count(),
        base.n_faces(),
        "face correspondence must be onto"
    );

    BlowupCover {
        base: g.clone(),
        blown,
        patches,
        face_map,
    }
}

/// Base face whose walk the blown walk projects onto dart by dart (copy
/// `2j + s` of edge `j` projects to dart `(j, s)`), or None if it does not
/// project cleanly.
fn project_walk(base: &RotationSystem, walk: &FaceWalk) -> Option<usize> {
    let projected: Vec<Dart> = walk
        .darts()
        .iter()
        .map(|d| Dart::new(d.edge() >> 1, d.end()))
        .collect();
    let f = base.face_of(projected[0]);
    let target = base.face_walks()[f].darts();
    if target.len() != projected.len() {
        return None;
    }
    let offset = target.iter().position(|&d| d == projected[0])?;
    let n = target.len();
    for i in 0..n {
        if target[(offset + i) % n] != projected[i] {
            return None;
        }
    }
    Some(f)
}
