//! The radial (Tischler) model of a charge graph and the reverse extraction.
//!
//! The radial construction puts one R-vertex in every face of the charge
//! graph and joins it to each corner of that face, one model edge per dart.
//! Every model face is then a quadrilateral around one charge edge, which is
//! what makes the reverse direction (one charge edge per model face) total.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::rotation_map::{Dart, RotationSystem};

/// A connected spherical loopless system without isolated vertices; the
/// classifying object of the whole crate.
#[derive(Clone, Debug)]
pub struct ChargeGraph(RotationSystem);

impl ChargeGraph {
    pub fn new(g: RotationSystem) -> Result<Self> {
        if !g.is_connected() {
            return Err(Error::NotConnected {
                components: g.n_components(),
            });
        }
        for v in 0..g.n_vertices() {
            if g.degree(v) == 0 {
                return Err(Error::IsolatedVertex(v));
            }
        }
        if !g.is_spherical() {
            let chi =
                g.n_vertices() as i64 - g.n_edges() as i64 + g.n_faces() as i64;
            return Err(Error::NotSpherical { chi });
        }
        Ok(ChargeGraph(g))
    }

    pub fn system(&self) -> &RotationSystem {
        &self.0
    }

    pub fn into_system(self) -> RotationSystem {
        self.0
    }
}

impl Deref for ChargeGraph {
    type Target = RotationSystem;

    fn deref(&self) -> &RotationSystem {
        &self.0
    }
}

/// Bipartite model with C-vertices (the charge vertices) and R-vertices (one
/// per charge face). `r_face` and `face_edge` carry the provenance for models
/// built by `radial_tischler`; hand-assembled models leave them empty.
#[derive(Clone, Debug)]
pub struct TischlerModel {
    system: RotationSystem,
    c_vertices: Vec<usize>,
    r_vertices: Vec<usize>,
    c_mask: Vec<bool>,
    r_face: Vec<usize>,
    face_edge: Vec<usize>,
}

impl TischlerModel {
    /// Wraps an arbitrary system with a declared (C, R) split. Requires the
    /// split to cover every vertex exactly once and every edge to join a
    /// C-end to an R-end.
    pub fn from_parts(
        system: RotationSystem,
        c_vertices: Vec<usize>,
        r_vertices: Vec<usize>,
    ) -> Result<Self> {
        let nv = system.n_vertices();
        let mut c_mask = vec![false; nv];
        let mut seen = vec![false; nv];
        for &v in &c_vertices {
            if v >= nv || seen[v] {
                return Err(Error::TischlerStructure(format!(
                    "bad C part entry {}",
                    v
                )));
            }
            seen[v] = true;
            c_mask[v] = true;
        }
        for &v in &r_vertices {
            if v >= nv || seen[v] {
                return Err(Error::TischlerStructure(format!(
                    "bad R part entry {}",
                    v
                )));
            }
            seen[v] = true;
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::TischlerStructure(
                "parts do not cover the vertex set".into(),
            ));
        }
        for (e, &[u, v]) in system.edges().iter().enumerate() {
            if c_mask[u] == c_mask[v] {
                return Err(Error::TischlerStructure(format!(
                    "edge {} does not join the parts",
                    e
                )));
            }
        }
        Ok(TischlerModel {
            system,
            c_vertices,
            r_vertices,
            c_mask,
            r_face: Vec::new(),
            face_edge: Vec::new(),
        })
    }

    pub fn system(&self) -> &RotationSystem {
        &self.system
    }

    pub fn c_vertices(&self) -> &[usize] {
        &self.c_vertices
    }

    pub fn r_vertices(&self) -> &[usize] {
        &self.r_vertices
    }

    pub fn is_c(&self, v: usize) -> bool {
        self.c_mask[v]
    }

    /// Charge face behind each R-vertex, parallel to `r_vertices`.
    pub fn r_face(&self) -> &[usize] {
        &self.r_face
    }

    /// Charge edge behind each model face.
    pub fn face_edge(&self) -> &[usize] {
        &self.face_edge
    }
}

/// Builds the radial model: C-vertices keep the charge vertex indices,
/// R-vertex `n + k` marks charge face `k`, and model edge `d` joins the
/// vertex of charge dart `d` to the R-vertex of its face. The rotation at a
/// C-vertex mirrors the charge rotation; the rotation at an R-vertex runs
/// through the corners of its face walk in reverse, starting at the walk's
/// first dart, which is what a disk with the walk on its boundary induces.
pub fn radial_tischler(g: &ChargeGraph) -> TischlerModel {
    let nv = g.n_vertices();
    let nf = g.n_faces();
    let mut vertices = g.vertex_names().to_vec();
    for k in 0..nf {
        vertices.push(format!("R{}", k));
    }
    let edges: Vec<[usize; 2]> = (0..g.n_darts())
        .map(|d| [g.vertex_of(Dart(d)), nv + g.face_of(Dart(d))])
        .collect();
    let mut rotations: Vec<Vec<[usize; 2]>> = Vec::with_capacity(nv + nf);
    for v in 0..nv {
        rotations.push(g.rotation(v).iter().map(|d| [d.0, 0]).collect());
    }
    for walk in g.face_walks() {
        let darts = walk.darts();
        let mut list = vec![[darts[0].0, 1]];
        for &d in darts[1..].iter().rev() {
            list.push([d.0, 1]);
        }
        rotations.push(list);
    }
    let system = RotationSystem::new(vertices, edges, rotations)
        .expect("radial construction is structurally valid");

    // Face provenance: the quadrilateral around charge edge e is the model
    // face whose walk leaves the R-vertex along model edge 2e, equivalently
    // along 2e + 1; its boundary is (2e at end 1, sigma(2e) at end 0,
    // 2e + 1 at end 1, sigma(2e + 1) at end 0).
    let mut face_edge = vec![usize::MAX; system.n_faces()];
    for e in 0..g.n_edges() {
        let f = system.face_of(Dart::new(2 * e, 1));
        debug_assert_eq!(f, system.face_of(Dart::new(2 * e + 1, 1)));
        debug_assert_eq!(face_edge[f], usize::MAX, "two charge edges claim one face");
        face_edge[f] = e;
    }
    debug_assert!(face_edge.iter().all(|&e| e != usize::MAX));

    TischlerModel {
        system,
        c_vertices: (0..nv).collect(),
        r_vertices: (nv..nv + nf).collect(),
        c_mask: (0..nv + nf).map(|v| v < nv).collect(),
        r_face: (0..nf).collect(),
        face_edge,
    }
}

#[derive(Clone, Debug)]
pub struct StructureCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct TischlerReport {
    pub checks: Vec<StructureCheck>,
}

impl TischlerReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks the structural facts that characterize radial models: connected,
/// parts respected, every face a quadrilateral, no bigon face, and the cell
/// counts forced by the degree d = #E/2 + 1.
pub fn verify_tischler_structure(t: &TischlerModel) -> TischlerReport {
    let g = t.system();
    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool, detail: String| {
        checks.push(StructureCheck {
            name,
            passed,
            detail,
        });
    };

    push(
        "connected",
        g.is_connected(),
        format!("{} components", g.n_components()),
    );
    push(
        "spherical",
        g.is_spherical(),
        format!("{:?}", g.euler_report()),
    );

    let bad_edge = g
        .edges()
        .iter()
        .position(|&[u, v]| t.is_c(u) == t.is_c(v));
    push(
        "edges join C to R",
        bad_edge.is_none(),
        match bad_edge {
            Some(e) => format!("edge {} stays inside one part", e),
            None => String::new(),
        },
    );

    let bad_face = g.face_walks().iter().position(|w| w.len() != 4);
    push(
        "all faces are quadrilaterals",
        bad_face.is_none(),
        match bad_face {
            Some(f) => format!(
                "face {} has walk length {} (edge cycle {:?})",
                f,
                g.face_walks()[f].len(),
                g.face_walks()[f].edge_cycle()
            ),
            None => String::new(),
        },
    );

    let bigon = g.face_walks().iter().position(|w| w.len() == 2);
    push(
        "no bigon face",
        bigon.is_none(),
        match bigon {
            Some(f) => format!("face {} is a bigon", f),
            None => String::new(),
        },
    );

    // With one C-end per edge, #E = 2d - 2 defines d; the remaining counts
    // must then match d + 1 vertices and d - 1 faces.
    let even = g.n_edges() % 2 == 0;
    push(
        "edge count is even",
        even,
        format!("{} edges", g.n_edges()),
    );
    if even {
        let d = g.n_edges() / 2 + 1;
        push(
            "vertex count is d + 1",
            g.n_vertices() == d + 1,
            format!("{} vertices, d = {}", g.n_vertices(), d),
        );
        push(
            "face count is d - 1",
            g.n_faces() == d - 1,
            format!("{} faces, d = {}", g.n_faces(), d),
        );
    }

    TischlerReport { checks }
}

/// Extracts the charge graph: one charge edge per model face, joining the
/// two C-corners of that face (walk order decides the end indices), with
/// C-vertex rotations read off the model rotations.
pub fn charge_from_tischler(t: &TischlerModel) -> Result<ChargeGraph> {
    let g = t.system();
    let n_charge_vertices = t.c_vertices.len();
    let mut charge_index = vec![usize::MAX; g.n_vertices()];
    let mut names = Vec::with_capacity(n_charge_vertices);
    for (i, &v) in t.c_vertices.iter().enumerate() {
        charge_index[v] = i;
        names.push(g.vertex_name(v).to_string());
    }

    // Per face: its darts based at C-vertices, in walk order.
    let mut edges = Vec::with_capacity(g.n_faces());
    let mut first_c_dart = Vec::with_capacity(g.n_faces());
    for (f, walk) in g.face_walks().iter().enumerate() {
        let c_darts: Vec<Dart> = walk
            .darts()
            .iter()
            .copied()
            .filter(|&d| t.is_c(g.vertex_of(d)))
            .collect();
        if c_darts.len() != 2 {
            return Err(Error::FaceNotChargeLike {
                face: f,
                len: walk.len(),
                c_darts: c_darts.len(),
            });
        }
        let u = g.vertex_of(c_darts[0]);
        let v = g.vertex_of(c_darts[1]);
        if u == v {
            return Err(Error::TischlerStructure(format!(
                "face {} meets only one critical vertex",
                f
            )));
        }
        edges.push([charge_index[u], charge_index[v]]);
        first_c_dart.push(c_darts[0]);
    }

    let mut rotations: Vec<Vec<[usize; 2]>> = vec![Vec::new(); n_charge_vertices];
    for &c in &t.c_vertices {
        for &s in g.rotation(c) {
            let f = g.face_of(s);
            let end = if s == first_c_dart[f] { 0 } else { 1 };
            rotations[charge_index[c]].push([f, end]);
        }
    }

    let system = RotationSystem::new(names, edges, rotations)?;
    ChargeGraph::new(system)
}
