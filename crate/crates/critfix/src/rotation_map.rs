//! Rotation systems: planar embedded graphs as darts plus vertex rotations.
//!
//! A dart is an edge-end; dart `2e` is end 0 of edge `e` and dart `2e+1` is
//! end 1. The rotation `sigma` sends a dart to the next dart counterclockwise
//! around its vertex, the involution `alpha` swaps the two ends of an edge,
//! and faces are the orbits of `phi = sigma . alpha`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// An edge end, encoded as `2 * edge + end`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Dart(pub usize);

impl Dart {
    pub fn new(edge: usize, end: usize) -> Self {
        debug_assert!(end < 2);
        Dart(2 * edge + end)
    }

    pub fn edge(self) -> usize {
        self.0 >> 1
    }

    pub fn end(self) -> usize {
        self.0 & 1
    }

    /// The other end of the same edge (the involution alpha).
    pub fn opposite(self) -> Self {
        Dart(self.0 ^ 1)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(e{},{})", self.edge() + 1, self.end())
    }
}

/// One orbit of the face permutation `phi = sigma . alpha`, starting at the
/// smallest dart of the orbit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FaceWalk {
    darts: Vec<Dart>,
}

impl FaceWalk {
    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Edge indices traversed by the walk, in order.
    pub fn edge_cycle(&self) -> Vec<usize> {
        self.darts.iter().map(|d| d.edge()).collect()
    }
}

/// Component count, cell totals, and the sphericity verdict. Faces are
/// counted as if all components were embedded in one sphere, so the outer
/// faces merge: `faces` is the sum of per-component orbit counts minus
/// `components - 1`, and an isolated vertex contributes one face. With that
/// convention `vertices - edges + faces = components + 1` holds exactly when
/// every component is spherical.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EulerReport {
    pub components: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub genus_ok: bool,
}

/// A loopless multigraph embedded in an oriented surface, given by
/// counterclockwise rotations of darts at every vertex. Immutable after
/// construction; faces and components are computed once and cached.
#[derive(Clone, Debug)]
pub struct RotationSystem {
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
    rotations: Vec<Vec<Dart>>,
    sigma: Vec<Dart>,
    dart_vertex: Vec<usize>,
    faces: Vec<FaceWalk>,
    face_of: Vec<usize>,
    vertex_component: Vec<usize>,
    n_components: usize,
}

impl RotationSystem {
    /// Validates the dart structure: every dart listed exactly once, at the
    /// vertex matching its edge end; no loops. Does not require connectivity
    /// or sphericity; higher layers impose those.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<[usize; 2]>,
        rotations: Vec<Vec<[usize; 2]>>,
    ) -> Result<Self> {
        let nv = vertices.len();
        for (i, &[u, v]) in edges.iter().enumerate() {
            if u >= nv {
                return Err(Error::UnknownVertex { edge: i, vertex: u });
            }
            if v >= nv {
                return Err(Error::UnknownVertex { edge: i, vertex: v });
            }
            if u == v {
                return Err(Error::LoopEdge(i));
            }
        }
        if rotations.len() != nv {
            return Err(Error::Parse(format!(
                "expected {} rotation lists, found {}",
                nv,
                rotations.len()
            )));
        }

        let n_darts = 2 * edges.len();
        let mut dart_vertex = vec![usize::MAX; n_darts];
        let mut rot: Vec<Vec<Dart>> = Vec::with_capacity(nv);
        for (v, list) in rotations.iter().enumerate() {
            let mut out = Vec::with_capacity(list.len());
            for &[e, s] in list {
                if e >= edges.len() {
                    return Err(Error::UnknownEdge(e));
                }
                if s > 1 {
                    return Err(Error::Parse(format!(
                        "dart end must be 0 or 1, found {} on edge {}",
                        s, e
                    )));
                }
                let d = Dart::new(e, s);
                if dart_vertex[d.0] != usize::MAX {
                    return Err(Error::DuplicateDart { edge: e, end: s });
                }
                if edges[e][s] != v {
                    return Err(Error::MisplacedDart {
                        edge: e,
                        end: s,
                        listed: v,
                        expected: edges[e][s],
                    });
                }
                dart_vertex[d.0] = v;
                out.push(d);
            }
            rot.push(out);
        }
        for d in 0..n_darts {
            if dart_vertex[d] == usize::MAX {
                let dart = Dart(d);
                return Err(Error::MissingDart {
                    edge: dart.edge(),
                    end: dart.end(),
                    vertex: edges[dart.edge()][dart.end()],
                });
            }
        }

        let mut sigma = vec![Dart(0); n_darts];
        for list in &rot {
            for (i, &d) in list.iter().enumerate() {
                sigma[d.0] = list[(i + 1) % list.len()];
            }
        }

        // Faces: orbits of phi = sigma . alpha, each walked from its
        // smallest dart (scanning in dart order guarantees that).
        let mut face_of = vec![usize::MAX; n_darts];
        let mut faces = Vec::new();
        for start in 0..n_darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let mut d = Dart(start);
            loop {
                face_of[d.0] = id;
                walk.push(d);
                d = sigma[d.opposite().0];
                if d.0 == start {
                    break;
                }
            }
            faces.push(FaceWalk { darts: walk });
        }

        // Graph components over vertices, numbered by lowest vertex index.
        let mut vertex_component = vec![usize::MAX; nv];
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for &[u, v] in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut n_components = 0;
        for start in 0..nv {
            if vertex_component[start] != usize::MAX {
                continue;
            }
            let id = n_components;
            n_components += 1;
            let mut queue = VecDeque::from([start]);
            vertex_component[start] = id;
            while let Some(u) = queue.pop_front() {
                for &w in &adjacency[u] {
                    if vertex_component[w] == usize::MAX {
                        vertex_component[w] = id;
                        queue.push_back(w);
                    }
                }
            }
        }

        Ok(RotationSystem {
            vertices,
            edges,
            rotations: rot,
            sigma,
            dart_vertex,
            faces,
            face_of,
            vertex_component,
            n_components,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_darts(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge_ends(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    /// Counterclockwise rotation list at a vertex.
    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotations[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    /// Next dart counterclockwise around the vertex of `d`.
    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d.0]
    }

    pub fn vertex_of(&self, d: Dart) -> usize {
        self.dart_vertex[d.0]
    }

    pub fn face_walks(&self) -> &[FaceWalk] {
        &self.faces
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    /// Index into `face_walks` of the orbit containing `d`.
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d.0]
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    pub fn vertex_component(&self, v: usize) -> usize {
        self.vertex_component[v]
    }

    pub fn euler_report(&self) -> EulerReport {
        let l = self.n_components;
        let mut comp_faces = vec![0usize; l];
        let mut comp_vertices = vec![0usize; l];
        let mut comp_edges = vec![0usize; l];
        for v in 0..self.n_vertices() {
            comp_vertices[self.vertex_component[v]] += 1;
        }
        for &[u, _] in &self.edges {
            comp_edges[self.vertex_component[u]] += 1;
        }
        for walk in &self.faces {
            comp_faces[self.vertex_component[self.vertex_of(walk.darts[0])]] += 1;
        }
        let mut genus_ok = true;
        let mut total_faces = 0usize;
        for c in 0..l {
            // An isolated vertex spans one face of its own sphere.
            if comp_edges[c] == 0 {
                comp_faces[c] = 1;
            }
            total_faces += comp_faces[c];
            let chi =
                comp_vertices[c] as i64 - comp_edges[c] as i64 + comp_faces[c] as i64;
            if chi != 2 {
                genus_ok = false;
            }
        }
        EulerReport {
            components: l,
            vertices: self.n_vertices(),
            edges: self.n_edges(),
            faces: total_faces.saturating_sub(l.saturating_sub(1)),
            genus_ok,
        }
    }

    /// True when every component embeds in the sphere.
    pub fn is_spherical(&self) -> bool {
        self.euler_report().genus_ok
    }

    pub fn is_connected(&self) -> bool {
        self.n_components <= 1
    }

    /// Two-colors the graph if possible. The lowest-indexed vertex of each
    /// component lands in the first part; both parts come out sorted.
    pub fn is_bipartite(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let nv = self.n_vertices();
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for &[u, v] in &self.edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut color = vec![u8::MAX; nv];
        for start in 0..nv {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adjacency[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        let part0 = (0..nv).filter(|&v| color[v] == 0).collect();
        let part1 = (0..nv).filter(|&v| color[v] == 1).collect();
        Some((part0, part1))
    }

    /// All rotation lists reversed: the mirror image of the embedding.
    pub fn mirrored(&self) -> RotationSystem {
        let rotations = self
            .rotations
            .iter()
            .map(|list| list.iter().rev().map(|d| [d.edge(), d.end()]).collect())
            .collect();
        RotationSystem::new(self.vertices.clone(), self.edges.clone(), rotations)
            .expect("mirror of a valid system is valid")
    }

    /// Breadth-first dart trace from `start`: darts are labeled in first
    /// visit order, exploring `sigma` then `alpha` at each dart, and the
    /// code records the labels of `sigma(d)` and `alpha(d)` per label.
    fn trace_from(&self, start: Dart, comp_size: usize) -> Vec<u32> {
        let mut label = vec![u32::MAX; self.n_darts()];
        let mut order = Vec::with_capacity(comp_size);
        label[start.0] = 0;
        order.push(start);
        let mut head = 0;
        while head < order.len() {
            let d = order[head];
            head += 1;
            for n in [self.sigma(d), d.opposite()] {
                if label[n.0] == u32::MAX {
                    label[n.0] = order.len() as u32;
                    order.push(n);
                }
            }
        }
        debug_assert_eq!(order.len(), comp_size);
        let mut code = Vec::with_capacity(2 * comp_size);
        for &d in &order {
            code.push(label[self.sigma(d).0]);
            code.push(label[d.opposite().0]);
        }
        code
    }

    fn component_darts(&self) -> Vec<Vec<Dart>> {
        let mut groups: Vec<Vec<Dart>> = vec![Vec::new(); self.n_components];
        for d in 0..self.n_darts() {
            let dart = Dart(d);
            groups[self.vertex_component[self.vertex_of(dart)]].push(dart);
        }
        groups
    }

    /// Canonical code: equal for two systems exactly when a dart bijection
    /// respecting `sigma` and `alpha` exists (orientation-preserving
    /// isomorphism; vertex labels are discarded). Per component the code is
    /// the minimum trace over all start darts; components are sorted and
    /// isolated vertices enter only as a count.
    pub fn canonical_form(&self) -> CanonicalCode {
        let mut isolated = 0u32;
        let mut comp_codes = Vec::new();
        for group in self.component_darts() {
            if group.is_empty() {
                isolated += 1;
                continue;
            }
            let best = group
                .iter()
                .map(|&s| self.trace_from(s, group.len()))
                .min()
                .expect("non-empty component");
            comp_codes.push(best);
        }
        comp_codes.sort();
        let mut words = vec![isolated, comp_codes.len() as u32];
        for code in comp_codes {
            words.push(code.len() as u32 / 2);
            words.extend(code);
        }
        CanonicalCode(words)
    }

    /// Deterministic representative of the isomorphism class: the system
    /// rebuilt from its canonical code, with vertices renamed `v0, v1, ...`.
    pub fn canonicalized(&self) -> RotationSystem {
        RotationSystem::from_canonical(&self.canonical_form())
    }

    /// Rebuilds a rotation system from a canonical code. Edges are numbered
    /// by their smaller dart label, vertices by their smallest dart label in
    /// sigma-orbit order, so the result is independent of the original
    /// labeling.
    pub fn from_canonical(code: &CanonicalCode) -> RotationSystem {
        let words = &code.0;
        let isolated = words[0] as usize;
        let n_comp = words[1] as usize;
        let mut sigma: Vec<usize> = Vec::new();
        let mut alpha: Vec<usize> = Vec::new();
        let mut pos = 2;
        for _ in 0..n_comp {
            let k = words[pos] as usize;
            pos += 1;
            let offset = sigma.len();
            for i in 0..k {
                sigma.push(offset + words[pos + 2 * i] as usize);
                alpha.push(offset + words[pos + 2 * i + 1] as usize);
            }
            pos += 2 * k;
        }
        let n_darts = sigma.len();

        // alpha-orbits become edges, ordered by smaller dart; the smaller
        // dart is end 0.
        let mut edge_end_of = vec![[usize::MAX; 2]; n_darts];
        let mut edge_darts: Vec<[usize; 2]> = Vec::new();
        for d in 0..n_darts {
            if edge_end_of[d][0] != usize::MAX {
                continue;
            }
            let e = edge_darts.len();
            let o = alpha[d];
            edge_end_of[d] = [e, 0];
            edge_end_of[o] = [e, 1];
            edge_darts.push([d, o]);
        }

        // sigma-orbits become vertices, ordered by smallest dart.
        let mut vertex_of = vec![usize::MAX; n_darts];
        let mut rotations: Vec<Vec<[usize; 2]>> = Vec::new();
        for d in 0..n_darts {
            if vertex_of[d] != usize::MAX {
                continue;
            }
            let v = rotations.len();
            let mut list = Vec::new();
            let mut cur = d;
            loop {
                vertex_of[cur] = v;
                list.push(edge_end_of[cur]);
                cur = sigma[cur];
                if cur == d {
                    break;
                }
            }
            rotations.push(list);
        }

        let edges: Vec<[usize; 2]> = edge_darts
            .iter()
            .map(|&[d0, d1]| [vertex_of[d0], vertex_of[d1]])
            .collect();
        let mut vertices: Vec<String> =
            (0..rotations.len()).map(|v| format!("v{}", v)).collect();
        for i in 0..isolated {
            vertices.push(format!("v{}", rotations.len() + i));
            rotations.push(Vec::new());
        }
        RotationSystem::new(vertices, edges, rotations)
            .expect("canonical code decodes to a valid system")
    }
}

/// Canonical code as a word sequence; `bytes` flattens it big-endian for
/// external fingerprinting.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalCode(Vec<u32>);

impl CanonicalCode {
    pub fn words(&self) -> &[u32] {
        &self.0
    }

    pub fn bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|w| w.to_be_bytes()).collect()
    }

    pub fn hex(&self) -> String {
        self.bytes().iter().map(|b| format!("{:02x}", b)).collect()
    }

    /// FNV-1a over the byte form; a short stable fingerprint for tables.
    pub fn fingerprint(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        for b in self.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h
    }
}

/// Canonical-code equality, the working isomorphism test.
pub fn are_isomorphic(a: &RotationSystem, b: &RotationSystem) -> bool {
    a.canonical_form() == b.canonical_form()
}

/// Isomorphism allowing a reversal of orientation as well.
pub fn are_isomorphic_reflected(a: &RotationSystem, b: &RotationSystem) -> bool {
    are_isomorphic(a, b) || are_isomorphic(a, &b.mirrored())
}

/// Exhaustive isomorphism search, independent of canonical codes: a dart
/// bijection respecting sigma and alpha is determined by the image of one
/// dart per component, so all candidate images are tried. Quadratic in the
/// dart count per component pair; meant as an oracle for small graphs.
pub fn isomorphic_by_search(a: &RotationSystem, b: &RotationSystem) -> bool {
    if a.n_vertices() != b.n_vertices()
        || a.n_edges() != b.n_edges()
        || a.n_components() != b.n_components()
    {
        return false;
    }
    let a_groups: Vec<Vec<Dart>> =
        a.component_darts().into_iter().filter(|g| !g.is_empty()).collect();
    let b_groups: Vec<Vec<Dart>> =
        b.component_darts().into_iter().filter(|g| !g.is_empty()).collect();
    if a_groups.len() != b_groups.len() {
        return false;
    }
    // Greedy matching is sound here: isomorphism is an equivalence, so any
    // two b-components matching the same a-component are interchangeable.
    let mut used = vec![false; b_groups.len()];
    for ag in &a_groups {
        let mut found = false;
        for (j, bg) in b_groups.iter().enumerate() {
            if used[j] || bg.len() != ag.len() {
                continue;
            }
            if component_match(a, ag, b, bg) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return false;
        }
    }
    true
}

fn component_match(a: &RotationSystem, ag: &[Dart], b: &RotationSystem, bg: &[Dart]) -> bool {
    let d0 = ag[0];
    'candidates: for &t0 in bg {
        let mut image = vec![usize::MAX; a.n_darts()];
        let mut taken = vec![false; b.n_darts()];
        image[d0.0] = t0.0;
        taken[t0.0] = true;
        let mut queue = VecDeque::from([d0]);
        while let Some(d) = queue.pop_front() {
            let t = Dart(image[d.0]);
            for (dn, tn) in [(a.sigma(d), b.sigma(t)), (d.opposite(), t.opposite())] {
                if image[dn.0] == usize::MAX {
                    if taken[tn.0] {
                        continue 'candidates;
                    }
                    image[dn.0] = tn.0;
                    taken[tn.0] = true;
                    queue.push_back(dn);
                } else if image[dn.0] != tn.0 {
                    continue 'candidates;
                }
            }
        }
        return true;
    }
    false
}
