//! Face lattices of 3-polytopes, handled through their plane graphs.
//!
//! A [`PlaneGraph`] is a 2-connected graph with a fixed embedding, given by
//! the counterclockwise order of neighbors at every vertex and a designated
//! outer face. Its cells are the empty set, vertices, edges, faces and the
//! whole graph; for 3-connected graphs these form the face lattice of the
//! corresponding 3-polytope.
//!
//! Cell ids: `EMPTY`, `v3`, `e3-5` (smaller label first), faces as `f` plus
//! their boundary walk starting at the smallest label (`f1-2-6-5`), and `H`
//! for the top.
//!
//! ```
//! use facewalk::planar3::{cell_ham_cycle, cells, PlaneGraph};
//! use facewalk::posetcore::check_hamiltonian;
//!
//! let square = PlaneGraph::parse("1: 2 4\n2: 3 1\n3: 4 2\n4: 1 3\nouter: 1 2 3 4\n").unwrap();
//! let cycle = cell_ham_cycle(&square).unwrap();
//! assert_eq!(cycle.len(), 1 + 4 + 4 + 2 + 1);
//! assert!(check_hamiltonian(&cells(&square).unwrap(), &cycle).is_ok());
//! ```

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::posetcore::{CoverGraph, Listing, RankedElement, EMPTY};
use crate::strip::{Coord, RhombicStrip, StripEdge, StripVertex};
use crate::Error;

/// Largest vertex count accepted by [`decide_rhombic_strip`].
pub const DECIDE_BUDGET: usize = 18;
/// Largest vertex count accepted by [`polyhedral_graphs`].
pub const CORPUS_BUDGET: usize = 9;
/// Id of the top cell.
pub const TOP: &str = "H";

/// A plane graph on vertices `1..=m`. Internally vertices are `0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    /// Counterclockwise neighbor order at every vertex.
    rot: Vec<Vec<usize>>,
    /// Outer boundary, counterclockwise (the interior on the left).
    outer: Vec<usize>,
    /// Face boundaries traced with the face on the left.
    faces: Vec<Vec<usize>>,
    outer_face: usize,
    dart_face: HashMap<(usize, usize), usize>,
}

impl PlaneGraph {
    /// Builds a plane graph from 1-based rotations and the counterclockwise
    /// outer boundary walk.
    pub fn new(rotation: Vec<Vec<usize>>, outer: Vec<usize>) -> Result<Self, Error> {
        let m = rotation.len();
        let dec = |v: usize| -> Result<usize, Error> {
            if v == 0 || v > m {
                Err(Error::input(format!("vertex {v} out of range 1..={m}")))
            } else {
                Ok(v - 1)
            }
        };
        let rot = rotation
            .iter()
            .map(|r| r.iter().map(|&w| dec(w)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let outer = outer.iter().map(|&v| dec(v)).collect::<Result<Vec<_>, _>>()?;
        Self::from_rotation(rot, outer)
    }

    fn from_rotation(rot: Vec<Vec<usize>>, outer: Vec<usize>) -> Result<Self, Error> {
        let m = rot.len();
        if m < 3 {
            return Err(Error::input("a plane graph needs at least 3 vertices"));
        }
        let mut edges = HashSet::new();
        for (v, r) in rot.iter().enumerate() {
            let distinct: HashSet<usize> = r.iter().copied().collect();
            if distinct.len() != r.len() || distinct.contains(&v) || r.iter().any(|&w| w >= m) {
                return Err(Error::input(format!("rotation of vertex {} has loops, repeats or bad labels", v + 1)));
            }
            for &w in r {
                edges.insert((v.min(w), v.max(w)));
            }
        }
        for (v, r) in rot.iter().enumerate() {
            for &w in r {
                if !rot[w].contains(&v) {
                    return Err(Error::input(format!("edge {} {} listed at one end only", v + 1, w + 1)));
                }
            }
        }
        let pos: Vec<HashMap<usize, usize>> =
            rot.iter().map(|r| r.iter().enumerate().map(|(i, &w)| (w, i)).collect()).collect();
        let mut dart_face = HashMap::new();
        let mut faces = Vec::new();
        for u in 0..m {
            for &v in &rot[u] {
                if dart_face.contains_key(&(u, v)) {
                    continue;
                }
                let id = faces.len();
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while !dart_face.contains_key(&(a, b)) {
                    dart_face.insert((a, b), id);
                    face.push(a);
                    let r = &rot[b];
                    let w = r[(pos[b][&a] + r.len() - 1) % r.len()];
                    (a, b) = (b, w);
                }
                faces.push(face);
            }
        }
        let euler = m as i64 - edges.len() as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(Error::input(format!(
                "embedding is disconnected or not planar (Euler characteristic {euler})"
            )));
        }
        for face in &faces {
            let distinct: HashSet<usize> = face.iter().copied().collect();
            if face.len() < 3 || distinct.len() != face.len() {
                return Err(Error::input("graph is not 2-connected: a face boundary is not a cycle"));
            }
        }
        if outer.len() < 3 {
            return Err(Error::input("outer walk too short"));
        }
        let outer_face = *dart_face
            .get(&(outer[1], outer[0]))
            .ok_or_else(|| Error::input("outer walk does not follow edges"))?;
        let k = outer.len();
        let traced = &faces[outer_face];
        let start = traced.iter().position(|&v| v == outer[1]).unwrap_or(0);
        let matches = traced.len() == k && (0..k).all(|i| traced[(start + i) % k] == outer[(1 + k - i) % k]);
        if !matches {
            return Err(Error::input("outer walk is not a counterclockwise face boundary"));
        }
        let h = PlaneGraph { rot, outer, faces, outer_face, dart_face };
        if !h.weak_dual_connected() {
            return Err(Error::input("graph is not 2-connected: weak dual is disconnected"));
        }
        Ok(h)
    }

    /// Builds the embedding from face boundaries (0-based vertex cycles in
    /// either orientation). Every edge must lie on exactly two faces and the
    /// faces around every vertex must close up into a disk.
    pub fn from_faces(m: usize, faces: &[Vec<usize>], outer: usize) -> Result<Self, Error> {
        let mut edge_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            for j in 0..f.len() {
                let (a, b) = (f[j], f[(j + 1) % f.len()]);
                if a >= m || b >= m {
                    return Err(Error::input("face vertex out of range"));
                }
                edge_faces.entry((a.min(b), a.max(b))).or_default().push(i);
            }
        }
        if edge_faces.values().any(|v| v.len() != 2) {
            return Err(Error::input("every edge must lie on exactly two faces"));
        }
        let has_dart = |f: &[usize], a: usize, b: usize| (0..f.len()).any(|j| f[j] == a && f[(j + 1) % f.len()] == b);
        // orient faces so that neighbors traverse shared edges oppositely
        let mut oriented: Vec<Option<Vec<usize>>> = vec![None; faces.len()];
        oriented[0] = Some(faces[0].clone());
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            let f = oriented[i].clone().unwrap();
            for j in 0..f.len() {
                let (a, b) = (f[j], f[(j + 1) % f.len()]);
                for &g in &edge_faces[&(a.min(b), a.max(b))] {
                    if g == i {
                        continue;
                    }
                    let mut cand = faces[g].clone();
                    if has_dart(&cand, a, b) {
                        cand.reverse();
                    }
                    match &oriented[g] {
                        Some(o) if has_dart(o, a, b) => return Err(Error::input("faces are not orientable")),
                        Some(_) => {}
                        None => {
                            oriented[g] = Some(cand);
                            queue.push_back(g);
                        }
                    }
                }
            }
        }
        let oriented: Vec<Vec<usize>> =
            oriented.into_iter().collect::<Option<_>>().ok_or_else(|| Error::input("face structure is disconnected"))?;
        // u -> v -> w on a face means w directly precedes u around v
        let mut next: Vec<HashMap<usize, usize>> = vec![HashMap::new(); m];
        for f in &oriented {
            let l = f.len();
            for j in 0..l {
                let (u, v, w) = (f[j], f[(j + 1) % l], f[(j + 2) % l]);
                next[v].insert(w, u);
            }
        }
        let mut rot = Vec::with_capacity(m);
        for (v, nx) in next.iter().enumerate() {
            let Some(&first) = nx.keys().min() else {
                return Err(Error::input(format!("vertex {} lies on no face", v + 1)));
            };
            let mut r = vec![first];
            let mut cur = nx[&first];
            while cur != first && r.len() <= nx.len() {
                r.push(cur);
                cur = *nx.get(&cur).ok_or_else(|| Error::input("faces around a vertex do not close"))?;
            }
            if r.len() != nx.len() {
                return Err(Error::input(format!("faces around vertex {} do not form a disk", v + 1)));
            }
            rot.push(r);
        }
        let mut walk = oriented[outer].clone();
        walk.reverse();
        Self::from_rotation(rot, walk)
    }

    /// Plane graph of a 3-polytope given by the cover graph of its face
    /// lattice. Vertices are numbered in element order; the last 2-face
    /// becomes the outer face.
    pub fn from_cover_graph(g: &CoverGraph) -> Result<Self, Error> {
        let of_rank = |r: i32| -> Vec<usize> { (0..g.len()).filter(|&i| g.elements()[i].rank == r).collect() };
        let verts = of_rank(0);
        let vindex: HashMap<usize, usize> = verts.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let edge_ends: HashMap<usize, (usize, usize)> = of_rank(1)
            .into_iter()
            .map(|e| {
                let ends: Vec<usize> = g.neighbors(e).iter().filter_map(|x| vindex.get(x).copied()).collect();
                match ends[..] {
                    [a, b] => Ok((e, (a, b))),
                    _ => Err(Error::input("an edge of the lattice does not have two vertices")),
                }
            })
            .collect::<Result<_, _>>()?;
        let mut faces = Vec::new();
        for f in of_rank(2) {
            let sides: Vec<(usize, usize)> =
                g.neighbors(f).iter().filter_map(|e| edge_ends.get(e).copied()).collect();
            let mut cycle = vec![sides[0].0, sides[0].1];
            let mut used = vec![false; sides.len()];
            used[0] = true;
            while cycle.len() < sides.len() {
                let last = *cycle.last().unwrap();
                let k = (0..sides.len())
                    .find(|&k| !used[k] && (sides[k].0 == last || sides[k].1 == last))
                    .ok_or_else(|| Error::input("a 2-face boundary is not a cycle"))?;
                used[k] = true;
                cycle.push(if sides[k].0 == last { sides[k].1 } else { sides[k].0 });
            }
            faces.push(cycle);
        }
        if faces.is_empty() {
            return Err(Error::input("lattice has no 2-faces"));
        }
        let outer = faces.len() - 1;
        Self::from_faces(verts.len(), &faces, outer)
    }

    /// Parses lines `v: w1 w2 ...` (counterclockwise) and one line
    /// `outer: v1 v2 ...` (outer boundary, counterclockwise). `#` starts a
    /// comment.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut rows: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut outer = None;
        let num = |t: &str| t.parse::<usize>().map_err(|_| Error::input(format!("bad vertex label {t:?}")));
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line.split_once(':').ok_or_else(|| Error::input(format!("expected ':' in {line:?}")))?;
            let list = rest.split_whitespace().map(num).collect::<Result<Vec<_>, _>>()?;
            if head.trim() == "outer" {
                if outer.replace(list).is_some() {
                    return Err(Error::input("outer face given twice"));
                }
            } else if rows.insert(num(head.trim())?, list).is_some() {
                return Err(Error::input(format!("vertex {} given twice", head.trim())));
            }
        }
        let m = rows.len();
        let rotation = (1..=m)
            .map(|v| rows.remove(&v).ok_or_else(|| Error::input(format!("vertex {v} missing"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rotation, outer.ok_or_else(|| Error::input("missing outer line"))?)
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rot.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Counterclockwise neighbors of vertex `v` (1-based).
    pub fn rotation(&self, v: usize) -> Vec<usize> {
        self.rot[v - 1].iter().map(|w| w + 1).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (1..=self.rot.len()).contains(&u) && self.rot[u - 1].contains(&(v.wrapping_sub(1)))
    }

    /// Edges as 1-based pairs, smaller label first, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.rot.len())
            .flat_map(|v| self.rot[v].iter().filter(move |&&w| v < w).map(move |&w| (v + 1, w + 1)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Face boundaries (1-based), each traced with the face on its left.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.faces.iter().map(|f| f.iter().map(|v| v + 1).collect()).collect()
    }

    /// Outer boundary walk, counterclockwise (1-based).
    pub fn outer(&self) -> Vec<usize> {
        self.outer.iter().map(|v| v + 1).collect()
    }

    /// The same embedding with a different outer face, given by index into
    /// [`PlaneGraph::faces`].
    pub fn with_outer_face(&self, face: usize) -> Result<Self, Error> {
        let mut walk = self.faces.get(face).ok_or_else(|| Error::input("no such face"))?.clone();
        walk.reverse();
        Self::from_rotation(self.rot.clone(), walk)
    }

    /// The same outer face with the walk rotated to start `shift` steps later.
    pub fn with_outer_start(&self, shift: usize) -> Self {
        let mut h = self.clone();
        let k = h.outer.len();
        h.outer.rotate_left(shift % k);
        h
    }

    /// The same plane graph with vertex `v` renamed to `new_label[v - 1]`.
    pub fn relabeled(&self, new_label: &[usize]) -> Result<Self, Error> {
        let m = self.rot.len();
        let mut seen = vec![false; m];
        for &l in new_label {
            if l == 0 || l > m || std::mem::replace(&mut seen[l - 1], true) {
                return Err(Error::input("relabeling must be a permutation of 1..=m"));
            }
        }
        if new_label.len() != m {
            return Err(Error::input("relabeling must be a permutation of 1..=m"));
        }
        let map = |v: usize| new_label[v] - 1;
        let mut rot = vec![Vec::new(); m];
        for (v, r) in self.rot.iter().enumerate() {
            rot[map(v)] = r.iter().map(|&w| map(w)).collect();
        }
        Self::from_rotation(rot, self.outer.iter().map(|&v| map(v)).collect())
    }

    /// Mirror image: every rotation reversed.
    pub fn mirrored(&self) -> Self {
        let rot = self.rot.iter().map(|r| r.iter().rev().copied().collect()).collect();
        let outer = self.outer.iter().rev().copied().collect();
        Self::from_rotation(rot, outer).expect("mirror of a valid embedding")
    }

    /// Dual plane graph: one vertex per face (in [`PlaneGraph::faces`]
    /// order). Rejected if the dual has parallel edges.
    pub fn dual(&self) -> Result<Self, Error> {
        let rot: Vec<Vec<usize>> = self
            .faces
            .iter()
            .map(|f| (0..f.len()).map(|j| self.dart_face[&(f[(j + 1) % f.len()], f[j])]).collect())
            .collect();
        let walk = outer_guess(&rot);
        Self::from_rotation(rot, walk)
    }

    fn weak_dual_connected(&self) -> bool {
        let inner: Vec<usize> = (0..self.faces.len()).filter(|&f| f != self.outer_face).collect();
        let Some(&start) = inner.first() else { return false };
        let mut seen = vec![false; self.faces.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(f) = stack.pop() {
            let face = &self.faces[f];
            for j in 0..face.len() {
                let g = self.dart_face[&(face[(j + 1) % face.len()], face[j])];
                if g != self.outer_face && !seen[g] {
                    seen[g] = true;
                    count += 1;
                    stack.push(g);
                }
            }
        }
        count == inner.len()
    }

    /// Id of face `i` of [`PlaneGraph::faces`].
    pub fn face_id(&self, i: usize) -> String {
        let f = &self.faces[i];
        let s = (0..f.len()).min_by_key(|&j| f[j]).unwrap();
        let parts: Vec<String> = (0..f.len()).map(|j| (f[(s + j) % f.len()] + 1).to_string()).collect();
        format!("f{}", parts.join("-"))
    }

    fn cell_id(&self, c: Cell) -> String {
        match c {
            Cell::Empty => EMPTY.to_string(),
            Cell::Vertex(v) => vertex_id(v + 1),
            Cell::Edge(a, b) => edge_id(a + 1, b + 1),
            Cell::Face(f) => self.face_id(f),
            Cell::Top => TOP.to_string(),
        }
    }

    /// Canonical code of the embedding up to relabeling and reflection;
    /// equal codes mean isomorphic plane graphs. The outer face is ignored.
    pub fn canonical_code(&self) -> Vec<u32> {
        self.codes().into_iter().map(|(c, _)| c).min().unwrap()
    }

    /// Vertex permutations (1-based images) preserving the embedding up to
    /// reflection. For 3-connected graphs these are all automorphisms.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let codes = self.codes();
        let best = codes.iter().map(|(c, _)| c).min().unwrap().clone();
        let Some((_, reference)) = codes.iter().find(|(c, _)| *c == best) else { unreachable!() };
        let mut inverse = vec![0; reference.len()];
        for (v, &k) in reference.iter().enumerate() {
            inverse[k] = v;
        }
        let mut out: Vec<Vec<usize>> = codes
            .iter()
            .filter(|(c, _)| *c == best)
            .map(|(_, num)| (0..num.len()).map(|v| inverse[num[v]] + 1).collect())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// BFS codes from every dart in both orientations, with the numbering
    /// each one induces.
    fn codes(&self) -> Vec<(Vec<u32>, Vec<usize>)> {
        let m = self.rot.len();
        let pos: Vec<HashMap<usize, usize>> =
            self.rot.iter().map(|r| r.iter().enumerate().map(|(i, &w)| (w, i)).collect()).collect();
        let mut out = Vec::new();
        for u in 0..m {
            for &v in &self.rot[u] {
                for mirror in [false, true] {
                    let mut num = vec![usize::MAX; m];
                    let mut reference = vec![0; m];
                    let mut queue = VecDeque::from([u]);
                    num[u] = 0;
                    reference[u] = v;
                    let mut next = 1;
                    let mut code = Vec::with_capacity(2 * self.edge_count() + m);
                    while let Some(x) = queue.pop_front() {
                        let r = &self.rot[x];
                        let d = r.len();
                        let s = pos[x][&reference[x]];
                        for j in 0..d {
                            let w = if mirror { r[(s + d - j) % d] } else { r[(s + j) % d] };
                            if num[w] == usize::MAX {
                                num[w] = next;
                                next += 1;
                                reference[w] = x;
                                queue.push_back(w);
                            }
                            code.push(num[w] as u32 + 1);
                        }
                        code.push(0);
                    }
                    out.push((code, num));
                }
            }
        }
        out
    }
}

impl fmt::Display for PlaneGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 1..=self.rot.len() {
            let r: Vec<String> = self.rotation(v).iter().map(|w| w.to_string()).collect();
            writeln!(f, "{v}: {}", r.join(" "))?;
        }
        let o: Vec<String> = self.outer().iter().map(|w| w.to_string()).collect();
        writeln!(f, "outer: {}", o.join(" "))
    }
}

pub fn vertex_id(v: usize) -> String {
    format!("v{v}")
}

pub fn edge_id(a: usize, b: usize) -> String {
    format!("e{}-{}", a.min(b), a.max(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Cell {
    Empty,
    Vertex(usize),
    /// Smaller endpoint first.
    Edge(usize, usize),
    Face(usize),
    Top,
}

fn edge(a: usize, b: usize) -> Cell {
    Cell::Edge(a.min(b), a.max(b))
}

/// Cover graph of the cell lattice.
pub fn cells(h: &PlaneGraph) -> Result<CoverGraph, Error> {
    let mut elements = vec![RankedElement::bottom()];
    let mut covers = Vec::new();
    for v in 1..=h.vertex_count() {
        elements.push(RankedElement::new(vertex_id(v), 0));
        covers.push((EMPTY.to_string(), vertex_id(v)));
    }
    for (a, b) in h.edges() {
        let e = edge_id(a, b);
        elements.push(RankedElement::new(e.clone(), 1));
        covers.push((vertex_id(a), e.clone()));
        covers.push((vertex_id(b), e));
    }
    for (i, f) in h.faces.iter().enumerate() {
        let id = h.face_id(i);
        elements.push(RankedElement::new(id.clone(), 2));
        for j in 0..f.len() {
            covers.push((edge_id(f[j] + 1, f[(j + 1) % f.len()] + 1), id.clone()));
        }
        covers.push((id, TOP.to_string()));
    }
    elements.push(RankedElement::new(TOP, 3));
    CoverGraph::new(elements, covers)
}

/// Hamiltonian path through every cell except the empty set, the outer face
/// and the top. With the outer walk `v_1..v_k` and `e_i = (v_{i-1}, v_i)`,
/// the path starts at the inner face `f` on `e_k`, visits every pair
/// `e_i, v_i` consecutively and ends with `v_{k-1}, e_k, v_k`.
pub fn cell_ham_path(h: &PlaneGraph) -> Result<Listing, Error> {
    let path = cell_path(h)?;
    Ok(Listing::path(path.into_iter().map(|c| h.cell_id(c)).collect()))
}

/// Hamiltonian cycle through all cells: the path of [`cell_ham_path`] with
/// its last two entries replaced by `EMPTY, v_k, e_k, outer face, H`.
pub fn cell_ham_cycle(h: &PlaneGraph) -> Result<Listing, Error> {
    let mut path = cell_path(h)?;
    let vk = path.pop().unwrap();
    let ek = path.pop().unwrap();
    path.extend([Cell::Empty, vk, ek, Cell::Face(h.outer_face), Cell::Top]);
    Ok(Listing::cyclic(path.into_iter().map(|c| h.cell_id(c)).collect()))
}

fn cell_path(h: &PlaneGraph) -> Result<Vec<Cell>, Error> {
    let mut walk = h.outer.clone();
    let mut on_walk = vec![false; h.vertex_count()];
    for &v in &walk {
        on_walk[v] = true;
    }
    let k0 = walk.len();
    let f = h.dart_face[&(walk[k0 - 2], walk[k0 - 1])];
    let mut alive = h.faces.len() - 1;
    // (d_r, cells inserted right after it)
    let mut steps: Vec<(Cell, Vec<Cell>)> = Vec::new();
    while alive > 1 {
        let k = walk.len();
        let prev = |j: usize| walk[(j + k - 1) % k];
        // inner face along e_{j+1} = (walk[j-1], walk[j])
        let along: Vec<usize> = (0..k).map(|j| h.dart_face[&(prev(j), walk[j])]).collect();
        let mut chosen = None;
        let mut s = 0;
        while s < k - 1 {
            let g = along[s];
            let mut t = s;
            while t + 1 < k && along[t + 1] == g {
                t += 1;
            }
            if g != f && along.iter().filter(|&&x| x == g).count() == t - s + 1 {
                // rest of g's boundary, from v_t back to v_{s-1}
                let face = &h.faces[g];
                let l = face.len();
                let at = face.iter().position(|&v| v == walk[t]).unwrap();
                let end = prev(s);
                let mut inner = Vec::new();
                let mut j = (at + 1) % l;
                while face[j] != end {
                    inner.push(face[j]);
                    j = (j + 1) % l;
                }
                if inner.iter().all(|&u| !on_walk[u]) {
                    chosen = Some((s, g, t, inner));
                    break;
                }
            }
            s = t + 1;
        }
        let (s, g, t, inner) = chosen.ok_or_else(|| Error::structure("no removable face along the outer walk"))?;
        let d_r = edge(*inner.first().unwrap_or(&prev(s)), walk[t]);
        let mut seq = vec![Cell::Face(g)];
        for (j, &v) in walk.iter().enumerate().take(t).skip(s) {
            seq.push(edge(prev(j), v));
            seq.push(Cell::Vertex(v));
        }
        seq.push(edge(prev(t), walk[t]));
        steps.push((d_r, seq));
        for &v in &walk[s..t] {
            on_walk[v] = false;
        }
        for &u in &inner {
            on_walk[u] = true;
        }
        let replacement: Vec<usize> = inner.into_iter().rev().collect();
        walk.splice(s..t, replacement);
        alive -= 1;
    }
    let k = walk.len();
    if h.dart_face[&(walk[k - 1], walk[0])] != f {
        return Err(Error::structure("peeling did not end at the starting face"));
    }
    let mut path = vec![Cell::Face(f)];
    for j in 0..k {
        path.push(edge(walk[(j + k - 1) % k], walk[j]));
        path.push(Cell::Vertex(walk[j]));
    }
    for (d, seq) in steps.into_iter().rev() {
        let at = path.iter().position(|&c| c == d).ok_or_else(|| Error::structure("anchor edge missing from path"))?;
        path.splice(at + 1..at + 1, seq);
    }
    Ok(path)
}

/// Positions of `cycle` (1-based labels) after checking it is a
/// Hamiltonian cycle of `h`.
fn cycle_positions(h: &PlaneGraph, cycle: &[usize]) -> Result<Vec<usize>, Error> {
    let m = h.vertex_count();
    if cycle.len() != m {
        return Err(Error::input(format!("cycle has {} vertices, graph has {m}", cycle.len())));
    }
    let mut pos = vec![usize::MAX; m];
    for (i, &v) in cycle.iter().enumerate() {
        if v == 0 || v > m || pos[v - 1] != usize::MAX {
            return Err(Error::input("cycle must list every vertex exactly once"));
        }
        pos[v - 1] = i;
    }
    for i in 0..m {
        if !h.has_edge(cycle[i], cycle[(i + 1) % m]) {
            return Err(Error::input(format!("{} {} is not an edge", cycle[i], cycle[(i + 1) % m])));
        }
    }
    Ok(pos)
}

/// Chords of a Hamiltonian cycle as position pairs `(i, j)`, `i < j`.
fn chords(h: &PlaneGraph, pos: &[usize]) -> Vec<(usize, usize)> {
    let n = pos.len();
    let mut out: Vec<(usize, usize)> = h
        .edges()
        .into_iter()
        .map(|(a, b)| (pos[a - 1].min(pos[b - 1]), pos[a - 1].max(pos[b - 1])))
        .filter(|&(i, j)| j - i != 1 && j - i != n - 1)
        .collect();
    out.sort_unstable();
    out
}

/// Chords as 1-based vertex pairs.
pub type Chords = Vec<(usize, usize)>;

/// Outcome of [`check_chord_condition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChordCondition {
    Holds,
    /// Three chords bounding pairwise disjoint arcs of the cycle.
    Violated([(usize, usize); 3]),
}

impl ChordCondition {
    pub fn holds(&self) -> bool {
        matches!(self, ChordCondition::Holds)
    }
}

/// Looks for three chords of the Hamiltonian cycle `cycle` that can be
/// indexed as `(v_i1, v_i2), (v_i3, v_i4), (v_i5, v_i6)` with
/// `i1 < i2 <= i3 < i4 <= i5 < i6 <= n + 1` for some rotation and
/// orientation of the cycle, i.e. whose chosen arcs share no cycle edge.
pub fn check_chord_condition(h: &PlaneGraph, cycle: &[usize]) -> Result<ChordCondition, Error> {
    let pos = cycle_positions(h, cycle)?;
    let n = pos.len();
    if n > 128 {
        return Err(Error::budget("chord condition supports at most 128 vertices"));
    }
    let arc = |from: usize, to: usize| -> u128 {
        let mut mask = 0u128;
        let mut i = from;
        while i != to {
            mask |= 1 << i;
            i = (i + 1) % n;
        }
        mask
    };
    let cs = chords(h, &pos);
    let arcs: Vec<[u128; 2]> = cs.iter().map(|&(i, j)| [arc(i, j), arc(j, i)]).collect();
    for x in 0..cs.len() {
        for y in x + 1..cs.len() {
            for z in y + 1..cs.len() {
                for ax in arcs[x] {
                    for ay in arcs[y] {
                        if ax & ay != 0 {
                            continue;
                        }
                        if arcs[z].iter().any(|&az| az & (ax | ay) == 0) {
                            let lab = |(i, j): (usize, usize)| (cycle[i], cycle[j]);
                            return Ok(ChordCondition::Violated([lab(cs[x]), lab(cs[y]), lab(cs[z])]));
                        }
                    }
                }
            }
        }
    }
    Ok(ChordCondition::Holds)
}

/// A Hamiltonian cycle split into two paths `A` and `B` so that every chord
/// joins `A` to `B`. The cycle is stored as `A` followed by `B`; `e` joins
/// the end of `B` to the start of `A` and `e'` the end of `A` to the start
/// of `B`. Labels are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDecomposition {
    cycle: Vec<usize>,
    split: usize,
    inside: Vec<(usize, usize)>,
    outside: Vec<(usize, usize)>,
}

impl ChordDecomposition {
    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    pub fn a(&self) -> &[usize] {
        &self.cycle[..self.split]
    }

    pub fn b(&self) -> &[usize] {
        &self.cycle[self.split..]
    }

    /// Chords inside the cycle (the side away from the outer face).
    pub fn inside(&self) -> &[(usize, usize)] {
        &self.inside
    }

    pub fn outside(&self) -> &[(usize, usize)] {
        &self.outside
    }

    pub fn e(&self) -> (usize, usize) {
        (*self.cycle.last().unwrap(), self.cycle[0])
    }

    pub fn e_prime(&self) -> (usize, usize) {
        (self.cycle[self.split - 1], self.cycle[self.split])
    }

    /// The same split with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> Self {
        let mut cycle = self.cycle.clone();
        cycle.rotate_left(self.split);
        ChordDecomposition {
            split: cycle.len() - self.split,
            cycle,
            inside: self.inside.clone(),
            outside: self.outside.clone(),
        }
    }
}

/// Chords of `cycle` split by side: `(inside, outside)` as 1-based pairs.
pub fn chord_sides(h: &PlaneGraph, cycle: &[usize]) -> Result<(Chords, Chords), Error> {
    let pos = cycle_positions(h, cycle)?;
    let left = left_faces(h, cycle);
    let outer_left = left[h.outer_face];
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for (i, j) in chords(h, &pos) {
        let (a, b) = (cycle[i], cycle[j]);
        let f = h.dart_face[&(a - 1, b - 1)];
        if left[f] == outer_left {
            outside.push((a, b));
        } else {
            inside.push((a, b));
        }
    }
    Ok((inside, outside))
}

/// For every face, whether it lies left of the cycle traversed in order.
fn left_faces(h: &PlaneGraph, cycle: &[usize]) -> Vec<bool> {
    let n = cycle.len();
    let on_cycle: HashSet<(usize, usize)> =
        (0..n).map(|i| (cycle[i] - 1, cycle[(i + 1) % n] - 1)).flat_map(|(a, b)| [(a, b), (b, a)]).collect();
    let mut left = vec![false; h.faces.len()];
    let mut stack: Vec<usize> = (0..n).map(|i| h.dart_face[&(cycle[i] - 1, cycle[(i + 1) % n] - 1)]).collect();
    for &f in &stack {
        left[f] = true;
    }
    while let Some(f) = stack.pop() {
        let face = &h.faces[f];
        for j in 0..face.len() {
            let (a, b) = (face[j], face[(j + 1) % face.len()]);
            if on_cycle.contains(&(a, b)) {
                continue;
            }
            let g = h.dart_face[&(b, a)];
            if !left[g] {
                left[g] = true;
                stack.push(g);
            }
        }
    }
    left
}

/// A path along the cycle: start position and number of vertices.
#[derive(Clone, Copy, Debug)]
struct Arc {
    start: usize,
    len: usize,
}

impl Arc {
    fn from_to(start: usize, end: usize, n: usize) -> Self {
        Arc { start, len: (end + n - start) % n + 1 }
    }

    fn contains(&self, p: usize, n: usize) -> bool {
        (p + n - self.start) % n < self.len
    }

    fn end(&self, n: usize) -> usize {
        (self.start + self.len - 1) % n
    }

    fn meets(&self, other: &Arc, n: usize) -> bool {
        self.contains(other.start, n) || other.contains(self.start, n)
    }
}

fn straddles(chords: &[(usize, usize)], a: &Arc, n: usize) -> bool {
    chords.iter().all(|&(i, j)| a.contains(i, n) != a.contains(j, n))
}

/// Two disjoint paths holding one endpoint of every chord of `z` each,
/// whose first vertices and last vertices are joined by chords of `z`.
fn ladder(z: &[(usize, usize)], n: usize) -> Option<(Arc, Arc)> {
    let oriented: Vec<(usize, usize)> = z.iter().flat_map(|&(i, j)| [(i, j), (j, i)]).collect();
    for &(xc, yc) in &oriented {
        for &(xd, yd) in &oriented {
            let a = Arc::from_to(xc, xd, n);
            let b = Arc::from_to(yd, yc, n);
            if a.len + b.len > n || a.meets(&b, n) {
                continue;
            }
            let ok = z.iter().all(|&(i, j)| (a.contains(i, n) && b.contains(j, n)) || (a.contains(j, n) && b.contains(i, n)));
            if ok {
                return Some((a, b));
            }
        }
    }
    None
}

/// Shortest arc containing both arcs and avoiding the arcs in `avoid`.
fn hull(p: &Arc, q: &Arc, avoid: &[Arc], n: usize) -> Option<Arc> {
    let candidates = [Arc::from_to(p.start, q.end(n), n), Arc::from_to(q.start, p.end(n), n)];
    candidates
        .into_iter()
        .filter(|h| {
            let covers = |x: &Arc| (0..x.len).all(|k| h.contains((x.start + k) % n, n));
            h.len <= n && covers(p) && covers(q) && avoid.iter().all(|x| !x.meets(h, n))
        })
        .min_by_key(|h| h.len)
}

/// Splits the Hamiltonian cycle into paths `A`, `B` with every chord joining
/// them, if possible. The inside and outside chords are each arranged as a
/// ladder between two disjoint paths; paired paths are then merged and
/// extended until they cover the cycle. Returns `None` when no split exists.
pub fn split_paths(h: &PlaneGraph, cycle: &[usize]) -> Result<Option<ChordDecomposition>, Error> {
    let pos = cycle_positions(h, cycle)?;
    let n = pos.len();
    let (inside, outside) = chord_sides(h, cycle)?;
    let to_pos = |c: &[(usize, usize)]| -> Vec<(usize, usize)> { c.iter().map(|&(a, b)| (pos[a - 1], pos[b - 1])).collect() };
    let (x, y) = (to_pos(&inside), to_pos(&outside));
    let all: Vec<(usize, usize)> = x.iter().chain(&y).copied().collect();
    let a = match (x.is_empty(), y.is_empty()) {
        (true, true) => Some(Arc { start: 0, len: 1 }),
        (false, true) | (true, false) => {
            let z = if x.is_empty() { &y } else { &x };
            ladder(z, n).map(|(a, _)| a)
        }
        (false, false) => match (ladder(&x, n), ladder(&y, n)) {
            (Some((ax, bx)), Some((ay, by))) => [(ax, ay, bx, by), (ax, by, bx, ay)]
                .into_iter()
                .filter_map(|(p, q, r, s)| hull(&p, &q, &[r, s], n))
                .find(|a| straddles(&all, a, n)),
            _ => None,
        },
    };
    let Some(a) = a.filter(|a| straddles(&all, a, n) && a.len < n) else {
        return Ok(None);
    };
    let mut rotated: Vec<usize> = cycle.to_vec();
    rotated.rotate_left(a.start);
    Ok(Some(ChordDecomposition { cycle: rotated, split: a.len, inside, outside }))
}

/// Rhombic strip of the cell lattice built from a chord decomposition.
/// Vertices are ordered along the cycle; edges follow the cycle with every
/// inside chord placed at its endpoint in `A` and every outside chord at its
/// endpoint in `B`; faces are ordered along the dual cycle through the
/// chords and `e`, `e'`.
pub fn strip_from_cycle(h: &PlaneGraph, dec: &ChordDecomposition) -> Result<RhombicStrip, Error> {
    let c: Vec<usize> = dec.cycle.iter().map(|v| v - 1).collect();
    let pos = cycle_positions(h, &dec.cycle)?;
    let n = c.len();
    let p = dec.split;
    if p == 0 || p >= n {
        return Err(Error::input("both paths must be nonempty"));
    }
    let (inside, outside) = chord_sides(h, &dec.cycle)?;
    let norm = |v: &[(usize, usize)]| -> Vec<(usize, usize)> {
        let mut s: Vec<(usize, usize)> = v.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        s.sort_unstable();
        s
    };
    if norm(&inside) != norm(&dec.inside) || norm(&outside) != norm(&dec.outside) {
        return Err(Error::input("decomposition chords do not match the graph"));
    }
    // chords as (position in A, position in B)
    let split = |chs: &[(usize, usize)]| -> Result<Vec<(usize, usize)>, Error> {
        chs.iter()
            .map(|&(u, v)| {
                let (i, j) = (pos[u - 1].min(pos[v - 1]), pos[u - 1].max(pos[v - 1]));
                if i < p && j >= p {
                    Ok((i, j))
                } else {
                    Err(Error::input(format!("chord {u} {v} does not join A and B")))
                }
            })
            .collect()
    };
    let (x, y) = (split(&inside)?, split(&outside)?);
    // rank 1 order
    let mut seq: Vec<(Cell, Option<usize>)> = Vec::new(); // cell, chord side (0 inside, 1 outside)
    let mut anchor: Vec<i64> = vec![0; n]; // lifted index of the edge entering each vertex
    for i in 0..n {
        let mut here: Vec<(usize, usize)> = if i < p {
            x.iter().copied().filter(|&(a, _)| a == i).collect()
        } else {
            y.iter().copied().filter(|&(_, b)| b == i).collect()
        };
        if i < p {
            here.sort_by_key(|s| std::cmp::Reverse(s.1));
        } else {
            here.sort_by_key(|s| std::cmp::Reverse(s.0));
        }
        for (a, b) in here {
            seq.push((edge(c[a], c[b]), Some(usize::from(i >= p))));
        }
        seq.push((edge(c[i], c[(i + 1) % n]), None));
        if i + 1 < n {
            anchor[i + 1] = seq.len() as i64 - 1;
        }
    }
    anchor[0] = -1;
    let e_total = seq.len() as i64;
    let index: HashMap<Cell, i64> = seq.iter().enumerate().map(|(k, &(cell, _))| (cell, k as i64)).collect();
    let faces_of = |cell: Cell| -> [usize; 2] {
        let Cell::Edge(a, b) = cell else { unreachable!() };
        [h.dart_face[&(a, b)], h.dart_face[&(b, a)]]
    };
    let left = left_faces(h, &dec.cycle);
    let inside_left = !left[h.outer_face];
    let side_face = |i: usize, want_inside: bool| -> usize {
        let (a, b) = (c[i], c[(i + 1) % n]);
        if want_inside == inside_left {
            h.dart_face[&(a, b)]
        } else {
            h.dart_face[&(b, a)]
        }
    };
    // dual cycle: faces with the lifted index where their run starts
    let mut face_start: HashMap<usize, i64> = HashMap::new();
    let mut face_order: Vec<usize> = Vec::new();
    let mut walk_side = |first: usize, start: i64, side: usize, last: usize| -> Result<(), Error> {
        let mut cur = first;
        face_start.insert(cur, start);
        face_order.push(cur);
        for (k, &(cell, s)) in seq.iter().enumerate() {
            if s != Some(side) {
                continue;
            }
            let fs = faces_of(cell);
            let nxt = if fs[0] == cur {
                fs[1]
            } else if fs[1] == cur {
                fs[0]
            } else {
                return Err(Error::structure("chords on one side do not form a ladder"));
            };
            cur = nxt;
            if face_start.insert(cur, k as i64).is_some() {
                return Err(Error::structure("dual walk revisits a face"));
            }
            face_order.push(cur);
        }
        if cur != last {
            return Err(Error::structure("dual walk does not reach the connecting edge"));
        }
        Ok(())
    };
    walk_side(side_face(n - 1, true), -1, 0, side_face(p - 1, true))?;
    walk_side(side_face(p - 1, false), index[&edge(c[p - 1], c[p])], 1, side_face(n - 1, false))?;
    if face_order.len() != h.faces.len() {
        return Err(Error::structure("dual walk misses faces"));
    }
    // lifted coordinates in units of 1/(4E)
    let unit = 4 * e_total;
    let mut lifted: HashMap<Cell, i64> = HashMap::new();
    let mut edges: Vec<(Cell, Cell, i64)> = Vec::new();
    let from_run = |start: i64, k: i64| -> i64 { start + (k - start).rem_euclid(e_total) };
    for (k, &(cell, _)) in seq.iter().enumerate() {
        lifted.insert(cell, 4 * k as i64);
    }
    for i in 0..n {
        let x0 = 4 * anchor[i] + 2;
        lifted.insert(Cell::Vertex(c[i]), x0);
        let mut ups = vec![edge(c[(i + n - 1) % n], c[i]), edge(c[i], c[(i + 1) % n])];
        for (cell, side) in &seq {
            let Cell::Edge(a, b) = *cell else { continue };
            let attached = match side {
                Some(0) => pos[a].min(pos[b]) == i,
                Some(_) => pos[a].max(pos[b]) == i,
                None => false,
            };
            if attached {
                ups.push(*cell);
            }
        }
        for u in ups {
            edges.push((Cell::Vertex(c[i]), u, 4 * from_run(anchor[i], index[&u]) - x0));
        }
    }
    for (&f, &start) in &face_start {
        lifted.insert(Cell::Face(f), 4 * start + 2);
    }
    for (k, &(cell, side)) in seq.iter().enumerate() {
        let k = k as i64;
        let ups: Vec<usize> = match side {
            Some(_) => faces_of(cell).to_vec(),
            None => {
                let i = pos[match cell {
                    Cell::Edge(a, b) => {
                        if (pos[a] + 1) % n == pos[b] {
                            a
                        } else {
                            b
                        }
                    }
                    _ => unreachable!(),
                }];
                if i == n - 1 || i == p - 1 {
                    vec![side_face(i, true), side_face(i, false)]
                } else {
                    vec![side_face(i, i < p)]
                }
            }
        };
        for f in ups {
            let start = face_start[&f];
            edges.push((cell, Cell::Face(f), 4 * start + 2 - 4 * from_run(start, k)));
        }
    }
    // bottom and top fan out over one period
    let bottom_x = -3;
    lifted.insert(Cell::Empty, bottom_x);
    for i in 0..n {
        edges.push((Cell::Empty, Cell::Vertex(c[i]), lifted[&Cell::Vertex(c[i])] - bottom_x));
    }
    let top_x = unit - 3;
    lifted.insert(Cell::Top, top_x);
    for &f in &face_order {
        edges.push((Cell::Face(f), Cell::Top, top_x - lifted[&Cell::Face(f)]));
    }
    let rank = |cell: Cell| match cell {
        Cell::Empty => -1,
        Cell::Vertex(_) => 0,
        Cell::Edge(..) => 1,
        Cell::Face(_) => 2,
        Cell::Top => 3,
    };
    let base = |cell: Cell| lifted[&cell].rem_euclid(unit);
    let vertices: Vec<StripVertex> = lifted
        .keys()
        .map(|&cell| StripVertex { id: h.cell_id(cell), rank: rank(cell), x: Coord::new(base(cell), unit) })
        .collect();
    let strip_edges = edges
        .into_iter()
        .map(|(lo, hi, disp)| {
            let wrap = (disp - (base(hi) - base(lo))) / unit;
            StripEdge::wrapped(h.cell_id(lo), h.cell_id(hi), wrap as i8)
        })
        .collect();
    Ok(RhombicStrip::new(vertices, strip_edges))
}

/// Calls `visit` on every Hamiltonian cycle (1-based) until it returns
/// `false`. Cycles start at vertex 1, neighbors are tried in increasing
/// order and each cycle is produced in one orientation only.
pub fn for_each_hamiltonian_cycle(h: &PlaneGraph, budget: usize, mut visit: impl FnMut(&[usize]) -> bool) -> Result<(), Error> {
    let m = h.vertex_count();
    if m > budget {
        return Err(Error::budget(format!("{m} vertices exceed the budget of {budget}")));
    }
    let adj: Vec<Vec<usize>> = h
        .rot
        .iter()
        .map(|r| {
            let mut s = r.clone();
            s.sort_unstable();
            s
        })
        .collect();
    fn go(adj: &[Vec<usize>], path: &mut Vec<usize>, used: &mut [bool], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let m = adj.len();
        let last = *path.last().unwrap();
        if path.len() == m {
            if path[1] < path[m - 1] && adj[last].contains(&0) {
                let labels: Vec<usize> = path.iter().map(|v| v + 1).collect();
                return visit(&labels);
            }
            return true;
        }
        for &w in &adj[last] {
            if used[w] {
                continue;
            }
            used[w] = true;
            path.push(w);
            let go_on = go(adj, path, used, visit);
            path.pop();
            used[w] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
    let mut used = vec![false; m];
    used[0] = true;
    go(&adj, &mut vec![0], &mut used, &mut visit);
    Ok(())
}

/// All Hamiltonian cycles, one per undirected cycle.
pub fn hamiltonian_cycles(h: &PlaneGraph, budget: usize) -> Result<Vec<Vec<usize>>, Error> {
    let mut out = Vec::new();
    for_each_hamiltonian_cycle(h, budget, |c| {
        out.push(c.to_vec());
        true
    })?;
    Ok(out)
}

/// Decides whether the cell lattice has a rhombic strip: some Hamiltonian
/// cycle must satisfy the chord condition. Returns the first such cycle and
/// the strip built from it.
pub fn decide_rhombic_strip(h: &PlaneGraph) -> Result<Option<(Vec<usize>, RhombicStrip)>, Error> {
    decide_rhombic_strip_within(h, DECIDE_BUDGET)
}

/// [`decide_rhombic_strip`] with an explicit vertex budget.
pub fn decide_rhombic_strip_within(h: &PlaneGraph, budget: usize) -> Result<Option<(Vec<usize>, RhombicStrip)>, Error> {
    let mut found = None;
    let mut failure = None;
    for_each_hamiltonian_cycle(h, budget, |cycle| match split_paths(h, cycle) {
        Ok(Some(dec)) => {
            match strip_from_cycle(h, &dec) {
                Ok(strip) => found = Some((cycle.to_vec(), strip)),
                Err(e) => failure = Some(e),
            }
            false
        }
        Ok(None) => true,
        Err(e) => {
            failure = Some(e);
            false
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// The truncated tetrahedron with the edges `(v4,v5)` and `(v6,v5)`
/// subdivided by `a_1..a_s` and `b_1..b_s` and rungs `(a_i, b_i)`. Labels:
/// `v1..v12`, then `a_i = 11 + 2i`, `b_i = 12 + 2i`. The cycle
/// `(v1,...,v12)` is Hamiltonian; its triangles are `{1,2,3}`, `{4,5,6}`,
/// `{7,8,9}`, `{10,11,12}`.
pub fn fixture_truncated_tetra(s: usize) -> Result<PlaneGraph, Error> {
    let a = |i: usize| 10 + 2 * i; // 0-based
    let b = |i: usize| 11 + 2 * i;
    let mut path45 = vec![3];
    path45.extend((1..=s).map(a));
    path45.push(4);
    let mut path65 = vec![5];
    path65.extend((1..=s).map(b));
    path65.push(4);
    let mut faces = vec![vec![0, 1, 2], vec![6, 7, 8], vec![9, 10, 11]];
    // triangle 4,5,6 becomes a ladder
    let mut prev = (3, 5);
    for i in 1..=s {
        faces.push(vec![prev.0, a(i), b(i), prev.1]);
        prev = (a(i), b(i));
    }
    faces.push(vec![prev.0, 4, prev.1]);
    // hexagons, with 4-5 and 5-6 replaced by the subdivided paths
    let mut hex1 = vec![0, 2];
    hex1.extend(&path45);
    hex1.extend([10, 11]);
    faces.push(hex1);
    faces.push(vec![1, 2, 3, 5, 6, 7]);
    let mut hex4: Vec<usize> = path65.iter().rev().copied().collect();
    hex4.extend([6, 8, 9, 10]);
    faces.push(hex4);
    faces.push(vec![0, 1, 7, 8, 9, 11]);
    let outer = faces.len() - 1;
    PlaneGraph::from_faces(12 + 2 * s, &faces, outer)
}

/// The 7-vertex plane graph whose graph and dual are Hamiltonian while its
/// cell lattice has no rhombic strip. Up to symmetry its Hamiltonian cycles
/// are `(1,2,3,4,5,6,7)` and `(1,6,2,3,4,5,7)`.
pub fn fixture_fano() -> PlaneGraph {
    PlaneGraph::parse(include_str!("../data/fano.plane")).expect("bundled fixture")
}

/// Graph of the 3-cube.
pub fn fixture_cube() -> PlaneGraph {
    PlaneGraph::parse(include_str!("../data/cube.plane")).expect("bundled fixture")
}

/// Wheel with `k` rim vertices; the hub is vertex 1.
pub fn fixture_wheel(k: usize) -> Result<PlaneGraph, Error> {
    if k < 3 {
        return Err(Error::input("a wheel needs at least 3 rim vertices"));
    }
    let rim = |i: usize| 2 + (i + k) % k;
    let mut rot = vec![(0..k).map(rim).collect::<Vec<_>>()];
    for i in 0..k {
        rot.push(vec![rim(i + 1), 1, rim(i + k - 1)]);
    }
    let outer: Vec<usize> = (0..k).map(rim).collect();
    PlaneGraph::new(rot, outer)
}

/// All 3-connected plane graphs with `n` vertices, one per isomorphism
/// class, `4 <= n <=` [`CORPUS_BUDGET`].
pub fn polyhedral_graphs(n: usize) -> Result<Vec<PlaneGraph>, Error> {
    Ok(polyhedral_corpus(n)?.into_iter().filter(|h| h.vertex_count() == n).collect())
}

/// All 3-connected plane graphs with at most `max_n` vertices.
///
/// Generated from wheels by adding edges inside faces and splitting
/// vertices of degree at least four; every 3-connected planar graph arises
/// this way, and 3-connected planar graphs have a unique embedding up to
/// reflection, so deduplication by [`PlaneGraph::canonical_code`] is exact.
pub fn polyhedral_corpus(max_n: usize) -> Result<Vec<PlaneGraph>, Error> {
    if max_n > CORPUS_BUDGET {
        return Err(Error::budget(format!("corpus limited to {CORPUS_BUDGET} vertices")));
    }
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut levels: Vec<Vec<PlaneGraph>> = vec![Vec::new(); max_n + 1];
    for n in 4..=max_n {
        let wheel = fixture_wheel(n - 1)?;
        if seen.insert(wheel.canonical_code()) {
            levels[n].push(wheel);
        }
        let mut i = 0;
        while i < levels[n].len() {
            let h = levels[n][i].clone();
            for child in add_edge_children(&h).chain(if n < max_n { split_children(&h) } else { Vec::new() }) {
                if seen.insert(child.canonical_code()) {
                    let size = child.vertex_count();
                    levels[size].push(child);
                }
            }
            i += 1;
        }
    }
    Ok(levels.into_iter().flatten().collect())
}

fn add_edge_children(h: &PlaneGraph) -> impl Iterator<Item = PlaneGraph> + '_ {
    let mut out = Vec::new();
    for face in &h.faces {
        let l = face.len();
        for i in 0..l {
            for j in i + 2..l {
                if i == 0 && j == l - 1 {
                    continue;
                }
                let (u, v) = (face[i], face[j]);
                if h.rot[u].contains(&v) {
                    continue;
                }
                let mut rot = h.rot.clone();
                // x -> u -> y on the face: insert v right after y around u
                for (a, b, at) in [(u, v, i), (v, u, j)] {
                    let y = face[(at + 1) % l];
                    let k = rot[a].iter().position(|&w| w == y).unwrap();
                    rot[a].insert(k + 1, b);
                }
                let walk = outer_guess(&rot);
                if let Ok(g) = PlaneGraph::from_rotation(rot, walk) {
                    out.push(g);
                }
            }
        }
    }
    out.into_iter()
}

fn split_children(h: &PlaneGraph) -> Vec<PlaneGraph> {
    let m = h.vertex_count();
    let mut out = Vec::new();
    for v in 0..m {
        let r = &h.rot[v];
        let d = r.len();
        if d < 4 {
            continue;
        }
        for start in 0..d {
            for len in 2..=d - 2 {
                let keep: Vec<usize> = (0..len).map(|j| r[(start + j) % d]).collect();
                let moved: Vec<usize> = (len..d).map(|j| r[(start + j) % d]).collect();
                let z = m;
                let mut rot = h.rot.clone();
                rot[v] = keep.clone();
                rot[v].push(z);
                let mut rz = moved.clone();
                rz.push(v);
                rot.push(rz);
                for &w in &moved {
                    for x in rot[w].iter_mut() {
                        if *x == v {
                            *x = z;
                        }
                    }
                }
                let walk = outer_guess(&rot);
                if let Ok(g) = PlaneGraph::from_rotation(rot, walk) {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// Counterclockwise walk of the face left of the dart from vertex 0 to its
/// first neighbor, reversed into an outer walk.
fn outer_guess(rot: &[Vec<usize>]) -> Vec<usize> {
    let pos = |b: usize, a: usize| rot[b].iter().position(|&w| w == a).unwrap();
    let (mut a, mut b) = (0, rot[0][0]);
    let mut face = Vec::new();
    loop {
        face.push(a);
        let r = &rot[b];
        let w = r[(pos(b, a) + r.len() - 1) % r.len()];
        (a, b) = (b, w);
        if (a, b) == (0, rot[0][0]) || face.len() > 4 * rot.len() {
            break;
        }
    }
    face.reverse();
    face
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::posetcore::{check_hamiltonian, f_vector, Report};

    fn triangle() -> PlaneGraph {
        PlaneGraph::parse("1: 2 3\n2: 3 1\n3: 1 2\nouter: 1 2 3\n").unwrap()
    }

    #[test]
    fn triangle_cells() {
        let h = triangle();
        let g = cells(&h).unwrap();
        assert_eq!(f_vector(g.elements()).unwrap(), [1, 3, 3, 2, 1]);
        let cycle = cell_ham_cycle(&h).unwrap();
        assert_eq!(cycle.len(), 10);
        assert_eq!(check_hamiltonian(&g, &cycle), Report::Ok);
        let path = cell_ham_path(&h).unwrap();
        assert_eq!(path.ids, ["f1-2-3", "e1-3", "v1", "e1-2", "v2", "e2-3", "v3"]);
    }

    #[test]
    fn rejects_bad_embeddings() {
        assert!(PlaneGraph::parse("1: 2\n2: 1\nouter: 1 2\n").is_err());
        // a cycle that does not bound a face
        let cube = fixture_cube().to_string().replace("outer: 1 2 3 4", "outer: 1 2 6 7 8 5");
        assert!(PlaneGraph::parse(&cube).is_err());
        // two triangles sharing a vertex
        let bowtie = "1: 2 3 4 5\n2: 3 1\n3: 1 2\n4: 5 1\n5: 1 4\nouter: 1 2 3\n";
        assert!(PlaneGraph::parse(bowtie).is_err());
    }

    #[test]
    fn display_round_trips() {
        let h = fixture_truncated_tetra(1).unwrap();
        assert_eq!(PlaneGraph::parse(&h.to_string()).unwrap(), h);
    }

    #[test]
    fn chordless_cycle_splits_off_one_vertex() {
        let square = PlaneGraph::parse("1: 2 4\n2: 3 1\n3: 4 2\n4: 1 3\nouter: 1 2 3 4\n").unwrap();
        assert!(check_chord_condition(&square, &[1, 2, 3, 4]).unwrap().holds());
        let dec = split_paths(&square, &[1, 2, 3, 4]).unwrap().unwrap();
        assert_eq!(dec.a(), [1]);
        assert_eq!(dec.b(), [2, 3, 4]);
    }
}
