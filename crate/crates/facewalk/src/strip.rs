//! Rhombic strips: spanning subgraphs of a cover graph drawn on the cylinder
//! `[0,1) x R` so that ranks are heights, edges are straight and every face
//! is a rhombus.
//!
//! An edge joins a vertex of rank `r` to one of rank `r + 1`. It is drawn from
//! `(x_lower, r)` to `(x_upper + wrap, r + 1)` in the universal cover, so
//! `wrap` counts how often the edge crosses the seam `x = 0`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use num_rational::Ratio;

use crate::posetcore::{CoverGraph, RankedElement, Report};
use crate::Error;

pub type Coord = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripVertex {
    pub id: String,
    pub rank: i32,
    pub x: Coord,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StripEdge {
    pub lower: String,
    pub upper: String,
    pub wrap: i8,
}

impl StripEdge {
    pub fn new(lower: impl Into<String>, upper: impl Into<String>) -> Self {
        StripEdge { lower: lower.into(), upper: upper.into(), wrap: 0 }
    }

    pub fn wrapped(lower: impl Into<String>, upper: impl Into<String>, wrap: i8) -> Self {
        StripEdge { lower: lower.into(), upper: upper.into(), wrap }
    }
}

#[derive(Clone, Debug)]
pub struct RhombicStrip {
    /// Vertices grouped by rank (ascending), each group sorted by `x`.
    ranks: Vec<Vec<StripVertex>>,
    edges: Vec<StripEdge>,
}

/// A maximal chain, listed from the lowest rank to the highest.
pub type Flag = Vec<String>;

impl RhombicStrip {
    /// Groups vertices by rank and sorts every rank by `x`. Structural checks
    /// are left to [`validate_strip`].
    pub fn new(vertices: Vec<StripVertex>, edges: Vec<StripEdge>) -> Self {
        let mut by_rank: Vec<Vec<StripVertex>> = Vec::new();
        let mut vertices = vertices;
        vertices.sort_by_key(|v| (v.rank, v.x));
        for v in vertices {
            match by_rank.last_mut() {
                Some(group) if group[0].rank == v.rank => group.push(v),
                _ => by_rank.push(vec![v]),
            }
        }
        RhombicStrip { ranks: by_rank, edges }
    }

    pub fn ranks(&self) -> &[Vec<StripVertex>] {
        &self.ranks
    }

    pub fn edges(&self) -> &[StripEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.ranks.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &StripVertex> {
        self.ranks.iter().flatten()
    }

    /// Ids of one rank in increasing `x`.
    pub fn rank_order(&self, rank: i32) -> Vec<&str> {
        self.ranks
            .iter()
            .find(|g| g[0].rank == rank)
            .map(|g| g.iter().map(|v| v.id.as_str()).collect())
            .unwrap_or_default()
    }

    /// Applies `f` to every id, keeping the embedding.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> RhombicStrip {
        let vertices = self
            .vertices()
            .map(|v| StripVertex { id: f(&v.id), rank: v.rank, x: v.x })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| StripEdge { lower: f(&e.lower), upper: f(&e.upper), wrap: e.wrap })
            .collect();
        RhombicStrip::new(vertices, edges)
    }

    /// Serializes in the strip file format.
    pub fn to_text(&self, family: &str, n: usize) -> String {
        let mut s = format!("#strip family={family} n={n}\n");
        for group in &self.ranks {
            let _ = write!(s, "{}:", group[0].rank);
            for v in group {
                let _ = write!(s, " {}@{}/{}", v.id, v.x.numer(), v.x.denom());
            }
            s.push('\n');
        }
        s.push_str("edges:\n");
        for e in &self.edges {
            if e.wrap == 0 {
                let _ = writeln!(s, "{} {}", e.lower, e.upper);
            } else {
                let _ = writeln!(s, "{} {} {:+}", e.lower, e.upper, e.wrap);
            }
        }
        s
    }

    /// Parses the strip file format. Returns the family name, `n` and the
    /// strip.
    pub fn from_text(text: &str) -> Result<(String, usize, RhombicStrip), Error> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::input("empty strip file"))?;
        let body = header
            .strip_prefix("#strip")
            .ok_or_else(|| Error::input(format!("bad strip header: {header}")))?;
        let (mut family, mut n) = (None, None);
        for field in body.split_whitespace() {
            match field.split_once('=') {
                Some(("family", v)) => family = Some(v.to_string()),
                Some(("n", v)) => n = v.parse().ok(),
                _ => return Err(Error::input(format!("bad strip header field: {field}"))),
            }
        }
        let (family, n) = family.zip(n).ok_or_else(|| Error::input("incomplete strip header"))?;
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut in_edges = false;
        for line in lines {
            if line == "edges:" {
                in_edges = true;
                continue;
            }
            if in_edges {
                let parts: Vec<&str> = line.split_whitespace().collect();
                let wrap = match parts.as_slice() {
                    [_, _] => 0,
                    [_, _, w] => w.parse::<i8>().map_err(|_| Error::input(format!("bad wrap in: {line}")))?,
                    _ => return Err(Error::input(format!("bad edge line: {line}"))),
                };
                edges.push(StripEdge::wrapped(parts[0], parts[1], wrap));
                continue;
            }
            let (rank, rest) = line.split_once(':').ok_or_else(|| Error::input(format!("bad rank line: {line}")))?;
            let rank: i32 = rank.trim().parse().map_err(|_| Error::input(format!("bad rank: {rank}")))?;
            for item in rest.split_whitespace() {
                let (id, x) = item.rsplit_once('@').ok_or_else(|| Error::input(format!("bad vertex: {item}")))?;
                let (p, q) = x.split_once('/').ok_or_else(|| Error::input(format!("bad coordinate: {x}")))?;
                let p: i64 = p.parse().map_err(|_| Error::input(format!("bad coordinate: {x}")))?;
                let q: i64 = q.parse().map_err(|_| Error::input(format!("bad coordinate: {x}")))?;
                if q <= 0 {
                    return Err(Error::input(format!("bad coordinate: {x}")));
                }
                vertices.push(StripVertex { id: id.to_string(), rank, x: Coord::new(p, q) });
            }
        }
        Ok((family, n, RhombicStrip::new(vertices, edges)))
    }
}

/// Index-based view of a strip used by the validator and the sweep.
struct Embedded {
    ids: Vec<String>,
    rank: Vec<i32>,
    x: Vec<Coord>,
    /// Edges as (lower, upper, lifted displacement of upper relative to lower).
    edges: Vec<(usize, usize, Coord)>,
    /// Counterclockwise rotation at every vertex.
    rot: Vec<Vec<usize>>,
}

impl Embedded {
    fn build(strip: &RhombicStrip) -> Result<Self, Report> {
        let mut index = HashMap::new();
        let mut ids = Vec::new();
        let mut rank = Vec::new();
        let mut x = Vec::new();
        for v in strip.vertices() {
            if index.insert(v.id.clone(), ids.len()).is_some() {
                return Err(Report::fail(ids.len() + 1, format!("vertex {} appears twice", v.id)));
            }
            if v.x < Coord::from_integer(0) || v.x >= Coord::from_integer(1) {
                return Err(Report::fail(ids.len() + 1, format!("coordinate of {} outside [0,1)", v.id)));
            }
            ids.push(v.id.clone());
            rank.push(v.rank);
            x.push(v.x);
        }
        for group in &strip.ranks {
            for w in group.windows(2) {
                if w[0].x == w[1].x {
                    return Err(Report::fail(0, format!("{} and {} share a coordinate", w[0].id, w[1].id)));
                }
            }
        }
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        for (k, e) in strip.edges.iter().enumerate() {
            let pos = k + 1;
            let lo = *index.get(&e.lower).ok_or_else(|| Report::fail(pos, format!("edge endpoint {} unknown", e.lower)))?;
            let hi = *index.get(&e.upper).ok_or_else(|| Report::fail(pos, format!("edge endpoint {} unknown", e.upper)))?;
            if rank[hi] != rank[lo] + 1 {
                return Err(Report::fail(pos, format!("edge {} {} does not go up one rank", e.lower, e.upper)));
            }
            if !seen.insert((lo, hi)) {
                return Err(Report::fail(pos, format!("edge {} {} appears twice", e.lower, e.upper)));
            }
            let delta = x[hi] + Coord::from_integer(e.wrap as i64) - x[lo];
            edges.push((lo, hi, delta));
        }
        let mut rot: Vec<Vec<(bool, Coord, usize)>> = vec![Vec::new(); ids.len()];
        for &(lo, hi, d) in &edges {
            rot[lo].push((true, d, hi));
            rot[hi].push((false, -d, lo));
        }
        // Counterclockwise from east: up-edges by decreasing displacement,
        // then down-edges by increasing displacement.
        let rot = rot
            .into_iter()
            .map(|mut list| {
                list.sort_by(|a, b| match (a.0, b.0) {
                    (true, true) => b.1.cmp(&a.1),
                    (false, false) => a.1.cmp(&b.1),
                    (true, false) => std::cmp::Ordering::Less,
                    (false, true) => std::cmp::Ordering::Greater,
                });
                list.into_iter().map(|t| t.2).collect()
            })
            .collect();
        Ok(Embedded { ids, rank, x, edges, rot })
    }

    /// Faces as counterclockwise boundary walks.
    fn faces(&self) -> Vec<Vec<usize>> {
        let pos_in_rot: Vec<HashMap<usize, usize>> = self
            .rot
            .iter()
            .map(|r| r.iter().enumerate().map(|(i, &w)| (w, i)).collect())
            .collect();
        let mut used: HashSet<(usize, usize)> = HashSet::new();
        let mut faces = Vec::new();
        for u in 0..self.ids.len() {
            for &v in &self.rot[u] {
                if used.contains(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while used.insert((a, b)) {
                    face.push(a);
                    let r = &self.rot[b];
                    let i = pos_in_rot[b][&a];
                    let w = r[(i + r.len() - 1) % r.len()];
                    a = b;
                    b = w;
                }
                faces.push(face);
            }
        }
        faces
    }
}

/// Checks a strip against the cover graph it claims to span: spanning,
/// cover edges between consecutive ranks, distinct coordinates per rank, no
/// crossings, and rhombic faces.
pub fn validate_strip(strip: &RhombicStrip, graph: &CoverGraph) -> Report {
    let emb = match Embedded::build(strip) {
        Ok(e) => e,
        Err(r) => return r,
    };
    for (i, id) in emb.ids.iter().enumerate() {
        match graph.rank(id) {
            None => return Report::fail(0, format!("vertex {id} is not an element of the poset")),
            Some(r) if r != emb.rank[i] => return Report::fail(0, format!("vertex {id} drawn at rank {} instead of {r}", emb.rank[i])),
            _ => {}
        }
    }
    if emb.ids.len() != graph.len() {
        let present: HashSet<&str> = emb.ids.iter().map(String::as_str).collect();
        let missing = graph.elements().iter().find(|e| !present.contains(e.id.as_str()));
        return Report::fail(0, format!("strip is not spanning, missing {}", missing.map_or("?", |e| e.id.as_str())));
    }
    for (k, &(lo, hi, _)) in emb.edges.iter().enumerate() {
        if !graph.has_edge(&emb.ids[lo], &emb.ids[hi]) {
            return Report::fail(k + 1, format!("edge {} {} is not a cover relation", emb.ids[lo], emb.ids[hi]));
        }
    }
    if let Some((e, f)) = find_crossing(&emb) {
        let name = |k: usize| format!("{}-{}", emb.ids[emb.edges[k].0], emb.ids[emb.edges[k].1]);
        return Report::fail(e + 1, format!("edges {} and {} cross", name(e), name(f)));
    }
    let faces = emb.faces();
    for face in &faces {
        let names: Vec<&str> = face.iter().map(|&v| emb.ids[v].as_str()).collect();
        let ranks: Vec<i32> = face.iter().map(|&v| emb.rank[v]).collect();
        let distinct: HashSet<usize> = face.iter().copied().collect();
        let lo = ranks.iter().min().copied().unwrap_or(0);
        let hi = ranks.iter().max().copied().unwrap_or(0);
        if face.len() != 4 || distinct.len() != 4 || hi - lo != 2 {
            return Report::fail(0, format!("face ({}) is not a rhombus", names.join(",")));
        }
    }
    let euler = emb.ids.len() as i64 - emb.edges.len() as i64 + faces.len() as i64;
    if euler != 2 {
        return Report::fail(0, format!("embedding has Euler characteristic {euler}, expected 2"));
    }
    Report::Ok
}

fn find_crossing(emb: &Embedded) -> Option<(usize, usize)> {
    let mut bands: HashMap<i32, Vec<usize>> = HashMap::new();
    for (k, &(lo, _, _)) in emb.edges.iter().enumerate() {
        bands.entry(emb.rank[lo]).or_default().push(k);
    }
    let zero = Coord::from_integer(0);
    let mut keys: Vec<i32> = bands.keys().copied().collect();
    keys.sort_unstable();
    for r in keys {
        let band = &bands[&r];
        for (i, &e) in band.iter().enumerate() {
            let (le, _, de) = emb.edges[e];
            for &f in &band[i + 1..] {
                let (lf, _, df) = emb.edges[f];
                for k in -2..=2 {
                    let d_low = emb.x[lf] + Coord::from_integer(k) - emb.x[le];
                    let d_up = d_low + df - de;
                    if (d_low < zero && d_up > zero) || (d_low > zero && d_up < zero) || (d_low == zero && d_up == zero) {
                        return Some((e, f));
                    }
                }
            }
        }
    }
    None
}

/// Every face of a valid strip as `(bottom, left, top, right)`.
pub fn rhombi(strip: &RhombicStrip) -> Result<Vec<[String; 4]>, Error> {
    let emb = Embedded::build(strip).map_err(|r| Error::structure(r.to_string()))?;
    emb.faces()
        .into_iter()
        .map(|face| {
            if face.len() != 4 {
                return Err(Error::structure("face is not a rhombus"));
            }
            // counterclockwise: bottom, right, top, left
            let b = (0..4).min_by_key(|&i| emb.rank[face[i]]).expect("four corners");
            let id = |k: usize| emb.ids[face[(b + k) % 4]].clone();
            Ok([id(0), id(3), id(2), id(1)])
        })
        .collect()
}

/// Sweeps a chain from left to right across the strip, one rhombus at a
/// time. Starts at the leftmost chain; when several rhombi are available the
/// one at the lowest rank is taken. Returns the cyclic sequence of flags.
pub fn sweep_flags(strip: &RhombicStrip) -> Result<Vec<Flag>, Error> {
    let faces = rhombi(strip)?;
    let start: Flag = strip.ranks.iter().map(|g| g[0].id.clone()).collect();
    let edge_set: HashSet<(&str, &str)> = strip.edges.iter().map(|e| (e.lower.as_str(), e.upper.as_str())).collect();
    for w in start.windows(2) {
        if !edge_set.contains(&(w[0].as_str(), w[1].as_str())) {
            return Err(Error::structure(format!("leftmost vertices {} and {} are not adjacent", w[0], w[1])));
        }
    }
    let mut next: HashMap<(&str, &str, &str), &str> = HashMap::new();
    for [b, l, t, r] in &faces {
        next.insert((b.as_str(), l.as_str(), t.as_str()), r.as_str());
    }
    let mut flag = start.clone();
    let mut out = vec![start.clone()];
    // An element back at its starting vertex has gone once around the
    // cylinder and stays put until the rest of the chain catches up.
    let mut moved = vec![false; flag.len()];
    loop {
        let step = (1..flag.len().saturating_sub(1)).filter(|&i| !moved[i] || flag[i] != start[i]).find_map(|i| {
            next.get(&(flag[i - 1].as_str(), flag[i].as_str(), flag[i + 1].as_str())).map(|r| (i, r.to_string()))
        });
        let Some((i, r)) = step else {
            return Err(Error::structure(format!("sweep stuck at flag {}", flag.join(">"))));
        };
        flag[i] = r;
        moved[i] = true;
        if flag == start {
            break;
        }
        if out.len() > faces.len() {
            return Err(Error::structure("sweep does not return to its start"));
        }
        out.push(flag.clone());
    }
    if out.len() != faces.len() {
        return Err(Error::structure(format!("sweep crossed {} of {} rhombi", out.len(), faces.len())));
    }
    Ok(out)
}

/// Checks that a cyclic flag sequence is a facet-Hamiltonian cycle of the
/// omnitruncation: consecutive flags differ in one position, no flag repeats
/// and, for every face in `faces`, the flags containing it form one nonempty
/// cyclic interval.
pub fn check_facet_hamiltonian_flags(flags: &[Flag], faces: &[RankedElement]) -> Report {
    if flags.is_empty() {
        return Report::fail(0, "empty flag listing");
    }
    let len = flags[0].len();
    let mut seen = HashSet::new();
    for (i, f) in flags.iter().enumerate() {
        if f.len() != len {
            return Report::fail(i + 1, "flags of different lengths");
        }
        if !seen.insert(f) {
            return Report::fail(i + 1, format!("flag {} repeated", f.join(">")));
        }
    }
    for (i, f) in flags.iter().enumerate() {
        let g = &flags[(i + 1) % flags.len()];
        let diff = f.iter().zip(g).filter(|(a, b)| a != b).count();
        if flags.len() > 1 && diff != 1 {
            return Report::fail(i + 1, format!("flags {} and {} differ in {diff} positions", f.join(">"), g.join(">")));
        }
    }
    let mut positions: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, f) in flags.iter().enumerate() {
        for id in f {
            positions.entry(id.as_str()).or_default().push(i);
        }
    }
    let m = flags.len();
    for face in faces {
        let Some(pos) = positions.get(face.id.as_str()) else {
            return Report::fail(0, format!("face {} is never visited", face.id));
        };
        if pos.len() == m {
            continue;
        }
        let member: HashSet<usize> = pos.iter().copied().collect();
        let starts: Vec<usize> = pos.iter().copied().filter(|&i| !member.contains(&((i + m - 1) % m))).collect();
        if starts.len() != 1 {
            let arc = |s: usize| {
                let mut e = s;
                while member.contains(&((e + 1) % m)) {
                    e = (e + 1) % m;
                }
                format!("[{}..{}]", s + 1, e + 1)
            };
            return Report::fail(starts[0] + 1, format!("face {} visited in disjoint arcs {} and {}", face.id, arc(starts[0]), arc(starts[1])));
        }
    }
    Report::Ok
}

/// Formats a flag as `id0>id1>...`.
pub fn flag_to_line(flag: &Flag) -> String {
    flag.join(">")
}

/// Parses a flag line.
pub fn flag_from_line(line: &str) -> Flag {
    line.trim().split('>').map(str::to_string).collect()
}
