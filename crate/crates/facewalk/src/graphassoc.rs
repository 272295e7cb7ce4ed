//! Faces of graph associahedra of chordal graphs as tubings.
//!
//! Input graphs use labels `1..=n`. Internally vertices are renumbered along
//! a perfect elimination order found by maximum cardinality search, so that
//! every vertex sees a clique among its predecessors and the first two
//! vertices are adjacent. Ids are written with the input labels: tubes sorted
//! by size and then lexicographically, each as `{a,b,c}`, joined by `;`.

use std::collections::HashSet;

use crate::lazy::{Expansion, LazyListing};
use crate::posetcore::{CoverGraph, RankedElement, EMPTY};
use crate::Error;

/// Largest graph accepted by [`enumerate_tubings`].
pub const TUBING_BUDGET: usize = 9;

/// A chordal graph stored in perfect elimination order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordalGraph {
    adj: Vec<u64>,
    // input label of each internal vertex
    labels: Vec<usize>,
}

/// A set of tubes, as vertex bitmasks over the internal order, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tubing {
    tubes: Vec<u64>,
}

impl Tubing {
    pub fn new(mut tubes: Vec<u64>) -> Self {
        tubes.sort_unstable();
        tubes.dedup();
        Tubing { tubes }
    }

    pub fn tubes(&self) -> &[u64] {
        &self.tubes
    }

    pub fn len(&self) -> usize {
        self.tubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tubes.is_empty()
    }

    fn support(&self) -> u64 {
        self.tubes.iter().fold(0, |a, &t| a | t)
    }

    /// Covered by `other` in the reverse inclusion order.
    pub fn is_covered_by(&self, other: &Tubing) -> bool {
        self.tubes.len() == other.tubes.len() + 1 && other.tubes.iter().all(|t| self.tubes.binary_search(t).is_ok())
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

impl ChordalGraph {
    /// Builds the graph on labels `1..=n` and relabels it by maximum
    /// cardinality search. Rejects edgeless and non-chordal graphs.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let adj = label_adjacency(n, edges)?;
        let start = (0..n)
            .find(|&v| adj[v] != 0)
            .ok_or_else(|| Error::input("graph associahedron needs at least one edge"))?;
        let order = max_cardinality_search(&adj, start);
        let g = ChordalGraph::reorder(&adj, &order);
        g.check_peo()?;
        Ok(g)
    }

    /// Uses the labels as given; they must already be a perfect elimination
    /// order.
    pub fn from_peo(n: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let adj = label_adjacency(n, edges)?;
        let g = ChordalGraph::reorder(&adj, &(0..n).collect::<Vec<_>>());
        g.check_peo()?;
        Ok(g)
    }

    /// Parses `#graph n=<n>` followed by one edge `a b` per line.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with("//"));
        let header = lines.next().ok_or_else(|| Error::input("empty graph file"))?;
        let n: usize = header
            .strip_prefix("#graph")
            .and_then(|r| r.trim().strip_prefix("n="))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::input(format!("bad graph header: {header}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [a, b] = parts.as_slice() else {
                return Err(Error::input(format!("bad edge line: {line}")));
            };
            let a = a.parse().map_err(|_| Error::input(format!("bad edge line: {line}")))?;
            let b = b.parse().map_err(|_| Error::input(format!("bad edge line: {line}")))?;
            edges.push((a, b));
        }
        ChordalGraph::new(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self, Error> {
        let edges: Vec<_> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
        ChordalGraph::new(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self, Error> {
        let edges: Vec<_> = (1..n).map(|a| (a, a + 1)).collect();
        ChordalGraph::new(n, &edges)
    }

    /// Perfect matching with `k` edges.
    pub fn matching(k: usize) -> Result<Self, Error> {
        let edges: Vec<_> = (0..k).map(|i| (2 * i + 1, 2 * i + 2)).collect();
        ChordalGraph::new(2 * k, &edges)
    }

    fn reorder(adj: &[u64], order: &[usize]) -> Self {
        let mut pos = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let new_adj = order.iter().map(|&v| bits(adj[v]).fold(0u64, |m, w| m | 1 << pos[w])).collect();
        ChordalGraph { adj: new_adj, labels: order.iter().map(|&v| v + 1).collect() }
    }

    fn check_peo(&self) -> Result<(), Error> {
        for v in 0..self.n() {
            let earlier = self.adj[v] & ((1u64 << v) - 1);
            for w in bits(earlier) {
                if earlier & !(1 << w) & !self.adj[w] != 0 {
                    return Err(Error::input(format!(
                        "not chordal: earlier neighbors of {} do not form a clique",
                        self.labels[v]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Induced subgraph on the first `m` vertices of the internal order.
    pub fn prefix(&self, m: usize) -> ChordalGraph {
        let keep = (1u64 << m) - 1;
        ChordalGraph { adj: self.adj[..m].iter().map(|a| a & keep).collect(), labels: self.labels[..m].to_vec() }
    }

    /// Input label of each internal vertex.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Neighbors of internal vertex `v`.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    fn is_connected(&self, mask: u64) -> bool {
        if mask == 0 {
            return false;
        }
        let mut seen = mask & mask.wrapping_neg();
        loop {
            let grow = bits(seen).fold(seen, |s, v| s | (self.adj[v] & mask));
            if grow == seen {
                return seen == mask;
            }
            seen = grow;
        }
    }

    pub fn is_tube(&self, mask: u64) -> bool {
        mask >> self.n() == 0 && self.is_connected(mask)
    }

    /// Nested, or the union does not induce a connected subgraph.
    pub fn compatible(&self, a: u64, b: u64) -> Result<bool, Error> {
        if !self.is_tube(a) || !self.is_tube(b) {
            return Err(Error::input("not a tube"));
        }
        Ok(a & b == a || a & b == b || !self.is_connected(a | b))
    }

    /// Vertex sets of the connected components among the first `m` vertices.
    fn components(&self, m: usize) -> Vec<u64> {
        let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mut left = all;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            loop {
                let grow = bits(comp).fold(comp, |s, v| s | (self.adj[v] & all));
                if grow == comp {
                    break;
                }
                comp = grow;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    /// Checks that `t` is a tubing of the subgraph on its support, which must
    /// be a prefix of the internal order.
    pub fn validate_tubing(&self, t: &Tubing) -> Result<usize, Error> {
        let support = t.support();
        let m = support.count_ones() as usize;
        if support != (1u64 << m) - 1 || m > self.n() {
            return Err(Error::input("tubing support is not a prefix of the vertex order"));
        }
        for (i, &a) in t.tubes.iter().enumerate() {
            if !self.is_tube(a) {
                return Err(Error::input(format!("{} is not a tube", self.tube_label(a))));
            }
            for &b in &t.tubes[i + 1..] {
                if !self.compatible(a, b)? {
                    return Err(Error::input(format!("tubes {} and {} are incompatible", self.tube_label(a), self.tube_label(b))));
                }
            }
        }
        for c in self.components(m) {
            if t.tubes.binary_search(&c).is_err() {
                return Err(Error::input(format!("component {} missing", self.tube_label(c))));
            }
        }
        Ok(m)
    }

    /// Tubes meeting the neighborhood of the next vertex, innermost first,
    /// and the remaining tubes.
    fn split(&self, t: &Tubing) -> Result<(usize, Vec<u64>, Vec<u64>), Error> {
        let m = self.validate_tubing(t)?;
        if m >= self.n() {
            return Err(Error::input("tubing already covers every vertex"));
        }
        let nbrs = self.adj[m];
        let (mut meet, rest): (Vec<u64>, Vec<u64>) = t.tubes.iter().partition(|&&x| x & nbrs != 0);
        meet.sort_by_key(|x| x.count_ones());
        Ok((m, meet, rest))
    }

    /// `č_i`: inner tubes `T_1..T_i` kept, `T_j + v` for `j >= i` (with
    /// `T_0 + v = {v}`), where `v` is the next vertex.
    pub fn insert_check(&self, t: &Tubing, i: usize) -> Result<Tubing, Error> {
        let (m, meet, mut tubes) = self.split(t)?;
        let k = meet.len();
        if i > k {
            return Err(Error::input(format!("check index {i} out of range 0..={k}")));
        }
        let v = 1u64 << m;
        tubes.extend(&meet[..i]);
        if i == 0 {
            tubes.push(v);
        }
        tubes.extend(meet[i.saturating_sub(1)..].iter().map(|&x| x | v));
        Ok(Tubing::new(tubes))
    }

    /// `ĉ_i`, `1 <= i <= k`: inner tubes `T_1..T_{i-1}` kept, `T_j + v` for
    /// `j >= i`.
    pub fn insert_hat(&self, t: &Tubing, i: usize) -> Result<Tubing, Error> {
        let (m, meet, mut tubes) = self.split(t)?;
        let k = meet.len();
        if i == 0 || i > k {
            return Err(Error::input(format!("hat index {i} out of range 1..={k}")));
        }
        let v = 1u64 << m;
        tubes.extend(&meet[..i - 1]);
        tubes.extend(meet[i - 1..].iter().map(|&x| x | v));
        Ok(Tubing::new(tubes))
    }

    /// `č_0, ĉ_1, č_1, ..., ĉ_k, č_k`.
    pub fn insertion_sequence(&self, t: &Tubing) -> Result<Vec<Tubing>, Error> {
        let (_, meet, _) = self.split(t)?;
        let mut out = vec![self.insert_check(t, 0)?];
        for i in 1..=meet.len() {
            out.push(self.insert_hat(t, i)?);
            out.push(self.insert_check(t, i)?);
        }
        Ok(out)
    }

    fn tube_labels(&self, mask: u64) -> Vec<usize> {
        let mut l: Vec<usize> = bits(mask).map(|v| self.labels[v]).collect();
        l.sort_unstable();
        l
    }

    fn tube_label(&self, mask: u64) -> String {
        let l: Vec<String> = self.tube_labels(mask).iter().map(usize::to_string).collect();
        format!("{{{}}}", l.join(","))
    }

    pub fn tubing_id(&self, t: &Tubing) -> String {
        let mut tubes: Vec<Vec<usize>> = t.tubes.iter().map(|&x| self.tube_labels(x)).collect();
        tubes.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let parts: Vec<String> = tubes
            .iter()
            .map(|l| format!("{{{}}}", l.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        parts.join(";")
    }

    pub fn rank(&self, t: &Tubing) -> i32 {
        self.n() as i32 - t.len() as i32
    }
}

fn label_adjacency(n: usize, edges: &[(usize, usize)]) -> Result<Vec<u64>, Error> {
    if n == 0 || n > 63 {
        return Err(Error::input("graph must have 1..=63 vertices"));
    }
    let mut adj = vec![0u64; n];
    for &(a, b) in edges {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(Error::input(format!("bad edge {a} {b}")));
        }
        adj[a - 1] |= 1 << (b - 1);
        adj[b - 1] |= 1 << (a - 1);
    }
    Ok(adj)
}

/// Visits vertices by decreasing number of visited neighbors, ties by
/// label; the visiting order is a perfect elimination order read backwards
/// exactly when the graph is chordal.
fn max_cardinality_search(adj: &[u64], start: usize) -> Vec<usize> {
    let n = adj.len();
    let mut weight = vec![0usize; n];
    let mut visited = 0u64;
    let mut order = Vec::with_capacity(n);
    let mut next = Some(start);
    while let Some(v) = next {
        order.push(v);
        visited |= 1 << v;
        for w in bits(adj[v] & !visited) {
            weight[w] += 1;
        }
        next = (0..n).filter(|&w| visited >> w & 1 == 0).max_by_key(|&w| (weight[w], std::cmp::Reverse(w)));
    }
    order
}

/// All tubings of `h`, which may have at most [`TUBING_BUDGET`] vertices.
pub fn enumerate_tubings(h: &ChordalGraph) -> Result<Vec<Tubing>, Error> {
    enumerate_tubings_within(h, TUBING_BUDGET)
}

pub fn enumerate_tubings_within(h: &ChordalGraph, max_vertices: usize) -> Result<Vec<Tubing>, Error> {
    let n = h.n();
    if n > max_vertices {
        return Err(Error::budget(format!("instance too large: {n} vertices, budget {max_vertices}")));
    }
    let comps = h.components(n);
    let tubes: Vec<u64> = (1u64..1 << n).filter(|&m| h.is_connected(m) && !comps.contains(&m)).collect();
    let mut out = Vec::new();
    let mut chosen = comps.clone();
    fn go(h: &ChordalGraph, tubes: &[u64], from: usize, chosen: &mut Vec<u64>, out: &mut Vec<Tubing>) {
        out.push(Tubing::new(chosen.clone()));
        for i in from..tubes.len() {
            let t = tubes[i];
            if chosen.iter().all(|&c| c & t == c || c & t == t || !h.is_connected(c | t)) {
                chosen.push(t);
                go(h, tubes, i + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    go(h, &tubes, 0, &mut chosen, &mut out);
    Ok(out)
}

/// Brute-force cover graph of the face lattice of the graph associahedron.
pub fn cover_graph(h: &ChordalGraph) -> Result<CoverGraph, Error> {
    let objects = enumerate_tubings(h)?
        .into_iter()
        .map(|t| {
            let e = RankedElement::new(h.tubing_id(&t), h.rank(&t));
            (t, e)
        })
        .collect();
    Ok(CoverGraph::brute(objects, |a, b| a.is_covered_by(b)))
}

struct TubingExpansion {
    h: ChordalGraph,
}

impl Expansion for TubingExpansion {
    type Face = Tubing;

    fn base(&self) -> Vec<Tubing> {
        vec![Tubing::new(vec![0b01, 0b11]), Tubing::new(vec![0b11]), Tubing::new(vec![0b11, 0b10])]
    }

    fn expand(&self, _level: usize, parent: &Tubing, index: usize) -> Vec<Tubing> {
        let mut seq = self.h.insertion_sequence(parent).expect("parent is a tubing of a prefix");
        if index.is_multiple_of(2) {
            seq.reverse();
        }
        seq
    }
}

/// Hamiltonian cycle in the cover graph of the face lattice of the graph
/// associahedron of `h`, ending with [`EMPTY`].
pub fn face_listing_graph_assoc(h: &ChordalGraph) -> Result<impl Iterator<Item = String>, Error> {
    let n = h.n();
    if n < 2 || h.adj[1] & 1 == 0 {
        return Err(Error::input("the first two vertices of the elimination order must be adjacent"));
    }
    let ids = h.clone();
    let lazy = LazyListing::new(TubingExpansion { h: h.clone() }, n - 2);
    Ok(lazy.map(move |t| ids.tubing_id(&t)).chain(std::iter::once(EMPTY.to_string())))
}

/// One representative per isomorphism class of chordal graphs on exactly
/// `n <= 6` vertices with at least one edge, as edge lists.
pub fn chordal_graphs(n: usize) -> Result<Vec<Vec<(usize, usize)>>, Error> {
    if !(2..=6).contains(&n) {
        return Err(Error::input("chordal graph enumeration supports 2..=6 vertices"));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).expect("pair");
    let perms = permutations(n);
    let maps: Vec<Vec<usize>> =
        perms.iter().map(|p| pairs.iter().map(|&(a, b)| index(p[a], p[b])).collect()).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for code in 1u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> =
            (0..pairs.len()).filter(|&i| code >> i & 1 == 1).map(|i| (pairs[i].0 + 1, pairs[i].1 + 1)).collect();
        if ChordalGraph::new(n, &edges).is_err() {
            continue;
        }
        let canon = maps
            .iter()
            .map(|m| (0..pairs.len()).filter(|&i| code >> i & 1 == 1).fold(0u32, |c, i| c | 1 << m[i]))
            .min()
            .expect("nonempty");
        if seen.insert(canon) {
            out.push(edges);
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=k).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, k);
                    q
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_graph() {
        let h = ChordalGraph::path(2).unwrap();
        assert!(h.compatible(0b01, 0b11).unwrap());
        assert!(!h.compatible(0b01, 0b10).unwrap());
        assert_eq!(enumerate_tubings(&h).unwrap().len(), 3);
        let l: Vec<String> = face_listing_graph_assoc(&h).unwrap().collect();
        assert_eq!(l, ["{1};{1,2}", "{1,2}", "{2};{1,2}", "EMPTY"]);
    }

    #[test]
    fn rejects_bad_graphs() {
        let c4 = [(1, 2), (2, 3), (3, 4), (4, 1)];
        assert!(ChordalGraph::new(4, &c4).is_err());
        assert!(ChordalGraph::new(3, &[]).is_err());
        assert!(ChordalGraph::from_peo(3, &[(1, 3), (2, 3)]).is_err());
        assert!(ChordalGraph::from_peo(3, &[(1, 3), (2, 3), (1, 2)]).is_ok());
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_tubings(&ChordalGraph::complete(3).unwrap()).unwrap().len(), 13);
        assert_eq!(enumerate_tubings(&ChordalGraph::path(3).unwrap()).unwrap().len(), 11);
        assert_eq!(chordal_graphs(4).unwrap().len(), 9);
    }

    #[test]
    fn single_edge_with_isolated_vertices() {
        let h = ChordalGraph::new(3, &[(2, 3)]).unwrap();
        assert_eq!(h.labels()[..2], [2, 3]);
        let l: Vec<String> = face_listing_graph_assoc(&h).unwrap().collect();
        assert_eq!(l.len(), 4);
    }
}
