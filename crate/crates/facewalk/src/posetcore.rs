//! Graded posets, cover graphs and listings, together with the checks every
//! family generator is measured against.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::Error;

/// Id of the bottom element in every family.
pub const EMPTY: &str = "EMPTY";

/// Default vertex budget of [`brute_force_hamiltonian`].
pub const DEFAULT_HAM_BUDGET: usize = 5000;

/// Node budget of the backtracking search behind [`brute_force_hamiltonian`].
const SEARCH_STEPS: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankedElement {
    pub id: String,
    pub rank: i32,
}

impl RankedElement {
    pub fn new(id: impl Into<String>, rank: i32) -> Self {
        RankedElement { id: id.into(), rank }
    }

    pub fn bottom() -> Self {
        RankedElement::new(EMPTY, -1)
    }
}

/// Elements of a graded poset and its cover relations.
///
/// Vertices are addressed either by id or by their index in
/// [`CoverGraph::elements`].
#[derive(Clone, Debug)]
pub struct CoverGraph {
    elements: Vec<RankedElement>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
}

impl CoverGraph {
    /// Builds the graph, rejecting duplicate ids, unknown endpoints and
    /// edges whose ranks do not differ by exactly one.
    pub fn new<I, S>(elements: Vec<RankedElement>, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.id.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate id {}", e.id)));
            }
        }
        let mut adj = vec![Vec::new(); elements.len()];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index.get(a).ok_or_else(|| Error::input(format!("unknown id {a}")))?;
            let ib = *index.get(b).ok_or_else(|| Error::input(format!("unknown id {b}")))?;
            if (elements[ia].rank - elements[ib].rank).abs() != 1 {
                return Err(Error::input(format!("edge {a} {b} does not join consecutive ranks")));
            }
            adj[ia].push(ib);
            adj[ib].push(ia);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(CoverGraph { elements, index, adj })
    }

    /// Brute-force cover graph: tests `covers(lower, upper)` on every pair of
    /// objects in consecutive ranks. A bottom element is added below all
    /// rank-0 objects.
    pub fn brute<T>(objects: Vec<(T, RankedElement)>, covers: impl Fn(&T, &T) -> bool) -> Self {
        let mut by_rank: HashMap<i32, Vec<usize>> = HashMap::new();
        for (i, (_, e)) in objects.iter().enumerate() {
            by_rank.entry(e.rank).or_default().push(i);
        }
        let mut elements: Vec<RankedElement> = objects.iter().map(|(_, e)| e.clone()).collect();
        let bottom = elements.len();
        elements.push(RankedElement::bottom());
        let mut adj = vec![Vec::new(); elements.len()];
        for (&r, lows) in &by_rank {
            if r == 0 {
                for &i in lows {
                    adj[i].push(bottom);
                    adj[bottom].push(i);
                }
            }
            let Some(highs) = by_rank.get(&(r + 1)) else { continue };
            for &i in lows {
                for &j in highs {
                    if covers(&objects[i].0, &objects[j].0) {
                        adj[i].push(j);
                        adj[j].push(i);
                    }
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let index = elements.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
        CoverGraph { elements, index, adj }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[RankedElement] {
        &self.elements
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn rank(&self, id: &str) -> Option<i32> {
        self.index_of(id).map(|i| self.elements[i].rank)
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn has_edge_idx(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.has_edge_idx(i, j),
            _ => false,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// All edges as id pairs, lower rank first.
    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if i < j {
                    let (lo, hi) = if self.elements[i].rank < self.elements[j].rank { (i, j) } else { (j, i) };
                    out.push((self.elements[lo].id.clone(), self.elements[hi].id.clone()));
                }
            }
        }
        out
    }
}

/// A streaming face generator. The returned id borrows from the generator
/// and is valid until the next call.
pub trait FaceStream {
    /// Next face id; the last one is always [`EMPTY`].
    fn next_face(&mut self) -> Option<&str>;

    /// Work done by the last step, in levels inspected.
    fn last_work(&self) -> usize;
}

/// A sequence of distinct ids, read cyclically when `cyclic` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Listing {
    pub ids: Vec<String>,
    pub cyclic: bool,
}

impl Listing {
    pub fn cyclic(ids: Vec<String>) -> Self {
        Listing { ids, cyclic: true }
    }

    pub fn path(ids: Vec<String>) -> Self {
        Listing { ids, cyclic: false }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Outcome of a verification. Positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Report {
    Ok,
    Fail { position: usize, reason: String },
}

impl Report {
    pub fn fail(position: usize, reason: impl Into<String>) -> Self {
        Report::Fail { position, reason: reason.into() }
    }

    pub fn is_ok(&self) -> bool {
        matches!(self, Report::Ok)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Ok => write!(f, "OK"),
            Report::Fail { position, reason } => write!(f, "FAIL {position} {reason}"),
        }
    }
}

/// Checks that `listing` visits every element of `graph` exactly once and
/// that consecutive entries (and the wrap-around pair, if cyclic) are covers.
pub fn check_hamiltonian(graph: &CoverGraph, listing: &Listing) -> Report {
    if listing.is_empty() {
        return Report::fail(0, "empty listing");
    }
    let mut seen = vec![false; graph.len()];
    let mut prev: Option<usize> = None;
    for (pos, id) in listing.ids.iter().enumerate() {
        let Some(i) = graph.index_of(id) else {
            return Report::fail(pos + 1, format!("unknown id {id}"));
        };
        if seen[i] {
            return Report::fail(pos + 1, format!("duplicate id {id}"));
        }
        seen[i] = true;
        if let Some(p) = prev {
            if !graph.has_edge_idx(p, i) {
                return Report::fail(pos + 1, format!("{} {} is not a cover pair", graph.elements[p].id, id));
            }
        }
        prev = Some(i);
    }
    if listing.len() < graph.len() {
        let missing = seen.iter().position(|s| !s).expect("some element unseen");
        return Report::fail(
            listing.len(),
            format!("not spanning: {} of {} elements missing, e.g. {}", graph.len() - listing.len(), graph.len(), graph.elements[missing].id),
        );
    }
    if listing.cyclic && listing.len() > 1 {
        let first = graph.index_of(&listing.ids[0]).expect("checked above");
        let last = prev.expect("nonempty");
        if !graph.has_edge_idx(last, first) {
            let id = &listing.ids[listing.len() - 1];
            return Report::fail(listing.len(), format!("wrap-around {id} {} is not a cover pair", listing.ids[0]));
        }
    }
    Report::Ok
}

/// Searches for a Hamiltonian cycle by backtracking. Branches are tried in
/// ascending order of remaining degree, ties broken by id, so the result is
/// deterministic.
pub fn brute_force_hamiltonian(graph: &CoverGraph, budget: usize) -> Result<Option<Listing>, Error> {
    let n = graph.len();
    if n > budget {
        return Err(Error::budget(format!("instance too large: {n} vertices, budget {budget}")));
    }
    if n < 3 {
        return Ok(None);
    }
    let even = graph.elements.iter().filter(|e| e.rank.rem_euclid(2) == 0).count();
    if even * 2 != n {
        return Ok(None);
    }
    if (0..n).any(|i| graph.adj[i].len() < 2) {
        return Ok(None);
    }
    let order_key = |i: usize, deg: usize| (deg, graph.elements[i].id.clone());
    let start = (0..n).min_by_key(|&i| order_key(i, graph.adj[i].len())).expect("nonempty");

    let mut search = HamSearch {
        graph,
        visited: vec![false; n],
        free_deg: graph.adj.iter().map(Vec::len).collect(),
        path: Vec::with_capacity(n),
        steps: 0,
    };
    search.visit(start);
    let found = search.extend(start)?;
    Ok(found.then(|| Listing::cyclic(search.path.iter().map(|&i| graph.elements[i].id.clone()).collect())))
}

struct HamSearch<'a> {
    graph: &'a CoverGraph,
    visited: Vec<bool>,
    // number of unvisited neighbors
    free_deg: Vec<usize>,
    path: Vec<usize>,
    steps: u64,
}

impl HamSearch<'_> {
    fn visit(&mut self, v: usize) {
        self.visited[v] = true;
        self.path.push(v);
        for &w in &self.graph.adj[v] {
            self.free_deg[w] -= 1;
        }
    }

    fn unvisit(&mut self, v: usize) {
        self.visited[v] = false;
        self.path.pop();
        for &w in &self.graph.adj[v] {
            self.free_deg[w] += 1;
        }
    }

    fn extend(&mut self, v: usize) -> Result<bool, Error> {
        self.steps += 1;
        if self.steps > SEARCH_STEPS {
            return Err(Error::budget("instance too large: search step budget exhausted"));
        }
        let n = self.graph.len();
        let start = self.path[0];
        if self.path.len() == n {
            return Ok(self.graph.has_edge_idx(v, start));
        }
        // Every unvisited vertex next to the current end or the vertex just
        // buried inside the path still needs two usable neighbors.
        let usable = |w: usize| {
            self.free_deg[w] + self.graph.has_edge_idx(w, v) as usize + self.graph.has_edge_idx(w, start) as usize
        };
        let prev = self.path.len().checked_sub(2).map(|i| self.path[i]);
        let around = self.graph.adj[v].iter().chain(prev.map_or(&[][..], |p| &self.graph.adj[p][..]));
        for &w in around {
            if !self.visited[w] && usable(w) < 2 {
                return Ok(false);
            }
        }
        let mut next: Vec<usize> = self.graph.adj[v].iter().copied().filter(|&w| !self.visited[w]).collect();
        next.sort_by(|&a, &b| {
            (self.free_deg[a], &self.graph.elements[a].id).cmp(&(self.free_deg[b], &self.graph.elements[b].id))
        });
        for w in next {
            self.visit(w);
            if self.extend(w)? {
                return Ok(true);
            }
            self.unvisit(w);
        }
        Ok(false)
    }
}

/// Number of elements per rank, from rank -1 up to the maximum rank.
pub fn f_vector(elements: &[RankedElement]) -> Result<Vec<u64>, Error> {
    let max = elements.iter().map(|e| e.rank).max().ok_or_else(|| Error::input("no elements"))?;
    if elements.iter().any(|e| e.rank < -1) {
        return Err(Error::input("rank below -1"));
    }
    let mut f = vec![0u64; (max + 2) as usize];
    for e in elements {
        f[(e.rank + 1) as usize] += 1;
    }
    if f[0] != 1 {
        return Err(Error::input(format!("expected one bottom element, found {}", f[0])));
    }
    if let Some(gap) = f.iter().position(|&c| c == 0) {
        return Err(Error::input(format!("no element of rank {}", gap as i32 - 1)));
    }
    Ok(f)
}

/// Euler–Poincaré: the alternating sum of the f-vector (starting at rank -1)
/// vanishes.
pub fn check_euler(f: &[u64]) -> bool {
    let sum: i128 = f
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { -(c as i128) } else { c as i128 })
        .sum();
    sum == 0
}

/// Header line of a listing file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListingHeader {
    pub family: String,
    pub n: usize,
    pub cyclic: bool,
}

impl fmt::Display for ListingHeader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#family={} n={} cyclic={}", self.family, self.n, self.cyclic as u8)
    }
}

impl ListingHeader {
    pub fn parse(line: &str) -> Result<Self, Error> {
        let body = line
            .strip_prefix('#')
            .ok_or_else(|| Error::input(format!("bad listing header: {line}")))?;
        let (mut family, mut n, mut cyclic) = (None, None, None);
        for field in body.split_whitespace() {
            match field.split_once('=') {
                Some(("family", v)) => family = Some(v.to_string()),
                Some(("n", v)) => n = v.parse().ok(),
                Some(("cyclic", "0")) => cyclic = Some(false),
                Some(("cyclic", "1")) => cyclic = Some(true),
                _ => return Err(Error::input(format!("bad header field: {field}"))),
            }
        }
        match (family, n, cyclic) {
            (Some(family), Some(n), Some(cyclic)) => Ok(ListingHeader { family, n, cyclic }),
            _ => Err(Error::input(format!("incomplete listing header: {line}"))),
        }
    }
}

/// Parses a listing file: header, then one id per line. Blank lines are
/// ignored.
pub fn parse_listing(text: &str) -> Result<(ListingHeader, Listing), Error> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = ListingHeader::parse(lines.next().ok_or_else(|| Error::input("empty input"))?)?;
    let ids = lines.map(str::to_string).collect();
    let cyclic = header.cyclic;
    Ok((header, Listing { ids, cyclic }))
}

/// Returns the first id occurring twice, if any.
pub fn first_duplicate<'a>(ids: impl IntoIterator<Item = &'a String>) -> Option<&'a String> {
    let mut seen = HashSet::new();
    ids.into_iter().find(|id| !seen.insert(id.as_str()))
}
