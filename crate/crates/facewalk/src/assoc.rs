//! Faces of associahedra as dissections of a convex polygon.
//!
//! Points are labeled `1..=n` counterclockwise. A dissection is a set of
//! pairwise non-crossing diagonals; its id lists the diagonals `i-j` (`i < j`)
//! in increasing order joined by `,`, and the empty dissection is `.`.

use std::collections::BTreeSet;
use std::fmt;

use crate::posetcore::{CoverGraph, FaceStream, RankedElement, EMPTY};
use crate::zigzag::{Levels, Zigzag};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dissection {
    n: usize,
    diagonals: BTreeSet<(usize, usize)>,
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

impl Dissection {
    pub fn empty(n: usize) -> Self {
        Dissection { n, diagonals: BTreeSet::new() }
    }

    pub fn new(n: usize, diagonals: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, Error> {
        if n < 3 {
            return Err(Error::input("polygon needs at least 3 points"));
        }
        let mut set = BTreeSet::new();
        for (a, b) in diagonals {
            let (a, b) = (a.min(b), a.max(b));
            if a < 1 || b > n || b - a < 2 || (a == 1 && b == n) {
                return Err(Error::input(format!("{a}-{b} is not a diagonal of the {n}-gon")));
            }
            if let Some(&c) = set.iter().find(|&&c| crosses((a, b), c)) {
                return Err(Error::input(format!("diagonals {a}-{b} and {}-{} cross", c.0, c.1)));
            }
            set.insert((a, b));
        }
        Ok(Dissection { n, diagonals: set })
    }

    pub fn parse(id: &str, n: usize) -> Result<Self, Error> {
        if id == "." {
            return Ok(Dissection::empty(n));
        }
        let mut diags = Vec::new();
        for tok in id.split(',') {
            let (a, b) = tok.split_once('-').ok_or_else(|| Error::input(format!("bad diagonal: {tok}")))?;
            let a = a.parse().map_err(|_| Error::input(format!("bad diagonal: {tok}")))?;
            let b = b.parse().map_err(|_| Error::input(format!("bad diagonal: {tok}")))?;
            diags.push((a, b));
        }
        Dissection::new(n, diags)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &BTreeSet<(usize, usize)> {
        &self.diagonals
    }

    pub fn rank(&self) -> i32 {
        self.n as i32 - 3 - self.diagonals.len() as i32
    }

    pub fn id(&self) -> String {
        self.to_string()
    }

    /// Neighbors of the point `n`, boundary neighbors `1` and `n - 1`
    /// included, in increasing order.
    pub fn last_neighbors(&self) -> Vec<usize> {
        let n = self.n;
        let mut v: Vec<usize> = self.diagonals.iter().filter(|d| d.1 == n).map(|d| d.0).collect();
        v.push(1);
        v.push(n - 1);
        v.sort_unstable();
        v
    }

    /// `ĉ_i`, `2 <= i <= k`: the point `n` splits into `n` and `n + 1`; the
    /// new point keeps `v_1..v_{i-1}`, the old one `v_i..v_k`.
    pub fn expand_hat(&self, i: usize) -> Result<Self, Error> {
        let v = self.last_neighbors();
        let k = v.len();
        if i < 2 || i > k {
            return Err(Error::input(format!("hat index {i} out of range 2..={k}")));
        }
        let n = self.n;
        let diagonals = self
            .diagonals
            .iter()
            .map(|&(a, b)| if b == n && v[..i - 1].contains(&a) { (a, n + 1) } else { (a, b) })
            .collect();
        Ok(Dissection { n: n + 1, diagonals })
    }

    /// `č_i`, `1 <= i <= k`: `ĉ_i` plus `(v_i, n + 1)`, and `č_1 = ĉ_2` plus
    /// `(1, n)`.
    pub fn expand_check(&self, i: usize) -> Result<Self, Error> {
        let v = self.last_neighbors();
        let k = v.len();
        if i < 1 || i > k {
            return Err(Error::input(format!("check index {i} out of range 1..={k}")));
        }
        let n = self.n;
        let (mut d, extra) = if i == 1 { (self.expand_hat(2)?, (1, n)) } else { (self.expand_hat(i)?, (v[i - 1], n + 1)) };
        d.diagonals.insert(extra);
        Ok(d)
    }

    /// `č_1, ĉ_2, č_2, ..., ĉ_k, č_k`.
    pub fn insertion_sequence(&self) -> Vec<Self> {
        let k = self.last_neighbors().len();
        let mut out = vec![self.expand_check(1).expect("in range")];
        for i in 2..=k {
            out.push(self.expand_hat(i).expect("in range"));
            out.push(self.expand_check(i).expect("in range"));
        }
        out
    }

    /// Covered by `other`: `other` removes one diagonal.
    pub fn is_covered_by(&self, other: &Dissection) -> bool {
        self.n == other.n
            && self.diagonals.len() == other.diagonals.len() + 1
            && other.diagonals.is_subset(&self.diagonals)
    }
}

impl fmt::Display for Dissection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.diagonals.is_empty() {
            return f.write_str(".");
        }
        for (i, (a, b)) in self.diagonals.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        Ok(())
    }
}

/// Adjacency bitmasks of the final polygon, boundary edges included.
/// Level `l` inserts the point `m + 1` for `m = l + 3`.
#[derive(Clone, Debug)]
struct Polygon {
    n: usize,
    adj: Vec<u64>,
    // level sits at its first entry `č_1`
    at_first: Vec<bool>,
}

impl Polygon {
    fn new(n: usize) -> Self {
        let mut adj = vec![0u64; n + 1];
        let link = |a: usize, b: usize, adj: &mut Vec<u64>| {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        };
        for v in 1..=n {
            link(v, v % n + 1, &mut adj);
        }
        // every level at its last entry: the fan at n
        for a in 2..=n - 2 {
            link(a, n, &mut adj);
        }
        Polygon { n, adj, at_first: vec![false; n - 3] }
    }

    /// Position of the point `m + 1` of the `(m + 1)`-gon in the final polygon.
    fn carrier(&self, m: usize) -> usize {
        (m + 1..self.n).find(|&j| self.at_first[j - 3]).unwrap_or(self.n)
    }

    fn toggle(&mut self, a: usize, b: usize) {
        self.adj[a] ^= 1 << b;
        self.adj[b] ^= 1 << a;
    }

    fn masks(&self, m: usize) -> (u64, u64, usize) {
        let low = (1u64 << m) - 2;
        let t = self.carrier(m);
        (self.adj[m] & low, self.adj[t] & low, t)
    }

    fn write_id(&self, buf: &mut String) {
        use std::fmt::Write;
        buf.clear();
        for a in 1..=self.n {
            let mut bits = self.adj[a] & !((1u64 << (a + 2)) - 1);
            if a == 1 {
                bits &= !(1u64 << self.n);
            }
            while bits != 0 {
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                if !buf.is_empty() {
                    buf.push(',');
                }
                let _ = write!(buf, "{a}-{b}");
            }
        }
        if buf.is_empty() {
            buf.push('.');
        }
    }
}

fn max_bit(x: u64) -> usize {
    63 - x.leading_zeros() as usize
}

impl Levels for Polygon {
    fn levels(&self) -> usize {
        self.n - 3
    }

    fn can_step(&self, level: usize, forward: bool) -> bool {
        let (a, b, _) = self.masks(level + 3);
        if a & b == 0 {
            return true;
        }
        if forward {
            a.count_ones() > 1
        } else {
            b.count_ones() > 1
        }
    }

    fn step(&mut self, level: usize, forward: bool) {
        let m = level + 3;
        let (a, b, t) = self.masks(m);
        let check = a & b != 0;
        match (forward, check) {
            (true, true) => self.toggle(a.trailing_zeros() as usize, m),
            (true, false) => self.toggle(a.trailing_zeros() as usize, t),
            (false, true) => self.toggle(max_bit(b), t),
            (false, false) => self.toggle(max_bit(b), m),
        }
        if forward {
            self.at_first[level] = false;
        } else if !check && max_bit(b) == 1 {
            self.at_first[level] = true;
        }
    }
}

/// Streaming Hamiltonian cycle in the cover graph of the face lattice of the
/// associahedron of the `n`-gon, ending with [`EMPTY`].
pub struct AssocFaces {
    zig: Zigzag<Polygon>,
    buf: String,
    finished: bool,
}

/// Faces of the associahedron of the `n`-gon, `4 <= n <= 63`. Each step adds
/// or removes one diagonal, and memory is `O(n)` words.
pub fn face_listing_assoc(n: usize) -> Result<AssocFaces, Error> {
    if n < 4 {
        return Err(Error::input("associahedron listing needs n >= 4"));
    }
    if n > 63 {
        return Err(Error::input("associahedron listing supports n <= 63"));
    }
    Ok(AssocFaces { zig: Zigzag::new(Polygon::new(n), vec![false; n - 3]), buf: String::new(), finished: false })
}

impl FaceStream for AssocFaces {
    fn next_face(&mut self) -> Option<&str> {
        if self.finished {
            return None;
        }
        if self.zig.advance() {
            self.zig.state.write_id(&mut self.buf);
        } else {
            self.finished = true;
            self.buf.clear();
            self.buf.push_str(EMPTY);
        }
        Some(&self.buf)
    }

    fn last_work(&self) -> usize {
        self.zig.last_work()
    }
}

impl Iterator for AssocFaces {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        self.next_face().map(str::to_string)
    }
}

/// All dissections of the `n`-gon, by adding diagonals in increasing order.
pub fn dissections(n: usize) -> Vec<Dissection> {
    let all: Vec<(usize, usize)> =
        (1..=n).flat_map(|a| (a + 2..=n).map(move |b| (a, b))).filter(|&(a, b)| !(a == 1 && b == n)).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(all: &[(usize, usize)], from: usize, chosen: &mut Vec<(usize, usize)>, n: usize, out: &mut Vec<Dissection>) {
        out.push(Dissection { n, diagonals: chosen.iter().copied().collect() });
        for i in from..all.len() {
            if chosen.iter().all(|&c| !crosses(c, all[i])) {
                chosen.push(all[i]);
                go(all, i + 1, chosen, n, out);
                chosen.pop();
            }
        }
    }
    go(&all, 0, &mut chosen, n, &mut out);
    out
}

/// Brute-force cover graph of the face lattice of the associahedron.
pub fn cover_graph(n: usize) -> CoverGraph {
    let objects = dissections(n)
        .into_iter()
        .map(|d| {
            let e = RankedElement::new(d.id(), d.rank());
            (d, e)
        })
        .collect();
    CoverGraph::brute(objects, |a, b| a.is_covered_by(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_expansion() {
        let x = Dissection::empty(4);
        assert_eq!(x.last_neighbors(), [1, 3]);
        let h = x.expand_hat(2).unwrap();
        assert_eq!(h.n(), 5);
        assert_eq!(h.id(), ".");
        assert_eq!(x.expand_check(1).unwrap().id(), "1-4");
        assert_eq!(x.expand_check(2).unwrap().id(), "3-5");
        assert!(x.expand_hat(1).is_err());
        assert!(x.expand_check(3).is_err());
    }

    #[test]
    fn four_gon_listing() {
        let l: Vec<String> = face_listing_assoc(4).unwrap().collect();
        assert_eq!(l, ["2-4", ".", "1-3", "EMPTY"]);
        assert!(face_listing_assoc(3).is_err());
    }

    #[test]
    fn parse_rejects_crossings() {
        assert!(Dissection::parse("1-3,2-4", 4).is_err());
        assert!(Dissection::parse("1-2", 4).is_err());
        assert_eq!(Dissection::parse("1-3,1-4", 5).unwrap().rank(), 0);
    }
}
