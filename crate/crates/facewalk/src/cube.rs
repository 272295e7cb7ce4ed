//! Boolean lattices and hypercube face lattices.
//!
//! A face of the `n`-cube is a word over `{0, -, 1}`; its dimension is the
//! number of dashes. The bottom element is written `EMPTY`.

use std::collections::HashMap;

use crate::posetcore::{CoverGraph, FaceStream, RankedElement, EMPTY};
use crate::strip::{Coord, RhombicStrip, StripEdge, StripVertex};
use crate::zigzag::{Levels, Zigzag};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TernaryFace {
    Bottom,
    Word(Vec<u8>),
}

impl TernaryFace {
    pub fn parse(id: &str) -> Result<Self, Error> {
        if id == EMPTY {
            return Ok(TernaryFace::Bottom);
        }
        if id.is_empty() || !id.bytes().all(|b| matches!(b, b'0' | b'1' | b'-')) {
            return Err(Error::input(format!("not a ternary word: {id}")));
        }
        Ok(TernaryFace::Word(id.as_bytes().to_vec()))
    }

    pub fn rank(&self) -> i32 {
        match self {
            TernaryFace::Bottom => -1,
            TernaryFace::Word(w) => w.iter().filter(|&&b| b == b'-').count() as i32,
        }
    }

    pub fn id(&self) -> String {
        match self {
            TernaryFace::Bottom => EMPTY.to_string(),
            TernaryFace::Word(w) => String::from_utf8(w.clone()).expect("ascii"),
        }
    }

    /// Face inclusion.
    pub fn is_subface_of(&self, other: &TernaryFace) -> bool {
        match (self, other) {
            (TernaryFace::Bottom, _) => true,
            (_, TernaryFace::Bottom) => false,
            (TernaryFace::Word(a), TernaryFace::Word(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y || *y == b'-')
            }
        }
    }
}

/// Digits of a reflected Gray code over an alphabet of two or three symbols.
#[derive(Clone, Debug)]
struct Reflected {
    digits: Vec<u8>,
    word: Vec<u8>,
    symbols: &'static [u8],
}

impl Levels for Reflected {
    fn levels(&self) -> usize {
        self.digits.len()
    }

    fn can_step(&self, level: usize, forward: bool) -> bool {
        if forward {
            (self.digits[level] as usize) + 1 < self.symbols.len()
        } else {
            self.digits[level] > 0
        }
    }

    fn step(&mut self, level: usize, forward: bool) {
        if forward {
            self.digits[level] += 1;
        } else {
            self.digits[level] -= 1;
        }
        self.word[level] = self.symbols[self.digits[level] as usize];
    }
}

fn reflected(n: usize, symbols: &'static [u8]) -> Zigzag<Reflected> {
    let state = Reflected { digits: vec![0; n], word: vec![symbols[0]; n], symbols };
    Zigzag::new(state, vec![true; n])
}

/// Binary reflected Gray code on `{0,1}^n`, as a stream of words.
pub struct Brgc {
    z: Zigzag<Reflected>,
}

/// Cyclic listing of the Boolean lattice skeleton `G(Q_n)` in which
/// consecutive words differ in one bit.
pub fn brgc(n: usize) -> Result<Brgc, Error> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    Ok(Brgc { z: reflected(n, b"01") })
}

impl Iterator for Brgc {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        self.z.advance().then(|| String::from_utf8(self.z.state.word.clone()).expect("ascii"))
    }
}

/// The ternary reflected Gray code followed by `EMPTY`.
pub struct Gamma {
    z: Zigzag<Reflected>,
    finished: bool,
    emitted_empty: bool,
}

/// Hamiltonian cycle of `G(L(Q_n))`: all ternary words, consecutive ones
/// differing in a flip `0 <-> -` or `- <-> 1`, then `EMPTY`.
///
/// ```
/// let l: Vec<String> = facewalk::cube::gamma(1).unwrap().collect();
/// assert_eq!(l, ["0", "-", "1", "EMPTY"]);
/// ```
pub fn gamma(n: usize) -> Result<Gamma, Error> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    Ok(Gamma { z: reflected(n, b"0-1"), finished: false, emitted_empty: false })
}

impl FaceStream for Gamma {
    fn next_face(&mut self) -> Option<&str> {
        if !self.finished {
            if self.z.advance() {
                return Some(std::str::from_utf8(&self.z.state.word).expect("ascii"));
            }
            self.finished = true;
        }
        if self.emitted_empty {
            return None;
        }
        self.emitted_empty = true;
        Some(EMPTY)
    }

    fn last_work(&self) -> usize {
        self.z.last_work()
    }
}

impl Iterator for Gamma {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        self.next_face().map(str::to_string)
    }
}

/// All words of length `n` over `alphabet`, by plain counting.
fn all_words(n: usize, alphabet: &[u8]) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// All faces of the `n`-cube including `EMPTY`.
pub fn faces(n: usize) -> Vec<RankedElement> {
    let mut out: Vec<RankedElement> = all_words(n, b"01-")
        .into_iter()
        .map(|w| {
            let f = TernaryFace::Word(w);
            RankedElement::new(f.id(), f.rank())
        })
        .collect();
    out.push(RankedElement::bottom());
    out
}

/// Brute-force cover graph of `L(Q_n)` from face inclusion.
pub fn cover_graph(n: usize) -> CoverGraph {
    let objects = all_words(n, b"01-")
        .into_iter()
        .map(|w| {
            let f = TernaryFace::Word(w);
            let e = RankedElement::new(f.id(), f.rank());
            (f, e)
        })
        .collect();
    CoverGraph::brute(objects, |a, b| a.is_subface_of(b))
}

/// Cover graph of the Boolean lattice `Q_n` on `{0,1}^n`, ranked by the
/// number of ones.
pub fn boolean_cover_graph(n: usize) -> CoverGraph {
    let words = all_words(n, b"01");
    let elements: Vec<RankedElement> = words
        .iter()
        .map(|w| RankedElement::new(String::from_utf8(w.clone()).expect("ascii"), ones(w)))
        .collect();
    let mut edges = Vec::new();
    for w in &words {
        for i in 0..n {
            if w[i] == b'0' {
                let mut u = w.clone();
                u[i] = b'1';
                edges.push((String::from_utf8(w.clone()).expect("ascii"), String::from_utf8(u).expect("ascii")));
            }
        }
    }
    CoverGraph::new(elements, edges).expect("hypercube edges join consecutive ranks")
}

fn ones(w: &[u8]) -> i32 {
    w.iter().filter(|&&b| b == b'1').count() as i32
}

fn dashes(w: &[u8]) -> i32 {
    w.iter().filter(|&&b| b == b'-').count() as i32
}

type Word = Vec<u8>;
type Edge = (Word, Word);

fn prefixed(c: u8, w: &[u8]) -> Word {
    let mut v = Vec::with_capacity(w.len() + 1);
    v.push(c);
    v.extend_from_slice(w);
    v
}

fn prefix_edges(c: u8, edges: &[Edge]) -> impl Iterator<Item = Edge> + '_ {
    edges.iter().map(move |(a, b)| (prefixed(c, a), prefixed(c, b)))
}

fn s(w: &[u8]) -> String {
    String::from_utf8(w.to_vec()).expect("ascii")
}

/// Strip of `G(Q_n)` by mirroring: a copy of the previous strip prefixed with
/// `0` and a mirrored copy prefixed with `1` to its right, joined along the
/// rightmost chain, with new zipper edges across the seam.
///
/// The left copy is scaled into `(0, 1/2)` and the mirrored copy into
/// `(1/2, 1)`.
pub fn strip_boolean_mirror(n: usize) -> Result<RhombicStrip, Error> {
    if n < 2 {
        return Err(Error::input("n must be at least 2"));
    }
    let half = Coord::new(1, 2);
    let mut pos: HashMap<Word, Coord> = HashMap::from([
        (b"00".to_vec(), half),
        (b"01".to_vec(), Coord::new(1, 4)),
        (b"10".to_vec(), Coord::new(3, 4)),
        (b"11".to_vec(), half),
    ]);
    let mut inner: Vec<Edge> = vec![
        (b"00".to_vec(), b"01".to_vec()),
        (b"00".to_vec(), b"10".to_vec()),
        (b"01".to_vec(), b"11".to_vec()),
        (b"10".to_vec(), b"11".to_vec()),
    ];
    let mut zipper: Vec<Edge> = Vec::new();
    let mut c: Vec<Word> = vec![b"00".to_vec(), b"01".to_vec(), b"11".to_vec()];
    let mut d: Vec<Word> = vec![b"00".to_vec(), b"10".to_vec(), b"11".to_vec()];
    for m in 2..n {
        let mut next_pos = HashMap::with_capacity(pos.len() * 2);
        for (w, &x) in &pos {
            next_pos.insert(prefixed(b'0', w), x * half);
            next_pos.insert(prefixed(b'1', w), Coord::from_integer(1) - x * half);
        }
        let mut next_inner: Vec<Edge> = prefix_edges(b'0', &inner).chain(prefix_edges(b'1', &inner)).collect();
        next_inner.extend((0..=m).map(|i| (prefixed(b'0', &d[i]), prefixed(b'1', &d[i]))));
        zipper = (1..m).map(|i| (prefixed(b'0', &c[i]), prefixed(b'1', &c[i]))).collect();
        let next_c: Vec<Word> = c.iter().map(|w| prefixed(b'0', w)).chain([vec![b'1'; m + 1]]).collect();
        let next_d: Vec<Word> = std::iter::once(vec![b'0'; m + 1]).chain(c.iter().map(|w| prefixed(b'1', w))).collect();
        pos = next_pos;
        inner = next_inner;
        c = next_c;
        d = next_d;
    }
    let vertices = pos.iter().map(|(w, &x)| StripVertex { id: s(w), rank: ones(w), x }).collect();
    let edges = inner
        .iter()
        .map(|(a, b)| StripEdge::new(s(a), s(b)))
        .chain(zipper.iter().map(|(a, b)| StripEdge::wrapped(s(a), s(b), -1)))
        .collect();
    Ok(RhombicStrip::new(vertices, edges))
}

/// Coordinates `(2i - 1) / 2N` along an x-monotone Hamiltonian path.
fn path_coords(path: &[Word]) -> HashMap<Word, Coord> {
    let n = path.len() as i64;
    path.iter().enumerate().map(|(i, w)| (w.clone(), Coord::new(2 * i as i64 + 1, 2 * n))).collect()
}

fn path_edges(path: &[Word], rank: impl Fn(&[u8]) -> i32) -> Vec<Edge> {
    path.windows(2)
        .map(|w| if rank(&w[0]) < rank(&w[1]) { (w[0].clone(), w[1].clone()) } else { (w[1].clone(), w[0].clone()) })
        .collect()
}

/// Strip of `G(Q_n)` by stacking: copies prefixed with `0` and `1` placed at
/// the same horizontal positions, the second one rank higher, joined by
/// vertical edges. The strip is built around an x-monotone Hamiltonian path
/// whose order fixes all coordinates.
pub fn strip_boolean_stack(n: usize) -> Result<RhombicStrip, Error> {
    if n < 2 {
        return Err(Error::input("n must be at least 2"));
    }
    let mut p: Vec<Word> = [b"00", b"10", b"11", b"01"].iter().map(|w| w.to_vec()).collect();
    let mut a: Vec<Edge> = Vec::new();
    let mut b: Vec<Edge> = vec![(b"00".to_vec(), b"01".to_vec())];
    let mut z: Vec<Edge> = Vec::new();
    for m in 2..n {
        let big = p.len();
        let mut next_p = Vec::with_capacity(2 * big);
        for (i, w) in p.iter().enumerate() {
            // i is 0-based; odd positions in 1-based terms go up first
            if i % 2 == 0 {
                next_p.push(prefixed(b'0', w));
                next_p.push(prefixed(b'1', w));
            } else {
                next_p.push(prefixed(b'1', w));
                next_p.push(prefixed(b'0', w));
            }
        }
        let mut next_a: Vec<Edge> = prefix_edges(b'1', &a).collect();
        next_a.extend((2..=big - 2).step_by(2).map(|i| path_pair(b'1', &p[i - 1], &p[i], ones)));
        let mut next_b: Vec<Edge> = prefix_edges(b'0', &b).collect();
        next_b.extend((1..=big - 1).step_by(2).map(|i| path_pair(b'0', &p[i - 1], &p[i], ones)));
        let mut next_z: Vec<Edge> = prefix_edges(b'1', &z).collect();
        next_z.push((prefixed(b'1', &vec![b'0'; m]), prefixed(b'1', &p[big - 1])));
        p = next_p;
        a = next_a;
        b = next_b;
        z = next_z;
    }
    let pos = path_coords(&p);
    let vertices = pos.iter().map(|(w, &x)| StripVertex { id: s(w), rank: ones(w), x }).collect();
    let edges = path_edges(&p, ones)
        .iter()
        .chain(&a)
        .chain(&b)
        .map(|(u, v)| StripEdge::new(s(u), s(v)))
        .chain(z.iter().map(|(u, v)| StripEdge::wrapped(s(u), s(v), -1)))
        .collect();
    Ok(RhombicStrip::new(vertices, edges))
}

/// Edge between `c u` and `c v`, lower rank first.
fn path_pair(c: u8, u: &[u8], v: &[u8], rank: fn(&[u8]) -> i32) -> Edge {
    let (u, v) = (prefixed(c, u), prefixed(c, v));
    if rank(&u) < rank(&v) {
        (u, v)
    } else {
        (v, u)
    }
}

/// Strip of `G(L(Q_n))`. Three copies of the previous strip: `0` and `-`
/// stacked at the same horizontal positions, and a mirrored `1` copy to the
/// right. All coordinates come from the x-monotone Hamiltonian path through
/// the nonempty faces; `EMPTY` sits just left of the leftmost vertex.
pub fn strip_cube_faces(n: usize) -> Result<RhombicStrip, Error> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let mut p: Vec<Word> = vec![b"0".to_vec(), b"-".to_vec(), b"1".to_vec()];
    let mut a: Vec<Edge> = Vec::new();
    let mut b: Vec<Edge> = Vec::new();
    let mut z: Vec<Edge> = Vec::new();
    let mut c: Vec<Word> = vec![b"0".to_vec(), b"-".to_vec()];
    let mut d: Vec<Word> = vec![b"1".to_vec(), b"-".to_vec()];
    for m in 1..n {
        let big = p.len();
        let mut next_p = Vec::with_capacity(3 * big);
        for (i, w) in p.iter().enumerate() {
            if i % 2 == 0 {
                next_p.push(prefixed(b'0', w));
                next_p.push(prefixed(b'-', w));
            } else {
                next_p.push(prefixed(b'-', w));
                next_p.push(prefixed(b'0', w));
            }
        }
        next_p.extend(p.iter().rev().map(|w| prefixed(b'1', w)));
        let f: Vec<Edge> = (0..=m).map(|i| (prefixed(b'1', &d[i]), prefixed(b'-', &d[i]))).collect();
        let mut next_a: Vec<Edge> = prefix_edges(b'-', &a).chain(prefix_edges(b'1', &a)).collect();
        next_a.extend((2..=big - 1).step_by(2).map(|i| path_pair(b'-', &p[i - 1], &p[i], dashes)));
        let last = prefixed(b'1', &p[big - 1]);
        next_a.extend(f.iter().filter(|(u, _)| *u != last).cloned());
        let mut next_b: Vec<Edge> = prefix_edges(b'0', &b).chain(prefix_edges(b'1', &b)).collect();
        next_b.extend((1..=big - 2).step_by(2).map(|i| path_pair(b'0', &p[i - 1], &p[i], dashes)));
        let next_z: Vec<Edge> = (0..m).map(|i| (prefixed(b'1', &c[i]), prefixed(b'-', &c[i]))).collect();
        let next_c: Vec<Word> = std::iter::once(prefixed(b'0', &p[0])).chain(c.iter().map(|w| prefixed(b'-', w))).collect();
        let next_d: Vec<Word> = c.iter().map(|w| prefixed(b'1', w)).chain([vec![b'-'; m + 1]]).collect();
        p = next_p;
        a = next_a;
        b = next_b;
        z = next_z;
        c = next_c;
        d = next_d;
    }
    let big = p.len() as i64;
    let mut vertices: Vec<StripVertex> = path_coords(&p)
        .into_iter()
        .map(|(w, x)| StripVertex { id: s(&w), rank: dashes(&w), x })
        .collect();
    vertices.push(StripVertex { id: EMPTY.to_string(), rank: -1, x: Coord::new(1, 4 * big) });
    let bottom_edges = p.iter().filter(|w| dashes(w) == 0).map(|w| StripEdge::new(EMPTY, s(w)));
    let edges = path_edges(&p, dashes)
        .iter()
        .chain(&a)
        .chain(&b)
        .map(|(u, v)| StripEdge::new(s(u), s(v)))
        .chain(bottom_edges)
        .chain(z.iter().map(|(u, v)| StripEdge::wrapped(s(u), s(v), 1)))
        .collect();
    Ok(RhombicStrip::new(vertices, edges))
}
