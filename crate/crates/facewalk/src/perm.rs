//! Faces of permutahedra and B-permutahedra as (signed) ordered partitions.
//!
//! A face of the permutahedron on `[n]` is an ordered partition `A_1|...|A_k`,
//! written with ascending elements per block, e.g. `25|1|34`. For `n >= 10`
//! the elements of a block are separated by commas. Faces of the
//! B-permutahedron additionally carry a sign per element (`-` prefix) and may
//! have a boxed first block whose elements carry both signs, e.g. `[12]|-3`.

use std::fmt;

use crate::lazy::{Expansion, LazyListing};
use crate::posetcore::{CoverGraph, FaceStream, Listing, RankedElement, EMPTY};
use crate::strip::{sweep_flags, Flag};
use crate::zigzag::{Levels, Zigzag};
use crate::{cube, Error};

fn element_separator(n: usize) -> &'static str {
    if n >= 10 {
        ","
    } else {
        ""
    }
}

fn parse_elements(block: &str, n: usize) -> Result<Vec<i16>, Error> {
    let bad = || Error::input(format!("bad block: {block}"));
    let mut out = Vec::new();
    if n >= 10 {
        for tok in block.split(',') {
            out.push(tok.parse::<i16>().map_err(|_| bad())?);
        }
    } else {
        let mut neg = false;
        for c in block.chars() {
            match c {
                '-' if !neg => neg = true,
                '1'..='9' => {
                    let v = c as i16 - '0' as i16;
                    out.push(if neg { -v } else { v });
                    neg = false;
                }
                _ => return Err(bad()),
            }
        }
        if neg {
            return Err(bad());
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn check_cover_of_range(values: impl Iterator<Item = usize>, n: usize) -> Result<(), Error> {
    let mut seen = vec![false; n + 1];
    for v in values {
        if v == 0 || v > n {
            return Err(Error::input(format!("element {v} outside 1..={n}")));
        }
        if seen[v] {
            return Err(Error::input(format!("element {v} appears twice")));
        }
        seen[v] = true;
    }
    if let Some(v) = (1..=n).find(|&v| !seen[v]) {
        return Err(Error::input(format!("element {v} missing")));
    }
    Ok(())
}

/// An ordered partition of `[n]` into nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedPartition {
    blocks: Vec<Vec<u8>>,
}

impl OrderedPartition {
    /// Validates that the blocks partition `[n]` for `n` the total number of
    /// elements. Blocks are sorted.
    pub fn new(mut blocks: Vec<Vec<u8>>) -> Result<Self, Error> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::input("empty block"));
        }
        check_cover_of_range(blocks.iter().flatten().map(|&v| v as usize), n)?;
        for b in &mut blocks {
            b.sort_unstable();
        }
        Ok(OrderedPartition { blocks })
    }

    /// The permutation `1|2|...|n`.
    pub fn identity(n: usize) -> Self {
        OrderedPartition { blocks: (1..=n as u8).map(|v| vec![v]).collect() }
    }

    pub fn parse(id: &str, n: usize) -> Result<Self, Error> {
        let mut blocks = Vec::new();
        for part in id.split('|') {
            let els = parse_elements(part, n)?;
            if els.iter().any(|&v| v <= 0 || v > u8::MAX as i16) {
                return Err(Error::input(format!("bad ordered partition: {id}")));
            }
            blocks.push(els.into_iter().map(|v| v as u8).collect());
        }
        let p = OrderedPartition::new(blocks)?;
        if p.n() != n {
            return Err(Error::input(format!("{id} is not a partition of [{n}]")));
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    pub fn rank(&self) -> i32 {
        (self.n() - self.blocks.len()) as i32
    }

    pub fn id(&self) -> String {
        self.to_string()
    }

    /// `č_i`: the singleton `{n+1}` as a new block after `A_i`.
    pub fn insert_bar(&self, i: usize) -> Result<Self, Error> {
        if i > self.blocks.len() {
            return Err(Error::input(format!("bar index {i} out of range 0..={}", self.blocks.len())));
        }
        let mut blocks = self.blocks.clone();
        blocks.insert(i, vec![self.n() as u8 + 1]);
        Ok(OrderedPartition { blocks })
    }

    /// `ĉ_i`: the element `n+1` added to `A_i` (1-based).
    pub fn insert_join(&self, i: usize) -> Result<Self, Error> {
        if i == 0 || i > self.blocks.len() {
            return Err(Error::input(format!("join index {i} out of range 1..={}", self.blocks.len())));
        }
        let mut blocks = self.blocks.clone();
        blocks[i - 1].push(self.n() as u8 + 1);
        Ok(OrderedPartition { blocks })
    }

    /// `č_0, ĉ_1, č_1, ..., ĉ_k, č_k`.
    pub fn insertion_sequence(&self) -> Vec<Self> {
        let k = self.blocks.len();
        let mut out = vec![self.insert_bar(0).expect("in range")];
        for i in 1..=k {
            out.push(self.insert_join(i).expect("in range"));
            out.push(self.insert_bar(i).expect("in range"));
        }
        out
    }

    pub fn reversed(&self) -> Self {
        OrderedPartition { blocks: self.blocks.iter().rev().cloned().collect() }
    }

    /// `self` is covered by `other`: `other` joins two adjacent blocks.
    pub fn is_covered_by(&self, other: &OrderedPartition) -> bool {
        let k = self.blocks.len();
        if other.blocks.len() + 1 != k {
            return false;
        }
        (0..k - 1).any(|i| {
            self.blocks[..i] == other.blocks[..i]
                && self.blocks[i + 2..] == other.blocks[i + 1..]
                && {
                    let mut m = [self.blocks[i].as_slice(), self.blocks[i + 1].as_slice()].concat();
                    m.sort_unstable();
                    m == other.blocks[i]
                }
        })
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = element_separator(self.n());
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, v) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// A face of the B-permutahedron. Elements are stored with their sign; the
/// elements of a boxed first block are stored positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedOrderedPartition {
    blocks: Vec<Vec<i16>>,
    boxed: bool,
}

impl SignedOrderedPartition {
    pub fn new(mut blocks: Vec<Vec<i16>>, boxed: bool) -> Result<Self, Error> {
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::input("empty block"));
        }
        if boxed {
            let Some(first) = blocks.first() else {
                return Err(Error::input("boxed partition without blocks"));
            };
            if first.iter().any(|&v| v < 0) {
                return Err(Error::input("boxed elements carry no sign"));
            }
        }
        let n: usize = blocks.iter().map(Vec::len).sum();
        check_cover_of_range(blocks.iter().flatten().map(|&v| v.unsigned_abs() as usize), n)?;
        for b in &mut blocks {
            b.sort_unstable_by_key(|v| v.abs());
        }
        Ok(SignedOrderedPartition { blocks, boxed })
    }

    pub fn parse(id: &str, n: usize) -> Result<Self, Error> {
        let mut blocks = Vec::new();
        let mut boxed = false;
        for (i, part) in id.split('|').enumerate() {
            let part = if i == 0 {
                match part.strip_prefix('[').and_then(|p| p.strip_suffix(']')) {
                    Some(inner) => {
                        boxed = true;
                        inner
                    }
                    None => part,
                }
            } else {
                part
            };
            blocks.push(parse_elements(part, n)?);
        }
        let p = SignedOrderedPartition::new(blocks, boxed)?;
        if p.n() != n {
            return Err(Error::input(format!("{id} is not a signed partition of [{n}]")));
        }
        Ok(p)
    }

    /// The signed permutation with the given entries.
    pub fn from_signed_perm(entries: &[i16]) -> Result<Self, Error> {
        SignedOrderedPartition::new(entries.iter().map(|&v| vec![v]).collect(), false)
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn blocks(&self) -> &[Vec<i16>] {
        &self.blocks
    }

    pub fn is_boxed(&self) -> bool {
        self.boxed
    }

    pub fn rank(&self) -> i32 {
        (self.n() - self.blocks.len()) as i32 + self.boxed as i32
    }

    pub fn id(&self) -> String {
        self.to_string()
    }

    fn with_new(&self, i: usize, value: i16, join: bool) -> Self {
        let mut blocks = self.blocks.clone();
        if join {
            blocks[i - 1].push(value);
        } else {
            blocks.insert(i, vec![value]);
        }
        SignedOrderedPartition { blocks, boxed: self.boxed }
    }

    /// `č_i^±`: the singleton `{±(n+1)}` after block `i`. A boxed first
    /// block cannot be preceded, so `i >= 1` then.
    pub fn insert_bar(&self, i: usize, negative: bool) -> Result<Self, Error> {
        let lo = self.boxed as usize;
        if i < lo || i > self.blocks.len() {
            return Err(Error::input(format!("bar index {i} out of range {lo}..={}", self.blocks.len())));
        }
        let v = self.n() as i16 + 1;
        Ok(self.with_new(i, if negative { -v } else { v }, false))
    }

    /// `ĉ_i^±`: the element `±(n+1)` added to block `i`. For `i = 0` on an
    /// unboxed face, and for `i = 1` on a boxed one, the new element is boxed
    /// and the sign is ignored.
    pub fn insert_join(&self, i: usize, negative: bool) -> Result<Self, Error> {
        let v = self.n() as i16 + 1;
        if i == 0 && !self.boxed {
            let mut blocks = self.blocks.clone();
            blocks.insert(0, vec![v]);
            return Ok(SignedOrderedPartition { blocks, boxed: true });
        }
        if i == 0 || i > self.blocks.len() {
            return Err(Error::input(format!("join index {i} out of range 1..={}", self.blocks.len())));
        }
        if i == 1 && self.boxed {
            return Ok(self.with_new(1, v, true));
        }
        Ok(self.with_new(i, if negative { -v } else { v }, true))
    }

    /// The sequence `c(x)`: positive copies from the right end to the
    /// left, the boxed middle face, then negative copies back to the right.
    pub fn insertion_sequence(&self) -> Vec<Self> {
        let k = self.blocks.len();
        let lo = self.boxed as usize;
        let mut out = Vec::with_capacity(4 * k + 3);
        for i in (lo..=k).rev() {
            out.push(self.insert_bar(i, false).expect("in range"));
            if i > lo {
                out.push(self.insert_join(i, false).expect("in range"));
            }
        }
        out.push(self.insert_join(lo, false).expect("in range"));
        for i in lo..=k {
            if i > lo {
                out.push(self.insert_join(i, true).expect("in range"));
            }
            out.push(self.insert_bar(i, true).expect("in range"));
        }
        out
    }

    /// Cover relations as displayed for type 1 and type 2 faces: box the
    /// first block, absorb the second block into the box, or join two
    /// adjacent unboxed blocks.
    pub fn is_covered_by(&self, other: &SignedOrderedPartition) -> bool {
        let k = self.blocks.len();
        let unsign = |b: &[i16]| {
            let mut v: Vec<i16> = b.iter().map(|x| x.abs()).collect();
            v.sort_unstable();
            v
        };
        let merged = |a: &[i16], b: &[i16]| {
            let mut m = [a, b].concat();
            m.sort_unstable_by_key(|v| v.abs());
            m
        };
        match (self.boxed, other.boxed) {
            (false, true) => {
                other.blocks.len() == k && other.blocks[0] == unsign(&self.blocks[0]) && self.blocks[1..] == other.blocks[1..]
            }
            (true, true) if other.blocks.len() + 1 == k => {
                let absorbed = other.blocks[0] == unsign(&merged(&self.blocks[0], &self.blocks[1]))
                    && self.blocks[2..] == other.blocks[1..];
                absorbed
                    || (1..k - 1).any(|i| {
                        self.blocks[..i] == other.blocks[..i]
                            && self.blocks[i + 2..] == other.blocks[i + 1..]
                            && merged(&self.blocks[i], &self.blocks[i + 1]) == other.blocks[i]
                    })
            }
            (false, false) if other.blocks.len() + 1 == k => (0..k - 1).any(|i| {
                self.blocks[..i] == other.blocks[..i]
                    && self.blocks[i + 2..] == other.blocks[i + 1..]
                    && merged(&self.blocks[i], &self.blocks[i + 1]) == other.blocks[i]
            }),
            _ => false,
        }
    }
}

impl fmt::Display for SignedOrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = element_separator(self.n());
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            let boxed = i == 0 && self.boxed;
            if boxed {
                f.write_str("[")?;
            }
            for (j, v) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{v}")?;
            }
            if boxed {
                f.write_str("]")?;
            }
        }
        Ok(())
    }
}

/// Linked list of blocks, one bit per element. Level `l` moves element
/// `l + 2`; elements above the moving one sit as singletons at the two ends.
#[derive(Clone, Debug)]
struct BlockList {
    n: usize,
    next: Vec<usize>,
    prev: Vec<usize>,
    mask: Vec<u64>,
    node_of: Vec<usize>,
    free: Vec<usize>,
}

// Node 0 is the sentinel of the circular list.
impl BlockList {
    fn identity(n: usize) -> Self {
        let nodes = n + 1;
        let next = (0..nodes).map(|i| (i + 1) % nodes).collect();
        let prev = (0..nodes).map(|i| (i + nodes - 1) % nodes).collect();
        let mut mask = vec![0u64; nodes];
        for (v, m) in mask.iter_mut().enumerate().skip(1) {
            *m = 1 << v;
        }
        BlockList { n, next, prev, mask, node_of: (0..=n).collect(), free: Vec::new() }
    }

    fn unlink(&mut self, node: usize) {
        let (p, q) = (self.prev[node], self.next[node]);
        self.next[p] = q;
        self.prev[q] = p;
        self.free.push(node);
    }

    fn link_after(&mut self, at: usize, bits: u64) -> usize {
        let node = self.free.pop().expect("at most n blocks");
        let q = self.next[at];
        self.next[at] = node;
        self.prev[node] = at;
        self.next[node] = q;
        self.prev[q] = node;
        self.mask[node] = bits;
        node
    }

    fn write_id(&self, buf: &mut String) {
        buf.clear();
        let sep = element_separator(self.n);
        let mut node = self.next[0];
        let mut first_block = true;
        while node != 0 {
            if !first_block {
                buf.push('|');
            }
            first_block = false;
            let mut bits = self.mask[node];
            let mut first = true;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                if !first {
                    buf.push_str(sep);
                }
                first = false;
                if v < 10 {
                    buf.push((b'0' + v as u8) as char);
                } else {
                    buf.push_str(&v.to_string());
                }
            }
            node = self.next[node];
        }
    }
}

impl Levels for BlockList {
    fn levels(&self) -> usize {
        self.n - 1
    }

    fn can_step(&self, level: usize, forward: bool) -> bool {
        let e = level + 2;
        let node = self.node_of[e];
        if self.mask[node] != 1 << e {
            return true;
        }
        let nb = if forward { self.next[node] } else { self.prev[node] };
        nb != 0 && self.mask[nb] & ((1u64 << e) - 2) != 0
    }

    fn step(&mut self, level: usize, forward: bool) {
        let e = level + 2;
        let bit = 1u64 << e;
        let node = self.node_of[e];
        if self.mask[node] == bit {
            let nb = if forward { self.next[node] } else { self.prev[node] };
            self.unlink(node);
            self.mask[nb] |= bit;
            self.node_of[e] = nb;
        } else {
            self.mask[node] &= !bit;
            let at = if forward { node } else { self.prev[node] };
            self.node_of[e] = self.link_after(at, bit);
        }
    }
}

/// Streaming Hamiltonian cycle in the cover graph of the face lattice of the
/// permutahedron on `[n]`, ending with [`EMPTY`].
pub struct PermFaces {
    zig: Zigzag<BlockList>,
    buf: String,
    finished: bool,
}

/// Faces of the permutahedron on `[n]`, `n >= 2`, in the order of the
/// reflected insertion construction. Consecutive faces differ in merging two
/// adjacent blocks or splitting one. Amortized `O(1)` steps per face plus
/// `O(n)` to format the id; memory `O(n)`.
pub fn face_listing_perm(n: usize) -> Result<PermFaces, Error> {
    if n < 2 {
        return Err(Error::input("permutahedron listing needs n >= 2"));
    }
    if n > 63 {
        return Err(Error::input("permutahedron listing supports n <= 63"));
    }
    let list = BlockList::identity(n);
    Ok(PermFaces { zig: Zigzag::new(list, vec![false; n - 1]), buf: String::new(), finished: false })
}

impl FaceStream for PermFaces {
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

impl Iterator for PermFaces {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        self.next_face().map(str::to_string)
    }
}

/// All ordered partitions of `[n]`, from surjections onto `[k]`.
pub fn ordered_partitions(n: usize) -> Vec<OrderedPartition> {
    let mut out = Vec::new();
    for k in 1..=n {
        let mut f = vec![0usize; n];
        loop {
            let mut blocks = vec![Vec::new(); k];
            for (v, &b) in f.iter().enumerate() {
                blocks[b].push(v as u8 + 1);
            }
            if blocks.iter().all(|b| !b.is_empty()) {
                out.push(OrderedPartition { blocks });
            }
            let Some(i) = (0..n).rev().find(|&i| f[i] + 1 < k) else { break };
            f[i] += 1;
            f[i + 1..].iter_mut().for_each(|x| *x = 0);
        }
    }
    out
}

/// Brute-force cover graph of the face lattice of the permutahedron.
pub fn cover_graph(n: usize) -> CoverGraph {
    let objects = ordered_partitions(n)
        .into_iter()
        .map(|p| {
            let e = RankedElement::new(p.id(), p.rank());
            (p, e)
        })
        .collect();
    CoverGraph::brute(objects, |a, b| a.is_covered_by(b))
}

/// All faces of the B-permutahedron on `[n]` (without the bottom).
pub fn signed_ordered_partitions(n: usize) -> Vec<SignedOrderedPartition> {
    let mut out = Vec::new();
    for p in ordered_partitions(n) {
        for mask in 0u32..1 << n {
            let sign = |v: u8| if mask >> (v - 1) & 1 == 1 { -(v as i16) } else { v as i16 };
            let blocks: Vec<Vec<i16>> = p.blocks.iter().map(|b| b.iter().map(|&v| sign(v)).collect()).collect();
            out.push(SignedOrderedPartition::new(blocks.clone(), false).expect("valid"));
            // boxed: the first block is unsigned, so take each sign pattern of
            // the remaining elements once
            if p.blocks[0].iter().all(|&v| mask >> (v - 1) & 1 == 0) {
                let mut boxed = blocks;
                boxed[0].iter_mut().for_each(|v| *v = v.abs());
                out.push(SignedOrderedPartition::new(boxed, true).expect("valid"));
            }
        }
    }
    out
}

/// Brute-force cover graph of the face lattice of the B-permutahedron.
pub fn bperm_cover_graph(n: usize) -> CoverGraph {
    let objects = signed_ordered_partitions(n)
        .into_iter()
        .map(|p| {
            let e = RankedElement::new(p.id(), p.rank());
            (p, e)
        })
        .collect();
    CoverGraph::brute(objects, |a, b| a.is_covered_by(b))
}

struct BpermExpansion;

impl Expansion for BpermExpansion {
    type Face = SignedOrderedPartition;

    fn base(&self) -> Vec<SignedOrderedPartition> {
        vec![
            SignedOrderedPartition { blocks: vec![vec![1]], boxed: false },
            SignedOrderedPartition { blocks: vec![vec![1]], boxed: true },
            SignedOrderedPartition { blocks: vec![vec![-1]], boxed: false },
        ]
    }

    fn expand(&self, _level: usize, parent: &SignedOrderedPartition, index: usize) -> Vec<SignedOrderedPartition> {
        let mut seq = parent.insertion_sequence();
        if index % 2 == 1 {
            seq.reverse();
        }
        seq
    }
}

/// Hamiltonian cycle in the cover graph of the face lattice of the
/// B-permutahedron on `[n]`, `n >= 1`, ending with [`EMPTY`]. Each level
/// keeps only the insertion sequence of its current parent.
pub fn face_listing_bperm(n: usize) -> Result<impl Iterator<Item = String>, Error> {
    if n == 0 {
        return Err(Error::input("B-permutahedron listing needs n >= 1"));
    }
    if n > 9999 {
        return Err(Error::input("B-permutahedron listing supports n <= 9999"));
    }
    Ok(LazyListing::new(BpermExpansion, n - 1).map(|f| f.id()).chain(std::iter::once(EMPTY.to_string())))
}

/// Maps a maximal chain `∅ ⋖ x_0 ⋖ ... ⋖ x_n = -...-` of ternary words to the
/// signed permutation whose `i`-th entry is the position dashed in step `i`,
/// positive if `x_0` has a `1` there and negative if it has a `0`.
pub fn flag_to_signed_perm(flag: &[String]) -> Result<SignedOrderedPartition, Error> {
    let bad = |msg: &str| Error::input(format!("not a maximal chain ({msg}): {}", flag.join(">")));
    if flag.len() < 3 || flag[0] != EMPTY {
        return Err(bad("must start at EMPTY and have rank 0 and top"));
    }
    let words: Vec<&[u8]> = flag[1..].iter().map(|w| w.as_bytes()).collect();
    let n = words[0].len();
    if words.len() != n + 1 || words.iter().any(|w| w.len() != n) {
        return Err(bad("wrong length"));
    }
    if words[0].iter().any(|&c| c != b'0' && c != b'1') {
        return Err(bad("rank-0 word is not binary"));
    }
    let mut entries = Vec::with_capacity(n);
    for w in words.windows(2) {
        let diff: Vec<usize> = (0..n).filter(|&p| w[0][p] != w[1][p]).collect();
        match diff.as_slice() {
            &[p] if w[1][p] == b'-' && w[0][p] != b'-' => {
                let v = p as i16 + 1;
                entries.push(if words[0][p] == b'1' { v } else { -v });
            }
            _ => return Err(bad("consecutive words differ by more than one dash")),
        }
    }
    SignedOrderedPartition::from_signed_perm(&entries)
}

/// Inverse of [`flag_to_signed_perm`].
pub fn signed_perm_to_flag(perm: &SignedOrderedPartition) -> Result<Flag, Error> {
    if perm.boxed || perm.blocks.iter().any(|b| b.len() != 1) {
        return Err(Error::input(format!("{perm} is not a signed permutation")));
    }
    let entries: Vec<i16> = perm.blocks.iter().map(|b| b[0]).collect();
    let mut word: Vec<u8> = vec![b'0'; entries.len()];
    for &v in &entries {
        word[v.unsigned_abs() as usize - 1] = if v > 0 { b'1' } else { b'0' };
    }
    let mut flag = vec![EMPTY.to_string(), String::from_utf8(word.clone()).expect("ascii")];
    for &v in &entries {
        word[v.unsigned_abs() as usize - 1] = b'-';
        flag.push(String::from_utf8(word.clone()).expect("ascii"));
    }
    Ok(flag)
}

/// Facet-Hamiltonian cycle of the B-permutahedron on `[n]`: the chain sweep
/// through the rhombic strip of the cube's face lattice, read as signed
/// permutations.
pub fn facet_hamiltonian_bperm(n: usize) -> Result<Listing, Error> {
    if n < 2 {
        return Err(Error::input("facet-Hamiltonian cycle needs n >= 2"));
    }
    let flags = sweep_flags(&cube::strip_cube_faces(n)?)?;
    let ids = flags.iter().map(|f| flag_to_signed_perm(f).map(|p| p.id())).collect::<Result<_, _>>()?;
    Ok(Listing::cyclic(ids))
}
