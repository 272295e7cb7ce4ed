//! Lattice congruences of the weak order on permutations, given by fences,
//! and face listings of their quotientopes.
//!
//! A fence `f(a, b, L)` with `L` a subset of the open interval `]a, b[` is
//! the set of permutahedron edges swapping adjacent `a` and `b` while the
//! values of `L` sit to their left and the rest of `]a, b[` to their right.
//! A congruence is a set of fences closed downward under the forcing order,
//! in which a fence on a wider interval lies below the fences it restricts
//! to. Faces are listed by stable ordered partitions, one per class.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::lazy::{Expansion, LazyListing};
use crate::perm::{ordered_partitions, OrderedPartition};
use crate::posetcore::{CoverGraph, Listing, RankedElement, EMPTY};
use crate::Error;

/// Largest `n` accepted by the brute-force oracles.
pub const QUOTIENT_BUDGET: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fence {
    a: usize,
    b: usize,
    // bit v set when value v is in L
    left: u64,
}

impl Fence {
    pub fn new(a: usize, b: usize, left: &[usize]) -> Result<Self, Error> {
        if a == 0 || a >= b || b > 63 {
            return Err(Error::input(format!("bad fence endpoints {a} {b}")));
        }
        let mut mask = 0u64;
        for &v in left {
            if v <= a || v >= b {
                return Err(Error::input(format!("{v} is not strictly between {a} and {b}")));
            }
            mask |= 1 << v;
        }
        Ok(Fence { a, b, left: mask })
    }

    fn from_mask(a: usize, b: usize, left: u64) -> Self {
        Fence { a, b, left: left & interval(a, b) }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn left(&self) -> Vec<usize> {
        (self.a + 1..self.b).filter(|&v| self.left >> v & 1 == 1).collect()
    }
}

impl fmt::Display for Fence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.left().iter().map(usize::to_string).collect();
        write!(f, "f({},{},{{{}}})", self.a, self.b, l.join(","))
    }
}

/// Bits of the open interval `]a, b[`.
fn interval(a: usize, b: usize) -> u64 {
    if b <= a + 1 {
        0
    } else {
        ((1u64 << b) - 1) & !((1u64 << (a + 1)) - 1)
    }
}

fn mask_of(values: impl IntoIterator<Item = u8>) -> u64 {
    values.into_iter().fold(0, |m, v| m | 1 << v)
}

/// Every fence on `[n]`.
pub fn all_fences(n: usize) -> Vec<Fence> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let inner = interval(a, b);
            // enumerate submasks of the interval
            let mut s = inner;
            loop {
                out.push(Fence { a, b, left: s });
                if s == 0 {
                    break;
                }
                s = (s - 1) & inner;
            }
        }
    }
    out.sort();
    out
}

/// `lower ⪯ upper`: the interval of `lower` contains that of `upper` and
/// `lower`'s left set restricts to `upper`'s.
pub fn forcing_leq(lower: &Fence, upper: &Fence) -> bool {
    lower.a <= upper.a && upper.b <= lower.b && lower.left & interval(upper.a, upper.b) == upper.left
}

/// A lattice congruence of the weak order on permutations of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    n: usize,
    fences: BTreeSet<Fence>,
}

impl Congruence {
    /// The identity relation.
    pub fn empty(n: usize) -> Self {
        Congruence { n, fences: BTreeSet::new() }
    }

    /// Every permutation equivalent to every other.
    pub fn full(n: usize) -> Self {
        Congruence { n, fences: all_fences(n).into_iter().collect() }
    }

    /// The congruence whose quotientope is the associahedron: all fences
    /// with a nonempty left set.
    pub fn sylvester(n: usize) -> Self {
        Congruence { n, fences: all_fences(n).into_iter().filter(|f| f.left != 0).collect() }
    }

    /// Smallest downset of the forcing order containing `generators`.
    pub fn downset_closure(n: usize, generators: &[Fence]) -> Result<Self, Error> {
        if n > 63 {
            return Err(Error::input("n must be at most 63"));
        }
        if let Some(g) = generators.iter().find(|g| g.b > n) {
            return Err(Error::input(format!("fence {g} lies outside [{n}]")));
        }
        // a fence lies below a generator iff its interval contains the
        // generator's and it agrees with the generator's left set inside
        let mut fences = BTreeSet::new();
        for g in generators {
            for a in 1..=g.a {
                for b in g.b..=n {
                    let free = interval(a, b) & !interval(g.a, g.b);
                    let mut s = free;
                    loop {
                        fences.insert(Fence { a, b, left: s | g.left });
                        if s == 0 {
                            break;
                        }
                        s = (s - 1) & free;
                    }
                }
            }
        }
        Ok(Congruence { n, fences })
    }

    /// Parses `#congruence n=<n>` followed by lines `fence a b {l1,l2,...}`;
    /// the generators are closed downward.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with("//"));
        let header = lines.next().ok_or_else(|| Error::input("empty congruence file"))?;
        let n: usize = header
            .strip_prefix("#congruence")
            .and_then(|r| r.trim().strip_prefix("n="))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::input(format!("bad congruence header: {header}")))?;
        let mut gens = Vec::new();
        for line in lines {
            let bad = || Error::input(format!("bad fence line: {line}"));
            let rest = line.strip_prefix("fence").ok_or_else(bad)?.trim();
            let (ab, l) = rest.split_once('{').ok_or_else(bad)?;
            let l = l.strip_suffix('}').ok_or_else(bad)?;
            let ab: Vec<usize> = ab.split_whitespace().map(|s| s.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
            let [a, b] = ab.as_slice() else { return Err(bad()) };
            let left: Vec<usize> = l
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            gens.push(Fence::new(*a, *b, &left)?);
        }
        Congruence::downset_closure(n, &gens)
    }

    /// Builds from an explicit fence set, which must be a downset.
    pub fn from_fences(n: usize, fences: impl IntoIterator<Item = Fence>) -> Result<Self, Error> {
        let c = Congruence { n, fences: fences.into_iter().collect() };
        if let Some(f) = c.fences.iter().find(|f| f.b > n) {
            return Err(Error::input(format!("fence {f} lies outside [{n}]")));
        }
        let closed = Congruence::downset_closure(n, &c.fences.iter().copied().collect::<Vec<_>>())?;
        if closed != c {
            return Err(Error::input("fence set is not a downset of the forcing order"));
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fences(&self) -> &BTreeSet<Fence> {
        &self.fences
    }

    pub fn contains(&self, f: &Fence) -> bool {
        self.fences.contains(f)
    }

    fn has(&self, a: usize, b: usize, left: u64) -> bool {
        self.fences.contains(&Fence::from_mask(a, b, left))
    }

    /// Restriction to permutations of `[n-1]` followed by `n`.
    pub fn restrict(&self) -> Result<Congruence, Error> {
        if self.n < 2 {
            return Err(Error::input("cannot restrict below n = 1"));
        }
        Ok(Congruence { n: self.n - 1, fences: self.fences.iter().copied().filter(|f| f.b < self.n).collect() })
    }
}

/// All congruences on `[n]`, one per downset of the forcing order.
pub fn all_congruences(n: usize) -> Result<Vec<Congruence>, Error> {
    if n > 4 {
        return Err(Error::budget(format!("instance too large: n = {n}, budget 4")));
    }
    let fences = all_fences(n);
    let below: Vec<u32> = fences
        .iter()
        .map(|f| (0..fences.len()).filter(|&j| forcing_leq(&fences[j], f)).fold(0, |m, j| m | 1 << j))
        .collect();
    let mut out = Vec::new();
    for set in 0u32..1 << fences.len() {
        if (0..fences.len()).all(|i| set >> i & 1 == 0 || below[i] & !set == 0) {
            let fs = (0..fences.len()).filter(|&i| set >> i & 1 == 1).map(|i| fences[i]);
            out.push(Congruence { n, fences: fs.collect() });
        }
    }
    Ok(out)
}

/// The fence containing the edge that swaps positions `p` and `p + 1`.
fn edge_fence(perm: &[u8], p: usize) -> Fence {
    let (x, y) = (perm[p] as usize, perm[p + 1] as usize);
    let (a, b) = (x.min(y), x.max(y));
    Fence::from_mask(a, b, mask_of(perm[..p].iter().copied()))
}

/// Classes of a congruence on the permutations of `[n]`.
#[derive(Clone, Debug)]
pub struct PermClasses {
    n: usize,
    perms: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    class: Vec<usize>,
}

/// Connected components of the permutations under the adjacent
/// transpositions lying in some fence of `c`.
pub fn perm_classes(c: &Congruence) -> Result<PermClasses, Error> {
    let n = c.n;
    if n > 7 {
        return Err(Error::budget(format!("instance too large: n = {n}, budget 7")));
    }
    let mut perms = vec![vec![]];
    for k in 1..=n as u8 {
        perms = perms
            .into_iter()
            .flat_map(|p: Vec<u8>| {
                (0..=p.len()).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, k);
                    q
                })
            })
            .collect();
    }
    perms.sort();
    let index: HashMap<Vec<u8>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..perms.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, p) in perms.iter().enumerate() {
        for pos in 0..n.saturating_sub(1) {
            if p[pos] < p[pos + 1] && c.contains(&edge_fence(p, pos)) {
                let mut q = p.clone();
                q.swap(pos, pos + 1);
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, index[&q]));
                parent[ri] = rj;
            }
        }
    }
    let class = (0..perms.len()).map(|i| find(&mut parent, i)).collect();
    Ok(PermClasses { n, perms, index, class })
}

impl PermClasses {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Class representative index of a permutation, `None` if it is not a
    /// permutation of `[n]`.
    pub fn class_of(&self, perm: &[u8]) -> Option<usize> {
        self.index.get(perm).map(|&i| self.class[i])
    }

    /// The classes, each sorted, in order of their smallest member.
    pub fn classes(&self) -> Vec<Vec<Vec<u8>>> {
        let mut by: HashMap<usize, Vec<Vec<u8>>> = HashMap::new();
        for (i, p) in self.perms.iter().enumerate() {
            by.entry(self.class[i]).or_default().push(p.clone());
        }
        let mut out: Vec<_> = by.into_values().collect();
        out.sort();
        out
    }

    /// Sorted classes met by the permutations of a face.
    pub fn face_signature(&self, f: &OrderedPartition) -> Vec<usize> {
        let mut acc: Vec<Vec<u8>> = vec![vec![]];
        for block in f.blocks() {
            let orders = permutations_of(block);
            acc = acc.iter().flat_map(|pre| orders.iter().map(move |o| [pre.as_slice(), o].concat())).collect();
        }
        let set: BTreeSet<usize> = acc.iter().map(|p| self.class[self.index[p]]).collect();
        set.into_iter().collect()
    }

    /// Every permutation of either face is equivalent to one of the other.
    pub fn faces_equivalent(&self, a: &OrderedPartition, b: &OrderedPartition) -> bool {
        self.face_signature(a) == self.face_signature(b)
    }
}

fn permutations_of(items: &[u8]) -> Vec<Vec<u8>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations_of(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// The consecutive-elements test: no block has consecutive elements `x < y`
/// whose fence, with left set the earlier blocks inside `]x, y[`, lies in
/// `c`.
pub fn is_stable(f: &OrderedPartition, c: &Congruence) -> Result<bool, Error> {
    if f.n() != c.n {
        return Err(Error::input(format!("partition of [{}] under a congruence on [{}]", f.n(), c.n)));
    }
    let mut before = 0u64;
    for block in f.blocks() {
        for w in block.windows(2) {
            if c.has(w[0] as usize, w[1] as usize, before) {
                return Ok(false);
            }
        }
        before |= mask_of(block.iter().copied());
    }
    Ok(true)
}

/// Result of exchanging two adjacent blocks of a stable partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapOutcome {
    /// Value ranges of the blocks overlap; the swap leaves the class.
    NotEquivalent,
    /// Separated ranges and the separating fence is in the congruence.
    EquivalentStable,
    /// Separated ranges but the separating fence is missing: the swapped
    /// partition is stable and in another class.
    Blocked,
}

/// Exchanges blocks `j` and `j + 1` (1-based) of a stable partition.
pub fn swap_adjacent(f: &OrderedPartition, j: usize, c: &Congruence) -> Result<(SwapOutcome, OrderedPartition), Error> {
    let k = f.blocks().len();
    if j == 0 || j >= k {
        return Err(Error::input(format!("swap index {j} out of range 1..{k}")));
    }
    if !is_stable(f, c)? {
        return Err(Error::input(format!("{f} is not stable")));
    }
    let blocks = f.blocks();
    let (x, y) = (&blocks[j - 1], &blocks[j]);
    let (mx, mxx) = (x[0] as usize, *x.last().expect("nonempty") as usize);
    let (my, myy) = (y[0] as usize, *y.last().expect("nonempty") as usize);
    let before = mask_of(blocks[..j - 1].iter().flatten().copied());
    let mut swapped = blocks.to_vec();
    swapped.swap(j - 1, j);
    let swapped = OrderedPartition::new(swapped)?;
    let outcome = if mxx < my {
        if c.has(mxx, my, before) {
            SwapOutcome::EquivalentStable
        } else {
            SwapOutcome::Blocked
        }
    } else if myy < mx {
        if c.has(myy, mx, before) {
            SwapOutcome::EquivalentStable
        } else {
            SwapOutcome::Blocked
        }
    } else {
        SwapOutcome::NotEquivalent
    };
    Ok((outcome, swapped))
}

/// `c⃗(F)` for `F` stable under the restriction of `c`: every `č_k` and only
/// the stable `ĉ_k`, keeping one `č` per run of equivalent ones, starting
/// at `č_0` and ending at `č_k`.
pub fn insertion_sequence(f: &OrderedPartition, c: &Congruence) -> Result<Vec<OrderedPartition>, Error> {
    let n = c.n;
    if f.n() + 1 != n {
        return Err(Error::input(format!("partition of [{}] cannot be extended to [{n}]", f.n())));
    }
    if !is_stable(f, &c.restrict()?)? {
        return Err(Error::input(format!("{f} is not stable under the restriction")));
    }
    Ok(insertion_sequence_unchecked(f, c))
}

fn insertion_sequence_unchecked(f: &OrderedPartition, c: &Congruence) -> Vec<OrderedPartition> {
    let n = f.n() + 1;
    let k = f.blocks().len();
    let bar = |i| f.insert_bar(i).expect("in range");
    if c.has(n - 1, n, 0) {
        return vec![bar(0)];
    }
    let mut before = 0u64;
    let mut stable_joins = Vec::new();
    for (i, block) in f.blocks().iter().enumerate() {
        let top = *block.last().expect("nonempty") as usize;
        if !c.has(top, n, before) {
            stable_joins.push(i + 1);
        }
        before |= mask_of(block.iter().copied());
    }
    let mut out = vec![bar(0)];
    for (j, &i) in stable_joins.iter().enumerate() {
        out.push(f.insert_join(i).expect("in range"));
        out.push(if j + 1 == stable_joins.len() { bar(k) } else { bar(i) });
    }
    out
}

struct QuotientExpansion {
    c: Congruence,
}

impl Expansion for QuotientExpansion {
    type Face = OrderedPartition;

    fn base(&self) -> Vec<OrderedPartition> {
        vec![OrderedPartition::identity(1)]
    }

    fn expand(&self, _level: usize, parent: &OrderedPartition, index: usize) -> Vec<OrderedPartition> {
        // fences with b = parent.n() + 1 are exactly those of the restriction
        let mut seq = insertion_sequence_unchecked(parent, &self.c);
        if index.is_multiple_of(2) {
            seq.reverse();
        }
        seq
    }
}

/// Hamiltonian cycle through one stable representative of every face of the
/// quotientope, ending with [`EMPTY`].
pub fn face_listing_quotientope(c: &Congruence) -> Result<impl Iterator<Item = String>, Error> {
    if c.n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    Congruence::from_fences(c.n, c.fences.iter().copied())?;
    let lazy = LazyListing::new(QuotientExpansion { c: c.clone() }, c.n - 1);
    Ok(lazy.map(|f| f.id()).chain(std::iter::once(EMPTY.to_string())))
}

/// `fine` is a face of `coarse`: merging runs of consecutive blocks of
/// `fine` gives `coarse`.
pub fn is_face_of(fine: &OrderedPartition, coarse: &OrderedPartition) -> bool {
    let mut it = fine.blocks().iter();
    for target in coarse.blocks() {
        let want = mask_of(target.iter().copied());
        let mut got = 0u64;
        while got != want {
            let Some(b) = it.next() else { return false };
            got |= mask_of(b.iter().copied());
            if got & !want != 0 {
                return false;
            }
        }
    }
    it.next().is_none()
}

/// Face lattice of a quotientope computed from permutation classes.
#[derive(Clone, Debug)]
pub struct QuotientLattice {
    /// Cover graph on classes, each named by its least stable
    /// representative.
    pub graph: CoverGraph,
    class_name: HashMap<String, String>,
    stable: HashSet<String>,
}

impl QuotientLattice {
    /// Name of the class of an ordered partition id.
    pub fn class_name(&self, id: &str) -> Option<&str> {
        self.class_name.get(id).map(String::as_str)
    }

    pub fn is_stable(&self, id: &str) -> bool {
        self.stable.contains(id)
    }

    /// Replaces each entry by its class name, rejecting unstable or unknown
    /// representatives.
    pub fn canonical_listing(&self, listing: &Listing) -> Result<Listing, Error> {
        let mut ids = Vec::with_capacity(listing.len());
        for (i, id) in listing.ids.iter().enumerate() {
            if id == EMPTY {
                ids.push(id.clone());
                continue;
            }
            let name = self
                .class_name(id)
                .ok_or_else(|| Error::input(format!("position {}: unknown face {id}", i + 1)))?;
            if !self.is_stable(id) {
                return Err(Error::input(format!("position {}: {id} is not stable", i + 1)));
            }
            ids.push(name.to_string());
        }
        Ok(Listing { ids, cyclic: listing.cyclic })
    }
}

/// Groups ordered partitions into face classes and joins classes of
/// consecutive rank that contain nested faces.
pub fn brute_quotient_lattice(c: &Congruence) -> Result<QuotientLattice, Error> {
    let n = c.n;
    if n > QUOTIENT_BUDGET {
        return Err(Error::budget(format!("instance too large: n = {n}, budget {QUOTIENT_BUDGET}")));
    }
    let classes = perm_classes(c)?;
    let parts = ordered_partitions(n);
    let sigs: Vec<Vec<usize>> = parts.iter().map(|p| classes.face_signature(p)).collect();
    let mut group: HashMap<&[usize], Vec<usize>> = HashMap::new();
    for (i, s) in sigs.iter().enumerate() {
        group.entry(s.as_slice()).or_default().push(i);
    }
    let mut class_of = vec![0; parts.len()];
    let mut elements = Vec::new();
    let mut class_name = HashMap::new();
    let mut stable = HashSet::new();
    let mut groups: Vec<&Vec<usize>> = group.values().collect();
    groups.sort();
    for (g, members) in groups.into_iter().enumerate() {
        let most = members.iter().map(|&i| parts[i].blocks().len()).max().expect("nonempty");
        let mut reps: Vec<String> =
            members.iter().filter(|&&i| parts[i].blocks().len() == most).map(|&i| parts[i].id()).collect();
        reps.sort();
        let name = reps[0].clone();
        for &i in members {
            class_of[i] = g;
            class_name.insert(parts[i].id(), name.clone());
        }
        stable.extend(reps);
        elements.push(RankedElement::new(name, (n - most) as i32));
    }
    let mut edges = HashSet::new();
    for (i, fine) in parts.iter().enumerate() {
        for (j, coarse) in parts.iter().enumerate() {
            let (ci, cj) = (class_of[i], class_of[j]);
            if elements[cj].rank == elements[ci].rank + 1 && is_face_of(fine, coarse) {
                edges.insert((ci, cj));
            }
        }
    }
    let mut edge_ids: Vec<(String, String)> =
        edges.into_iter().map(|(a, b)| (elements[a].id.clone(), elements[b].id.clone())).collect();
    for e in elements.iter().filter(|e| e.rank == 0) {
        edge_ids.push((EMPTY.to_string(), e.id.clone()));
    }
    elements.push(RankedElement::bottom());
    let graph = CoverGraph::new(elements, edge_ids)?;
    Ok(QuotientLattice { graph, class_name, stable })
}
