//! Per-family dispatch: listings, ranks, oracle graphs and lattice sizes.

use std::fmt;

use clap::ValueEnum;
use facewalk::assoc::{self, Dissection};
use facewalk::graphassoc::{self, ChordalGraph};
use facewalk::perm::{self, SignedOrderedPartition};
use facewalk::planar3::{self, PlaneGraph};
use facewalk::quotient::{self, Congruence};
use facewalk::{cube, CoverGraph, Listing, Report, EMPTY};

use crate::outcome::{Failure, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cube,
    Perm,
    Bperm,
    Assoc,
    Gassoc,
    Quotientope,
    Planar3,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

impl Family {
    pub fn parse(name: &str) -> Outcome<Self> {
        Family::from_str(name, true).map_err(|_| Failure::Input(format!("unknown family {name:?}")))
    }
}

/// A family together with its size and auxiliary input.
pub enum Instance {
    Cube(usize),
    Perm(usize),
    Bperm(usize),
    Assoc(usize),
    Gassoc(ChordalGraph),
    Quotientope(Congruence),
    Planar3(PlaneGraph),
}

/// Raw command-line inputs from which an [`Instance`] is built.
#[derive(Default)]
pub struct Inputs<'a> {
    pub n: Option<usize>,
    pub graph: Option<&'a str>,
    pub congruence: Option<&'a str>,
}

pub fn read_file(path: &str) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))
}

fn need_n(n: Option<usize>, family: Family) -> Outcome<usize> {
    n.ok_or_else(|| Failure::Input(format!("family {family} needs --n")))
}

fn check_n(given: Option<usize>, actual: usize) -> Outcome<()> {
    match given {
        Some(n) if n != actual => Err(Failure::Input(format!("--n {n} does not match the input size {actual}"))),
        _ => Ok(()),
    }
}

impl Instance {
    pub fn build(family: Family, inputs: &Inputs) -> Outcome<Self> {
        let inst = match family {
            Family::Cube => Instance::Cube(need_n(inputs.n, family)?),
            Family::Perm => Instance::Perm(need_n(inputs.n, family)?),
            Family::Bperm => Instance::Bperm(need_n(inputs.n, family)?),
            Family::Assoc => Instance::Assoc(need_n(inputs.n, family)?),
            Family::Gassoc => {
                let path = inputs.graph.ok_or_else(|| Failure::Input("family gassoc needs --graph".into()))?;
                let h = ChordalGraph::parse(&read_file(path)?)?;
                check_n(inputs.n, h.n())?;
                Instance::Gassoc(h)
            }
            Family::Quotientope => {
                let c = match inputs.congruence {
                    Some(path) => Congruence::parse(&read_file(path)?)?,
                    None => Congruence::empty(need_n(inputs.n, family)?),
                };
                check_n(inputs.n, c.n())?;
                Instance::Quotientope(c)
            }
            Family::Planar3 => {
                let path = inputs.graph.ok_or_else(|| Failure::Input("family planar3 needs --graph".into()))?;
                let h = PlaneGraph::parse(&read_file(path)?)?;
                check_n(inputs.n, h.vertex_count())?;
                Instance::Planar3(h)
            }
        };
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        match self {
            Instance::Cube(n) | Instance::Perm(n) | Instance::Bperm(n) | Instance::Assoc(n) => *n,
            Instance::Gassoc(h) => h.n(),
            Instance::Quotientope(c) => c.n(),
            Instance::Planar3(h) => h.vertex_count(),
        }
    }

    /// The family's cyclic face listing, ending with `EMPTY`.
    pub fn listing(&self) -> Outcome<Box<dyn Iterator<Item = String> + '_>> {
        Ok(match self {
            Instance::Cube(n) => Box::new(cube::gamma(*n)?),
            Instance::Perm(n) => Box::new(perm::face_listing_perm(*n)?),
            Instance::Bperm(n) => Box::new(perm::face_listing_bperm(*n)?),
            Instance::Assoc(n) => Box::new(assoc::face_listing_assoc(*n)?),
            Instance::Gassoc(h) => Box::new(graphassoc::face_listing_graph_assoc(h)?),
            Instance::Quotientope(c) => Box::new(quotient::face_listing_quotientope(c)?),
            Instance::Planar3(h) => Box::new(planar3::cell_ham_cycle(h)?.ids.into_iter()),
        })
    }

    /// Rank of a face id produced by [`Instance::listing`].
    pub fn rank(&self, id: &str) -> Outcome<i32> {
        if id == EMPTY {
            return Ok(-1);
        }
        let r = match self {
            Instance::Cube(_) => id.bytes().filter(|&c| c == b'-').count() as i32,
            Instance::Perm(n) => (*n - id.split('|').count()) as i32,
            Instance::Quotientope(c) => (c.n() - id.split('|').count()) as i32,
            Instance::Bperm(n) => SignedOrderedPartition::parse(id, *n)?.rank(),
            Instance::Assoc(n) => Dissection::parse(id, *n)?.rank(),
            Instance::Gassoc(h) => (h.n() - id.split(';').count()) as i32,
            Instance::Planar3(_) => match id.as_bytes()[0] {
                b'v' => 0,
                b'e' => 1,
                b'f' => 2,
                _ => 3,
            },
        };
        Ok(r)
    }

    /// Number of elements of the face lattice, bottom included, when it has
    /// a closed form; `None` for families guarded by their own budgets.
    pub fn lattice_size(&self) -> Option<u128> {
        match self {
            Instance::Cube(n) => Some(3u128.checked_pow(*n as u32)?.checked_add(1)?),
            Instance::Perm(n) => Some(fubini(*n)?.checked_add(1)?),
            Instance::Bperm(n) => Some(bperm_faces(*n)?.checked_add(1)?),
            Instance::Assoc(n) => Some(dissection_count(*n)?.checked_add(1)?),
            Instance::Gassoc(_) | Instance::Quotientope(_) => None,
            Instance::Planar3(h) => Some((h.vertex_count() + h.edge_count() + h.face_count() + 2) as u128),
        }
    }

    /// Checks `listing` against the brute-force face lattice. The lattice
    /// must have at most `budget` elements; graph associahedra and
    /// quotientopes are bounded by their own oracle budgets instead.
    pub fn verify(&self, listing: &Listing, budget: usize) -> Outcome<Report> {
        if let Some(size) = self.lattice_size().filter(|&s| s > budget as u128) {
            return Err(Failure::Budget(format!("lattice has {size} elements, budget {budget}")));
        }
        let graph: CoverGraph = match self {
            Instance::Cube(n) => cube::cover_graph(*n),
            Instance::Perm(n) => perm::cover_graph(*n),
            Instance::Bperm(n) => perm::bperm_cover_graph(*n),
            Instance::Assoc(n) => assoc::cover_graph(*n),
            Instance::Gassoc(h) => graphassoc::cover_graph(h)?,
            Instance::Planar3(h) => planar3::cells(h)?,
            Instance::Quotientope(c) => {
                let lattice = quotient::brute_quotient_lattice(c)?;
                for (i, id) in listing.ids.iter().enumerate() {
                    if id == EMPTY {
                        continue;
                    }
                    if lattice.class_name(id).is_none() {
                        return Ok(Report::fail(i + 1, format!("unknown face {id}")));
                    }
                    if !lattice.is_stable(id) {
                        return Ok(Report::fail(i + 1, format!("{id} is not a stable representative")));
                    }
                }
                let canonical = lattice.canonical_listing(listing)?;
                return Ok(facewalk::posetcore::check_hamiltonian(&lattice.graph, &canonical));
            }
        };
        Ok(facewalk::posetcore::check_hamiltonian(&graph, listing))
    }
}

/// Ordered set partitions of `[n]`.
pub fn fubini(n: usize) -> Option<u128> {
    let mut a: Vec<u128> = vec![1];
    for m in 1..=n {
        let mut binom: u128 = 1;
        let mut s: u128 = 0;
        for k in 1..=m {
            binom = binom.checked_mul((m - k + 1) as u128)? / k as u128;
            s = s.checked_add(binom.checked_mul(a[m - k])?)?;
        }
        a.push(s);
    }
    Some(a[n])
}

/// Nonempty faces of the B-permutahedron on `[n]`: an ordered partition with
/// signs on every element, or with an unsigned first block.
pub fn bperm_faces(n: usize) -> Option<u128> {
    let mut total = 2u128.checked_pow(n as u32)?.checked_mul(fubini(n)?)?;
    let mut binom: u128 = 1;
    for j in 1..=n {
        binom = binom * (n - j + 1) as u128 / j as u128;
        let term = binom.checked_mul(2u128.checked_pow((n - j) as u32)?)?.checked_mul(fubini(n - j)?)?;
        total = total.checked_add(term)?;
    }
    Some(total)
}

/// Dissections of a convex `n`-gon (the little Schröder numbers).
pub fn dissection_count(n: usize) -> Option<u128> {
    if n < 3 {
        return Some(1);
    }
    // s[k] with s[1] = s[2] = 1; the n-gon has s[n - 1] dissections
    let (mut prev, mut cur) = (1u128, 1u128);
    for k in 2..n - 1 {
        let num = (3 * (2 * k as u128 - 1)).checked_mul(cur)?.checked_sub((k as u128 - 2) * prev)?;
        (prev, cur) = (cur, num / (k as u128 + 1));
    }
    Some(cur)
}
