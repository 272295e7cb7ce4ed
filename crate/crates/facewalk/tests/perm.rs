use std::collections::{BTreeSet, HashMap, HashSet};

use facewalk::perm::{
    bperm_cover_graph, cover_graph, face_listing_bperm, face_listing_perm, facet_hamiltonian_bperm, flag_to_signed_perm,
    ordered_partitions, signed_ordered_partitions, signed_perm_to_flag, OrderedPartition, SignedOrderedPartition,
};
use facewalk::posetcore::{check_hamiltonian, CoverGraph, Listing, Report};
use facewalk::strip::check_facet_hamiltonian_flags;
use facewalk::{cube, RankedElement};
use proptest::prelude::*;

fn fubini(n: usize) -> u64 {
    let mut a = vec![1u64];
    for m in 1..=n {
        let mut binom = 1u64;
        let mut s = 0;
        for k in 1..=m {
            binom = binom * (m - k + 1) as u64 / k as u64;
            s += binom * a[m - k];
        }
        a.push(s);
    }
    a[n]
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn permutations(items: &[i16]) -> Vec<Vec<i16>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Signed permutations contained in a face: permute each block freely, and
/// let the boxed block take both signs.
fn vertex_set(face: &SignedOrderedPartition) -> BTreeSet<Vec<i16>> {
    let mut acc: Vec<Vec<i16>> = vec![vec![]];
    for (i, block) in face.blocks().iter().enumerate() {
        let mut choices = Vec::new();
        if i == 0 && face.is_boxed() {
            for mask in 0u32..1 << block.len() {
                let signed: Vec<i16> =
                    block.iter().enumerate().map(|(j, &v)| if mask >> j & 1 == 1 { -v } else { v }).collect();
                choices.extend(permutations(&signed));
            }
        } else {
            choices = permutations(block);
        }
        acc = acc.iter().flat_map(|pre| choices.iter().map(move |c| [pre.clone(), c.clone()].concat())).collect();
    }
    acc.into_iter().collect()
}

fn geometric_edges(faces: &[(String, i32, BTreeSet<Vec<i16>>)]) -> HashSet<(String, String)> {
    let mut out = HashSet::new();
    for a in faces {
        for b in faces {
            if b.1 == a.1 + 1 && a.2.is_subset(&b.2) {
                out.insert((a.0.clone(), b.0.clone()));
            }
        }
    }
    out
}

fn nonbottom_edges(g: &CoverGraph) -> HashSet<(String, String)> {
    g.edges().into_iter().filter(|(a, _)| a != "EMPTY").collect()
}

#[test]
fn cover_graphs_agree_with_vertex_sets() {
    for n in 1..=4 {
        let faces: Vec<_> = ordered_partitions(n)
            .into_iter()
            .map(|p| {
                let s = SignedOrderedPartition::new(p.blocks().iter().map(|b| b.iter().map(|&v| v as i16).collect()).collect(), false).unwrap();
                (p.id(), p.rank(), vertex_set(&s))
            })
            .collect();
        assert_eq!(faces.len() as u64, fubini(n));
        assert_eq!(geometric_edges(&faces), nonbottom_edges(&cover_graph(n)), "n={n}");
    }
    for n in 1..=3 {
        let faces: Vec<_> = signed_ordered_partitions(n).into_iter().map(|p| (p.id(), p.rank(), vertex_set(&p))).collect();
        let top = faces.iter().filter(|f| f.1 == n as i32).count();
        assert_eq!(top, 1);
        let vertices = faces.iter().filter(|f| f.1 == 0).count();
        assert_eq!(vertices, (1 << n) * factorial(n));
        assert_eq!(geometric_edges(&faces), nonbottom_edges(&bperm_cover_graph(n)), "n={n}");
    }
}

#[test]
fn perm_listing_is_hamiltonian() {
    for n in 2..=6 {
        let ids: Vec<String> = face_listing_perm(n).unwrap().collect();
        assert_eq!(ids.len() as u64, fubini(n) + 1);
        assert_eq!(check_hamiltonian(&cover_graph(n), &Listing::cyclic(ids)), Report::Ok, "n={n}");
    }
}

#[test]
fn perm_listing_length_up_to_nine() {
    for n in 7..=9 {
        assert_eq!(face_listing_perm(n).unwrap().count() as u64, fubini(n) + 1);
    }
    assert_eq!(fubini(3), 13);
    assert_eq!(fubini(5), 541);
}

#[test]
fn perm_listing_for_three() {
    let ids: Vec<String> = face_listing_perm(3).unwrap().collect();
    // c<-(1|2), c->(12), c<-(2|1)
    let p3 = [
        "1|2|3", "1|23", "1|3|2", "13|2", "3|1|2", "3|12", "123", "12|3", "2|1|3", "2|13", "2|3|1", "23|1", "3|2|1", "EMPTY",
    ];
    assert_eq!(ids, p3);
}

#[test]
fn listing_is_symmetric_under_block_reversal() {
    for n in 2..=5 {
        let ids: Vec<String> = face_listing_perm(n).unwrap().filter(|s| s != "EMPTY").collect();
        let parts: Vec<OrderedPartition> = ids.iter().map(|s| OrderedPartition::parse(s, n).unwrap()).collect();
        let len = parts.len();
        for i in 0..len {
            assert_eq!(parts[len - 1 - i], parts[i].reversed(), "n={n} i={i}");
        }
    }
}

#[test]
fn permutations_follow_right_to_left_insertion() {
    let perms = |n: usize| -> Vec<OrderedPartition> {
        face_listing_perm(n)
            .unwrap()
            .filter(|s| s != "EMPTY")
            .map(|s| OrderedPartition::parse(&s, n).unwrap())
            .filter(|p| p.blocks().len() == n)
            .collect()
    };
    for n in 2..=4 {
        let expanded: Vec<OrderedPartition> =
            perms(n).iter().flat_map(|x| (0..=n).rev().map(move |i| x.insert_bar(i).unwrap())).collect();
        assert_eq!(perms(n + 1), expanded, "n={n}");
    }
}

#[test]
fn bperm_listing_for_two() {
    let ids: Vec<String> = face_listing_bperm(2).unwrap().collect();
    let expected = [
        "1|2", "12", "2|1", "[2]|1", "-2|1", "1-2", "1|-2", "[1]|-2", "[12]", "[1]|2", "-1|2", "-12", "2|-1", "[2]|-1",
        "-2|-1", "-1-2", "-1|-2", "EMPTY",
    ];
    assert_eq!(ids, expected);
}

#[test]
fn bperm_listing_is_hamiltonian() {
    for n in 1..=4 {
        let ids: Vec<String> = face_listing_bperm(n).unwrap().collect();
        let g = bperm_cover_graph(n);
        assert_eq!(ids.len(), g.len());
        if n <= 3 {
            assert_eq!(check_hamiltonian(&g, &Listing::cyclic(ids)), Report::Ok, "n={n}");
        }
    }
}

fn all_flags(n: usize) -> Vec<Vec<String>> {
    let g = cube::cover_graph(n);
    let mut out = Vec::new();
    let mut stack = vec![vec!["EMPTY".to_string()]];
    while let Some(chain) = stack.pop() {
        let last = g.index_of(chain.last().unwrap()).unwrap();
        let r = g.elements()[last].rank;
        let ups: Vec<&RankedElement> =
            g.neighbors(last).iter().map(|&j| &g.elements()[j]).filter(|e| e.rank == r + 1).collect();
        if ups.is_empty() {
            out.push(chain);
            continue;
        }
        for e in ups {
            let mut c = chain.clone();
            c.push(e.id.clone());
            stack.push(c);
        }
    }
    out
}

#[test]
fn flags_biject_onto_signed_permutations() {
    for n in 1..=4 {
        let flags = all_flags(n);
        assert_eq!(flags.len(), (1 << n) * factorial(n));
        let mut seen = HashSet::new();
        for f in &flags {
            let p = flag_to_signed_perm(f).unwrap();
            assert_eq!(&signed_perm_to_flag(&p).unwrap(), f);
            assert!(seen.insert(p.id()));
        }
        let all: HashSet<String> =
            signed_ordered_partitions(n).into_iter().filter(|p| p.rank() == 0).map(|p| p.id()).collect();
        assert_eq!(seen, all);
    }
}

/// Skeleton adjacency of the B-permutahedron: an adjacent transposition
/// keeping signs, or a sign change of the first entry.
fn bperm_adjacent(a: &[i16], b: &[i16]) -> bool {
    let diff: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
    match diff.as_slice() {
        [0] => a[0] == -b[0],
        [i, j] => *j == i + 1 && a[*i] == b[*j] && a[*j] == b[*i],
        _ => false,
    }
}

#[test]
fn facet_hamiltonian_cycles() {
    for n in 2..=4 {
        let listing = facet_hamiltonian_bperm(n).unwrap();
        assert_eq!(listing.len(), 3usize.pow(n as u32) - 1);
        let perms: Vec<SignedOrderedPartition> =
            listing.ids.iter().map(|s| SignedOrderedPartition::parse(s, n).unwrap()).collect();
        let entries: Vec<Vec<i16>> = perms.iter().map(|p| p.blocks().iter().map(|b| b[0]).collect()).collect();
        for i in 0..entries.len() {
            assert!(bperm_adjacent(&entries[i], &entries[(i + 1) % entries.len()]), "n={n} step {i}");
        }
        let flags: Vec<Vec<String>> = perms.iter().map(|p| signed_perm_to_flag(p).unwrap()).collect();
        let top = "-".repeat(n);
        let faces: Vec<RankedElement> = cube::faces(n).into_iter().filter(|f| f.rank >= 0 && f.id != top).collect();
        assert_eq!(check_facet_hamiltonian_flags(&flags, &faces), Report::Ok);
        let distinct: HashSet<&String> = listing.ids.iter().collect();
        assert_eq!(distinct.len(), listing.len());
    }
    assert!(facet_hamiltonian_bperm(1).is_err());
}

fn arb_partition(max_n: usize) -> impl Strategy<Value = OrderedPartition> {
    (1..=max_n).prop_flat_map(|n| {
        (Just(n), prop::collection::vec(0..n, n), Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle())
            .prop_map(|(n, labels, order)| {
                let mut by: HashMap<usize, Vec<u8>> = HashMap::new();
                for (i, &l) in labels.iter().enumerate() {
                    by.entry(l).or_default().push(order[i]);
                }
                let mut keys: Vec<usize> = by.keys().copied().collect();
                keys.sort_unstable();
                let blocks = keys.into_iter().map(|k| by.remove(&k).unwrap()).collect();
                let p = OrderedPartition::new(blocks).unwrap();
                assert_eq!(p.n(), n);
                p
            })
    })
}

fn adjacent_in_lattice(a: &OrderedPartition, b: &OrderedPartition) -> bool {
    a.is_covered_by(b) || b.is_covered_by(a)
}

proptest! {
    #[test]
    fn insertion_sequences_are_paths(x in arb_partition(7)) {
        let seq = x.insertion_sequence();
        prop_assert_eq!(seq.len(), 2 * x.blocks().len() + 1);
        for w in seq.windows(2) {
            prop_assert!(adjacent_in_lattice(&w[0], &w[1]));
            prop_assert_eq!((w[0].rank() - w[1].rank()).abs(), 1);
        }
        prop_assert_eq!(seq[0].rank(), x.rank());
    }

    #[test]
    fn signed_insertion_sequences_are_paths(x in arb_partition(6), mask in 0u32..64, boxed in any::<bool>()) {
        let blocks: Vec<Vec<i16>> = x
            .blocks()
            .iter()
            .enumerate()
            .map(|(i, b)| b.iter().map(|&v| if mask >> (v - 1) & 1 == 1 && !(boxed && i == 0) { -(v as i16) } else { v as i16 }).collect())
            .collect();
        let s = SignedOrderedPartition::new(blocks, boxed).unwrap();
        let seq = s.insertion_sequence();
        let k = x.blocks().len();
        prop_assert_eq!(seq.len(), if boxed { 4 * k - 1 } else { 4 * k + 3 });
        for w in seq.windows(2) {
            prop_assert!(w[0].is_covered_by(&w[1]) || w[1].is_covered_by(&w[0]), "{} {}", w[0], w[1]);
        }
        let ids: HashSet<String> = seq.iter().map(|y| y.id()).collect();
        prop_assert_eq!(ids.len(), seq.len());
    }
}

#[test]
fn streaming_matches_recursive_construction() {
    for n in 2..=7 {
        let mut p = vec![OrderedPartition::identity(1)];
        for _ in 1..n {
            let mut next = Vec::new();
            for (j, x) in p.iter().enumerate() {
                let mut seq = x.insertion_sequence();
                if j % 2 == 0 {
                    seq.reverse();
                }
                next.extend(seq);
            }
            p = next;
        }
        let expected: Vec<String> = p.iter().map(|x| x.id()).chain(["EMPTY".to_string()]).collect();
        assert_eq!(face_listing_perm(n).unwrap().collect::<Vec<_>>(), expected, "n={n}");
    }
}
