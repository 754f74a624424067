mod common;

use std::collections::BTreeSet;

use common::*;
use pattern_mobius::{contains, cover, downset, interval, MobiusCache, MobiusTable, Perm};

#[test]
fn containment_matches_subset_search() {
    let small: Vec<Seq> = (0..=4).flat_map(all_perms).collect();
    for n in 0..=6 {
        for p in all_perms(n) {
            let pp = to_perm(&p);
            for s in &small {
                assert_eq!(
                    contains(&to_perm(s), &pp),
                    common::contains(s, &p),
                    "{s:?} in {p:?}"
                );
            }
        }
    }
}

#[test]
fn downsets_match_subset_enumeration() {
    for n in 0..=7 {
        for p in all_perms(n) {
            let got: BTreeSet<Seq> = downset(&to_perm(&p)).into_iter().map(Perm::into_entries).collect();
            assert_eq!(got, patterns(&p), "{p:?}");
        }
    }
}

#[test]
fn covers_are_one_point_deletions() {
    for p in all_perms(6) {
        let want: BTreeSet<Seq> = patterns(&p).into_iter().filter(|t| t.len() == 5).collect();
        let got: BTreeSet<Seq> = cover(&to_perm(&p)).into_iter().map(Perm::into_entries).collect();
        assert_eq!(got, want);
    }
}

#[test]
fn intervals_match_filtered_downsets() {
    for p in all_perms(5) {
        for s in [vec![1u8], vec![1, 2], vec![2, 1], vec![1, 3, 2], vec![2, 4, 1, 3]] {
            let want: BTreeSet<Seq> = patterns(&p)
                .into_iter()
                .filter(|t| common::contains(&s, t))
                .collect();
            let got: BTreeSet<Seq> = interval(&to_perm(&s), &to_perm(&p))
                .unwrap()
                .into_iter()
                .map(Perm::into_entries)
                .collect();
            assert_eq!(got, want);
        }
    }
}

#[test]
fn general_mobius_matches_order_matrix() {
    let cache = MobiusCache::new();
    let lowers: Vec<Seq> = (1..=3).flat_map(all_perms).chain([vec![2, 4, 1, 3]]).collect();
    for n in 1..=6 {
        for p in all_perms(n) {
            for s in &lowers {
                let got = cache.mobius(&to_perm(s), &to_perm(&p)).unwrap();
                assert_eq!(got, mobius_order_matrix(s, &p), "μ({s:?}, {p:?})");
            }
        }
    }
}

#[test]
fn lower_bound_tables_match_order_matrix() {
    for s in [vec![1u8, 2], vec![2, 1, 3], vec![3, 1, 4, 2]] {
        let table = MobiusTable::for_lower_bound(&to_perm(&s), 6).unwrap();
        for n in 1..=6 {
            for (p, &v) in all_perms(n).iter().zip(table.level(n)) {
                assert_eq!(v, mobius_order_matrix(&s, p), "μ({s:?}, {p:?})");
            }
        }
    }
}

#[test]
fn symmetry_orbits() {
    for n in 1..=6 {
        for p in all_perms(n) {
            let orbit = to_perm(&p).symmetry_orbit();
            let got: BTreeSet<Seq> = orbit.images.iter().cloned().map(Perm::into_entries).collect();
            let want = symmetries(&p);
            assert_eq!(got, want);
            assert_eq!(orbit.canonical.entries(), want.iter().next().unwrap().as_slice());
        }
    }
}

#[test]
fn simplicity_and_adjacencies() {
    for n in 1..=8 {
        for p in all_perms(n) {
            let pp = to_perm(&p);
            assert_eq!(pp.is_simple(), is_simple(&p), "{p:?}");
            let prof = pp.adjacency_profile();
            assert_eq!(prof.up_positions.len(), up_adjacencies(&p));
            assert_eq!(prof.down_positions.len(), down_adjacencies(&p));
            assert_eq!(pp.is_adjacency_free(), up_adjacencies(&p) + down_adjacencies(&p) == 0);
            let triple = has_interval_like(&p, &[vec![1, 2, 3], vec![3, 2, 1]]);
            assert_eq!(pp.has_triple_adjacency(), triple, "{p:?}");
        }
    }
}

#[test]
fn principal_table_matches_naive_recursion_to_length_six() {
    let table = MobiusTable::principal(6).unwrap();
    let mut naive = NaivePrincipal::default();
    for n in 1..=6 {
        for (p, &v) in all_perms(n).iter().zip(table.level(n)) {
            assert_eq!(v, naive.mu(p));
        }
    }
}
