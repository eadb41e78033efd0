use std::collections::HashSet;

use proptest::prelude::*;
use wpp_core::posets::{iota, product, relabel};
use wpp_core::{
    canonicalize, check_weak_plane, count_pictures, dp, enumerate, pack_poset, DoublePoset,
    PackedWord, WeakPlanePoset,
};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every partial order on `n` points, as strict pair lists.
fn partial_orders(n: usize) -> Vec<Vec<(usize, usize)>> {
    let candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << candidates.len() {
        let pairs: Vec<(usize, usize)> = candidates
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &p)| p)
            .collect();
        let has = |a: usize, b: usize| a == b || pairs.contains(&(a, b));
        let antisymmetric = pairs.iter().all(|&(a, b)| !has(b, a));
        let transitive = pairs
            .iter()
            .all(|&(a, b)| (0..n).all(|c| !has(b, c) || has(a, c)));
        if antisymmetric && transitive {
            out.push(pairs);
        }
    }
    out
}

/// Brute-force picture count over all `n!` bijections.
fn pictures_oracle(p: &DoublePoset, q: &DoublePoset) -> u64 {
    let n = p.n();
    if n != q.n() {
        return 0;
    }
    permutations(n)
        .into_iter()
        .filter(|f| {
            (0..n).all(|i| {
                (0..n).all(|j| {
                    (!p.leq1(i, j) || q.leq2(f[i], f[j])) && (!q.leq1(f[i], f[j]) || p.leq2(i, j))
                })
            })
        })
        .count() as u64
}

fn words(n: usize) -> Vec<PackedWord> {
    enumerate(n).unwrap()
}

#[test]
fn derived_relations_of_dp() {
    for n in 0..=6 {
        for w in words(n) {
            let p = dp(&w);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(p.precsim(i, j), w.at(i) <= w.at(j), "{w} {i} {j}");
                    assert_eq!(p.ll(i, j), i <= j, "{w} {i} {j}");
                }
            }
        }
    }
}

#[test]
fn dp_is_faithful() {
    for n in 0..=4 {
        let mut seen = HashSet::new();
        for w in words(n) {
            assert!(seen.insert(canonicalize(&dp(&w))), "{w}");
        }
    }
}

#[test]
fn product_is_weak_plane_associative_and_unital() {
    let all: Vec<PackedWord> = (0..=5).flat_map(words).collect();
    let empty = DoublePoset::empty();
    for u in &all {
        let pu = dp(u).into_base();
        assert_eq!(product(&pu, &empty), pu);
        assert_eq!(product(&empty, &pu), pu);
        for v in all.iter().filter(|v| u.len() + v.len() <= 5) {
            let pv = dp(v).into_base();
            let uv = product(&pu, &pv);
            let wpp = check_weak_plane(uv.clone()).unwrap_or_else(|e| panic!("{u}·{v}: {e}"));
            assert_eq!(pack_poset(&wpp), u.shifted_concat(v));
            for x in all.iter().filter(|x| u.len() + v.len() + x.len() <= 5) {
                let px = dp(x).into_base();
                assert_eq!(product(&uv, &px), product(&pu, &product(&pv, &px)));
            }
        }
    }
}

#[test]
fn pictures_match_oracle_and_are_symmetric() {
    for n in 0..=4 {
        let posets: Vec<DoublePoset> = words(n).iter().map(|w| dp(w).into_base()).collect();
        for p in &posets {
            for q in &posets {
                let c = count_pictures(p, q);
                assert_eq!(c, pictures_oracle(p, q));
                assert_eq!(c, count_pictures(q, p));
            }
        }
    }
}

#[test]
fn iota_is_an_involution_preserving_weak_planeness() {
    for n in 0..=5 {
        for w in words(n) {
            let p = dp(&w).into_base();
            assert_eq!(iota(&iota(&p)), p);
            assert!(check_weak_plane(iota(&p)).is_ok(), "{w}");
        }
    }
    for n in 0..=3 {
        let orders = partial_orders(n);
        for a in &orders {
            for b in &orders {
                let p = DoublePoset::from_pairs(n, a, b).unwrap();
                assert_eq!(
                    check_weak_plane(p.clone()).is_ok(),
                    check_weak_plane(iota(&p)).is_ok()
                );
            }
        }
    }
}

#[test]
fn total_ll_implies_first_axiom_but_not_second() {
    let mut witness = None;
    for n in 0..=4 {
        let orders = partial_orders(n);
        for a in &orders {
            for b in &orders {
                let p = DoublePoset::from_pairs(n, a, b).unwrap();
                let ll = |x: usize, y: usize| p.leq1(y, x) || p.leq2(x, y);
                let total_order = (0..n).all(|x| {
                    (0..n).all(|y| {
                        (ll(x, y) || ll(y, x))
                            && (x == y || !(ll(x, y) && ll(y, x)))
                            && (0..n).all(|z| !(ll(x, y) && ll(y, z)) || ll(x, z))
                    })
                });
                if !total_order {
                    continue;
                }
                let first =
                    (0..n).all(|x| (0..n).all(|y| x == y || !(p.leq1(x, y) && p.leq2(x, y))));
                assert!(first, "{a:?} {b:?}");
                if witness.is_none() && check_weak_plane(p.clone()).is_err() {
                    witness = Some((n, a.clone(), b.clone()));
                }
            }
        }
    }
    let (n, a, b) = witness.expect("some double poset has a total ≪ but is not weak plane");
    assert_eq!(n, 3, "smallest witness: <=_1 {a:?}, <=_2 {b:?}");
}

proptest! {
    #[test]
    fn canonicalize_undoes_relabeling(
        (w, perm) in (0usize..=6)
            .prop_flat_map(|n| (proptest::collection::vec(1u32..=n.max(1) as u32, n), Just(n)))
            .prop_flat_map(|(letters, n)| {
                let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
                (Just(letters), perm)
            })
    ) {
        let w = wpp_core::pack(&w);
        let shuffled = relabel(dp(&w).base(), &perm);
        let p = WeakPlanePoset::try_from(shuffled).unwrap();
        prop_assert_eq!(canonicalize(&p), dp(&w));
        prop_assert_eq!(pack_poset(&p), w);
    }
}
