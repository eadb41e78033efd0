//! Double posets and weak plane posets.
//!
//! A double poset is a ground set `0..n` with two partial orders `<=_1` and
//! `<=_2`. It is weak plane when no two distinct elements are related by both
//! orders and the union `x ≼ y ⟺ (x <=_1 y or x <=_2 y)` is a total quasi-order.
//! Every weak plane poset then carries the total order
//! `x ≪ y ⟺ (y <=_1 x or x <=_2 y)`, which gives it a canonical labeling, and
//! its isomorphism classes are in bijection with packed words through [`dp`]
//! and [`pack_poset`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fault::Fault;
use crate::packed_words::{pack, PackedWord};

/// Ground sets are limited to what fits in one `u64` row mask.
pub const MAX_GROUND_SET: usize = 64;

fn bit(i: usize) -> u64 {
    1u64 << i
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

fn elements(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// A reflexive binary relation on `0..n` stored as one bit row per element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    rows: Vec<u64>,
}

impl Relation {
    pub fn discrete(n: usize) -> Self {
        assert!(n <= MAX_GROUND_SET);
        Relation {
            n,
            rows: (0..n).map(bit).collect(),
        }
    }

    /// Builds the reflexive relation with the given strict pairs and checks that
    /// it is a partial order. No closure is taken: every strict pair must be listed.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_GROUND_SET {
            return Err(Error::Capacity {
                what: "double poset ground set",
                requested: n,
                limit: MAX_GROUND_SET,
            });
        }
        let mut rel = Relation::discrete(n);
        for &(i, j) in pairs {
            for e in [i, j] {
                if e >= n {
                    return Err(Error::OutOfRange { element: e + 1, n });
                }
            }
            rel.rows[i] |= bit(j);
        }
        rel.check_order()?;
        Ok(rel)
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).filter(|&j| f(i, j)).fold(0u64, |m, j| m | bit(j)))
            .collect();
        Relation { n, rows }
    }

    fn check_order(&self) -> Result<()> {
        for i in 0..self.n {
            for j in elements(self.rows[i]) {
                if i != j && self.holds(j, i) {
                    return Err(Error::InvalidRelation(format!(
                        "not antisymmetric: {} and {} are related both ways",
                        i + 1,
                        j + 1
                    )));
                }
                let missing = self.rows[j] & !self.rows[i];
                if missing != 0 {
                    let k = missing.trailing_zeros() as usize;
                    return Err(Error::InvalidRelation(format!(
                        "not transitive: {} <= {} <= {} but not {} <= {}",
                        i + 1,
                        j + 1,
                        k + 1,
                        i + 1,
                        k + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn holds(&self, i: usize, j: usize) -> bool {
        self.rows[i] & bit(j) != 0
    }

    /// Elements `j` with `i <= j`, as a bit mask.
    pub fn up_mask(&self, i: usize) -> u64 {
        self.rows[i]
    }

    /// Pairs `(i, j)` with `i <= j` and `i != j`, sorted.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| elements(self.rows[i] & !bit(i)).map(move |j| (i, j)))
            .collect()
    }

    fn transpose(&self) -> Relation {
        Relation::from_fn(self.n, |i, j| self.holds(j, i))
    }

    /// Induced relation on `elems`, relabeled `0..elems.len()` in the given order.
    fn induced(&self, elems: &[usize]) -> Relation {
        Relation::from_fn(elems.len(), |a, b| self.holds(elems[a], elems[b]))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<_> = self
            .strict_pairs()
            .into_iter()
            .map(|(i, j)| (i + 1, j + 1))
            .collect();
        write!(f, "Relation(n={}, {:?})", self.n, pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoublePoset {
    rel1: Relation,
    rel2: Relation,
}

impl DoublePoset {
    pub fn new(rel1: Relation, rel2: Relation) -> Result<Self> {
        if rel1.n != rel2.n {
            return Err(Error::LengthMismatch {
                left: rel1.n,
                right: rel2.n,
            });
        }
        Ok(DoublePoset { rel1, rel2 })
    }

    /// Builds from 0-based strict pairs of each order.
    pub fn from_pairs(
        n: usize,
        pairs1: &[(usize, usize)],
        pairs2: &[(usize, usize)],
    ) -> Result<Self> {
        DoublePoset::new(
            Relation::from_pairs(n, pairs1)?,
            Relation::from_pairs(n, pairs2)?,
        )
    }

    pub fn empty() -> Self {
        DoublePoset {
            rel1: Relation::discrete(0),
            rel2: Relation::discrete(0),
        }
    }

    pub fn n(&self) -> usize {
        self.rel1.n
    }

    pub fn rel1(&self) -> &Relation {
        &self.rel1
    }

    pub fn rel2(&self) -> &Relation {
        &self.rel2
    }

    pub fn leq1(&self, i: usize, j: usize) -> bool {
        self.rel1.holds(i, j)
    }

    pub fn leq2(&self, i: usize, j: usize) -> bool {
        self.rel2.holds(i, j)
    }

    fn relabel(&self, elems: &[usize]) -> DoublePoset {
        DoublePoset {
            rel1: self.rel1.induced(elems),
            rel2: self.rel2.induced(elems),
        }
    }

    fn restrict_mask(&self, mask: u64) -> DoublePoset {
        let elems: Vec<usize> = elements(mask).collect();
        self.relabel(&elems)
    }

    pub fn to_json(&self) -> PosetJson {
        let one_based = |rel: &Relation| {
            rel.strict_pairs()
                .into_iter()
                .map(|(i, j)| [i + 1, j + 1])
                .collect()
        };
        PosetJson {
            n: self.n(),
            rel1: one_based(&self.rel1),
            rel2: one_based(&self.rel2),
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<Self> {
        let zero_based = |pairs: &[[usize; 2]]| -> Result<Vec<(usize, usize)>> {
            pairs
                .iter()
                .map(|&[i, j]| {
                    for e in [i, j] {
                        if e == 0 || e > json.n {
                            return Err(Error::OutOfRange {
                                element: e,
                                n: json.n,
                            });
                        }
                    }
                    Ok((i - 1, j - 1))
                })
                .collect()
        };
        DoublePoset::from_pairs(json.n, &zero_based(&json.rel1)?, &zero_based(&json.rel2)?)
    }
}

/// Wire form of a double poset: 1-based strict pairs of each order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub n: usize,
    pub rel1: Vec<[usize; 2]>,
    pub rel2: Vec<[usize; 2]>,
}

/// Why a double poset fails to be weak plane. Elements are reported 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Axiom (1): `x <=_1 y` and `x <=_2 y` with `x != y`.
    RelatedByBoth { x: usize, y: usize },
    /// Axiom (2): `x` and `y` are incomparable for `≼`.
    NotTotal { x: usize, y: usize },
    /// Axiom (2): `x ≼ y ≼ z` but not `x ≼ z`.
    NotTransitive { x: usize, y: usize, z: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::RelatedByBoth { x, y } => write!(
                f,
                "axiom (1) fails: {} <=_1 {} and {} <=_2 {}",
                x + 1,
                y + 1,
                x + 1,
                y + 1
            ),
            Violation::NotTotal { x, y } => write!(
                f,
                "axiom (2) fails: {} and {} are incomparable for both orders",
                x + 1,
                y + 1
            ),
            Violation::NotTransitive { x, y, z } => write!(
                f,
                "axiom (2) fails: {} ≼ {} ≼ {} but not {} ≼ {}",
                x + 1,
                y + 1,
                z + 1,
                x + 1,
                z + 1
            ),
        }
    }
}

/// A double poset satisfying both weak plane axioms, with `≼`, `≡` and `≪`
/// precomputed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakPlanePoset {
    base: DoublePoset,
    /// Rank of the `≡`-class of each element in the `≼` order.
    class_rank: Vec<usize>,
    /// Position of each element in the `≪` order.
    ll_rank: Vec<usize>,
}

impl WeakPlanePoset {
    /// Computes the derived relations. The caller guarantees the axioms hold.
    fn derive(base: DoublePoset) -> Self {
        let n = base.n();
        let precsim_down: Vec<usize> = (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&y| base.leq1(y, x) || base.leq2(y, x))
                    .count()
            })
            .collect();
        let class_rank = pack(&precsim_down.iter().map(|&c| c as u32).collect::<Vec<_>>())
            .letters()
            .iter()
            .map(|&v| v as usize - 1)
            .collect();
        let ll_rank = (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&y| y != x && (base.leq1(x, y) || base.leq2(y, x)))
                    .count()
            })
            .collect();
        let wpp = WeakPlanePoset {
            base,
            class_rank,
            ll_rank,
        };
        debug_assert!({
            let mut r = wpp.ll_rank.clone();
            r.sort_unstable();
            r.into_iter().eq(0..n)
        });
        wpp
    }

    pub fn empty() -> Self {
        WeakPlanePoset::derive(DoublePoset::empty())
    }

    pub fn base(&self) -> &DoublePoset {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn leq1(&self, i: usize, j: usize) -> bool {
        self.base.leq1(i, j)
    }

    pub fn leq2(&self, i: usize, j: usize) -> bool {
        self.base.leq2(i, j)
    }

    /// `x ≼ y`.
    pub fn precsim(&self, x: usize, y: usize) -> bool {
        self.class_rank[x] <= self.class_rank[y]
    }

    /// `x ≡ y`.
    pub fn equiv(&self, x: usize, y: usize) -> bool {
        self.class_rank[x] == self.class_rank[y]
    }

    /// `x ≪ y`.
    pub fn ll(&self, x: usize, y: usize) -> bool {
        self.ll_rank[x] <= self.ll_rank[y]
    }

    /// The `≡`-classes listed in `≼` order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let count = self.class_rank.iter().map(|&r| r + 1).max().unwrap_or(0);
        let mut out = vec![Vec::new(); count];
        for (x, &r) in self.class_rank.iter().enumerate() {
            out[r].push(x);
        }
        out
    }

    /// Elements sorted by `≪`.
    pub fn ll_order(&self) -> Vec<usize> {
        let mut order = vec![0; self.n()];
        for (x, &r) in self.ll_rank.iter().enumerate() {
            order[r] = x;
        }
        order
    }

    pub fn is_canonical(&self) -> bool {
        self.ll_rank.iter().enumerate().all(|(x, &r)| x == r)
    }

    pub fn iota(&self) -> WeakPlanePoset {
        WeakPlanePoset::derive(iota(&self.base))
    }

    /// Induced weak plane poset on the given elements.
    pub fn restrict(&self, x: &[usize]) -> Result<WeakPlanePoset> {
        Ok(WeakPlanePoset::derive(restrict(&self.base, x)?))
    }

    pub fn into_base(self) -> DoublePoset {
        self.base
    }
}

impl TryFrom<DoublePoset> for WeakPlanePoset {
    type Error = Error;

    fn try_from(p: DoublePoset) -> Result<Self> {
        check_weak_plane(p).map_err(Error::NotWeakPlane)
    }
}

/// Checks both weak plane axioms, returning the first violation found.
pub fn check_weak_plane(p: DoublePoset) -> std::result::Result<WeakPlanePoset, Violation> {
    let n = p.n();
    for x in 0..n {
        for y in 0..n {
            if x != y && p.leq1(x, y) && p.leq2(x, y) {
                return Err(Violation::RelatedByBoth { x, y });
            }
        }
    }
    let prec: Vec<u64> = (0..n).map(|x| p.rel1.rows[x] | p.rel2.rows[x]).collect();
    for x in 0..n {
        for y in x + 1..n {
            if prec[x] & bit(y) == 0 && prec[y] & bit(x) == 0 {
                return Err(Violation::NotTotal { x, y });
            }
        }
    }
    for x in 0..n {
        for y in elements(prec[x]) {
            let missing = prec[y] & !prec[x];
            if missing != 0 {
                let z = missing.trailing_zeros() as usize;
                return Err(Violation::NotTransitive { x, y, z });
            }
        }
    }
    Ok(WeakPlanePoset::derive(p))
}

/// True iff every `≡`-class is a singleton, i.e. `≼` is an order.
pub fn is_plane(p: &WeakPlanePoset) -> bool {
    p.classes().iter().all(|c| c.len() == 1)
}

/// The weak plane poset of a packed word: `i <=_1 j ⟺ i >= j and w(i) <= w(j)`,
/// `i <=_2 j ⟺ i <= j and w(i) <= w(j)`.
pub fn dp(w: &PackedWord) -> WeakPlanePoset {
    let n = w.len();
    let rel1 = Relation::from_fn(n, |i, j| i >= j && w.at(i) <= w.at(j));
    let rel2 = Relation::from_fn(n, |i, j| i <= j && w.at(i) <= w.at(j));
    WeakPlanePoset::derive(DoublePoset { rel1, rel2 })
}

/// The packed word of the total quasi-order `≼`, read along `≪`.
pub fn pack_poset(p: &WeakPlanePoset) -> PackedWord {
    let letters = p
        .ll_order()
        .into_iter()
        .map(|x| p.class_rank[x] as u32 + 1)
        .collect();
    PackedWord::from_packed_unchecked(letters)
}

/// The isomorphic copy whose labels follow `≪`.
pub fn canonicalize(p: &WeakPlanePoset) -> WeakPlanePoset {
    if p.is_canonical() {
        return p.clone();
    }
    let order = p.ll_order();
    WeakPlanePoset::derive(p.base.relabel(&order))
}

/// Relabels a double poset by `perm`: element `i` becomes `perm[i]`.
pub fn relabel(p: &DoublePoset, perm: &[usize]) -> DoublePoset {
    let mut inverse = vec![0; perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        inverse[j] = i;
    }
    p.relabel(&inverse)
}

/// The product `PQ`: `Q` shifted past `P`, `<=_1` and `<=_2` the disjoint unions,
/// plus `i <=_2 j` for every `i` in `P` and `j` in `Q`.
pub fn product(p: &DoublePoset, q: &DoublePoset) -> DoublePoset {
    product_with(p, q, None)
}

#[doc(hidden)]
pub fn product_with(p: &DoublePoset, q: &DoublePoset, fault: Option<Fault>) -> DoublePoset {
    let (a, b) = (p.n(), q.n());
    assert!(
        a + b <= MAX_GROUND_SET,
        "product exceeds the ground set limit"
    );
    let side = |i: usize| i >= a;
    let within = |rel_p: &Relation, rel_q: &Relation, i: usize, j: usize| match (side(i), side(j)) {
        (false, false) => rel_p.holds(i, j),
        (true, true) => rel_q.holds(i - a, j - a),
        _ => false,
    };
    let rel1 = Relation::from_fn(a + b, |i, j| within(&p.rel1, &q.rel1, i, j));
    let rel2 = Relation::from_fn(a + b, |i, j| {
        let cross = match fault {
            Some(Fault::ProductCrossRelation) => side(i) && !side(j),
            _ => !side(i) && side(j),
        };
        cross || within(&p.rel2, &q.rel2, i, j)
    });
    DoublePoset { rel1, rel2 }
}

/// Product of weak plane posets, which is again weak plane.
pub fn product_wpp(p: &WeakPlanePoset, q: &WeakPlanePoset) -> WeakPlanePoset {
    WeakPlanePoset::derive(product(&p.base, &q.base))
}

/// All `<=_1`-up-closed subsets, each as a sorted list of elements.
pub fn open_sets(p: &DoublePoset) -> Vec<Vec<usize>> {
    open_set_masks(p, None)
        .into_iter()
        .map(|m| elements(m).collect())
        .collect()
}

#[doc(hidden)]
pub fn open_set_masks(p: &DoublePoset, fault: Option<Fault>) -> Vec<u64> {
    let rel = match fault {
        Some(Fault::OpenSetPredicate) => p.rel1.transpose(),
        _ => p.rel1.clone(),
    };
    let n = p.n();
    // Decide elements from the top down so that every element strictly above
    // the current one is already decided.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| rel.rows[x].count_ones());
    let mut out = Vec::new();
    fn go(rel: &Relation, order: &[usize], k: usize, mask: u64, out: &mut Vec<u64>) {
        if k == order.len() {
            out.push(mask);
            return;
        }
        let x = order[k];
        go(rel, order, k + 1, mask, out);
        let above = rel.rows[x] & !bit(x);
        if above & !mask == 0 {
            go(rel, order, k + 1, mask | bit(x), out);
        }
    }
    go(&rel, &order, 0, 0, &mut out);
    out.sort_unstable_by_key(|m| (m.count_ones(), m.reverse_bits()));
    out
}

/// Induced double poset on `x`, relabeled in increasing order.
pub fn restrict(p: &DoublePoset, x: &[usize]) -> Result<DoublePoset> {
    let mut mask = 0u64;
    for &e in x {
        if e >= p.n() {
            return Err(Error::OutOfRange {
                element: e + 1,
                n: p.n(),
            });
        }
        mask |= bit(e);
    }
    Ok(p.restrict_mask(mask))
}

/// One `(P|P∖O, P|O)` pair per open set `O`, both factors canonicalized.
pub fn coproduct_terms(p: &WeakPlanePoset) -> Vec<(WeakPlanePoset, WeakPlanePoset)> {
    coproduct_terms_with(p, None)
}

#[doc(hidden)]
pub fn coproduct_terms_with(
    p: &WeakPlanePoset,
    fault: Option<Fault>,
) -> Vec<(WeakPlanePoset, WeakPlanePoset)> {
    let all = full_mask(p.n());
    open_set_masks(&p.base, fault)
        .into_iter()
        .map(|open| {
            let left = WeakPlanePoset::derive(p.base.restrict_mask(all & !open));
            let right = WeakPlanePoset::derive(p.base.restrict_mask(open));
            (canonicalize(&left), canonicalize(&right))
        })
        .collect()
}

/// Swaps the two orders.
pub fn iota(p: &DoublePoset) -> DoublePoset {
    DoublePoset {
        rel1: p.rel2.clone(),
        rel2: p.rel1.clone(),
    }
}

/// Number of bijections `f: P -> Q` with `i <=_1 j ⟹ f(i) <=_2 f(j)` and
/// `f(i) <=_1 f(j) ⟹ i <=_2 j`.
pub fn count_pictures(p: &DoublePoset, q: &DoublePoset) -> u64 {
    count_pictures_with(p, q, None)
}

#[doc(hidden)]
pub fn count_pictures_with(p: &DoublePoset, q: &DoublePoset, fault: Option<Fault>) -> u64 {
    if p.n() != q.n() {
        return 0;
    }
    let check_second = fault != Some(Fault::PictureCondition);
    let n = p.n();
    let mut image = vec![usize::MAX; n];

    // Elements of P are assigned in label order; callers pass canonical posets so
    // this is the `≪` order.
    fn go(
        p: &DoublePoset,
        q: &DoublePoset,
        check_second: bool,
        k: usize,
        used: u64,
        image: &mut [usize],
    ) -> u64 {
        let n = p.n();
        if k == n {
            return 1;
        }
        let mut total = 0;
        for y in 0..n {
            if used & bit(y) != 0 {
                continue;
            }
            let consistent = (0..k).all(|a| {
                let fa = image[a];
                let first = (!p.leq1(a, k) || q.leq2(fa, y)) && (!p.leq1(k, a) || q.leq2(y, fa));
                let second = !check_second
                    || ((!q.leq1(fa, y) || p.leq2(a, k)) && (!q.leq1(y, fa) || p.leq2(k, a)));
                first && second
            });
            if consistent {
                image[k] = y;
                total += go(p, q, check_second, k + 1, used | bit(y), image);
            }
        }
        total
    }
    go(p, q, check_second, 0, 0, &mut image)
}
