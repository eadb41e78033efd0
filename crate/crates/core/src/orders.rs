//! The two partial orders on packed words of a fixed length, (weak) linear
//! extensions of weak plane posets, and Hasse diagrams.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::packed_words::{enumerate, PackedWord};
use crate::posets::{canonicalize, WeakPlanePoset};

/// Largest word length [`hasse`] accepts.
pub const HASSE_LIMIT: usize = 6;

fn same_length(f: &PackedWord, g: &PackedWord) -> Result<()> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    Ok(())
}

/// `f <= g` in the order whose up-sets are the linear extensions:
/// (1) `i >= j` and `f(i) <= f(j)` imply `g(i) <= g(j)`;
/// (2) `g(i) = g(j)` implies `f(i) = f(j)`.
pub fn leq_lin(f: &PackedWord, g: &PackedWord) -> Result<bool> {
    same_length(f, g)?;
    Ok(leq_lin_unchecked(f, g))
}

pub(crate) fn leq_lin_unchecked(f: &PackedWord, g: &PackedWord) -> bool {
    let n = f.len();
    for i in 0..n {
        for j in 0..n {
            if i >= j && f.at(i) <= f.at(j) && g.at(i) > g.at(j) {
                return false;
            }
            if g.at(i) == g.at(j) && f.at(i) != f.at(j) {
                return false;
            }
        }
    }
    true
}

/// `g ⪯ f`: (1) `f(i) <= f(j)` implies `g(i) <= g(j)`;
/// (2) `i < j` and `f(i) > f(j)` imply `g(i) > g(j)`.
///
/// With this argument order `ψ(f)` is the sum of all `g` with `prec(g, f)`.
pub fn prec(g: &PackedWord, f: &PackedWord) -> Result<bool> {
    same_length(f, g)?;
    Ok(prec_unchecked(g, f))
}

pub(crate) fn prec_unchecked(g: &PackedWord, f: &PackedWord) -> bool {
    let n = f.len();
    for i in 0..n {
        for j in 0..n {
            if f.at(i) <= f.at(j) && g.at(i) > g.at(j) {
                return false;
            }
            if i < j && f.at(i) > f.at(j) && g.at(i) <= g.at(j) {
                return false;
            }
        }
    }
    true
}

/// Pairs `(i, j)` of 0-based positions with `i < j` and `f(i) > f(j)`.
pub fn inversion_set(f: &PackedWord) -> BTreeSet<(usize, usize)> {
    let n = f.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| f.at(i) > f.at(j))
        .collect()
}

/// Surjections compatible with `<=_1` whose fibers lie inside `≡`-classes,
/// read along `≪`.
pub fn lin_extensions(p: &WeakPlanePoset) -> BTreeSet<PackedWord> {
    extensions(p, false)
}

/// Surjections compatible with `<=_1` in which `<=_1`-related elements share a
/// value only when they are `≡`-equivalent, read along `≪`.
pub fn weak_lin_extensions(p: &WeakPlanePoset) -> BTreeSet<PackedWord> {
    extensions(p, true)
}

/// Builds extensions one fiber at a time: fiber `k` is a nonempty set of
/// unassigned elements whose `<=_1`-down-sets are covered by fibers `1..=k`.
fn extensions(p: &WeakPlanePoset, weak: bool) -> BTreeSet<PackedWord> {
    let p = canonicalize(p);
    let n = p.n();
    let mut search = FiberSearch {
        weak,
        down: (0..n)
            .map(|x| (0..n).filter(|&i| p.leq1(i, x)).fold(0, |m, i| m | 1 << i))
            .collect(),
        class_of: (0..n)
            .map(|x| (0..n).filter(|&i| p.equiv(i, x)).fold(0, |m, i| m | 1 << i))
            .collect(),
        classes: p
            .classes()
            .iter()
            .map(|c| c.iter().fold(0, |m, &i| m | 1 << i))
            .collect(),
        all: if n == 64 { u64::MAX } else { (1 << n) - 1 },
        fibers: Vec::new(),
        out: BTreeSet::new(),
    };
    search.run(0);
    search.out
}

struct FiberSearch {
    weak: bool,
    /// `<=_1`-down-set of each element.
    down: Vec<u64>,
    /// `≡`-class of each element.
    class_of: Vec<u64>,
    classes: Vec<u64>,
    all: u64,
    fibers: Vec<u64>,
    out: BTreeSet<PackedWord>,
}

impl FiberSearch {
    fn fiber_ok(&self, fiber: u64, assigned: u64) -> bool {
        let covered = fiber | assigned;
        let mut m = fiber;
        while m != 0 {
            let x = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.down[x] & !covered != 0 {
                return false;
            }
            if self.weak && self.down[x] & fiber & !self.class_of[x] != 0 {
                return false;
            }
        }
        true
    }

    fn run(&mut self, assigned: u64) {
        if assigned == self.all {
            let mut letters = vec![0u32; self.down.len()];
            for (k, &fiber) in self.fibers.iter().enumerate() {
                let mut m = fiber;
                while m != 0 {
                    letters[m.trailing_zeros() as usize] = k as u32 + 1;
                    m &= m - 1;
                }
            }
            self.out.insert(PackedWord::from_packed_unchecked(letters));
            return;
        }
        let remaining = self.all & !assigned;
        // Linear extensions draw each fiber from a single class.
        let pools: Vec<u64> = if self.weak {
            vec![remaining]
        } else {
            self.classes
                .iter()
                .map(|c| c & remaining)
                .filter(|&c| c != 0)
                .collect()
        };
        for pool in pools {
            let mut sub = pool;
            while sub != 0 {
                if self.fiber_ok(sub, assigned) {
                    self.fibers.push(sub);
                    self.run(assigned | sub);
                    self.fibers.pop();
                }
                sub = (sub - 1) & pool;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// [`leq_lin`].
    Lin,
    /// The order of [`prec`], oriented so that `prec(g, f)` means `g <= f`.
    Fm,
}

impl OrderKind {
    pub fn leq(self, a: &PackedWord, b: &PackedWord) -> bool {
        match self {
            OrderKind::Lin => leq_lin_unchecked(a, b),
            OrderKind::Fm => prec_unchecked(a, b),
        }
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lin" => Ok(OrderKind::Lin),
            "fm" => Ok(OrderKind::Fm),
            other => Err(Error::InvalidWord {
                input: other.to_string(),
                reason: "expected an order name, `lin` or `fm`".into(),
            }),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Lin => "lin",
            OrderKind::Fm => "fm",
        })
    }
}

/// Dense bitset rows: `rows[a]` has bit `b` set iff `nodes[a] <= nodes[b]`.
pub(crate) struct OrderMatrix {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl OrderMatrix {
    pub(crate) fn new(
        nodes: &[PackedWord],
        leq: impl Fn(&PackedWord, &PackedWord) -> bool,
    ) -> Self {
        let words = nodes.len().div_ceil(64);
        let rows = nodes
            .iter()
            .map(|a| {
                let mut row = vec![0u64; words];
                for (b, node) in nodes.iter().enumerate() {
                    if leq(a, node) {
                        row[b / 64] |= 1 << (b % 64);
                    }
                }
                row
            })
            .collect();
        OrderMatrix { words, rows }
    }

    pub(crate) fn holds(&self, a: usize, b: usize) -> bool {
        self.rows[a][b / 64] & (1 << (b % 64)) != 0
    }

    fn strict_up(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[a].iter().enumerate().flat_map(move |(w, &bits)| {
            let mut m = bits;
            std::iter::from_fn(move || {
                if m == 0 {
                    return None;
                }
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(w * 64 + b)
            })
            .filter(move |&b| b != a)
        })
    }

    /// First failure of reflexivity, antisymmetry or transitivity, as node indices.
    pub(crate) fn order_violation(&self) -> Option<(&'static str, Vec<usize>)> {
        let n = self.rows.len();
        for a in 0..n {
            if !self.holds(a, a) {
                return Some(("reflexivity", vec![a]));
            }
            for b in self.strict_up(a) {
                if self.holds(b, a) {
                    return Some(("antisymmetry", vec![a, b]));
                }
                let missing = self.rows[b]
                    .iter()
                    .zip(&self.rows[a])
                    .enumerate()
                    .find(|(_, (&up_b, &up_a))| up_b & !up_a != 0);
                if let Some((w, (&up_b, &up_a))) = missing {
                    let c = w * 64 + (up_b & !up_a).trailing_zeros() as usize;
                    return Some(("transitivity", vec![a, b, c]));
                }
            }
        }
        None
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    fn covers(&self) -> Vec<(usize, usize)> {
        let strict: Vec<Vec<u64>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(c, row)| {
                let mut row = row.clone();
                row[c / 64] &= !(1 << (c % 64));
                row
            })
            .collect();
        let mut out = Vec::new();
        for a in 0..self.rows.len() {
            let mut implied = vec![0u64; self.words];
            for c in self.strict_up(a) {
                for (acc, &bits) in implied.iter_mut().zip(&strict[c]) {
                    *acc |= bits;
                }
            }
            for b in self.strict_up(a) {
                if implied[b / 64] & (1 << (b % 64)) == 0 {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram {
    pub n: usize,
    pub order: OrderKind,
    /// `PW(n)` in lexicographic order.
    pub nodes: Vec<PackedWord>,
    /// Covering pairs `(lower, upper)` as indices into `nodes`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl HasseDiagram {
    pub fn edge_words(&self) -> impl Iterator<Item = (&PackedWord, &PackedWord)> {
        self.edges
            .iter()
            .map(|&(a, b)| (&self.nodes[a], &self.nodes[b]))
    }

    /// Words covered by `upper`.
    pub fn lower_covers(&self, upper: &PackedWord) -> BTreeSet<PackedWord> {
        self.edge_words()
            .filter(|(_, u)| *u == upper)
            .map(|(l, _)| l.clone())
            .collect()
    }

    /// Nodes with no upper cover.
    pub fn maxima(&self) -> Vec<&PackedWord> {
        (0..self.nodes.len())
            .filter(|&a| self.edges.iter().all(|&(l, _)| l != a))
            .map(|a| &self.nodes[a])
            .collect()
    }

    /// DOT rendering with one node per word and one `lower -> upper` edge per cover.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"PW({}) {}\" {{", self.n, self.order);
        let _ = writeln!(out, "  rankdir=BT;");
        for (i, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{node}\"];");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// Covering relation of [`leq_lin`] or [`prec`] on `PW(n)`.
pub fn hasse(n: usize, order: OrderKind) -> Result<HasseDiagram> {
    if n > HASSE_LIMIT {
        return Err(Error::Capacity {
            what: "hasse diagram",
            requested: n,
            limit: HASSE_LIMIT,
        });
    }
    let nodes = enumerate(n)?;
    let matrix = OrderMatrix::new(&nodes, |a, b| order.leq(a, b));
    let mut edges = matrix.covers();
    edges.sort_unstable();
    Ok(HasseDiagram {
        n,
        order,
        nodes,
        edges,
    })
}

/// Checks that `leq` is a partial order on `nodes`; on failure names the axiom
/// and the words involved.
pub fn partial_order_violation(
    nodes: &[PackedWord],
    leq: impl Fn(&PackedWord, &PackedWord) -> bool,
) -> Option<(&'static str, Vec<PackedWord>)> {
    OrderMatrix::new(nodes, leq)
        .order_violation()
        .map(|(axiom, ix)| (axiom, ix.into_iter().map(|i| nodes[i].clone()).collect()))
}
