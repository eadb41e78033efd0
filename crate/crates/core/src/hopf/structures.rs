//! The three graded connected Hopf algebras on packed-word bases.
//!
//! * [`Hwpp`]: the algebra of weak plane posets, basis element `P_f = dp(f)`.
//! * [`ShuffleWqsym`]: WQSym with the shifted shuffle product.
//! * [`QuasiShuffleWqsym`]: WQSym with its usual (quasi-shuffle) product.
//!
//! Both WQSym structures share the value-split coproduct [`delta_wqsym`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fault::Fault;
use crate::hopf::element::{ModuleElement, TensorElement};
use crate::packed_words::{pack, PackedWord};
use crate::posets::{coproduct_terms_with, dp, pack_poset, product_with, WeakPlanePoset};

pub trait HopfStructure {
    fn name(&self) -> &'static str;

    fn product_basis(&self, u: &PackedWord, v: &PackedWord) -> ModuleElement;

    fn coproduct_basis(&self, w: &PackedWord) -> TensorElement;

    fn product(&self, x: &ModuleElement, y: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                out.add_scaled(&self.product_basis(u, v), &(a * b));
            }
        }
        out
    }

    fn coproduct(&self, x: &ModuleElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in x.terms() {
            for (a, b, d) in self.coproduct_basis(w).terms() {
                out.add_term(a.clone(), b.clone(), c * d);
            }
        }
        out
    }

    /// `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`, without signs.
    fn tensor_product(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (a, b, c1) in x.terms() {
            for (c, d, c2) in y.terms() {
                let left = self.product_basis(a, c);
                let right = self.product_basis(b, d);
                out.add_outer(&left, &right, &(c1 * c2));
            }
        }
        out
    }

    /// `m ∘ (f ⊗ g)` applied to a tensor.
    fn multiply_tensor(
        &self,
        t: &TensorElement,
        mut f: impl FnMut(&PackedWord) -> ModuleElement,
        mut g: impl FnMut(&PackedWord) -> ModuleElement,
    ) -> ModuleElement
    where
        Self: Sized,
    {
        let mut out = ModuleElement::zero();
        for (a, b, c) in t.terms() {
            out.add_scaled(&self.product(&f(a), &g(b)), c);
        }
        out
    }

    /// The antipode, from `S(ε) = ε` and `Σ S(w') w'' = 0` in positive degree.
    fn antipode(&self, x: &ModuleElement) -> ModuleElement
    where
        Self: Sized,
    {
        let mut memo = HashMap::new();
        x.map_linear(|w| antipode_basis(self, w, &mut memo))
    }
}

fn antipode_basis<H: HopfStructure>(
    h: &H,
    w: &PackedWord,
    memo: &mut HashMap<PackedWord, ModuleElement>,
) -> ModuleElement {
    if let Some(s) = memo.get(w) {
        return s.clone();
    }
    let s = if w.is_empty() {
        ModuleElement::one()
    } else {
        let mut acc = ModuleElement::zero();
        for (a, b, c) in h.coproduct_basis(w).terms() {
            if a.len() == w.len() {
                // The w ⊗ ε term carries S(w) itself.
                debug_assert!(a == w && b.is_empty() && c.is_one());
                continue;
            }
            let sa = antipode_basis(h, a, memo);
            acc.add_scaled(&h.product(&sa, &ModuleElement::basis(b.clone())), c);
        }
        -&acc
    };
    memo.insert(w.clone(), s.clone());
    s
}

/// Coefficient of the empty word.
pub fn counit(x: &ModuleElement) -> BigInt {
    x.coeff(&PackedWord::empty())
}

/// The Hopf algebra of weak plane posets, computed through the poset kernels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Hwpp {
    fault: Option<Fault>,
}

impl Hwpp {
    pub fn new() -> Self {
        Self::default()
    }

    /// The same structure with one kernel deliberately broken.
    pub fn with_fault(fault: Option<Fault>) -> Self {
        Hwpp { fault }
    }

    pub fn fault(&self) -> Option<Fault> {
        self.fault
    }
}

impl HopfStructure for Hwpp {
    fn name(&self) -> &'static str {
        "H_WPP"
    }

    fn product_basis(&self, u: &PackedWord, v: &PackedWord) -> ModuleElement {
        let prod = product_with(dp(u).base(), dp(v).base(), self.fault);
        let p =
            WeakPlanePoset::try_from(prod).expect("products of weak plane posets are weak plane");
        ModuleElement::basis(pack_poset(&p))
    }

    fn coproduct_basis(&self, w: &PackedWord) -> TensorElement {
        let mut out = TensorElement::zero();
        for (left, right) in coproduct_terms_with(&dp(w), self.fault) {
            out.add_term(pack_poset(&left), pack_poset(&right), 1);
        }
        out
    }
}

/// WQSym with the shifted shuffle product and the value-split coproduct.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ShuffleWqsym;

impl HopfStructure for ShuffleWqsym {
    fn name(&self) -> &'static str {
        "(WQSym, shifted shuffle, Δ)"
    }

    fn product_basis(&self, u: &PackedWord, v: &PackedWord) -> ModuleElement {
        shifted_shuffle(u, v)
    }

    fn coproduct_basis(&self, w: &PackedWord) -> TensorElement {
        delta_wqsym(w)
    }
}

/// WQSym with the quasi-shuffle product and the value-split coproduct.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QuasiShuffleWqsym;

impl HopfStructure for QuasiShuffleWqsym {
    fn name(&self) -> &'static str {
        "(WQSym, quasi-shuffle, Δ)"
    }

    fn product_basis(&self, u: &PackedWord, v: &PackedWord) -> ModuleElement {
        qshuffle(u, v)
    }

    fn coproduct_basis(&self, w: &PackedWord) -> TensorElement {
        delta_wqsym(w)
    }
}

/// Interleaves the letter classes of `u` with those of `v`, where the blocks of
/// `v` sit at positions shifted past `u`. With `merge`, a block of each may
/// also share one value.
fn block_shuffles(u: &PackedWord, v: &PackedWord, merge: bool) -> Vec<PackedWord> {
    let n = u.len();
    let left = u.to_set_partition();
    let shifted: Vec<Vec<usize>> = v
        .to_set_partition()
        .blocks()
        .iter()
        .map(|b| b.iter().map(|i| i + n).collect())
        .collect();
    let mut out = Vec::new();
    let mut letters = vec![0u32; n + v.len()];

    #[allow(clippy::too_many_arguments)]
    fn go(
        a: &[Vec<usize>],
        b: &[Vec<usize>],
        i: usize,
        j: usize,
        value: u32,
        merge: bool,
        letters: &mut [u32],
        out: &mut Vec<PackedWord>,
    ) {
        if i == a.len() && j == b.len() {
            out.push(PackedWord::from_packed_unchecked(letters.to_vec()));
            return;
        }
        let place = |blocks: &[&Vec<usize>], letters: &mut [u32]| {
            for block in blocks {
                for &p in block.iter() {
                    letters[p] = value;
                }
            }
        };
        if i < a.len() {
            place(&[&a[i]], letters);
            go(a, b, i + 1, j, value + 1, merge, letters, out);
        }
        if j < b.len() {
            place(&[&b[j]], letters);
            go(a, b, i, j + 1, value + 1, merge, letters, out);
        }
        if merge && i < a.len() && j < b.len() {
            place(&[&a[i], &b[j]], letters);
            go(a, b, i + 1, j + 1, value + 1, merge, letters, out);
        }
    }
    go(
        left.blocks(),
        &shifted,
        0,
        0,
        1,
        merge,
        &mut letters,
        &mut out,
    );
    out
}

/// Shifted shuffle product: the words `w = xy` with `pack(x) = u`,
/// `pack(y) = v` and no letter shared between `x` and `y`. The letter classes
/// of `u` and of `v` are shuffled, keeping the positions of `v` after those of
/// `u`. For example `1 ⧢ 1 = 12 + 21` and `12 ⧢ 1 = 123 + 132 + 231`.
pub fn shifted_shuffle(u: &PackedWord, v: &PackedWord) -> ModuleElement {
    block_shuffles(u, v, false).into_iter().collect()
}

/// The usual product of WQSym: every packed `w = xy` with `pack(x) = u` and
/// `pack(y) = v`, each with coefficient one. For example `1 · 1 = 11 + 12 + 21`.
pub fn qshuffle(u: &PackedWord, v: &PackedWord) -> ModuleElement {
    block_shuffles(u, v, true).into_iter().collect()
}

/// `Δ(w) = Σ_{k=0}^{max w} w|_{≤k} ⊗ pack(w|_{>k})`.
pub fn delta_wqsym(w: &PackedWord) -> TensorElement {
    let mut out = TensorElement::zero();
    for k in 0..=w.max_letter() {
        let low: Vec<u32> = w.letters().iter().copied().filter(|&v| v <= k).collect();
        let high: Vec<u32> = w.letters().iter().copied().filter(|&v| v > k).collect();
        out.add_term(
            PackedWord::from_packed_unchecked(low),
            pack(&high),
            BigInt::one(),
        );
    }
    out
}

/// Selector for the three structures, as named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Structure {
    Hwpp,
    Shuffle,
    QuasiShuffle,
}

impl Structure {
    pub const ALL: [Structure; 3] = [Structure::Hwpp, Structure::Shuffle, Structure::QuasiShuffle];

    pub fn product(self, x: &ModuleElement, y: &ModuleElement) -> ModuleElement {
        match self {
            Structure::Hwpp => Hwpp::new().product(x, y),
            Structure::Shuffle => ShuffleWqsym.product(x, y),
            Structure::QuasiShuffle => QuasiShuffleWqsym.product(x, y),
        }
    }

    pub fn coproduct(self, x: &ModuleElement) -> TensorElement {
        match self {
            Structure::Hwpp => Hwpp::new().coproduct(x),
            Structure::Shuffle => ShuffleWqsym.coproduct(x),
            Structure::QuasiShuffle => QuasiShuffleWqsym.coproduct(x),
        }
    }

    pub fn antipode(self, x: &ModuleElement) -> ModuleElement {
        match self {
            Structure::Hwpp => Hwpp::new().antipode(x),
            Structure::Shuffle => ShuffleWqsym.antipode(x),
            Structure::QuasiShuffle => QuasiShuffleWqsym.antipode(x),
        }
    }
}

impl FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wpp" | "hwpp" => Ok(Structure::Hwpp),
            "shuffle" => Ok(Structure::Shuffle),
            "dot" | "qshuffle" => Ok(Structure::QuasiShuffle),
            other => Err(Error::InvalidWord {
                input: other.to_string(),
                reason: "expected a structure name: wpp, shuffle or dot".into(),
            }),
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Structure::Hwpp => "wpp",
            Structure::Shuffle => "shuffle",
            Structure::QuasiShuffle => "dot",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn w(s: &str) -> PackedWord {
        s.parse().unwrap()
    }

    fn sum(words: &[&str]) -> ModuleElement {
        words.iter().map(|s| w(s)).collect()
    }

    fn e() -> PackedWord {
        PackedWord::empty()
    }

    #[test]
    fn shifted_shuffle_examples() {
        assert_eq!(shifted_shuffle(&w("1"), &w("1")), sum(&["12", "21"]));
        assert_eq!(shifted_shuffle(&e(), &w("212")), sum(&["212"]));
        assert_eq!(
            shifted_shuffle(&w("12"), &w("1")),
            sum(&["123", "132", "231"])
        );
    }

    #[test]
    fn qshuffle_examples() {
        assert_eq!(qshuffle(&w("1"), &w("1")), sum(&["12", "21", "11"]));
        assert_eq!(qshuffle(&e(), &w("21")), sum(&["21"]));
        assert_eq!(qshuffle(&w("11"), &w("1")), sum(&["112", "221", "111"]));
    }

    /// Oracle for both products: filter all packed words of the right length.
    #[test]
    fn products_match_filter_oracle() {
        use crate::packed_words::PackedWords;
        for a in 0..=3 {
            for b in 0..=3 - a {
                for u in PackedWords::new(a) {
                    for v in PackedWords::new(b) {
                        let mut dot = ModuleElement::zero();
                        let mut sh = ModuleElement::zero();
                        for x in PackedWords::new(a + b) {
                            let (p, s) = x.letters().split_at(a);
                            if pack(p) == u && pack(s) == v {
                                dot.add_term(x.clone(), 1);
                                if p.iter().all(|l| !s.contains(l)) {
                                    sh.add_term(x.clone(), 1);
                                }
                            }
                        }
                        assert_eq!(qshuffle(&u, &v), dot);
                        assert_eq!(shifted_shuffle(&u, &v), sh);
                    }
                }
            }
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_wqsym(&e()), TensorElement::basis(e(), e()));
        let mut expected = TensorElement::zero();
        expected.add_term(w("12"), e(), 1);
        expected.add_term(w("1"), w("1"), 1);
        expected.add_term(e(), w("12"), 1);
        assert_eq!(delta_wqsym(&w("12")), expected);
        let mut expected = TensorElement::zero();
        expected.add_term(w("212"), e(), 1);
        expected.add_term(w("1"), w("11"), 1);
        expected.add_term(e(), w("212"), 1);
        assert_eq!(delta_wqsym(&w("212")), expected);
    }

    #[test]
    fn hwpp_examples() {
        let h = Hwpp::new();
        let one = ModuleElement::one();
        let x = sum(&["212", "1"]);
        assert_eq!(h.product(&one, &x), x);
        assert_eq!(h.product_basis(&w("1"), &w("1")), sum(&["12"]));
        assert_eq!(h.product_basis(&w("1"), &w("21")), sum(&["132"]));

        assert_eq!(h.coproduct_basis(&e()), TensorElement::basis(e(), e()));
        let mut expected = TensorElement::zero();
        expected.add_term(w("12"), e(), 1);
        expected.add_term(w("1"), w("1"), 2);
        expected.add_term(e(), w("12"), 1);
        assert_eq!(h.coproduct_basis(&w("12")), expected);
        let mut expected = TensorElement::zero();
        expected.add_term(w("21"), e(), 1);
        expected.add_term(w("1"), w("1"), 1);
        expected.add_term(e(), w("21"), 1);
        assert_eq!(h.coproduct_basis(&w("21")), expected);
    }

    #[test]
    fn counit_examples() {
        assert_eq!(counit(&ModuleElement::one()), BigInt::one());
        assert_eq!(counit(&sum(&["11"])), BigInt::zero());
        let mut x = ModuleElement::term(e(), 3);
        x.add_term(w("12"), 2);
        assert_eq!(counit(&x), BigInt::from(3));
    }

    #[test]
    fn antipode_examples() {
        let h = Hwpp::new();
        assert_eq!(h.antipode(&ModuleElement::one()), ModuleElement::one());
        assert_eq!(h.antipode(&sum(&["1"])), ModuleElement::term(w("1"), -1));
        let delta = h.coproduct_basis(&w("12"));
        let mut memo = HashMap::new();
        let conv = h.multiply_tensor(
            &delta,
            |a| antipode_basis(&h, a, &mut memo),
            |b| ModuleElement::basis(b.clone()),
        );
        assert!(conv.is_zero());
    }
}
