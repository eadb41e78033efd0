//! The morphisms φ, ψ, φ′ and φ⁻¹, the picture pairing, and their matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hopf::element::ModuleElement;
use crate::hopf::matrix::IntMatrix;
use crate::hopf::structures::Hwpp;
use crate::orders::{lin_extensions, prec_unchecked, weak_lin_extensions};
use crate::packed_words::{enumerate, PackedWord, PackedWords};
use crate::posets::{count_pictures_with, dp};

/// Largest degree [`matrix_of`] accepts.
pub const MATRIX_LIMIT: usize = 5;

/// `φ(P_f) = Σ_{g ∈ Lin(dp f)} g`.
pub fn phi(x: &ModuleElement) -> ModuleElement {
    x.map_linear(|f| lin_extensions(&dp(f)).into_iter().collect())
}

/// `ψ(f) = Σ_{g ⪯ f} g`.
pub fn psi(x: &ModuleElement) -> ModuleElement {
    x.map_linear(|f| {
        PackedWords::new(f.len())
            .filter(|g| prec_unchecked(g, f))
            .collect()
    })
}

/// `φ′(P_f) = Σ_{g ∈ WLin(dp f)} g`.
pub fn phi_prime(x: &ModuleElement) -> ModuleElement {
    x.map_linear(|f| weak_lin_extensions(&dp(f)).into_iter().collect())
}

/// A key that strictly increases along `leq_lin`: the largest letter, then the
/// number of pairs `j < i` with `f(i) < f(j)`.
pub fn lin_order_key(f: &PackedWord) -> (u32, usize) {
    let n = f.len();
    let inversions = (0..n)
        .flat_map(|j| (j + 1..n).map(move |i| (i, j)))
        .filter(|&(i, j)| f.at(i) < f.at(j))
        .count();
    (f.max_letter(), inversions)
}

/// The inverse of [`phi`], by triangular elimination over `(PW(n), leq_lin)`.
///
/// `φ(P_f)` is `f` plus terms strictly above `f`, so the `leq_lin`-minimal word
/// of the remainder fixes its own coefficient in the preimage. Taking words in
/// increasing [`lin_order_key`] order always picks a minimal one.
pub fn phi_inverse(x: &ModuleElement) -> ModuleElement {
    let mut remainder: BTreeMap<((u32, usize), PackedWord), BigInt> = x
        .terms()
        .map(|(w, c)| ((lin_order_key(w), w.clone()), c.clone()))
        .collect();
    let mut out = ModuleElement::zero();
    while let Some(((_, g), c)) = remainder.pop_first() {
        for h in lin_extensions(&dp(&g)) {
            if h == g {
                continue;
            }
            let slot = remainder.entry((lin_order_key(&h), h)).or_default();
            *slot -= &c;
        }
        remainder.retain(|_, v| !v.is_zero());
        out.add_term(g, c);
    }
    out
}

/// Which isomorphism carries the pairing over to WQSym.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Via {
    /// Onto (WQSym, ⧢, Δ).
    Phi,
    /// Onto (WQSym, ·, Δ).
    PhiPrime,
}

impl Hwpp {
    /// `⟨P_f, P_g⟩`, the number of pictures between `dp(f)` and `dp(g)`.
    pub fn pairing_basis(&self, f: &PackedWord, g: &PackedWord) -> u64 {
        count_pictures_with(dp(f).base(), dp(g).base(), self.fault())
    }

    pub fn pairing(&self, x: &ModuleElement, y: &ModuleElement) -> BigInt {
        let mut total = BigInt::zero();
        for (f, a) in x.terms() {
            for (g, b) in y.terms() {
                if f.len() == g.len() {
                    total += a * b * BigInt::from(self.pairing_basis(f, g));
                }
            }
        }
        total
    }

    /// The pairing on WQSym transported through φ or φ′.
    pub fn induced_pairing(&self, u: &ModuleElement, v: &ModuleElement, via: Via) -> BigInt {
        let pre = |x: &ModuleElement| match via {
            Via::Phi => phi_inverse(x),
            Via::PhiPrime => phi_prime_inverse(x),
        };
        self.pairing(&pre(u), &pre(v))
    }
}

/// The picture pairing on the weak plane poset basis.
pub fn pairing(x: &ModuleElement, y: &ModuleElement) -> BigInt {
    Hwpp::new().pairing(x, y)
}

/// `⟨u, v⟩` transported to WQSym through φ or φ′.
pub fn induced_pairing(u: &PackedWord, v: &PackedWord, via: Via) -> Result<BigInt> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(Hwpp::new().induced_pairing(
        &ModuleElement::basis(u.clone()),
        &ModuleElement::basis(v.clone()),
        via,
    ))
}

/// `φ′⁻¹ = φ⁻¹ ∘ ψ⁻¹`, with ψ⁻¹ solved the same way as φ⁻¹ using the fact that
/// `ψ(f)` is `f` plus terms strictly below `f` for `⪯`.
pub fn phi_prime_inverse(x: &ModuleElement) -> ModuleElement {
    phi_inverse(&psi_inverse(x))
}

/// A key that strictly decreases along `⪯` toward smaller words: `g ⪯ f`,
/// `g ≠ f` implies `prec_order_key(g) < prec_order_key(f)`.
pub fn prec_order_key(f: &PackedWord) -> (u32, usize) {
    let n = f.len();
    let descents = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| f.at(i) > f.at(j))
        .count();
    (f.max_letter(), descents)
}

/// The inverse of [`psi`], eliminating `⪯`-maximal words first.
pub fn psi_inverse(x: &ModuleElement) -> ModuleElement {
    let mut remainder: BTreeMap<((u32, usize), PackedWord), BigInt> = x
        .terms()
        .map(|(w, c)| ((prec_order_key(w), w.clone()), c.clone()))
        .collect();
    let mut out = ModuleElement::zero();
    while let Some(((_, f), c)) = remainder.pop_last() {
        for g in PackedWords::new(f.len()) {
            if g == f || !prec_unchecked(&g, &f) {
                continue;
            }
            let slot = remainder.entry((prec_order_key(&g), g)).or_default();
            *slot -= &c;
        }
        remainder.retain(|_, v| !v.is_zero());
        out.add_term(f, c);
    }
    out
}

/// Named maps and pairings with a matrix in each degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedMap {
    Phi,
    PhiPrime,
    Psi,
    PhiInverse,
    /// The picture pairing on the weak plane poset basis.
    Pairing,
    /// The pairing induced on (WQSym, ⧢, Δ) through φ.
    PairingShuffle,
    /// The pairing induced on (WQSym, ·, Δ) through φ′.
    PairingDot,
}

impl NamedMap {
    pub const ALL: [NamedMap; 7] = [
        NamedMap::Phi,
        NamedMap::PhiPrime,
        NamedMap::Psi,
        NamedMap::PhiInverse,
        NamedMap::Pairing,
        NamedMap::PairingShuffle,
        NamedMap::PairingDot,
    ];
}

impl FromStr for NamedMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "phi" => NamedMap::Phi,
            "phiprime" => NamedMap::PhiPrime,
            "psi" => NamedMap::Psi,
            "phiinv" => NamedMap::PhiInverse,
            "pairing" => NamedMap::Pairing,
            "pairing-shuffle" => NamedMap::PairingShuffle,
            "pairing-dot" => NamedMap::PairingDot,
            other => {
                return Err(Error::InvalidWord {
                    input: other.to_string(),
                    reason: "expected one of phi, phiprime, psi, phiinv, pairing, pairing-shuffle, pairing-dot".into(),
                })
            }
        })
    }
}

impl fmt::Display for NamedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NamedMap::Phi => "phi",
            NamedMap::PhiPrime => "phiprime",
            NamedMap::Psi => "psi",
            NamedMap::PhiInverse => "phiinv",
            NamedMap::Pairing => "pairing",
            NamedMap::PairingShuffle => "pairing-shuffle",
            NamedMap::PairingDot => "pairing-dot",
        })
    }
}

/// Matrix in the lexicographic basis of `PW(n)`: columns are images for maps,
/// entry `(r, c)` is `⟨r, c⟩` for pairings.
pub fn matrix_of(map: NamedMap, n: usize) -> Result<IntMatrix> {
    matrix_of_with(&Hwpp::new(), map, n)
}

pub fn matrix_of_with(h: &Hwpp, map: NamedMap, n: usize) -> Result<IntMatrix> {
    if n > MATRIX_LIMIT {
        return Err(Error::Capacity {
            what: "matrix",
            requested: n,
            limit: MATRIX_LIMIT,
        });
    }
    let basis = enumerate(n)?;
    let images = |f: &dyn Fn(&ModuleElement) -> ModuleElement| -> Vec<ModuleElement> {
        basis
            .iter()
            .map(|w| f(&ModuleElement::basis(w.clone())))
            .collect()
    };
    let gram = || {
        IntMatrix::from_fn(basis.clone(), basis.clone(), |r, c| {
            BigInt::from(h.pairing_basis(&basis[r], &basis[c]))
        })
    };
    // M⁻ᵀ G M⁻¹ with M⁻¹ given by its columns.
    let induced = |inverse: &dyn Fn(&ModuleElement) -> ModuleElement| -> Result<IntMatrix> {
        let inv = IntMatrix::from_images(basis.clone(), &images(inverse));
        inv.transpose().mul(&gram())?.mul(&inv)
    };
    Ok(match map {
        NamedMap::Phi => IntMatrix::from_images(basis.clone(), &images(&phi)),
        NamedMap::PhiPrime => IntMatrix::from_images(basis.clone(), &images(&phi_prime)),
        NamedMap::Psi => IntMatrix::from_images(basis.clone(), &images(&psi)),
        NamedMap::PhiInverse => IntMatrix::from_images(basis.clone(), &images(&phi_inverse)),
        NamedMap::Pairing => gram(),
        NamedMap::PairingShuffle => induced(&phi_inverse)?,
        NamedMap::PairingDot => induced(&phi_prime_inverse)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::leq_lin;

    fn w(s: &str) -> PackedWord {
        s.parse().unwrap()
    }

    fn el(terms: &[(&str, i64)]) -> ModuleElement {
        terms
            .iter()
            .map(|(s, c)| (w(s), BigInt::from(*c)))
            .collect()
    }

    fn basis(s: &str) -> ModuleElement {
        el(&[(s, 1)])
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&ModuleElement::one()), ModuleElement::one());
        assert_eq!(phi(&basis("11")), el(&[("11", 1), ("21", 1)]));
        assert_eq!(phi(&basis("21")), basis("21"));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&ModuleElement::one()), ModuleElement::one());
        assert_eq!(psi(&basis("12")), el(&[("11", 1), ("12", 1)]));
        assert_eq!(psi(&basis("21")), basis("21"));
    }

    #[test]
    fn phi_prime_examples() {
        assert_eq!(phi_prime(&ModuleElement::one()), ModuleElement::one());
        assert_eq!(
            phi_prime(&basis("12")),
            el(&[("11", 1), ("12", 1), ("21", 1)])
        );
        assert_eq!(phi_prime(&basis("21")), basis("21"));
    }

    #[test]
    fn phi_inverse_examples() {
        assert_eq!(phi_inverse(&basis("21")), basis("21"));
        assert_eq!(phi_inverse(&ModuleElement::one()), ModuleElement::one());
        assert_eq!(phi_inverse(&basis("11")), el(&[("11", 1), ("21", -1)]));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&basis("12"), &basis("12")), BigInt::from(2));
        assert_eq!(pairing(&basis("1"), &ModuleElement::one()), BigInt::zero());
        assert_eq!(
            pairing(&el(&[("11", 1), ("12", 1)]), &basis("21")),
            BigInt::from(1)
        );
    }

    #[test]
    fn induced_pairing_examples() {
        assert_eq!(
            induced_pairing(&w("11"), &w("12"), Via::PhiPrime).unwrap(),
            BigInt::from(-1)
        );
        for via in [Via::Phi, Via::PhiPrime] {
            let e = PackedWord::empty();
            assert_eq!(induced_pairing(&e, &e, via).unwrap(), BigInt::from(1));
        }
        assert!(induced_pairing(&w("1"), &w("11"), Via::Phi).is_err());
    }

    #[test]
    fn matrix_examples() {
        let m = |map, n| matrix_of(map, n).unwrap().to_i64_rows().unwrap();
        assert_eq!(
            m(NamedMap::Phi, 2),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]]
        );
        assert_eq!(
            m(NamedMap::Pairing, 2),
            vec![vec![1, 1, 0], vec![1, 2, 1], vec![0, 1, 0]]
        );
        assert_eq!(m(NamedMap::Phi, 0), vec![vec![1]]);
        assert!(matrix_of(NamedMap::Phi, 6).unwrap_err().is_capacity());
    }

    #[test]
    fn order_keys_are_strict_linear_extensions() {
        for n in 0..=5 {
            let words: Vec<_> = PackedWords::new(n).collect();
            for f in &words {
                for g in &words {
                    if f != g && leq_lin(f, g).unwrap() {
                        assert!(lin_order_key(f) < lin_order_key(g), "{f} {g}");
                    }
                    if f != g && prec_unchecked(g, f) {
                        assert!(prec_order_key(g) < prec_order_key(f), "{g} {f}");
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_round_trip() {
        for n in 0..=4 {
            for f in PackedWords::new(n) {
                let x = basis(&f.to_text());
                assert_eq!(phi_inverse(&phi(&x)), x);
                assert_eq!(phi(&phi_inverse(&x)), x);
                assert_eq!(psi_inverse(&psi(&x)), x);
                assert_eq!(phi_prime(&phi_prime_inverse(&x)), x);
            }
        }
    }
}
