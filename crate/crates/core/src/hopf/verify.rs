//! Exhaustive checks of the Hopf algebra axioms on small degrees.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hopf::element::{ModuleElement, TensorElement};
use crate::hopf::structures::{
    counit, HopfStructure, Hwpp, QuasiShuffleWqsym, ShuffleWqsym, Structure,
};
use crate::packed_words::{enumerate, PackedWord};

/// Largest total degree [`verify_hopf`] accepts.
pub const VERIFY_LIMIT: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    /// Number of instances examined.
    pub cases: usize,
    pub counterexample: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfReport {
    pub structure: String,
    pub max_degree: usize,
    pub checks: Vec<CheckResult>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn first_counterexample(&self) -> Option<(&'static str, &str)> {
        self.checks
            .iter()
            .find_map(|c| c.counterexample.as_deref().map(|s| (c.name, s)))
    }
}

impl fmt::Display for HopfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.counterexample {
                None => writeln!(f, "PASS {} {} ({} cases)", self.structure, c.name, c.cases)?,
                Some(ce) => writeln!(f, "FAIL {} {}: {}", self.structure, c.name, ce)?,
            }
        }
        Ok(())
    }
}

type Triple = BTreeMap<(PackedWord, PackedWord, PackedWord), BigInt>;

fn add_triple(t: &mut Triple, key: (PackedWord, PackedWord, PackedWord), c: BigInt) {
    let slot = t.entry(key.clone()).or_default();
    *slot += c;
    if slot.is_zero() {
        t.remove(&key);
    }
}

struct Checker {
    name: &'static str,
    cases: usize,
    counterexample: Option<String>,
}

impl Checker {
    fn new(name: &'static str) -> Self {
        Checker {
            name,
            cases: 0,
            counterexample: None,
        }
    }

    fn done(&self) -> bool {
        self.counterexample.is_some()
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

/// Runs every axiom on all basis elements of total degree at most `n_max`.
pub fn verify_hopf(structure: Structure, n_max: usize) -> Result<HopfReport> {
    match structure {
        Structure::Hwpp => verify_structure(&Hwpp::new(), n_max),
        Structure::Shuffle => verify_structure(&ShuffleWqsym, n_max),
        Structure::QuasiShuffle => verify_structure(&QuasiShuffleWqsym, n_max),
    }
}

pub fn verify_structure<H: HopfStructure>(h: &H, n_max: usize) -> Result<HopfReport> {
    if n_max > VERIFY_LIMIT {
        return Err(Error::Capacity {
            what: "verification degree",
            requested: n_max,
            limit: VERIFY_LIMIT,
        });
    }
    let by_degree: Vec<Vec<PackedWord>> = (0..=n_max).map(enumerate).collect::<Result<_>>()?;
    let all: Vec<&PackedWord> = by_degree.iter().flatten().collect();
    let e = |w: &PackedWord| ModuleElement::basis(w.clone());
    let words_up_to = |d: usize| by_degree[..=d].iter().flatten();

    let mut unit = Checker::new("unit");
    for &w in &all {
        let one = ModuleElement::one();
        let ok = h.product(&one, &e(w)) == e(w) && h.product(&e(w), &one) == e(w);
        unit.check(ok, || format!("ε·{w} or {w}·ε ≠ {w}"));
        if unit.done() {
            break;
        }
    }

    let mut assoc = Checker::new("associativity");
    'assoc: for u in words_up_to(n_max) {
        for v in words_up_to(n_max - u.len()) {
            let uv = h.product_basis(u, v);
            for x in words_up_to(n_max - u.len() - v.len()) {
                let left = h.product(&uv, &e(x));
                let right = h.product(&e(u), &h.product_basis(v, x));
                assoc.check(left == right, || {
                    format!("({u}·{v})·{x} = {left} but {u}·({v}·{x}) = {right}")
                });
                if assoc.done() {
                    break 'assoc;
                }
            }
        }
    }

    let mut coassoc = Checker::new("coassociativity");
    let mut counit_law = Checker::new("counit");
    for &w in &all {
        let delta = h.coproduct_basis(w);
        let mut left = Triple::new();
        let mut right = Triple::new();
        for (a, b, c) in delta.terms() {
            for (a1, a2, d) in h.coproduct_basis(a).terms() {
                add_triple(&mut left, (a1.clone(), a2.clone(), b.clone()), c * d);
            }
            for (b1, b2, d) in h.coproduct_basis(b).terms() {
                add_triple(&mut right, (a.clone(), b1.clone(), b2.clone()), c * d);
            }
        }
        if !coassoc.done() {
            coassoc.check(left == right, || {
                format!("(Δ⊗id)Δ({w}) ≠ (id⊗Δ)Δ({w}), Δ({w}) = {delta}")
            });
        }
        let mut left_counit = ModuleElement::zero();
        let mut right_counit = ModuleElement::zero();
        for (a, b, c) in delta.terms() {
            left_counit.add_scaled(&e(b), &(c * counit(&e(a))));
            right_counit.add_scaled(&e(a), &(c * counit(&e(b))));
        }
        if !counit_law.done() {
            counit_law.check(left_counit == e(w) && right_counit == e(w), || {
                format!(
                    "counit law fails at {w}: (ε⊗id)Δ = {left_counit}, (id⊗ε)Δ = {right_counit}"
                )
            });
        }
    }

    let mut bialgebra = Checker::new("bialgebra compatibility");
    'bi: for u in words_up_to(n_max) {
        let du = h.coproduct_basis(u);
        for v in words_up_to(n_max - u.len()) {
            let left = h.coproduct(&h.product_basis(u, v));
            let right = h.tensor_product(&du, &h.coproduct_basis(v));
            bialgebra.check(left == right, || {
                format!("Δ({u}·{v}) = {left} but Δ({u})Δ({v}) = {right}")
            });
            if bialgebra.done() {
                break 'bi;
            }
        }
    }

    let mut antipode = Checker::new("antipode");
    let mut memo: BTreeMap<PackedWord, ModuleElement> = BTreeMap::new();
    let mut s = |w: &PackedWord| {
        memo.entry(w.clone())
            .or_insert_with(|| h.antipode(&ModuleElement::basis(w.clone())))
            .clone()
    };
    for &w in &all {
        let delta: TensorElement = h.coproduct_basis(w);
        let mut left = ModuleElement::zero();
        let mut right = ModuleElement::zero();
        for (a, b, c) in delta.terms() {
            left.add_scaled(&h.product(&s(a), &e(b)), c);
            right.add_scaled(&h.product(&e(a), &s(b)), c);
        }
        let expected = if w.is_empty() {
            ModuleElement::one()
        } else {
            ModuleElement::zero()
        };
        antipode.check(left == expected && right == expected, || {
            format!("m(S⊗id)Δ({w}) = {left}, m(id⊗S)Δ({w}) = {right}, expected {expected}")
        });
        if antipode.done() {
            break;
        }
    }

    Ok(HopfReport {
        structure: h.name().to_string(),
        max_degree: n_max,
        checks: [unit, assoc, coassoc, counit_law, bialgebra, antipode]
            .into_iter()
            .map(Checker::finish)
            .collect(),
    })
}
