//! The full invariant suite, one check per acceptance criterion.
//!
//! Every check runs against an [`Hwpp`] built with the configured [`Fault`], so
//! the same suite doubles as its own mutation test.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fault::Fault;
use crate::hopf::{
    matrix_of_with, phi, phi_inverse, phi_prime, psi, qshuffle, shifted_shuffle, verify_structure,
    HopfReport, HopfStructure, Hwpp, IntMatrix, ModuleElement, NamedMap, QuasiShuffleWqsym,
    ShuffleWqsym, TensorElement,
};
use crate::orders::{
    hasse, inversion_set, leq_lin, lin_extensions, partial_order_violation, prec,
    weak_lin_extensions, OrderKind,
};
use crate::packed_words::{enumerate, PackedWord};
use crate::posets::{canonicalize, dp, pack_poset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub fault: Option<Fault>,
    /// Total degree for the Hopf axiom, morphism and pairing checks.
    pub max_degree: usize,
    /// Largest `n` for `pack_poset ∘ dp = id`.
    pub bijection_n: usize,
    /// Largest `n` for injectivity of `dp` up to isomorphism.
    pub injectivity_n: usize,
    /// Largest `n` for the degreewise matrix identities.
    pub matrix_n: usize,
    /// Largest `n` for the order and extension checks.
    pub order_n: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            fault: None,
            max_degree: 4,
            bijection_n: 6,
            injectivity_n: 4,
            matrix_n: 5,
            order_n: 5,
        }
    }
}

impl SuiteConfig {
    pub fn with_fault(fault: Option<Fault>) -> Self {
        SuiteConfig {
            fault,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let guards = [
            ("suite degree", self.max_degree, 5),
            ("bijection size", self.bijection_n, 7),
            ("injectivity size", self.injectivity_n, 5),
            ("matrix size", self.matrix_n, 5),
            ("order size", self.order_n, 5),
        ];
        for (what, requested, limit) in guards {
            if requested > limit {
                return Err(Error::Capacity {
                    what,
                    requested,
                    limit,
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub number: u8,
    pub title: &'static str,
    /// `None` on success, otherwise the first failure.
    pub failure: Option<String>,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let secs = self.elapsed.as_secs_f64();
        match &self.failure {
            None => write!(
                f,
                "criterion {} {}: PASS ({secs:.2} s)",
                self.number, self.title
            ),
            Some(why) => write!(
                f,
                "criterion {} {}: FAIL ({secs:.2} s): {why}",
                self.number, self.title
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub criteria: Vec<CriterionResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(CriterionResult::passed)
    }

    pub fn get(&self, number: u8) -> Option<&CriterionResult> {
        self.criteria.iter().find(|c| c.number == number)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.criteria {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

type Check = fn(&SuiteConfig) -> Result<Option<String>>;

pub const CRITERIA: [(u8, &str, Check); 8] = [
    (1, "golden matrices", golden_matrices),
    (2, "golden Hasse diagrams", golden_hasse),
    (3, "degree-2 products", degree_two_products),
    (4, "bijection", bijection),
    (5, "Hopf axioms", hopf_axioms),
    (6, "morphisms", morphisms),
    (7, "pairing", pairing_suite),
    (8, "orders and extensions", orders_and_extensions),
];

/// Runs criteria 1 to 8.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    run_criteria(config, &[1, 2, 3, 4, 5, 6, 7, 8])
}

pub fn run_criteria(config: &SuiteConfig, numbers: &[u8]) -> Result<SuiteReport> {
    config.validate()?;
    let mut criteria = Vec::new();
    for &(number, title, check) in &CRITERIA {
        if !numbers.contains(&number) {
            continue;
        }
        let start = Instant::now();
        let failure = check(config)?;
        criteria.push(CriterionResult {
            number,
            title,
            failure,
            elapsed: start.elapsed(),
        });
    }
    Ok(SuiteReport {
        config: config.clone(),
        criteria,
    })
}

fn w(s: &str) -> PackedWord {
    s.parse().expect("fixture words are packed")
}

fn first<T>(
    items: impl IntoIterator<Item = T>,
    bad: impl Fn(&T) -> Option<String>,
) -> Option<String> {
    items.into_iter().find_map(|x| bad(&x))
}

fn compare_matrix(label: &str, m: &IntMatrix, expected: &[[i64; 3]; 3]) -> Option<String> {
    let got = m.to_i64_rows();
    let want: Vec<Vec<i64>> = expected.iter().map(|r| r.to_vec()).collect();
    match got {
        Some(rows) if rows == want => None,
        Some(rows) => Some(format!("{label}: got {rows:?}, expected {want:?}")),
        None => Some(format!("{label}: entries out of range, expected {want:?}")),
    }
}

fn golden_matrices(config: &SuiteConfig) -> Result<Option<String>> {
    let h = Hwpp::with_fault(config.fault);
    let expected: [(&str, NamedMap, [[i64; 3]; 3]); 5] = [
        ("φ", NamedMap::Phi, [[1, 0, 0], [0, 1, 0], [1, 1, 1]]),
        ("φ′", NamedMap::PhiPrime, [[1, 1, 0], [0, 1, 0], [1, 1, 1]]),
        (
            "pairing",
            NamedMap::Pairing,
            [[1, 1, 0], [1, 2, 1], [0, 1, 0]],
        ),
        (
            "pairing via φ",
            NamedMap::PairingShuffle,
            [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
        ),
        (
            "pairing via φ′",
            NamedMap::PairingDot,
            [[1, -1, 0], [-1, 1, 1], [0, 1, 0]],
        ),
    ];
    for (label, map, want) in expected {
        let m = matrix_of_with(&h, map, 2)?;
        if let Some(why) = compare_matrix(label, &m, &want) {
            return Ok(Some(why));
        }
    }
    Ok(None)
}

fn golden_hasse(_: &SuiteConfig) -> Result<Option<String>> {
    let h2 = hasse(2, OrderKind::Lin)?;
    let edges: BTreeSet<(String, String)> = h2
        .edge_words()
        .map(|(a, b)| (a.to_text(), b.to_text()))
        .collect();
    let want: BTreeSet<(String, String)> = [("11", "21"), ("12", "21")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    if edges != want {
        return Ok(Some(format!("hasse(2, lin) edges {edges:?}")));
    }
    let h3 = hasse(3, OrderKind::Lin)?;
    if h3.nodes.len() != 13 {
        return Ok(Some(format!("hasse(3, lin) has {} nodes", h3.nodes.len())));
    }
    let maxima: Vec<String> = h3.maxima().iter().map(|m| m.to_text()).collect();
    if maxima != ["321"] {
        return Ok(Some(format!("hasse(3, lin) maxima {maxima:?}")));
    }
    let covered: BTreeSet<PackedWord> = h3.lower_covers(&w("321"));
    let want: BTreeSet<PackedWord> = ["221", "312", "231", "211"].iter().map(|s| w(s)).collect();
    Ok((covered != want).then(|| format!("321 covers {covered:?}")))
}

fn degree_two_products(_: &SuiteConfig) -> Result<Option<String>> {
    let one = w("1");
    let sh = shifted_shuffle(&one, &one);
    let sh_want: ModuleElement = [w("12"), w("21")].into_iter().collect();
    if sh != sh_want {
        return Ok(Some(format!("(1)⧢(1) = {sh}")));
    }
    let q = qshuffle(&one, &one);
    let q_want: ModuleElement = [w("12"), w("21"), w("11")].into_iter().collect();
    Ok((q != q_want).then(|| format!("(1)·(1) = {q}")))
}

fn bijection(config: &SuiteConfig) -> Result<Option<String>> {
    for n in 0..=config.bijection_n {
        for f in enumerate(n)? {
            let back = pack_poset(&dp(&f));
            if back != f {
                return Ok(Some(format!("pack_poset(dp({f})) = {back}")));
            }
        }
    }
    for n in 0..=config.injectivity_n {
        let mut seen = HashMap::new();
        for f in enumerate(n)? {
            if let Some(g) = seen.insert(canonicalize(&dp(&f)), f.clone()) {
                return Ok(Some(format!("dp({g}) and dp({f}) are isomorphic")));
            }
        }
    }
    Ok(None)
}

fn hopf_report_failure(report: HopfReport) -> Option<String> {
    report
        .first_counterexample()
        .map(|(name, ce)| format!("{} {name}: {ce}", report.structure))
}

fn hopf_axioms(config: &SuiteConfig) -> Result<Option<String>> {
    let reports = [
        verify_structure(&Hwpp::with_fault(config.fault), config.max_degree)?,
        verify_structure(&ShuffleWqsym, config.max_degree)?,
        verify_structure(&QuasiShuffleWqsym, config.max_degree)?,
    ];
    Ok(reports.into_iter().find_map(hopf_report_failure))
}

/// Checks that `f` intertwines the products and coproducts of `src` and `dst`
/// on all basis words of total degree at most `max_degree`.
fn intertwines(
    label: &str,
    src: &impl HopfStructure,
    dst: &impl HopfStructure,
    f: &dyn Fn(&ModuleElement) -> ModuleElement,
    max_degree: usize,
) -> Result<Option<String>> {
    let words: Vec<PackedWord> = (0..=max_degree)
        .map(enumerate)
        .collect::<Result<Vec<_>>>()?
        .concat();
    let mut image: BTreeMap<PackedWord, ModuleElement> = BTreeMap::new();
    for u in &words {
        image.insert(u.clone(), f(&ModuleElement::basis(u.clone())));
    }
    let on_basis = |u: &PackedWord| image[u].clone();
    for u in &words {
        for v in words.iter().filter(|v| u.len() + v.len() <= max_degree) {
            let left = f(&src.product_basis(u, v));
            let right = dst.product(&image[u], &image[v]);
            if left != right {
                return Ok(Some(format!(
                    "{label}({u}·{v}) = {left} but {label}({u})·{label}({v}) = {right}"
                )));
            }
        }
        let left: TensorElement = src.coproduct_basis(u).map(on_basis, on_basis);
        let right = dst.coproduct(&image[u]);
        if left != right {
            return Ok(Some(format!(
                "({label}⊗{label})Δ({u}) = {left} but Δ({label}({u})) = {right}"
            )));
        }
    }
    Ok(None)
}

fn morphisms(config: &SuiteConfig) -> Result<Option<String>> {
    let h = Hwpp::with_fault(config.fault);
    let d = config.max_degree;
    let checks: [Option<String>; 3] = [
        intertwines("φ", &h, &ShuffleWqsym, &phi, d)?,
        intertwines("φ′", &h, &QuasiShuffleWqsym, &phi_prime, d)?,
        intertwines("ψ", &ShuffleWqsym, &QuasiShuffleWqsym, &psi, d)?,
    ];
    if let Some(why) = checks.into_iter().flatten().next() {
        return Ok(Some(why));
    }
    for n in 0..=config.matrix_n {
        let mut psi_memo: HashMap<PackedWord, ModuleElement> = HashMap::new();
        for f in enumerate(n)? {
            let p = ModuleElement::basis(f.clone());
            let image = phi(&p);
            let composed = image.map_linear(|g| {
                psi_memo
                    .entry(g.clone())
                    .or_insert_with(|| psi(&ModuleElement::basis(g.clone())))
                    .clone()
            });
            let direct = phi_prime(&p);
            if composed != direct {
                return Ok(Some(format!(
                    "ψ(φ({f})) = {composed} but φ′({f}) = {direct}"
                )));
            }
            let back = phi_inverse(&image);
            if back != p {
                return Ok(Some(format!("φ⁻¹(φ({f})) = {back}")));
            }
        }
    }
    Ok(None)
}

fn pairing_suite(config: &SuiteConfig) -> Result<Option<String>> {
    let h = Hwpp::with_fault(config.fault);
    let grams: Vec<IntMatrix> = (0..=config.max_degree)
        .map(|n| matrix_of_with(&h, NamedMap::Pairing, n))
        .collect::<Result<_>>()?;
    let index: Vec<HashMap<PackedWord, usize>> = grams
        .iter()
        .map(|g| {
            g.row_basis()
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, w)| (w, i))
                .collect()
        })
        .collect();
    let pair = |x: &PackedWord, y: &PackedWord| -> BigInt {
        if x.len() != y.len() {
            return BigInt::zero();
        }
        let n = x.len();
        grams[n].get(index[n][x], index[n][y]).clone()
    };
    for (n, g) in grams.iter().enumerate() {
        if g.transpose() != *g {
            return Ok(Some(format!("degree {n} pairing matrix is not symmetric")));
        }
        if g.determinant().is_zero() {
            return Ok(Some(format!("degree {n} pairing matrix is singular")));
        }
    }
    for n in 0..=config.max_degree {
        let degree_n = grams[n].row_basis().to_vec();
        let coproducts: Vec<TensorElement> =
            degree_n.iter().map(|z| h.coproduct_basis(z)).collect();
        for i in 0..=n {
            for x in grams[i].row_basis() {
                for y in grams[n - i].row_basis() {
                    let xy = h.product_basis(x, y);
                    for (z, dz) in degree_n.iter().zip(&coproducts) {
                        let left: BigInt = xy.terms().map(|(t, c)| c * pair(t, z)).sum();
                        let right: BigInt = dz
                            .terms()
                            .map(|(z1, z2, c)| c * pair(x, z1) * pair(y, z2))
                            .sum();
                        if left != right {
                            return Ok(Some(format!(
                                "⟨{x}·{y}, {z}⟩ = {left} but Σ⟨{x}, z′⟩⟨{y}, z″⟩ = {right}"
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn orders_and_extensions(config: &SuiteConfig) -> Result<Option<String>> {
    for n in 0..=config.order_n {
        let words = enumerate(n)?;
        if let Some((axiom, ws)) =
            partial_order_violation(&words, |f, g| leq_lin(f, g).unwrap_or(false))
        {
            return Ok(Some(format!("leq_lin fails {axiom} at {ws:?}")));
        }
        if let Some((axiom, ws)) =
            partial_order_violation(&words, |g, f| prec(g, f).unwrap_or(false))
        {
            return Ok(Some(format!("prec fails {axiom} at {ws:?}")));
        }
        for f in &words {
            let p = dp(f);
            let lin = lin_extensions(&p);
            let above: BTreeSet<PackedWord> = words
                .iter()
                .filter(|g| leq_lin(f, g).unwrap_or(false))
                .cloned()
                .collect();
            if lin != above {
                return Ok(Some(format!("Lin(dp({f})) = {lin:?}, expected {above:?}")));
            }
            let mut union = BTreeSet::new();
            for g in &lin {
                for h in words.iter().filter(|h| prec(h, g).unwrap_or(false)) {
                    if !union.insert(h.clone()) {
                        return Ok(Some(format!(
                            "{h} lies under two linear extensions of dp({f})"
                        )));
                    }
                }
            }
            let weak = weak_lin_extensions(&p);
            if weak != union {
                return Ok(Some(format!(
                    "WLin(dp({f})) = {weak:?}, expected {union:?}"
                )));
            }
        }
        let perms: Vec<&PackedWord> = words.iter().filter(|f| f.is_permutation()).collect();
        let pairs = perms
            .iter()
            .flat_map(|f| perms.iter().map(move |g| (*f, *g)));
        let bad = first(pairs, |&(f, g)| {
            let by_order = leq_lin(f, g).unwrap_or(false);
            let by_sets = inversion_set(f).is_subset(&inversion_set(g));
            (by_order != by_sets).then(|| {
                format!("leq_lin({f}, {g}) = {by_order} but inversion containment is {by_sets}")
            })
        });
        if bad.is_some() {
            return Ok(bad);
        }
    }
    Ok(None)
}
