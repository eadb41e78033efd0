use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::packed_words::PackedWord;

pub type Coeff = BigInt;

fn write_coeff(f: &mut fmt::Formatter<'_>, first: bool, c: &BigInt) -> fmt::Result {
    match (first, c.is_negative()) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    let abs = c.abs();
    if !abs.is_one() {
        write!(f, "{abs}·")?;
    }
    Ok(())
}

/// A finitely supported integer combination of packed words. Zero
/// coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    terms: BTreeMap<PackedWord, BigInt>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: PackedWord) -> Self {
        Self::term(w, BigInt::one())
    }

    /// The basis element of the empty word, the unit of every product here.
    pub fn one() -> Self {
        Self::basis(PackedWord::empty())
    }

    pub fn term(w: PackedWord, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn add_term(&mut self, w: PackedWord, c: impl Into<BigInt>) {
        let c = c.into();
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, w: &PackedWord) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PackedWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &PackedWord> {
        self.terms.keys()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ModuleElement {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &ModuleElement, c: &BigInt) {
        for (w, d) in other.terms() {
            self.add_term(w.clone(), d * c);
        }
    }

    /// Extends a map on basis words linearly.
    pub fn map_linear(&self, mut f: impl FnMut(&PackedWord) -> ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (w, c) in self.terms() {
            out.add_scaled(&f(w), c);
        }
        out
    }

    /// Part of degree `n`.
    pub fn homogeneous(&self, n: usize) -> ModuleElement {
        ModuleElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    word: w.to_text(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ElementJson) -> Result<Self> {
        let mut out = ModuleElement::zero();
        for t in &json.terms {
            out.add_term(t.word.parse()?, t.coeff.clone());
        }
        Ok(out)
    }
}

impl FromIterator<(PackedWord, BigInt)> for ModuleElement {
    fn from_iter<I: IntoIterator<Item = (PackedWord, BigInt)>>(iter: I) -> Self {
        let mut out = ModuleElement::zero();
        for (w, c) in iter {
            out.add_term(w, c);
        }
        out
    }
}

impl FromIterator<PackedWord> for ModuleElement {
    fn from_iter<I: IntoIterator<Item = PackedWord>>(iter: I) -> Self {
        iter.into_iter().map(|w| (w, BigInt::one())).collect()
    }
}

impl AddAssign<&ModuleElement> for ModuleElement {
    fn add_assign(&mut self, rhs: &ModuleElement) {
        self.add_scaled(rhs, &BigInt::one());
    }
}

impl Add for &ModuleElement {
    type Output = ModuleElement;
    fn add(self, rhs: &ModuleElement) -> ModuleElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &ModuleElement {
    type Output = ModuleElement;
    fn sub(self, rhs: &ModuleElement) -> ModuleElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigInt::one());
        out
    }
}

impl Neg for &ModuleElement {
    type Output = ModuleElement;
    fn neg(self) -> ModuleElement {
        self.scale(&-BigInt::one())
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            write_coeff(f, i == 0, c)?;
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleElement({self})")
    }
}

/// Wire form: `{"terms": [{"word": "212", "coeff": -1}, …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: String,
    #[serde(with = "json_int")]
    pub coeff: BigInt,
}

/// Integers as JSON numbers when they fit in 64 bits, as decimal strings otherwise.
pub(crate) mod json_int {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(i) => i.serialize(s),
            None => v.to_string().serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(i) => Ok(BigInt::from(i)),
            Repr::Text(t) => t.parse().map_err(D::Error::custom),
        }
    }

    pub(crate) fn to_value(v: &BigInt) -> serde_json::Value {
        match v.to_i64() {
            Some(i) => serde_json::Value::from(i),
            None => serde_json::Value::from(v.to_string()),
        }
    }
}

/// A finitely supported integer combination of ordered pairs of packed words.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TensorElement {
    terms: BTreeMap<(PackedWord, PackedWord), BigInt>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(a: PackedWord, b: PackedWord) -> Self {
        let mut out = Self::zero();
        out.add_term(a, b, 1);
        out
    }

    pub fn add_term(&mut self, a: PackedWord, b: PackedWord, c: impl Into<BigInt>) {
        let c = c.into();
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, a: &PackedWord, b: &PackedWord) -> BigInt {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PackedWord, &PackedWord, &BigInt)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self += c * (x ⊗ y)`.
    pub fn add_outer(&mut self, x: &ModuleElement, y: &ModuleElement, c: &BigInt) {
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                self.add_term(a.clone(), b.clone(), c * ca * cb);
            }
        }
    }

    /// `(f ⊗ g)(self)` for maps given on basis words.
    pub fn map(
        &self,
        mut f: impl FnMut(&PackedWord) -> ModuleElement,
        mut g: impl FnMut(&PackedWord) -> ModuleElement,
    ) -> TensorElement {
        let mut out = TensorElement::zero();
        for (a, b, c) in self.terms() {
            out.add_outer(&f(a), &g(b), c);
        }
        out
    }
}

impl AddAssign<&TensorElement> for TensorElement {
    fn add_assign(&mut self, rhs: &TensorElement) {
        for (a, b, c) in rhs.terms() {
            self.add_term(a.clone(), b.clone(), c.clone());
        }
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            write_coeff(f, i == 0, c)?;
            write!(f, "{a}⊗{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({self})")
    }
}

impl TensorElement {
    /// `{"terms": [{"left": "1", "right": "1", "coeff": 2}, …]}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms()
            .map(|(a, b, c)| {
                serde_json::json!({
                    "left": a.to_text(),
                    "right": b.to_text(),
                    "coeff": json_int::to_value(c),
                })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

/// Parses an element from its JSON form.
pub fn parse_element(text: &str) -> Result<ModuleElement> {
    let json: ElementJson = serde_json::from_str(text).map_err(Error::from)?;
    ModuleElement::from_json(&json)
}
