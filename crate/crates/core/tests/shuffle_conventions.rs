//! The shifted shuffle read as interleaving positions versus interleaving
//! values. Only the value reading makes φ a morphism onto (WQSym, ⧢, Δ).

use wpp_core::hopf::{HopfStructure, Hwpp, ShuffleWqsym};
use wpp_core::{enumerate, phi, shifted_shuffle, ModuleElement, PackedWord};

/// Interleavings of the positions of `u` and of `v` shifted by `max(u)`.
fn positional_shuffle(u: &PackedWord, v: &PackedWord) -> ModuleElement {
    let shift = u.max_letter();
    let a: Vec<u32> = u.letters().to_vec();
    let b: Vec<u32> = v.letters().iter().map(|x| x + shift).collect();
    let mut out = Vec::new();
    fn go(a: &[u32], b: &[u32], acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if a.is_empty() && b.is_empty() {
            out.push(acc.clone());
            return;
        }
        if let Some((&x, rest)) = a.split_first() {
            acc.push(x);
            go(rest, b, acc, out);
            acc.pop();
        }
        if let Some((&y, rest)) = b.split_first() {
            acc.push(y);
            go(a, rest, acc, out);
            acc.pop();
        }
    }
    go(&a, &b, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|letters| PackedWord::new(letters).unwrap())
        .collect()
}

fn w(s: &str) -> PackedWord {
    s.parse().unwrap()
}

#[test]
fn readings_agree_in_degree_two_only() {
    assert_eq!(
        shifted_shuffle(&w("1"), &w("1")),
        positional_shuffle(&w("1"), &w("1"))
    );
    let values: ModuleElement = [w("123"), w("132"), w("231")].into_iter().collect();
    let positions: ModuleElement = [w("123"), w("132"), w("312")].into_iter().collect();
    assert_eq!(shifted_shuffle(&w("12"), &w("1")), values);
    assert_eq!(positional_shuffle(&w("12"), &w("1")), positions);
}

#[test]
fn only_the_value_reading_makes_phi_multiplicative() {
    let h = Hwpp::new();
    let image = |x: &PackedWord| phi(&ModuleElement::basis(x.clone()));
    let multiply = |x: &ModuleElement,
                    y: &ModuleElement,
                    f: &dyn Fn(&PackedWord, &PackedWord) -> ModuleElement| {
        let mut out = ModuleElement::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                out.add_scaled(&f(a, b), &(ca * cb));
            }
        }
        out
    };
    let words: Vec<PackedWord> = (0..=3).flat_map(|n| enumerate(n).unwrap()).collect();
    let mut positional_failures = Vec::new();
    for u in &words {
        for v in words.iter().filter(|v| u.len() + v.len() <= 4) {
            let left = phi(&h.product_basis(u, v));
            assert_eq!(left, ShuffleWqsym.product(&image(u), &image(v)), "{u} {v}");
            if left != multiply(&image(u), &image(v), &positional_shuffle) {
                positional_failures.push(format!("{u}·{v}"));
            }
        }
    }
    // Words run by length, then lexicographically, so this is the smallest case.
    assert_eq!(
        positional_failures.first().map(String::as_str),
        Some("1·11")
    );
}
