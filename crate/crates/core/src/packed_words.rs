//! Packed words, i.e. surjections `[n] -> [k]` written as their value sequence.
//!
//! Positions are 0-based throughout the Rust API; letters are 1-based, as in the
//! textual forms `212312` and `2,1,2,3,1,2`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest length [`enumerate`] will materialize.
pub const ENUMERATE_LIMIT: usize = 9;

/// A word over `1..=k` in which every letter of `1..=k` occurs.
///
/// Words are ordered by length first and lexicographically within a length, so
/// a sorted collection of words is graded and each degree is in basis order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PackedWord {
    letters: Vec<u32>,
    max: u32,
}

impl PackedWord {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::InvalidWord {
                input: format_letters(&letters),
                reason: "letters must be positive".into(),
            });
        }
        if !is_packed(&letters) {
            return Err(Error::NotPacked(format_letters(&letters)));
        }
        Ok(Self::from_packed_unchecked(letters))
    }

    pub(crate) fn from_packed_unchecked(letters: Vec<u32>) -> Self {
        debug_assert!(is_packed(&letters));
        let max = letters.iter().copied().max().unwrap_or(0);
        PackedWord { letters, max }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The identity permutation `12…n`.
    pub fn identity(n: usize) -> Self {
        Self::from_packed_unchecked((1..=n as u32).collect())
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The largest letter `k`; zero for the empty word.
    pub fn max_letter(&self) -> u32 {
        self.max
    }

    /// Value at a 0-based position.
    pub fn at(&self, i: usize) -> u32 {
        self.letters[i]
    }

    pub fn is_permutation(&self) -> bool {
        self.max as usize == self.len()
    }

    /// Packed subword at the given increasing positions.
    pub fn restrict(&self, positions: &[usize]) -> PackedWord {
        let sub: Vec<u32> = positions.iter().map(|&i| self.letters[i]).collect();
        pack(&sub)
    }

    /// `self` followed by `other` with every letter raised by `self.max_letter()`.
    pub fn shifted_concat(&self, other: &PackedWord) -> PackedWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|&v| v + self.max));
        Self::from_packed_unchecked(letters)
    }

    /// Positions of each letter, block `p` holding the positions of letter `p + 1`.
    pub fn to_set_partition(&self) -> OrderedSetPartition {
        let mut blocks = vec![Vec::new(); self.max as usize];
        for (i, &v) in self.letters.iter().enumerate() {
            blocks[v as usize - 1].push(i);
        }
        OrderedSetPartition {
            n: self.len(),
            blocks,
        }
    }

    /// Compact digit form when every letter is a single digit, comma form otherwise.
    pub fn to_text(&self) -> String {
        format_letters(&self.letters)
    }
}

fn format_letters(letters: &[u32]) -> String {
    if letters.iter().all(|&v| (1..=9).contains(&v)) {
        letters.iter().map(|v| v.to_string()).collect()
    } else {
        letters
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Ord for PackedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for PackedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.to_text())
        }
    }
}

impl fmt::Debug for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PackedWord({self})")
    }
}

/// Parses a word in compact (`212312`) or comma (`2,1,2,3,1,2`) form.
/// The empty string and `ε` denote the empty word. The result need not be packed.
pub fn parse_letters(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() || s == "ε" {
        return Ok(Vec::new());
    }
    let bad = |reason: &str| Error::InvalidWord {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    if s.contains(',') {
        s.split(',')
            .map(|t| match t.trim().parse::<u32>() {
                Ok(0) => Err(bad("letters must be positive")),
                Ok(v) => Ok(v),
                Err(_) => Err(bad("expected comma-separated positive integers")),
            })
            .collect()
    } else {
        s.chars()
            .map(|c| match c.to_digit(10) {
                Some(0) => Err(bad("letters must be positive")),
                Some(v) => Ok(v),
                None => Err(bad("expected digits 1-9 or a comma-separated list")),
            })
            .collect()
    }
}

impl FromStr for PackedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PackedWord::new(parse_letters(s)?)
    }
}

/// True iff the set of letters is exactly `{1, …, max}`.
pub fn is_packed(word: &[u32]) -> bool {
    let max = word.iter().copied().max().unwrap_or(0) as usize;
    if max > word.len() {
        return false;
    }
    let mut seen = vec![false; max + 1];
    for &v in word {
        if v == 0 {
            return false;
        }
        seen[v as usize] = true;
    }
    seen[1..].iter().all(|&s| s)
}

/// Replaces each letter by its rank among the distinct letters present.
pub fn pack(word: &[u32]) -> PackedWord {
    let mut distinct = word.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let letters = word
        .iter()
        .map(|v| distinct.binary_search(v).unwrap() as u32 + 1)
        .collect();
    PackedWord::from_packed_unchecked(letters)
}

/// Streams the packed words of length `n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct PackedWords {
    current: Option<Vec<u32>>,
}

impl PackedWords {
    pub fn new(n: usize) -> Self {
        // 11…1 is the lexicographically smallest packed word of each length.
        PackedWords {
            current: Some(vec![1; n]),
        }
    }
}

impl Iterator for PackedWords {
    type Item = PackedWord;

    fn next(&mut self) -> Option<PackedWord> {
        let word = self.current.take()?;
        let mut succ = word.clone();
        if advance(&mut succ) {
            self.current = Some(succ);
        }
        Some(PackedWord::from_packed_unchecked(word))
    }
}

/// Moves `word` to its lexicographic successor among packed words of the same
/// length. Returns false when `word` was the last one.
fn advance(word: &mut [u32]) -> bool {
    let n = word.len();
    for i in (0..n).rev() {
        let remaining = n - i - 1;
        let prefix = &word[..i];
        let prefix_max = prefix.iter().copied().max().unwrap_or(0);
        let mut seen = vec![false; n + 2];
        for &v in prefix {
            seen[v as usize] = true;
        }
        for c in word[i] + 1..=n as u32 {
            let top = prefix_max.max(c);
            let missing: Vec<u32> = (1..=top).filter(|&v| v != c && !seen[v as usize]).collect();
            if missing.len() <= remaining {
                word[i] = c;
                // Smallest completion: pad with 1s, then the missing letters ascending.
                let mut tail = vec![1; remaining - missing.len()];
                tail.extend(missing);
                tail.sort_unstable();
                word[i + 1..].copy_from_slice(&tail);
                return true;
            }
        }
    }
    false
}

/// All packed words of length `n`, lexicographically, guarded at [`ENUMERATE_LIMIT`].
pub fn enumerate(n: usize) -> Result<Vec<PackedWord>> {
    enumerate_with_limit(n, ENUMERATE_LIMIT)
}

pub fn enumerate_with_limit(n: usize, limit: usize) -> Result<Vec<PackedWord>> {
    if n > limit {
        return Err(Error::Capacity {
            what: "packed word enumeration",
            requested: n,
            limit,
        });
    }
    Ok(PackedWords::new(n).collect())
}

/// An ordered sequence of disjoint nonempty blocks covering `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedSetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    /// Validates and normalizes (sorts each block). Positions are 0-based.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![None; n];
        let mut blocks = blocks;
        for (b, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {} is empty", b + 1)));
            }
            block.sort_unstable();
            for &i in block.iter() {
                if i >= n {
                    return Err(Error::InvalidPartition(format!(
                        "position {} outside 1..={n}",
                        i + 1
                    )));
                }
                if let Some(prev) = owner[i] {
                    return Err(Error::InvalidPartition(format!(
                        "position {} lies in blocks {} and {}",
                        i + 1,
                        prev + 1,
                        b + 1
                    )));
                }
                owner[i] = Some(b);
            }
        }
        if let Some(gap) = owner.iter().position(Option::is_none) {
            return Err(Error::InvalidPartition(format!(
                "position {} is not covered",
                gap + 1
            )));
        }
        Ok(OrderedSetPartition { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn to_packed_word(&self) -> PackedWord {
        let mut letters = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                letters[i] = b as u32 + 1;
            }
        }
        PackedWord::from_packed_unchecked(letters)
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (b, block) in self.blocks.iter().enumerate() {
            if b > 0 {
                f.write_str(", ")?;
            }
            let items: Vec<String> = block.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn w(s: &str) -> PackedWord {
        s.parse().unwrap()
    }

    #[test]
    fn packedness() {
        assert!(is_packed(&[]));
        assert!(is_packed(&[2, 1, 2, 3, 1, 2]));
        assert!(!is_packed(&[2, 1, 3, 5]));
        assert!(!is_packed(&[2]));
    }

    #[test]
    fn pack_examples() {
        assert_eq!(pack(&[]), PackedWord::empty());
        assert_eq!(pack(&[2, 2]), w("11"));
        assert_eq!(pack(&[5, 2, 5, 9]), w("2123"));
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate(0).unwrap(), vec![PackedWord::empty()]);
        assert_eq!(enumerate(2).unwrap(), vec![w("11"), w("12"), w("21")]);
        let three: BTreeSet<_> = enumerate(3).unwrap().into_iter().collect();
        let expected: BTreeSet<_> = [
            "321", "221", "312", "231", "211", "212", "213", "111", "132", "121", "112", "123",
            "122",
        ]
        .iter()
        .map(|s| w(s))
        .collect();
        assert_eq!(three, expected);
    }

    #[test]
    fn enumeration_guard() {
        let err = enumerate(10).unwrap_err();
        assert!(err.is_capacity());
    }

    /// Independent oracle: pack every word in `[k]^n` for `k <= n` and deduplicate.
    fn brute_force_packed(n: usize) -> BTreeSet<Vec<u32>> {
        let mut out = BTreeSet::new();
        for k in 0..=n {
            if n > 0 && k == 0 {
                continue;
            }
            let total = (k as u64).pow(n as u32);
            for code in 0..total {
                let mut c = code;
                let word: Vec<u32> = (0..n)
                    .map(|_| {
                        let v = (c % k as u64) as u32 + 1;
                        c /= k as u64;
                        v
                    })
                    .collect();
                out.insert(pack(&word).letters().to_vec());
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_brute_force_oracle() {
        for n in 0..=7 {
            let listed: Vec<Vec<u32>> = PackedWords::new(n).map(|p| p.letters().to_vec()).collect();
            let oracle = brute_force_packed(n);
            assert_eq!(listed.len(), oracle.len(), "n = {n}");
            // lexicographic and duplicate free
            assert!(listed.windows(2).all(|p| p[0] < p[1]));
            assert_eq!(listed.into_iter().collect::<BTreeSet<_>>(), oracle);
        }
    }

    #[test]
    fn fubini_counts() {
        let counts: Vec<usize> = (0..=7).map(|n| PackedWords::new(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 3, 13, 75, 541, 4683, 47293]);
    }

    #[test]
    fn quasi_order_examples() {
        let p = w("212312").to_set_partition();
        assert_eq!(p.blocks(), &[vec![1, 4], vec![0, 2, 5], vec![3]]);
        assert_eq!(p.to_string(), "({2,5}, {1,3,6}, {4})");
        assert!(PackedWord::empty().to_set_partition().blocks().is_empty());
        assert_eq!(w("11").to_set_partition().blocks(), &[vec![0, 1]]);

        let back = OrderedSetPartition::new(6, vec![vec![1, 4], vec![0, 2, 5], vec![3]]).unwrap();
        assert_eq!(back.to_packed_word(), w("212312"));
        assert_eq!(
            OrderedSetPartition::new(0, vec![])
                .unwrap()
                .to_packed_word(),
            PackedWord::empty()
        );
        assert_eq!(
            OrderedSetPartition::new(2, vec![vec![0], vec![1]])
                .unwrap()
                .to_packed_word(),
            w("12")
        );
    }

    #[test]
    fn malformed_partitions() {
        assert!(OrderedSetPartition::new(2, vec![vec![0, 1], vec![1]]).is_err());
        assert!(OrderedSetPartition::new(3, vec![vec![0], vec![2]]).is_err());
        assert!(OrderedSetPartition::new(2, vec![vec![0], vec![], vec![1]]).is_err());
        assert!(OrderedSetPartition::new(2, vec![vec![0, 5]]).is_err());
    }

    #[test]
    fn quasi_order_round_trips() {
        for n in 0..=6 {
            for word in PackedWords::new(n) {
                let part = word.to_set_partition();
                assert_eq!(part.to_packed_word(), word);
                let rebuilt = OrderedSetPartition::new(n, part.blocks().to_vec()).unwrap();
                assert_eq!(rebuilt, part);
            }
        }
    }

    #[test]
    fn text_forms() {
        assert_eq!(w("212312").to_text(), "212312");
        let long: PackedWord = "1,2,3,4,5,6,7,8,9,10".parse().unwrap();
        assert_eq!(long.max_letter(), 10);
        assert_eq!(long.to_text(), "1,2,3,4,5,6,7,8,9,10");
        assert_eq!("2,1,2".parse::<PackedWord>().unwrap(), w("212"));
        assert_eq!("".parse::<PackedWord>().unwrap(), PackedWord::empty());
        assert_eq!("ε".parse::<PackedWord>().unwrap(), PackedWord::empty());
        assert!(matches!(
            "13".parse::<PackedWord>(),
            Err(Error::NotPacked(_))
        ));
        assert!("1a".parse::<PackedWord>().is_err());
        assert!("10".parse::<PackedWord>().is_err());
    }

    #[test]
    fn shifted_concat_example() {
        assert_eq!(w("1").shifted_concat(&w("21")), w("132"));
        assert_eq!(PackedWord::empty().shifted_concat(&w("12")), w("12"));
    }

    proptest! {
        #[test]
        fn pack_preserves_comparisons(word in prop::collection::vec(1u32..20, 0..=10)) {
            let packed = pack(&word);
            prop_assert!(is_packed(packed.letters()));
            prop_assert_eq!(pack(packed.letters()), packed.clone());
            for i in 0..word.len() {
                for j in 0..word.len() {
                    prop_assert_eq!(word[i].cmp(&word[j]), packed.at(i).cmp(&packed.at(j)));
                }
            }
        }
    }
}
