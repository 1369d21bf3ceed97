use std::cmp::Ordering;
use std::fmt;

use super::space::{GradedSpace, Parity};
use crate::error::{Error, Result};

/// Sign ±1.
pub type Sign = i8;

/// Sign of sorting `keys` stably, where only pairs of odd items contribute.
fn sort_sign<K: Ord>(keys: &[K], odd: &[bool]) -> Sign {
    let mut inv = 0usize;
    for i in 0..keys.len() {
        if !odd[i] {
            continue;
        }
        for j in i + 1..keys.len() {
            if odd[j] && keys[i] > keys[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Koszul sign of rearranging graded items. `order[i]` is the original
/// position of the item placed at position `i`.
pub fn permutation_sign(parities: &[Parity], order: &[usize]) -> Sign {
    debug_assert_eq!(parities.len(), order.len());
    let odd: Vec<bool> = order.iter().map(|&i| parities[i].is_odd()).collect();
    sort_sign(order, &odd)
}

/// (−1)^{|op|·Σ|prefix|}: an operator moving past the items before it.
pub fn koszul_pass_sign<I: IntoIterator<Item = Parity>>(operator: Parity, prefix: I) -> Sign {
    if !operator.is_odd() {
        return 1;
    }
    let p: Parity = prefix.into_iter().sum();
    if p.is_odd() {
        -1
    } else {
        1
    }
}

/// Sorted multiset of generator indices; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u32>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn unit() -> Word {
        Word(Vec::new())
    }

    pub fn letter(i: u32) -> Word {
        Word(vec![i])
    }

    /// Caller guarantees sorted letters with no repeated odd letter.
    pub(crate) fn from_sorted(letters: Vec<u32>) -> Word {
        debug_assert!(letters.windows(2).all(|w| w[0] <= w[1]));
        Word(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parity(&self, space: &GradedSpace) -> Parity {
        self.0.iter().map(|&l| space.parity(l)).sum()
    }

    pub fn display<'a>(&'a self, space: &'a GradedSpace) -> WordDisplay<'a> {
        WordDisplay { word: self, space }
    }

    pub fn parse(space: &GradedSpace, text: &str) -> Result<Option<(Word, Sign)>> {
        let text = text.trim();
        if text == "1" {
            return Ok(Some((Word::unit(), 1)));
        }
        let mut letters = Vec::new();
        for name in text.split(['·', '*']) {
            letters.push(space.lookup(name.trim())?);
        }
        Ok(normalize_word(space, &letters))
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    space: &'a GradedSpace,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_unit() {
            return write!(f, "1");
        }
        for (i, &l) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{}", self.space.name(l))?;
        }
        Ok(())
    }
}

/// Sort a letter sequence into canonical order. `None` when an odd letter
/// repeats, since such a product vanishes in the graded-symmetric algebra.
pub fn normalize_word(space: &GradedSpace, letters: &[u32]) -> Option<(Word, Sign)> {
    let odd: Vec<bool> = letters.iter().map(|&l| space.parity(l).is_odd()).collect();
    let sign = sort_sign(letters, &odd);
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1] && space.parity(w[0]).is_odd()) {
        return None;
    }
    Some((Word(sorted), sign))
}

/// `normalize_word` on generator names.
pub fn normalize_names(space: &GradedSpace, names: &[&str]) -> Result<Option<(Word, Sign)>> {
    let letters = names
        .iter()
        .map(|n| space.lookup(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(normalize_word(space, &letters))
}

/// Product of words in the given order, normalized.
pub fn multiply_words(space: &GradedSpace, words: &[&Word]) -> Option<(Word, Sign)> {
    let letters: Vec<u32> = words.iter().flat_map(|w| w.0.iter().copied()).collect();
    normalize_word(space, &letters)
}

/// Nonempty ⊙-multiset of clusters with a global ℏ exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EWord {
    clusters: Vec<Word>,
    hbar: u32,
}

impl Ord for EWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.clusters
            .len()
            .cmp(&other.clusters.len())
            .then_with(|| self.clusters.cmp(&other.clusters))
            .then_with(|| self.hbar.cmp(&other.hbar))
    }
}

impl PartialOrd for EWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl EWord {
    /// The single unit cluster 1.
    pub fn unit() -> EWord {
        EWord {
            clusters: vec![Word::unit()],
            hbar: 0,
        }
    }

    /// 1⊙…⊙1 with `n` clusters.
    pub fn units(n: usize) -> EWord {
        assert!(n > 0);
        EWord {
            clusters: vec![Word::unit(); n],
            hbar: 0,
        }
    }

    pub fn single(w: Word) -> EWord {
        EWord {
            clusters: vec![w],
            hbar: 0,
        }
    }

    /// v₁⊙…⊙v_k for the letters of a normalized word; the sign is +1
    /// because both orders agree.
    pub fn spread(w: &Word) -> EWord {
        assert!(!w.is_unit());
        EWord {
            clusters: w.letters().iter().map(|&l| Word::letter(l)).collect(),
            hbar: 0,
        }
    }

    pub(crate) fn from_sorted(clusters: Vec<Word>, hbar: u32) -> EWord {
        debug_assert!(!clusters.is_empty());
        debug_assert!(clusters.windows(2).all(|w| w[0] <= w[1]));
        EWord { clusters, hbar }
    }

    pub fn clusters(&self) -> &[Word] {
        &self.clusters
    }

    pub fn hbar(&self) -> u32 {
        self.hbar
    }

    pub fn with_hbar(&self, hbar: u32) -> EWord {
        EWord {
            clusters: self.clusters.clone(),
            hbar,
        }
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters.len()
    }

    pub fn num_letters(&self) -> usize {
        self.clusters.iter().map(Word::len).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.clusters.len() == 1 && self.clusters[0].is_unit()
    }

    pub fn all_units(&self) -> bool {
        self.clusters.iter().all(Word::is_unit)
    }

    pub fn has_unit_cluster(&self) -> bool {
        self.clusters.iter().any(Word::is_unit)
    }

    pub fn all_single_letters(&self) -> bool {
        self.clusters.iter().all(|c| c.len() == 1)
    }

    pub fn max_cluster_len(&self) -> usize {
        self.clusters.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn parity(&self, space: &GradedSpace) -> Parity {
        self.clusters.iter().map(|c| c.parity(space)).sum()
    }

    /// Letters of all clusters in order.
    pub fn flat_letters(&self) -> Vec<u32> {
        self.clusters.iter().flat_map(|c| c.letters().iter().copied()).collect()
    }

    pub fn display<'a>(&'a self, space: &'a GradedSpace) -> EWordDisplay<'a> {
        EWordDisplay { ew: self, space }
    }

    /// Parses `w₁ ⊙ w₂ ⊙ …` (also accepts `@` for ⊙).
    pub fn parse(space: &GradedSpace, text: &str, hbar: u32) -> Result<Option<(EWord, Sign)>> {
        let mut clusters = Vec::new();
        let mut sign: Sign = 1;
        for part in text.split(['⊙', '@']) {
            match Word::parse(space, part)? {
                Some((w, s)) => {
                    clusters.push(w);
                    sign *= s;
                }
                None => return Ok(None),
            }
        }
        if clusters.is_empty() {
            return Err(Error::InvalidInput("empty eword".into()));
        }
        Ok(normalize_eword(space, clusters, hbar).map(|(e, s)| (e, s * sign)))
    }
}

pub struct EWordDisplay<'a> {
    ew: &'a EWord,
    space: &'a GradedSpace,
}

impl fmt::Display for EWordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.ew.clusters.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊙ ")?;
            }
            write!(f, "{}", c.display(self.space))?;
        }
        if self.ew.hbar > 0 {
            write!(f, " ħ^{}", self.ew.hbar)?;
        }
        Ok(())
    }
}

/// Sort clusters into canonical order with the Koszul sign of their
/// parities. `None` when an odd cluster repeats.
pub fn normalize_eword(space: &GradedSpace, clusters: Vec<Word>, hbar: u32) -> Option<(EWord, Sign)> {
    assert!(!clusters.is_empty(), "an eword needs at least one cluster");
    let odd: Vec<bool> = clusters.iter().map(|c| c.parity(space).is_odd()).collect();
    let sign = sort_sign(&clusters, &odd);
    let mut sorted = clusters;
    sorted.sort();
    if sorted
        .windows(2)
        .any(|w| w[0] == w[1] && w[0].parity(space).is_odd())
    {
        return None;
    }
    Some((EWord { clusters: sorted, hbar }, sign))
}
