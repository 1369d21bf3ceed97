use std::collections::btree_map::{self, BTreeMap};

use num_traits::{One, Zero};

use super::space::GradedSpace;
use super::word::{EWord, Sign, Word};
use super::Q;

/// Finite linear combination with nonzero exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Q>,
}

pub type Element = LinComb<Word>;
pub type EElement = LinComb<EWord>;

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Q::one())
    }

    pub fn term(k: K, c: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: K, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_signed(&mut self, k: K, c: &Q, sign: Sign) {
        if sign < 0 {
            self.add_term(k, -c.clone());
        } else {
            self.add_term(k, c.clone());
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * s);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn scaled(&self, s: &Q) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn coeff(&self, k: &K) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Q> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Q> {
        self.terms.keys()
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Q);
    type IntoIter = btree_map::Iter<'a, K, Q>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl Element {
    /// Keeps the terms of word length `l`.
    pub fn of_length(&self, l: usize) -> Element {
        self.filter(|w| w.len() == l)
    }

    pub fn display(&self, space: &GradedSpace) -> String {
        render(self.iter().map(|(w, c)| (c, w.display(space).to_string())))
    }
}

impl EElement {
    pub fn unit() -> EElement {
        EElement::basis(EWord::unit())
    }

    pub fn display(&self, space: &GradedSpace) -> String {
        render(self.iter().map(|(w, c)| (c, w.display(space).to_string())))
    }

    /// Drops terms with ℏ exponent above `n`.
    pub fn truncate_hbar(&self, n: u32) -> EElement {
        self.filter(|w| w.hbar() <= n)
    }
}

fn render<'a>(terms: impl Iterator<Item = (&'a Q, String)>) -> String {
    let parts: Vec<String> = terms.map(|(c, w)| format!("{} {}", super::fmt_q(c), w)).collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}
