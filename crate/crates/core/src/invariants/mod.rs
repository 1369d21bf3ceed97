//! Hierarchy invariants: bar complexes, torsion, planarity orders,
//! semi-dilation and the ordered set they take values in.

mod bar;
mod hierarchy;
mod order;
mod sd;
mod torsion;

pub use bar::{bar_b_k, build_ekv, complex_from_map};
pub use hierarchy::{classify, combine, HierarchyValue, Level, Zone};
pub use order::{
    check_width_monotone, multi_point_hat, order_functoriality_check, order_multi, order_multi_tilde, order_o,
    order_o_tilde, planarity, width, FunctorialityReport, MultiPointFamily, OrderAnswer, PlanarityAnswer,
    PlanarityScope, TransportReport,
};
pub use sd::{sd_order, sd_order_linearized, UModule};
pub use torsion::{torsion, torsion_monotone_check, TorsionAnswer, TorsionReport};

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::algebra::{Echelon, LinComb, SparseRow, Q};

/// Search limits shared by the invariant computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest outer word length k tried.
    pub word_bound: usize,
    /// Letter bound on the chains searched at each k.
    pub max_letters: usize,
    pub max_action: Option<Q>,
}

impl SearchBounds {
    pub fn new(word_bound: usize, max_letters: usize) -> SearchBounds {
        SearchBounds {
            word_bound,
            max_letters,
            max_action: None,
        }
    }

    pub fn with_action(mut self, a: Option<Q>) -> SearchBounds {
        self.max_action = a;
        self
    }
}

/// How much a computed level can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bounded {
    /// The value, with every smaller level excluded.
    Exact(usize),
    /// A certificate exists at this level; smaller levels were not excluded.
    AtMost(usize),
    /// Nothing found within the search bounds.
    NotFound,
}

impl Bounded {
    pub fn level(self) -> Option<usize> {
        match self {
            Bounded::Exact(k) | Bounded::AtMost(k) => Some(k),
            Bounded::NotFound => None,
        }
    }

    pub fn kind(self) -> &'static str {
        match self {
            Bounded::Exact(_) => "exact",
            Bounded::AtMost(_) => "at-most",
            Bounded::NotFound => "not-found-within-bounds",
        }
    }
}

impl std::fmt::Display for Bounded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bounded::Exact(k) => write!(f, "exact {k}"),
            Bounded::AtMost(k) => write!(f, "at-most {k}"),
            Bounded::NotFound => write!(f, "not-found-within-bounds"),
        }
    }
}

/// Coefficients c with Σ c_j images[j] = target, free variables zero.
pub(crate) fn find_combination<K: Ord + Clone>(images: &[LinComb<K>], target: &LinComb<K>) -> Option<Vec<Q>> {
    let mut rows: BTreeMap<K, SparseRow> = BTreeMap::new();
    for (j, img) in images.iter().enumerate() {
        for (k, c) in img {
            rows.entry(k.clone()).or_default().insert(j, c.clone());
        }
    }
    let keys: BTreeSet<K> = rows.keys().cloned().chain(target.keys().cloned()).collect();
    let mut ech = Echelon::new(images.len());
    for k in keys {
        let row = rows.remove(&k).unwrap_or_default();
        let rhs = target.coeff(&k);
        ech.push(row, rhs);
        if !ech.is_consistent() {
            return None;
        }
    }
    ech.particular()
}

/// Σ c_j basis[j] as a linear combination.
pub(crate) fn combine_basis<K: Ord + Clone>(basis: &[K], coeffs: &[Q]) -> LinComb<K> {
    basis
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(b, c)| (b.clone(), c.clone()))
        .collect()
}
