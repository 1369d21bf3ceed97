use num_traits::One;
use rayon::prelude::*;

use crate::algebra::enumerate::word_action;
use crate::algebra::{enumerate_ewords, words_of_length, EElement, EWord, Element, GradedSpace, Parity, Window, Word, Q};
use crate::error::{Error, Result};

use super::glue::{glue_ibl, glue_level};
use super::table::OperationTable;

/// (V, {p^{k,l}}) with an odd table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BLAlgebra {
    space: GradedSpace,
    p: OperationTable,
}

impl BLAlgebra {
    pub fn new(space: GradedSpace, p: OperationTable) -> Result<BLAlgebra> {
        if p.parity() != Parity::Odd {
            return Err(Error::ParityMismatch("a structure table must be odd".into()));
        }
        if p.has_genus() {
            return Err(Error::InvalidEntry("a BL structure has no genus".into()));
        }
        p.validate(&space, &space)?;
        Ok(BLAlgebra { space, p })
    }

    /// The trivial algebra 𝟎 on the zero space.
    pub fn zero_algebra() -> BLAlgebra {
        BLAlgebra {
            space: GradedSpace::zero(),
            p: OperationTable::new("0", Parity::Odd),
        }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn table(&self) -> &OperationTable {
        &self.p
    }
}

/// Result of a bounded check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status<W> {
    Verified,
    Failed(W),
}

impl<W> Status<W> {
    pub fn is_verified(&self) -> bool {
        matches!(self, Status::Verified)
    }
}

/// A nonvanishing cell (k, l, input) of a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellWitness {
    pub k: usize,
    pub l: usize,
    pub input: Word,
    pub value: Element,
}

/// A basis eword on which an identity fails, with the residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EWitness {
    pub input: EWord,
    pub residual: EElement,
}

/// Assembles the single-operator map of `table` (p̂, p̂_• …) on `x`.
pub fn hat(space: &GradedSpace, table: &OperationTable, x: &EElement) -> Result<EElement> {
    let mut out = EElement::zero();
    for (w, c) in x {
        glue_level(space, &[table], w, c, &mut out)?;
    }
    Ok(out)
}

/// Single-level gluing of several labelled operators at once.
pub fn hat_family(space: &GradedSpace, tables: &[&OperationTable], x: &EElement) -> Result<EElement> {
    let mut out = EElement::zero();
    for (w, c) in x {
        glue_level(space, tables, w, c, &mut out)?;
    }
    Ok(out)
}

/// Cycle-permitting assembly with ℏ bookkeeping, truncated above ℏ^cap.
pub fn hat_ibl(space: &GradedSpace, table: &OperationTable, x: &EElement, cap: Option<u32>) -> Result<EElement> {
    let mut out = EElement::zero();
    for (w, c) in x {
        if cap.is_some_and(|n| w.hbar() > n) {
            continue;
        }
        glue_ibl(space, table, w, c, cap, &mut out)?;
    }
    Ok(out)
}

pub fn apply_hat_p(alg: &BLAlgebra, x: &EElement) -> Result<EElement> {
    hat(&alg.space, &alg.p, x)
}

/// Single-cluster part of an eelement as an element of SV.
pub fn single_cluster_part(x: &EElement) -> Element {
    x.iter()
        .filter(|(w, _)| w.num_clusters() == 1 && w.hbar() == 0)
        .map(|(w, c)| (w.clusters()[0].clone(), c.clone()))
        .collect()
}

/// π_{1,·}∘p̂∘p̂ on the single-letter clusters of `input`: the sum of all
/// connected two-level gluings, for every output length at once.
pub fn two_level(alg: &BLAlgebra, input: &Word) -> Result<Element> {
    let x = EElement::basis(EWord::spread(input));
    let y = apply_hat_p(alg, &apply_hat_p(alg, &x)?)?;
    Ok(single_cluster_part(&y))
}

pub fn two_level_kl(alg: &BLAlgebra, l: usize, input: &Word) -> Result<Element> {
    Ok(two_level(alg, input)?.of_length(l))
}

/// Runs `two_level` on every input word with at most `max_arity` letters
/// (and action at most `max_action`), in canonical order.
pub fn check_structure(alg: &BLAlgebra, max_arity: usize, max_action: Option<&Q>) -> Result<Status<CellWitness>> {
    let mut inputs = Vec::new();
    for k in 1..=max_arity {
        for w in words_of_length(&alg.space, k) {
            if let Some(a) = max_action {
                if &word_action(&alg.space, &w)? > a {
                    continue;
                }
            }
            inputs.push(w);
        }
    }
    let values: Vec<Result<Element>> = inputs.par_iter().map(|w| two_level(alg, w)).collect();
    for (w, v) in inputs.into_iter().zip(values) {
        let v = v?;
        if let Some(l) = v.keys().map(Word::len).min() {
            return Ok(Status::Failed(CellWitness {
                k: w.len(),
                l,
                input: w,
                value: v.of_length(l),
            }));
        }
    }
    Ok(Status::Verified)
}

/// Evaluates `f` on every basis eword of `window`, reporting the first
/// (canonical order) nonzero residual.
pub fn check_on_window<F>(space: &GradedSpace, window: &Window, f: F) -> Result<Status<EWitness>>
where
    F: Fn(&EElement) -> Result<EElement> + Sync,
{
    let basis = enumerate_ewords(space, window)?;
    let residuals: Vec<Result<EElement>> = basis
        .par_iter()
        .map(|w| f(&EElement::basis(w.clone())))
        .collect();
    for (w, r) in basis.into_iter().zip(residuals) {
        let r = r?;
        if !r.is_zero() {
            return Ok(Status::Failed(EWitness { input: w, residual: r }));
        }
    }
    Ok(Status::Verified)
}

/// p̂∘p̂ on every basis eword of the window.
pub fn check_square_zero(alg: &BLAlgebra, window: &Window) -> Result<Status<EWitness>> {
    check_on_window(&alg.space, window, |x| apply_hat_p(alg, &apply_hat_p(alg, x)?))
}

pub(crate) fn sign_q(sign: i8) -> Q {
    if sign < 0 {
        -Q::one()
    } else {
        Q::one()
    }
}
