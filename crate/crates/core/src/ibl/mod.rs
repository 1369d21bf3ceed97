//! Curved IBL∞ algebras: cycle-permitting assembly with ℏ bookkeeping,
//! the relation check, the (n,m)_k torsion grid and the cluster-joining
//! map C_m.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::algebra::{enumerate_ewords, multiply_words, words_of_length, EElement, EWord, Element, GradedSpace, Parity, Window, Word};
use crate::blinfty::{check_on_window, hat_ibl, BLAlgebra, EWitness, OperationTable, Status};
use crate::error::{Error, Result};
use crate::invariants::{combine_basis, find_combination};

/// (V, p^{k,l,g}) with an odd table that may carry genus labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IBLAlgebra {
    space: GradedSpace,
    p: OperationTable,
}

impl IBLAlgebra {
    pub fn new(space: GradedSpace, p: OperationTable) -> Result<IBLAlgebra> {
        if p.parity() != Parity::Odd {
            return Err(Error::ParityMismatch("an IBL table must be odd".into()));
        }
        p.validate(&space, &space)?;
        Ok(IBLAlgebra { space, p })
    }

    /// A BL∞ table read as genus 0.
    pub fn lift(alg: &BLAlgebra) -> IBLAlgebra {
        IBLAlgebra {
            space: alg.space().clone(),
            p: alg.table().clone(),
        }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn table(&self) -> &OperationTable {
        &self.p
    }
}

/// p̂ on EV[[ℏ]] modulo ℏ^{n+1}; `None` keeps every power.
pub fn apply_hat_p_ibl(ialg: &IBLAlgebra, x: &EElement, n: Option<u32>) -> Result<EElement> {
    hat_ibl(&ialg.space, &ialg.p, x, n)
}

/// A nonvanishing two-level sum p₂^{n,m,g} at one input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusWitness {
    pub n: usize,
    pub m: usize,
    pub genus: u32,
    pub input: Word,
    pub value: Element,
}

/// p₂^{n,·,·}(input): the connected part of p̂∘p̂ on the input spread into
/// single-letter clusters, by output length and genus.
pub fn two_level_ibl(ialg: &IBLAlgebra, input: &Word, hbar_max: u32) -> Result<Vec<(usize, u32, Element)>> {
    let x = EElement::basis(EWord::spread(input));
    let y = apply_hat_p_ibl(ialg, &apply_hat_p_ibl(ialg, &x, Some(hbar_max))?, Some(hbar_max))?;
    let mut cells: BTreeSet<(usize, u32)> = BTreeSet::new();
    for w in y.keys() {
        if w.num_clusters() == 1 {
            cells.insert((w.clusters()[0].len(), w.hbar()));
        }
    }
    Ok(cells
        .into_iter()
        .map(|(m, g)| {
            let e: Element = y
                .iter()
                .filter(|(w, _)| w.num_clusters() == 1 && w.hbar() == g && w.clusters()[0].len() == m)
                .map(|(w, c)| (w.clusters()[0].clone(), c.clone()))
                .collect();
            (m, g, e)
        })
        .filter(|(_, _, e)| !e.is_zero())
        .collect())
}

/// All p₂^{n,m,g} vanish for n ≤ `max_arity` and g ≤ `hbar_max`. The verdict
/// is cross-checked against p̂∘p̂ on every eword with at most `max_arity`
/// letters; a disagreement is reported as `Inconsistent`.
pub fn check_ibl(ialg: &IBLAlgebra, max_arity: usize, hbar_max: u32) -> Result<Status<GenusWitness>> {
    let mut inputs = Vec::new();
    for n in 1..=max_arity {
        inputs.extend(words_of_length(&ialg.space, n));
    }
    let found = inputs
        .par_iter()
        .map(|w| two_level_ibl(ialg, w, hbar_max).map(|cells| (w, cells)))
        .collect::<Result<Vec<_>>>()?;
    let mut status = Status::Verified;
    for (w, cells) in found {
        if let Some((m, g, e)) = cells.into_iter().next() {
            status = Status::Failed(GenusWitness {
                n: w.len(),
                m,
                genus: g,
                input: w.clone(),
                value: e,
            });
            break;
        }
    }
    let square = check_ibl_square(ialg, &Window::new(max_arity, max_arity), hbar_max)?;
    if square.is_verified() != status.is_verified() {
        return Err(Error::Inconsistent("two-level check and p̂∘p̂ disagree".into()));
    }
    Ok(status)
}

/// p̂∘p̂ = 0 modulo ℏ^{hbar_max+1} on the window.
pub fn check_ibl_square(ialg: &IBLAlgebra, window: &Window, hbar_max: u32) -> Result<Status<EWitness>> {
    let cap = Some(hbar_max);
    check_on_window(&ialg.space, window, |x| {
        apply_hat_p_ibl(ialg, &apply_hat_p_ibl(ialg, x, cap)?, cap)
    })
}

/// The g = 0 part as a BL∞ algebra.
pub fn genus0(ialg: &IBLAlgebra) -> Result<BLAlgebra> {
    BLAlgebra::new(ialg.space.clone(), ialg.p.genus0())
}

/// w_ℏ: the least ℏ power present; `None` for zero.
pub fn hbar_width(x: &EElement) -> Option<u32> {
    x.keys().map(EWord::hbar).min()
}

/// Answer to "does [ℏ^n] vanish in H(E^{m+1}V[[ℏ]]_k)" within a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridAnswer {
    pub n: u32,
    pub m: usize,
    pub k: u32,
    pub found: bool,
    /// x with π_k p̂(x) = ℏ^n; absent when n > k makes the claim empty.
    pub certificate: Option<EElement>,
}

fn hbar_unit(n: u32) -> EElement {
    EElement::basis(EWord::unit().with_hbar(n))
}

/// Solves π_k p̂(x) = ℏ^n for x with at most m+1 clusters, at most
/// `max_letters` letters and ℏ powers up to k.
pub fn torsion_grid(ialg: &IBLAlgebra, n: u32, m: usize, k: u32, max_letters: usize) -> Result<GridAnswer> {
    let mut ans = GridAnswer {
        n,
        m,
        k,
        found: false,
        certificate: None,
    };
    if n > k {
        ans.found = true;
        return Ok(ans);
    }
    let base = enumerate_ewords(&ialg.space, &Window::new(max_letters, m + 1))?;
    let basis: Vec<EWord> = base.iter().flat_map(|b| (0..=k).map(move |h| b.with_hbar(h))).collect();
    let images = basis
        .par_iter()
        .map(|b| apply_hat_p_ibl(ialg, &EElement::basis(b.clone()), Some(k)))
        .collect::<Result<Vec<_>>>()?;
    if let Some(c) = find_combination(&images, &hbar_unit(n)) {
        ans.found = true;
        ans.certificate = Some(combine_basis(&basis, &c));
    }
    Ok(ans)
}

/// Whether x solves π_k p̂(x) = ℏ^n with at most m+1 clusters.
pub fn verify_grid(ialg: &IBLAlgebra, x: &EElement, n: u32, m: usize, k: u32) -> Result<bool> {
    if x.keys().any(|w| w.num_clusters() > m + 1) {
        return Ok(false);
    }
    Ok(apply_hat_p_ibl(ialg, x, Some(k))? == hbar_unit(n))
}

/// ℏ^{m−1}·C_m(x): each eword with i ≤ m clusters becomes the product of
/// its clusters times ℏ^{m−i}. The shift is applied before the merge, so
/// no negative power ever appears.
pub fn c_map(space: &GradedSpace, x: &EElement, m: usize) -> Result<EElement> {
    let mut out = EElement::zero();
    for (w, c) in x {
        let i = w.num_clusters();
        if i > m {
            return Err(Error::InvalidInput(format!("C_{m} needs at most {m} clusters, got {i}")));
        }
        let words: Vec<&Word> = w.clusters().iter().collect();
        let Some((prod, s)) = multiply_words(space, &words) else { continue };
        let e = EWord::single(prod).with_hbar(w.hbar() + (m - i) as u32);
        out.add_signed(e, c, s);
    }
    Ok(out)
}

/// From an (n,m)_k certificate x, y = ℏ^m·C_{m+1}(x) with π_k p̂(y) = ℏ^{n+m}.
/// When n+m > k the derived claim is empty and no certificate is kept.
pub fn derive_flat_torsion(ialg: &IBLAlgebra, grid: &GridAnswer) -> Result<Option<GridAnswer>> {
    let Some(x) = &grid.certificate else { return Ok(None) };
    let n = grid.n + grid.m as u32;
    let mut ans = GridAnswer {
        n,
        m: 0,
        k: grid.k,
        found: true,
        certificate: None,
    };
    if n > grid.k {
        return Ok(Some(ans));
    }
    let y = c_map(&ialg.space, x, grid.m + 1)?.truncate_hbar(grid.k);
    if !verify_grid(ialg, &y, n, 0, grid.k)? {
        return Err(Error::Inconsistent("derived (n+m,0) certificate does not verify".into()));
    }
    ans.certificate = Some(y);
    Ok(Some(ans))
}

/// ℏ^{m−1}C_m∘p̂ = p̂∘ℏ^{m−1}C_m on basis ewords with at most m clusters.
pub fn check_c_chain(ialg: &IBLAlgebra, m: usize, max_letters: usize, hbar_max: u32) -> Result<Status<EWord>> {
    let base = enumerate_ewords(&ialg.space, &Window::new(max_letters, m))?;
    for b in base {
        for h in 0..=hbar_max {
            let x = EElement::basis(b.with_hbar(h));
            let lhs = c_map(&ialg.space, &apply_hat_p_ibl(ialg, &x, None)?, m)?;
            let rhs = apply_hat_p_ibl(ialg, &c_map(&ialg.space, &x, m)?, None)?;
            if lhs != rhs {
                return Ok(Status::Failed(b.with_hbar(h)));
            }
        }
    }
    Ok(Status::Verified)
}

/// The three grid moves of a certificate: to (n,m)_{k−1}, (n+1,m)_k and
/// (n,m+1)_k. Each returned certificate re-verifies.
pub fn grid_transports(ialg: &IBLAlgebra, grid: &GridAnswer) -> Result<Vec<GridAnswer>> {
    let Some(x) = &grid.certificate else { return Ok(Vec::new()) };
    let (n, m, k) = (grid.n, grid.m, grid.k);
    let mut out = Vec::new();
    let mut push = |n: u32, m: usize, k: u32, y: EElement| -> Result<()> {
        let trivial = n > k;
        if !trivial && !verify_grid(ialg, &y, n, m, k)? {
            return Err(Error::Inconsistent(format!("transport to ({n},{m})_{k} failed")));
        }
        out.push(GridAnswer {
            n,
            m,
            k,
            found: true,
            certificate: (!trivial).then_some(y),
        });
        Ok(())
    };
    if k > 0 {
        push(n, m, k - 1, x.truncate_hbar(k - 1))?;
    }
    let shifted: EElement = x.iter().map(|(w, c)| (w.with_hbar(w.hbar() + 1), c.clone())).collect();
    push(n + 1, m, k, shifted.truncate_hbar(k))?;
    push(n, m + 1, k, x.clone())?;
    Ok(out)
}
