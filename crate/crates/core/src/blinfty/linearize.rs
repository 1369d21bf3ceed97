use rayon::prelude::*;

use crate::algebra::{normalize_word, permutation_sign, words_of_length, EElement, EWord, Element, GradedSpace, Parity, Word, Q};
use crate::error::{Error, Result};

use super::morphism::{apply_f_eps, Augmentation};
use super::structure::{hat, single_cluster_part, BLAlgebra, CellWitness, Status};
use super::table::{Completeness, OperationTable};

/// Largest input arity of a connected graph with one `table` vertex whose
/// outputs are capped by ε vertices. ε vertices take one output each
/// (two would close a cycle) plus fresh inputs.
fn conjugate_arity_bound(table: &OperationTable, eps: &Augmentation) -> usize {
    let e = eps.table().max_arity().max(1);
    table
        .entries()
        .map(|(w, _, out)| {
            let b = out.keys().map(Word::len).max().unwrap_or(0);
            w.len() + b * (e - 1)
        })
        .max()
        .unwrap_or(0)
}

/// π_{1,·}∘F̂_ε∘T̂ on single-letter ⊙-inputs: the ε-conjugate of an
/// operator table, computed for every arity that can be nonzero.
/// Outputs of every length are kept, including l = 0.
pub fn conjugate_table(space: &GradedSpace, table: &OperationTable, eps: &Augmentation) -> Result<OperationTable> {
    if let Completeness::UpToArity(_) = table.completeness() {
        return Err(Error::InvalidInput(format!(
            "cannot linearize the partial table `{}`",
            table.name()
        )));
    }
    if let Completeness::UpToArity(_) = eps.table().completeness() {
        return Err(Error::InvalidInput("cannot linearize along a partial augmentation".into()));
    }
    let bound = conjugate_arity_bound(table, eps);
    let mut inputs = Vec::new();
    for k in 1..=bound {
        inputs.extend(words_of_length(space, k));
    }
    let rows: Vec<Result<Element>> = inputs
        .par_iter()
        .map(|w| {
            let x = EElement::basis(EWord::spread(w));
            let y = apply_f_eps(space, eps, 1, &hat(space, table, &x)?)?;
            Ok(single_cluster_part(&y))
        })
        .collect();
    let mut out = OperationTable::new(format!("{}_eps", table.name()), table.parity());
    for (w, r) in inputs.into_iter().zip(rows) {
        out.add(w, 0, &r?);
    }
    Ok(out)
}

/// p_ε; fails if a constant term p_ε^{k,0} survives.
pub fn linearize(alg: &BLAlgebra, eps: &Augmentation) -> Result<BLAlgebra> {
    let t = conjugate_table(alg.space(), alg.table(), eps)?;
    for (w, _, e) in t.entries() {
        if !e.of_length(0).is_zero() {
            return Err(Error::NonzeroConstant(w.display(alg.space()).to_string()));
        }
    }
    BLAlgebra::new(alg.space().clone(), t)
}

/// p_{•,ε}, including its l = 0 part ℓ_{•,ε}.
pub fn linearize_pointed(alg: &BLAlgebra, eps: &Augmentation, pointed: &OperationTable) -> Result<OperationTable> {
    conjugate_table(alg.space(), pointed, eps)
}

/// ℓ^k_ε = p_ε^{k,1}.
pub fn ell_table(p_eps: &OperationTable) -> OperationTable {
    p_eps.filter_outputs(|l| l == 1).renamed(format!("ell_{}", p_eps.name()))
}

/// Σ_k Σ_{σ∈Sh(k,n−k)} ± ℓ^{n−k+1}(ℓ^k(v_σ(1)…v_σ(k)) v_σ(k+1)…v_σ(n)),
/// evaluated directly from the table by shuffles.
pub fn linfty_relation(space: &GradedSpace, ell: &OperationTable, input: &Word) -> Element {
    let v = input.letters();
    let n = v.len();
    let parities: Vec<Parity> = v.iter().map(|&l| space.parity(l)).collect();
    let mut out = Element::zero();
    for mask in 1u32..(1u32 << n) {
        let inner: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let rest: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        let order: Vec<usize> = inner.iter().chain(&rest).copied().collect();
        let shuffle_sign = permutation_sign(&parities, &order);
        let inner_letters: Vec<u32> = inner.iter().map(|&i| v[i]).collect();
        let Some((w1, s1)) = normalize_word(space, &inner_letters) else {
            continue;
        };
        for (u, c) in &ell.get(&w1, 0) {
            if u.len() != 1 {
                continue;
            }
            let mut outer: Vec<u32> = u.letters().to_vec();
            outer.extend(rest.iter().map(|&i| v[i]));
            let Some((w2, s2)) = normalize_word(space, &outer) else {
                continue;
            };
            let sign = shuffle_sign * s1 * s2;
            let c = if sign < 0 { -c.clone() } else { c.clone() };
            for (u2, d) in &ell.get(&w2, 0) {
                if u2.len() == 1 {
                    out.add_term(u2.clone(), &c * d);
                }
            }
        }
    }
    out
}

/// The L∞ quadratic relation on every word with at most `max_letters`.
pub fn check_linfty(space: &GradedSpace, ell: &OperationTable, max_letters: usize) -> Status<CellWitness> {
    for k in 1..=max_letters {
        for w in words_of_length(space, k) {
            let r = linfty_relation(space, ell, &w);
            if !r.is_zero() {
                return Status::Failed(CellWitness {
                    k,
                    l: 1,
                    input: w,
                    value: r,
                });
            }
        }
    }
    Status::Verified
}

/// The constant-term functional ℓ̂_{•,ε} on single-letter ewords.
pub fn functional(p_bullet_eps: &OperationTable, x: &EElement) -> Q {
    let mut total = Q::default();
    for (w, c) in x {
        if !w.all_single_letters() || w.hbar() != 0 {
            continue;
        }
        let word = Word::from_sorted(w.flat_letters());
        total += c * p_bullet_eps.get(&word, 0).coeff(&Word::unit());
    }
    total
}
