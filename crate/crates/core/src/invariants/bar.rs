use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{enumerate_ewords, ChainComplex, EElement, EWord, GradedSpace, SparseRow, Window, Q};
use crate::blinfty::{apply_hat_p, hat, BLAlgebra, OperationTable};
use crate::error::{Error, Result};

/// The matrix of `f` on `basis`; every output term must lie in the basis.
pub fn complex_from_map<F>(space: &GradedSpace, basis: Vec<EWord>, f: F) -> Result<ChainComplex<EWord>>
where
    F: Fn(&EElement) -> Result<EElement> + Sync,
{
    let index: BTreeMap<&EWord, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let cols: Vec<Result<SparseRow>> = basis
        .par_iter()
        .map(|b| {
            let img = f(&EElement::basis(b.clone()))?;
            let mut col = SparseRow::new();
            for (w, c) in &img {
                let Some(&i) = index.get(w) else {
                    return Err(Error::WindowNotClosed(format!(
                        "{} ↦ {}",
                        b.display(space),
                        w.display(space)
                    )));
                };
                col.insert(i, c.clone());
            }
            Ok(col)
        })
        .collect();
    let d = cols.into_iter().collect::<Result<Vec<_>>>()?;
    let grading = basis.iter().map(|b| b.parity(space)).collect();
    ChainComplex::new(basis, grading, d)
}

/// (E^kV, p̂) restricted to ewords with at most `max_letters` letters.
/// Fails with `WindowNotClosed` when p̂ leaves the window.
pub fn build_ekv(alg: &BLAlgebra, k: usize, max_letters: usize, max_action: Option<Q>) -> Result<ChainComplex<EWord>> {
    let window = Window::new(max_letters, k).with_action(max_action);
    let basis = enumerate_ewords(alg.space(), &window)?;
    complex_from_map(alg.space(), basis, |x| apply_hat_p(alg, x))
}

/// (B̄^kV, ℓ̂): ⊙-words of at most k single letters, differential assembled
/// from the l = 1 part of `ell`.
pub fn bar_b_k(space: &GradedSpace, ell: &OperationTable, k: usize) -> Result<ChainComplex<EWord>> {
    let ell = ell.filter_outputs(|l| l == 1);
    let basis = enumerate_ewords(space, &Window::new(k, k).nonunit().cluster_len(1))?;
    complex_from_map(space, basis, |x| hat(space, &ell, x))
}
