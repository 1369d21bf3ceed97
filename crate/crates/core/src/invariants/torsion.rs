use rayon::prelude::*;

use crate::algebra::{enumerate_ewords, EElement, Window};
use crate::blinfty::{apply_hat_p, apply_hat_phi, BLAlgebra, BLMorphism, Completeness};
use crate::error::Result;

use super::{combine_basis, find_combination, Bounded, SearchBounds};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionAnswer {
    pub value: Bounded,
    /// x with p̂(x) = 1, in E^{value+1}V.
    pub certificate: Option<EElement>,
}

/// Whether the failed search at level `k` (k clusters) proves that 1 is
/// not a boundary in E^kV, independently of the letter window.
fn level_excluded(alg: &BLAlgebra, k: usize, bounds: &SearchBounds) -> bool {
    let p = alg.table();
    let complete = match p.completeness() {
        Completeness::Total => true,
        Completeness::UpToArity(limit) => limit >= k,
    };
    // the unit eword only comes from p^{n,0} eating n single-letter clusters
    if complete && !p.entries().any(|(w, _, e)| w.len() <= k && !e.of_length(0).is_zero()) {
        return true;
    }
    // all-odd spaces have finite E^kV; the window then covers all of it
    let sp = alg.space();
    complete && sp.all_odd() && bounds.max_action.is_none() && bounds.max_letters >= k * sp.len()
}

/// Least k − 1 such that p̂(x) = 1 is solvable for x with at most k clusters
/// in the letter window, for k ≤ `bounds.word_bound`.
pub fn torsion(alg: &BLAlgebra, bounds: &SearchBounds) -> Result<TorsionAnswer> {
    let target = EElement::unit();
    let mut exact = true;
    for k in 1..=bounds.word_bound {
        let window = Window::new(bounds.max_letters, k).with_action(bounds.max_action.clone());
        let basis = enumerate_ewords(alg.space(), &window)?;
        let images = basis
            .par_iter()
            .map(|b| apply_hat_p(alg, &EElement::basis(b.clone())))
            .collect::<Result<Vec<_>>>()?;
        if let Some(c) = find_combination(&images, &target) {
            let x = combine_basis(&basis, &c);
            let value = if exact { Bounded::Exact(k - 1) } else { Bounded::AtMost(k - 1) };
            return Ok(TorsionAnswer {
                value,
                certificate: Some(x),
            });
        }
        exact &= level_excluded(alg, k, bounds);
    }
    Ok(TorsionAnswer {
        value: Bounded::NotFound,
        certificate: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionReport {
    pub source_level: usize,
    /// Torsion of the target is at most this.
    pub target_bound: usize,
    pub certificate: EElement,
    pub verified: bool,
}

/// Pushes a source torsion certificate through φ̂. φ̂ preserves the word
/// filtration and sends 1 to 1, so φ̂(x) certifies target torsion at the
/// same level or below.
pub fn torsion_monotone_check(phi: &BLMorphism, source: &TorsionAnswer) -> Result<Option<TorsionReport>> {
    let (Some(level), Some(x)) = (source.value.level(), &source.certificate) else {
        return Ok(None);
    };
    let y = apply_hat_phi(phi, x)?;
    let clusters = y.keys().map(|w| w.num_clusters()).max().unwrap_or(1);
    let verified = apply_hat_p(phi.target(), &y)? == EElement::unit() && clusters <= level + 1;
    Ok(Some(TorsionReport {
        source_level: level,
        target_bound: clusters.saturating_sub(1).min(level),
        certificate: y,
        verified,
    }))
}
