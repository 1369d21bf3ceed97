use std::collections::BTreeMap;

use num_traits::One;
use rayon::prelude::*;

use crate::algebra::{enumerate_ewords, EElement, EWord, GradedSpace, LinComb, Window, Q};
use crate::blinfty::{
    apply_f_eps, check_compatibility, conjugate_table, functional, hat, hat_family, hat_phi, set_partitions,
    single_letter_part, Augmentation, BLAlgebra, BLMorphism, OperationTable, PointedMap,
};
use crate::error::{Error, Result};

use super::{combine_basis, find_combination, Bounded, SearchBounds, TorsionAnswer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderAnswer {
    pub value: Bounded,
    /// A closed chain with functional value 1.
    pub certificate: Option<EElement>,
}

impl OrderAnswer {
    fn not_found() -> OrderAnswer {
        OrderAnswer {
            value: Bounded::NotFound,
            certificate: None,
        }
    }
}

/// Least k ≤ `word_bound` for which some x in `window(k)` has d(x) = 0 and
/// f(x) = 1. `exact(k)` says whether the window at k is the whole complex.
fn search<D, F>(
    space: &GradedSpace,
    word_bound: usize,
    window: impl Fn(usize) -> Window,
    d: D,
    f: F,
    exact: impl Fn(usize) -> bool,
) -> Result<OrderAnswer>
where
    D: Fn(&EElement) -> Result<EElement> + Sync,
    F: Fn(&EElement) -> Result<Q> + Sync,
{
    let mut all_exact = true;
    let target: LinComb<Option<EWord>> = LinComb::basis(None);
    for k in 1..=word_bound {
        let basis = enumerate_ewords(space, &window(k))?;
        let images = basis
            .par_iter()
            .map(|b| {
                let x = EElement::basis(b.clone());
                let mut img: LinComb<Option<EWord>> = d(&x)?.iter().map(|(w, c)| (Some(w.clone()), c.clone())).collect();
                img.add_term(None, f(&x)?);
                Ok(img)
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(c) = find_combination(&images, &target) {
            return Ok(OrderAnswer {
                value: if all_exact { Bounded::Exact(k) } else { Bounded::AtMost(k) },
                certificate: Some(combine_basis(&basis, &c)),
            });
        }
        all_exact &= exact(k);
    }
    Ok(OrderAnswer::not_found())
}

/// Coefficient of the unit eword.
fn unit_coeff(x: &EElement) -> Q {
    x.coeff(&EWord::unit())
}

/// ⊙-words of at most k single letters.
fn bar_window(k: usize) -> Window {
    Window::new(k, k).nonunit().cluster_len(1)
}

/// O(V, ε, p_•): least k such that a cycle of (B̄^kV, ℓ̂_ε) has ℓ̂_{•,ε}
/// value 1. B̄^kV is finite-dimensional, so every answer is exact.
pub fn order_o(alg: &BLAlgebra, eps: &Augmentation, pointed: &PointedMap, word_bound: usize) -> Result<OrderAnswer> {
    let sp = alg.space();
    let ell = conjugate_table(sp, alg.table(), eps)?.filter_outputs(|l| l == 1);
    let pb = conjugate_table(sp, pointed.table(), eps)?;
    search(
        sp,
        word_bound,
        bar_window,
        |x| hat(sp, &ell, x),
        |x| Ok(functional(&pb, x)),
        |_| true,
    )
}

/// Õ(V, ε, p_•) on (B̄^k S̄V, p̂_ε) with functional π_ℚ∘p̂_{•,ε}, chains
/// limited to the letter window. A value is exact when O, which bounds it
/// from below, reaches it.
pub fn order_o_tilde(alg: &BLAlgebra, eps: &Augmentation, pointed: &PointedMap, bounds: &SearchBounds) -> Result<OrderAnswer> {
    let sp = alg.space();
    let p_eps = conjugate_table(sp, alg.table(), eps)?;
    let pb = conjugate_table(sp, pointed.table(), eps)?;
    let ans = search(
        sp,
        bounds.word_bound,
        |k| Window::new(bounds.max_letters, k).with_action(bounds.max_action.clone()).nonunit(),
        |x| hat(sp, &p_eps, x),
        |x| Ok(unit_coeff(&hat(sp, &pb, x)?)),
        |_| false,
    )?;
    let Some(k) = ans.value.level() else { return Ok(ans) };
    let lower = order_o(alg, eps, pointed, k)?;
    Ok(OrderAnswer {
        value: if lower.value == Bounded::Exact(k) { Bounded::Exact(k) } else { Bounded::AtMost(k) },
        certificate: ans.certificate,
    })
}

/// Operators p_S for nonempty S ⊆ {0, …, m−1}; missing subsets are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPointFamily {
    m: usize,
    tables: BTreeMap<Vec<usize>, OperationTable>,
}

impl MultiPointFamily {
    pub fn new(m: usize) -> MultiPointFamily {
        MultiPointFamily {
            m,
            tables: BTreeMap::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn insert(&mut self, mut subset: Vec<usize>, table: OperationTable) -> Result<()> {
        subset.sort_unstable();
        subset.dedup();
        if subset.is_empty() || subset.iter().any(|&i| i >= self.m) {
            return Err(Error::InvalidInput(format!("bad constraint subset {subset:?}")));
        }
        if table.has_genus() {
            return Err(Error::InvalidEntry("pointed maps have no genus".into()));
        }
        self.tables.insert(subset, table);
        Ok(())
    }

    pub fn get(&self, subset: &[usize]) -> Option<&OperationTable> {
        self.tables.get(subset)
    }

    pub fn tables(&self) -> impl Iterator<Item = (&Vec<usize>, &OperationTable)> {
        self.tables.iter()
    }
}

/// p̂_{m•}: for every set partition of the m constraints, one operator per
/// block glued in a single level.
pub fn multi_point_hat(space: &GradedSpace, family: &MultiPointFamily, x: &EElement) -> Result<EElement> {
    let mut out = EElement::zero();
    for part in set_partitions(family.m) {
        let ops: Option<Vec<&OperationTable>> = part.iter().map(|b| family.get(b)).collect();
        let Some(ops) = ops else { continue };
        if ops.iter().any(|t| t.is_zero()) {
            continue;
        }
        out.add_assign(&hat_family(space, &ops, x)?);
    }
    Ok(out)
}

/// π_ℚ∘F̂_ε∘p̂_{m•}∘F̂_{−ε}.
fn multi_functional(space: &GradedSpace, eps: &Augmentation, family: &MultiPointFamily, x: &EElement) -> Result<Q> {
    let y = apply_f_eps(space, eps, -1, x)?;
    let z = multi_point_hat(space, family, &y)?;
    Ok(unit_coeff(&apply_f_eps(space, eps, 1, &z)?))
}

/// π_m: keeps ewords whose clusters are nonempty with at most m letters.
fn project_m(x: &EElement, m: usize) -> EElement {
    x.filter(|w| !w.has_unit_cluster() && w.max_cluster_len() <= m)
}

/// O(V, ε, p_{m•}) on the finite complex (B̄^k B̄^m V, π_m∘p̂_ε).
pub fn order_multi(alg: &BLAlgebra, eps: &Augmentation, family: &MultiPointFamily, word_bound: usize) -> Result<OrderAnswer> {
    let sp = alg.space();
    let m = family.m.max(1);
    let p_eps = conjugate_table(sp, alg.table(), eps)?;
    search(
        sp,
        word_bound,
        |k| Window::new(k * m, k).nonunit().cluster_len(m),
        |x| Ok(project_m(&hat(sp, &p_eps, x)?, m)),
        |x| multi_functional(sp, eps, family, x),
        |_| true,
    )
}

/// Õ(V, ε, p_{m•}) on (B̄^k S̄V, p̂_ε) within the letter window.
pub fn order_multi_tilde(
    alg: &BLAlgebra,
    eps: &Augmentation,
    family: &MultiPointFamily,
    bounds: &SearchBounds,
) -> Result<OrderAnswer> {
    let sp = alg.space();
    let p_eps = conjugate_table(sp, alg.table(), eps)?;
    let ans = search(
        sp,
        bounds.word_bound,
        |k| Window::new(bounds.max_letters, k).with_action(bounds.max_action.clone()).nonunit(),
        |x| hat(sp, &p_eps, x),
        |x| multi_functional(sp, eps, family, x),
        |_| false,
    )?;
    let Some(k) = ans.value.level() else { return Ok(ans) };
    let lower = order_multi(alg, eps, family, k)?;
    Ok(OrderAnswer {
        value: if lower.value == Bounded::Exact(k) { Bounded::Exact(k) } else { Bounded::AtMost(k) },
        certificate: ans.certificate,
    })
}

/// w(v) = sup{m | π_m(v) = 0}; `None` stands for ∞ (v = 0).
pub fn width(x: &EElement) -> Option<usize> {
    x.keys().map(|w| w.max_cluster_len().saturating_sub(1)).min()
}

/// First basis eword v of the window with w(p̂_ε(v)) < w(v).
pub fn check_width_monotone(alg: &BLAlgebra, eps: &Augmentation, window: &Window) -> Result<Option<EWord>> {
    let sp = alg.space();
    let p_eps = conjugate_table(sp, alg.table(), eps)?;
    let window = window.clone().nonunit();
    for b in enumerate_ewords(sp, &window)? {
        let v = EElement::basis(b.clone());
        let wv = width(&v);
        let wd = width(&hat(sp, &p_eps, &v)?);
        let ok = match (wd, wv) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a >= b,
        };
        if !ok {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// Certificate transport for one order flavour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportReport {
    pub source: OrderAnswer,
    pub target: OrderAnswer,
    /// Image of the source certificate in the target complex.
    pub transported: Option<EElement>,
    /// The image is closed with functional value 1.
    pub verified: bool,
}

impl TransportReport {
    /// The target order is at most the source order.
    pub fn inequality_holds(&self) -> bool {
        match (self.source.value.level(), self.target.value.level()) {
            (Some(s), Some(t)) => t <= s,
            (None, _) => true,
            (Some(_), None) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorialityReport {
    pub compatible: bool,
    pub o: TransportReport,
    pub o_tilde: TransportReport,
}

/// φ̂_ε = F̂_{ε'}∘φ̂∘F̂_{−ε'∘φ} applied to x.
fn phi_eps(phi: &BLMorphism, eps_src: &Augmentation, eps_tgt: &Augmentation, x: &EElement) -> Result<EElement> {
    let src = phi.source().space();
    let tgt = phi.target().space();
    let y = apply_f_eps(src, eps_src, -1, x)?;
    let z = hat_phi(src, tgt, phi.table(), &y)?;
    apply_f_eps(tgt, eps_tgt, 1, &z)
}

/// O(V, ε∘φ, p_•) ≥ O(V', ε, q_•) and the same for Õ: each source
/// certificate is pushed through the linearized morphism and re-verified
/// in the target.
pub fn order_functoriality_check(
    phi: &BLMorphism,
    p_bullet: &PointedMap,
    q_bullet: &PointedMap,
    phi_bullet: &OperationTable,
    eps_target: &Augmentation,
    bounds: &SearchBounds,
) -> Result<FunctorialityReport> {
    let window = Window::new(bounds.max_letters, bounds.word_bound).with_action(bounds.max_action.clone());
    let compatible = check_compatibility(phi, p_bullet, q_bullet, phi_bullet, &window)?.is_verified();
    let eps_src = eps_target.pull_back_full(phi)?;
    let (src, tgt) = (phi.source(), phi.target());
    let tsp = tgt.space();
    let q_eps = conjugate_table(tsp, tgt.table(), eps_target)?;
    let qb_eps = conjugate_table(tsp, q_bullet.table(), eps_target)?;
    let ell = q_eps.filter_outputs(|l| l == 1);

    let source = order_o(src, &eps_src, p_bullet, bounds.word_bound)?;
    let target = order_o(tgt, eps_target, q_bullet, bounds.word_bound)?;
    let transported = match &source.certificate {
        Some(x) => Some(single_letter_part(&phi_eps(phi, &eps_src, eps_target, x)?)),
        None => None,
    };
    let verified = match &transported {
        Some(y) => hat(tsp, &ell, y)?.is_zero() && functional(&qb_eps, y).is_one(),
        None => false,
    };
    let o = TransportReport {
        source,
        target,
        transported,
        verified,
    };

    let source = order_o_tilde(src, &eps_src, p_bullet, bounds)?;
    let target = order_o_tilde(tgt, eps_target, q_bullet, bounds)?;
    let transported = match &source.certificate {
        Some(x) => Some(phi_eps(phi, &eps_src, eps_target, x)?),
        None => None,
    };
    let verified = match &transported {
        Some(y) => hat(tsp, &q_eps, y)?.is_zero() && unit_coeff(&hat(tsp, &qb_eps, y)?).is_one(),
        None => false,
    };
    let o_tilde = TransportReport {
        source,
        target,
        transported,
        verified,
    };
    Ok(FunctorialityReport { compatible, o, o_tilde })
}

/// Which augmentations a planarity value ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanarityScope {
    /// Only the supplied list; the true value is at least this.
    Supplied,
    /// Every augmentation of the algebra.
    AllAugmentations,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarityAnswer {
    pub value: Bounded,
    pub scope: PlanarityScope,
    pub orders: Vec<OrderAnswer>,
}

/// The l = 0 part of `pointed` is all of it and the space is all even:
/// then p ≡ 0 and p_{•,ε} = p_• for every ε, so one computation covers
/// every augmentation.
fn epsilon_independent(alg: &BLAlgebra, pointed: &PointedMap) -> bool {
    alg.space().all_even() && pointed.table().max_output_len() == 0
}

/// Maximum of O(V, ε, p_•) over augmentations. With no augmentation the
/// value is 0, which needs a torsion certificate to be known.
pub fn planarity(
    alg: &BLAlgebra,
    augmentations: &[Augmentation],
    pointed: &PointedMap,
    torsion: Option<&TorsionAnswer>,
    word_bound: usize,
) -> Result<PlanarityAnswer> {
    if epsilon_independent(alg, pointed) {
        let o = order_o(alg, &Augmentation::zero(), pointed, word_bound)?;
        return Ok(PlanarityAnswer {
            value: o.value,
            scope: PlanarityScope::AllAugmentations,
            orders: vec![o],
        });
    }
    if augmentations.is_empty() {
        return match torsion {
            Some(t) if t.certificate.is_some() => Ok(PlanarityAnswer {
                value: Bounded::Exact(0),
                scope: PlanarityScope::AllAugmentations,
                orders: Vec::new(),
            }),
            _ => Err(Error::Inconclusive(
                "no augmentation supplied and no torsion certificate rules them out".into(),
            )),
        };
    }
    let orders = augmentations
        .iter()
        .map(|e| order_o(alg, e, pointed, word_bound))
        .collect::<Result<Vec<_>>>()?;
    let top = orders.iter().map(|o| o.value.level()).collect::<Option<Vec<_>>>().and_then(|l| l.into_iter().max());
    let value = match top {
        None => Bounded::NotFound,
        Some(k) if orders.iter().all(|o| matches!(o.value, Bounded::Exact(_))) => Bounded::Exact(k),
        Some(k) => Bounded::AtMost(k),
    };
    Ok(PlanarityAnswer {
        value,
        scope: PlanarityScope::Supplied,
        orders,
    })
}
