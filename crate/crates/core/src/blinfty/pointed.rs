use num_traits::One;

use crate::algebra::{EElement, Parity, Window, Q};
use crate::error::{Error, Result};

use super::morphism::{hat_phi, hat_phi_marked, BLMorphism};
use super::structure::{apply_hat_p, check_on_window, hat, BLAlgebra, EWitness, Status};
use super::table::OperationTable;

/// A family p_•^{k,l} graded-commuting with p̂.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedMap {
    table: OperationTable,
}

impl PointedMap {
    pub fn new(table: OperationTable) -> Result<PointedMap> {
        if table.has_genus() {
            return Err(Error::InvalidEntry("pointed maps have no genus".into()));
        }
        Ok(PointedMap { table })
    }

    pub fn parity(&self) -> Parity {
        self.table.parity()
    }

    pub fn table(&self) -> &OperationTable {
        &self.table
    }
}

fn sign_of(p: Parity) -> Q {
    if p.is_odd() {
        -Q::one()
    } else {
        Q::one()
    }
}

pub fn apply_hat_pointed(pm: &PointedMap, alg: &BLAlgebra, x: &EElement) -> Result<EElement> {
    hat(alg.space(), &pm.table, x)
}

/// p̂_•∘p̂ − (−1)^{|p_•|} p̂∘p̂_• on the window.
pub fn check_pointed(pm: &PointedMap, alg: &BLAlgebra, window: &Window) -> Result<Status<EWitness>> {
    pm.table.validate(alg.space(), alg.space())?;
    let s = sign_of(pm.parity());
    check_on_window(alg.space(), window, |x| {
        let a = apply_hat_pointed(pm, alg, &apply_hat_p(alg, x)?)?;
        let b = apply_hat_p(alg, &apply_hat_pointed(pm, alg, x)?)?;
        let mut r = a;
        r.add_scaled(&b, &-s.clone());
        Ok(r)
    })
}

/// The four-term identity
/// q̂_•φ̂ − (−1)^{|q_•|} φ̂p̂_• = q̂φ̂_• − (−1)^{|φ_•|} φ̂_•p̂
/// on the source window, with φ̂_• carrying exactly one φ_• block.
pub fn check_compatibility(
    phi: &BLMorphism,
    p_bullet: &PointedMap,
    q_bullet: &PointedMap,
    phi_bullet: &OperationTable,
    window: &Window,
) -> Result<Status<EWitness>> {
    if phi_bullet.parity() != p_bullet.parity() + Parity::Odd {
        return Err(Error::ParityMismatch("|φ_•| must be |p_•| + 1".into()));
    }
    let src = phi.source();
    let tgt = phi.target();
    phi_bullet.validate(src.space(), tgt.space())?;
    let sq = sign_of(q_bullet.parity());
    let sf = sign_of(phi_bullet.parity());
    let phi_hat = |x: &EElement| hat_phi(src.space(), tgt.space(), phi.table(), x);
    let phi_dot = |x: &EElement| hat_phi_marked(src.space(), tgt.space(), phi.table(), phi_bullet, x);
    check_on_window(src.space(), window, |x| {
        let mut lhs = apply_hat_pointed(q_bullet, tgt, &phi_hat(x)?)?;
        lhs.add_scaled(&phi_hat(&apply_hat_pointed(p_bullet, src, x)?)?, &-sq.clone());
        let mut rhs = apply_hat_p(tgt, &phi_dot(x)?)?;
        rhs.add_scaled(&phi_dot(&apply_hat_p(src, x)?)?, &-sf.clone());
        Ok(lhs.sub(&rhs))
    })
}
