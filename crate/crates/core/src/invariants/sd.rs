use num_traits::Zero;

use crate::algebra::{GradedSpace, LinComb, Parity, Word, Q};
use crate::blinfty::{conjugate_table, Augmentation, BLAlgebra, OperationTable, PointedMap};
use crate::error::{Error, Result};

use super::find_combination;

/// An even linear endomorphism U of V, given by its (1,1) entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UModule {
    u: OperationTable,
    power_bound: Option<usize>,
}

impl UModule {
    pub fn new(u: OperationTable) -> Result<UModule> {
        if u.parity() != Parity::Even {
            return Err(Error::ParityMismatch("U must be even".into()));
        }
        for (w, g, e) in u.entries() {
            if w.len() != 1 || g != 0 || e.keys().any(|o| o.len() != 1) {
                return Err(Error::InvalidEntry(format!("U has a non-linear entry in `{}`", u.name())));
            }
        }
        Ok(UModule { u, power_bound: None })
    }

    /// Nilpotence is checked up to U^n; defaults to dim V.
    pub fn with_power_bound(mut self, n: usize) -> UModule {
        self.power_bound = Some(n);
        self
    }

    pub fn table(&self) -> &OperationTable {
        &self.u
    }

    pub fn power_bound(&self) -> Option<usize> {
        self.power_bound
    }
}

type Vector = LinComb<u32>;

fn linear_part(t: &OperationTable, g: u32) -> Vector {
    t.get(&Word::letter(g), 0)
        .of_length(1)
        .iter()
        .map(|(w, c)| (w.letters()[0], c.clone()))
        .collect()
}

fn apply(images: &[Vector], v: &Vector) -> Vector {
    let mut out = Vector::zero();
    for (g, c) in v {
        out.add_scaled(&images[*g as usize], c);
    }
    out
}

/// Rows of the SD system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Row {
    Cycle(u32),
    Kill(u32),
    Value,
}

/// Least k ≥ 0 such that some class [x] of H(V, ℓ¹) has f([x]) = 1 and
/// U^{k+1}[x] = 0, i.e. x, y with ℓ¹x = 0, U^{k+1}x = ℓ¹y and f(x) = 1.
pub fn sd_order(space: &GradedSpace, ell1: &OperationTable, umod: &UModule, point: &OperationTable) -> Result<usize> {
    let n = space.len();
    let gens: Vec<u32> = (0..n as u32).collect();
    let ell: Vec<Vector> = gens.iter().map(|&g| linear_part(ell1, g)).collect();
    let u: Vec<Vector> = gens.iter().map(|&g| linear_part(&umod.u, g)).collect();
    let f: Vec<Q> = gens
        .iter()
        .map(|&g| point.get(&Word::letter(g), 0).coeff(&Word::unit()))
        .collect();
    for &g in &gens {
        let e = Vector::basis(g);
        if apply(&u, &apply(&ell, &e)) != apply(&ell, &apply(&u, &e)) {
            return Err(Error::NotAModule);
        }
        let fl: Q = apply(&ell, &e).iter().map(|(h, c)| c * &f[*h as usize]).sum();
        if !fl.is_zero() {
            return Err(Error::InvalidInput("the functional does not vanish on boundaries".into()));
        }
    }
    let bound = umod.power_bound.unwrap_or(n).max(1);

    // unknowns: x_0..x_{n-1}, then y_0..y_{n-1}
    let system = |power: Option<usize>, with_value: bool| -> Vec<LinComb<Row>> {
        let mut cols = Vec::with_capacity(2 * n);
        for &g in &gens {
            let e = Vector::basis(g);
            let mut col: LinComb<Row> = apply(&ell, &e).iter().map(|(h, c)| (Row::Cycle(*h), c.clone())).collect();
            if let Some(p) = power {
                let mut v = e.clone();
                for _ in 0..p {
                    v = apply(&u, &v);
                }
                for (h, c) in &v {
                    col.add_term(Row::Kill(*h), c.clone());
                }
            }
            if with_value {
                col.add_term(Row::Value, f[g as usize].clone());
            }
            cols.push(col);
        }
        for &g in &gens {
            cols.push(
                apply(&ell, &Vector::basis(g))
                    .iter()
                    .map(|(h, c)| (Row::Kill(*h), -c.clone()))
                    .collect(),
            );
        }
        cols
    };

    // nilpotence on homology: U^bound z is a boundary for every cycle z
    let ker = {
        let mut ech = crate::algebra::Echelon::new(n);
        let mut rows: std::collections::BTreeMap<u32, crate::algebra::SparseRow> = Default::default();
        for &g in &gens {
            for (h, c) in &ell[g as usize] {
                rows.entry(*h).or_default().insert(g as usize, c.clone());
            }
        }
        for (_, r) in rows {
            ech.push(r, Q::zero());
        }
        ech.kernel()
    };
    let cols = system(Some(bound), false);
    for z in ker {
        let mut target = LinComb::<Row>::zero();
        let zv: Vector = z.iter().enumerate().map(|(i, c)| (i as u32, c.clone())).collect();
        let mut v = zv;
        for _ in 0..bound {
            v = apply(&u, &v);
        }
        for (h, c) in &v {
            target.add_term(Row::Kill(*h), c.clone());
        }
        // ℓ¹y = U^bound z, with x = 0
        if find_combination(&cols[n..], &target).is_none() {
            return Err(Error::NotNilpotent(bound));
        }
    }

    let value = LinComb::<Row>::basis(Row::Value);
    if find_combination(&system(None, true), &value).is_none() {
        return Err(Error::PlanarityNotOne);
    }
    for k in 0..bound {
        if find_combination(&system(Some(k + 1), true), &value).is_some() {
            return Ok(k);
        }
    }
    Err(Error::NotNilpotent(bound))
}

/// SD from an algebra, augmentation and pointed map: ℓ¹ = p_ε^{1,1} and the
/// functional is p_{•,ε}^{1,0}.
pub fn sd_order_linearized(alg: &BLAlgebra, eps: &Augmentation, pointed: &PointedMap, umod: &UModule) -> Result<usize> {
    let sp = alg.space();
    let p_eps = conjugate_table(sp, alg.table(), eps)?;
    let pb = conjugate_table(sp, pointed.table(), eps)?;
    sd_order(sp, &p_eps, umod, &pb)
}
