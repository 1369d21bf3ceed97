use std::collections::BTreeMap;

use num_traits::Zero;

use super::linalg::{Echelon, SparseRow};
use super::space::Parity;
use super::Q;
use crate::error::{Error, Result};

/// Finite chain complex over ℚ with an odd differential.
///
/// `d[j]` lists the coefficients of d(basis[j]) as (row, value).
#[derive(Debug, Clone)]
pub struct ChainComplex<B> {
    basis: Vec<B>,
    grading: Vec<Parity>,
    d: Vec<SparseRow>,
}

impl<B: Clone> ChainComplex<B> {
    pub fn new(basis: Vec<B>, grading: Vec<Parity>, d: Vec<SparseRow>) -> Result<ChainComplex<B>> {
        let n = basis.len();
        if grading.len() != n || d.len() != n {
            return Err(Error::InvalidInput("complex dimensions disagree".into()));
        }
        for (j, col) in d.iter().enumerate() {
            for &i in col.keys() {
                if i >= n {
                    return Err(Error::WindowNotClosed(format!("column {j}")));
                }
                if grading[i] != grading[j] + Parity::Odd {
                    return Err(Error::ParityMismatch(format!("d is not odd on basis element {j}")));
                }
            }
        }
        let c = ChainComplex { basis, grading, d };
        for j in 0..n {
            if !c.apply(&c.d[j]).is_empty() {
                return Err(Error::NotAComplex(j));
            }
        }
        Ok(c)
    }

    pub fn basis(&self) -> &[B] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn grading(&self) -> &[Parity] {
        &self.grading
    }

    pub fn column(&self, j: usize) -> &SparseRow {
        &self.d[j]
    }

    /// d applied to a sparse vector.
    pub fn apply(&self, v: &SparseRow) -> SparseRow {
        let mut out: SparseRow = BTreeMap::new();
        for (j, c) in v {
            for (i, e) in &self.d[*j] {
                let t = out.entry(*i).or_insert_with(Q::zero);
                *t += c * e;
                if t.is_zero() {
                    out.remove(i);
                }
            }
        }
        out
    }

    fn image_echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.dim());
        for col in &self.d {
            ech.push(col.clone(), Q::zero());
        }
        ech
    }
}

#[derive(Debug, Clone)]
pub struct Homology {
    pub dim_even: usize,
    pub dim_odd: usize,
    /// Cycles whose classes form a basis of homology.
    pub representatives: Vec<SparseRow>,
    image: Echelon,
    columns: Vec<SparseRow>,
}

impl Homology {
    pub fn dim(&self) -> usize {
        self.dim_even + self.dim_odd
    }

    /// A preimage `x` with d(x) = v, if v is a boundary.
    pub fn boundary_preimage(&self, v: &SparseRow) -> Option<SparseRow> {
        if !self.image.contains(v) {
            return None;
        }
        // solve Σ x_j d_j = v by treating columns as unknowns
        let n = self.columns.len();
        let mut rows: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (j, col) in self.columns.iter().enumerate() {
            for (i, e) in col {
                rows.entry(*i).or_default().insert(j, e.clone());
            }
        }
        let mut ech = Echelon::new(n);
        let mut keys: Vec<usize> = rows.keys().copied().collect();
        keys.extend(v.keys().copied());
        keys.sort_unstable();
        keys.dedup();
        for i in keys {
            let row = rows.remove(&i).unwrap_or_default();
            ech.push(row, v.get(&i).cloned().unwrap_or_else(Q::zero));
        }
        let x = ech.particular()?;
        Some(
            x.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        )
    }

    pub fn is_boundary(&self, v: &SparseRow) -> bool {
        self.image.contains(v)
    }
}

/// dim H = dim ker d − rank d, split by parity, with representative cycles.
pub fn homology<B: Clone>(c: &ChainComplex<B>) -> Homology {
    let n = c.dim();
    let image = c.image_echelon();
    let mut dims = [0usize; 2];
    let mut reps = Vec::new();
    let mut span = image.clone();
    for parity in [Parity::Even, Parity::Odd] {
        let idx: Vec<usize> = (0..n).filter(|&j| c.grading[j] == parity).collect();
        // kernel of d restricted to this parity block
        let mut ech = Echelon::new(idx.len());
        let mut rows: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (local, &j) in idx.iter().enumerate() {
            for (i, e) in &c.d[j] {
                rows.entry(*i).or_default().insert(local, e.clone());
            }
        }
        for (_, row) in rows {
            ech.push(row, Q::zero());
        }
        for k in ech.kernel() {
            let cycle: SparseRow = k
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(local, v)| (idx[local], v))
                .collect();
            if span.push(cycle.clone(), Q::zero()) {
                dims[parity.bit() as usize] += 1;
                reps.push(cycle);
            }
        }
    }
    Homology {
        dim_even: dims[0],
        dim_odd: dims[1],
        representatives: reps,
        image,
        columns: c.d.clone(),
    }
}
