use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::Q;

pub type SparseRow = BTreeMap<usize, Q>;

/// Incremental reduced row echelon form of an augmented system `A x = b`.
///
/// Rows are reduced against the existing pivots as they arrive; pivot rows
/// are kept fully reduced, so the final state is the (unique) RREF.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, (SparseRow, Q)>,
    inconsistent: bool,
}

fn axpy(row: &mut SparseRow, rhs: &mut Q, s: &Q, other: &SparseRow, other_rhs: &Q) {
    for (c, v) in other {
        let e = row.entry(*c).or_insert_with(Q::zero);
        *e += s * v;
        if e.is_zero() {
            row.remove(c);
        }
    }
    *rhs += s * other_rhs;
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
            inconsistent: false,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// Reduce a row against the current pivots without inserting it.
    pub fn reduce(&self, mut row: SparseRow, mut rhs: Q) -> (SparseRow, Q) {
        let hits: Vec<(usize, Q)> = row
            .iter()
            .filter(|(c, _)| self.pivots.contains_key(c))
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (c, v) in hits {
            let (prow, prhs) = &self.pivots[&c];
            axpy(&mut row, &mut rhs, &-v, prow, prhs);
        }
        (row, rhs)
    }

    /// Add an equation; returns true if it raised the rank.
    pub fn push(&mut self, row: SparseRow, rhs: Q) -> bool {
        debug_assert!(row.keys().all(|&c| c < self.ncols));
        let (mut row, mut rhs) = self.reduce(row, rhs);
        let Some((&lead, lv)) = row.iter().next() else {
            if !rhs.is_zero() {
                self.inconsistent = true;
            }
            return false;
        };
        let inv = Q::one() / lv;
        for v in row.values_mut() {
            *v *= &inv;
        }
        rhs *= &inv;
        for (prow, prhs) in self.pivots.values_mut() {
            if let Some(v) = prow.get(&lead).cloned() {
                axpy(prow, prhs, &-v, &row, &rhs);
            }
        }
        self.pivots.insert(lead, (row, rhs));
        true
    }

    /// True if the row is a combination of the rows pushed so far.
    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone(), Q::zero()).0.is_empty()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Solution with every free variable set to zero.
    pub fn particular(&self) -> Option<Vec<Q>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![Q::zero(); self.ncols];
        for (c, (_, rhs)) in &self.pivots {
            x[*c] = rhs.clone();
        }
        Some(x)
    }

    /// One kernel vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if self.pivots.contains_key(&f) {
                continue;
            }
            let mut v = vec![Q::zero(); self.ncols];
            v[f] = Q::one();
            for (c, (row, _)) in &self.pivots {
                if let Some(e) = row.get(&f) {
                    v[*c] = -e.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    pub solution: Option<Vec<Q>>,
    pub kernel: Vec<Vec<Q>>,
}

pub fn dense_row(row: &[Q]) -> SparseRow {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Exact Gaussian elimination. Free variables are zero in the returned
/// solution; the kernel basis has one vector per free column.
pub fn solve_linear(a: &[Vec<Q>], b: &[Q]) -> LinearSolution {
    assert_eq!(a.len(), b.len(), "row count of A and length of b differ");
    let ncols = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|r| r.len() == ncols), "ragged matrix");
    let mut ech = Echelon::new(ncols);
    for (row, rhs) in a.iter().zip(b) {
        ech.push(dense_row(row), rhs.clone());
    }
    LinearSolution {
        solution: ech.particular(),
        kernel: ech.kernel(),
    }
}

pub fn rank(a: &[Vec<Q>]) -> usize {
    let ncols = a.first().map_or(0, Vec::len);
    let mut ech = Echelon::new(ncols);
    for row in a {
        ech.push(dense_row(row), Q::zero());
    }
    ech.rank()
}

pub fn mat_vec(a: &[Vec<Q>], x: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(Q::zero(), |acc, (r, v)| acc + r * v))
        .collect()
}
