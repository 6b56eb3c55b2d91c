//! Dense linear algebra over F_p: incremental row echelon forms and kernels.

use crate::polyring::PrimeField;

/// Rows kept in reduced echelon form; `pivots[k]` is the pivot column of `rows[k]`.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    field: PrimeField,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        Echelon { field, ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.ncols);
        let f = self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(neg, y));
                    }
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let f = self.field;
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = f.inv(r[p]).expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep earlier rows reduced with respect to the new pivot
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &y) in row.iter_mut().zip(&r) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(neg, y));
                    }
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }
}

/// Basis of `{x : A x = 0}` for the `nrows × ncols` matrix given by its rows.
pub(crate) fn kernel(field: PrimeField, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut ech = Echelon::new(field, ncols);
    for r in rows {
        ech.insert(r);
    }
    let mut is_pivot = vec![false; ncols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            v[p] = field.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn apply(f: PrimeField, rows: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
        rows.iter().map(|r| r.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect()
    }

    #[test]
    fn small_kernel() {
        let f = PrimeField::new(7).unwrap();
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = kernel(f, &rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(apply(f, &rows, v).iter().all(|&c| c == 0));
        }
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(0u32..5, 6), 0..6)) {
            let f = PrimeField::new(5).unwrap();
            let mut ech = Echelon::new(f, 6);
            for r in &rows {
                ech.insert(r);
            }
            let k = kernel(f, &rows, 6);
            prop_assert_eq!(ech.rank() + k.len(), 6);
            let mut kspan = Echelon::new(f, 6);
            for v in &k {
                prop_assert!(apply(f, &rows, v).iter().all(|&c| c == 0));
                prop_assert!(kspan.insert(v));
            }
            for r in &rows {
                prop_assert!(ech.contains(r));
            }
        }
    }
}
