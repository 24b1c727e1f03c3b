//! Exact linear algebra over a field: just enough to extract nullspaces.

use super::field::Field;

/// A rectangular matrix of field elements, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K: Field> {
    rows: usize,
    cols: usize,
    elems: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            elems: vec![K::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            elems: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = K::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &K {
        &self.elems[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut K {
        &mut self.elems[r * self.cols + c]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.elems.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.at(row, col).inv();
            for c in col..self.cols {
                *self.at_mut(row, c) = self.at(row, c).mul(&inv);
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in col..self.cols {
                    *self.at_mut(r, c) = self.at(r, c).sub(&factor.mul(self.at(row, c)));
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = K::zero();
                for c in 0..self.cols {
                    acc = acc.add(&self.at(r, c).mul(&v[c]));
                }
                acc
            })
            .collect()
    }
}

/// Exact basis of the kernel of `m`. Empty iff the kernel is trivial.
/// The basis has size `cols - rank`; each vector has a 1 in its free column.
pub fn nullspace<K: Field>(m: &Matrix<K>) -> Vec<Vec<K>> {
    let mut red = m.clone();
    let pivots = red.rref();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![K::zero(); m.cols()];
        v[fc] = K::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = red.at(r, fc).neg();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rat;

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(nullspace(&Matrix::<Rat>::identity(3)).is_empty());
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let basis = nullspace(&Matrix::<Rat>::zero(2, 2));
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn rank_one_kernel() {
        let mat = m(&[&[1, 1], &[2, 2]]);
        let basis = nullspace(&mat);
        assert_eq!(basis.len(), 1);
        // (1, -1) up to scaling
        let v = &basis[0];
        assert_eq!(v[0].add(&v[1]), Rat::zero());
        assert!(!v[0].is_zero());
        assert!(mat.apply(v).iter().all(|e| e.is_zero()));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let mat = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let basis = nullspace(&mat);
        assert_eq!(basis.len(), 1);
        for v in &basis {
            assert!(mat.apply(v).iter().all(|e| e.is_zero()));
        }
    }
}
