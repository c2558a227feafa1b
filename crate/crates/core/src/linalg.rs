//! Row-reduced subspaces of `K^n`.

use crate::field::{FieldElem, FieldSpec};

/// A subspace kept in reduced row echelon form: every pivot entry is 1 and
/// pivot columns are zero in all other rows. Rows are stored by increasing
/// pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    rows: Vec<u8>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Subspace {
        let mut rows = vec![0u8; n * n];
        for i in 0..n {
            rows[i * n + i] = 1;
        }
        Subspace {
            n,
            rows,
            pivots: (0..n).collect(),
        }
    }

    pub fn span<'a>(field: &FieldSpec, n: usize, vectors: impl IntoIterator<Item = &'a [u8]>) -> Subspace {
        let mut s = Subspace::zero(n);
        for v in vectors {
            s.insert(field, v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.rows[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.rows.chunks_exact(self.n.max(1)).take(self.pivots.len())
    }

    /// Canonical remainder: eliminate every pivot column in place.
    pub fn reduce_in_place(&self, field: &FieldSpec, v: &mut [u8]) {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        for (i, &c) in self.pivots.iter().enumerate() {
            let x = v[c];
            if x != 0 {
                field.axpy(v, field.neg(FieldElem(x)), self.row(i));
            }
        }
    }

    pub fn reduce(&self, field: &FieldSpec, v: &[u8]) -> Vec<u8> {
        let mut w = v.to_vec();
        self.reduce_in_place(field, &mut w);
        w
    }

    pub fn contains(&self, field: &FieldSpec, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce_in_place(field, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Add a vector; returns whether the rank grew.
    pub fn insert(&mut self, field: &FieldSpec, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce_in_place(field, &mut w);
        self.insert_reduced(field, w)
    }

    /// Add a vector already reduced against this subspace.
    pub fn insert_reduced(&mut self, field: &FieldSpec, mut w: Vec<u8>) -> bool {
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let lead = field.inv(FieldElem(w[p])).expect("nonzero pivot");
        field.scale(&mut w, lead);
        let n = self.n;
        for i in 0..self.pivots.len() {
            let x = self.rows[i * n + p];
            if x != 0 {
                let row = &mut self.rows[i * n..(i + 1) * n];
                field.axpy(row, field.neg(FieldElem(x)), &w);
            }
        }
        let at = self.pivots.partition_point(|&c| c < p);
        self.pivots.insert(at, p);
        self.rows.splice(at * n..at * n, w);
        true
    }

    /// Whether `self` is contained in `other`.
    pub fn is_subspace_of(&self, field: &FieldSpec, other: &Subspace) -> bool {
        self.rows().all(|r| other.contains(field, r))
    }
}

/// Rank of a list of vectors.
pub fn rank_of<'a>(field: &FieldSpec, n: usize, vectors: impl IntoIterator<Item = &'a [u8]>) -> usize {
    Subspace::span(field, n, vectors).rank()
}

/// Determinant of a square matrix given row-major.
pub fn determinant(field: &FieldSpec, n: usize, m: &[u8]) -> FieldElem {
    let mut a = m.to_vec();
    let mut det = FieldElem::ONE;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return FieldElem::ZERO;
        };
        if piv != col {
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
            }
            det = field.neg(det);
        }
        let d = FieldElem(a[col * n + col]);
        det = field.mul(det, d);
        let dinv = field.inv(d).unwrap();
        for r in col + 1..n {
            let x = a[r * n + col];
            if x != 0 {
                let factor = field.neg(field.mul(FieldElem(x), dinv));
                let (top, bottom) = a.split_at_mut(r * n);
                field.axpy(&mut bottom[..n], factor, &top[col * n..col * n + n]);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_make;
    use proptest::prelude::*;

    #[test]
    fn rref_invariants() {
        let f = field_make(3, 1, None).unwrap();
        let vs: Vec<Vec<u8>> = vec![vec![0, 2, 1, 1], vec![1, 1, 0, 2], vec![1, 0, 2, 0], vec![2, 2, 0, 1]];
        let s = Subspace::span(&f, 4, vs.iter().map(|v| v.as_slice()));
        assert_eq!(s.rank(), 3);
        for (i, &p) in s.pivots().iter().enumerate() {
            for j in 0..s.rank() {
                assert_eq!(s.row(j)[p], u8::from(i == j));
            }
        }
        for v in &vs {
            assert!(s.contains(&f, v));
        }
        assert!(s.pivots().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn determinant_small() {
        let f = field_make(2, 2, None).unwrap();
        // [[1, w], [w, 1]] has det 1 - w^2 = 1 + w + 1 = w
        assert_eq!(determinant(&f, 2, &[1, 2, 2, 1]), FieldElem(2));
        assert_eq!(determinant(&f, 2, &[1, 2, 1, 2]), FieldElem::ZERO);
        let g = field_make(5, 1, None).unwrap();
        assert_eq!(determinant(&g, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 3]), FieldElem(2));
    }

    proptest! {
        #[test]
        fn reduce_is_linear_and_canonical(
            rows in proptest::collection::vec(proptest::collection::vec(0u8..5, 6), 0..6),
            x in proptest::collection::vec(0u8..5, 6),
            y in proptest::collection::vec(0u8..5, 6),
        ) {
            let f = field_make(5, 1, None).unwrap();
            let s = Subspace::span(&f, 6, rows.iter().map(|r| r.as_slice()));
            let mut sum = x.clone();
            f.axpy(&mut sum, FieldElem::ONE, &y);
            let mut rs = s.reduce(&f, &x);
            f.axpy(&mut rs, FieldElem::ONE, &s.reduce(&f, &y));
            prop_assert_eq!(s.reduce(&f, &sum), rs);
            for r in &rows {
                prop_assert!(s.reduce(&f, r).iter().all(|&c| c == 0));
            }
            let rx = s.reduce(&f, &x);
            prop_assert_eq!(s.reduce(&f, &rx), rx.clone());
            for &p in s.pivots() {
                prop_assert_eq!(rx[p], 0);
            }
        }
    }
}
