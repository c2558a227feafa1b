//! Truncated algebras `KG / A^m` in a filtration-adapted monomial basis.

use crate::algebra::{AlgebraElement, AlgebraError, Filtration};
use crate::field::{FieldElem, FieldSpec};
use crate::jennings::{monomial_element, JenningsProfile, MonomialCoordinates};
use crate::pgroup::Group;

/// `KG / A^m` with basis the regular monomials of weight below `m`, ordered
/// by weight. Because the monomials of weight at least `t` span `A^t`, the
/// grade of an element is the smallest weight carrying a nonzero coordinate
/// and its class is the block of coordinates of that weight.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    field: FieldSpec,
    m: usize,
    dim: usize,
    weights: Vec<usize>,
    level_start: Vec<usize>,
    exps: Vec<Vec<u32>>,
    elements: Vec<AlgebraElement>,
    table: Vec<u8>,
    group_coords: Vec<Vec<(u16, u8)>>,
}

impl QuotientAlgebra {
    pub fn new(
        g: &Group,
        field: &FieldSpec,
        filt: &Filtration,
        profile: &JenningsProfile,
        m: usize,
    ) -> Result<QuotientAlgebra, AlgebraError> {
        let s = filt.s();
        if m == 0 || m > s + 1 {
            return Err(AlgebraError::BadTruncation { m, max: s + 1 });
        }
        let coords = MonomialCoordinates::new(profile, g)
            .ok_or_else(|| AlgebraError::NotAdapted("Jennings normal forms are not unique".into()))?;
        let mut order: Vec<usize> = (0..coords.monomials.len())
            .filter(|&i| coords.monomials[i].weight < m)
            .collect();
        order.sort_by_key(|&i| coords.monomials[i].weight);
        let dim = order.len();
        let weights: Vec<usize> = order.iter().map(|&i| coords.monomials[i].weight).collect();
        let exps: Vec<Vec<u32>> = order.iter().map(|&i| coords.monomials[i].exps.clone()).collect();
        let elements: Vec<AlgebraElement> = exps.iter().map(|e| monomial_element(profile, g, field, e)).collect();

        let layer_dims = filt.layer_dims();
        let mut level_start = vec![0usize; m + 1];
        for w in 0..m {
            let count = weights.iter().filter(|&&x| x == w).count();
            if count != layer_dims[w] {
                return Err(AlgebraError::NotAdapted(format!(
                    "{count} monomials of weight {w} but dim A^{w}/A^{} = {}",
                    w + 1,
                    layer_dims[w]
                )));
            }
            level_start[w + 1] = level_start[w] + count;
        }
        for (e, &w) in elements.iter().zip(&weights) {
            if !filt.contains(w, &e.coeffs) {
                return Err(AlgebraError::NotAdapted(format!(
                    "a monomial of weight {w} is not in A^{w}"
                )));
            }
        }

        let mut position = vec![usize::MAX; coords.monomials.len()];
        for (k, &i) in order.iter().enumerate() {
            position[i] = k;
        }
        let group_coords: Vec<Vec<(u16, u8)>> = (0..g.order())
            .map(|x| {
                coords
                    .group_element(field, x, |i| position[i] != usize::MAX)
                    .into_iter()
                    .map(|(i, c)| (position[i] as u16, c.0))
                    .collect()
            })
            .collect();

        let mut q = QuotientAlgebra {
            field: field.clone(),
            m,
            dim,
            weights,
            level_start,
            exps,
            elements,
            table: vec![0u8; dim * dim * dim],
            group_coords,
        };
        for i in 0..dim {
            for j in 0..dim {
                if q.weights[i] + q.weights[j] >= m {
                    continue;
                }
                let mut prod = q.elements[i].clone();
                for (&e, &(u, _)) in q.exps[j].iter().zip(&profile.reps) {
                    for _ in 0..e {
                        prod = prod.times_augmented(field, g, u);
                    }
                }
                let c = q.from_kg(&prod);
                q.table[(i * dim + j) * dim..(i * dim + j + 1) * dim].copy_from_slice(&c);
            }
        }
        Ok(q)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weight(&self, i: usize) -> usize {
        self.weights[i]
    }

    /// Coordinate indices of weight `w`.
    pub fn level(&self, w: usize) -> std::ops::Range<usize> {
        if w >= self.m {
            return self.dim..self.dim;
        }
        self.level_start[w]..self.level_start[w + 1]
    }

    /// Coordinates of weight below `t`.
    pub fn below(&self, t: usize) -> std::ops::Range<usize> {
        0..self.level_start[t.min(self.m)]
    }

    pub fn exps(&self, i: usize) -> &[u32] {
        &self.exps[i]
    }

    /// The monomial behind coordinate `i`, as an element of KG.
    pub fn basis_element(&self, i: usize) -> &AlgebraElement {
        &self.elements[i]
    }

    pub fn zero(&self) -> Vec<u8> {
        vec![0; self.dim]
    }

    pub fn one(&self) -> Vec<u8> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    pub fn from_kg(&self, x: &AlgebraElement) -> Vec<u8> {
        let mut out = self.zero();
        for (g, &c) in x.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(i, d) in &self.group_coords[g] {
                let i = i as usize;
                out[i] = self
                    .field
                    .add(FieldElem(out[i]), self.field.mul(FieldElem(c), FieldElem(d)))
                    .0;
            }
        }
        out
    }

    /// A representative in KG (exact when `m = s + 1`).
    pub fn to_kg(&self, x: &[u8]) -> AlgebraElement {
        let n = self.elements.first().map_or(0, AlgebraElement::len);
        let mut out = AlgebraElement::zero(n);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                self.field.axpy(&mut out.coeffs, FieldElem(c), &self.elements[i].coeffs);
            }
        }
        out
    }

    /// Coordinates of `e_i e_j` (zero when the weights add up to at least `m`).
    pub fn basis_product(&self, i: usize, j: usize) -> &[u8] {
        let d = self.dim;
        &self.table[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn mul(&self, x: &[u8], y: &[u8]) -> Vec<u8> {
        let d = self.dim;
        let mut out = self.zero();
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 || self.weights[i] + self.weights[j] >= self.m {
                    continue;
                }
                let c = self.field.mul(FieldElem(a), FieldElem(b));
                self.field
                    .axpy(&mut out, c, &self.table[(i * d + j) * d..(i * d + j + 1) * d]);
            }
        }
        out
    }

    /// Row-major matrix whose row `i` is `e_i * b`.
    pub fn right_mul_matrix(&self, b: &[u8]) -> Vec<u8> {
        let d = self.dim;
        let mut mat = vec![0u8; d * d];
        for i in 0..d {
            for (j, &c) in b.iter().enumerate() {
                if c == 0 || self.weights[i] + self.weights[j] >= self.m {
                    continue;
                }
                self.field.axpy(
                    &mut mat[i * d..(i + 1) * d],
                    FieldElem(c),
                    &self.table[(i * d + j) * d..(i * d + j + 1) * d],
                );
            }
        }
        mat
    }

    /// `x * b` given the right multiplication matrix of `b`.
    pub fn apply(&self, x: &[u8], mat: &[u8], out: &mut [u8]) {
        let d = self.dim;
        out.iter_mut().for_each(|c| *c = 0);
        for (i, &a) in x.iter().enumerate() {
            if a != 0 {
                self.field.axpy(out, FieldElem(a), &mat[i * d..(i + 1) * d]);
            }
        }
    }

    /// Smallest weight with a nonzero coordinate, `None` for zero.
    pub fn grade(&self, x: &[u8]) -> Option<usize> {
        x.iter().position(|&c| c != 0).map(|i| self.weights[i])
    }

    pub fn class<'a>(&self, x: &'a [u8], k: usize) -> &'a [u8] {
        &x[self.level(k)]
    }

    /// Equality modulo `A^t`.
    pub fn eq_mod(&self, x: &[u8], y: &[u8], t: usize) -> bool {
        let r = self.below(t);
        x[r.clone()] == y[r]
    }

    pub fn is_zero_mod(&self, x: &[u8], t: usize) -> bool {
        x[self.below(t)].iter().all(|&c| c == 0)
    }
}
