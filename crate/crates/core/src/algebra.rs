//! The group algebra KG, its augmentation ideal and radical filtration.

use rayon::prelude::*;
use thiserror::Error;

use crate::field::{FieldElem, FieldSpec};
use crate::linalg::Subspace;
use crate::pgroup::{subgroup_generated, ElementSet, Group};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("group of order {order} is not a p-group for characteristic {p}")]
    CharacteristicMismatch { order: usize, p: u32 },
    #[error("truncation {m} outside 1..={max}")]
    BadTruncation { m: usize, max: usize },
    #[error("monomial basis is not adapted to the filtration: {0}")]
    NotAdapted(String),
}

/// An element of KG as coefficient codes indexed by group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement {
    pub coeffs: Vec<u8>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { coeffs: vec![0; n] }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(n, 0)
    }

    /// The group element `x` as a basis vector.
    pub fn basis(n: usize, x: usize) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[x] = 1;
        e
    }

    /// `x - 1`.
    pub fn augmented(field: &FieldSpec, n: usize, x: usize) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[x] = field.add(FieldElem(e.coeffs[x]), FieldElem::ONE).0;
        e.coeffs[0] = field.sub(FieldElem(e.coeffs[0]), FieldElem::ONE).0;
        e
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, field: &FieldSpec, other: &Self) -> Self {
        self.axpy(field, FieldElem::ONE, other)
    }

    pub fn sub(&self, field: &FieldSpec, other: &Self) -> Self {
        self.axpy(field, field.neg(FieldElem::ONE), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, field: &FieldSpec, c: FieldElem, other: &Self) -> Self {
        let mut out = self.clone();
        field.axpy(&mut out.coeffs, c, &other.coeffs);
        out
    }

    pub fn scaled(&self, field: &FieldSpec, c: FieldElem) -> Self {
        let mut out = self.clone();
        field.scale(&mut out.coeffs, c);
        out
    }

    /// `self * x` for a group element `x`.
    pub fn times_group(&self, g: &Group, x: usize) -> Self {
        let mut out = Self::zero(self.len());
        for (h, &c) in self.coeffs.iter().enumerate() {
            out.coeffs[g.mul(h, x)] = c;
        }
        out
    }

    /// `self * (x - 1)`.
    pub fn times_augmented(&self, field: &FieldSpec, g: &Group, x: usize) -> Self {
        let mut out = self.times_group(g, x);
        field.axpy(&mut out.coeffs, field.neg(FieldElem::ONE), &self.coeffs);
        out
    }

    /// Space separated field tokens in element order.
    pub fn to_tokens(&self, field: &FieldSpec) -> String {
        self.coeffs
            .iter()
            .map(|&c| field.token(FieldElem(c)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Convolution product in KG.
pub fn alg_mul(
    g: &Group,
    field: &FieldSpec,
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    let n = g.order();
    if x.len() != n || y.len() != n {
        return Err(AlgebraError::DimensionMismatch(x.len(), y.len()));
    }
    let mut out = vec![0u8; n];
    let mut shifted = vec![0u8; n];
    for (v, &c) in y.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        // x * v permutes coordinates
        for (u, &a) in x.coeffs.iter().enumerate() {
            shifted[g.mul(u, v)] = a;
        }
        field.axpy(&mut out, FieldElem(c), &shifted);
    }
    Ok(AlgebraElement { coeffs: out })
}

pub fn augmentation(field: &FieldSpec, x: &AlgebraElement) -> FieldElem {
    x.coeffs
        .iter()
        .fold(FieldElem::ZERO, |acc, &c| field.add(acc, FieldElem(c)))
}

/// The chain `A = A^1 ⊃ A^2 ⊃ ... ⊃ A^{s+1} = 0` of powers of the
/// augmentation ideal.
#[derive(Clone, Debug)]
pub struct Filtration {
    field: FieldSpec,
    n: usize,
    layers: Vec<Subspace>,
}

impl Filtration {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Nilpotency length: the largest `s` with `A^s != 0`.
    pub fn s(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn algebra_dim(&self) -> usize {
        self.n
    }

    /// `A^t`; `A^0` is all of KG.
    pub fn power(&self, t: usize) -> std::borrow::Cow<'_, Subspace> {
        if t == 0 {
            std::borrow::Cow::Owned(Subspace::full(self.n))
        } else if t <= self.layers.len() {
            std::borrow::Cow::Borrowed(&self.layers[t - 1])
        } else {
            std::borrow::Cow::Owned(Subspace::zero(self.n))
        }
    }

    pub fn dim(&self, t: usize) -> usize {
        match t {
            0 => self.n,
            t if t <= self.layers.len() => self.layers[t - 1].rank(),
            _ => 0,
        }
    }

    /// `dim A^t / A^{t+1}` for `t = 0..=s`.
    pub fn layer_dims(&self) -> Vec<usize> {
        (0..=self.s()).map(|t| self.dim(t) - self.dim(t + 1)).collect()
    }

    pub fn contains(&self, t: usize, x: &[u8]) -> bool {
        t == 0 || t > self.layers.len() && x.iter().all(|&c| c == 0) || {
            t <= self.layers.len() && self.layers[t - 1].contains(&self.field, x)
        }
    }

    /// Largest `t` with `x ∈ A^t`, or `None` for `x = 0`.
    pub fn grade(&self, x: &[u8]) -> Option<usize> {
        if x.iter().all(|&c| c == 0) {
            return None;
        }
        let mut t = 0;
        while t < self.layers.len() && self.layers[t].contains(&self.field, x) {
            t += 1;
        }
        Some(t)
    }
}

/// Canonical remainder of `x` modulo a subspace.
pub fn reduce_mod(field: &FieldSpec, sub: &Subspace, x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    if sub.ambient_dim() != x.len() {
        return Err(AlgebraError::DimensionMismatch(sub.ambient_dim(), x.len()));
    }
    Ok(AlgebraElement {
        coeffs: sub.reduce(field, &x.coeffs),
    })
}

/// Grade of `x` (`None` meaning infinity) and its canonical class in
/// `A^n / A^{n+1}`.
pub fn graded_class(filt: &Filtration, x: &AlgebraElement) -> (Option<usize>, AlgebraElement) {
    match filt.grade(&x.coeffs) {
        None => (None, x.clone()),
        Some(n) => {
            let class = filt.power(n + 1).reduce(&filt.field, &x.coeffs);
            (Some(n), AlgebraElement { coeffs: class })
        }
    }
}

/// A small generating set of `g`: pc-generators not already generated by the
/// earlier ones.
pub fn generating_set(g: &Group) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current: ElementSet = vec![0];
    for &x in g.generators() {
        if current.binary_search(&x).is_err() {
            gens.push(x);
            current = subgroup_generated(g, &gens);
        }
    }
    gens
}

/// Powers of the augmentation ideal, by row reduction of products
/// `A^{n+1} = span { r (x - 1) : r a basis row of A^n, x a generator }`.
pub fn radical_filtration(g: &Group, field: &FieldSpec) -> Result<Filtration, AlgebraError> {
    let n = g.order();
    if !g.is_p_group(field.p()) {
        return Err(AlgebraError::CharacteristicMismatch { order: n, p: field.p() });
    }
    let mut first = Subspace::zero(n);
    for x in 1..n {
        first.insert(field, &AlgebraElement::augmented(field, n, x).coeffs);
    }
    let gens = generating_set(g);
    let mut layers = vec![first];
    while layers.last().unwrap().rank() > 0 {
        let prev = layers.last().unwrap();
        let rows: Vec<&[u8]> = prev.rows().collect();
        let mut next = Subspace::zero(n);
        // products in parallel chunks, reduction sequential
        for chunk in rows.chunks(256) {
            let products: Vec<Vec<u8>> = chunk
                .par_iter()
                .flat_map_iter(|r| {
                    let r = AlgebraElement { coeffs: r.to_vec() };
                    gens.iter()
                        .map(move |&x| r.times_augmented(field, g, x).coeffs)
                        .collect::<Vec<_>>()
                })
                .collect();
            let snapshot = next.clone();
            let reduced: Vec<Vec<u8>> = products
                .into_par_iter()
                .map(|mut v| {
                    snapshot.reduce_in_place(field, &mut v);
                    v
                })
                .filter(|v| v.iter().any(|&c| c != 0))
                .collect();
            for v in reduced {
                next.insert(field, &v);
            }
        }
        layers.push(next);
    }
    Ok(Filtration {
        field: field.clone(),
        n,
        layers,
    })
}

/// `{ g : g - 1 ∈ A^t }`.
pub fn dimension_subgroup(g: &Group, filt: &Filtration, t: usize) -> ElementSet {
    let n = g.order();
    (0..n)
        .filter(|&x| filt.contains(t, &AlgebraElement::augmented(&filt.field, n, x).coeffs))
        .collect()
}

/// Outcome of the commutator identities over one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    /// Pairs `(x, y)` where the exact identity for `(y-1)(x-1)` failed.
    pub exact_failures: Vec<(usize, usize)>,
    /// Generator pairs where `(v-1)(u-1) - (u-1)(v-1) - ((v,u)-1)` is not in `A^3`.
    pub mod_a3_failures: Vec<(usize, usize)>,
    pub pairs_checked: usize,
}

impl CongruenceReport {
    pub fn pass(&self) -> bool {
        self.exact_failures.is_empty() && self.mod_a3_failures.is_empty()
    }
}

/// Check, with `z = (y, x)`,
/// `(y-1)(x-1) = [(x-1)(y-1) + (x-1) + (y-1)](z-1) + (x-1)(y-1) + (z-1)`
/// for all pairs of group elements (or the first `max_pairs` of them), and
/// `(v-1)(u-1) = (u-1)(v-1) + ((v,u)-1)` modulo `A^3` for generators.
pub fn congruence_checks(g: &Group, filt: &Filtration, max_pairs: usize) -> CongruenceReport {
    let field = filt.field();
    let n = g.order();
    let aug = |x: usize| AlgebraElement::augmented(field, n, x);
    let mul = |a: &AlgebraElement, b: &AlgebraElement| alg_mul(g, field, a, b).expect("same group");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .take(max_pairs)
        .collect();
    let exact_failures: Vec<(usize, usize)> = pairs
        .par_iter()
        .copied()
        .filter(|&(x, y)| {
            let (xm, ym) = (aug(x), aug(y));
            let zm = aug(g.commutator(y, x));
            let xy = mul(&xm, &ym);
            let lhs = mul(&ym, &xm);
            let rhs = mul(&xy.add(field, &xm).add(field, &ym), &zm)
                .add(field, &xy)
                .add(field, &zm);
            lhs != rhs
        })
        .collect();
    let gens = g.generators();
    let a3 = filt.power(3);
    let mut mod_a3_failures = Vec::new();
    for &u in gens {
        for &v in gens {
            let (um, vm) = (aug(u), aug(v));
            let diff = mul(&vm, &um)
                .sub(field, &mul(&um, &vm))
                .sub(field, &aug(g.commutator(v, u)));
            if !a3.contains(field, &diff.coeffs) {
                mod_a3_failures.push((u, v));
            }
        }
    }
    CongruenceReport {
        exact_failures,
        mod_a3_failures,
        pairs_checked: pairs.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_make;
    use crate::pgroup::{catalog_lookup, group_from_spec, CatalogParams};

    fn group(label: &str) -> Group {
        group_from_spec(&catalog_lookup(label, &CatalogParams::none()).unwrap()).unwrap()
    }

    #[test]
    fn commutator_identities() {
        for (label, p) in [("D_8", 2), ("Q_8", 2), ("G_49", 2), ("H_2[p=3]", 3), ("H_1[p=5]", 5)] {
            let g = group(label);
            let f = field_make(p, 1, None).unwrap();
            let filt = radical_filtration(&g, &f).unwrap();
            let rep = congruence_checks(&g, &filt, 2000);
            assert!(rep.pass(), "{label}: {rep:?}");
        }
        // over GF(2): (1+b)(1+a) = (1+a)(1+b) + (1+c) mod A^3 with c = (b, a)
        let g = group("D_8");
        let f = field_make(2, 1, None).unwrap();
        let filt = radical_filtration(&g, &f).unwrap();
        let (a, b) = (g.parse_element("a").unwrap(), g.parse_element("b").unwrap());
        let ua = AlgebraElement::augmented(&f, 8, a);
        let ub = AlgebraElement::augmented(&f, 8, b);
        let ba = alg_mul(&g, &f, &ub, &ua).unwrap();
        let ab = alg_mul(&g, &f, &ua, &ub).unwrap();
        let c = AlgebraElement::augmented(&f, 8, g.commutator(b, a));
        assert!(filt.contains(3, &ba.sub(&f, &ab).sub(&f, &c).coeffs));
        // dropping the commutator term leaves a grade-two remainder
        assert_eq!(filt.grade(&ba.sub(&f, &ab).coeffs), Some(2));
    }

    #[test]
    fn multiplication_basics() {
        let f = field_make(2, 1, None).unwrap();
        let c2 = group("C_2");
        let u = AlgebraElement::augmented(&f, 2, 1);
        assert!(alg_mul(&c2, &f, &u, &u).unwrap().is_zero());
        let d8 = group("D_8");
        let y = AlgebraElement::basis(8, 5);
        assert_eq!(alg_mul(&d8, &f, &AlgebraElement::one(8), &y).unwrap(), y);
        let b = d8.parse_element("b").unwrap();
        let ab = d8.parse_element("a*b").unwrap();
        let x = alg_mul(
            &d8,
            &f,
            &AlgebraElement::augmented(&f, 8, b),
            &AlgebraElement::augmented(&f, 8, ab),
        )
        .unwrap();
        assert_eq!(augmentation(&f, &x), FieldElem::ZERO);
        assert!(alg_mul(&d8, &f, &u, &y).is_err());
    }

    #[test]
    fn augmentation_values() {
        let f = field_make(2, 1, None).unwrap();
        assert_eq!(augmentation(&f, &AlgebraElement::one(8)), FieldElem::ONE);
        assert_eq!(augmentation(&f, &AlgebraElement::augmented(&f, 8, 3)), FieldElem::ZERO);
        assert_eq!(
            augmentation(&f, &AlgebraElement { coeffs: vec![1; 8] }),
            FieldElem::ZERO
        );
    }

    #[test]
    fn small_filtrations() {
        let f = field_make(2, 1, None).unwrap();
        let filt = radical_filtration(&group("C_2"), &f).unwrap();
        assert_eq!(filt.s(), 1);
        assert_eq!(filt.dim(1), 1);
        assert_eq!(filt.dim(2), 0);
        let filt = radical_filtration(&group("D_8"), &f).unwrap();
        assert_eq!(filt.layer_dims(), vec![1, 2, 2, 2, 1]);
        let g3 = field_make(3, 1, None).unwrap();
        assert!(matches!(
            radical_filtration(&group("D_8"), &g3),
            Err(AlgebraError::CharacteristicMismatch { .. })
        ));
    }

    #[test]
    fn d8_reduction_and_grades() {
        let f = field_make(2, 1, None).unwrap();
        let g = group("D_8");
        let filt = radical_filtration(&g, &f).unwrap();
        let a = AlgebraElement::augmented(&f, 8, g.parse_element("a").unwrap());
        let b = AlgebraElement::augmented(&f, 8, g.parse_element("b").unwrap());
        let ab = alg_mul(&g, &f, &a, &b).unwrap();
        assert!(!reduce_mod(&f, &filt.power(3), &ab).unwrap().is_zero());
        assert!(reduce_mod(&f, &filt.power(2), &ab).unwrap().is_zero());
        assert_eq!(graded_class(&filt, &AlgebraElement::one(8)).0, Some(0));
        assert_eq!(graded_class(&filt, &ab).0, Some(2));
        assert_eq!(graded_class(&filt, &AlgebraElement::zero(8)).0, None);
    }

    #[test]
    fn dimension_subgroups_small() {
        let f = field_make(2, 1, None).unwrap();
        let g = group("D_8");
        let filt = radical_filtration(&g, &f).unwrap();
        assert_eq!(dimension_subgroup(&g, &filt, 1).len(), 8);
        let a2 = g.parse_element("a^2").unwrap();
        assert_eq!(dimension_subgroup(&g, &filt, 2), vec![0, a2]);
        assert_eq!(dimension_subgroup(&g, &filt, 3), vec![0]);
    }
}
