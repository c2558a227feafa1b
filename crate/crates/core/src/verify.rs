//! The checker for filtered multiplicative bases.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{alg_mul, augmentation, AlgebraElement, Filtration};
use crate::field::FieldSpec;
use crate::linalg::Subspace;
use crate::pgroup::Group;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("candidate has {got} elements of length {len}, expected {want} of length {want}")]
    SizeMismatch { want: usize, got: usize, len: usize },
}

/// A proposed basis: `|G|` elements of KG, the identity first by convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCandidate {
    pub elements: Vec<AlgebraElement>,
    pub source: String,
}

impl BasisCandidate {
    pub fn new(elements: Vec<AlgebraElement>, source: impl Into<String>) -> Self {
        BasisCandidate {
            elements,
            source: source.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub is_basis: bool,
    pub has_identity: bool,
    pub distinct: bool,
    pub rank: usize,
    pub rank_ok: bool,
    /// Ordered pairs `(i, j)` with `b_i b_j` neither zero nor in the set.
    pub closure_failures: Vec<(usize, usize)>,
    /// `B ∩ A` is a basis of `A`.
    pub radical_basis_ok: bool,
    /// Entry `n - 1`: `B ∩ A^n` is a basis of `A^n`, for `n = 1..=s`.
    pub radical_layer_ok: Vec<bool>,
    /// Pairs of distinct elements outside some `A^k` that agree modulo it.
    pub property2_failures: Vec<(usize, usize)>,
    pub grades: Vec<Option<usize>>,
}

impl VerifyReport {
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let flag = |b: bool| if b { "ok" } else { "FAIL" };
        out.push_str(&format!("identity present: {}\n", flag(self.has_identity)));
        out.push_str(&format!("pairwise distinct: {}\n", flag(self.distinct)));
        out.push_str(&format!("rank {}: {}\n", self.rank, flag(self.rank_ok)));
        out.push_str(&format!(
            "closure: {} ({} failing pairs)\n",
            flag(self.closure_failures.is_empty()),
            self.closure_failures.len()
        ));
        for &(i, j) in self.closure_failures.iter().take(10) {
            out.push_str(&format!("  b{i} * b{j} not in B u {{0}}\n"));
        }
        out.push_str(&format!("B n A basis of A: {}\n", flag(self.radical_basis_ok)));
        for (n, ok) in self.radical_layer_ok.iter().enumerate() {
            out.push_str(&format!("B n A^{} basis of A^{}: {}\n", n + 1, n + 1, flag(*ok)));
        }
        out.push_str(&format!(
            "distinct elements never congruent: {} ({} failing pairs)\n",
            flag(self.property2_failures.is_empty()),
            self.property2_failures.len()
        ));
        out.push_str(&format!(
            "verdict: {}\n",
            if self.is_basis { "basis" } else { "not a basis" }
        ));
        out
    }
}

/// Check every defining condition and report all failures found.
pub fn verify_fm_basis(
    g: &Group,
    field: &FieldSpec,
    filt: &Filtration,
    cand: &BasisCandidate,
) -> Result<VerifyReport, VerifyError> {
    let n = g.order();
    if cand.len() != n || cand.elements.iter().any(|e| e.len() != n) {
        return Err(VerifyError::SizeMismatch {
            want: n,
            got: cand.len(),
            len: cand
                .elements
                .iter()
                .map(AlgebraElement::len)
                .find(|&l| l != n)
                .unwrap_or(n),
        });
    }
    let elems = &cand.elements;
    let one = AlgebraElement::one(n);
    let has_identity = elems.contains(&one);
    let index: HashMap<&[u8], usize> = elems
        .iter()
        .enumerate()
        .map(|(i, e)| (e.coeffs.as_slice(), i))
        .collect();
    let distinct = index.len() == n;

    let rank = Subspace::span(field, n, elems.iter().map(|e| e.coeffs.as_slice())).rank();
    let rank_ok = rank == n;

    let closure_failures: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let index = &index;
            (0..n).filter_map(move |j| {
                let prod = alg_mul(g, field, &elems[i], &elems[j]).expect("sizes checked");
                (!prod.is_zero() && !index.contains_key(prod.coeffs.as_slice())).then_some((i, j))
            })
        })
        .collect();

    let grades: Vec<Option<usize>> = elems.par_iter().map(|e| filt.grade(&e.coeffs)).collect();

    let in_radical: Vec<usize> = (0..n).filter(|&i| augmentation(field, &elems[i]).is_zero()).collect();
    let radical_basis_ok = in_radical.len() == n - 1
        && Subspace::span(field, n, in_radical.iter().map(|&i| elems[i].coeffs.as_slice())).rank() == n - 1;

    let s = filt.s();
    let radical_layer_ok: Vec<bool> = (1..=s)
        .map(|t| {
            let members: Vec<usize> = (0..n).filter(|&i| grades[i].is_none_or(|gr| gr >= t)).collect();
            members.len() == filt.dim(t)
                && Subspace::span(field, n, members.iter().map(|&i| elems[i].coeffs.as_slice())).rank() == filt.dim(t)
        })
        .collect();

    let mut property2_failures = Vec::new();
    for k in 1..=s + 1 {
        let power = filt.power(k);
        let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
        for i in 0..n {
            if grades[i].is_some_and(|gr| gr < k) {
                let r = power.reduce(field, &elems[i].coeffs);
                if let Some(&j) = seen.get(&r) {
                    if elems[i] != elems[j] {
                        property2_failures.push((j, i));
                    }
                } else {
                    seen.insert(r, i);
                }
            }
        }
    }
    property2_failures.sort_unstable();
    property2_failures.dedup();

    let is_basis = has_identity
        && distinct
        && rank_ok
        && closure_failures.is_empty()
        && radical_basis_ok
        && radical_layer_ok.iter().all(|&b| b)
        && property2_failures.is_empty();
    Ok(VerifyReport {
        is_basis,
        has_identity,
        distinct,
        rank,
        rank_ok,
        closure_failures,
        radical_basis_ok,
        radical_layer_ok,
        property2_failures,
        grades,
    })
}

/// Number of candidate elements per grade; zero elements are skipped.
pub fn basis_grading(filt: &Filtration, cand: &BasisCandidate) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for e in &cand.elements {
        if let Some(gr) = filt.grade(&e.coeffs) {
            *hist.entry(gr).or_insert(0) += 1;
        }
    }
    hist
}
