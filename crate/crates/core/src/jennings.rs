//! Jennings layers, regular monomials and the monomial basis of KG.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::algebra::{AlgebraElement, Filtration};
use crate::field::{FieldElem, FieldSpec};
use crate::linalg::Subspace;
use crate::pgroup::{lazard_series, subgroup_generated, Group, GroupError};

/// Layer representatives of the Lazard series.
#[derive(Clone, Debug)]
pub struct JenningsProfile {
    pub p: u32,
    /// `layers[i - 1]` holds the representatives of `M_i / M_{i+1}`.
    pub layers: Vec<Vec<usize>>,
    /// `dims[i - 1] = d_i`.
    pub dims: Vec<usize>,
    /// `sum_i i * d_i`.
    pub weightsum: usize,
    /// All representatives in factor order with their weights.
    pub reps: Vec<(usize, usize)>,
}

/// Exponents per representative (factor order) and total weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegularMonomial {
    pub exps: Vec<u32>,
    pub weight: usize,
}

impl RegularMonomial {
    pub fn recompute_weight(&self, profile: &JenningsProfile) -> usize {
        self.exps
            .iter()
            .zip(&profile.reps)
            .map(|(&e, &(_, w))| e as usize * w)
            .sum()
    }
}

pub fn jennings_profile(g: &Group, p: u32) -> Result<JenningsProfile, GroupError> {
    let series = lazard_series(g, p)?;
    let mut layers = Vec::new();
    let mut reps = Vec::new();
    for i in 1..series.len() {
        let (cur, next) = (series.term(i), series.term(i + 1));
        let mut chosen = Vec::new();
        let mut span = next.to_vec();
        for &x in cur {
            if span.binary_search(&x).is_err() {
                chosen.push(x);
                let seeds: Vec<usize> = next.iter().copied().chain(chosen.iter().copied()).collect();
                span = subgroup_generated(g, &seeds);
            }
        }
        reps.extend(chosen.iter().map(|&x| (x, i)));
        layers.push(chosen);
    }
    let dims: Vec<usize> = layers.iter().map(Vec::len).collect();
    let weightsum = dims.iter().enumerate().map(|(i, d)| (i + 1) * d).sum();
    Ok(JenningsProfile {
        p,
        layers,
        dims,
        weightsum,
        reps,
    })
}

impl JenningsProfile {
    /// Nilpotency length of the augmentation ideal, `(p - 1) * sum i d_i`.
    pub fn s(&self) -> usize {
        (self.p as usize - 1) * self.weightsum
    }

    /// Every exponent pattern, in lexicographic order of exponent vectors.
    pub fn monomials(&self) -> Vec<RegularMonomial> {
        let r = self.reps.len();
        let p = self.p;
        let count = (p as usize).pow(r as u32);
        (0..count)
            .map(|mut idx| {
                let mut exps = vec![0u32; r];
                for k in (0..r).rev() {
                    exps[k] = (idx % p as usize) as u32;
                    idx /= p as usize;
                }
                let weight = exps.iter().zip(&self.reps).map(|(&e, &(_, w))| e as usize * w).sum();
                RegularMonomial { exps, weight }
            })
            .collect()
    }

    /// Group element `prod u^{exps}` in factor order.
    pub fn group_word(&self, g: &Group, exps: &[u32]) -> usize {
        let mut acc = 0;
        for (&e, &(u, _)) in exps.iter().zip(&self.reps) {
            for _ in 0..e {
                acc = g.mul(acc, u);
            }
        }
        acc
    }

    /// Normal form exponents of every element; `None` if the words
    /// `prod u^alpha` do not hit each element exactly once.
    pub fn normal_forms(&self, g: &Group) -> Option<Vec<Vec<u32>>> {
        let mut out: Vec<Option<Vec<u32>>> = vec![None; g.order()];
        for m in self.monomials() {
            let x = self.group_word(g, &m.exps);
            if out[x].is_some() {
                return None;
            }
            out[x] = Some(m.exps);
        }
        out.into_iter().collect()
    }
}

/// `prod (u - 1)^{y}` in factor order as an element of KG.
pub fn monomial_element(profile: &JenningsProfile, g: &Group, field: &FieldSpec, exps: &[u32]) -> AlgebraElement {
    let mut acc = AlgebraElement::one(g.order());
    for (&e, &(u, _)) in exps.iter().zip(&profile.reps) {
        for _ in 0..e {
            acc = acc.times_augmented(field, g, u);
        }
    }
    acc
}

/// Regular monomials of weight at least `t`.
pub fn regular_basis(profile: &JenningsProfile, g: &Group, field: &FieldSpec, t: usize) -> Vec<AlgebraElement> {
    profile
        .monomials()
        .into_iter()
        .filter(|m| m.weight >= t)
        .map(|m| monomial_element(profile, g, field, &m.exps))
        .collect()
}

/// Coordinates of group elements in the monomial basis.
///
/// With `g = prod u^alpha`, expanding `u^a = ((u - 1) + 1)^a` gives
/// `g = sum_{y <= alpha} prod C(alpha, y) e_y`.
pub struct MonomialCoordinates {
    pub monomials: Vec<RegularMonomial>,
    index: HashMap<Vec<u32>, usize>,
    normal: Vec<Vec<u32>>,
}

impl MonomialCoordinates {
    pub fn new(profile: &JenningsProfile, g: &Group) -> Option<Self> {
        let normal = profile.normal_forms(g)?;
        let monomials = profile.monomials();
        let index = monomials.iter().enumerate().map(|(i, m)| (m.exps.clone(), i)).collect();
        Some(MonomialCoordinates {
            monomials,
            index,
            normal,
        })
    }

    pub fn index_of(&self, exps: &[u32]) -> usize {
        self.index[exps]
    }

    pub fn normal_form(&self, x: usize) -> &[u32] {
        &self.normal[x]
    }

    /// Nonzero `(monomial index, coefficient)` pairs for group element `x`,
    /// restricted to monomials accepted by `keep`.
    pub fn group_element(&self, field: &FieldSpec, x: usize, keep: impl Fn(usize) -> bool) -> Vec<(usize, FieldElem)> {
        let alpha = &self.normal[x];
        let p = field.p();
        let mut out = Vec::new();
        let mut y = vec![0u32; alpha.len()];
        loop {
            let idx = self.index[&y];
            if keep(idx) {
                let mut c = FieldElem::ONE;
                for (&a, &b) in alpha.iter().zip(&y) {
                    c = field.mul(c, field.from_int(binomial(a, b) as i64 % p as i64));
                }
                if !c.is_zero() {
                    out.push((idx, c));
                }
            }
            // next y <= alpha
            let mut k = y.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if y[k] < alpha[k] {
                    y[k] += 1;
                    break;
                }
                y[k] = 0;
            }
        }
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    (0..k as u64).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckRow {
    pub t: usize,
    /// Rank of the regular monomials of weight at least `t`.
    pub rank: usize,
    /// `dim A^t` from the radical filtration.
    pub dim: usize,
    /// Whether every such monomial lies in `A^t`.
    pub contained: bool,
}

#[derive(Clone, Debug)]
pub struct CrosscheckReport {
    pub rows: Vec<CrosscheckRow>,
    pub normal_forms_unique: bool,
    pub pass: bool,
}

/// Compare the span of weight-`>= t` regular monomials with `A^t` for
/// every `t <= s + 1`.
pub fn jennings_crosscheck(
    g: &Group,
    field: &FieldSpec,
    profile: &JenningsProfile,
    filt: &Filtration,
) -> CrosscheckReport {
    let n = g.order();
    let monomials = profile.monomials();
    let elements: Vec<AlgebraElement> = monomials
        .par_iter()
        .map(|m| monomial_element(profile, g, field, &m.exps))
        .collect();
    // a monomial in A^{weight} lies in every A^t with t <= weight
    let in_own: Vec<bool> = elements
        .par_iter()
        .zip(&monomials)
        .map(|(e, m)| filt.contains(m.weight, &e.coeffs))
        .collect();
    let top = filt.s() + 1;
    let max_weight = monomials.iter().map(|m| m.weight).max().unwrap_or(0);
    // insert monomials by decreasing weight, reading off the rank at each t
    let mut span = Subspace::zero(n);
    let mut rank_at = vec![0usize; top.max(max_weight) + 2];
    for t in (0..=top.max(max_weight)).rev() {
        for (i, m) in monomials.iter().enumerate() {
            if m.weight == t {
                span.insert(field, &elements[i].coeffs);
            }
        }
        rank_at[t] = span.rank();
    }
    let rows: Vec<CrosscheckRow> = (0..=top)
        .map(|t| CrosscheckRow {
            t,
            rank: rank_at[t],
            dim: filt.dim(t),
            contained: (0..monomials.len())
                .filter(|&i| monomials[i].weight >= t)
                .all(|i| in_own[i]),
        })
        .collect();
    let normal_forms_unique = profile.normal_forms(g).is_some();
    let pass = normal_forms_unique && rows.iter().all(|r| r.rank == r.dim && r.contained);
    CrosscheckReport {
        rows,
        normal_forms_unique,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::radical_filtration;
    use crate::field::field_make;
    use crate::pgroup::{catalog_lookup, group_from_spec, CatalogParams};

    fn group(label: &str) -> Group {
        group_from_spec(&catalog_lookup(label, &CatalogParams::none()).unwrap()).unwrap()
    }

    #[test]
    fn d8_profile() {
        let g = group("D_8");
        let prof = jennings_profile(&g, 2).unwrap();
        assert_eq!(prof.dims, vec![2, 1]);
        let names: Vec<String> = prof.layers[0].iter().map(|&x| g.element_name(x)).collect();
        assert_eq!(names, vec!["a", "b"]);
        assert_eq!(g.element_name(prof.layers[1][0]), "a^2");
        let f = field_make(2, 1, None).unwrap();
        let weights: Vec<usize> = prof
            .monomials()
            .iter()
            .filter(|m| m.weight >= 2)
            .map(|m| m.weight)
            .collect();
        let mut w = weights.clone();
        w.sort();
        assert_eq!(w, vec![2, 2, 3, 3, 4]);
        assert_eq!(regular_basis(&prof, &g, &f, 2).len(), 5);
        assert_eq!(regular_basis(&prof, &g, &f, 0).len(), 8);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(4, 4), 1);
    }

    #[test]
    fn coordinates_reconstruct_group_elements() {
        let f = field_make(3, 1, None).unwrap();
        let g = group("C_9 x C_3");
        let prof = jennings_profile(&g, 3).unwrap();
        let coords = MonomialCoordinates::new(&prof, &g).unwrap();
        let elems: Vec<AlgebraElement> = coords
            .monomials
            .iter()
            .map(|m| monomial_element(&prof, &g, &f, &m.exps))
            .collect();
        for x in 0..g.order() {
            let mut acc = AlgebraElement::zero(g.order());
            for (i, c) in coords.group_element(&f, x, |_| true) {
                acc = acc.axpy(&f, c, &elems[i]);
            }
            assert_eq!(acc, AlgebraElement::basis(g.order(), x));
        }
    }

    #[test]
    fn crosscheck_small() {
        let f = field_make(2, 1, None).unwrap();
        let g = group("C_4 x C_2");
        let prof = jennings_profile(&g, 2).unwrap();
        let filt = radical_filtration(&g, &f).unwrap();
        let rep = jennings_crosscheck(&g, &f, &prof, &filt);
        assert!(rep.pass, "{:?}", rep.rows);
        assert_eq!(prof.s(), filt.s());
    }
}
