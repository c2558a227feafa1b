//! Explicit filtered multiplicative bases.

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::{alg_mul, radical_filtration, AlgebraElement, AlgebraError, Filtration};
use crate::field::{FieldElem, FieldSpec};
use crate::linalg::{determinant, Subspace};
use crate::pgroup::{catalog_lookup, group_from_spec, subgroup_generated, CatalogParams, Group, GroupError};
use crate::search::{dfs_search, SearchConfig, SearchError, SearchOutcome};
use crate::verify::{verify_fm_basis, BasisCandidate};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("group is not abelian")]
    NotAbelian,
    #[error("bases live over different fields")]
    FieldMismatch,
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("no word basis over the given letters verifies: {0}")]
    RepairFailed(String),
    #[error("field has no primitive cube root of unity")]
    NoCubeRoot,
    #[error("search ran out of budget")]
    SearchExhausted,
    #[error("search space exhausted without a basis")]
    NotFound,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Named letters and the words built from them.
#[derive(Clone, Debug)]
pub struct WordBasisRecipe {
    pub letters: Vec<(String, AlgebraElement)>,
    /// Words as letter index strings, in basis order after the identity.
    pub words: Vec<Vec<usize>>,
}

impl WordBasisRecipe {
    pub fn word_name(&self, w: &[usize]) -> String {
        w.iter().map(|&i| self.letters[i].0.as_str()).collect()
    }

    pub fn evaluate(&self, g: &Group, field: &FieldSpec, w: &[usize]) -> AlgebraElement {
        let mut acc = AlgebraElement::one(g.order());
        for &i in w {
            acc = alg_mul(g, field, &acc, &self.letters[i].1).expect("sizes agree");
        }
        acc
    }

    /// `{1}` followed by the evaluated words.
    pub fn candidate(&self, g: &Group, field: &FieldSpec, source: &str) -> BasisCandidate {
        let mut elements = vec![AlgebraElement::one(g.order())];
        elements.extend(self.words.iter().map(|w| self.evaluate(g, field, w)));
        BasisCandidate::new(elements, source)
    }
}

/// All distinct nonzero products of the letters, shortest words first and
/// letter-lexicographic within a length. Each element keeps its first word.
pub fn word_closure(
    g: &Group,
    field: &FieldSpec,
    letters: &[(String, AlgebraElement)],
    max_len: usize,
) -> WordBasisRecipe {
    let mut seen: HashMap<AlgebraElement, usize> = HashMap::new();
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut values: Vec<AlgebraElement> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    for (i, (_, x)) in letters.iter().enumerate() {
        if !x.is_zero() && !seen.contains_key(x) {
            seen.insert(x.clone(), words.len());
            words.push(vec![i]);
            values.push(x.clone());
            frontier.push(words.len() - 1);
        }
    }
    for _ in 1..max_len {
        let mut next = Vec::new();
        for &w in &frontier {
            for (i, (_, x)) in letters.iter().enumerate() {
                let prod = alg_mul(g, field, &values[w], x).expect("sizes agree");
                if prod.is_zero() || seen.contains_key(&prod) {
                    continue;
                }
                let mut word = words[w].clone();
                word.push(i);
                seen.insert(prod.clone(), words.len());
                words.push(word);
                values.push(prod);
                next.push(words.len() - 1);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    WordBasisRecipe {
        letters: letters.to_vec(),
        words,
    }
}

fn catalog_group(label: &str) -> Result<Group, ConstructionError> {
    Ok(group_from_spec(&catalog_lookup(label, &CatalogParams::none())?)?)
}

fn require_char2(field: &FieldSpec) -> Result<(), ConstructionError> {
    if field.p() != 2 {
        return Err(ConstructionError::BadParam(format!(
            "{field} does not have characteristic 2"
        )));
    }
    Ok(())
}

/// Cyclic direct factors of an abelian group, found by a small
/// backtracking search over elements of decreasing order.
pub fn cyclic_decomposition(g: &Group) -> Result<Vec<usize>, ConstructionError> {
    if !g.is_abelian() {
        return Err(ConstructionError::NotAbelian);
    }
    // fast path: the pc-generators themselves split the group
    let gens = g.generators();
    let orders: usize = gens.iter().map(|&x| g.element_order(x)).product();
    if orders == g.order() && subgroup_generated(g, gens).len() == g.order() {
        return Ok(gens.to_vec());
    }
    let mut by_order: Vec<usize> = (1..g.order()).collect();
    by_order.sort_by_key(|&x| std::cmp::Reverse(g.element_order(x)));
    fn extend(g: &Group, cands: &[usize], chosen: &mut Vec<usize>, size: usize) -> bool {
        if size == g.order() {
            return true;
        }
        let current = subgroup_generated(g, chosen);
        for &x in cands {
            let ord = g.element_order(x);
            chosen.push(x);
            if subgroup_generated(g, chosen).len() == current.len() * ord && extend(g, cands, chosen, size * ord) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    if extend(g, &by_order, &mut chosen, 1) {
        Ok(chosen)
    } else {
        Err(ConstructionError::NotAbelian)
    }
}

/// `{ prod (a_i - 1)^{n_i} : 0 <= n_i < |a_i| }` over a cyclic decomposition.
pub fn abelian_basis(g: &Group, field: &FieldSpec) -> Result<BasisCandidate, ConstructionError> {
    let factors = cyclic_decomposition(g)?;
    let n = g.order();
    let mut elements = vec![AlgebraElement::one(n)];
    for &a in &factors {
        let q = g.element_order(a);
        let mut next = Vec::with_capacity(elements.len() * q);
        for e in &elements {
            let mut cur = e.clone();
            next.push(cur.clone());
            for _ in 1..q {
                cur = cur.times_augmented(field, g, a);
                next.push(cur.clone());
            }
        }
        elements = next;
    }
    Ok(BasisCandidate::new(elements, format!("abelian basis of {}", g.name())))
}

/// `{ x y }` embedded in `K[G1 x G2]`, element `(x, y)` at index
/// `x * |G2| + y`.
pub fn product_basis(
    f1: &FieldSpec,
    b1: &BasisCandidate,
    f2: &FieldSpec,
    b2: &BasisCandidate,
) -> Result<BasisCandidate, ConstructionError> {
    if f1 != f2 {
        return Err(ConstructionError::FieldMismatch);
    }
    let n2 = b2.elements.first().map_or(0, AlgebraElement::len);
    let mut elements = Vec::with_capacity(b1.len() * b2.len());
    for x in &b1.elements {
        for y in &b2.elements {
            let mut coeffs = vec![0u8; x.len() * n2];
            for (i, &a) in x.coeffs.iter().enumerate() {
                if a != 0 {
                    f1.axpy(&mut coeffs[i * n2..(i + 1) * n2], FieldElem(a), &y.coeffs);
                }
            }
            elements.push(AlgebraElement { coeffs });
        }
    }
    Ok(BasisCandidate::new(
        elements,
        format!("({}) x ({})", b1.source, b2.source),
    ))
}

fn one_plus(field: &FieldSpec, g: &Group, word: &str) -> Result<AlgebraElement, ConstructionError> {
    // in characteristic 2, 1 + x = x - 1
    Ok(AlgebraElement::augmented(field, g.order(), g.parse_element(word)?))
}

/// Alternating words in `u = 1 + b` and `v = 1 + ab` for `D_{2^n}`.
pub fn dihedral_recipe(n: u32, field: &FieldSpec) -> Result<(Group, WordBasisRecipe), ConstructionError> {
    require_char2(field)?;
    if !(3..=7).contains(&n) {
        return Err(ConstructionError::BadParam(format!(
            "dihedral basis needs 3 <= n <= 7, got {n}"
        )));
    }
    let g = catalog_group(&format!("D_{}", 1u32 << n))?;
    let letters = vec![
        ("u".to_string(), one_plus(field, &g, "b")?),
        ("v".to_string(), one_plus(field, &g, "a*b")?),
    ];
    let recipe = word_closure(&g, field, &letters, g.order());
    Ok((g, recipe))
}

pub fn dihedral_basis(n: u32, field: &FieldSpec) -> Result<BasisCandidate, ConstructionError> {
    let (g, recipe) = dihedral_recipe(n, field)?;
    Ok(recipe.candidate(&g, field, &format!("alternating words for D_{}", 1u32 << n)))
}

/// Words in `u = 1 + a`, `v = 1 + b` for the family
/// `<a, b | a^{2^n} = b^{2^m} = c^2 = 1, (a, b) = c central>`.
pub fn t2_recipe(n: u32, m: u32, field: &FieldSpec) -> Result<(Group, WordBasisRecipe), ConstructionError> {
    require_char2(field)?;
    let g = group_from_spec(
        &catalog_lookup(
            "T2",
            &CatalogParams {
                n: Some(n),
                m: Some(m),
                p: None,
            },
        )
        .map_err(|e| ConstructionError::BadParam(e.to_string()))?,
    )?;
    let letters = vec![
        ("u".to_string(), one_plus(field, &g, "a")?),
        ("v".to_string(), one_plus(field, &g, "b")?),
    ];
    let recipe = word_closure(&g, field, &letters, g.order());
    Ok((g, recipe))
}

pub fn t2_basis(n: u32, m: u32, field: &FieldSpec) -> Result<BasisCandidate, ConstructionError> {
    let (g, recipe) = t2_recipe(n, m, field)?;
    Ok(recipe.candidate(&g, field, &format!("words in 1+a, 1+b for T2[n={n},m={m}]")))
}

/// Determinant of the grade-`k` elements of a candidate, expressed in the
/// row-reduced basis of `A^k` modulo `A^{k+1}`; `None` when the count does
/// not match the layer dimension.
pub fn layer_determinant(filt: &Filtration, cand: &BasisCandidate, k: usize) -> Option<FieldElem> {
    let field = filt.field();
    let upper = filt.power(k);
    let lower = filt.power(k + 1);
    let layer: Vec<&AlgebraElement> = cand
        .elements
        .iter()
        .filter(|e| filt.grade(&e.coeffs) == Some(k))
        .collect();
    let d = upper.rank() - lower.rank();
    if layer.len() != d {
        return None;
    }
    // reduction modulo A^{k+1} is linear, so the reduced rows of A^k give an
    // echelon basis of the quotient and coordinates are read at its pivots
    let mut quotient = Subspace::zero(upper.ambient_dim());
    for r in upper.rows() {
        quotient.insert(field, &lower.reduce(field, r));
    }
    let mut mat = Vec::with_capacity(d * d);
    for e in &layer {
        let r = lower.reduce(field, &e.coeffs);
        mat.extend(quotient.pivots().iter().map(|&p| r[p]));
    }
    Some(determinant(field, d, &mat))
}

/// `u = (1+a)+(1+c)`, `v = (1+b)+(1+d)`, `w = (1+b)+(1+c)+(1+d)`,
/// `z = (1+a)+(1+b)+(1+c)` in `K G_49`.
pub fn g49_letters(g: &Group, field: &FieldSpec) -> Result<Vec<(String, AlgebraElement)>, ConstructionError> {
    let sum = |names: &[&str]| -> Result<AlgebraElement, ConstructionError> {
        let mut acc = AlgebraElement::zero(g.order());
        for n in names {
            acc = acc.add(field, &one_plus(field, g, n)?);
        }
        Ok(acc)
    };
    Ok(vec![
        ("u".into(), sum(&["a", "c"])?),
        ("v".into(), sum(&["b", "d"])?),
        ("w".into(), sum(&["b", "c", "d"])?),
        ("z".into(), sum(&["a", "b", "c"])?),
    ])
}

/// The word lists printed for `G_49`, grade by grade.
pub const G49_LISTED_WORDS: &[&[&str]] = &[
    &["u", "v", "w", "z"],
    &["uv", "uw", "uz", "zu", "vw", "vz", "wz"],
    &["uzu", "uvw", "vzu", "wzu", "vuz", "uzw", "vwz", "zuz"],
    &["vuzu", "wuzu", "zuzu", "vzuz", "wzuz", "uvwz", "vwzu"],
    &["vzuz", "wzuz", "vwuzu", "vwzuz"],
    &["vwzuzu"],
];

fn parse_word(letters: &[(String, AlgebraElement)], w: &str) -> Vec<usize> {
    w.chars()
        .map(|c| {
            letters
                .iter()
                .position(|(n, _)| n.len() == 1 && n.starts_with(c))
                .expect("known letter")
        })
        .collect()
}

/// Outcome of [`g49_basis`], recording whether the literal lists verified.
#[derive(Clone, Debug)]
pub struct G49Outcome {
    pub candidate: BasisCandidate,
    pub recipe: WordBasisRecipe,
    pub literal_distinct_words: usize,
    pub literal_verified: bool,
}

/// Try the literal word lists first; if they do not form a basis, fall back
/// to the closure of all nonzero words in the same letters.
pub fn g49_basis(field: &FieldSpec) -> Result<G49Outcome, ConstructionError> {
    require_char2(field)?;
    let g = catalog_group("G_49")?;
    let filt = radical_filtration(&g, field)?;
    let letters = g49_letters(&g, field)?;
    let mut literal: Vec<Vec<usize>> = Vec::new();
    for layer in G49_LISTED_WORDS {
        for w in *layer {
            let word = parse_word(&letters, w);
            if !literal.contains(&word) {
                literal.push(word);
            }
        }
    }
    let literal_recipe = WordBasisRecipe {
        letters: letters.clone(),
        words: literal.clone(),
    };
    let literal_distinct_words = literal.len();
    if literal.len() + 1 == g.order() {
        let cand = literal_recipe.candidate(&g, field, "listed words for G_49");
        if verify_fm_basis(&g, field, &filt, &cand)
            .map(|r| r.is_basis)
            .unwrap_or(false)
        {
            return Ok(G49Outcome {
                candidate: cand,
                recipe: literal_recipe,
                literal_distinct_words,
                literal_verified: true,
            });
        }
    }
    // repair: every nonzero word must belong to a basis closed under
    // products, so the closure is the only word basis these letters allow
    let closure = word_closure(&g, field, &letters, filt.s());
    if closure.words.len() + 1 != g.order() {
        return Err(ConstructionError::RepairFailed(format!(
            "{} distinct nonzero words in u, v, w, z",
            closure.words.len()
        )));
    }
    let cand = closure.candidate(&g, field, "nonzero words in u, v, w, z for G_49");
    let report =
        verify_fm_basis(&g, field, &filt, &cand).map_err(|e| ConstructionError::RepairFailed(e.to_string()))?;
    if !report.is_basis {
        return Err(ConstructionError::RepairFailed(report.summary()));
    }
    Ok(G49Outcome {
        candidate: cand,
        recipe: closure,
        literal_distinct_words,
        literal_verified: false,
    })
}

/// A basis of `K Q_8` found by [`dfs_search`](crate::search::dfs_search).
pub fn q8_basis(field: &FieldSpec, budget: u64) -> Result<BasisCandidate, ConstructionError> {
    if !field.has_primitive_cube_root() {
        return Err(ConstructionError::NoCubeRoot);
    }
    require_char2(field)?;
    let g = catalog_group("Q_8")?;
    searched_basis(&g, field, budget)
}

fn searched_basis(g: &Group, field: &FieldSpec, budget: u64) -> Result<BasisCandidate, ConstructionError> {
    let cfg = SearchConfig {
        max_nodes: budget,
        ..SearchConfig::default()
    };
    match dfs_search(g, field, &cfg).map_err(|e| match e {
        SearchError::Group(e) => ConstructionError::Group(e),
        SearchError::Algebra(e) => ConstructionError::Algebra(e),
        other => ConstructionError::BadParam(other.to_string()),
    })? {
        SearchOutcome::Found { candidate, .. } => Ok(candidate),
        SearchOutcome::BudgetExhausted { .. } => Err(ConstructionError::SearchExhausted),
        SearchOutcome::NotFoundComplete { .. } => Err(ConstructionError::NotFound),
    }
}

fn dihedral_exponent(label: &str) -> Option<u32> {
    let n: u32 = label.strip_prefix("D_")?.parse().ok()?;
    (n.is_power_of_two() && n >= 8).then(|| n.trailing_zeros())
}

/// Catalog entries that are products or family members under another name.
const ROUTES: &[(&str, &str)] = &[
    ("G_2", "T2[n=2,m=2]"),
    ("G_18", "D_32"),
    ("G_22", "H_16 x C_2"),
    ("G_25", "D_8 x C_4"),
    ("G_26", "Q_8 x C_4"),
    ("G_39", "D_16 x C_2"),
    ("G_46", "D_8 x C_2 x C_2"),
    ("G_47", "Q_8 x C_2 x C_2"),
    ("G_48", "D8YC4 x C_2"),
];

fn construct_factor(label: &str, field: &FieldSpec, budget: u64) -> Result<(Group, BasisCandidate), ConstructionError> {
    let g = catalog_group(label)?;
    if g.is_abelian() {
        let b = abelian_basis(&g, field)?;
        return Ok((g, b));
    }
    let name = g.name().to_string();
    if let Some(n) = dihedral_exponent(&name) {
        return Ok((g, dihedral_basis(n, field)?));
    }
    if let Some(params) = name.strip_prefix("T2[n=").and_then(|r| r.strip_suffix(']')) {
        let (n, m) = params.split_once(",m=").expect("catalog name");
        let (n, m) = (n.parse().expect("catalog name"), m.parse().expect("catalog name"));
        let (g, recipe) = t2_recipe(n, m, field)?;
        let b = recipe.candidate(&g, field, &format!("words in 1+a, 1+b for {name}"));
        return Ok((g, b));
    }
    match name.as_str() {
        "Q_8" => Ok((g, q8_basis(field, budget)?)),
        "G_49" => Ok((g, g49_basis(field)?.candidate)),
        _ => {
            let b = searched_basis(&g, field, budget)?;
            Ok((g, b))
        }
    }
}

/// Build a basis for a catalog label: abelian groups by the product
/// formula, dihedral groups by alternating words, the T2 family by
/// words in `1+a, 1+b`, `G_49` by its letters, `Q_8` and anything else by
/// search. Direct products are assembled factor by factor, and the returned
/// group is the matching direct product.
pub fn construct_named(
    label: &str,
    field: &FieldSpec,
    budget: u64,
) -> Result<(Group, BasisCandidate), ConstructionError> {
    let name = crate::pgroup::canonical_label(label, &CatalogParams::none())?;
    let route = ROUTES
        .iter()
        .find(|(k, _)| *k == name)
        .map_or(label.replace('×', " x "), |(_, r)| r.to_string());
    let parts: Vec<&str> = route.split(" x ").map(str::trim).collect();
    let (mut g, mut b) = construct_factor(parts[0], field, budget)?;
    for part in &parts[1..] {
        let (h, c) = construct_factor(part, field, budget)?;
        b = product_basis(field, &b, field, &c)?;
        g = crate::pgroup::direct_product_bounded(&g, &h, 1 << 16)?;
    }
    Ok((g, b))
}
