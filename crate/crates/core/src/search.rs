//! Depth-first search for a filtered multiplicative basis.

use thiserror::Error;

use crate::algebra::{radical_filtration, AlgebraElement, AlgebraError, Filtration};
use crate::constructions::word_closure;
use crate::engine::{run_engine, EngineConfig, LeadingVerdict};
use crate::field::FieldSpec;
use crate::jennings::jennings_profile;
use crate::linalg::Subspace;
use crate::pgroup::{Group, GroupError};
use crate::quotient::QuotientAlgebra;
use crate::verify::{verify_fm_basis, BasisCandidate};

pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("seed letters must be {want} elements with independent classes modulo A^2")]
    BadSeeds { want: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_nodes: u64,
    /// Grade-one elements whose classes fix the leading matrix.
    pub seed_letters: Option<Vec<AlgebraElement>>,
    pub deterministic: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_nodes: DEFAULT_SEARCH_BUDGET,
            seed_letters: None,
            deterministic: true,
        }
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found {
        candidate: BasisCandidate,
        /// The grade-one elements the basis is generated by.
        generators: Vec<AlgebraElement>,
        nodes: u64,
    },
    /// Every configuration was examined and none is a basis.
    NotFoundComplete {
        nodes: u64,
    },
    BudgetExhausted {
        nodes: u64,
    },
}

impl SearchOutcome {
    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Found { nodes, .. }
            | SearchOutcome::NotFoundComplete { nodes }
            | SearchOutcome::BudgetExhausted { nodes } => *nodes,
        }
    }
}

/// `{1}` together with the distinct nonzero words in the generators.
pub fn generated_candidate(g: &Group, field: &FieldSpec, gens: &[AlgebraElement], source: &str) -> BasisCandidate {
    let letters: Vec<(String, AlgebraElement)> = gens
        .iter()
        .enumerate()
        .map(|(i, b)| (format!("b{}", i + 1), b.clone()))
        .collect();
    word_closure(g, field, &letters, g.order()).candidate(g, field, source)
}

fn leaf_is_basis(g: &Group, field: &FieldSpec, filt: &Filtration, q: &QuotientAlgebra, coords: &[Vec<u8>]) -> bool {
    let gens: Vec<AlgebraElement> = coords.iter().map(|c| q.to_kg(c)).collect();
    let cand = generated_candidate(g, field, &gens, "search");
    cand.len() == g.order() && verify_fm_basis(g, field, filt, &cand).is_ok_and(|r| r.is_basis)
}

/// Enumerate generator configurations in the full algebra `KG = KG/A^{s+1}`.
/// A configuration passing every grade check is re-verified as a basis
/// before it is returned.
pub fn dfs_search(g: &Group, field: &FieldSpec, cfg: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    let filt = radical_filtration(g, field)?;
    let profile = jennings_profile(g, field.p())?;
    let q = QuotientAlgebra::new(g, field, &filt, &profile, filt.s() + 1)?;
    let d1 = q.level(1).len();
    let leading = match &cfg.seed_letters {
        None => None,
        Some(seeds) => {
            let rows: Vec<Vec<u8>> = seeds.iter().map(|b| q.from_kg(b)[q.level(1)].to_vec()).collect();
            let span = Subspace::span(field, d1, rows.iter().map(|r| r.as_slice()));
            if rows.len() != d1 || span.rank() != d1 {
                return Err(SearchError::BadSeeds { want: d1 });
            }
            Some(rows)
        }
    };
    let ecfg = EngineConfig {
        max_nodes: cfg.max_nodes,
        stop_on_survivor: true,
        deterministic: cfg.deterministic,
        leading,
    };
    let on_leaf = |coords: &[Vec<u8>]| leaf_is_basis(g, field, &filt, &q, coords);
    let run = run_engine(&q, &ecfg, &on_leaf);
    let found = run.verdicts.iter().find_map(|v| match v {
        LeadingVerdict::Survived { survivor, .. } => Some(survivor.clone()),
        _ => None,
    });
    if let Some(s) = found {
        let generators: Vec<AlgebraElement> = s.generators.iter().map(|c| q.to_kg(c)).collect();
        let candidate = generated_candidate(g, field, &generators, &format!("search over {} / {field}", g.name()));
        return Ok(SearchOutcome::Found {
            candidate,
            generators,
            nodes: run.nodes,
        });
    }
    if run.budget_exhausted
        || run
            .verdicts
            .iter()
            .any(|v| !matches!(v, LeadingVerdict::Eliminated { .. }))
    {
        return Ok(SearchOutcome::BudgetExhausted { nodes: run.nodes });
    }
    Ok(SearchOutcome::NotFoundComplete { nodes: run.nodes })
}
