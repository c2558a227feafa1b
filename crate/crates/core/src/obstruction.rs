//! Non-existence certificates by exhaustive configuration enumeration.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{radical_filtration, AlgebraElement, AlgebraError, Filtration};
use crate::engine::{render_row, run_engine, EngineConfig, Failure, LeadingVerdict, Violation};
use crate::field::FieldSpec;
use crate::jennings::jennings_profile;
use crate::linalg::Subspace;
use crate::pgroup::{Group, GroupError};
use crate::quotient::QuotientAlgebra;

pub const DEFAULT_OBSTRUCT_BUDGET: u64 = 10_000_000;
pub const MAX_GENERATORS: usize = 4;

#[derive(Debug, Error)]
pub enum ObstructionError {
    #[error("grade-one classes of the lifts are dependent or the lift count is not {want}")]
    DependentLeadingTerms { want: usize },
    #[error("{d} generators exceeds the supported maximum of {MAX_GENERATORS}")]
    TooManyGenerators { d: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// One row per word: letter indices, grade and graded class.
#[derive(Clone, Debug)]
pub struct WordRow {
    pub word: Vec<usize>,
    pub grade: Option<usize>,
    pub class: Vec<u8>,
    /// Quotient coordinates of the word value.
    pub value: Vec<u8>,
}

impl WordRow {
    pub fn name(&self) -> String {
        self.word.iter().map(|i| format!("b{}", i + 1)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct WordClassTable {
    pub field: FieldSpec,
    pub d1: usize,
    pub max_len: usize,
    /// Values are exact modulo `A^truncation`.
    pub truncation: usize,
    pub layer_dims: Vec<usize>,
    /// Number of quotient coordinates of weight below `t`, for `t <= truncation`.
    pub below: Vec<usize>,
    pub rows: Vec<WordRow>,
}

impl WordClassTable {
    pub fn words_of_length(&self, j: usize) -> impl Iterator<Item = &WordRow> {
        self.rows.iter().filter(move |r| r.word.len() == j)
    }

    /// Rows of grade `k`, grouped by class.
    pub fn grade_groups(&self, k: usize) -> Vec<(Vec<u8>, Vec<&WordRow>)> {
        let mut groups: Vec<(Vec<u8>, Vec<&WordRow>)> = Vec::new();
        for r in self.rows.iter().filter(|r| r.grade == Some(k)) {
            match groups.iter_mut().find(|(c, _)| *c == r.class) {
                Some((_, v)) => v.push(r),
                None => groups.push((r.class.clone(), vec![r])),
            }
        }
        groups
    }
}

/// All words of length at most `max_len` in the lifts, evaluated in
/// `KG / A^{max_len + 1}` (or all of KG when that is smaller).
pub fn word_classes(
    g: &Group,
    field: &FieldSpec,
    filt: &Filtration,
    lifts: &[AlgebraElement],
    max_len: usize,
) -> Result<WordClassTable, ObstructionError> {
    let profile = jennings_profile(g, field.p())?;
    let truncation = (max_len + 1).min(filt.s() + 1);
    let q = QuotientAlgebra::new(g, field, filt, &profile, truncation)?;
    let lvl1 = q.level(1);
    let d1 = lvl1.len();
    let values: Vec<Vec<u8>> = lifts.iter().map(|b| q.from_kg(b)).collect();
    let leading_ok = lifts.len() == d1
        && values.iter().all(|v| q.is_zero_mod(v, 1))
        && Subspace::span(field, d1, values.iter().map(|v| &v[lvl1.clone()])).rank() == d1;
    if !leading_ok {
        return Err(ObstructionError::DependentLeadingTerms { want: d1 });
    }
    let mats: Vec<Vec<u8>> = values.iter().map(|v| q.right_mul_matrix(v)).collect();
    let mut rows: Vec<WordRow> = Vec::new();
    let mut frontier: Vec<(Vec<usize>, Vec<u8>)> = (0..d1).map(|i| (vec![i], values[i].clone())).collect();
    for len in 1..=max_len {
        let mut next = Vec::new();
        for (word, value) in frontier {
            let grade = q.grade(&value);
            let class = grade.map(|k| q.class(&value, k).to_vec()).unwrap_or_default();
            if len < max_len {
                for (i, m) in mats.iter().enumerate() {
                    let mut out = q.zero();
                    q.apply(&value, m, &mut out);
                    let mut w = word.clone();
                    w.push(i);
                    next.push((w, out));
                }
            }
            rows.push(WordRow {
                word,
                grade,
                class,
                value,
            });
        }
        frontier = next;
    }
    Ok(WordClassTable {
        field: field.clone(),
        d1,
        max_len,
        truncation,
        layer_dims: filt.layer_dims(),
        below: (0..=truncation).map(|t| q.below(t).end).collect(),
        rows,
    })
}

/// N1 and N2 at every grade `2 <= k < m` that the table determines.
/// Values are compared modulo `A^{min(m, truncation)}`, which can only
/// miss violations, never invent them.
pub fn check_necessary(table: &WordClassTable, m: usize) -> Result<(), Failure> {
    let t = m.min(table.truncation);
    let cut = table.below[t];
    for k in 2..t.min(table.max_len + 1) {
        let need = table.layer_dims[k];
        let mut seen: HashMap<&[u8], &WordRow> = HashMap::new();
        let mut span = Subspace::zero(need);
        for r in table.rows.iter().filter(|r| r.word.len() <= k && r.grade == Some(k)) {
            if let Some(other) = seen.get(r.class.as_slice()) {
                if r.value[..cut] != other.value[..cut] {
                    return Err(Failure {
                        grade: k,
                        violation: Violation::Unequal {
                            first: other.name(),
                            second: r.name(),
                            modulo: t,
                        },
                    });
                }
                continue;
            }
            if !span.insert(&table.field, &r.class) {
                return Err(Failure {
                    grade: k,
                    violation: Violation::Dependent { word: r.name() },
                });
            }
            seen.insert(&r.class, r);
        }
        if seen.len() < need {
            return Err(Failure {
                grade: k,
                violation: Violation::TooFew {
                    found: seen.len(),
                    undetermined: 0,
                    need,
                },
            });
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructionVerdict {
    NonExistenceCertified,
    /// Some leading matrix has a configuration passing every check.
    Inconclusive,
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub group: String,
    pub field: FieldSpec,
    pub m: usize,
    /// Longest word examined.
    pub depth: usize,
    pub d1: usize,
    pub leading: Vec<Vec<Vec<u8>>>,
    pub verdicts: Vec<LeadingVerdict>,
    pub nodes: u64,
    pub verdict: ObstructionVerdict,
}

impl ObstructionReport {
    pub fn eliminated(&self) -> usize {
        self.verdicts
            .iter()
            .filter(|v| matches!(v, LeadingVerdict::Eliminated { .. }))
            .count()
    }

    pub fn survivors(&self) -> usize {
        self.verdicts
            .iter()
            .filter(|v| matches!(v, LeadingVerdict::Survived { .. }))
            .count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "obstruction report");
        let _ = writeln!(out, "group {}", self.group);
        let _ = writeln!(out, "{}", self.field.header_line());
        let _ = writeln!(out, "truncation m={} depth={} d1={}", self.m, self.depth, self.d1);
        let _ = writeln!(
            out,
            "leading matrices {} eliminated {} survived {} nodes {}",
            self.leading.len(),
            self.eliminated(),
            self.survivors(),
            self.nodes
        );
        for (i, (t, v)) in self.leading.iter().zip(&self.verdicts).enumerate() {
            let rows: Vec<String> = t.iter().map(|r| render_row(&self.field, r)).collect();
            let _ = write!(out, "T{i} [{}] ", rows.join(" | "));
            match v {
                LeadingVerdict::Eliminated {
                    nodes, root: Some(f), ..
                } => {
                    let _ = writeln!(out, "eliminated at root ({nodes} nodes): {f}");
                }
                LeadingVerdict::Eliminated {
                    nodes, deepest_grade, ..
                } => {
                    let _ = writeln!(
                        out,
                        "eliminated after {nodes} nodes, checks reached grade {deepest_grade}"
                    );
                }
                LeadingVerdict::Survived { nodes, survivor } => {
                    let _ = writeln!(
                        out,
                        "survived after {nodes} nodes; forced: {}",
                        if survivor.coincidences.is_empty() {
                            "none".to_string()
                        } else {
                            survivor.coincidences.join(", ")
                        }
                    );
                }
                LeadingVerdict::Unfinished { nodes } => {
                    let _ = writeln!(out, "unfinished after {nodes} nodes (budget)");
                }
                LeadingVerdict::Cancelled => {
                    let _ = writeln!(out, "not examined");
                }
            }
        }
        let verdict = match self.verdict {
            ObstructionVerdict::NonExistenceCertified => "non-existence certified",
            ObstructionVerdict::Inconclusive => "inconclusive",
            ObstructionVerdict::BudgetExhausted => "inconclusive (budget exhausted)",
        };
        let _ = writeln!(out, "verdict {verdict}");
        out
    }
}

/// Enumerate every leading matrix and correction assignment in `KG/A^m`.
/// Certifies non-existence only when every configuration fails a check.
pub fn obstruct(g: &Group, field: &FieldSpec, m: usize, budget: u64) -> Result<ObstructionReport, ObstructionError> {
    let filt = radical_filtration(g, field)?;
    let profile = jennings_profile(g, field.p())?;
    let q = QuotientAlgebra::new(g, field, &filt, &profile, m)?;
    let d1 = q.level(1).len();
    if d1 > MAX_GENERATORS {
        return Err(ObstructionError::TooManyGenerators { d: d1 });
    }
    let cfg = EngineConfig {
        max_nodes: budget,
        stop_on_survivor: false,
        deterministic: true,
        leading: None,
    };
    let run = run_engine(&q, &cfg, &|_| true);
    let verdict = if run
        .verdicts
        .iter()
        .any(|v| matches!(v, LeadingVerdict::Survived { .. }))
    {
        ObstructionVerdict::Inconclusive
    } else if run.budget_exhausted
        || run
            .verdicts
            .iter()
            .any(|v| !matches!(v, LeadingVerdict::Eliminated { .. }))
    {
        ObstructionVerdict::BudgetExhausted
    } else {
        ObstructionVerdict::NonExistenceCertified
    };
    Ok(ObstructionReport {
        group: g.name().to_string(),
        field: field.clone(),
        m,
        depth: m.saturating_sub(1),
        d1,
        leading: run.leading,
        verdicts: run.verdicts,
        nodes: run.nodes,
        verdict,
    })
}

/// Smallest `m` in `3..=max_m` (capped at `s + 1`) with a certificate,
/// together with the reports produced on the way.
pub fn minimal_certifying_m(
    g: &Group,
    field: &FieldSpec,
    max_m: usize,
    budget: u64,
) -> Result<(Option<usize>, Vec<ObstructionReport>), ObstructionError> {
    let filt = radical_filtration(g, field)?;
    let mut reports = Vec::new();
    for m in 3..=max_m.min(filt.s() + 1) {
        let rep = obstruct(g, field, m, budget)?;
        let done = rep.verdict == ObstructionVerdict::NonExistenceCertified;
        reports.push(rep);
        if done {
            return Ok((Some(m), reports));
        }
    }
    Ok((None, reports))
}
