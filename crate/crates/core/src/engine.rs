//! Enumeration of generator configurations in `KG / A^m`.
//!
//! Any filtered multiplicative basis `B` has `B ∩ A = ` the distinct nonzero
//! words in its grade-one elements `b_1..b_d`. Modulo `A^m` each `b_i` is its
//! leading row `T_i` (the weight-one coordinates) plus corrections of weight
//! `2..m-2`; corrections of weight `m-1` never reach a word of length two.
//! Rows of `T` are distinct, so sorting the generators makes them strictly
//! increasing. Configurations are enumerated slot by slot (grade-major,
//! generator-minor) and pruned with two necessary conditions at each grade
//! `k`: distinct grade-`k` word classes are independent and there are
//! exactly `dim A^k/A^{k+1}` of them (N1), and words sharing a grade-`k`
//! class are equal modulo `A^m` (N2).
//!
//! A word of length `j` whose letters are fixed through weight `K` is known
//! modulo `A^{j+K}`, which decides whether it can be used at grade `k`.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::field::{FieldElem, FieldSpec};
use crate::linalg::Subspace;
use crate::quotient::QuotientAlgebra;

/// Vector arithmetic in the quotient, with packed variants for GF(2) and GF(4).
pub(crate) trait Arith: Sync {
    type V: Clone + Eq + Hash + Send + Sync;
    type M: Send + Sync;
    fn pack(&self, c: &[u8]) -> Self::V;
    fn right_mat(&self, b: &Self::V) -> Self::M;
    fn apply(&self, x: &Self::V, m: &Self::M) -> Self::V;
    fn is_zero_below(&self, x: &Self::V, t: usize) -> bool;
    fn eq_below(&self, x: &Self::V, y: &Self::V, t: usize) -> bool;
    fn class(&self, x: &Self::V, k: usize) -> Vec<u8>;
}

pub(crate) struct Packed2 {
    dim: usize,
    level_start: Vec<usize>,
    m: usize,
    table: Vec<u64>,
}

impl Packed2 {
    fn new(q: &QuotientAlgebra) -> Packed2 {
        let d = q.dim();
        let pack = |c: &[u8]| {
            c.iter()
                .enumerate()
                .fold(0u64, |acc, (i, &x)| acc | (((x & 1) as u64) << i))
        };
        let mut table = vec![0u64; d * d];
        for i in 0..d {
            for j in 0..d {
                table[i * d + j] = pack(q.basis_product(i, j));
            }
        }
        let level_start = (0..=q.m()).map(|w| q.below(w).end).collect();
        Packed2 {
            dim: d,
            level_start,
            m: q.m(),
            table,
        }
    }

    fn mask_below(&self, t: usize) -> u64 {
        let n = self.level_start[t.min(self.m)];
        if n >= 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }
}

impl Arith for Packed2 {
    type V = u64;
    type M = Vec<u64>;

    fn pack(&self, c: &[u8]) -> u64 {
        c.iter()
            .enumerate()
            .fold(0u64, |acc, (i, &x)| acc | (((x & 1) as u64) << i))
    }

    fn right_mat(&self, b: &u64) -> Vec<u64> {
        let d = self.dim;
        (0..d)
            .map(|i| {
                let mut row = 0u64;
                let mut bits = *b;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    row ^= self.table[i * d + j];
                    bits &= bits - 1;
                }
                row
            })
            .collect()
    }

    fn apply(&self, x: &u64, m: &Vec<u64>) -> u64 {
        let mut out = 0u64;
        let mut bits = *x;
        while bits != 0 {
            out ^= m[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        out
    }

    fn is_zero_below(&self, x: &u64, t: usize) -> bool {
        x & self.mask_below(t) == 0
    }

    fn eq_below(&self, x: &u64, y: &u64, t: usize) -> bool {
        (x ^ y) & self.mask_below(t) == 0
    }

    fn class(&self, x: &u64, k: usize) -> Vec<u8> {
        (self.level_start[k]..self.level_start[k + 1])
            .map(|i| ((x >> i) & 1) as u8)
            .collect()
    }
}

/// GF(4) = GF(2)[w]/(w^2+w+1) as two bit planes: `(constant part, w part)`.
/// Products of quotient basis vectors have coordinates in GF(2), so one
/// packed table serves both planes.
pub(crate) struct Packed4 {
    dim: usize,
    level_start: Vec<usize>,
    m: usize,
    table: Vec<u64>,
}

impl Packed4 {
    /// `None` unless the field is GF(4) with modulus `x^2+x+1`, the quotient
    /// fits in 64 coordinates and every structure constant lies in GF(2).
    fn new(q: &QuotientAlgebra) -> Option<Packed4> {
        let f = q.field();
        let d = q.dim();
        if f.order() != 4 || f.modulus() != [1, 1, 1] || d > 64 {
            return None;
        }
        let mut table = vec![0u64; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut bits = 0u64;
                for (t, &c) in q.basis_product(i, j).iter().enumerate() {
                    match c {
                        0 => {}
                        1 => bits |= 1 << t,
                        _ => return None,
                    }
                }
                table[i * d + j] = bits;
            }
        }
        let level_start = (0..=q.m()).map(|w| q.below(w).end).collect();
        Some(Packed4 {
            dim: d,
            level_start,
            m: q.m(),
            table,
        })
    }

    fn mask_below(&self, t: usize) -> u64 {
        let n = self.level_start[t.min(self.m)];
        if n >= 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    fn times_w((lo, hi): (u64, u64)) -> (u64, u64) {
        (hi, lo ^ hi)
    }
}

impl Arith for Packed4 {
    type V = (u64, u64);
    /// Rows `e_i b` and `w e_i b`.
    type M = Vec<((u64, u64), (u64, u64))>;

    fn pack(&self, c: &[u8]) -> (u64, u64) {
        c.iter().enumerate().fold((0, 0), |(lo, hi), (i, &x)| {
            (lo | (((x & 1) as u64) << i), hi | ((((x >> 1) & 1) as u64) << i))
        })
    }

    fn right_mat(&self, b: &(u64, u64)) -> Self::M {
        let d = self.dim;
        let sum = |i: usize, mut bits: u64| {
            let mut row = 0u64;
            while bits != 0 {
                row ^= self.table[i * d + bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            row
        };
        (0..d)
            .map(|i| {
                let row = (sum(i, b.0), sum(i, b.1));
                (row, Self::times_w(row))
            })
            .collect()
    }

    fn apply(&self, x: &(u64, u64), m: &Self::M) -> (u64, u64) {
        let (mut lo, mut hi) = (0u64, 0u64);
        let mut bits = x.0;
        while bits != 0 {
            let r = m[bits.trailing_zeros() as usize].0;
            lo ^= r.0;
            hi ^= r.1;
            bits &= bits - 1;
        }
        let mut bits = x.1;
        while bits != 0 {
            let r = m[bits.trailing_zeros() as usize].1;
            lo ^= r.0;
            hi ^= r.1;
            bits &= bits - 1;
        }
        (lo, hi)
    }

    fn is_zero_below(&self, x: &(u64, u64), t: usize) -> bool {
        (x.0 | x.1) & self.mask_below(t) == 0
    }

    fn eq_below(&self, x: &(u64, u64), y: &(u64, u64), t: usize) -> bool {
        ((x.0 ^ y.0) | (x.1 ^ y.1)) & self.mask_below(t) == 0
    }

    fn class(&self, x: &(u64, u64), k: usize) -> Vec<u8> {
        (self.level_start[k]..self.level_start[k + 1])
            .map(|i| (((x.0 >> i) & 1) | (((x.1 >> i) & 1) << 1)) as u8)
            .collect()
    }
}

pub(crate) struct General<'a> {
    q: &'a QuotientAlgebra,
}

impl Arith for General<'_> {
    type V = Vec<u8>;
    type M = Vec<u8>;

    fn pack(&self, c: &[u8]) -> Vec<u8> {
        c.to_vec()
    }

    fn right_mat(&self, b: &Vec<u8>) -> Vec<u8> {
        self.q.right_mul_matrix(b)
    }

    fn apply(&self, x: &Vec<u8>, m: &Vec<u8>) -> Vec<u8> {
        let mut out = self.q.zero();
        self.q.apply(x, m, &mut out);
        out
    }

    fn is_zero_below(&self, x: &Vec<u8>, t: usize) -> bool {
        self.q.is_zero_mod(x, t)
    }

    fn eq_below(&self, x: &Vec<u8>, y: &Vec<u8>, t: usize) -> bool {
        self.q.eq_mod(x, y, t)
    }

    fn class(&self, x: &Vec<u8>, k: usize) -> Vec<u8> {
        self.q.class(x, k).to_vec()
    }
}

/// Which necessary condition failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A grade-`k` class is a combination of other grade-`k` classes.
    Dependent { word: String },
    /// Fewer possible grade-`k` elements than the layer dimension.
    TooFew {
        found: usize,
        undetermined: usize,
        need: usize,
    },
    /// Two words share a grade-`k` class but differ modulo `A^t`.
    Unequal {
        first: String,
        second: String,
        modulo: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub grade: usize,
    pub violation: Violation,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.violation {
            Violation::Dependent { word } => {
                write!(f, "grade {}: N1 class of {word} depends on earlier classes", self.grade)
            }
            Violation::TooFew {
                found,
                undetermined,
                need,
            } => write!(
                f,
                "grade {}: N1 only {found} classes (+{undetermined} undetermined) for dimension {need}",
                self.grade
            ),
            Violation::Unequal { first, second, modulo } => write!(
                f,
                "grade {}: N2 {first} and {second} share a class but differ modulo A^{modulo}",
                self.grade
            ),
        }
    }
}

/// A configuration that passed every check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survivor {
    /// Generator coordinates in the quotient basis.
    pub generators: Vec<Vec<u8>>,
    /// Relations among words of length two, e.g. `b1b2 = b2b1` or `b1b1 = 0`.
    pub coincidences: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeadingVerdict {
    /// Every configuration failed; `root` is set when no correction was needed.
    Eliminated {
        nodes: u64,
        root: Option<Failure>,
        deepest_grade: usize,
    },
    Survived {
        nodes: u64,
        survivor: Survivor,
    },
    /// Stopped by the node budget.
    Unfinished {
        nodes: u64,
    },
    /// Skipped because another leading matrix already succeeded.
    Cancelled,
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub max_nodes: u64,
    /// Stop after the first surviving leading matrix (lowest index when
    /// `deterministic`).
    pub stop_on_survivor: bool,
    pub deterministic: bool,
    /// Fixed leading rows; otherwise all of `GL(d, q)` up to row order.
    pub leading: Option<Vec<Vec<u8>>>,
}

#[derive(Clone, Debug)]
pub struct EngineRun {
    pub d1: usize,
    pub m: usize,
    pub leading: Vec<Vec<Vec<u8>>>,
    pub verdicts: Vec<LeadingVerdict>,
    pub nodes: u64,
    pub budget_exhausted: bool,
}

/// Nonzero vectors of length `d` over a field with `q` elements, in
/// lexicographic order of their codes.
fn nonzero_vectors(q: usize, d: usize) -> Vec<Vec<u8>> {
    let total = q.pow(d as u32);
    (1..total)
        .map(|mut n| {
            let mut v = vec![0u8; d];
            for i in (0..d).rev() {
                v[i] = (n % q) as u8;
                n /= q;
            }
            v
        })
        .collect()
}

/// Invertible `d x d` matrices with strictly increasing rows, in
/// row-lexicographic order.
/// Number of matrices [`sorted_leading_matrices`] returns: `|GL(d, q)| / d!`.
pub fn leading_matrix_count(q: usize, d: usize) -> u128 {
    let q = q as u128;
    let qd = q.pow(d as u32);
    let gl: u128 = (0..d as u32).map(|i| qd - q.pow(i)).product();
    gl / (1..=d as u128).product::<u128>()
}

pub fn sorted_leading_matrices(field: &FieldSpec, d: usize) -> Vec<Vec<Vec<u8>>> {
    let rows = nonzero_vectors(field.order(), d);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        field: &FieldSpec,
        rows: &[Vec<u8>],
        d: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        span: &Subspace,
        out: &mut Vec<Vec<Vec<u8>>>,
    ) {
        if chosen.len() == d {
            out.push(chosen.iter().map(|&i| rows[i].clone()).collect());
            return;
        }
        for i in start..rows.len() {
            if span.contains(field, &rows[i]) {
                continue;
            }
            let mut next = span.clone();
            next.insert(field, &rows[i]);
            chosen.push(i);
            rec(field, rows, d, i + 1, chosen, &next, out);
            chosen.pop();
        }
    }
    rec(field, &rows, d, 0, &mut chosen, &Subspace::zero(d), &mut out);
    out
}

struct Shared {
    nodes: AtomicU64,
    exhausted: AtomicBool,
    best: AtomicUsize,
}

struct Word<V> {
    v: V,
    len: usize,
    known: usize,
    kmin: usize,
    parent: usize,
    letter: usize,
}

struct Search<'a, A: Arith> {
    ar: &'a A,
    q: &'a QuotientAlgebra,
    field: &'a FieldSpec,
    d1: usize,
    m: usize,
    slots: Vec<(usize, usize)>,
    cfg: &'a EngineConfig,
    shared: &'a Shared,
    index: usize,
    coords: Vec<Vec<u8>>,
    gens: Vec<A::V>,
    mats: Vec<A::M>,
    fixed: Vec<usize>,
    nodes: u64,
    deepest: usize,
    on_leaf: &'a (dyn Fn(&[Vec<u8>]) -> bool + Sync),
}

enum Step {
    Found(Survivor),
    Exhausted,
    Stop,
}

fn word_name<V>(words: &[Word<V>], mut i: usize) -> String {
    let mut letters = Vec::new();
    loop {
        letters.push(words[i].letter);
        if words[i].len == 1 {
            break;
        }
        i = words[i].parent;
    }
    letters.iter().rev().map(|l| format!("b{}", l + 1)).collect()
}

impl<A: Arith> Search<'_, A> {
    fn set_gen(&mut self, i: usize) {
        self.gens[i] = self.ar.pack(&self.coords[i]);
        self.mats[i] = self.ar.right_mat(&self.gens[i]);
    }

    fn words(&self, kmax: usize) -> Vec<Word<A::V>> {
        let m = self.m;
        let mut seen: HashSet<A::V> = HashSet::new();
        let mut words: Vec<Word<A::V>> = Vec::new();
        for i in 0..self.d1 {
            let known = m.min(1 + self.fixed[i]);
            if known == m {
                seen.insert(self.gens[i].clone());
            }
            words.push(Word {
                v: self.gens[i].clone(),
                len: 1,
                known,
                kmin: self.fixed[i],
                parent: usize::MAX,
                letter: i,
            });
        }
        let mut start = 0;
        for len in 2..=kmax {
            let end = words.len();
            for w in start..end {
                for i in 0..self.d1 {
                    let v = self.ar.apply(&words[w].v, &self.mats[i]);
                    let kmin = words[w].kmin.min(self.fixed[i]);
                    let known = m.min(len + kmin);
                    if known == m && (self.ar.is_zero_below(&v, m) || !seen.insert(v.clone())) {
                        continue;
                    }
                    words.push(Word {
                        v,
                        len,
                        known,
                        kmin,
                        parent: w,
                        letter: i,
                    });
                }
            }
            start = end;
        }
        words
    }

    fn check_grade(&self, words: &[Word<A::V>], k: usize) -> Result<(), Failure> {
        let need = self.q.level(k).len();
        let mut classes: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut span = Subspace::zero(need);
        let mut undetermined = 0;
        for (idx, w) in words.iter().enumerate() {
            if w.len > k {
                break;
            }
            if w.known <= k {
                if self.ar.is_zero_below(&w.v, w.known) {
                    undetermined += 1;
                }
                continue;
            }
            if !self.ar.is_zero_below(&w.v, k) {
                continue;
            }
            let class = self.ar.class(&w.v, k);
            if class.iter().all(|&c| c == 0) {
                continue;
            }
            if let Some(&other) = classes.get(&class) {
                let t = w.known.min(words[other].known);
                if !self.ar.eq_below(&w.v, &words[other].v, t) {
                    return Err(Failure {
                        grade: k,
                        violation: Violation::Unequal {
                            first: word_name(words, other),
                            second: word_name(words, idx),
                            modulo: t,
                        },
                    });
                }
                continue;
            }
            if !span.insert(self.field, &class) {
                return Err(Failure {
                    grade: k,
                    violation: Violation::Dependent {
                        word: word_name(words, idx),
                    },
                });
            }
            classes.insert(class, idx);
        }
        if classes.len() + undetermined < need {
            return Err(Failure {
                grade: k,
                violation: Violation::TooFew {
                    found: classes.len(),
                    undetermined,
                    need,
                },
            });
        }
        Ok(())
    }

    fn check(&mut self, all: bool) -> Result<(), Failure> {
        let kmax_fixed = self.fixed.iter().copied().max().unwrap_or(1);
        let top = if all {
            self.m - 1
        } else {
            (self.m - 1).min(kmax_fixed + 2)
        };
        if top < 2 {
            return Ok(());
        }
        let words = self.words(top);
        for k in 2..=top {
            self.deepest = self.deepest.max(k);
            self.check_grade(&words, k)?;
        }
        Ok(())
    }

    fn coincidences(&self) -> Vec<String> {
        let d = self.d1;
        let mut out = Vec::new();
        let mut pairs: Vec<(usize, usize, A::V)> = Vec::new();
        for i in 0..d {
            for j in 0..d {
                pairs.push((i, j, self.ar.apply(&self.gens[i], &self.mats[j])));
            }
        }
        let name = |i: usize, j: usize| format!("b{}b{}", i + 1, j + 1);
        for (a, (i, j, v)) in pairs.iter().enumerate() {
            if self.ar.is_zero_below(v, 3) {
                out.push(format!("{} = 0 mod A^3", name(*i, *j)));
                continue;
            }
            if let Some((i2, j2, _)) = pairs[..a]
                .iter()
                .find(|(_, _, w)| !self.ar.is_zero_below(w, 3) && self.ar.eq_below(v, w, 3))
            {
                out.push(format!("{} = {} mod A^3", name(*i2, *j2), name(*i, *j)));
            }
        }
        out
    }

    fn cancelled(&self) -> bool {
        if self.shared.exhausted.load(Ordering::Relaxed) {
            return true;
        }
        let best = self.shared.best.load(Ordering::Relaxed);
        best != usize::MAX && (!self.cfg.deterministic || best < self.index)
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        let n = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.cfg.max_nodes {
            self.shared.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn dfs(&mut self, depth: usize) -> Step {
        if depth == self.slots.len() {
            if (self.on_leaf)(&self.coords) {
                return Step::Found(Survivor {
                    generators: self.coords.clone(),
                    coincidences: self.coincidences(),
                });
            }
            return Step::Exhausted;
        }
        let (w, i) = self.slots[depth];
        let range = self.q.level(w);
        let width = range.len();
        let qn = self.field.order();
        let total = qn.checked_pow(width as u32).unwrap_or(usize::MAX);
        let last = depth + 1 == self.slots.len();
        for n in 0..total {
            if self.cancelled() {
                return Step::Stop;
            }
            if !self.tick() {
                return Step::Stop;
            }
            let mut c = n;
            for pos in range.clone().rev() {
                self.coords[i][pos] = (c % qn) as u8;
                c /= qn;
            }
            self.set_gen(i);
            let prev = self.fixed[i];
            self.fixed[i] = w;
            if self.check(last).is_ok() {
                match self.dfs(depth + 1) {
                    Step::Exhausted => {}
                    other => {
                        self.fixed[i] = prev;
                        return other;
                    }
                }
            }
            self.fixed[i] = prev;
        }
        for pos in range {
            self.coords[i][pos] = 0;
        }
        self.set_gen(i);
        Step::Exhausted
    }

    fn run(&mut self, leading: &[Vec<u8>]) -> LeadingVerdict {
        let lvl1 = self.q.level(1);
        for (i, row) in leading.iter().enumerate() {
            self.coords[i] = self.q.zero();
            self.coords[i][lvl1.clone()].copy_from_slice(row);
            self.set_gen(i);
        }
        if self.cancelled() {
            return LeadingVerdict::Cancelled;
        }
        if !self.tick() {
            return LeadingVerdict::Unfinished { nodes: self.nodes };
        }
        if let Err(f) = self.check(self.slots.is_empty()) {
            return LeadingVerdict::Eliminated {
                nodes: self.nodes,
                root: Some(f),
                deepest_grade: self.deepest,
            };
        }
        match self.dfs(0) {
            Step::Found(survivor) => LeadingVerdict::Survived {
                nodes: self.nodes,
                survivor,
            },
            Step::Exhausted => LeadingVerdict::Eliminated {
                nodes: self.nodes,
                root: None,
                deepest_grade: self.deepest,
            },
            Step::Stop => {
                if self.shared.exhausted.load(Ordering::Relaxed) {
                    LeadingVerdict::Unfinished { nodes: self.nodes }
                } else {
                    LeadingVerdict::Cancelled
                }
            }
        }
    }
}

/// Run the enumeration in `q = KG/A^m`. `on_leaf` receives the generator
/// coordinates of each configuration passing every check and decides
/// whether it counts as a survivor.
pub fn run_engine(q: &QuotientAlgebra, cfg: &EngineConfig, on_leaf: &(dyn Fn(&[Vec<u8>]) -> bool + Sync)) -> EngineRun {
    let field = q.field();
    let d1 = q.level(1).len();
    let m = q.m();
    // every leading matrix costs at least one node
    if cfg.leading.is_none() && leading_matrix_count(field.order(), d1) > cfg.max_nodes as u128 {
        return EngineRun {
            d1,
            m,
            leading: Vec::new(),
            verdicts: Vec::new(),
            nodes: cfg.max_nodes,
            budget_exhausted: true,
        };
    }
    let leading = match &cfg.leading {
        Some(rows) => vec![rows.clone()],
        None => sorted_leading_matrices(field, d1),
    };
    let shared = Shared {
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        best: AtomicUsize::new(usize::MAX),
    };
    let slots: Vec<(usize, usize)> = (2..m.saturating_sub(1))
        .flat_map(|w| (0..d1).map(move |i| (w, i)))
        .collect();
    let verdicts: Vec<LeadingVerdict> = if field.order() == 2 && q.dim() <= 64 {
        let ar = Packed2::new(q);
        run_all(&ar, q, cfg, &shared, &leading, &slots, on_leaf)
    } else if let Some(ar) = Packed4::new(q) {
        run_all(&ar, q, cfg, &shared, &leading, &slots, on_leaf)
    } else {
        let ar = General { q };
        run_all(&ar, q, cfg, &shared, &leading, &slots, on_leaf)
    };
    EngineRun {
        d1,
        m,
        leading,
        verdicts,
        nodes: shared.nodes.load(Ordering::Relaxed).min(cfg.max_nodes),
        budget_exhausted: shared.exhausted.load(Ordering::Relaxed),
    }
}

fn run_all<A: Arith>(
    ar: &A,
    q: &QuotientAlgebra,
    cfg: &EngineConfig,
    shared: &Shared,
    leading: &[Vec<Vec<u8>>],
    slots: &[(usize, usize)],
    on_leaf: &(dyn Fn(&[Vec<u8>]) -> bool + Sync),
) -> Vec<LeadingVerdict> {
    let d1 = q.level(1).len();
    (0..leading.len())
        .into_par_iter()
        .map(|index| {
            let zero = ar.pack(&q.zero());
            let mut s = Search {
                ar,
                q,
                field: q.field(),
                d1,
                m: q.m(),
                slots: slots.to_vec(),
                cfg,
                shared,
                index,
                coords: vec![q.zero(); d1],
                gens: vec![zero.clone(); d1],
                mats: (0..d1).map(|_| ar.right_mat(&zero)).collect(),
                fixed: vec![1; d1],
                nodes: 0,
                deepest: 0,
                on_leaf,
            };
            let verdict = s.run(&leading[index]);
            if matches!(verdict, LeadingVerdict::Survived { .. }) && cfg.stop_on_survivor {
                shared.best.fetch_min(index, Ordering::Relaxed);
            }
            verdict
        })
        .collect()
}

/// A leading row as space-separated field tokens.
pub fn render_row(field: &FieldSpec, row: &[u8]) -> String {
    row.iter()
        .map(|&c| field.token(FieldElem(c)))
        .collect::<Vec<_>>()
        .join(" ")
}
