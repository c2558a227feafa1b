use std::fmt;

use super::spec::{GroupSpec, Word};
use super::GroupError;

/// Rewriting steps allowed while collecting one word.
pub const COLLECTION_BOUND: u64 = 1_000_000;

/// Orders above this are refused by [`direct_product`].
pub const DEFAULT_MAX_ORDER: usize = 256;

/// A finite group given by a verified Cayley table.
///
/// Elements are the normal-form exponent vectors of the presentation in
/// lexicographic order (first generator most significant), so element 0 is
/// the identity and indices are stable across runs.
#[derive(Clone)]
pub struct Group {
    spec: GroupSpec,
    order: usize,
    elements: Vec<Vec<u32>>,
    cayley: Vec<u32>,
    inverse: Vec<u32>,
    gen_elems: Vec<usize>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.spec.name, self.order)
    }
}

struct Collector<'a> {
    spec: &'a GroupSpec,
    // conj[j][i] = g_j^{g_i} = g_j * (g_j, g_i) for i < j
    conj: Vec<Vec<Word>>,
    steps: u64,
}

impl<'a> Collector<'a> {
    fn new(spec: &'a GroupSpec) -> Self {
        let n = spec.gens.len();
        let conj = (0..n)
            .map(|j| {
                (0..j)
                    .map(|i| {
                        let mut w = vec![(j, 1)];
                        if let Some(c) = spec.comms.get(&(j, i)) {
                            w.extend(c.0.iter().cloned());
                        }
                        Word(w)
                    })
                    .collect()
            })
            .collect();
        Collector { spec, conj, steps: 0 }
    }

    // e <- e * g_i, collecting from the left
    fn mul_gen(&mut self, e: &mut [u32], i: usize) -> Result<(), GroupError> {
        self.steps += 1;
        if self.steps > COLLECTION_BOUND {
            return Err(GroupError::InconsistentPresentation(format!(
                "collection exceeded {COLLECTION_BOUND} steps"
            )));
        }
        let tail: Vec<u32> = e[i + 1..].to_vec();
        e[i + 1..].iter_mut().for_each(|x| *x = 0);
        e[i] += 1;
        if e[i] == self.spec.relorders[i] {
            e[i] = 0;
            let w = self.spec.powers[i].clone();
            self.mul_word(e, &w)?;
        }
        for (off, &t) in tail.iter().enumerate() {
            let k = i + 1 + off;
            for _ in 0..t {
                let w = self.conj[k][i].clone();
                self.mul_word(e, &w)?;
            }
        }
        Ok(())
    }

    fn mul_word(&mut self, e: &mut [u32], w: &Word) -> Result<(), GroupError> {
        for &(g, x) in &w.0 {
            for _ in 0..x {
                self.mul_gen(e, g)?;
            }
        }
        Ok(())
    }
}

impl Group {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    pub fn name(&self) -> &str {
        &self.spec.name
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn identity(&self) -> usize {
        0
    }
    /// Exponent vector of an element.
    pub fn exponents(&self, x: usize) -> &[u32] {
        &self.elements[x]
    }
    /// Element index of each pc-generator.
    pub fn generators(&self) -> &[usize] {
        &self.gen_elems
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cayley[x * self.order + y] as usize
    }
    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    pub fn pow(&self, x: usize, e: u64) -> usize {
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// `(x, y) = x^-1 y^-1 x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let a = self.mul(self.inv(x), self.inv(y));
        self.mul(self.mul(a, x), y)
    }

    pub fn index_of(&self, exps: &[u32]) -> usize {
        let mut idx = 0usize;
        for (i, &e) in exps.iter().enumerate() {
            idx = idx * self.spec.relorders[i] as usize + e as usize;
        }
        idx
    }

    pub fn eval_word(&self, w: &Word) -> usize {
        let mut acc = 0;
        for &(g, e) in &w.0 {
            for _ in 0..e {
                acc = self.mul(acc, self.gen_elems[g]);
            }
        }
        acc
    }

    /// Parse an element written as a word, e.g. `a^2*b`.
    pub fn parse_element(&self, text: &str) -> Result<usize, GroupError> {
        Ok(self.eval_word(&Word::parse(text, &self.spec.gens)?))
    }

    pub fn element_name(&self, x: usize) -> String {
        let w = Word(self.elements[x].iter().enumerate().map(|(g, &e)| (g, e)).collect());
        w.render(&self.spec.gens)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.gen_elems;
        gens.iter()
            .all(|&x| gens.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    /// `Some(p)` when the order is a power of the prime `p` (the trivial group
    /// counts for every p).
    pub fn prime(&self) -> Option<u32> {
        let mut n = self.order;
        if n == 1 {
            return None;
        }
        let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
        while n.is_multiple_of(p) {
            n /= p;
        }
        (n == 1).then_some(p as u32)
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        self.order == 1 || self.prime() == Some(p)
    }

    pub fn check_p_group(&self, p: u32) -> Result<(), GroupError> {
        if self.is_p_group(p) {
            Ok(())
        } else {
            Err(GroupError::NotPGroup { order: self.order, p })
        }
    }

    fn from_table(spec: GroupSpec, elements: Vec<Vec<u32>>, cayley: Vec<u32>) -> Result<Group, GroupError> {
        let order = elements.len();
        let mut inverse = vec![u32::MAX; order];
        for x in 0..order {
            for y in 0..order {
                if cayley[x * order + y] == 0 {
                    if inverse[x] != u32::MAX {
                        return Err(GroupError::RelationViolation("non-unique inverse".into()));
                    }
                    inverse[x] = y as u32;
                }
            }
            if inverse[x] == u32::MAX {
                return Err(GroupError::RelationViolation(format!("element {x} has no inverse")));
            }
        }
        let gen_elems = (0..spec.gens.len())
            .map(|i| {
                let mut e = vec![0u32; spec.gens.len()];
                e[i] = 1 % spec.relorders[i];
                e
            })
            .collect::<Vec<_>>();
        let mut g = Group {
            spec,
            order,
            elements,
            cayley,
            inverse,
            gen_elems: Vec::new(),
        };
        g.gen_elems = gen_elems.iter().map(|e| g.index_of(e)).collect();
        Ok(g)
    }

    /// Exhaustive group-axiom check plus all defining relations.
    fn verify(&self) -> Result<(), GroupError> {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(GroupError::RelationViolation("element 0 is not the identity".into()));
            }
        }
        // associativity against generators implies full associativity for a
        // table defined by right multiplication along normal words
        for &g in &self.gen_elems {
            for x in 0..n {
                for y in 0..n {
                    if self.mul(self.mul(x, y), g) != self.mul(x, self.mul(y, g)) {
                        return Err(GroupError::InconsistentPresentation(format!(
                            "associativity fails at ({}, {}, {})",
                            self.element_name(x),
                            self.element_name(y),
                            self.element_name(g)
                        )));
                    }
                }
            }
        }
        if n <= 64 {
            for x in 0..n {
                for y in 0..n {
                    let xy = self.mul(x, y);
                    for z in 0..n {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return Err(GroupError::InconsistentPresentation("associativity".into()));
                        }
                    }
                }
            }
        }
        let spec = &self.spec;
        for i in 0..spec.gens.len() {
            let gi = self.gen_elems[i];
            if self.pow(gi, spec.relorders[i] as u64) != self.eval_word(&spec.powers[i]) {
                return Err(GroupError::RelationViolation(format!(
                    "power relation of {}",
                    spec.gens[i]
                )));
            }
            for j in i + 1..spec.gens.len() {
                let gj = self.gen_elems[j];
                let want = spec.comms.get(&(j, i)).map(|w| self.eval_word(w)).unwrap_or(0);
                if self.commutator(gj, gi) != want {
                    return Err(GroupError::RelationViolation(format!(
                        "commutator ({}, {})",
                        spec.gens[j], spec.gens[i]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Enumerate normal forms, collect every product and verify the result.
pub fn group_from_spec(spec: &GroupSpec) -> Result<Group, GroupError> {
    spec.validate()?;
    let declared = spec.declared_order();
    if declared > 1 << 16 {
        return Err(GroupError::OrderOverflow(declared as usize));
    }
    let order = declared as usize;
    let n = spec.gens.len();

    let mut elements = Vec::with_capacity(order);
    let mut e = vec![0u32; n];
    for _ in 0..order {
        elements.push(e.clone());
        for i in (0..n).rev() {
            e[i] += 1;
            if e[i] < spec.relorders[i] {
                break;
            }
            e[i] = 0;
        }
    }
    let index_of = |e: &[u32]| {
        let mut idx = 0usize;
        for (i, &x) in e.iter().enumerate() {
            idx = idx * spec.relorders[i] as usize + x as usize;
        }
        idx
    };

    // right multiplication by each pc-generator, by collection
    let mut right = vec![0u32; order * n];
    for (x, ex) in elements.iter().enumerate() {
        for i in 0..n {
            let mut col = Collector::new(spec);
            let mut v = ex.clone();
            col.mul_gen(&mut v, i)?;
            right[x * n + i] = index_of(&v) as u32;
        }
    }

    // the closure of the identity under right multiplication must reach every
    // normal form
    let mut seen = vec![false; order];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for i in 0..n {
            let y = right[x * n + i] as usize;
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    if reached != order {
        return Err(GroupError::OrderMismatch {
            declared: order,
            enumerated: reached,
        });
    }

    let mut cayley = vec![0u32; order * order];
    for x in 0..order {
        for (y, ey) in elements.iter().enumerate() {
            let mut z = x;
            for (i, &k) in ey.iter().enumerate() {
                for _ in 0..k {
                    z = right[z * n + i] as usize;
                }
            }
            cayley[x * order + y] = z as u32;
        }
    }
    let g = Group::from_table(spec.clone(), elements, cayley)?;
    g.verify()?;
    Ok(g)
}

/// Direct product with componentwise multiplication; element `(x, y)` has
/// index `x * |g2| + y`.
pub fn direct_product(g1: &Group, g2: &Group) -> Result<Group, GroupError> {
    direct_product_bounded(g1, g2, DEFAULT_MAX_ORDER)
}

pub fn direct_product_bounded(g1: &Group, g2: &Group, max_order: usize) -> Result<Group, GroupError> {
    let order = g1.order * g2.order;
    if order > max_order {
        return Err(GroupError::OrderOverflow(order));
    }
    let spec = g1.spec.product(&g2.spec);
    let (n1, n2) = (g1.order, g2.order);
    let elements: Vec<Vec<u32>> = (0..order)
        .map(|z| {
            let mut e = g1.elements[z / n2].clone();
            e.extend(&g2.elements[z % n2]);
            e
        })
        .collect();
    let mut cayley = vec![0u32; order * order];
    for a in 0..order {
        let (x1, y1) = (a / n2, a % n2);
        for b in 0..order {
            let (x2, y2) = (b / n2, b % n2);
            cayley[a * order + b] = (g1.mul(x1, x2) * n2 + g2.mul(y1, y2)) as u32;
        }
    }
    let _ = n1;
    let g = Group::from_table(spec, elements, cayley)?;
    g.verify()?;
    Ok(g)
}
