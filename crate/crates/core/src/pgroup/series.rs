use super::{Group, GroupError};

/// Sorted element indices of a subset of a group.
pub type ElementSet = Vec<usize>;

/// Descending chain of subgroups, first the whole group, last `{1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupChain {
    pub terms: Vec<ElementSet>,
}

impl SubgroupChain {
    /// Term `i` with 1-based numbering; past the end the trivial subgroup.
    pub fn term(&self, i: usize) -> &[usize] {
        assert!(i >= 1);
        self.terms.get(i - 1).unwrap_or_else(|| self.terms.last().unwrap())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Closure of `{1}` under right multiplication by the seeds. In a finite
/// group this is the generated subgroup.
pub fn subgroup_generated(g: &Group, seeds: &[usize]) -> ElementSet {
    let mut member = vec![false; g.order()];
    member[0] = true;
    let mut gens: Vec<usize> = seeds.iter().copied().filter(|&s| s != 0).collect();
    gens.sort_unstable();
    gens.dedup();
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        for &s in &gens {
            let y = g.mul(x, s);
            if !member[y] {
                member[y] = true;
                stack.push(y);
            }
        }
    }
    (0..g.order()).filter(|&x| member[x]).collect()
}

fn mask(g: &Group, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; g.order()];
    for &x in set {
        m[x] = true;
    }
    m
}

// Adds seeds to a generating list only when not already in the span so far.
fn generate_lazily(g: &Group, seeds: impl Iterator<Item = usize>) -> ElementSet {
    let mut gens = Vec::new();
    let mut current = mask(g, &[0]);
    let mut set = vec![0];
    for s in seeds {
        if !current[s] {
            gens.push(s);
            set = subgroup_generated(g, &gens);
            current = mask(g, &set);
        }
    }
    set
}

/// `M_1 = G`, `M_i = <(M_{i-1}, G), M_{ceil(i/p)}^p>` until the trivial group.
pub fn lazard_series(g: &Group, p: u32) -> Result<SubgroupChain, GroupError> {
    g.check_p_group(p)?;
    let all: ElementSet = (0..g.order()).collect();
    let mut terms = vec![all];
    while terms.last().unwrap().len() > 1 {
        let i = terms.len() + 1;
        let prev = &terms[i - 2];
        let root = &terms[i.div_ceil(p as usize) - 1];
        let comms = prev
            .iter()
            .flat_map(|&x| (0..g.order()).map(move |y| (x, y)))
            .map(|(x, y)| g.commutator(x, y));
        let powers = root.iter().map(|&x| g.pow(x, p as u64));
        let next = generate_lazily(g, powers.chain(comms));
        if terms.len() > 64 {
            return Err(GroupError::InconsistentPresentation(
                "Lazard series does not terminate".into(),
            ));
        }
        terms.push(next);
    }
    Ok(SubgroupChain { terms })
}

/// For p = 2 whether G/G^4 is abelian, for odd p whether G/G^p is.
pub fn is_powerful(g: &Group, p: u32) -> Result<bool, GroupError> {
    g.check_p_group(p)?;
    let e = if p == 2 { 4 } else { p as u64 };
    let powers = subgroup_generated(g, &(0..g.order()).map(|x| g.pow(x, e)).collect::<Vec<_>>());
    let inside = mask(g, &powers);
    let gens = g.generators();
    Ok(gens.iter().all(|&x| gens.iter().all(|&y| inside[g.commutator(x, y)])))
}
