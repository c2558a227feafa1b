use std::collections::BTreeMap;
use std::fmt;

use super::GroupError;

/// A word in the pc-generators: `(generator index, exponent)` pairs read left
/// to right. Need not be in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<(usize, u32)>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 0)
    }

    pub fn min_generator(&self) -> Option<usize> {
        self.0.iter().filter(|&&(_, e)| e > 0).map(|&(g, _)| g).min()
    }

    /// Parse `a^2*b*c^3`; `1` or the empty string is the identity.
    pub fn parse(text: &str, gens: &[String]) -> Result<Word, GroupError> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: u32 = e.trim().parse().map_err(|_| GroupError::BadWord(text.to_string()))?;
                    (n.trim(), e)
                }
                None => (factor, 1),
            };
            let idx = gens
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| GroupError::UnknownGenerator(name.to_string()))?;
            letters.push((idx, exp));
        }
        Ok(Word(letters))
    }

    pub fn render(&self, gens: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .filter(|&&(_, e)| e > 0)
            .map(|&(g, e)| {
                if e == 1 {
                    gens[g].clone()
                } else {
                    format!("{}^{}", gens[g], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// A power-commutator presentation.
///
/// Generator `i` satisfies `g_i^{relorders[i]} = powers[i]`, a word in the
/// generators after `i`. For `i < j`, `comms[(j, i)]` is the commutator
/// `(g_j, g_i) = g_j^{-1} g_i^{-1} g_j g_i`, a word in the generators after
/// `i`; missing pairs commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub gens: Vec<String>,
    pub relorders: Vec<u32>,
    pub powers: Vec<Word>,
    pub comms: BTreeMap<(usize, usize), Word>,
}

impl GroupSpec {
    pub fn declared_order(&self) -> u128 {
        self.relorders.iter().map(|&q| q as u128).product()
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let n = self.gens.len();
        if n == 0 {
            return Err(GroupError::Malformed("no generators".into()));
        }
        if self.relorders.len() != n || self.powers.len() != n {
            return Err(GroupError::Malformed(
                "generator, order and power lists differ in length".into(),
            ));
        }
        for (i, name) in self.gens.iter().enumerate() {
            if name.is_empty() || self.gens[..i].contains(name) {
                return Err(GroupError::Malformed(format!(
                    "bad or repeated generator name {name:?}"
                )));
            }
        }
        for (i, &q) in self.relorders.iter().enumerate() {
            if q < 2 {
                return Err(GroupError::Malformed(format!(
                    "generator {} has relative order {q}",
                    self.gens[i]
                )));
            }
            if let Some(g) = self.powers[i].min_generator() {
                if g <= i {
                    return Err(GroupError::Malformed(format!(
                        "power of {} uses an earlier generator",
                        self.gens[i]
                    )));
                }
            }
        }
        for (&(j, i), w) in &self.comms {
            if !(i < j && j < n) {
                return Err(GroupError::Malformed(format!("commutator key ({j},{i}) out of order")));
            }
            if let Some(g) = w.min_generator() {
                if g <= i {
                    return Err(GroupError::Malformed(format!(
                        "commutator ({}, {}) uses a generator not after {}",
                        self.gens[j], self.gens[i], self.gens[i]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Parse the line format
    ///
    /// ```text
    /// gen a order 4 power 1
    /// gen c order 2 power
    /// gen b order 2 power 1
    /// comm c a b
    /// ```
    ///
    /// Blank lines and `#` comments are ignored. An optional `name <label>`
    /// line sets the group name.
    pub fn parse_text(text: &str) -> Result<GroupSpec, GroupError> {
        let mut name = String::from("inline");
        let mut gens = Vec::new();
        let mut relorders = Vec::new();
        let mut power_text = Vec::new();
        let mut comm_text = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = || GroupError::Parse {
                line: lineno + 1,
                msg: format!("cannot parse {line:?}"),
            };
            match toks[0] {
                "name" if toks.len() >= 2 => name = toks[1..].join(" "),
                "gen" => {
                    if toks.len() < 4 || toks[2] != "order" {
                        return Err(bad());
                    }
                    let q: u32 = toks[3].parse().map_err(|_| bad())?;
                    let pw = match toks.get(4) {
                        Some(&"power") => toks.get(5).copied().unwrap_or("1"),
                        None => "1",
                        Some(_) => return Err(bad()),
                    };
                    gens.push(toks[1].to_string());
                    relorders.push(q);
                    power_text.push(pw.to_string());
                }
                "comm" => {
                    if toks.len() != 4 {
                        return Err(bad());
                    }
                    comm_text.push((
                        lineno + 1,
                        toks[1].to_string(),
                        toks[2].to_string(),
                        toks[3].to_string(),
                    ));
                }
                _ => return Err(bad()),
            }
        }
        let powers = power_text
            .iter()
            .map(|w| Word::parse(w, &gens))
            .collect::<Result<Vec<_>, _>>()?;
        let mut comms = BTreeMap::new();
        for (line, gj, gi, w) in comm_text {
            let pos = |n: &str| {
                gens.iter().position(|g| g == n).ok_or_else(|| GroupError::Parse {
                    line,
                    msg: format!("unknown generator {n}"),
                })
            };
            let (j, i) = (pos(&gj)?, pos(&gi)?);
            let word = Word::parse(&w, &gens)?;
            if !word.is_identity() {
                comms.insert((j, i), word);
            }
        }
        let spec = GroupSpec {
            name,
            gens,
            relorders,
            powers,
            comms,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("name {}\n", self.name);
        for i in 0..self.gens.len() {
            out.push_str(&format!(
                "gen {} order {} power {}\n",
                self.gens[i],
                self.relorders[i],
                self.powers[i].render(&self.gens)
            ));
        }
        for (&(j, i), w) in &self.comms {
            out.push_str(&format!(
                "comm {} {} {}\n",
                self.gens[j],
                self.gens[i],
                w.render(&self.gens)
            ));
        }
        out
    }

    /// Presentation of the direct product, generators of later factors
    /// renamed on collision.
    pub fn product(&self, other: &GroupSpec) -> GroupSpec {
        let offset = self.gens.len();
        let mut gens = self.gens.clone();
        for g in &other.gens {
            let mut cand = g.clone();
            let mut k = 2;
            while gens.contains(&cand) {
                cand = format!("{g}{k}");
                k += 1;
            }
            gens.push(cand);
        }
        let shift = |w: &Word| Word(w.0.iter().map(|&(g, e)| (g + offset, e)).collect());
        let mut relorders = self.relorders.clone();
        relorders.extend(&other.relorders);
        let mut powers = self.powers.clone();
        powers.extend(other.powers.iter().map(shift));
        let mut comms = self.comms.clone();
        for (&(j, i), w) in &other.comms {
            comms.insert((j + offset, i + offset), shift(w));
        }
        GroupSpec {
            name: format!("{} x {}", self.name, other.name),
            gens,
            relorders,
            powers,
            comms,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}
