//! Named presentations for every group the library knows by label.
//!
//! Generators are ordered so that power and commutator words only involve
//! later generators; relations stated in another order are rewritten with
//! `(x, y) = (y, x)^-1`.

use super::{GroupError, GroupSpec};

/// Numeric parameters for the parametrised families.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CatalogParams {
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub p: Option<u32>,
}

impl CatalogParams {
    pub fn none() -> Self {
        Self::default()
    }
}

fn pc(name: &str, gens: &[(&str, u32, &str)], comms: &[(&str, &str, &str)]) -> GroupSpec {
    let mut text = format!("name {name}\n");
    for (g, q, pw) in gens {
        let pw = if pw.is_empty() { "1" } else { pw };
        text.push_str(&format!("gen {g} order {q} power {pw}\n"));
    }
    for (x, y, w) in comms {
        text.push_str(&format!("comm {x} {y} {w}\n"));
    }
    GroupSpec::parse_text(&text).expect("catalog presentation is well formed")
}

fn log2_exact(order: u32, min: u32, label: &str) -> Result<u32, GroupError> {
    if order.is_power_of_two() && order.trailing_zeros() >= min && order.trailing_zeros() <= 8 {
        Ok(order.trailing_zeros())
    } else {
        Err(GroupError::BadParams(format!(
            "{label} needs a power of two between 2^{min} and 2^8"
        )))
    }
}

fn cyclic(n: u32) -> Result<GroupSpec, GroupError> {
    if !(2..=1 << 12).contains(&n) {
        return Err(GroupError::BadParams(format!("C_{n}")));
    }
    Ok(pc(&format!("C_{n}"), &[("x", n, "")], &[]))
}

fn dihedral(order: u32) -> Result<GroupSpec, GroupError> {
    let n = log2_exact(order, 3, "D")?;
    let half = 1 << (n - 1);
    Ok(pc(
        &format!("D_{order}"),
        &[("b", 2, ""), ("a", half, "")],
        &[("a", "b", &format!("a^{}", half - 2))],
    ))
}

fn quaternion(order: u32) -> Result<GroupSpec, GroupError> {
    let n = log2_exact(order, 3, "Q")?;
    let half = 1 << (n - 1);
    Ok(pc(
        &format!("Q_{order}"),
        &[("b", 2, &format!("a^{}", half / 2)), ("a", half, "")],
        &[("a", "b", &format!("a^{}", half - 2))],
    ))
}

fn semidihedral(order: u32) -> Result<GroupSpec, GroupError> {
    let n = log2_exact(order, 4, "SD")?;
    let half = 1 << (n - 1);
    Ok(pc(
        &format!("SD_{order}"),
        &[("b", 2, ""), ("a", half, "")],
        &[("a", "b", &format!("a^{}", half / 2 - 2))],
    ))
}

fn modular(order: u32) -> Result<GroupSpec, GroupError> {
    let n = log2_exact(order, 4, "MD")?;
    let half = 1 << (n - 1);
    Ok(pc(
        &format!("MD_{order}"),
        &[("b", 2, ""), ("a", half, "")],
        &[("a", "b", &format!("a^{}", half / 2))],
    ))
}

fn h1(p: u32) -> Result<GroupSpec, GroupError> {
    if !crate::field::is_prime(p) || p <= 3 || p > 13 {
        return Err(GroupError::BadParams(format!("H_1 needs a prime 3 < p <= 13, got {p}")));
    }
    Ok(pc(
        &format!("H_1[p={p}]"),
        &[("c", p, ""), ("a", p, ""), ("d", p, ""), ("f", p, "")],
        &[("a", "c", "d"), ("d", "c", "f")],
    ))
}

fn h2(p: u32) -> Result<GroupSpec, GroupError> {
    if !crate::field::is_prime(p) || !(3..=13).contains(&p) {
        return Err(GroupError::BadParams(format!(
            "H_2 needs an odd prime p <= 13, got {p}"
        )));
    }
    Ok(pc(
        &format!("H_2[p={p}]"),
        &[("c", p, ""), ("a", p, ""), ("d", p, ""), ("h", p, "")],
        &[("a", "c", "d")],
    ))
}

fn family_t2(n: u32, m: u32) -> Result<GroupSpec, GroupError> {
    if n < 2 || m < 2 || n + m > 7 {
        return Err(GroupError::BadParams(format!(
            "T2 needs n, m >= 2 and n + m <= 7, got n={n} m={m}"
        )));
    }
    Ok(pc(
        &format!("T2[n={n},m={m}]"),
        &[("b", 1 << m, ""), ("a", 1 << n, ""), ("c", 2, "")],
        &[("a", "b", "c")],
    ))
}

fn family_t3(n: u32) -> Result<GroupSpec, GroupError> {
    if !(2..=5).contains(&n) {
        return Err(GroupError::BadParams(format!("T3 needs 2 <= n <= 5, got {n}")));
    }
    Ok(pc(
        &format!("T3[n={n}]"),
        &[("b", 2, ""), ("a", 1 << n, ""), ("c", 2, ""), ("d", 2, "")],
        &[("a", "b", "c"), ("c", "a", "d")],
    ))
}

fn h16() -> GroupSpec {
    pc("H_16", &[("a", 4, ""), ("c", 2, ""), ("b", 2, "")], &[("c", "a", "b")])
}

fn d8yc4() -> GroupSpec {
    pc(
        "D8YC4",
        &[("b", 2, ""), ("c", 2, "a^2"), ("a", 4, "")],
        &[("a", "b", "a^2")],
    )
}

fn named(label: &str, spec: Result<GroupSpec, GroupError>) -> Result<GroupSpec, GroupError> {
    spec.map(|mut s| {
        s.name = label.to_string();
        s
    })
}

fn product_of(label: &str, parts: &[GroupSpec]) -> GroupSpec {
    let mut spec = parts[0].clone();
    for s in &parts[1..] {
        spec = spec.product(s);
    }
    spec.name = label.to_string();
    spec
}

fn order32(i: u32) -> Result<GroupSpec, GroupError> {
    let label = format!("G_{i}");
    let l = label.as_str();
    let c2 = || cyclic(2).unwrap();
    let c4 = || cyclic(4).unwrap();
    let spec = match i {
        2 => named(l, family_t2(2, 2))?,
        4 => pc(l, &[("b", 4, ""), ("a", 8, "")], &[("a", "b", "a^4")]),
        5 => pc(l, &[("b", 2, ""), ("a", 8, ""), ("c", 2, "")], &[("a", "b", "c")]),
        6 => named(l, family_t3(2))?,
        7 => pc(
            l,
            &[("b", 2, ""), ("c", 2, ""), ("a", 8, "")],
            &[("a", "c", "a^4"), ("a", "b", "c*a^4")],
        ),
        8 => pc(
            l,
            &[("b", 2, "a^4"), ("c", 2, ""), ("a", 8, "")],
            &[("a", "c", "a^4"), ("a", "b", "c*a^4")],
        ),
        9 => pc(l, &[("c", 2, ""), ("b", 8, ""), ("a", 2, "")], &[("b", "c", "b^6*a")]),
        10 => pc(
            l,
            &[("b", 2, "a^4"), ("a", 8, ""), ("c", 2, "")],
            &[("a", "b", "a^6*c")],
        ),
        11 => pc(l, &[("c", 2, ""), ("b", 4, ""), ("a", 4, "")], &[("b", "c", "b^2*a")]),
        12 => pc(l, &[("b", 8, ""), ("a", 4, "")], &[("a", "b", "a^2")]),
        13 => pc(l, &[("b", 4, ""), ("a", 8, "")], &[("a", "b", "a^2")]),
        14 => pc(l, &[("b", 4, ""), ("a", 8, "")], &[("a", "b", "a^6")]),
        15 => pc(l, &[("b", 4, "a^4"), ("a", 8, "")], &[("a", "b", "a^6")]),
        17 => named(l, modular(32))?,
        18 => named(l, dihedral(32))?,
        19 => named(l, semidihedral(32))?,
        20 => named(l, quaternion(32))?,
        22 => product_of(l, &[h16(), c2()]),
        23 => pc(l, &[("b", 4, ""), ("a", 4, ""), ("c", 2, "")], &[("a", "b", "a^2")]),
        24 => pc(l, &[("c", 2, ""), ("b", 4, ""), ("a", 4, "")], &[("b", "c", "a^2")]),
        25 => product_of(l, &[dihedral(8)?, c4()]),
        26 => product_of(l, &[quaternion(8)?, c4()]),
        27 => pc(
            l,
            &[("c", 2, ""), ("a", 2, ""), ("b", 2, ""), ("d", 2, ""), ("e", 2, "")],
            &[("a", "c", "d"), ("b", "c", "e")],
        ),
        28 => pc(
            l,
            &[("c", 2, ""), ("a", 4, ""), ("b", 2, ""), ("d", 2, "")],
            &[("a", "c", "a^2"), ("b", "c", "d")],
        ),
        29 => pc(
            l,
            &[("c", 2, "a^2"), ("a", 4, ""), ("b", 2, ""), ("d", 2, "")],
            &[("a", "c", "a^2"), ("b", "c", "d")],
        ),
        30 => pc(
            l,
            &[("c", 2, ""), ("a", 4, ""), ("b", 2, ""), ("d", 2, "")],
            &[("a", "c", "d"), ("b", "c", "a^2")],
        ),
        31 => pc(
            l,
            &[("c", 2, ""), ("a", 4, ""), ("b", 4, "")],
            &[("a", "c", "a^2"), ("b", "c", "a^2*b^2")],
        ),
        32 => pc(
            l,
            &[("c", 2, "a^2*b^2"), ("a", 4, ""), ("b", 4, "")],
            &[("a", "c", "a^2"), ("b", "c", "a^2*b^2")],
        ),
        33 => pc(
            l,
            &[("c", 2, ""), ("a", 4, ""), ("b", 4, "")],
            &[("b", "c", "a^2"), ("a", "c", "a^2*b^2")],
        ),
        34 => pc(
            l,
            &[("c", 2, ""), ("a", 4, ""), ("b", 4, "")],
            &[("b", "c", "b^2"), ("a", "c", "a^2")],
        ),
        35 => pc(
            l,
            &[("c", 2, "a^2"), ("a", 4, ""), ("b", 4, "")],
            &[("b", "c", "b^2"), ("a", "c", "a^2")],
        ),
        37 => product_of(l, &[modular(16)?, c2()]),
        38 => pc(l, &[("c", 2, ""), ("b", 2, ""), ("a", 8, "")], &[("b", "c", "a^4")]),
        39 => product_of(l, &[dihedral(16)?, c2()]),
        40 => product_of(l, &[semidihedral(16)?, c2()]),
        41 => product_of(l, &[quaternion(16)?, c2()]),
        42 => pc(
            l,
            &[("b", 2, "a^4"), ("c", 2, "a^4"), ("a", 8, "")],
            &[("a", "b", "a^6")],
        ),
        43 => pc(
            l,
            &[("b", 2, ""), ("c", 2, ""), ("a", 8, "")],
            &[("a", "b", "a^6"), ("a", "c", "a^4")],
        ),
        44 => pc(
            l,
            &[("b", 2, "a^4"), ("c", 2, ""), ("a", 8, "")],
            &[("a", "c", "a^4"), ("a", "b", "a^6")],
        ),
        46 => product_of(l, &[dihedral(8)?, c2(), c2()]),
        47 => product_of(l, &[quaternion(8)?, c2(), c2()]),
        48 => product_of(l, &[d8yc4(), c2()]),
        49 => pc(
            l,
            &[("b", 2, "a^2"), ("c", 2, "a^2"), ("d", 2, "a^2"), ("a", 4, "")],
            &[("a", "b", "a^2"), ("d", "c", "a^2")],
        ),
        50 => pc(
            l,
            &[("b", 2, ""), ("c", 2, ""), ("d", 2, "a^2"), ("a", 4, "")],
            &[("c", "b", "a^2"), ("d", "c", "a^2"), ("a", "d", "a^2")],
        ),
        _ => return Err(GroupError::UnknownLabel(label)),
    };
    Ok(spec)
}

/// Indices of the order-32 groups that have a presentation here.
pub const ORDER32_INDICES: &[u32] = &[
    2, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 17, 18, 19, 20, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31, 32, 33, 34,
    35, 37, 38, 39, 40, 41, 42, 43, 44, 46, 47, 48, 49, 50,
];

fn squash(s: &str) -> String {
    s.chars()
        .filter(|c| !matches!(c, '_' | '{' | '}' | ' '))
        .collect::<String>()
}

// Splits "H_1[p=5]" / "H1(5)" into ("H1", params).
fn split_params(atom: &str, params: &CatalogParams) -> Result<(String, CatalogParams), GroupError> {
    let atom = atom.trim();
    let Some(open) = atom.find(['[', '(']) else {
        return Ok((squash(atom), *params));
    };
    let close = atom
        .rfind([']', ')'])
        .ok_or_else(|| GroupError::UnknownLabel(atom.to_string()))?;
    let head = squash(&atom[..open]);
    let mut out = *params;
    let positional: &[&str] = match head.to_ascii_uppercase().as_str() {
        "H1" | "H2" => &["p"],
        "T2" => &["n", "m"],
        _ => &["n"],
    };
    for (k, item) in atom[open + 1..close]
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .enumerate()
    {
        let (key, val) = match item.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => (
                *positional
                    .get(k)
                    .ok_or_else(|| GroupError::UnknownLabel(atom.to_string()))?,
                item.trim(),
            ),
        };
        let v: u32 = val.parse().map_err(|_| GroupError::BadParams(format!("{key}={val}")))?;
        match key {
            "n" => out.n = Some(v),
            "m" => out.m = Some(v),
            "p" => out.p = Some(v),
            _ => return Err(GroupError::BadParams(format!("unknown parameter {key}"))),
        }
    }
    Ok((head, out))
}

fn need(v: Option<u32>, what: &str, label: &str) -> Result<u32, GroupError> {
    v.ok_or_else(|| GroupError::BadParams(format!("{label} needs --{what}")))
}

fn lookup_atom(atom: &str, params: &CatalogParams) -> Result<GroupSpec, GroupError> {
    let (head, params) = split_params(atom, params)?;
    let up = head.to_ascii_uppercase();
    let unknown = || GroupError::UnknownLabel(atom.trim().to_string());
    let num = |prefix: &str| -> Option<u32> { up.strip_prefix(prefix).and_then(|r| r.parse().ok()) };
    match up.as_str() {
        "H16" => return Ok(h16()),
        "D8YC4" => return Ok(d8yc4()),
        "H1" => return h1(need(params.p, "p", "H_1")?),
        "H2" => return h2(need(params.p, "p", "H_2")?),
        "T2" | "G" if params.m.is_some() => return family_t2(need(params.n, "n", "T2")?, need(params.m, "m", "T2")?),
        "T3" | "G" => return family_t3(need(params.n, "n", "T3")?),
        "C" => return cyclic(need(params.n, "n", "C")?),
        _ => {}
    }
    // order-suffixed families; MD and SD before D
    if let Some(k) = num("MD") {
        return modular(k);
    }
    if let Some(k) = num("SD") {
        return semidihedral(k);
    }
    if let Some(k) = num("D") {
        return dihedral(k);
    }
    if let Some(k) = num("Q") {
        return quaternion(k);
    }
    if let Some(k) = num("C") {
        return cyclic(k);
    }
    if let Some(k) = num("G") {
        return order32(k);
    }
    Err(unknown())
}

/// Resolve a label such as `D_8`, `H_1[p=5]`, `G_23` or `D_8 x C_2`.
/// Parameters fill in whatever the label leaves open.
pub fn catalog_lookup(name: &str, params: &CatalogParams) -> Result<GroupSpec, GroupError> {
    let normalized = name.replace('×', " x ");
    let atoms: Vec<&str> = normalized
        .split(" x ")
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if atoms.is_empty() {
        return Err(GroupError::UnknownLabel(name.to_string()));
    }
    let specs = atoms
        .iter()
        .map(|a| lookup_atom(a, params))
        .collect::<Result<Vec<_>, _>>()?;
    if specs.len() == 1 {
        return Ok(specs.into_iter().next().unwrap());
    }
    let label = specs.iter().map(|s| s.name.clone()).collect::<Vec<_>>().join(" x ");
    Ok(product_of(&label, &specs))
}

/// The canonical spelling of a label, e.g. `d8 x c2` becomes `D_8 x C_2`.
pub fn canonical_label(name: &str, params: &CatalogParams) -> Result<String, GroupError> {
    catalog_lookup(name, params).map(|s| s.name)
}

/// Family names accepted by [`catalog_lookup`], for help output.
pub fn catalog_labels() -> Vec<String> {
    let mut out: Vec<String> = [
        "C_n", "D_{2^n}", "Q_{2^n}", "SD_{2^n}", "MD_{2^n}", "H_16", "D8YC4", "H_1[p]", "H_2[p]", "T2[n,m]", "T3[n]",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    out.extend(ORDER32_INDICES.iter().map(|i| format!("G_{i}")));
    out
}

/// Every concrete group exercised by the self test, paired with its
/// natural characteristic.
pub fn catalog_instances() -> Vec<(String, u32)> {
    let mut out: Vec<(String, u32)> = [
        "C_2",
        "C_4",
        "C_8",
        "C_16",
        "C_2 x C_2",
        "C_4 x C_2",
        "C_4 x C_4",
        "C_2 x C_2 x C_2",
        "C_8 x C_2",
        "C_4 x C_2 x C_2",
        "C_2 x C_2 x C_2 x C_2",
        "D_8",
        "D_16",
        "D_32",
        "Q_8",
        "Q_16",
        "Q_32",
        "SD_16",
        "SD_32",
        "MD_16",
        "MD_32",
        "H_16",
        "D8YC4",
        "D_8 x C_2",
        "Q_8 x C_2",
        "T2[n=2,m=2]",
        "T2[n=2,m=3]",
        "T2[n=3,m=2]",
        "T3[n=2]",
        "T3[n=3]",
    ]
    .iter()
    .map(|s| (s.to_string(), 2))
    .collect();
    out.extend(ORDER32_INDICES.iter().map(|i| (format!("G_{i}"), 2)));
    for s in ["C_3", "C_9", "C_3 x C_3", "C_9 x C_3", "C_3 x C_3 x C_3", "H_2[p=3]"] {
        out.push((s.to_string(), 3));
    }
    for s in ["C_5", "C_5 x C_5", "H_1[p=5]", "H_2[p=5]"] {
        out.push((s.to_string(), 5));
    }
    out
}
