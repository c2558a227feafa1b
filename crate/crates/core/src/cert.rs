//! Line-oriented certificate files.
//!
//! ```text
//! FMB-CERT v1
//! field p=2 k=1 modulus=0,1
//! group inline
//! name C_2
//! gen a order 2 power 1
//! endgroup
//! order 2
//! 1 0
//! 1 1
//! verdict basis
//! ```
//!
//! `group <label>` instead of an inline block names a catalog group. Writers
//! always embed the presentation so a certificate verifies on its own.

use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::algebra::AlgebraElement;
use crate::field::{field_make, FieldSpec};
use crate::pgroup::{catalog_lookup, CatalogParams, GroupSpec};
use crate::verify::BasisCandidate;

pub const CERT_MAGIC: &str = "FMB-CERT";
pub const CERT_VERSION: &str = "v1";

#[derive(Debug, Error)]
pub enum CertError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unsupported certificate version {0:?}")]
    VersionMismatch(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertVerdict {
    Basis,
    /// Points at an obstruction report; the body is empty.
    NonExistence {
        report: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub field: FieldSpec,
    pub group: GroupSpec,
    pub order: usize,
    pub elements: Vec<AlgebraElement>,
    pub verdict: CertVerdict,
}

impl Certificate {
    pub fn basis(field: &FieldSpec, group: &GroupSpec, cand: &BasisCandidate) -> Certificate {
        Certificate {
            field: field.clone(),
            group: group.clone(),
            order: group.declared_order() as usize,
            elements: cand.elements.clone(),
            verdict: CertVerdict::Basis,
        }
    }

    pub fn candidate(&self) -> BasisCandidate {
        BasisCandidate::new(self.elements.clone(), format!("certificate for {}", self.group.name))
    }

    pub fn serialize(&self) -> String {
        let mut out = format!(
            "{CERT_MAGIC} {CERT_VERSION}\n{}\ngroup inline\n",
            self.field.header_line()
        );
        out.push_str(&self.group.to_text());
        out.push_str("endgroup\n");
        out.push_str(&format!("order {}\n", self.order));
        for e in &self.elements {
            out.push_str(&e.to_tokens(&self.field));
            out.push('\n');
        }
        match &self.verdict {
            CertVerdict::Basis => out.push_str("verdict basis\n"),
            CertVerdict::NonExistence { report } => out.push_str(&format!("verdict nonexistence {report}\n")),
        }
        out
    }

    pub fn parse(text: &str) -> Result<Certificate, CertError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let mut next = |what: &str| {
            lines.next().ok_or_else(|| CertError::Parse {
                line: text.lines().count() + 1,
                msg: format!("unexpected end of file, expected {what}"),
            })
        };
        let err = |line: usize, msg: String| CertError::Parse { line, msg };

        let (ln, magic) = next("header")?;
        match magic.split_once(' ') {
            Some((CERT_MAGIC, CERT_VERSION)) => {}
            Some((CERT_MAGIC, v)) => return Err(CertError::VersionMismatch(v.to_string())),
            _ => return Err(err(ln, format!("not a certificate: {magic:?}"))),
        }

        let (ln, fline) = next("field line")?;
        let field = parse_field_line(fline).map_err(|m| err(ln, m))?;

        let (ln, gline) = next("group line")?;
        let label = gline
            .strip_prefix("group ")
            .ok_or_else(|| err(ln, format!("expected group line, got {gline:?}")))?
            .trim();
        let group = if label == "inline" {
            let mut body = String::new();
            loop {
                let (_, l) = next("endgroup")?;
                if l == "endgroup" {
                    break;
                }
                body.push_str(l);
                body.push('\n');
            }
            GroupSpec::parse_text(&body).map_err(|e| err(ln, format!("inline group: {e}")))?
        } else {
            catalog_lookup(label, &CatalogParams::none()).map_err(|e| err(ln, e.to_string()))?
        };

        let (ln, oline) = next("order line")?;
        let order: usize = oline
            .strip_prefix("order ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| err(ln, format!("expected order line, got {oline:?}")))?;
        if order as u128 != group.declared_order() {
            return Err(err(
                ln,
                format!("order {order} but the group has order {}", group.declared_order()),
            ));
        }

        let mut elements = Vec::new();
        let verdict = loop {
            let (ln, l) = next("verdict line")?;
            if let Some(v) = l.strip_prefix("verdict ") {
                let v = v.trim();
                break if v == "basis" {
                    CertVerdict::Basis
                } else if let Some(r) = v.strip_prefix("nonexistence") {
                    CertVerdict::NonExistence {
                        report: r.trim().to_string(),
                    }
                } else {
                    return Err(err(ln, format!("unknown verdict {v:?}")));
                };
            }
            let coeffs = l
                .split_whitespace()
                .map(|t| field.parse_token(t).map(|x| x.0))
                .collect::<Option<Vec<u8>>>()
                .ok_or_else(|| err(ln, "bad field token".to_string()))?;
            if coeffs.len() != order {
                return Err(err(ln, format!("{} tokens, expected {order}", coeffs.len())));
            }
            elements.push(AlgebraElement { coeffs });
        };
        if verdict == CertVerdict::Basis && elements.len() != order {
            return Err(err(0, format!("{} elements, expected {order}", elements.len())));
        }
        if let Some((ln, l)) = lines.find(|(_, l)| !l.is_empty()) {
            return Err(err(ln, format!("trailing content {l:?}")));
        }
        Ok(Certificate {
            field,
            group,
            order,
            elements,
            verdict,
        })
    }
}

fn parse_field_line(line: &str) -> Result<FieldSpec, String> {
    let rest = line
        .strip_prefix("field ")
        .ok_or_else(|| format!("expected field line, got {line:?}"))?;
    let (mut p, mut k, mut modulus) = (None, None, None);
    for part in rest.split_whitespace() {
        match part.split_once('=') {
            Some(("p", v)) => p = v.parse::<u32>().ok(),
            Some(("k", v)) => k = v.parse::<u32>().ok(),
            Some(("modulus", v)) => modulus = v.split(',').map(|c| c.parse::<u8>().ok()).collect::<Option<Vec<u8>>>(),
            _ => return Err(format!("unknown field attribute {part:?}")),
        }
    }
    let p = p.ok_or("missing p")?;
    let k = k.ok_or("missing k")?;
    field_make(p, k, modulus.as_deref()).map_err(|e| e.to_string())
}

pub fn cert_write(path: &Path, cert: &Certificate) -> Result<(), CertError> {
    fs::write(path, cert.serialize())?;
    Ok(())
}

pub fn cert_read(path: &Path) -> Result<Certificate, CertError> {
    Certificate::parse(&fs::read_to_string(path)?)
}
