//! The `fmb` command line.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use fmb_core::algebra::{congruence_checks, dimension_subgroup, radical_filtration};
use fmb_core::cert::{cert_read, cert_write, CertVerdict, Certificate};
use fmb_core::constructions::{construct_named, ConstructionError};
use fmb_core::jennings::{jennings_crosscheck, jennings_profile};
use fmb_core::obstruction::{obstruct, ObstructionVerdict, DEFAULT_OBSTRUCT_BUDGET};
use fmb_core::pgroup::{canonical_label, catalog_instances, catalog_labels, lazard_series};
use fmb_core::search::{dfs_search, SearchConfig, SearchOutcome, DEFAULT_SEARCH_BUDGET};
use fmb_core::verify::verify_fm_basis;
use fmb_core::{catalog_lookup, field_make, group_from_spec, CatalogParams, FieldSpec, Group, GroupSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Environment variable overriding the default node budgets.
pub const BUDGET_ENV: &str = "FMB_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "fmb",
    version,
    about = "Filtered multiplicative bases of modular p-group algebras"
)]
struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog families and instances, or print one presentation.
    Catalog {
        group: Option<String>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Jennings layer sizes, radical layer dimensions and their cross-check.
    Dims(GroupArgs),
    /// Lazard series layers with representatives.
    Profile(GroupArgs),
    /// Build a basis for a named family and write its certificate.
    Construct {
        family: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a basis certificate.
    Verify { certificate: PathBuf },
    /// Exhaustive search for a basis.
    Search {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        budget: Option<u64>,
        /// Ignore the budget.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Try to certify that no basis exists, working modulo A^m.
    Obstruct {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 3)]
        trunc: usize,
        #[arg(long)]
        budget: Option<u64>,
        /// Report file; printed when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Jennings cross-check, dimension subgroups and commutator identities over the catalog.
    Selftest,
}

#[derive(Args, Debug, Clone, Default)]
struct ParamArgs {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
}

impl ParamArgs {
    fn catalog(&self) -> CatalogParams {
        CatalogParams {
            n: self.n,
            m: self.m,
            p: self.p,
        }
    }
}

#[derive(Args, Debug, Clone, Default)]
struct FieldArgs {
    /// `p=2`, `p=2,k=2`, ...; defaults to the prime field of the group.
    #[arg(long)]
    field: Option<String>,
    /// Modulus coefficients, low degree first, e.g. `1,1,1`.
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// Catalog label such as `D_8`, `H_2` (with `--p`) or `G_23`.
    group: Option<String>,
    #[arg(long, conflicts_with = "group")]
    group_file: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    field: FieldArgs,
}

/// A failure mapped to an exit code.
struct Fail(i32, String);

fn usage(msg: impl Into<String>) -> Fail {
    Fail(EXIT_USAGE, msg.into())
}

type Res = Result<i32, Fail>;

/// Run with the process streams.
pub fn run_cli<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Run `fmb` with `args` (program name first) and return the exit code.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let mut text = String::new();
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(cli.cmd, &mut text)),
            Err(e) => Err(usage(format!("cannot start {j} workers: {e}"))),
        },
        None => dispatch(cli.cmd, &mut text),
    };
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "fmb: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut String) -> Res {
    match cmd {
        Command::Catalog { group, params } => cmd_catalog(group.as_deref(), &params, out),
        Command::Dims(g) => cmd_dims(&g, out),
        Command::Profile(g) => cmd_profile(&g, out),
        Command::Construct {
            family,
            params,
            field,
            budget,
            out: path,
        } => cmd_construct(&family, &params, &field, budget, path.as_deref(), out),
        Command::Verify { certificate } => cmd_verify(&certificate, out),
        Command::Search {
            group,
            budget,
            exhaustive,
            out: path,
        } => cmd_search(&group, budget, exhaustive, path.as_deref(), out),
        Command::Obstruct {
            group,
            trunc,
            budget,
            out: path,
        } => cmd_obstruct(&group, trunc, budget, path.as_deref(), out),
        Command::Selftest => cmd_selftest(out),
    }
}

/// `--budget`, else `FMB_BUDGET`, else `default`.
fn budget_or(flag: Option<u64>, default: u64) -> Result<u64, Fail> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{BUDGET_ENV}={v:?} is not a node count"))),
        Err(_) => Ok(default),
    }
}

fn parse_field(args: &FieldArgs, default_p: Option<u32>) -> Result<FieldSpec, Fail> {
    let (mut p, mut k) = (default_p, 1u32);
    if let Some(text) = &args.field {
        for part in text.split([',', ' ']).filter(|s| !s.is_empty()) {
            let num = |v: &str| {
                v.parse::<u32>()
                    .map_err(|_| usage(format!("bad field option {part:?}")))
            };
            match part.split_once('=') {
                Some(("p", v)) => p = Some(num(v)?),
                Some(("k", v)) => k = num(v)?,
                _ => {
                    return Err(usage(format!(
                        "bad field option {part:?}, expected p=<prime>[,k=<degree>]"
                    )))
                }
            }
        }
    }
    let p = p.ok_or_else(|| usage("cannot infer the characteristic; pass --field p=<prime>"))?;
    let modulus = match &args.modulus {
        None => None,
        Some(m) => Some(
            m.split(',')
                .map(|c| c.trim().parse::<u8>())
                .collect::<Result<Vec<u8>, _>>()
                .map_err(|_| usage(format!("bad modulus {m:?}")))?,
        ),
    };
    field_make(p, k, modulus.as_deref()).map_err(|e| usage(e.to_string()))
}

fn load_spec(args: &GroupArgs) -> Result<GroupSpec, Fail> {
    match (&args.group, &args.group_file) {
        (_, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            GroupSpec::parse_text(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
        (Some(label), None) => catalog_lookup(label, &args.params.catalog()).map_err(|e| usage(e.to_string())),
        (None, None) => Err(usage("name a group or pass --group-file")),
    }
}

fn load(args: &GroupArgs) -> Result<(GroupSpec, Group, FieldSpec), Fail> {
    let spec = load_spec(args)?;
    let g = group_from_spec(&spec).map_err(|e| usage(e.to_string()))?;
    let field = parse_field(&args.field, g.prime())?;
    if g.order() > 1 && !g.is_p_group(field.p()) {
        return Err(usage(format!("{} is not a {}-group", g.name(), field.p())));
    }
    Ok((spec, g, field))
}

fn emit_certificate(cert: &Certificate, path: Option<&Path>, out: &mut String) -> Result<(), Fail> {
    match path {
        Some(p) => {
            cert_write(p, cert).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            let _ = writeln!(out, "certificate written to {}", p.display());
        }
        None => out.push_str(&cert.serialize()),
    }
    Ok(())
}

fn cmd_catalog(group: Option<&str>, params: &ParamArgs, out: &mut String) -> Res {
    if let Some(label) = group {
        let spec = catalog_lookup(label, &params.catalog()).map_err(|e| usage(e.to_string()))?;
        let _ = writeln!(out, "# order {}", spec.declared_order());
        out.push_str(&spec.to_text());
        return Ok(EXIT_OK);
    }
    let _ = writeln!(out, "families: {}", catalog_labels().join(" "));
    for (label, p) in catalog_instances() {
        let spec = catalog_lookup(&label, &CatalogParams::none()).map_err(|e| usage(e.to_string()))?;
        let _ = writeln!(out, "{label:<24} order {:<4} p={p}", spec.declared_order());
    }
    Ok(EXIT_OK)
}

fn cmd_dims(args: &GroupArgs, out: &mut String) -> Res {
    let (_, g, field) = load(args)?;
    let profile = jennings_profile(&g, field.p()).map_err(|e| usage(e.to_string()))?;
    let filt = radical_filtration(&g, &field).map_err(|e| usage(e.to_string()))?;
    let _ = writeln!(out, "group {} order {} over {field}", g.name(), g.order());
    for (i, d) in profile.dims.iter().enumerate() {
        let _ = writeln!(out, "d_{} = {d}", i + 1);
    }
    let _ = writeln!(out, "s = {}", filt.s());
    for (t, d) in filt.layer_dims().iter().enumerate() {
        let _ = writeln!(out, "dim A^{t}/A^{} = {d}", t + 1);
    }
    let rep = jennings_crosscheck(&g, &field, &profile, &filt);
    let _ = writeln!(out, "jennings crosscheck: {}", if rep.pass { "pass" } else { "FAIL" });
    Ok(if rep.pass { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_profile(args: &GroupArgs, out: &mut String) -> Res {
    let (_, g, field) = load(args)?;
    let profile = jennings_profile(&g, field.p()).map_err(|e| usage(e.to_string()))?;
    let series = lazard_series(&g, field.p()).map_err(|e| usage(e.to_string()))?;
    let _ = writeln!(out, "group {} order {} p={}", g.name(), g.order(), field.p());
    for (i, layer) in profile.layers.iter().enumerate() {
        let names: Vec<String> = layer.iter().map(|&x| g.element_name(x)).collect();
        let _ = writeln!(
            out,
            "M_{} order {}: d = {} reps [{}]",
            i + 1,
            series.term(i + 1).len(),
            layer.len(),
            names.join(", ")
        );
    }
    let _ = writeln!(out, "weight sum {}", profile.weightsum);
    Ok(EXIT_OK)
}

fn cmd_construct(
    family: &str,
    params: &ParamArgs,
    fargs: &FieldArgs,
    budget: Option<u64>,
    path: Option<&Path>,
    out: &mut String,
) -> Res {
    let label = canonical_label(family, &params.catalog()).map_err(|e| usage(e.to_string()))?;
    let spec = catalog_lookup(&label, &CatalogParams::none()).map_err(|e| usage(e.to_string()))?;
    let g0 = group_from_spec(&spec).map_err(|e| usage(e.to_string()))?;
    let field = parse_field(fargs, g0.prime())?;
    let budget = budget_or(budget, DEFAULT_SEARCH_BUDGET)?;
    let (g, cand) = match construct_named(&label, &field, budget) {
        Ok(x) => x,
        Err(e @ ConstructionError::SearchExhausted) => return Err(Fail(EXIT_BUDGET, e.to_string())),
        Err(e @ (ConstructionError::BadParam(_) | ConstructionError::Group(_) | ConstructionError::FieldMismatch)) => {
            return Err(usage(e.to_string()))
        }
        Err(e) => return Err(Fail(EXIT_NEGATIVE, format!("{label} over {field}: {e}"))),
    };
    let filt = radical_filtration(&g, &field).map_err(|e| usage(e.to_string()))?;
    let rep = verify_fm_basis(&g, &field, &filt, &cand).map_err(|e| usage(e.to_string()))?;
    if !rep.is_basis {
        out.push_str(&rep.summary());
        return Err(Fail(EXIT_NEGATIVE, format!("construction for {label} did not verify")));
    }
    emit_certificate(&Certificate::basis(&field, g.spec(), &cand), path, out)?;
    Ok(EXIT_OK)
}

fn cmd_verify(path: &Path, out: &mut String) -> Res {
    let cert = cert_read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if let CertVerdict::NonExistence { report } = &cert.verdict {
        return Err(usage(format!(
            "non-existence certificate; re-run the obstruction for {report}"
        )));
    }
    let g = group_from_spec(&cert.group).map_err(|e| usage(e.to_string()))?;
    if g.order() > 1 && !g.is_p_group(cert.field.p()) {
        return Err(usage(format!("{} is not a {}-group", g.name(), cert.field.p())));
    }
    let filt = radical_filtration(&g, &cert.field).map_err(|e| usage(e.to_string()))?;
    let rep = verify_fm_basis(&g, &cert.field, &filt, &cert.candidate()).map_err(|e| usage(e.to_string()))?;
    let _ = writeln!(out, "group {} order {} over {}", g.name(), g.order(), cert.field);
    out.push_str(&rep.summary());
    Ok(if rep.is_basis { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_search(args: &GroupArgs, budget: Option<u64>, exhaustive: bool, path: Option<&Path>, out: &mut String) -> Res {
    let (spec, g, field) = load(args)?;
    let max_nodes = if exhaustive {
        u64::MAX
    } else {
        budget_or(budget, DEFAULT_SEARCH_BUDGET)?
    };
    let cfg = SearchConfig {
        max_nodes,
        ..SearchConfig::default()
    };
    let outcome = dfs_search(&g, &field, &cfg).map_err(|e| usage(e.to_string()))?;
    match outcome {
        SearchOutcome::Found { candidate, nodes, .. } => {
            let _ = writeln!(out, "found a basis for {} over {field} after {nodes} nodes", g.name());
            emit_certificate(&Certificate::basis(&field, &spec, &candidate), path, out)?;
            Ok(EXIT_OK)
        }
        SearchOutcome::NotFoundComplete { nodes } => {
            let _ = writeln!(out, "no basis for {} over {field} (complete, {nodes} nodes)", g.name());
            Ok(EXIT_NEGATIVE)
        }
        SearchOutcome::BudgetExhausted { nodes } => {
            let _ = writeln!(out, "budget exhausted after {nodes} nodes");
            Ok(EXIT_BUDGET)
        }
    }
}

fn cmd_obstruct(args: &GroupArgs, m: usize, budget: Option<u64>, path: Option<&Path>, out: &mut String) -> Res {
    let (_, g, field) = load(args)?;
    let budget = budget_or(budget, DEFAULT_OBSTRUCT_BUDGET)?;
    let report = obstruct(&g, &field, m, budget).map_err(|e| usage(e.to_string()))?;
    let text = report.render();
    match path {
        Some(p) => {
            fs::write(p, &text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            let _ = writeln!(out, "report written to {}", p.display());
            if let Some(last) = text.lines().last() {
                let _ = writeln!(out, "{last}");
            }
        }
        None => out.push_str(&text),
    }
    Ok(match report.verdict {
        ObstructionVerdict::NonExistenceCertified => EXIT_OK,
        ObstructionVerdict::Inconclusive => EXIT_NEGATIVE,
        ObstructionVerdict::BudgetExhausted => EXIT_BUDGET,
    })
}

/// Groups checked by `selftest`: the catalog over its prime field, and the
/// quaternion family again over GF(4).
pub fn selftest_targets() -> Vec<(String, u32, u32)> {
    let mut v: Vec<(String, u32, u32)> = catalog_instances().into_iter().map(|(l, p)| (l, p, 1)).collect();
    for l in ["Q_8", "Q_16", "Q_32", "Q_8 x C_2", "Q_8 x C_4", "Q_8 x C_2 x C_2"] {
        v.push((l.to_string(), 2, 2));
    }
    v
}

/// One selftest line for `label` over GF(p^k), and whether it passed.
pub fn selftest_one(label: &str, p: u32, k: u32) -> Result<(String, bool), String> {
    let spec = catalog_lookup(label, &CatalogParams::none()).map_err(|e| e.to_string())?;
    let g = group_from_spec(&spec).map_err(|e| e.to_string())?;
    let field = field_make(p, k, None).map_err(|e| e.to_string())?;
    let filt = radical_filtration(&g, &field).map_err(|e| e.to_string())?;
    let profile = jennings_profile(&g, p).map_err(|e| e.to_string())?;
    let cross = jennings_crosscheck(&g, &field, &profile, &filt);
    let series = lazard_series(&g, p).map_err(|e| e.to_string())?;
    let dim_ok = (1..=filt.s() + 1).all(|n| dimension_subgroup(&g, &filt, n) == series.term(n));
    let cong = congruence_checks(&g, &filt, 4096);
    let ok = cross.pass && dim_ok && cong.pass();
    let flag = |b: bool| if b { "ok" } else { "FAIL" };
    let line = format!(
        "{label:<24} {field:<7} jennings {} dimension-subgroups {} identities {} ({} pairs)",
        flag(cross.pass),
        flag(dim_ok),
        flag(cong.pass()),
        cong.pairs_checked
    );
    Ok((line, ok))
}

fn cmd_selftest(out: &mut String) -> Res {
    let mut failures = 0;
    for (label, p, k) in selftest_targets() {
        let (line, ok) = selftest_one(&label, p, k).map_err(|e| usage(format!("{label}: {e}")))?;
        let _ = writeln!(out, "{line}");
        if !ok {
            failures += 1;
        }
    }
    let _ = writeln!(out, "selftest: {failures} failures");
    Ok(if failures == 0 { EXIT_OK } else { EXIT_NEGATIVE })
}
