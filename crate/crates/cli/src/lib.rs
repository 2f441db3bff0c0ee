//! Command-line front end for `fanloop`.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 loop axiom failure,
//! 3 law or cross-check failure, 4 not a fan loop, 5 reference function not
//! constant on fan cosets, 6 invalid smashing data, 7 size cap exceeded.

pub mod format;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use fanloop::census::{self, CensusFilter, CensusQuery, ReducedSquares};
use fanloop::haar::{self, HaarError, LoopFunction, TranslateMode};
use fanloop::laws::{self, LawStatus};
use fanloop::loops::DEFAULT_ORDER_CAP;
use fanloop::products::{self, ProductError};
use fanloop::quotient::{self, QuotientError};
use fanloop::{catalog, classify, CensusError, ElementSet, FiniteLoop, LoopError};

use format::{FormatError, LoopFile};
use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_AXIOM: i32 = 2;
pub const EXIT_LAW: i32 = 3;
pub const EXIT_NOT_FAN: i32 = 4;
pub const EXIT_NOT_UPSILON: i32 = 5;
pub const EXIT_SMASH: i32 = 6;
pub const EXIT_CAP: i32 = 7;

#[derive(Debug, Parser)]
#[command(name = "fanloop", version, about = "Analyse finite loops, fan loops and their invariant measures")]
pub struct Cli {
    /// Seed for randomized property suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest loop order accepted.
    #[arg(long, global = true, env = "FANLOOP_CAP", default_value_t = DEFAULT_ORDER_CAP)]
    pub cap: usize,
    /// Print nothing; report through the exit code only.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a loop file, classify it and check every registered law.
    Check {
        path: PathBuf,
        /// Check only these law ids; any failure among them exits 3.
        #[arg(long = "law")]
        laws: Vec<String>,
    },
    /// Parse a loop file and print it in canonical form.
    Fmt { path: PathBuf },
    /// Invariant functional and measure of a fan loop.
    Haar {
        path: PathBuf,
        /// Reference function file (default: constant 1).
        #[arg(long)]
        f0: Option<PathBuf>,
        /// Function files to evaluate.
        functions: Vec<PathBuf>,
    },
    /// Validate smashing data and build the smashed product.
    Smash {
        path: PathBuf,
        /// Write the product loop file here instead of embedding it in the report.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Enumerate reduced Latin squares of one order.
    Census {
        order: usize,
        #[arg(long, default_value = "all")]
        filter: String,
        #[arg(long)]
        limit: Option<usize>,
        /// Print only the summary line.
        #[arg(long)]
        count_only: bool,
    },
    /// Emit a generated loop file.
    Generate {
        #[command(subcommand)]
        what: Generator,
    },
    /// Direct product of loop files.
    Product {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Quotient by the fan, the nucleus, the center or a listed subloop.
    Quotient {
        path: PathBuf,
        /// `fan`, `nucleus`, `center`, or comma-separated labels.
        #[arg(long, default_value = "fan")]
        by: String,
    },
    /// Randomized covering-number and functional identities.
    Props {
        path: PathBuf,
        #[arg(long, default_value_t = 100)]
        instances: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Generator {
    /// Cayley–Dickson basis loop of order 2^(k+1).
    Cd { k: u32 },
    /// Cyclic group of order n.
    Cyclic { n: usize },
    /// Dihedral group of order 2m.
    Dihedral { m: usize },
    /// A group of order at most 8 by name (C1, C2, ..., D4, Q8).
    Group { name: String },
    /// First reduced square of the order satisfying the predicate.
    Witness { order: usize, predicate: String },
}

/// Result of a command: exit code plus the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let message = message.into();
        let stdout = to_json(&ErrorReport { error: message.clone(), exit_code: code, violation: None });
        Outcome { code, stdout, stderr: format!("error: {message}\n") }
    }
}

impl From<FormatError> for Outcome {
    fn from(e: FormatError) -> Self {
        let code = match &e {
            FormatError::Parse(_) | FormatError::Io { .. } => EXIT_PARSE,
            FormatError::Loop { source: LoopError::SizeCapExceeded { .. }, .. } => EXIT_CAP,
            FormatError::Loop { source: LoopError::LabelCount { .. } | LoopError::DuplicateLabel(_), .. } => EXIT_PARSE,
            FormatError::Loop { .. } => EXIT_AXIOM,
        };
        Outcome::fail(code, e.to_string())
    }
}

fn product_failure(e: ProductError) -> Outcome {
    match e {
        ProductError::ValidationFailed(v) => {
            let message = format!("smashing data violates {}: {}", v.equation, v.message);
            let stdout = to_json(&ErrorReport { error: message.clone(), exit_code: EXIT_SMASH, violation: Some((&v).into()) });
            Outcome { code: EXIT_SMASH, stdout, stderr: format!("error: {message}; witness {:?}\n", v.witness) }
        }
        ProductError::SizeCapExceeded { .. } => Outcome::fail(EXIT_CAP, e.to_string()),
        ProductError::Loop(LoopError::SizeCapExceeded { .. }) => Outcome::fail(EXIT_CAP, e.to_string()),
        ProductError::Loop(_) => Outcome::fail(EXIT_AXIOM, e.to_string()),
        other => Outcome::fail(EXIT_LAW, other.to_string()),
    }
}

fn haar_failure(e: HaarError) -> Outcome {
    let code = match e {
        HaarError::NotFanLoop => EXIT_NOT_FAN,
        HaarError::ReferenceNotInUpsilon(_) => EXIT_NOT_UPSILON,
        HaarError::LoopMismatch { .. } | HaarError::NegativeValue { .. } | HaarError::ZeroReference => EXIT_PARSE,
        _ => EXIT_LAW,
    };
    Outcome::fail(code, e.to_string())
}

fn census_failure(e: CensusError) -> Outcome {
    let code = match e {
        CensusError::OrderCapExceeded { .. } => EXIT_CAP,
        _ => EXIT_PARSE,
    };
    Outcome::fail(code, e.to_string())
}

fn load(path: &Path, cap: usize) -> Result<LoopFile, Outcome> {
    let file = format::read_loop_file(path)?;
    file.table.check_cap(cap).map_err(|e| Outcome::fail(EXIT_CAP, format!("{}: {e}", path.display())))?;
    Ok(file)
}

/// Parses arguments and runs; usage errors map to exit 1 and help to exit 0.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let mut out = match execute(cli) {
        Ok(o) | Err(o) => o,
    };
    if cli.quiet {
        out.stdout.clear();
        out.stderr.clear();
    }
    out
}

fn execute(cli: &Cli) -> Result<Outcome, Outcome> {
    match &cli.command {
        Command::Check { path, laws } => cmd_check(path, laws, cli.cap),
        Command::Fmt { path } => Ok(Outcome::ok(format::serialize_loop_file(&load(path, cli.cap)?))),
        Command::Haar { path, f0, functions } => cmd_haar(path, f0.as_deref(), functions, cli.cap),
        Command::Smash { path, out } => cmd_smash(path, out.as_deref(), cli.cap),
        Command::Census { order, filter, limit, count_only } => cmd_census(*order, filter, *limit, *count_only),
        Command::Generate { what } => cmd_generate(what, cli.cap),
        Command::Product { paths } => cmd_product(paths, cli.cap),
        Command::Quotient { path, by } => cmd_quotient(path, by, cli.cap),
        Command::Props { path, instances } => cmd_props(path, *instances, cli.seed, cli.cap),
    }
}

pub fn check_report(g: &FiniteLoop, only: &[laws::IdentityLaw]) -> CheckReport {
    let analysis = classify(g);
    let ctx = laws::LawContext { g, analysis: analysis.clone() };
    let reports = if only.is_empty() {
        ctx.check_all()
    } else {
        only.iter()
            .map(|law| {
                ctx.check(law).unwrap_or_else(|_| laws::LawReport {
                    law_id: law.id.clone(),
                    status: LawStatus::NotApplicable,
                    witness: None,
                    tuples_checked: 0,
                })
            })
            .collect()
    };
    let laws = reports.iter().map(|r| LawEntry::new(g, r)).collect();
    CheckReport { analysis: AnalysisReport::new(g, &analysis), laws }
}

fn cmd_check(path: &Path, ids: &[String], cap: usize) -> Result<Outcome, Outcome> {
    let file = load(path, cap)?;
    let only = ids
        .iter()
        .map(|id| laws::law(id).ok_or_else(|| Outcome::fail(EXIT_PARSE, format!("unknown law `{id}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let report = check_report(&file.table, &only);
    // Without --law, 2.1.9-t and 2.1.9-p only classify: they are the defining
    // fan-loop conditions rather than identities of every loop.
    let failed: Vec<&str> = report
        .laws
        .iter()
        .filter(|l| l.status == LawStatus::Fails.to_string() && (!only.is_empty() || !l.id.starts_with("2.1.9-")))
        .map(|l| l.id.as_str())
        .collect();
    let mut out = Outcome::ok(to_json(&report));
    if !failed.is_empty() {
        out.code = EXIT_LAW;
        out.stderr = format!("error: laws fail: {}\n", failed.join(", "));
    }
    Ok(out)
}

fn cmd_haar(path: &Path, f0_path: Option<&Path>, functions: &[PathBuf], cap: usize) -> Result<Outcome, Outcome> {
    let g = load(path, cap)?.table;
    let n = g.order();
    let f0 = match f0_path {
        Some(p) => format::read_function_file(p, &g)?,
        None => LoopFunction::ones(n),
    };
    let j = haar::haar_limit(&g, &f0).map_err(haar_failure)?;
    let second = f0.add(&LoopFunction::indicator(j.fan()));
    let j2 = haar::haar_limit(&g, &second).map_err(haar_failure)?;
    let mu = haar::invariant_measure(&g).map_err(haar_failure)?;
    let mut checked = n * n;
    let mut invariant = true;
    let mut independent = true;
    let mut values = Vec::new();
    for p in functions {
        let f = format::read_function_file(p, &g)?;
        let v = j.value(&f).map_err(haar_failure)?;
        for b in g.elements() {
            checked += 1;
            invariant &= j.value(&haar::translate(&g, &f, b, TranslateMode::Left)).map_err(haar_failure)? == v;
        }
        let v2 = j2.relative(&f, &f0).map_err(haar_failure)?;
        independent &= v2 == v;
        values.push(FunctionValue { source: p.display().to_string(), value: rat(&v), value_relative_to_second_reference: rat(&v2) });
    }
    let report = HaarReport {
        order: n,
        fan: j.fan().iter().map(|x| g.label(x).to_string()).collect(),
        reference: f0_path.map_or("constant 1".to_string(), |p| p.display().to_string()),
        second_reference: "reference plus the indicator of the fan".to_string(),
        weights: g.elements().map(|x| (g.label(x).to_string(), rat(&mu.weights[x]))).collect(),
        total_mass: rat(&mu.total),
        left_invariance_checked: checked,
        left_invariant: invariant,
        reference_independent: independent,
        functions: values,
    };
    let mut out = Outcome::ok(to_json(&report));
    if !(invariant && independent) {
        out.code = EXIT_LAW;
    }
    Ok(out)
}

fn cmd_smash(path: &Path, out_path: Option<&Path>, cap: usize) -> Result<Outcome, Outcome> {
    let d = format::read_smashing_file(path)?;
    let order = d.a.order() * d.b.order();
    if order > cap {
        return Err(Outcome::fail(EXIT_CAP, format!("smashed product order {order} exceeds the cap {cap}")));
    }
    let (g, cross) = products::smashed_product_checked(&d).map_err(product_failure)?;
    let analysis = classify(&g);
    let report = SmashReport::new(&g, &analysis, &cross, products::fan_within_embedded_n(&d, &g));
    let text = format::serialize_loop(&g);
    let mut value = serde_json::to_value(&report).expect("report serializes");
    match out_path {
        Some(p) => std::fs::write(p, &text).map_err(|e| Outcome::fail(EXIT_PARSE, format!("{}: {e}", p.display())))?,
        None => {
            value["loop_file"] = serde_json::Value::String(text);
        }
    }
    Ok(Outcome::ok(to_json(&value)))
}

fn cmd_census(order: usize, filter: &str, limit: Option<usize>, count_only: bool) -> Result<Outcome, Outcome> {
    let filter: CensusFilter = filter.parse().map_err(census_failure)?;
    let squares = ReducedSquares::new(order).map_err(census_failure)?;
    let query = CensusQuery { order, filter, limit };
    let mut text = String::new();
    let (mut reduced, mut matched, mut emitted) = (0u64, 0u64, 0usize);
    for table in squares {
        reduced += 1;
        let labels = (0..order).map(|i| i.to_string()).collect();
        let g = FiniteLoop::from_flat(order, table, labels).expect("reduced square is a loop");
        if !query.filter.matches(&g) {
            continue;
        }
        matched += 1;
        if query.limit.is_none_or(|l| emitted < l) {
            emitted += 1;
            if !count_only {
                text.push_str(&format!("# census order={order} filter={filter} index={reduced}\n"));
                text.push_str(&format::serialize_loop(&g));
                text.push('\n');
            }
        }
    }
    text.push_str(&format!("# summary order={order} reduced={reduced} {filter}={matched} emitted={emitted}\n"));
    Ok(Outcome::ok(text))
}

fn cmd_generate(what: &Generator, cap: usize) -> Result<Outcome, Outcome> {
    let (comment, g) = match what {
        Generator::Cd { k } => {
            let order = 1usize.checked_shl(k + 1).unwrap_or(usize::MAX);
            if order > cap {
                return Err(Outcome::fail(EXIT_CAP, format!("order {order} exceeds the cap {cap}")));
            }
            (format!("# Cayley-Dickson basis loop, k = {k}"), products::cayley_dickson_basis_loop(*k).map_err(product_failure)?)
        }
        Generator::Cyclic { n } if *n == 0 || *n > cap => return Err(Outcome::fail(EXIT_CAP, format!("order {n} outside 1..={cap}"))),
        Generator::Cyclic { n } => (format!("# cyclic group of order {n}"), catalog::cyclic(*n)),
        Generator::Dihedral { m } if *m == 0 || 2 * m > cap => return Err(Outcome::fail(EXIT_CAP, format!("order {} outside 2..={cap}", 2 * m))),
        Generator::Dihedral { m } => (format!("# dihedral group of order {}", 2 * m), catalog::dihedral(*m)),
        Generator::Group { name } => {
            let g = catalog::small_groups()
                .into_iter()
                .find(|(n, _)| n == name)
                .map(|(_, g)| g)
                .ok_or_else(|| Outcome::fail(EXIT_PARSE, format!("unknown group `{name}`")))?;
            (format!("# group {name}"), g)
        }
        Generator::Witness { order, predicate } => {
            let g = census::find_witness(*order, predicate).map_err(census_failure)?;
            match g {
                Some(g) => (format!("# first reduced square of order {order} with predicate {predicate}"), g),
                None => return Ok(Outcome::ok(format!("# none at order {order} for predicate {predicate}\n"))),
            }
        }
    };
    Ok(Outcome::ok(format::serialize_loop_file(&LoopFile { comments: vec![comment], table: g })))
}

fn cmd_product(paths: &[PathBuf], cap: usize) -> Result<Outcome, Outcome> {
    let loops = paths.iter().map(|p| load(p, cap).map(|f| f.table)).collect::<Result<Vec<_>, _>>()?;
    let g = products::direct_product_with_cap(&loops, cap).map_err(product_failure)?;
    Ok(Outcome::ok(format::serialize_loop(&g)))
}

fn cmd_quotient(path: &Path, by: &str, cap: usize) -> Result<Outcome, Outcome> {
    let g = load(path, cap)?.table;
    let analysis = classify(&g);
    let h = match by {
        "fan" => analysis.fan.clone(),
        "nucleus" => analysis.nucleus().clone(),
        "center" => analysis.center().clone(),
        list => {
            let mut set = ElementSet::empty(g.order());
            for label in list.split(',').map(str::trim) {
                let x = g.index_of(label).ok_or_else(|| Outcome::fail(EXIT_PARSE, format!("unknown label `{label}`")))?;
                set.insert(x);
            }
            set
        }
    };
    let q = quotient::quotient(&g, &h).map_err(|e| match e {
        QuotientError::NotAGroup(..) | QuotientError::NoTwoSidedInverse(_) => Outcome::fail(EXIT_LAW, e.to_string()),
        _ => Outcome::fail(EXIT_AXIOM, e.to_string()),
    })?;
    let comment = format!("# quotient by {by}");
    Ok(Outcome::ok(format::serialize_loop_file(&LoopFile { comments: vec![comment], table: q })))
}

fn cmd_props(path: &Path, instances: usize, seed: u64, cap: usize) -> Result<Outcome, Outcome> {
    let g = load(path, cap)?.table;
    let suite = haar::property_suite(&g, instances, seed).map_err(haar_failure)?;
    Ok(Outcome::ok(to_json(&PropsReport::from(&suite))))
}
