//! Command-line front end: state I/O, rank audits, cone computations,
//! counterexample hunts, classical support audits, and regeneration of the
//! bundled reference tables.
//!
//! Exit codes: 0 success, 1 a violation or counterexample was found (a
//! meaningful result, not a failure), 2 usage or input error, 3 internal
//! invariant breach.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rankcone::bipartition::canonical_bipartitions;
use rankcone::cone::{
    extreme_rays, facet_gap, facets, format_hrep, format_vrep, orbit_families, parse_cone_file,
    ConeFile, HRep, VRep,
};
use rankcone::classical::{audit_classical, purification, support_sizes, SupportSet};
use rankcone::error::Error;
use rankcone::hypothesis::{
    exhaustive_search, random_search_with_progress, ExhaustiveParams, RandomParams, SearchReport,
};
use rankcone::inequality::{
    audit_state, conjectured_product_inequality, hypothesis_inequality, known_set,
    parse_inequalities, ssa_zero_entropy_instance, AuditReport, RankInequality,
};
use rankcone::named::named_state;
use rankcone::rankvec::rank_vector;
use rankcone::state::PureState;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

pub mod reproduce;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser)]
#[command(name = "rankcone", version, about = "Exact Schmidt-rank vectors, inequalities, cones, and searches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Args)]
struct StateSource {
    /// State file (dimensions line, then `i1 .. in re im` amplitude lines)
    statefile: Option<PathBuf>,
    /// Named gallery state: phi_plus, psi1..psi6, ssa_cx
    #[arg(long)]
    named: Option<String>,
    /// Dimension parameter for the parametric gallery states
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the rank vector and 0-entropy vector of a state
    Rankvec {
        #[command(flatten)]
        source: StateSource,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate inequalities on a state, with exact certificates
    Audit {
        #[command(flatten)]
        source: StateSource,
        /// Custom inequality file (`name : coefficients` per line)
        #[arg(long)]
        ineq: Option<PathBuf>,
        /// Also test the unproven hypothesis inequality
        #[arg(long)]
        include_hypothesis: bool,
        /// Also test the refuted product conjecture
        #[arg(long)]
        include_conjectured: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Enumerate the extreme rays of a halfspace file
    Rays {
        hfile: PathBuf,
    },
    /// Compute the facets of the cone generated by a ray file
    Facets {
        vfile: PathBuf,
    },
    /// Facets of the ray cone that are missing from a halfspace file
    Gap {
        hfile: PathBuf,
        vfile: PathBuf,
    },
    /// Search for counterexamples to the two-sided rank inequality
    Hunt {
        /// Number of operator pairs
        #[arg(long = "K")]
        k: usize,
        /// Shapes as m1xn1,m2xn2 (R and S matrices)
        #[arg(long)]
        shape: String,
        /// Exhaustive enumeration over the prime field F_q
        #[arg(long, conflicts_with = "rational_bound")]
        field: Option<u64>,
        /// Random integer search with entries in [-b, b]
        #[arg(long)]
        rational_bound: Option<i64>,
        /// Sample count for the random search
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value = "0")]
        seed: u64,
        /// Raw instance budget for the exhaustive mode
        #[arg(long)]
        budget: Option<u128>,
        /// Plain-text progress file: last completed chunk and running maximum
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Worker threads (requires the parallel build)
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Audit a classical support file and verify its purification bridge
    Classical {
        supportfile: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Regenerate a bundled reference table and diff it against the golden copy
    Reproduce {
        /// ray-table, psi-vectors, ssa-counterexample, or hypothesis-facet
        table: String,
        /// Print the regenerated artifact instead of diffing
        #[arg(long)]
        emit: bool,
    },
}

/// Runs the CLI against explicit argv (without the program name), writing
/// reports to `out` and diagnostics to `err`.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut argv = vec!["rankcone".to_string()];
    argv.extend(args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Internal(_) => EXIT_INTERNAL,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match cmd {
        Command::Rankvec { source, format } => cmd_rankvec(&source, format, out),
        Command::Audit {
            source,
            ineq,
            include_hypothesis,
            include_conjectured,
            format,
        } => cmd_audit(&source, ineq.as_deref(), include_hypothesis, include_conjectured, format, out),
        Command::Rays { hfile } => cmd_rays(&hfile, out),
        Command::Facets { vfile } => cmd_facets(&vfile, out),
        Command::Gap { hfile, vfile } => cmd_gap(&hfile, &vfile, out),
        Command::Hunt {
            k,
            shape,
            field,
            rational_bound,
            samples,
            seed,
            budget,
            checkpoint,
            workers,
            format,
        } => cmd_hunt(
            k,
            &shape,
            field,
            rational_bound,
            samples,
            seed,
            budget,
            checkpoint.as_deref(),
            workers,
            format,
            out,
        ),
        Command::Classical { supportfile, format } => cmd_classical(&supportfile, format, out),
        Command::Reproduce { table, emit } => cmd_reproduce(&table, emit, out),
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Contract(format!("cannot read {}: {e}", path.display())))
}

fn load_state(source: &StateSource) -> Result<PureState, Error> {
    match (&source.statefile, &source.named) {
        (Some(path), None) => PureState::from_text(&read_file(path)?),
        (None, Some(name)) => named_state(name, source.d),
        _ => Err(Error::Contract(
            "provide exactly one of a state file or --named".into(),
        )),
    }
}

fn io_err(e: std::fmt::Error) -> Error {
    Error::Internal(format!("formatting: {e}"))
}

fn cmd_rankvec(source: &StateSource, format: Format, out: &mut dyn Write) -> Result<i32, Error> {
    let state = load_state(source)?;
    let rv = rank_vector(&state)?;
    match format {
        Format::Tsv => {
            write!(out, "{}", rv.to_tsv()).ok();
        }
        Format::Json => {
            let value = serde_json::json!({
                "dims": state.dims(),
                "ranks": rv.as_slice(),
                "zero_entropy": rv.zero_entropy_vector(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap()).ok();
        }
        Format::Text => {
            let mut text = String::new();
            writeln!(
                text,
                "dims\t{}",
                state.dims().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
            )
            .map_err(io_err)?;
            write!(text, "{}", rv.to_tsv()).map_err(io_err)?;
            writeln!(text, "rank vector\t{rv}").map_err(io_err)?;
            let logs = rv
                .zero_entropy_vector()
                .iter()
                .map(|v| format!("{v:.6}"))
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(text, "zero-entropy\t~ {logs}").map_err(io_err)?;
            write!(out, "{text}").ok();
        }
    }
    Ok(EXIT_OK)
}

fn audit_set(
    n: usize,
    ineq_file: Option<&Path>,
    include_hypothesis: bool,
    include_conjectured: bool,
) -> Result<Vec<RankInequality>, Error> {
    let mut set = match ineq_file {
        Some(path) => parse_inequalities(&read_file(path)?)?,
        None if n == 4 => known_set(4)?,
        None => {
            return Err(Error::Contract(format!(
                "no default inequality set for {n} parties; pass --ineq"
            )))
        }
    };
    if include_hypothesis {
        set.push(hypothesis_inequality());
    }
    if include_conjectured {
        set.push(conjectured_product_inequality());
    }
    Ok(set)
}

fn cmd_audit(
    source: &StateSource,
    ineq_file: Option<&Path>,
    include_hypothesis: bool,
    include_conjectured: bool,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Error> {
    let state = load_state(source)?;
    let set = audit_set(state.n_parties(), ineq_file, include_hypothesis, include_conjectured)?;
    let report = audit_state(&state, &set)?;
    write_audit(&report, format, out);
    Ok(if report.all_hold() { EXIT_OK } else { EXIT_FOUND })
}

fn write_audit(report: &AuditReport, format: Format, out: &mut dyn Write) {
    match format {
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(report).unwrap()).ok();
        }
        Format::Tsv | Format::Text => {
            writeln!(out, "rank vector\t{}", report.rank_vector).ok();
            write!(out, "{}", report.to_tsv()).ok();
            if format == Format::Text {
                let violated = report.violations().count();
                writeln!(
                    out,
                    "{} inequalities, {} violated",
                    report.entries.len(),
                    violated
                )
                .ok();
            }
        }
    }
}

fn require_h(path: &Path) -> Result<HRep, Error> {
    match parse_cone_file(&read_file(path)?)? {
        ConeFile::H(h) => Ok(h),
        ConeFile::V(_) => Err(Error::Contract(format!(
            "{} holds rays; expected a halfspace file",
            path.display()
        ))),
    }
}

fn require_v(path: &Path) -> Result<VRep, Error> {
    match parse_cone_file(&read_file(path)?)? {
        ConeFile::V(v) => Ok(v),
        ConeFile::H(_) => Err(Error::Contract(format!(
            "{} holds halfspaces; expected a ray file",
            path.display()
        ))),
    }
}

/// Number of parties whose bipartition count matches the dimension, if any.
fn parties_for_dim(dim: usize) -> Option<usize> {
    (2..=16).find(|n| (1usize << (n - 1)) - 1 == dim)
}

fn write_family_table(v: &VRep, out: &mut dyn Write) {
    let Some(n) = parties_for_dim(v.dim()) else {
        return;
    };
    let Ok(families) = orbit_families(v, n) else {
        return;
    };
    let labels = canonical_bipartitions(n).expect("dim matched").labels();
    writeln!(out, "family\t{}\tsize", labels.join("\t")).ok();
    for (i, fam) in families.iter().enumerate() {
        let rep = fam
            .representative
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join("\t");
        writeln!(out, "{}\t{}\t{}", i + 1, rep, fam.size()).ok();
    }
}

fn cmd_rays(hfile: &Path, out: &mut dyn Write) -> Result<i32, Error> {
    let h = require_h(hfile)?;
    match extreme_rays(&h) {
        Ok(v) => {
            write!(out, "{}", format_vrep(&v)).ok();
            write_family_table(&v, out);
            Ok(EXIT_OK)
        }
        Err(Error::NonPointed { lineality }) => {
            writeln!(out, "cone is not pointed; lineality space basis:").ok();
            for row in lineality {
                writeln!(
                    out,
                    "{}",
                    row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
                )
                .ok();
            }
            Ok(EXIT_OK)
        }
        Err(e) => Err(e),
    }
}

fn cmd_facets(vfile: &Path, out: &mut dyn Write) -> Result<i32, Error> {
    let v = require_v(vfile)?;
    let f = facets(&v)?;
    write!(out, "{}", format_hrep(&f.facets)).ok();
    if !f.equations.is_empty() {
        writeln!(out, "equations {}", f.equations.len()).ok();
        for e in &f.equations {
            writeln!(
                out,
                "{}",
                e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            )
            .ok();
        }
    }
    Ok(EXIT_OK)
}

fn cmd_gap(hfile: &Path, vfile: &Path, out: &mut dyn Write) -> Result<i32, Error> {
    let h = require_h(hfile)?;
    let v = require_v(vfile)?;
    let gap = facet_gap(&h, &v)?;
    if gap.is_empty() {
        writeln!(out, "no facet gap: the rays generate exactly the known cone").ok();
    } else {
        writeln!(out, "gap {} {}", h.dim(), gap.len()).ok();
        for row in &gap {
            writeln!(
                out,
                "{}",
                row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            )
            .ok();
        }
    }
    Ok(EXIT_OK)
}

fn parse_shape(text: &str) -> Result<((usize, usize), (usize, usize)), Error> {
    let bad = || Error::Contract(format!("bad --shape {text:?}; expected m1xn1,m2xn2"));
    let (r, s) = text.split_once(',').ok_or_else(bad)?;
    let parse_one = |part: &str| -> Result<(usize, usize), Error> {
        let (m, n) = part.split_once('x').ok_or_else(bad)?;
        Ok((m.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?))
    };
    Ok((parse_one(r)?, parse_one(s)?))
}

struct Checkpoint {
    last_chunk: usize,
    max_ratio: Option<(u64, u64)>,
}

fn read_checkpoint(path: &Path) -> Result<Option<Checkpoint>, Error> {
    if !path.exists() {
        return Ok(None);
    }
    let text = read_file(path)?;
    let mut last_chunk = None;
    let mut max_ratio = None;
    for line in text.lines() {
        if let Some(v) = line.strip_prefix("chunk ") {
            last_chunk = Some(v.trim().parse::<usize>().map_err(|_| {
                Error::Contract(format!("bad checkpoint chunk line in {}", path.display()))
            })?);
        } else if let Some(v) = line.strip_prefix("max ") {
            let v = v.trim();
            if v != "none" {
                let (num, den) = v.split_once('/').ok_or_else(|| {
                    Error::Contract(format!("bad checkpoint max line in {}", path.display()))
                })?;
                max_ratio = Some((
                    num.parse().map_err(|_| Error::Contract("bad checkpoint ratio".into()))?,
                    den.parse().map_err(|_| Error::Contract("bad checkpoint ratio".into()))?,
                ));
            }
        }
    }
    let last_chunk = last_chunk
        .ok_or_else(|| Error::Contract(format!("checkpoint {} has no chunk line", path.display())))?;
    Ok(Some(Checkpoint { last_chunk, max_ratio }))
}

fn write_checkpoint(path: &Path, chunk: usize, max: Option<(u64, u64)>) {
    let max_line = match max {
        Some((n, d)) => format!("{n}/{d}"),
        None => "none".into(),
    };
    let _ = std::fs::write(path, format!("chunk {chunk}\nmax {max_line}\n"));
}

#[allow(clippy::too_many_arguments)]
fn cmd_hunt(
    k: usize,
    shape: &str,
    field: Option<u64>,
    rational_bound: Option<i64>,
    samples: Option<usize>,
    seed: u64,
    budget: Option<u128>,
    checkpoint: Option<&Path>,
    workers: Option<usize>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Error> {
    let (r_shape, s_shape) = parse_shape(shape)?;
    let run = move || -> Result<SearchReport, Error> {
        match (field, rational_bound) {
            (Some(q), None) => exhaustive_search(&ExhaustiveParams {
                k,
                r_shape,
                s_shape,
                q,
                budget,
            }),
            (None, Some(bound)) => {
                let samples = samples.ok_or_else(|| {
                    Error::Contract("random search needs --samples".into())
                })?;
                let mut params = RandomParams::new(k, r_shape, s_shape, bound, samples, seed);
                if let Some(path) = checkpoint {
                    if let Some(cp) = read_checkpoint(path)? {
                        params.start_chunk = cp.last_chunk + 1;
                        params.prior_max = cp.max_ratio;
                    }
                }
                let cp_path = checkpoint.map(Path::to_path_buf);
                random_search_with_progress(&params, true, move |chunk, max| {
                    if let Some(ref path) = cp_path {
                        write_checkpoint(path, chunk, max);
                    }
                })
            }
            _ => Err(Error::Contract(
                "choose exactly one of --field (exhaustive) or --rational-bound (random)".into(),
            )),
        }
    };
    let report = match workers {
        #[cfg(feature = "parallel")]
        Some(w) if w > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Contract(format!("cannot build a {w}-thread pool: {e}")))?
            .install(run)?,
        _ => run()?,
    };
    write_search_report(&report, format, out);
    Ok(if report.counterexamples.is_empty() { EXIT_OK } else { EXIT_FOUND })
}

fn write_search_report(report: &SearchReport, format: Format, out: &mut dyn Write) {
    if format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(report).unwrap()).ok();
        return;
    }
    writeln!(out, "pairs\t{}", report.k).ok();
    writeln!(
        out,
        "shapes\t{}x{},{}x{}",
        report.r_shape.0, report.r_shape.1, report.s_shape.0, report.s_shape.1
    )
    .ok();
    match report.mode {
        rankcone::hypothesis::SearchMode::Field { q } => {
            writeln!(out, "mode\texhaustive over F_{q}").ok();
        }
        rankcone::hypothesis::SearchMode::Integer { bound } => {
            writeln!(out, "mode\trandom integers in [-{bound}, {bound}]").ok();
        }
    }
    if let Some(seed) = report.seed {
        writeln!(out, "seed\t{seed}").ok();
    }
    writeln!(out, "requested\t{}", report.requested).ok();
    writeln!(out, "examined\t{}", report.examined).ok();
    match report.max_ratio {
        Some((n, d)) => writeln!(out, "max ratio\t{n}/{d}").ok(),
        None => writeln!(out, "max ratio\tnone").ok(),
    };
    writeln!(out, "counterexamples\t{}", report.counterexamples.len()).ok();
    for cx in &report.counterexamples {
        writeln!(out, "counterexample: lhs {} > rhs {}", cx.lhs, cx.rhs).ok();
        writeln!(out, "  R = {:?}", cx.r_mats).ok();
        writeln!(out, "  S = {:?}", cx.s_mats).ok();
    }
}

fn cmd_classical(supportfile: &Path, format: Format, out: &mut dyn Write) -> Result<i32, Error> {
    let support = SupportSet::from_text(&read_file(supportfile)?)?;
    let report = audit_classical(&support);
    let psi = purification(&support)?;
    let sizes = support_sizes(&support);
    let mut bridge_ok = true;
    for (&mask, &size) in &sizes {
        let parties: Vec<usize> = (0..support.n())
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| v + 1)
            .collect();
        if psi.schmidt_rank(&parties)? != size {
            bridge_ok = false;
        }
    }
    if format == Format::Json {
        let value = serde_json::json!({
            "report": report,
            "purification_bridge": bridge_ok,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap()).ok();
    } else {
        writeln!(out, "support of {} points over alphabets {:?}", support.points().len(), support.alphabet()).ok();
        write!(out, "{}", report.to_tsv(support.n())).ok();
        writeln!(
            out,
            "purification bridge\t{}",
            if bridge_ok { "ranks equal projection sizes" } else { "MISMATCH" }
        )
        .ok();
    }
    let ok = report.all_hold() && bridge_ok;
    Ok(if ok { EXIT_OK } else { EXIT_FOUND })
}

fn cmd_reproduce(table: &str, emit: bool, out: &mut dyn Write) -> Result<i32, Error> {
    let (generated, golden) = match table {
        "ray-table" => (reproduce::ray_table()?, include_str!("../golden/ray-table.tsv")),
        "psi-vectors" => (reproduce::psi_vectors()?, include_str!("../golden/psi-vectors.tsv")),
        "ssa-counterexample" => (
            reproduce::ssa_counterexample()?,
            include_str!("../golden/ssa-counterexample.tsv"),
        ),
        "hypothesis-facet" => (
            reproduce::hypothesis_facet()?,
            include_str!("../golden/hypothesis-facet.tsv"),
        ),
        _ => {
            return Err(Error::UnknownName(format!(
                "{table}; tables: ray-table, psi-vectors, ssa-counterexample, hypothesis-facet"
            )))
        }
    };
    if emit {
        write!(out, "{generated}").ok();
        return Ok(EXIT_OK);
    }
    if generated == golden {
        writeln!(out, "{table}: regenerated artifact matches the bundled golden copy").ok();
        Ok(EXIT_OK)
    } else {
        writeln!(out, "{table}: MISMATCH against the bundled golden copy").ok();
        for (i, (g, want)) in generated.lines().zip(golden.lines()).enumerate() {
            if g != want {
                writeln!(out, "line {}: got      {g}", i + 1).ok();
                writeln!(out, "line {}: expected {want}", i + 1).ok();
            }
        }
        let (glen, wlen) = (generated.lines().count(), golden.lines().count());
        if glen != wlen {
            writeln!(out, "line counts differ: got {glen}, expected {wlen}").ok();
        }
        Ok(EXIT_FOUND)
    }
}

// re-exported for tests
pub use reproduce::attained_family_representatives;

/// Known-set halfspace representation used by the reproduce tables.
pub fn known_hrep() -> Result<HRep, Error> {
    let rows: Vec<Vec<BigInt>> = known_set(4)?
        .iter()
        .map(|i| i.coeffs().iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    HRep::new(7, rows)
}

/// The ssa instance evaluated by the reproduce table.
pub fn ssa_instance() -> RankInequality {
    ssa_zero_entropy_instance()
}
