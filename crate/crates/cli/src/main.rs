use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use supersat::caps::Caps;
use supersat::constructions::{h_detached_edge, h_with_edge, kneser, turan_with_matching};
use supersat::counting::{count_copies, count_copies_with_required, CountReport};
use supersat::criticality::{is_color_k_critical, parameters};
use supersat::formulas::{
    petersen_c_formula, sec3_ci, t_exact, verify_counterexample, CriticalProfile, FormulaReport, ProfileKind,
};
use supersat::graph::Edge;
use supersat::io::{to_dot, to_graph6, to_json};
use supersat::types::{admissibility_report, is_admissible};
use supersat::Error;
use supersat_cli::manifest::{InputRecord, OutputRecord, RunManifest};
use supersat_cli::spec::{resolve, Resolved};
use supersat_cli::suites::{self, SUITES};

#[derive(Parser)]
#[command(
    name = "supersat",
    version,
    about = "Exact counting and verification for supersaturation problems"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "SUPERSAT_THREADS")]
    threads: Option<usize>,
    /// Cap on embedding types enumerated.
    #[arg(long, global = true)]
    max_types: Option<u64>,
    /// Cap on proper colourings enumerated per structure.
    #[arg(long, global = true)]
    max_colorings: Option<u64>,
    /// Cap on edge placements tried.
    #[arg(long, global = true)]
    max_placements: Option<u64>,
    /// Cap on vertex subsets and matchings examined.
    #[arg(long, global = true)]
    max_subsets: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write a run manifest here.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
}

impl Global {
    fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            subsets: self.max_subsets.unwrap_or(d.subsets),
            colorings: self.max_colorings.unwrap_or(d.colorings),
            types: self.max_types.unwrap_or(d.types),
            placements: self.max_placements.unwrap_or(d.placements),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from a family and print it.
    Construct(ConstructArgs),
    /// Count copies of a pattern in a host.
    Count(CountArgs),
    /// Check colour-k-criticality or admissibility.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Compute lambda, t and s.
    Params {
        #[arg(long)]
        graph: String,
    },
    /// Compare closed forms against exact counts.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Run a named verification suite, or `all`.
    Suite { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    G6,
    Dot,
    Json,
}

#[derive(Args)]
struct ConstructArgs {
    /// Full spec such as `h-with-edge:n=16,r=2,k=3,part=0`.
    spec: Option<String>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    /// Part index (0-based) or `min`.
    #[arg(long)]
    part: Option<String>,
    /// Star profile `l1/l2/...`.
    #[arg(long = "L")]
    profile: Option<String>,
    /// Pattern spec for families that optimise against one.
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long, value_enum, default_value = "g6")]
    format: Format,
}

impl ConstructArgs {
    fn spec(&self) -> Result<String> {
        match (&self.spec, &self.family) {
            (Some(s), None) => Ok(s.clone()),
            (None, Some(f)) => {
                let nums = [
                    ("n", self.n),
                    ("r", self.r),
                    ("k", self.k),
                    ("t", self.t),
                    ("m", self.m),
                    ("q", self.q),
                    ("s", self.s),
                ];
                let mut items: Vec<String> = nums.iter().filter_map(|(k, v)| v.map(|v| format!("{k}={v}"))).collect();
                if let Some(p) = &self.part {
                    items.push(format!("part={p}"));
                }
                if let Some(l) = &self.profile {
                    items.push(format!("L={l}"));
                }
                Ok(if items.is_empty() {
                    f.clone()
                } else {
                    format!("{f}:{}", items.join(","))
                })
            }
            _ => bail!("give either a spec or --family"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassifyBy {
    Pieces,
    TopCenter,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    host: String,
    /// Only copies using all of these host edges, e.g. `0-1,2-3`.
    #[arg(long)]
    required_edges: Option<String>,
    #[arg(long, value_enum)]
    classify_by: Option<ClassifyBy>,
    /// Count injections separately and check them against copies x aut.
    #[arg(long)]
    cross_check: bool,
}

#[derive(Subcommand)]
enum CheckCommand {
    Critical {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        expect: Option<bool>,
    },
    Admissible {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: usize,
        /// Examine every type instead of stopping at the first violation.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        expect: Option<bool>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// c(n, F): one edge added to H(n, r, k).
    C,
    /// d(n, F): a k-matching added to T_r(n).
    D,
    /// f(n, F): the detached-edge host.
    F,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Copies of `M_k + (P_4 ∪ M_{k-2})` with the extra edge in each part.
    Sec3Ci {
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Inclusive range `a..b` or a single n.
        #[arg(long, default_value = "11..15")]
        n_range: String,
        /// Skip the brute-force counts.
        #[arg(long)]
        formula_only: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Petersen closed form against brute force.
    PetersenC {
        #[arg(long = "n", value_delimiter = ',', default_value = "16,18,20")]
        n: Vec<usize>,
        #[arg(long)]
        formula_only: bool,
        #[arg(long)]
        csv: bool,
    },
    /// The star host against q single-edge hosts.
    Counterexample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        formula_only: bool,
    },
    /// t_F(n, q) against q c(n, F).
    TVsC {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        q: Vec<usize>,
        #[arg(long)]
        csv: bool,
    },
    /// c, d or f from the critical profile, against a count on the host.
    Profile {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "c")]
        kind: Kind,
        #[arg(long)]
        formula_only: bool,
    },
}

/// What a command produced.
struct Outcome {
    body: String,
    ok: bool,
    summary: Option<String>,
    inputs: Vec<InputRecord>,
}

impl Outcome {
    fn json<T: Serialize>(value: &T, ok: bool) -> Result<Self> {
        Ok(Outcome {
            body: serde_json::to_string_pretty(value)? + "\n",
            ok,
            summary: None,
            inputs: Vec::new(),
        })
    }

    fn with_inputs(mut self, inputs: Vec<InputRecord>) -> Self {
        self.inputs = inputs;
        self
    }
}

fn input(role: &str, r: &Resolved) -> InputRecord {
    InputRecord {
        role: role.to_string(),
        spec: r.spec.clone(),
        sha256: r.digest.clone(),
    }
}

fn parse_edges(text: &str) -> Result<Vec<Edge>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|e| {
            let (a, b) = e.split_once('-').ok_or_else(|| anyhow!("edge {e:?} is not u-v"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}

fn parse_range(text: &str) -> Result<Vec<usize>> {
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
            if a > b {
                bail!("empty range {text}");
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![text.trim().parse()?]),
    }
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",") + "\n";
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

fn construct(a: &ConstructArgs) -> Result<Outcome> {
    let pattern = a.pattern.as_deref().map(|p| resolve(p, None)).transpose()?;
    let r = resolve(&a.spec()?, pattern.as_ref().map(|p| &p.graph))?;
    let labels = r.host.as_ref().map(|h| h.label_strings());
    let body = match a.format {
        Format::G6 => to_graph6(&r.graph) + "\n",
        Format::Dot => to_dot(&r.graph, labels.as_deref()),
        Format::Json => to_json(&r.graph, labels.as_deref()) + "\n",
    };
    let mut inputs = vec![input("graph", &r)];
    inputs.extend(pattern.as_ref().map(|p| input("pattern", p)));
    Ok(Outcome {
        body,
        ok: true,
        summary: r
            .host
            .as_ref()
            .map(|h| format!("{} on {} vertices, {} edges", h.family, h.n(), h.graph.edge_count())),
        inputs,
    })
}

fn count(a: &CountArgs) -> Result<Outcome> {
    let pat = resolve(&a.pattern, None)?;
    let host = resolve(&a.host, Some(&pat.graph))?;
    let inputs = vec![input("pattern", &pat), input("host", &host)];
    let report = match (a.classify_by, &a.required_edges) {
        (Some(_), Some(_)) => bail!("--classify-by and --required-edges do not combine"),
        (None, Some(req)) => {
            let required = parse_edges(req)?;
            let copies = count_copies_with_required(&pat.graph, &host.graph, &required, &[])?;
            let rep = CountReport::compute(&pat.spec, &pat.graph, &host.spec, &host.graph, false)?;
            let mut all = serde_json::to_value(&rep)?;
            all["copies_with_required"] = json!(copies.to_string());
            all["required_edges"] = json!(required);
            return Ok(Outcome::json(&all, true)?.with_inputs(inputs));
        }
        (None, None) => CountReport::compute(&pat.spec, &pat.graph, &host.spec, &host.graph, a.cross_check)?,
        (Some(ClassifyBy::Pieces), None) => {
            let pieced = pat
                .pieced
                .as_ref()
                .ok_or_else(|| anyhow!("{} has no named pieces", pat.spec))?;
            let h = host
                .host
                .as_ref()
                .ok_or_else(|| anyhow!("{} has no part labels", host.spec))?;
            CountReport::classified(
                &pat.spec,
                &pat.graph,
                &pieced.pieces,
                &pieced.piece_names,
                &host.spec,
                h,
            )?
        }
        (Some(ClassifyBy::TopCenter), None) => {
            let h = host
                .host
                .as_ref()
                .ok_or_else(|| anyhow!("{} has no part labels", host.spec))?;
            let mut rep = CountReport::compute(&pat.spec, &pat.graph, &host.spec, &host.graph, a.cross_check)?;
            rep.classification = Some(suites::top_center_histogram(&pat.graph, h)?);
            rep
        }
    };
    Ok(Outcome::json(&report, true)?.with_inputs(inputs))
}

fn check(what: &CheckCommand, caps: &Caps) -> Result<Outcome> {
    match what {
        CheckCommand::Critical { graph, k, expect } => {
            let g = resolve(graph, None)?;
            let rep = is_color_k_critical(&g.graph, *k, caps)?;
            let ok = expect.is_none_or(|e| e == rep.is_critical);
            Ok(Outcome::json(&rep, ok)?.with_inputs(vec![input("graph", &g)]))
        }
        CheckCommand::Admissible { graph, k, full, expect } => {
            let g = resolve(graph, None)?;
            let rep = if *full {
                admissibility_report(&g.graph, *k, caps)?
            } else {
                is_admissible(&g.graph, *k, caps)?
            };
            let ok = expect.is_none_or(|e| e == rep.admissible);
            Ok(Outcome::json(&rep, ok)?.with_inputs(vec![input("graph", &g)]))
        }
    }
}

fn verify(what: &VerifyCommand, caps: &Caps) -> Result<Outcome> {
    match what {
        VerifyCommand::Sec3Ci {
            k,
            n_range,
            formula_only,
            csv: as_csv,
        } => {
            let pieced = supersat::constructions::pattern_section3(*k)?;
            let mut reports = Vec::new();
            for n in parse_range(n_range)? {
                for i in 0..3 {
                    let v: u128 = sec3_ci(n, *k, i)?;
                    let mut rep =
                        FormulaReport::new("sec3_ci", &[("n", n as i64), ("k", *k as i64), ("part", i as i64)], &v);
                    if !formula_only {
                        rep = rep.with_oracle(count_copies(&pieced.graph, &h_with_edge(n, 3, *k, i)?.graph)?);
                    }
                    reports.push(rep);
                }
            }
            formula_outcome(&reports, *as_csv, &["n", "k", "part"])
        }
        VerifyCommand::PetersenC {
            n,
            formula_only,
            csv: as_csv,
        } => {
            let p = kneser(5, 2)?;
            let mut reports = Vec::new();
            for &n in n {
                let v: u128 = petersen_c_formula(n)?;
                let mut rep = FormulaReport::new("petersen_c", &[("n", n as i64)], &v);
                if !formula_only {
                    rep = rep.with_oracle(count_copies(&p, &h_with_edge(n, 2, 3, 0)?.graph)?);
                }
                reports.push(rep);
            }
            formula_outcome(&reports, *as_csv, &["n"])
        }
        VerifyCommand::Counterexample { n, k, q, formula_only } => {
            let rep = verify_counterexample(*n, *k, *q, !formula_only)?;
            let ok = rep.exact.as_ref().is_none_or(|e| e.reconciles);
            Outcome::json(&rep, ok)
        }
        VerifyCommand::TVsC {
            pattern,
            k,
            n,
            q,
            csv: as_csv,
        } => {
            let pat = resolve(pattern, None)?;
            let c: u128 = CriticalProfile::build(&pat.graph, *k, ProfileKind::AddedEdge, caps)?.minimum(*n)?;
            let mut rows = Vec::new();
            let mut ok = true;
            for &q in q {
                let t = t_exact(&pat.graph, *k, *n, q, caps)?;
                let bound = c.checked_mul(q as u128).ok_or(Error::Overflow("q c"))?;
                let holds = if q == 1 { t.value == c } else { t.value >= bound };
                ok &= holds;
                rows.push(json!({
                    "q": q,
                    "t": t.value.to_string(),
                    "q_times_c": bound.to_string(),
                    "placements": t.placements,
                    "argmin": t.argmin,
                    "holds": holds,
                }));
            }
            if *as_csv {
                let table: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        ["q", "t", "q_times_c", "placements", "holds"]
                            .iter()
                            .map(|k| r[k].as_str().map_or_else(|| r[k].to_string(), str::to_string))
                            .collect()
                    })
                    .collect();
                return Ok(Outcome {
                    body: csv(&["q", "t", "q_times_c", "placements", "holds"], &table),
                    ok,
                    summary: None,
                    inputs: vec![input("pattern", &pat)],
                });
            }
            let body = json!({"schema": 1, "pattern": pat.spec, "k": k, "n": n, "c": c.to_string(), "rows": rows});
            Ok(Outcome::json(&body, ok)?.with_inputs(vec![input("pattern", &pat)]))
        }
        VerifyCommand::Profile {
            pattern,
            k,
            n,
            kind,
            formula_only,
        } => {
            let pat = resolve(pattern, None)?;
            let (pk, name) = match kind {
                Kind::C => (ProfileKind::AddedEdge, "c"),
                Kind::D => (ProfileKind::Matching, "d"),
                Kind::F => (ProfileKind::DetachedEdge, "f"),
            };
            let profile = CriticalProfile::build(&pat.graph, *k, pk, caps)?;
            let sizes = profile.part_sizes(*n)?;
            // the minimum is taken over parts; report the part too
            let mut best: Option<(u128, usize)> = None;
            for (i, &s) in sizes.iter().enumerate() {
                if s as u64 >= profile.reserved() {
                    let v: u128 = profile.evaluate(&sizes, i)?;
                    if best.is_none_or(|(b, _)| v < b) {
                        best = Some((v, i));
                    }
                }
            }
            let (value, part) = best.ok_or_else(|| anyhow!("no part of {sizes:?} fits the added edges"))?;
            let params = [("n", *n as i64), ("k", *k as i64), ("part", part as i64)];
            let mut rep = FormulaReport::new(name, &params, &value);
            if !formula_only {
                let (r, k) = (profile.r, *k);
                let host = match kind {
                    Kind::C => h_with_edge(*n, r, k, part)?,
                    Kind::D => turan_with_matching(*n, r, k, part)?,
                    Kind::F => h_detached_edge(*n, r, k, part)?,
                };
                rep = rep.with_oracle(count_copies(&pat.graph, &host.graph)?);
            }
            let ok = rep.agreement != Some(false);
            Ok(Outcome::json(&rep, ok)?.with_inputs(vec![input("pattern", &pat)]))
        }
    }
}

fn formula_outcome(reports: &[FormulaReport], as_csv: bool, keys: &[&str]) -> Result<Outcome> {
    let ok = reports.iter().all(|r| r.agreement != Some(false));
    if as_csv {
        let mut header: Vec<&str> = keys.to_vec();
        header.extend(["formula", "oracle", "agreement"]);
        let rows: Vec<Vec<String>> = reports
            .iter()
            .map(|r| {
                let mut row: Vec<String> = keys.iter().map(|k| r.params[*k].to_string()).collect();
                row.push(r.formula_value.to_string());
                row.push(r.oracle_value.as_ref().map(ToString::to_string).unwrap_or_default());
                row.push(r.agreement.map(|a| a.to_string()).unwrap_or_default());
                row
            })
            .collect();
        return Ok(Outcome {
            body: csv(&header, &rows),
            ok,
            summary: None,
            inputs: Vec::new(),
        });
    }
    Outcome::json(&json!({"schema": 1, "reports": reports}), ok)
}

fn suite(name: &str, caps: &Caps) -> Result<Outcome> {
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name] };
    let mut reports = Vec::new();
    let mut summary = String::new();
    for n in names {
        let rep = suites::run(n, caps)?;
        summary.push_str(&rep.table());
        reports.push(rep);
    }
    let ok = reports.iter().all(|r| r.passed);
    let body: Value = if reports.len() == 1 {
        serde_json::to_value(&reports[0])?
    } else {
        json!({"schema": 1, "passed": ok, "suites": reports})
    };
    let mut out = Outcome::json(&body, ok)?;
    out.summary = Some(summary);
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let caps = cli.global.caps();
    match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Count(a) => count(a),
        Command::Check { what } => check(what, &caps),
        Command::Params { graph } => {
            let g = resolve(graph, None)?;
            let p = parameters(&g.graph, &caps)?;
            Ok(Outcome::json(&p, true)?.with_inputs(vec![input("graph", &g)]))
        }
        Command::Verify { what } => verify(what, &caps),
        Command::Suite { name } => suite(name, &caps),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_resource_cap() => 3,
        Some(Error::Consistency(_)) => 1,
        _ => 2,
    }
}

fn write_out(cli: &Cli, body: &str) -> Result<OutputRecord> {
    match &cli.global.out {
        Some(path) => {
            fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            Ok(OutputRecord::new(&path.display().to_string(), body.as_bytes()))
        }
        None => {
            print!("{body}");
            Ok(OutputRecord::new("-", body.as_bytes()))
        }
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let (code, inputs, outputs) = match dispatch(&cli) {
        Ok(outcome) => {
            if let Some(s) = &outcome.summary {
                eprint!("{s}");
                if !s.ends_with('\n') {
                    eprintln!();
                }
            }
            match write_out(&cli, &outcome.body) {
                Ok(rec) => (u8::from(!outcome.ok), outcome.inputs, vec![rec]),
                Err(e) => {
                    eprintln!("error: {e:#}");
                    (2, outcome.inputs, Vec::new())
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            (exit_code(&e), Vec::new(), Vec::new())
        }
    };
    if let Some(path) = &cli.global.manifest {
        let m = RunManifest::new(
            std::env::args().collect(),
            inputs,
            start.elapsed(),
            code.into(),
            outputs,
        );
        let text = serde_json::to_string_pretty(&m).expect("manifest serialises") + "\n";
        if let Err(e) = fs::write(path, text) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
