//! Command-line front end: argument parsing, group loading and report
//! assembly on top of `charsupp-core`.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::Path;
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use charsupp_core::character::DEFAULT_TABLE_CAP;
use charsupp_core::families::{build_family, corpus, CorpusMember, FamilySpec, Profile};
use charsupp_core::presentation::{emit_group_file, parse_group_file, realize_with, spec_of, RealizeOptions};
use charsupp_core::support::{random_instances, sigma, verify_group, Summary, SuiteSelection, VerifyOptions};
use charsupp_core::{CharacterTable, CheckEntry, Controls, Group, Outcome};

/// Environment variable overriding the maximum group order.
pub const CAP_VAR: &str = "CHARSUPP_CAP";

#[derive(Parser, Debug)]
#[command(name = "charsupp", version, about = "Exact character tables of p-groups and checks on character supports")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// `lines` prints only report lines; summaries go to stderr.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for per-group work; defaults to the number of CPUs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Lines,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the character table of a group file (`-` reads stdin).
    Table { file: String },

    /// Support profile of every irreducible character, or of one.
    Support {
        file: String,
        /// 1-based character index.
        #[arg(long)]
        chi: Option<usize>,
    },

    /// Run the verification suites.
    #[command(group(ArgGroup::new("input").required(true).args(["file", "corpus"])))]
    Verify {
        file: Option<String>,
        #[arg(long)]
        corpus: Option<Profile>,
        #[arg(long, default_value = "all")]
        suite: SuiteSelection,
        /// Declare a negative control, as `<check>` or `<group>:<check>`.
        #[arg(long = "expect-fail", value_name = "ID")]
        expect_fail: Vec<String>,
    },

    /// Build a family member; `--emit` prints its group file.
    Family {
        name: String,
        /// `p=<p>` and optionally `k=<k>`.
        #[arg(required = true, num_args = 1..=2)]
        params: Vec<String>,
        #[arg(long)]
        emit: bool,
    },

    /// Check the σ-inequality on seeded random abelian instances.
    Sigma {
        #[arg(long)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 729)]
        max: usize,
    },
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<charsupp_core::Error> for Failure {
    fn from(e: charsupp_core::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Order, class count and report entries of one verified group.
type GroupReport = (usize, usize, Vec<CheckEntry>);

/// Parses `argv` (program name first), writes the report to `out` and
/// diagnostics to `err`, and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "usage error: {m}");
            2
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let cap = order_cap()?;
    let pool = match cli.jobs {
        Some(0) => return Err(Failure::Usage("--jobs must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    }
    .map_err(|e| Failure::Input(e.to_string()))?;
    let io = |e: io::Error| Failure::Input(e.to_string());
    match &cli.command {
        Command::Table { file } => {
            let (_, g) = load(file, cap)?;
            let t = CharacterTable::compute_with_cap(g, cap)?;
            out.write_all(t.render().as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Support { file, chi } => {
            let (id, g) = load(file, cap)?;
            let t = CharacterTable::compute_with_cap(g, cap)?;
            let rows: Vec<usize> = match chi {
                Some(k) if (1..=t.len()).contains(k) => vec![k - 1],
                Some(k) => return Err(Failure::Usage(format!("--chi {k} is outside 1..={}", t.len()))),
                None => (0..t.len()).collect(),
            };
            writeln!(out, "group {id} order={} classes={}", t.group().order(), t.len()).map_err(io)?;
            for i in rows {
                writeln!(out, "{}", support_line(&t, i)).map_err(io)?;
            }
            Ok(0)
        }
        Command::Verify {
            file,
            corpus: profile,
            suite,
            expect_fail,
        } => {
            let mut controls = Controls::bundled();
            for spec in expect_fail {
                controls.add(spec).map_err(|e| Failure::Usage(e.to_string()))?;
            }
            let members = match (file, profile) {
                (Some(f), None) => {
                    let (id, group) = load(f, cap)?;
                    vec![CorpusMember { id, group }]
                }
                (None, Some(p)) => corpus(*p)?,
                _ => return Err(Failure::Usage("give a group file or --corpus, not both".into())),
            };
            let opts = VerifyOptions {
                suites: suite.clone(),
                ..VerifyOptions::default()
            };
            let results: Vec<Result<GroupReport, String>> = pool.install(|| {
                members
                    .par_iter()
                    .map(|m| {
                        let t = CharacterTable::compute_with_cap(m.group.clone(), cap).map_err(|e| format!("{}: {e}", m.id))?;
                        let entries = verify_group(&m.id, &t, &opts, &controls).map_err(|e| format!("{}: {e}", m.id))?;
                        Ok((t.group().order(), t.len(), entries))
                    })
                    .collect()
            });
            let mut all = Vec::new();
            for (m, r) in members.iter().zip(results) {
                let (order, classes, entries) = r.map_err(Failure::Input)?;
                if cli.format == Format::Text {
                    writeln!(out, "group {} order={order} classes={classes}", m.id).map_err(io)?;
                }
                for e in &entries {
                    writeln!(out, "{}", e.line()).map_err(io)?;
                }
                all.extend(entries);
            }
            finish(cli.format, &Summary::of(&all, &controls), out, err).map_err(io)
        }
        Command::Family { name, params, emit } => {
            let (p, k) = family_params(params)?;
            let spec = FamilySpec::from_name(name, p, k)?;
            let g = build_family(&spec)?;
            if g.order() > cap {
                return Err(Failure::Input(format!("order {} exceeds the cap {cap}", g.order())));
            }
            if *emit {
                out.write_all(emit_group_file(&spec_of(&g)).as_bytes()).map_err(io)?;
            } else {
                let rep = g.series_report();
                let show = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
                writeln!(
                    out,
                    "{spec} order={} exponent={} class={} derived_length={} classes={}",
                    g.order(),
                    g.exponent(),
                    show(rep.nilpotence_class),
                    show(rep.derived_length),
                    g.conjugacy_classes().len()
                )
                .map_err(io)?;
            }
            Ok(0)
        }
        Command::Sigma { random, seed, max } => {
            let instances = random_instances(*random, *seed, *max).map_err(|e| Failure::Usage(e.to_string()))?;
            let reports: Vec<Result<Vec<CheckEntry>, String>> = pool.install(|| {
                instances
                    .par_iter()
                    .enumerate()
                    .map(|(i, x)| {
                        let r = sigma(&x.action, &x.lambda, x.conductor).map_err(|e| format!("{}: {e}", x.label))?;
                        let group = format!("sigma{}_{}", i + 1, x.label);
                        let mut entries = vec![CheckEntry {
                            check: "sigma.inequality",
                            group: group.clone(),
                            chi: None,
                            outcome: match (r.asserted, r.holds) {
                                (false, _) => Outcome::Skip,
                                (true, true) => Outcome::Pass,
                                (true, false) => Outcome::Fail,
                            },
                            declared: false,
                            expected: if r.asserted { format!("sigma<={}", r.bound) } else { "hyp:H_abelian".into() },
                            got: r.sigma.to_string(),
                        }];
                        if r.h_order == 1 {
                            entries.push(CheckEntry {
                                check: "sigma.equality",
                                group,
                                chi: None,
                                outcome: if r.sigma == r.a_order { Outcome::Pass } else { Outcome::Fail },
                                declared: false,
                                expected: format!("sigma={}", r.a_order),
                                got: r.sigma.to_string(),
                            });
                        }
                        Ok(entries)
                    })
                    .collect()
            });
            let mut all = Vec::new();
            for r in reports {
                all.extend(r.map_err(Failure::Input)?);
            }
            for e in &all {
                writeln!(out, "{}", e.line()).map_err(io)?;
            }
            finish(cli.format, &Summary::of(&all, &Controls::default()), out, err).map_err(io)
        }
    }
}

fn finish(format: Format, summary: &Summary, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    match format {
        Format::Text => writeln!(out, "{summary}")?,
        Format::Lines => writeln!(err, "{summary}")?,
    }
    Ok(summary.exit_code())
}

fn order_cap() -> CliResult<usize> {
    match std::env::var(CAP_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(c) if c > 0 => Ok(c),
            _ => Err(Failure::Usage(format!("{CAP_VAR} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(DEFAULT_TABLE_CAP),
    }
}

/// Reads and realizes a group file; the id is the file stem, `stdin` for `-`.
fn load(path: &str, cap: usize) -> CliResult<(String, Arc<Group>)> {
    let (id, text) = if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        ("stdin".to_string(), s)
    } else {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
        let stem = Path::new(path)
            .file_stem()
            .map_or_else(|| path.to_string(), |s| s.to_string_lossy().into_owned());
        (stem, text)
    };
    let spec = parse_group_file(&text).map_err(|e| Failure::Input(format!("{id}: {e}")))?;
    let opts = RealizeOptions {
        cap,
        ..RealizeOptions::default()
    };
    let g = realize_with(&spec, &opts).map_err(|e| Failure::Input(format!("{id}: {e}")))?;
    Ok((id, Arc::new(g)))
}

fn family_params(params: &[String]) -> CliResult<(u32, Option<u32>)> {
    let mut p = None;
    let mut k = None;
    for raw in params {
        let (key, value) = raw
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("expected key=value, got `{raw}`")))?;
        let n: u32 = value
            .parse()
            .map_err(|_| Failure::Usage(format!("`{raw}`: not a number")))?;
        let slot = match key {
            "p" => &mut p,
            "k" => &mut k,
            _ => return Err(Failure::Usage(format!("unknown parameter `{key}`"))),
        };
        if slot.replace(n).is_some() {
            return Err(Failure::Usage(format!("`{key}` given twice")));
        }
    }
    let p = p.ok_or_else(|| Failure::Usage("missing p=<p>".into()))?;
    Ok((p, k))
}

fn support_line(t: &CharacterTable, chi: usize) -> String {
    let s = t.support_profile(chi);
    let classes: Vec<String> = s.support_classes.iter().map(|c| (c + 1).to_string()).collect();
    let a2 = s.bound_a2.map_or_else(|| "-".to_string(), |b| b.to_string());
    format!(
        "chi={} deg={} k_supp={} support={} max_order={} index={} order_bound={} gvz={}",
        chi + 1,
        t.row(chi).degree(),
        s.k_supp,
        classes.join(","),
        s.max_order,
        s.bound_a1,
        a2,
        if s.gvz { "yes" } else { "no" }
    )
}
