//! The `freesub` command line.
//!
//! Exit codes: 0 success, 1 a `check-*` command (or `selftest`) found a
//! violated property, 2 bad input, 3 the quotient enumeration cap was hit.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::checks::{self, basis_strings, Outcome};
use crate::error::{Error, Result};
use crate::overgroups::Enumerator;
use crate::pullback::{check_strong_inert, hanna_neumann_check, intersect};
use crate::random::random_subgroup;
use crate::stallings::CoreGraph;
use crate::words::{Alphabet, Word};

#[derive(Debug, Parser)]
#[command(
    name = "freesub",
    version,
    about = "Subgroups of free groups via Stallings graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Debug, clap::Args)]
pub struct Common {
    /// Rank of the ambient free group. Inferred from the largest letter
    /// used when omitted (except for `analyze`, where it is required).
    #[arg(long, short = 'r')]
    pub ambient_rank: Option<usize>,
    #[arg(long, short = 'f', value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Load the subgroup from a core graph JSON document instead of words.
    #[arg(long)]
    pub graph: Option<String>,
    /// Generators of the subgroup; `@path` reads one word per line.
    pub words: Vec<String>,
}

#[derive(Debug, clap::Args)]
pub struct Campaign {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random partner subgroups per tested subgroup.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Longest random generator.
    #[arg(long, default_value_t = 10)]
    pub max_len: usize,
    /// Number of random subgroups to test when none is given.
    #[arg(long, default_value_t = 20)]
    pub corpus: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fold the generators into a core graph.
    Fold(Common),
    /// Rank and reduced rank.
    Rank(Common),
    /// A free basis read off a spanning tree.
    Basis(Common),
    /// Membership of each positional word in `--subgroup`.
    Member {
        #[command(flatten)]
        common: Common,
        #[arg(long, short = 's', value_delimiter = ',', required = true)]
        subgroup: Vec<String>,
    },
    /// Intersection with the subgroup given by `--with`.
    Intersect {
        #[command(flatten)]
        common: Common,
        #[arg(long, short = 'w', value_delimiter = ',', required = true)]
        with: Vec<String>,
    },
    /// Join with the subgroup given by `--with`.
    Join {
        #[command(flatten)]
        common: Common,
        #[arg(long, short = 'w', value_delimiter = ',', required = true)]
        with: Vec<String>,
    },
    /// Count the folded quotients, with a rank histogram.
    Quotients {
        #[command(flatten)]
        common: Common,
        /// Also list every quotient's basis.
        #[arg(long)]
        members: bool,
    },
    /// Minimum rank of an overgroup.
    Pibar(Common),
    /// The minimum-rank overgroups and their maximum.
    Crit(Common),
    /// The L²-closure.
    Closure(Common),
    /// Full report: π̄, Betti numbers, predicates, closure.
    Analyze(Common),
    /// Compressed ⇔ inert, tested against random subgroups.
    CheckInert {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        campaign: Campaign,
    },
    /// Strong inertness certificate(s).
    CheckStrongInert {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        campaign: Campaign,
        /// Test against this `U` only and print its certificate.
        #[arg(long, short = 'w', value_delimiter = ',')]
        with: Option<Vec<String>>,
        /// Use the bound brk(U)·brk(H) instead of brk(U).
        #[arg(long)]
        hanna_neumann: bool,
    },
    /// Meet/join closure of Crit and the closure laws.
    CheckCritLattice {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        campaign: Campaign,
    },
    /// Write the core graph as JSON or DOT.
    Export(Common),
    /// Run every verification suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Subgroups sampled per suite.
        #[arg(long, default_value_t = 20)]
        budget: usize,
        /// Include wall-clock timings (makes the report non-reproducible).
        #[arg(long)]
        timings: bool,
    },
}

/// Parses `args` and runs the command. Results go to `out`, diagnostics to
/// `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli.command, &Enumerator::from_env(), out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::EnumerationLimit { .. } => 3,
                Error::Internal(_) => 1,
                _ => 2,
            }
        }
    }
}

fn read_words(items: &[String]) -> Result<Vec<String>> {
    let mut words = Vec::new();
    for item in items {
        if let Some(path) = item.strip_prefix('@') {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read {path}: {e}")))?;
            words.extend(
                text.lines()
                    .map(str::trim)
                    .filter(|l| !l.starts_with('#'))
                    .map(str::to_owned),
            );
        } else {
            words.push(item.clone());
        }
    }
    Ok(words)
}

/// Largest generator index mentioned in any of the word lists.
fn max_letter(lists: &[&[String]]) -> usize {
    lists
        .iter()
        .flat_map(|l| l.iter())
        .flat_map(|w| w.chars())
        .filter(|c| c.is_ascii_alphabetic())
        .map(|c| c.to_ascii_lowercase() as usize - 'a' as usize + 1)
        .max()
        .unwrap_or(1)
}

struct Inputs {
    alphabet: Alphabet,
    h: CoreGraph,
}

fn load(common: &Common, others: &[&[String]]) -> Result<Inputs> {
    let words = read_words(&common.words)?;
    if let Some(path) = &common.graph {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {path}: {e}")))?;
        let g = CoreGraph::from_json(&text)?;
        let alphabet = match common.ambient_rank {
            Some(r) => Alphabet::new(r)?,
            None => g.alphabet(),
        };
        return Ok(Inputs {
            alphabet,
            h: g.widen(alphabet)?,
        });
    }
    let mut lists: Vec<&[String]> = vec![&words];
    lists.extend_from_slice(others);
    let rank = common.ambient_rank.unwrap_or_else(|| max_letter(&lists));
    let alphabet = Alphabet::new(rank)?;
    Ok(Inputs {
        alphabet,
        h: subgroup(&words, alphabet)?,
    })
}

fn subgroup(words: &[String], alphabet: Alphabet) -> Result<CoreGraph> {
    let gens = words
        .iter()
        .map(|w| Word::parse(w, alphabet))
        .collect::<Result<Vec<_>>>()?;
    CoreGraph::from_generators(&gens, alphabet)
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?).map_err(io_err)
}

fn io_err(e: std::io::Error) -> Error {
    Error::Input(format!("write failed: {e}"))
}

fn emit_graph(out: &mut dyn Write, g: &CoreGraph, format: Format) -> Result<()> {
    let text = match format {
        Format::Json => g.to_json_pretty(),
        Format::Dot => g.to_dot(),
        Format::Text => {
            let mut s = format!(
                "vertices {} edges {} rank {}\n",
                g.vertex_count(),
                g.edge_count(),
                g.rank()
            );
            for w in g.basis() {
                s.push_str(&w.pretty());
                s.push('\n');
            }
            s.trim_end().to_owned()
        }
    };
    writeln!(out, "{}", text.trim_end()).map_err(io_err)
}

fn emit_basis(out: &mut dyn Write, key: &str, g: &CoreGraph, format: Format) -> Result<()> {
    match format {
        Format::Json => emit_json(out, &json!({ key: basis_strings(g), "rank": g.rank() })),
        Format::Dot => emit_graph(out, g, Format::Dot),
        Format::Text => {
            for w in g.basis() {
                writeln!(out, "{}", w.pretty()).map_err(io_err)?;
            }
            Ok(())
        }
    }
}

fn execute(command: &Command, en: &Enumerator, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Fold(c) | Command::Export(c) => {
            let i = load(c, &[])?;
            let format = match (command, c.format) {
                (Command::Export(_), Format::Text) => Format::Json,
                (_, f) => f,
            };
            emit_graph(out, &i.h, format)?;
        }
        Command::Rank(c) => {
            let i = load(c, &[])?;
            match c.format {
                Format::Json => emit_json(
                    out,
                    &json!({"rank": i.h.rank(), "reduced_rank": i.h.reduced_rank()}),
                )?,
                _ => writeln!(out, "{}", i.h.rank()).map_err(io_err)?,
            }
        }
        Command::Basis(c) => {
            let i = load(c, &[])?;
            emit_basis(out, "basis", &i.h, c.format)?;
        }
        Command::Member {
            common,
            subgroup: gens,
        } => {
            let gens = read_words(gens)?;
            let queries = read_words(&common.words)?;
            let rank = common
                .ambient_rank
                .unwrap_or_else(|| max_letter(&[&gens, &queries]));
            let alphabet = Alphabet::new(rank)?;
            let h = subgroup(&gens, alphabet)?;
            let mut results = Vec::new();
            for q in &queries {
                let w = Word::parse(q, alphabet)?;
                results.push((w.to_string(), h.accepts(&w)));
            }
            match common.format {
                Format::Json => emit_json(
                    out,
                    &serde_json::Value::Array(
                        results
                            .iter()
                            .map(|(w, m)| json!({"word": w, "member": m}))
                            .collect(),
                    ),
                )?,
                _ => {
                    for (_, m) in results {
                        writeln!(out, "{m}").map_err(io_err)?;
                    }
                }
            }
        }
        Command::Intersect { common, with } | Command::Join { common, with } => {
            let with = read_words(with)?;
            let i = load(common, &[&with])?;
            let k = subgroup(&with, i.alphabet)?;
            let result = if matches!(command, Command::Intersect { .. }) {
                intersect(&i.h, &k)?
            } else {
                i.h.join(&k)?
            };
            emit_basis(out, "basis", &result, common.format)?;
        }
        Command::Quotients { common, members } => {
            let i = load(common, &[])?;
            let q = en.quotients(&i.h)?;
            match common.format {
                Format::Json => {
                    let mut v = json!({
                        "count": q.len(),
                        "min_rank": q.min_rank(),
                        "histogram": q.rank_histogram(),
                    });
                    if *members {
                        v["members"] = q.members().iter().map(basis_strings).collect();
                    }
                    emit_json(out, &v)?;
                }
                _ => {
                    writeln!(out, "count {}", q.len()).map_err(io_err)?;
                    for (rank, count) in q.rank_histogram() {
                        writeln!(out, "rank {rank}: {count}").map_err(io_err)?;
                    }
                    if *members {
                        for m in q.members() {
                            writeln!(out, "{}", pretty_basis(m)).map_err(io_err)?;
                        }
                    }
                }
            }
        }
        Command::Pibar(c) => {
            let i = load(c, &[])?;
            let p = en.pi_bar(&i.h)?;
            match c.format {
                Format::Json => emit_json(out, &json!({ "pi_bar": p }))?,
                _ => writeln!(out, "{p}").map_err(io_err)?,
            }
        }
        Command::Crit(c) => {
            let i = load(c, &[])?;
            let crit = en.crit(&i.h)?;
            match c.format {
                Format::Json => emit_json(
                    out,
                    &json!({
                        "pi_bar": crit.pi_bar,
                        "members": crit.members.iter().map(basis_strings).collect::<Vec<_>>(),
                        "closure": basis_strings(&crit.closure),
                    }),
                )?,
                _ => {
                    writeln!(out, "pi_bar {}", crit.pi_bar).map_err(io_err)?;
                    for m in &crit.members {
                        writeln!(out, "member {}", pretty_basis(m)).map_err(io_err)?;
                    }
                    writeln!(out, "closure {}", pretty_basis(&crit.closure)).map_err(io_err)?;
                }
            }
        }
        Command::Closure(c) => {
            let i = load(c, &[])?;
            let closure = en.l2_closure(&i.h)?;
            emit_basis(out, "closure", &closure, c.format)?;
        }
        Command::Analyze(c) => {
            let Some(ambient) = c.ambient_rank else {
                return Err(Error::Input(
                    "analyze needs --ambient-rank (the Betti numbers depend on it)".into(),
                ));
            };
            let i = load(c, &[])?;
            let r = en.analyze(&i.h, ambient)?;
            match c.format {
                Format::Json => emit_json(out, &serde_json::to_value(&r)?)?,
                _ => {
                    let v = serde_json::to_value(&r)?;
                    for (k, val) in v.as_object().expect("report is an object") {
                        let shown = match val {
                            serde_json::Value::Array(ws) if ws.is_empty() => "1".to_owned(),
                            serde_json::Value::Array(ws) => ws
                                .iter()
                                .map(|w| w.as_str().unwrap_or_default().to_owned())
                                .collect::<Vec<_>>()
                                .join(", "),
                            other => other.to_string(),
                        };
                        writeln!(out, "{k}: {shown}").map_err(io_err)?;
                    }
                }
            }
        }
        Command::CheckInert { common, campaign } => {
            return run_campaign(
                out,
                "check-inert",
                common,
                campaign,
                campaign.corpus,
                |h, seed| checks::inert(en, h, campaign.trials, campaign.max_len, seed),
            );
        }
        Command::CheckCritLattice { common, campaign } => {
            // the lattice check has no inner sampling, so --trials counts subgroups
            return run_campaign(
                out,
                "check-crit-lattice",
                common,
                campaign,
                campaign.trials,
                |h, _| checks::crit_lattice(en, h),
            );
        }
        Command::CheckStrongInert {
            common,
            campaign,
            with,
            hanna_neumann,
        } => {
            if let Some(with) = with {
                let with = read_words(with)?;
                let i = load(common, &[&with])?;
                let u = subgroup(&with, i.alphabet)?;
                let cert = if *hanna_neumann {
                    hanna_neumann_check(&u, &i.h)?
                } else {
                    check_strong_inert(&u, &i.h)?
                };
                emit_json(out, &serde_json::to_value(&cert)?)?;
                return Ok(if cert.holds { 0 } else { 1 });
            }
            let hn = *hanna_neumann;
            return run_campaign(
                out,
                "check-strong-inert",
                common,
                campaign,
                campaign.corpus,
                |h, seed| {
                    if hn {
                        hanna_neumann_campaign(h, campaign, seed)
                    } else {
                        checks::strong_inert(en, h, campaign.trials, campaign.max_len, seed)
                    }
                },
            );
        }
        Command::Selftest {
            seed,
            budget,
            timings,
        } => {
            let report = checks::selftest(en, *seed, *budget, *timings)?;
            emit_json(out, &serde_json::to_value(&report)?)?;
            return Ok(if report.passed { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn hanna_neumann_campaign(h: &CoreGraph, campaign: &Campaign, seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Outcome::default();
    for _ in 0..campaign.trials {
        let gens = rng.gen_range(1..=3);
        let u = random_subgroup(&mut rng, h.alphabet(), gens, campaign.max_len);
        let cert = hanna_neumann_check(&u, h)?;
        out.checked += 1;
        if !cert.holds {
            out.counterexample = Some(checks::Counterexample {
                property: "strengthened Hanna Neumann inequality".into(),
                ambient_rank: h.alphabet().rank(),
                subgroup: basis_strings(h),
                other: Some(basis_strings(&u)),
                detail: format!("sum {} > bound {}", cert.sum, cert.bound),
            });
            break;
        }
    }
    Ok(out)
}

fn pretty_basis(g: &CoreGraph) -> String {
    let words: Vec<String> = g.basis().iter().map(Word::pretty).collect();
    format!("<{}>", words.join(", "))
}

/// Runs `check` on the given subgroup, or on a seeded random corpus when no
/// subgroup is given. On failure prints a certificate with a replay line
/// and returns exit code 1.
fn run_campaign(
    out: &mut dyn Write,
    name: &str,
    common: &Common,
    campaign: &Campaign,
    count: usize,
    mut check: impl FnMut(&CoreGraph, u64) -> Result<Outcome>,
) -> Result<i32> {
    let mut subjects: Vec<(CoreGraph, u64)> = Vec::new();
    if common.words.is_empty() && common.graph.is_none() {
        let rank = common.ambient_rank.unwrap_or(2);
        let alphabet = Alphabet::new(rank)?;
        let mut rng = ChaCha8Rng::seed_from_u64(campaign.seed);
        for _ in 0..count {
            let h = crate::random::random_small_subgroup(
                &mut rng,
                alphabet,
                3,
                6,
                checks::CAMPAIGN_MAX_VERTICES,
            );
            subjects.push((h, rng.gen()));
        }
    } else {
        let i = load(common, &[])?;
        subjects.push((i.h, campaign.seed));
    }
    let mut checked = 0;
    for (h, seed) in &subjects {
        let o = check(h, *seed)?;
        checked += o.checked;
        if let Some(c) = o.counterexample {
            let replay = format!(
                "freesub {name} --ambient-rank {} --seed {seed} --trials {} --max-len {} {}",
                h.alphabet().rank(),
                campaign.trials,
                campaign.max_len,
                basis_strings(h).join(" ")
            );
            emit_json(
                out,
                &json!({
                    "holds": false,
                    "checked": checked,
                    "counterexample": c,
                    "seed": seed,
                    "replay": replay,
                }),
            )?;
            return Ok(1);
        }
    }
    emit_json(
        out,
        &json!({"holds": true, "subgroups": subjects.len(), "checked": checked}),
    )?;
    Ok(0)
}
