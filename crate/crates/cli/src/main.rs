//! Command-line interface for pattern-defined cellular automata: table
//! reproduction, idempotency verdicts, the natural order, subshift
//! analytics, and finite-group oracles.
//!
//! Results go to stdout and are deterministic for fixed inputs; a run
//! report with timings goes to stderr. Exit codes: 0 on success, 2 on
//! domain or parse errors, 3 on size-cap refusals.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use idemca::group::Group;
use idemca::idempotency::{classify, classify_all};
use idemca::order::{antichain_family, chain_family, hasse, natural_leq, order_char_crosscheck};
use idemca::pattern::{Alphabet, Pattern};
use idemca::record::{parse_group_spec, parse_subset, PatternRecord, VerdictJson};
use idemca::rule::{LocalRule, PatternCA};
use idemca::{Error, Result};

/// Environment variable overriding the dense-table cap (entry count).
const TABLE_CAP_VAR: &str = "IDEMCA_TABLE_CAP";

#[derive(Parser)]
#[command(name = "idemca", version, about = "Idempotent pattern CA toolbox")]
struct Cli {
    /// Cap the worker thread count (0 = one thread per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide idempotency of a pattern CA and report the reason.
    Classify(PatternArgs),
    /// Partition all binary patterns on a domain by idempotency (TSV).
    Table {
        #[arg(long, default_value = "zd:1")]
        group: String,
        /// Domain literal, e.g. `-1,0,1`.
        #[arg(long, allow_hyphen_values = true)]
        domain: String,
        #[arg(long, default_value_t = 2)]
        alphabet: u8,
    },
    /// Compare two idempotent pattern CA in the natural order.
    Order {
        /// Pattern record (inline JSON or a path).
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        /// Re-derive the verdict from image and kernel inclusions (Z only).
        #[arg(long)]
        crosscheck: bool,
    },
    /// Hasse diagram of a family of idempotents, as DOT.
    Hasse {
        #[arg(long, value_enum, default_value_t = Family::Table)]
        family: Family,
        /// Domain literal for `--family table`.
        #[arg(long, allow_hyphen_values = true)]
        domain: Option<String>,
        /// Family size for chain and antichain constructions.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Include the identity CA as the top node.
        #[arg(long)]
        include_identity: bool,
        /// Write the DOT text here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Subshift analytics for X_p over Z.
    #[command(subcommand)]
    Shift(ShiftCommand),
    /// Brute-force oracles on finite carriers.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Local-rule utilities.
    #[command(subcommand)]
    Rule(RuleCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Table,
    Chain,
    Antichain,
}

#[derive(Subcommand)]
enum ShiftCommand {
    /// Count the length-n words of X_p.
    Words {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Entropy of X_p by power iteration, in base 2 and natural log.
    Entropy {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Decide X_p subset of X_q.
    Subset {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Global idempotency by exhaustion over all configurations.
    Idem(PatternArgs),
    /// Fixed configurations, which must be exactly the p-avoiding ones.
    Fix {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum RuleCommand {
    /// Wolfram number of an elementary rule.
    Wolfram(RuleArgs),
    /// Minimal memory set and the reduced table.
    Mms(RuleArgs),
    /// Recover the defining pattern of a rule, if one exists.
    DetectPattern(RuleArgs),
}

/// A pattern CA described by flags or by a JSON record.
#[derive(Args)]
struct PatternArgs {
    #[arg(long, default_value = "zd:1")]
    group: String,
    /// Domain literal in display order, e.g. `-2,-1,0,1,2`.
    #[arg(long, allow_hyphen_values = true)]
    domain: Option<String>,
    /// Pattern values along the domain, e.g. `00010`.
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long, default_value_t = 2)]
    alphabet: u8,
    /// Write symbol; defaults to the binary complement of p(e).
    #[arg(long)]
    write: Option<u8>,
    /// JSON pattern record (inline or a path) instead of the flags above.
    #[arg(long)]
    job: Option<String>,
}

impl PatternArgs {
    fn record(&self) -> Result<PatternRecord> {
        if let Some(job) = &self.job {
            return PatternRecord::from_arg(job);
        }
        let (domain, pattern) = match (&self.domain, &self.pattern) {
            (Some(d), Some(p)) => (d, p),
            _ => {
                return Err(Error::Parse(
                    "supply --domain and --pattern, or --job".into(),
                ))
            }
        };
        let group = parse_group_spec(&self.group)?;
        let subset = parse_subset(&group, domain)?;
        let values = idemca::record::parse_symbols(pattern)?;
        let p = Pattern::new(subset, values, Alphabet::new(self.alphabet)?)?;
        Ok(PatternRecord::from_pattern(&p, &self.group, self.write))
    }

    fn pattern(&self) -> Result<Pattern> {
        self.record()?.to_pattern()
    }

    fn pattern_ca(&self) -> Result<PatternCA> {
        self.record()?.to_pattern_ca()
    }
}

/// Rule input: an explicit table string over a domain, or the pattern form.
#[derive(Args)]
struct RuleArgs {
    #[arg(long, default_value = "zd:1")]
    group: String,
    #[arg(long, allow_hyphen_values = true)]
    domain: Option<String>,
    /// Table string in descending input order (e.g. `01101110`).
    #[arg(long)]
    table: Option<String>,
    /// Pattern values, when the rule is given in pattern form.
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long, default_value_t = 2)]
    alphabet: u8,
    #[arg(long)]
    write: Option<u8>,
    /// JSON pattern record (inline or a path).
    #[arg(long)]
    job: Option<String>,
}

impl RuleArgs {
    fn rule(&self) -> Result<LocalRule> {
        if let Some(table) = &self.table {
            let group = parse_group_spec(&self.group)?;
            let domain = self
                .domain
                .as_ref()
                .ok_or_else(|| Error::Parse("--table needs --domain".into()))?;
            let memory = parse_subset(&group, domain)?;
            return LocalRule::from_table_string(table, memory, Alphabet::new(self.alphabet)?);
        }
        let args = PatternArgs {
            group: self.group.clone(),
            domain: self.domain.clone(),
            pattern: self.pattern.clone(),
            alphabet: self.alphabet,
            write: self.write,
            job: self.job.clone(),
        };
        Ok(args.pattern_ca()?.rule().clone())
    }
}

fn main() {
    let cli = Cli::parse();
    if let Ok(cap) = std::env::var(TABLE_CAP_VAR) {
        match cap.parse::<usize>() {
            Ok(cap) => idemca::set_table_cap(cap),
            Err(_) => {
                eprintln!("ignoring unparsable {TABLE_CAP_VAR}={cap:?}");
            }
        }
    }
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let started = Instant::now();
    let outcome = run(&cli.command);
    let elapsed = started.elapsed().as_secs_f64() * 1e3;
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    eprintln!(
        "{{\"command\":{:?},\"version\":\"{}\",\"elapsed_ms\":{elapsed:.3}}}",
        command,
        env!("CARGO_PKG_VERSION"),
    );
    if let Err(err) = outcome {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn run(command: &Command) -> Result<()> {
    match command {
        Command::Classify(args) => {
            let ca = args.pattern_ca()?;
            let verdict = classify(&ca)?;
            println!(
                "{}",
                serde_json::to_string(&VerdictJson::from_verdict(&verdict))?
            );
        }
        Command::Table {
            group,
            domain,
            alphabet,
        } => {
            let group = parse_group_spec(group)?;
            let subset = parse_subset(&group, domain)?;
            let table = classify_all(&subset, Alphabet::new(*alphabet)?)?;
            print!("{}", table.render_tsv());
        }
        Command::Order { p, q, crosscheck } => {
            let t1 = PatternRecord::from_arg(p)?.to_pattern_ca()?;
            let t2 = PatternRecord::from_arg(q)?.to_pattern_ca()?;
            let verdict = if *crosscheck {
                order_char_crosscheck(&t1, &t2)?
            } else {
                natural_leq(&t1, &t2)?
            };
            let cross = verdict
                .crosscheck
                .map(|c| serde_json::to_value(c).expect("serializable"))
                .unwrap_or(serde_json::Value::Null);
            println!(
                "{}",
                serde_json::json!({
                    "leq": verdict.leq,
                    "via": verdict.via,
                    "crosscheck": cross,
                })
            );
        }
        Command::Hasse {
            family,
            domain,
            n,
            include_identity,
            out,
        } => {
            let members = match family {
                Family::Table => {
                    let domain = domain
                        .as_ref()
                        .ok_or_else(|| Error::Parse("--family table needs --domain".into()))?;
                    let subset = parse_subset(&Group::integers(), domain)?;
                    let table = classify_all(&subset, Alphabet::binary())?;
                    table
                        .idempotent
                        .iter()
                        .map(|digits| {
                            let p = Pattern::from_digits(
                                subset.clone(),
                                digits,
                                Alphabet::binary(),
                            )?;
                            PatternCA::binary(p)
                        })
                        .collect::<Result<Vec<PatternCA>>>()?
                }
                Family::Chain => chain_family(
                    &Group::integers(),
                    &idemca::group::Element::int(1),
                    *n,
                    Alphabet::binary(),
                )?,
                Family::Antichain => {
                    let generators: Vec<idemca::group::Element> =
                        (1..=*n as i64).map(idemca::group::Element::int).collect();
                    antichain_family(&Group::integers(), &generators, *n, Alphabet::binary())?
                }
            };
            let poset = hasse(&members, *include_identity)?;
            for (a, b, reason) in &poset.skipped {
                eprintln!("skipped pair ({a},{b}): {reason}");
            }
            let dot = poset.to_dot();
            match out {
                Some(path) => std::fs::write(path, dot)?,
                None => print!("{dot}"),
            }
        }
        Command::Shift(shift) => run_shift(shift)?,
        Command::Oracle(oracle) => run_oracle(oracle)?,
        Command::Rule(rule) => run_rule(rule)?,
    }
    Ok(())
}

fn run_shift(command: &ShiftCommand) -> Result<()> {
    match command {
        ShiftCommand::Words { pattern, n, json } => {
            let p = pattern.pattern()?;
            let count = idemca::shiftspace::count_words(&p, *n)?;
            if *json {
                println!("{}", serde_json::json!({ "n": n, "count": count.to_string() }));
            } else {
                println!("{count}");
            }
        }
        ShiftCommand::Entropy { pattern, tol, json } => {
            let p = pattern.pattern()?;
            let estimate = idemca::shiftspace::entropy(&p, *tol)?;
            if *json {
                println!(
                    "{}",
                    serde_json::json!({
                        "log2": estimate.log2,
                        "ln": estimate.ln,
                        "spectral_radius": estimate.spectral_radius,
                        "iterations": estimate.iterations,
                    })
                );
            } else {
                println!("log2={:.12} ln={:.12}", estimate.log2, estimate.ln);
            }
        }
        ShiftCommand::Subset { p, q, json } => {
            let p = PatternRecord::from_arg(p)?.to_pattern()?;
            let q = PatternRecord::from_arg(q)?.to_pattern()?;
            let subset = idemca::shiftspace::sft_subset(&p, &q)?;
            if *json {
                println!("{}", serde_json::json!({ "subset": subset }));
            } else {
                println!("{subset}");
            }
        }
    }
    Ok(())
}

fn run_oracle(command: &OracleCommand) -> Result<()> {
    match command {
        OracleCommand::Idem(args) => {
            let ca = args.pattern_ca()?;
            let verdict = idemca::oracle::global_idempotent(ca.rule(), ca.group())?;
            println!("{verdict}");
        }
        OracleCommand::Fix { pattern, json } => {
            let ca = pattern.pattern_ca()?;
            let fixed = idemca::oracle::fix_set(ca.rule(), ca.group())?;
            let words: Vec<String> = fixed
                .iter()
                .map(|c| c.values.iter().map(|v| (b'0' + v) as char).collect())
                .collect();
            if *json {
                println!(
                    "{}",
                    serde_json::json!({ "count": words.len(), "fixed": words })
                );
            } else {
                for w in &words {
                    println!("{w}");
                }
            }
        }
    }
    Ok(())
}

fn run_rule(command: &RuleCommand) -> Result<()> {
    match command {
        RuleCommand::Wolfram(args) => {
            let rule = args.rule()?;
            println!("{}", rule.wolfram_number()?);
        }
        RuleCommand::Mms(args) => {
            let rule = args.rule()?;
            let (memory, reduced) = rule.minimal_memory_set();
            println!(
                "{}",
                serde_json::json!({
                    "memory": memory
                        .iter()
                        .map(idemca::record::JsonElement::from_element)
                        .collect::<Vec<_>>(),
                    "table": reduced.table_string(),
                })
            );
        }
        RuleCommand::DetectPattern(args) => {
            let rule = args.rule()?;
            match rule.as_pattern_rule() {
                Some((pattern, write)) => {
                    let record = PatternRecord::from_pattern(&pattern, &args.group, Some(write));
                    println!("{}", serde_json::to_string(&record)?);
                }
                None => println!("none"),
            }
        }
    }
    Ok(())
}

