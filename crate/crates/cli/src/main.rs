//! Command-line surface for the synckit toolkit.
//!
//! Exit codes: 0 when the queried property holds (or generation succeeded),
//! 1 when it fails (a witness is printed when one exists), 2 on usage,
//! parse, or cap errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use synckit::decide::{
    self, intersection_nonempty_with_stats, syn_equality_with_stats, syn_inclusion_with_stats,
    syn_strict_inclusion_with_stats, DecisionOutcome, SearchStats, Side,
};
use synckit::gadgets::{
    binarize, build_gadget_a, build_gadget_b, build_witness_i, normalize_instance, LetterOrder,
    ReductionInstance,
};
use synckit::rc::{rc_report_with, RcMethod, DEFAULT_ENUM_BUDGET};
use synckit::sync::{is_reset_word, is_synchronizing, shortest_reset_word, syn_language_dfa};
use synckit::{Alphabet, Dfa, Word, DEFAULT_PAIR_CAP, DEFAULT_SUBSET_CAP};

#[derive(Parser)]
#[command(
    name = "synckit",
    version,
    about = "Synchronizing automata: reset words, reset-language decisions, gadget generators"
)]
struct Cli {
    /// Emit a JSON verdict on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Attach search statistics (elapsed time, nodes) to the output.
    #[arg(long, global = true)]
    stats: bool,

    /// Cap on discovered subset states in powerset-style searches.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBSET_CAP)]
    subset_cap: usize,

    /// Cap on discovered nodes in pair-of-image-sets searches.
    #[arg(long, global = true, default_value_t = DEFAULT_PAIR_CAP)]
    pair_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synchronization verdict and canonical shortest reset word.
    Check {
        file: PathBuf,
        /// Only decide synchronization; skip the shortest-word search.
        #[arg(long)]
        no_word: bool,
    },
    /// Test whether a word is a reset word for the automaton.
    Member {
        file: PathBuf,
        /// Letters separated by whitespace; a contiguous string is accepted
        /// when every alphabet letter is a single character.
        #[arg(long)]
        word: String,
    },
    /// Minimal acceptor of the reset-word language.
    Synlang {
        file: PathBuf,
        /// Write the acceptor here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// State complexity of the reset-word language.
    Sc { file: PathBuf },
    /// Test whether an acceptor's language is a two-sided ideal.
    Ideal { file: PathBuf },
    /// Test equality of two reset-word languages.
    Equal { a: PathBuf, b: PathBuf },
    /// Test inclusion of the first reset-word language in the second.
    Include { a: PathBuf, b: PathBuf },
    /// Test strict inclusion of the first reset-word language in the second.
    Strict { a: PathBuf, b: PathBuf },
    /// Reset-complexity report with exhaustive search up to --max states.
    Rc {
        file: PathBuf,
        /// Largest candidate size to search exhaustively.
        #[arg(long)]
        max: usize,
    },
    /// Shortest word accepted by all of the given acceptors, if any.
    Intersect { files: Vec<PathBuf> },
    /// Generate gadget automata and products.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    /// Instance gadget built from acceptor components (normalized first).
    GadgetA {
        components: Vec<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// The fixed 3-state automaton synchronized by the witness ideal.
    GadgetB {
        /// Base alphabet letters, whitespace separated.
        #[arg(long)]
        sigma: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Acceptor for the witness ideal over sigma + {x,y,z}.
    WitnessI {
        #[arg(long)]
        sigma: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Binary {mu, lambda} lift of a unique-sink automaton.
    Binarize {
        file: PathBuf,
        /// Letter order d1..dk; defaults to the automaton's alphabet order.
        #[arg(long)]
        order: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Full synchronous product of two automata.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct OutArg {
    /// Write the generated automaton here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

struct Report {
    exit: u8,
    human: String,
    payload: Value,
    nodes: Option<u64>,
}

impl Report {
    fn new(exit: u8, human: impl Into<String>, payload: Value) -> Self {
        Report {
            exit,
            human: human.into(),
            payload,
            nodes: None,
        }
    }

    fn with_nodes(mut self, stats: SearchStats) -> Self {
        self.nodes = Some(stats.nodes_expanded);
        self
    }
}

fn load(path: &Path) -> Result<Dfa, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Dfa::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_word(raw: &str, alphabet: &Alphabet) -> Result<Word, String> {
    let single_char = alphabet.letters().iter().all(|l| l.chars().count() == 1);
    let mut letters: Vec<String> = Vec::new();
    for token in raw.split_whitespace() {
        if alphabet.contains(token) {
            letters.push(token.to_string());
        } else if single_char {
            for c in token.chars() {
                let letter = c.to_string();
                if !alphabet.contains(&letter) {
                    return Err(format!("unknown letter `{c}`"));
                }
                letters.push(letter);
            }
        } else {
            return Err(format!("unknown letter `{token}`"));
        }
    }
    Ok(Word::new(letters))
}

fn parse_sigma(raw: &str) -> Result<Alphabet, String> {
    Alphabet::new(raw.split_whitespace().map(str::to_string)).map_err(|e| e.to_string())
}

fn witness_tokens(word: &Word) -> Value {
    Value::Array(
        word.letters()
            .iter()
            .map(|l| Value::String(l.clone()))
            .collect(),
    )
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn decision_report(outcome: DecisionOutcome, stats: SearchStats) -> Report {
    let holds = outcome.holds();
    let mut payload = json!({ "verdict": if holds { "holds" } else { "fails" } });
    let mut human = if holds { "holds".to_string() } else { "fails".to_string() };
    if let Some(witness) = &outcome.witness {
        payload["witness"] = witness_tokens(witness);
        let side = outcome.direction.expect("witness carries a direction");
        payload["direction"] = Value::String(side_name(side).to_string());
        human.push_str(&format!(
            "; witness: {witness} (reset for the {} input only)",
            side_name(side)
        ));
    }
    Report::new(if holds { 0 } else { 1 }, human, payload).with_nodes(stats)
}

fn emit_generated(dfa: &Dfa, out: &OutArg, label: &str) -> Result<Report, String> {
    let text = dfa.serialize();
    match &out.output {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            Ok(Report::new(
                0,
                format!("wrote {} ({} states) to {}", label, dfa.state_count(), path.display()),
                json!({ "verdict": "ok", "states": dfa.state_count(), "path": path.display().to_string() }),
            ))
        }
        None => Ok(Report::new(
            0,
            text.clone(),
            json!({ "verdict": "ok", "states": dfa.state_count(), "dfa": text }),
        )),
    }
}

fn method_name(method: RcMethod) -> &'static str {
    match method {
        RcMethod::Polynomial1 => "polynomial-1",
        RcMethod::Polynomial2 => "polynomial-2",
        RcMethod::Exhaustive => "exhaustive",
        RcMethod::BoundOnly => "bound-only",
    }
}

fn run(cli: &Cli) -> Result<Report, String> {
    let subset_cap = cli.subset_cap;
    let pair_cap = cli.pair_cap;
    match &cli.command {
        Command::Check { file, no_word } => {
            let d = load(file)?;
            if *no_word {
                if is_synchronizing(&d) {
                    Ok(Report::new(0, "synchronizing", json!({ "verdict": "synchronizing" })))
                } else {
                    Ok(Report::new(
                        1,
                        "not synchronizing",
                        json!({ "verdict": "not synchronizing" }),
                    ))
                }
            } else {
                let report = shortest_reset_word(&d, subset_cap).map_err(|e| e.to_string())?;
                if report.synchronizing {
                    let word = report.shortest_reset.expect("synchronizing report has a word");
                    Ok(Report::new(
                        0,
                        format!("synchronizing; shortest reset word: {word} (length {})", word.len()),
                        json!({ "verdict": "synchronizing", "witness": witness_tokens(&word) }),
                    ))
                } else {
                    Ok(Report::new(
                        1,
                        "not synchronizing",
                        json!({ "verdict": "not synchronizing" }),
                    ))
                }
            }
        }
        Command::Member { file, word } => {
            let d = load(file)?;
            let word = parse_word(word, d.alphabet())?;
            if is_reset_word(&d, &word).map_err(|e| e.to_string())? {
                Ok(Report::new(0, "reset word", json!({ "verdict": "reset" })))
            } else {
                Ok(Report::new(1, "not a reset word", json!({ "verdict": "not reset" })))
            }
        }
        Command::Synlang { file, output } => {
            let d = load(file)?;
            let lang = syn_language_dfa(&d, subset_cap).map_err(|e| e.to_string())?;
            emit_generated(
                &lang,
                &OutArg {
                    output: output.clone(),
                },
                "reset-word language acceptor",
            )
        }
        Command::Sc { file } => {
            let d = load(file)?;
            let sc = synckit::sync::state_complexity(&d, subset_cap).map_err(|e| e.to_string())?;
            Ok(Report::new(
                0,
                format!("sc = {sc}"),
                json!({ "verdict": "ok", "sc": sc }),
            ))
        }
        Command::Ideal { file } => {
            let d = load(file)?;
            if decide::is_ideal(&d, subset_cap).map_err(|e| e.to_string())? {
                Ok(Report::new(0, "ideal", json!({ "verdict": "ideal" })))
            } else {
                Ok(Report::new(1, "not ideal", json!({ "verdict": "not ideal" })))
            }
        }
        Command::Equal { a, b } => {
            let (a, b) = (load(a)?, load(b)?);
            let (outcome, stats) =
                syn_equality_with_stats(&a, &b, pair_cap).map_err(|e| e.to_string())?;
            Ok(decision_report(outcome, stats))
        }
        Command::Include { a, b } => {
            let (a, b) = (load(a)?, load(b)?);
            let (outcome, stats) =
                syn_inclusion_with_stats(&a, &b, pair_cap).map_err(|e| e.to_string())?;
            Ok(decision_report(outcome, stats))
        }
        Command::Strict { a, b } => {
            let (a, b) = (load(a)?, load(b)?);
            let (outcome, stats) =
                syn_strict_inclusion_with_stats(&a, &b, pair_cap).map_err(|e| e.to_string())?;
            Ok(decision_report(outcome, stats))
        }
        Command::Rc { file, max } => {
            let d = load(file)?;
            let report = rc_report_with(&d, *max, DEFAULT_ENUM_BUDGET, pair_cap, subset_cap)
                .map_err(|e| e.to_string())?;
            let mut payload = json!({
                "verdict": if report.exact { "exact" } else { "bound" },
                "rc_lower": report.rc_lower,
                "method": method_name(report.method),
            });
            let mut human = if report.exact {
                format!("rc = {} (method {})", report.rc_lower, method_name(report.method))
            } else {
                format!("rc >= {} (method {})", report.rc_lower, method_name(report.method))
            };
            if let Some(upper) = report.rc_upper {
                payload["rc_upper"] = json!(upper);
            }
            if let Some(sc) = report.sc {
                payload["sc"] = json!(sc);
                human.push_str(&format!("; sc = {sc}"));
            }
            Ok(Report::new(0, human, payload))
        }
        Command::Intersect { files } => {
            let mut components = Vec::new();
            for f in files {
                components.push(load(f)?);
            }
            let inst = ReductionInstance::new(components).map_err(|e| e.to_string())?;
            let (witness, stats) =
                intersection_nonempty_with_stats(&inst, subset_cap).map_err(|e| e.to_string())?;
            match witness {
                Some(word) => Ok(Report::new(
                    0,
                    format!("nonempty; witness: {word}"),
                    json!({ "verdict": "nonempty", "witness": witness_tokens(&word) }),
                )
                .with_nodes(stats)),
                None => Ok(Report::new(1, "empty", json!({ "verdict": "empty" })).with_nodes(stats)),
            }
        }
        Command::Gen(gen) => match gen {
            GenCommand::GadgetA { components, out } => {
                let mut parsed = Vec::new();
                for f in components {
                    parsed.push(load(f)?);
                }
                let inst = ReductionInstance::new(parsed).map_err(|e| e.to_string())?;
                let norm = normalize_instance(&inst).map_err(|e| e.to_string())?;
                let gadget = build_gadget_a(&norm).map_err(|e| e.to_string())?;
                emit_generated(&gadget, out, "instance gadget")
            }
            GenCommand::GadgetB { sigma, out } => {
                let sigma = parse_sigma(sigma)?;
                let gadget = build_gadget_b(&sigma).map_err(|e| e.to_string())?;
                emit_generated(&gadget, out, "3-state gadget")
            }
            GenCommand::WitnessI { sigma, out } => {
                let sigma = parse_sigma(sigma)?;
                let acceptor = build_witness_i(&sigma).map_err(|e| e.to_string())?;
                emit_generated(&acceptor, out, "witness ideal acceptor")
            }
            GenCommand::Binarize { file, order, out } => {
                let d = load(file)?;
                let order = match order {
                    Some(raw) => LetterOrder::new(raw.split_whitespace().map(str::to_string))
                        .map_err(|e| e.to_string())?,
                    None => LetterOrder::for_alphabet(d.alphabet()),
                };
                let lifted = binarize(&d, &order).map_err(|e| e.to_string())?;
                emit_generated(&lifted, out, "binary lift")
            }
            GenCommand::Product { a, b, out } => {
                let (a, b) = (load(a)?, load(b)?);
                let product =
                    synckit::gadgets::product_sync(&a, &b).map_err(|e| e.to_string())?;
                emit_generated(&product, out, "synchronous product")
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                let mut payload = report.payload;
                if cli.stats {
                    let mut stats = serde_json::Map::new();
                    stats.insert("elapsed_ms".into(), json!(started.elapsed().as_millis() as u64));
                    if let Some(nodes) = report.nodes {
                        stats.insert("nodes_expanded".into(), json!(nodes));
                    }
                    payload["stats"] = Value::Object(stats);
                }
                println!("{payload}");
            } else {
                println!("{}", report.human);
                if cli.stats {
                    match report.nodes {
                        Some(nodes) => eprintln!(
                            "stats: {} nodes expanded, {} ms",
                            nodes,
                            started.elapsed().as_millis()
                        ),
                        None => eprintln!("stats: {} ms", started.elapsed().as_millis()),
                    }
                }
            }
            ExitCode::from(report.exit)
        }
        Err(message) => {
            eprintln!("error: {message}");
            if cli.json {
                println!("{}", json!({ "verdict": "error", "error": message }));
            }
            ExitCode::from(2)
        }
    }
}
