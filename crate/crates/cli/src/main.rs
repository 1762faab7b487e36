use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ambig_core::config::SearchConfig;
use ambig_core::groupdec::{decide_virtually_diagonalizable, verify_certificate, verify_refutation, GroupDecision};
use ambig_core::repsplit::{decide_fg_spectrum, verify_spectrum_certificate, verify_spectrum_refutation, SpectrumDecision};
use ambig_core::synth::{
    block_monomialize, classify_series, embed_rep, lrs_classify_rep, verify_classification, SeriesClassification,
};
use ambig_core::wfa::{count_runs, distinguishing_word, equivalent, evaluate, minimize, structural_ambiguity, LinRep};
use ambig_core::wire::{self, to_pretty};
use ambig_core::Error;

#[derive(Parser, Debug)]
#[command(name = "ambig", version, about = "Exact ambiguity analysis of invertible weighted automata")]
struct Cli {
    /// Print machine-readable JSON reports.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized invariant-subspace search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on coset patterns explored by the diagonal-index closure.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    bfs_cap: Option<u64>,
    /// Cap on the exponent radius of the separating-element search.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    radius_cap: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide the lowest ambiguity class reachable by an equivalent automaton.
    Classify { file: PathBuf },
    /// Emit an equivalent automaton of the requested shape.
    Synthesize {
        file: PathBuf,
        #[arg(long, value_enum)]
        target: Target,
        /// Write the automaton here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Matrix-group decision procedures.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Minimal equivalent linear representation.
    Minimize { file: PathBuf },
    /// Decide equivalence of two automata.
    Equiv { left: PathBuf, right: PathBuf },
    /// Evaluate the series on one word and count its successful runs.
    Eval {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Structural ambiguity class of the automaton as given.
    Ambiguity { file: PathBuf },
    /// Classify a one-letter automaton over its field and over its splitting field.
    Lrs { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum GroupAction {
    /// Virtual simultaneous diagonalizability.
    Analyze { file: PathBuf },
    /// Finitely generated spectrum.
    Spectrum { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Monomial,
    BlockMonomial,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::OutOfScope(_) | Error::TargetUnreachable(_) | Error::NotInvertible | Error::Singular => 2,
            Error::SearchBudgetExceeded(_) => 3,
            Error::InvalidCertificate(_) => 4,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) })
}

fn load_automaton(path: &Path) -> Result<LinRep, Failure> {
    Ok(wire::parse_automaton(&read(path)?)?)
}

fn config(cli: &Cli) -> SearchConfig {
    let mut cfg = SearchConfig { seed: cli.seed, bfs_cap: cli.bfs_cap, ..SearchConfig::default() };
    if let Some(r) = cli.radius_cap {
        cfg.radius_cap = r;
    }
    cfg
}

fn classification_text(c: &SeriesClassification, out: &mut String) {
    let j = wire::classification_to_json(c);
    out.push_str(&format!("class: {}\n", c.class_name()));
    out.push_str(&format!("minimal dimension: {}\n", c.minimal().dim()));
    match &j {
        wire::ClassificationJson::FinitelyAmbiguousEquivalent { minimal_m, witness_word, synthesized, gamma_generators, .. } => {
            out.push_str(&format!("minimal_M: {minimal_m}\n"));
            out.push_str(&format!("witness word: {witness_word:?}\n"));
            out.push_str(&format!("synthesized dimension: {}\n", synthesized.dim));
            let gens: Vec<String> = gamma_generators.iter().map(|e| format!("[{}]", e.0.join(", "))).collect();
            out.push_str(&format!("gamma generators: {}\n", gens.join(" ")));
        }
        wire::ClassificationJson::PolynomiallyAmbiguousEquivalent { reason, witness_word, synthesized, level_dims, .. } => {
            out.push_str(&format!("reason: {reason}\nwitness word: {witness_word:?}\n"));
            out.push_str(&format!("synthesized dimension: {}\nlevel dimensions: {level_dims:?}\n", synthesized.dim));
        }
        wire::ClassificationJson::ExponentialOnly { reason, witness_word, .. } => {
            out.push_str(&format!("reason: {reason}\nwitness word: {witness_word:?}\n"));
        }
    }
}

fn cmd_classify(cli: &Cli, file: &Path) -> Outcome {
    let rep = load_automaton(file)?;
    let c = classify_series(&rep, &config(cli))?;
    verify_classification(&rep, &c)?;
    if cli.json {
        let report = wire::ClassifyReportJson { field: wire::field_to_json(rep.field()), classification: wire::classification_to_json(&c) };
        return Ok(to_pretty(&report));
    }
    let mut out = String::new();
    classification_text(&c, &mut out);
    Ok(out)
}

fn cmd_synthesize(cli: &Cli, file: &Path, target: Target, output: Option<&Path>) -> Outcome {
    let rep = load_automaton(file)?;
    let c = classify_series(&rep, &config(cli))?;
    verify_classification(&rep, &c)?;
    let synthesized = match (target, &c) {
        (_, SeriesClassification::FinitelyAmbiguousEquivalent { certificate, .. }) => certificate.synthesized.clone(),
        (Target::BlockMonomial, SeriesClassification::PolynomiallyAmbiguousEquivalent { minimal, spectrum, .. }) => {
            block_monomialize(minimal, spectrum)?.0
        }
        (_, other) => {
            return Err(Error::TargetUnreachable(format!("series is {}", other.class_name())).into());
        }
    };
    if !equivalent(&rep, &synthesized)? {
        return Err(Error::InvalidCertificate("synthesized automaton is not equivalent".into()).into());
    }
    let text = wire::emit_automaton(&synthesized);
    match output {
        Some(p) => {
            fs::write(p, format!("{text}\n")).map_err(|e| Failure { code: 1, message: format!("{}: {e}", p.display()) })?;
            Ok(if cli.json {
                to_pretty(&serde_json::json!({ "written": p.display().to_string(), "dim": synthesized.dim() }))
            } else {
                format!("wrote {} states to {}\n", synthesized.dim(), p.display())
            })
        }
        None => Ok(text),
    }
}

fn cmd_group(cli: &Cli, action: &GroupAction) -> Outcome {
    let cfg = config(cli);
    match action {
        GroupAction::Analyze { file } => {
            let g = wire::parse_group(&read(file)?)?;
            let d = decide_virtually_diagonalizable(&g, &cfg)?;
            match &d {
                GroupDecision::Certificate(c) => verify_certificate(&g, c)?,
                GroupDecision::Refutation(r) => verify_refutation(&g, r)?,
            }
            if cli.json {
                let report = wire::GroupReportJson { field: wire::field_to_json(g.field()), dim: g.dim(), decision: wire::group_decision_to_json(&d) };
                return Ok(to_pretty(&report));
            }
            Ok(match &d {
                GroupDecision::Certificate(c) => format!(
                    "result: certificate\ndiagonal index: {}\npieces: {:?}\n",
                    c.diagonal_index,
                    c.decomposition.pieces().iter().map(|p| p.dim()).collect::<Vec<_>>()
                ),
                GroupDecision::Refutation(r) => format!("result: refutation\nreason: {}\nword: {}\n", r.kind, r.word),
            })
        }
        GroupAction::Spectrum { file } => {
            let g = wire::parse_group(&read(file)?)?;
            let d = decide_fg_spectrum(&g, &cfg)?;
            match &d {
                SpectrumDecision::Certificate(c) => verify_spectrum_certificate(&g, c)?,
                SpectrumDecision::Refutation(r) => verify_spectrum_refutation(&g, r)?,
            }
            if cli.json {
                let report = wire::SpectrumReportJson { field: wire::field_to_json(g.field()), dim: g.dim(), decision: wire::spectrum_decision_to_json(&d) };
                return Ok(to_pretty(&report));
            }
            Ok(match &d {
                SpectrumDecision::Certificate(c) => format!(
                    "result: certificate\nblock dimensions: {:?}\nindex: {}\n",
                    (0..c.flag.levels()).map(|i| c.flag.level_dim(i)).collect::<Vec<_>>(),
                    c.index()
                ),
                SpectrumDecision::Refutation(r) => {
                    format!("result: refutation\nblock: {}\nreason: {}\nword: {}\n", r.block, r.witness.kind, r.witness.word)
                }
            })
        }
    }
}

fn cmd_minimize(cli: &Cli, file: &Path) -> Outcome {
    let rep = load_automaton(file)?;
    let m = minimize(&rep);
    if !equivalent(&rep, &m)? {
        return Err(Error::InvalidCertificate("minimized automaton is not equivalent".into()).into());
    }
    let _ = cli;
    Ok(wire::emit_automaton(&m))
}

fn cmd_equiv(cli: &Cli, left: &Path, right: &Path) -> Outcome {
    let a = load_automaton(left)?;
    let b = load_automaton(right)?;
    let w = distinguishing_word(&a, &b)?;
    if let Some(w) = &w {
        if evaluate(&a, w)? == evaluate(&b, w)? {
            return Err(Error::InvalidCertificate("distinguishing word does not distinguish".into()).into());
        }
    }
    let report = wire::EquivReportJson { equivalent: w.is_none(), distinguishing_word: w.map(|w| a.render_word(&w)) };
    if cli.json {
        return Ok(to_pretty(&report));
    }
    Ok(match &report.distinguishing_word {
        None => "equivalent: true\n".to_string(),
        Some(w) => format!("equivalent: false\ndistinguishing word: {w:?}\n"),
    })
}

fn cmd_eval(cli: &Cli, file: &Path, word: &str) -> Outcome {
    let rep = load_automaton(file)?;
    let w = rep.parse_word(word)?;
    let report = wire::EvalReportJson {
        word: rep.render_word(&w),
        value: wire::element_to_json(&evaluate(&rep, &w)?),
        runs: count_runs(&rep, &w)?.to_string(),
    };
    if cli.json {
        return Ok(to_pretty(&report));
    }
    Ok(format!("word: {:?}\nvalue: [{}]\nruns: {}\n", report.word, report.value.0.join(", "), report.runs))
}

fn cmd_ambiguity(cli: &Cli, file: &Path) -> Outcome {
    let rep = load_automaton(file)?;
    let s = structural_ambiguity(&rep);
    let j = wire::structural_to_json(&rep, &s);
    if cli.json {
        return Ok(to_pretty(&j));
    }
    let mut out = format!("class: {}\n", j.class);
    for (name, w) in [("exponential", &j.eda_witness), ("polynomial", &j.ida_witness)] {
        if let Some(w) = w {
            out.push_str(&format!("{name} witness: prefix {:?} cycle {:?} suffix {:?}\n", w.prefix, w.cycle, w.suffix));
        }
    }
    Ok(out)
}

fn cmd_lrs(cli: &Cli, file: &Path) -> Outcome {
    let rep = load_automaton(file)?;
    let l = lrs_classify_rep(&rep, &config(cli))?;
    verify_classification(&rep, &l.base)?;
    if let Some(i) = &l.improvement {
        verify_classification(&embed_rep(&rep, &i.embedding)?, &i.classification)?;
    }
    if cli.json {
        return Ok(to_pretty(&wire::lrs_to_json(&l)));
    }
    let mut out = String::from("over the input field\n");
    classification_text(&l.base, &mut out);
    if let Some(i) = &l.improvement {
        out.push_str(&format!("\nover the splitting field of degree {}\n", i.field.degree()));
        classification_text(&i.classification, &mut out);
    }
    Ok(out)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify { file } => cmd_classify(cli, file),
        Command::Synthesize { file, target, output } => cmd_synthesize(cli, file, *target, output.as_deref()),
        Command::Group { action } => cmd_group(cli, action),
        Command::Minimize { file } => cmd_minimize(cli, file),
        Command::Equiv { left, right } => cmd_equiv(cli, left, right),
        Command::Eval { file, word } => cmd_eval(cli, file, word),
        Command::Ambiguity { file } => cmd_ambiguity(cli, file),
        Command::Lrs { file } => cmd_lrs(cli, file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            let nl = if text.ends_with('\n') { "" } else { "\n" };
            let _ = write!(stdout, "{text}{nl}").and_then(|_| stdout.flush());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
