use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use synchro::contraction::{
    circular_analysis, circular_fast_path, find_aperiodic_collection_with_limit, ContractingCollection,
    DEFAULT_TRANSFORMATION_LIMIT,
};
use synchro::generators::GeneratorSpec;
use synchro::oracle::{reachability_table, subset_bound_report, DEFAULT_ORACLE_CAPACITY};
use synchro::reachability::{cerny_bound_word, reach_subset, synchronizing_word_with, TieBreak};
use synchro::survey::{run_survey, SurveyConfig, SurveyFamily};
use synchro::{shortest_deficient_words, Automaton, Execution, StateSet, Word};

mod report;

use report::{
    AnalyzeReport, CircularReport, CollectionReport, OracleReport, ReachReport, SyncReport,
};

#[derive(Parser)]
#[command(name = "synchro", version, about = "Certify and synchronize 1-contracting automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated automaton in the standard file format.
    Gen {
        /// cerny:N, circular:N:D[:SEED], random:N:K[:SEED], enum:N:K:I, fixture:NAME
        spec: String,
        /// Seed for random and circular families (overrides the spec's seed).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify an automaton as (aperiodically) 1-contracting.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build a word reaching a subset from a certified collection.
    Reach {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated one-based states, e.g. 1,3.
        #[arg(long)]
        subset: String,
        #[arg(long, value_enum, default_value_t = TieArg::Label)]
        tie_break: TieArg,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Produce a synchronizing word.
    Sync {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Method::Bound)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAPACITY)]
        capacity: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact power-automaton BFS: shortest words and the subset-length bound check.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAPACITY)]
        capacity: usize,
        /// Include one record per reachable subset.
        #[arg(long)]
        records: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the oracle and certification over a family of automata.
    Survey {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Alphabet size.
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAPACITY)]
        capacity: usize,
        #[arg(long)]
        length_bound: Option<usize>,
        /// Run instances one at a time.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Automaton file.
    #[arg(long, conflicts_with = "generate", required_unless_present = "generate")]
    input: Option<PathBuf>,
    /// Generator spec instead of a file, e.g. fixture:fig4 or cerny:5.
    #[arg(long)]
    generate: Option<String>,
}

#[derive(Args)]
struct SearchArgs {
    /// Longest 1-deficient word allowed in a collection (default: n).
    #[arg(long)]
    length_bound: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TRANSFORMATION_LIMIT)]
    transformation_limit: usize,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    #[value(alias = "json-like")]
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Collection,
    Bound,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum TieArg {
    Label,
    Shortest,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Exhaustive,
    Random,
}

/// Failures of user input map to exit code 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input_error(e: impl Into<anyhow::Error>) -> anyhow::Error {
    anyhow::Error::new(InputError(e.into()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(holds) => ExitCode::from(if holds { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// Returns whether the checked property holds (exit 0) or not (exit 1).
fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Gen { spec, seed, out } => {
            let mut spec: GeneratorSpec = spec.parse().map_err(input_error)?;
            if let Some(s) = seed {
                match &mut spec {
                    GeneratorSpec::Random { seed, .. } => *seed = s,
                    GeneratorSpec::Circular { seed, .. } => *seed = Some(s),
                    _ => return Err(input_error(anyhow!("--seed only applies to random and circular"))),
                }
            }
            let a = spec.build().map_err(input_error)?;
            emit(out.as_deref(), &a.serialize())?;
            Ok(true)
        }
        Command::Analyze { input, search, output } => {
            let (a, source) = load(&input)?;
            let report = analyze(&a, source, &search)?;
            let holds = report.aperiodic;
            write_report(&output, &report, report.render_text())?;
            Ok(holds)
        }
        Command::Reach { input, subset, tie_break, search, output } => {
            let (a, source) = load(&input)?;
            let target = StateSet::parse_labels(&subset, a.n()).map_err(input_error)?;
            if target.is_empty() {
                return Err(input_error(anyhow!("--subset must name at least one state")));
            }
            let Some((collection, by)) = certify(&a, &search)? else {
                eprintln!("automaton is not aperiodically 1-contracting within the length bound");
                return Ok(false);
            };
            let tie = match tie_break {
                TieArg::Label => TieBreak::SmallestLabel,
                TieArg::Shortest => TieBreak::ShortestWord,
            };
            let trace = reach_subset(&a, &collection, target, tie)?;
            let verified = a.apply_word(a.full_set(), &trace.final_word)? == target;
            if !verified {
                bail!("constructed word does not reach {target}");
            }
            let report = ReachReport::new(&a, source, &trace, by, collection.is_efficient(), verified);
            write_report(&output, &report, report.render_text())?;
            Ok(true)
        }
        Command::Sync { input, method, capacity, search, output } => {
            let (a, source) = load(&input)?;
            let (word, method_name) = match method {
                Method::Oracle => (
                    synchro::shortest_sync_word(&a, capacity).map_err(input_error)?,
                    "oracle",
                ),
                Method::Collection | Method::Bound => {
                    let Some((collection, _)) = certify(&a, &search)? else {
                        eprintln!("automaton is not aperiodically 1-contracting within the length bound");
                        return Ok(false);
                    };
                    if matches!(method, Method::Collection) {
                        let w = synchronizing_word_with(
                            &a,
                            &collection,
                            TieBreak::SmallestLabel,
                            Execution::Parallel,
                        )?;
                        (Some(w), "collection")
                    } else {
                        (Some(cerny_bound_word(&a, &collection)?), "bound")
                    }
                }
            };
            let verified = match &word {
                Some(w) => a.transformation_of(w)?.rank() == 1,
                None => false,
            };
            if word.is_some() && !verified {
                bail!("produced word is not synchronizing");
            }
            let n = a.n();
            let report = SyncReport {
                source,
                method: method_name,
                synchronizing: word.is_some(),
                length: word.as_ref().map(Word::len),
                word: word.as_ref().map(|w| a.render(w)),
                cerny_bound: (n - 1) * (n - 1),
                verified,
            };
            write_report(&output, &report, report.render_text())?;
            Ok(verified)
        }
        Command::Oracle { input, capacity, records, output } => {
            let (a, source) = load(&input)?;
            let table = reachability_table(&a, capacity).map_err(input_error)?;
            let sync = table.nearest_singleton();
            let sync_word = sync.and_then(|(s, _)| table.witness(StateSet::singleton(s)));
            if let Some(w) = &sync_word {
                if a.transformation_of(w)?.rank() != 1 {
                    bail!("oracle witness is not synchronizing");
                }
            }
            let bound = subset_bound_report(&a, &table, source.clone());
            if !bound.revalidate(&a, &table) {
                bail!("violation records failed to revalidate");
            }
            let report = OracleReport {
                source,
                n: a.n(),
                reachable_subsets: table.reachable_count(),
                unreachable_subsets: table.unreachable().count(),
                synchronizing: sync.is_some(),
                shortest_sync: sync_word.as_ref().map(|w| a.render(w)),
                shortest_sync_length: sync.map(|(_, d)| d),
                subset_bound: bound,
                records: records.then(|| table.records(&a)),
            };
            let holds = report.synchronizing && report.subset_bound.violations.is_empty();
            write_report(&output, &report, report.render_text())?;
            Ok(holds)
        }
        Command::Survey {
            family,
            n,
            k,
            count,
            seed,
            capacity,
            length_bound,
            sequential,
            output,
        } => {
            let family = match family {
                FamilyArg::Exhaustive => SurveyFamily::Exhaustive { n, k },
                FamilyArg::Random => SurveyFamily::Random { n, k, count, seed },
            };
            let mut config = SurveyConfig::new(family);
            config.capacity = capacity;
            config.length_bound = length_bound;
            let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
            let report = run_survey(&config, exec).map_err(input_error)?;
            let text = survey_text(&report);
            write_report(&output, &report, text)?;
            Ok(report.summary.violations == 0)
        }
    }
}

fn load(input: &InputArgs) -> anyhow::Result<(Automaton, String)> {
    match (&input.input, &input.generate) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(input_error)?;
            let a = Automaton::parse(&text)
                .with_context(|| format!("parsing {}", path.display()))
                .map_err(input_error)?;
            Ok((a, path.display().to_string()))
        }
        (None, Some(spec)) => {
            let spec: GeneratorSpec = spec.parse().map_err(input_error)?;
            let a = spec.build().map_err(input_error)?;
            Ok((a, spec.to_string()))
        }
        _ => Err(input_error(anyhow!("give exactly one of --input or --generate"))),
    }
}

fn length_bound(a: &Automaton, search: &SearchArgs) -> anyhow::Result<usize> {
    match search.length_bound {
        Some(0) => Err(input_error(anyhow!("--length-bound must be at least 1"))),
        Some(l) => Ok(l),
        None => Ok(a.n()),
    }
}

/// Circular fast path first, then the general search.
fn certify(
    a: &Automaton,
    search: &SearchArgs,
) -> anyhow::Result<Option<(ContractingCollection, &'static str)>> {
    let bound = length_bound(a, search)?;
    if a.n() == 1 {
        return Ok(Some((ContractingCollection::trivial(), "trivial")));
    }
    if bound >= a.n() {
        if let Some(cert) = circular_fast_path(a) {
            return Ok(Some((cert.collection, "circular")));
        }
    }
    let found = find_aperiodic_collection_with_limit(a, bound, search.transformation_limit)?;
    Ok(found.map(|c| (c, "search")))
}

fn analyze(a: &Automaton, source: String, search: &SearchArgs) -> anyhow::Result<AnalyzeReport> {
    let bound = length_bound(a, search)?;
    let shortest = shortest_deficient_words(a);
    let missing: Vec<usize> = shortest
        .iter()
        .enumerate()
        .filter(|(_, w)| w.is_none())
        .map(|(q, _)| q + 1)
        .collect();
    let one_contracting = a.n() > 1 && missing.is_empty();
    let shortest_words = if one_contracting {
        let words = shortest.into_iter().flatten().collect();
        let c = ContractingCollection::from_deficient(a.n(), words)?;
        Some(CollectionReport::new(a, &c, "shortest"))
    } else {
        None
    };
    let certified = certify(a, search)?;
    for d in certified.iter().flat_map(|(c, _)| c.words()) {
        if !d.validate(a) {
            bail!("collection word {} failed validation", a.render(&d.word));
        }
    }
    Ok(AnalyzeReport {
        source,
        n: a.n(),
        alphabet_size: a.letter_count(),
        length_bound: bound,
        one_contracting,
        aperiodic: certified.is_some(),
        efficient: certified.as_ref().is_some_and(|(c, _)| c.is_efficient()),
        certified_by: certified.as_ref().map_or("none", |(_, by)| by),
        shortest_words,
        missing_exclusions: if a.n() > 1 { missing } else { Vec::new() },
        collection: certified
            .as_ref()
            .filter(|(c, _)| !c.words().is_empty())
            .map(|(c, by)| CollectionReport::new(a, c, by)),
        circular: circular_analysis(a).iter().map(CircularReport::from).collect(),
    })
}

fn survey_text(report: &synchro::survey::SurveyReport) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    for r in &report.records {
        let _ = writeln!(
            out,
            "{} sync {} shortest {} one-contracting {} aperiodic {} circular {} margin {} violations {}{}",
            r.id,
            r.synchronizing,
            r.shortest_sync.map_or("-".into(), |v| v.to_string()),
            r.one_contracting,
            r.aperiodic.map_or("-".into(), |v| v.to_string()),
            r.circular_certified,
            r.worst_margin.map_or("-".into(), |v| v.to_string()),
            r.violations.len(),
            r.skipped.as_ref().map_or(String::new(), |s| format!(" skipped ({s})")),
        );
        for v in &r.violations {
            let _ = writeln!(
                out,
                "VIOLATION {} subset {} distance {} bound {} witness {}",
                r.id,
                report::braces(&v.subset),
                v.distance,
                v.bound,
                v.witness
            );
            let _ = write!(out, "{}", v.automaton);
        }
    }
    let s = &report.summary;
    let _ = writeln!(out, "family {}", s.family);
    let _ = writeln!(out, "instances {}", s.instances);
    let _ = writeln!(out, "skipped {}", s.skipped);
    let _ = writeln!(out, "synchronizing {}", s.synchronizing);
    let _ = writeln!(out, "one-contracting {}", s.one_contracting);
    let _ = writeln!(out, "aperiodic {}", s.aperiodic);
    let _ = writeln!(out, "circular {}", s.circular_certified);
    let _ = writeln!(out, "violations {}", s.violations);
    let _ = writeln!(
        out,
        "worst margin {}",
        s.worst_margin.map_or("-".into(), |v| v.to_string())
    );
    out
}

fn write_report<T: Serialize>(output: &OutputArgs, value: &T, text: String) -> anyhow::Result<()> {
    let body = match output.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
    };
    emit(output.out.as_deref(), &body)
}

fn emit(path: Option<&Path>, body: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(body.as_bytes())?;
            Ok(())
        }
    }
}
