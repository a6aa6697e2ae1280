//! `pbx`: checks and searches on polybox codes, Keller graphs and
//! two-periodic cube tilings.
//!
//! Exit codes: 0 success or property holds, 1 property fails, 2 usage or
//! parse error, 3 budget exhausted before an answer.

mod formats;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use polybox::classify::{
    classify_cover5, classify_pair2, classify_partition5, classify_partition6, cover_compositions_from,
    enumerate_covers, random_partition_code, Composition, FiveStructure,
};
use polybox::keller::{build_keller_graph, check_sibling_invariants, max_clique, sibling_graph};
use polybox::measure::{covers, equivalent, g_sum, is_partition_code};
use polybox::rigidity::{counterexample_search, find_equivalent, Counterexample, EquivalenceSearchSpec, LetterPolicy, SearchStatus};
use polybox::tiling::{
    encode_small, find_twin_pair_in_tiling, format_vector, local_partition, r_stats, random_tiling, SamplePoint,
    TwoPeriodicTiling, L_set,
};
use polybox::{Alphabet, Budget, Error, Letter, PolyboxCode, Word};
use thiserror::Error as ThisError;

use formats::{parse_code, parse_tiling, parse_word, serialize_code, serialize_tiling};
use report::{Report, Status};

#[derive(Parser)]
#[command(name = "pbx", version, about = "Polybox codes, Keller graphs and cube tilings")]
struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArg {
    /// Search budget: seconds (`30`, `30s`, `5m`) or nodes (`100000n`).
    #[arg(long, value_parser = parse_budget)]
    budget: Option<Budget>,
}

impl BudgetArg {
    fn get(self) -> Budget {
        self.budget.unwrap_or(Budget::UNLIMITED)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a code file and describe it.
    Check {
        file: PathBuf,
        /// Fail if the code has a twin pair.
        #[arg(long)]
        twin_free: bool,
        /// Fail unless the code is a partition code.
        #[arg(long)]
        partition: bool,
    },
    /// Whether a word's box lies inside the union of a code's boxes.
    Covers {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Whether two codes have the same union.
    Equiv { first: PathBuf, second: PathBuf },
    /// Search for other star-free codes equivalent to a code.
    Rigid {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
        /// Only accept alternatives without twin pairs.
        #[arg(long)]
        twin_free: bool,
        /// Only accept alternatives sharing no word with the code.
        #[arg(long)]
        disjoint: bool,
        /// Stop after this many alternatives.
        #[arg(long, default_value_t = 1)]
        max: usize,
        /// Letters available to alternatives: `alphabet`, or a number of
        /// extra pairs per coordinate.
        #[arg(long, default_value = "1")]
        letters: String,
    },
    /// Match a code against the forced five-word, six-word or pair
    /// structures.
    Classify {
        file: PathBuf,
        /// Classify a five-word cover of this word.
        #[arg(long, conflicts_with = "with")]
        word: Option<String>,
        /// Classify an equivalent pair of two-word codes.
        #[arg(long)]
        with: Option<PathBuf>,
    },
    /// Enumerate twin-pair-free covers of a word over {a, a', b, b'}.
    EnumCovers {
        #[arg(long, default_value_t = 4)]
        d: usize,
        /// Covered word (default b repeated d times).
        #[arg(long)]
        word: Option<String>,
        /// Number of words (default: the composition's total).
        #[arg(long)]
        k: Option<usize>,
        /// Word counts by number of full coordinates, e.g. `2,3,2`.
        #[arg(long)]
        comp: Option<String>,
        /// Index of the first composition entry.
        #[arg(long, default_value_t = 2)]
        from: usize,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Solutions of the covering weight equation.
    Compositions {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        from: usize,
    },
    /// Keller graph searches over {0, 1, 2, 3}.
    Keller {
        #[command(subcommand)]
        command: KellerCommand,
    },
    /// Sibling graph of a twin-pair-free star-free code and its bounds.
    Siblings { file: PathBuf },
    /// Two-periodic cube tilings.
    Tiling {
        #[command(subcommand)]
        command: TilingCommand,
    },
    /// Print a random star-free partition code.
    Generate {
        #[arg(long)]
        d: usize,
        /// Number of letter pairs.
        #[arg(long, default_value_t = 2)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum KellerCommand {
    /// Maximum clique of the Keller graph.
    Clique {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Disjoint equivalent twin-pair-free codes, both cliques.
    Pair {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        max_size: usize,
        #[command(flatten)]
        budget: BudgetArg,
    },
}

#[derive(Subcommand)]
enum TilingCommand {
    Validate { file: PathBuf },
    /// r-, r+ and a twin pair.
    Analyze { file: PathBuf },
    /// The local partition code at a sample point.
    Encode {
        file: PathBuf,
        /// Coordinates in quarter units, e.g. `1,3` for (1/4, 3/4).
        #[arg(long)]
        point: String,
        /// Write the code over {a, a', b, b'}.
        #[arg(long)]
        small: bool,
    },
    /// Print a random tiling built by column shifts.
    Generate {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 8)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, ThisError)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{}", located(path, source))]
    Parse { path: String, source: formats::ParseError },
    #[error(transparent)]
    Library(#[from] Error),
}

impl Failure {
    fn status(&self) -> Status {
        match self {
            Failure::Library(Error::Precondition(_) | Error::TemplateMismatch(_) | Error::Defect(_)) => Status::Fails,
            _ => Status::Usage,
        }
    }
}

fn located(path: &str, e: &formats::ParseError) -> String {
    if e.line.is_some() {
        format!("{path}:{e}")
    } else {
        format!("{path}: {e}")
    }
}

type Outcome = Result<(Report, Status), Failure>;

fn parse_budget(s: &str) -> Result<Budget, String> {
    let s = s.trim();
    let (num, unit) = s.split_at(s.find(|c: char| c.is_ascii_alphabetic()).unwrap_or(s.len()));
    let bad = || format!("invalid budget {s:?}; use seconds (30, 30s, 5m) or nodes (100000n)");
    match unit {
        "n" | "nodes" => num.parse().map(Budget::nodes).map_err(|_| bad()),
        "" | "s" | "m" | "h" => {
            let x: f64 = num.parse().map_err(|_| bad())?;
            let scale = match unit {
                "m" => 60.0,
                "h" => 3600.0,
                _ => 1.0,
            };
            Duration::try_from_secs_f64(x * scale).map(Budget::time).map_err(|_| bad())
        }
        _ => Err(bad()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<PolyboxCode, Failure> {
    parse_code(&read(path)?).map_err(|source| Failure::Parse { path: path.display().to_string(), source })
}

fn load_tiling(path: &Path) -> Result<TwoPeriodicTiling, Failure> {
    parse_tiling(&read(path)?).map_err(|source| Failure::Parse { path: path.display().to_string(), source })
}

fn word_arg(s: &Alphabet, dim: usize, text: &str) -> Result<Word, Failure> {
    parse_word(s, dim, text).map_err(|source| Failure::Parse { path: "--word".into(), source })
}

fn words_of(code: &PolyboxCode) -> Vec<String> {
    code.iter().map(|w| code.format_word(w)).collect()
}

fn holds(b: bool) -> Status {
    if b {
        Status::Holds
    } else {
        Status::Fails
    }
}

fn check(file: &Path, twin_free: bool, partition: bool) -> Outcome {
    let code = load_code(file)?;
    let mut r = Report::new();
    let twin = code.find_twin_pair();
    let is_partition = is_partition_code(&code);
    r.put("words", code.len())
        .put("d", code.dim())
        .put("star_free", code.is_star_free())
        .put("partition", is_partition);
    if let Some((u, v)) = &twin {
        r.list("twin_pair", [code.format_word(u), code.format_word(v)]);
    } else {
        r.put("twin_pair", "none");
    }
    let ok = !(twin_free && twin.is_some()) && !(partition && !is_partition);
    r.summary(format!("valid code of {} words in dimension {}", code.len(), code.dim()));
    Ok((r, holds(ok)))
}

fn covers_cmd(file: &Path, word: &str) -> Outcome {
    let code = load_code(file)?;
    let w = word_arg(code.alphabet(), code.dim(), word)?;
    let covered = covers(&w, &code)?;
    let mut r = Report::new();
    r.put("covered", covered);
    if w.is_star_free() {
        r.put("g_sum", g_sum(&w, &code)?).put("target", 1u64 << code.dim());
    }
    let name = code.format_word(&w);
    r.summary(if covered { format!("{name} is covered") } else { format!("{name} is not covered") });
    Ok((r, holds(covered)))
}

fn equiv(a: &Path, b: &Path) -> Outcome {
    let (v, w) = (load_code(a)?, load_code(b)?);
    let same = equivalent(&v, &w)?;
    let mut r = Report::new();
    r.put("equivalent", same)
        .summary(if same { "the codes have the same union" } else { "the unions differ" });
    Ok((r, holds(same)))
}

fn rigid(file: &Path, budget: Budget, twin_free: bool, disjoint: bool, max: usize, letters: &str) -> Outcome {
    let code = load_code(file)?;
    let policy = match letters {
        "alphabet" => LetterPolicy::Alphabet,
        n => LetterPolicy::Fresh(n.parse().map_err(|_| Failure::Usage(format!("invalid --letters {n:?}")))?),
    };
    let spec = EquivalenceSearchSpec {
        require_twin_pair_free: twin_free,
        require_disjoint: disjoint,
        max_results: max.max(1),
        budget,
        letters: policy,
        ..EquivalenceSearchSpec::new(code.clone())
    };
    let res = find_equivalent(&spec)?;
    let mut r = Report::new();
    let (verdict, status) = match (res.codes.is_empty(), res.status) {
        (true, SearchStatus::Exhausted) => ("rigid", Status::Holds),
        (true, _) => ("inconclusive", Status::Inconclusive),
        (false, _) => ("not_rigid", Status::Fails),
    };
    r.put("result", verdict).put("nodes", res.nodes);
    for c in &res.codes {
        r.put("equivalent", c.to_string());
    }
    r.summary(match verdict {
        "rigid" => "no other star-free code is equivalent".to_string(),
        "inconclusive" => "the budget ran out before the search finished".to_string(),
        _ => format!("{} equivalent code(s) found", res.codes.len()),
    });
    Ok((r, status))
}

fn five_report(r: &mut Report, s: &Alphabet, st: &FiveStructure) {
    r.list("coordinates", st.coords.iter().map(|&i| i + 1))
        .list("letters", st.letters.iter().map(|&l| s.name(l).to_string()));
    if let Some(u) = &st.ambient {
        r.put("ambient", s.format_word(u));
    }
}

fn classify(file: &Path, word: Option<&str>, with: Option<&Path>) -> Outcome {
    let code = load_code(file)?;
    let s = code.alphabet().clone();
    let mut r = Report::new();
    if let Some(other) = with {
        let p = load_code(other)?;
        let st = classify_pair2(&code, &p)?;
        r.put("structure", "pair")
            .list("coordinates", st.coords.iter().map(|&i| i + 1))
            .list("letters", [s.name(st.l1).to_string(), s.name(st.l2).to_string()])
            .put("common", s.format_word(&st.common))
            .put("swapped", st.swapped)
            .summary("the two codes match the two-word template");
        return Ok((r, Status::Holds));
    }
    if let Some(text) = word {
        let u = word_arg(&s, code.dim(), text)?;
        let st = classify_cover5(&code, &u)?;
        r.put("structure", "cover5");
        five_report(&mut r, &s, &st);
        r.summary("the code matches the five-word cover template");
        return Ok((r, Status::Holds));
    }
    match code.len() {
        5 => {
            let st = classify_partition5(&code)?;
            r.put("structure", "partition5");
            five_report(&mut r, &s, &st);
        }
        6 => {
            let st = classify_partition6(&code)?;
            r.put("structure", "partition6")
                .put("split_coordinate", st.coordinate + 1)
                .put("split_letter", s.name(st.letter).to_string());
            five_report(&mut r, &s, &st.inner);
        }
        n => {
            return Err(Failure::Usage(format!(
                "{n} words: pass a five- or six-word partition code, --word for a cover, or --with for a pair"
            )))
        }
    }
    r.summary("the code matches the forced template");
    Ok((r, Status::Holds))
}

fn parse_counts(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| Failure::Usage(format!("invalid composition {text:?}"))))
        .collect()
}

fn enum_covers(d: usize, word: Option<&str>, k: Option<usize>, comp: Option<&str>, from: usize, count: bool) -> Outcome {
    let s = Arc::new(Alphabet::standard(2));
    let w = match word {
        Some(text) => word_arg(&s, d, text)?,
        None => Word::new(vec![Letter::of_pair(1, false); d]),
    };
    let comp = comp.map(parse_counts).transpose()?.map(|c| Composition::new(from, c));
    let k = match (k, &comp) {
        (Some(k), _) => k,
        (None, Some(c)) => c.size(),
        (None, None) => return Err(Failure::Usage("give --k or --comp".into())),
    };
    let fam = enumerate_covers(&s, &w, k, comp.as_ref())?;
    let mut r = Report::new();
    r.put("count", fam.count());
    if !count {
        r.list("code", fam.codes.iter().map(|c| c.to_string()));
    }
    r.summary(format!("{} twin-pair-free covers of {} with {k} words", fam.count(), s.format_word(&w)));
    Ok((r, Status::Holds))
}

fn compositions(k: usize, d: usize, from: usize) -> Outcome {
    let sols = cover_compositions_from(k, d, from);
    let mut r = Report::new();
    r.put("first_index", from).put("count", sols.len());
    r.list(
        "solution",
        sols.iter().map(|c| c.counts.iter().map(usize::to_string).collect::<Vec<_>>().join(",")),
    );
    r.summary(format!("{} solutions for k = {k}, d = {d}", sols.len()));
    Ok((r, Status::Holds))
}

fn keller_clique(d: usize, budget: Budget) -> Outcome {
    let start = Instant::now();
    let g = build_keller_graph(d, &Arc::new(Alphabet::keller()))?;
    let res = max_clique(&g, budget);
    let mut r = Report::new();
    r.put("omega", res.vertices.len())
        .put("optimal", res.proven_optimal)
        .put("nodes", res.nodes)
        .put("seconds", start.elapsed().as_secs_f64())
        .list("word", words_of(&res.clique))
        .summary(if res.proven_optimal {
            format!("clique number {} proven", res.vertices.len())
        } else {
            format!("budget exhausted; largest clique found has {} vertices", res.vertices.len())
        });
    Ok((r, if res.proven_optimal { Status::Holds } else { Status::Inconclusive }))
}

fn keller_pair(d: usize, max_size: usize, budget: Budget) -> Outcome {
    let k = Arc::new(Alphabet::keller());
    let mut r = Report::new();
    let status = match counterexample_search(d, &k, max_size, budget)? {
        Counterexample::Found { v, w } => {
            r.put("result", "found").list("first", words_of(&v)).list("second", words_of(&w));
            r.summary(format!("two disjoint equivalent twin-pair-free codes of {} words", v.len()));
            Status::Holds
        }
        Counterexample::ProvenNone { checked } => {
            r.put("result", "none").put("checked", checked);
            r.summary(format!("no such pair with at most {max_size} words"));
            Status::Fails
        }
        Counterexample::Inconclusive { checked } => {
            r.put("result", "inconclusive").put("checked", checked);
            r.summary("the budget ran out");
            Status::Inconclusive
        }
    };
    Ok((r, status))
}

fn siblings(file: &Path) -> Outcome {
    let code = load_code(file)?;
    let g = sibling_graph(&code)?;
    let rep = check_sibling_invariants(&code)?;
    let mut r = Report::new();
    r.put("vertices", g.vertex_count).put("edges", g.edges.len());
    for (a, b, colours) in &g.edges {
        let cs: Vec<String> = colours.iter().map(|c| (c + 1).to_string()).collect();
        r.put(
            "edge",
            format!("{} {} {}", code.format_word(&code.words()[*a]), code.format_word(&code.words()[*b]), cs.join(",")),
        );
    }
    r.put("max_degree", rep.max_degree)
        .put("degree_bound", rep.degree_bound)
        .put("triangle_free", rep.triangle_free)
        .put("union_bound", rep.union_bound)
        .put("average_degree_bound", rep.average_degree_bound)
        .summary(if rep.passes() { "all sibling bounds hold" } else { "a sibling bound fails" });
    Ok((r, holds(rep.passes())))
}

fn tiling_validate(file: &Path) -> Outcome {
    let t = load_tiling(file)?;
    let mut r = Report::new();
    r.put("valid", true).put("d", t.dim()).summary("the translations tile space");
    Ok((r, Status::Holds))
}

fn tiling_analyze(file: &Path) -> Outcome {
    let t = load_tiling(file)?;
    let st = r_stats(&t);
    let mut r = Report::new();
    r.put("r_minus", st.r_minus)
        .put("r_plus", st.r_plus)
        .put("min_point", st.min_point.to_string())
        .put("max_point", st.max_point.to_string());
    match find_twin_pair_in_tiling(&t) {
        Some((a, b)) => {
            r.list("twin_pair", [format_vector(&a), format_vector(&b)]);
        }
        None => {
            r.put("twin_pair", "none");
        }
    }
    r.summary(format!("r- = {}, r+ = {}", st.r_minus, st.r_plus));
    Ok((r, Status::Holds))
}

fn tiling_encode(file: &Path, point: &str, small: bool) -> Outcome {
    let t = load_tiling(file)?;
    let quarters: Vec<u8> = point
        .split(',')
        .map(|q| q.trim().parse().map_err(|_| Failure::Usage(format!("invalid point {point:?}"))))
        .collect::<Result<_, _>>()?;
    let x = SamplePoint::new(quarters)?;
    let code = if small { encode_small(&t, &x)? } else { local_partition(&t, &x)? };
    let mut r = Report::new();
    r.put("point", x.to_string());
    for i in 0..t.dim() {
        let l: Vec<String> = L_set(&t, &x, i)?.into_iter().map(polybox::tiling::format_halves).collect();
        r.put(&format!("L{}", i + 1), l.join(" "));
    }
    r.put("code", serialize_code(&code).trim_end().to_string())
        .summary(format!("{} words at {x}", code.len()));
    Ok((r, Status::Holds))
}

/// Generated files print verbatim in text mode.
fn file_report(key: &str, text: String) -> Report {
    let mut r = Report::new();
    r.raw(key, text);
    r
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("--threads: {e}")))?;
    }
    match cli.command {
        Command::Check { file, twin_free, partition } => check(&file, twin_free, partition),
        Command::Covers { file, word } => covers_cmd(&file, &word),
        Command::Equiv { first, second } => equiv(&first, &second),
        Command::Rigid { file, budget, twin_free, disjoint, max, letters } => {
            rigid(&file, budget.get(), twin_free, disjoint, max, &letters)
        }
        Command::Classify { file, word, with } => classify(&file, word.as_deref(), with.as_deref()),
        Command::EnumCovers { d, word, k, comp, from, count } => {
            enum_covers(d, word.as_deref(), k, comp.as_deref(), from, count)
        }
        Command::Compositions { k, d, from } => compositions(k, d, from),
        Command::Keller { command } => match command {
            KellerCommand::Clique { d, budget } => keller_clique(d, budget.get()),
            KellerCommand::Pair { d, max_size, budget } => keller_pair(d, max_size, budget.get()),
        },
        Command::Siblings { file } => siblings(&file),
        Command::Tiling { command } => match command {
            TilingCommand::Validate { file } => tiling_validate(&file),
            TilingCommand::Analyze { file } => tiling_analyze(&file),
            TilingCommand::Encode { file, point, small } => tiling_encode(&file, &point, small),
            TilingCommand::Generate { d, steps, seed } => {
                let t = random_tiling(d, steps, seed)?;
                Ok((file_report("tiling", serialize_tiling(&t)), Status::Holds))
            }
        },
        Command::Generate { d, pairs, seed } => {
            if d == 0 || pairs == 0 {
                return Err(Failure::Usage("--d and --pairs must be positive".into()));
            }
            let code = random_partition_code(d, &Arc::new(Alphabet::standard(pairs)), seed);
            Ok((file_report("code", serialize_code(&code)), Status::Holds))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Usage as u8 } else { 0 });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok((report, status)) => {
            print!("{}", report.render(json));
            ExitCode::from(status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status() as u8)
        }
    }
}
