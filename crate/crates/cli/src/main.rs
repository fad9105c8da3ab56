mod report;
mod source;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use khof::braid_alexander::{alexander_axis, delta_term_test};
use khof::detection::{classify_with_budget, sublink};
use khof::diagrams::{disjoint_union, BraidWord, Diagram};
use khof::jones::{jones, jones_t, vuv_closed_form};
use khof::khovanov::{
    batson_seed_check, forest_poincare, internal_ranks, kh_with_budget, khr_with_budget, Coeff, DEFAULT_CROSSING_BUDGET,
};
use khof::polynomials::BiLaurent;
use khof::raag::{PathRaag, RaagWord, Variant};
use khof::Error;
use serde_json::json;

use report::{csv_rows, RunReport};
use source::{parse_braid, parse_forest, Source};

#[derive(Parser)]
#[command(name = "khof", version, about = "Khovanov homology, Jones and Alexander polynomials, and path RAAG words")]
struct Cli {
    /// Largest crossing count (after simplification) for homology computations.
    #[arg(long, global = true, env = "KHOF_BUDGET", default_value_t = DEFAULT_CROSSING_BUDGET)]
    budget: usize,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, global = true, env = "KHOF_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a diagram read from a JSON file.
    Invariants {
        file: PathBuf,
        #[command(flatten)]
        opts: InvariantOpts,
        /// Take the disjoint union with a second diagram and check rank multiplicativity.
        #[arg(long, value_name = "FILE")]
        union: Option<PathBuf>,
        /// Restrict to these components first (0-based, comma separated).
        #[arg(long, value_name = "LIST")]
        sublink: Option<String>,
        /// Check the internal-grading inequality against the two component knots.
        #[arg(long)]
        batson_seed: bool,
    },
    /// Generate a family member and compare it with its closed formulas.
    Family {
        #[command(subcommand)]
        source: Source,
        #[command(flatten)]
        opts: InvariantOpts,
    },
    /// Print a generated diagram as JSON.
    Diagram {
        #[command(subcommand)]
        source: Source,
    },
    /// Forest-of-unknots classification of a diagram read from a JSON file.
    Detect {
        file: PathBuf,
        /// Also check that every nonempty sublink has rank 2^(components).
        #[arg(long)]
        sublinks: bool,
    },
    /// Word problems in the path RAAG on M generators.
    Raag {
        m: usize,
        #[command(subcommand)]
        op: RaagOp,
    },
    /// Alexander polynomial of a braid closure together with its axis.
    Alexander {
        strands: usize,
        /// Letters like "1,-2,1".
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(Args, Clone)]
struct InvariantOpts {
    #[arg(long, global = true, value_enum, default_value_t = CoeffArg::F2)]
    coeff: CoeffArg,
    /// Basepoint for reduced homology as component:arc (0-based component, arc id).
    #[arg(long, global = true, value_name = "C:A")]
    basepoint: Option<String>,
    #[arg(long, global = true)]
    jones: bool,
    #[arg(long, global = true)]
    kh: bool,
    /// Reduced homology; every component unless --basepoint is given.
    #[arg(long, global = true)]
    khr: bool,
    /// Ranks along the internal grading h - q.
    #[arg(long, global = true)]
    internal: bool,
    /// Print rank tables as CSV rows instead of the JSON report.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffArg {
    F2,
    Z,
}

impl From<CoeffArg> for Coeff {
    fn from(c: CoeffArg) -> Coeff {
        match c {
            CoeffArg::F2 => Coeff::F2,
            CoeffArg::Z => Coeff::Z,
        }
    }
}

#[derive(Subcommand)]
enum RaagOp {
    /// Canonical reduced form of a word like "g1,g2^-1".
    Reduce { word: String },
    /// Whether two words represent the same element.
    Equal { a: String, b: String },
    /// Test (u, v) against the conjugation equation and decompose a solution.
    Solve {
        u: String,
        v: String,
        /// Use g_m^-1 in place of g_m.
        #[arg(long)]
        minus: bool,
    },
    /// Word length of the element.
    Length { word: String },
}

/// Output of a command: a report, or raw text for `diagram` and `--csv`.
enum Output {
    Report(RunReport),
    Text(String, RunReport),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    match run(&cli, argv) {
        Ok(out) => {
            let (text, mut rep) = match out {
                Output::Report(r) => (None, r),
                Output::Text(t, r) => (Some(t), r),
            };
            rep.elapsed_ms = start.elapsed().as_millis() as u64;
            match text {
                Some(t) => print!("{t}"),
                None => println!("{}", serde_json::to_string_pretty(&rep).expect("report serializes")),
            }
            eprintln!("{}", rep.summary());
            if rep.all_checks_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Failure::Core(Error::CrossingBudgetExceeded { .. } | Error::BudgetExceeded(_)) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

type Outcome = std::result::Result<Output, Failure>;

fn read(path: &PathBuf) -> std::result::Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Io(path.clone(), e))
}

fn load(path: &PathBuf) -> std::result::Result<(Diagram, Vec<u8>), Failure> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((Diagram::from_json(&text)?, bytes))
}

fn run(cli: &Cli, argv: Vec<String>) -> Outcome {
    let budget = cli.budget;
    match &cli.command {
        Command::Invariants { file, opts, union, sublink: comps, batson_seed } => {
            let (mut d, mut input) = load(file)?;
            if let Some(list) = comps {
                d = sublink(&d, &parse_components(list)?)?;
            }
            let mut parts = Vec::new();
            if let Some(other) = union {
                let (d2, bytes2) = load(other)?;
                input.extend_from_slice(&bytes2);
                parts = vec![d.clone(), d2.clone()];
                d = disjoint_union(&d, &d2);
            }
            let mut rep = RunReport::new(argv, &input);
            let mut csv = String::new();
            invariants(&d, opts, budget, &mut rep, &mut csv)?;
            if !parts.is_empty() {
                let coeff = opts.coeff.into();
                let whole = kh_with_budget(&d, coeff, budget)?.total_rank();
                let a = kh_with_budget(&parts[0], coeff, budget)?.total_rank();
                let b = kh_with_budget(&parts[1], coeff, budget)?.total_rank();
                rep.result("union_factor_ranks", [a, b]);
                rep.check("kunneth_rank", whole == a * b);
            }
            if *batson_seed {
                let k1 = sublink(&d, &[0])?;
                let k2 = sublink(&d, &[1])?;
                for x in [&d, &k1, &k2] {
                    let s = khof::diagrams::simplify(x);
                    if s.crossing_count() > budget {
                        return Err(Error::CrossingBudgetExceeded { crossings: s.crossing_count(), budget }.into());
                    }
                }
                rep.check("batson_seed", batson_seed_check(&d, &k1, &k2)?);
            }
            Ok(finish(rep, opts.csv, csv))
        }
        Command::Family { source, opts } => {
            let mut rep = RunReport::new(argv.clone(), argv.join(" ").as_bytes());
            let d = source.build()?;
            let mut opts = opts.clone();
            opts.jones = true;
            if let Source::Forest { .. } = source {
                opts.kh = true;
            }
            let mut csv = String::new();
            invariants(&d, &opts, budget, &mut rep, &mut csv)?;
            match source {
                Source::Luv { u, v } => {
                    let expected = vuv_closed_form(*u as i64, *v)?;
                    let got = jones(&d).eval_gaussian()?;
                    rep.result("jones_at_minus_i", got.to_string());
                    rep.result("closed_form", expected.to_string());
                    rep.check("closed_form", got == expected);
                }
                Source::Forest { edges, vertices } => {
                    let g = parse_forest(edges, *vertices)?;
                    let expected = forest_poincare(&g)?;
                    let got = kh_with_budget(&d, Coeff::F2, budget)?;
                    rep.result("poincare", got.poincare().to_string());
                    rep.result("forest_formula", expected.to_string());
                    if g.edges().iter().all(|e| e.2 > 0) {
                        rep.check("forest_formula", got.poincare() == expected);
                    } else {
                        // negative clasps reorient components, which shifts the bigrading
                        rep.check("forest_formula_up_to_shift", same_up_to_shift(&got.poincare(), &expected));
                    }
                    rep.check("minimal_rank", got.total_rank() == 1 << d.component_count());
                }
                _ => {}
            }
            Ok(finish(rep, opts.csv, csv))
        }
        Command::Diagram { source } => {
            let rep = RunReport::new(argv.clone(), argv.join(" ").as_bytes());
            Ok(Output::Text(format!("{}\n", source.build()?.to_json()), rep))
        }
        Command::Detect { file, sublinks } => {
            let (d, input) = load(file)?;
            let mut rep = RunReport::new(argv, &input);
            let c = classify_with_budget(&d, budget)?;
            rep.result("classification", &c);
            if *sublinks {
                let n = d.component_count();
                if n >= usize::BITS as usize {
                    return Err(Error::BadParameters(format!("{n} components is too many subsets")).into());
                }
                let mut table = BTreeMap::new();
                let mut ok = true;
                for mask in 1usize..1 << n {
                    let comps: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                    let r = kh_with_budget(&sublink(&d, &comps)?, Coeff::F2, budget)?.total_rank();
                    ok &= r == 1 << comps.len();
                    let key = comps.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
                    table.insert(key, r);
                }
                rep.result("sublink_ranks", table);
                rep.check("sublink_minimal_rank", ok);
            }
            Ok(Output::Report(rep))
        }
        Command::Raag { m, op } => {
            let mut rep = RunReport::new(argv.clone(), argv.join(" ").as_bytes());
            let g = PathRaag::new(*m)?;
            let word = |s: &str| -> std::result::Result<RaagWord, Failure> {
                let w: RaagWord = s.parse()?;
                g.check(&w)?;
                Ok(w)
            };
            match op {
                RaagOp::Reduce { word: w } => {
                    let c = g.canonical(&word(w)?);
                    rep.result("normal_form", c.to_string());
                    rep.result("length", c.len());
                }
                RaagOp::Length { word: w } => rep.result("length", g.length(&word(w)?)),
                RaagOp::Equal { a, b } => rep.result("equal", g.equal(&word(a)?, &word(b)?)),
                RaagOp::Solve { u, v, minus } => {
                    let variant = if *minus { Variant::Minus } else { Variant::Plus };
                    let (u, v) = (word(u)?, word(v)?);
                    let solution = g.is_conj_solution(&u, &v, variant)?;
                    rep.result("variant", variant);
                    rep.result("solution", solution);
                    if solution {
                        let (k, u1, v1) = g.conj_solution_decompose(&u, &v, variant)?;
                        rep.result("decomposition", json!({"k": k, "u": u1.to_string(), "v": v1.to_string()}));
                    }
                }
            }
            Ok(Output::Report(rep))
        }
        Command::Alexander { strands, word } => {
            let mut rep = RunReport::new(argv.clone(), argv.join(" ").as_bytes());
            let b = BraidWord::new(*strands, parse_braid(word)?)?;
            let p = alexander_axis(&b);
            let (terms, exceeds) = delta_term_test(&p);
            rep.result("alexander", p.to_string());
            rep.result("delta_terms", terms);
            rep.result("delta_exceeds_four", exceeds);
            Ok(Output::Report(rep))
        }
    }
}

fn same_up_to_shift(a: &BiLaurent, b: &BiLaurent) -> bool {
    let (Some(((ax, ay), _)), Some(((bx, by), _))) = (a.terms().next(), b.terms().next()) else {
        return a.is_zero() && b.is_zero();
    };
    let (dx, dy) = (bx - ax, by - ay);
    a.term_count() == b.term_count() && a.terms().all(|((x, y), c)| b.coeff(x + dx, y + dy) == *c)
}

fn finish(rep: RunReport, csv: bool, rows: String) -> Output {
    if csv {
        Output::Text(format!("table,h,q,rank,torsion\n{rows}"), rep)
    } else {
        Output::Report(rep)
    }
}

fn parse_components(list: &str) -> std::result::Result<Vec<usize>, Failure> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Core(Error::Parse(format!("bad component index {t:?}")))))
        .collect()
}

fn parse_basepoint(s: &str) -> khof::Result<(usize, u32)> {
    let bad = || Error::Parse(format!("bad basepoint {s:?}; expected component:arc"));
    let (c, a) = s.split_once(':').ok_or_else(bad)?;
    Ok((c.trim().parse().map_err(|_| bad())?, a.trim().parse().map_err(|_| bad())?))
}

fn invariants(
    d: &Diagram,
    opts: &InvariantOpts,
    budget: usize,
    rep: &mut RunReport,
    csv: &mut String,
) -> khof::Result<()> {
    let coeff: Coeff = opts.coeff.into();
    let any = opts.jones || opts.kh || opts.khr || opts.internal;
    rep.result("components", d.component_count());
    rep.result("crossings", d.crossing_count());
    if opts.jones {
        rep.result("jones", jones_t(d).to_string());
    }
    let mut full = None;
    if opts.kh || opts.internal || !any {
        let r = kh_with_budget(d, coeff, budget)?;
        rep.result("kh_total_rank", r.total_rank());
        if opts.kh || !any {
            csv_rows("kh", &r, csv);
            rep.result("kh", &r);
        }
        if opts.internal {
            rep.result("kh_internal", internal_ranks(&r));
        }
        full = Some(r);
    }
    if opts.khr {
        let choices: Vec<(usize, Option<u32>)> = match &opts.basepoint {
            Some(s) => {
                let (c, a) = parse_basepoint(s)?;
                vec![(c, Some(a))]
            }
            None => (0..d.component_count()).map(|c| (c, None)).collect(),
        };
        let mut rows = Vec::new();
        let mut halves = true;
        for (c, a) in choices {
            let r = khr_with_budget(d, c, a, coeff, budget)?;
            csv_rows(&format!("khr{c}"), &r, csv);
            if let Some(f) = &full {
                halves &= f.total_rank() == 2 * r.total_rank();
            }
            let mut entry = json!({"component": c, "ranks": &r, "total_rank": r.total_rank()});
            if let Some(a) = a {
                entry["arc"] = json!(a);
            }
            if opts.internal {
                entry["internal"] = json!(internal_ranks(&r));
            }
            rows.push(entry);
        }
        rep.result("khr", rows);
        if full.is_some() && coeff == Coeff::F2 {
            rep.check("kh_is_twice_khr", halves);
        }
    }
    Ok(())
}
