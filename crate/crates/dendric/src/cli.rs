//! Command-line front end: build a language from one source, run one
//! command, print text/JSON/DOT/CSV.
//!
//! Exit codes: 0 success or passing verdict, 1 failing verdict (theorem
//! check failed, scan rejected), 2 usage or horizon errors.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::codes::{self, CodeSet, PermutationAction};
use crate::complexity::{self, OmegaEstimate};
use crate::dendricity::{self, DendricityStatus};
use crate::error::{Error, Result};
use crate::extension::{ExtensionGraph, GraphKind};
use crate::language::{FactorLanguage, Template, DEFAULT_ITERATION_CAP};
use crate::transforms;
use crate::words::{Alphabet, Morphism, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "dendric", version, about = "Factor languages of shift spaces at finite horizon")]
pub struct Cli {
    /// Substitution file with lines `a -> ab`.
    #[arg(long, global = true, value_name = "FILE")]
    substitution: Option<PathBuf>,
    /// Template file with lines `u | m | v` for `^w(u) m (v)^w`.
    #[arg(long, global = true, value_name = "FILE")]
    templates: Option<PathBuf>,
    /// Word list file, one word per line; factors are taken from these.
    #[arg(long, global = true, value_name = "FILE")]
    words: Option<PathBuf>,
    /// Language JSON file as produced by the `language` command.
    #[arg(long, global = true, value_name = "FILE")]
    language: Option<PathBuf>,
    /// Horizon: factors are exact up to this length.
    #[arg(long, global = true)]
    horizon: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the language and export it.
    Language,
    /// Extension graph of a word, uniform order k or generalized via codes.
    ExtGraph {
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Suffix code file for the generalized left vertex set.
        #[arg(long = "U", value_name = "FILE")]
        u: Option<PathBuf>,
        /// Prefix code file for the generalized right vertex set.
        #[arg(long = "V", value_name = "FILE")]
        v: Option<PathBuf>,
    },
    /// Complexity profile p_n, s_n, b_n up to a length.
    Complexity {
        #[arg(long)]
        max: usize,
    },
    /// Left-/right-special and bispecial words per length.
    Special {
        #[arg(long)]
        max: usize,
    },
    /// Forest of left-special words linked by left-special prefixes.
    LsForest {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Dendricity scan: tree check of E_1(w) for all |w| <= max.
    Dendric {
        #[arg(long)]
        max: usize,
    },
    /// Least length from which all E_k(w) are simple trees within scan.
    SimpleTree {
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        max: usize,
    },
    /// Tree-equivalence of E_n and E_{n+1} over a length range.
    OrderEquiv {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long)]
        max: usize,
    },
    /// Return words of one word.
    Returns {
        #[arg(long)]
        word: String,
    },
    /// Check Card R(w) = 1 + rho(L_m) over a range of word lengths.
    ReturnTheorem {
        #[arg(long)]
        m: usize,
        /// Smallest word length to check (default: m).
        #[arg(long)]
        from: Option<usize>,
        /// Largest word length to check (default: m + 2).
        #[arg(long)]
        to: Option<usize>,
    },
    /// k-th higher block language with its block dictionary.
    HigherBlock {
        #[arg(long)]
        k: usize,
        /// Comma-separated symbol names for the blocks in canonical order.
        #[arg(long)]
        names: Option<String>,
    },
    /// Image under a letter-to-letter morphism.
    AlphaImage {
        #[arg(long, value_name = "FILE")]
        morphism: PathBuf,
    },
    /// Complete bifix decoding by a code, via a naming morphism.
    BifixDecode {
        /// Code file, one word per line.
        #[arg(long, value_name = "FILE")]
        code: PathBuf,
        /// Naming morphism file with lines `u -> aa`.
        #[arg(long, value_name = "FILE")]
        names: PathBuf,
    },
    /// Bifix code of words stabilizing a point under a permutation action.
    GroupCode {
        /// Permutation file with lines `a: (1 2)`.
        #[arg(long, value_name = "FILE")]
        perm: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Asymptotic classes of a template-defined shift.
    Asymptotic,
    /// Seeded random X-maximal suffix code grown by leaf expansion.
    RandomCode {
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        steps: usize,
    },
    /// Finite-horizon omega diagnostic from s_n stabilization.
    OmegaEstimate,
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn iteration_cap() -> usize {
    std::env::var("DENDRIC_MAX_ITER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ITERATION_CAP)
}

fn load_templates(path: &PathBuf) -> Result<Vec<Template>> {
    let text = read(path)?;
    let mut symbols: Vec<Symbol> = Vec::new();
    for c in text.chars() {
        if !c.is_whitespace() && c != '|' && c != '#' {
            let s = Symbol::from(c);
            if !symbols.contains(&s) {
                symbols.push(s);
            }
        }
    }
    symbols.sort();
    let alphabet = Alphabet::new(symbols)?;
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(Template::parse(&alphabet, line)?);
    }
    Ok(out)
}

impl Cli {
    fn horizon(&self) -> Result<usize> {
        let h = self
            .horizon
            .ok_or_else(|| Error::Invalid("--horizon is required for this source".into()))?;
        if h < 2 {
            return Err(Error::InsufficientHorizon { required: 2, available: h });
        }
        Ok(h)
    }

    fn load_language(&self) -> Result<FactorLanguage> {
        let sources = [
            self.substitution.is_some(),
            self.templates.is_some(),
            self.words.is_some(),
            self.language.is_some(),
        ];
        if sources.iter().filter(|&&b| b).count() != 1 {
            return Err(Error::Invalid(
                "exactly one of --substitution, --templates, --words, --language is required"
                    .into(),
            ));
        }
        if let Some(path) = &self.substitution {
            let m = Morphism::parse(&read(path)?)?;
            return FactorLanguage::from_substitution(&m, self.horizon()?, iteration_cap());
        }
        if let Some(path) = &self.templates {
            return FactorLanguage::from_templates(&load_templates(path)?, self.horizon()?);
        }
        if let Some(path) = &self.words {
            let text = read(path)?;
            let mut symbols: Vec<Symbol> = Vec::new();
            for c in text.chars() {
                if !c.is_whitespace() && c != '.' && c != '#' {
                    let s = Symbol::from(c);
                    if !symbols.contains(&s) {
                        symbols.push(s);
                    }
                }
            }
            symbols.sort();
            let alphabet = Alphabet::new(symbols)?;
            let mut words = Vec::new();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                words.push(alphabet.parse_word(line)?);
            }
            return FactorLanguage::from_words(alphabet, &words, self.horizon()?);
        }
        let path = self.language.as_ref().unwrap();
        FactorLanguage::from_json(&read(path)?)
    }
}

fn print_language(lang: &FactorLanguage, format: Format) {
    match format {
        Format::Json => println!("{}", lang.to_json()),
        _ => {
            println!(
                "alphabet: {}",
                lang.alphabet()
                    .iter()
                    .map(|s| s.as_str().to_owned())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            println!("horizon: {}", lang.horizon());
            for n in 1..=lang.horizon() {
                let words: Vec<String> =
                    lang.factors(n).unwrap().iter().map(|w| w.to_string()).collect();
                println!("{n}: {}", words.join(" "));
            }
        }
    }
}

fn print_graph(g: &ExtensionGraph, format: Format) {
    match format {
        Format::Dot => print!("{}", g.to_dot()),
        Format::Json => {
            let edges: Vec<[String; 2]> = g
                .edges()
                .iter()
                .map(|(u, v)| [u.to_string(), v.to_string()])
                .collect();
            let json = serde_json::json!({
                "word": g.word().to_string(),
                "left": g.left_vertices().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "right": g.right_vertices().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "edges": edges,
                "tree": g.is_tree(),
            });
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
        }
        _ => {
            println!("word: {}", g.word());
            println!(
                "left: {}",
                g.left_vertices().iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
            );
            println!(
                "right: {}",
                g.right_vertices().iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
            );
            for (u, v) in g.edges() {
                println!("{u} -- {v}");
            }
            let shape = if g.is_tree() {
                if g.is_simple_tree() { "simple tree" } else { "tree" }
            } else if g.is_connected() {
                "connected, cyclic"
            } else {
                "disconnected"
            };
            println!("shape: {shape}");
            if let GraphKind::Uniform { k: 1 } = g.kind() {
                println!(
                    "multiplicity: {} ({})",
                    g.multiplicity().unwrap(),
                    g.neutrality_class().unwrap()
                );
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Language => {
            let lang = cli.load_language()?;
            print_language(&lang, cli.format);
            Ok(0)
        }
        Command::ExtGraph { word, k, u, v } => {
            let lang = cli.load_language()?;
            let w = lang.alphabet().parse_word(word)?;
            let g = match (u, v) {
                (None, None) => ExtensionGraph::uniform(&lang, &w, *k)?,
                (Some(u), Some(v)) => {
                    let cu = CodeSet::parse(lang.alphabet(), &read(u)?)?;
                    let cv = CodeSet::parse(lang.alphabet(), &read(v)?)?;
                    ExtensionGraph::generalized(&lang, &w, &cu, &cv)?
                }
                _ => {
                    return Err(Error::Invalid(
                        "--U and --V must be given together".into(),
                    ))
                }
            };
            print_graph(&g, cli.format);
            Ok(0)
        }
        Command::Complexity { max } => {
            let lang = cli.load_language()?;
            if *max > lang.horizon() {
                return Err(Error::InsufficientHorizon {
                    required: *max,
                    available: lang.horizon(),
                });
            }
            let prof = complexity::complexity_profile(&lang)?;
            match cli.format {
                Format::Csv => print!("{}", complexity::profile_csv(&prof)),
                Format::Json => {
                    let json = serde_json::json!({
                        "p": &prof.p[..=*max],
                        "s": &prof.s[..(*max).min(prof.s.len())],
                        "b": &prof.b[..(*max).min(prof.b.len())],
                    });
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                }
                _ => {
                    println!("n\tp\ts\tb");
                    for n in 0..=*max {
                        let s = prof.s.get(n).map(|v| v.to_string()).unwrap_or_default();
                        let b = prof.b.get(n).map(|v| v.to_string()).unwrap_or_default();
                        println!("{n}\t{}\t{s}\t{b}", prof.p[n]);
                    }
                }
            }
            Ok(0)
        }
        Command::Special { max } => {
            let lang = cli.load_language()?;
            let prof = complexity::complexity_profile(&lang)?;
            if *max >= prof.left_special.len() {
                return Err(Error::InsufficientHorizon {
                    required: *max + 1,
                    available: lang.horizon(),
                });
            }
            match cli.format {
                Format::Json => {
                    let per_len: Vec<serde_json::Value> = (0..=*max)
                        .map(|n| {
                            serde_json::json!({
                                "n": n,
                                "left_special": prof.left_special[n].iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                                "right_special": prof.right_special[n].iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                                "bispecial": prof.bispecial[n].iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&per_len).unwrap());
                }
                _ => {
                    for n in 0..=*max {
                        let ls: Vec<String> =
                            prof.left_special[n].iter().map(|w| w.to_string()).collect();
                        let rs: Vec<String> =
                            prof.right_special[n].iter().map(|w| w.to_string()).collect();
                        println!("{n}: LS {{{}}} RS {{{}}}", ls.join(" "), rs.join(" "));
                    }
                }
            }
            Ok(0)
        }
        Command::LsForest { from, to } => {
            let lang = cli.load_language()?;
            let forest = complexity::ls_forest(&lang, *from, *to)?;
            match cli.format {
                Format::Json => println!("{}", forest.to_json()),
                _ => {
                    for (i, node) in forest.nodes.iter().enumerate() {
                        let parent = node
                            .parent
                            .map(|p| forest.nodes[p].word.to_string())
                            .unwrap_or_else(|| "-".to_owned());
                        let flag = if node.flagged { " !" } else { "" };
                        println!("{i}: {} (l={}, parent {parent}){flag}", node.word, node.l);
                    }
                }
            }
            Ok(0)
        }
        Command::Dendric { max } => {
            let lang = cli.load_language()?;
            let v = dendricity::dendricity_scan(&lang, *max)?;
            match cli.format {
                Format::Json => println!("{}", v.to_json()),
                _ => {
                    let line = match &v.status {
                        DendricityStatus::DendricWithinHorizon => {
                            "dendric within scan, threshold 0".to_owned()
                        }
                        DendricityStatus::EventuallyDendricWithinHorizon(m) => {
                            format!("eventually dendric within scan, threshold {m}")
                        }
                        DendricityStatus::RejectedWithinHorizon => {
                            "rejected within scan".to_owned()
                        }
                    };
                    println!("{line} (scanned length <= {})", v.scanned_max_length);
                    for f in &v.failures {
                        let w = if f.word.is_empty() { "(empty)".to_owned() } else { f.word.to_string() };
                        println!("failure: {w} ({}, m={})", f.reason, f.multiplicity);
                    }
                }
            }
            Ok(if v.status == DendricityStatus::RejectedWithinHorizon { 1 } else { 0 })
        }
        Command::SimpleTree { k, max } => {
            let lang = cli.load_language()?;
            let n = dendricity::check_simple_tree_horizon(&lang, *k, *max)?;
            match n {
                Some(n) => {
                    println!("all E_{k}(w) simple trees from length {n} within scan <= {max}");
                    Ok(0)
                }
                None => {
                    println!("simple-tree horizon not reached within scan <= {max}");
                    Ok(1)
                }
            }
        }
        Command::OrderEquiv { n, m, max } => {
            let lang = cli.load_language()?;
            let r = dendricity::check_order_equivalence(&lang, *n, *m, *max)?;
            println!(
                "E_{} vs E_{}: {} pointwise discrepancies, universal equivalence {}",
                r.n,
                r.n + 1,
                r.discrepancies.len(),
                if r.universal_equivalent() { "holds" } else { "fails" }
            );
            for w in &r.discrepancies {
                println!("discrepancy: {w}");
            }
            Ok(if r.universal_equivalent() { 0 } else { 1 })
        }
        Command::Returns { word } => {
            let lang = cli.load_language()?;
            let w = lang.alphabet().parse_word(word)?;
            let r = codes::return_words(&lang, &w)?;
            match cli.format {
                Format::Json => {
                    let json = serde_json::json!({
                        "word": r.base.to_string(),
                        "returns": r.returns.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                        "complete_returns": r.complete_returns.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                        "complete_within_horizon": r.complete_within_horizon,
                    });
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                }
                _ => {
                    for u in &r.returns {
                        println!("{u}");
                    }
                    if !r.complete_within_horizon {
                        println!("(incomplete: some branch was cut by the horizon)");
                    }
                }
            }
            Ok(if r.complete_within_horizon { 0 } else { 1 })
        }
        Command::ReturnTheorem { m, from, to } => {
            let lang = cli.load_language()?;
            let lo = from.unwrap_or(*m).max(*m).max(1);
            let hi = to.unwrap_or(*m + 2).max(lo);
            let mut words = Vec::new();
            for n in lo..=hi {
                words.extend(lang.factors(n)?.iter().cloned());
            }
            let lines = codes::check_return_count_theorem(&lang, *m, &words)?;
            let all_pass = lines.iter().all(|l| l.pass);
            match cli.format {
                Format::Json => {
                    let items: Vec<serde_json::Value> = lines
                        .iter()
                        .map(|l| {
                            serde_json::json!({
                                "word": l.word.to_string(),
                                "count": l.count,
                                "expected": l.expected,
                                "pass": l.pass,
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&items).unwrap());
                }
                _ => {
                    for l in &lines {
                        println!(
                            "{}: {} returns, expected {} -> {}",
                            l.word,
                            l.count,
                            l.expected,
                            if l.pass { "pass" } else { "FAIL" }
                        );
                    }
                }
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::HigherBlock { k, names } => {
            let lang = cli.load_language()?;
            let names_vec: Option<Vec<&str>> =
                names.as_ref().map(|s| s.split(',').map(str::trim).collect());
            let (image, coding) = transforms::higher_block(&lang, *k, names_vec.as_deref())?;
            if cli.format == Format::Json {
                println!("{}", image.to_json());
            } else {
                print!("{}", coding.to_text());
                print_language(&image, cli.format);
            }
            Ok(0)
        }
        Command::AlphaImage { morphism } => {
            let lang = cli.load_language()?;
            let alpha = Morphism::parse(&read(morphism)?)?;
            let image = transforms::alphabetic_image(&lang, &alpha)?;
            print_language(&image, cli.format);
            Ok(0)
        }
        Command::BifixDecode { code, names } => {
            let lang = cli.load_language()?;
            let code = CodeSet::parse(lang.alphabet(), &read(code)?)?;
            let phi = Morphism::parse(&read(names)?)?;
            let decoded = transforms::bifix_decode(&lang, &code, &phi)?;
            print_language(&decoded, cli.format);
            Ok(0)
        }
        Command::GroupCode { perm, point } => {
            let lang = cli.load_language()?;
            let action = PermutationAction::parse(&read(perm)?)?;
            let u = codes::group_bifix_code(&lang, &action, point)?;
            for w in u.words() {
                println!("{w}");
            }
            Ok(0)
        }
        Command::Asymptotic => {
            let path = cli
                .templates
                .as_ref()
                .ok_or(Error::NotTemplateLanguage)?;
            let ts = load_templates(path)?;
            let report = complexity::asymptotic_classes(&ts)?;
            match cli.format {
                Format::Json => {
                    let classes: Vec<serde_json::Value> = report
                        .classes
                        .iter()
                        .map(|c| {
                            serde_json::json!({
                                "orbits": c.orbit_count,
                                "omega": c.omega,
                                "structure": match c.structure {
                                    complexity::ClassStructure::Tree => "tree",
                                    complexity::ClassStructure::ClusterOfTrees => "cluster-of-trees",
                                },
                                "ls_tails": c.ls_tails.iter().map(|t| {
                                    serde_json::json!({
                                        "preperiod": t.preperiod.to_string(),
                                        "period": t.period.to_string(),
                                        "l": t.l,
                                    })
                                }).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let json = serde_json::json!({
                        "total_orbits": report.total_orbits,
                        "omega_total": report.omega_total,
                        "classes": classes,
                    });
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                }
                _ => {
                    println!(
                        "{} orbits, omega = {}",
                        report.total_orbits, report.omega_total
                    );
                    for (i, c) in report.classes.iter().enumerate() {
                        let structure = match c.structure {
                            complexity::ClassStructure::Tree => "tree",
                            complexity::ClassStructure::ClusterOfTrees => "cluster of trees",
                        };
                        println!(
                            "class {i}: {} orbits, omega {}, {structure}",
                            c.orbit_count, c.omega
                        );
                        for t in &c.ls_tails {
                            println!(
                                "  tail {}({})^w with l = {}",
                                t.preperiod, t.period, t.l
                            );
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::RandomCode { m, steps } => {
            let lang = cli.load_language()?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let u = codes::random_maximal_suffix_code(&lang, *m, *steps, &mut rng)?;
            for w in u.words() {
                println!("{w}");
            }
            let rho_u = codes::rho(&lang, u.words())?;
            let rho_m = codes::rho(&lang, lang.factors(*m)?)?;
            println!("rho(U) = {rho_u}, rho(L_{m}) = {rho_m}");
            Ok(if rho_u == rho_m { 0 } else { 1 })
        }
        Command::OmegaEstimate => {
            let lang = cli.load_language()?;
            match complexity::omega_estimate(&lang)? {
                OmegaEstimate::Unstable => {
                    println!("unstable: s_n not constant over the last observable lengths");
                    Ok(1)
                }
                OmegaEstimate::Stable { s_limit, chain_count, chain_sum, persistent_branching } => {
                    println!(
                        "s_limit = {s_limit}, {chain_count} chains, chain-sum = {chain_sum}"
                    );
                    if persistent_branching {
                        println!(
                            "warning: left-special branching persists; s_limit is not evidence of eventual dendricity"
                        );
                    }
                    Ok(0)
                }
            }
        }
    }
}

/// Entry point used by the binary; maps errors to exit code 2.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
