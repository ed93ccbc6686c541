//! `kdeck`: k-decks, spectra, extendable domains and 3-deck classification
//! of subsets of Z_n from the command line.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kdeck::analysis::{
    classify_with, good_n_predicate, zero_probability_mc, ClassificationReport, ClassifyOptions,
    Estimate, DEFAULT_MAX_N,
};
use kdeck::constructions::{even_pair, pqrd_pair, two_deck_pair, CounterexamplePair};
use kdeck::deck::{deck_fingerprint, deck_size, set_deck};
use kdeck::extendable::is_extendable;
use kdeck::spectrum::set_zero_set;
use kdeck::{determinacy_certificate, CyclicSet, Error};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

/// Deck printouts above this many entries need `--force`.
const PRINT_LIMIT: u128 = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "kdeck", version, about = "Exact k-decks and 3-deck reconstruction on Z_n")]
struct Cli {
    /// Worker threads for classification and sampling (0 = one per core)
    #[arg(long, global = true, env = "KDECK_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct SetSource {
    /// Comma-separated residues, e.g. 0,3,4,5,7,8 (empty string for the empty set)
    #[arg(long, allow_hyphen_values = true)]
    set: Option<String>,
    /// Hex bitmask, bit j set iff j is in the set, e.g. 0x1B9
    #[arg(long)]
    mask: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct SetInput {
    /// Modulus
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    source: SetSource,
}

impl SetInput {
    fn parse(&self) -> Result<CyclicSet, Failure> {
        if self.n == 0 {
            return Err(Error::ZeroModulus.into());
        }
        let set = match (&self.source.set, &self.source.mask) {
            (Some(list), _) => CyclicSet::parse_list(self.n, list)?,
            (None, Some(hex)) => CyclicSet::from_hex(self.n, hex)?,
            (None, None) => unreachable!("clap enforces one source"),
        };
        Ok(set)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the k-deck of a set as JSON
    Deck {
        #[command(flatten)]
        input: SetInput,
        /// Deck order
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Print only the SHA-256 fingerprint of the deck
        #[arg(long)]
        digest: bool,
        /// Allow printing more than a million entries
        #[arg(long)]
        force: bool,
    },
    /// Exact Fourier support and zero set of an indicator function
    Spectrum {
        #[command(flatten)]
        input: SetInput,
    },
    /// Decide whether a set is an extendable domain
    Extendable {
        #[command(flatten)]
        input: SetInput,
        /// Use the Fourier support of the set's indicator instead of the set itself
        #[arg(long)]
        from_set: bool,
    },
    /// Strongest available certificate of 3-deck determinacy
    Certify {
        #[command(flatten)]
        input: SetInput,
    },
    /// Build and verify an explicit counterexample pair
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Classify every subset of Z_n by its 3-deck
    Classify {
        #[arg(long)]
        n: usize,
        /// Number of exception pairs listed
        #[arg(long, default_value_t = 100)]
        max_exceptions: usize,
        /// Largest accepted modulus (at most 20)
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        #[arg(long, conflicts_with_all = ["csv", "format"])]
        json: bool,
        #[arg(long, conflicts_with = "format")]
        csv: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// One CSV row per modulus: classifier verdict next to the closed form
    Sweep {
        #[arg(long, default_value_t = 1)]
        from: usize,
        #[arg(long, default_value_t = 18)]
        to: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Sample random subsets and count exact Fourier zeros
    Mc {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Pair on Z_2k sharing a 3-deck
    Even {
        #[arg(long)]
        k: usize,
    },
    /// Pair on Z_pqrd sharing a 3-deck
    Pqrd {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
    },
    /// E = A + B and F = A - B, sharing a 2-deck
    Twodeck {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn big_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn rational_json(x: &BigRational) -> Value {
    json!(x.to_string())
}

fn estimate_json(e: &Estimate) -> Value {
    json!({ "rate": e.rate, "std_error": e.std_error })
}

fn print_json(out: &mut impl Write, v: &Value) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("values serialize"))
}

fn pair_json(pair: &CounterexamplePair) -> Value {
    json!({
        "n": pair.n,
        "kind": pair.kind.as_str(),
        "E": pair.e.elements(),
        "F": pair.f.elements(),
        "verified": pair.verified,
        "holds": pair.holds(),
    })
}

fn classify_json(r: &ClassificationReport) -> Value {
    let fraction = BigRational::new(BigInt::from(r.exception_subset_count), BigInt::from(1u64) << r.n);
    json!({
        "n": r.n,
        "num_subsets": r.num_subsets as u64,
        "num_translation_classes": r.num_translation_classes,
        "num_deck_classes": r.num_deck_classes,
        "determined": r.determined,
        "predicate": good_n_predicate(r.n as u64),
        "exception_pair_count": r.exception_pair_count,
        "exception_subset_count": r.exception_subset_count,
        "exception_fraction": rational_json(&fraction),
        "exceptions": r.exceptions.iter().map(|(e, f)| json!({"E": e.elements(), "F": f.elements()})).collect::<Vec<_>>(),
        "elapsed_seconds": r.elapsed.as_secs_f64(),
    })
}

const CSV_HEADER: &str = "n,determined,predicate,translation_classes,deck_classes,exception_subsets,seconds";

fn csv_row(r: &ClassificationReport) -> String {
    format!(
        "{},{},{},{},{},{},{:.3}",
        r.n,
        r.determined,
        good_n_predicate(r.n as u64),
        r.num_translation_classes,
        r.num_deck_classes,
        r.exception_subset_count,
        r.elapsed.as_secs_f64()
    )
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    if cli.threads > 0 {
        // a second initialisation in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    let io_err = |e: io::Error| Failure::Usage(format!("cannot write output: {e}"));
    match cli.command {
        Command::Deck { input, k, digest, force } => {
            let set = input.parse()?;
            if k < 2 {
                return Err(Error::DeckOrder(k).into());
            }
            let size = deck_size(set.n(), k);
            if !digest && size > PRINT_LIMIT && !force {
                return Err(Failure::Usage(format!(
                    "the deck has {size} entries; pass --force to print more than {PRINT_LIMIT}"
                )));
            }
            let deck = set_deck(&set, k)?;
            if digest {
                writeln!(out, "{}", deck_fingerprint(&deck).to_hex()).map_err(io_err)?;
            } else {
                print_json(out, &json!({ "n": deck.n, "k": deck.k, "values": deck.values })).map_err(io_err)?;
            }
        }
        Command::Spectrum { input } => {
            let set = input.parse()?;
            let view = set_zero_set(&set).to_json_view();
            print_json(out, &serde_json::to_value(view).expect("serializable")).map_err(io_err)?;
        }
        Command::Extendable { input, from_set } => {
            let set = input.parse()?;
            let domain = if from_set { set_zero_set(&set).full_support } else { set };
            let verdict = is_extendable(&domain)?;
            let mut v = json!({
                "n": domain.n(),
                "support": domain.elements(),
                "extendable": verdict.extendable,
            });
            if let Some(w) = &verdict.witness {
                v["witness"] = json!({
                    "denominator": big_json(&w.denominator),
                    "values": w.values.iter().map(big_json).collect::<Vec<_>>(),
                });
            }
            if let Some(slopes) = &verdict.slope_certificate {
                v["slope"] = json!(slopes.iter().map(rational_json).collect::<Vec<_>>());
            }
            print_json(out, &v).map_err(io_err)?;
        }
        Command::Certify { input } => {
            let set = input.parse()?;
            let cert = determinacy_certificate(&set)?;
            let v = json!({ "n": set.n(), "set": set.elements(), "certificate": cert.as_str() });
            print_json(out, &v).map_err(io_err)?;
        }
        Command::Construct { family } => {
            let pair = match family {
                Family::Even { k } => even_pair(k)?,
                Family::Pqrd { p, q, r, d } => pqrd_pair(p, q, r, d)?,
                Family::Twodeck { n, a, b } => {
                    if n == 0 {
                        return Err(Error::ZeroModulus.into());
                    }
                    two_deck_pair(&CyclicSet::parse_list(n, &a)?, &CyclicSet::parse_list(n, &b)?)?
                }
            };
            print_json(out, &pair_json(&pair)).map_err(io_err)?;
            if !pair.holds() {
                return Err(Failure::Verification(format!(
                    "the {} pair does not exhibit its claim",
                    pair.kind.as_str()
                )));
            }
        }
        Command::Classify { n, max_exceptions, max_n, json, csv, format } => {
            let format = format.unwrap_or(if json {
                Format::Json
            } else if csv {
                Format::Csv
            } else {
                Format::Plain
            });
            let r = classify_with(n, &ClassifyOptions { max_n, max_exceptions })?;
            match format {
                Format::Json => print_json(out, &classify_json(&r)).map_err(io_err)?,
                Format::Csv => writeln!(out, "{CSV_HEADER}\n{}", csv_row(&r)).map_err(io_err)?,
                Format::Plain => {
                    let lines = [
                        format!("n = {}", r.n),
                        format!("subsets: {}", r.num_subsets),
                        format!("translation classes: {}", r.num_translation_classes),
                        format!("3-deck classes: {}", r.num_deck_classes),
                        format!("determined: {}", r.determined),
                        format!("closed form predicts: {}", good_n_predicate(n as u64)),
                        format!("exception pairs: {}", r.exception_pair_count),
                        format!("subsets in colliding classes: {}", r.exception_subset_count),
                    ];
                    for line in lines {
                        writeln!(out, "{line}").map_err(io_err)?;
                    }
                    for (e, f) in &r.exceptions {
                        writeln!(out, "  {e}  ~  {f}").map_err(io_err)?;
                    }
                }
            }
        }
        Command::Sweep { from, to, max_n } => {
            if from == 0 || from > to {
                return Err(Failure::Usage(format!("empty range {from}..={to}")));
            }
            writeln!(out, "{CSV_HEADER}").map_err(io_err)?;
            let opts = ClassifyOptions { max_n, max_exceptions: 0 };
            let mut mismatches = Vec::new();
            for n in from..=to {
                let r = classify_with(n, &opts)?;
                writeln!(out, "{}", csv_row(&r)).map_err(io_err)?;
                out.flush().map_err(io_err)?;
                if r.determined != good_n_predicate(n as u64) {
                    mismatches.push(n);
                }
            }
            if !mismatches.is_empty() {
                return Err(Failure::Verification(format!(
                    "classifier disagrees with the closed form at n = {mismatches:?}"
                )));
            }
        }
        Command::Mc { n, samples, seed } => {
            let r = zero_probability_mc(n, samples, seed)?;
            let v = json!({
                "n": r.n,
                "samples": r.samples,
                "seed": r.seed,
                "generator": r.generator,
                "zero_counts": r.zero_counts,
                "any_zero_count": r.any_zero_count,
                "trivial_count": r.trivial_count,
                "nontrivial_any_zero_count": r.nontrivial_any_zero_count,
                "exact_half_probability": r.exact_half_probability.as_ref().map(rational_json),
                "estimates": r.estimates.iter().map(estimate_json).collect::<Vec<_>>(),
                "any_zero_estimate": estimate_json(&r.any_zero_estimate),
            });
            print_json(out, &v).map_err(io_err)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
