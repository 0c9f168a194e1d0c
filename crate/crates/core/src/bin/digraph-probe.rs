use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use digraph_probe::corpus::{self, ComparisonType, Corpus};
use digraph_probe::run::{self, RunConfig};
use digraph_probe::saefeat::{self, DEFAULT_TAU};
use digraph_probe::synth::{self, SyntheticSpec};
use digraph_probe::tensorio;
use digraph_probe::translit::{self, ExceptionLexicon};
use digraph_probe::{Error, Result};

#[derive(Parser)]
#[command(name = "digraph-probe", version, about = "Script-invariance probes for SAE features")]
struct Cli {
    /// Run configuration (JSON); used by `run` when it has no --config of its own.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transliterate stdin to stdout.
    Translit {
        #[arg(long, value_enum)]
        to: Script,
        /// Extra exception lexicon (tab-separated latin, cyrillic).
        #[arg(long, value_name = "FILE")]
        lexicon: Option<PathBuf>,
    },
    /// Corpus utilities.
    Corpus {
        #[command(subcommand)]
        action: CorpusCmd,
    },
    /// Generate a synthetic fixture.
    Synth {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        #[arg(short, long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Encode an activation dump and print active feature indices as JSON.
    Encode {
        #[arg(long, value_name = "FILE")]
        sae: PathBuf,
        #[arg(long, value_name = "FILE")]
        activations: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TAU)]
        tau: f32,
        #[arg(short, long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Rebuild tables and report from a results directory.
    Analyze {
        #[arg(long, value_name = "DIR")]
        results: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Full pipeline from a run configuration.
    Run,
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Check a corpus file against the dataset rules.
    Validate { file: PathBuf },
    /// Fill in Serbian Latin from Cyrillic and write the result.
    DeriveLatin {
        file: PathBuf,
        #[arg(short, long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Print the sentence pairs of one comparison type as CSV.
    Pairs {
        file: PathBuf,
        #[arg(long = "type", value_name = "NAME")]
        comparison: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Script {
    Cyr,
    Lat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Translit { to, lexicon } => {
            let mut lex = ExceptionLexicon::builtin();
            if let Some(p) = lexicon {
                for (lat, cyr) in ExceptionLexicon::load(&p)?.iter() {
                    lex.insert(lat, cyr);
                }
            }
            let mut input = String::new();
            std::io::stdin().read_to_string(&mut input).map_err(|e| Error::io(Path::new("<stdin>"), e))?;
            let out = match to {
                Script::Cyr => translit::latin_to_cyrillic_report(&input, &lex),
                Script::Lat => translit::cyrillic_to_latin_report(&input),
            };
            if out.unknown_chars > 0 {
                eprintln!("warning: {} characters passed through unchanged", out.unknown_chars);
            }
            print!("{}", out.text);
            Ok(())
        }
        Command::Corpus { action } => corpus_cmd(action),
        Command::Synth { spec, out } => {
            let fx = synth::generate(&SyntheticSpec::load(&spec)?)?;
            for p in synth::write_fixture(&fx, &out)? {
                println!("{}", p.display());
            }
            eprintln!("k = {}, {} features used", fx.expected.k, fx.expected.features_used);
            Ok(())
        }
        Command::Encode { sae, activations, tau, out } => {
            if !(tau.is_finite() && tau > 0.0) {
                return Err(Error::Config(format!("tau must be positive, got {tau}")));
            }
            let weights = tensorio::read_sae(&sae)?;
            let (manifest, records) = tensorio::read_activations(&activations)?;
            let sets = saefeat::encode_corpus(&weights, &manifest, &records, tau)?;
            let map: BTreeMap<String, &[u32]> = sets.iter().map(|(k, s)| (k.to_string(), s.indices())).collect();
            let json = serde_json::to_string_pretty(&map).map_err(|e| Error::json("active sets", e))? + "\n";
            write_output(out.as_deref(), json.as_bytes())
        }
        Command::Analyze { results, out } => {
            let a = run::analyze_dir(&results, &out)?;
            eprintln!(
                "separation fraction {:.4}, ordering {}",
                a.separation.fraction,
                if a.ordering.passed() { "pass" } else { "FAIL" }
            );
            Ok(())
        }
        Command::Run => {
            let path = cli.config.ok_or_else(|| Error::Config("run needs --config FILE".into()))?;
            let summary = run::run_all(&RunConfig::load(&path)?)?;
            eprintln!(
                "{} cells, {} comparison results, report at {}",
                summary.cells,
                summary.results,
                summary.output.join(run::REPORT_FILE).display()
            );
            Ok(())
        }
    }
}

fn corpus_cmd(action: CorpusCmd) -> Result<()> {
    match action {
        CorpusCmd::Validate { file } => {
            let c = corpus::load_corpus(&file)?;
            println!("ok: {} triplets, {} sentences", c.len(), c.keys().len());
            Ok(())
        }
        CorpusCmd::DeriveLatin { file, out } => {
            let derived = corpus::derive_latin(corpus::read_raw(&file)?)?;
            for n in &derived.notes {
                eprintln!("note: {n}");
            }
            std::fs::write(&out, derived.corpus.to_json()).map_err(|e| Error::io(&out, e))
        }
        CorpusCmd::Pairs { file, comparison } => {
            let t: ComparisonType = comparison.parse()?;
            let c: Corpus = corpus::load_corpus(&file)?;
            corpus::write_pairs_csv(&c, t, std::io::stdout().lock())
        }
    }
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Error::io(p, e)),
        None => std::io::stdout().lock().write_all(bytes).map_err(|e| Error::io(Path::new("<stdout>"), e)),
    }
}
