use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spa::associator::{export_rules, format_rules};
use spa::encode::Codebook;
use spa::harness::{evaluate, run_experiment, ExperimentConfig, Report};
use spa::lexicon::{build_examples, load_lexicon, Dataset, PhonemeInventory, Representation};
use spa::model::{Codec, Encoding, Model};
use spa::tree::{PassthroughReference, Strategy};
use spa::{Error, Result};

#[derive(Parser)]
#[command(name = "spa", version, about = "Symbolic pattern associator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Align a verb lexicon into a dataset file.
    Prepare {
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        inventory: Option<PathBuf>,
        /// left-template, right-coda or consecutive:<k>
        #[arg(long, default_value = "left-template")]
        rep: Representation,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train a model on a dataset file.
    Train {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        inventory: Option<PathBuf>,
        /// symbolic, distributed or ecc (needs --codebook)
        #[arg(long, default_value = "symbolic")]
        encoding: String,
        #[arg(long)]
        codebook: Option<PathBuf>,
        #[arg(long, default_value = "adaptive")]
        strategy: Strategy,
        /// split or twin
        #[arg(long, default_value = "split")]
        reference: PassthroughReference,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the past tense a model gives each stem.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        inventory: Option<PathBuf>,
        /// Seed for decoding ties.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(required = true)]
        stems: Vec<String>,
    },
    /// Score a model on a dataset file.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        inventory: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run an experiment config and print its report.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Also write the comma-separated report here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// List the production rules of one output attribute.
    Rules {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        inventory: Option<PathBuf>,
        /// Output attribute, counted from 1.
        #[arg(long)]
        output: usize,
    },
    /// Build and save a verified error-correcting codebook.
    Codebook {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        distance: usize,
        #[arg(long)]
        inventory: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn inventory(path: &Option<PathBuf>) -> Result<PhonemeInventory> {
    match path {
        Some(p) => PhonemeInventory::load(p),
        None => Ok(PhonemeInventory::default_unibet()),
    }
}

fn encoding(tag: &str, codebook: &Option<PathBuf>) -> Result<Encoding> {
    match (tag, codebook) {
        ("symbolic", None) => Ok(Encoding::Symbolic),
        ("distributed", None) => Ok(Encoding::Distributed),
        ("ecc", Some(p)) => Ok(Encoding::Ecc(Codebook::load(p)?)),
        ("ecc", None) => Err(Error::Usage("--encoding ecc needs --codebook".into())),
        ("symbolic" | "distributed", Some(_)) => Err(Error::Usage(
            "--codebook only applies to --encoding ecc".into(),
        )),
        (other, _) => Err(Error::Usage(format!(
            "unknown encoding '{other}' (expected symbolic, distributed or ecc)"
        ))),
    }
}

fn load_dataset(path: &Path, model: &Model) -> Result<Dataset> {
    let data = Dataset::load(path)?;
    if data.representation != model.codec.representation {
        return Err(Error::Usage(format!(
            "dataset uses {} but the model was trained on {}",
            data.representation, model.codec.representation
        )));
    }
    Ok(data)
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Prepare {
            lexicon,
            inventory: inv,
            rep,
            out,
        } => {
            let inv = inventory(&inv)?;
            let pairs = load_lexicon(&lexicon, &inv)?;
            if pairs.is_empty() {
                eprintln!("warning: {} holds no verb pairs", lexicon.display());
            }
            let (data, unfit) = build_examples(&pairs, rep, &inv)?;
            data.save(&out)?;
            println!(
                "{} pairs: {} fit {rep}, {unfit} unfit",
                pairs.len(),
                data.len()
            );
        }
        Command::Train {
            data,
            inventory: inv,
            encoding: tag,
            codebook,
            strategy,
            reference,
            out,
        } => {
            let inv = inventory(&inv)?;
            let data = Dataset::load(&data)?;
            let codec = Codec::new(data.representation, encoding(&tag, &codebook)?, inv)?;
            let model = Model::train(&data.examples(), codec, strategy, reference)?;
            model.save(&out)?;
            println!(
                "trained {} trees on {} examples",
                model.forest.output_arity(),
                data.len()
            );
        }
        Command::Predict {
            model,
            inventory: inv,
            seed,
            stems,
        } => {
            let inv = inventory(&inv)?;
            let model = Model::load(&model, &inv)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for stem in stems {
                println!("{}", model.predict_stem(&stem, &mut rng)?);
            }
        }
        Command::Eval {
            model,
            data,
            inventory: inv,
            seed,
        } => {
            let inv = inventory(&inv)?;
            let model = Model::load(&model, &inv)?;
            let data = load_dataset(&data, &model)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let metrics = evaluate(&model, &data.examples(), &data.regular_flags(), &mut rng)?;
            print!("{metrics}");
        }
        Command::Experiment { config, csv } => {
            let config = ExperimentConfig::load(&config)?;
            let report: Report = run_experiment(&config)?;
            print!("{}", report.to_text());
            if let Some(p) = csv {
                std::fs::write(&p, report.to_csv()?)
                    .map_err(|e| Error::Usage(format!("{}: {e}", p.display())))?;
            }
        }
        Command::Rules {
            model,
            inventory: inv,
            output,
        } => {
            let inv = inventory(&inv)?;
            let model = Model::load(&model, &inv)?;
            let tree = output
                .checked_sub(1)
                .and_then(|i| model.forest.tree(i))
                .ok_or_else(|| {
                    Error::Usage(format!(
                        "--output must be between 1 and {}",
                        model.forest.output_arity()
                    ))
                })?;
            print!("{}", format_rules(&export_rules(tree)));
        }
        Command::Codebook {
            length,
            distance,
            inventory: inv,
            seed,
            out,
        } => {
            let inv = inventory(&inv)?;
            let cb = Codebook::build(&inv, length, distance, &mut ChaCha8Rng::seed_from_u64(seed))?;
            cb.save(&out)?;
            println!(
                "{} codewords of {} bits, minimum distance {}",
                inv.symbols().len(),
                length,
                cb.verified_distance()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
