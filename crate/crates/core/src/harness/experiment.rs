use std::fmt::Write as _;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{CorpusSource, EncodingSpec, ExperimentConfig, ExperimentKind};
use super::metrics::{evaluate, Metrics};
use super::split::{run_seed, split, SplitSpec};
use super::synthetic::generate;
use crate::associator::{Forest, ForestConfig};
use crate::encode::Codebook;
use crate::error::{Error, Result};
use crate::lexicon::{build_examples, format_lexicon, load_lexicon, Example, PhonemeInventory};
use crate::model::{Codec, Encoding, Model};
use crate::tree::Strategy;

/// The two one-attribute probe sets: (value of X, class, copies).
pub const PROBE_SETS: [&[(char, char, usize)]; 2] = [
    &[('a', 'a', 10), ('b', 'b', 2), ('c', 'c', 3)],
    &[('a', 'c', 10), ('b', 'b', 6), ('c', 'c', 7)],
];

/// Value of X the probe forests have never seen.
pub const PROBE_INPUT: char = 'd';

pub fn probe_examples(set: &[(char, char, usize)]) -> Vec<Example> {
    set.iter()
        .flat_map(|&(x, class, copies)| {
            std::iter::repeat_n(Example::new(vec![x], vec![class]), copies)
        })
        .collect()
}

/// Classifies the unseen probe input after training on each probe set.
pub fn probe(strategy: Strategy) -> Result<[char; 2]> {
    let mut out = ['?'; 2];
    for (slot, set) in out.iter_mut().zip(PROBE_SETS) {
        let forest = Forest::train(&probe_examples(set), &ForestConfig::new(strategy))?;
        *slot = forest.predict(&[PROBE_INPUT])?[0];
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub size: usize,
    pub strategy: Strategy,
    pub run: usize,
    pub seed: u64,
    pub train: usize,
    pub test: usize,
    pub metrics: Metrics,
}

/// Mean of the per-run rates for one (size, strategy) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct AverageRow {
    pub size: usize,
    pub strategy: Strategy,
    pub runs: usize,
    pub regular: Option<f64>,
    pub irregular: Option<f64>,
    pub combined: Option<f64>,
    pub letter: Option<f64>,
    pub bit: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Verbs {
        notes: Vec<String>,
        runs: Vec<RunResult>,
    },
    Probe {
        rows: Vec<(Strategy, [char; 2])>,
    },
}

fn mean(xs: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let v: Vec<f64> = xs.flatten().collect();
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

fn pct(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |r| format!("{:.1}", 100.0 * r))
}

fn frac(x: Option<f64>) -> String {
    x.map_or_else(String::new, |r| format!("{r:.6}"))
}

impl Report {
    pub fn runs(&self) -> &[RunResult] {
        match self {
            Report::Verbs { runs, .. } => runs,
            Report::Probe { .. } => &[],
        }
    }

    /// One row per (size, strategy), in the order they first appear.
    pub fn averages(&self) -> Vec<AverageRow> {
        let runs = self.runs();
        let mut keys: Vec<(usize, Strategy)> = Vec::new();
        for r in runs {
            if !keys.contains(&(r.size, r.strategy)) {
                keys.push((r.size, r.strategy));
            }
        }
        keys.into_iter()
            .map(|(size, strategy)| {
                let cell: Vec<&RunResult> = runs
                    .iter()
                    .filter(|r| r.size == size && r.strategy == strategy)
                    .collect();
                AverageRow {
                    size,
                    strategy,
                    runs: cell.len(),
                    regular: mean(cell.iter().map(|r| r.metrics.regular.word_rate())),
                    irregular: mean(cell.iter().map(|r| r.metrics.irregular.word_rate())),
                    combined: mean(cell.iter().map(|r| r.metrics.combined().word_rate())),
                    letter: mean(cell.iter().map(|r| r.metrics.combined().letter_rate())),
                    bit: mean(cell.iter().map(|r| r.metrics.combined().bit_rate())),
                }
            })
            .collect()
    }

    pub fn average(&self, size: usize, strategy: Strategy) -> Option<AverageRow> {
        self.averages()
            .into_iter()
            .find(|a| a.size == size && a.strategy == strategy)
    }

    /// Aligned plain-text table; word accuracies are percentages.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Probe { rows } => {
                let _ = writeln!(out, "classification of the unseen input {PROBE_INPUT}");
                let _ = writeln!(out, "{:<10} {:>10} {:>10}", "default", "set 1", "set 2");
                for (s, [a, b]) in rows {
                    let _ = writeln!(out, "{:<10} {a:>10} {b:>10}", s.to_string());
                }
            }
            Report::Verbs { notes, runs } => {
                for n in notes {
                    let _ = writeln!(out, "# {n}");
                }
                let _ = writeln!(
                    out,
                    "{:>6} {:<10} {:>4} {:>16} {:>6} {:>6} {:>7} {:>7} {:>7} {:>8} {:>7}",
                    "size",
                    "strategy",
                    "run",
                    "seed",
                    "train",
                    "test",
                    "Reg",
                    "Irrg",
                    "Comb",
                    "letter",
                    "bit"
                );
                for r in runs {
                    let c = r.metrics.combined();
                    let _ = writeln!(
                        out,
                        "{:>6} {:<10} {:>4} {:>16x} {:>6} {:>6} {:>7} {:>7} {:>7} {:>8} {:>7}",
                        r.size,
                        r.strategy.to_string(),
                        r.run + 1,
                        r.seed,
                        r.train,
                        r.test,
                        pct(r.metrics.regular.word_rate()),
                        pct(r.metrics.irregular.word_rate()),
                        pct(c.word_rate()),
                        pct(c.letter_rate()),
                        pct(c.bit_rate()),
                    );
                }
                for a in self.averages() {
                    let _ = writeln!(
                        out,
                        "{:>6} {:<10} {:>4} {:>16} {:>6} {:>6} {:>7} {:>7} {:>7} {:>8} {:>7}",
                        a.size,
                        a.strategy.to_string(),
                        "avg",
                        "-",
                        "-",
                        "-",
                        pct(a.regular),
                        pct(a.irregular),
                        pct(a.combined),
                        pct(a.letter),
                        pct(a.bit),
                    );
                }
            }
        }
        out
    }

    /// Comma-separated rows: one per run, then one average per cell.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Usage(format!("csv: {e}"));
        match self {
            Report::Probe { rows } => {
                w.write_record(["strategy", "set1", "set2"])
                    .map_err(csv_err)?;
                for (s, [a, b]) in rows {
                    w.write_record([s.to_string(), a.to_string(), b.to_string()])
                        .map_err(csv_err)?;
                }
            }
            Report::Verbs { runs, .. } => {
                w.write_record([
                    "size",
                    "strategy",
                    "run",
                    "seed",
                    "train",
                    "test",
                    "reg_words",
                    "reg_correct",
                    "irrg_words",
                    "irrg_correct",
                    "reg_rate",
                    "irrg_rate",
                    "comb_rate",
                    "letter_rate",
                    "bit_rate",
                ])
                .map_err(csv_err)?;
                for r in runs {
                    let (g, i, c) = (r.metrics.regular, r.metrics.irregular, r.metrics.combined());
                    w.write_record([
                        r.size.to_string(),
                        r.strategy.to_string(),
                        (r.run + 1).to_string(),
                        r.seed.to_string(),
                        r.train.to_string(),
                        r.test.to_string(),
                        g.words.to_string(),
                        g.words_correct.to_string(),
                        i.words.to_string(),
                        i.words_correct.to_string(),
                        frac(g.word_rate()),
                        frac(i.word_rate()),
                        frac(c.word_rate()),
                        frac(c.letter_rate()),
                        frac(c.bit_rate()),
                    ])
                    .map_err(csv_err)?;
                }
                for a in self.averages() {
                    w.write_record([
                        a.size.to_string(),
                        a.strategy.to_string(),
                        "avg".into(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        frac(a.regular),
                        frac(a.irregular),
                        frac(a.combined),
                        frac(a.letter),
                        frac(a.bit),
                    ])
                    .map_err(csv_err)?;
                }
            }
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Usage(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn save(dir: Option<&Path>, name: &str, contents: &str) -> Result<()> {
    match dir {
        Some(d) => crate::error::write_file(&d.join(name), contents),
        None => Ok(()),
    }
}

/// Runs every (training size, run) job, training one model per strategy on
/// the same split. Run `i` draws its split from `run_seed(seed, i)` at every
/// size. Decoding ties in run `i` under the `k`-th strategy use
/// `run_seed(run_seed(seed, i), k)`. An ECC codebook is built once, from `seed`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Report> {
    if config.strategies.is_empty() {
        return Err(Error::Config("no strategies listed".into()));
    }
    if config.kind == ExperimentKind::Probe {
        let rows = config
            .strategies
            .iter()
            .map(|&s| probe(s).map(|r| (s, r)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Report::Probe { rows });
    }

    let out_dir = config.out_dir.as_deref();
    if let Some(d) = out_dir {
        std::fs::create_dir_all(d).map_err(|e| Error::io(d, e))?;
    }
    let inv = match &config.inventory {
        Some(p) => PhonemeInventory::load(p)?,
        None => PhonemeInventory::default_unibet(),
    };
    let mut notes = Vec::new();
    let pairs = match &config.corpus {
        CorpusSource::File(p) => {
            notes.push(format!("corpus {}", p.display()));
            load_lexicon(p, &inv)?
        }
        CorpusSource::Synthetic(params) => {
            notes.push(format!("corpus {}", params.describe()));
            let pairs = generate(params, &inv)?;
            save(out_dir, "corpus.txt", &format_lexicon(&pairs))?;
            pairs
        }
    };
    let (data, unfit) = build_examples(&pairs, config.representation, &inv)?;
    notes.push(format!(
        "{} pairs, {} fit {}, {} unfit",
        pairs.len(),
        data.len(),
        config.representation,
        unfit
    ));
    let encoding = match config.encoding {
        EncodingSpec::Symbolic => Encoding::Symbolic,
        EncodingSpec::Distributed => Encoding::Distributed,
        EncodingSpec::Ecc { length, distance } => {
            let cb = Codebook::build(
                &inv,
                length,
                distance,
                &mut ChaCha8Rng::seed_from_u64(config.seed),
            )?;
            save(out_dir, "codebook.txt", &cb.to_text())?;
            Encoding::Ecc(cb)
        }
    };
    notes.push(format!(
        "encoding {} reference {} master seed {} runs {}",
        config.encoding, config.reference, config.seed, config.runs
    ));
    let codec = Codec::new(config.representation, encoding, inv)?;

    let examples = data.examples();
    let flags = data.regular_flags();
    let jobs: Vec<(usize, usize)> = config
        .train_sizes
        .iter()
        .flat_map(|&size| (0..config.runs).map(move |run| (size, run)))
        .collect();
    let per_job = jobs
        .par_iter()
        .map(|&(size, run)| -> Result<(String, Vec<RunResult>)> {
            let seed = run_seed(config.seed, run as u64);
            let spec = SplitSpec {
                train_size: size,
                test_size: config.test_size,
                seed,
                regulars_only: config.regulars_only,
                test_rest: config.test_rest,
            };
            let s = split(&flags, &spec)
                .map_err(|e| Error::Config(format!("size {size} run {}: {e}", run + 1)))?;
            let mut listing = String::new();
            for (tag, idx) in [("train", &s.train), ("test", &s.test)] {
                for &i in idx {
                    let _ = writeln!(listing, "{tag}\t{i}\t{}", data.rows[i].pair.stem);
                }
            }
            let train: Vec<Example> = s.train.iter().map(|&i| examples[i].clone()).collect();
            let test: Vec<Example> = s.test.iter().map(|&i| examples[i].clone()).collect();
            let test_flags: Vec<bool> = s.test.iter().map(|&i| flags[i]).collect();
            let mut results = Vec::with_capacity(config.strategies.len());
            for (k, &strategy) in config.strategies.iter().enumerate() {
                let model = Model::train(&train, codec.clone(), strategy, config.reference)?;
                let mut rng = ChaCha8Rng::seed_from_u64(run_seed(seed, k as u64));
                let metrics = evaluate(&model, &test, &test_flags, &mut rng)?;
                results.push(RunResult {
                    size,
                    strategy,
                    run,
                    seed,
                    train: train.len(),
                    test: test.len(),
                    metrics,
                });
            }
            Ok((listing, results))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut runs = Vec::new();
    for (&(size, run), (listing, results)) in jobs.iter().zip(per_job) {
        save(
            out_dir,
            &format!("split-{size}-run{}.txt", run + 1),
            &listing,
        )?;
        runs.extend(results);
    }
    let size_rank = |s: usize| config.train_sizes.iter().position(|&x| x == s);
    let strategy_rank = |s: Strategy| config.strategies.iter().position(|&x| x == s);
    runs.sort_by_key(|r| (size_rank(r.size), strategy_rank(r.strategy), r.run));
    let report = Report::Verbs { notes, runs };
    save(out_dir, "report.txt", &report.to_text())?;
    save(out_dir, "report.csv", &report.to_csv()?)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::SyntheticParams;

    #[test]
    fn probe_defaults() {
        assert_eq!(probe(Strategy::Adaptive).unwrap(), ['d', 'c']);
        assert_eq!(probe(Strategy::Majority).unwrap(), ['a', 'c']);
        assert_eq!(probe(Strategy::Passthrough).unwrap(), ['d', 'd']);
    }

    #[test]
    fn small_experiment_is_reproducible() {
        let config = ExperimentConfig {
            corpus: CorpusSource::Synthetic(SyntheticParams {
                size: 120,
                irregular_fraction: 0.1,
                ..Default::default()
            }),
            strategies: vec![Strategy::Adaptive, Strategy::Majority],
            train_sizes: vec![40, 60],
            test_size: 50,
            runs: 2,
            ..Default::default()
        };
        let a = run_experiment(&config).unwrap();
        let b = run_experiment(&config).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.runs().len(), 8);
        assert_eq!(a.averages().len(), 4);
        let csv = a.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 1 + 8 + 4);
    }
}
