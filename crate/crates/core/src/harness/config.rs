//! Experiment description files: one `key = value` per line, `#` comments.
//!
//! ```text
//! kind = verbs                 # verbs | probe
//! corpus = synthetic           # synthetic | <lexicon path>
//! synthetic.size = 1184
//! synthetic.irregular_fraction = 0
//! synthetic.seed = 1
//! inventory = phonemes.txt     # optional, default UNIBET set
//! representation = left-template
//! encoding = symbolic          # symbolic | distributed | ecc:<length>:<distance>
//! strategies = adaptive, majority
//! reference = split            # split | twin
//! train_sizes = 50, 100, 300
//! test_size = 500
//! test_rest = false
//! regulars_only = false
//! runs = 3
//! seed = 1
//! out_dir = out                # optional; splits and codebooks land here
//! ```
//!
//! Relative paths are resolved against the config file's directory.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::synthetic::SyntheticParams;
use crate::error::{read_file, Error, Result};
use crate::lexicon::Representation;
use crate::tree::{PassthroughReference, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Verbs,
    /// The two one-attribute default-strategy probe sets.
    Probe,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CorpusSource {
    Synthetic(SyntheticParams),
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodingSpec {
    Symbolic,
    Distributed,
    Ecc { length: usize, distance: usize },
}

impl FromStr for EncodingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symbolic" => Ok(EncodingSpec::Symbolic),
            "distributed" => Ok(EncodingSpec::Distributed),
            _ => {
                let parts: Vec<&str> = s.split(':').collect();
                match parts.as_slice() {
                    ["ecc", l, d] => match (l.parse(), d.parse()) {
                        (Ok(length), Ok(distance)) if length > 0 => Ok(EncodingSpec::Ecc { length, distance }),
                        _ => Err(Error::Config(format!("bad ecc encoding '{s}'"))),
                    },
                    _ => Err(Error::Config(format!(
                        "unknown encoding '{s}' (expected symbolic, distributed or ecc:<length>:<distance>)"
                    ))),
                }
            }
        }
    }
}

impl std::fmt::Display for EncodingSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EncodingSpec::Symbolic => f.write_str("symbolic"),
            EncodingSpec::Distributed => f.write_str("distributed"),
            EncodingSpec::Ecc { length, distance } => write!(f, "ecc:{length}:{distance}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub corpus: CorpusSource,
    pub inventory: Option<PathBuf>,
    pub representation: Representation,
    pub encoding: EncodingSpec,
    pub strategies: Vec<Strategy>,
    pub reference: PassthroughReference,
    pub train_sizes: Vec<usize>,
    pub test_size: usize,
    pub test_rest: bool,
    pub regulars_only: bool,
    pub runs: usize,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            kind: ExperimentKind::Verbs,
            corpus: CorpusSource::Synthetic(SyntheticParams::default()),
            inventory: None,
            representation: Representation::LeftTemplate,
            encoding: EncodingSpec::Symbolic,
            strategies: vec![Strategy::Adaptive],
            reference: PassthroughReference::SplitAttribute,
            train_sizes: vec![500],
            test_size: 500,
            test_rest: false,
            regulars_only: false,
            runs: 3,
            seed: 1,
            out_dir: None,
        }
    }
}

fn value<T: FromStr>(line: usize, key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Config(format!("line {line}: bad value '{v}' for {key}")))
}

fn boolean(line: usize, key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Config(format!(
            "line {line}: {key} must be true or false"
        ))),
    }
}

fn list<T: FromStr>(line: usize, key: &str, v: &str) -> Result<Vec<T>> {
    let items = v
        .split(',')
        .map(|s| value(line, key, s.trim()))
        .collect::<Result<Vec<T>>>()?;
    if items.is_empty() {
        return Err(Error::Config(format!("line {line}: {key} is empty")));
    }
    Ok(items)
}

impl ExperimentConfig {
    /// Parses a config; relative paths are joined onto `base` when given.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut c = ExperimentConfig::default();
        let mut synthetic = SyntheticParams::default();
        let mut seen = std::collections::BTreeSet::new();
        let resolve = |p: &str| match base {
            Some(b) if Path::new(p).is_relative() => b.join(p),
            _ => PathBuf::from(p),
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, v) = body
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Config(format!("line {line}: expected 'key = value'")))?;
            if !seen.insert(key.to_string()) {
                return Err(Error::Config(format!("line {line}: duplicate key {key}")));
            }
            match key {
                "kind" => {
                    c.kind = match v {
                        "verbs" => ExperimentKind::Verbs,
                        "probe" => ExperimentKind::Probe,
                        _ => {
                            return Err(Error::Config(format!(
                                "line {line}: kind must be verbs or probe"
                            )))
                        }
                    }
                }
                "corpus" => {
                    c.corpus = if v == "synthetic" {
                        CorpusSource::Synthetic(synthetic)
                    } else {
                        CorpusSource::File(resolve(v))
                    }
                }
                "synthetic.size" => synthetic.size = value(line, key, v)?,
                "synthetic.irregular_fraction" => {
                    synthetic.irregular_fraction = value(line, key, v)?
                }
                "synthetic.two_syllable_fraction" => {
                    synthetic.two_syllable_fraction = value(line, key, v)?
                }
                "synthetic.seed" => synthetic.seed = value(line, key, v)?,
                "inventory" => c.inventory = Some(resolve(v)),
                "representation" => {
                    c.representation = v
                        .parse()
                        .map_err(|e: Error| Error::Config(format!("line {line}: {e}")))?
                }
                "encoding" => c.encoding = v.parse()?,
                "strategies" => {
                    c.strategies = list(line, key, v)?;
                }
                "reference" => c.reference = value(line, key, v)?,
                "train_sizes" => c.train_sizes = list(line, key, v)?,
                "test_size" => c.test_size = value(line, key, v)?,
                "test_rest" => c.test_rest = boolean(line, key, v)?,
                "regulars_only" => c.regulars_only = boolean(line, key, v)?,
                "runs" => c.runs = value(line, key, v)?,
                "seed" => c.seed = value(line, key, v)?,
                "out_dir" => c.out_dir = Some(resolve(v)),
                _ => return Err(Error::Config(format!("line {line}: unknown key {key}"))),
            }
        }
        if let CorpusSource::Synthetic(p) = &mut c.corpus {
            *p = synthetic;
        }
        if c.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_file(path)?, path.parent())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regulars_ladder() {
        let text = "# regulars only\nkind = verbs\ncorpus = synthetic\nsynthetic.seed = 9\n\
                    strategies = adaptive, majority\ntrain_sizes = 50,100, 300\n\
                    test_rest = true\nregulars_only = yes\nruns = 5\nseed = 3\n";
        let c = ExperimentConfig::parse(text, None).unwrap();
        assert_eq!(c.strategies, vec![Strategy::Adaptive, Strategy::Majority]);
        assert_eq!(c.train_sizes, vec![50, 100, 300]);
        assert!(c.test_rest && c.regulars_only);
        assert_eq!(c.runs, 5);
        match c.corpus {
            CorpusSource::Synthetic(p) => assert_eq!(p.seed, 9),
            _ => panic!(),
        }
    }

    #[test]
    fn paths_are_relative_to_the_config() {
        let c = ExperimentConfig::parse(
            "corpus = verbs.txt\nout_dir = /tmp/x",
            Some(Path::new("/data")),
        )
        .unwrap();
        assert_eq!(
            c.corpus,
            CorpusSource::File(PathBuf::from("/data/verbs.txt"))
        );
        assert_eq!(c.out_dir, Some(PathBuf::from("/tmp/x")));
    }

    #[test]
    fn encodings() {
        assert_eq!(
            "ecc:23:10".parse::<EncodingSpec>().unwrap(),
            EncodingSpec::Ecc {
                length: 23,
                distance: 10
            }
        );
        assert!("ecc:23".parse::<EncodingSpec>().is_err());
        assert_eq!(
            EncodingSpec::Ecc {
                length: 46,
                distance: 20
            }
            .to_string(),
            "ecc:46:20"
        );
    }

    #[test]
    fn errors_name_the_line() {
        for (text, needle) in [
            ("runs = 3\nbogus = 1", "line 2"),
            ("runs = three", "line 1"),
            ("runs = 1\nruns = 2", "duplicate"),
            ("kind: verbs", "key = value"),
        ] {
            let e = ExperimentConfig::parse(text, None).unwrap_err().to_string();
            assert!(e.contains(needle), "{e}");
        }
    }
}
