use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitSpec {
    pub train_size: usize,
    /// Ignored when `test_rest` is set.
    pub test_size: usize,
    pub seed: u64,
    /// Drop irregular items before sampling.
    pub regulars_only: bool,
    /// Test on every eligible item not drawn for training.
    pub test_rest: bool,
}

impl SplitSpec {
    pub fn new(train_size: usize, test_size: usize, seed: u64) -> Self {
        SplitSpec {
            train_size,
            test_size,
            seed,
            regulars_only: false,
            test_rest: false,
        }
    }
}

/// Indices of the training and test items, each in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

impl Split {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &i in &self.train {
            out.push_str(&format!("train {i}\n"));
        }
        for &i in &self.test {
            out.push_str(&format!("test {i}\n"));
        }
        out
    }
}

/// Samples a train/test split over items whose regularity is `regular[i]`.
pub fn split(regular: &[bool], spec: &SplitSpec) -> Result<Split> {
    let pool: Vec<usize> = (0..regular.len())
        .filter(|&i| !spec.regulars_only || regular[i])
        .collect();
    let wanted = if spec.test_rest {
        spec.train_size
    } else {
        spec.train_size + spec.test_size
    };
    if wanted > pool.len() || spec.train_size == 0 {
        return Err(Error::Config(format!(
            "cannot draw {} training and {} test items from {} eligible",
            spec.train_size,
            if spec.test_rest {
                "the remaining".to_string()
            } else {
                spec.test_size.to_string()
            },
            pool.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let drawn = sample(&mut rng, pool.len(), wanted).into_vec();
    let mut train: Vec<usize> = drawn[..spec.train_size].iter().map(|&k| pool[k]).collect();
    train.sort_unstable();
    let mut test: Vec<usize> = if spec.test_rest {
        let mut taken = vec![false; pool.len()];
        for &k in &drawn {
            taken[k] = true;
        }
        (0..pool.len())
            .filter(|&k| !taken[k])
            .map(|k| pool[k])
            .collect()
    } else {
        drawn[spec.train_size..].iter().map(|&k| pool[k]).collect()
    };
    test.sort_unstable();
    Ok(Split { train, test })
}

/// Seed for run `i` of an experiment: splitmix64 of the master seed offset by
/// `i + 1` golden-ratio increments.
pub fn run_seed(master: u64, i: u64) -> u64 {
    let mut z = master.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(i.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_hundred_each_from_a_thousand() {
        let flags = vec![true; 1000];
        let spec = SplitSpec::new(500, 500, 42);
        let s = split(&flags, &spec).unwrap();
        assert_eq!((s.train.len(), s.test.len()), (500, 500));
        assert!(s.train.iter().all(|i| s.test.binary_search(i).is_err()));
        assert_eq!(split(&flags, &spec).unwrap(), s);
        assert_ne!(split(&flags, &SplitSpec::new(500, 500, 43)).unwrap(), s);
    }

    #[test]
    fn test_rest_over_regulars() {
        let mut flags = vec![true; 1184];
        flags.extend(vec![false; 136]);
        let spec = SplitSpec {
            regulars_only: true,
            test_rest: true,
            ..SplitSpec::new(1000, 0, 7)
        };
        let s = split(&flags, &spec).unwrap();
        assert_eq!((s.train.len(), s.test.len()), (1000, 184));
        assert!(s.train.iter().chain(&s.test).all(|&i| flags[i]));
    }

    #[test]
    fn infeasible_sizes_are_a_config_error() {
        let flags = vec![true; 10];
        assert!(matches!(
            split(&flags, &SplitSpec::new(6, 5, 0)),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            split(&flags, &SplitSpec::new(0, 5, 0)),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn run_seeds_differ() {
        let seeds: std::collections::BTreeSet<u64> = (0..100).map(|i| run_seed(1, i)).collect();
        assert_eq!(seeds.len(), 100);
        assert_eq!(run_seed(1, 3), run_seed(1, 3));
    }
}
