use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spa::harness::{
    evaluate, generate, run_experiment, split, CorpusSource, EncodingSpec, ExperimentConfig,
    SplitSpec, SyntheticParams,
};
use spa::lexicon::{build_examples, PhonemeInventory, Representation};
use spa::model::{Codec, Encoding, Model};
use spa::tree::{PassthroughReference, Strategy};

proptest! {
    #[test]
    fn splits_are_disjoint_and_reproducible(
        flags in prop::collection::vec(any::<bool>(), 1..300),
        train in 1usize..150,
        test in 0usize..150,
        seed in any::<u64>(),
        regulars_only in any::<bool>(),
        test_rest in any::<bool>(),
    ) {
        let spec = SplitSpec { train_size: train, test_size: test, seed, regulars_only, test_rest };
        let eligible = flags.iter().filter(|&&r| r || !regulars_only).count();
        match split(&flags, &spec) {
            Ok(s) => {
                prop_assert_eq!(s.train.len(), train);
                if test_rest {
                    prop_assert_eq!(s.test.len(), eligible - train);
                } else {
                    prop_assert_eq!(s.test.len(), test);
                }
                prop_assert!(s.train.iter().all(|i| !s.test.contains(i)));
                if regulars_only {
                    prop_assert!(s.train.iter().chain(&s.test).all(|&i| flags[i]));
                }
                prop_assert_eq!(split(&flags, &spec).unwrap(), s);
            }
            Err(_) => {
                let wanted = if test_rest { train } else { train + test };
                prop_assert!(wanted > eligible);
            }
        }
    }
}

#[test]
fn models_score_perfectly_on_their_training_set() {
    let inv = PhonemeInventory::default_unibet();
    let pairs = generate(
        &SyntheticParams {
            size: 400,
            irregular_fraction: 0.15,
            ..Default::default()
        },
        &inv,
    )
    .unwrap();
    let cb = spa::encode::Codebook::build(&inv, 23, 10, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
    for (rep, enc) in [
        (Representation::LeftTemplate, Encoding::Symbolic),
        (Representation::RightTemplateWithCoda, Encoding::Symbolic),
        (Representation::LeftTemplate, Encoding::Distributed),
        (Representation::Consecutive(8), Encoding::Ecc(cb)),
    ] {
        let (data, _) = build_examples(&pairs, rep, &inv).unwrap();
        let codec = Codec::new(rep, enc, inv.clone()).unwrap();
        let model = Model::train(
            &data.examples(),
            codec,
            Strategy::Adaptive,
            PassthroughReference::SplitAttribute,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let m = evaluate(&model, &data.examples(), &data.regular_flags(), &mut rng).unwrap();
        let c = m.combined();
        assert_eq!(c.word_rate(), Some(1.0), "{rep}");
        assert_eq!(c.letter_rate(), Some(1.0));
        if model.codec.encoding.is_binary() {
            assert_eq!(c.bit_rate(), Some(1.0));
        }
        assert!(m.irregular.words > 0);
    }
}

#[test]
fn evaluation_rejects_mismatched_inputs() {
    let inv = PhonemeInventory::default_unibet();
    let pairs = generate(
        &SyntheticParams {
            size: 20,
            ..Default::default()
        },
        &inv,
    )
    .unwrap();
    let (data, _) = build_examples(&pairs, Representation::LeftTemplate, &inv).unwrap();
    let codec = Codec::new(
        Representation::LeftTemplate,
        Encoding::Symbolic,
        inv.clone(),
    )
    .unwrap();
    let model = Model::train(
        &data.examples(),
        codec,
        Strategy::Adaptive,
        PassthroughReference::SplitAttribute,
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    assert!(evaluate(&model, &data.examples(), &[true], &mut rng).is_err());
    let (other, _) = build_examples(&pairs, Representation::RightTemplateWithCoda, &inv).unwrap();
    assert!(evaluate(&model, &other.examples(), &other.regular_flags(), &mut rng).is_err());
}

fn small_config(out_dir: Option<std::path::PathBuf>) -> ExperimentConfig {
    ExperimentConfig {
        corpus: CorpusSource::Synthetic(SyntheticParams {
            size: 300,
            irregular_fraction: 0.1,
            ..Default::default()
        }),
        representation: Representation::Consecutive(8),
        encoding: EncodingSpec::Ecc {
            length: 15,
            distance: 5,
        },
        strategies: vec![Strategy::Adaptive, Strategy::Majority],
        train_sizes: vec![100],
        test_size: 100,
        runs: 3,
        seed: 77,
        out_dir,
        ..Default::default()
    }
}

#[test]
fn experiments_are_reproducible_and_leave_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_experiment(&small_config(Some(dir.path().to_path_buf()))).unwrap();
    let b = run_experiment(&small_config(None)).unwrap();
    assert_eq!(a.to_text(), b.to_text());
    assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
    for name in [
        "codebook.txt",
        "corpus.txt",
        "report.txt",
        "report.csv",
        "split-100-run1.txt",
        "split-100-run3.txt",
    ] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
    let listing = std::fs::read_to_string(dir.path().join("split-100-run2.txt")).unwrap();
    assert_eq!(
        listing.lines().filter(|l| l.starts_with("train\t")).count(),
        100
    );
    assert_eq!(
        listing.lines().filter(|l| l.starts_with("test\t")).count(),
        100
    );

    let mut other = small_config(None);
    other.seed = 78;
    assert_ne!(
        run_experiment(&other).unwrap().to_csv().unwrap(),
        a.to_csv().unwrap()
    );
}

#[test]
fn every_run_satisfies_the_metric_identities() {
    let report = run_experiment(&small_config(None)).unwrap();
    assert_eq!(report.runs().len(), 6);
    for r in report.runs() {
        r.metrics.verify().unwrap();
        let (reg, irr, c) = (r.metrics.regular, r.metrics.irregular, r.metrics.combined());
        assert!(c.word_rate().unwrap() <= c.letter_rate().unwrap());
        let weighted =
            (reg.words_correct + irr.words_correct) as f64 / (reg.words + irr.words) as f64;
        assert!((c.word_rate().unwrap() - weighted).abs() < 1e-12);
        assert!(c.bit_rate().is_some());
    }
    let avg = report.average(100, Strategy::Adaptive).unwrap();
    assert_eq!(avg.runs, 3);
}

#[test]
fn config_files_parse_and_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("probe.conf");
    std::fs::write(&path, "kind = probe\nstrategies = majority, adaptive\n").unwrap();
    let report = run_experiment(&ExperimentConfig::load(&path).unwrap()).unwrap();
    let text = report.to_text();
    assert!(text.contains("majority            a          c"), "{text}");
    assert!(text.contains("adaptive            d          c"), "{text}");
}

#[test]
fn infeasible_split_aborts_with_context() {
    let mut c = small_config(None);
    c.train_sizes = vec![250];
    let e = run_experiment(&c).unwrap_err().to_string();
    assert!(e.contains("size 250"), "{e}");
}
