use proptest::prelude::*;

use spa::lexicon::{
    regular_suffix, Justification, Klass, PhonemeInventory, Representation, SlotClass, Template,
    VerbPair,
};

fn inv() -> PhonemeInventory {
    PhonemeInventory::default_unibet()
}

fn word() -> impl Strategy<Value = String> {
    let symbols: Vec<char> = inv()
        .iter()
        .filter(|p| p.klass != Klass::Blank)
        .map(|p| p.symbol)
        .collect();
    prop::collection::vec(prop::sample::select(symbols), 0..12)
        .prop_map(|v| v.into_iter().collect())
}

/// Words shaped like stems: at least one vowel, short consonant clusters.
fn stem() -> impl Strategy<Value = String> {
    let cons: Vec<char> = inv().of_klass(Klass::Consonant).map(|p| p.symbol).collect();
    let vows: Vec<char> = inv().of_klass(Klass::Vowel).map(|p| p.symbol).collect();
    let cluster = prop::collection::vec(prop::sample::select(cons), 0..3);
    let syllable = (cluster.clone(), prop::sample::select(vows));
    (prop::collection::vec(syllable, 1..3), cluster).prop_map(|(syls, coda)| {
        let mut s = String::new();
        for (onset, v) in syls {
            s.extend(onset);
            s.push(v);
        }
        s.extend(coda);
        s
    })
}

proptest! {
    #[test]
    fn aligned_words_strip_back(w in word()) {
        let inv = inv();
        for t in [
            Template::main(Justification::Left),
            Template::main(Justification::Right),
            Template::coda(),
            Template::consecutive(8),
        ] {
            if let Some(p) = t.align(&w, &inv).unwrap() {
                prop_assert_eq!(p.len(), t.slots().len());
                prop_assert_eq!(p.strip('_'), w.clone());
            }
        }
    }

    #[test]
    fn phonemes_sit_in_slots_of_their_class(w in word()) {
        let inv = inv();
        for j in [Justification::Left, Justification::Right] {
            let t = Template::main(j);
            if let Some(p) = t.align(&w, &inv).unwrap() {
                for (c, slot) in p.iter().zip(t.slots()) {
                    let k = inv.klass(*c).unwrap();
                    prop_assert!(slot.admits(k), "{} in {:?}", c, slot);
                    if k != Klass::Blank {
                        prop_assert_ne!(*slot, SlotClass::Any);
                    }
                }
            }
        }
    }

    #[test]
    fn right_fits_exactly_when_left_fits(w in word()) {
        let inv = inv();
        let left = Template::main(Justification::Left).align(&w, &inv).unwrap();
        let right = Template::main(Justification::Right).align(&w, &inv).unwrap();
        prop_assert_eq!(left.is_some(), right.is_some());
        if let (Some(l), Some(r)) = (left, right) {
            // the shift is a whole number of five-slot groups
            let shift = (0..18).step_by(5).find(|&k| {
                let mut v = l.values().to_vec();
                v.rotate_right(k);
                v == r.values()
            });
            prop_assert!(shift.is_some());
            // a shifted copy would spill past the last slot
            let shifted_more = shift.unwrap() + 5;
            let last_used = l.iter().rposition(|&c| c != '_');
            if let Some(last) = last_used {
                prop_assert!(last + shifted_more >= 18);
            }
        }
    }

    #[test]
    fn consecutive_fits_iff_short_enough(w in word(), k in 1usize..10) {
        let p = Template::consecutive(k).align(&w, &inv()).unwrap();
        prop_assert_eq!(p.is_some(), w.chars().count() <= k);
    }

    #[test]
    fn regular_pasts_rebuild_from_every_representation(s in stem()) {
        let inv = inv();
        let past = format!("{s}{}", regular_suffix(&s, &inv).unwrap());
        let pair = VerbPair::new("x", &s, &past, true);
        for rep in [
            Representation::LeftTemplate,
            Representation::RightTemplateWithCoda,
            Representation::Consecutive(12),
        ] {
            if let Some(e) = rep.build_example(&pair, &inv).unwrap() {
                prop_assert_eq!(e.input.len(), rep.input_arity());
                prop_assert_eq!(e.output.len(), rep.output_arity());
                prop_assert_eq!(rep.render_output(&e.output, &inv), past.clone());
                if rep == Representation::RightTemplateWithCoda {
                    // main part repeats the input; the coda holds the suffix
                    prop_assert_eq!(&e.output[..18], &e.input[..]);
                    let coda: String = e.output[18..].iter().filter(|&&c| c != '_').collect();
                    prop_assert_eq!(coda, regular_suffix(&s, &inv).unwrap());
                }
            }
        }
    }
}

#[test]
fn suffix_follows_the_final_phoneme() {
    let inv = inv();
    for (stem, suffix) in [
        ("Ekstend", "Id"),
        ("hit", "Id"),
        ("tOk", "t"),
        ("kIs", "t"),
        ("sOlv", "d"),
        ("pley", "d"),
        ("pli", "d"),
        ("w3", "d"),
    ] {
        assert_eq!(regular_suffix(stem, &inv).unwrap(), suffix, "{stem}");
    }
}

#[test]
fn worked_alignments() {
    let inv = inv();
    let right = Template::main(Justification::Right);
    for (stem, aligned) in [
        ("6b&nd6n", "___6_b__&_nd_6_n__"),
        ("bEn6fIt", "b__E_n__6_f__I_t__"),
        ("bIk6m", "_____b__I_k__6_m__"),
        ("6r3z", "________6_r__3_z__"),
    ] {
        assert_eq!(
            right.align(stem, &inv).unwrap().unwrap().to_string(),
            aligned
        );
    }
    let left = Template::main(Justification::Left);
    assert_eq!(
        left.align("bEt", &inv).unwrap().unwrap().to_string(),
        "b__E_t____________"
    );
}
