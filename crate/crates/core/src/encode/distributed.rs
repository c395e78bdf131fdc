use rand::Rng;

use super::bits::{hamming, BitVector};
use crate::error::{Error, Result};
use crate::lexicon::{Klass, Pattern, PhonemeInventory, SlotClass, FEATURE_BITS};

/// Concatenates the feature vector of every slot's symbol.
pub fn encode_distributed(
    p: &Pattern,
    slots: &[SlotClass],
    inv: &PhonemeInventory,
) -> Result<BitVector> {
    if p.len() != slots.len() {
        return Err(Error::Encoding(format!(
            "pattern has {} values but the template has {} slots",
            p.len(),
            slots.len()
        )));
    }
    let mut out = BitVector::default();
    for (&symbol, slot) in p.iter().zip(slots) {
        let phoneme = inv
            .get(symbol)
            .ok_or_else(|| Error::Encoding(format!("symbol '{symbol}' is not in the inventory")))?;
        if !slot.admits(phoneme.klass) {
            return Err(Error::Encoding(format!(
                "'{symbol}' ({:?}) does not belong in a {slot:?} slot",
                phoneme.klass
            )));
        }
        out.extend_from(&phoneme.features);
    }
    Ok(out)
}

/// Per slot, picks the blank or same-class phoneme nearest in Hamming
/// distance to the slot's bits. Ties are broken uniformly with `rng`.
pub fn decode_distributed<R: Rng + ?Sized>(
    v: &BitVector,
    slots: &[SlotClass],
    inv: &PhonemeInventory,
    rng: &mut R,
) -> Result<Pattern> {
    if v.len() != slots.len() * FEATURE_BITS {
        return Err(Error::Decoding(format!(
            "expected {} bits for {} slots, got {}",
            slots.len() * FEATURE_BITS,
            slots.len(),
            v.len()
        )));
    }
    let mut out = Vec::with_capacity(slots.len());
    let mut tied = Vec::new();
    for (chunk, slot) in v.chunks(FEATURE_BITS).zip(slots) {
        let mut best = usize::MAX;
        tied.clear();
        for p in inv
            .iter()
            .filter(|p| p.klass == Klass::Blank || slot.admits(p.klass))
        {
            let d = hamming(chunk, &p.features);
            if d < best {
                best = d;
                tied.clear();
            }
            if d == best {
                tied.push(p.symbol);
            }
        }
        out.push(pick(&tied, rng));
    }
    Ok(Pattern::new(out))
}

pub(crate) fn pick<R: Rng + ?Sized>(tied: &[char], rng: &mut R) -> char {
    if tied.len() == 1 {
        tied[0]
    } else {
        tied[rng.gen_range(0..tied.len())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{Justification, Template};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn all_blank_is_all_zero_and_back() {
        let inv = PhonemeInventory::default_unibet();
        let t = Template::main(Justification::Left);
        let p = Pattern::filled('_', 18);
        let v = encode_distributed(&p, &t, &inv).unwrap();
        assert_eq!(v.len(), 180);
        assert!(v.iter().all(|&b| !b));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(decode_distributed(&v, &t, &inv, &mut rng).unwrap(), p);
    }

    #[test]
    fn first_slot_carries_first_phoneme() {
        let inv = PhonemeInventory::default_unibet();
        let t = Template::main(Justification::Left);
        let p = t.align("bEt", &inv).unwrap().unwrap();
        let v = encode_distributed(&p, &t, &inv).unwrap();
        assert_eq!(v.len(), 180);
        assert_eq!(&v[..10], &inv.phoneme('b').unwrap().features[..]);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let inv = PhonemeInventory::default_unibet();
        let t = Template::main(Justification::Left);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(decode_distributed(&BitVector::zeros(179), &t, &inv, &mut rng).is_err());
    }

    #[test]
    fn class_violations_and_unknown_symbols_fail_to_encode() {
        let inv = PhonemeInventory::default_unibet();
        let t = Template::main(Justification::Left);
        let mut p = Pattern::filled('_', 18).into_values();
        p[0] = 'E';
        assert!(encode_distributed(&Pattern::new(p.clone()), &t, &inv).is_err());
        p[0] = 'Q';
        assert!(encode_distributed(&Pattern::new(p), &t, &inv).is_err());
    }
}
