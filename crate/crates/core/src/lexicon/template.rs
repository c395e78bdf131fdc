use std::fmt;
use std::ops::Deref;

use super::inventory::{Klass, PhonemeInventory};
use super::pattern::Pattern;
use crate::error::{Error, Result};

/// Class constraint of one template slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlotClass {
    Consonant,
    Vowel,
    Any,
}

impl SlotClass {
    pub fn admits(self, klass: Klass) -> bool {
        match (self, klass) {
            (_, Klass::Blank) => true,
            (SlotClass::Any, _) => true,
            (SlotClass::Consonant, Klass::Consonant) => true,
            (SlotClass::Vowel, Klass::Vowel) => true,
            _ => false,
        }
    }

    /// The phoneme class a slot holds when it holds anything but blank.
    pub fn klass(self) -> Option<Klass> {
        match self {
            SlotClass::Consonant => Some(Klass::Consonant),
            SlotClass::Vowel => Some(Klass::Vowel),
            SlotClass::Any => None,
        }
    }

    fn letter(self) -> char {
        match self {
            SlotClass::Consonant => 'C',
            SlotClass::Vowel => 'V',
            SlotClass::Any => '*',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    slots: Vec<SlotClass>,
    justification: Justification,
}

pub const MAIN_TEMPLATE: &str = "CCCVVCCCVVCCCVVCCC";
pub const CODA_TEMPLATE: &str = "VVCCC";

impl Template {
    /// Parses a slot string over `C`, `V` and `*` (any).
    pub fn parse(slots: &str, justification: Justification) -> Result<Self> {
        let slots = slots
            .chars()
            .map(|c| match c {
                'C' => Ok(SlotClass::Consonant),
                'V' => Ok(SlotClass::Vowel),
                '*' => Ok(SlotClass::Any),
                other => Err(Error::Usage(format!("bad template slot '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Template {
            slots,
            justification,
        })
    }

    pub fn main(justification: Justification) -> Self {
        Self::parse(MAIN_TEMPLATE, justification).unwrap()
    }

    pub fn coda() -> Self {
        Self::parse(CODA_TEMPLATE, Justification::Left).unwrap()
    }

    pub fn consecutive(len: usize) -> Self {
        Template {
            slots: vec![SlotClass::Any; len],
            justification: Justification::Left,
        }
    }

    pub fn slots(&self) -> &[SlotClass] {
        &self.slots
    }

    pub fn justification(&self) -> Justification {
        self.justification
    }

    /// Smallest shift that maps the slot sequence onto itself.
    fn period(&self) -> usize {
        let n = self.slots.len();
        (1..n)
            .find(|&p| (0..n - p).all(|i| self.slots[i] == self.slots[i + p]))
            .unwrap_or(n)
    }

    /// Aligns a phoneme string into the template, or `None` if it does not fit.
    ///
    /// The scan walks the slots left to right with a cursor into `s`: a
    /// phoneme whose class matches the current slot is placed and both
    /// advance, otherwise the slot gets a blank. Earliest placement is
    /// optimal, so `None` means no embedding exists at all.
    ///
    /// Right justification then shifts the placed phonemes right by the
    /// largest whole multiple of the template's period that keeps them inside
    /// the template. For `CCCVVCCCVVCCCVVCCC` this moves the word one
    /// `CCCVV` unit at a time until its last syllable sits in the final
    /// `VVCCC` section.
    pub fn align(&self, s: &str, inv: &PhonemeInventory) -> Result<Option<Pattern>> {
        let blank = inv.blank();
        let mut phonemes = Vec::new();
        for c in s.chars() {
            let klass = inv.klass(c).ok_or(Error::UnknownSymbol(c))?;
            if klass == Klass::Blank {
                return Err(Error::UnknownSymbol(c));
            }
            phonemes.push((c, klass));
        }

        let mut out = vec![blank; self.slots.len()];
        let mut cursor = 0;
        let mut last = None;
        for (i, slot) in self.slots.iter().enumerate() {
            match phonemes.get(cursor) {
                Some(&(c, klass)) if slot.admits(klass) => {
                    out[i] = c;
                    cursor += 1;
                    last = Some(i);
                }
                Some(_) => {}
                None => break,
            }
        }
        if cursor < phonemes.len() {
            return Ok(None);
        }

        if self.justification == Justification::Right {
            if let Some(last) = last {
                let period = self.period();
                let free = self.slots.len() - 1 - last;
                let shift = (free / period) * period;
                if shift > 0 {
                    out.rotate_right(shift);
                }
            }
        }
        Ok(Some(Pattern::new(out)))
    }
}

impl Deref for Template {
    type Target = [SlotClass];

    fn deref(&self) -> &[SlotClass] {
        &self.slots
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.slots {
            write!(f, "{}", s.letter())?;
        }
        Ok(())
    }
}

/// Free-function form of [`Template::align`].
pub fn align_template(s: &str, t: &Template, inv: &PhonemeInventory) -> Result<Option<Pattern>> {
    t.align(s, inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv() -> PhonemeInventory {
        PhonemeInventory::default_unibet()
    }

    fn left(s: &str) -> String {
        Template::main(Justification::Left)
            .align(s, &inv())
            .unwrap()
            .unwrap()
            .to_string()
    }

    fn right(s: &str) -> String {
        Template::main(Justification::Right)
            .align(s, &inv())
            .unwrap()
            .unwrap()
            .to_string()
    }

    #[test]
    fn left_justified_bet() {
        assert_eq!(left("bEt"), "b__E_t____________");
    }

    #[test]
    fn right_justified_printed_rows() {
        assert_eq!(right("6b&nd6n"), "___6_b__&_nd_6_n__");
        assert_eq!(right("bEn6fIt"), "b__E_n__6_f__I_t__");
        assert_eq!(right("bIk6m"), "_____b__I_k__6_m__");
        assert_eq!(right("bIkem"), "_____b__I_k__e_m__");
        assert_eq!(right("6r3z"), "________6_r__3_z__");
        assert_eq!(right("6roz"), "________6_r__o_z__");
    }

    #[test]
    fn coda_holds_suffixes() {
        let coda = Template::coda();
        let inv = inv();
        assert_eq!(
            coda.align("Id", &inv).unwrap().unwrap().to_string(),
            "I_d__"
        );
        assert_eq!(coda.align("d", &inv).unwrap().unwrap().to_string(), "__d__");
        assert_eq!(coda.align("t", &inv).unwrap().unwrap().to_string(), "__t__");
    }

    #[test]
    fn empty_string_is_all_blank() {
        for j in [Justification::Left, Justification::Right] {
            let p = Template::main(j).align("", &inv()).unwrap().unwrap();
            assert_eq!(p.to_string(), "_".repeat(18));
        }
    }

    #[test]
    fn too_many_vowels_do_not_fit() {
        // four vowel nuclei separated by consonants need four VV groups
        assert_eq!(
            Template::main(Justification::Left)
                .align("bIbIbIbI", &inv())
                .unwrap(),
            None
        );
        // a consonant cluster may spill over an empty vowel group
        assert_eq!(left("Istrnt"), "___I_str__nt______");
    }

    #[test]
    fn consecutive_template_pads_right() {
        let t = Template::consecutive(8);
        let p = t.align("6b&nd6n", &inv()).unwrap().unwrap();
        assert_eq!(p.to_string(), "6b&nd6n_");
        assert_eq!(t.align("IksEl6retId", &inv()).unwrap(), None);
    }

    #[test]
    fn unknown_symbols_are_errors() {
        assert!(matches!(
            Template::main(Justification::Left).align("bQt", &inv()),
            Err(Error::UnknownSymbol('Q'))
        ));
        assert!(Template::main(Justification::Left)
            .align("b_t", &inv())
            .is_err());
    }

    #[test]
    fn periods() {
        assert_eq!(Template::main(Justification::Right).period(), 5);
        assert_eq!(Template::coda().period(), 5);
        assert_eq!(Template::consecutive(8).period(), 1);
    }
}
