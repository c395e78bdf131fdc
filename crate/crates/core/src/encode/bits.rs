use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lexicon::Pattern;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector(Vec<bool>);

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Self {
        BitVector(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BitVector(vec![false; len])
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn extend_from(&mut self, other: &[bool]) {
        self.0.extend_from_slice(other);
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] = !self.0[i];
    }
}

impl Deref for BitVector {
    type Target = [bool];

    fn deref(&self) -> &[bool] {
        &self.0
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Decoding(format!("'{other}' is not a bit"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitVector)
    }
}

pub fn hamming(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Each bit becomes one attribute value, `'0'` or `'1'`.
pub fn bits_to_attributes(v: &BitVector) -> Pattern {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn attributes_to_bits(p: &Pattern) -> Result<BitVector> {
    p.iter()
        .map(|&c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Decoding(format!(
                "attribute value '{other}' is not a bit"
            ))),
        })
        .collect::<Result<Vec<_>>>()
        .map(BitVector)
}
