use std::fmt;
use std::ops::Deref;

/// A fixed-length vector of symbolic attribute values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pattern(Vec<char>);

impl Pattern {
    pub fn new(values: Vec<char>) -> Self {
        Pattern(values)
    }

    pub fn filled(symbol: char, len: usize) -> Self {
        Pattern(vec![symbol; len])
    }

    pub fn values(&self) -> &[char] {
        &self.0
    }

    pub fn into_values(self) -> Vec<char> {
        self.0
    }

    /// The pattern with every `blank` removed.
    pub fn strip(&self, blank: char) -> String {
        self.0.iter().filter(|&&c| c != blank).collect()
    }

    pub fn concat(&self, other: &Pattern) -> Pattern {
        let mut values = self.0.clone();
        values.extend_from_slice(&other.0);
        Pattern(values)
    }
}

impl Deref for Pattern {
    type Target = [char];

    fn deref(&self) -> &[char] {
        &self.0
    }
}

impl From<&str> for Pattern {
    fn from(s: &str) -> Self {
        Pattern(s.chars().collect())
    }
}

impl From<Vec<char>> for Pattern {
    fn from(v: Vec<char>) -> Self {
        Pattern(v)
    }
}

impl FromIterator<char> for Pattern {
    fn from_iter<I: IntoIterator<Item = char>>(iter: I) -> Self {
        Pattern(iter.into_iter().collect())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// One input→output training pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Example {
    pub input: Pattern,
    pub output: Pattern,
}

impl Example {
    pub fn new(input: impl Into<Pattern>, output: impl Into<Pattern>) -> Self {
        Example {
            input: input.into(),
            output: output.into(),
        }
    }
}
