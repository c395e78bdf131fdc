use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;

use super::bits::{hamming, BitVector};
use super::distributed::pick;
use crate::error::{read_file, write_file, Error, Result};
use crate::lexicon::{Pattern, PhonemeInventory};

/// Limits for the randomized codeword search.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub restarts: usize,
    pub steps_per_restart: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            restarts: 64,
            steps_per_restart: 20_000,
        }
    }
}

/// Symbol → codeword map whose pairwise Hamming distances are all at least
/// `min_distance`. The bound is checked exhaustively whenever a codebook is
/// constructed or parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    code_length: usize,
    min_distance: usize,
    words: BTreeMap<char, BitVector>,
}

impl Codebook {
    pub fn new(
        code_length: usize,
        min_distance: usize,
        words: BTreeMap<char, BitVector>,
    ) -> Result<Self> {
        if code_length == 0 {
            return Err(Error::Encoding("code length must be positive".into()));
        }
        for (s, w) in &words {
            if w.len() != code_length {
                return Err(Error::Encoding(format!(
                    "codeword for '{s}' has {} bits, expected {code_length}",
                    w.len()
                )));
            }
        }
        let cb = Codebook {
            code_length,
            min_distance,
            words,
        };
        let actual = cb.verified_distance();
        if actual < min_distance.max(1) {
            return Err(Error::Encoding(format!(
                "codewords are only {actual} apart, below the declared {min_distance}"
            )));
        }
        Ok(cb)
    }

    /// Codebook over every inventory symbol, blank included.
    pub fn build<R: Rng + ?Sized>(
        inv: &PhonemeInventory,
        code_length: usize,
        min_distance: usize,
        rng: &mut R,
    ) -> Result<Self> {
        Self::build_for_symbols(
            &inv.symbols(),
            code_length,
            min_distance,
            rng,
            SearchBudget::default(),
        )
    }

    /// Random codewords repaired by min-conflict hill climbing: repeatedly
    /// take a pair closer than `min_distance` and flip the bit of one of its
    /// words that most reduces the total distance deficit, with occasional
    /// random flips to leave plateaus. Restarts from fresh random words when
    /// a restart's step budget runs out.
    pub fn build_for_symbols<R: Rng + ?Sized>(
        symbols: &[char],
        code_length: usize,
        min_distance: usize,
        rng: &mut R,
        budget: SearchBudget,
    ) -> Result<Self> {
        if code_length == 0 {
            return Err(Error::Encoding("code length must be positive".into()));
        }
        let mut uniq = symbols.to_vec();
        uniq.sort_unstable();
        uniq.dedup();
        if uniq.len() != symbols.len() {
            return Err(Error::Encoding("duplicate symbols".into()));
        }
        let target = min_distance.max(1);
        if target > code_length && symbols.len() > 1 {
            return Err(Error::CodebookSearch {
                best_distance: 0,
                wanted: min_distance,
                symbols: symbols.len(),
                code_length,
            });
        }

        let mut best_distance = 0;
        for _ in 0..budget.restarts.max(1) {
            let mut search = Search::random(symbols.len(), code_length, target, rng);
            if search.run(budget.steps_per_restart, rng) {
                let words = symbols
                    .iter()
                    .zip(search.into_words())
                    .map(|(&s, w)| (s, w))
                    .collect();
                return Codebook::new(code_length, min_distance, words);
            }
            best_distance = best_distance.max(search.min_distance());
        }
        Err(Error::CodebookSearch {
            best_distance,
            wanted: min_distance,
            symbols: symbols.len(),
            code_length,
        })
    }

    pub fn code_length(&self) -> usize {
        self.code_length
    }

    pub fn min_distance(&self) -> usize {
        self.min_distance
    }

    pub fn words(&self) -> &BTreeMap<char, BitVector> {
        &self.words
    }

    pub fn word(&self, symbol: char) -> Option<&BitVector> {
        self.words.get(&symbol)
    }

    /// Smallest pairwise distance, by exhaustive scan.
    pub fn verified_distance(&self) -> usize {
        let words: Vec<&BitVector> = self.words.values().collect();
        let mut min = usize::MAX;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                min = min.min(hamming(words[i], words[j]));
            }
        }
        min
    }

    pub fn encode(&self, p: &Pattern) -> Result<BitVector> {
        let mut out = BitVector::default();
        for &symbol in p.iter() {
            let w = self
                .word(symbol)
                .ok_or_else(|| Error::Encoding(format!("symbol '{symbol}' has no codeword")))?;
            out.extend_from(w);
        }
        Ok(out)
    }

    /// Nearest codeword per block; ties are broken uniformly with `rng`.
    pub fn decode<R: Rng + ?Sized>(&self, v: &BitVector, rng: &mut R) -> Result<Pattern> {
        if !v.len().is_multiple_of(self.code_length) {
            return Err(Error::Decoding(format!(
                "{} bits is not a multiple of the {}-bit code length",
                v.len(),
                self.code_length
            )));
        }
        let mut tied = Vec::new();
        let out = v
            .chunks(self.code_length)
            .map(|block| {
                let mut best = usize::MAX;
                tied.clear();
                for (&s, w) in &self.words {
                    let d = hamming(block, w);
                    if d < best {
                        best = d;
                        tied.clear();
                    }
                    if d == best {
                        tied.push(s);
                    }
                }
                pick(&tied, rng)
            })
            .collect();
        Ok(out)
    }

    /// File form: a `length distance` header, then `symbol bits` per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.code_length, self.min_distance);
        for (s, w) in &self.words {
            let _ = writeln!(out, "{s} {w}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (code_length, min_distance) = match lines.next() {
            Some((idx, header)) => {
                let nums: Vec<usize> = header
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::parse(idx + 1, "header must be 'length distance'"))?;
                match nums[..] {
                    [l, d] => (l, d),
                    _ => return Err(Error::parse(idx + 1, "header must be 'length distance'")),
                }
            }
            None => return Err(Error::parse(1, "empty codebook file")),
        };
        let mut words = BTreeMap::new();
        for (idx, line) in lines {
            let mut chars = line.chars();
            let (Some(symbol), Some(' ')) = (chars.next(), chars.next()) else {
                return Err(Error::parse(idx + 1, "expected '<symbol> <bits>'"));
            };
            let bits: BitVector = chars
                .as_str()
                .trim_end()
                .parse()
                .map_err(|e: Error| Error::parse(idx + 1, e.to_string()))?;
            if words.insert(symbol, bits).is_some() {
                return Err(Error::parse(
                    idx + 1,
                    format!("duplicate symbol '{symbol}'"),
                ));
            }
        }
        Codebook::new(code_length, min_distance, words)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_file(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_text())
    }

    /// Checks that the codebook covers every inventory symbol.
    pub fn covers(&self, inv: &PhonemeInventory) -> Result<()> {
        for s in inv.symbols() {
            if !self.words.contains_key(&s) {
                return Err(Error::Encoding(format!("codebook has no word for '{s}'")));
            }
        }
        Ok(())
    }
}

pub fn build_codebook<R: Rng + ?Sized>(
    inv: &PhonemeInventory,
    code_length: usize,
    min_distance: usize,
    rng: &mut R,
) -> Result<Codebook> {
    Codebook::build(inv, code_length, min_distance, rng)
}

pub fn encode_ecc(p: &Pattern, cb: &Codebook) -> Result<BitVector> {
    cb.encode(p)
}

pub fn decode_ecc<R: Rng + ?Sized>(v: &BitVector, cb: &Codebook, rng: &mut R) -> Result<Pattern> {
    cb.decode(v, rng)
}

struct Search {
    words: Vec<Vec<bool>>,
    dist: Vec<Vec<usize>>,
    target: usize,
}

impl Search {
    fn random<R: Rng + ?Sized>(n: usize, len: usize, target: usize, rng: &mut R) -> Self {
        let words: Vec<Vec<bool>> = (0..n)
            .map(|_| (0..len).map(|_| rng.gen()).collect())
            .collect();
        let mut dist = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = hamming(&words[i], &words[j]);
                dist[i][j] = d;
                dist[j][i] = d;
            }
        }
        Search {
            words,
            dist,
            target,
        }
    }

    fn deficit(&self, d: usize) -> usize {
        self.target.saturating_sub(d)
    }

    fn violations(&self) -> Vec<(usize, usize)> {
        let n = self.words.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.dist[i][j] < self.target {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn min_distance(&self) -> usize {
        let n = self.words.len();
        let mut min = usize::MAX;
        for i in 0..n {
            for j in i + 1..n {
                min = min.min(self.dist[i][j]);
            }
        }
        if n < 2 {
            0
        } else {
            min
        }
    }

    fn flip(&mut self, w: usize, bit: usize) {
        let now = !self.words[w][bit];
        self.words[w][bit] = now;
        for k in 0..self.words.len() {
            if k == w {
                continue;
            }
            let d = if self.words[k][bit] == now {
                self.dist[w][k] - 1
            } else {
                self.dist[w][k] + 1
            };
            self.dist[w][k] = d;
            self.dist[k][w] = d;
        }
    }

    fn run<R: Rng + ?Sized>(&mut self, steps: usize, rng: &mut R) -> bool {
        let Some(len) = self.words.first().map(Vec::len) else {
            return true;
        };
        let mut candidates = Vec::new();
        for _ in 0..steps {
            let violations = self.violations();
            if violations.is_empty() {
                return true;
            }
            let (a, b) = violations[rng.gen_range(0..violations.len())];
            let w = if rng.gen_bool(0.5) { a } else { b };

            if rng.gen_bool(0.05) {
                self.flip(w, rng.gen_range(0..len));
                continue;
            }
            let mut best = i64::MAX;
            candidates.clear();
            for bit in 0..len {
                let mut delta = 0i64;
                for k in 0..self.words.len() {
                    if k == w {
                        continue;
                    }
                    let d = self.dist[w][k];
                    let nd = if self.words[k][bit] == self.words[w][bit] {
                        d + 1
                    } else {
                        d - 1
                    };
                    delta += self.deficit(nd) as i64 - self.deficit(d) as i64;
                }
                if delta < best {
                    best = delta;
                    candidates.clear();
                }
                if delta == best {
                    candidates.push(bit);
                }
            }
            let bit = candidates[rng.gen_range(0..candidates.len())];
            self.flip(w, bit);
        }
        self.violations().is_empty()
    }

    fn into_words(self) -> Vec<BitVector> {
        self.words.into_iter().map(BitVector::new).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_symbols_one_bit() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cb = Codebook::build_for_symbols(&['a', 'b'], 1, 1, &mut rng, SearchBudget::default())
            .unwrap();
        let mut words: Vec<String> = cb.words().values().map(|w| w.to_string()).collect();
        words.sort();
        assert_eq!(words, ["0", "1"]);
    }

    #[test]
    fn impossible_request_reports_best_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let symbols: Vec<char> = "abcde".chars().collect();
        let budget = SearchBudget {
            restarts: 2,
            steps_per_restart: 200,
        };
        // five words of two bits cannot even be distinct
        match Codebook::build_for_symbols(&symbols, 2, 1, &mut rng, budget) {
            Err(Error::CodebookSearch { best_distance, .. }) => assert_eq!(best_distance, 0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn declared_distance_is_verified() {
        let words: BTreeMap<char, BitVector> = [('a', "000"), ('b', "011")]
            .into_iter()
            .map(|(s, w)| (s, w.parse().unwrap()))
            .collect();
        assert!(Codebook::new(3, 2, words.clone()).is_ok());
        assert!(Codebook::new(3, 3, words).is_err());
    }

    #[test]
    fn file_round_trip_is_bit_exact() {
        let inv = PhonemeInventory::default_unibet();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cb = Codebook::build(&inv, 23, 10, &mut rng).unwrap();
        let text = cb.to_text();
        let again = Codebook::parse(&text).unwrap();
        assert_eq!(again, cb);
        assert_eq!(again.to_text(), text);
        assert!(text.starts_with("23 10\n"));
        assert_eq!(text.lines().count(), 38);
    }

    #[test]
    fn parse_rejects_malformed_files() {
        assert!(Codebook::parse("").is_err());
        assert!(Codebook::parse("3\na 000\n").is_err());
        assert!(Codebook::parse("3 1\na 0x0\n").is_err());
        assert!(Codebook::parse("3 1\na 000\na 111\n").is_err());
        assert!(Codebook::parse("3 3\na 000\nb 001\n").is_err());
    }

    #[test]
    fn decode_rejects_ragged_length() {
        let inv = PhonemeInventory::default_unibet();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cb = Codebook::build(&inv, 23, 10, &mut rng).unwrap();
        assert!(cb.decode(&BitVector::zeros(24), &mut rng).is_err());
    }

    #[test]
    fn eight_slots_of_92_bits() {
        let inv = PhonemeInventory::default_unibet();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cb = Codebook::build(&inv, 92, 40, &mut rng).unwrap();
        let p = Pattern::from("6b&nd6n_");
        let v = cb.encode(&p).unwrap();
        assert_eq!(v.len(), 736);
        assert_eq!(cb.decode(&v, &mut rng).unwrap(), p);
    }
}
