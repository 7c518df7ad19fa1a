use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A monomial of the free algebra: letters are ASCII generator names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(c: char) -> Self {
        Word(vec![c as u8])
    }

    /// Parses juxtaposed letters; spaces, parentheses and `ε` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for ch in text.chars() {
            match ch {
                ' ' | '(' | ')' | 'ε' | '1' => {}
                c if c.is_ascii_uppercase() => letters.push(c as u8),
                c => return Err(Error::Parse(format!("unexpected `{c}` in word `{text}`"))),
            }
        }
        Ok(Word(letters))
    }

    pub fn from_bytes(bytes: &[u8]) -> Self {
        Word(bytes.to_vec())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Start positions of every occurrence of `pattern`.
    pub fn occurrences(&self, pattern: &Word) -> Vec<usize> {
        if pattern.is_empty() || pattern.len() > self.len() {
            return Vec::new();
        }
        self.0
            .windows(pattern.len())
            .enumerate()
            .filter_map(|(i, w)| (w == pattern.0.as_slice()).then_some(i))
            .collect()
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        !self.occurrences(pattern).is_empty()
    }

    fn sorted_letters(&self) -> Vec<u8> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }
}

/// Graded order: shorter words first, then lexicographic on letters.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &b in &self.0 {
            write!(f, "{}", b as char)?;
        }
        Ok(())
    }
}

/// Letters in increasing rank; a pair (earlier, later) with the earlier letter
/// ranked higher counts as one misordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<u8>,
}

impl Alphabet {
    pub fn new(letters: &str) -> Self {
        Alphabet {
            letters: letters.bytes().collect(),
        }
    }

    /// `{V, W}` with `W` ranked above `V`: the misordering index counts `W…V` pairs.
    pub fn torus() -> Self {
        Alphabet::new("VW")
    }

    pub fn xyz() -> Self {
        Alphabet::new("XYZ")
    }

    pub fn letters(&self) -> impl Iterator<Item = char> + '_ {
        self.letters.iter().map(|&b| b as char)
    }

    fn rank(&self, letter: u8) -> usize {
        self.letters
            .iter()
            .position(|&l| l == letter)
            .unwrap_or(self.letters.len())
    }

    /// Number of index pairs `k < k'` whose letters appear in decreasing rank.
    pub fn misordering_index(&self, w: &Word) -> usize {
        let ranks: Vec<usize> = w.0.iter().map(|&b| self.rank(b)).collect();
        let mut count = 0;
        for (k, &rk) in ranks.iter().enumerate() {
            count += ranks[k + 1..].iter().filter(|&&r| r < rk).count();
        }
        count
    }

    pub fn compare(&self, p: &Word, q: &Word) -> WordOrdering {
        if p == q {
            return WordOrdering::Equal;
        }
        match p.len().cmp(&q.len()) {
            Ordering::Less => return WordOrdering::Less,
            Ordering::Greater => return WordOrdering::Greater,
            Ordering::Equal => {}
        }
        if p.sorted_letters() != q.sorted_letters() {
            return WordOrdering::Incomparable;
        }
        match self.misordering_index(p).cmp(&self.misordering_index(q)) {
            Ordering::Less => WordOrdering::Less,
            Ordering::Greater => WordOrdering::Greater,
            Ordering::Equal => WordOrdering::Incomparable,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordOrdering {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// Inversion count over `{W, V}`: pairs with `W` before `V`.
pub fn misordering_index(w: &Word) -> usize {
    Alphabet::torus().misordering_index(w)
}

/// Partial order on `{W, V}` words: degree first, then misordering index among
/// permutations of the same letters.
pub fn word_compare(p: &Word, q: &Word) -> WordOrdering {
    Alphabet::torus().compare(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn misordering_examples() {
        assert_eq!(misordering_index(&w("WV")), 1);
        assert_eq!(misordering_index(&w("VW")), 0);
        assert_eq!(misordering_index(&w("WWVV")), 4);
        assert_eq!(misordering_index(&w("")), 0);
        assert_eq!(misordering_index(&w("WVWV")), 3);
    }

    #[test]
    fn compare_examples() {
        assert_eq!(word_compare(&w("WV"), &w("VW")), WordOrdering::Greater);
        assert_eq!(word_compare(&w("W"), &w("VV")), WordOrdering::Less);
        assert_eq!(word_compare(&w("WV"), &w("VV")), WordOrdering::Incomparable);
        assert_eq!(word_compare(&w("WVW"), &w("WVW")), WordOrdering::Equal);
        // same letters, same index, different words
        assert_eq!(
            word_compare(&w("WVVW"), &w("VWWV")),
            WordOrdering::Incomparable
        );
    }

    #[test]
    fn graded_order_and_occurrences() {
        let mut words = vec![w("WW"), w("V"), w(""), w("VW"), w("W"), w("WV"), w("VV")];
        words.sort();
        let shown: Vec<String> = words.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["1", "V", "W", "VV", "VW", "WV", "WW"]);
        assert_eq!(w("WWVWWV").occurrences(&w("WWV")), vec![0, 3]);
        assert!(w("").occurrences(&w("W")).is_empty());
    }
}
