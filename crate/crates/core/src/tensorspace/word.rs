use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combinatorics::WeakComposition;
use crate::Error;

/// Longest word that fits the packed representation.
pub const MAX_WORD_LEN: usize = 16;

/// A basis vector of `V = C^a + C^b`: `E(i)` is `e_i`, `F(j)` is `f_j`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    E(u8),
    F(u8),
}

impl Letter {
    /// Byte code: `E_i -> i`, `F_j -> 127 + j`. Codes are nonzero and their
    /// numeric order is `E_1 < ... < E_a < F_1 < ... < F_b`.
    #[inline]
    pub fn code(self) -> u8 {
        match self {
            Letter::E(i) => i,
            Letter::F(j) => 127 + j,
        }
    }

    #[inline]
    pub fn from_code(c: u8) -> Option<Letter> {
        match c {
            0 => None,
            1..=127 => Some(Letter::E(c)),
            _ => Some(Letter::F(c - 127)),
        }
    }

    fn validate(self) -> Result<Self, Error> {
        match self {
            Letter::E(i) if (1..=127).contains(&i) => Ok(self),
            Letter::F(j) if (1..=127).contains(&j) => Ok(self),
            _ => Err(Error::InvalidArgument(format!("letter {self:?} out of range"))),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E(i) => write!(f, "E{i}"),
            Letter::F(j) => write!(f, "F{j}"),
        }
    }
}

/// A basis tensor `v_1 (x) ... (x) v_d` of `(x)^d V`, `d <= 16`.
///
/// Slot `k` lives in bits `120 - 8k .. 128 - 8k`, so comparing the packed
/// integers compares words lexicographically, and a shorter word sorts
/// before its extensions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(u128);

#[inline]
fn slot_shift(k: usize) -> u32 {
    (120 - 8 * k) as u32
}

impl Word {
    pub const EMPTY: Word = Word(0);

    pub fn from_letters(letters: &[Letter]) -> Result<Word, Error> {
        if letters.len() > MAX_WORD_LEN {
            return Err(Error::ResourceLimit(format!(
                "word of length {} exceeds {MAX_WORD_LEN}",
                letters.len()
            )));
        }
        let mut w = 0u128;
        for (k, l) in letters.iter().enumerate() {
            w |= (l.validate()?.code() as u128) << slot_shift(k);
        }
        Ok(Word(w))
    }

    /// Builds a word from raw codes; every code must be nonzero.
    pub(crate) fn from_codes(codes: &[u8]) -> Word {
        debug_assert!(codes.len() <= MAX_WORD_LEN && codes.iter().all(|&c| c != 0));
        let mut w = 0u128;
        for (k, &c) in codes.iter().enumerate() {
            w |= (c as u128) << slot_shift(k);
        }
        Word(w)
    }

    pub fn raw(self) -> u128 {
        self.0
    }

    pub fn len(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            MAX_WORD_LEN - (self.0.trailing_zeros() / 8) as usize
        }
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn code(self, k: usize) -> u8 {
        (self.0 >> slot_shift(k)) as u8
    }

    pub fn letter(self, k: usize) -> Letter {
        Letter::from_code(self.code(k)).expect("slot within word length")
    }

    pub fn letters(self) -> Vec<Letter> {
        (0..self.len()).map(|k| self.letter(k)).collect()
    }

    /// The word with slot `k` replaced by `code`.
    #[inline]
    pub(crate) fn with_code(self, k: usize, code: u8) -> Word {
        let s = slot_shift(k);
        Word((self.0 & !(0xffu128 << s)) | ((code as u128) << s))
    }

    /// Occurrence counts `(alpha, beta)` of `E_1..E_a` and `F_1..F_b`.
    /// Letters beyond `a` or `b` are an error.
    pub fn content(self, a: usize, b: usize) -> Result<(WeakComposition, WeakComposition), Error> {
        let mut alpha = vec![0; a];
        let mut beta = vec![0; b];
        for l in self.letters() {
            match l {
                Letter::E(i) if (i as usize) <= a => alpha[i as usize - 1] += 1,
                Letter::F(j) if (j as usize) <= b => beta[j as usize - 1] += 1,
                _ => {
                    return Err(Error::InvalidArgument(format!("{self} has letters outside {a}x{b}")))
                }
            }
        }
        Ok((WeakComposition::new(alpha), WeakComposition::new(beta)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Parses concatenated letters such as `E1E2F1`.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word, Error> {
        let bad = || Error::InvalidArgument(format!("cannot parse word {s:?}"));
        let mut letters = Vec::new();
        let bytes = s.as_bytes();
        let mut k = 0;
        while k < bytes.len() {
            let kind = bytes[k];
            let start = k + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            let idx: u8 = s[start..end].parse().map_err(|_| bad())?;
            letters.push(match kind {
                b'E' | b'e' => Letter::E(idx),
                b'F' | b'f' => Letter::F(idx),
                _ => return Err(bad()),
            });
            k = end;
        }
        Word::from_letters(&letters)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Applies `pi` (0-based images, `pi[i]` is where `E_{i+1}` goes) to the
/// `E` letters of `w`; `F` letters and positions are untouched.
pub fn sa_act(pi: &[usize], w: Word) -> Word {
    let mut out = w;
    for k in 0..w.len() {
        let c = w.code(k);
        if (1..=127).contains(&c) && (c as usize) <= pi.len() {
            out = out.with_code(k, pi[c as usize - 1] as u8 + 1);
        }
    }
    out
}

/// Same as [`sa_act`] for the `F` letters, fixing the `E` letters.
pub fn sb_act(pi: &[usize], w: Word) -> Word {
    let mut out = w;
    for k in 0..w.len() {
        let c = w.code(k);
        if c >= 128 && ((c - 127) as usize) <= pi.len() {
            out = out.with_code(k, pi[(c - 128) as usize] as u8 + 128);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn packing_round_trip() {
        let word = w("E1E2F1F3E1");
        assert_eq!(word.len(), 5);
        assert_eq!(word.to_string(), "E1E2F1F3E1");
        assert_eq!(word.letter(3), Letter::F(3));
        assert_eq!(Word::EMPTY.len(), 0);
        let full = Word::from_letters(&[Letter::F(2); 16]).unwrap();
        assert_eq!(full.len(), 16);
        assert!(Word::from_letters(&[Letter::E(1); 17]).is_err());
        assert!(Word::from_letters(&[Letter::E(0)]).is_err());
    }

    #[test]
    fn numeric_order_is_lexicographic() {
        let mut words = vec![w("F1E1"), w("E2E1"), w("E1F2"), w("E1E1"), w("E1F1")];
        words.sort();
        let s: Vec<String> = words.iter().map(ToString::to_string).collect();
        assert_eq!(s, ["E1E1", "E1F1", "E1F2", "E2E1", "F1E1"]);
    }

    #[test]
    fn content_counts() {
        let (alpha, beta) = w("E1E3F2E1").content(3, 2).unwrap();
        assert_eq!(alpha.entries(), &[2, 0, 1]);
        assert_eq!(beta.entries(), &[0, 1]);
        assert!(w("E4").content(3, 2).is_err());
    }

    #[test]
    fn symmetric_group_actions() {
        assert_eq!(sa_act(&[0, 1], w("E1E2F1")), w("E1E2F1"));
        assert_eq!(sa_act(&[1, 0], w("E1E2F1")), w("E2E1F1"));
        assert_eq!(sb_act(&[1, 0], w("E1F2F1")), w("E1F1F2"));
        let orbit: std::collections::BTreeSet<_> =
            [[0, 1], [1, 0]].iter().map(|p| sa_act(p, w("E1E1E2E2"))).collect();
        assert_eq!(orbit.into_iter().collect::<Vec<_>>(), vec![w("E1E1E2E2"), w("E2E2E1E1")]);
    }
}
