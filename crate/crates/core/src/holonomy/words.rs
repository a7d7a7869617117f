use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fenchel::SurfaceGroupRep;
use super::mobius::{translation_length, Mobius, LENGTH_FLOOR};
use crate::error::{Error, Result};

/// Longest word accepted by [`length_spectrum`].
pub const MAX_SPECTRUM_WORD: usize = 12;

const ALPHABET: [char; 8] = ['a', 'A', 'b', 'B', 'c', 'C', 'd', 'D'];

pub(crate) fn letter_of(ch: char) -> Option<u8> {
    ALPHABET.iter().position(|&c| c == ch).map(|p| p as u8)
}

fn inv(l: u8) -> u8 {
    l ^ 1
}

/// Free homotopy class of an unoriented closed curve, stored as its canonical cyclic word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CurveClass {
    letters: Vec<u8>,
}

impl CurveClass {
    pub fn parse(word: &str) -> Result<Self> {
        let letters = word
            .chars()
            .map(|c| letter_of(c).ok_or_else(|| Error::Format(format!("bad letter {c:?} in {word:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let letters = canonical(&cyclic_reduce(&letters));
        if letters.is_empty() {
            return Err(Error::Format(format!("{word:?} is null-homotopic as a word")));
        }
        Ok(CurveClass { letters })
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn word(&self) -> String {
        self.letters.iter().map(|&l| ALPHABET[l as usize]).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl TryFrom<String> for CurveClass {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        CurveClass::parse(&s)
    }
}

impl From<CurveClass> for String {
    fn from(c: CurveClass) -> String {
        c.word()
    }
}

/// Free reduction followed by cancelling inverse letters across the ends.
pub fn cyclic_reduce(letters: &[u8]) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&inv(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j - i >= 2 && out[i] == inv(out[j - 1]) {
        i += 1;
        j -= 1;
    }
    out[i..j].to_vec()
}

/// Lexicographically least rotation of the word or of its inverse.
pub fn canonical(letters: &[u8]) -> Vec<u8> {
    let n = letters.len();
    let inverse: Vec<u8> = letters.iter().rev().map(|&l| inv(l)).collect();
    let mut best = letters.to_vec();
    for w in [letters, &inverse[..]] {
        for r in 0..n {
            let cand: Vec<u8> = w[r..].iter().chain(&w[..r]).copied().collect();
            if cand < best {
                best = cand;
            }
        }
    }
    best
}

fn is_canonical(letters: &[u8]) -> bool {
    let n = letters.len();
    if n > 1 && letters[n - 1] == inv(letters[0]) {
        return false;
    }
    canonical(letters) == letters
}

/// Translation lengths of all curve classes with canonical word length at most `max_word_length`.
///
/// Classes whose image is trivial or elliptic (length below 1e−8) are dropped. Sorted by
/// length, ties by word.
pub fn length_spectrum(rep: &SurfaceGroupRep, max_word_length: usize) -> Result<Vec<(CurveClass, f64)>> {
    if max_word_length > MAX_SPECTRUM_WORD {
        return Err(Error::OutOfRange { what: "max word length", value: max_word_length as f64 });
    }
    if max_word_length == 0 {
        return Ok(Vec::new());
    }
    let mut out: Vec<(CurveClass, f64)> = (0u8..8)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut word = vec![first];
            let mut prefix = vec![rep.letter_index(first)];
            walk(rep, max_word_length, &mut word, &mut prefix, &mut found);
            found
        })
        .collect();
    out.sort_by(|x, y| x.1.total_cmp(&y.1).then_with(|| x.0.cmp(&y.0)));
    Ok(out)
}

fn walk(
    rep: &SurfaceGroupRep,
    max_len: usize,
    word: &mut Vec<u8>,
    prefix: &mut Vec<Mobius>,
    found: &mut Vec<(CurveClass, f64)>,
) {
    if is_canonical(word) {
        let l = translation_length(prefix.last().expect("non-empty prefix"));
        if l >= LENGTH_FLOOR {
            found.push((CurveClass { letters: word.clone() }, l));
        }
    }
    if word.len() == max_len {
        return;
    }
    let first = word[0];
    let last = *word.last().expect("non-empty word");
    for l in 0u8..8 {
        // A canonical word starts with its least letter, counting inverses.
        if l < first || inv(l) < first || l == inv(last) {
            continue;
        }
        let m = *prefix.last().expect("non-empty prefix") * rep.letter_index(l);
        word.push(l);
        prefix.push(m);
        walk(rep, max_len, word, prefix, found);
        word.pop();
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(CurveClass::parse("ba").unwrap().word(), "ab");
        assert_eq!(CurveClass::parse("A").unwrap().word(), "a");
        assert_eq!(CurveClass::parse("BA").unwrap().word(), "ab");
        assert_eq!(CurveClass::parse("cabAC").unwrap().word(), "b");
        assert!(CurveClass::parse("aA").is_err());
        assert!(CurveClass::parse("x").is_err());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let rep = SurfaceGroupRep::octagon();
        let spec = length_spectrum(&rep, 4).unwrap();
        let mut brute = std::collections::BTreeSet::new();
        for n in 1..=4u32 {
            for code in 0..8usize.pow(n) {
                let w: Vec<u8> = (0..n).map(|k| ((code >> (3 * k)) & 7) as u8).collect();
                let r = cyclic_reduce(&w);
                if r.len() == w.len() {
                    brute.insert(canonical(&r));
                }
            }
        }
        let got: std::collections::BTreeSet<Vec<u8>> =
            spec.iter().map(|(c, _)| c.letters().to_vec()).collect();
        assert_eq!(got, brute);
        assert!(spec.windows(2).all(|w| w[0].1 <= w[1].1));
    }
}
