//! Words over the form alphabet {1,2,3}, shuffle and stuffle products.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::BigComplex;

/// Sequence of form labels: 1 = ω_a, 2 = ω_b, 3 = ω_c. The first letter is
/// the innermost integration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: &[u8]) -> Result<Self> {
        if letters.iter().any(|&l| !(1..=3).contains(&l)) {
            return Err(Error::BadWord(format!("{:?}", letters)));
        }
        Ok(Word(letters.to_vec()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// Position of this word in the dense layout used by tables:
    /// words of each length are contiguous, in lexicographic order.
    pub fn index(&self) -> usize {
        let n = self.0.len();
        let mut idx = 0usize;
        for &l in &self.0 {
            idx = idx * 3 + (l - 1) as usize;
        }
        layer_offset(n) + idx
    }

    pub fn from_index(mut index: usize) -> Word {
        let mut n = 0;
        while index >= layer_offset(n + 1) {
            n += 1;
        }
        index -= layer_offset(n);
        let mut v = vec![0u8; n];
        for k in (0..n).rev() {
            v[k] = (index % 3) as u8 + 1;
            index /= 3;
        }
        Word(v)
    }

    /// All words of exactly length `n`, lexicographic.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        let start = layer_offset(n);
        (start..layer_offset(n + 1)).map(Word::from_index)
    }
}

/// Number of words of length < n: (3^n − 1)/2.
pub fn layer_offset(n: usize) -> usize {
    (3usize.pow(n as u32) - 1) / 2
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Ok(Word::empty());
        }
        let mut v = Vec::new();
        for part in t.split(',') {
            match part.trim() {
                "1" | "a" => v.push(1),
                "2" | "b" => v.push(2),
                "3" | "c" => v.push(3),
                _ => return Err(Error::BadWord(s.to_string())),
            }
        }
        Ok(Word(v))
    }
}

/// Integer linear combination of words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinComb {
    terms: BTreeMap<Word, i64>,
}

impl LinComb {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: Word) -> Self {
        let mut l = Self::new();
        l.add(w, 1);
        l
    }

    pub fn add(&mut self, w: Word, k: i64) {
        if k == 0 {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, k)| (w, *k))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn total_multiplicity(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Bilinear extension of [`shuffle`].
    pub fn shuffle(&self, o: &LinComb) -> LinComb {
        let mut out = LinComb::new();
        for (a, ka) in self.terms() {
            for (b, kb) in o.terms() {
                for (w, k) in shuffle(a, b).terms() {
                    out.add(w.clone(), ka * kb * k);
                }
            }
        }
        out
    }
}

/// Sum over all (r,s)-shuffles of the two words.
pub fn shuffle(w1: &Word, w2: &Word) -> LinComb {
    let mut out = LinComb::new();
    let mut buf = Vec::with_capacity(w1.len() + w2.len());
    shuffle_rec(&w1.0, &w2.0, &mut buf, &mut out);
    out
}

fn shuffle_rec(a: &[u8], b: &[u8], buf: &mut Vec<u8>, out: &mut LinComb) {
    if a.is_empty() || b.is_empty() {
        let mut w = buf.clone();
        w.extend_from_slice(a);
        w.extend_from_slice(b);
        out.add(Word(w), 1);
        return;
    }
    buf.push(a[0]);
    shuffle_rec(&a[1..], b, buf, out);
    buf.pop();
    buf.push(b[0]);
    shuffle_rec(a, &b[1..], buf, out);
    buf.pop();
}

/// Letter Z_{n,z} of the series alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct MplLetter {
    pub n: u32,
    pub z: BigComplex,
}

impl MplLetter {
    pub fn new(n: u32, z: BigComplex) -> Self {
        MplLetter { n, z }
    }
}

/// Integer combination of letter sequences. Terms with bitwise equal
/// letters are merged.
#[derive(Debug, Clone, Default)]
pub struct LetterComb {
    pub terms: Vec<(i64, Vec<MplLetter>)>,
}

impl LetterComb {
    fn add(&mut self, k: i64, w: Vec<MplLetter>) {
        if let Some(t) = self.terms.iter_mut().find(|t| t.1 == w) {
            t.0 += k;
        } else {
            self.terms.push((k, w));
        }
        self.terms.retain(|t| t.0 != 0);
    }
}

/// Quasi-shuffle of two letter sequences. Letters are read from the
/// largest summation index down, so the recursion runs on the last letter.
pub fn stuffle(w1: &[MplLetter], w2: &[MplLetter]) -> LetterComb {
    let mut out = LetterComb::default();
    for (k, w) in stuffle_rec(w1, w2) {
        out.add(k, w);
    }
    out
}

fn stuffle_rec(a: &[MplLetter], b: &[MplLetter]) -> Vec<(i64, Vec<MplLetter>)> {
    if a.is_empty() {
        return vec![(1, b.to_vec())];
    }
    if b.is_empty() {
        return vec![(1, a.to_vec())];
    }
    let (la, ra) = a.split_at(a.len() - 1);
    let (lb, rb) = b.split_at(b.len() - 1);
    let mut out = Vec::new();
    for (k, mut w) in stuffle_rec(la, b) {
        w.push(ra[0].clone());
        out.push((k, w));
    }
    for (k, mut w) in stuffle_rec(a, lb) {
        w.push(rb[0].clone());
        out.push((k, w));
    }
    let merged = MplLetter::new(ra[0].n + rb[0].n, &ra[0].z * &rb[0].z);
    for (k, mut w) in stuffle_rec(la, lb) {
        w.push(merged.clone());
        out.push((k, w));
    }
    out
}
