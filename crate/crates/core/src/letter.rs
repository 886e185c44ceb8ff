//! Decoders, words and letterings.
//!
//! A decoder is a set `D` of ordered letter pairs. A word `w` decodes to the
//! graph on its positions where `i < j` are adjacent iff `(w(i), w(j)) ∈ D`.
//! A [`Lettering`] additionally pins each position to a vertex id so that
//! checking it against a graph is plain equality.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, ThresholdStep};

/// External symbol for letter index `i`: `a..z`, then `A..Z`, then `L52`, ...
pub fn letter_symbol(i: usize) -> String {
    match i {
        0..=25 => ((b'a' + i as u8) as char).to_string(),
        26..=51 => ((b'A' + (i - 26) as u8) as char).to_string(),
        _ => format!("L{i}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decoder {
    alphabet: Vec<String>,
    pairs: Vec<bool>,
}

impl Decoder {
    /// Empty decoder over `k` letters named by [`letter_symbol`].
    pub fn new(k: usize) -> Self {
        Decoder {
            alphabet: (0..k).map(letter_symbol).collect(),
            pairs: vec![false; k * k],
        }
    }

    pub fn with_alphabet(alphabet: Vec<String>) -> Result<Self> {
        let mut sorted = alphabet.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidLettering("repeated alphabet symbol".into()));
        }
        let k = alphabet.len();
        Ok(Decoder {
            alphabet,
            pairs: vec![false; k * k],
        })
    }

    pub fn from_pairs(k: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut d = Decoder::new(k);
        for &(a, b) in pairs {
            d.check_letter(a)?;
            d.check_letter(b)?;
            d.set(a, b, true);
        }
        Ok(d)
    }

    /// Row-major `k x k` matrix; bit `a * k + b` of `code`, counted from the
    /// most significant end, is `(a, b) ∈ D`.
    pub fn from_code(k: usize, code: u64) -> Self {
        let mut d = Decoder::new(k);
        let kk = k * k;
        for idx in 0..kk {
            d.pairs[idx] = code >> (kk - 1 - idx) & 1 == 1;
        }
        d
    }

    /// Inverse of [`Decoder::from_code`]; integer order is row-major
    /// lexicographic order of the matrix. Panics for `k > 8`.
    pub fn code(&self) -> u64 {
        let k = self.size();
        assert!(k <= 8, "code only defined for k <= 8");
        self.pairs
            .iter()
            .fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn symbol(&self, a: usize) -> &str {
        &self.alphabet[a]
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == symbol)
    }

    fn check_letter(&self, a: usize) -> Result<()> {
        if a < self.size() {
            Ok(())
        } else {
            Err(Error::InvalidLetter {
                letter: a,
                k: self.size(),
            })
        }
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs[a * self.size() + b]
    }

    pub fn set(&mut self, a: usize, b: usize, present: bool) {
        let k = self.size();
        self.pairs[a * k + b] = present;
    }

    /// Ordered pairs in `D`, row-major.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let k = self.size();
        (0..k * k)
            .filter(|&i| self.pairs[i])
            .map(|i| (i / k, i % k))
            .collect()
    }

    /// `Σ² \ D`.
    pub fn complement(&self) -> Decoder {
        Decoder {
            alphabet: self.alphabet.clone(),
            pairs: self.pairs.iter().map(|&b| !b).collect(),
        }
    }

    /// Every pair reversed.
    pub fn transpose(&self) -> Decoder {
        let k = self.size();
        let mut d = Decoder {
            alphabet: self.alphabet.clone(),
            pairs: vec![false; k * k],
        };
        for a in 0..k {
            for b in 0..k {
                d.set(b, a, self.contains(a, b));
            }
        }
        d
    }

    /// Shorthand such as `"ab,ba"`; see [`parse_shorthand`].
    pub fn to_shorthand(&self) -> String {
        self.pairs()
            .iter()
            .map(|&(a, b)| format!("{}{}", self.symbol(a), self.symbol(b)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Letter graph of `word` under `decoder`, on positions `0..word.len()`.
pub fn decode(decoder: &Decoder, word: &[usize]) -> Result<Graph> {
    for &a in word {
        decoder.check_letter(a)?;
    }
    Ok(Graph::from_fn(word.len(), |i, j| {
        decoder.contains(word[i], word[j])
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lettering {
    decoder: Decoder,
    word: Vec<usize>,
    vertex_of_position: Vec<usize>,
}

impl Lettering {
    pub fn new(decoder: Decoder, word: Vec<usize>, vertex_of_position: Vec<usize>) -> Result<Self> {
        for &a in &word {
            decoder.check_letter(a)?;
        }
        if vertex_of_position.len() != word.len() {
            return Err(Error::InvalidLettering(format!(
                "{} positions but {} vertex ids",
                word.len(),
                vertex_of_position.len()
            )));
        }
        let mut seen = vec![false; word.len()];
        for &v in &vertex_of_position {
            if v >= word.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidLettering(
                    "vertex_of_position is not a bijection onto 0..n".into(),
                ));
            }
        }
        Ok(Lettering {
            decoder,
            word,
            vertex_of_position,
        })
    }

    /// Position `i` is vertex `i`.
    pub fn identity(decoder: Decoder, word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        Lettering::new(decoder, word, (0..n).collect())
    }

    pub fn decoder(&self) -> &Decoder {
        &self.decoder
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn vertex_of_position(&self) -> &[usize] {
        &self.vertex_of_position
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Number of distinct letters occurring in the word.
    pub fn letters_used(&self) -> usize {
        let mut used = vec![false; self.decoder.size()];
        for &a in &self.word {
            used[a] = true;
        }
        used.into_iter().filter(|&u| u).count()
    }

    /// Position of each vertex.
    pub fn position_of_vertex(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        for (p, &v) in self.vertex_of_position.iter().enumerate() {
            pos[v] = p;
        }
        pos
    }

    /// Letter assigned to each vertex.
    pub fn letter_of_vertex(&self) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (p, &v) in self.vertex_of_position.iter().enumerate() {
            out[v] = self.word[p];
        }
        out
    }

    /// The decoded graph in position numbering.
    pub fn decode_positions(&self) -> Graph {
        decode(&self.decoder, &self.word).expect("letters validated on construction")
    }

    /// The decoded graph in vertex numbering.
    pub fn graph(&self) -> Graph {
        let pos = self.position_of_vertex();
        Graph::from_fn(self.len(), |u, v| {
            let (pu, pv) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
            self.decoder.contains(self.word[pu], self.word[pv])
        })
    }

    pub fn word_string(&self) -> String {
        self.word.iter().map(|&a| self.decoder.symbol(a)).collect()
    }

    /// Lettering of the same graph under the complemented decoder decodes to
    /// the complement graph.
    pub fn complemented(&self) -> Lettering {
        Lettering {
            decoder: self.decoder.complement(),
            word: self.word.clone(),
            vertex_of_position: self.vertex_of_position.clone(),
        }
    }

    /// Drops unused letters from the decoder, keeping the relative order.
    pub fn compacted(&self) -> Lettering {
        let k = self.decoder.size();
        let mut used = vec![false; k];
        for &a in &self.word {
            used[a] = true;
        }
        let keep: Vec<usize> = (0..k).filter(|&a| used[a]).collect();
        let mut remap = vec![usize::MAX; k];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let mut decoder = Decoder {
            alphabet: keep
                .iter()
                .map(|&a| self.decoder.alphabet[a].clone())
                .collect(),
            pairs: vec![false; keep.len() * keep.len()],
        };
        for (x, &a) in keep.iter().enumerate() {
            for (y, &b) in keep.iter().enumerate() {
                decoder.set(x, y, self.decoder.contains(a, b));
            }
        }
        Lettering {
            decoder,
            word: self.word.iter().map(|&a| remap[a]).collect(),
            vertex_of_position: self.vertex_of_position.clone(),
        }
    }

    /// Removes the given vertices; the rest is renumbered in increasing id
    /// order, matching [`Graph::induced_sorted`].
    pub fn delete_vertices(&self, removed: &[usize]) -> Lettering {
        let n = self.len();
        let mut gone = vec![false; n];
        for &v in removed {
            gone[v] = true;
        }
        let mut new_id = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            if !gone[v] {
                new_id[v] = next;
                next += 1;
            }
        }
        let (word, vop) = self
            .word
            .iter()
            .zip(&self.vertex_of_position)
            .filter(|(_, &v)| !gone[v])
            .map(|(&a, &v)| (a, new_id[v]))
            .unzip();
        Lettering {
            decoder: self.decoder.clone(),
            word,
            vertex_of_position: vop,
        }
    }
}

/// `true` iff `lettering` decodes exactly to `g` under its vertex map.
pub fn verify(g: &Graph, lettering: &Lettering) -> Result<bool> {
    if g.n() != lettering.len() {
        return Err(Error::SizeMismatch {
            word: lettering.len(),
            graph: g.n(),
        });
    }
    let w = &lettering.word;
    let vop = &lettering.vertex_of_position;
    let d = &lettering.decoder;
    for j in 1..w.len() {
        for i in 0..j {
            if g.has_edge(vop[i], vop[j]) != d.contains(w[i], w[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn complement_decoder(decoder: &Decoder) -> Decoder {
    decoder.complement()
}

/// Reversed word over the transposed decoder; decodes to the same graph in
/// vertex numbering.
pub fn reverse_lettering(l: &Lettering) -> Lettering {
    let mut word = l.word.clone();
    word.reverse();
    let mut vop = l.vertex_of_position.clone();
    vop.reverse();
    Lettering {
        decoder: l.decoder.transpose(),
        word,
        vertex_of_position: vop,
    }
}

/// Position triple `(i, j, k)`: `i < k` carry the same letter and `j`
/// distinguishes them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distinguisher {
    pub first: usize,
    pub between: usize,
    pub last: usize,
}

/// Every same-letter pair distinguished by a position outside the interval
/// between them. Empty for every lettering, which makes this a self-check.
pub fn distinguisher_violations(l: &Lettering) -> Vec<Distinguisher> {
    let g = l.decode_positions();
    let w = &l.word;
    let n = w.len();
    let mut out = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            if w[i] != w[k] {
                continue;
            }
            for j in (0..n).filter(|&j| j < i || j > k) {
                if g.has_edge(i, j) != g.has_edge(k, j) {
                    out.push(Distinguisher {
                        first: i,
                        between: j,
                        last: k,
                    });
                }
            }
        }
    }
    out
}

/// Decoder `{(i,d), (d,d)}` over the alphabet `[i, d]`.
pub fn threshold_decoder() -> Decoder {
    let mut d = Decoder::with_alphabet(vec!["i".into(), "d".into()]).expect("distinct");
    d.set(0, 1, true);
    d.set(1, 1, true);
    d
}

/// Two-letter lettering of the threshold graph built by `steps`, vertex `t`
/// at position `t`. The first vertex is both isolated and dominating, so it
/// takes the letter of the second step; a sequence that is constant after
/// its first step therefore uses one letter.
pub fn threshold_lettering(steps: &[ThresholdStep]) -> Result<Lettering> {
    if steps.is_empty() {
        return Err(Error::InvalidParameter("empty creation sequence".into()));
    }
    let letter = |s: ThresholdStep| match s {
        ThresholdStep::Isolated => 0,
        ThresholdStep::Dominating => 1,
    };
    let mut word: Vec<usize> = steps.iter().map(|&s| letter(s)).collect();
    if word.len() >= 2 {
        word[0] = word[1];
    }
    Lettering::identity(threshold_decoder(), word)
}

/// Parses `"ab,ba"` plus a word such as `"abab"`. The alphabet is the set of
/// characters seen in either, sorted.
pub fn parse_shorthand(decoder: &str, word: &str) -> Result<(Decoder, Vec<usize>)> {
    let pair_strs: Vec<&str> = decoder
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let mut pairs = Vec::new();
    for p in &pair_strs {
        let cs: Vec<char> = p.chars().collect();
        if cs.len() != 2 {
            return Err(Error::InvalidLettering(format!(
                "decoder pair '{p}' is not two characters"
            )));
        }
        pairs.push((cs[0], cs[1]));
    }
    let mut alphabet: Vec<char> = pairs
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .chain(word.chars())
        .collect();
    alphabet.sort_unstable();
    alphabet.dedup();
    if let Some(c) = alphabet.iter().find(|c| !c.is_ascii_alphabetic()) {
        return Err(Error::InvalidLettering(format!(
            "letter '{c}' is not a-z or A-Z"
        )));
    }
    let idx = |c: char| alphabet.binary_search(&c).expect("collected above");
    let mut d = Decoder::with_alphabet(alphabet.iter().map(|c| c.to_string()).collect())?;
    for &(a, b) in &pairs {
        d.set(idx(a), idx(b), true);
    }
    let w = word.chars().map(idx).collect();
    Ok((d, w))
}

/// Wire form of a lettering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetteringJson {
    pub alphabet: Vec<String>,
    pub decoder: Vec<[String; 2]>,
    pub word: Vec<String>,
    pub vertex_of_position: Vec<usize>,
}

impl From<&Lettering> for LetteringJson {
    fn from(l: &Lettering) -> Self {
        let d = &l.decoder;
        LetteringJson {
            alphabet: d.alphabet.clone(),
            decoder: d
                .pairs()
                .into_iter()
                .map(|(a, b)| [d.symbol(a).to_string(), d.symbol(b).to_string()])
                .collect(),
            word: l.word.iter().map(|&a| d.symbol(a).to_string()).collect(),
            vertex_of_position: l.vertex_of_position.clone(),
        }
    }
}

impl TryFrom<LetteringJson> for Lettering {
    type Error = Error;

    fn try_from(j: LetteringJson) -> Result<Self> {
        let mut d = Decoder::with_alphabet(j.alphabet)?;
        let lookup = |d: &Decoder, s: &str| {
            d.index_of(s)
                .ok_or_else(|| Error::InvalidLettering(format!("unknown letter '{s}'")))
        };
        for [a, b] in &j.decoder {
            let (x, y) = (lookup(&d, a)?, lookup(&d, b)?);
            d.set(x, y, true);
        }
        let word = j
            .word
            .iter()
            .map(|s| lookup(&d, s))
            .collect::<Result<Vec<_>>>()?;
        Lettering::new(d, word, j.vertex_of_position)
    }
}

impl Serialize for Lettering {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LetteringJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lettering {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LetteringJson::deserialize(d)?;
        Lettering::try_from(j).map_err(serde::de::Error::custom)
    }
}
