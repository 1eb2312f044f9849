//! Tokenization, frequency tables, and the legomena vector.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How raw text is split into tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenizerMode {
    /// Lowercase, then emit maximal runs of alphanumeric characters.
    /// Punctuation is dropped and apostrophes split words.
    #[default]
    Default,
    /// Split on whitespace only, no case folding.
    Whitespace,
    /// Runs of word characters (alphanumeric or `_`) and runs of punctuation
    /// are both tokens; no case folding.
    WordPunct,
}

impl TokenizerMode {
    pub fn as_str(self) -> &'static str {
        match self {
            TokenizerMode::Default => "default",
            TokenizerMode::Whitespace => "whitespace",
            TokenizerMode::WordPunct => "wordpunct",
        }
    }
}

impl fmt::Display for TokenizerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TokenizerMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(TokenizerMode::Default),
            "whitespace" => Ok(TokenizerMode::Whitespace),
            "wordpunct" => Ok(TokenizerMode::WordPunct),
            _ => Err(Error::InvalidParameter(
                "tokenizer mode must be one of default, whitespace, wordpunct",
            )),
        }
    }
}

/// Split `text` into tokens according to `mode`.
pub fn tokenize(text: &str, mode: TokenizerMode) -> Vec<String> {
    match mode {
        TokenizerMode::Default => {
            let lowered = text.to_lowercase();
            lowered
                .split(|c: char| !c.is_alphanumeric())
                .filter(|t| !t.is_empty())
                .map(str::to_owned)
                .collect()
        }
        TokenizerMode::Whitespace => text.split_whitespace().map(str::to_owned).collect(),
        TokenizerMode::WordPunct => word_punct(text),
    }
}

/// Like [`tokenize`], but validates UTF-8 first.
///
/// Invalid input is rejected with [`Error::Ingest`] carrying the offset of the
/// first offending byte.
pub fn tokenize_bytes(bytes: &[u8], mode: TokenizerMode) -> Result<Vec<String>> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Ingest {
        offset: e.valid_up_to(),
    })?;
    Ok(tokenize(text, mode))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum CharClass {
    Word,
    Space,
    Punct,
}

fn classify(c: char) -> CharClass {
    if c.is_alphanumeric() || c == '_' {
        CharClass::Word
    } else if c.is_whitespace() {
        CharClass::Space
    } else {
        CharClass::Punct
    }
}

fn word_punct(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut current = CharClass::Space;
    for (i, c) in text.char_indices() {
        let class = classify(c);
        if class != current {
            if current != CharClass::Space {
                out.push(text[start..i].to_owned());
            }
            start = i;
            current = class;
        }
    }
    if current != CharClass::Space {
        out.push(text[start..].to_owned());
    }
    out
}

/// The frequency spectrum of a corpus: `counts[n]` is the number of types
/// occurring exactly `n` times.
///
/// Stored densely up to the largest observed frequency; frequencies nobody has
/// hold zero.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LegomenaVector {
    counts: Vec<u64>,
}

impl LegomenaVector {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    /// Spectrum of a multiset of per-type frequencies. Zero frequencies land in `k_0`.
    pub fn from_frequencies<I>(freqs: I) -> Self
    where
        I: IntoIterator<Item = u64>,
    {
        let mut counts: Vec<u64> = Vec::new();
        for f in freqs {
            let f = f as usize;
            if f >= counts.len() {
                counts.resize(f + 1, 0);
            }
            counts[f] += 1;
        }
        Self { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `k_n`, zero past the end of the stored vector.
    pub fn get(&self, n: usize) -> u64 {
        self.counts.get(n).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `N = sum k_n`.
    pub fn type_count(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `M = sum n * k_n`.
    pub fn token_count(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(n, &k)| n as u64 * k)
            .sum()
    }

    pub fn hapaxes(&self) -> u64 {
        self.get(1)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.counts.iter().map(|&k| k as f64).collect()
    }

    /// Elementwise sum, the spectrum of two corpora with disjoint vocabularies.
    pub fn merged(&self, other: &LegomenaVector) -> LegomenaVector {
        let len = self.len().max(other.len());
        LegomenaVector {
            counts: (0..len).map(|n| self.get(n) + other.get(n)).collect(),
        }
    }
}

/// A tokenized text: the token sequence plus its frequency table.
///
/// Types are interned; `token_ids` index into `types`, and `counts[t]` is the
/// frequency of `types[t]`.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    types: Vec<String>,
    counts: Vec<u64>,
    token_ids: Vec<u32>,
}

impl Corpus {
    pub fn from_tokens<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut index: HashMap<String, u32> = HashMap::new();
        let mut types = Vec::new();
        let mut counts = Vec::new();
        let mut token_ids = Vec::new();
        for tok in tokens {
            let tok = tok.as_ref();
            let id = match index.get(tok) {
                Some(&id) => id,
                None => {
                    let id = types.len() as u32;
                    index.insert(tok.to_owned(), id);
                    types.push(tok.to_owned());
                    counts.push(0);
                    id
                }
            };
            counts[id as usize] += 1;
            token_ids.push(id);
        }
        let corpus = Self {
            types,
            counts,
            token_ids,
        };
        debug_assert!(corpus.check_invariants());
        corpus
    }

    /// Tokenize `text` and build the corpus in one step.
    pub fn from_text(text: &str, mode: TokenizerMode) -> Self {
        Self::from_tokens(tokenize(text, mode))
    }

    /// Build a corpus from `(type, frequency)` pairs. Tokens are laid out in
    /// blocks, one block per type, in the order given.
    ///
    /// Duplicate type names are merged.
    pub fn from_type_counts<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut tokens: Vec<String> = Vec::new();
        for (name, count) in pairs {
            let name = name.into();
            tokens.extend(std::iter::repeat_n(name, count as usize));
        }
        Self::from_tokens(tokens)
    }

    /// `M`, the number of tokens.
    pub fn token_count(&self) -> usize {
        self.token_ids.len()
    }

    /// `N`, the number of distinct types.
    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.token_ids.is_empty()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> + '_ {
        self.token_ids
            .iter()
            .map(move |&id| self.types[id as usize].as_str())
    }

    /// Interned token sequence; each id indexes [`Corpus::types`].
    pub fn token_ids(&self) -> &[u32] {
        &self.token_ids
    }

    pub fn types(&self) -> &[String] {
        &self.types
    }

    /// Frequency of each type, parallel to [`Corpus::types`].
    pub fn type_frequencies(&self) -> &[u64] {
        &self.counts
    }

    pub fn frequency(&self, ty: &str) -> u64 {
        self.types
            .iter()
            .position(|t| t == ty)
            .map_or(0, |i| self.counts[i])
    }

    pub fn frequency_map(&self) -> HashMap<&str, u64> {
        self.types
            .iter()
            .map(String::as_str)
            .zip(self.counts.iter().copied())
            .collect()
    }

    /// `(type, count)` sorted by descending count, ties broken lexicographically.
    pub fn ranked_frequencies(&self) -> Vec<(&str, u64)> {
        let mut table: Vec<(&str, u64)> = self
            .types
            .iter()
            .map(String::as_str)
            .zip(self.counts.iter().copied())
            .collect();
        table.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        table
    }

    /// Frequency of the most common type, 0 for an empty corpus.
    pub fn top_frequency(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn k_vector(&self) -> LegomenaVector {
        let mut k = LegomenaVector::from_frequencies(self.counts.iter().copied());
        if k.is_empty() {
            k = LegomenaVector::from_counts(vec![0]);
        }
        k
    }

    /// Fraction of types that are hapaxes, `k_1 / N`.
    pub fn hapax_proportion(&self) -> Result<f64> {
        if self.types.is_empty() {
            return Err(Error::UndefinedStatistic(
                "hapax proportion of an empty corpus",
            ));
        }
        let hapaxes = self.counts.iter().filter(|&&c| c == 1).count();
        Ok(hapaxes as f64 / self.types.len() as f64)
    }

    fn check_invariants(&self) -> bool {
        let k = LegomenaVector::from_frequencies(self.counts.iter().copied());
        let total: u64 = self.counts.iter().sum();
        total as usize == self.token_ids.len()
            && k.type_count() as usize == self.types.len()
            && k.token_count() as usize == self.token_ids.len()
            && k.get(0) == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn default_mode_folds_case_and_drops_punctuation() {
        assert_eq!(
            tokenize("The cat the CAT.", TokenizerMode::Default),
            vec!["the", "cat", "the", "cat"]
        );
        assert_eq!(
            tokenize("don't stop", TokenizerMode::Default),
            vec!["don", "t", "stop"]
        );
        assert!(tokenize("", TokenizerMode::Default).is_empty());
        assert!(tokenize(" ,.;! ", TokenizerMode::Default).is_empty());
    }

    #[test]
    fn whitespace_mode_keeps_case_and_punctuation() {
        assert_eq!(
            tokenize("The cat\tthe\nCAT.", TokenizerMode::Whitespace),
            vec!["The", "cat", "the", "CAT."]
        );
    }

    #[test]
    fn wordpunct_mode_splits_punctuation_runs() {
        assert_eq!(
            tokenize("Alice's Adventures, 1:1 -- ok", TokenizerMode::WordPunct),
            vec!["Alice", "'", "s", "Adventures", ",", "1", ":", "1", "--", "ok"]
        );
    }

    #[test]
    fn invalid_utf8_names_offset() {
        let bytes = b"abc \xff def";
        match tokenize_bytes(bytes, TokenizerMode::Default) {
            Err(Error::Ingest { offset }) => assert_eq!(offset, 4),
            other => panic!("expected ingest error, got {other:?}"),
        }
    }

    #[test]
    fn mode_parses() {
        assert_eq!("whitespace".parse::<TokenizerMode>().unwrap(), TokenizerMode::Whitespace);
        assert!("stem".parse::<TokenizerMode>().is_err());
    }

    #[test]
    fn build_counts_types() {
        let c = Corpus::from_tokens(["the", "cat", "the", "cat"]);
        assert_eq!(c.token_count(), 4);
        assert_eq!(c.type_count(), 2);
        assert_eq!(c.frequency("the"), 2);
        assert_eq!(c.frequency("cat"), 2);
        assert_eq!(c.frequency("dog"), 0);
        assert_eq!(c.k_vector().counts(), &[0, 0, 2]);
    }

    #[test]
    fn deck_corpus() {
        let suits = ["clubs", "diamonds", "hearts", "spades"];
        let c = Corpus::from_type_counts(suits.iter().map(|s| (*s, 13)));
        assert_eq!((c.token_count(), c.type_count()), (52, 4));
        let k = c.k_vector();
        assert_eq!(k.len(), 14);
        assert_eq!(k.get(13), 4);
        assert_eq!(k.counts().iter().sum::<u64>(), 4);
    }

    #[test]
    fn empty_corpus() {
        let c = Corpus::from_tokens(Vec::<String>::new());
        assert_eq!((c.token_count(), c.type_count()), (0, 0));
        assert_eq!(c.k_vector().counts(), &[0]);
        assert!(matches!(
            c.hapax_proportion(),
            Err(Error::UndefinedStatistic(_))
        ));
        assert_eq!(c.top_frequency(), 0);
    }

    #[test]
    fn hapax_proportion_all_distinct() {
        let c = Corpus::from_tokens(["a", "b", "c"]);
        assert_eq!(c.hapax_proportion().unwrap(), 1.0);
    }

    #[test]
    fn ranked_frequencies_break_ties_lexicographically() {
        let c = Corpus::from_tokens(["b", "a", "c", "c", "b", "a", "d"]);
        assert_eq!(
            c.ranked_frequencies(),
            vec![("a", 2), ("b", 2), ("c", 2), ("d", 1)]
        );
    }

    fn arb_text() -> impl Strategy<Value = String> {
        prop::collection::vec(
            prop_oneof![
                "[a-zA-Z0-9]{1,8}",
                "[ .,;'!?\\-]{1,3}",
                "[\\p{L}\\p{N}]{1,4}",
                Just("\n".to_string()),
            ],
            0..40,
        )
        .prop_map(|parts| parts.concat())
    }

    proptest! {
        #[test]
        fn default_tokenize_is_idempotent(text in arb_text()) {
            let once = tokenize(&text, TokenizerMode::Default);
            let twice = tokenize(&once.join(" "), TokenizerMode::Default);
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn spectrum_sums_match_corpus(text in arb_text()) {
            let c = Corpus::from_text(&text, TokenizerMode::Default);
            let k = c.k_vector();
            prop_assert_eq!(k.type_count() as usize, c.type_count());
            prop_assert_eq!(k.token_count() as usize, c.token_count());
            prop_assert_eq!(k.get(0), 0);
            let freq_total: u64 = c.frequency_map().values().sum();
            prop_assert_eq!(freq_total as usize, c.token_count());
        }

        #[test]
        fn disjoint_concatenation_adds_spectra(
            left in prop::collection::vec(0u8..6, 0..60),
            right in prop::collection::vec(0u8..6, 0..60),
        ) {
            let l: Vec<String> = left.iter().map(|i| format!("l{i}")).collect();
            let r: Vec<String> = right.iter().map(|i| format!("r{i}")).collect();
            let joined = Corpus::from_tokens(l.iter().chain(r.iter()));
            let lk = Corpus::from_tokens(&l).k_vector();
            let rk = Corpus::from_tokens(&r).k_vector();
            let merged = lk.merged(&rk);
            let jk = joined.k_vector();
            let len = merged.len().max(jk.len());
            for n in 0..len {
                prop_assert_eq!(merged.get(n), jk.get(n));
            }
        }
    }
}
