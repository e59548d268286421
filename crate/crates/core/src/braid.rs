//! Words in the three-strand braid group.
//!
//! A [`BraidWord`] is the program text of every evaluator in this crate: the
//! exact Temperley-Lieb path, the 2x2 unitary path and the Hadamard-test
//! estimator all consume the same letter sequence. Words are never freely
//! reduced, so `len()` is always the crossing count of the closed diagram as
//! written.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

/// Largest `|e|` accepted in a `s<i>^<e>` token.
pub const MAX_TOKEN_EXPONENT: i64 = 10_000_000;

/// One of the two standard generators of B3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    S1,
    S2,
}

impl Generator {
    pub fn from_index(index: i64) -> Option<Self> {
        match index {
            1 => Some(Generator::S1),
            2 => Some(Generator::S2),
            _ => None,
        }
    }

    /// 1 or 2.
    pub fn index(self) -> usize {
        match self {
            Generator::S1 => 1,
            Generator::S2 => 2,
        }
    }
}

/// A generator raised to `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidLetter {
    pub generator: Generator,
    pub inverse: bool,
}

impl BraidLetter {
    pub fn new(generator: Generator, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub fn positive(generator: Generator) -> Self {
        Self::new(generator, false)
    }

    pub fn negative(generator: Generator) -> Self {
        Self::new(generator, true)
    }

    /// The crossing sign, `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Self::new(self.generator, !self.inverse)
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "s{}^-1", self.generator.index())
        } else {
            write!(f, "s{}", self.generator.index())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidParseError {
    #[error("unknown generator in token `{token}` at byte {position}: B3 only has s1 and s2")]
    UnknownGenerator { token: String, position: usize },
    #[error("zero exponent in token `{token}` at byte {position}")]
    ZeroExponent { token: String, position: usize },
    #[error("exponent out of range in token `{token}` at byte {position} (limit {MAX_TOKEN_EXPONENT})")]
    ExponentOutOfRange { token: String, position: usize },
    #[error("malformed token `{token}` at byte {position}")]
    MalformedToken { token: String, position: usize },
    #[error("token `{token}` at byte {position} mixes the `s<i>` and signed-integer notations")]
    MixedNotation { token: String, position: usize },
}

impl BraidParseError {
    /// The offending token and its byte offset in the input.
    pub fn location(&self) -> (&str, usize) {
        match self {
            BraidParseError::UnknownGenerator { token, position }
            | BraidParseError::ZeroExponent { token, position }
            | BraidParseError::ExponentOutOfRange { token, position }
            | BraidParseError::MalformedToken { token, position }
            | BraidParseError::MixedNotation { token, position } => (token, *position),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Notation {
    Prefixed,
    SignedInteger,
}

/// An element of B3 as a (possibly empty) sequence of letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    /// The empty word, whose closure is the three-component unlink.
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<BraidLetter>) -> Self {
        Self { letters }
    }

    /// Builds a word from `(index, sign)` pairs; returns `None` if any index
    /// is outside `{1, 2}` or any sign is outside `{+1, -1}`.
    pub fn from_pairs<I>(pairs: I) -> Option<Self>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        pairs
            .into_iter()
            .map(|(index, sign)| {
                let generator = Generator::from_index(index)?;
                match sign {
                    1 => Some(BraidLetter::positive(generator)),
                    -1 => Some(BraidLetter::negative(generator)),
                    _ => None,
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(Self::from_letters)
    }

    pub fn parse(text: &str) -> Result<Self, BraidParseError> {
        text.parse()
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = BraidLetter> + ExactSizeIterator + '_ {
        self.letters.iter().copied()
    }

    /// Word length `L`, the crossing count of the closure.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of the exponents.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    /// The group inverse: letters reversed, every sign flipped.
    pub fn inverse(&self) -> Self {
        Self::from_letters(self.letters.iter().rev().map(|l| l.inverted()).collect())
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &BraidWord) -> Self {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Self::from_letters(letters)
    }

    /// `g · self · g⁻¹`, without any cancellation.
    pub fn conjugate(&self, g: &BraidWord) -> Self {
        g.concat(self).concat(&g.inverse())
    }

    pub fn push(&mut self, letter: BraidLetter) {
        self.letters.push(letter);
    }
}

impl FromIterator<BraidLetter> for BraidWord {
    fn from_iter<T: IntoIterator<Item = BraidLetter>>(iter: T) -> Self {
        Self::from_letters(iter.into_iter().collect())
    }
}

/// Canonical serialization: one `s<i>` or `s<i>^-1` token per letter.
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        let mut notation: Option<Notation> = None;

        for (position, token) in tokens(text) {
            let (this, generator, exponent) = parse_token(token, position)?;
            match notation {
                None => notation = Some(this),
                Some(seen) if seen != this => {
                    return Err(BraidParseError::MixedNotation {
                        token: token.to_owned(),
                        position,
                    })
                }
                Some(_) => {}
            }
            let letter = BraidLetter::new(generator, exponent < 0);
            letters.extend(std::iter::repeat_n(letter, exponent.unsigned_abs() as usize));
        }

        Ok(Self::from_letters(letters))
    }
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split(|c: char| c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(move |t| (t.as_ptr() as usize - text.as_ptr() as usize, t))
}

fn parse_token(token: &str, position: usize) -> Result<(Notation, Generator, i64), BraidParseError> {
    let malformed = || BraidParseError::MalformedToken {
        token: token.to_owned(),
        position,
    };
    let unknown = || BraidParseError::UnknownGenerator {
        token: token.to_owned(),
        position,
    };

    if let Some(rest) = token.strip_prefix('s') {
        let (index_text, exponent_text) = match rest.split_once('^') {
            Some((i, e)) => (i, Some(e)),
            None => (rest, None),
        };
        if index_text.is_empty() || !index_text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let index: i64 = index_text.parse().map_err(|_| unknown())?;
        let generator = Generator::from_index(index).ok_or_else(unknown)?;

        let exponent = match exponent_text {
            None => 1,
            Some(e) => parse_signed(e).ok_or_else(|| {
                if is_signed_digits(e) {
                    BraidParseError::ExponentOutOfRange {
                        token: token.to_owned(),
                        position,
                    }
                } else {
                    malformed()
                }
            })?,
        };
        if exponent == 0 {
            return Err(BraidParseError::ZeroExponent {
                token: token.to_owned(),
                position,
            });
        }
        if exponent.abs() > MAX_TOKEN_EXPONENT {
            return Err(BraidParseError::ExponentOutOfRange {
                token: token.to_owned(),
                position,
            });
        }
        return Ok((Notation::Prefixed, generator, exponent));
    }

    if !is_signed_digits(token) {
        return Err(malformed());
    }
    let value = parse_signed(token).ok_or_else(unknown)?;
    let generator = Generator::from_index(value.abs()).ok_or_else(unknown)?;
    Ok((Notation::SignedInteger, generator, value.signum()))
}

fn is_signed_digits(text: &str) -> bool {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn parse_signed(text: &str) -> Option<i64> {
    if !is_signed_digits(text) {
        return None;
    }
    text.parse().ok()
}

/// A uniformly random word of exactly `len` letters.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, len: usize) -> BraidWord {
    (0..len)
        .map(|_| {
            let generator = if rng.random::<bool>() {
                Generator::S1
            } else {
                Generator::S2
            };
            BraidLetter::new(generator, rng.random::<bool>())
        })
        .collect()
}

/// Every word of length at most `max_len`, shortest first; there are
/// `(4^(max_len+1) - 1) / 3` of them.
pub fn all_words(max_len: usize) -> Vec<BraidWord> {
    const ALPHABET: [BraidLetter; 4] = [
        BraidLetter { generator: Generator::S1, inverse: false },
        BraidLetter { generator: Generator::S1, inverse: true },
        BraidLetter { generator: Generator::S2, inverse: false },
        BraidLetter { generator: Generator::S2, inverse: true },
    ];
    let mut out = vec![BraidWord::identity()];
    let mut frontier = vec![BraidWord::identity()];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|w| {
                ALPHABET.iter().map(move |&l| {
                    let mut next = w.clone();
                    next.push(l);
                    next
                })
            })
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(pairs: &[(i64, i64)]) -> BraidWord {
        BraidWord::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn parses_prefixed_tokens() {
        let b: BraidWord = "s1 s2^-1 s1".parse().unwrap();
        assert_eq!(b, word(&[(1, 1), (2, -1), (1, 1)]));
    }

    #[test]
    fn parses_signed_integer_tokens() {
        let b: BraidWord = "1 -2 1 -2".parse().unwrap();
        assert_eq!(b, word(&[(1, 1), (2, -1), (1, 1), (2, -1)]));
    }

    #[test]
    fn expands_exponents() {
        let b: BraidWord = "s1^-2 s2^3".parse().unwrap();
        assert_eq!(b, word(&[(1, -1), (1, -1), (2, 1), (2, 1), (2, 1)]));
        assert_eq!(b.len(), 5);
    }

    #[test]
    fn empty_and_blank_inputs_are_identity() {
        for text in ["", "   ", "\n\t"] {
            let b: BraidWord = text.parse().unwrap();
            assert!(b.is_empty());
            assert_eq!(b.writhe(), 0);
        }
    }

    #[test]
    fn rejects_unknown_generators() {
        assert!(matches!(
            "s3".parse::<BraidWord>(),
            Err(BraidParseError::UnknownGenerator { position: 0, .. })
        ));
        assert!(matches!(
            "1 3".parse::<BraidWord>(),
            Err(BraidParseError::UnknownGenerator { position: 2, .. })
        ));
        assert!(matches!(
            "s0".parse::<BraidWord>(),
            Err(BraidParseError::UnknownGenerator { .. })
        ));
        assert!(matches!(
            "0".parse::<BraidWord>(),
            Err(BraidParseError::UnknownGenerator { .. })
        ));
    }

    #[test]
    fn rejects_zero_exponent() {
        let err = "s1 s2^0".parse::<BraidWord>().unwrap_err();
        assert_eq!(
            err,
            BraidParseError::ZeroExponent {
                token: "s2^0".into(),
                position: 3
            }
        );
    }

    #[test]
    fn rejects_malformed_tokens() {
        for text in ["s", "s1^", "s^2", "x1", "s1^a", "s1^2^3", "--1", "s-1", "1.5"] {
            let err = text.parse::<BraidWord>().unwrap_err();
            assert!(
                matches!(err, BraidParseError::MalformedToken { .. }),
                "{text}: {err:?}"
            );
        }
    }

    #[test]
    fn rejects_mixed_notation() {
        let err = "s1 -2".parse::<BraidWord>().unwrap_err();
        assert_eq!(err.location(), ("-2", 3));
        assert!(matches!(err, BraidParseError::MixedNotation { .. }));
    }

    #[test]
    fn rejects_huge_exponents() {
        assert!(matches!(
            "s1^99999999999".parse::<BraidWord>(),
            Err(BraidParseError::ExponentOutOfRange { .. })
        ));
        assert!(matches!(
            "s1^999999999999999999999999".parse::<BraidWord>(),
            Err(BraidParseError::ExponentOutOfRange { .. })
        ));
    }

    #[test]
    fn writhe_sums_signs() {
        assert_eq!(word(&[(1, 1), (2, 1), (1, 1), (2, 1)]).writhe(), 4);
        assert_eq!(BraidWord::identity().writhe(), 0);
        assert_eq!(word(&[(1, 1), (2, -1), (1, 1), (2, -1)]).writhe(), 0);
    }

    #[test]
    fn conjugation_by_a_single_letter() {
        let b = word(&[(1, 1)]);
        let g = word(&[(2, 1)]);
        assert_eq!(b.conjugate(&g), word(&[(2, 1), (1, 1), (2, -1)]));
        assert_eq!(b.conjugate(&BraidWord::identity()), b);
    }

    #[test]
    fn from_pairs_rejects_bad_input() {
        assert!(BraidWord::from_pairs([(3, 1)]).is_none());
        assert!(BraidWord::from_pairs([(1, 2)]).is_none());
    }

    #[test]
    fn display_is_prefixed() {
        assert_eq!(word(&[(1, 1), (2, -1)]).to_string(), "s1 s2^-1");
        assert_eq!(BraidWord::identity().to_string(), "");
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = BraidWord> {
        prop::collection::vec((1i64..=2, prop::bool::ANY), 0..=max_len).prop_map(|v| {
            BraidWord::from_pairs(v.into_iter().map(|(i, neg)| (i, if neg { -1 } else { 1 })))
                .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn display_round_trips(b in arb_word(40)) {
            prop_assert_eq!(b.to_string().parse::<BraidWord>().unwrap(), b);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn conjugation_preserves_writhe(b in arb_word(30), g in arb_word(30)) {
            prop_assert_eq!(b.conjugate(&g).writhe(), b.writhe());
        }

        #[test]
        fn inverse_negates_writhe(b in arb_word(30)) {
            prop_assert_eq!(b.inverse().writhe(), -b.writhe());
            prop_assert_eq!(b.inverse().inverse(), b);
        }
    }

    #[test]
    fn enumerates_all_short_words() {
        let words = all_words(5);
        assert_eq!(words.len(), 1365);
        assert_eq!(words.iter().filter(|w| !w.is_empty()).count(), 1364);
        let distinct: std::collections::HashSet<_> = words.iter().collect();
        assert_eq!(distinct.len(), words.len());
    }

    #[test]
    fn power_token_writhe() {
        for k in (-100i64..=100).filter(|&k| k != 0) {
            let b: BraidWord = format!("s1^{k}").parse().unwrap();
            assert_eq!(b.writhe(), k);
            assert_eq!(b.len() as i64, k.abs());
        }
    }
}
