//! Curve names, twist words and the monodromy word syntax.
//!
//! ```text
//! word     := "id" | letter+          (whitespace separated)
//! letter   := curve exponent?
//! curve    := ("a" | "b" | "c" | "s") digits
//! exponent := "^" "-"? digits         (nonzero)
//! ```
//!
//! `s<k>` names the separating curve cutting off the first `k` handles; it
//! is null-homologous and is not one of the Humphreys generators.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest absolute exponent accepted by the parser.
pub const MAX_EXPONENT: u32 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    A(usize),
    B(usize),
    C(usize),
    /// Separating curve bounding the first `k` handles.
    S(usize),
}

impl Curve {
    pub fn index(&self) -> usize {
        match *self {
            Curve::A(k) | Curve::B(k) | Curve::C(k) | Curve::S(k) => k,
        }
    }

    pub fn is_humphreys(&self) -> bool {
        !matches!(self, Curve::S(_))
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, k) = match *self {
            Curve::A(k) => ('a', k),
            Curve::B(k) => ('b', k),
            Curve::C(k) => ('c', k),
            Curve::S(k) => ('s', k),
        };
        write!(f, "{p}{k}")
    }
}

impl FromStr for Curve {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let unknown = || format!("unknown curve label '{s}'");
        let mut chars = s.chars();
        let make = match chars.next() {
            Some('a') => Curve::A,
            Some('b') => Curve::B,
            Some('c') => Curve::C,
            Some('s') => Curve::S,
            _ => return Err(unknown()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(unknown());
        }
        match digits.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(make(k)),
            _ => Err(unknown()),
        }
    }
}

impl Serialize for Curve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Curve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Sign of a twist: `Positive` for an ordinary critical point, `Negative`
/// for an achiral one. Serialized as `1` / `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    Positive,
    Negative,
}

impl Chirality {
    pub fn sign(self) -> i64 {
        match self {
            Chirality::Positive => 1,
            Chirality::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Chirality::Positive => Chirality::Negative,
            Chirality::Negative => Chirality::Positive,
        }
    }
}

impl Serialize for Chirality {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.sign())
    }
}

impl<'de> Deserialize<'de> for Chirality {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match i64::deserialize(d)? {
            1 => Ok(Chirality::Positive),
            -1 => Ok(Chirality::Negative),
            other => Err(serde::de::Error::custom(format!(
                "chirality must be 1 or -1, got {other}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub curve: Curve,
    pub chirality: Chirality,
}

impl Letter {
    pub fn new(curve: Curve, chirality: Chirality) -> Self {
        Self { curve, chirality }
    }

    pub fn positive(curve: Curve) -> Self {
        Self::new(curve, Chirality::Positive)
    }

    pub fn inverse(self) -> Self {
        Self::new(self.curve, self.chirality.flip())
    }
}

/// An ordered product of Dehn twists; the leftmost letter acts first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TwistWord(Vec<Letter>);

impl TwistWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// The inverse mapping class: reversed order, flipped chiralities.
    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl From<Vec<Letter>> for TwistWord {
    fn from(letters: Vec<Letter>) -> Self {
        Self(letters)
    }
}

impl fmt::Display for TwistWord {
    /// Canonical text; runs of equal letters are folded into exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        let mut first = true;
        for run in self.0.chunk_by(|x, y| x == y) {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let l = run[0];
            match (l.chirality, run.len()) {
                (Chirality::Positive, 1) => write!(f, "{}", l.curve)?,
                (Chirality::Positive, n) => write!(f, "{}^{n}", l.curve)?,
                (Chirality::Negative, n) => write!(f, "{}^-{n}", l.curve)?,
            }
        }
        Ok(())
    }
}

impl FromStr for TwistWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s).map(ParsedWord::into_word)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedLetter {
    pub letter: Letter,
    /// Byte range of the token this letter was expanded from.
    pub span: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedWord {
    pub letters: Vec<ParsedLetter>,
}

impl ParsedWord {
    pub fn into_word(self) -> TwistWord {
        TwistWord(self.letters.into_iter().map(|l| l.letter).collect())
    }
}

fn tokens(text: &str) -> impl Iterator<Item = (Range<usize>, &str)> {
    let mut rest = text.char_indices().peekable();
    std::iter::from_fn(move || {
        while rest.next_if(|(_, c)| c.is_whitespace()).is_some() {}
        let (start, _) = *rest.peek()?;
        let mut end = start;
        while let Some((i, c)) = rest.next_if(|(_, c)| !c.is_whitespace()) {
            end = i + c.len_utf8();
        }
        Some((start..end, &text[start..end]))
    })
}

fn parse_error(message: impl Into<String>, span: Range<usize>) -> Error {
    Error::Parse {
        message: message.into(),
        span,
    }
}

fn parse_letter(token: &str, span: Range<usize>) -> Result<(Curve, i64)> {
    let (name, exponent) = match token.split_once('^') {
        Some((name, exp)) => (name, Some(exp)),
        None => (token, None),
    };
    let curve: Curve = name
        .parse()
        .map_err(|m: String| parse_error(m, span.start..span.start + name.len()))?;
    let Some(exp) = exponent else {
        return Ok((curve, 1));
    };
    let exp_span = span.start + name.len() + 1..span.end;
    let (negative, digits) = match exp.strip_prefix('-') {
        Some(d) => (true, d),
        None => (false, exp),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(format!("malformed exponent '{exp}'"), exp_span));
    }
    let n: u32 = digits
        .parse()
        .ok()
        .filter(|&n| n <= MAX_EXPONENT)
        .ok_or_else(|| {
            parse_error(
                format!("exponent '{exp}' exceeds {MAX_EXPONENT}"),
                exp_span.clone(),
            )
        })?;
    if n == 0 {
        return Err(parse_error("exponent 0 is not allowed", exp_span));
    }
    Ok((curve, if negative { -(n as i64) } else { n as i64 }))
}

/// Parses the monodromy word syntax, expanding exponents into repeated
/// letters.
pub fn parse_word(text: &str) -> Result<ParsedWord> {
    let toks: Vec<_> = tokens(text).collect();
    if toks.is_empty() {
        return Err(parse_error(
            "empty word (use 'id' for the identity)",
            0..text.len(),
        ));
    }
    if let [(_, "id")] = toks.as_slice() {
        return Ok(ParsedWord { letters: vec![] });
    }
    let mut letters = Vec::new();
    for (span, tok) in toks {
        if tok == "id" {
            return Err(parse_error("'id' must stand alone", span));
        }
        let (curve, n) = parse_letter(tok, span.clone())?;
        let chirality = if n > 0 {
            Chirality::Positive
        } else {
            Chirality::Negative
        };
        for _ in 0..n.unsigned_abs() {
            letters.push(ParsedLetter {
                letter: Letter::new(curve, chirality),
                span: span.clone(),
            });
        }
    }
    Ok(ParsedWord { letters })
}
