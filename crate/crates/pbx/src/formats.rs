//! Text formats for codes (`.pbc`) and two-periodic tilings.
//!
//! Both are UTF-8, line oriented, with `#` comments and `key: value`
//! headers. A code file declares its alphabet and dimension, then lists one
//! word per line:
//!
//! ```text
//! alphabet: a b        # primed pairs a/a', b/b'; `x/y` declares a pair x, y
//! d: 2
//! a a
//! a' *
//! ```
//!
//! A tiling file gives the dimension and `2^d` translation rows in
//! half-units, each entry in `0..=3`.

use std::fmt;
use std::sync::Arc;

use polybox::tiling::{validate_tiling, TwoPeriodicTiling};
use polybox::{is_dichotomous, Alphabet, Letter, PolyboxCode, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line and column; `None` for whole-file problems.
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: Some(line), column: Some(column), message: message.into() }
    }

    fn file(message: impl Into<String>) -> ParseError {
        ParseError { line: None, column: None, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{l}:{c}: {}", self.message),
            (Some(l), None) => write!(f, "{l}: {}", self.message),
            _ => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ParseError {}

/// A content line: 1-based number, column offset of the kept text, and the
/// text with comments removed.
struct Line<'a> {
    number: usize,
    indent: usize,
    text: &'a str,
}

fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            return None;
        }
        let indent = body.chars().take_while(|c| c.is_whitespace()).count();
        Some(Line { number: k + 1, indent, text: trimmed })
    })
}

fn header<'a>(line: &Line<'a>) -> Option<(&'a str, &'a str)> {
    let (key, value) = line.text.split_once(':')?;
    let key = key.trim();
    (!key.is_empty() && key.chars().all(|c| c.is_ascii_alphabetic())).then(|| (key, value.trim()))
}

fn parse_dimension(line: &Line, value: &str) -> Result<usize, ParseError> {
    value
        .parse()
        .map_err(|_| ParseError::at(line.number, line.indent + 1, format!("invalid dimension {value:?}")))
}

/// Parse an alphabet declaration: primed bases `a b` or explicit pairs
/// `0/2 1/3`, freely mixed.
pub fn parse_alphabet(value: &str) -> Result<Alphabet, String> {
    let pairs: Vec<(String, String)> = value
        .split_whitespace()
        .map(|tok| match tok.split_once('/') {
            Some((x, y)) => (x.to_string(), y.to_string()),
            None => (tok.to_string(), format!("{tok}'")),
        })
        .collect();
    Alphabet::from_pairs(&pairs).map_err(|e| e.to_string())
}

/// Tokens of a word line with their 1-based columns. Whitespace separates
/// tokens when present; otherwise each character with its trailing primes
/// is one token.
fn tokens(line: &Line) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    let spaced = line.text.contains(char::is_whitespace);
    let mut in_token = false;
    for (k, c) in line.text.chars().enumerate() {
        let col = line.indent + k + 1;
        if c.is_whitespace() {
            in_token = false;
            continue;
        }
        let glue = if spaced { in_token } else { c == '\'' && !out.is_empty() };
        match out.last_mut() {
            Some(last) if glue => last.1.push(c),
            _ => out.push((col, c.to_string())),
        }
        in_token = true;
    }
    out
}

pub fn parse_code(text: &str) -> Result<PolyboxCode, ParseError> {
    let mut alphabet: Option<Arc<Alphabet>> = None;
    let mut dim: Option<usize> = None;
    let mut words: Vec<(usize, Word)> = Vec::new();
    for line in content_lines(text) {
        if let Some((key, value)) = header(&line) {
            if !words.is_empty() {
                return Err(ParseError::at(line.number, line.indent + 1, "header after the first word"));
            }
            match key {
                "alphabet" => {
                    let a = parse_alphabet(value).map_err(|e| ParseError::at(line.number, line.indent + 1, e))?;
                    alphabet = Some(Arc::new(a));
                }
                "d" => dim = Some(parse_dimension(&line, value)?),
                _ => return Err(ParseError::at(line.number, line.indent + 1, format!("unknown header {key:?}"))),
            }
            continue;
        }
        let Some(s) = &alphabet else {
            return Err(ParseError::at(line.number, 1, "word before the alphabet declaration"));
        };
        let mut letters = Vec::new();
        for (col, tok) in tokens(&line) {
            let l = s
                .letter(&tok)
                .ok_or_else(|| ParseError::at(line.number, col, format!("undeclared letter {tok:?}")))?;
            letters.push(l);
        }
        let d = *dim.get_or_insert(letters.len());
        if letters.len() != d {
            return Err(ParseError::at(
                line.number,
                line.indent + 1,
                format!("word has {} letters, dimension is {d}", letters.len()),
            ));
        }
        let w = Word::new(letters);
        if let Some((first, _)) = words.iter().find(|(_, u)| *u == w) {
            return Err(ParseError::at(line.number, line.indent + 1, format!("duplicate of the word on line {first}")));
        }
        if let Some((other, _)) = words.iter().find(|(_, u)| !is_dichotomous(u, &w).unwrap_or(false)) {
            return Err(ParseError::at(
                line.number,
                line.indent + 1,
                format!("not dichotomous with the word on line {other}"),
            ));
        }
        words.push((line.number, w));
    }
    let alphabet = alphabet.ok_or_else(|| ParseError::file("missing alphabet declaration"))?;
    let dim = dim.ok_or_else(|| ParseError::file("missing dimension"))?;
    PolyboxCode::new(alphabet, dim, words.into_iter().map(|(_, w)| w)).map_err(|e| ParseError::file(e.to_string()))
}

pub fn alphabet_declaration(s: &Alphabet) -> String {
    (0..s.pair_count())
        .map(|p| {
            let (x, y) = (s.name(Letter::of_pair(p, false)), s.name(Letter::of_pair(p, true)));
            if y == format!("{x}'") {
                x.to_string()
            } else {
                format!("{x}/{y}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Letters of a word separated by spaces.
pub fn spaced_word(s: &Alphabet, w: &Word) -> String {
    w.letters().iter().map(|&l| s.name(l)).collect::<Vec<_>>().join(" ")
}

pub fn serialize_code(code: &PolyboxCode) -> String {
    let s = code.alphabet();
    let mut out = format!("alphabet: {}\nd: {}\n", alphabet_declaration(s), code.dim());
    for w in code {
        out.push_str(&spaced_word(s, w));
        out.push('\n');
    }
    out
}

/// Parse a single word given on the command line.
pub fn parse_word(s: &Alphabet, dim: usize, text: &str) -> Result<Word, ParseError> {
    let line = Line { number: 1, indent: 0, text: text.trim() };
    let mut letters = Vec::new();
    for (col, tok) in tokens(&line) {
        letters.push(s.letter(&tok).ok_or_else(|| ParseError::at(1, col, format!("undeclared letter {tok:?}")))?);
    }
    if letters.len() != dim {
        return Err(ParseError::at(1, 1, format!("word has {} letters, dimension is {dim}", letters.len())));
    }
    Ok(Word::new(letters))
}

pub fn parse_tiling(text: &str) -> Result<TwoPeriodicTiling, ParseError> {
    let mut dim: Option<usize> = None;
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for line in content_lines(text) {
        if let Some((key, value)) = header(&line) {
            if key != "d" {
                return Err(ParseError::at(line.number, line.indent + 1, format!("unknown header {key:?}")));
            }
            dim = Some(parse_dimension(&line, value)?);
            continue;
        }
        let Some(d) = dim else {
            return Err(ParseError::at(line.number, 1, "row before the dimension"));
        };
        let mut row = Vec::with_capacity(d);
        let mut col = line.indent + 1;
        let mut rest = line.text;
        while !rest.is_empty() {
            let tok_len = rest.find(char::is_whitespace).unwrap_or(rest.len());
            let tok = &rest[..tok_len];
            match tok.parse::<u8>() {
                Ok(v) if v <= 3 => row.push(v),
                _ => return Err(ParseError::at(line.number, col, format!("entry {tok:?} is not in 0..=3"))),
            }
            let after = &rest[tok_len..];
            let trimmed = after.trim_start();
            col += tok_len + (after.len() - trimmed.len());
            rest = trimmed;
        }
        if row.len() != d {
            return Err(ParseError::at(line.number, line.indent + 1, format!("row has {} entries, dimension is {d}", row.len())));
        }
        rows.push(row);
    }
    let d = dim.ok_or_else(|| ParseError::file("missing dimension"))?;
    let want = 1usize.checked_shl(d as u32).unwrap_or(usize::MAX);
    if rows.len() != want {
        return Err(ParseError::file(format!("{} rows, expected 2^{d} = {want}", rows.len())));
    }
    validate_tiling(rows).map_err(|e| ParseError::file(e.to_string()))
}

pub fn serialize_tiling(t: &TwoPeriodicTiling) -> String {
    let mut out = format!("d: {}\n", t.dim());
    for row in t.translations() {
        out.push_str(&row.iter().map(u8::to_string).collect::<Vec<_>>().join(" "));
        out.push('\n');
    }
    out
}
