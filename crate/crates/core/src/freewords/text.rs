//! Word text format.
//!
//! Generators are `a, b, c, ...` (or `x1, x2, ...`); an uppercase letter or
//! `X1` is the inverse; `^n` / `^-n` raise the preceding letter or
//! parenthesized group to a power. `1` is the empty word. Whitespace, `*` and
//! `.` are ignored between factors.
//!
//! ```
//! use freelike::freewords::Word;
//! let w = Word::parse("ab^2 (ba)^-1 x1^3", 2).unwrap();
//! assert_eq!(w.to_string(), "ab^2ABa^3");
//! ```

use std::fmt;

use super::{Letter, Word, MAX_RANK};
use crate::error::{Error, Result};

/// Anything that can print itself in word text format.
pub trait WordText {
    fn to_text(&self) -> String;
}

impl WordText for Word {
    fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let alphabetic = self.rank <= 26;
        let mut i = 0;
        let mut first = true;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if alphabetic {
                let c = (b'a' + l.index() as u8) as char;
                match (l.is_positive(), run) {
                    (true, 1) => write!(f, "{c}")?,
                    (false, 1) => write!(f, "{}", c.to_ascii_uppercase())?,
                    (true, _) => write!(f, "{c}^{run}")?,
                    (false, _) => write!(f, "{}^{run}", c.to_ascii_uppercase())?,
                }
            } else {
                if !first {
                    f.write_str(" ")?;
                }
                let sign = if l.is_positive() { "" } else { "-" };
                if run == 1 && l.is_positive() {
                    write!(f, "x{}", l.index() + 1)?;
                } else {
                    write!(f, "x{}^{sign}{run}", l.index() + 1)?;
                }
            }
            first = false;
            i += run;
        }
        Ok(())
    }
}

const MAX_PARSED_LETTERS: u128 = 50_000_000;

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
    rank: usize,
    max_index: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str, rank: usize) -> Parser<'a> {
        Parser {
            input,
            chars: input.chars().collect(),
            pos: 0,
            rank,
            max_index: 0,
        }
    }

    fn fail<T>(&self, reason: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            input: self.input.to_string(),
            reason: format!("{} (at offset {})", reason.into(), self.pos),
        })
    }

    fn skip_separators(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_whitespace() || c == '*' || c == '.' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .ok()
    }

    fn letter(&mut self, index: usize, positive: bool) -> Result<Vec<Letter>> {
        if index > MAX_RANK {
            return self.fail(format!("generator index {} too large", index + 1));
        }
        self.max_index = self.max_index.max(index);
        if index >= self.rank {
            return Err(Error::LetterOutOfRange {
                index,
                rank: self.rank,
            });
        }
        Ok(vec![Letter::new(index, positive)])
    }

    /// Parses factors until end of input or a closing parenthesis.
    fn sequence(&mut self, depth: usize) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        loop {
            self.skip_separators();
            match self.peek() {
                None => {
                    if depth > 0 {
                        return self.fail("unclosed parenthesis");
                    }
                    return Ok(out);
                }
                Some(')') => {
                    if depth == 0 {
                        return self.fail("unbalanced ')'");
                    }
                    return Ok(out);
                }
                Some(_) => {
                    let atom = self.atom(depth)?;
                    let power = self.power()?;
                    let grow = (atom.len() as u128) * u128::from(power.unsigned_abs());
                    if out.len() as u128 + grow > MAX_PARSED_LETTERS {
                        return self.fail("word too long");
                    }
                    apply_power(&mut out, &atom, power);
                }
            }
        }
    }

    fn atom(&mut self, depth: usize) -> Result<Vec<Letter>> {
        let c = self.peek().expect("caller checked");
        self.pos += 1;
        match c {
            '(' => {
                let inner = self.sequence(depth + 1)?;
                self.pos += 1; // ')'
                Ok(inner)
            }
            '1' => Ok(Vec::new()),
            'x' | 'X' if self.peek().is_some_and(|d| d.is_ascii_digit()) => {
                let n = self.number().unwrap_or(0);
                if n == 0 {
                    return self.fail("variables are numbered from x1");
                }
                self.letter(n as usize - 1, c == 'x')
            }
            c if c.is_ascii_lowercase() => self.letter((c as u8 - b'a') as usize, true),
            c if c.is_ascii_uppercase() => self.letter((c as u8 - b'A') as usize, false),
            other => {
                self.pos -= 1;
                self.fail(format!("unexpected character {other:?}"))
            }
        }
    }

    fn power(&mut self) -> Result<i64> {
        self.skip_whitespace();
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_whitespace();
        let negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        match self.number() {
            Some(n) if n <= i64::MAX as u64 => Ok(if negative { -(n as i64) } else { n as i64 }),
            _ => self.fail("expected an exponent after '^'"),
        }
    }

    fn skip_whitespace(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }
}

fn apply_power(out: &mut Vec<Letter>, atom: &[Letter], power: i64) {
    let piece: Vec<Letter> = if power < 0 {
        atom.iter().rev().map(|l| l.inverse()).collect()
    } else {
        atom.to_vec()
    };
    for _ in 0..power.unsigned_abs() {
        out.extend_from_slice(&piece);
    }
}

impl Word {
    /// Parses a word over an alphabet of the given rank.
    pub fn parse(input: &str, rank: usize) -> Result<Word> {
        let mut parser = Parser::new(input, rank);
        let raw = parser.sequence(0)?;
        Word::reduce(raw, rank)
    }

    /// Parses a word, taking the rank to be the largest generator mentioned
    /// (and at least 2).
    pub fn parse_infer(input: &str) -> Result<Word> {
        let mut parser = Parser::new(input, MAX_RANK + 1);
        let raw = parser.sequence(0)?;
        let rank = (parser.max_index + 1).max(2);
        Word::reduce(raw, rank)
    }
}

/// Splits a comma-separated list of words (commas inside parentheses are not
/// separators) and parses each over `rank`.
pub fn parse_word_list(input: &str, rank: usize) -> Result<Vec<Word>> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in input.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                items.push(&input[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    items.push(&input[start..]);
    items
        .into_iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| Word::parse(s.trim(), rank))
        .collect()
}
