use std::fmt;
use std::str::FromStr;

use super::ProductError;

/// A generator of one factor. `factor` is 0-based here and 1-based in text.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub factor: usize,
    pub symbol: String,
}

impl Letter {
    pub fn new(factor: usize, symbol: impl Into<String>) -> Self {
        Letter {
            factor,
            symbol: symbol.into(),
        }
    }
}

/// A product of letters, written `1:a,2:b,1:a`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl FromStr for Word {
    type Err = ProductError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(Word::default());
        }
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in s.split(',') {
            let position = offset + (token.len() - token.trim_start().len());
            offset += token.len() + 1;
            let token = token.trim();
            let err = |reason: &str| ProductError::WordSyntax {
                position,
                reason: reason.to_string(),
            };
            let (factor, symbol) = token
                .split_once(':')
                .ok_or_else(|| err("expected `factor:symbol`"))?;
            let factor: usize = factor
                .trim()
                .parse()
                .map_err(|_| err("factor is not a positive integer"))?;
            if factor == 0 {
                return Err(err("factors are numbered from 1"));
            }
            let symbol = symbol.trim();
            if symbol.is_empty() {
                return Err(err("empty symbol"));
            }
            letters.push(Letter::new(factor - 1, symbol));
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", l.factor + 1, l.symbol)?;
        }
        Ok(())
    }
}
