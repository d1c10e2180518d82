//! Text form of Fock-model words: `B[0,1]^4`, `Bl[0,1/2] Br[1/2,1]`.

use bimono::fock::{FockError, Grid, IntervalOp, OpKind};
use bimono::numbers::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordError {
    pub position: usize,
    pub reason: String,
}

/// One operator with its support `[s, t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: OpKind,
    pub start: Rational,
    pub end: Rational,
}

const KINDS: [&str; 7] = ["L+", "L-", "R+", "R-", "Bl", "Br", "B"];

/// Parses a whitespace-separated list of `KIND[s,t]` tokens, each optionally
/// followed by `^k`. Powers are expanded.
pub fn parse_word(text: &str) -> Result<Vec<Token>, WordError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    let err = |position: usize, reason: &str| WordError {
        position,
        reason: reason.to_string(),
    };
    loop {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos == bytes.len() {
            break;
        }
        let rest = &text[pos..];
        let kind_text = KINDS
            .iter()
            .find(|k| rest.starts_with(*k))
            .ok_or_else(|| err(pos, "expected one of L+ L- R+ R- Bl Br B"))?;
        let kind = OpKind::from_token(kind_text).expect("known token");
        pos += kind_text.len();
        if bytes.get(pos) != Some(&b'[') {
            return Err(err(pos, "expected `[`"));
        }
        let close = text[pos..]
            .find(']')
            .map(|i| pos + i)
            .ok_or_else(|| err(pos, "missing `]`"))?;
        let inner = &text[pos + 1..close];
        let comma = inner
            .find(',')
            .ok_or_else(|| err(pos + 1, "expected `s,t`"))?;
        let start = parse_rational(&inner[..comma]).map_err(|e| err(pos + 1, &e.to_string()))?;
        let end = parse_rational(&inner[comma + 1..])
            .map_err(|e| err(pos + 2 + comma, &e.to_string()))?;
        if start >= end {
            return Err(err(pos + 1, "empty interval: need s < t"));
        }
        pos = close + 1;
        let mut power = 1usize;
        if bytes.get(pos) == Some(&b'^') {
            let digits = text[pos + 1..]
                .chars()
                .take_while(|c| c.is_ascii_digit())
                .count();
            if digits == 0 {
                return Err(err(pos + 1, "expected an exponent"));
            }
            power = text[pos + 1..pos + 1 + digits]
                .parse()
                .map_err(|_| err(pos + 1, "exponent too large"))?;
            pos += 1 + digits;
        }
        if pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            return Err(err(pos, "expected whitespace between operators"));
        }
        for _ in 0..power {
            out.push(Token {
                kind,
                start: start.clone(),
                end: end.clone(),
            });
        }
    }
    Ok(out)
}

/// The grid spanned by all interval endpoints of `tokens`.
pub fn auto_grid(tokens: &[Token]) -> Result<Grid, FockError> {
    let mut points: Vec<Rational> = tokens
        .iter()
        .flat_map(|t| [t.start.clone(), t.end.clone()])
        .collect();
    points.sort();
    points.dedup();
    if points.len() < 2 {
        return Grid::new(vec![
            Rational::from_integer(0.into()),
            Rational::from_integer(1.into()),
        ]);
    }
    Grid::new(points)
}

pub fn to_ops(tokens: &[Token], grid: &Grid) -> Result<Vec<IntervalOp>, FockError> {
    tokens
        .iter()
        .map(|t| IntervalOp::between(t.kind, grid, &t.start, &t.end))
        .collect()
}
