use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PartitionError;

/// One of the two faces of a two-faced algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    Left,
    Right,
}

impl Face {
    pub const BOTH: [Face; 2] = [Face::Left, Face::Right];

    pub fn swapped(self) -> Face {
        match self {
            Face::Left => Face::Right,
            Face::Right => Face::Left,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Face::Left => 'l',
            Face::Right => 'r',
        }
    }

    pub fn from_char(c: char) -> Option<Face> {
        match c {
            'l' => Some(Face::Left),
            'r' => Some(Face::Right),
            _ => None,
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_char(self.as_char())
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        match text.as_str() {
            "l" | "left" => Ok(Face::Left),
            "r" | "right" => Ok(Face::Right),
            _ => Err(serde::de::Error::custom(format!("invalid face `{text}`"))),
        }
    }
}

/// A word over `{l, r}` assigning a face to each point of the ground set.
///
/// Text form is a string of `l` and `r`, e.g. `rrrlll`; the empty string is
/// the empty pattern.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Vec<Face>);

impl Pattern {
    pub fn new(faces: Vec<Face>) -> Self {
        Pattern(faces)
    }

    pub fn constant(face: Face, len: usize) -> Self {
        Pattern(vec![face; len])
    }

    pub fn faces(&self) -> &[Face] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// Pattern read back to front.
    pub fn reversed(&self) -> Pattern {
        Pattern(self.0.iter().rev().copied().collect())
    }

    /// Pattern with left and right exchanged.
    pub fn swapped(&self) -> Pattern {
        Pattern(self.0.iter().map(|f| f.swapped()).collect())
    }

    pub fn slice(&self, start: usize, end: usize) -> Pattern {
        Pattern(self.0[start..end].to_vec())
    }

    /// All `2^len` patterns of the given length, in lexicographic order (`l < r`).
    pub fn all(len: usize) -> impl Iterator<Item = Pattern> {
        assert!(len < 64, "pattern length {len} too large to enumerate");
        (0u64..1u64 << len).map(move |bits| {
            Pattern(
                (0..len)
                    .map(|pos| {
                        if bits >> (len - 1 - pos) & 1 == 1 {
                            Face::Right
                        } else {
                            Face::Left
                        }
                    })
                    .collect(),
            )
        })
    }
}

impl std::ops::Index<usize> for Pattern {
    type Output = Face;

    fn index(&self, idx: usize) -> &Face {
        &self.0[idx]
    }
}

impl FromStr for Pattern {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(position, c)| {
                Face::from_char(c).ok_or(PartitionError::InvalidPattern { position, found: c })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Pattern)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for face in &self.0 {
            write!(f, "{}", face.as_char())?;
        }
        Ok(())
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
