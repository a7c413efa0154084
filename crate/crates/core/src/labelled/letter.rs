use std::fmt;
use std::str::FromStr;

use super::LabelledError;

/// Symbol of the tree alphabet standing for the all-isolated labelled graph.
pub const LEAF_SYMBOL: &str = "1";
/// Symbol of the tree alphabet for gluing.
pub const GLUE_SYMBOL: &str = "glue";
/// Largest supported number of labels; keeps the one-digit letter syntax unambiguous.
pub const MAX_LABELS: usize = 9;

/// Generator letter with 0-based label indices. Serialised 1-based as `A{i}{j}` / `J{i}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    /// Edge between labels i and j (arc i -> j when directed, a loop when i = j).
    Edge(usize, usize),
    /// Move label i to a fresh vertex.
    Forget(usize),
}

impl Letter {
    pub fn is_valid(&self, k: usize, directed: bool) -> bool {
        match *self {
            Letter::Edge(i, j) => i < k && j < k && (directed || i < j),
            Letter::Forget(i) => i < k,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Edge(i, j) => write!(f, "A{}{}", i + 1, j + 1),
            Letter::Forget(i) => write!(f, "J{}", i + 1),
        }
    }
}

impl FromStr for Letter {
    type Err = LabelledError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LabelledError::Letter(s.to_string());
        let digit = |c: char| -> Result<usize, LabelledError> {
            match c.to_digit(10) {
                Some(d) if d >= 1 => Ok(d as usize - 1),
                _ => Err(bad()),
            }
        };
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest: Vec<char> = chars.collect();
        match (head, rest.as_slice()) {
            ('A', [a, b]) => Ok(Letter::Edge(digit(*a)?, digit(*b)?)),
            ('J', [a]) => Ok(Letter::Forget(digit(*a)?)),
            _ => Err(bad()),
        }
    }
}

/// The generator alphabet in its fixed order: edge letters in lexicographic order (pairs
/// i < j when undirected, all ordered pairs including loops when directed), then J1..Jk.
pub fn letters(k: usize, directed: bool) -> Vec<Letter> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if directed || i < j {
                out.push(Letter::Edge(i, j));
            }
        }
    }
    out.extend((0..k).map(Letter::Forget));
    out
}

/// Parses a word written as letters separated by whitespace or commas; `ε` or an empty
/// string is the empty word.
pub fn parse_word(s: &str) -> Result<Vec<Letter>, LabelledError> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty() && *t != "ε")
        .map(str::parse)
        .collect()
}

pub fn format_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    w.iter().map(Letter::to_string).collect::<Vec<_>>().join(" ")
}
