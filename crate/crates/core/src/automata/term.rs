use std::fmt;
use std::str::FromStr;

use super::AutomataError;

/// Ranked term, written `f(t1,...,tn)`; leaves are bare symbols.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Term {
    pub symbol: String,
    pub children: Vec<Term>,
}

impl Term {
    pub fn leaf(symbol: impl Into<String>) -> Self {
        Term {
            symbol: symbol.into(),
            children: Vec::new(),
        }
    }

    pub fn node(symbol: impl Into<String>, children: Vec<Term>) -> Self {
        Term {
            symbol: symbol.into(),
            children,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Term::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(Term::depth).max().unwrap_or(0)
    }

    /// The chain a_l(…a_1(leaf)…) for the word a_1 … a_l; unary symbols act in reading order.
    pub fn from_word<S: AsRef<str>>(word: &[S], leaf: &str) -> Term {
        word.iter()
            .fold(Term::leaf(leaf), |t, a| Term::node(a.as_ref(), vec![t]))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol)?;
        if !self.children.is_empty() {
            write!(f, "(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl FromStr for Term {
    type Err = AutomataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let t = parse(&toks, &mut pos).map_err(|e| AutomataError::Term(format!("{e} in {s:?}")))?;
        if pos != toks.len() {
            return Err(AutomataError::Term(format!("trailing input in {s:?}")));
        }
        Ok(t)
    }
}

fn parse(toks: &[char], pos: &mut usize) -> Result<Term, String> {
    let start = *pos;
    while *pos < toks.len() && !matches!(toks[*pos], '(' | ')' | ',') {
        *pos += 1;
    }
    if *pos == start {
        return Err(format!("expected a symbol at position {start}"));
    }
    let symbol: String = toks[start..*pos].iter().collect();
    let mut children = Vec::new();
    if toks.get(*pos) == Some(&'(') {
        *pos += 1;
        loop {
            children.push(parse(toks, pos)?);
            match toks.get(*pos) {
                Some(',') => *pos += 1,
                Some(')') => {
                    *pos += 1;
                    break;
                }
                _ => return Err("unclosed parenthesis".into()),
            }
        }
    }
    Ok(Term { symbol, children })
}
