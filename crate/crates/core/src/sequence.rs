//! Finite sequences of permutations and of transpositions, plus their text
//! format.
//!
//! The text format has one term per line, either a transposition `a b` or a
//! permutation in cycle notation `(0 1 2)`. `#` starts a comment, an optional
//! `n <N>` line fixes the degree, and the order of lines is the order of the
//! sequence.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{compose_sequence, compose_transpositions, Permutation, Transposition};

/// Anything that can be read as a sequence of permutations of one degree.
pub trait Sequence {
    fn degree(&self) -> usize;
    fn len(&self) -> usize;
    fn permutation_terms(&self) -> Vec<Permutation>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// An ordered sequence of transpositions on `{0, .., n-1}`; repeats allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TranspSequence {
    degree: usize,
    terms: Vec<Transposition>,
}

impl TranspSequence {
    pub fn new(degree: usize, terms: Vec<Transposition>) -> Result<TranspSequence> {
        if let Some(t) = terms.iter().find(|t| t.b() >= degree) {
            return Err(Error::PointOutOfRange {
                point: t.b(),
                degree,
            });
        }
        Ok(TranspSequence { degree, terms })
    }

    pub fn empty(degree: usize) -> TranspSequence {
        TranspSequence {
            degree,
            terms: Vec::new(),
        }
    }

    pub fn from_pairs(degree: usize, pairs: &[(usize, usize)]) -> Result<TranspSequence> {
        let terms = pairs
            .iter()
            .map(|&(a, b)| Transposition::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        TranspSequence::new(degree, terms)
    }

    pub fn terms(&self) -> &[Transposition] {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The compositional product, applied left to right.
    pub fn product(&self) -> Permutation {
        compose_transpositions(&self.terms, self.degree).expect("terms are range-checked")
    }

    pub fn is_injective(&self) -> bool {
        let mut sorted = self.terms.clone();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    pub fn push(&mut self, t: Transposition) -> Result<()> {
        if t.b() >= self.degree {
            return Err(Error::PointOutOfRange {
                point: t.b(),
                degree: self.degree,
            });
        }
        self.terms.push(t);
        Ok(())
    }

    /// Appends `m` adjacent copies of `t`.
    pub fn push_block(&mut self, t: Transposition, m: usize) -> Result<()> {
        for _ in 0..m {
            self.push(t)?;
        }
        Ok(())
    }

    pub fn reversed(&self) -> TranspSequence {
        let mut terms = self.terms.clone();
        terms.reverse();
        TranspSequence {
            degree: self.degree,
            terms,
        }
    }

    /// The cyclic conjugate starting at term `i`.
    pub fn rotated(&self, i: usize) -> TranspSequence {
        let mut terms = self.terms.clone();
        if !terms.is_empty() {
            let k = i % terms.len();
            terms.rotate_left(k);
        }
        TranspSequence {
            degree: self.degree,
            terms,
        }
    }

    /// The subsequence with term `i` removed.
    pub fn without(&self, i: usize) -> TranspSequence {
        let mut terms = self.terms.clone();
        terms.remove(i);
        TranspSequence {
            degree: self.degree,
            terms,
        }
    }

    /// Same terms viewed on a larger point set.
    pub fn with_degree(&self, degree: usize) -> Result<TranspSequence> {
        TranspSequence::new(degree, self.terms.clone())
    }

    /// Terms whose support contains `v`, in order.
    pub fn terms_at(&self, v: usize) -> Vec<Transposition> {
        self.terms
            .iter()
            .copied()
            .filter(|t| t.contains(v))
            .collect()
    }

    pub fn to_perm_sequence(&self) -> PermSequence {
        PermSequence {
            degree: self.degree,
            terms: self.permutation_terms(),
        }
    }

    /// Serializes in the sequence text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.degree);
        for t in &self.terms {
            out.push_str(&format!("{} {}\n", t.a(), t.b()));
        }
        out
    }
}

impl Sequence for TranspSequence {
    fn degree(&self) -> usize {
        self.degree
    }

    fn len(&self) -> usize {
        self.terms.len()
    }

    fn permutation_terms(&self) -> Vec<Permutation> {
        self.terms
            .iter()
            .map(|t| {
                t.to_permutation(self.degree)
                    .expect("terms are range-checked")
            })
            .collect()
    }
}

impl fmt::Display for TranspSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(">")
    }
}

/// An ordered sequence of arbitrary permutations of one degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermSequence {
    degree: usize,
    terms: Vec<Permutation>,
}

impl PermSequence {
    pub fn new(degree: usize, terms: Vec<Permutation>) -> Result<PermSequence> {
        if let Some(t) = terms.iter().find(|t| t.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: t.degree(),
            });
        }
        Ok(PermSequence { degree, terms })
    }

    /// Parses each term from cycle notation.
    pub fn from_cycles(degree: usize, terms: &[&str]) -> Result<PermSequence> {
        let terms = terms
            .iter()
            .map(|t| Permutation::parse_cycles(t, degree))
            .collect::<Result<Vec<_>>>()?;
        PermSequence::new(degree, terms)
    }

    pub fn terms(&self) -> &[Permutation] {
        &self.terms
    }

    pub fn product(&self) -> Permutation {
        compose_sequence(&self.terms, self.degree).expect("degrees are checked")
    }

    /// The transpositional view, when every term is a transposition.
    pub fn as_transpositional(&self) -> Option<TranspSequence> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for p in &self.terms {
            let cycles = p.cycles();
            if cycles.len() != 1 || cycles[0].len() != 2 {
                return None;
            }
            terms.push(Transposition::new(cycles[0][0], cycles[0][1]).ok()?);
        }
        Some(TranspSequence {
            degree: self.degree,
            terms,
        })
    }
}

impl Sequence for PermSequence {
    fn degree(&self) -> usize {
        self.degree
    }

    fn len(&self) -> usize {
        self.terms.len()
    }

    fn permutation_terms(&self) -> Vec<Permutation> {
        self.terms.clone()
    }
}

impl fmt::Display for PermSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(">")
    }
}

/// Result of parsing the sequence text format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedSequence {
    pub sequence: PermSequence,
    /// True when neither an `n` line nor a caller-supplied degree fixed the
    /// degree and it was taken as one past the largest point.
    pub degree_inferred: bool,
}

impl ParsedSequence {
    pub fn transpositional(&self) -> Option<TranspSequence> {
        self.sequence.as_transpositional()
    }
}

enum RawTerm {
    Pair(usize, usize),
    Cycles(String, usize),
}

/// Parses the sequence text format. `degree` is used when the text has no
/// `n` line; if both are absent the degree is inferred and flagged.
pub fn parse_sequence(text: &str, degree: Option<usize>) -> Result<ParsedSequence> {
    let mut header: Option<usize> = None;
    let mut raw: Vec<(usize, RawTerm)> = Vec::new();
    let mut max_point: Option<usize> = None;

    for (idx, full_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = full_line.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        if trimmed.starts_with('(') {
            let mut points = Vec::new();
            for tok in
                trimmed.split(|c: char| c == '(' || c == ')' || c == ',' || c.is_whitespace())
            {
                if tok.is_empty() {
                    continue;
                }
                let col = indent + trimmed.find(tok).unwrap_or(0) + 1;
                let x: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(line_no, col, format!("`{tok}` is not a point")))?;
                points.push(x);
            }
            if let Some(&m) = points.iter().max() {
                max_point = Some(max_point.map_or(m, |p| p.max(m)));
            }
            raw.push((line_no, RawTerm::Cycles(trimmed.to_string(), indent)));
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 {
                return Err(Error::parse(line_no, indent + 1, "expected `n <N>`"));
            }
            if header.is_some() || !raw.is_empty() {
                return Err(Error::parse(
                    line_no,
                    indent + 1,
                    "`n` line must come first",
                ));
            }
            let n = tokens[1]
                .parse()
                .map_err(|_| Error::parse(line_no, indent + 3, "degree is not a number"))?;
            header = Some(n);
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::parse(
                line_no,
                indent + 1,
                format!("expected `a b`, found {} fields", tokens.len()),
            ));
        }
        let mut pts = [0usize; 2];
        for (k, tok) in tokens.iter().enumerate() {
            let col = indent + trimmed.find(tok).unwrap_or(0) + 1;
            pts[k] = tok
                .parse()
                .map_err(|_| Error::parse(line_no, col, format!("`{tok}` is not a point")))?;
        }
        if pts[0] == pts[1] {
            return Err(Error::parse(
                line_no,
                indent + 1,
                "transposition needs distinct points",
            ));
        }
        let m = pts[0].max(pts[1]);
        max_point = Some(max_point.map_or(m, |p| p.max(m)));
        raw.push((line_no, RawTerm::Pair(pts[0], pts[1])));
    }

    let (n, inferred) = match (header, degree) {
        (Some(n), _) => (n, false),
        (None, Some(n)) => (n, false),
        (None, None) => (max_point.map_or(0, |m| m + 1), true),
    };

    let mut terms = Vec::with_capacity(raw.len());
    for (line_no, term) in raw {
        let p = match term {
            RawTerm::Pair(a, b) => {
                if a.max(b) >= n {
                    return Err(Error::parse(
                        line_no,
                        1,
                        format!("point {} out of range for degree {n}", a.max(b)),
                    ));
                }
                Permutation::transposition(n, a, b)?
            }
            RawTerm::Cycles(text, indent) => {
                Permutation::parse_cycles(&text, n).map_err(|e| match e {
                    Error::Parse {
                        column, message, ..
                    } => Error::Parse {
                        line: line_no,
                        column: column + indent,
                        message,
                    },
                    other => other,
                })?
            }
        };
        terms.push(p);
    }
    Ok(ParsedSequence {
        sequence: PermSequence::new(n, terms)?,
        degree_inferred: inferred,
    })
}
