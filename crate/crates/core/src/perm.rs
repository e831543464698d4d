//! Permutations of the point set `{0, .., n-1}`.
//!
//! Composition is **left to right**: `f.compose(&g)` is the map `x -> (x f) g`,
//! i.e. apply `f` first and then `g`. The product of a sequence
//! `<s0, s1, .., sk>` therefore applies `s0` first. Most permutation libraries
//! use the opposite convention; every product in this crate follows this one.
//!
//! ```
//! use permgraph::perm::{compose_sequence, Permutation};
//!
//! let a = Permutation::parse_cycles("(0 1)", 3).unwrap();
//! let b = Permutation::parse_cycles("(1 2)", 3).unwrap();
//! // 0 -> 1 -> 2, 2 -> 2 -> 1, 1 -> 0 -> 0
//! assert_eq!(compose_sequence(&[a, b], 3).unwrap().to_string(), "(0 2 1)");
//! ```

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parity class of a permutation: `Even` is `Alt(n)`, `Odd` its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_len(len: usize) -> Parity {
        if len.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A total bijection of `{0, .., n-1}`, stored as its image array.
///
/// Equality, hashing and ordering use the image array, so two permutations of
/// different degree are never equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from `images[x] = x f`.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || seen[y] {
                return Err(Error::NotABijection(n));
            }
            seen[y] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Permutation {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles, each listed in mapping
    /// order: `[a, b, c]` sends `a -> b -> c -> a`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if used[x] {
                    return Err(Error::domain(format!(
                        "point {x} repeated in cycle notation"
                    )));
                }
                used[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Permutation> {
        Transposition::new(a, b)?.to_permutation(degree)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// The image `x f`.
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// `self ∘ g`: apply `self`, then `g`.
    pub fn compose(&self, g: &Permutation) -> Result<Permutation> {
        if self.degree() != g.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: g.degree(),
            });
        }
        Ok(self.compose_unchecked(g))
    }

    pub(crate) fn compose_unchecked(&self, g: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&y| g.images[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    /// `g⁻ ∘ self ∘ g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Permutation> {
        g.inverse().compose(self)?.compose(g)
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut out = Permutation::identity(self.degree());
        for _ in 0..k {
            out = out.compose_unchecked(self);
        }
        out
    }

    /// Nontrivial cycles in mapping order, each starting at its least point,
    /// sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Lengths of all cycles, fixed points included as 1-cycles.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x];
            }
            out.push(len);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.degree(), self.cycle_lengths())
    }

    pub fn parity(&self) -> Parity {
        self.cycle_type().parity()
    }

    /// `supp(f)`: the points moved by `f`.
    pub fn support(&self) -> BTreeSet<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x != y)
            .map(|(x, _)| x)
            .collect()
    }

    /// Conjugacy in `Sym(n)`, decided by cycle type.
    pub fn is_conjugate(&self, other: &Permutation) -> Result<bool> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.cycle_type() == other.cycle_type())
    }

    /// Parses cycle notation such as `(0 1)(2 3 4)`; `()` is the identity.
    /// Points are separated by whitespace or commas. The degree is never
    /// inferred.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
        let mut cycles = Vec::new();
        let mut chars = text.char_indices().peekable();
        let mut saw_group = false;
        while let Some(&(pos, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if c != '(' {
                return Err(Error::parse(
                    1,
                    pos + 1,
                    format!("expected `(`, found `{c}`"),
                ));
            }
            chars.next();
            saw_group = true;
            let mut body = String::new();
            let mut closed = false;
            let body_start = pos + 2;
            for (_, c) in chars.by_ref() {
                if c == ')' {
                    closed = true;
                    break;
                }
                body.push(c);
            }
            if !closed {
                return Err(Error::parse(1, pos + 1, "unclosed `(`"));
            }
            let mut cycle = Vec::new();
            let mut offset = 0;
            for token in body.split(|c: char| c.is_whitespace() || c == ',') {
                if !token.is_empty() {
                    let column = body_start + body[offset..].find(token).unwrap_or(0) + offset;
                    let x: usize = token.parse().map_err(|_| {
                        Error::parse(1, column, format!("`{token}` is not a point"))
                    })?;
                    if x >= degree {
                        return Err(Error::parse(
                            1,
                            column,
                            format!("point {x} out of range for degree {degree}"),
                        ));
                    }
                    cycle.push(x);
                }
                offset += token.len() + 1;
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        if !saw_group {
            return Err(Error::parse(
                1,
                1,
                "empty cycle notation; write `()` for the identity",
            ));
        }
        Permutation::from_cycles(degree, &cycles).map_err(|e| Error::parse(1, 1, e.to_string()))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in Sym({})", self.degree())
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.images.cmp(&other.images)
    }
}

/// Left-to-right composition; panics on degree mismatch.
impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
            .expect("degree mismatch in permutation product")
    }
}

/// An unordered transposition `(a b)`, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transposition {
    a: usize,
    b: usize,
}

impl Transposition {
    pub fn new(a: usize, b: usize) -> Result<Transposition> {
        match a.cmp(&b) {
            Ordering::Less => Ok(Transposition { a, b }),
            Ordering::Greater => Ok(Transposition { a: b, b: a }),
            Ordering::Equal => Err(Error::EqualPoints(a)),
        }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.a == x || self.b == x
    }

    /// The endpoint other than `x`, if `x` is an endpoint.
    pub fn other(&self, x: usize) -> Option<usize> {
        if x == self.a {
            Some(self.b)
        } else if x == self.b {
            Some(self.a)
        } else {
            None
        }
    }

    /// Image of `x` under the transposition.
    pub fn apply(&self, x: usize) -> usize {
        self.other(x).unwrap_or(x)
    }

    pub fn to_permutation(&self, degree: usize) -> Result<Permutation> {
        if self.b >= degree {
            return Err(Error::PointOutOfRange {
                point: self.b,
                degree,
            });
        }
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(self.a, self.b);
        Ok(Permutation { images })
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.a, self.b)
    }
}

/// The multiset of cycle lengths, written `1^e(1) 2^e(2) ..`.
///
/// `exponents[j - 1]` is the number of `j`-cycles, fixed points included.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    exponents: Vec<usize>,
}

impl CycleType {
    pub fn from_lengths(degree: usize, lengths: impl IntoIterator<Item = usize>) -> CycleType {
        let mut exponents = vec![0; degree];
        for len in lengths {
            exponents[len - 1] += 1;
        }
        debug_assert_eq!(
            exponents
                .iter()
                .enumerate()
                .map(|(j, e)| (j + 1) * e)
                .sum::<usize>(),
            degree
        );
        CycleType { exponents }
    }

    /// Builds a type from `(length, count)` pairs; fixed points are filled in.
    pub fn from_exponents(degree: usize, pairs: &[(usize, usize)]) -> Result<CycleType> {
        let mut exponents = vec![0; degree];
        let mut moved = 0;
        for &(len, count) in pairs {
            if len == 0 || len > degree {
                return Err(Error::domain(format!(
                    "cycle length {len} invalid for degree {degree}"
                )));
            }
            exponents[len - 1] += count;
            moved += len * count;
        }
        if moved > degree {
            return Err(Error::domain(format!(
                "cycle lengths sum past degree {degree}"
            )));
        }
        if degree > moved {
            exponents[0] += degree - moved;
        }
        Ok(CycleType { exponents })
    }

    pub fn degree(&self) -> usize {
        self.exponents
            .iter()
            .enumerate()
            .map(|(j, e)| (j + 1) * e)
            .sum()
    }

    /// Number of `len`-cycles.
    pub fn exponent(&self, len: usize) -> usize {
        if len == 0 {
            0
        } else {
            self.exponents.get(len - 1).copied().unwrap_or(0)
        }
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn parity(&self) -> Parity {
        let transpositions: usize = self.exponents.iter().enumerate().map(|(j, e)| j * e).sum();
        Parity::of_len(transpositions)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}^{}", j + 1, e)?;
        }
        if first {
            f.write_str("-")?;
        }
        Ok(())
    }
}

impl Serialize for CycleType {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The product `s0 ∘ s1 ∘ .. ∘ sk` (left to right); identity for no terms.
pub fn compose_sequence(terms: &[Permutation], degree: usize) -> Result<Permutation> {
    let mut acc = Permutation::identity(degree);
    for term in terms {
        acc = acc.compose(term)?;
    }
    Ok(acc)
}

/// Product of a list of transpositions acting on `degree` points.
pub fn compose_transpositions(terms: &[Transposition], degree: usize) -> Result<Permutation> {
    let mut images: Vec<usize> = (0..degree).collect();
    for t in terms {
        if t.b() >= degree {
            return Err(Error::PointOutOfRange {
                point: t.b(),
                degree,
            });
        }
        for y in images.iter_mut() {
            *y = t.apply(*y);
        }
    }
    Ok(Permutation { images })
}
