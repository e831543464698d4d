//! Named sequences and graph families.
//!
//! ```
//! use permgraph::construct::{circuit_realizer, circuit_target, NumberSeq};
//!
//! let h = NumberSeq::new(vec![0, 2]).unwrap();
//! let f = circuit_realizer(&h, 4).unwrap();
//! assert_eq!(f.product(), circuit_target(&h, 4).unwrap());
//! assert_eq!(f.product().to_string(), "(0 2)(1 3)");
//! ```

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;
use crate::perm::{Permutation, Transposition};
use crate::sequence::{PermSequence, TranspSequence};

/// An injective list of points, such as `ν(n) = ⟨0, 1, .., n-1⟩` or one of
/// its subsequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumberSeq {
    points: Vec<usize>,
}

impl NumberSeq {
    pub fn new(points: Vec<usize>) -> Result<NumberSeq> {
        let mut seen = BTreeSet::new();
        for &p in &points {
            if !seen.insert(p) {
                return Err(Error::domain(format!(
                    "point {p} repeats in a number sequence"
                )));
            }
        }
        Ok(NumberSeq { points })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn reversed(&self) -> NumberSeq {
        NumberSeq {
            points: self.points.iter().rev().copied().collect(),
        }
    }

    /// Whether this is a subsequence of `ν(n)`: increasing and below `n`.
    pub fn is_subsequence_of_nu(&self, n: usize) -> bool {
        self.points.windows(2).all(|w| w[0] < w[1]) && self.points.iter().all(|&p| p < n)
    }

    /// `ν(n) ∖ self`, in increasing order.
    pub fn complement(&self, n: usize) -> NumberSeq {
        NumberSeq {
            points: (0..n).filter(|p| !self.points.contains(p)).collect(),
        }
    }

    /// The cycle `(p₀ p₁ ⋯)` in `Sym(n)`; a singleton is the identity.
    pub fn cycle(&self, n: usize) -> Result<Permutation> {
        Permutation::from_cycles(n, std::slice::from_ref(&self.points))
    }
}

impl fmt::Display for NumberSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// `ν(n) = ⟨0, 1, .., n-1⟩`.
pub fn nu(n: usize) -> NumberSeq {
    NumberSeq {
        points: (0..n).collect(),
    }
}

fn t(a: usize, b: usize) -> Transposition {
    Transposition::new(a, b).expect("distinct points")
}

/// `τ(n) = ⟨(0 1), (1 2), .., (n-2 n-1)⟩`, a path.
pub fn tau(n: usize) -> Result<TranspSequence> {
    if n < 2 {
        return Err(Error::domain("tau(n) needs n >= 2"));
    }
    TranspSequence::new(n, (1..n).map(|i| t(i - 1, i)).collect())
}

/// `σ(n) = ⟨τ(n), (n-1 0)⟩`, a circuit.
pub fn sigma(n: usize) -> Result<TranspSequence> {
    if n < 3 {
        return Err(Error::domain("sigma(n) needs n >= 3"));
    }
    let mut s = tau(n)?;
    s.push(t(0, n - 1))?;
    Ok(s)
}

/// `B_n` on `n + 2` vertices: the axle `(0 1)` and spokes `(0 i)`, `(1 i)`.
pub fn bike(n: usize) -> Multigraph {
    let mut g = Multigraph::new(n + 2);
    g.add_edge(0, 1, 1).expect("in range");
    for i in 2..n + 2 {
        g.add_edge(0, i, 1).expect("in range");
        g.add_edge(1, i, 1).expect("in range");
    }
    g
}

/// `W_n` on `n + 1` vertices: hub 0 joined to the rim `1, .., n`.
pub fn wheel(n: usize) -> Result<Multigraph> {
    if n < 3 {
        return Err(Error::domain("wheel(n) needs n >= 3"));
    }
    let mut g = Multigraph::new(n + 1);
    for i in 1..=n {
        g.add_edge(0, i, 1)?;
    }
    for i in 1..n {
        g.add_edge(i, i + 1, 1)?;
    }
    g.add_edge(1, n, 1)?;
    Ok(g)
}

pub fn complete(n: usize) -> Result<Multigraph> {
    if n < 1 {
        return Err(Error::domain("complete(n) needs n >= 1"));
    }
    let mut g = Multigraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            g.add_edge(a, b, 1)?;
        }
    }
    Ok(g)
}

/// The bike sequence `r = ⟨(0 x₁), c, (1 x₁)⟩` whose product is
/// `(0 1)(x₁ x₂ ⋯ x_{2t})`. Here `c = ⟨(1 x₂), (0 x₂)⟩` grows by
/// `(0 x_{2i+1}), (1 x_{2i+1}), (1 x_{2i+2}), (0 x_{2i+2})` per step.
pub fn bike_product_sequence(x: &NumberSeq) -> Result<TranspSequence> {
    let xs = x.points();
    if xs.is_empty() || xs.len() % 2 == 1 {
        return Err(Error::domain("x must have positive even length"));
    }
    if xs.iter().any(|&p| p < 2) {
        return Err(Error::domain("x must avoid the axle points 0 and 1"));
    }
    let degree = xs.iter().max().expect("nonempty") + 1;
    let mut c = vec![t(1, xs[1]), t(0, xs[1])];
    for pair in xs[2..].chunks(2) {
        c.extend([t(0, pair[0]), t(1, pair[0]), t(1, pair[1]), t(0, pair[1])]);
    }
    let mut terms = vec![t(0, xs[0])];
    terms.extend(c);
    terms.push(t(1, xs[0]));
    TranspSequence::new(degree, terms)
}

/// `(h)(ν(n) ∖ h)⁻`.
pub fn circuit_target(h: &NumberSeq, n: usize) -> Result<Permutation> {
    let rest = h.complement(n).reversed();
    let left = h.cycle(n)?;
    let right = rest.cycle(n)?;
    left.compose(&right)
}

/// A rearrangement `f` of `σ(n)` with `◯f = (h)(ν(n) ∖ h)⁻`.
///
/// `n = 3` uses a fixed table and singletons use the rotated circuit
/// `⟨(x x+1), .., (x-1 x)⟩`. Otherwise, replacing `h` by its complement if
/// needed (which reverses `f`), `0 ∈ h`. Let `m` be the largest point
/// outside `h`. The path `τ(m+1)` is arranged so its product is
/// `(0 p m q)` with `p = h ∩ {1..m-1}`: `(j-1 j)` goes in front when
/// `j-1 ∈ h`, behind otherwise. It is followed by
/// `(n-1 0), (n-2 n-1), .., (m m+1)`.
pub fn circuit_realizer(h: &NumberSeq, n: usize) -> Result<TranspSequence> {
    if n < 3 {
        return Err(Error::domain("circuit_realizer needs n >= 3"));
    }
    if h.is_empty() || h.len() >= n || !h.is_subsequence_of_nu(n) {
        return Err(Error::domain(format!(
            "{h} is not a nonempty proper subsequence of nu({n})"
        )));
    }
    let pts = h.points();
    if n == 3 {
        // h and its complement give the same product when n = 3
        let missing = if pts.len() == 1 {
            pts[0]
        } else {
            3 - pts[0] - pts[1]
        };
        let pairs: &[(usize, usize)] = match missing {
            0 => &[(0, 1), (1, 2), (0, 2)],
            1 => &[(0, 1), (0, 2), (1, 2)],
            _ => &[(1, 2), (0, 1), (0, 2)],
        };
        return TranspSequence::from_pairs(3, pairs);
    }
    if pts.len() == 1 {
        let x = pts[0];
        let terms = (0..n).map(|i| t((x + i) % n, (x + i + 1) % n)).collect();
        return TranspSequence::new(n, terms);
    }
    if pts[0] != 0 {
        return Ok(circuit_realizer(&h.complement(n), n)?.reversed());
    }
    let m = *h.complement(n).points().last().expect("h is proper");
    let mut path: std::collections::VecDeque<Transposition> = [t(0, 1)].into();
    for j in 2..=m {
        if pts.contains(&(j - 1)) {
            path.push_front(t(j - 1, j));
        } else {
            path.push_back(t(j - 1, j));
        }
    }
    let mut terms: Vec<Transposition> = path.into();
    terms.push(t(0, n - 1));
    terms.extend((m..n - 1).rev().map(|i| t(i, i + 1)));
    TranspSequence::new(n, terms)
}

/// A catalog entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Named {
    Transpositional(TranspSequence),
    Permutational(PermSequence),
    Numbers(NumberSeq),
}

/// Stable catalog names. Parameterized entries take `name:param`.
pub const CATALOG: &[&str] = &[
    "tau", "sigma", "nu", "bike", "wheel", "complete", "rect", "a", "b", "c", "d", "e", "h4",
    "s34a", "s34b",
];

const A: &[(usize, usize)] = &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)];
const C: &[(usize, usize)] = &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 3), (3, 4)];
const E: &[(usize, usize)] = &[
    (0, 1),
    (0, 3),
    (1, 2),
    (1, 3),
    (2, 3),
    (2, 4),
    (3, 4),
    (3, 7),
    (4, 5),
    (4, 7),
    (5, 6),
    (5, 7),
    (6, 7),
];

fn pairs_with(base: &[(usize, usize)], extra: &[(usize, usize)]) -> Vec<(usize, usize)> {
    base.iter().chain(extra).copied().collect()
}

/// Looks up a catalog entry such as `rect`, `e` or `bike:3`.
pub fn named_sequence(name: &str) -> Result<Named> {
    let (base, param) = match name.split_once(':') {
        Some((b, p)) => {
            let p: usize = p
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("`{p}` is not a valid parameter")))?;
            (b.trim(), Some(p))
        }
        None => (name.trim(), None),
    };
    let need = |p: Option<usize>| {
        p.ok_or_else(|| Error::domain(format!("`{base}` needs a parameter, e.g. `{base}:4`")))
    };
    let no_param = |p: Option<usize>| match p {
        Some(_) => Err(Error::domain(format!("`{base}` takes no parameter"))),
        None => Ok(()),
    };
    let seq = |n: usize, pairs: &[(usize, usize)]| {
        TranspSequence::from_pairs(n, pairs).map(Named::Transpositional)
    };
    match base {
        "tau" => Ok(Named::Transpositional(tau(need(param)?)?)),
        "sigma" => Ok(Named::Transpositional(sigma(need(param)?)?)),
        "nu" => Ok(Named::Numbers(nu(need(param)?))),
        "bike" => Ok(Named::Transpositional(
            bike(need(param)?).canonical_sequence(),
        )),
        "wheel" => Ok(Named::Transpositional(
            wheel(need(param)?)?.canonical_sequence(),
        )),
        "complete" => Ok(Named::Transpositional(
            complete(need(param)?)?.canonical_sequence(),
        )),
        "rect" => {
            no_param(param)?;
            seq(4, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)])
        }
        "a" => {
            no_param(param)?;
            seq(5, A)
        }
        "b" => {
            no_param(param)?;
            seq(6, &pairs_with(A, &[(2, 5), (3, 5)]))
        }
        "c" => {
            no_param(param)?;
            seq(5, C)
        }
        "d" => {
            no_param(param)?;
            seq(7, &pairs_with(A, &[(2, 5), (3, 5), (4, 6), (5, 6)]))
        }
        "e" => {
            no_param(param)?;
            seq(8, E)
        }
        "h4" => {
            no_param(param)?;
            seq(4, &[(0, 1), (1, 2), (0, 2), (0, 3)])
        }
        "s34a" => {
            no_param(param)?;
            PermSequence::from_cycles(3, &["(0 1 2)", "(0 2 1)", "(0 2 1)"])
                .map(Named::Permutational)
        }
        "s34b" => {
            no_param(param)?;
            PermSequence::from_cycles(4, &["(0 1 2)", "(0 3 2)", "(0 3 1)"])
                .map(Named::Permutational)
        }
        _ => Err(Error::UnknownName {
            name: name.to_string(),
            known: CATALOG.join(", "),
        }),
    }
}

/// Catalog lookup that insists on a transpositional entry.
pub fn named_transpositional(name: &str) -> Result<TranspSequence> {
    match named_sequence(name)? {
        Named::Transpositional(s) => Ok(s),
        _ => Err(Error::domain(format!(
            "`{name}` is not a transpositional sequence"
        ))),
    }
}

/// The three 3-vertex multigraphs obtained by factoring each term of
/// `⟨(0 1 2), (0 2 1), (0 2 1)⟩` into two transpositions, up to
/// rearrangement.
pub fn conglomerate_multigraphs() -> [Multigraph; 3] {
    let g = |edges: &[(usize, usize, usize)]| Multigraph::from_edges(3, edges).expect("literal");
    [
        g(&[(0, 1, 2), (1, 2, 2), (0, 2, 2)]),
        g(&[(0, 1, 2), (1, 2, 1), (0, 2, 3)]),
        g(&[(0, 1, 3), (1, 2, 3)]),
    ]
}
