//! Exact enumeration of `Prod(s)`, the set of products of all
//! rearrangements of a sequence.
//!
//! The sub-multisets of `s` form a lattice indexed by how many copies of
//! each distinct term have been used. `R(S)` is the set of products of all
//! orderings of `S`, and
//!
//! ```text
//! R(∅) = {id},   R(S) = ⋃_{e ∈ S} { p∘e : p ∈ R(S ∖ e) }
//! ```
//!
//! so `Prod(s) = R(s)`. Layers are computed by increasing size; only two
//! are alive at once. Each state of a layer is independent, so a layer is
//! filled in parallel.
//!
//! ```
//! use permgraph::enumeration::{enumerate_prod, Budget};
//! use permgraph::sequence::TranspSequence;
//!
//! let tau3 = TranspSequence::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
//! let prod = enumerate_prod(&tau3, &Budget::default()).unwrap();
//! let names: Vec<String> = prod.members().iter().map(|p| p.to_string()).collect();
//! assert_eq!(names, ["(0 1 2)", "(0 2 1)"]);
//! ```

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Refusal, Result};
use crate::multigraph::Multigraph;
use crate::perm::{CycleType, Parity, Permutation, Transposition};
use crate::sequence::{PermSequence, Sequence, TranspSequence};

/// Resource limits for the brute-force paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Longest sequence the enumerator accepts.
    pub max_terms: usize,
    /// Ceiling on permutations held across the live layers, or on cached
    /// states in a rearrangement search.
    pub max_stored: usize,
    /// Soft wall-clock limit, checked between units of work.
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_terms: 13,
            max_stored: 200_000_000,
            time_limit: None,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget {
            max_terms: usize::MAX,
            max_stored: usize::MAX,
            time_limit: None,
        }
    }

    fn deadline(&self) -> Deadline {
        Deadline {
            start: Instant::now(),
            limit: self.time_limit,
        }
    }
}

struct Deadline {
    start: Instant,
    limit: Option<Duration>,
}

impl Deadline {
    fn check(&self) -> std::result::Result<(), Refusal> {
        match self.limit {
            Some(limit) if self.start.elapsed() > limit => Err(Refusal::TimeLimit {
                millis: limit.as_millis(),
            }),
            _ => Ok(()),
        }
    }
}

/// `Prod(s)`: distinct products, sorted by image array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProdSet {
    degree: usize,
    parity: Parity,
    members: Vec<Permutation>,
}

impl ProdSet {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The common parity of every member.
    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &Permutation) -> bool {
        self.members.binary_search(f).is_ok()
    }

    /// True when the set is a whole coset of `Alt(n)`.
    pub fn is_full_coset(&self) -> bool {
        BigUint::from(self.len()) == alt_order(self.degree)
    }

    /// How many members have each cycle type.
    pub fn cycle_type_spectrum(&self) -> BTreeMap<CycleType, usize> {
        let mut out = BTreeMap::new();
        for p in &self.members {
            *out.entry(p.cycle_type()).or_insert(0) += 1;
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Json {
            degree: usize,
            parity: Parity,
            size: usize,
            members: Vec<String>,
        }
        serde_json::to_string(&Json {
            degree: self.degree,
            parity: self.parity,
            size: self.len(),
            members: self.members.iter().map(|p| p.to_string()).collect(),
        })
        .expect("plain data serializes")
    }
}

/// `|Alt(n)|`, taken as 1 for `n ≤ 1`.
pub fn alt_order(n: usize) -> BigUint {
    let fact: BigUint = (1..=n).map(BigUint::from).product();
    if n <= 1 {
        BigUint::from(1u8)
    } else {
        fact / 2u8
    }
}

/// A permutation stored as its inverse image array. Appending a term `g`
/// to a product `p` gives `(p∘g)⁻ = g⁻∘p⁻`, a gather of `p⁻` through `g⁻`.
trait Key: Ord + Clone + Send + Sync + std::hash::Hash {
    fn identity(n: usize) -> Self;
    fn gather(&self, map: &[usize]) -> Self;
    fn inverse_images(&self, n: usize) -> Vec<usize>;
}

impl Key for u64 {
    fn identity(n: usize) -> Self {
        (0..n).fold(0u64, |acc, x| acc | ((x as u64) << (4 * x)))
    }

    fn gather(&self, map: &[usize]) -> Self {
        let mut out = 0u64;
        for (x, &y) in map.iter().enumerate() {
            out |= ((*self >> (4 * y)) & 0xf) << (4 * x);
        }
        out
    }

    fn inverse_images(&self, n: usize) -> Vec<usize> {
        (0..n)
            .map(|x| ((*self >> (4 * x)) & 0xf) as usize)
            .collect()
    }
}

impl Key for Box<[u32]> {
    fn identity(n: usize) -> Self {
        (0..n as u32).collect()
    }

    fn gather(&self, map: &[usize]) -> Self {
        map.iter().map(|&y| self[y]).collect()
    }

    fn inverse_images(&self, _n: usize) -> Vec<usize> {
        self.iter().map(|&x| x as usize).collect()
    }
}

fn key_to_perm<K: Key>(k: &K, n: usize) -> Permutation {
    Permutation::from_images_unchecked(k.inverse_images(n)).inverse()
}

/// Distinct terms with multiplicities, in sorted order.
fn distinct_terms(terms: &[Permutation]) -> Vec<(Permutation, usize)> {
    let mut sorted = terms.to_vec();
    sorted.sort();
    let mut out: Vec<(Permutation, usize)> = Vec::new();
    for t in sorted {
        match out.last_mut() {
            Some((p, m)) if *p == t => *m += 1,
            _ => out.push((t, 1)),
        }
    }
    out
}

/// `Prod(s)` for a transpositional sequence.
pub fn enumerate_prod(
    s: &TranspSequence,
    budget: &Budget,
) -> std::result::Result<ProdSet, Refusal> {
    enumerate_prod_perms(&s.permutation_terms(), s.degree(), budget)
}

/// `Prod(s)` for a sequence of arbitrary permutations.
pub fn enumerate_prod_general(
    s: &PermSequence,
    budget: &Budget,
) -> std::result::Result<ProdSet, Refusal> {
    enumerate_prod_perms(s.terms(), s.degree(), budget)
}

fn enumerate_prod_perms(
    terms: &[Permutation],
    degree: usize,
    budget: &Budget,
) -> std::result::Result<ProdSet, Refusal> {
    if terms.len() > budget.max_terms {
        return Err(Refusal::TooManyTerms {
            terms: terms.len(),
            limit: budget.max_terms,
        });
    }
    let parity = terms.iter().fold(Parity::Even, |acc, t| match t.parity() {
        Parity::Even => acc,
        Parity::Odd => acc.flip(),
    });
    let members = if degree <= 16 {
        run_dp::<u64>(terms, degree, budget)?
    } else {
        run_dp::<Box<[u32]>>(terms, degree, budget)?
    };
    Ok(ProdSet {
        degree,
        parity,
        members,
    })
}

fn run_dp<K: Key>(
    terms: &[Permutation],
    n: usize,
    budget: &Budget,
) -> std::result::Result<Vec<Permutation>, Refusal> {
    let deadline = budget.deadline();
    let distinct = distinct_terms(terms);
    let maps: Vec<Vec<usize>> = distinct
        .iter()
        .map(|(p, _)| p.inverse().images().to_vec())
        .collect();
    let mults: Vec<usize> = distinct.iter().map(|&(_, m)| m).collect();
    let mut strides = Vec::with_capacity(mults.len());
    let mut total_states = 1usize;
    for &m in &mults {
        strides.push(total_states);
        total_states = total_states
            .checked_mul(m + 1)
            .filter(|&t| t <= budget.max_stored)
            .ok_or(Refusal::StoredPermutations {
                limit: budget.max_stored,
            })?;
    }
    let counts_of = |mut idx: usize| -> Vec<usize> {
        mults
            .iter()
            .map(|&m| {
                let c = idx % (m + 1);
                idx /= m + 1;
                c
            })
            .collect()
    };
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); terms.len() + 1];
    for idx in 0..total_states {
        let size: usize = counts_of(idx).iter().sum();
        layers[size].push(idx);
    }

    let mut table: Vec<Vec<K>> = vec![Vec::new(); total_states];
    table[0] = vec![K::identity(n)];
    let mut stored_prev = 1usize;
    let stop = AtomicBool::new(false);
    for size in 1..=terms.len() {
        deadline.check()?;
        let stored_now = AtomicUsize::new(0);
        let results: Vec<(usize, Vec<K>)> = layers[size]
            .par_iter()
            .map(|&idx| {
                if stop.load(Ordering::Relaxed) {
                    return (idx, Vec::new());
                }
                let counts = counts_of(idx);
                let mut acc: Vec<K> = Vec::new();
                for (i, &c) in counts.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let prev = &table[idx - strides[i]];
                    acc.extend(prev.iter().map(|k| k.gather(&maps[i])));
                }
                acc.sort_unstable();
                acc.dedup();
                let now = stored_now.fetch_add(acc.len(), Ordering::Relaxed) + acc.len();
                if now + stored_prev > budget.max_stored || deadline.check().is_err() {
                    stop.store(true, Ordering::Relaxed);
                }
                (idx, acc)
            })
            .collect();
        if stop.load(Ordering::Relaxed) {
            deadline.check()?;
            return Err(Refusal::StoredPermutations {
                limit: budget.max_stored,
            });
        }
        for &idx in &layers[size - 1] {
            table[idx] = Vec::new();
        }
        for (idx, set) in results {
            table[idx] = set;
        }
        stored_prev = stored_now.into_inner();
    }
    let mut members: Vec<Permutation> = table[total_states - 1]
        .iter()
        .map(|k| key_to_perm(k, n))
        .collect();
    members.sort();
    Ok(members)
}

/// Result of [`find_rearrangement`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rearrangement {
    Found(TranspSequence),
    /// No rearrangement has the requested product.
    Absent,
    Refused(Refusal),
}

/// Searches `Seq(s)` for a rearrangement whose product is `f`.
///
/// Depth-first over (remaining counts, partial product), caching states
/// already shown to be dead ends.
pub fn find_rearrangement(
    s: &TranspSequence,
    f: &Permutation,
    budget: &Budget,
) -> Result<Rearrangement> {
    if f.degree() != s.degree() {
        return Err(Error::DegreeMismatch {
            left: s.degree(),
            right: f.degree(),
        });
    }
    if f.parity() != Parity::of_len(s.len()) {
        return Ok(Rearrangement::Absent);
    }
    let outcome = if s.degree() <= 16 {
        search::<u64>(s, f, budget)
    } else {
        search::<Box<[u32]>>(s, f, budget)
    };
    Ok(match outcome {
        Ok(Some(terms)) => {
            Rearrangement::Found(TranspSequence::new(s.degree(), terms).expect("terms come from s"))
        }
        Ok(None) => Rearrangement::Absent,
        Err(r) => Rearrangement::Refused(r),
    })
}

fn search<K: Key>(
    s: &TranspSequence,
    f: &Permutation,
    budget: &Budget,
) -> std::result::Result<Option<Vec<Transposition>>, Refusal> {
    struct Ctx<'a, K> {
        edges: Vec<Transposition>,
        maps: Vec<Vec<usize>>,
        strides: Vec<usize>,
        target: K,
        failed: HashSet<(usize, K)>,
        budget: &'a Budget,
        deadline: Deadline,
        nodes: usize,
    }

    fn go<K: Key>(
        ctx: &mut Ctx<'_, K>,
        remaining: &mut [usize],
        idx: usize,
        current: K,
        path: &mut Vec<Transposition>,
    ) -> std::result::Result<bool, Refusal> {
        if idx == 0 {
            return Ok(current == ctx.target);
        }
        if ctx.failed.contains(&(idx, current.clone())) {
            return Ok(false);
        }
        ctx.nodes += 1;
        if ctx.nodes.is_multiple_of(4096) {
            ctx.deadline.check()?;
        }
        for i in 0..remaining.len() {
            if remaining[i] == 0 {
                continue;
            }
            remaining[i] -= 1;
            path.push(ctx.edges[i]);
            let next = current.gather(&ctx.maps[i]);
            let hit = go(ctx, remaining, idx - ctx.strides[i], next, path)?;
            remaining[i] += 1;
            if hit {
                return Ok(true);
            }
            path.pop();
        }
        if ctx.failed.len() >= ctx.budget.max_stored {
            return Err(Refusal::StoredPermutations {
                limit: ctx.budget.max_stored,
            });
        }
        ctx.failed.insert((idx, current));
        Ok(false)
    }

    let graph = Multigraph::from_sequence(s);
    let mut edges = Vec::new();
    let mut remaining = Vec::new();
    let mut strides = Vec::new();
    let mut stride = 1usize;
    let mut idx = 0usize;
    for (a, b, m) in graph.edges() {
        edges.push(Transposition::new(a, b).expect("multigraph has no loops"));
        remaining.push(m);
        strides.push(stride);
        idx += m * stride;
        stride = stride
            .checked_mul(m + 1)
            .ok_or(Refusal::StoredPermutations {
                limit: budget.max_stored,
            })?;
    }
    let n = s.degree();
    let maps = edges
        .iter()
        .map(|t| t.to_permutation(n).expect("in range").images().to_vec())
        .collect();
    let target = K::identity(n).gather(f.inverse().images());
    let mut ctx = Ctx {
        edges,
        maps,
        strides,
        target,
        failed: HashSet::new(),
        budget,
        deadline: budget.deadline(),
        nodes: 0,
    };
    let mut path = Vec::with_capacity(s.len());
    if go(&mut ctx, &mut remaining, idx, K::identity(n), &mut path)? {
        Ok(Some(path))
    } else {
        Ok(None)
    }
}

/// One arc of the doubled digraph: term `term` traversed from `tail` to
/// `head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arc {
    pub term: usize,
    pub tail: usize,
    pub head: usize,
}

/// The walks `u_x` for every vertex `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathDecomposition {
    degree: usize,
    term_count: usize,
    walks: Vec<Vec<Arc>>,
}

impl PathDecomposition {
    /// The arcs of `u_x` in traversal order.
    pub fn walk(&self, x: usize) -> &[Arc] {
        &self.walks[x]
    }

    pub fn walks(&self) -> &[Vec<Arc>] {
        &self.walks
    }

    /// The last vertex of `u_x`; equals `x◯u`.
    pub fn endpoint(&self, x: usize) -> usize {
        self.walks[x].last().map_or(x, |a| a.head)
    }

    /// Vertex sequence `x → z₁ → ⋯ → y`.
    pub fn vertices(&self, x: usize) -> Vec<usize> {
        let mut out = vec![x];
        out.extend(self.walks[x].iter().map(|a| a.head));
        out
    }

    /// Whether the walks use every arc of the doubled digraph exactly once.
    pub fn is_arc_partition(&self) -> bool {
        let mut seen = HashSet::new();
        for arc in self.walks.iter().flatten() {
            if !seen.insert((arc.term, arc.tail)) {
                return false;
            }
        }
        seen.len() == 2 * self.term_count
    }
}

/// Builds the walk from each vertex by repeatedly taking the next later
/// term that touches the current vertex.
pub fn trace_paths(u: &TranspSequence) -> Result<PathDecomposition> {
    let n = u.degree();
    let terms = u.terms();
    for x in 0..n {
        if !terms.iter().any(|t| t.contains(x)) {
            return Err(Error::domain(format!("vertex {x} lies on no term")));
        }
    }
    let walks = (0..n)
        .map(|x| {
            let mut walk = Vec::new();
            let mut at = x;
            let mut from = 0;
            while let Some(j) = (from..terms.len()).find(|&j| terms[j].contains(at)) {
                let head = terms[j].other(at).expect("term contains vertex");
                walk.push(Arc {
                    term: j,
                    tail: at,
                    head,
                });
                at = head;
                from = j + 1;
            }
            walk
        })
        .collect();
    Ok(PathDecomposition {
        degree: n,
        term_count: terms.len(),
        walks,
    })
}

/// `|Seq(s)|`, the multinomial `|s|! / Π μ!`.
pub fn arrangements_count<S: Sequence>(s: &S) -> BigUint {
    let fact = |k: usize| -> BigUint { (1..=k).map(BigUint::from).product() };
    let distinct = distinct_terms(&s.permutation_terms());
    let denom: BigUint = distinct.iter().map(|&(_, m)| fact(m)).product();
    fact(s.len()) / denom
}

/// For `u` whose multigraph is a simple tree and `s ∈ Seq(u)`: whether
/// every vertex sees the same subsequence of incident terms in both.
/// By the Eden and Schützenberger theorem this holds exactly when the
/// products agree.
pub fn es_equivalent(u: &TranspSequence, s: &TranspSequence) -> Result<bool> {
    let g = Multigraph::from_sequence(u);
    if !g.is_simple() || !g.is_multitree() {
        return Err(Error::domain("the multigraph of u must be a simple tree"));
    }
    if s.degree() != u.degree() || Multigraph::from_sequence(s) != g {
        return Err(Error::domain("s must be a rearrangement of u"));
    }
    Ok((0..u.degree()).all(|v| u.terms_at(v) == s.terms_at(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(n: usize, pairs: &[(usize, usize)]) -> TranspSequence {
        TranspSequence::from_pairs(n, pairs).unwrap()
    }

    fn names(p: &ProdSet) -> Vec<String> {
        p.members().iter().map(|m| m.to_string()).collect()
    }

    #[test]
    fn small_prod_sets() {
        let b = Budget::default();
        let k3 = enumerate_prod(&seq(3, &[(0, 1), (0, 2), (1, 2)]), &b).unwrap();
        assert_eq!(names(&k3), ["(1 2)", "(0 1)", "(0 2)"]);
        assert!(k3.is_full_coset());
        assert_eq!(k3.parity(), Parity::Odd);

        let twice = enumerate_prod(&seq(2, &[(0, 1), (0, 1)]), &b).unwrap();
        assert_eq!(names(&twice), ["()"]);

        let empty = enumerate_prod(&TranspSequence::empty(2), &b).unwrap();
        assert_eq!(names(&empty), ["()"]);
        assert!(empty.is_full_coset());
    }

    #[test]
    fn json_shape() {
        let p = enumerate_prod(&seq(3, &[(0, 1), (1, 2)]), &Budget::default()).unwrap();
        assert_eq!(
            p.to_json(),
            r#"{"degree":3,"parity":"even","size":2,"members":["(0 1 2)","(0 2 1)"]}"#
        );
    }

    #[test]
    fn wide_degree_uses_boxed_keys() {
        let s = seq(18, &[(0, 17), (17, 16), (0, 16)]);
        let p = enumerate_prod(&s, &Budget::default()).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p
            .members()
            .iter()
            .all(|m| m.cycles().len() == 1 && m.cycles()[0].len() == 2));
    }

    #[test]
    fn refusals() {
        let s = seq(3, &[(0, 1); 14]);
        assert!(matches!(
            enumerate_prod(&s, &Budget::default()),
            Err(Refusal::TooManyTerms {
                terms: 14,
                limit: 13
            })
        ));
        let tight = Budget {
            max_stored: 3,
            ..Budget::default()
        };
        let k4 = seq(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(matches!(
            enumerate_prod(&k4, &tight),
            Err(Refusal::StoredPermutations { .. })
        ));
    }

    #[test]
    fn rearrangement_search() {
        let b = Budget::default();
        let rect = seq(4, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]);
        let f = Permutation::transposition(4, 1, 2).unwrap();
        match find_rearrangement(&rect, &f, &b).unwrap() {
            Rearrangement::Found(r) => {
                assert_eq!(r.product(), f);
                assert_eq!(
                    Multigraph::from_sequence(&r),
                    Multigraph::from_sequence(&rect)
                );
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        let tau3 = seq(3, &[(0, 1), (1, 2)]);
        assert_eq!(
            find_rearrangement(&tau3, &Permutation::identity(3), &b).unwrap(),
            Rearrangement::Absent
        );
        assert_eq!(
            find_rearrangement(&TranspSequence::empty(3), &Permutation::identity(3), &b).unwrap(),
            Rearrangement::Found(TranspSequence::empty(3))
        );
        assert!(find_rearrangement(&tau3, &Permutation::identity(4), &b).is_err());
    }

    #[test]
    fn paths_of_tau3() {
        let d = trace_paths(&seq(3, &[(0, 1), (1, 2)])).unwrap();
        assert_eq!(d.vertices(0), [0, 1, 2]);
        assert_eq!(d.vertices(1), [1, 0]);
        assert_eq!(d.vertices(2), [2, 1]);
        assert!(d.is_arc_partition());
        let single = trace_paths(&seq(2, &[(0, 1)])).unwrap();
        assert_eq!(
            (single.vertices(0), single.vertices(1)),
            (vec![0, 1], vec![1, 0])
        );
        assert!(trace_paths(&seq(3, &[(0, 1)])).is_err());
    }

    #[test]
    fn arrangement_counts() {
        let inj = seq(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(arrangements_count(&inj), BigUint::from(120u32));
        let blocks = seq(3, &[(0, 1), (0, 1), (1, 2), (1, 2)]);
        assert_eq!(arrangements_count(&blocks), BigUint::from(6u32));
        assert_eq!(
            arrangements_count(&TranspSequence::empty(3)),
            BigUint::from(1u32)
        );
    }

    #[test]
    fn eden_schutzenberger() {
        let u = seq(3, &[(0, 1), (1, 2)]);
        assert!(es_equivalent(&u, &u).unwrap());
        assert!(!es_equivalent(&u, &seq(3, &[(1, 2), (0, 1)])).unwrap());
        let v = seq(4, &[(0, 1), (2, 3), (1, 2)]);
        assert!(es_equivalent(&v, &seq(4, &[(2, 3), (0, 1), (1, 2)])).unwrap());
        let tri = seq(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(es_equivalent(&tri, &tri).is_err());
        assert!(es_equivalent(&u, &seq(3, &[(0, 1), (0, 2)])).is_err());
    }
}
