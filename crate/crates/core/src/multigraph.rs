//! Multiplicity-labeled undirected multigraphs on `{0, .., n-1}`.
//!
//! The transpositional multigraph of a sequence has the multiedge `{a, b}`
//! with multiplicity equal to the number of times `(a b)` occurs in the
//! sequence. It forgets the order of the terms, and two sequences have the
//! same multigraph exactly when one is a rearrangement of the other.
//!
//! Text format: a first line `n <N>`, then lines `a b [m]` (`m` defaults to
//! 1, repeated pairs add up); `#` starts a comment. The JSON mirror is
//! `{"n": N, "edges": [[a, b, m], ..]}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Transposition;
use crate::sequence::TranspSequence;

/// Largest vertex count accepted by exhaustive relabeling.
pub const MAX_CANONICAL_VERTICES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    mult: BTreeMap<(usize, usize), usize>,
}

/// A multiedge `(edge.0 edge.1)` one of whose endpoints, the leaf, has no
/// other neighbor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwigProfile {
    pub edge: (usize, usize),
    pub multiplicity: usize,
    pub leaf: usize,
    pub hub: usize,
    /// Number of distinct neighbors of the hub.
    pub hub_degree: usize,
}

/// A connected component, relabeled onto `0..vertices.len()`; local vertex
/// `i` is `vertices[i]` in the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub graph: Multigraph,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Multigraph {
    pub fn new(n: usize) -> Multigraph {
        Multigraph {
            n,
            mult: BTreeMap::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, usize)]) -> Result<Multigraph> {
        let mut g = Multigraph::new(n);
        for &(a, b, m) in edges {
            g.add_edge(a, b, m)?;
        }
        Ok(g)
    }

    /// The transpositional multigraph of `u`.
    pub fn from_sequence(u: &TranspSequence) -> Multigraph {
        let mut g = Multigraph::new(u.degree());
        for t in u.terms() {
            *g.mult.entry(t.pair()).or_insert(0) += 1;
        }
        g
    }

    /// Adds `m` parallel edges between `a` and `b`; `m = 0` is a no-op.
    pub fn add_edge(&mut self, a: usize, b: usize, m: usize) -> Result<()> {
        if a == b {
            return Err(Error::EqualPoints(a));
        }
        let top = a.max(b);
        if top >= self.n {
            return Err(Error::PointOutOfRange {
                point: top,
                degree: self.n,
            });
        }
        if m > 0 {
            *self.mult.entry(key(a, b)).or_insert(0) += m;
        }
        Ok(())
    }

    /// Removes one parallel edge; returns false if none was present.
    pub fn remove_one(&mut self, a: usize, b: usize) -> bool {
        let k = key(a, b);
        match self.mult.get_mut(&k) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.mult.remove(&k);
                true
            }
            None => false,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.mult.get(&key(a, b)).copied().unwrap_or(0)
    }

    /// Multiedges `(a, b, m)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.mult.iter().map(|(&(a, b), &m)| (a, b, m))
    }

    pub fn distinct_edge_count(&self) -> usize {
        self.mult.len()
    }

    /// `E`: the number of simple edges counted with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.mult.values().sum()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .mult
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Number of distinct neighbors.
    pub fn degree(&self, v: usize) -> usize {
        self.mult.keys().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Degree counted with multiplicity.
    pub fn weighted_degree(&self, v: usize) -> usize {
        self.mult
            .iter()
            .filter(|(&(a, b), _)| a == v || b == v)
            .map(|(_, &m)| m)
            .sum()
    }

    pub fn is_simple(&self) -> bool {
        self.mult.values().all(|&m| m == 1)
    }

    /// Every multiedge collapsed to multiplicity 1.
    pub fn underlying_simple(&self) -> Multigraph {
        Multigraph {
            n: self.n,
            mult: self.mult.keys().map(|&k| (k, 1)).collect(),
        }
    }

    /// Lexicographically sorted sequence with each edge repeated `m` times.
    pub fn canonical_sequence(&self) -> TranspSequence {
        let mut terms = Vec::with_capacity(self.total_multiplicity());
        for (a, b, m) in self.edges() {
            let t = Transposition::new(a, b).expect("no self-loops");
            terms.extend(std::iter::repeat_n(t, m));
        }
        TranspSequence::new(self.n, terms).expect("edges are range-checked")
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in self.mult.keys() {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Connected components ordered by least vertex; isolated vertices are
    /// singleton components.
    pub fn components(&self) -> Vec<Component> {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut vertices = vec![start];
            label[start] = id;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = id;
                        vertices.push(w);
                        stack.push(w);
                    }
                }
            }
            vertices.sort_unstable();
            let local: BTreeMap<usize, usize> =
                vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let mut graph = Multigraph::new(vertices.len());
            for (a, b, m) in self.edges() {
                if label[a] == id {
                    graph.mult.insert(key(local[&a], local[&b]), m);
                }
            }
            out.push(Component { vertices, graph });
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 0).collect()
    }

    /// Connected and the underlying simple graph is a tree.
    pub fn is_multitree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.distinct_edge_count() == self.n - 1
    }

    /// Induced subgraph on `vertices` is acyclic.
    pub fn induced_is_forest(&self, vertices: &BTreeSet<usize>) -> bool {
        let induced = self.induced(vertices);
        let comps = induced.components().len();
        induced.distinct_edge_count() + comps == induced.n
    }

    /// The induced sub-multigraph on `vertices`, relabeled in increasing order.
    pub fn induced(&self, vertices: &BTreeSet<usize>) -> Multigraph {
        let local: BTreeMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Multigraph::new(vertices.len());
        for (a, b, m) in self.edges() {
            if let (Some(&la), Some(&lb)) = (local.get(&a), local.get(&b)) {
                g.mult.insert(key(la, lb), m);
            }
        }
        g
    }

    /// One profile per multitwig. When both endpoints are leaves (a lone
    /// edge) the lower-indexed endpoint is reported as the leaf.
    pub fn twig_profiles(&self) -> Vec<TwigProfile> {
        let mut out = Vec::new();
        for (a, b, m) in self.edges() {
            let leaf = if self.degree(a) == 1 {
                a
            } else if self.degree(b) == 1 {
                b
            } else {
                continue;
            };
            let hub = if leaf == a { b } else { a };
            out.push(TwigProfile {
                edge: (a, b),
                multiplicity: m,
                leaf,
                hub,
                hub_degree: self.degree(hub),
            });
        }
        out
    }

    /// Multiedges with exactly one endpoint in `side`.
    pub fn cross_edges(&self, side: &BTreeSet<usize>) -> Result<Vec<(usize, usize, usize)>> {
        if side.is_empty() || side.len() >= self.n || side.iter().any(|&v| v >= self.n) {
            return Err(Error::domain(
                "cut side must be a nonempty proper subset of the vertices",
            ));
        }
        Ok(self
            .edges()
            .filter(|&(a, b, _)| side.contains(&a) != side.contains(&b))
            .collect())
    }

    /// Whether the induced subgraph on `vertices` has a perfect matching.
    /// Exhaustive; intended for small vertex sets.
    pub fn has_perfect_matching(&self, vertices: &BTreeSet<usize>) -> bool {
        fn search(g: &Multigraph, free: &[usize]) -> bool {
            let Some(&v) = free.first() else {
                return true;
            };
            for i in 1..free.len() {
                let w = free[i];
                if g.multiplicity(v, w) > 0 {
                    let rest: Vec<usize> = free
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != 0 && j != i)
                        .map(|(_, &x)| x)
                        .collect();
                    if search(g, &rest) {
                        return true;
                    }
                }
            }
            false
        }
        if vertices.len() % 2 == 1 {
            return false;
        }
        let free: Vec<usize> = vertices.iter().copied().collect();
        search(self, &free)
    }

    /// Vertex `v` becomes `relabel[v]`.
    pub fn relabel(&self, relabel: &[usize]) -> Multigraph {
        Multigraph {
            n: self.n,
            mult: self
                .edges()
                .map(|(a, b, m)| (key(relabel[a], relabel[b]), m))
                .collect(),
        }
    }

    /// Vertices adjacent to every other vertex.
    pub fn central_vertices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.degree(v) + 1 == self.n)
            .collect()
    }

    /// Multiplicities over all pairs `(0,1), (0,2), .., (n-2,n-1)`.
    fn pair_vector(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for a in 0..self.n {
            for b in a + 1..self.n {
                v.push(self.multiplicity(a, b));
            }
        }
        v
    }

    /// Canonical representative of the isomorphism class: the relabeling
    /// whose pair-multiplicity vector is lexicographically greatest among
    /// relabelings that order vertices by a degree invariant.
    ///
    /// Exhaustive over the relabelings within invariant classes, so
    /// exponential in `n`; refused above [`MAX_CANONICAL_VERTICES`].
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        if self.n > MAX_CANONICAL_VERTICES {
            return Err(Error::domain(format!(
                "canonical labeling is limited to {MAX_CANONICAL_VERTICES} vertices"
            )));
        }
        let (best, _) = self.best_relabeling();
        Ok(CanonicalForm {
            n: self.n,
            pairs: best,
        })
    }

    /// Returns the canonical pair vector and a relabeling achieving it.
    fn best_relabeling(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.n;
        // invariant: (distinct degree, weighted degree, sorted neighbor multiplicities)
        let invariant = |v: usize| {
            let mut ms: Vec<usize> = self
                .neighbors(v)
                .iter()
                .map(|&w| self.multiplicity(v, w))
                .collect();
            ms.sort_unstable_by(|a, b| b.cmp(a));
            (self.degree(v), self.weighted_degree(v), ms)
        };
        let mut order: Vec<usize> = (0..n).collect();
        let invs: Vec<_> = (0..n).map(invariant).collect();
        order.sort_by(|&a, &b| invs[b].cmp(&invs[a]));
        // Slots are grouped by equal invariant; vertices may only permute
        // within their group.
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match groups.last_mut() {
                Some(g) if invs[g[0]] == invs[v] => g.push(v),
                _ => groups.push(vec![v]),
            }
        }
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        let mut assignment = Vec::with_capacity(n);
        self.search_labelings(&groups, 0, &mut assignment, &mut best);
        best.unwrap_or_else(|| (Vec::new(), Vec::new()))
    }

    fn search_labelings(
        &self,
        groups: &[Vec<usize>],
        gi: usize,
        assignment: &mut Vec<usize>,
        best: &mut Option<(Vec<usize>, Vec<usize>)>,
    ) {
        if gi == groups.len() {
            // assignment[slot] = original vertex
            let mut relabel = vec![0; self.n];
            for (slot, &v) in assignment.iter().enumerate() {
                relabel[v] = slot;
            }
            let vec = self.relabel(&relabel).pair_vector();
            if best.as_ref().is_none_or(|(b, _)| vec > *b) {
                *best = Some((vec, relabel));
            }
            return;
        }
        let mut group = groups[gi].clone();
        permute_all(&mut group, 0, &mut |perm| {
            let len = assignment.len();
            assignment.extend_from_slice(perm);
            self.search_labelings(groups, gi + 1, assignment, best);
            assignment.truncate(len);
        });
    }

    pub fn is_isomorphic(&self, other: &Multigraph) -> Result<bool> {
        Ok(self.n == other.n && self.canonical_form()? == other.canonical_form()?)
    }

    /// Searches for an injective relabeling `map` of `pattern` into this
    /// graph (same vertex count) such that every edge `(a, b)` of the
    /// pattern's underlying graph is an edge `(map[a], map[b])` here.
    pub fn find_spanning_copy(&self, pattern: &Multigraph) -> Option<Vec<usize>> {
        if pattern.n != self.n || pattern.distinct_edge_count() > self.distinct_edge_count() {
            return None;
        }
        let p_adj = pattern.adjacency();
        let mut order: Vec<usize> = (0..pattern.n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(p_adj[v].len()));
        let mut map = vec![usize::MAX; pattern.n];
        let mut used = vec![false; self.n];
        fn go(
            host: &Multigraph,
            p_adj: &[Vec<usize>],
            order: &[usize],
            i: usize,
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if i == order.len() {
                return true;
            }
            let v = order[i];
            for cand in 0..host.n {
                if used[cand] || host.degree(cand) < p_adj[v].len() {
                    continue;
                }
                let ok = p_adj[v]
                    .iter()
                    .all(|&w| map[w] == usize::MAX || host.multiplicity(cand, map[w]) > 0);
                if ok {
                    map[v] = cand;
                    used[cand] = true;
                    if go(host, p_adj, order, i + 1, map, used) {
                        return true;
                    }
                    map[v] = usize::MAX;
                    used[cand] = false;
                }
            }
            false
        }
        if go(self, &p_adj, &order, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (a, b, m) in self.edges() {
            out.push_str(&format!("{a} {b} {m}\n"));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Multigraph> {
        let mut graph: Option<Multigraph> = None;
        for (idx, full) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = full.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let indent = line.len() - line.trim_start().len();
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let column = |k: usize| indent + line.trim_start().find(tokens[k]).unwrap_or(0) + 1;
            let Some(g) = graph.as_mut() else {
                if tokens.len() != 2 || tokens[0] != "n" {
                    return Err(Error::parse(line_no, indent + 1, "expected `n <N>` first"));
                }
                let n = tokens[1].parse().map_err(|_| {
                    Error::parse(line_no, column(1), "vertex count is not a number")
                })?;
                graph = Some(Multigraph::new(n));
                continue;
            };
            if !(2..=3).contains(&tokens.len()) {
                return Err(Error::parse(line_no, indent + 1, "expected `a b [m]`"));
            }
            let mut nums = [0usize, 0, 1];
            for k in 0..tokens.len() {
                nums[k] = tokens[k].parse().map_err(|_| {
                    Error::parse(
                        line_no,
                        column(k),
                        format!("`{}` is not a number", tokens[k]),
                    )
                })?;
            }
            g.add_edge(nums[0], nums[1], nums[2])
                .map_err(|e| Error::parse(line_no, column(0), e.to_string()))?;
        }
        graph.ok_or_else(|| Error::parse(1, 1, "missing `n <N>` line"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MultigraphJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Multigraph> {
        let raw: MultigraphJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let edges: Vec<(usize, usize, usize)> =
            raw.edges.iter().map(|e| (e[0], e[1], e[2])).collect();
        Multigraph::from_edges(raw.n, &edges)
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {{", self.n)?;
        for (i, (a, b, m)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if m == 1 {
                write!(f, "({a} {b})")?;
            } else {
                write!(f, "({a} {b})^{m}")?;
            }
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
struct MultigraphJson {
    n: usize,
    edges: Vec<[usize; 3]>,
}

impl From<&Multigraph> for MultigraphJson {
    fn from(g: &Multigraph) -> Self {
        MultigraphJson {
            n: g.n,
            edges: g.edges().map(|(a, b, m)| [a, b, m]).collect(),
        }
    }
}

/// Isomorphism-class key: vertex count plus the canonical pair vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    pairs: Vec<usize>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn to_multigraph(&self) -> Multigraph {
        let mut g = Multigraph::new(self.n);
        let mut it = self.pairs.iter();
        for a in 0..self.n {
            for b in a + 1..self.n {
                let m = *it.next().expect("pair vector length");
                if m > 0 {
                    g.mult.insert((a, b), m);
                }
            }
        }
        g
    }

    /// Stable string id, e.g. `4:111110`: vertex count, then one base-36
    /// digit per pair multiplicity.
    pub fn id(&self) -> String {
        let digits: String = self
            .pairs
            .iter()
            .map(|&m| std::char::from_digit(m.min(35) as u32, 36).expect("digit < 36"))
            .collect();
        format!("{}:{}", self.n, digits)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// One representative per isomorphism class of connected multigraphs on
/// `n` vertices with total multiplicity at most `max_total`, sorted by
/// canonical id. With `simple_only`, multiplicities stay at 1.
///
/// Classes are grown one edge at a time from the edgeless graph, keeping
/// disconnected intermediates, and deduplicated by canonical form.
pub fn connected_classes(n: usize, max_total: usize, simple_only: bool) -> Result<Vec<Multigraph>> {
    if n > MAX_CANONICAL_VERTICES {
        return Err(Error::domain(format!(
            "class generation is limited to {MAX_CANONICAL_VERTICES} vertices"
        )));
    }
    let mut out: Vec<(CanonicalForm, Multigraph)> = Vec::new();
    let mut layer: BTreeSet<CanonicalForm> = BTreeSet::new();
    layer.insert(Multigraph::new(n).canonical_form()?);
    for _ in 0..=max_total {
        let mut next = BTreeSet::new();
        for form in &layer {
            let g = form.to_multigraph();
            if g.is_connected() {
                out.push((form.clone(), g.clone()));
            }
            for a in 0..n {
                for b in a + 1..n {
                    if simple_only && g.multiplicity(a, b) > 0 {
                        continue;
                    }
                    let mut h = g.clone();
                    h.add_edge(a, b, 1)?;
                    next.insert(h.canonical_form()?);
                }
            }
        }
        layer = next;
    }
    out.sort_by_key(|(f, _)| f.id());
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

/// Calls `visit` on every permutation of `items[k..]` (Heap-style swaps).
fn permute_all(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k + 1 >= items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_all(items, k + 1, visit);
        items.swap(k, i);
    }
}
