//! Decision procedures for perm-completeness and conjugacy invariance.
//!
//! Each question has two paths. The structural path reads the answer off
//! the multigraph with a fixed list of theorems and returns the rule it
//! used together with a witness that can be checked independently. The
//! oracle path enumerates `Prod(s)`.
//!
//! Perm-completeness rules, first match wins:
//!
//! | rule           | answer | condition                                              |
//! |----------------|--------|--------------------------------------------------------|
//! | `SMALL`        | Yes    | `n ≤ 2`                                                |
//! | `DISCONNECTED` | No     | the graph is disconnected or has an isolated vertex    |
//! | `DEG1`         | No     | a vertex with one neighbor, joined by a simple edge    |
//! | `DEG2`         | No     | simple, `n ≥ 4`, adjacent `x`, `y` both of degree 2     |
//! | `COUNT`        | No     | `|Seq(s)| < n!/2`                                      |
//! | `CENTRAL`      | Yes    | two central vertices (`SUPSEQ-BIKE` for multigraphs)   |
//! | `NAMED`        | Yes    | a spanning copy of a known minimal perm-complete graph |
//! | `NPC2`         | No     | simple; a cut with both sides connected, small `C`     |
//! | `WNPC1`        | No     | simple; a cut with a forest side `V₀`, `|C| ≤ |V₀|`    |
//!
//! Anything else is `Unknown`. Conjugacy invariance is decided completely,
//! one connected component at a time.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::Serialize;

use crate::construct::named_transpositional;
use crate::enumeration::{
    alt_order, arrangements_count, enumerate_prod, enumerate_prod_general, Budget, ProdSet,
};
use crate::error::{Error, Refusal, Result};
use crate::multigraph::Multigraph;
use crate::perm::{Parity, Permutation};
use crate::sequence::{PermSequence, TranspSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

/// Stable rule identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    #[serde(rename = "SMALL")]
    Small,
    #[serde(rename = "DISCONNECTED")]
    Disconnected,
    #[serde(rename = "DEG1")]
    Deg1,
    #[serde(rename = "DEG2")]
    Deg2,
    #[serde(rename = "COUNT")]
    Count,
    #[serde(rename = "CENTRAL")]
    Central,
    #[serde(rename = "SUPSEQ-BIKE")]
    SupseqBike,
    #[serde(rename = "NAMED")]
    Named,
    #[serde(rename = "NPC2")]
    Npc2,
    #[serde(rename = "WNPC1")]
    Wnpc1,
    #[serde(rename = "NONE")]
    NoRule,
    #[serde(rename = "CI-SMALL")]
    CiSmall,
    #[serde(rename = "CI-N3")]
    CiN3,
    #[serde(rename = "CI-TREE")]
    CiTree,
    #[serde(rename = "CI-CIRCUIT")]
    CiCircuit,
    #[serde(rename = "CI-FOUR")]
    CiFour,
    #[serde(rename = "CI-SHARED-NONSIMPLE")]
    CiSharedNonsimple,
    #[serde(rename = "CI-EVEN-NONTWIG")]
    CiEvenNontwig,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Small => "SMALL",
            Rule::Disconnected => "DISCONNECTED",
            Rule::Deg1 => "DEG1",
            Rule::Deg2 => "DEG2",
            Rule::Count => "COUNT",
            Rule::Central => "CENTRAL",
            Rule::SupseqBike => "SUPSEQ-BIKE",
            Rule::Named => "NAMED",
            Rule::Npc2 => "NPC2",
            Rule::Wnpc1 => "WNPC1",
            Rule::NoRule => "NONE",
            Rule::CiSmall => "CI-SMALL",
            Rule::CiN3 => "CI-N3",
            Rule::CiTree => "CI-TREE",
            Rule::CiCircuit => "CI-CIRCUIT",
            Rule::CiFour => "CI-FOUR",
            Rule::CiSharedNonsimple => "CI-SHARED-NONSIMPLE",
            Rule::CiEvenNontwig => "CI-EVEN-NONTWIG",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Evidence for a structural verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    None,
    /// A vertex whose only neighbor is joined by a single edge.
    Leaf {
        vertex: usize,
        neighbor: usize,
    },
    /// Adjacent vertices of degree 2.
    AdjacentPair {
        x: usize,
        y: usize,
    },
    Count {
        arrangements: String,
        required: String,
    },
    /// Two vertices adjacent to every other vertex.
    Axle {
        x: usize,
        y: usize,
    },
    /// `map[i]` is the host vertex playing vertex `i` of the named graph.
    Embedding {
        name: String,
        map: Vec<usize>,
    },
    Cut {
        side: Vec<usize>,
        cut_size: usize,
    },
    Components {
        components: Vec<Vec<usize>>,
    },
    /// A component and the vertices showing why it passes or fails.
    Component {
        component: Vec<usize>,
        vertices: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralVerdict {
    pub answer: Answer,
    pub rule: Rule,
    pub witness: Witness,
}

impl StructuralVerdict {
    fn new(answer: Answer, rule: Rule, witness: Witness) -> Self {
        StructuralVerdict {
            answer,
            rule,
            witness,
        }
    }

    /// Re-checks the witness against `g`. `Unknown` verdicts validate
    /// trivially.
    pub fn validate(&self, g: &Multigraph) -> bool {
        validate_witness(self, g)
    }
}

// ---------------------------------------------------------------------------
// perm-completeness, structural

fn named_patterns() -> &'static [(&'static str, Multigraph)] {
    static PATTERNS: OnceLock<Vec<(&'static str, Multigraph)>> = OnceLock::new();
    PATTERNS.get_or_init(|| {
        ["rect", "a", "c", "b", "d"]
            .iter()
            .map(|&name| {
                let s = named_transpositional(name).expect("catalog entry");
                (name, Multigraph::from_sequence(&s))
            })
            .collect()
    })
}

/// Names of the perm-complete graphs the `NAMED` rule looks for.
pub fn named_rule_catalog() -> Vec<&'static str> {
    named_patterns().iter().map(|(n, _)| *n).collect()
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Largest vertex count for which the cut rules scan every bipartition.
pub const MAX_CUT_SCAN_VERTICES: usize = 20;

pub fn perm_complete_structural(g: &Multigraph) -> StructuralVerdict {
    use Answer::*;
    let n = g.vertex_count();
    if n <= 2 {
        return StructuralVerdict::new(Yes, Rule::Small, Witness::None);
    }
    let comps = g.components();
    if comps.len() > 1 {
        let components = comps.into_iter().map(|c| c.vertices).collect();
        return StructuralVerdict::new(No, Rule::Disconnected, Witness::Components { components });
    }
    for v in 0..n {
        let nb = g.neighbors(v);
        if nb.len() == 1 && g.multiplicity(v, nb[0]) == 1 {
            let witness = Witness::Leaf {
                vertex: v,
                neighbor: nb[0],
            };
            return StructuralVerdict::new(No, Rule::Deg1, witness);
        }
    }
    if g.is_simple() && n >= 4 {
        for (x, y, _) in g.edges() {
            if g.degree(x) == 2 && g.degree(y) == 2 {
                return StructuralVerdict::new(No, Rule::Deg2, Witness::AdjacentPair { x, y });
            }
        }
    }
    let arrangements = arrangements_count(&g.canonical_sequence());
    let required = alt_order(n);
    if arrangements < required {
        let witness = Witness::Count {
            arrangements: arrangements.to_string(),
            required: required.to_string(),
        };
        return StructuralVerdict::new(No, Rule::Count, witness);
    }
    let central = g.central_vertices();
    if central.len() >= 2 {
        let rule = if g.is_simple() {
            Rule::Central
        } else {
            Rule::SupseqBike
        };
        let witness = Witness::Axle {
            x: central[0],
            y: central[1],
        };
        return StructuralVerdict::new(Yes, rule, witness);
    }
    for (name, pattern) in named_patterns() {
        if pattern.vertex_count() == n {
            if let Some(map) = g.find_spanning_copy(pattern) {
                let witness = Witness::Embedding {
                    name: name.to_string(),
                    map,
                };
                return StructuralVerdict::new(Yes, Rule::Named, witness);
            }
        }
    }
    if g.is_simple() && n <= MAX_CUT_SCAN_VERTICES {
        if let Some(v) = cut_scan(g) {
            return v;
        }
    }
    StructuralVerdict::new(Unknown, Rule::NoRule, Witness::None)
}

fn mask_set(mask: u32, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

fn npc2_holds(g: &Multigraph, side: &BTreeSet<usize>) -> Option<usize> {
    let n = g.vertex_count();
    let other: BTreeSet<usize> = (0..n).filter(|v| !side.contains(v)).collect();
    let cut = g.cross_edges(side).ok()?;
    let c = cut.len();
    let ok = side.len().min(other.len()) >= 2
        && c > 0
        && c < side.len().min(other.len())
        && g.induced(side).is_connected()
        && g.induced(&other).is_connected();
    ok.then_some(c)
}

fn wnpc1_holds(g: &Multigraph, side: &BTreeSet<usize>) -> Option<usize> {
    let n = g.vertex_count();
    let cut = g.cross_edges(side).ok()?;
    let c = cut.len();
    let ok = n - side.len() >= 2 && c <= side.len() && g.induced_is_forest(side);
    ok.then_some(c)
}

fn cut_scan(g: &Multigraph) -> Option<StructuralVerdict> {
    let n = g.vertex_count();
    let full = (1u32 << n) - 1;
    // sides containing vertex 0 cover every unordered bipartition once
    for mask in (1..full).filter(|m| m & 1 == 1) {
        let side = mask_set(mask, n);
        if let Some(cut_size) = npc2_holds(g, &side) {
            let witness = Witness::Cut {
                side: side.into_iter().collect(),
                cut_size,
            };
            return Some(StructuralVerdict::new(Answer::No, Rule::Npc2, witness));
        }
    }
    for mask in 1..full {
        let side = mask_set(mask, n);
        if let Some(cut_size) = wnpc1_holds(g, &side) {
            let witness = Witness::Cut {
                side: side.into_iter().collect(),
                cut_size,
            };
            return Some(StructuralVerdict::new(Answer::No, Rule::Wnpc1, witness));
        }
    }
    None
}

fn validate_witness(v: &StructuralVerdict, g: &Multigraph) -> bool {
    let n = g.vertex_count();
    match (&v.rule, &v.witness) {
        (Rule::NoRule, Witness::None) => v.answer == Answer::Unknown,
        (Rule::Small, Witness::None) => n <= 2,
        (Rule::Disconnected, Witness::Components { components }) => {
            n >= 3 && components.len() >= 2 && *components == component_sets(g)
        }
        (Rule::Deg1, Witness::Leaf { vertex, neighbor }) => {
            n >= 3 && g.neighbors(*vertex) == [*neighbor] && g.multiplicity(*vertex, *neighbor) == 1
        }
        (Rule::Deg2, Witness::AdjacentPair { x, y }) => {
            n >= 4
                && g.is_simple()
                && g.multiplicity(*x, *y) > 0
                && g.degree(*x) == 2
                && g.degree(*y) == 2
        }
        (Rule::Count, Witness::Count { arrangements, .. }) => {
            let real = arrangements_count(&g.canonical_sequence());
            real.to_string() == *arrangements && real < alt_order(n)
        }
        (Rule::Central | Rule::SupseqBike, Witness::Axle { x, y }) => {
            x != y && g.is_connected() && [*x, *y].iter().all(|&c| g.degree(c) + 1 == n)
        }
        (Rule::Named, Witness::Embedding { name, map }) => {
            let Some((_, pattern)) = named_patterns().iter().find(|(k, _)| k == name) else {
                return false;
            };
            let distinct: BTreeSet<_> = map.iter().collect();
            pattern.vertex_count() == n
                && map.len() == n
                && distinct.len() == n
                && map.iter().all(|&v| v < n)
                && pattern
                    .edges()
                    .all(|(a, b, _)| g.multiplicity(map[a], map[b]) > 0)
        }
        (Rule::Npc2, Witness::Cut { side, cut_size }) => {
            let side: BTreeSet<usize> = side.iter().copied().collect();
            g.is_simple() && npc2_holds(g, &side) == Some(*cut_size)
        }
        (Rule::Wnpc1, Witness::Cut { side, cut_size }) => {
            let side: BTreeSet<usize> = side.iter().copied().collect();
            g.is_simple() && g.is_connected() && wnpc1_holds(g, &side) == Some(*cut_size)
        }
        (rule, Witness::Component { component, .. }) if rule.id().starts_with("CI-") => {
            let expected = ci_structural_graph(g);
            expected.rule == *rule
                && expected.answer == v.answer
                && matches!(&expected.witness, Witness::Component { component: c, .. } if c == component)
        }
        _ => false,
    }
}

fn component_sets(g: &Multigraph) -> Vec<Vec<usize>> {
    g.components().into_iter().map(|c| c.vertices).collect()
}

// ---------------------------------------------------------------------------
// oracle verdicts

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OracleVerdict {
    Yes,
    No,
    Refused { refusal: Refusal },
}

impl OracleVerdict {
    pub fn answer(&self) -> Option<Answer> {
        match self {
            OracleVerdict::Yes => Some(Answer::Yes),
            OracleVerdict::No => Some(Answer::No),
            OracleVerdict::Refused { .. } => None,
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            OracleVerdict::Yes
        } else {
            OracleVerdict::No
        }
    }
}

impl fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleVerdict::Yes => f.write_str("yes"),
            OracleVerdict::No => f.write_str("no"),
            OracleVerdict::Refused { refusal } => write!(f, "refused ({refusal})"),
        }
    }
}

/// Perm-completeness by enumeration: `|Prod(s)| = n!/2`.
pub fn perm_complete_bruteforce(s: &TranspSequence, budget: &Budget) -> OracleVerdict {
    match enumerate_prod(s, budget) {
        Ok(p) => OracleVerdict::from_bool(p.is_full_coset()),
        Err(refusal) => OracleVerdict::Refused { refusal },
    }
}

/// Whether `s` is perm-complete and no single-term deletion is.
pub fn is_minimally_perm_complete(
    s: &TranspSequence,
    budget: &Budget,
) -> std::result::Result<bool, Refusal> {
    if !enumerate_prod(s, budget)?.is_full_coset() {
        return Ok(false);
    }
    for i in 0..s.len() {
        if enumerate_prod(&s.without(i), budget)?.is_full_coset() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ci_of(prod: &ProdSet, product: &Permutation) -> bool {
    let ty = product.cycle_type();
    prod.members().iter().all(|p| p.cycle_type() == ty)
}

/// Conjugacy invariance by enumeration, for arbitrary permutations.
pub fn ci_bruteforce(s: &PermSequence, budget: &Budget) -> OracleVerdict {
    match enumerate_prod_general(s, budget) {
        Ok(p) => OracleVerdict::from_bool(ci_of(&p, &s.product())),
        Err(refusal) => OracleVerdict::Refused { refusal },
    }
}

pub fn ci_bruteforce_transpositional(u: &TranspSequence, budget: &Budget) -> OracleVerdict {
    match enumerate_prod(u, budget) {
        Ok(p) => OracleVerdict::from_bool(ci_of(&p, &u.product())),
        Err(refusal) => OracleVerdict::Refused { refusal },
    }
}

/// `|Prod(s)| = 1`.
pub fn is_constant_product(
    s: &PermSequence,
    budget: &Budget,
) -> std::result::Result<bool, Refusal> {
    Ok(enumerate_prod_general(s, budget)?.len() == 1)
}

// ---------------------------------------------------------------------------
// conjugacy invariance, structural

pub fn ci_structural(u: &TranspSequence) -> StructuralVerdict {
    ci_structural_graph(&Multigraph::from_sequence(u))
}

/// The complete characterization, applied to each component in turn. The
/// first failing component decides; a passing graph reports the rule of
/// its largest component.
pub fn ci_structural_graph(g: &Multigraph) -> StructuralVerdict {
    let mut best: Option<(usize, StructuralVerdict)> = None;
    for comp in g.components() {
        let v = ci_component(&comp.graph, &comp.vertices);
        if v.answer == Answer::No {
            return v;
        }
        let size = comp.vertices.len();
        if best.as_ref().is_none_or(|(s, _)| size > *s) {
            best = Some((size, v));
        }
    }
    best.map(|(_, v)| v)
        .unwrap_or_else(|| StructuralVerdict::new(Answer::Yes, Rule::CiSmall, Witness::None))
}

fn ci_component(g: &Multigraph, labels: &[usize]) -> StructuralVerdict {
    use Answer::*;
    let k = g.vertex_count();
    let lift = |vs: &[usize]| -> Vec<usize> { vs.iter().map(|&v| labels[v]).collect() };
    let witness = |vs: &[usize]| Witness::Component {
        component: labels.to_vec(),
        vertices: lift(vs),
    };
    if k <= 2 {
        return StructuralVerdict::new(Yes, Rule::CiSmall, witness(&[]));
    }
    if k == 3 {
        let odd = g.total_multiplicity() % 2 == 1;
        let simple_edge = g.edges().find(|&(_, _, m)| m == 1);
        let tree = g.is_multitree();
        let ans = if odd || (tree && simple_edge.is_some()) {
            Yes
        } else {
            No
        };
        let shown: Vec<usize> = match simple_edge {
            Some((a, b, _)) if tree && !odd => vec![a, b],
            _ => Vec::new(),
        };
        return StructuralVerdict::new(ans, Rule::CiN3, witness(&shown));
    }
    if !g.is_multitree() {
        let cycle = shortest_cycle(g).expect("a connected non-tree has a cycle");
        if cycle.len() == 3 {
            // connected with k >= 4, so some vertex hangs off the triangle
            let tail = (0..k)
                .find(|&v| !cycle.contains(&v) && cycle.iter().any(|&c| g.multiplicity(c, v) > 0))
                .expect("connected");
            let mut shown = cycle.clone();
            shown.push(tail);
            return StructuralVerdict::new(No, Rule::CiFour, witness(&shown));
        }
        return StructuralVerdict::new(No, Rule::CiCircuit, witness(&cycle));
    }
    for v in 0..k {
        let heavy: Vec<usize> = g
            .neighbors(v)
            .into_iter()
            .filter(|&w| g.multiplicity(v, w) > 1)
            .collect();
        if heavy.len() >= 2 {
            return StructuralVerdict::new(
                No,
                Rule::CiSharedNonsimple,
                witness(&[v, heavy[0], heavy[1]]),
            );
        }
    }
    let twigs = g.twig_profiles();
    for (a, b, m) in g.edges() {
        if m % 2 == 0 {
            let good = twigs.iter().any(|t| t.edge == (a, b) && t.hub_degree == 2);
            if !good {
                return StructuralVerdict::new(No, Rule::CiEvenNontwig, witness(&[a, b]));
            }
        }
    }
    StructuralVerdict::new(Yes, Rule::CiTree, witness(&[]))
}

/// Vertices of a shortest cycle of the underlying simple graph.
fn shortest_cycle(g: &Multigraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut best: Option<Vec<usize>> = None;
    for (a, b, _) in g.edges() {
        // shortest a-b path avoiding the edge (a b)
        let mut prev = vec![usize::MAX; n];
        prev[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for y in g.neighbors(x) {
                if (x, y) == (a, b) || prev[y] != usize::MAX {
                    continue;
                }
                prev[y] = x;
                queue.push_back(y);
            }
        }
        if prev[b] == usize::MAX {
            continue;
        }
        let mut path = vec![b];
        let mut x = b;
        while x != a {
            x = prev[x];
            path.push(x);
        }
        if best.as_ref().is_none_or(|c| path.len() < c.len()) {
            best = Some(path);
        }
    }
    best
}

// ---------------------------------------------------------------------------
// reports

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Question {
    PermComplete,
    ConjugacyInvariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Paths {
    pub structural: bool,
    pub oracle: bool,
}

impl Paths {
    pub const BOTH: Paths = Paths {
        structural: true,
        oracle: true,
    };
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    #[serde(flatten)]
    pub verdict: OracleVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prod_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
    /// Cycle type to number of products with it.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub spectrum: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Agree,
    Disagree,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub input: String,
    pub question: Question,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structural: Option<StructuralVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    pub agreement: Agreement,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn is_refused(&self) -> bool {
        matches!(
            self.oracle,
            Some(OracleSummary {
                verdict: OracleVerdict::Refused { .. },
                ..
            })
        )
    }
}

fn summarize(
    prod: std::result::Result<ProdSet, Refusal>,
    decide: impl FnOnce(&ProdSet) -> bool,
) -> OracleSummary {
    match prod {
        Ok(p) => OracleSummary {
            verdict: OracleVerdict::from_bool(decide(&p)),
            prod_size: Some(p.len()),
            parity: Some(p.parity()),
            spectrum: p
                .cycle_type_spectrum()
                .into_iter()
                .map(|(t, c)| (t.to_string(), c))
                .collect(),
        },
        Err(refusal) => OracleSummary {
            verdict: OracleVerdict::Refused { refusal },
            prod_size: None,
            parity: None,
            spectrum: BTreeMap::new(),
        },
    }
}

fn agreement(structural: &Option<StructuralVerdict>, oracle: &Option<OracleSummary>) -> Agreement {
    match (structural, oracle) {
        (Some(s), Some(o)) if s.answer != Answer::Unknown => match o.verdict.answer() {
            Some(a) if a == s.answer => Agreement::Agree,
            Some(_) => Agreement::Disagree,
            None => Agreement::NotApplicable,
        },
        _ => Agreement::NotApplicable,
    }
}

pub fn classify_sequence(
    s: &TranspSequence,
    question: Question,
    paths: Paths,
    budget: &Budget,
) -> ClassificationReport {
    let g = Multigraph::from_sequence(s);
    let structural = paths.structural.then(|| match question {
        Question::PermComplete => perm_complete_structural(&g),
        Question::ConjugacyInvariant => ci_structural_graph(&g),
    });
    let oracle = paths.oracle.then(|| {
        let prod = enumerate_prod(s, budget);
        match question {
            Question::PermComplete => summarize(prod, |p| p.is_full_coset()),
            Question::ConjugacyInvariant => summarize(prod, |p| ci_of(p, &s.product())),
        }
    });
    let agreement = agreement(&structural, &oracle);
    ClassificationReport {
        input: s.to_string(),
        question,
        structural,
        oracle,
        agreement,
    }
}

/// Oracle-only report for a sequence of arbitrary permutations.
pub fn classify_permutational(
    s: &PermSequence,
    question: Question,
    budget: &Budget,
) -> ClassificationReport {
    let prod = enumerate_prod_general(s, budget);
    let product = s.product();
    let oracle = match question {
        Question::PermComplete => summarize(prod, |p| p.is_full_coset()),
        Question::ConjugacyInvariant => summarize(prod, |p| ci_of(p, &product)),
    };
    ClassificationReport {
        input: s.to_string(),
        question,
        structural: None,
        oracle: Some(oracle),
        agreement: Agreement::NotApplicable,
    }
}

// ---------------------------------------------------------------------------
// extras

/// Replaces each multiplicity `m > 3` by `2 + m mod 2`, dropping the later
/// occurrences and keeping the order of what survives.
pub fn reduce_sequence(u: &TranspSequence) -> TranspSequence {
    let g = Multigraph::from_sequence(u);
    let mut keep: BTreeMap<(usize, usize), usize> = g
        .edges()
        .map(|(a, b, m)| ((a, b), if m <= 3 { m } else { 2 + m % 2 }))
        .collect();
    let terms = u
        .terms()
        .iter()
        .filter(|t| {
            let left = keep.get_mut(&t.pair()).expect("edge of u");
            if *left > 0 {
                *left -= 1;
                true
            } else {
                false
            }
        })
        .copied()
        .collect();
    TranspSequence::new(u.degree(), terms).expect("subsequence of u")
}

/// Whether one of three sufficient conditions puts `f` in `Prod(s)`, where
/// `s` realizes `g` (assumed simple and perm-complete) plus the new vertex
/// `x = n` joined to every vertex of `w`:
///
/// 1. `xf ∈ W`;
/// 2. `w₀f = w₁ ≠ w₀` for some `w₀, w₁ ∈ W`;
/// 3. `xf = x` and the subgraph induced on `W` has a perfect matching.
///
/// `false` means none of them applies, not that `f ∉ Prod(s)`.
pub fn complicated_guarantee(
    g: &Multigraph,
    w: &BTreeSet<usize>,
    x: usize,
    f: &Permutation,
) -> Result<bool> {
    let n = g.vertex_count();
    if x != n {
        return Err(Error::domain(format!("the new vertex must be {n}")));
    }
    if !g.is_simple() {
        return Err(Error::domain("the base graph must be simple"));
    }
    if w.is_empty() || w.iter().any(|&v| v >= n) {
        return Err(Error::domain("W must be a nonempty set of old vertices"));
    }
    if f.degree() != n + 1 {
        return Err(Error::DegreeMismatch {
            left: n + 1,
            right: f.degree(),
        });
    }
    let edges = g.distinct_edge_count() + w.len();
    if f.parity() != Parity::of_len(edges) {
        return Err(Error::domain(format!(
            "f must be {} to match the {edges} edges",
            Parity::of_len(edges)
        )));
    }
    let c1 = w.contains(&f.image(x));
    let c2 = w.iter().any(|&w0| {
        let w1 = f.image(w0);
        w1 != w0 && w.contains(&w1)
    });
    let c3 = f.image(x) == x && g.has_perfect_matching(w);
    Ok(c1 || c2 || c3)
}

/// `Σℓᵢ − d` over the `d` nontrivial cycles, the length of a shortest
/// transposition factorization.
pub fn minimal_factorization_length(f: &Permutation) -> usize {
    f.degree() - f.cycle_lengths().len()
}

pub const DEFAULT_PHI_SUPPORT: usize = 7;

/// Number of ordered minimal-length transposition factorizations of `f`.
pub fn count_minimal_factorizations(
    f: &Permutation,
    max_support: usize,
) -> std::result::Result<u64, Refusal> {
    let support: Vec<usize> = f.support().into_iter().collect();
    if support.len() > max_support {
        return Err(Refusal::SupportTooLarge {
            support: support.len(),
            limit: max_support,
        });
    }
    // restrict to the support
    let index: BTreeMap<usize, usize> = support.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let local: Vec<usize> = support.iter().map(|&p| index[&f.image(p)]).collect();
    let mut memo: std::collections::HashMap<Vec<usize>, u64> = std::collections::HashMap::new();

    fn count(g: Vec<usize>, memo: &mut std::collections::HashMap<Vec<usize>, u64>) -> u64 {
        if g.iter().enumerate().all(|(i, &x)| i == x) {
            return 1;
        }
        if let Some(&c) = memo.get(&g) {
            return c;
        }
        // f = t∘f' with f' shorter exactly when t joins two points of one cycle
        let k = g.len();
        let mut cycle_id = vec![usize::MAX; k];
        for s in 0..k {
            if cycle_id[s] == usize::MAX {
                let mut x = s;
                while cycle_id[x] == usize::MAX {
                    cycle_id[x] = s;
                    x = g[x];
                }
            }
        }
        let mut total = 0;
        for a in 0..k {
            for b in a + 1..k {
                if cycle_id[a] == cycle_id[b] {
                    // t∘g: x ↦ (x t) g
                    let mut next = g.clone();
                    next[a] = g[b];
                    next[b] = g[a];
                    total += count(next, memo);
                }
            }
        }
        memo.insert(g, total);
        total
    }
    Ok(count(local, &mut memo))
}

/// If `P = Prod(s)` is a right coset `Hg` of a subgroup `H`, returns `|H|`.
pub fn coset_check(
    s: &TranspSequence,
    budget: &Budget,
) -> std::result::Result<Option<usize>, Refusal> {
    let prod = enumerate_prod(s, budget)?;
    Ok(right_coset_subgroup_order(prod.members()))
}

fn right_coset_subgroup_order(members: &[Permutation]) -> Option<usize> {
    let g_inv = members.first()?.inverse();
    let h: HashSet<Permutation> = members
        .iter()
        .map(|p| p.compose_unchecked(&g_inv))
        .collect();
    let n = g_inv.degree();
    if factorial(n) % BigUint::from(h.len()) != BigUint::from(0u8) {
        return None;
    }
    // grow the generated subgroup one generator at a time; it must never
    // leave H
    let mut group: HashSet<Permutation> = HashSet::from([Permutation::identity(n)]);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut sorted: Vec<&Permutation> = h.iter().collect();
    sorted.sort();
    for cand in sorted {
        if group.contains(cand) {
            continue;
        }
        gens.push(cand.clone());
        let mut queue: VecDeque<Permutation> = group.iter().cloned().collect();
        while let Some(p) = queue.pop_front() {
            for gen in &gens {
                let q = p.compose_unchecked(gen);
                if !group.contains(&q) {
                    if !h.contains(&q) {
                        return None;
                    }
                    group.insert(q.clone());
                    queue.push_back(q);
                }
            }
        }
    }
    (group.len() == h.len()).then_some(h.len())
}
