#![allow(dead_code)]

use std::collections::BTreeSet;

use permgraph::perm::{compose_transpositions, Permutation, Transposition};
use permgraph::sequence::TranspSequence;

/// Lexicographic successor of `v`; false when `v` is the last arrangement.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every distinct rearrangement of `s`, in lexicographic order.
pub fn rearrangements(s: &TranspSequence) -> Vec<Vec<Transposition>> {
    let mut terms = s.terms().to_vec();
    terms.sort();
    let mut out = vec![terms.clone()];
    while next_permutation(&mut terms) {
        out.push(terms.clone());
    }
    out
}

/// `Prod(s)` by listing every rearrangement.
pub fn naive_prod(s: &TranspSequence) -> BTreeSet<Permutation> {
    rearrangements(s)
        .iter()
        .map(|r| compose_transpositions(r, s.degree()).unwrap())
        .collect()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Whether `f` is one `n`-cycle that, read from 0, climbs to `n - 1` and
/// then falls back: `(0 p n-1 q)` with `p` increasing and `q` decreasing.
pub fn is_unimodal_cycle(f: &Permutation) -> bool {
    let n = f.degree();
    let mut cycle = vec![0];
    let mut x = f.image(0);
    while x != 0 {
        cycle.push(x);
        x = f.image(x);
    }
    if cycle.len() != n {
        return false;
    }
    let top = cycle.iter().position(|&x| x == n - 1).unwrap();
    cycle[..=top].windows(2).all(|w| w[0] < w[1]) && cycle[top..].windows(2).all(|w| w[0] > w[1])
}

/// Every nonempty proper subsequence of `⟨0, .., n-1⟩`, as point lists.
pub fn proper_subsequences(n: usize) -> Vec<Vec<usize>> {
    (1..(1usize << n) - 1)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// Distances from the identity in the Cayley graph of `Sym(n)` generated
/// by all transpositions, by breadth-first search.
pub fn transposition_distances(n: usize) -> std::collections::HashMap<Permutation, usize> {
    let gens: Vec<Permutation> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| Permutation::transposition(n, a, b).unwrap()))
        .collect();
    let mut dist = std::collections::HashMap::new();
    dist.insert(Permutation::identity(n), 0);
    let mut frontier = vec![Permutation::identity(n)];
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for p in &frontier {
            for g in &gens {
                let q = p.compose(g).unwrap();
                if !dist.contains_key(&q) {
                    dist.insert(q.clone(), d);
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// Ordered factorizations of `f` into exactly `k` transpositions, by
/// trying every word of length `k`.
pub fn count_factorizations_naive(f: &Permutation, k: usize) -> u64 {
    let n = f.degree();
    let gens: Vec<Permutation> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| Permutation::transposition(n, a, b).unwrap()))
        .collect();
    let mut words = vec![Permutation::identity(n)];
    for _ in 0..k {
        words = words
            .iter()
            .flat_map(|p| gens.iter().map(move |g| p.compose(g).unwrap()))
            .collect();
    }
    words.iter().filter(|p| *p == f).count() as u64
}
