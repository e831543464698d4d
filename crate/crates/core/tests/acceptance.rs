//! Acceptance suite. Runs without the libtest harness and prints one
//! line per criterion; exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use permgraph::classify::{
    ci_bruteforce, ci_bruteforce_transpositional, ci_structural_graph,
    count_minimal_factorizations, is_minimally_perm_complete, perm_complete_bruteforce,
    perm_complete_structural, reduce_sequence, Answer, OracleVerdict,
};
use permgraph::construct::{
    bike, bike_product_sequence, circuit_realizer, circuit_target, complete,
    conglomerate_multigraphs, named_sequence, named_transpositional, sigma, tau, wheel, Named,
    NumberSeq,
};
use permgraph::enumeration::{enumerate_prod, es_equivalent, Budget};
use permgraph::multigraph::{connected_classes, Multigraph};
use permgraph::perm::{compose_transpositions, CycleType, Parity, Permutation, Transposition};
use permgraph::sequence::{PermSequence, TranspSequence};

use common::{is_unimodal_cycle, proper_subsequences, rearrangements};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, ok: impl Into<String>, fail: impl Into<String>) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(fail.into())
    }
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("Prod(tau(3)) is exactly the two 3-cycles", c01_tau3),
        ("K3, K4, K5 are perm-complete by oracle", c02_complete),
        ("rect has Prod = Blt(4) and is minimal", c03_rect),
        ("bikes B0..B3 are minimally perm-complete", c04_bikes),
        (
            "bike product identity for injective x over 2..7, t <= 3",
            c05_bike_identity,
        ),
        (
            "path and circuit rearrangement product shapes, n <= 5",
            c06_numbers,
        ),
        (
            "circuit realizer for every proper h, n = 3..7",
            c07_realizer,
        ),
        (
            "structural vs oracle perm-completeness, simple graphs n <= 5",
            c08_structural_pc,
        ),
        (
            "CI characterization, multigraphs n <= 5, multiplicity <= 8",
            c09_ci_sweep,
        ),
        ("triangle plus twig forces non-CI, n = 4, 5", c10_four),
        (
            "permutational CI counterexamples and conglomerates",
            c11_permutational,
        ),
        ("minimal factorization counts", c12_phi),
        ("seeded random property suites", c13_random),
        ("wheel report (not an assertion)", c14_wheels),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} [{detail}] ({ms} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} [{detail}] ({ms} ms)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn budget() -> Budget {
    Budget::default()
}

fn c01_tau3() -> Outcome {
    let prod = enumerate_prod(&tau(3).map_err(|e| e.to_string())?, &budget())
        .map_err(|r| r.to_string())?;
    let got: Vec<String> = prod.members().iter().map(|p| p.to_string()).collect();
    check(
        got == ["(0 1 2)", "(0 2 1)"],
        got.join(", "),
        format!("got {got:?}"),
    )
}

fn c02_complete() -> Outcome {
    let mut parts = Vec::new();
    for n in 3..=5 {
        let s = complete(n).unwrap().canonical_sequence();
        let start = Instant::now();
        let prod = enumerate_prod(&s, &budget()).map_err(|r| format!("K{n}: {r}"))?;
        let took = start.elapsed();
        let parity = Parity::of_len(n * (n - 1) / 2);
        if !prod.is_full_coset() || prod.parity() != parity {
            return Err(format!(
                "K{n}: |Prod| = {}, parity {}",
                prod.len(),
                prod.parity()
            ));
        }
        if took > Duration::from_secs(120) {
            return Err(format!("K{n} took {took:?}"));
        }
        parts.push(format!("K{n}: {} {}", prod.len(), parity));
    }
    Ok(parts.join("; "))
}

fn c03_rect() -> Outcome {
    let s = named_transpositional("rect").unwrap();
    let prod = enumerate_prod(&s, &budget()).map_err(|r| r.to_string())?;
    let odd = prod.len() == 12 && prod.members().iter().all(|f| f.parity() == Parity::Odd);
    if !odd {
        return Err(format!("|Prod| = {}", prod.len()));
    }
    for i in 0..s.len() {
        let v = perm_complete_bruteforce(&s.without(i), &budget());
        if v != OracleVerdict::No {
            return Err(format!("deleting term {i} gives {v}"));
        }
    }
    Ok("12 odd products, 5 deletions all non-perm-complete".into())
}

fn c04_bikes() -> Outcome {
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    for n in 0..=3 {
        let s = bike(n).canonical_sequence();
        let pc = perm_complete_bruteforce(&s, &budget());
        if pc != OracleVerdict::Yes {
            bad.push(format!("B{n} oracle {pc}"));
            continue;
        }
        let kept: Vec<usize> = (0..s.len())
            .filter(|&i| perm_complete_bruteforce(&s.without(i), &budget()) != OracleVerdict::No)
            .collect();
        if kept.is_empty() {
            parts.push(format!("B{n} minimal ({} edges)", s.len()));
        } else {
            // on 2 points the empty sequence has Prod = {id} = Alt(2)
            bad.push(format!(
                "B{n} perm-complete but deleting term(s) {kept:?} leaves it perm-complete"
            ));
        }
    }
    let detail = parts.join(", ");
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", bad.join("; ")))
    }
}

fn injective_words(points: &[usize], len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for w in injective_words(points, len - 1) {
        for &p in points {
            if !w.contains(&p) {
                let mut v = w.clone();
                v.push(p);
                out.push(v);
            }
        }
    }
    out
}

fn c05_bike_identity() -> Outcome {
    let points: Vec<usize> = (2..=7).collect();
    let mut count = 0;
    for t in 1..=3 {
        for x in injective_words(&points, 2 * t) {
            let r = bike_product_sequence(&NumberSeq::new(x.clone()).unwrap())
                .map_err(|e| e.to_string())?;
            let expected = Permutation::from_cycles(r.degree(), &[vec![0, 1], x.clone()]).unwrap();
            if r.product() != expected {
                return Err(format!("x = {x:?}: {} != {expected}", r.product()));
            }
            count += 1;
        }
    }
    Ok(format!("{count} sequences"))
}

fn c06_numbers() -> Outcome {
    let mut paths = 0;
    let mut circuits = 0;
    for n in 2..=5 {
        for r in rearrangements(&tau(n).unwrap()) {
            let f = compose_transpositions(&r, n).unwrap();
            if !is_unimodal_cycle(&f) {
                return Err(format!("tau({n}) rearrangement gives {f}"));
            }
            paths += 1;
        }
    }
    for n in 3..=5 {
        let targets: BTreeSet<Permutation> = proper_subsequences(n)
            .into_iter()
            .map(|h| circuit_target(&NumberSeq::new(h).unwrap(), n).unwrap())
            .collect();
        for r in rearrangements(&sigma(n).unwrap()) {
            let f = compose_transpositions(&r, n).unwrap();
            if !targets.contains(&f) {
                return Err(format!("sigma({n}) rearrangement gives {f}"));
            }
            circuits += 1;
        }
    }
    Ok(format!(
        "{paths} path and {circuits} circuit rearrangements"
    ))
}

fn c07_realizer() -> Outcome {
    let mut count = 0;
    for n in 3..=7 {
        let circuit = Multigraph::from_sequence(&sigma(n).unwrap());
        for h in proper_subsequences(n) {
            let h = NumberSeq::new(h).unwrap();
            let f = circuit_realizer(&h, n).map_err(|e| format!("n = {n}, h = {h}: {e}"))?;
            let target = circuit_target(&h, n).unwrap();
            if Multigraph::from_sequence(&f) != circuit || f.product() != target {
                return Err(format!("n = {n}, h = {h}: {f} has product {}", f.product()));
            }
            count += 1;
        }
    }
    Ok(format!("{count} cases"))
}

fn c08_structural_pc() -> Outcome {
    let mut total = 0;
    let mut unknown = 0;
    for n in 1..=5 {
        for g in connected_classes(n, n * (n - 1) / 2, true).map_err(|e| e.to_string())? {
            total += 1;
            let verdict = perm_complete_structural(&g);
            if !verdict.validate(&g) {
                return Err(format!("{g}: witness does not validate"));
            }
            if verdict.answer == Answer::Unknown {
                unknown += 1;
                continue;
            }
            let oracle = perm_complete_bruteforce(&g.canonical_sequence(), &budget());
            if oracle.answer() != Some(verdict.answer) {
                return Err(format!(
                    "{g}: structural {} ({}), oracle {oracle}",
                    verdict.answer, verdict.rule
                ));
            }
        }
    }
    Ok(format!(
        "{total} graphs, {} decisive, {unknown} unknown ({:.1}%)",
        total - unknown,
        100.0 * unknown as f64 / total as f64
    ))
}

fn c09_ci_sweep() -> Outcome {
    let mut total = 0;
    let mut yes = 0;
    for n in 1..=5 {
        for g in connected_classes(n, 8, false).map_err(|e| e.to_string())? {
            total += 1;
            let s = g.canonical_sequence();
            let oracle = ci_bruteforce_transpositional(&s, &budget());
            let structural = ci_structural_graph(&g);
            if !structural.validate(&g) {
                return Err(format!("{g}: witness does not validate"));
            }
            if oracle.answer() != Some(structural.answer) {
                return Err(format!(
                    "{g}: structural {} ({}), oracle {oracle}",
                    structural.answer, structural.rule
                ));
            }
            yes += usize::from(structural.answer == Answer::Yes);
        }
    }
    Ok(format!("{total} classes, {yes} CI, 0 disagreements"))
}

/// Multisets of `k` edges on `n` vertices.
fn edge_multisets(n: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    fn go(
        edges: &[(usize, usize)],
        from: usize,
        k: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..edges.len() {
            cur.push(edges[i]);
            go(edges, i, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&edges, 0, k, &mut Vec::new(), &mut out);
    out
}

fn c10_four() -> Outcome {
    let h = named_transpositional("h4").unwrap();
    let mut instances = 0;
    let mut transposition_products = 0;
    for n in 4..=5 {
        for k in 0..=3 {
            for extra in edge_multisets(n, k) {
                let mut pairs: Vec<(usize, usize)> = h.terms().iter().map(|t| t.pair()).collect();
                pairs.extend(extra);
                let u = TranspSequence::from_pairs(n, &pairs).unwrap();
                if !Multigraph::from_sequence(&u).is_connected() {
                    continue;
                }
                instances += 1;
                let ty = u.product().cycle_type();
                if ty
                    == CycleType::from_lengths(
                        n,
                        std::iter::once(2).chain(std::iter::repeat_n(1, n - 2)),
                    )
                {
                    transposition_products += 1;
                }
                let v = ci_bruteforce_transpositional(&u, &budget());
                if v != OracleVerdict::No {
                    return Err(format!("{u}: oracle {v}"));
                }
            }
        }
    }
    Ok(format!(
        "{instances} connected supersequences, {transposition_products} with a transposition product, all non-CI"
    ))
}

fn c11_permutational() -> Outcome {
    let perm_seq = |name: &str| match named_sequence(name) {
        Ok(Named::Permutational(s)) => s,
        _ => unreachable!("catalog entry {name}"),
    };
    let s1: PermSequence = perm_seq("s34a");
    let v = ci_bruteforce(&s1, &budget());
    let prod = permgraph::enumeration::enumerate_prod_general(&s1, &budget())
        .map_err(|r| r.to_string())?;
    let three_cycles = prod.members().iter().all(|f| f.cycle_lengths() == vec![3]);
    if v != OracleVerdict::Yes || !three_cycles {
        return Err(format!("s34a: oracle {v}, products {:?}", prod.members()));
    }
    for (i, g) in conglomerate_multigraphs().iter().enumerate() {
        let verdict = ci_structural_graph(g);
        if verdict.answer != Answer::No {
            return Err(format!("E{i} = {g}: structural {}", verdict.answer));
        }
    }
    let s2 = perm_seq("s34b");
    let v2 = ci_bruteforce(&s2, &budget());
    check(
        v2 == OracleVerdict::Yes,
        format!(
            "s34a CI with {} products in 3^1, E0..E2 non-CI, s34b CI",
            prod.len()
        ),
        format!("s34b: oracle {v2}"),
    )
}

fn c12_phi() -> Outcome {
    let cycle = |l: usize| Permutation::from_cycles(l, &[(0..l).collect()]).unwrap();
    let mut parts = Vec::new();
    for l in 2..=5 {
        let got = count_minimal_factorizations(&cycle(l), 7).map_err(|r| r.to_string())?;
        let expected = (l as u64).pow(l as u32 - 2);
        if got != expected {
            return Err(format!("{l}-cycle: {got}, expected {expected}"));
        }
        parts.push(format!("{l}-cycle {got}"));
    }
    Ok(parts.join(", "))
}

fn random_seq(rng: &mut ChaCha8Rng, n: usize, len: usize) -> TranspSequence {
    let pairs: Vec<(usize, usize)> = (0..len)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            (a, b)
        })
        .collect();
    TranspSequence::from_pairs(n, &pairs).unwrap()
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> TranspSequence {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = (1..n)
        .map(|v| (labels[v], labels[rng.gen_range(0..v)]))
        .collect();
    pairs.shuffle(rng);
    TranspSequence::from_pairs(n, &pairs).unwrap()
}

fn c13_random() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let b = budget();
    let mut checks = 0;
    let mut supseq_cases = 0;
    for _ in 0..300 {
        let n = rng.gen_range(2..=5);
        let len = rng.gen_range(1..=7);
        let s = random_seq(&mut rng, n, len);
        let prod = enumerate_prod(&s, &b).map_err(|r| r.to_string())?;
        let parity = Parity::of_len(len);
        if prod
            .members()
            .iter()
            .any(|f| f.parity() != parity || !prod.contains(&f.inverse()))
        {
            return Err(format!("{s}: parity or inverse closure"));
        }
        let i = rng.gen_range(0..len);
        if !s.rotated(i).product().is_conjugate(&s.product()).unwrap() {
            return Err(format!("{s}: rotation by {i}"));
        }
        if s.reversed().product() != s.product().inverse() {
            return Err(format!("{s}: reversal"));
        }
        checks += 4;
    }
    for _ in 0..200 {
        let n = rng.gen_range(2..=4);
        let len = rng.gen_range(0..=7);
        let s = random_seq(&mut rng, n, len);
        if perm_complete_bruteforce(&s, &b) != OracleVerdict::Yes {
            continue;
        }
        let a = rng.gen_range(0..n);
        let c = (a + rng.gen_range(1..n)) % n;
        let mut sup = s.clone();
        sup.push(Transposition::new(a, c).unwrap()).unwrap();
        if perm_complete_bruteforce(&sup, &b) != OracleVerdict::Yes {
            return Err(format!("{s} + ({a} {c}) is not perm-complete"));
        }
        supseq_cases += 1;
        checks += 1;
    }
    for _ in 0..200 {
        let n = rng.gen_range(2..=4);
        let len = rng.gen_range(0..=8);
        let u = random_seq(&mut rng, n, len);
        if ci_bruteforce_transpositional(&u, &b) == OracleVerdict::Yes
            && ci_bruteforce_transpositional(&reduce_sequence(&u), &b) != OracleVerdict::Yes
        {
            return Err(format!("{u}: reduction loses CI"));
        }
        checks += 1;
    }
    for _ in 0..200 {
        let n = rng.gen_range(2..=7);
        let u = random_tree(&mut rng, n);
        let mut terms = u.terms().to_vec();
        terms.shuffle(&mut rng);
        let s = TranspSequence::new(n, terms).unwrap();
        if es_equivalent(&u, &s).unwrap() != (u.product() == s.product()) {
            return Err(format!("{u} vs {s}: local orders and products disagree"));
        }
        checks += 1;
    }
    Ok(format!(
        "{checks} checks, {supseq_cases} perm-complete supersequence cases"
    ))
}

fn c14_wheels() -> Outcome {
    let mut parts = Vec::new();
    for n in 3..=5 {
        let s = wheel(n).unwrap().canonical_sequence();
        let verdict = match is_minimally_perm_complete(&s, &budget()) {
            Ok(true) => "minimally perm-complete".to_string(),
            Ok(false) => match perm_complete_bruteforce(&s, &budget()) {
                OracleVerdict::Yes => "perm-complete, not minimal".to_string(),
                other => format!("oracle {other}"),
            },
            Err(r) => format!("refused ({r})"),
        };
        parts.push(format!("W{n}: {verdict}"));
    }
    Ok(parts.join("; "))
}
