//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use zdcode::cli;
use zdcode::gfmat::PrimeField;
use zdcode::lincode::{
    codeword_count, min_distance_bounds, min_distance_exact, Budgets, DistanceMethod, MinDistance,
    DEFAULT_ENUMERATION_BUDGET, DEFAULT_SEARCH_BUDGET,
};
use zdcode::modring::{factorize, Modulus};
use zdcode::oracle;
use zdcode::theorems::{self, Component, Status, VerificationReport, Witness};
use zdcode::zdgraph::build_graph;
use zdcode::Error;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Composite `n` in `4..=n_max` whose graph has at least one edge.
fn moduli(n_max: u64) -> Vec<Modulus> {
    (4..=n_max)
        .map(|n| factorize(n).unwrap())
        .filter(|m| !m.is_prime() && m.n() != 4)
        .collect()
}

/// Run the CLI in-process with `--json` output and parse the report.
fn cli_verify(n: u64, p: u64) -> Result<(i32, VerificationReport), String> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let args = [
        "zdcode",
        "verify",
        &n.to_string(),
        "--p",
        &p.to_string(),
        "--json",
    ];
    let code = cli::run(args.map(String::from), &mut out, &mut err);
    let report = serde_json::from_slice(&out).map_err(|e| {
        format!(
            "verify {n} --p {p}: {e}; stderr: {}",
            String::from_utf8_lossy(&err)
        )
    })?;
    Ok((code, report))
}

fn all_match(r: &VerificationReport) -> bool {
    [
        Component::Length,
        Component::Dimension,
        Component::Distance,
        Component::EdgeConnectivity,
    ]
    .iter()
    .all(|&c| r.status.get(c) == Status::Match)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    for p in [2, 3, 5, 7, 11] {
        let (code, r) = cli_verify(15, p)?;
        let params = (
            r.computed.length,
            r.computed.dimension,
            r.computed.min_distance,
        );
        ensure(params == (8, 5, MinDistance::Exact { value: 2 }), || {
            format!("p={p}: computed {}", r.computed)
        })?;
        ensure(code == 0 && all_match(&r), || {
            format!("p={p}: statuses {:?}", r.status)
        })?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("[8, 5, 2] for p in 2, 3, 5, 7, 11 in {t:.2?}"))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let (code, r) = cli_verify(30, 2)?;
    let t = start.elapsed();
    ensure(r.computed.to_string() == "[38, 20, 1]_2", || {
        format!("computed {}", r.computed)
    })?;
    ensure(
        matches!(
            r.computed.method,
            DistanceMethod::Enumeration | DistanceMethod::LowWeightSearch
        ),
        || format!("distance established by {:?}", r.computed.method),
    )?;
    ensure(code == 0 && all_match(&r), || {
        format!("statuses {:?}", r.status)
    })?;
    ensure(r.notes.iter().any(|n| n.contains("dimension is 5")), || {
        "prose note missing".into()
    })?;
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!(
        "[38, 20, 1]_2 by {:?}, prose note present, {t:.2?}",
        r.computed.method
    ))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let two_prime: Vec<Modulus> = moduli(1000)
        .into_iter()
        .filter(|m| m.is_squarefree() && m.prime_count() == 2)
        .collect();
    let mut checked = 0;
    let mut unresolved = 0;
    for m in &two_prime {
        let ps: Vec<u64> = m.primes().collect();
        let (len, dim, d) = ((ps[0] - 1) * (ps[1] - 1), ps[0] + ps[1] - 3, ps[0] - 1);
        for p in [2, 3, 5] {
            let r = theorems::verify(m, gf(p), Budgets::default()).map_err(|e| e.to_string())?;
            let tag = || format!("n={} p={p}: {}", m.n(), r.computed);
            ensure(
                r.computed.length as u64 == len && r.computed.dimension as u64 == dim,
                tag,
            )?;
            let k = r.computed.dimension;
            let enumerable = codeword_count(gf(p), k) <= DEFAULT_ENUMERATION_BUDGET as u128;
            match r.computed.min_distance {
                MinDistance::Exact { value } => ensure(value as u64 == d, tag)?,
                MinDistance::Interval { .. } => {
                    ensure(!enumerable, tag)?;
                    ensure(r.computed.min_distance.contains(d as usize), tag)?;
                    ensure(d > 4, || format!("{} did not collapse", tag()))?;
                    unresolved += 1;
                }
            }
            ensure(!r.has_mismatch(), || {
                format!("n={} p={p}: {:?}", m.n(), r.status)
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{} moduli p1*p2 <= 1000, {checked} (n, p) instances, 0 mismatches, {unresolved} intervals \
         with d > 4 containing the prediction, {:.1?}",
        two_prime.len(),
        start.elapsed()
    ))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for m in moduli(1000)
        .into_iter()
        .filter(|m| m.is_squarefree() && m.prime_count() >= 3)
    {
        let g = build_graph(&m).map_err(|e| e.to_string())?;
        let gen = g.incidence_matrix(gf(2)).matrix;
        let d = m.primes().map(|p| p - 1).min().unwrap() as usize;
        let b = min_distance_bounds(&gen, Some(&g), DEFAULT_SEARCH_BUDGET)
            .map_err(|e| e.to_string())?;
        let tag = || format!("n={}: {} by {:?}", m.n(), b.distance, b.method);
        ensure(b.distance == MinDistance::Exact { value: d }, tag)?;
        ensure(
            b.method == DistanceMethod::CutCodeword && b.lower_bound == d,
            tag,
        )?;
        let r = theorems::verify(&m, gf(2), Budgets::default()).map_err(|e| e.to_string())?;
        ensure(r.computed.dimension == g.vertex_count() - 1, || {
            format!("n={}: k={}", m.n(), r.computed.dimension)
        })?;
        ensure(!r.has_mismatch(), || format!("n={}: {:?}", m.n(), r.status))?;
        count += 1;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!(
        "{count} squarefree moduli with 3+ primes, search bound meets cut codeword, {t:.1?}"
    ))
}

fn criterion_5() -> Check {
    let mut brute = 0;
    let mut squares = Vec::new();
    for m in moduli(300) {
        let r = theorems::verify(&m, gf(2), Budgets::default()).map_err(|e| e.to_string())?;
        let g = build_graph(&m).map_err(|e| e.to_string())?;
        let lambda = r.graph.edge_connectivity;
        if g.vertex_count() <= oracle::MAX_CUT_VERTICES {
            let (b, _) = oracle::min_cut_bruteforce(&g).map_err(|e| e.to_string())?;
            ensure(b == lambda, || {
                format!("n={}: max-flow {lambda}, brute force {b}", m.n())
            })?;
            brute += 1;
        }
        match m.prime_square_root() {
            Some(q) => {
                let tag = || {
                    format!(
                        "n={}: computed {lambda}, predicted {}",
                        m.n(),
                        r.predicted.edge_connectivity
                    )
                };
                ensure(
                    lambda as u64 == q - 2 && r.predicted.edge_connectivity == q - 1,
                    tag,
                )?;
                ensure(r.status.edge_connectivity == Status::Mismatch, tag)?;
                ensure(
                    r.witnesses
                        .iter()
                        .any(|w| matches!(w, Witness::Cut { size, .. } if *size == lambda)),
                    tag,
                )?;
                squares.push(format!("{}: {} vs {}", m.n(), lambda, q - 1));
            }
            None => ensure(lambda as u64 == r.predicted.edge_connectivity, || {
                format!(
                    "n={}: max-flow {lambda}, formula {}",
                    m.n(),
                    r.predicted.edge_connectivity
                )
            })?,
        }
    }
    Ok(format!(
        "{brute} graphs checked by brute force; p^2 family computed vs predicted: {}",
        squares.join(", ")
    ))
}

fn criterion_6() -> Check {
    let mut graphs = 0;
    for n in 4..=500 {
        let m = factorize(n).unwrap();
        if m.is_prime() {
            continue;
        }
        let fast = build_graph(&m);
        let slow = oracle::graph_by_definition(&m);
        match (&fast, &slow) {
            (Ok(a), Ok(b)) => ensure(
                a.vertices() == b.vertices() && a.edges() == b.edges(),
                || format!("n={n}: edge sets differ"),
            )?,
            (Err(Error::NoEdges { .. }), Err(Error::NoEdges { .. })) => {}
            _ => return Err(format!("n={n}: {:?} vs {:?}", fast.err(), slow.err())),
        }
        graphs += 1;
    }
    let mut codes = 0;
    for m in moduli(1000) {
        let g = build_graph(&m).unwrap();
        for p in [2, 3, 5, 7] {
            let gen = g.incidence_matrix(gf(p)).matrix;
            let k = oracle::rank_by_elimination(&gen);
            if codeword_count(gf(p), k) > 1 << 16 {
                continue;
            }
            let exact = min_distance_exact(&gen, 1 << 16).map_err(|e| e.to_string())?;
            let slow = oracle::min_distance_bruteforce(&gen).map_err(|e| e.to_string())?;
            ensure(
                slow == MinDistance::Exact {
                    value: exact.distance,
                },
                || format!("n={} p={p}: {} vs {slow}", m.n(), exact.distance),
            )?;
            codes += 1;
        }
    }
    Ok(format!("{graphs} graphs equal to the definition; {codes} codes with p^k <= 2^16 agree with brute force"))
}

fn properties(m: &Modulus, p: u64) -> Result<(), String> {
    let n = m.n();
    let f = gf(p);
    let g = build_graph(m).map_err(|e| e.to_string())?;
    let stats = g.stats().map_err(|e| e.to_string())?;
    let gen = g.incidence_matrix(f).matrix;
    for c in 0..gen.cols() {
        let col = gen.column(c);
        ensure(
            col.iter().filter(|&&v| v == 1).count() == 2 && col.iter().all(|&v| v <= 1),
            || format!("n={n}: column {c} is not a 0/1 column with two ones"),
        )?;
    }
    ensure(stats.edge_connectivity <= stats.min_degree, || {
        format!("n={n}: lambda > delta")
    })?;
    let h = gen.nullspace();
    let rank = gen.rank();
    ensure(rank + h.rows() == g.edge_count(), || {
        format!("n={n} p={p}: rank + nullity != |E|")
    })?;
    ensure(gen.mul_transpose(&h).unwrap().is_zero(), || {
        format!("n={n} p={p}: G H^T != 0")
    })?;
    if p == 2 || stats.is_bipartite {
        let mut sides = vec![stats.min_cut.side.clone(), vec![g.vertices()[0]]];
        let first_class = g.class_of(0);
        sides.push(
            g.vertices()
                .iter()
                .copied()
                .filter(|&v| zdcode::modring::gcd(v, n) == first_class)
                .collect(),
        );
        for side in sides {
            if side.len() == g.vertex_count() {
                continue;
            }
            let word = g.cut_codeword(&side, f).map_err(|e| e.to_string())?;
            let weight = word.iter().filter(|&&v| v != 0).count();
            let size = g.cut_size(&side).map_err(|e| e.to_string())?;
            ensure(weight == size, || {
                format!("n={n} p={p}: cut codeword weight {weight}, cut size {size}")
            })?;
            let check = zdcode::gfmat::GfMatrix::from_rows(f, word.len(), &[word]).unwrap();
            ensure(check.mul_transpose(&h).unwrap().is_zero(), || {
                format!("n={n} p={p}: cut codeword outside the code")
            })?;
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    let mut count = 0;
    for m in moduli(1000) {
        properties(&m, 2)?;
        count += 1;
    }
    for m in moduli(300) {
        properties(&m, 3)?;
        count += 1;
    }
    Ok(format!(
        "{count} instances (n <= 1000 over GF(2), n <= 300 over GF(3)), 0 violations"
    ))
}

fn criterion_8() -> Check {
    let run = || -> Result<String, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_zdcode"))
            .args(["sweep", "--nmax", "300", "--primes", "2", "--json"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), || {
            format!("exit {:?}", out.status.code())
        })?;
        let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
        Ok(text
            .lines()
            .filter(|l| !l.trim_start().starts_with("\"elapsed_ms\""))
            .collect::<Vec<_>>()
            .join("\n"))
    };
    let (a, b) = (run()?, run()?);
    ensure(a == b, || "outputs differ".into())?;
    Ok(format!(
        "two runs byte-identical apart from elapsed_ms ({} bytes)",
        a.len()
    ))
}

fn main() {
    // `cargo test -- --list` and similar harness flags expect no work.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [Criterion; 8] = [
        ("Z_15 over five fields", criterion_1),
        ("Z_30 over GF(2)", criterion_2),
        ("two-prime moduli up to 1000", criterion_3),
        ("squarefree moduli with three or more primes", criterion_4),
        ("edge connectivity", criterion_5),
        ("oracle equivalence", criterion_6),
        ("property suite", criterion_7),
        ("sweep determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
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
