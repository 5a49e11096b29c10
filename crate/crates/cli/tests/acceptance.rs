//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! nonzero if any fails. Set `INJPACK_ACCEPTANCE_HEAVY=1` to also run the
//! heavy Kneser tier (reported, never required).

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use injpack_core::clique_cover::{
    derived_graph, find_sparse_cover, lift_coloring, sierpinski_cover, EdgeCliqueCover,
};
use injpack_core::families::{basic, generalized_sierpinski, kneser, sierpinski, Basic};
use injpack_core::harness::{self, Level, Status, Target, VerifyConfig};
use injpack_core::kneser::{fano_partition_search, kneser_perfect_colorability, FanoPartition};
use injpack_core::solvers::{
    chromatic_number, edge_chromatic_number, edge_coloring_from_injective,
    injective_chromatic_number, is_class1, max_open_packing, max_two_packing,
    perfect_injective_colorability, PerfectOutcome, SolveOptions, SolveResult,
};
use injpack_core::structured::{sc4_pattern_coloring, sierpinski_injective_coloring};
use injpack_core::{Graph, Partition};

type Outcome = Result<String, String>;

const SIERPINSKI: [(usize, usize); 7] = [(3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (5, 1), (5, 2)];

fn opts() -> SolveOptions {
    SolveOptions::deterministic()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    ensure(took <= limit, || {
        format!("{what} took {took:?}, limit {limit:?}")
    })?;
    Ok(out)
}

fn exact(r: SolveResult, what: &str) -> Result<SolveResult, String> {
    ensure(r.exact, || {
        format!("{what}: budget exhausted, bounds {}..={}", r.lower, r.upper)
    })?;
    Ok(r)
}

// Definition-level checks, written against `has_edge` only.

fn common_neighbor(g: &Graph, u: usize, w: usize) -> bool {
    (0..g.n()).any(|x| g.has_edge(x, u) && g.has_edge(x, w))
}

fn is_proper(g: &Graph, c: &[usize]) -> bool {
    g.edges().iter().all(|&(u, v)| c[u] != c[v])
}

fn is_injective(g: &Graph, c: &[usize]) -> bool {
    (0..g.n()).all(|u| (u + 1..g.n()).all(|w| c[u] != c[w] || !common_neighbor(g, u, w)))
}

fn is_open_packing(g: &Graph, s: &[usize]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, &u)| s[i + 1..].iter().all(|&w| !common_neighbor(g, u, w)))
}

fn is_two_packing(g: &Graph, s: &[usize]) -> bool {
    is_open_packing(g, s)
        && s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&w| !g.has_edge(u, w)))
}

fn palette(c: &[usize]) -> usize {
    let mut seen = c.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Classes are disjoint, cover `V`, each has `size` members and is an open packing.
fn is_perfect_partition(g: &Graph, p: &Partition, size: usize) -> bool {
    let mut hit = vec![false; g.n()];
    for class in &p.classes {
        if class.len() != size || !is_open_packing(g, class.members()) {
            return false;
        }
        for &v in class.members() {
            if v >= g.n() || std::mem::replace(&mut hit[v], true) {
                return false;
            }
        }
    }
    hit.into_iter().all(|h| h)
}

// Brute-force oracles.

fn colorable(g: &Graph, k: usize, ok: fn(&Graph, &[usize], usize) -> bool) -> bool {
    fn rec(
        g: &Graph,
        k: usize,
        c: &mut Vec<usize>,
        ok: fn(&Graph, &[usize], usize) -> bool,
    ) -> bool {
        if c.len() == g.n() {
            return true;
        }
        for col in 0..k {
            c.push(col);
            if ok(g, c, c.len() - 1) && rec(g, k, c, ok) {
                return true;
            }
            c.pop();
        }
        false
    }
    rec(g, k, &mut Vec::new(), ok)
}

/// Last vertex of the prefix `c` against earlier ones.
fn proper_step(g: &Graph, c: &[usize], v: usize) -> bool {
    (0..v).all(|u| !g.has_edge(u, v) || c[u] != c[v])
}

fn injective_step(g: &Graph, c: &[usize], v: usize) -> bool {
    (0..v).all(|u| c[u] != c[v] || !common_neighbor(g, u, v))
}

fn brute_chi(g: &Graph) -> usize {
    (0..=g.n()).find(|&k| colorable(g, k, proper_step)).unwrap()
}

fn brute_chi_i(g: &Graph) -> usize {
    (0..=g.n())
        .find(|&k| colorable(g, k, injective_step))
        .unwrap()
}

fn brute_chi_prime(g: &Graph) -> usize {
    let edges = g.edges();
    fn rec(edges: &[(usize, usize)], c: &mut Vec<usize>, k: usize) -> bool {
        let i = c.len();
        if i == edges.len() {
            return true;
        }
        let (u, v) = edges[i];
        for col in 0..k {
            let clash = (0..i).any(|j| {
                let (a, b) = edges[j];
                c[j] == col && (a == u || a == v || b == u || b == v)
            });
            if !clash {
                c.push(col);
                if rec(edges, c, k) {
                    return true;
                }
                c.pop();
            }
        }
        false
    }
    (0..).find(|&k| rec(&edges, &mut Vec::new(), k)).unwrap()
}

fn brute_max_set(g: &Graph, ok: fn(&Graph, &[usize]) -> bool) -> usize {
    (0u32..1 << g.n())
        .map(|mask| {
            (0..g.n())
                .filter(|v| mask >> v & 1 == 1)
                .collect::<Vec<_>>()
        })
        .filter(|s| ok(g, s))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

fn connected(g: &Graph) -> bool {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..g.n() {
            if !seen[v] && g.has_edge(u, v) {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

// Criteria.

fn sierpinski_values() -> Outcome {
    for (p, n) in SIERPINSKI {
        let g = sierpinski(p, n).map_err(|e| e.to_string())?;
        let what = format!("S_{p}^{n}");
        timed(Duration::from_secs(60), &what, || -> Result<(), String> {
            let chi = exact(injective_chromatic_number(&g, &opts()), &what)?;
            let c = chi.vertex_coloring().unwrap().colors();
            ensure(
                chi.value == p && is_injective(&g, c) && palette(c) == p,
                || format!("χi({what}) = {}, expected {p}", chi.value),
            )?;
            let rho = exact(max_open_packing(&g, &opts()), &what)?;
            let want = p.pow(n as u32 - 1);
            let s = rho.vertex_set().unwrap().members();
            ensure(
                rho.value == want && s.len() == want && is_open_packing(&g, s),
                || format!("ρ^o({what}) = {}, expected {want}", rho.value),
            )
        })??;
    }
    Ok("χi = p and ρ^o = p^(n-1) on 7 instances".into())
}

fn sierpinski_perfection() -> Outcome {
    for (p, n) in SIERPINSKI {
        let g = sierpinski(p, n).map_err(|e| e.to_string())?;
        let size = p.pow(n as u32 - 1);
        let what = format!("S_{p}^{n}");
        timed(Duration::from_secs(60), &what, || -> Result<(), String> {
            let out = perfect_injective_colorability(&g, &opts());
            let PerfectOutcome::Yes { partition, .. } = &out else {
                return Err(format!("{what}: {out:?}"));
            };
            ensure(
                partition.classes.len() == p && is_perfect_partition(&g, partition, size),
                || format!("{what}: invalid partition"),
            )?;
            let c = sierpinski_injective_coloring(p, n).map_err(|e| e.to_string())?;
            let built = Partition::new(c.classes());
            ensure(
                is_injective(&g, c.colors())
                    && c.palette_size() == p
                    && is_perfect_partition(&g, &built, size),
                || format!("{what}: constructed coloring is not perfect"),
            )
        })??;
    }
    Ok("searched and constructed partitions both perfect on 7 instances".into())
}

fn class1_sierpinski() -> Outcome {
    for (p, n) in [(2, 3), (3, 2), (3, 3), (4, 2)] {
        let g = sierpinski(p, n).map_err(|e| e.to_string())?;
        let what = format!("S_{p}^{n}");
        let delta = g.max_degree();
        let chi = exact(injective_chromatic_number(&g, &opts()), &what)?;
        ensure(chi.value == delta, || {
            format!("{what}: χi = {} but Δ = {delta}", chi.value)
        })?;
        let ec = edge_coloring_from_injective(&g, chi.vertex_coloring().unwrap())
            .map_err(|e| e.to_string())?;
        let colors: Vec<((usize, usize), usize)> = ec.iter().collect();
        let covers = colors.len() == g.edge_count()
            && colors
                .iter()
                .all(|&((u, v), c)| g.has_edge(u, v) && c < delta);
        let proper = colors.iter().enumerate().all(|(i, &((a, b), c))| {
            colors[i + 1..]
                .iter()
                .all(|&((x, y), d)| c != d || (a != x && a != y && b != x && b != y))
        });
        ensure(covers && proper, || {
            format!("{what}: transferred edge coloring invalid")
        })?;
        ensure(is_class1(&g, &opts()) == Some(true), || {
            format!("{what}: is_class1 disagrees")
        })?;
    }
    Ok("Δ-edge-colorings from injective witnesses on 4 instances".into())
}

fn lift_is_injective(g: &Graph, cover: &EdgeCliqueCover) -> Result<(), String> {
    let chi = exact(chromatic_number(g, &opts()), "χ")?;
    let c = chi.vertex_coloring().unwrap();
    ensure(is_proper(g, c.colors()), || {
        "solver coloring improper".into()
    })?;
    let lifted = lift_coloring(g, cover, c).map_err(|e| e.to_string())?;
    let derived = derived_graph(g, cover).map_err(|e| e.to_string())?;
    ensure(
        is_injective(&derived.graph, lifted.colors()) && palette(lifted.colors()) <= chi.value,
        || format!("lift failed on graph with edges {:?}", g.edges()),
    )
}

fn lift_suite() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        for g in all_graphs(n).filter(connected) {
            if let Some(cover) = find_sparse_cover(&g) {
                lift_is_injective(&g, &cover)?;
                checked += 1;
            }
        }
    }
    for p in [3, 4] {
        for n in 1..=3 {
            let sc = sierpinski_cover(p, n).map_err(|e| e.to_string())?;
            lift_is_injective(&sc.triangle, &sc.cover)?;
            checked += 1;
        }
    }
    Ok(format!("{checked} lifts injective, zero failures"))
}

fn sc4_graphs() -> Outcome {
    let c4 = basic(Basic::Cycle, 4).unwrap();
    let g2 = generalized_sierpinski(&c4, 2).unwrap();
    let chi = exact(injective_chromatic_number(&g2, &opts()), "χi(S_C4^2)")?;
    ensure(chi.value == 3, || format!("χi(S_C4^2) = {}", chi.value))?;
    let g3 = generalized_sierpinski(&c4, 3).unwrap();
    let pattern = sc4_pattern_coloring(3).map_err(|e| e.to_string())?;
    ensure(
        is_injective(&g3, pattern.colors())
            && palette(pattern.colors()) == 3
            && g3.max_degree() == 3,
        || "S_C4^3 pattern coloring does not close the gap".into(),
    )?;
    match perfect_injective_colorability(&g2, &opts()) {
        PerfectOutcome::No { rho_o, .. } if !g2.n().is_multiple_of(rho_o) => Ok(format!(
            "χi = 3 for n = 2, 3; ρ^o(S_C4^2) = {rho_o} does not divide 16"
        )),
        other => Err(format!("S_C4^2 perfection: {other:?}")),
    }
}

fn cycle_base_graphs() -> Outcome {
    for k in 5..=8 {
        let g = generalized_sierpinski(&basic(Basic::Cycle, k).unwrap(), 2).unwrap();
        let chi = exact(injective_chromatic_number(&g, &opts()), "χi")?;
        ensure(chi.value == 3, || format!("χi(S_C{k}^2) = {}", chi.value))?;
    }
    let g6 = generalized_sierpinski(&basic(Basic::Cycle, 6).unwrap(), 2).unwrap();
    let out = perfect_injective_colorability(&g6, &opts());
    let status = match &out {
        PerfectOutcome::Yes {
            partition, rho_o, ..
        } if is_perfect_partition(&g6, partition, *rho_o) => "yes",
        _ => "OPEN (not confirmed)",
    };
    Ok(format!(
        "χi(S_Ck^2) = 3 for k = 5..8; S_C6^2 perfect: {status}"
    ))
}

fn harness_target(target: Target) -> Outcome {
    let cfg = VerifyConfig {
        level: Level::Desk,
        opts: opts(),
        instance: None,
    };
    let rows = timed(Duration::from_secs(600), target.name(), || {
        harness::run(target, &cfg)
    })?
    .map_err(|e| e.to_string())?;
    ensure(!rows.is_empty(), || "no rows".into())?;
    if let Some(bad) = rows.iter().find(|r| r.status != Status::Pass) {
        return Err(format!(
            "{} {}: claimed {}, computed {}",
            bad.family, bad.params, bad.claimed, bad.computed
        ));
    }
    Ok(format!("{} rows, zero violations", rows.len()))
}

fn kneser_5() -> Outcome {
    let k73 = kneser(7, 3).unwrap();
    timed(
        Duration::from_secs(60),
        "K(7,3) packings",
        || -> Result<(), String> {
            let r2 = exact(max_two_packing(&k73, &opts()), "ρ₂")?;
            let ro = exact(max_open_packing(&k73, &opts()), "ρ^o")?;
            ensure(
                r2.value == 7 && is_two_packing(&k73, r2.vertex_set().unwrap().members()),
                || format!("ρ₂(K(7,3)) = {}", r2.value),
            )?;
            ensure(
                ro.value == 7 && is_open_packing(&k73, ro.vertex_set().unwrap().members()),
                || format!("ρ^o(K(7,3)) = {}", ro.value),
            )
        },
    )??;
    for (n, r) in [(6, 2), (7, 2), (5, 2), (8, 3)] {
        let g = kneser(n, r).unwrap();
        let out = kneser_perfect_colorability(n, r, &opts()).map_err(|e| e.to_string())?;
        let rho = exact(max_open_packing(&g, &opts()), "ρ^o")?.value;
        let ok = matches!(&out, PerfectOutcome::Yes { partition, .. } if is_perfect_partition(&g, partition, rho));
        ensure(ok, || format!("K({n},{r}): {out:?}"))?;
    }
    timed(
        Duration::from_secs(300),
        "Fano search",
        || -> Result<(), String> {
            ensure(fano_partition_search() == FanoPartition::Impossible, || {
                "Fano partition found".into()
            })?;
            let out = kneser_perfect_colorability(7, 3, &opts()).map_err(|e| e.to_string())?;
            ensure(out.is_no(), || format!("K(7,3): {out:?}"))
        },
    )??;
    Ok("ρ₂ = ρ^o = 7 for K(7,3); 4 perfect instances; no Fano partition".into())
}

fn kneser_heavy() -> String {
    let ro = max_open_packing(&kneser(10, 4).unwrap(), &opts());
    let chi2 = chromatic_number(&square(&kneser(7, 3).unwrap()), &opts());
    format!(
        "ρ^o(K(10,4)) = {} (exact: {}), χ₂(K(7,3)) = {} (exact: {})",
        ro.value, ro.exact, chi2.value, chi2.exact
    )
}

fn square(g: &Graph) -> Graph {
    let edges = (0..g.n())
        .flat_map(|u| (u + 1..g.n()).map(move |w| (u, w)))
        .filter(|&(u, w)| g.has_edge(u, w) || common_neighbor(g, u, w));
    Graph::from_edges(g.n(), edges).unwrap()
}

fn oracles() -> Outcome {
    let mut graphs = 0;
    for n in 0..=6 {
        for g in all_graphs(n) {
            graphs += 1;
            let o = opts();
            let pairs = [
                ("χ", exact(chromatic_number(&g, &o), "χ")?, brute_chi(&g)),
                (
                    "χi",
                    exact(injective_chromatic_number(&g, &o), "χi")?,
                    brute_chi_i(&g),
                ),
                (
                    "χ′",
                    exact(edge_chromatic_number(&g, &o), "χ′")?,
                    brute_chi_prime(&g),
                ),
                (
                    "ρ^o",
                    exact(max_open_packing(&g, &o), "ρ^o")?,
                    brute_max_set(&g, is_open_packing),
                ),
                (
                    "ρ₂",
                    exact(max_two_packing(&g, &o), "ρ₂")?,
                    brute_max_set(&g, is_two_packing),
                ),
            ];
            for (name, r, want) in pairs {
                ensure(r.value == want && r.witness_is_valid(&g), || {
                    format!(
                        "{name} = {} but brute force gives {want} on {:?}",
                        r.value,
                        g.edges()
                    )
                })?;
            }
        }
    }
    Ok(format!(
        "{graphs} graphs, 5 invariants each, zero mismatches"
    ))
}

fn determinism() -> Outcome {
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_injpack"))
            .args([
                "verify",
                "all",
                "--level",
                "desk",
                "--deterministic",
                "--json",
            ])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!("exit status {}", out.status)
        })?;
        Ok(out.stdout)
    };
    let a = run()?;
    let b = run()?;
    serde_json::from_slice::<serde_json::Value>(&a)
        .map_err(|e| format!("output is not JSON: {e}"))?;
    ensure(a == b, || "outputs differ".into())?;
    Ok(format!("two runs, {} identical bytes", a.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Sierpinski χi and ρ^o", sierpinski_values),
        ("Sierpinski perfect partitions", sierpinski_perfection),
        ("Sierpinski graphs are Class 1", class1_sierpinski),
        ("clique cover lift suite", lift_suite),
        ("S_C4^n injective number and imperfection", sc4_graphs),
        ("S_Ck^2 values and S_C6^2 perfection", cycle_base_graphs),
        ("rooted product six-value membership", || {
            harness_target(Target::Theorem46)
        }),
        ("corona three-value membership", || {
            harness_target(Target::Corollary47)
        }),
        ("Kneser packings and perfection", kneser_5),
        ("oracle suite", oracles),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2}: PASS  {name}: {detail} ({secs:.2}s)",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    if std::env::var_os("INJPACK_ACCEPTANCE_HEAVY").is_some() {
        println!("heavy tier: {}", kneser_heavy());
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
