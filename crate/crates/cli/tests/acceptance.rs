//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any failed.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use dynmon::cascade::{degree_partition, hull_random_order};
use dynmon::constructors::{
    abw_construct, abw_seed_from_order, delta_budget, greedy_x0, p2_for, rho_bound_for, theorem1_construct,
    theorem1_params, tree_construct, v2_baseline, MonopolySeed, Theorem1Options,
};
use dynmon::exact::{abw_bound, min_monopoly_exact, ExactOptions};
use dynmon::generators::{complete, cycle, nonisomorphic_trees, path, petersen, random_girth5, random_tree, star};
use dynmon::graph::girth;
use dynmon::{hull, is_monopoly, proportional_thresholds, Graph, Rho, ThresholdProfile, Vertex};
use dynmon_cli::bench::{run_bench, write_csv, BenchConfig};
use num_traits::{FromPrimitive, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RHOS: [(u64, u64); 4] = [(1, 4), (1, 3), (1, 2), (1, 1)];

fn rho(p: u64, q: u64) -> Rho {
    Rho::new(p, q).unwrap()
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random spanning tree plus independent extra edges.
fn connected(n: usize, extra: f64, rng: &mut ChaCha8Rng) -> Graph {
    let t = random_tree(n, rng);
    let mut edges: Vec<_> = t.edges().collect();
    for u in 0..n {
        for v in u + 1..n {
            if !t.has_edge(u, v) && rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<Vertex>> {
    // Heap's algorithm
    let mut a: Vec<Vertex> = (0..n).collect();
    let mut c = vec![0; n];
    let mut out = vec![a.clone()];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn mask_of(n: usize, set: &[Vertex]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

fn exact_h(g: &Graph, phi: &ThresholdProfile) -> usize {
    min_monopoly_exact(g, phi, ExactOptions::default()).unwrap().h
}

fn check_verified(g: &Graph, phi: &ThresholdProfile, s: &MonopolySeed) {
    assert!(s.verified);
    assert_eq!(s.size, s.seed.len());
    assert!(is_monopoly(g, phi, &s.seed).unwrap(), "{:?} seed {:?} is not a monopoly", s.method, s.seed);
}

// 1
fn hull_laws() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checks = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=64);
        let g = gnp(n, rng.gen_range(0.02..0.3), &mut rng);
        let (p, q) = RHOS[rng.gen_range(0..RHOS.len())];
        let phi = proportional_thresholds(&g, rho(p, q));
        for _ in 0..10 {
            let a: Vec<Vertex> = (0..n).filter(|_| rng.gen_bool(0.15)).collect();
            let mut b = a.clone();
            b.extend((0..n).filter(|v| !a.contains(v) && rng.gen_bool(0.1)));
            b.sort_unstable();

            let ha = hull(&g, &phi, &a).unwrap();
            let hb = hull(&g, &phi, &b).unwrap();
            assert!(a.iter().all(|&v| ha.is_active(v)), "extensivity");
            assert!((0..n).all(|v| !ha.is_active(v) || hb.is_active(v)), "monotonicity");
            let hha = hull(&g, &phi, &ha.active()).unwrap();
            assert_eq!(hha.active(), ha.active(), "idempotence");
            for _ in 0..50 {
                assert_eq!(hull_random_order(&g, &phi, &a, &mut rng).unwrap(), ha.active_mask(), "confluence");
            }
            checks += 1;
        }
    }
    format!("{checks} (graph, seed) pairs")
}

// 2
fn abw_bound_soundness() -> String {
    let mut graphs: Vec<Graph> = (1..=9).flat_map(nonisomorphic_trees).collect();
    let trees = graphs.len();
    graphs.extend((1..=10).map(path));
    graphs.extend((3..=10).map(cycle));
    graphs.extend((1..=9).map(star));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        graphs.push(gnp(n, rng.gen_range(0.1..0.7), &mut rng));
    }
    let mut checks = 0;
    for g in &graphs {
        for (p, q) in RHOS {
            let phi = proportional_thresholds(g, rho(p, q));
            let h = exact_h(g, &phi);
            let bound = abw_bound(g, &phi);
            assert!(bound >= FromPrimitive::from_usize(h).unwrap(), "h = {h} above bound {bound} on {g:?}");
            checks += 1;
        }
    }
    format!("{checks} checks ({trees} trees up to isomorphism)")
}

// 3
fn tree_bound() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checks = 0;
    for (p, q) in [(1, 10), (1, 5), (1, 3), (1, 2)] {
        let r = rho(p, q);
        let min_n = q.div_ceil(p) as usize;
        for _ in 0..500 {
            let n = rng.gen_range(min_n..=min_n + 200);
            let t = random_tree(n, &mut rng);
            let s = tree_construct(&t, r).unwrap();
            check_verified(&t, &proportional_thresholds(&t, r), &s);
            assert!(s.size <= r.floor_times(n), "size {} > floor({r}*{n})", s.size);
            checks += 1;
        }
    }
    format!("{checks} trees")
}

// 4
fn star_tightness() -> String {
    for k in [3u64, 5, 10] {
        let r = rho(1, k);
        let g = star(k as usize - 1);
        let n = g.n();
        assert_eq!(exact_h(&g, &proportional_thresholds(&g, r)), 1);
        assert_eq!(r.numer() * n as u64, r.denom(), "rho * n == 1");
        assert_eq!(tree_construct(&g, r).unwrap().size, 1);
    }
    "rho in {1/3, 1/5, 1/10}".into()
}

fn small_fixtures() -> Vec<Graph> {
    let mut gs: Vec<Graph> = (2..=6).map(path).collect();
    gs.extend((3..=6).map(cycle));
    gs.extend((3..=5).map(star));
    gs.extend((4..=6).map(complete));
    gs.push(Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap());
    gs.push(Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap());
    gs.push(Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (1, 3), (2, 4)]).unwrap());
    gs
}

// 5
fn abw_correctness() -> String {
    let mut orders = 0;
    for g in small_fixtures() {
        let perms = permutations(g.n());
        for (p, q) in RHOS {
            let phi = proportional_thresholds(&g, rho(p, q));
            for order in &perms {
                let d = abw_seed_from_order(&g, &phi, order);
                assert!(is_monopoly(&g, &phi, &d).unwrap(), "order {order:?} on {g:?}");
                orders += 1;
            }
        }
    }

    let c5 = cycle(5);
    let phi = proportional_thresholds(&c5, Rho::ONE);
    let trials = 10_000;
    let sizes: Vec<f64> = (0..trials).map(|s| abw_construct(&c5, &phi, s).unwrap().size as f64).collect();
    let mean = sizes.iter().sum::<f64>() / trials as f64;
    let var = sizes.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials as f64 - 1.0);
    let se = (var / trials as f64).sqrt();
    let target = abw_bound(&c5, &phi).to_f64().unwrap();
    assert!((target - 10.0 / 3.0).abs() < 1e-12);
    assert!((mean - target).abs() <= 3.0 * se, "mean {mean} vs {target}, se {se}");
    format!("{orders} orders; C5 mean {mean:.4} vs {target:.4} (se {se:.4})")
}

fn girth5_instance(rng: &mut ChaCha8Rng, n_range: std::ops::RangeInclusive<usize>) -> Graph {
    loop {
        let n = rng.gen_range(n_range.clone());
        let c = rng.gen_range(2.5..5.0);
        let g = random_girth5(n, (c / n as f64).min(0.9), rng);
        if g.max_degree() >= 2 {
            return g;
        }
    }
}

// 6
fn greedy_postconditions() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checks = 0;
    for _ in 0..100 {
        let g = girth5_instance(&mut rng, 20..=400);
        assert!(girth(&g).at_least(5));
        let r = Rho::reciprocal(g.max_degree() as u64).unwrap();
        let phi = proportional_thresholds(&g, r);
        let part = degree_partition(&g, r);
        for delta in [0.1, 0.3, 0.5] {
            let x0 = greedy_x0(&g, r, delta).unwrap();
            let h = hull(&g, &phi, &x0).unwrap();
            let high = mask_of(g.n(), &part.v2);
            let in_x0 = mask_of(g.n(), &x0);
            for &u in &part.v2 {
                if in_x0[u] {
                    continue;
                }
                let low_out = g.neighbors(u).iter().filter(|&&w| !high[w] && !h.is_active(w)).count();
                assert!(low_out as f64 <= g.degree(u) as f64 / (1.0 + delta), "greedy condition fails at {u}");
            }
            let cap = (1.0 + delta) * r.to_f64() * g.n() as f64;
            assert!(x0.len() as f64 <= cap, "|X0| = {} > {cap}", x0.len());
            checks += 1;
        }
    }
    format!("{checks} (instance, delta) pairs")
}

fn check_trace(g: &Graph, phi: &ThresholdProfile, s: &MonopolySeed) {
    let trace = s.trace.as_ref().expect("girth5 seeds carry a trace");
    let mut y_all = trace.x0.clone();
    let mut x_all = trace.x0.clone();
    let mut prev = hull(g, phi, &y_all).unwrap();
    assert_eq!(prev.active_count(), trace.hull_after_x0);
    let pool = prev.active_mask();
    for r in &trace.rounds {
        assert!(r.x.iter().all(|&v| !pool[v]), "X_i outside V minus H(X0)");
        let expected: Vec<Vertex> = r.x.iter().copied().filter(|&v| !prev.is_active(v)).collect();
        assert_eq!(r.y, expected);
        assert!(r.y.iter().all(|v| !y_all.contains(v)), "Y disjointness");
        y_all.extend_from_slice(&r.y);
        x_all.extend_from_slice(&r.x);
        let hy = hull(g, phi, &y_all).unwrap();
        let hx = hull(g, phi, &x_all).unwrap();
        assert_eq!(hx.active(), hy.active(), "H(X union) = H(Y union)");
        assert_eq!(hy.active_count(), r.hull_size);
        assert!(hy.active().len() >= prev.active_count(), "hull growth");
        assert!((0..g.n()).all(|v| !prev.is_active(v) || hy.is_active(v)), "hull growth");
        prev = hy;
    }
    assert_eq!(trace.seed(), s.seed);
}

// 7
fn girth5_validity() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut graphs = vec![petersen()];
    graphs.extend((0..50).map(|_| girth5_instance(&mut rng, 50..=2000)));
    let mut ratios = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        assert!(girth(g).at_least(5));
        let r = Rho::reciprocal(g.max_degree() as u64).unwrap();
        let phi = proportional_thresholds(g, r);
        let opts = Theorem1Options { delta: 0.5, rng_seed: i as u64, ..Default::default() };
        let s = theorem1_construct(g, r, opts).unwrap();
        check_verified(g, &phi, &s);
        check_trace(g, &phi, &s);
        ratios.push(s.size as f64 / (r.to_f64() * g.n() as f64));
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    format!("{} instances; seed_size/rho_n mean {mean:.3} max {max:.3} (Petersen {:.3})", ratios.len(), ratios[0])
}

// 8
fn parameter_calculus() -> String {
    for eps in [1e-4, 0.01, 0.1, 0.3, 0.568, 1.0, 3.0, 10.0] {
        let p = theorem1_params(eps).unwrap();
        let d = p.delta;
        assert!(d > 0.0 && d <= (-0.25f64).exp().min(0.5), "delta cap at eps {eps}");
        let lhs = (1.0 + d).powi(2) + (1.0 + d) / (1.0 - d).powi(2);
        assert!((lhs - delta_budget(d)).abs() < 1e-12);
        assert!(lhs <= 2.0 + eps, "budget at eps {eps}");
        if d < 0.5 {
            assert!(2.0 + eps - lhs <= 1e-6, "budget slack at eps {eps}");
        }
        let direct = (d / (1.0 + d)) * -(-d * d / (2.0 * (1.0 - d))).exp_m1() / (8.0 * (1.0 / d).ln());
        assert!(p.rho_max <= direct * (1.0 + 1e-12), "rho_max at eps {eps}");
        assert!(((p.rho_max - direct) / direct).abs() < 1e-9);
        assert!((p.p2 + (-d * d / (2.0 * (1.0 - d))).exp_m1()).abs() <= 1e-12 * p.p2);
        assert_eq!(p.p2, p2_for(d));
        for n in [1usize, 10, 1000, 100_000] {
            let k = p.default_rounds(n);
            let holds = |k: usize| d.powi(k as i32) * n as f64 + 1.0 / (1.0 + d) < 1.0;
            assert!(k >= 1 && holds(k) && (k == 1 || !holds(k - 1)), "rounds at eps {eps}, n {n}");
        }
    }
    let direct = (0.1 / 1.1) * (1.0 - (-0.01f64 / 1.8).exp()) * (1.0 / (8.0 * 10f64.ln()));
    let got = rho_bound_for(0.1);
    assert!(((got - direct) / direct).abs() < 1e-6);
    assert!((got - 2.73e-5).abs() < 0.01e-5);
    let p = theorem1_params(0.568).unwrap();
    assert!((p.delta - 0.1).abs() < 1e-3);
    format!("delta=0.1 gives rho_max {got:.4e}; eps=0.568 gives delta {:.6}", p.delta)
}

fn constructors_on(g: &Graph, r: Rho) -> Vec<MonopolySeed> {
    let phi = proportional_thresholds(g, r);
    let mut out: Vec<MonopolySeed> = (0..5).filter_map(|s| abw_construct(g, &phi, s).ok()).collect();
    out.extend(v2_baseline(g, r).ok());
    out.extend(tree_construct(g, r).ok());
    for s in 0..3 {
        out.extend(theorem1_construct(g, r, Theorem1Options { rng_seed: s, ..Default::default() }).ok());
    }
    out
}

// 9
fn oracle_dominance() -> String {
    let mut graphs: Vec<Graph> = (2..=12).map(path).collect();
    graphs.extend((3..=12).map(cycle));
    graphs.extend((2..=11).map(star));
    graphs.extend((2..=7).map(complete));
    graphs.push(petersen());
    graphs.extend((1..=8).flat_map(nonisomorphic_trees));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let n = rng.gen_range(2..=12);
        graphs.push(connected(n, rng.gen_range(0.0..0.4), &mut rng));
    }
    let mut checks = 0;
    for g in &graphs {
        for (p, q) in RHOS {
            let r = rho(p, q);
            let phi = proportional_thresholds(g, r);
            let h = exact_h(g, &phi);
            for s in constructors_on(g, r) {
                check_verified(g, &phi, &s);
                assert!(s.size >= h, "{} gave {} < h = {h}", s.method, s.size);
                checks += 1;
            }
        }
    }
    format!("{checks} seeds on {} graphs", graphs.len())
}

// 10
fn bench_determinism() -> String {
    let config = serde_json::json!({
        "instances": [
            {"family": "petersen"},
            {"family": "star", "n": 9},
            {"family": "random_tree", "n": 60, "rng_seed": 4},
            {"family": "random_girth5", "n": 300, "p": 0.012, "rng_seed": 5},
        ],
        "rhos": ["1/4", "1/2", "1/Delta"],
        "methods": [{"method": "abw"}, {"method": "v2"}, {"method": "tree"}, {"method": "girth5", "delta": 0.5}],
        "trials": 4,
        "rng_seed_base": 11,
        "epsilon": 0.568,
    });
    let cfg: BenchConfig = serde_json::from_value(config).unwrap();
    let run = || {
        let report = run_bench(&cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&report.rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        text.lines().map(|l| l.rsplit_once(',').unwrap().0.to_owned()).collect::<Vec<_>>()
    };
    let (a, b) = (run(), run());
    assert!(a[0].starts_with("family,"));
    assert!(a.len() > 1);
    assert_eq!(a, b);
    format!("{} rows identical", a.len() - 1)
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> String,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "hull closure laws", limit: Some(Duration::from_secs(30)), run: hull_laws },
        Criterion {
            id: 2,
            name: "ABW bound soundness",
            limit: Some(Duration::from_secs(300)),
            run: abw_bound_soundness,
        },
        Criterion { id: 3, name: "tree bound", limit: Some(Duration::from_secs(60)), run: tree_bound },
        Criterion { id: 4, name: "tree bound tightness on stars", limit: None, run: star_tightness },
        Criterion { id: 5, name: "ABW construction", limit: Some(Duration::from_secs(120)), run: abw_correctness },
        Criterion { id: 6, name: "greedy X0 postconditions", limit: None, run: greedy_postconditions },
        Criterion {
            id: 7,
            name: "girth-5 procedure validity",
            limit: Some(Duration::from_secs(300)),
            run: girth5_validity,
        },
        Criterion { id: 8, name: "parameter calculus", limit: None, run: parameter_calculus },
        Criterion { id: 9, name: "oracle dominance", limit: None, run: oracle_dominance },
        Criterion { id: 10, name: "bench determinism", limit: None, run: bench_determinism },
    ];

    let default_hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run));
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(detail) => match c.limit {
                Some(limit) if elapsed > limit => (false, format!("{detail}; over time limit {limit:?}")),
                _ => (true, detail),
            },
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                (false, msg)
            }
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {:<30} {:>8.2}s  {detail}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64()
        );
    }
    panic::set_hook(default_hook);
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
