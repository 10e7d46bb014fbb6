//! Named reproduction checks. Reference constants are tagged `[ref]`, computed
//! values are shown bare.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use legdouble::chromatic::{chromatic_polynomial, count_colorings_bruteforce, dual_chromatic_polynomial, sheaf_point_count};
use legdouble::cluster::{
    admissibility_violation, count_folded_seeds, fold, is_admissible, is_globally_foldable, quiver_from_triangulation,
    rotation_action, ExchangeMatrix, GroupAction, DEFAULT_SEED_CAP,
};
use legdouble::cyclotomic::{niven_rational, two_cos};
use legdouble::doubling::{decompose, double_map, expected_decomposable_polynomial, superimpose_dual};
use legdouble::grassmann::{karp_fixed_points, obstruct_twist_spun, ObstructOptions, Status};
use legdouble::plane_graph::{CombMap, Multigraph};
use legdouble::poly::IntPoly;
use legdouble::polygon::{
    catalan, enumerate_triangulations, filling_count_lower_bound, symmetric_triangulations, FlipGraph, Triangulation,
};

use crate::Failure;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn e(err: legdouble::Error) -> String {
    err.to_string()
}

const CHECKS: &[(&str, fn() -> Check)] = &[
    ("catalan", catalan_counts),
    ("oracle", oracle),
    ("cube-graph", cube_graph),
    ("symmetric-doubles", symmetric_doubles),
    ("initial-filling", initial_filling),
    ("dichotomy", dichotomy),
    ("point-counts", point_counts),
    ("symmetric-counts", symmetric_counts),
    ("folding", folding),
    ("non-foldable", non_foldable),
    ("obstruction", obstruction),
    ("superimposition", superimposition),
    ("karp", karp),
];

pub fn run(name: &str) -> Result<bool, Failure> {
    let selected: Vec<_> = if name == "all" {
        CHECKS.iter().collect()
    } else {
        CHECKS.iter().filter(|(n, _)| *n == name).collect()
    };
    if selected.is_empty() {
        let names: Vec<&str> = CHECKS.iter().map(|(n, _)| *n).collect();
        return Err(Failure::Usage(format!("unknown check {name}; available: all, {}", names.join(", "))));
    }
    let mut all_ok = true;
    for (name, f) in selected {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        all_ok &= res.is_ok();
        let (tag, detail) = match res {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("{name:<18} {tag} {:>9.2?}  {detail}", took);
    }
    Ok(all_ok)
}

fn catalan_counts() -> Check {
    let mut out = Vec::new();
    for n in 3..=10 {
        let c = enumerate_triangulations(n).map_err(e)?.len() as u64;
        ensure!(c == catalan(n - 2), "N = {n}: {c}");
        out.push(c.to_string());
    }
    Ok(format!("N = 3..10: {} ([ref] Catalan numbers)", out.join(" ")))
}

fn oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    for case in 0..200 {
        let n = rng.gen_range(1..=9);
        let m = rng.gen_range(0..=2 * n);
        let edges = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let g = Multigraph::new(n, edges).map_err(e)?;
        let p = chromatic_polynomial(&g).map_err(e)?;
        for x in 2..=5 {
            ensure!(p.eval_i64(x as i64) == count_colorings_bruteforce(&g, x).map_err(e)?, "graph {case} at x = {x}");
        }
    }
    Ok("200 multigraphs agree with brute force at x = 2..5".into())
}

fn cube_graph() -> Check {
    let reference = &IntPoly::from_i64(&[0, -1, 0, 1]) * &IntPoly::from_i64(&[-11, 14, -6, 1]);
    let p = chromatic_polynomial(&Multigraph::octahedron()).map_err(e)?;
    let pq = p.to_q_basis();
    ensure!(pq == reference, "P(q+1) = {}", pq.to_string_var("q"));
    let fg = FlipGraph::new(6).map_err(e)?;
    let mut pairs = 0;
    for i in 0..fg.nodes.len() {
        for (j, d) in fg.distances_from(i).into_iter().enumerate() {
            if d == 4 {
                let g = superimpose_dual(&fg.nodes[i], &fg.nodes[j]).map_err(e)?;
                ensure!(g.isomorphic(&Multigraph::octahedron()), "{} | {}", fg.nodes[i], fg.nodes[j]);
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "octahedron P(x) = {}; P(q+1) = {} = [ref] (q+1)q(q-1)(q^3-6q^2+14q-11); {pairs} hexagon pairs at distance 4",
        p.to_string_var("x"),
        pq.to_string_var("q")
    ))
}

fn symmetric_doubles() -> Check {
    let mut total = 0;
    for n in 4..=9 {
        for t in enumerate_triangulations(n).map_err(e)? {
            let r = decompose(&double_map(&t, &t).map_err(e)?).map_err(e)?;
            ensure!(r.decomposable && (r.k_std, r.l_clifford) == (n - 3, 0), "{t}");
            total += 1;
        }
    }
    Ok(format!("{total} doubles T|T with N = 4..9 split into N-3 standard tori"))
}

fn initial_filling() -> Check {
    let mut total = 0;
    for n in 5..=9 {
        let fan = Triangulation::fan(n, 0).map_err(e)?;
        for t in enumerate_triangulations(n).map_err(e)? {
            let m = double_map(&fan, &t).map_err(e)?;
            let r = decompose(&m).map_err(e)?;
            ensure!(r.decomposable && r.k_std + r.l_clifford == n - 3, "fan | {t}");
            let p = dual_chromatic_polynomial(&m).map_err(e)?;
            ensure!(p == expected_decomposable_polynomial(r.k_std, r.l_clifford), "fan | {t}: polynomial");
            total += 1;
        }
    }
    Ok(format!("{total} pairs (fan, T) with N = 5..9 decompose with P(q+1) = (q+1)q(q-1)(q-1)^k(q-2)^l"))
}

fn dichotomy() -> Check {
    let mut out = Vec::new();
    for n in 6..=8 {
        let fg = FlipGraph::new(n).map_err(e)?;
        let mut dec = 0;
        for i in 0..fg.nodes.len() {
            let dist = fg.distances_from(i);
            for (j, &d) in dist.iter().enumerate() {
                let r = decompose(&double_map(&fg.nodes[i], &fg.nodes[j]).map_err(e)?).map_err(e)?;
                ensure!(!(r.decomposable && d >= n - 2), "N = {n}: decomposable pair at distance {d}");
                dec += r.decomposable as usize;
            }
        }
        out.push(format!("N = {n}: {dec}/{} decomposable", fg.nodes.len().pow(2)));
    }
    Ok(out.join(", "))
}

fn point_counts() -> Check {
    let mut zeros = [0usize; 3];
    let mut doubles = 0;
    for n in 3..=8 {
        let tris = enumerate_triangulations(n).map_err(e)?;
        for a in &tris {
            for b in &tris {
                let m = double_map(a, b).map_err(e)?;
                for q in 2..=4u64 {
                    if sheaf_point_count(&m, q).map_err(e)? <= 0.into() {
                        zeros[q as usize - 2] += 1;
                    }
                }
                doubles += 1;
            }
        }
    }
    for q in 2..=4 {
        ensure!(sheaf_point_count(&CombMap::theta(), q).map_err(e)? == 1.into(), "theta at q = {q}");
    }
    let msg = format!("{doubles} doubles; zero counts at q = 2, 3, 4: {zeros:?}");
    if zeros.iter().any(|&z| z > 0) {
        Err(msg)
    } else {
        Ok(msg)
    }
}

fn symmetric_counts() -> Check {
    let mut out = Vec::new();
    for (n, parts) in [(6, 2), (8, 2), (10, 2), (12, 2), (6, 3), (9, 3), (12, 3)] {
        let m = n / parts;
        let count = symmetric_triangulations(n, m).map_err(e)?.len() as u64;
        let f = filling_count_lower_bound(n - 2, m).map_err(e)?;
        ensure!(count == m as u64 * catalan(m - 1) && count >= f, "N = {n}, shift {m}: {count}");
        out.push(format!("N={n}/{m}: {count} >= [ref] f = {f}"));
    }
    Ok(out.join(", "))
}

fn folding() -> Check {
    let reference = [[0, -1, 0], [1, 0, -2], [0, 1, 0]];
    let half_fan: Triangulation = "8:0-2,0-3,0-4,4-6,4-7".parse().map_err(e)?;
    let q = quiver_from_triangulation(&half_fan, true);
    let g = rotation_action(&half_fan, 4, true).map_err(e)?;
    ensure!(is_globally_foldable(&q, &g, DEFAULT_SEED_CAP).map_err(e)?, "half-turn fan quiver not globally foldable");
    let block = fold(&q, &g).map_err(e)?.mutable_block();
    let matches = [1, -1].iter().any(|&s| (0..3).all(|i| (0..3).all(|j| block[i][j] == s * reference[i][j])));
    ensure!(matches, "folded block {block:?}");
    let path = ExchangeMatrix::square(vec![
        vec![0, -1, 0, 0, 0],
        vec![1, 0, 1, 0, 0],
        vec![0, -1, 0, -1, 0],
        vec![0, 0, 1, 0, 1],
        vec![0, 0, 0, -1, 0],
    ])
    .map_err(e)?;
    let sigma = GroupAction::from_cycles(5, "(1 5)(2 4)").map_err(e)?;
    ensure!(is_admissible(&path, &sigma), "alternating path not admissible");
    ensure!(is_globally_foldable(&path, &sigma, DEFAULT_SEED_CAP).map_err(e)?, "alternating path not globally foldable");
    let seeds = count_folded_seeds(&path, &sigma, DEFAULT_SEED_CAP).map_err(e)?;
    let sym = symmetric_triangulations(8, 4).map_err(e)?.len();
    ensure!(seeds == sym, "{seeds} seeds vs {sym} symmetric triangulations");
    Ok(format!(
        "folded block {block:?} matches [ref] {reference:?} up to sign; A5 path with (1 5)(2 4): {seeds} seeds"
    ))
}

fn non_foldable() -> Check {
    let b = ExchangeMatrix::square(vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]).map_err(e)?;
    let g = GroupAction::from_cycles(3, "(1 2 3)").map_err(e)?;
    let v = admissibility_violation(&b, &g).ok_or("3-cycle admissible")?;
    ensure!(v.condition == 3, "condition ({})", v.condition);
    Ok(format!("3-cycle under rotation fails condition (3): {}", v.detail))
}

fn obstruction() -> Check {
    for q in 1..=30u32 {
        for p in 1..q as i64 {
            ensure!(two_cos(p, q).map_err(e)?.is_rational() == niven_rational(p, q), "2cos(pi {p}/{q})");
        }
    }
    let mut out = Vec::new();
    for (k, n, l) in [(2, 5, 1), (2, 7, 1), (3, 7, 1)] {
        let v = obstruct_twist_spun(k, n, l, ObstructOptions::default()).map_err(e)?;
        ensure!(v.status == Status::Obstructed, "({k},{n},{l}): {:?}", v.status);
        out.push(format!("({k},{n},{l}) obstructed"));
    }
    let v = obstruct_twist_spun(2, 6, 1, ObstructOptions::default()).map_err(e)?;
    ensure!(v.status == Status::PreconditionFailed, "(2,6,1): {:?}", v.status);
    let forced = obstruct_twist_spun(2, 6, 1, ObstructOptions { force: true, all_ratios: false }).map_err(e)?;
    ensure!(forced.witness.as_deref() == Some("0"), "(2,6,1) forced witness {:?}", forced.witness);
    out.push("(2,6,1) fails the hypotheses, forced witness 0".into());
    Ok(out.join(", "))
}

fn superimposition() -> Check {
    let mut pairs = 0;
    for n in 3..=7 {
        let tris = enumerate_triangulations(n).map_err(e)?;
        for a in &tris {
            for b in &tris {
                let d = double_map(a, b).map_err(e)?.dual().map_err(e)?;
                ensure!(d.isomorphic(&superimpose_dual(a, b).map_err(e)?), "{a} | {b}");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs with N = 3..7: dual of the double is the superimposition"))
}

fn karp() -> Check {
    let mut total = 0;
    for n in 2..=10usize {
        for k in 1..n {
            let pts = karp_fixed_points(k, n).map_err(e)?;
            let binom = (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
            ensure!(pts.len() == binom, "({k},{n})");
            for fp in &pts {
                ensure!(fp.verify_roots().map_err(e)?, "({k},{n}) {:?}", fp.root_exponents);
            }
            total += pts.len();
        }
    }
    Ok(format!("{total} fixed points, binom(n,k) each, all exact roots of (-1)^(k-1)"))
}
