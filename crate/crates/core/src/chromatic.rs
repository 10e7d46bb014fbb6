//! Exact chromatic polynomials, a brute-force coloring oracle, and sheaf point counts.

use std::num::NonZeroUsize;
use std::sync::{Mutex, OnceLock};

use lru::LruCache;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::plane_graph::{CombMap, Multigraph};
use crate::poly::IntPoly;

pub const MAX_VERTICES: usize = 24;
pub const DEFAULT_CACHE_ENTRIES: usize = 1 << 20;

type Masks = Vec<u64>;

fn cache() -> &'static Mutex<LruCache<Masks, IntPoly>> {
    static CACHE: OnceLock<Mutex<LruCache<Masks, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(LruCache::new(NonZeroUsize::new(DEFAULT_CACHE_ENTRIES).unwrap()))
    })
}

/// Chromatic polynomial of a multigraph; parallel edges are collapsed and any
/// loop gives the zero polynomial.
pub fn chromatic_polynomial(g: &Multigraph) -> Result<IntPoly> {
    if g.vertex_count() > MAX_VERTICES {
        return Err(Error::Resource(format!(
            "chromatic polynomial limited to {MAX_VERTICES} vertices, got {}",
            g.vertex_count()
        )));
    }
    if g.has_loop() {
        return Ok(IntPoly::zero());
    }
    let masks: Masks = g
        .simple_adjacency()
        .iter()
        .map(|nb| nb.iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    Ok(poly_of(masks))
}

/// Chromatic polynomial of the dual of a closed map.
pub fn dual_chromatic_polynomial(m: &CombMap) -> Result<IntPoly> {
    chromatic_polynomial(&m.dual()?)
}

fn remove_vertex(adj: &[u64], v: usize) -> Masks {
    let low = (1u64 << v) - 1;
    adj.iter()
        .enumerate()
        .filter(|&(i, _)| i != v)
        .map(|(_, &m)| (m & low) | ((m >> (v + 1)) << v))
        .collect()
}

fn edge_count(adj: &[u64]) -> u32 {
    adj.iter().map(|m| m.count_ones()).sum::<u32>() / 2
}

/// Vertex sets of the connected components.
fn components(adj: &[u64]) -> Vec<u64> {
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut left = all;
    let mut out = Vec::new();
    while left != 0 {
        let mut comp = 1u64 << left.trailing_zeros();
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            frontier = next & !comp;
            comp |= next;
        }
        left &= !comp;
        out.push(comp);
    }
    out
}

fn induced(adj: &[u64], set: u64) -> Masks {
    let verts: Vec<usize> = (0..adj.len()).filter(|&v| set >> v & 1 == 1).collect();
    verts
        .iter()
        .map(|&v| {
            verts
                .iter()
                .enumerate()
                .filter(|&(_, &w)| adj[v] >> w & 1 == 1)
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect()
}

/// Relabels by iterated degree refinement; ties broken by position. Not a true
/// canonical form, but every key is a faithful copy of its graph.
fn memo_key(adj: &[u64]) -> Masks {
    let n = adj.len();
    let mut color: Vec<u64> = adj.iter().map(|m| m.count_ones() as u64).collect();
    for _ in 0..3 {
        let next: Vec<u64> = (0..n)
            .map(|v| {
                let mut nb: Vec<u64> =
                    (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| color[w]).collect();
                nb.sort_unstable();
                nb.iter().fold(color[v].wrapping_mul(0x9E37_79B9_7F4A_7C15), |h, &c| {
                    (h ^ c).wrapping_mul(0x1000_0000_01B3).rotate_left(7)
                })
            })
            .collect();
        color = next;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (color[v], v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .map(|&v| {
            let mut m = 0u64;
            let mut a = adj[v];
            while a != 0 {
                let w = a.trailing_zeros() as usize;
                a &= a - 1;
                m |= 1 << pos[w];
            }
            m
        })
        .collect()
}

fn poly_of(adj: Masks) -> IntPoly {
    let n = adj.len();
    if n == 0 {
        return IntPoly::one();
    }
    let m = edge_count(&adj) as usize;
    if m == 0 {
        return IntPoly::x().pow(n as u32);
    }
    if m == n * (n - 1) / 2 {
        return IntPoly::falling_factorial(n);
    }
    let comps = components(&adj);
    if comps.len() > 1 {
        return comps
            .iter()
            .fold(IntPoly::one(), |acc, &c| &acc * &poly_of(induced(&adj, c)));
    }
    // simplicial vertex: its neighbors form a clique
    for v in 0..n {
        let nb = adj[v];
        let mut rest = nb;
        let mut clique = true;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (adj[w] | 1 << w) & nb != nb {
                clique = false;
                break;
            }
        }
        if clique {
            let d = nb.count_ones() as i64;
            return &IntPoly::linear_root(d) * &poly_of(remove_vertex(&adj, v));
        }
    }
    let key = memo_key(&adj);
    if let Some(p) = cache().lock().unwrap().get(&key) {
        return p.clone();
    }
    let deg = |v: usize| key[v].count_ones();
    let u = (0..n).max_by_key(|&v| (deg(v), std::cmp::Reverse(v))).unwrap();
    let mut nb = key[u];
    let mut w = nb.trailing_zeros() as usize;
    while nb != 0 {
        let c = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        if deg(c) > deg(w) {
            w = c;
        }
    }
    let mut deleted = key.clone();
    deleted[u] &= !(1 << w);
    deleted[w] &= !(1 << u);
    let mut merged = deleted.clone();
    merged[u] |= merged[w];
    for x in 0..n {
        if merged[w] >> x & 1 == 1 {
            merged[x] |= 1 << u;
        }
    }
    let contracted = remove_vertex(&merged, w);
    let p = &poly_of(deleted) - &poly_of(contracted);
    cache().lock().unwrap().put(key, p.clone());
    p
}

/// Number of proper colorings with `x` colors by exhaustive backtracking.
pub fn count_colorings_bruteforce(g: &Multigraph, x: u64) -> Result<BigInt> {
    let n = g.vertex_count();
    let small = n <= 10;
    let bounded = (x as f64).powi(n as i32) <= 1e8;
    if !small && !bounded {
        return Err(Error::Resource(format!(
            "brute-force coloring of {n} vertices with {x} colors exceeds the cap"
        )));
    }
    if g.has_loop() {
        return Ok(BigInt::zero());
    }
    let adj = g.simple_adjacency();
    let mut colors = vec![u64::MAX; n];
    fn go(v: usize, x: u64, adj: &[Vec<usize>], colors: &mut [u64]) -> u128 {
        if v == adj.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..x {
            if adj[v].iter().all(|&w| w > v || colors[w] != c) {
                colors[v] = c;
                total += go(v + 1, x, adj, colors);
            }
        }
        colors[v] = u64::MAX;
        total
    }
    Ok(BigInt::from(go(0, x, &adj, &mut colors)))
}

/// Framed rank-one sheaf points over the field with `q` elements:
/// `P_dual(q+1) / ((q+1) q (q-1))`.
pub fn sheaf_point_count(m: &CombMap, q: u64) -> Result<BigInt> {
    if q < 2 {
        return Err(domain!("field size must be at least 2, got {q}"));
    }
    if !m.is_spherical() || !m.is_trivalent() || m.vertex_count() == 0 {
        return Err(domain!("sheaf point count needs a closed trivalent sphere map"));
    }
    let p = dual_chromatic_polynomial(m)?;
    let q = BigInt::from(q);
    let value = p.eval(&(&q + 1u32));
    let denom = (&q + 1u32) * &q * (&q - 1u32);
    let (count, rem) = value.div_rem(&denom);
    if !rem.is_zero() {
        return Err(Error::Consistency(format!(
            "P(q+1) = {value} is not divisible by (q+1)q(q-1) = {denom}"
        )));
    }
    Ok(count)
}

/// Multiplicities of `x - r` for each requested root, with the exact quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactors {
    /// `None` stands for infinite multiplicity (zero polynomial).
    pub multiplicities: Vec<Option<usize>>,
    pub quotient: IntPoly,
}

pub fn extract_linear_factors(p: &IntPoly, roots: &[i64]) -> LinearFactors {
    if p.is_zero() {
        return LinearFactors { multiplicities: vec![None; roots.len()], quotient: IntPoly::zero() };
    }
    let mut quotient = p.clone();
    let mut multiplicities = Vec::with_capacity(roots.len());
    for &r in roots {
        let r = BigInt::from(r);
        let mut k = 0;
        loop {
            let (q, rem) = quotient.div_linear(&r);
            if !rem.is_zero() {
                break;
            }
            quotient = q;
            k += 1;
        }
        multiplicities.push(Some(k));
    }
    LinearFactors { multiplicities, quotient }
}
