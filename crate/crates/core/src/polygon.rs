//! Triangulations of the convex N-gon.
//!
//! Vertices are labeled `0..N` counterclockwise. A triangulation is stored as its
//! sorted list of diagonals `(a, b)` with `a < b`; this list doubles as the
//! canonical encoding used for hashing. Triangulations of the `(n+2)`-gon index
//! the trivalent-graph fillings of `λ(2,n)`, flips are mutations, and the Kálmán
//! loop acts by the vertex shift `i ↦ i + 1`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::plane_graph::CombMap;

pub type Diagonal = (usize, usize);

/// Largest polygon for which exhaustive operations are allowed by default.
pub const DEFAULT_MAX_N: usize = 14;
/// Default cap on BFS states.
pub const DEFAULT_NODE_CAP: usize = 1_000_000;
const ENUMERATION_MAX_N: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    n: usize,
    diagonals: Vec<Diagonal>,
}

fn norm(a: usize, b: usize) -> Diagonal {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Whether `x` lies strictly between `a` and `b` going counterclockwise from `a`.
fn strictly_between(a: usize, b: usize, x: usize, n: usize) -> bool {
    let span = (b + n - a) % n;
    let off = (x + n - a) % n;
    off > 0 && off < span
}

/// Two chords cross iff exactly one endpoint of the second lies strictly between
/// the endpoints of the first.
pub fn diagonals_cross(d: Diagonal, e: Diagonal, n: usize) -> bool {
    if d.0 == e.0 || d.0 == e.1 || d.1 == e.0 || d.1 == e.1 {
        return false;
    }
    strictly_between(d.0, d.1, e.0, n) != strictly_between(d.0, d.1, e.1, n)
}

pub fn catalan(n: usize) -> u64 {
    // C_{i+1} = C_i * 2(2i+1)/(i+2), exact at each step
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    u64::try_from(c).expect("Catalan number overflows u64")
}

impl Triangulation {
    /// Builds and validates a triangulation.
    pub fn new(n: usize, diagonals: impl IntoIterator<Item = Diagonal>) -> Result<Self> {
        if n < 3 {
            return Err(domain!("polygon needs at least 3 vertices, got {n}"));
        }
        let mut diags: Vec<Diagonal> = diagonals.into_iter().map(|(a, b)| norm(a, b)).collect();
        diags.sort_unstable();
        diags.dedup();
        for &(a, b) in &diags {
            if b >= n {
                return Err(Error::InvalidDiagonal(format!("{a}-{b} out of range for N={n}")));
            }
            let gap = (b + n - a) % n;
            if gap == 0 || gap == 1 || gap == n - 1 {
                return Err(Error::InvalidDiagonal(format!("{a}-{b} is not a diagonal")));
            }
        }
        if diags.len() != n - 3 {
            return Err(domain!(
                "a triangulation of the {n}-gon has {} diagonals, got {}",
                n - 3,
                diags.len()
            ));
        }
        for (i, &d) in diags.iter().enumerate() {
            for &e in &diags[i + 1..] {
                if diagonals_cross(d, e, n) {
                    return Err(Error::InvalidDiagonal(format!(
                        "{}-{} crosses {}-{}",
                        d.0, d.1, e.0, e.1
                    )));
                }
            }
        }
        Ok(Triangulation { n, diagonals: diags })
    }

    fn from_sorted_unchecked(n: usize, diagonals: Vec<Diagonal>) -> Self {
        Triangulation { n, diagonals }
    }

    /// Fan triangulation: every diagonal incident to `apex`.
    pub fn fan(n: usize, apex: usize) -> Result<Self> {
        if n < 3 || apex >= n {
            return Err(domain!("fan({n}, {apex})"));
        }
        Self::new(n, (2..n - 1).map(|j| (apex, (apex + j) % n)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.diagonals.binary_search(&norm(d.0, d.1)).is_ok()
    }

    /// Side or diagonal.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let gap = (b + self.n - a) % self.n;
        gap == 1 || gap == self.n - 1 || self.contains((a, b))
    }

    /// Number of diagonals incident to vertex `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.diagonals.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Triangles as increasing vertex triples, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let n = self.n;
        let mut adj = vec![vec![false; n]; n];
        for i in 0..n {
            let j = (i + 1) % n;
            adj[i][j] = true;
            adj[j][i] = true;
        }
        for &(a, b) in &self.diagonals {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        let mut out = Vec::with_capacity(n - 2);
        for a in 0..n {
            for b in a + 1..n {
                if !adj[a][b] {
                    continue;
                }
                for c in b + 1..n {
                    if adj[a][c] && adj[b][c] {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Apexes of the two triangles on either side of diagonal `(a, b)`.
    fn quad_apexes(&self, (a, b): Diagonal) -> (usize, usize) {
        let n = self.n;
        let mut left = None;
        let mut right = None;
        for c in 0..n {
            if c == a || c == b || !self.has_edge(a, c) || !self.has_edge(c, b) {
                continue;
            }
            if strictly_between(a, b, c, n) {
                left = Some(c);
            } else {
                right = Some(c);
            }
        }
        (left.expect("triangle on ccw side"), right.expect("triangle on cw side"))
    }

    /// Replaces diagonal `d` by the other diagonal of its quadrilateral.
    pub fn flip(&self, d: Diagonal) -> Result<Self> {
        let d = norm(d.0, d.1);
        let idx = self
            .diagonals
            .binary_search(&d)
            .map_err(|_| Error::InvalidDiagonal(format!("{}-{} not in {}", d.0, d.1, self)))?;
        let (c, e) = self.quad_apexes(d);
        let mut diags = self.diagonals.clone();
        diags.remove(idx);
        let nd = norm(c, e);
        let pos = diags.binary_search(&nd).unwrap_err();
        diags.insert(pos, nd);
        Ok(Self::from_sorted_unchecked(self.n, diags))
    }

    /// The diagonal created by flipping `d`.
    pub fn flipped_diagonal(&self, d: Diagonal) -> Result<Diagonal> {
        if !self.contains(d) {
            return Err(Error::InvalidDiagonal(format!("{}-{} not in {}", d.0, d.1, self)));
        }
        let (c, e) = self.quad_apexes(norm(d.0, d.1));
        Ok(norm(c, e))
    }

    /// All triangulations one flip away, in diagonal order.
    pub fn flip_neighbors(&self) -> Vec<Triangulation> {
        self.diagonals
            .iter()
            .map(|&d| self.flip(d).expect("own diagonal"))
            .collect()
    }

    /// Vertex shift `i ↦ i + k (mod N)`.
    pub fn rotate(&self, k: i64) -> Self {
        let n = self.n as i64;
        let s = k.rem_euclid(n) as usize;
        let mut diags: Vec<Diagonal> = self
            .diagonals
            .iter()
            .map(|&(a, b)| norm((a + s) % self.n, (b + s) % self.n))
            .collect();
        diags.sort_unstable();
        Self::from_sorted_unchecked(self.n, diags)
    }

    /// Reflection `i ↦ -i (mod N)`.
    pub fn reflect(&self) -> Self {
        let n = self.n;
        let mut diags: Vec<Diagonal> = self
            .diagonals
            .iter()
            .map(|&(a, b)| norm((n - a) % n, (n - b) % n))
            .collect();
        diags.sort_unstable();
        Self::from_sorted_unchecked(n, diags)
    }

    /// Number of diagonals not shared with `other`.
    pub fn distinct_diagonals(&self, other: &Triangulation) -> usize {
        self.diagonals.iter().filter(|d| !other.contains(**d)).count()
    }

    /// Dual trivalent tree in the disk: one vertex per triangle, one internal edge
    /// per diagonal, one leg per polygon side, legs ordered by side `i-(i+1)`.
    pub fn dual_tree(&self) -> CombMap {
        let n = self.n;
        let tris = self.triangles();
        let mut sigma = vec![0; 3 * tris.len()];
        let mut alpha: Vec<usize> = (0..3 * tris.len()).collect();
        let mut legs = vec![usize::MAX; n];
        let mut by_edge: HashMap<Diagonal, usize> = HashMap::new();
        for (t, &[a, b, c]) in tris.iter().enumerate() {
            // a<b<c is counterclockwise; sides in ccw order around the interior point
            let sides = [(a, b), (b, c), (c, a)];
            for (s, &(u, v)) in sides.iter().enumerate() {
                let dart = 3 * t + s;
                sigma[dart] = 3 * t + (s + 1) % 3;
                let gap = (v + n - u) % n;
                if gap == 1 || gap == n - 1 {
                    let side = if gap == 1 { u } else { v };
                    legs[side] = dart;
                } else {
                    let key = norm(u, v);
                    if let Some(other) = by_edge.remove(&key) {
                        alpha[dart] = other;
                        alpha[other] = dart;
                    } else {
                        by_edge.insert(key, dart);
                    }
                }
            }
        }
        debug_assert!(by_edge.is_empty());
        CombMap::with_legs(sigma, alpha, legs, 0).expect("dual tree is a valid disk map")
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (i, (a, b)) in self.diagonals.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Triangulation({self})")
    }
}

impl FromStr for Triangulation {
    type Err = Error;

    /// Parses `N:a-b,c-d,...`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected N:a-b,... got {s:?}")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad polygon size {n:?}")))?;
        let mut diags = Vec::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("bad diagonal {part:?}")))?;
            let a = a.trim().parse().map_err(|_| Error::Parse(format!("bad vertex {a:?}")))?;
            let b = b.trim().parse().map_err(|_| Error::Parse(format!("bad vertex {b:?}")))?;
            diags.push((a, b));
        }
        let count = diags.len();
        let t = Triangulation::new(n, diags)?;
        if t.diagonals.len() != count {
            return Err(Error::Parse(format!("repeated diagonal in {s:?}")));
        }
        Ok(t)
    }
}

fn triangulate_range(lo: usize, hi: usize) -> Vec<Vec<Diagonal>> {
    if hi - lo < 2 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in lo + 1..hi {
        let left = triangulate_range(lo, k);
        let right = triangulate_range(k, hi);
        for l in &left {
            for r in &right {
                let mut d = Vec::with_capacity(l.len() + r.len() + 2);
                if k - lo >= 2 {
                    d.push((lo, k));
                }
                if hi - k >= 2 {
                    d.push((k, hi));
                }
                d.extend_from_slice(l);
                d.extend_from_slice(r);
                out.push(d);
            }
        }
    }
    out
}

/// All `C_{N-2}` triangulations of the N-gon in a fixed order (by apex over the
/// side `0-(N-1)`, recursively).
pub fn enumerate_triangulations(n: usize) -> Result<Vec<Triangulation>> {
    if n < 3 {
        return Err(domain!("polygon needs at least 3 vertices, got {n}"));
    }
    if n > ENUMERATION_MAX_N {
        return Err(Error::Resource(format!(
            "enumerating C_{} triangulations exceeds N ≤ {ENUMERATION_MAX_N}",
            n - 2
        )));
    }
    Ok(triangulate_range(0, n - 1)
        .into_iter()
        .map(|mut d| {
            d.sort_unstable();
            Triangulation::from_sorted_unchecked(n, d)
        })
        .collect())
}

#[derive(Debug, Clone, Copy)]
pub struct FlipDistanceConfig {
    pub max_n: usize,
    pub node_cap: usize,
}

impl Default for FlipDistanceConfig {
    fn default() -> Self {
        FlipDistanceConfig { max_n: DEFAULT_MAX_N, node_cap: DEFAULT_NODE_CAP }
    }
}

pub fn flip_distance(t1: &Triangulation, t2: &Triangulation) -> Result<usize> {
    flip_distance_with(t1, t2, FlipDistanceConfig::default())
}

/// Exact flip distance by bidirectional breadth-first search.
pub fn flip_distance_with(
    t1: &Triangulation,
    t2: &Triangulation,
    cfg: FlipDistanceConfig,
) -> Result<usize> {
    if t1.n != t2.n {
        return Err(domain!("size mismatch: {} vs {}", t1.n, t2.n));
    }
    if t1.n > cfg.max_n {
        return Err(Error::Resource(format!("N = {} exceeds flip-distance cap {}", t1.n, cfg.max_n)));
    }
    if t1 == t2 {
        return Ok(0);
    }
    let mut seen: [HashMap<Triangulation, usize>; 2] = [HashMap::new(), HashMap::new()];
    let mut frontier: [Vec<Triangulation>; 2] = [vec![t1.clone()], vec![t2.clone()]];
    seen[0].insert(t1.clone(), 0);
    seen[1].insert(t2.clone(), 0);
    let mut depth = [0usize; 2];
    loop {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        let other = 1 - side;
        if frontier[side].is_empty() {
            return Err(Error::Consistency("flip graph is disconnected".into()));
        }
        let mut next = Vec::new();
        for t in std::mem::take(&mut frontier[side]) {
            for nb in t.flip_neighbors() {
                if let Some(&d) = seen[other].get(&nb) {
                    return Ok(depth[side] + 1 + d);
                }
                if !seen[side].contains_key(&nb) {
                    seen[side].insert(nb.clone(), depth[side] + 1);
                    next.push(nb);
                }
            }
        }
        if seen[0].len() + seen[1].len() > cfg.node_cap {
            return Err(Error::Resource(format!("flip BFS exceeded {} states", cfg.node_cap)));
        }
        depth[side] += 1;
        frontier[side] = next;
    }
}

/// The whole flip graph of the N-gon, for all-pairs work.
pub struct FlipGraph {
    pub nodes: Vec<Triangulation>,
    index: HashMap<Triangulation, usize>,
    adj: Vec<Vec<usize>>,
}

impl FlipGraph {
    pub fn new(n: usize) -> Result<Self> {
        let nodes = enumerate_triangulations(n)?;
        let index: HashMap<Triangulation, usize> =
            nodes.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let adj = nodes
            .iter()
            .map(|t| t.flip_neighbors().iter().map(|nb| index[nb]).collect())
            .collect();
        Ok(FlipGraph { nodes, index, adj })
    }

    pub fn index_of(&self, t: &Triangulation) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Single-source BFS distances.
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.nodes.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

/// Triangulations fixed by the rotation `i ↦ i + k`.
pub fn symmetric_triangulations(n: usize, k: usize) -> Result<Vec<Triangulation>> {
    if k >= n {
        return Err(domain!("rotation {k} must be < N = {n}"));
    }
    if n > DEFAULT_MAX_N {
        return Err(Error::Resource(format!("N = {n} exceeds symmetric enumeration cap {DEFAULT_MAX_N}")));
    }
    let mut out: Vec<Triangulation> = enumerate_triangulations(n)?
        .into_iter()
        .filter(|t| t.rotate(k as i64) == *t)
        .collect();
    out.sort();
    Ok(out)
}

/// Lower bound `f(k)` on fillings of the `ρ^k` twist-spun of `λ(2,n)`:
/// `C_{(n+2)/3}` if `k = (n+2)/3`, `C_{n/2}` if `k = (n+2)/2`, `C_n` if `k = 0`, else 0.
pub fn filling_count_lower_bound(n: usize, k: usize) -> Result<u64> {
    if n == 0 || k > n - 1 {
        return Err(domain!("need 0 ≤ k ≤ n-1, got n={n}, k={k}"));
    }
    let m = n + 2;
    Ok(if m % 3 == 0 && k == m / 3 {
        catalan(m / 3)
    } else if m % 2 == 0 && k == m / 2 {
        catalan(n / 2)
    } else if k == 0 {
        catalan(n)
    } else {
        0
    })
}
