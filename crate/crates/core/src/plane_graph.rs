//! Combinatorial maps (rotation systems) for plane multigraphs on the sphere
//! and the disk.
//!
//! Darts are `0..D`. `sigma` rotates darts counterclockwise around their vertex,
//! `alpha` pairs the two darts of an edge. Boundary legs of a disk map are the
//! fixed points of `alpha` and are kept in their cyclic boundary order. Faces are
//! the orbits of `phi = sigma ∘ alpha`. Vertex-free components (free circles)
//! cannot be expressed as a rotation system and are kept as a count; each one
//! contributes two empty faces.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct CombMap {
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    legs: Vec<usize>,
    circles: usize,
}

/// JSON shape: `{ "sigma": [..], "alpha": [..], "circles": n }`, plus `"legs"`
/// for disk maps.
#[derive(Serialize, Deserialize)]
struct RawMap {
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    #[serde(default)]
    circles: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    legs: Vec<usize>,
}

impl TryFrom<RawMap> for CombMap {
    type Error = Error;
    fn try_from(r: RawMap) -> Result<Self> {
        CombMap::with_legs(r.sigma, r.alpha, r.legs, r.circles)
    }
}

impl From<CombMap> for RawMap {
    fn from(m: CombMap) -> Self {
        RawMap { sigma: m.sigma, alpha: m.alpha, circles: m.circles, legs: m.legs }
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

impl CombMap {
    /// Closed map: `alpha` must be fixed-point free.
    pub fn new(sigma: Vec<usize>, alpha: Vec<usize>, circles: usize) -> Result<Self> {
        Self::with_legs(sigma, alpha, Vec::new(), circles)
    }

    pub fn with_legs(
        sigma: Vec<usize>,
        alpha: Vec<usize>,
        legs: Vec<usize>,
        circles: usize,
    ) -> Result<Self> {
        if sigma.len() != alpha.len() {
            return Err(Error::Structural("sigma and alpha differ in length".into()));
        }
        if !is_permutation(&sigma) {
            return Err(Error::Structural("sigma is not a permutation".into()));
        }
        if !is_permutation(&alpha) {
            return Err(Error::Structural("alpha is not a permutation".into()));
        }
        let mut is_leg = vec![false; sigma.len()];
        for &l in &legs {
            if l >= sigma.len() || is_leg[l] {
                return Err(Error::Structural(format!("bad boundary leg {l}")));
            }
            is_leg[l] = true;
        }
        for d in 0..alpha.len() {
            if alpha[alpha[d]] != d {
                return Err(Error::Structural(format!("alpha is not an involution at {d}")));
            }
            if (alpha[d] == d) != is_leg[d] {
                return Err(Error::Structural(format!(
                    "dart {d}: fixed points of alpha must be exactly the boundary legs"
                )));
            }
        }
        Ok(CombMap { sigma, alpha, legs, circles })
    }

    /// Builds a map from counterclockwise neighbor lists of a simple graph.
    pub fn from_rotation(rot: &[Vec<usize>]) -> Result<Self> {
        let mut offset = Vec::with_capacity(rot.len());
        let mut total = 0;
        for r in rot {
            offset.push(total);
            total += r.len();
        }
        let mut sigma = vec![0; total];
        let mut alpha = vec![NONE; total];
        let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
        for (v, r) in rot.iter().enumerate() {
            for (i, &w) in r.iter().enumerate() {
                let d = offset[v] + i;
                sigma[d] = offset[v] + (i + 1) % r.len();
                if pos.insert((v, w), d).is_some() {
                    return Err(domain!("repeated neighbor {w} at vertex {v}"));
                }
            }
        }
        for (&(v, w), &d) in &pos {
            let e = *pos
                .get(&(w, v))
                .ok_or_else(|| domain!("edge {v}-{w} listed on one side only"))?;
            alpha[d] = e;
        }
        Self::new(sigma, alpha, 0)
    }

    /// Builds a map from a straight-line plane drawing; neighbors are ordered by angle.
    pub fn from_drawing(coords: &[(f64, f64)], edges: &[(usize, usize)]) -> Result<Self> {
        let mut rot: Vec<Vec<usize>> = vec![Vec::new(); coords.len()];
        for &(a, b) in edges {
            rot[a].push(b);
            rot[b].push(a);
        }
        for (v, r) in rot.iter_mut().enumerate() {
            let (x, y) = coords[v];
            r.sort_by(|&a, &b| {
                let ta = (coords[a].1 - y).atan2(coords[a].0 - x);
                let tb = (coords[b].1 - y).atan2(coords[b].0 - x);
                ta.partial_cmp(&tb).unwrap()
            });
        }
        Self::from_rotation(&rot)
    }

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> Self {
        Self::new(vec![1, 2, 0, 4, 5, 3], vec![3, 5, 4, 0, 2, 1], 0).unwrap()
    }

    /// A single vertex-free circle.
    pub fn free_circle() -> Self {
        Self::new(Vec::new(), Vec::new(), 1).unwrap()
    }

    /// Prism over a `k`-gon; `prism(4)` is the cube graph.
    pub fn prism(k: usize) -> Self {
        assert!(k >= 3);
        let mut coords = Vec::new();
        for r in [2.0, 1.0] {
            for i in 0..k {
                let t = std::f64::consts::TAU * i as f64 / k as f64;
                coords.push((r * t.cos(), r * t.sin()));
            }
        }
        let mut edges = Vec::new();
        for i in 0..k {
            edges.push((i, (i + 1) % k));
            edges.push((k + i, k + (i + 1) % k));
            edges.push((i, k + i));
        }
        Self::from_drawing(&coords, &edges).unwrap()
    }

    pub fn cube() -> Self {
        Self::prism(4)
    }

    /// The complete graph on four vertices.
    pub fn tetrahedron() -> Self {
        let coords = [(0.0, 0.0), (0.0, 1.0), (-0.87, -0.5), (0.87, -0.5)];
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)];
        Self::from_drawing(&coords, &edges).unwrap()
    }

    /// Replaces every vertex by a small face whose corners carry the old edges.
    pub fn truncate(&self) -> Result<Self> {
        if !self.legs.is_empty() || self.circles > 0 {
            return Err(domain!("truncation needs a closed map without free circles"));
        }
        let d = self.sigma.len();
        // old dart x keeps its id; each corner gets two new darts along the new face
        let mut sigma = vec![0; 3 * d];
        let mut alpha = vec![0; 3 * d];
        for x in 0..d {
            let prev = d + 2 * x; // toward sigma^{-1}(x)'s corner
            let next = d + 2 * x + 1; // toward sigma(x)'s corner
            sigma[x] = next;
            sigma[next] = prev;
            sigma[prev] = x;
            alpha[x] = self.alpha[x];
            let y = self.sigma[x];
            alpha[next] = d + 2 * y;
            alpha[d + 2 * y] = next;
        }
        Self::new(sigma, alpha, 0)
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn dart_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_closed(&self) -> bool {
        self.legs.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        (self.sigma.len() - self.legs.len()) / 2
    }

    fn orbits(&self, step: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.sigma.len()];
        let mut out = Vec::new();
        for s in 0..self.sigma.len() {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                cyc.push(d);
                d = step(d);
            }
            out.push(cyc);
        }
        out
    }

    /// Sigma orbits, each starting at its smallest dart.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        self.orbits(|d| self.sigma[d])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    pub fn vertex_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.sigma.len()];
        for (i, v) in self.vertices().iter().enumerate() {
            for &d in v {
                out[d] = i;
            }
        }
        out
    }

    /// Number of paired darts at each vertex.
    pub fn internal_degrees(&self) -> Vec<usize> {
        self.vertices()
            .iter()
            .map(|v| v.iter().filter(|&&d| self.alpha[d] != d).count())
            .collect()
    }

    pub fn phi(&self, d: usize) -> usize {
        self.sigma[self.alpha[d]]
    }

    /// Faces as phi-orbits; each free circle adds two empty faces.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut out = self.orbits(|d| self.phi(d));
        for _ in 0..self.circles {
            out.push(Vec::new());
            out.push(Vec::new());
        }
        out
    }

    pub fn face_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.sigma.len()];
        for (i, f) in self.faces().iter().enumerate() {
            for &d in f {
                out[d] = i;
            }
        }
        out
    }

    pub fn face_degrees(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = self.faces().iter().map(Vec::len).collect();
        degs.sort_unstable();
        degs
    }

    /// Connected components as dart sets (free circles excluded).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![NONE; self.sigma.len()];
        let mut out = Vec::new();
        for s in 0..self.sigma.len() {
            if comp[s] != NONE {
                continue;
            }
            let id = out.len();
            let mut darts = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < darts.len() {
                let d = darts[i];
                for nb in [self.sigma[d], self.alpha[d]] {
                    if comp[nb] == NONE {
                        comp[nb] = id;
                        darts.push(nb);
                    }
                }
                i += 1;
            }
            darts.sort_unstable();
            out.push(darts);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len() + self.circles
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// `V - E + F` summed over components (closed maps).
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.faces().len() as i64
    }

    /// Closed map with `V - E + F = 2` on every component.
    pub fn is_spherical(&self) -> bool {
        self.is_closed() && self.euler_characteristic() == 2 * self.component_count() as i64
    }

    /// Every vertex has three darts; vacuous for vertex-free maps.
    pub fn is_trivalent(&self) -> bool {
        self.vertices().iter().all(|v| v.len() == 3)
    }

    /// Genus of the weave over a connected closed trivalent 2-graph: `(v - 2) / 2`.
    pub fn weave_genus(&self) -> Result<usize> {
        if !self.is_closed() || !self.is_trivalent() || !self.is_connected() {
            return Err(domain!("weave genus needs a closed connected trivalent map"));
        }
        let v = self.vertex_count();
        if v == 0 || v % 2 == 1 {
            return Err(domain!("weave genus undefined for {v} trivalent vertices"));
        }
        Ok((v - 2) / 2)
    }

    /// From boundary leg `l`, the next leg counterclockwise along the boundary.
    pub fn next_leg(&self, l: usize) -> usize {
        let mut d = self.sigma[l];
        while self.alpha[d] != d {
            d = self.phi(d);
        }
        d
    }

    /// Reflection: reverses every rotation and the boundary order.
    pub fn mirror(&self) -> Self {
        let mut sigma = vec![0; self.sigma.len()];
        for (d, &s) in self.sigma.iter().enumerate() {
            sigma[s] = d;
        }
        let mut legs = self.legs.clone();
        legs.reverse();
        CombMap { sigma, alpha: self.alpha.clone(), legs, circles: self.circles }
    }

    /// Renames dart `d` to `perm[d]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.sigma.len() || !is_permutation(perm) {
            return Err(domain!("relabeling must be a permutation of the darts"));
        }
        let n = perm.len();
        let mut sigma = vec![0; n];
        let mut alpha = vec![0; n];
        for d in 0..n {
            sigma[perm[d]] = perm[self.sigma[d]];
            alpha[perm[d]] = perm[self.alpha[d]];
        }
        let legs = self.legs.iter().map(|&l| perm[l]).collect();
        Self::with_legs(sigma, alpha, legs, self.circles)
    }

    /// Closes two disk maps with the same number of legs by pairing leg `i` of
    /// `self` with leg `i` of `other`.
    pub fn glue(&self, other: &CombMap) -> Result<Self> {
        if self.legs.len() != other.legs.len() {
            return Err(domain!(
                "cannot glue {} legs to {} legs",
                self.legs.len(),
                other.legs.len()
            ));
        }
        let off = self.sigma.len();
        let mut sigma = self.sigma.clone();
        sigma.extend(other.sigma.iter().map(|&s| s + off));
        let mut alpha = self.alpha.clone();
        alpha.extend(other.alpha.iter().map(|&a| a + off));
        for (&a, &b) in self.legs.iter().zip(&other.legs) {
            alpha[a] = b + off;
            alpha[b + off] = a;
        }
        Self::new(sigma, alpha, self.circles + other.circles)
    }

    /// Keeps the darts flagged `alive`, renumbering them in increasing order.
    /// `sigma` and `alpha` must already be consistent on the alive set.
    pub(crate) fn compact(
        sigma: &[usize],
        alpha: &[usize],
        alive: &[bool],
        circles: usize,
    ) -> Result<Self> {
        let mut new_id = vec![NONE; sigma.len()];
        let mut next = 0;
        for d in 0..sigma.len() {
            if alive[d] {
                new_id[d] = next;
                next += 1;
            }
        }
        let mut s = Vec::with_capacity(next);
        let mut a = Vec::with_capacity(next);
        for d in 0..sigma.len() {
            if alive[d] {
                s.push(new_id[sigma[d]]);
                a.push(new_id[alpha[d]]);
            }
        }
        Self::new(s, a, circles)
    }

    /// Dual multigraph: one vertex per face, one edge per primal edge.
    pub fn dual(&self) -> Result<Multigraph> {
        if !self.is_closed() {
            return Err(domain!("dual of a map with boundary legs"));
        }
        let faces = self.faces();
        let face_of = self.face_of();
        let mut edges = Vec::with_capacity(self.edge_count());
        for d in 0..self.sigma.len() {
            let e = self.alpha[d];
            if d < e {
                edges.push((face_of[d], face_of[e]));
            }
        }
        Multigraph::new(faces.len(), edges)
    }

    fn bfs_code(&self, start: usize, sig: &[usize], labels: &mut [usize]) -> Vec<u32> {
        let mut order = Vec::with_capacity(sig.len());
        labels[start] = 0;
        order.push(start);
        let mut i = 0;
        while i < order.len() {
            let d = order[i];
            for nb in [sig[d], self.alpha[d]] {
                if labels[nb] == NONE {
                    labels[nb] = order.len();
                    order.push(nb);
                }
            }
            i += 1;
        }
        let mut code = Vec::with_capacity(2 * order.len());
        for &d in &order {
            code.push(labels[sig[d]] as u32);
            code.push(labels[self.alpha[d]] as u32);
        }
        for &d in &order {
            labels[d] = NONE;
        }
        code
    }

    fn component_codes(&self, sig: &[usize]) -> Vec<Vec<u32>> {
        let mut labels = vec![NONE; sig.len()];
        let mut codes: Vec<Vec<u32>> = self
            .components()
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|&s| self.bfs_code(s, sig, &mut labels))
                    .min()
                    .unwrap()
            })
            .collect();
        codes.sort();
        codes
    }

    /// Canonical byte string, invariant under dart relabeling and, when
    /// `reflection_invariant` is set, under reversal of all rotations.
    pub fn canonical_form_with(&self, reflection_invariant: bool) -> Vec<u8> {
        let mut best = self.component_codes(&self.sigma);
        if reflection_invariant {
            let inv = self.mirror();
            let other = self.component_codes(&inv.sigma);
            if other < best {
                best = other;
            }
        }
        let mut out = Vec::new();
        out.extend_from_slice(&(self.circles as u32).to_be_bytes());
        out.extend_from_slice(&(best.len() as u32).to_be_bytes());
        for code in &best {
            out.extend_from_slice(&(code.len() as u32).to_be_bytes());
            for &x in code {
                out.extend_from_slice(&(x as u16).to_be_bytes());
            }
        }
        out
    }

    /// Canonical form up to relabeling and reflection.
    pub fn canonical_form(&self) -> Vec<u8> {
        self.canonical_form_with(true)
    }

    pub fn isomorphic(&self, other: &CombMap) -> bool {
        self.dart_count() == other.dart_count()
            && self.circles == other.circles
            && self.canonical_form() == other.canonical_form()
    }

    /// Graphviz export; faces optionally listed as comments.
    pub fn to_dot(&self, annotate_faces: bool) -> String {
        let vof = self.vertex_of();
        let mut s = String::from("graph map {\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(s, "  v{v};");
        }
        for d in 0..self.sigma.len() {
            let e = self.alpha[d];
            if e == d {
                let _ = writeln!(s, "  leg{d} [shape=point];\n  v{} -- leg{d};", vof[d]);
            } else if d < e {
                let _ = writeln!(s, "  v{} -- v{} [label=\"{d}/{e}\"];", vof[d], vof[e]);
            }
        }
        if self.circles > 0 {
            let _ = writeln!(s, "  // free circles: {}", self.circles);
        }
        if annotate_faces {
            for (i, f) in self.faces().iter().enumerate() {
                let _ = writeln!(s, "  // face {i} (degree {}): {:?}", f.len(), f);
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("map serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Undirected multigraph; loops allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(domain!("edge {a}-{b} out of range for {n} vertices"));
            }
        }
        Ok(Multigraph { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    /// Edge multiplicity matrix; loops counted once on the diagonal.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; self.n]; self.n];
        for &(a, b) in &self.edges {
            m[a][b] += 1;
            if a != b {
                m[b][a] += 1;
            }
        }
        m
    }

    /// Neighbor sets of the underlying simple graph (parallels collapsed, loops dropped).
    pub fn simple_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Disjoint union.
    pub fn union(&self, other: &Multigraph) -> Multigraph {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + self.n, b + self.n)));
        Multigraph { n: self.n + other.n, edges }
    }

    /// Multigraph isomorphism by degree-pruned backtracking.
    pub fn isomorphic(&self, other: &Multigraph) -> bool {
        if self.n != other.n || self.edges.len() != other.edges.len() {
            return false;
        }
        let (ma, mb) = (self.multiplicity_matrix(), other.multiplicity_matrix());
        let sig = |m: &Vec<Vec<usize>>, v: usize| {
            let mut row = m[v].clone();
            row.sort_unstable();
            (m[v][v], row)
        };
        let sa: Vec<_> = (0..self.n).map(|v| sig(&ma, v)).collect();
        let sb: Vec<_> = (0..self.n).map(|v| sig(&mb, v)).collect();
        let mut ca = sa.clone();
        let mut cb = sb.clone();
        ca.sort();
        cb.sort();
        if ca != cb {
            return false;
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        // rarest signatures first
        let mut freq: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in &sa {
            *freq.entry(s).or_default() += 1;
        }
        order.sort_by_key(|&v| (freq[&sa[v]], v));
        let mut map = vec![NONE; self.n];
        let mut used = vec![false; self.n];
        fn go(
            i: usize,
            order: &[usize],
            map: &mut [usize],
            used: &mut [bool],
            ma: &[Vec<usize>],
            mb: &[Vec<usize>],
            sa: &[(usize, Vec<usize>)],
            sb: &[(usize, Vec<usize>)],
        ) -> bool {
            if i == order.len() {
                return true;
            }
            let u = order[i];
            for w in 0..mb.len() {
                if used[w] || sa[u] != sb[w] {
                    continue;
                }
                if order[..i].iter().any(|&p| ma[u][p] != mb[w][map[p]]) {
                    continue;
                }
                map[u] = w;
                used[w] = true;
                if go(i + 1, order, map, used, ma, mb, sa, sb) {
                    return true;
                }
                used[w] = false;
                map[u] = NONE;
            }
            false
        }
        go(0, &order, &mut map, &mut used, &ma, &mb, &sa, &sb)
    }

    /// Octahedron `K_{2,2,2}`: vertex `i` is adjacent to all but `i ± 3 (mod 6)`.
    pub fn octahedron() -> Multigraph {
        let mut edges = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                if b != a + 3 {
                    edges.push((a, b));
                }
            }
        }
        Multigraph { n: 6, edges }
    }

    pub fn complete(n: usize) -> Multigraph {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Multigraph { n, edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_faces_and_genus() {
        let t = CombMap::theta();
        assert_eq!(t.face_degrees(), vec![2, 2, 2]);
        assert!(t.is_spherical());
        assert!(t.is_trivalent());
        assert_eq!(t.weave_genus().unwrap(), 0);
    }

    #[test]
    fn free_circle_has_two_faces() {
        let c = CombMap::free_circle();
        assert_eq!(c.faces().len(), 2);
        assert!(c.is_trivalent());
        assert!(c.is_spherical());
        assert!(c.weave_genus().is_err());
    }

    #[test]
    fn cube_faces() {
        let c = CombMap::cube();
        assert_eq!(c.vertex_count(), 8);
        assert_eq!(c.edge_count(), 12);
        assert_eq!(c.face_degrees(), vec![4; 6]);
        assert!(c.is_spherical());
        assert_eq!(c.weave_genus().unwrap(), 3);
    }

    #[test]
    fn duals() {
        assert!(CombMap::theta().dual().unwrap().isomorphic(&Multigraph::complete(3)));
        assert!(CombMap::cube().dual().unwrap().isomorphic(&Multigraph::octahedron()));
        assert!(CombMap::tetrahedron().dual().unwrap().isomorphic(&Multigraph::complete(4)));
    }

    #[test]
    fn dual_rejects_legs() {
        let disk = CombMap::with_legs(vec![1, 2, 0], vec![0, 1, 2], vec![0, 1, 2], 0).unwrap();
        assert!(matches!(disk.dual(), Err(Error::Domain(_))));
    }

    #[test]
    fn structural_validation() {
        assert!(matches!(CombMap::new(vec![0, 0], vec![1, 0], 0), Err(Error::Structural(_))));
        assert!(matches!(CombMap::new(vec![0, 1], vec![0, 1], 0), Err(Error::Structural(_))));
        assert!(matches!(
            CombMap::new(vec![1, 2, 0], vec![1, 2, 0], 0),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn truncated_cube() {
        let t = CombMap::cube().truncate().unwrap();
        assert_eq!(t.vertex_count(), 24);
        assert!(t.is_spherical());
        assert!(t.is_trivalent());
        let mut expect = vec![3; 8];
        expect.extend([8; 6]);
        assert_eq!(t.face_degrees(), expect);
    }

    #[test]
    fn canonical_form_relabel_and_mirror() {
        let c = CombMap::prism(5);
        let n = c.dart_count();
        let perm: Vec<usize> = (0..n).map(|d| (d * 7 + 3) % n).collect();
        assert!(c.isomorphic(&c.relabel(&perm).unwrap()));
        assert!(c.isomorphic(&c.mirror()));
        assert!(!CombMap::theta().isomorphic(&CombMap::cube()));
        assert!(!CombMap::prism(5).isomorphic(&CombMap::prism(4).truncate().unwrap()));
    }

    #[test]
    fn json_round_trip() {
        let c = CombMap::cube();
        let back = CombMap::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(CombMap::from_json(r#"{"sigma":[0],"alpha":[0],"circles":0}"#).is_err());
        assert!(c.to_json().starts_with("{\"sigma\""));
    }

    #[test]
    fn dot_export_mentions_every_edge() {
        let s = CombMap::theta().to_dot(true);
        assert_eq!(s.matches(" -- ").count(), 3);
        assert_eq!(s.matches("// face").count(), 3);
    }

    #[test]
    fn multigraph_isomorphism() {
        let a = Multigraph::new(3, vec![(0, 1), (0, 1), (1, 2)]).unwrap();
        let b = Multigraph::new(3, vec![(2, 1), (0, 2), (2, 0)]).unwrap();
        let c = Multigraph::new(3, vec![(0, 1), (1, 2), (1, 2)]).unwrap();
        let d = Multigraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(a.isomorphic(&b));
        assert!(a.isomorphic(&c));
        assert!(!a.isomorphic(&d));
        assert!(Multigraph::new(2, vec![(0, 2)]).is_err());
    }
}
