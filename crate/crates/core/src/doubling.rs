//! Doubles of `λ(2,n)` fillings as trivalent sphere maps, surgery-move
//! reduction into standard and Clifford tori, and the searches built on them.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chromatic::{chromatic_polynomial, dual_chromatic_polynomial, extract_linear_factors};
use crate::error::{domain, Error, Result};
use crate::plane_graph::{CombMap, Multigraph};
use crate::poly::IntPoly;
use crate::polygon::{enumerate_triangulations, flip_distance, Triangulation};

pub const DECOMPOSE_MAX_VERTICES: usize = 24;
pub const CUBE_SEARCH_MAX_VERTICES: usize = 20;
pub const TREE_DOUBLE_MAX_FACES: usize = 14;

/// Glues the dual tree of `t1` to the mirrored dual tree of `t2`, side to side.
pub fn double_map(t1: &Triangulation, t2: &Triangulation) -> Result<CombMap> {
    if t1.n() != t2.n() {
        return Err(domain!("polygon sizes differ: {} vs {}", t1.n(), t2.n()));
    }
    let a = t1.dual_tree();
    let b = t2.dual_tree();
    let mirrored = b.mirror();
    let b = CombMap::with_legs(mirrored.sigma().to_vec(), b.alpha().to_vec(), b.legs().to_vec(), 0)?;
    a.glue(&b)
}

/// Polygon sides plus the diagonals of both triangulations, as a multigraph.
pub fn superimpose_dual(t1: &Triangulation, t2: &Triangulation) -> Result<Multigraph> {
    if t1.n() != t2.n() {
        return Err(domain!("polygon sizes differ: {} vs {}", t1.n(), t2.n()));
    }
    let n = t1.n();
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend_from_slice(t1.diagonals());
    edges.extend_from_slice(t2.diagonals());
    Multigraph::new(n, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Move {
    /// Bigon removal: splits off a standard torus.
    Std,
    /// Triangle contraction: splits off a Clifford torus.
    Clifford,
}

fn theta_form() -> &'static Vec<u8> {
    static F: OnceLock<Vec<u8>> = OnceLock::new();
    F.get_or_init(|| CombMap::theta().canonical_form())
}

fn cube_form() -> &'static Vec<u8> {
    static F: OnceLock<Vec<u8>> = OnceLock::new();
    F.get_or_init(|| CombMap::cube().canonical_form())
}

fn is_theta(m: &CombMap) -> bool {
    m.dart_count() == 6 && m.circles() == 0 && m.canonical_form() == *theta_form()
}

fn remove_bigon(m: &CombMap, d1: usize) -> Option<CombMap> {
    let (s, a) = (m.sigma(), m.alpha());
    let d2 = m.phi(d1);
    let vof = m.vertex_of();
    if d2 == d1 || vof[d1] == vof[d2] {
        return None;
    }
    let zu = s[d1];
    let zv = s[d2];
    let p = a[zu];
    if p == zv {
        // both external darts form one edge: only a free circle would remain
        return None;
    }
    let r = a[zv];
    let mut alive = vec![true; s.len()];
    for d in [d1, d2, a[d1], a[d2], zu, zv] {
        alive[d] = false;
    }
    let mut alpha = a.to_vec();
    alpha[p] = r;
    alpha[r] = p;
    CombMap::compact(s, &alpha, &alive, m.circles()).ok()
}

fn contract_triangle(m: &CombMap, f1: usize) -> Option<CombMap> {
    let (s, a) = (m.sigma(), m.alpha());
    let f2 = m.phi(f1);
    let f3 = m.phi(f2);
    let vof = m.vertex_of();
    let (u, v, w) = (vof[f1], vof[f2], vof[f3]);
    if u == v || v == w || u == w {
        return None;
    }
    let (x1, x2, x3) = (s[f1], s[f2], s[f3]);
    let mut alive = vec![true; s.len()];
    for d in [f1, f2, f3, a[f1], a[f2], a[f3]] {
        alive[d] = false;
    }
    let mut sigma = s.to_vec();
    sigma[x1] = x3;
    sigma[x3] = x2;
    sigma[x2] = x1;
    CombMap::compact(&sigma, a, &alive, m.circles()).ok()
}

/// All single moves: bigon removals and triangle contractions, one per face.
/// Bigon removals that would leave only a free circle are omitted.
pub fn reduce_step(m: &CombMap) -> Vec<(Move, CombMap)> {
    let mut out = Vec::new();
    for face in m.faces() {
        match face.len() {
            2 => {
                if let Some(r) = remove_bigon(m, face[0]) {
                    out.push((Move::Std, r));
                }
            }
            3 => {
                if let Some(r) = contract_triangle(m, face[0]) {
                    out.push((Move::Clifford, r));
                }
            }
            _ => {}
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Multiplicity of `x - 2`, i.e. `q - 1` in the shifted basis.
    pub mult_x_minus_2: usize,
    /// Multiplicity of `x - 3`, i.e. `q - 2`.
    pub mult_x_minus_3: usize,
    pub dual_polynomial: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub decomposable: bool,
    pub k_std: usize,
    pub l_clifford: usize,
    /// Witnessing move sequence when decomposable.
    pub moves: Vec<Move>,
    /// Theta when decomposable, else an irreducible map reached by the search.
    #[serde(skip)]
    pub residual: CombMap,
    pub residual_form: Vec<u8>,
    pub certificate: Certificate,
}

type Memo = Mutex<HashMap<Vec<u8>, Option<Vec<Move>>>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

fn reduce_to_theta(m: &CombMap) -> Option<Vec<Move>> {
    if is_theta(m) {
        return Some(Vec::new());
    }
    let key = m.canonical_form();
    if let Some(hit) = memo().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let mut found = None;
    for (mv, child) in reduce_step(m) {
        if let Some(mut rest) = reduce_to_theta(&child) {
            rest.insert(0, mv);
            found = Some(rest);
            break;
        }
    }
    memo().lock().unwrap().insert(key, found.clone());
    found
}

/// Smallest canonical form among dead ends reachable from `m`.
fn minimal_residual(m: &CombMap) -> CombMap {
    let mut seen = HashSet::new();
    let mut best: Option<(Vec<u8>, CombMap)> = None;
    let mut stack = vec![m.clone()];
    seen.insert(m.canonical_form());
    while let Some(cur) = stack.pop() {
        let children = reduce_step(&cur);
        if children.is_empty() {
            let f = cur.canonical_form();
            if best.as_ref().map_or(true, |(b, _)| f < *b) {
                best = Some((f, cur));
            }
            continue;
        }
        for (_, c) in children {
            if seen.insert(c.canonical_form()) {
                stack.push(c);
            }
        }
    }
    best.map(|(_, m)| m).unwrap_or_else(|| m.clone())
}

/// Exhaustive memoized search for a reduction to the theta graph.
pub fn decompose(m: &CombMap) -> Result<DecompositionReport> {
    if !m.is_spherical() || !m.is_trivalent() || !m.is_connected() || m.vertex_count() == 0 {
        return Err(domain!("decompose needs a closed connected trivalent sphere map"));
    }
    if m.vertex_count() > DECOMPOSE_MAX_VERTICES {
        return Err(Error::Resource(format!(
            "decompose limited to {DECOMPOSE_MAX_VERTICES} vertices, got {}",
            m.vertex_count()
        )));
    }
    let p = dual_chromatic_polynomial(m)?;
    let lf = extract_linear_factors(&p, &[2, 3]);
    let certificate = Certificate {
        mult_x_minus_2: lf.multiplicities[0].unwrap_or(usize::MAX),
        mult_x_minus_3: lf.multiplicities[1].unwrap_or(usize::MAX),
        dual_polynomial: p.to_coeff_list(),
    };
    Ok(match reduce_to_theta(m) {
        Some(moves) => {
            let k = moves.iter().filter(|&&mv| mv == Move::Std).count();
            DecompositionReport {
                decomposable: true,
                k_std: k,
                l_clifford: moves.len() - k,
                moves,
                residual: CombMap::theta(),
                residual_form: theta_form().clone(),
                certificate,
            }
        }
        None => {
            let residual = minimal_residual(m);
            DecompositionReport {
                decomposable: false,
                k_std: 0,
                l_clifford: 0,
                moves: Vec::new(),
                residual_form: residual.canonical_form(),
                residual,
                certificate,
            }
        }
    })
}

/// `(q+1) q (q-1) (q-1)^k (q-2)^l` rewritten in the `x = q + 1` basis.
pub fn expected_decomposable_polynomial(k: usize, l: usize) -> IntPoly {
    &(&IntPoly::falling_factorial(3) * &IntPoly::linear_root(2).pow(k as u32))
        * &IntPoly::linear_root(3).pow(l as u32)
}

/// Deletes the edge of dart `d` and smooths both endpoints. `None` if a free
/// circle appears or the result is disconnected.
pub fn delete_and_smooth(m: &CombMap, d: usize) -> Option<CombMap> {
    let (s, a) = (m.sigma(), m.alpha());
    let e = a[d];
    let vof = m.vertex_of();
    let (u, w) = (vof[d], vof[e]);
    if u == w {
        return None;
    }
    let mut alive = vec![true; s.len()];
    let mut other = HashMap::new();
    for x in [d, e] {
        let (p, q) = (s[x], s[s[x]]);
        other.insert(p, q);
        other.insert(q, p);
        alive[x] = false;
        alive[p] = false;
        alive[q] = false;
    }
    let mut alpha = a.to_vec();
    let mut used = HashSet::new();
    for st in 0..s.len() {
        if !alive[st] {
            continue;
        }
        let mut t = a[st];
        while let Some(&o) = other.get(&t) {
            used.insert(t);
            used.insert(o);
            t = a[o];
        }
        alpha[st] = t;
    }
    if used.len() != other.len() {
        return None;
    }
    let r = CombMap::compact(s, &alpha, &alive, m.circles()).ok()?;
    r.is_connected().then_some(r)
}

/// Whether single-edge delete-and-smooth steps can reach the cube graph.
pub fn is_generalized_cube(m: &CombMap) -> Result<bool> {
    if !m.is_closed() || !m.is_trivalent() {
        return Err(domain!("generalized cube test needs a closed trivalent map"));
    }
    if m.vertex_count() > CUBE_SEARCH_MAX_VERTICES {
        return Err(Error::Resource(format!(
            "generalized cube search limited to {CUBE_SEARCH_MAX_VERTICES} vertices"
        )));
    }
    let mut seen = HashSet::new();
    Ok(cube_search(m, &mut seen))
}

fn cube_search(m: &CombMap, seen: &mut HashSet<Vec<u8>>) -> bool {
    let v = m.vertex_count();
    if v < 8 {
        return false;
    }
    let f = m.canonical_form();
    if v == 8 {
        return f == *cube_form();
    }
    if !seen.insert(f) {
        return false;
    }
    let a = m.alpha();
    (0..m.dart_count())
        .filter(|&d| d < a[d])
        .filter_map(|d| delete_and_smooth(m, d))
        .any(|c| cube_search(&c, seen))
}

/// Whether some closed curve crosses edges of `m` and visits every face once.
pub fn is_tree_double(m: &CombMap) -> Result<bool> {
    let g = m.dual()?;
    let f = g.vertex_count();
    if f > TREE_DOUBLE_MAX_FACES {
        return Err(Error::Resource(format!(
            "tree-double test limited to {TREE_DOUBLE_MAX_FACES} faces, got {f}"
        )));
    }
    let mult = g.multiplicity_matrix();
    match f {
        0 | 1 => return Ok(false),
        2 => return Ok(mult[0][1] >= 2),
        _ => {}
    }
    let adj = g.simple_adjacency();
    let mut path = vec![0];
    let mut on = vec![false; f];
    on[0] = true;
    fn extend(adj: &[Vec<usize>], path: &mut Vec<usize>, on: &mut [bool]) -> bool {
        let last = *path.last().unwrap();
        if path.len() == adj.len() {
            return adj[last].contains(&path[0]);
        }
        for &nx in &adj[last] {
            if !on[nx] {
                on[nx] = true;
                path.push(nx);
                if extend(adj, path, on) {
                    return true;
                }
                path.pop();
                on[nx] = false;
            }
        }
        false
    }
    Ok(extend(&adj, &mut path, &mut on))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Fillability {
    Obstructed,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleVerdict {
    pub non_loose: bool,
    pub embedded_exact_fillable: Fillability,
    pub decomposition: DecompositionReport,
    pub flip_distance: usize,
}

pub fn double_verdict(t1: &Triangulation, t2: &Triangulation) -> Result<DoubleVerdict> {
    let m = double_map(t1, t2)?;
    Ok(DoubleVerdict {
        non_loose: true,
        embedded_exact_fillable: if t1 == t2 { Fillability::Unknown } else { Fillability::Obstructed },
        decomposition: decompose(&m)?,
        flip_distance: flip_distance(t1, t2)?,
    })
}

/// Pairs of pairs, as indices into `enumerate_triangulations(N)`.
pub type PairOfPairs = ((usize, usize), (usize, usize));

#[derive(Clone, Debug, Serialize)]
pub struct EqualChromaticReport {
    pub n: usize,
    pub examined: usize,
    /// First unexamined pair rank, for resuming.
    pub next_offset: usize,
    pub partial: bool,
    pub matches: Vec<PairOfPairs>,
}

/// Resumable equal-chromatic search: for each dual polynomial, one representative
/// pair per isomorphism class of doubles seen so far.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualChromaticState {
    pub n: usize,
    pub next_offset: usize,
    pub examined: usize,
    /// polynomial coefficient list -> hex canonical form -> representative pair
    pub classes: BTreeMap<String, BTreeMap<String, (usize, usize)>>,
}

impl EqualChromaticState {
    pub fn new(n: usize) -> Self {
        EqualChromaticState { n, ..Default::default() }
    }

    pub fn matches(&self) -> Vec<PairOfPairs> {
        let mut out = Vec::new();
        for classes in self.classes.values() {
            let reps: Vec<(usize, usize)> = classes.values().copied().collect();
            for x in 0..reps.len() {
                for y in x + 1..reps.len() {
                    out.push((reps[x].min(reps[y]), reps[x].max(reps[y])));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

fn unrank_pair(r: usize, c: usize) -> (usize, usize) {
    // unordered pairs i <= j in row-major order
    let mut i = 0;
    let mut left = r;
    while left >= c - i {
        left -= c - i;
        i += 1;
    }
    (i, i + left)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Examines at most `budget` further pairs and folds them into `state`.
/// Returns whether pairs remain.
pub fn search_equal_chromatic_step(state: &mut EqualChromaticState, budget: usize) -> Result<bool> {
    let n = state.n;
    if n > 12 {
        return Err(Error::Resource(format!("equal-chromatic search limited to N ≤ 12, got {n}")));
    }
    let tris = enumerate_triangulations(n)?;
    let c = tris.len();
    let total = c * (c + 1) / 2;
    let start = state.next_offset.min(total);
    let end = start.saturating_add(budget).min(total);
    let rows: Vec<((usize, usize), String, String)> = (start..end)
        .into_par_iter()
        .map(|r| {
            let (i, j) = unrank_pair(r, c);
            let m = double_map(&tris[i], &tris[j])?;
            Ok(((i, j), dual_chromatic_polynomial(&m)?.to_coeff_list(), hex(&m.canonical_form())))
        })
        .collect::<Result<_>>()?;
    for (pair, p, form) in rows {
        state.classes.entry(p).or_default().entry(form).or_insert(pair);
    }
    state.examined += end - start;
    state.next_offset = end;
    Ok(end < total)
}

/// Pairs of doubles with equal dual chromatic polynomials but non-isomorphic maps,
/// over unordered triangulation pairs `i <= j` ranked from `start`, at most `budget` of them.
pub fn search_equal_chromatic(n: usize, budget: usize, start: usize) -> Result<EqualChromaticReport> {
    let mut state = EqualChromaticState { next_offset: start, ..EqualChromaticState::new(n) };
    let partial = search_equal_chromatic_step(&mut state, budget)?;
    Ok(EqualChromaticReport {
        n,
        examined: state.examined,
        next_offset: state.next_offset,
        partial,
        matches: state.matches(),
    })
}

/// Ordered pairs whose double has no triangle face yet `P(3) = 0`.
pub fn search_q_minus_2_trianglefree(n: usize) -> Result<Vec<(usize, usize)>> {
    if n > 10 {
        return Err(Error::Resource(format!("q-2 search limited to N ≤ 10, got {n}")));
    }
    let tris = enumerate_triangulations(n)?;
    let c = tris.len();
    let mut found: Vec<(usize, usize)> = (0..c)
        .into_par_iter()
        .flat_map_iter(|i| (i..c).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let (t1, t2) = (&tris[i], &tris[j]);
            // a triangle face sits at a polygon vertex of superimposed degree 3
            if (0..n).any(|v| t1.degree(v) + t2.degree(v) == 1) {
                return None;
            }
            let g = superimpose_dual(t1, t2).ok()?;
            let p = chromatic_polynomial(&g).ok()?;
            p.eval_i64(3).eq(&0.into()).then_some((i, j))
        })
        .flat_map_iter(|(i, j)| if i == j { vec![(i, j)] } else { vec![(i, j), (j, i)] })
        .collect();
    found.sort_unstable();
    Ok(found)
}

/// Doubled-graph consistency helper: the dual of a double is the superimposition.
pub fn dual_matches_superimposition(t1: &Triangulation, t2: &Triangulation) -> Result<bool> {
    let d = double_map(t1, t2)?.dual()?;
    Ok(d.isomorphic(&superimpose_dual(t1, t2)?))
}
