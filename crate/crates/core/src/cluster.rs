//! Exchange matrices, mutation, finite group actions and folding.
//!
//! `B` is `n_total × n_mut`; rows `0..n_mut` are mutable, the rest frozen.
//! `b[i][j] > 0` counts arrows `i → j`.

use std::collections::{HashMap, HashSet, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::polygon::{Diagonal, Triangulation};

pub const DEFAULT_SEED_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExchangeMatrix {
    n_mut: usize,
    b: Vec<Vec<i64>>,
    /// Skew-symmetrizer of the mutable block: `b[i][j] d[j] = -b[j][i] d[i]`.
    d: Option<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    Rows(Vec<Vec<i64>>),
    Full { rows: Vec<Vec<i64>>, n_mut: Option<usize>, d: Option<Vec<i64>> },
}

impl ExchangeMatrix {
    pub fn new(b: Vec<Vec<i64>>, n_mut: usize, d: Option<Vec<i64>>) -> Result<Self> {
        if b.len() < n_mut || b.iter().any(|r| r.len() != n_mut) {
            return Err(domain!("exchange matrix must be n_total × {n_mut} with n_total ≥ {n_mut}"));
        }
        if let Some(d) = &d {
            if d.len() != n_mut || d.iter().any(|&x| x <= 0) {
                return Err(domain!("skew-symmetrizer needs {n_mut} positive entries"));
            }
        }
        let m = ExchangeMatrix { n_mut, b, d };
        for i in 0..n_mut {
            for j in 0..n_mut {
                if m.b[i][j] * m.weight(j) != -m.b[j][i] * m.weight(i) {
                    return Err(domain!("mutable block is not skew-symmetrizable at ({i}, {j})"));
                }
            }
        }
        Ok(m)
    }

    /// Square skew-symmetric matrix with every vertex mutable.
    pub fn square(b: Vec<Vec<i64>>) -> Result<Self> {
        let n = b.len();
        Self::new(b, n, None)
    }

    /// JSON: a plain row list (all mutable), or `{ "rows", "n_mut", "d" }`.
    pub fn from_json(s: &str) -> Result<Self> {
        match serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))? {
            MatrixFile::Rows(rows) => Self::square(rows),
            MatrixFile::Full { rows, n_mut, d } => {
                let n = n_mut.unwrap_or_else(|| rows.first().map_or(0, Vec::len));
                Self::new(rows, n, d)
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "rows": self.b, "n_mut": self.n_mut, "d": self.d }).to_string()
    }

    fn weight(&self, j: usize) -> i64 {
        self.d.as_ref().map_or(1, |d| d[j])
    }

    pub fn n_mut(&self) -> usize {
        self.n_mut
    }

    pub fn n_total(&self) -> usize {
        self.b.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn d(&self) -> Option<&[i64]> {
        self.d.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    /// The square mutable block.
    pub fn mutable_block(&self) -> Vec<Vec<i64>> {
        self.b[..self.n_mut].to_vec()
    }

    /// Drops the frozen rows.
    pub fn without_frozen(&self) -> Self {
        ExchangeMatrix { n_mut: self.n_mut, b: self.mutable_block(), d: self.d.clone() }
    }

    /// Matrix mutation at mutable index `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k >= self.n_mut {
            return Err(domain!("cannot mutate at frozen or missing index {k}"));
        }
        let b = &self.b;
        let out = (0..b.len())
            .map(|i| {
                (0..self.n_mut)
                    .map(|j| {
                        if i == k || j == k {
                            -b[i][j]
                        } else {
                            b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(ExchangeMatrix { n_mut: self.n_mut, b: out, d: self.d.clone() })
    }

    /// Mutates at every index of `orbit` in turn.
    pub fn mutate_orbit(&self, orbit: &[usize]) -> Result<Self> {
        orbit.iter().try_fold(self.clone(), |m, &k| m.mutate(k))
    }

    /// Exponent vectors of the exchange relation at `k`: arrows into `k` (positive
    /// entries of column `k`) and arrows out of `k`.
    pub fn exchange_monomials(&self, k: usize) -> Result<(Vec<i64>, Vec<i64>)> {
        if k >= self.n_mut {
            return Err(domain!("exchange relation needs a mutable index, got {k}"));
        }
        let pos = self.b.iter().map(|r| r[k].max(0)).collect();
        let neg = self.b.iter().map(|r| (-r[k]).max(0)).collect();
        Ok((pos, neg))
    }

    /// Principal extension of the mutable block: frozen rows form the identity.
    pub fn principal(&self) -> Self {
        let n = self.n_mut;
        let mut b = self.mutable_block();
        for i in 0..n {
            let mut row = vec![0; n];
            row[i] = 1;
            b.push(row);
        }
        ExchangeMatrix { n_mut: n, b, d: self.d.clone() }
    }

    /// Renames index `i` to `perm[i]`; mutable and frozen indices must stay apart.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_total();
        let mut seen = vec![false; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || seen[p] || (i < self.n_mut) != (p < self.n_mut) {
                return Err(domain!("relabeling must permute mutable and frozen indices separately"));
            }
            seen[p] = true;
        }
        if perm.len() != n {
            return Err(domain!("relabeling has wrong length"));
        }
        let mut b = vec![vec![0; self.n_mut]; n];
        for i in 0..n {
            for j in 0..self.n_mut {
                b[perm[i]][perm[j]] = self.b[i][j];
            }
        }
        let d = self.d.as_ref().map(|d| {
            let mut out = vec![0; d.len()];
            for j in 0..d.len() {
                out[perm[j]] = d[j];
            }
            out
        });
        Ok(ExchangeMatrix { n_mut: self.n_mut, b, d })
    }
}

/// A cyclic group generated by one permutation of the indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    generator: Vec<usize>,
    order: usize,
}

impl GroupAction {
    pub fn from_perm(generator: Vec<usize>) -> Result<Self> {
        let n = generator.len();
        let mut seen = vec![false; n];
        for &p in &generator {
            if p >= n || seen[p] {
                return Err(domain!("group generator is not a permutation"));
            }
            seen[p] = true;
        }
        let mut order = 1;
        let mut done = vec![false; n];
        for s in 0..n {
            let mut len = 0;
            let mut x = s;
            while !done[x] {
                done[x] = true;
                x = generator[x];
                len += 1;
            }
            if len > 0 {
                order = order.lcm(&len);
            }
        }
        Ok(GroupAction { generator, order })
    }

    pub fn identity(n: usize) -> Self {
        GroupAction { generator: (0..n).collect(), order: 1 }
    }

    /// Cycle notation with 1-based indices, e.g. `(1 5)(2 4)`.
    pub fn from_cycles(n: usize, s: &str) -> Result<Self> {
        let mut perm: Vec<usize> = (0..n).collect();
        for part in s.split(')') {
            let body = part.trim().trim_start_matches('(');
            if body.trim().is_empty() {
                continue;
            }
            let cyc = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    let v: usize = t.parse().map_err(|_| Error::Parse(format!("bad index {t:?}")))?;
                    if v == 0 || v > n {
                        return Err(domain!("cycle index {v} outside 1..={n}"));
                    }
                    Ok(v - 1)
                })
                .collect::<Result<Vec<_>>>()?;
            for (i, &x) in cyc.iter().enumerate() {
                perm[x] = cyc[(i + 1) % cyc.len()];
            }
        }
        Self::from_perm(perm)
    }

    pub fn generator(&self) -> &[usize] {
        &self.generator
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Orbits, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.generator.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut orb = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                orb.push(x);
                x = self.generator[x];
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }
}

/// First failed admissibility condition (numbered 1 to 4).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: u8,
    pub detail: String,
}

pub fn admissibility_violation(b: &ExchangeMatrix, g: &GroupAction) -> Option<Violation> {
    let n = b.n_total();
    let nm = b.n_mut;
    let gen = &g.generator;
    if gen.len() != n {
        return Some(Violation { condition: 1, detail: format!("action on {} indices, matrix has {n}", gen.len()) });
    }
    if let Some(i) = (0..n).find(|&i| (i < nm) != (gen[i] < nm)) {
        return Some(Violation { condition: 1, detail: format!("index {} changes type under the action", i + 1) });
    }
    for i in 0..n {
        for j in 0..nm {
            if b.b[i][j] != b.b[gen[i]][gen[j]] {
                return Some(Violation {
                    condition: 2,
                    detail: format!("b[{}][{}] ≠ b[{}][{}]", i + 1, j + 1, gen[i] + 1, gen[j] + 1),
                });
            }
        }
    }
    let orbits = g.orbits();
    for orb in orbits.iter().filter(|o| o[0] < nm) {
        for &i in orb {
            for &ip in orb {
                if i != ip && b.b[i][ip] != 0 {
                    return Some(Violation {
                        condition: 3,
                        detail: format!("b[{}][{}] = {} inside one orbit", i + 1, ip + 1, b.b[i][ip]),
                    });
                }
            }
        }
    }
    for orb in &orbits {
        for (x, &i) in orb.iter().enumerate() {
            for &ip in &orb[x + 1..] {
                for j in 0..nm {
                    if b.b[i][j] * b.b[ip][j] < 0 {
                        return Some(Violation {
                            condition: 4,
                            detail: format!("b[{}][{}] and b[{}][{}] have opposite signs", i + 1, j + 1, ip + 1, j + 1),
                        });
                    }
                }
            }
        }
    }
    None
}

pub fn is_admissible(b: &ExchangeMatrix, g: &GroupAction) -> bool {
    admissibility_violation(b, g).is_none()
}

fn mutable_orbits(b: &ExchangeMatrix, g: &GroupAction) -> Vec<Vec<usize>> {
    g.orbits().into_iter().filter(|o| o[0] < b.n_mut).collect()
}

/// Folded matrix over orbits: `b^G[I][J] = Σ_{i∈I} b[i][min J]`, `D = diag(|J|)`.
pub fn fold(b: &ExchangeMatrix, g: &GroupAction) -> Result<ExchangeMatrix> {
    if b.d.is_some() {
        return Err(domain!("folding expects a skew-symmetric matrix"));
    }
    if let Some(v) = admissibility_violation(b, g) {
        return Err(domain!("action is not admissible: condition ({}) {}", v.condition, v.detail));
    }
    let orbits = g.orbits();
    let cols: Vec<&Vec<usize>> = orbits.iter().filter(|o| o[0] < b.n_mut).collect();
    let rows = orbits
        .iter()
        .map(|oi| cols.iter().map(|oj| oi.iter().map(|&i| b.b[i][oj[0]]).sum()).collect())
        .collect();
    let d = cols.iter().map(|o| o.len() as i64).collect();
    ExchangeMatrix::new(rows, cols.len(), Some(d))
}

/// Whether every seed reachable by orbit mutations stays admissible.
pub fn is_globally_foldable(b: &ExchangeMatrix, g: &GroupAction, cap: usize) -> Result<bool> {
    if !is_admissible(b, g) {
        return Ok(false);
    }
    let orbits = mutable_orbits(b, g);
    let mut seen = HashSet::from([b.b.clone()]);
    let mut queue = VecDeque::from([b.clone()]);
    while let Some(cur) = queue.pop_front() {
        for orb in &orbits {
            let next = cur.mutate_orbit(orb)?;
            if seen.contains(&next.b) {
                continue;
            }
            if !is_admissible(&next, g) {
                return Ok(false);
            }
            if seen.len() >= cap {
                return Err(Error::Resource(format!("more than {cap} seeds; exploration inconclusive")));
            }
            seen.insert(next.b.clone());
            queue.push_back(next);
        }
    }
    Ok(true)
}

fn c_vector_key(p: &ExchangeMatrix) -> Vec<Vec<i64>> {
    let n = p.n_mut;
    let mut cols: Vec<Vec<i64>> = (0..n).map(|j| (n..2 * n).map(|i| p.b[i][j]).collect()).collect();
    cols.sort_unstable();
    cols
}

/// Number of distinct seeds reached by orbit mutations, each seed identified by
/// the set of c-vectors of the principal extension.
pub fn count_folded_seeds(b: &ExchangeMatrix, g: &GroupAction, cap: usize) -> Result<usize> {
    if let Some(v) = admissibility_violation(b, g) {
        return Err(domain!("action is not admissible: condition ({}) {}", v.condition, v.detail));
    }
    let orbits = mutable_orbits(b, g);
    let start = b.principal();
    let mut seen = HashSet::from([c_vector_key(&start)]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for orb in &orbits {
            let next = cur.mutate_orbit(orb)?;
            if seen.insert(c_vector_key(&next)) {
                if seen.len() > cap {
                    return Err(Error::Resource(format!("more than {cap} seeds; not of finite type?")));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len())
}

/// Quiver of a triangulation. Mutable vertices are the diagonals in the order of
/// `t.diagonals()`; frozen vertices (optional) are the sides `i-(i+1)`. Inside each
/// triangle, arrows run clockwise between consecutive sides.
pub fn quiver_from_triangulation(t: &Triangulation, with_frozen: bool) -> ExchangeMatrix {
    let n = t.n();
    let nm = t.diagonals().len();
    let mut index: HashMap<Diagonal, usize> =
        t.diagonals().iter().enumerate().map(|(i, &d)| (d, i)).collect();
    for i in 0..n {
        let (a, b) = (i, (i + 1) % n);
        index.insert((a.min(b), a.max(b)), nm + i);
    }
    let total = if with_frozen { nm + n } else { nm };
    let mut full = vec![vec![0i64; total]; total];
    for [a, b, c] in t.triangles() {
        let ab = index[&(a, b)];
        let bc = index[&(b, c)];
        let ca = index[&(a, c)];
        for (from, to) in [(ab, ca), (ca, bc), (bc, ab)] {
            if (from >= nm && to >= nm) || from >= total || to >= total {
                continue;
            }
            full[from][to] += 1;
            full[to][from] -= 1;
        }
    }
    let rows = full.into_iter().map(|r| r[..nm].to_vec()).collect();
    ExchangeMatrix::new(rows, nm, None).expect("triangulation quiver is skew-symmetric")
}

/// Action of the rotation `i ↦ i + k` on the quiver indices of a rotation-invariant
/// triangulation.
pub fn rotation_action(t: &Triangulation, k: usize, with_frozen: bool) -> Result<GroupAction> {
    let n = t.n();
    if t.rotate(k as i64) != *t {
        return Err(domain!("{t} is not invariant under rotation by {k}"));
    }
    let diags = t.diagonals();
    let nm = diags.len();
    let pos = |d: Diagonal| diags.binary_search(&d).expect("rotated diagonal present");
    let mut gen: Vec<usize> = diags
        .iter()
        .map(|&(a, b)| {
            let (x, y) = ((a + k) % n, (b + k) % n);
            pos((x.min(y), x.max(y)))
        })
        .collect();
    if with_frozen {
        gen.extend((0..n).map(|i| nm + (i + k) % n));
    }
    GroupAction::from_perm(gen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_path(orient: &[i64]) -> ExchangeMatrix {
        // orient[i] = +1 means i → i+1
        let n = orient.len() + 1;
        let mut b = vec![vec![0; n]; n];
        for (i, &o) in orient.iter().enumerate() {
            b[i][i + 1] = o;
            b[i + 1][i] = -o;
        }
        ExchangeMatrix::square(b).unwrap()
    }

    #[test]
    fn a2_mutation() {
        let b = ExchangeMatrix::square(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(b.mutate(0).unwrap().rows(), &[vec![0, -1], vec![1, 0]]);
        assert!(b.mutate(2).is_err());
        assert_eq!(b.exchange_monomials(0).unwrap(), (vec![0, 0], vec![0, 1]));
    }

    #[test]
    fn folded_c3_mutation() {
        let b = ExchangeMatrix::new(
            vec![vec![0, -1, 0], vec![1, 0, -2], vec![0, 1, 0]],
            3,
            Some(vec![2, 2, 1]),
        )
        .unwrap();
        assert_eq!(b.mutate(2).unwrap().rows(), &[vec![0, -1, 0], vec![1, 0, 2], vec![0, -1, 0]]);
    }

    #[test]
    fn triangulation_quivers() {
        let q = quiver_from_triangulation(&"4:0-2".parse().unwrap(), false);
        assert_eq!(q.rows(), &[vec![0]]);
        let q = quiver_from_triangulation(&Triangulation::fan(5, 0).unwrap(), false);
        assert_eq!(q.get(0, 1).abs(), 1);
        let q = quiver_from_triangulation(&Triangulation::fan(5, 0).unwrap(), true);
        assert_eq!(q.n_total(), 7);
    }

    #[test]
    fn admissibility() {
        let b = a_path(&[-1, 1, -1, 1]);
        let g = GroupAction::from_cycles(5, "(1 5)(2 4)").unwrap();
        assert_eq!(g.order(), 2);
        assert!(is_admissible(&b, &g));
        let cyc = ExchangeMatrix::square(vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]).unwrap();
        let rot = GroupAction::from_cycles(3, "(1 2 3)").unwrap();
        assert_eq!(admissibility_violation(&cyc, &rot).unwrap().condition, 3);
        assert!(!is_globally_foldable(&cyc, &rot, 10).unwrap());
        assert!(is_admissible(&cyc, &GroupAction::identity(3)));
    }

    #[test]
    fn folds() {
        let b = a_path(&[1, -1]);
        let g = GroupAction::from_cycles(3, "(1 3)").unwrap();
        let f = fold(&b, &g).unwrap();
        assert_eq!(f.rows(), &[vec![0, 2], vec![-1, 0]]);
        assert_eq!(f.d(), Some(&[2, 1][..]));
        let id = fold(&b, &GroupAction::identity(3)).unwrap();
        assert_eq!(id.rows(), b.rows());
        let cyc = ExchangeMatrix::square(vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]).unwrap();
        assert!(fold(&cyc, &GroupAction::from_cycles(3, "(1 2 3)").unwrap()).is_err());
    }

    #[test]
    fn seed_counts() {
        let a1 = ExchangeMatrix::square(vec![vec![0]]).unwrap();
        assert_eq!(count_folded_seeds(&a1, &GroupAction::identity(1), 100).unwrap(), 2);
        let a3 = a_path(&[1, 1]);
        assert_eq!(count_folded_seeds(&a3, &GroupAction::identity(3), 1000).unwrap(), 14);
        let a5 = a_path(&[-1, 1, -1, 1]);
        let g = GroupAction::from_cycles(5, "(1 5)(2 4)").unwrap();
        assert!(is_globally_foldable(&a5, &g, DEFAULT_SEED_CAP).unwrap());
        assert_eq!(count_folded_seeds(&a5, &g, DEFAULT_SEED_CAP).unwrap(), 20);
        let kron = ExchangeMatrix::square(vec![vec![0, 3], vec![-3, 0]]).unwrap();
        assert!(matches!(
            count_folded_seeds(&kron, &GroupAction::identity(2), 50),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn json_io() {
        let b = ExchangeMatrix::from_json("[[0,1],[-1,0]]").unwrap();
        assert_eq!(b.n_mut(), 2);
        let f = ExchangeMatrix::from_json(r#"{"rows":[[0,2],[-1,0],[1,0]],"n_mut":2,"d":[2,1]}"#).unwrap();
        assert_eq!(f.n_total(), 3);
        assert_eq!(ExchangeMatrix::from_json(&f.to_json()).unwrap(), f);
        assert!(ExchangeMatrix::from_json("[[0,1],[1,0]]").is_err());
    }

    #[test]
    fn rotation_actions() {
        let t: Triangulation = "8:0-2,0-3,0-4,4-6,4-7".parse().unwrap();
        let g = rotation_action(&t, 4, true).unwrap();
        assert_eq!(g.order(), 2);
        assert!(is_admissible(&quiver_from_triangulation(&t, true), &g));
        assert!(rotation_action(&Triangulation::fan(8, 0).unwrap(), 4, false).is_err());
    }
}
