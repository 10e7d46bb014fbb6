//! Fixed points of the cyclic shift on `Gr(k, n)`, their Plücker ratios, and the
//! rational-point obstruction for twist-spun torus links.
//!
//! A fixed point is spanned by the rows `(1, ζ_j, ..., ζ_j^{n-1})` for `k` distinct
//! roots `ζ_j` with `ζ_j^n = (-1)^{k-1}`. Roots are stored as exponents of `ζ_{2n}`.

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::CycElem;
use crate::error::{domain, Error, Result};

pub const MAX_N: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FixedPoint {
    pub k: usize,
    pub n: usize,
    /// Exponents `e` of `ζ_{2n}`, increasing, all with `e ≡ k-1 (mod 2)`.
    pub root_exponents: Vec<usize>,
}

impl FixedPoint {
    pub fn new(k: usize, n: usize, mut root_exponents: Vec<usize>) -> Result<Self> {
        root_exponents.sort_unstable();
        root_exponents.dedup();
        if root_exponents.len() != k {
            return Err(domain!("need {k} distinct root exponents"));
        }
        if root_exponents.iter().any(|&e| e >= 2 * n || e % 2 != (k - 1) % 2) {
            return Err(domain!("exponents must be below {} with parity {}", 2 * n, (k - 1) % 2));
        }
        Ok(FixedPoint { k, n, root_exponents })
    }

    fn conductor(&self) -> u32 {
        2 * self.n as u32
    }

    /// `ζ_j^n = (-1)^{k-1}` for every root, checked in exact arithmetic.
    pub fn verify_roots(&self) -> Result<bool> {
        let m = self.conductor();
        let target = CycElem::from_int(m, if (self.k - 1) % 2 == 0 { 1 } else { -1 })?;
        for &e in &self.root_exponents {
            let z = CycElem::zeta_pow(m, e as i64)?;
            let mut p = CycElem::from_int(m, 1)?;
            for _ in 0..self.n {
                p = p.mul(&z);
            }
            if p != target {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Closed under `ζ ↦ ζ^{-1}`.
    pub fn is_conjugation_closed(&self) -> bool {
        let two_n = 2 * self.n;
        self.root_exponents
            .iter()
            .all(|&e| self.root_exponents.contains(&((two_n - e) % two_n)))
    }

    /// Matrix entry `ζ_j^c`.
    fn entry(&self, j: usize, c: usize) -> Result<CycElem> {
        CycElem::zeta_pow(self.conductor(), (self.root_exponents[j] * c) as i64)
    }

    fn entry_f64(&self, j: usize, c: usize) -> Complex64 {
        let t = std::f64::consts::PI * (self.root_exponents[j] * c) as f64 / self.n as f64;
        Complex64::from_polar(1.0, t)
    }
}

fn check_kn(k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n || n > MAX_N {
        return Err(domain!("need 1 ≤ k < n ≤ {MAX_N}, got k={k}, n={n}"));
    }
    Ok(())
}

fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(pool: &[usize], start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < k - cur.len() {
                break;
            }
            cur.push(pool[i]);
            go(pool, i + 1, k, cur, out);
            cur.pop();
        }
    }
    go(pool, 0, k, &mut cur, &mut out);
    out
}

/// All `binom(n, k)` fixed points of the cyclic shift.
pub fn karp_fixed_points(k: usize, n: usize) -> Result<Vec<FixedPoint>> {
    check_kn(k, n)?;
    let pool: Vec<usize> = (0..2 * n).filter(|e| e % 2 == (k - 1) % 2).collect();
    Ok(combinations(&pool, k)
        .into_iter()
        .map(|root_exponents| FixedPoint { k, n, root_exponents })
        .collect())
}

/// Conjugation-closed fixed points singled out as the real ones:
/// `{ζ, ζ^{-1}}` for `k = 2` and `{1, ζ, ζ^{-1}}` for `k = 3`.
pub fn real_fixed_points(k: usize, n: usize) -> Result<Vec<FixedPoint>> {
    check_kn(k, n)?;
    let two_n = 2 * n;
    let pts = match k {
        2 => (1..n).step_by(2).map(|e| vec![e, two_n - e]).collect::<Vec<_>>(),
        3 => (2..n).step_by(2).map(|e| vec![0, e, two_n - e]).collect(),
        _ => return Err(domain!("real fixed points are enumerated for k ∈ {{2, 3}} only")),
    };
    pts.into_iter().map(|e| FixedPoint::new(k, n, e)).collect()
}

fn det(mut a: Vec<Vec<CycElem>>) -> Result<CycElem> {
    let k = a.len();
    let m = a[0][0].conductor();
    let mut acc = CycElem::from_int(m, 1)?;
    for col in 0..k {
        let Some(piv) = (col..k).find(|&r| !a[r][col].is_zero()) else {
            return CycElem::zero(m);
        };
        if piv != col {
            a.swap(piv, col);
            acc = acc.neg();
        }
        let inv = a[col][col].inv()?;
        acc = acc.mul(&a[col][col]);
        for r in col + 1..k {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            for c in col..k {
                let t = f.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&t);
            }
        }
    }
    Ok(acc)
}

fn det_f64(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let k = a.len();
    let mut acc = Complex64::new(1.0, 0.0);
    for col in 0..k {
        let piv = (col..k).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm())).unwrap();
        if a[piv][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            a.swap(piv, col);
            acc = -acc;
        }
        acc *= a[col][col];
        for r in col + 1..k {
            let f = a[r][col] / a[col][col];
            for c in col..k {
                let t = f * a[col][c];
                a[r][c] -= t;
            }
        }
    }
    acc
}

/// Plücker coordinate on columns `cols` (0-based).
pub fn plucker(fp: &FixedPoint, cols: &[usize]) -> Result<CycElem> {
    if cols.len() != fp.k || cols.iter().any(|&c| c >= fp.n) {
        return Err(domain!("need {} columns below {}", fp.k, fp.n));
    }
    let rows = (0..fp.k)
        .map(|j| cols.iter().map(|&c| fp.entry(j, c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    det(rows)
}

/// Exact `Δ_I / Δ_{0..k-1}`.
pub fn plucker_ratio(fp: &FixedPoint, cols: &[usize]) -> Result<CycElem> {
    let base: Vec<usize> = (0..fp.k).collect();
    let d0 = plucker(fp, &base)?;
    if d0.is_zero() {
        return Err(Error::Degenerate("leading Plücker coordinate vanishes".into()));
    }
    plucker(fp, cols)?.div(&d0)
}

/// Floating-point `Δ_I / Δ_{0..k-1}` for cross-checks.
pub fn plucker_ratio_f64(fp: &FixedPoint, cols: &[usize]) -> Complex64 {
    let mat = |cs: &[usize]| -> Vec<Vec<Complex64>> {
        (0..fp.k).map(|j| cs.iter().map(|&c| fp.entry_f64(j, c)).collect()).collect()
    };
    let base: Vec<usize> = (0..fp.k).collect();
    det_f64(mat(cols)) / det_f64(mat(&base))
}

/// Column set of the ratio tested for each `k`: `{0,2}` or `{0,1,3}`.
pub fn designated_columns(k: usize) -> Result<Vec<usize>> {
    match k {
        2 => Ok(vec![0, 2]),
        3 => Ok(vec![0, 1, 3]),
        _ => Err(domain!("no designated ratio for k = {k}")),
    }
}

/// Divisibility hypotheses on `n`: for even `k`, `n ≠ 2m, 3m` with `m` odd; for
/// odd `k`, `n` not divisible by 2, 4 or 6.
pub fn divisibility_ok(k: usize, n: usize) -> bool {
    if k % 2 == 0 {
        let bad = |d: usize| n % d == 0 && (n / d) % 2 == 1;
        !bad(2) && !bad(3)
    } else {
        n % 2 != 0 && n % 4 != 0 && n % 6 != 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Obstructed,
    Inconclusive,
    PreconditionFailed,
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioCertificate {
    pub root_exponents: Vec<usize>,
    /// 1-based column indices.
    pub columns: Vec<usize>,
    pub conductor: u32,
    /// Coefficients in powers of `ζ_conductor`, lowest first.
    pub coeffs: Vec<String>,
    pub display: String,
    pub rational: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionVerdict {
    pub k: usize,
    pub n: usize,
    pub l: usize,
    pub status: Status,
    pub reason: Option<String>,
    pub certificates: Vec<RatioCertificate>,
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ObstructOptions {
    /// Evaluate even when the hypotheses fail.
    pub force: bool,
    /// Search every column set for an irrational ratio, not just the designated one.
    pub all_ratios: bool,
}

fn certificate(fp: &FixedPoint, cols: &[usize], v: &CycElem) -> RatioCertificate {
    RatioCertificate {
        root_exponents: fp.root_exponents.clone(),
        columns: cols.iter().map(|c| c + 1).collect(),
        conductor: v.conductor(),
        coeffs: v.coeff_strings(),
        display: v.to_string(),
        rational: v.is_rational().map(|r| r.to_string()),
    }
}

/// Per-fixed-point check: an irrational certificate, or the rational value found.
fn check_point(fp: &FixedPoint, all_ratios: bool) -> Result<(RatioCertificate, Option<BigRational>)> {
    let designated = designated_columns(fp.k)?;
    let v = plucker_ratio(fp, &designated)?;
    let Some(r) = v.is_rational() else {
        return Ok((certificate(fp, &designated, &v), None));
    };
    if all_ratios {
        let all: Vec<usize> = (0..fp.n).collect();
        for cols in combinations(&all, fp.k) {
            let w = plucker_ratio(fp, &cols)?;
            if w.is_rational().is_none() {
                return Ok((certificate(fp, &cols, &w), None));
            }
        }
    }
    Ok((certificate(fp, &designated, &v), Some(r)))
}

/// Rational-point obstruction for the `ρ^l` twist-spun of `λ(k, n-k)`.
pub fn obstruct_twist_spun(k: usize, n: usize, l: usize, opts: ObstructOptions) -> Result<ObstructionVerdict> {
    if k != 2 && k != 3 {
        return Err(domain!("k must be 2 or 3, got {k}"));
    }
    if l == 0 || l >= n {
        return Err(domain!("need 1 ≤ l < n, got l={l}, n={n}"));
    }
    let mut verdict = ObstructionVerdict {
        k,
        n,
        l,
        status: Status::PreconditionFailed,
        reason: None,
        certificates: Vec::new(),
        witness: None,
    };
    let mut reasons = Vec::new();
    if l.gcd(&n) != 1 {
        reasons.push(format!("gcd(l, n) = {} ≠ 1", l.gcd(&n)));
    }
    if !divisibility_ok(k, n) {
        reasons.push(format!("n = {n} fails the divisibility hypothesis for k = {k}"));
    }
    if !reasons.is_empty() {
        verdict.reason = Some(reasons.join("; "));
        if !opts.force {
            return Ok(verdict);
        }
    }
    let results = real_fixed_points(k, n)?
        .par_iter()
        .map(|fp| check_point(fp, opts.all_ratios))
        .collect::<Result<Vec<_>>>()?;
    let witness = results.iter().find_map(|(_, r)| r.clone());
    verdict.certificates = results.into_iter().map(|(c, _)| c).collect();
    verdict.status = match (reasons.is_empty(), witness.is_some()) {
        (_, true) => Status::Inconclusive,
        (true, false) => Status::Obstructed,
        (false, false) => Status::PreconditionFailed,
    };
    verdict.witness = witness.map(|w| w.to_string());
    Ok(verdict)
}

/// Numeric sweep: every fixed point that is not conjugation-closed has some
/// non-real Plücker ratio. Limited to `n ≤ 10`.
pub fn open_points_have_nonreal_ratio(k: usize, n: usize) -> Result<bool> {
    check_kn(k, n)?;
    if n > 10 {
        return Err(Error::Resource(format!("numeric sweep limited to n ≤ 10, got {n}")));
    }
    let all: Vec<usize> = (0..n).collect();
    let col_sets = combinations(&all, k);
    Ok(karp_fixed_points(k, n)?
        .iter()
        .filter(|fp| !fp.is_conjugation_closed())
        .all(|fp| col_sets.iter().any(|cs| plucker_ratio_f64(fp, cs).im.abs() > 1e-9)))
}
