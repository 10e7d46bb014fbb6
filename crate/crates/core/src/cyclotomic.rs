//! Exact arithmetic in the cyclotomic field `Q(ζ_m)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::poly::IntPoly;

pub const MAX_CONDUCTOR: u32 = 512;

fn table() -> &'static Mutex<HashMap<u32, Arc<IntPoly>>> {
    static T: OnceLock<Mutex<HashMap<u32, Arc<IntPoly>>>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(HashMap::new()))
}

fn phi_cached(m: u32) -> Arc<IntPoly> {
    if let Some(p) = table().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    let mut p = IntPoly::new(num);
    for d in 1..m {
        if m % d == 0 {
            p = p.div_exact(&phi_cached(d)).expect("Φ_d divides x^m - 1");
        }
    }
    let p = Arc::new(p);
    table().lock().unwrap().insert(m, p.clone());
    p
}

/// The `m`-th cyclotomic polynomial.
pub fn cyclotomic_poly(m: u32) -> Result<IntPoly> {
    if m == 0 || m > MAX_CONDUCTOR {
        return Err(domain!("conductor must lie in 1..={MAX_CONDUCTOR}, got {m}"));
    }
    Ok((*phi_cached(m)).clone())
}

pub fn euler_phi(m: u32) -> usize {
    (1..=m).filter(|&k| k.gcd(&m) == 1).count()
}

/// Element of `Q(ζ_m)` as a polynomial in `ζ_m` of degree below `φ(m)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycElem {
    m: u32,
    coeffs: Vec<BigRational>,
}

fn reduce(m: u32, mut c: Vec<BigRational>) -> Vec<BigRational> {
    let phi = phi_cached(m);
    let d = phi.degree().unwrap();
    // Φ_m is monic: subtract multiples from the top down
    for i in (d..c.len()).rev() {
        if c[i].is_zero() {
            continue;
        }
        let lead = c[i].clone();
        for (j, pc) in phi.coeffs().iter().enumerate() {
            c[i - d + j] -= &lead * BigRational::from_integer(pc.clone());
        }
    }
    c.resize(d, BigRational::zero());
    c
}

impl CycElem {
    fn check(m: u32) -> Result<()> {
        if m == 0 || m > MAX_CONDUCTOR {
            return Err(domain!("conductor must lie in 1..={MAX_CONDUCTOR}, got {m}"));
        }
        Ok(())
    }

    /// Reduces an arbitrary polynomial in `ζ_m`.
    pub fn from_poly(m: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        Self::check(m)?;
        Ok(CycElem { m, coeffs: reduce(m, coeffs) })
    }

    pub fn zero(m: u32) -> Result<Self> {
        Self::from_poly(m, Vec::new())
    }

    pub fn from_rational(m: u32, r: BigRational) -> Result<Self> {
        Self::from_poly(m, vec![r])
    }

    pub fn from_int(m: u32, r: i64) -> Result<Self> {
        Self::from_rational(m, BigRational::from_integer(r.into()))
    }

    /// `ζ_m^j`, with `j` taken modulo `m`.
    pub fn zeta_pow(m: u32, j: i64) -> Result<Self> {
        Self::check(m)?;
        let e = j.rem_euclid(m as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Self::from_poly(m, c)
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.m, other.m, "mixing Q(ζ_{}) and Q(ζ_{})", self.m, other.m);
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CycElem { m: self.m, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycElem { m: self.m, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); (2 * n).saturating_sub(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CycElem { m: self.m, coeffs: reduce(self.m, out) }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycElem { m: self.m, coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_m`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(domain!("inverse of zero in Q(ζ_{})", self.m));
        }
        let phi: Vec<BigRational> = phi_cached(self.m)
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // invariant: r0 ≡ s0 * self, r1 ≡ s1 * self (mod Φ_m)
        let (mut r0, mut s0) = (phi, Vec::new());
        let (mut r1, mut s1) = (trim(self.coeffs.clone()), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let mut s = poly_sub(&s0, &poly_mul(&q, &s1));
            // monic remainders keep the coefficients small
            let mut r = r;
            if let Some(lead) = r.last().cloned() {
                let c = lead.recip();
                r.iter_mut().for_each(|a| *a *= &c);
                s.iter_mut().for_each(|a| *a *= &c);
            }
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant since Φ_m is irreducible
        let c = r1[0].recip();
        let out = s1.iter().map(|a| a * &c).collect();
        Ok(CycElem { m: self.m, coeffs: reduce(self.m, out) })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// The rational value, if the element lies in `Q`.
    pub fn is_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// Galois action `ζ ↦ ζ^a`; `a` must be a unit modulo `m`.
    pub fn galois(&self, a: i64) -> Result<Self> {
        let m = self.m as i64;
        if a.rem_euclid(m).gcd(&m) != 1 {
            return Err(domain!("{a} is not a unit modulo {m}"));
        }
        let mut out = vec![BigRational::zero(); self.m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = (i as i64 * a).rem_euclid(m) as usize;
            out[e] += c;
        }
        Self::from_poly(self.m, out)
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    pub fn to_complex(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, std::f64::consts::TAU / self.m as f64);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| z.powu(i as u32) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Numerators and denominators, lowest degree first, as strings.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lead = b[db].clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &c * bc;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => format!("ζ{}", self.m),
                _ => format!("ζ{}^{i}", self.m),
            };
            let body = if i > 0 && c.abs().is_one() {
                mono
            } else if i > 0 {
                format!("({}){mono}", c.abs())
            } else {
                c.abs().to_string()
            };
            terms.push((c.is_negative(), body));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (neg, body)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycElem({self})")
    }
}

/// `2 cos(π p / q) = ζ_{2q}^p + ζ_{2q}^{-p}`.
pub fn two_cos(p: i64, q: u32) -> Result<CycElem> {
    if q == 0 {
        return Err(domain!("denominator must be positive"));
    }
    let m = 2 * q;
    Ok(CycElem::zeta_pow(m, p)?.add(&CycElem::zeta_pow(m, -p)?))
}

/// Rational value of `2 cos(π p / q)` by Niven's theorem, if any.
pub fn niven_rational(p: i64, q: u32) -> Option<BigRational> {
    // reduce the angle p/q modulo 2 and read off the reduced denominator
    let q = q as i64;
    let p = p.rem_euclid(2 * q);
    let g = p.gcd(&q);
    let (num, den) = (p / g, q / g);
    let v: i64 = match den {
        1 => if num % 2 == 0 { 2 } else { -2 },
        2 => 0,
        3 => if num == 1 || num == 5 { 1 } else { -1 },
        _ => return None,
    };
    Some(BigRational::from_integer(v.into()))
}
