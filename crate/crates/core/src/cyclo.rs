//! Exact arithmetic in cyclotomic fields `Q(ζ_M)`.
//!
//! A [`CycNumber`] is a dense coefficient vector of length `φ(M)` holding a
//! residue modulo the cyclotomic polynomial `Φ_M`. Numbers of different
//! conductors never mix: use [`CycNumber::lift`] to move to a multiple
//! conductor first.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Per-conductor data: `Φ_M` and the reductions of `x^k` for every `k < M`.
#[derive(Debug)]
pub struct CycloField {
    conductor: u32,
    phi: usize,
    /// Coefficients of `Φ_M`, lowest degree first; monic of degree `phi`.
    cyclotomic: Vec<i64>,
    /// `powers[k]` = `x^k mod Φ_M` for `0 <= k < M`.
    powers: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quo = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        quo[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

fn cyclotomic_poly(m: u32, cache: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let pd = cyclotomic_poly(d, cache);
            num = poly_div_exact(&num, &pd);
        }
    }
    cache.insert(m, num.clone());
    num
}

fn registry() -> &'static Mutex<HashMap<u32, Arc<CycloField>>> {
    static REG: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CycloField {
    /// Shared field of conductor `m` (cached).
    pub fn get(m: u32) -> Arc<CycloField> {
        assert!(m >= 1, "conductor must be positive");
        let mut reg = registry().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(f) = reg.get(&m) {
            return Arc::clone(f);
        }
        let mut cache = HashMap::new();
        let cyclotomic = cyclotomic_poly(m, &mut cache);
        let phi = cyclotomic.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..phi {
                    cur[j] -= top * cyclotomic[j];
                }
            }
        }
        let field = Arc::new(CycloField { conductor: m, phi, cyclotomic, powers });
        reg.insert(m, Arc::clone(&field));
        field
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Degree of `Φ_M`, i.e. Euler's totient of the conductor.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn cyclotomic_coefficients(&self) -> &[i64] {
        &self.cyclotomic
    }
}

/// An element of `Q(ζ_M)`.
#[derive(Clone)]
pub struct CycNumber {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl CycNumber {
    pub fn zero(m: u32) -> Self {
        Self::zero_in(&CycloField::get(m))
    }

    pub fn zero_in(field: &Arc<CycloField>) -> Self {
        CycNumber { field: Arc::clone(field), coeffs: vec![Rational::ZERO; field.phi] }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, Rational::ONE)
    }

    pub fn from_rational(m: u32, r: Rational) -> Self {
        Self::rational_in(&CycloField::get(m), r)
    }

    pub fn rational_in(field: &Arc<CycloField>, r: Rational) -> Self {
        let mut z = Self::zero_in(field);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(m: u32, n: i64) -> Self {
        Self::from_rational(m, Rational::from_int(n))
    }

    /// Builds a number from raw coefficients in the power basis `1, ζ, ..., ζ^{φ-1}`.
    pub fn from_coefficients(m: u32, coeffs: Vec<Rational>) -> Result<Self> {
        let field = CycloField::get(m);
        if coeffs.len() != field.phi {
            return Err(Error::Usage(format!(
                "conductor {m} needs {} coefficients, got {}",
                field.phi,
                coeffs.len()
            )));
        }
        Ok(CycNumber { field, coeffs })
    }

    /// `ζ_M^(k mod M)`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        Self::root_in(&CycloField::get(m), k)
    }

    pub fn root_in(field: &Arc<CycloField>, k: i64) -> Self {
        let m = field.conductor as i64;
        let k = k.rem_euclid(m) as usize;
        let coeffs = field.powers[k].iter().map(|&c| Rational::from_int(c)).collect();
        CycNumber { field: Arc::clone(field), coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The rational value if this number lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn same_field(&self, other: &CycNumber) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field.conductor == other.field.conductor
    }

    fn check(&self, other: &CycNumber) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::ConductorMismatch(self.conductor(), other.conductor()))
        }
    }

    /// Checked field arithmetic; conductors must agree.
    pub fn arith(op: ArithOp, lhs: &CycNumber, rhs: &CycNumber) -> Result<CycNumber> {
        lhs.check(rhs)?;
        Ok(match op {
            ArithOp::Add => lhs.add_unchecked(rhs),
            ArithOp::Sub => lhs.sub_unchecked(rhs),
            ArithOp::Mul => lhs.mul_unchecked(rhs),
        })
    }

    fn add_unchecked(&self, rhs: &CycNumber) -> CycNumber {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CycNumber { field: Arc::clone(&self.field), coeffs }
    }

    fn sub_unchecked(&self, rhs: &CycNumber) -> CycNumber {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        CycNumber { field: Arc::clone(&self.field), coeffs }
    }

    fn mul_unchecked(&self, rhs: &CycNumber) -> CycNumber {
        let phi = self.field.phi;
        let nz_a: Vec<usize> = (0..phi).filter(|&i| !self.coeffs[i].is_zero()).collect();
        if nz_a.is_empty() {
            return self.clone();
        }
        let nz_b: Vec<usize> = (0..phi).filter(|&i| !rhs.coeffs[i].is_zero()).collect();
        if nz_b.is_empty() {
            return rhs.clone();
        }
        // rational scalar fast paths
        if nz_a == [0] {
            return rhs.scale(&self.coeffs[0]);
        }
        if nz_b == [0] {
            return self.scale(&rhs.coeffs[0]);
        }
        let mut prod = vec![Rational::ZERO; 2 * phi - 1];
        for &i in &nz_a {
            for &j in &nz_b {
                let t = &self.coeffs[i] * &rhs.coeffs[j];
                prod[i + j] = &prod[i + j] + &t;
            }
        }
        let mut out: Vec<Rational> = prod[..phi].to_vec();
        let m = self.field.conductor as usize;
        for (k, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            let red = &self.field.powers[k % m];
            for (j, &r) in red.iter().enumerate() {
                if r != 0 {
                    out[j] = &out[j] + &c.mul_int(r);
                }
            }
        }
        CycNumber { field: Arc::clone(&self.field), coeffs: out }
    }

    pub fn scale(&self, r: &Rational) -> CycNumber {
        let coeffs = self.coeffs.iter().map(|c| c * r).collect();
        CycNumber { field: Arc::clone(&self.field), coeffs }
    }

    pub fn pow(&self, mut e: u64) -> CycNumber {
        let mut base = self.clone();
        let mut acc = CycNumber::rational_in(&self.field, Rational::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Φ_M`.
    pub fn inverse(&self) -> Result<CycNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            let inv = r.recip().ok_or(Error::DivisionByZero)?;
            return Ok(CycNumber::rational_in(&self.field, inv));
        }
        let modulus: Vec<Rational> =
            self.field.cyclotomic.iter().map(|&c| Rational::from_int(c)).collect();
        let a = trim(self.coeffs.clone());
        // invariant: s * self ≡ r (mod Φ)
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (vec![Rational::ZERO], vec![Rational::ONE]);
        while !(r1.len() == 1 && !r1[0].is_zero()) {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                // gcd is non-constant; impossible for a field element
                return Err(Error::Internal("non-invertible cyclotomic residue".into()));
            }
        }
        let c = r1[0].recip().ok_or(Error::DivisionByZero)?;
        let s: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        Ok(CycNumber::from_poly(&self.field, &s))
    }

    fn from_poly(field: &Arc<CycloField>, p: &[Rational]) -> CycNumber {
        let phi = field.phi;
        let m = field.conductor as usize;
        let mut out = vec![Rational::ZERO; phi];
        for (k, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < phi {
                out[k] = &out[k] + c;
            } else {
                for (j, &r) in field.powers[k % m].iter().enumerate() {
                    if r != 0 {
                        out[j] = &out[j] + &c.mul_int(r);
                    }
                }
            }
        }
        CycNumber { field: Arc::clone(field), coeffs: out }
    }

    /// Least `t >= 1` with `self^t = 1`, searching `t <= 2M`.
    pub fn order(&self) -> Result<Option<u64>> {
        if self.is_zero() {
            return Err(Error::Usage("order of zero is undefined".into()));
        }
        let limit = 2 * self.field.conductor as u64;
        let mut acc = self.clone();
        for t in 1..=limit {
            if acc.is_one() {
                return Ok(Some(t));
            }
            acc = acc.mul_unchecked(self);
        }
        Ok(None)
    }

    /// Exponent `k` (mod `M`) with `self = ζ_M^k`, if this is an `M`-th root of unity.
    pub fn root_exponent(&self) -> Option<u32> {
        let m = self.field.conductor;
        (0..m).find(|&k| {
            let p = &self.field.powers[k as usize];
            p.iter().zip(&self.coeffs).all(|(&a, b)| *b == Rational::from_int(a))
        })
    }

    /// Re-express in conductor `target`, which must be a multiple of the current one.
    pub fn lift(&self, target: u32) -> Result<CycNumber> {
        let m = self.field.conductor;
        if target % m != 0 {
            return Err(Error::Usage(format!("cannot lift conductor {m} to {target}")));
        }
        let field = CycloField::get(target);
        let step = (target / m) as usize;
        let mut p = vec![Rational::ZERO; (self.field.phi.max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            p[k * step] = c.clone();
        }
        Ok(CycNumber::from_poly(&field, &p))
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let z = Rational::ZERO;
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead_inv = b.last().and_then(Rational::recip).expect("division by zero polynomial");
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quo = vec![Rational::ZERO; rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] = &rem[shift + j] - &(&c * bj);
        }
        quo[shift] = c;
        rem = trim(rem);
    }
    (trim(quo), rem)
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl Eq for CycNumber {}

impl std::hash::Hash for CycNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

// Operator sugar panics on conductor mismatch; use `CycNumber::arith` for a checked result.
impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        assert!(self.same_field(rhs), "conductor mismatch");
        self.add_unchecked(rhs)
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        assert!(self.same_field(rhs), "conductor mismatch");
        self.sub_unchecked(rhs)
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        assert!(self.same_field(rhs), "conductor mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        CycNumber { field: Arc::clone(&self.field), coeffs }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl fmt::Display for CycNumber {
    /// Renders as `c0 + c1*z(M)^1 + ...`, parenthesized when more than one
    /// term is present so the text can be used as a factor.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.field.conductor;
        let terms: Vec<(usize, &Rational)> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let render = |k: usize, c: &Rational| -> String {
            if k == 0 {
                c.to_string()
            } else if c.is_one() {
                format!("z({m})^{k}")
            } else if *c == -Rational::ONE {
                format!("-z({m})^{k}")
            } else {
                format!("{c}*z({m})^{k}")
            }
        };
        if terms.len() == 1 {
            let (k, c) = terms[0];
            return write!(f, "{}", render(k, c));
        }
        let mut s = String::from("(");
        for (idx, (k, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let body = render(*k, &c.abs());
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s.push(')');
        write!(f, "{s}")
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
