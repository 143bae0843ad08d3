//! Integer Laurent polynomials in one variable `t`.
//!
//! Stored densely as `coeffs[i]` = coefficient of `t^(shift + i)`, with no
//! zero coefficient at either end. The zero polynomial has no coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    shift: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            shift: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        Self::from_dense(e, vec![c.into()])
    }

    /// Coefficients in ascending order starting at `t^shift`.
    pub fn from_dense(shift: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { shift, coeffs };
        p.trim();
        p
    }

    /// Ascending coefficients of an ordinary polynomial, `[c0, c1, ...]`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_dense(0, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let map: BTreeMap<i64, BigInt> =
            terms.into_iter().fold(BTreeMap::new(), |mut m, (e, c)| {
                *m.entry(e).or_insert_with(BigInt::zero) += c;
                m
            });
        let Some((&lo, _)) = map.iter().next() else {
            return Self::zero();
        };
        let hi = *map.keys().next_back().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        Self::from_dense(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.shift += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.shift = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Units of `Z[t, 1/t]` are `±t^k`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    pub fn min_exp(&self) -> i64 {
        self.shift
    }

    pub fn max_exp(&self) -> i64 {
        self.shift + self.coeffs.len() as i64 - 1
    }

    /// Width of the exponent span (`max - min`), the degree after
    /// normalization.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        if self.is_zero() || e < self.shift || e > self.max_exp() {
            BigInt::zero()
        } else {
            self.coeffs[(e - self.shift) as usize].clone()
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.shift + i as i64, c))
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplies by `t^k`.
    pub fn shifted(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            shift: self.shift + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_dense(self.shift, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Representative up to units: lowest exponent 0 and positive leading
    /// coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut p = LaurentPoly {
            shift: 0,
            coeffs: self.coeffs.clone(),
        };
        if p.coeffs.last().unwrap().is_negative() {
            p = -p;
        }
        p
    }

    pub fn eq_up_to_units(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content; the sign of the leading coefficient is kept.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        Self::from_dense(self.shift, self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Inverse of a unit `±t^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.is_unit()
            .then(|| Self::monomial(self.coeffs[0].clone(), -self.shift))
    }

    /// Exact division in `Z[t, 1/t]`, or `None` when `d` does not divide.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (q, r) = div_rem_exact_coeffs(&self.coeffs, &d.coeffs)?;
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(self.shift - d.shift, q))
    }
}

/// Long division of ordinary coefficient vectors over `Z` assuming every
/// quotient coefficient is integral; `None` as soon as one is not.
fn div_rem_exact_coeffs(num: &[BigInt], den: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let mut r = num.to_vec();
    let dl = den.len();
    if r.len() < dl {
        return Some((Vec::new(), r));
    }
    let lead = den.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - dl + 1];
    for i in (0..q.len()).rev() {
        let top = &r[i + dl - 1];
        if top.is_zero() {
            continue;
        }
        let (qi, rem) = top.div_rem(lead);
        if !rem.is_zero() {
            return None;
        }
        for (j, dc) in den.iter().enumerate() {
            r[i + j] -= &qi * dc;
        }
        q[i] = qi;
    }
    r.truncate(dl - 1);
    Some((q, r))
}

/// Pseudo-remainder of `a` by `b` (ordinary coefficient vectors).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let k = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &lr * bc;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Greatest common divisor in `Z[t, 1/t]`, normalized.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let content = a.content().gcd(&b.content());
    let mut x = a.normalized().primitive_part().coeffs;
    let mut y = b.normalized().primitive_part().coeffs;
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() && y.len() > 1 {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_empty() {
            r
        } else {
            LaurentPoly::from_dense(0, r).primitive_part().coeffs
        };
    }
    let g = if y.is_empty() {
        LaurentPoly::from_dense(0, x).primitive_part()
    } else {
        LaurentPoly::one()
    };
    g.scale(&content).normalized()
}

/// True iff `p` divides `q` in `Z[t, 1/t]`: the contents divide and the
/// primitive parts divide over `Q` (Gauss's lemma).
pub fn divides(p: &LaurentPoly, q: &LaurentPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    if q.is_zero() {
        return Ok(true);
    }
    if !(q.content().is_multiple_of(&p.content())) {
        return Ok(false);
    }
    let pp = p.normalized().primitive_part();
    let qp = q.normalized().primitive_part();
    if qp.coeffs.len() < pp.coeffs.len() {
        return Ok(false);
    }
    Ok(pseudo_rem(&qp.coeffs, &pp.coeffs).is_empty())
}

pub fn poly_mul(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p * q
}

pub fn poly_eq_up_to_units(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    p.eq_up_to_units(q)
}

/// `tau t^2 + (1 - 2 tau) t + tau`, normalized.
pub fn twist_quadratic(tau: i64) -> LaurentPoly {
    LaurentPoly::from_coeffs(&[tau, 1 - 2 * tau, tau]).normalized()
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(rhs.shift);
        let hi = self.max_exp().max(rhs.max_exp());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in self.terms().chain(rhs.terms()) {
            coeffs[(e - lo) as usize] += c;
        }
        LaurentPoly::from_dense(lo, coeffs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            shift: self.shift,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_dense(self.shift + rhs.shift, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Pretty form, highest power first: `5t^2 - 9t + 5`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if e == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.terms().count()))?;
        for (e, c) in self.terms() {
            match i64::try_from(c) {
                Ok(v) => map.serialize_entry(&e.to_string(), &v)?,
                Err(_) => map.serialize_entry(&e.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, serde_json::Value> = BTreeMap::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let e: i64 = k.parse().map_err(D::Error::custom)?;
            let c: BigInt = match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom("coefficient must be an integer"))?,
                serde_json::Value::String(s) => s.parse().map_err(D::Error::custom)?,
                _ => return Err(D::Error::custom("coefficient must be an integer")),
            };
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}
