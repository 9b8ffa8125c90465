use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{level_data, reduce_rational, LevelData};
use crate::error::{Error, Result};

/// Element of Q(ξ_N), stored in the power basis 1, ξ, ..., ξ^{φ(N)-1}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    level: u32,
    coeffs: Vec<BigRational>,
}

impl CycNumber {
    fn data(&self) -> Arc<LevelData> {
        level_data(self.level)
    }

    pub fn zero(level: u32) -> Self {
        let phi = level_data(level).phi;
        CycNumber { level, coeffs: vec![BigRational::zero(); phi] }
    }

    pub fn one(level: u32) -> Self {
        Self::from_rational(level, BigRational::one())
    }

    pub fn from_rational(level: u32, q: BigRational) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[0] = q;
        z
    }

    pub fn from_integer(level: u32, n: i64) -> Self {
        Self::from_rational(level, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_fraction(level: u32, num: i64, den: i64) -> Self {
        Self::from_rational(level, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// ξ^k for any integer k.
    pub fn root(level: u32, k: i64) -> Self {
        let data = level_data(level);
        let idx = k.rem_euclid(level as i64) as usize;
        CycNumber { level, coeffs: data.powers[idx].clone() }
    }

    /// Σ c_j ξ^j for an arbitrary-length coefficient list; reduced modulo Φ_N.
    pub fn from_power_coeffs(level: u32, coeffs: Vec<BigRational>) -> Self {
        let data = level_data(level);
        CycNumber { level, coeffs: reduce_rational(coeffs, &data.poly) }
    }

    /// Σ c_k ξ^k with integer coefficients indexed by k mod N.
    pub fn from_root_coeffs(level: u32, coeffs: &[i64]) -> Self {
        let mut z = Self::zero(level);
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                z += &Self::root(level, k as i64).scale(&BigRational::from_integer(c.into()));
            }
        }
        z
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if this element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycNumber { level: self.level, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Complex conjugation, ξ ↦ ξ^{-1}.
    pub fn conj(&self) -> Self {
        let data = self.data();
        let n = self.level as usize;
        let mut out = vec![BigRational::zero(); data.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = &data.powers[(n - j % n) % n];
            for (o, v) in out.iter_mut().zip(img) {
                if !v.is_zero() {
                    *o += c * v;
                }
            }
        }
        CycNumber { level: self.level, coeffs: out }
    }

    /// Galois conjugate ξ ↦ ξ^a for a coprime to N.
    pub fn galois(&self, a: i64) -> Self {
        let mut out = Self::zero(self.level);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out += &Self::root(self.level, a * j as i64).scale(c);
            }
        }
        out
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let data = self.data();
        let phi = data.phi;
        // Columns are self·ξ^j; solve M x = e_0.
        let mut cols = Vec::with_capacity(phi);
        let mut cur = self.clone();
        let xi = Self::root(self.level, 1);
        for _ in 0..phi {
            cols.push(cur.coeffs.clone());
            cur = &cur * &xi;
        }
        let mut m: Vec<Vec<BigRational>> = (0..phi)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..phi).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for c in 0..phi {
            let piv = (c..phi).find(|&r| !m[r][c].is_zero()).ok_or(Error::DivisionByZero)?;
            m.swap(c, piv);
            let inv = m[c][c].recip();
            for v in m[c].iter_mut() {
                *v *= &inv;
            }
            for r in 0..phi {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in c..=phi {
                        let t = &f * &m[c][k];
                        m[r][k] -= t;
                    }
                }
            }
        }
        Ok(CycNumber { level: self.level, coeffs: m.into_iter().map(|r| r[phi].clone()).collect() })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.level);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Approximate complex value with ξ = exp(2πi/N).
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let n = self.level as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let a = 2.0 * std::f64::consts::PI * j as f64 / n;
            re += v * a.cos();
            im += v * a.sin();
        }
        (re, im)
    }

    /// Largest absolute numerator or denominator among the coefficients.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .flat_map(|c| [c.numer().abs(), c.denom().clone()])
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.level, other.level, "mixing cyclotomic levels");
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match j {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if j == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{j}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber[N={}]({})", self.level, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    level: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycRepr { level: self.level, coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = CycRepr::deserialize(d)?;
        if r.level == 0 {
            return Err(D::Error::custom("level must be positive"));
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CycNumber::from_power_coeffs(r.level, coeffs))
    }
}

/// Parse `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = |m: &str| Error::Parse { token: s.to_string(), message: m.to_string() };
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

impl Add<&CycNumber> for &CycNumber {
    type Output = CycNumber;
    fn add(self, o: &CycNumber) -> CycNumber {
        self.check(o);
        CycNumber {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&CycNumber> for &CycNumber {
    type Output = CycNumber;
    fn sub(self, o: &CycNumber) -> CycNumber {
        self.check(o);
        CycNumber {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&CycNumber> for &CycNumber {
    type Output = CycNumber;
    fn mul(self, o: &CycNumber) -> CycNumber {
        self.check(o);
        let phi = self.coeffs.len();
        if phi == 1 {
            return CycNumber { level: self.level, coeffs: vec![&self.coeffs[0] * &o.coeffs[0]] };
        }
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycNumber { level: self.level, coeffs: reduce_rational(prod, &self.data().poly) }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, o: CycNumber) -> CycNumber {
                (&self).$m(&o)
            }
        }
        impl $tr<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, o: &CycNumber) -> CycNumber {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, o: &CycNumber) {
        self.check(o);
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&CycNumber> for CycNumber {
    fn sub_assign(&mut self, o: &CycNumber) {
        self.check(o);
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}
