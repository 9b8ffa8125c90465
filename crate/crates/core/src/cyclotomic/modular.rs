use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::CycNumber;
use super::poly::level_data;
use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `a` must be nonzero mod p.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduce `a ∈ Z` modulo p into [0, p).
pub fn bigint_mod(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// How to treat rationals whose denominator is divisible by p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedMode {
    /// Such values are sent to 0.
    Lenient,
    /// Such values are an error.
    Strict,
}

/// Image of a rational in F_p.
pub fn embed_rational(q: &BigRational, p: u64, mode: EmbedMode) -> Result<u64> {
    let d = bigint_mod(q.denom(), p);
    if d == 0 {
        return match mode {
            EmbedMode::Lenient => Ok(0),
            EmbedMode::Strict => Err(Error::DenominatorDivisibleByPrime { prime: p }),
        };
    }
    Ok(mul_mod(bigint_mod(q.numer(), p), inv_mod(d, p), p))
}

/// Per-prime data for harmonic sums at level N: the prime, the level, and 1/k mod p for 0 < k < p.
#[derive(Debug, Clone)]
pub struct PrimeContext {
    prime: u64,
    level: u32,
    inverses: Vec<u64>,
}

impl PrimeContext {
    /// Requires p prime, p ∤ N and p ≡ -1 mod N.
    pub fn new(prime: u64, level: u32) -> Result<Self> {
        if level == 0 || !is_prime(prime) || prime > u32::MAX as u64 {
            return Err(Error::PrimeNotInClass { prime, level });
        }
        let n = level as u64;
        if n > 1 && (prime.is_multiple_of(n) || !(prime + 1).is_multiple_of(n)) {
            return Err(Error::PrimeNotInClass { prime, level });
        }
        // Batch inversion: one exponentiation plus 3p multiplications.
        let len = prime as usize;
        let mut prefix = vec![1u64; len];
        for k in 1..len {
            prefix[k] = mul_mod(prefix[k - 1], k as u64, prime);
        }
        let mut inverses = vec![0u64; len];
        let mut run = inv_mod(prefix[len - 1], prime);
        for k in (1..len).rev() {
            inverses[k] = mul_mod(run, prefix[k - 1], prime);
            run = mul_mod(run, k as u64, prime);
        }
        Ok(PrimeContext { prime, level, inverses })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// 1/k mod p for 0 < k < p.
    pub fn inv(&self, k: u64) -> u64 {
        self.inverses[k as usize]
    }

    pub fn inverses(&self) -> &[u64] {
        &self.inverses
    }
}

/// Element of F_p[X]/(X^N - 1), coefficients of 1, X, ..., X^{N-1}.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModCycNumber {
    prime: u64,
    level: u32,
    coeffs: Vec<u64>,
}

impl ModCycNumber {
    pub fn zero(ctx: &PrimeContext) -> Self {
        ModCycNumber { prime: ctx.prime, level: ctx.level, coeffs: vec![0; ctx.level as usize] }
    }

    pub fn one(ctx: &PrimeContext) -> Self {
        Self::monomial(ctx, 0, 1)
    }

    /// c·X^k.
    pub fn monomial(ctx: &PrimeContext, k: i64, c: u64) -> Self {
        let mut z = Self::zero(ctx);
        let n = ctx.level as i64;
        z.coeffs[k.rem_euclid(n) as usize] = c % ctx.prime;
        z
    }

    /// From coefficients indexed mod N; extra entries wrap around.
    pub fn from_coeffs(ctx: &PrimeContext, coeffs: &[u64]) -> Self {
        let mut z = Self::zero(ctx);
        let n = ctx.level as usize;
        for (k, &c) in coeffs.iter().enumerate() {
            z.coeffs[k % n] = add_mod(z.coeffs[k % n], c % ctx.prime, ctx.prime);
        }
        z
    }

    pub(crate) fn from_raw(prime: u64, level: u32, coeffs: Vec<u64>) -> Self {
        debug_assert_eq!(coeffs.len(), level as usize);
        ModCycNumber { prime, level, coeffs }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, o: &Self) {
        assert!(self.prime == o.prime && self.level == o.level, "mixing modular rings");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let p = self.prime;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(&a, &b)| add_mod(a, b, p)).collect();
        self.with(coeffs)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let p = self.prime;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(&a, &b)| sub_mod(a, b, p)).collect();
        self.with(coeffs)
    }

    pub fn neg(&self) -> Self {
        let p = self.prime;
        let coeffs = self.coeffs.iter().map(|&a| sub_mod(0, a, p)).collect();
        self.with(coeffs)
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.prime;
        let c = c % p;
        let coeffs = self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect();
        self.with(coeffs)
    }

    /// Cyclic convolution.
    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.level as usize;
        let p = self.prime;
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                if b != 0 {
                    let k = (i + j) % n;
                    out[k] = add_mod(out[k], mul_mod(a, b, p), p);
                }
            }
        }
        self.with(out)
    }

    /// Multiplication by X^k, a cyclic shift.
    pub fn shift(&self, k: i64) -> Self {
        let n = self.level as usize;
        let k = k.rem_euclid(n as i64) as usize;
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[(i + k) % n] = a;
        }
        self.with(out)
    }

    /// X ↦ X^{-1}.
    pub fn conj(&self) -> Self {
        let n = self.level as usize;
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[(n - i) % n] = a;
        }
        self.with(out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = ModCycNumber::from_raw(self.prime, self.level, {
            let mut v = vec![0; self.level as usize];
            v[0] = 1 % self.prime;
            v
        });
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// Inverse in F_p[X]/(X^N - 1) when it exists.
    pub fn try_invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.prime;
        let n = self.level as usize;
        let mut modulus = vec![0u64; n + 1];
        modulus[0] = p - 1;
        modulus[n] = 1;
        let (g, s) = fp_poly::ext_gcd(&fp_poly::trim(self.coeffs.clone()), &modulus, p);
        if g.len() > 1 {
            let lead_inv = inv_mod(*g.last().unwrap(), p);
            let gcd = g.iter().map(|&c| mul_mod(c, lead_inv, p)).collect();
            return Err(Error::ZeroDivisor { prime: p, gcd });
        }
        let c = inv_mod(g[0], p);
        let mut out = vec![0u64; n];
        for (k, &v) in s.iter().enumerate() {
            out[k % n] = add_mod(out[k % n], mul_mod(v, c, p), p);
        }
        Ok(self.with(out))
    }

    /// Image in F_p[X]/(Φ_N(X)), coefficients of 1, ..., X^{φ(N)-1}.
    pub fn reduce_cyclotomic(&self) -> Vec<u64> {
        let data = level_data(self.level);
        let p = self.prime;
        let phi = data.phi;
        let modp: Vec<u64> = data.poly.iter().map(|c| bigint_mod(c, p)).collect();
        let mut c = self.coeffs.clone();
        for i in (phi..c.len()).rev() {
            let lead = c[i];
            if lead == 0 {
                continue;
            }
            c[i] = 0;
            for j in 0..phi {
                let k = i - phi + j;
                c[k] = sub_mod(c[k], mul_mod(lead, modp[j], p), p);
            }
        }
        c.truncate(phi);
        c
    }

    /// True when the image in F_p[X]/(Φ_N(X)) vanishes.
    pub fn is_zero_cyclotomic(&self) -> bool {
        self.reduce_cyclotomic().iter().all(|&c| c == 0)
    }

    /// Equality after projecting to F_p[X]/(Φ_N(X)).
    pub fn eq_cyclotomic(&self, o: &Self) -> bool {
        self.sub(o).is_zero_cyclotomic()
    }

    fn with(&self, coeffs: Vec<u64>) -> Self {
        ModCycNumber { prime: self.prime, level: self.level, coeffs }
    }
}

impl fmt::Debug for ModCycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModCycNumber[p={}, N={}]{:?}", self.prime, self.level, self.coeffs)
    }
}

impl fmt::Display for ModCycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*X")?,
                _ => write!(f, "{c}*X^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (mod {})", self.prime)
    }
}

/// Image of a rational as a constant of F_p[X]/(X^N - 1).
pub fn embed(q: &BigRational, ctx: &PrimeContext, mode: EmbedMode) -> Result<ModCycNumber> {
    Ok(ModCycNumber::monomial(ctx, 0, embed_rational(q, ctx.prime(), mode)?))
}

/// Coefficient-wise image of Σ a_j ξ^j as Σ (a_j mod p) X^j.
///
/// This is a ring map only after projecting to F_p[X]/(Φ_N(X)); in the full
/// ring X^N - 1 the relation Φ_N(ξ) = 0 does not hold.
pub fn embed_cyc(a: &CycNumber, ctx: &PrimeContext, mode: EmbedMode) -> Result<ModCycNumber> {
    if a.level() != ctx.level() {
        return Err(Error::LevelMismatch(a.level(), ctx.level()));
    }
    let p = ctx.prime();
    let mut coeffs = vec![0u64; ctx.level() as usize];
    for (j, c) in a.coeffs().iter().enumerate() {
        if !c.is_zero() {
            coeffs[j] = embed_rational(c, p, mode)?;
        }
    }
    Ok(ModCycNumber::from_raw(p, ctx.level(), coeffs))
}

/// Dense polynomials over F_p, lowest degree first, no trailing zeros (zero is `[]`).
pub(crate) mod fp_poly {
    use super::{inv_mod, mul_mod, sub_mod};

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (vec![], r);
        }
        let db = b.len() - 1;
        let li = inv_mod(b[db], p);
        let mut q = vec![0u64; r.len() - db];
        for i in (db..r.len()).rev() {
            let c = mul_mod(r[i], li, p);
            if c == 0 {
                continue;
            }
            q[i - db] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[i - db + j] = sub_mod(r[i - db + j], mul_mod(c, bj, p), p);
            }
        }
        (trim(q), trim(r))
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        trim(out)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
            .collect();
        trim(out)
    }

    /// Returns (g, s) with g = gcd(a, b) and s·a ≡ g mod b.
    pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], vec![]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        (r0, s0)
    }
}
