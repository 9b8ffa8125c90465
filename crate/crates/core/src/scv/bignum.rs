//! Fixed-point complex numbers over big integers with a running absolute error bound.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::CycNumber;

/// Working precision in decimal digits, with the derived binary scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    pub digits: u32,
}

impl Precision {
    pub const GUARD_BITS: u32 = 32;

    pub fn digits(digits: u32) -> Self {
        Precision { digits }
    }

    /// ceil(digits·log2 10) + guard bits.
    pub fn bits(&self) -> u32 {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + Self::GUARD_BITS
    }

    /// 10^{-digits}.
    pub fn epsilon(&self) -> f64 {
        10f64.powi(-(self.digits as i32))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision { digits: 60 }
    }
}

/// (re + i·im) / 2^bits, within `err` of the true value.
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    re: BigInt,
    im: BigInt,
    bits: u32,
    err: f64,
}

fn ulp(bits: u32) -> f64 {
    2f64.powi(-(bits as i32))
}

fn fixed_to_f64(x: &BigInt, bits: u32) -> f64 {
    let len = x.bits();
    if len > 900 {
        let shift = len - 900;
        (x >> shift).to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32 - bits as i32)
    } else {
        x.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(bits as i32))
    }
}

/// Round-to-nearest of x / 2^s.
fn shr_round(x: BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x;
    }
    let half = BigInt::one() << (s - 1);
    (x + half) >> s
}

/// Round-to-nearest of a / b for b > 0.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (r << 1u32) >= *b {
        q + 1
    } else {
        q
    }
}

impl BigComplex {
    pub fn zero(bits: u32) -> Self {
        BigComplex { re: BigInt::zero(), im: BigInt::zero(), bits, err: 0.0 }
    }

    pub fn one(bits: u32) -> Self {
        BigComplex { re: BigInt::one() << bits, im: BigInt::zero(), bits, err: 0.0 }
    }

    pub fn i(bits: u32) -> Self {
        BigComplex { re: BigInt::zero(), im: BigInt::one() << bits, bits, err: 0.0 }
    }

    pub fn from_raw(re: BigInt, im: BigInt, bits: u32, err: f64) -> Self {
        BigComplex { re, im, bits, err }
    }

    pub fn from_integer(n: i64, bits: u32) -> Self {
        BigComplex { re: BigInt::from(n) << bits, im: BigInt::zero(), bits, err: 0.0 }
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        let re = div_round(&(q.numer() << bits), q.denom());
        let err = if (q.numer() << bits) % q.denom() == BigInt::zero() { 0.0 } else { ulp(bits) };
        BigComplex { re, im: BigInt::zero(), bits, err }
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> Self {
        let conv = |x: f64| -> BigInt {
            let r = BigRational::from_float(x).unwrap_or_else(BigRational::zero);
            div_round(&(r.numer() << bits), r.denom())
        };
        BigComplex { re: conv(re), im: conv(im), bits, err: ulp(bits) }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn raw_re(&self) -> &BigInt {
        &self.re
    }

    pub fn raw_im(&self) -> &BigInt {
        &self.im
    }

    pub fn with_err(mut self, err: f64) -> Self {
        self.err = err;
        self
    }

    pub fn add_err(mut self, err: f64) -> Self {
        self.err += err;
        self
    }

    pub fn re_f64(&self) -> f64 {
        fixed_to_f64(&self.re, self.bits)
    }

    pub fn im_f64(&self) -> f64 {
        fixed_to_f64(&self.im, self.bits)
    }

    pub fn abs_f64(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    /// Upper bound on |true value|.
    pub fn magnitude_bound(&self) -> f64 {
        self.re_f64().abs() + self.im_f64().abs() + self.err
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.err == 0.0
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.bits, o.bits, "mixing fixed-point scales");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        BigComplex { re: &self.re + &o.re, im: &self.im + &o.im, bits: self.bits, err: self.err + o.err }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        BigComplex { re: &self.re - &o.re, im: &self.im - &o.im, bits: self.bits, err: self.err + o.err }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: -&self.re, im: -&self.im, bits: self.bits, err: self.err }
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -&self.im, bits: self.bits, err: self.err }
    }

    pub fn mul_i(&self) -> Self {
        BigComplex { re: -&self.im, im: self.re.clone(), bits: self.bits, err: self.err }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let b = self.bits;
        let re = shr_round(&self.re * &o.re - &self.im * &o.im, b);
        let im = shr_round(&self.re * &o.im + &self.im * &o.re, b);
        let err = self.magnitude_bound() * o.err + o.magnitude_bound() * self.err + 2.0 * ulp(b);
        BigComplex { re, im, bits: b, err }
    }

    /// Product without error propagation or rounding bookkeeping, for inner loops whose
    /// error is bounded analytically by the caller.
    pub(crate) fn mul_raw(&self, o: &Self) -> Self {
        let b = self.bits;
        BigComplex {
            re: (&self.re * &o.re - &self.im * &o.im) >> b,
            im: (&self.re * &o.im + &self.im * &o.re) >> b,
            bits: b,
            err: 0.0,
        }
    }

    pub(crate) fn add_assign_raw(&mut self, o: &Self) {
        self.re += &o.re;
        self.im += &o.im;
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        let m = k.abs().to_f64().unwrap_or(f64::INFINITY);
        BigComplex { re: &self.re * k, im: &self.im * k, bits: self.bits, err: self.err * m }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        let n = self.scale_int(q.numer());
        let d = q.denom();
        let df = d.to_f64().unwrap_or(f64::INFINITY);
        let exact = d.is_one();
        BigComplex {
            re: if exact { n.re } else { div_round(&n.re, d) },
            im: if exact { n.im } else { div_round(&n.im, d) },
            bits: self.bits,
            err: n.err / df + if exact { 0.0 } else { ulp(self.bits) },
        }
    }

    /// Division by a positive integer (truncating toward -∞).
    pub(crate) fn div_u64_raw(&self, d: u64) -> Self {
        let d = BigInt::from(d);
        BigComplex { re: self.re.div_floor(&d), im: self.im.div_floor(&d), bits: self.bits, err: 0.0 }
    }

    /// 1/self, for values bounded away from zero.
    pub fn inv(&self) -> Self {
        let b = self.bits;
        let norm = &self.re * &self.re + &self.im * &self.im;
        let scale = BigInt::one() << (3 * b);
        let re = div_round(&(&self.re * &scale), &norm) >> b;
        let im = -(div_round(&(&self.im * &scale), &norm) >> b);
        let m = self.abs_f64();
        let err = if self.err == 0.0 { 2.0 * ulp(b) } else { 2.0 * self.err / (m * (m - self.err)).max(1e-300) };
        BigComplex { re, im, bits: b, err: err + 2.0 * ulp(b) }
    }

    /// Re-scale to another binary precision.
    pub fn rescale(&self, bits: u32) -> Self {
        let (re, im) = if bits >= self.bits {
            (&self.re << (bits - self.bits), &self.im << (bits - self.bits))
        } else {
            (shr_round(self.re.clone(), self.bits - bits), shr_round(self.im.clone(), self.bits - bits))
        };
        BigComplex { re, im, bits, err: self.err + if bits < self.bits { ulp(bits) } else { 0.0 } }
    }

    /// Decimal rendering of one fixed-point component with `digits` places.
    fn decimal(x: &BigInt, bits: u32, digits: u32) -> String {
        let ten = BigInt::from(10).pow(digits);
        let scaled = shr_round(x * &ten, bits);
        let neg = scaled.is_negative();
        let a = scaled.abs();
        let (int, frac) = a.div_rem(&ten);
        format!("{}{}.{:0>width$}", if neg { "-" } else { "" }, int, frac, width = digits as usize)
    }

    pub fn re_string(&self, digits: u32) -> String {
        Self::decimal(&self.re, self.bits, digits)
    }

    pub fn im_string(&self, digits: u32) -> String {
        Self::decimal(&self.im, self.bits, digits)
    }

    /// Distance bound |self - o| including both error radii.
    pub fn distance(&self, o: &Self) -> f64 {
        let d = self.sub(o);
        d.abs_f64() + d.err
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.20e} {:+.20e}i ± {:.1e})", self.re_f64(), self.im_f64(), self.err)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re_string(30), self.im_string(30))
    }
}

/// Fixed-point image of an arbitrary-precision float.
fn bigfloat_to_fixed(x: &BigFloat, bits: u32) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    let (words, _n, sign, exp, _inexact) = x.as_raw_parts().expect("finite value");
    let mut m = BigInt::zero();
    for w in words.iter().rev() {
        m = (m << 64u32) + BigInt::from(*w);
    }
    // value = m · 2^{exp - 64·len}
    let shift = exp as i64 - 64 * words.len() as i64 + bits as i64;
    let v = if shift >= 0 { m << (shift as u32) } else { shr_round(m, (-shift) as u32) };
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// π, log 2 and the N-th roots of unity at a fixed scale.
#[derive(Debug)]
pub struct Constants {
    pub bits: u32,
    pub pi: BigComplex,
    pub log2: BigComplex,
    roots: Mutex<HashMap<u32, Arc<Vec<BigComplex>>>>,
}

impl Constants {
    fn compute(bits: u32) -> Self {
        let p = bits as usize + 64;
        let rm = RoundingMode::ToEven;
        let mut cc = Consts::new().expect("constants cache");
        let pi = bigfloat_to_fixed(&cc.pi(p, rm), bits);
        let log2 = bigfloat_to_fixed(&cc.ln_2(p, rm), bits);
        let u = ulp(bits);
        Constants {
            bits,
            pi: BigComplex::from_raw(pi, BigInt::zero(), bits, u),
            log2: BigComplex::from_raw(log2, BigInt::zero(), bits, u),
            roots: Mutex::new(HashMap::new()),
        }
    }

    /// Shared constants at `bits`, computed once.
    pub fn get(bits: u32) -> Arc<Constants> {
        static C: OnceLock<Mutex<HashMap<u32, Arc<Constants>>>> = OnceLock::new();
        let m = C.get_or_init(Default::default);
        let mut g = m.lock().unwrap();
        g.entry(bits).or_insert_with(|| Arc::new(Constants::compute(bits))).clone()
    }

    /// ξ^k = exp(2πik/N) for k in 0..N.
    pub fn roots(&self, level: u32) -> Arc<Vec<BigComplex>> {
        let mut g = self.roots.lock().unwrap();
        g.entry(level)
            .or_insert_with(|| {
                let bits = self.bits;
                let p = bits as usize + 64;
                let rm = RoundingMode::ToEven;
                let mut cc = Consts::new().expect("constants cache");
                let two_pi = cc.pi(p, rm).mul(&BigFloat::from_word(2, 64), p, rm);
                let u = ulp(bits);
                Arc::new(
                    (0..level)
                        .map(|k| match (4 * k).checked_rem(level) {
                            // Exact values on the axes keep level 1, 2, 4 arithmetic exact.
                            Some(0) => {
                                let q = 4 * k / level;
                                let (re, im) = [(1, 0), (0, 1), (-1, 0), (0, -1)][q as usize];
                                BigComplex::from_raw(
                                    BigInt::from(re) << bits,
                                    BigInt::from(im) << bits,
                                    bits,
                                    0.0,
                                )
                            }
                            _ => {
                                let a = two_pi
                                    .mul(&BigFloat::from_word(k as u64, 64), p, rm)
                                    .div(&BigFloat::from_word(level as u64, 64), p, rm);
                                let re = bigfloat_to_fixed(&a.cos(p, rm, &mut cc), bits);
                                let im = bigfloat_to_fixed(&a.sin(p, rm, &mut cc), bits);
                                BigComplex::from_raw(re, im, bits, 2.0 * u)
                            }
                        })
                        .collect(),
                )
            })
            .clone()
    }

    /// Numeric value of an element of Q(ξ_N).
    pub fn cyc(&self, a: &CycNumber) -> BigComplex {
        let roots = self.roots(a.level());
        let mut acc = BigComplex::zero(self.bits);
        for (j, c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&roots[j].scale_rational(c));
            }
        }
        acc
    }

    /// 2πi.
    pub fn two_pi_i(&self) -> BigComplex {
        self.pi.scale_int(&BigInt::from(2)).mul_i()
    }
}
