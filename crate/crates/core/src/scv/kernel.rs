//! Multiple polylogarithms at N-th roots of unity via Hölder convolution at 1/2.
//!
//! An admissible index (s⃗; e⃗) is written as an iterated integral
//! ζ(s⃗; ξ^e⃗) = (-1)^d G(0^{s1-1}, b1, ..., 0^{sd-1}, bd; 1), b_j = ξ^{-(e1+...+ej)},
//! and G(z1..zn; 1) = Σ_j (-1)^j G(1-z_j, ..., 1-z_1; 1/2) G(z_{j+1}, ..., z_n; 1/2).
//! Each factor is a nested series whose ratios are bounded by max |1/(2 z)| < 1.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::bignum::{BigComplex, Constants, Precision};
use crate::error::{Error, Result};
use crate::words::YWord;

/// Symbolic letter of an iterated integral.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GLetter {
    Zero,
    /// ξ^k; `Root(0)` is 1.
    Root(u32),
    /// 1 - ξ^k for k ≠ 0.
    OneMinusRoot(u32),
}

impl GLetter {
    fn one_minus(self) -> GLetter {
        match self {
            GLetter::Zero => GLetter::Root(0),
            GLetter::Root(0) => GLetter::Zero,
            GLetter::Root(k) => GLetter::OneMinusRoot(k),
            GLetter::OneMinusRoot(_) => unreachable!("only roots and zero occur in index words"),
        }
    }
}

/// Letters of the iterated integral for an index word.
pub fn index_letters(w: &YWord, level: u32) -> Vec<GLetter> {
    let n = level as i64;
    let mut cum = 0i64;
    let mut out = Vec::with_capacity(w.weight() as usize);
    for l in w.letters() {
        cum += l.e as i64;
        out.extend(std::iter::repeat_n(GLetter::Zero, l.s as usize - 1));
        out.push(GLetter::Root((-cum).rem_euclid(n) as u32));
    }
    out
}

/// Cached evaluator for one level and precision.
pub struct Kernel {
    level: u32,
    precision: Precision,
    bits: u32,
    consts: Arc<Constants>,
    g_cache: RwLock<HashMap<Vec<GLetter>, BigComplex>>,
    value_cache: RwLock<HashMap<YWord, BigComplex>>,
}

fn log_binom(n: u64, k: u64) -> f64 {
    (1..=k).map(|i| ((n + 1 - i) as f64 / i as f64).ln()).sum()
}

impl Kernel {
    pub fn new(level: u32, precision: Precision) -> Self {
        let bits = precision.bits();
        Kernel {
            level,
            precision,
            bits,
            consts: Constants::get(bits),
            g_cache: RwLock::new(HashMap::new()),
            value_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn constants(&self) -> &Arc<Constants> {
        &self.consts
    }

    fn letter_value(&self, l: GLetter) -> BigComplex {
        let roots = self.consts.roots(self.level);
        match l {
            GLetter::Zero => BigComplex::zero(self.bits),
            GLetter::Root(k) => roots[k as usize].clone(),
            GLetter::OneMinusRoot(k) => BigComplex::one(self.bits).sub(&roots[k as usize]),
        }
    }

    /// 1/(2 c) for a nonzero letter c.
    fn ratio(&self, l: GLetter) -> BigComplex {
        let roots = self.consts.roots(self.level);
        let half = |z: &BigComplex| {
            let b = z.bits();
            BigComplex::from_raw(z.raw_re() >> 1u32, z.raw_im() >> 1u32, b, z.err() / 2.0 + 2f64.powi(-(b as i32)))
        };
        match l {
            GLetter::Zero => unreachable!("zero letters are absorbed into weights"),
            GLetter::Root(k) => half(&roots[((self.level - k) % self.level) as usize]),
            GLetter::OneMinusRoot(_) => half(&self.letter_value(l).inv()),
        }
    }

    /// G(letters; 1/2); the last letter must be nonzero.
    pub fn g_half(&self, letters: &[GLetter]) -> Result<BigComplex> {
        if letters.is_empty() {
            return Ok(BigComplex::one(self.bits));
        }
        assert!(*letters.last().unwrap() != GLetter::Zero, "trailing zero letter");
        if let Some(v) = self.g_cache.read().unwrap().get(letters) {
            return Ok(v.clone());
        }
        let v = self.g_series(letters)?;
        self.g_cache.write().unwrap().entry(letters.to_vec()).or_insert_with(|| v.clone());
        Ok(v)
    }

    fn g_series(&self, letters: &[GLetter]) -> Result<BigComplex> {
        let bits = self.bits;
        let mut weights = Vec::new();
        let mut us = Vec::new();
        let mut zeros = 0u32;
        for &l in letters {
            if l == GLetter::Zero {
                zeros += 1;
            } else {
                weights.push(zeros + 1);
                us.push(self.ratio(l));
                zeros = 0;
            }
        }
        let d = us.len();
        let r = us.iter().map(|u| u.abs_f64() + u.err()).fold(0.0f64, f64::max);
        if r > 0.9 {
            return Err(Error::UnsupportedLevel { level: self.level, radius: r });
        }
        let ulp = 2f64.powi(-(bits as i32));
        let target = (ulp / 4.0).ln();
        // Σ_{n>K} C(n-1,d-1) r^n ≤ t_{K+1}/(1-ρ), ρ = r(K+1)/(K+2-d).
        let mut big_k = d as u64;
        loop {
            let n = big_k + 1;
            let rho = r * n as f64 / (n + 1 - d as u64) as f64;
            if rho < 1.0 {
                let log_t = log_binom(n - 1, d as u64 - 1) + n as f64 * r.ln();
                if log_t - (1.0 - rho).ln() < target {
                    break;
                }
            }
            big_k += 1;
        }
        let tail = ulp / 4.0;

        // P_d(n) = u_d^n / n^{m_d}; P_j(n) = R_j(n)/n^{m_j}; R_j(n+1) = u_j (R_j(n) + P_{j+1}(n)).
        let zero = BigComplex::zero(bits);
        let mut r_state = vec![zero.clone(); d];
        let mut pow_d = BigComplex::one(bits);
        let mut sum = zero.clone();
        let mut p = vec![zero.clone(); d];
        for n in 1..=big_k {
            pow_d = pow_d.mul_raw(&us[d - 1]);
            p[d - 1] = divide_by_power(&pow_d, n, weights[d - 1]);
            for j in (0..d - 1).rev() {
                p[j] = divide_by_power(&r_state[j], n, weights[j]);
            }
            sum.add_assign_raw(&p[0]);
            for j in 0..d - 1 {
                let mut t = r_state[j].clone();
                t.add_assign_raw(&p[j + 1]);
                r_state[j] = t.mul_raw(&us[j]);
            }
        }
        let u_err = us.iter().map(BigComplex::err).fold(0.0f64, f64::max);
        let amp = (1.0 - r).powi(-(d as i32));
        let rounding = big_k as f64 * d as f64 * (8.0 * ulp + 4.0 * u_err) * amp * amp;
        let out = if d % 2 == 1 { sum.neg() } else { sum };
        Ok(out.with_err(tail + rounding))
    }

    /// ζ(s⃗; ξ^e⃗) for an admissible index word.
    pub fn admissible_value(&self, w: &YWord) -> Result<BigComplex> {
        if w.is_empty() {
            return Ok(BigComplex::one(self.bits));
        }
        if !w.is_admissible() {
            return Err(Error::InvalidArgument(format!("{w} is not admissible")));
        }
        if let Some(v) = self.value_cache.read().unwrap().get(w) {
            return Ok(v.clone());
        }
        let z = index_letters(w, self.level);
        let n = z.len();
        let mut acc = BigComplex::zero(self.bits);
        for j in 0..=n {
            let left: Vec<GLetter> = z[..j].iter().rev().map(|l| l.one_minus()).collect();
            let a = self.g_half(&left)?;
            let b = self.g_half(&z[j..])?;
            let t = a.mul(&b);
            acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        if w.depth() % 2 == 1 {
            acc = acc.neg();
        }
        self.value_cache.write().unwrap().entry(w.clone()).or_insert_with(|| acc.clone());
        Ok(acc)
    }

    /// ζ(n) for n ≥ 2.
    pub fn zeta(&self, n: u32) -> Result<BigComplex> {
        self.admissible_value(&YWord::letter(n, 0))
    }

    pub fn two_pi_i(&self) -> BigComplex {
        self.consts.two_pi_i()
    }

    pub fn g_value(&self, l: GLetter) -> BigComplex {
        self.letter_value(l)
    }
}

fn divide_by_power(x: &BigComplex, n: u64, m: u32) -> BigComplex {
    let mut out = x.clone();
    let mut left = m;
    while left > 0 {
        let mut d: u128 = 1;
        let mut used = 0;
        while used < left && d * n as u128 <= u64::MAX as u128 {
            d *= n as u128;
            used += 1;
        }
        out = out.div_u64_raw(d as u64);
        left -= used;
    }
    out
}
