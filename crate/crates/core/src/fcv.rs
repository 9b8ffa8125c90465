//! Finite colored multiple zeta values: H_{p-1}(w) in F_p[X]/(X^N - 1) for p ≡ -1 mod N.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::{
    add_mod, embed_cyc, inv_mod, is_prime, mul_mod, pow_mod, sub_mod, EmbedMode, ModCycNumber,
    PrimeContext,
};
use crate::error::{Error, Result};
use crate::hopfalg::LinComb;
use crate::words::YWord;

/// Primes in [lo, hi] congruent to -1 mod N, ascending.
pub fn prime_range(level: u32, lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let mut sieve = vec![true; hi as usize + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2usize;
    while i * i <= hi as usize {
        if sieve[i] {
            let mut j = i * i;
            while j <= hi as usize {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    let n = level as u64;
    (lo.max(2)..=hi)
        .filter(|&p| sieve[p as usize] && (n == 1 || (p + 1) % n == 0))
        .collect()
}

/// All primes p < 312 in the class, plus 1019 when it belongs to it.
pub fn default_primes(level: u32) -> Vec<u64> {
    let mut ps = prime_range(level, 2, 311);
    if level == 1 || 1020 % level as u64 == 0 {
        ps.push(1019);
    }
    ps
}

fn context(prime: u64, level: u32) -> Result<Arc<PrimeContext>> {
    type Cache = RwLock<HashMap<(u64, u32), Arc<PrimeContext>>>;
    static C: OnceLock<Cache> = OnceLock::new();
    let cache = C.get_or_init(Default::default);
    if let Some(c) = cache.read().unwrap().get(&(prime, level)) {
        return Ok(c.clone());
    }
    let ctx = Arc::new(PrimeContext::new(prime, level)?);
    cache.write().unwrap().entry((prime, level)).or_insert_with(|| ctx.clone());
    Ok(ctx)
}

/// Partial sums of every suffix of a word.
///
/// Row `j` (0 ≤ j ≤ d) holds H_m of the suffix of length `j` for m = 0..=k, each as N
/// coefficients; row 0 is the empty word (constant 1).
#[derive(Debug, Clone)]
pub struct HarmonicTable {
    level: u32,
    prime: u64,
    bound: u64,
    rows: Vec<Vec<u64>>,
}

impl HarmonicTable {
    pub fn build(w: &YWord, bound: u64, ctx: &PrimeContext) -> Result<Self> {
        let p = ctx.prime();
        if bound >= p {
            return Err(Error::BoundTooLarge { bound, prime: p });
        }
        let n = ctx.level() as usize;
        let k = bound as usize;
        let mut rows = Vec::with_capacity(w.depth() + 1);
        let mut prev = vec![0u64; (k + 1) * n];
        for m in 0..=k {
            prev[m * n] = 1;
        }
        rows.push(prev);
        for l in w.letters().iter().rev() {
            let prev = rows.last().unwrap();
            let mut cur = vec![0u64; (k + 1) * n];
            let e = l.e as usize % n;
            for m in 1..=k {
                let c = pow_mod(ctx.inv(m as u64), l.s as u64, p);
                let shift = (e * m) % n;
                let (before, after) = cur.split_at_mut(m * n);
                let acc = &mut after[..n];
                acc.copy_from_slice(&before[(m - 1) * n..]);
                let src = &prev[(m - 1) * n..m * n];
                for (i, &v) in src.iter().enumerate() {
                    if v != 0 {
                        let t = (i + shift) % n;
                        acc[t] = add_mod(acc[t], mul_mod(c, v, p), p);
                    }
                }
            }
            rows.push(cur);
        }
        Ok(HarmonicTable { level: ctx.level(), prime: p, bound, rows })
    }

    pub fn depth(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// H_m of the suffix of length `j`.
    pub fn get(&self, j: usize, m: u64) -> ModCycNumber {
        let n = self.level as usize;
        let m = m as usize;
        ModCycNumber::from_raw(self.prime, self.level, self.rows[j][m * n..(m + 1) * n].to_vec())
    }

    pub fn value(&self) -> ModCycNumber {
        self.get(self.depth(), self.bound)
    }
}

/// Σ_{k ≥ k1 > ... > kd > 0} Π X^{e_j k_j} / k_j^{s_j} in F_p[X]/(X^N - 1).
pub fn harmonic_sum(w: &YWord, k: u64, ctx: &PrimeContext) -> Result<ModCycNumber> {
    Ok(HarmonicTable::build(w, k, ctx)?.value())
}

/// Components of a finite value at a list of primes.
#[derive(Debug, Clone, PartialEq)]
pub struct FcvValue {
    pub level: u32,
    pub word: YWord,
    pub components: BTreeMap<u64, ModCycNumber>,
    /// Primes p ≤ weight: evaluated, but identified with 0 in A(N).
    pub below_threshold: Vec<u64>,
}

#[derive(Serialize)]
struct FcvRecord<'a> {
    schema: u32,
    word: String,
    letters: &'a YWord,
    #[serde(rename = "N")]
    level: u32,
    primes: Vec<u64>,
    components: Vec<&'a [u64]>,
    reduced: Vec<Vec<u64>>,
    below_threshold: &'a [u64],
}

impl FcvValue {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(FcvRecord {
            schema: 1,
            word: self.word.to_string(),
            letters: &self.word,
            level: self.level,
            primes: self.components.keys().copied().collect(),
            components: self.components.values().map(ModCycNumber::coeffs).collect(),
            reduced: self.components.values().map(ModCycNumber::reduce_cyclotomic).collect(),
            below_threshold: &self.below_threshold,
        })
        .expect("serializable")
    }

    /// True when every component above the threshold vanishes modulo Φ_N.
    pub fn is_zero(&self) -> bool {
        self.components
            .iter()
            .filter(|(p, _)| !self.below_threshold.contains(p))
            .all(|(_, v)| v.is_zero_cyclotomic())
    }
}

fn check_primes(level: u32, primes: &[u64]) -> Result<()> {
    for &p in primes {
        let n = level as u64;
        if !is_prime(p) || (n > 1 && (p + 1) % n != 0) {
            return Err(Error::PrimeNotInClass { prime: p, level });
        }
    }
    Ok(())
}

/// ζ_{A(N)}(w) at each prime, with k = p - 1.
pub fn fcv(w: &YWord, level: u32, primes: &[u64]) -> Result<FcvValue> {
    check_primes(level, primes)?;
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let values: Vec<Result<(u64, ModCycNumber)>> = sorted
        .par_iter()
        .map(|&p| {
            let ctx = context(p, level)?;
            Ok((p, harmonic_sum(w, p - 1, &ctx)?))
        })
        .collect();
    let mut components = BTreeMap::new();
    for v in values {
        let (p, z) = v?;
        components.insert(p, z);
    }
    let weight = w.weight() as u64;
    Ok(FcvValue {
        level,
        word: w.clone(),
        below_threshold: sorted.iter().copied().filter(|&p| p <= weight).collect(),
        components,
    })
}

/// Evaluates many words at a fixed prime set, caching per word.
pub struct FcvEvaluator {
    level: u32,
    primes: Vec<u64>,
    contexts: Vec<Arc<PrimeContext>>,
    cache: RwLock<HashMap<YWord, Arc<Vec<ModCycNumber>>>>,
}

/// Value of a linear combination at each prime.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinationValue {
    pub level: u32,
    pub weight: u32,
    pub components: BTreeMap<u64, ModCycNumber>,
    pub below_threshold: Vec<u64>,
    /// Primes dividing a coefficient denominator (lenient mode only).
    pub non_integral: Vec<u64>,
}

/// Outcome of checking a relation prime by prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    #[serde(rename = "N")]
    pub level: u32,
    pub weight: u32,
    pub checked: Vec<u64>,
    pub failing: Vec<u64>,
    pub below_threshold: Vec<u64>,
    pub non_integral: Vec<u64>,
}

impl VerifyReport {
    pub fn holds(&self) -> bool {
        self.failing.is_empty() && !self.checked.is_empty()
    }
}

impl FcvEvaluator {
    pub fn new(level: u32, primes: &[u64]) -> Result<Self> {
        check_primes(level, primes)?;
        let mut ps = primes.to_vec();
        ps.sort_unstable();
        ps.dedup();
        let contexts = ps.iter().map(|&p| context(p, level)).collect::<Result<Vec<_>>>()?;
        Ok(FcvEvaluator { level, primes: ps, contexts, cache: RwLock::new(HashMap::new()) })
    }

    pub fn with_default_primes(level: u32) -> Result<Self> {
        Self::new(level, &default_primes(level))
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Components aligned with [`Self::primes`].
    pub fn word(&self, w: &YWord) -> Arc<Vec<ModCycNumber>> {
        if let Some(v) = self.cache.read().unwrap().get(w) {
            return v.clone();
        }
        let v: Vec<ModCycNumber> = self
            .contexts
            .par_iter()
            .map(|ctx| harmonic_sum(w, ctx.prime() - 1, ctx).expect("bound below prime"))
            .collect();
        let v = Arc::new(v);
        self.cache.write().unwrap().entry(w.clone()).or_insert_with(|| v.clone());
        v
    }

    pub fn fcv(&self, w: &YWord) -> FcvValue {
        let vals = self.word(w);
        let weight = w.weight() as u64;
        FcvValue {
            level: self.level,
            word: w.clone(),
            components: self.primes.iter().copied().zip(vals.iter().cloned()).collect(),
            below_threshold: self.primes.iter().copied().filter(|&p| p <= weight).collect(),
        }
    }

    /// Q(ξ_N)-linear extension, coefficients embedded coefficient-wise.
    pub fn combination(&self, l: &LinComb<YWord>, mode: EmbedMode) -> Result<CombinationValue> {
        if l.level() != self.level {
            return Err(Error::LevelMismatch(l.level(), self.level));
        }
        let weight = l.words().map(YWord::weight).max().unwrap_or(0);
        let words: Vec<&YWord> = l.words().collect();
        let values: Vec<Arc<Vec<ModCycNumber>>> = words.par_iter().map(|w| self.word(w)).collect();
        let mut components = BTreeMap::new();
        let mut non_integral = Vec::new();
        for (i, ctx) in self.contexts.iter().enumerate() {
            let p = ctx.prime();
            let below = p <= weight as u64;
            let mut acc = ModCycNumber::zero(ctx);
            let mut flagged = false;
            for ((_, c), v) in l.iter().zip(&values) {
                let img = match embed_cyc(c, ctx, EmbedMode::Strict) {
                    Ok(z) => z,
                    Err(Error::DenominatorDivisibleByPrime { .. }) if below || mode == EmbedMode::Lenient => {
                        flagged = true;
                        embed_cyc(c, ctx, EmbedMode::Lenient)?
                    }
                    Err(e) => return Err(e),
                };
                acc = acc.add(&img.mul(&v[i]));
            }
            if flagged && !below {
                non_integral.push(p);
            }
            components.insert(p, acc);
        }
        Ok(CombinationValue {
            level: self.level,
            weight,
            components,
            below_threshold: self.primes.iter().copied().filter(|&p| p <= weight as u64).collect(),
            non_integral,
        })
    }

    /// Checks that a combination vanishes in F_p[X]/(Φ_N(X)) at every prime above its weight.
    ///
    /// Primes at which some coefficient is not p-integral are excluded and listed.
    pub fn verify(&self, l: &LinComb<YWord>) -> Result<VerifyReport> {
        let v = self.combination(l, EmbedMode::Lenient)?;
        let mut checked = Vec::new();
        let mut failing = Vec::new();
        for (p, z) in &v.components {
            if v.below_threshold.contains(p) || v.non_integral.contains(p) {
                continue;
            }
            checked.push(*p);
            if !z.is_zero_cyclotomic() {
                failing.push(*p);
            }
        }
        Ok(VerifyReport {
            level: self.level,
            weight: v.weight,
            checked,
            failing,
            below_threshold: v.below_threshold,
            non_integral: v.non_integral,
        })
    }
}

/// Q(ξ_N)-linear extension of [`fcv`] at the given primes.
pub fn fcv_of_lincomb(l: &LinComb<YWord>, primes: &[u64], mode: EmbedMode) -> Result<CombinationValue> {
    FcvEvaluator::new(l.level(), primes)?.combination(l, mode)
}

pub fn verify_fcv_relation(l: &LinComb<YWord>, primes: &[u64]) -> Result<VerifyReport> {
    FcvEvaluator::new(l.level(), primes)?.verify(l)
}

/// (2^{p-1} - 1)/p mod p.
pub fn fermat_quotient(p: u64) -> Result<u64> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("fermat quotient needs an odd prime, got {p}")));
    }
    let p2 = p as u128 * p as u128;
    let mut acc: u128 = 1;
    let mut b: u128 = 2;
    let mut e = p - 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p2;
        }
        b = b * b % p2;
        e >>= 1;
    }
    Ok((((acc + p2 - 1) % p2) / p as u128) as u64)
}

/// B_0, ..., B_m mod p from Σ_{j ≤ m} C(m+1, j) B_j = 0; needs m ≤ p - 3.
pub fn bernoulli_table_mod_p(m: u64, p: u64) -> Result<Vec<u64>> {
    if !(is_prime(p) && p >= 3 && m + 3 <= p) {
        return Err(Error::InvalidArgument(format!("bernoulli index {m} out of range for p = {p}")));
    }
    let len = m as usize + 2;
    let mut fact = vec![1u64; len + 1];
    for i in 1..=len {
        fact[i] = mul_mod(fact[i - 1], i as u64, p);
    }
    let inv_fact: Vec<u64> = fact.iter().map(|&f| inv_mod(f, p)).collect();
    let binom = |n: usize, k: usize| mul_mod(fact[n], mul_mod(inv_fact[k], inv_fact[n - k], p), p);
    let mut b = vec![0u64; m as usize + 1];
    b[0] = 1;
    for k in 1..=m as usize {
        let mut s = 0u64;
        for (j, &bj) in b.iter().enumerate().take(k) {
            s = add_mod(s, mul_mod(binom(k + 1, j), bj, p), p);
        }
        b[k] = mul_mod(sub_mod(0, s, p), inv_mod((k + 1) as u64, p), p);
    }
    Ok(b)
}

pub fn bernoulli_mod_p(m: u64, p: u64) -> Result<u64> {
    Ok(*bernoulli_table_mod_p(m, p)?.last().unwrap())
}
