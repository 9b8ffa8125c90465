//! Truncated level-N Drinfeld associator Φ and its η-twists.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BigComplex, ScvEngine};
use crate::error::{Error, Result};
use crate::hopfalg::{shuffle_words, Product};
use crate::words::{all_xwords, r_eta, to_x, to_y, XLetter, XWord, YWord};

pub const DEFAULT_ASSOCIATOR_WEIGHT: usize = 4;

/// Coefficients Φ[w] for all X-words of length ≤ `max_weight`.
#[derive(Clone, Debug)]
pub struct AssociatorTruncation {
    pub level: u32,
    pub max_weight: usize,
    pub digits: u32,
    coeffs: BTreeMap<XWord, BigComplex>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema: u32,
    #[serde(rename = "N")]
    level: u32,
    max_weight: usize,
    digits: u32,
    bits: u32,
    coefficients: Vec<CacheEntry>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    word: String,
    re: String,
    im: String,
    err: String,
}

impl AssociatorTruncation {
    /// Φ[u] = (-1)^depth ζ_⧢(u; 0) on A¹, Φ[v x_0^k] from Φ[· ⧢ x_0] = 0 otherwise.
    pub fn build(engine: &ScvEngine, max_weight: usize) -> Result<Self> {
        let level = engine.level();
        let convergent: Vec<XWord> = (0..=max_weight)
            .flat_map(|n| all_xwords(n, level))
            .filter(|w| !w.ends_in_zero())
            .collect();
        let values: Vec<(XWord, BigComplex)> = convergent
            .par_iter()
            .map(|x| {
                let y = to_y(x)?;
                let c0 = engine.reg_value(&y, Product::Shuffle)?.coeff(0);
                Ok((x.clone(), if y.depth() % 2 == 1 { c0.neg() } else { c0 }))
            })
            .collect::<Result<_>>()?;
        let mut coeffs: BTreeMap<XWord, BigComplex> = values.into_iter().collect();
        // Words ending in x_0, by increasing number of trailing zeros.
        let zero = XWord::new(vec![XLetter::Zero]);
        for trailing in 1..=max_weight {
            for n in trailing..=max_weight {
                for w in all_xwords(n, level) {
                    let k = w.letters().iter().rev().take_while(|l| **l == XLetter::Zero).count();
                    if k != trailing {
                        continue;
                    }
                    let head = w.prefix(n - 1);
                    let mut acc = BigComplex::zero(engine.bits());
                    for (u, c) in shuffle_words(&head, &zero).iter() {
                        if *u != w {
                            acc = acc.add(&coeffs[u].scale_int(&BigInt::from(*c)));
                        }
                    }
                    let v = acc.scale_rational(&num_rational::BigRational::new((-1).into(), (k as i64).into()));
                    coeffs.insert(w, v);
                }
            }
        }
        Ok(AssociatorTruncation { level, max_weight, digits: engine.precision().digits, coeffs })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&XWord, &BigComplex)> {
        self.coeffs.iter()
    }

    fn lookup(&self, w: &XWord) -> Result<&BigComplex> {
        self.coeffs.get(w).ok_or(Error::TruncationTooSmall { needed: w.len(), have: self.max_weight })
    }

    /// Φ[w].
    pub fn phi(&self, w: &XWord) -> Result<BigComplex> {
        self.lookup(w).cloned()
    }

    /// Φ_η[w] = Φ[r_η(w)], η = ξ^eta.
    pub fn phi_eta(&self, w: &XWord, eta: u32) -> Result<BigComplex> {
        self.phi(&r_eta(w, eta as i64, self.level))
    }

    /// Φ_η^{-1}[w] = (-1)^{|w|} Φ[r_η(w̃)].
    pub fn phi_eta_inv(&self, w: &XWord, eta: u32) -> Result<BigComplex> {
        let v = self.phi(&r_eta(&w.reversed(), eta as i64, self.level))?;
        Ok(if w.len() % 2 == 1 { v.neg() } else { v })
    }

    /// Largest |Φ[u ⧢ v] − Φ[u]Φ[v]| over nonempty u, v with |u| + |v| ≤ W.
    pub fn group_like_defect(&self) -> Result<(f64, XWord, XWord)> {
        let words: Vec<&XWord> = self.coeffs.keys().filter(|w| !w.is_empty()).collect();
        let pairs: Vec<(&XWord, &XWord)> = words
            .iter()
            .flat_map(|u| words.iter().map(move |v| (*u, *v)))
            .filter(|(u, v)| u <= v && u.len() + v.len() <= self.max_weight)
            .collect();
        let defects = pairs
            .par_iter()
            .map(|(u, v)| {
                let bits = self.coeffs[*u].bits();
                let mut acc = BigComplex::zero(bits);
                for (w, c) in shuffle_words(u, v).iter() {
                    acc = acc.add(&self.lookup(w)?.scale_int(&BigInt::from(*c)));
                }
                let d = acc.sub(&self.coeffs[*u].mul(&self.coeffs[*v])).abs_f64();
                Ok((d, (*u).clone(), (*v).clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(defects.into_iter().fold((0.0, XWord::empty(), XWord::empty()), |a, b| if b.0 > a.0 { b } else { a }))
    }

    /// Fails with the worst pair if the defect exceeds `tol`.
    pub fn check_group_like(&self, tol: f64) -> Result<f64> {
        let (d, u, v) = self.group_like_defect()?;
        if d > tol {
            return Err(Error::NotGroupLike { left: u.to_string(), right: v.to_string(), defect: d });
        }
        Ok(d)
    }

    /// Largest |(Φ_η Φ_η^{-1})[w]| over nonempty words.
    pub fn inverse_defect(&self, eta: u32) -> Result<f64> {
        let mut worst = 0.0f64;
        for w in self.coeffs.keys().filter(|w| !w.is_empty()) {
            let bits = self.coeffs[w].bits();
            let mut acc = BigComplex::zero(bits);
            for j in 0..=w.len() {
                acc = acc.add(&self.phi_eta(&w.prefix(j), eta)?.mul(&self.phi_eta_inv(&w.suffix(j), eta)?));
            }
            worst = worst.max(acc.abs_f64());
        }
        Ok(worst)
    }

    /// (-1)^d Σ_η η̄ (Φ_η^{-1} x_η Φ_η)[x_1 w]: the shuffle-side symmetrized value of the word w.
    pub fn scv_via_phi(&self, w: &YWord, engine: &ScvEngine) -> Result<BigComplex> {
        let needed = w.weight() as usize + 1;
        if needed > self.max_weight {
            return Err(Error::TruncationTooSmall { needed, have: self.max_weight });
        }
        let z = XWord::new(vec![XLetter::Root(0)]).concat(&to_x(w));
        let roots = engine.constants().roots(self.level);
        let mut acc = BigComplex::zero(engine.bits());
        for (i, l) in z.letters().iter().enumerate() {
            let XLetter::Root(eta) = *l else { continue };
            let left = self.phi_eta_inv(&z.prefix(i), eta)?;
            let right = self.phi_eta(&z.suffix(i + 1), eta)?;
            acc = acc.add(&left.mul(&right).mul(&roots[eta as usize].conj()));
        }
        Ok(if w.depth() % 2 == 1 { acc.neg() } else { acc })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let bits = self.coeffs.values().next().map(BigComplex::bits).unwrap_or(0);
        let file = CacheFile {
            schema: 1,
            level: self.level,
            max_weight: self.max_weight,
            digits: self.digits,
            bits,
            coefficients: self
                .coeffs
                .iter()
                .map(|(w, c)| CacheEntry {
                    word: w.to_string(),
                    re: c.raw_re().to_string(),
                    im: c.raw_im().to_string(),
                    err: format!("{:e}", c.err()),
                })
                .collect(),
        };
        let text = serde_json::to_string(&file).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(path, text)?;
        Ok(())
    }

    /// Loads a cache file, checking that it was built for (N, W, digits).
    pub fn load(path: &Path, level: u32, max_weight: usize, digits: u32) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: CacheFile = serde_json::from_str(&text).map_err(|e| Error::CacheMismatch(e.to_string()))?;
        if file.schema != 1 || file.level != level || file.max_weight < max_weight || file.digits != digits {
            return Err(Error::CacheMismatch(format!(
                "cache holds N={} W={} digits={}, wanted N={level} W={max_weight} digits={digits}",
                file.level, file.max_weight, file.digits
            )));
        }
        let parse = |s: &str| s.parse::<BigInt>().map_err(|e| Error::CacheMismatch(e.to_string()));
        let mut coeffs = BTreeMap::new();
        for e in &file.coefficients {
            let w = XWord::parse(&e.word, level)?;
            if w.len() <= max_weight {
                let err: f64 = e.err.parse().map_err(|_| Error::CacheMismatch(format!("bad error bound {}", e.err)))?;
                coeffs.insert(w, BigComplex::from_raw(parse(&e.re)?, parse(&e.im)?, file.bits, err));
            }
        }
        Ok(AssociatorTruncation { level, max_weight, digits, coeffs })
    }

    /// Loads from `path` when it matches, otherwise builds and writes it.
    pub fn load_or_build(path: &Path, engine: &ScvEngine, max_weight: usize) -> Result<Self> {
        match Self::load(path, engine.level(), max_weight, engine.precision().digits) {
            Ok(a) => Ok(a),
            Err(_) => {
                let a = Self::build(engine, max_weight)?;
                a.save(path)?;
                Ok(a)
            }
        }
    }
}
