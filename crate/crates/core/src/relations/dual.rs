//! Checks a relation on finite values exactly and on symmetrized values modulo 2πi.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::families::RelationRecord;
use crate::cyclotomic::{euler_phi, CycNumber};
use crate::error::Result;
use crate::fcv::FcvEvaluator;
use crate::hopfalg::Product;
use crate::scv::{integer_relation, BigComplex, ScvEngine};
use crate::words::YWord;

/// Largest coefficient accepted in a detected integer relation.
pub const MAX_RELATION_HEIGHT: u64 = 1_000_000;

/// Spanning values (2πi)^k ξ^j ζ^S_⧢(b) for b in the weight-(w−1−k) quotient words.
pub struct ProjectionBasis {
    pub weight: u32,
    pub labels: Vec<(u32, YWord, u32)>,
    pub values: Vec<BigComplex>,
}

impl ProjectionBasis {
    pub fn new(engine: &ScvEngine, quotient: &BTreeMap<u32, Vec<YWord>>, weight: u32) -> Result<Self> {
        let level = engine.level();
        let roots = engine.constants().roots(level);
        let two_pi_i = engine.two_pi_i();
        let phi = euler_phi(level).max(1) as u32;
        let mut labels = Vec::new();
        let mut values = Vec::new();
        let mut power = BigComplex::one(engine.bits());
        for k in 0..weight {
            let lower = weight - 1 - k;
            let words = if lower == 0 { vec![YWord::empty()] } else { quotient.get(&lower).cloned().unwrap_or_default() };
            for b in words {
                let v = if b.is_empty() { BigComplex::one(engine.bits()) } else { engine.scv(&b, Product::Shuffle)? };
                let v = v.mul(&power);
                for j in 0..phi {
                    labels.push((k, b.clone(), j));
                    values.push(v.mul(&roots[j as usize]));
                }
            }
            power = power.mul(&two_pi_i);
        }
        Ok(ProjectionBasis { weight, labels, values })
    }
}

/// One correction term (2πi)^k · coeff · ζ^S_⧢(word).
#[derive(Clone, Debug, Serialize)]
pub struct Correction {
    pub power: u32,
    pub word: YWord,
    pub coeff: CycNumber,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualVerdict {
    pub fcv_verdict: bool,
    pub failing_primes: Vec<u64>,
    /// |Σ c ζ^S_⧢ / 2πi − projection| after an accepted relation, else |Σ c ζ^S_⧢ / 2πi|.
    pub scv_residual: f64,
    pub projected: bool,
    pub corrections: Vec<Correction>,
}

pub struct DualVerifier<'a> {
    pub fcv: &'a FcvEvaluator,
    pub scv: &'a ScvEngine,
    pub bases: BTreeMap<u32, ProjectionBasis>,
}

impl<'a> DualVerifier<'a> {
    pub fn new(fcv: &'a FcvEvaluator, scv: &'a ScvEngine, quotient: &BTreeMap<u32, Vec<YWord>>, max_weight: u32) -> Result<Self> {
        let mut bases = BTreeMap::new();
        for w in 1..=max_weight {
            bases.insert(w, ProjectionBasis::new(scv, quotient, w)?);
        }
        Ok(DualVerifier { fcv, scv, bases })
    }

    /// Residual below which a projection is accepted: the engine's value tolerance. Spurious
    /// relations of height ≤ 10^6 among n spanning values leave residuals near 10^{−3n}.
    fn accept_bound(&self) -> f64 {
        self.scv.tolerance()
    }

    pub fn verify(&self, r: &RelationRecord) -> Result<DualVerdict> {
        let report = self.fcv.verify(&r.combo)?;
        let fcv_verdict = r.combo.is_zero() || super::holds_in_a(&report);
        let total = self.scv.scv_lincomb(&r.combo, Product::Shuffle)?;
        let t = total.mul(&self.scv.two_pi_i().inv());
        let (residual, projected, corrections) = match self.bases.get(&r.weight) {
            Some(basis) if !r.combo.is_zero() => self.project(&t, basis),
            _ => (t.abs_f64(), false, Vec::new()),
        };
        Ok(DualVerdict { fcv_verdict, failing_primes: report.failing, scv_residual: residual, projected, corrections })
    }

    fn project(&self, t: &BigComplex, basis: &ProjectionBasis) -> (f64, bool, Vec<Correction>) {
        let plain = t.abs_f64();
        if plain <= self.accept_bound() {
            return (plain, true, Vec::new());
        }
        let mut values = vec![t.clone()];
        values.extend(basis.values.iter().cloned());
        let scale = self.scv.bits().saturating_sub(64);
        let Some(rel) = integer_relation(&values, scale) else {
            return (plain, false, Vec::new());
        };
        let height = rel.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
        if rel.residual > self.accept_bound() || height.to_u64().is_none_or(|h| h > MAX_RELATION_HEIGHT) {
            return (plain, false, Vec::new());
        }
        let level = self.scv.level();
        let m0 = rel.coeffs[0].clone();
        let mut grouped: BTreeMap<(u32, YWord), CycNumber> = BTreeMap::new();
        for ((k, w, j), m) in basis.labels.iter().zip(&rel.coeffs[1..]) {
            if m.is_zero() {
                continue;
            }
            let q = BigRational::new(-m.clone(), m0.clone());
            let e = grouped.entry((*k, w.clone())).or_insert_with(|| CycNumber::zero(level));
            *e += &CycNumber::root(level, *j as i64).scale(&q);
        }
        let corrections = grouped
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((power, word), coeff)| Correction { power: power + 1, word, coeff })
            .collect();
        (rel.residual, true, corrections)
    }
}
