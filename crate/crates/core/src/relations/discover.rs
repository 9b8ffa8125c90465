//! Relation search among finite values by lattice reduction over many primes.
//!
//! For each prime the unknown coefficients a_{k,j} of Σ_k (Σ_j a_{k,j} ξ^j) X_k must annihilate
//! the reduced components of X_k. The congruences are combined by CRT into φ(N) congruences
//! modulo the product of the primes, and short vectors of the solution lattice are read off.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::dual::MAX_RELATION_HEIGHT;
use super::families::{Provenance, RelationRecord};
use super::rank::{ColumnOrder, Echelon, ExactField};
use crate::cyclotomic::{euler_phi, is_prime, CycNumber};
use crate::error::Result;
use crate::fcv::FcvEvaluator;
use crate::hopfalg::LinComb;
use crate::scv::lll_reduce;
use crate::words::YWord;

/// Primes p ≡ −1 (mod N) in [313, 2500) other than 1019, disjoint from the default check primes.
pub fn discovery_primes(level: u32) -> Vec<u64> {
    let n = level as u64;
    (313..2500u64).filter(|&p| p != 1019 && is_prime(p) && (n <= 1 || (p + 1) % n == 0)).collect()
}

/// Independent relations among `words` whose values vanish at every prime in `ev`.
pub fn discover_relations(ev: &FcvEvaluator, words: &[YWord]) -> Result<Vec<RelationRecord>> {
    if words.is_empty() {
        return Ok(Vec::new());
    }
    let level = ev.level();
    let phi = euler_phi(level).max(1);
    let unknowns = words.len() * phi;
    let mut modulus = BigInt::one();
    let mut cols = vec![vec![BigInt::zero(); phi]; unknowns];
    let values: Vec<_> = words.iter().map(|w| ev.word(w)).collect();
    for (pi, &p) in ev.primes().iter().enumerate() {
        let pb = BigInt::from(p);
        let inv = (&modulus % &pb).extended_gcd(&pb).x.mod_floor(&pb);
        for (k, vals) in values.iter().enumerate() {
            for j in 0..phi {
                let r = vals[pi].shift(j as i64).reduce_cyclotomic();
                for (t, rt) in r.iter().enumerate().take(phi) {
                    let old = &cols[k * phi + j][t];
                    let m = ((BigInt::from(*rt) - old) * &inv).mod_floor(&pb);
                    cols[k * phi + j][t] = old + &modulus * m;
                }
            }
        }
        modulus *= &pb;
    }
    let dim = unknowns + phi;
    let mut basis = Vec::with_capacity(dim);
    for (i, c) in cols.iter().enumerate() {
        let mut row = vec![BigInt::zero(); dim];
        row[i] = BigInt::one();
        row[unknowns..].clone_from_slice(c);
        basis.push(row);
    }
    for t in 0..phi {
        let mut row = vec![BigInt::zero(); dim];
        row[unknowns + t] = modulus.clone();
        basis.push(row);
    }
    let order = ColumnOrder::new(words.to_vec());
    let mut ech = Echelon::new(ExactField);
    let mut out = Vec::new();
    for v in lll_reduce(basis) {
        if !v[unknowns..].iter().all(Zero::is_zero) || v[..unknowns].iter().all(Zero::is_zero) {
            continue;
        }
        if v[..unknowns].iter().any(|x| x.abs().to_u64().is_none_or(|h| h > MAX_RELATION_HEIGHT)) {
            continue;
        }
        let mut combo = LinComb::zero(level);
        for (k, w) in words.iter().enumerate() {
            let mut c = CycNumber::zero(level);
            for j in 0..phi {
                let a = &v[k * phi + j];
                if !a.is_zero() {
                    c += &CycNumber::root(level, j as i64).scale(&BigRational::from_integer(a.clone()));
                }
            }
            combo.add_term(w.clone(), &c);
        }
        if combo.is_zero() || !ech.insert(order.row(&ExactField, &combo)?) {
            continue;
        }
        let meta = format!("lattice search over {} primes", ev.primes().len());
        out.push(RelationRecord::new(level, Provenance::Imported, combo, meta)?);
    }
    Ok(out)
}
