//! Cyclotomic polynomials and the per-level tables derived from them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Integer polynomial, lowest degree first.
pub type IntPoly = Vec<BigInt>;

/// Tables shared by every element of Q(ξ_N).
#[derive(Debug)]
pub struct LevelData {
    pub level: u32,
    pub phi: usize,
    /// Monic Φ_N, lowest degree first, length `phi + 1`.
    pub poly: IntPoly,
    /// ξ^k in the power basis 1, ξ, ..., ξ^{φ-1} for k in 0..N.
    pub powers: Vec<Vec<BigRational>>,
}

fn divide_monic(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let mut rem = num.clone();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quo = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quo[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dd + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

/// Φ_n as an integer polynomial, obtained by dividing X^n - 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_polynomial(n: u32) -> IntPoly {
    assert!(n >= 1, "level must be positive");
    let mut p: IntPoly = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = divide_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

/// Reduce a rational polynomial modulo the monic integer polynomial `modulus`.
pub fn reduce_rational(mut c: Vec<BigRational>, modulus: &IntPoly) -> Vec<BigRational> {
    let deg = modulus.len() - 1;
    if c.len() > deg {
        for i in (deg..c.len()).rev() {
            if c[i].is_zero() {
                continue;
            }
            let lead = std::mem::replace(&mut c[i], BigRational::zero());
            for (j, mj) in modulus.iter().enumerate().take(deg) {
                if !mj.is_zero() {
                    c[i - deg + j] -= &lead * BigRational::from_integer(mj.clone());
                }
            }
        }
    }
    c.resize(deg, BigRational::zero());
    c
}

fn build(level: u32) -> LevelData {
    let poly = cyclotomic_polynomial(level);
    let phi = poly.len() - 1;
    let powers = (0..level as usize)
        .map(|k| {
            let mut c = vec![BigRational::zero(); k + 1];
            c[k] = BigRational::one();
            reduce_rational(c, &poly)
        })
        .collect();
    LevelData { level, phi, poly, powers }
}

/// Shared tables for level `level`, computed once.
pub fn level_data(level: u32) -> Arc<LevelData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<LevelData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("level cache poisoned");
    guard
        .entry(level)
        .or_insert_with(|| Arc::new(build(level)))
        .clone()
}

/// Euler's totient of `n`.
pub fn euler_phi(n: u32) -> usize {
    level_data(n).phi
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &IntPoly) -> Vec<i64> {
        p.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(8)), vec![1, 0, 0, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn totients() {
        let got: Vec<usize> = (1..=12).map(euler_phi).collect();
        assert_eq!(got, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }
}
