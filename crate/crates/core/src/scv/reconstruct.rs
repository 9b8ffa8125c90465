//! Integer relations (integral LLL) and rational reconstruction by continued fractions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::bignum::BigComplex;

/// Closest fraction p/q with q ≤ `max_den` among the continued-fraction convergents
/// and semiconvergents of x.
pub fn best_rational(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut y = x;
    let mut best: Option<(i128, i128)> = None;
    for _ in 0..64 {
        let a = y.floor();
        if a.abs() > 1e18 {
            break;
        }
        let a = a as i128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > max_den as i128 {
            // Largest admissible semiconvergent.
            let t = (max_den as i128 - q0) / q1.max(1);
            if t > 0 {
                let (ps, qs) = (t * p1 + p0, t * q1 + q0);
                let better = match best {
                    None => true,
                    Some((p, q)) => (x - ps as f64 / qs as f64).abs() < (x - p as f64 / q as f64).abs(),
                };
                if better {
                    best = Some((ps, qs));
                }
            }
            break;
        }
        best = Some((p2, q2));
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = y - a as f64;
        if frac.abs() < 1e-300 || (x - p2 as f64 / q2 as f64).abs() < f64::EPSILON * x.abs().max(1.0) {
            break;
        }
        y = 1.0 / frac;
    }
    best.map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

/// Integral LLL reduction (δ = 3/4) of linearly independent integer row vectors.
pub fn lll_reduce(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = b.len();
    if n < 2 {
        return b;
    }
    let dot = |x: &[BigInt], y: &[BigInt]| -> BigInt { x.iter().zip(y).map(|(a, c)| a * c).sum() };
    // 1-based d and λ; d[0] = 1.
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[0] = BigInt::from(1);
    d[1] = dot(&b[0], &b[0]);
    let mut k = 2usize;
    let mut k_max = 1usize;

    fn red(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
        let two_l: BigInt = &lam[k][l] * 2;
        if two_l.abs() > d[l] {
            // q = round(λ/d)
            let num: BigInt = &lam[k][l] * 2 + &d[l];
            let q = num.div_floor(&(&d[l] * 2));
            let bl = b[l - 1].clone();
            for (x, y) in b[k - 1].iter_mut().zip(&bl) {
                *x -= &q * y;
            }
            lam[k][l] = &lam[k][l] - &q * &d[l];
            for i in 1..l {
                let t = &q * &lam[l][i];
                lam[k][i] -= t;
            }
        }
    }

    while k <= n {
        if k > k_max {
            k_max = k;
            for j in 1..=k {
                let mut u = dot(&b[k - 1], &b[j - 1]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "dependent lattice vectors");
                    d[k] = u;
                }
            }
        }
        loop {
            red(&mut b, &mut lam, &d, k, k - 1);
            let lhs: BigInt = &d[k] * &d[k - 2] * 4;
            let rhs: BigInt = &d[k - 1] * &d[k - 1] * 3 - &lam[k][k - 1] * &lam[k][k - 1] * 4;
            if lhs < rhs {
                // SWAP(k)
                b.swap(k - 1, k - 2);
                for j in 1..k - 1 {
                    let t = lam[k][j].clone();
                    lam[k][j] = lam[k - 1][j].clone();
                    lam[k - 1][j] = t;
                }
                let l = lam[k][k - 1].clone();
                let bb = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
                for i in k + 1..=k_max {
                    let t = lam[i][k].clone();
                    lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
                    lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k];
                }
                d[k - 1] = bb;
                if k > 2 {
                    k -= 1;
                }
                continue;
            }
            for l in (1..k - 1).rev() {
                red(&mut b, &mut lam, &d, k, l);
            }
            k += 1;
            break;
        }
    }
    b
}

/// Result of an integer relation search m_0·x_0 + Σ m_i·x_i ≈ 0.
#[derive(Clone, Debug)]
pub struct IntegerRelation {
    pub coeffs: Vec<BigInt>,
    /// |Σ m_i x_i| / |m_0| evaluated at full precision.
    pub residual: f64,
}

/// Searches for a small integer relation among complex numbers whose first entry is the target.
/// Values are scaled by 2^`scale_bits` before rounding. Returns the reduced relation with
/// nonzero target coefficient and the smallest residual, if any.
pub fn integer_relation(values: &[BigComplex], scale_bits: u32) -> Option<IntegerRelation> {
    let n = values.len();
    if n == 0 {
        return None;
    }
    let bits = values[0].bits();
    let round = |x: &BigInt| -> BigInt {
        if scale_bits >= bits {
            x << (scale_bits - bits)
        } else {
            let s = bits - scale_bits;
            (x + (BigInt::from(1) << (s - 1))) >> s
        }
    };
    let rows: Vec<Vec<BigInt>> = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut row = vec![BigInt::zero(); n + 2];
            row[i] = BigInt::from(1);
            row[n] = round(v.raw_re());
            row[n + 1] = round(v.raw_im());
            row
        })
        .collect();
    let reduced = lll_reduce(rows);
    let mut best: Option<IntegerRelation> = None;
    for row in reduced {
        let m = &row[..n];
        if m[0].is_zero() {
            continue;
        }
        let mut acc = BigComplex::zero(bits);
        for (c, v) in m.iter().zip(values) {
            if !c.is_zero() {
                acc = acc.add(&v.scale_int(c));
            }
        }
        let residual = (acc.abs_f64() + acc.err()) / m[0].abs().to_f64().unwrap_or(f64::INFINITY);
        if best.as_ref().is_none_or(|b| residual < b.residual) {
            best = Some(IntegerRelation { coeffs: m.to_vec(), residual });
        }
    }
    best
}
