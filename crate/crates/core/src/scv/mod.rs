//! High-precision regularized and symmetrized colored multiple zeta values.

mod associator;
mod bignum;
mod kernel;
mod reconstruct;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

pub use associator::{AssociatorTruncation, DEFAULT_ASSOCIATOR_WEIGHT};
pub use bignum::{BigComplex, Constants, Precision};
pub use kernel::{index_letters, GLetter, Kernel};
pub use reconstruct::{best_rational, integer_relation, lll_reduce, IntegerRelation};

use crate::cyclotomic::{euler_phi, CycNumber};
use crate::error::{Error, Result};
use crate::hopfalg::{reg_decompose, symmetrize_word, LinComb, Product};
use crate::words::{p_map, q_map, YWord};

/// Polynomial in T with monomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RegPoly {
    pub coeffs: Vec<BigComplex>,
}

impl RegPoly {
    pub fn constant(c: BigComplex) -> Self {
        RegPoly { coeffs: vec![c] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn bits(&self) -> u32 {
        self.coeffs[0].bits()
    }

    pub fn coeff(&self, j: usize) -> BigComplex {
        self.coeffs.get(j).cloned().unwrap_or_else(|| BigComplex::zero(self.bits()))
    }

    pub fn constant_term(&self) -> &BigComplex {
        &self.coeffs[0]
    }

    pub fn add(&self, o: &RegPoly) -> RegPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RegPoly { coeffs: (0..n).map(|j| self.coeff(j).add(&o.coeff(j))).collect() }
    }

    pub fn sub(&self, o: &RegPoly) -> RegPoly {
        self.add(&o.scale(&BigComplex::from_integer(-1, self.bits())))
    }

    pub fn mul(&self, o: &RegPoly) -> RegPoly {
        let bits = self.bits();
        let mut out = vec![BigComplex::zero(bits); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        RegPoly { coeffs: out }
    }

    pub fn scale(&self, c: &BigComplex) -> RegPoly {
        RegPoly { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    /// Largest |coefficient| of T^j over j ≥ 1, as a lower bound net of error radii.
    pub fn max_positive_degree(&self) -> (usize, f64) {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| (j, (c.abs_f64() - c.err()).max(0.0)))
            .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc })
    }

    /// Drops trailing coefficients that are zero within `tol`.
    pub fn trimmed(mut self, tol: f64) -> RegPoly {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|c| c.abs_f64() <= tol) {
            self.coeffs.pop();
        }
        self
    }
}

/// (scv(w,⧢) − scv(w,∗))/ζ(2) with a rational reading of its coordinates.
#[derive(Clone, Debug)]
pub struct ModZ2Residual {
    pub value: BigComplex,
    /// Real coordinates over 1, ξ (or 1 alone for N ≤ 2).
    pub coords: Vec<f64>,
    pub reconstruction: Option<CycNumber>,
    pub difference_is_zero: bool,
}

/// JSON record for one numeric value.
#[derive(Clone, Debug, Serialize)]
pub struct ValueRecord {
    pub word: String,
    pub version: String,
    pub value: ComplexRecord,
    pub err_bound: f64,
    pub precision: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexRecord {
    pub re: String,
    pub im: String,
}

type PolyCache = RwLock<HashMap<(Product, YWord), Arc<RegPoly>>>;

/// Evaluator of regularized and symmetrized values at one level and precision.
pub struct ScvEngine {
    kernel: Kernel,
    tolerance: f64,
    reg_cache: PolyCache,
    scv_cache: RwLock<HashMap<(Product, YWord), BigComplex>>,
}

impl ScvEngine {
    pub fn new(level: u32, precision: Precision) -> Self {
        ScvEngine {
            kernel: Kernel::new(level, precision),
            tolerance: 10f64.powi(-(precision.digits as i32 - 10)),
            reg_cache: RwLock::new(HashMap::new()),
            scv_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn level(&self) -> u32 {
        self.kernel.level()
    }

    pub fn precision(&self) -> Precision {
        self.kernel.precision()
    }

    pub fn bits(&self) -> u32 {
        self.kernel.bits()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn constants(&self) -> &Arc<Constants> {
        self.kernel.constants()
    }

    pub fn cyc(&self, c: &CycNumber) -> BigComplex {
        self.constants().cyc(c)
    }

    pub fn two_pi_i(&self) -> BigComplex {
        self.kernel.two_pi_i()
    }

    pub fn zeta(&self, n: u32) -> Result<BigComplex> {
        self.kernel.zeta(n)
    }

    fn check_word(&self, w: &YWord) -> Result<()> {
        if w.letters().iter().any(|l| l.e >= self.level()) {
            return Err(Error::InvalidArgument(format!("exponent out of range in {w} at level {}", self.level())));
        }
        Ok(())
    }

    /// ζ(s⃗; ξ^e⃗) for an admissible index, with its error bound checked against the tolerance.
    pub fn admissible_value(&self, w: &YWord) -> Result<BigComplex> {
        self.check_word(w)?;
        let v = self.kernel.admissible_value(w)?;
        if v.err() > self.tolerance {
            return Err(Error::PrecisionNotAchieved { bound: v.err(), tolerance: self.tolerance });
        }
        Ok(v)
    }

    fn lincomb_value(&self, l: &LinComb<YWord>, word_to_index: impl Fn(&YWord) -> YWord) -> Result<BigComplex> {
        let mut acc = BigComplex::zero(self.bits());
        for (w, c) in l.iter() {
            let v = self.admissible_value(&word_to_index(w))?;
            acc = acc.add(&v.mul(&self.cyc(c)));
        }
        Ok(acc)
    }

    /// ζ_∗(w;T) for an index word, or ζ_⧢(w;T) for a word in the shuffle encoding.
    pub fn reg_value(&self, w: &YWord, product: Product) -> Result<Arc<RegPoly>> {
        self.check_word(w)?;
        let key = (product, w.clone());
        if let Some(p) = self.reg_cache.read().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let level = self.level();
        let dec = reg_decompose(w, product, level)?;
        let mut coeffs = Vec::with_capacity(dec.coeffs.len());
        let mut fact = BigInt::from(1);
        for (j, c) in dec.coeffs.iter().enumerate() {
            if j > 0 {
                fact *= j;
            }
            let v = match product {
                Product::Stuffle => self.lincomb_value(c, |u| u.clone())?,
                Product::Shuffle => self.lincomb_value(c, |u| q_map(u, level))?,
            };
            coeffs.push(v.scale_rational(&BigRational::new(1.into(), fact.clone())));
        }
        let p = Arc::new(RegPoly { coeffs });
        self.reg_cache.write().unwrap().entry(key).or_insert_with(|| p.clone());
        Ok(p)
    }

    /// Regularized value of an index in either convention: ζ_∗(v;T) or ζ_⧢(v;T) = word value at p(v).
    pub fn reg_index_value(&self, v: &YWord, product: Product) -> Result<Arc<RegPoly>> {
        match product {
            Product::Stuffle => self.reg_value(v, Product::Stuffle),
            Product::Shuffle => self.reg_value(&p_map(v, self.level()), Product::Shuffle),
        }
    }

    /// Coefficients a_m of exp(Σ_{n≥2} (-1)^n ζ(n) u^n / n) for m ≤ degree.
    fn rho_series(&self, degree: usize) -> Result<Vec<BigComplex>> {
        let bits = self.bits();
        let mut a = vec![BigComplex::one(bits)];
        for m in 1..=degree {
            let mut acc = BigComplex::zero(bits);
            for k in 2..=m {
                let z = self.zeta(k as u32)?;
                let t = z.mul(&a[m - k]);
                acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            a.push(acc.scale_rational(&BigRational::new(1.into(), (m as i64).into())));
        }
        Ok(a)
    }

    /// ρ(T^n/n!) = Σ_j a_{n-j} T^j/j!, extended linearly.
    pub fn rho_apply(&self, p: &RegPoly) -> Result<RegPoly> {
        let bits = self.bits();
        let deg = p.degree();
        let a = self.rho_series(deg)?;
        let mut out = vec![BigComplex::zero(bits); deg + 1];
        for (n, c) in p.coeffs.iter().enumerate() {
            for (j, slot) in out.iter_mut().enumerate().take(n + 1) {
                // n!/j!
                let ratio: BigInt = ((j + 1)..=n).map(BigInt::from).product();
                let t = c.mul(&a[n - j]).scale_int(&ratio);
                *slot = slot.add(&t);
            }
        }
        Ok(RegPoly { coeffs: out })
    }

    /// The symmetrized sum for an index word before the T-coefficients cancel.
    pub fn scv_poly(&self, index: &YWord, version: Product) -> Result<RegPoly> {
        self.check_word(index)?;
        let mut acc = RegPoly::constant(BigComplex::zero(self.bits()));
        for term in symmetrize_word(index, self.level()) {
            let l = self.reg_index_value(&term.left, version)?;
            let r = self.reg_index_value(&term.right, version)?;
            acc = acc.add(&l.mul(&r).scale(&self.cyc(&term.coeff)));
        }
        Ok(acc)
    }

    /// ζ^S_∗ or ζ^S_⧢ at an index (s⃗; e⃗); fails if a positive power of T survives.
    pub fn scv(&self, index: &YWord, version: Product) -> Result<BigComplex> {
        let key = (version, index.clone());
        if let Some(v) = self.scv_cache.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let p = self.scv_poly(index, version)?;
        let (degree, magnitude) = p.max_positive_degree();
        if magnitude > self.tolerance {
            return Err(Error::TDependence { degree, magnitude });
        }
        let v = p.constant_term().clone();
        self.scv_cache.write().unwrap().entry(key).or_insert_with(|| v.clone());
        Ok(v)
    }

    /// Shuffle-side symmetrized value of a word in the shuffle encoding.
    pub fn scv_word_shuffle(&self, w: &YWord) -> Result<BigComplex> {
        self.scv(&q_map(w, self.level()), Product::Shuffle)
    }

    /// Σ c · scv(index) over a combination of index words.
    pub fn scv_lincomb(&self, l: &LinComb<YWord>, version: Product) -> Result<BigComplex> {
        let mut acc = BigComplex::zero(self.bits());
        for (w, c) in l.iter() {
            acc = acc.add(&self.scv(w, version)?.mul(&self.cyc(c)));
        }
        Ok(acc)
    }

    /// Real coordinates of z over the basis 1, ξ (N ≥ 3) or 1 (N ≤ 2).
    fn coordinates(&self, z: &BigComplex) -> Vec<f64> {
        let level = self.level();
        if euler_phi(level) < 2 {
            return vec![z.re_f64()];
        }
        let xi = &self.constants().roots(level)[1];
        let y = z.im_f64() / xi.im_f64();
        vec![z.re_f64() - y * xi.re_f64(), y]
    }

    pub fn moduloz2_residual(&self, index: &YWord) -> Result<ModZ2Residual> {
        if index.weight() < 2 {
            let diff = self.scv(index, Product::Shuffle)?.sub(&self.scv(index, Product::Stuffle)?);
            let zero = diff.abs_f64() <= self.tolerance;
            return Ok(ModZ2Residual {
                value: diff,
                coords: vec![0.0],
                reconstruction: zero.then(|| CycNumber::zero(self.level())),
                difference_is_zero: zero,
            });
        }
        let level = self.level();
        let diff = self.scv(index, Product::Shuffle)?.sub(&self.scv(index, Product::Stuffle)?);
        let value = diff.mul(&self.zeta(2)?.inv());
        let coords = self.coordinates(&value);
        let reconstruction = coords
            .iter()
            .map(|&x| best_rational(x, 10_000))
            .collect::<Option<Vec<_>>>()
            .map(|qs| {
                let mut c = CycNumber::from_rational(level, qs[0].clone());
                if let Some(q1) = qs.get(1) {
                    c = c + CycNumber::root(level, 1).scale(q1);
                }
                c
            })
            .filter(|c| self.cyc(c).distance(&value) <= self.tolerance * 1e3);
        Ok(ModZ2Residual { difference_is_zero: diff.abs_f64() <= self.tolerance, value, coords, reconstruction })
    }

    pub fn record(&self, word: &YWord, version: Product, value: &BigComplex) -> ValueRecord {
        let digits = self.precision().digits;
        ValueRecord {
            word: word.to_string(),
            version: version.to_string(),
            value: ComplexRecord { re: value.re_string(digits), im: value.im_string(digits) },
            err_bound: value.err(),
            precision: digits,
        }
    }
}
