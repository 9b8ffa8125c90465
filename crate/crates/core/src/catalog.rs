//! Worked identities between finite values, each with the 2πi-correction its symmetrized
//! counterpart is stated with.

use num_rational::BigRational;
use serde::Serialize;

use crate::cyclotomic::CycNumber;
use crate::error::Result;
use crate::fcv::FcvEvaluator;
use crate::hopfalg::{LinComb, Product};
use crate::relations::holds_in_a;
use crate::scv::{best_rational, BigComplex, ScvEngine};
use crate::words::YWord;

/// (2πi)^power · coeff · ζ*^S(word), with `word = None` standing for 1.
#[derive(Clone, Debug, Serialize)]
pub struct CorrectionTerm {
    pub power: u32,
    pub coeff: CycNumber,
    pub word: Option<YWord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KnownIdentity {
    pub id: &'static str,
    pub level: u32,
    pub weight: u32,
    pub source: &'static str,
    /// Σ c ζ_A = 0; on the symmetrized side Σ c ζ*^S equals the correction.
    pub combo: LinComb<YWord>,
    pub correction: Vec<CorrectionTerm>,
}

fn c(n: u32, coeffs: &[i64]) -> CycNumber {
    CycNumber::from_root_coeffs(n, coeffs)
}

fn frac(n: u32, coeffs: &[i64], den: i64) -> CycNumber {
    c(n, coeffs).scale(&BigRational::new(1.into(), den.into()))
}

fn combo(n: u32, terms: &[(&[u32], &[i64], CycNumber)]) -> LinComb<YWord> {
    let mut l = LinComb::zero(n);
    for (s, e, k) in terms {
        l.add_term(YWord::from_index(s, e, n), k);
    }
    l
}

fn term(power: u32, coeff: CycNumber, word: Option<(&[u32], &[i64], u32)>) -> CorrectionTerm {
    CorrectionTerm { power, coeff, word: word.map(|(s, e, n)| YWord::from_index(s, e, n)) }
}

pub fn known_identities() -> Vec<KnownIdentity> {
    vec![
        KnownIdentity {
            id: "level4-weight1",
            level: 4,
            weight: 1,
            source: "depth-one closed forms at level 4: ζ(1;−1) = 2ζ(1;i) + 2ζ(1;−i), symmetrized side stated with +2π",
            combo: combo(4, &[(&[1], &[2], c(4, &[1])), (&[1], &[1], c(4, &[-2])), (&[1], &[3], c(4, &[-2]))]),
            correction: vec![term(1, c(4, &[0, -1]), None)],
        },
        KnownIdentity {
            id: "level3-depth1-weight2",
            level: 3,
            weight: 2,
            source: "level-3 reversal in depth one: ζ(2;ξ) = ξ²ζ(2;ξ²)",
            combo: combo(3, &[(&[2], &[1], c(3, &[1])), (&[2], &[2], c(3, &[0, 0, -1]))]),
            correction: vec![],
        },
        KnownIdentity {
            id: "level3-depth2-weight2",
            level: 3,
            weight: 2,
            source: "level-3 reversal in depth two: ζ(1,1;1,ξ) = ξ²ζ(1,1;ξ²,1)",
            combo: combo(3, &[(&[1, 1], &[0, 1], c(3, &[1])), (&[1, 1], &[2, 0], c(3, &[0, 0, -1]))]),
            correction: vec![],
        },
        KnownIdentity {
            id: "level3-depth2-weight4",
            level: 3,
            weight: 4,
            source: "level-3 reversal in depth two: ζ(2,2;ξ,ξ) = ξζ(2,2;ξ²,ξ²)",
            combo: combo(3, &[(&[2, 2], &[1, 1], c(3, &[1])), (&[2, 2], &[2, 2], c(3, &[0, -1]))]),
            correction: vec![],
        },
        KnownIdentity {
            id: "level3-weight2",
            level: 3,
            weight: 2,
            source: "weight-2 level-3 relation proved exactly: 3ζ(2;ξ) = 2(1−ξ)ζ(1,1;ξ,ξ) − 6ζ(1,1;ξ,1)",
            combo: combo(3, &[(&[2], &[1], c(3, &[3])), (&[1, 1], &[1, 1], c(3, &[-2, 2])), (&[1, 1], &[1, 0], c(3, &[6]))]),
            correction: vec![term(2, frac(3, &[2, 1], 12), None)],
        },
        KnownIdentity {
            id: "level4-weight2",
            level: 4,
            weight: 2,
            source: "weight-2 level-4 relation proved exactly: ζ(2;i) = (i−1)ζ(1,1;i,1) − iζ(1,1;i,i)",
            combo: combo(4, &[(&[2], &[1], c(4, &[1])), (&[1, 1], &[1, 0], c(4, &[1, -1])), (&[1, 1], &[1, 1], c(4, &[0, 1]))]),
            correction: vec![
                term(1, frac(4, &[2, 2], 12), Some((&[1], &[1], 4))),
                term(1, frac(4, &[0, -1], 12), Some((&[1], &[2], 4))),
            ],
        },
        KnownIdentity {
            id: "level3-weight3",
            level: 3,
            weight: 3,
            source: "weight-3 level-3 relation found numerically: ζ(1,1,1;1,ξ²,ξ) = 3ξζ(1,1,1;ξ,1,1)",
            combo: combo(3, &[(&[1, 1, 1], &[0, 2, 1], c(3, &[1])), (&[1, 1, 1], &[1, 0, 0], c(3, &[0, -3]))]),
            correction: vec![
                term(2, frac(3, &[1, -1], 24), Some((&[1], &[1], 3))),
                term(3, frac(3, &[-1, 1], 144), None),
            ],
        },
        KnownIdentity {
            id: "level4-weight3",
            level: 4,
            weight: 3,
            source: "weight-3 level-4 relation found numerically: (15−66i)ζ(1,2;1,1) = 48(...)",
            combo: combo(
                4,
                &[
                    (&[1, 2], &[0, 0], c(4, &[15, -66])),
                    (&[1, 1, 1], &[1, 1, 0], c(4, &[-48, -48])),
                    (&[1, 1, 1], &[1, 1, 1], c(4, &[48, 96])),
                    (&[1, 1, 1], &[1, 0, 1], c(4, &[-96, 96])),
                    (&[1, 1, 1], &[1, 0, 0], c(4, &[144, -144])),
                ],
            ),
            correction: vec![
                term(1, c(4, &[106, 2]), Some((&[1, 1], &[1, 1], 4))),
                term(1, c(4, &[-2, 88]), Some((&[1, 1], &[1, 0], 4))),
                term(1, frac(4, &[-3, 22], 2), Some((&[1, 1], &[2, 2], 4))),
                term(1, c(4, &[-64, -26]), Some((&[1, 1], &[1, 2], 4))),
            ],
        },
    ]
}

pub fn find_identity(id: &str) -> Option<KnownIdentity> {
    known_identities().into_iter().find(|k| k.id == id)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub source: String,
    pub checked_primes: Vec<u64>,
    pub failing_primes: Vec<u64>,
    /// Holds at every checked prime.
    pub fcv_exact: bool,
    /// Holds up to the exceptional primes p ≤ w + 1.
    pub fcv_holds: bool,
    /// |Σ c ζ*^S − stated correction|.
    pub scv_difference: Option<f64>,
    /// (re, im) of the difference over 2πi, when both are rationals of denominator ≤ 1000.
    pub offset_over_2pii: Option<(String, String)>,
}

impl IdentityReport {
    pub fn scv_matches(&self, tol: f64) -> bool {
        self.scv_difference.is_some_and(|d| d < tol)
    }
}

pub fn correction_value(k: &KnownIdentity, engine: &ScvEngine) -> Result<BigComplex> {
    let tpi = engine.two_pi_i();
    let mut acc = BigComplex::zero(engine.bits());
    for t in &k.correction {
        let mut v = engine.cyc(&t.coeff);
        for _ in 0..t.power {
            v = v.mul(&tpi);
        }
        if let Some(w) = &t.word {
            v = v.mul(&engine.scv(w, Product::Stuffle)?);
        }
        acc = acc.add(&v);
    }
    Ok(acc)
}

pub fn check_identity(k: &KnownIdentity, fcv: &FcvEvaluator, scv: Option<&ScvEngine>) -> Result<IdentityReport> {
    let r = fcv.verify(&k.combo)?;
    let (scv_difference, offset_over_2pii) = match scv {
        None => (None, None),
        Some(e) => {
            let d = e.scv_lincomb(&k.combo, Product::Stuffle)?.sub(&correction_value(k, e)?);
            let q = d.mul(&e.two_pi_i().inv());
            let re = best_rational(q.re_f64(), 1000);
            let im = best_rational(q.im_f64(), 1000);
            let offset = match (re, im) {
                (Some(a), Some(b))
                    if (q.re_f64() - ratio(&a)).abs() < 1e-12 && (q.im_f64() - ratio(&b)).abs() < 1e-12 =>
                {
                    Some((a.to_string(), b.to_string()))
                }
                _ => None,
            };
            (Some(d.abs_f64()), offset)
        }
    };
    Ok(IdentityReport {
        id: k.id.to_string(),
        source: k.source.to_string(),
        fcv_exact: r.failing.is_empty() && !r.checked.is_empty(),
        fcv_holds: holds_in_a(&r),
        checked_primes: r.checked,
        failing_primes: r.failing,
        scv_difference,
        offset_over_2pii,
    })
}

fn ratio(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}
