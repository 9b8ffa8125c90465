mod common;

use cmzv_core::cyclotomic::{CycNumber, EmbedMode, ModCycNumber, PrimeContext};
use cmzv_core::fcv::{harmonic_sum, prime_range, FcvEvaluator};
use cmzv_core::hopfalg::{shuffle_y, stuffle};
use cmzv_core::words::{q_map, tau};
use cmzv_core::{LinComb, YWord};
use proptest::prelude::*;

fn evaluator(level: u32) -> FcvEvaluator {
    FcvEvaluator::new(level, &prime_range(level, 2, 120)).unwrap()
}

fn to_index(l: &LinComb<YWord>, level: u32) -> LinComb<YWord> {
    let mut out = LinComb::zero(level);
    for (w, c) in l.iter() {
        out.add_term(q_map(w, level), c);
    }
    out
}

/// Direct d-fold loop over p > k1 > ... > kd > 0.
fn naive(w: &YWord, ctx: &PrimeContext) -> ModCycNumber {
    fn rec(letters: &[cmzv_core::Letter], upper: u64, ctx: &PrimeContext) -> ModCycNumber {
        let Some((l, rest)) = letters.split_first() else {
            return ModCycNumber::one(ctx);
        };
        let p = ctx.prime();
        let mut acc = ModCycNumber::zero(ctx);
        for k in (rest.len() as u64 + 1)..upper {
            let inv = (0..l.s).fold(1u64, |a, _| a * ctx.inv(k) % p);
            let term = rec(rest, k, ctx).mul(&ModCycNumber::monomial(ctx, (l.e as u64 * k) as i64, inv));
            acc = acc.add(&term);
        }
        acc
    }
    rec(w.letters(), ctx.prime(), ctx)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn stuffle_is_multiplicative(n in prop::sample::select(vec![3u32, 4]), u in common::yword(4, 3), v in common::yword(4, 2)) {
        let u = YWord::from_index(&u.weights(), &u.exponents().iter().map(|&e| (e % n) as i64).collect::<Vec<_>>(), n);
        let v = YWord::from_index(&v.weights(), &v.exponents().iter().map(|&e| (e % n) as i64).collect::<Vec<_>>(), n);
        let ev = evaluator(n);
        let prod = ev.combination(&stuffle(&LinComb::word(n, u.clone()), &LinComb::word(n, v.clone())).unwrap(), EmbedMode::Strict).unwrap();
        let (a, b) = (ev.word(&u), ev.word(&v));
        for (i, p) in ev.primes().iter().enumerate() {
            prop_assert_eq!(&prod.components[p], &a[i].mul(&b[i]));
        }
    }

    #[test]
    fn linear_shuffle(n in prop::sample::select(vec![3u32, 4]), u in common::nonempty_yword(1, 3), v in common::yword(4, 2)) {
        let v = YWord::from_index(&v.weights(), &v.exponents().iter().map(|&e| (e % n) as i64).collect::<Vec<_>>(), n);
        let u = YWord::from_index(&u.weights(), &vec![0; u.depth()], n);
        let ev = evaluator(n);
        let lhs = to_index(&shuffle_y(&LinComb::word(n, u.clone()), &LinComb::word(n, v.clone())).unwrap(), n);
        let t = tau(&u, n).unwrap();
        let rhs = LinComb::term(n, q_map(&t.word.concat(&v), n), t.coeff);
        let r = ev.verify(&lhs.sub(&rhs)).unwrap();
        prop_assert!(r.failing.is_empty(), "{:?}", r);
    }

    #[test]
    fn reversal(n in prop::sample::select(vec![3u32, 4]), w in common::nonempty_yword(4, 4)) {
        let w = YWord::from_index(&w.weights(), &w.exponents().iter().map(|&e| (e % n) as i64).collect::<Vec<_>>(), n);
        let ev = evaluator(n);
        let sign = if w.weight().is_multiple_of(2) { 1 } else { -1 };
        let c = CycNumber::root(n, -w.exponent_sum()).scale(&num_rational::BigRational::from_integer(sign.into()));
        let (a, b) = (ev.word(&w.reversed()), ev.word(&w.conjugated(n)));
        for (i, p) in ev.primes().iter().enumerate() {
            let ctx = PrimeContext::new(*p, n).unwrap();
            let cc = cmzv_core::cyclotomic::embed_cyc(&c, &ctx, EmbedMode::Strict).unwrap();
            prop_assert!(a[i].eq_cyclotomic(&cc.mul(&b[i])), "p = {}", p);
        }
    }

    #[test]
    fn conjugation_equivariance(n in prop::sample::select(vec![3u32, 4]), w in common::yword(4, 4)) {
        let w = YWord::from_index(&w.weights(), &w.exponents().iter().map(|&e| (e % n) as i64).collect::<Vec<_>>(), n);
        let ev = evaluator(n);
        let (a, b) = (ev.word(&w), ev.word(&w.conjugated(n)));
        for i in 0..a.len() {
            prop_assert_eq!(&b[i], &a[i].conj());
        }
    }
}

#[test]
fn dp_matches_nested_loops() {
    for n in [3u32, 4] {
        for p in prime_range(n, 2, 32) {
            let ctx = PrimeContext::new(p, n).unwrap();
            for w in 1..=4 {
                for word in cmzv_core::words::all_ywords(w, n) {
                    let dp = harmonic_sum(&word, p - 1, &ctx).unwrap();
                    assert_eq!(dp, naive(&word, &ctx), "{word} p={p}");
                }
            }
        }
    }
}
