use cmzv_core::cyclotomic::CycNumber;
use cmzv_core::fcv::FcvEvaluator;
use cmzv_core::{LinComb, YWord};

fn c(n: u32, coeffs: &[i64]) -> CycNumber {
    CycNumber::from_root_coeffs(n, coeffs)
}

fn rel(n: u32, terms: &[(&[u32], &[i64], CycNumber)]) -> LinComb<YWord> {
    let mut l = LinComb::zero(n);
    for (s, e, k) in terms {
        l.add_term(YWord::from_index(s, e, n), k);
    }
    l
}

#[test]
fn level3_weight2() {
    let n = 3;
    let ev = FcvEvaluator::with_default_primes(n).unwrap();
    // 3ζ(2;ξ) - 2(1-ξ)ζ(1,1;ξ,ξ) + 6ζ(1,1;ξ,1)
    let l = rel(n, &[(&[2], &[1], c(n, &[3])), (&[1, 1], &[1, 1], c(n, &[-2, 2])), (&[1, 1], &[1, 0], c(n, &[6]))]);
    let r = ev.verify(&l).unwrap();
    assert!(r.holds(), "{r:?}");
}

#[test]
fn level4_weight2() {
    let n = 4;
    let ev = FcvEvaluator::with_default_primes(n).unwrap();
    // ζ(2;i) - (i-1)ζ(1,1;i,1) + iζ(1,1;i,i)
    let l = rel(n, &[(&[2], &[1], c(n, &[1])), (&[1, 1], &[1, 0], c(n, &[1, -1])), (&[1, 1], &[1, 1], c(n, &[0, 1]))]);
    let r = ev.verify(&l).unwrap();
    // p = 3 = w + 1 is exceptional: p − 1 divides the weight.
    assert_eq!(r.failing, vec![3], "{r:?}");
    assert!(cmzv_core::relations::holds_in_a(&r));
}

#[test]
fn level4_weight1() {
    let n = 4;
    let ev = FcvEvaluator::with_default_primes(n).unwrap();
    let l = rel(n, &[(&[1], &[2], c(n, &[1])), (&[1], &[1], c(n, &[-2])), (&[1], &[3], c(n, &[-2]))]);
    assert!(ev.verify(&l).unwrap().holds());
}

#[test]
fn level3_weight3() {
    let n = 3;
    let ev = FcvEvaluator::with_default_primes(n).unwrap();
    let l = rel(n, &[(&[1, 1, 1], &[0, 2, 1], c(n, &[1])), (&[1, 1, 1], &[1, 0, 0], c(n, &[0, -3]))]);
    let r = ev.verify(&l).unwrap();
    assert!(r.holds(), "{r:?}");
}

#[test]
fn level4_weight3() {
    let n = 4;
    let ev = FcvEvaluator::with_default_primes(n).unwrap();
    let l = rel(
        n,
        &[
            (&[1, 2], &[0, 0], c(n, &[15, -66])),
            (&[1, 1, 1], &[1, 1, 0], c(n, &[-48, -48])),
            (&[1, 1, 1], &[1, 1, 1], c(n, &[48, 96])),
            (&[1, 1, 1], &[1, 0, 1], c(n, &[-96, 96])),
            (&[1, 1, 1], &[1, 0, 0], c(n, &[144, -144])),
        ],
    );
    let r = ev.verify(&l).unwrap();
    assert!(r.holds(), "{r:?}");
}
