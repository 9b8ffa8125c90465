mod common;

use std::collections::BTreeMap;

use cmzv_core::cyclotomic::CycNumber;
use cmzv_core::hopfalg::{deconcat_lin, product, reg_decompose, shuffle, stuffle, Tensor, Word};
use cmzv_core::words::to_x;
use cmzv_core::{LinComb, Product, XLetter, XWord, YWord};
use num_bigint::BigInt;
use proptest::prelude::*;

fn tensor_product<W: Word>(
    a: &Tensor<W>,
    b: &Tensor<W>,
    level: u32,
    mul: impl Fn(&LinComb<W>, &LinComb<W>) -> LinComb<W>,
) -> Tensor<W> {
    let mut out: Tensor<W> = BTreeMap::new();
    for ((a1, a2), ca) in a {
        for ((b1, b2), cb) in b {
            let left = mul(&LinComb::word(level, a1.clone()), &LinComb::word(level, b1.clone()));
            let right = mul(&LinComb::word(level, a2.clone()), &LinComb::word(level, b2.clone()));
            let c = ca * cb;
            for (l, cl) in left.iter() {
                for (r, cr) in right.iter() {
                    let e = out.entry((l.clone(), r.clone())).or_insert_with(|| CycNumber::zero(level));
                    *e += &(&c * &(cl * cr));
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_commute_and_associate(u in common::yword(3, 2), v in common::yword(3, 2), w in common::yword(3, 2)) {
        let (u, v, w) = (LinComb::word(3, u), LinComb::word(3, v), LinComb::word(3, w));
        for which in [Product::Stuffle, Product::Shuffle] {
            prop_assert_eq!(product(&u, &v, which).unwrap(), product(&v, &u, which).unwrap());
            let l = product(&product(&u, &v, which).unwrap(), &w, which).unwrap();
            let r = product(&u, &product(&v, &w, which).unwrap(), which).unwrap();
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn deconcatenation_is_multiplicative(u in common::yword(4, 2), v in common::yword(4, 2)) {
        let (yu, yv) = (LinComb::word(4, u.clone()), LinComb::word(4, v.clone()));
        let st = |a: &LinComb<YWord>, b: &LinComb<YWord>| stuffle(a, b).unwrap();
        let lhs = deconcat_lin(&st(&yu, &yv));
        prop_assert_eq!(lhs, tensor_product(&deconcat_lin(&yu), &deconcat_lin(&yv), 4, st));
        let (xu, xv) = (LinComb::word(4, to_x(&u)), LinComb::word(4, to_x(&v)));
        let sh = |a: &LinComb<XWord>, b: &LinComb<XWord>| shuffle(a, b).unwrap();
        let lhs = deconcat_lin(&sh(&xu, &xv));
        prop_assert_eq!(lhs, tensor_product(&deconcat_lin(&xu), &deconcat_lin(&xv), 4, sh));
    }

    #[test]
    fn shuffle_mass_is_binomial(u in common::yword(3, 4), v in common::yword(3, 4)) {
        let (xu, xv) = (to_x(&u), to_x(&v));
        let p = shuffle(&LinComb::word(3, xu.clone()), &LinComb::word(3, xv.clone())).unwrap();
        let mut mass = CycNumber::zero(3);
        for (_, c) in p.iter() {
            mass += c;
        }
        let expect = binomial(xu.len() + xv.len(), xu.len());
        prop_assert_eq!(mass, CycNumber::from_rational(3, expect.into()));
    }

    #[test]
    fn regularization_reassembles(w in common::yword(4, 4), lead in 0usize..=2) {
        let ones = YWord::from_index(&vec![1; lead], &vec![0; lead], 4);
        let w = ones.concat(&w);
        for which in [Product::Stuffle, Product::Shuffle] {
            let d = reg_decompose(&w, which, 4).unwrap();
            for c in &d.coeffs {
                prop_assert!(c.words().all(|x| x.is_admissible()));
            }
            prop_assert_eq!(d.reassemble().unwrap(), LinComb::word(4, w.clone()));
        }
    }

    #[test]
    fn alternating_shuffle_sum_is_admissible(
        u in common::yword(3, 2), v in common::yword(3, 2), lam in 1u32..3, mu in 1u32..3, l in 0usize..=2,
    ) {
        let x1 = |j: usize| XWord::new(vec![XLetter::Root(0); j]);
        let mut total = LinComb::zero(3);
        for j in 0..=l {
            let left = x1(j).concat(&XWord::new(vec![XLetter::Root(lam)])).concat(&to_x(&u));
            let right = x1(l - j).concat(&XWord::new(vec![XLetter::Root(mu)])).concat(&to_x(&v));
            let p = shuffle(&LinComb::word(3, left), &LinComb::word(3, right)).unwrap();
            let sign = CycNumber::from_integer(3, if j % 2 == 0 { 1 } else { -1 });
            total.add_scaled(&p, &sign);
        }
        for w in total.words() {
            prop_assert!(w.letters()[0] != XLetter::Root(0), "{w}");
        }
    }
}
