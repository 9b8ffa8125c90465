#![allow(dead_code)]

use cmzv_core::cyclotomic::CycNumber;
use cmzv_core::{LinComb, YWord};
use proptest::prelude::*;

/// Words of weight at most `max_weight` at the given level.
pub fn yword(level: u32, max_weight: u32) -> impl Strategy<Value = YWord> {
    prop::collection::vec((1u32..=3, 0u32..level), 0..=max_weight as usize).prop_map(move |v| {
        let mut s = Vec::new();
        let mut e = Vec::new();
        let mut w = 0;
        for (a, b) in v {
            if w + a > max_weight {
                continue;
            }
            w += a;
            s.push(a);
            e.push(b as i64);
        }
        YWord::from_index(&s, &e, level)
    })
}

pub fn nonempty_yword(level: u32, max_weight: u32) -> impl Strategy<Value = YWord> {
    yword(level, max_weight).prop_filter("nonempty", |w| !w.is_empty())
}

pub fn cyc(level: u32) -> impl Strategy<Value = CycNumber> {
    prop::collection::vec((-20i64..=20, 1i64..=6), level as usize).prop_map(move |v| {
        let mut c = CycNumber::zero(level);
        for (k, (num, den)) in v.into_iter().enumerate() {
            c += &CycNumber::root(level, k as i64).scale(&num_rational::BigRational::new(num.into(), den.into()));
        }
        c
    })
}

pub fn word(level: u32, w: YWord) -> LinComb<YWord> {
    LinComb::word(level, w)
}
