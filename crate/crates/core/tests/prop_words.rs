mod common;

use cmzv_core::words::{inv_map, p_map, q_map, r_eta, tau, to_x, to_y};
use cmzv_core::YWord;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn maps_preserve_weight_and_depth(w in common::yword(4, 6), eta in 0i64..4) {
        for m in [p_map(&w, 4), q_map(&w, 4), w.reversed()] {
            prop_assert_eq!(m.weight(), w.weight());
            prop_assert_eq!(m.depth(), w.depth());
        }
        let x = to_x(&w);
        let rx = r_eta(&x, eta, 4);
        prop_assert_eq!(rx.weight(), x.weight());
        prop_assert_eq!(rx.depth(), x.depth());
        let inv = inv_map(&w, 4);
        prop_assert_eq!(inv.word.clone(), w.reversed());
        prop_assert_eq!(inv.word.weight(), w.weight());
    }

    #[test]
    fn p_and_q_are_inverse(w in common::yword(3, 6)) {
        prop_assert_eq!(p_map(&q_map(&w, 3), 3), w.clone());
        prop_assert_eq!(q_map(&p_map(&w, 3), 3), w.clone());
        prop_assert_eq!(to_y(&to_x(&w)).unwrap(), w);
    }

    #[test]
    fn q_commutes_with_leading_ones(w in common::yword(4, 5), n in 0usize..=3) {
        let ones = YWord::from_index(&vec![1; n], &vec![0; n], 4);
        prop_assert_eq!(q_map(&ones.concat(&w), 4), ones.concat(&q_map(&w, 4)));
    }

    #[test]
    fn inv_is_an_anti_automorphism(u in common::yword(4, 4), v in common::yword(4, 4)) {
        let uv = inv_map(&u.concat(&v), 4);
        let iu = inv_map(&u, 4);
        let iv = inv_map(&v, 4);
        prop_assert_eq!(uv.word, iv.word.concat(&iu.word));
        prop_assert_eq!(uv.coeff, &iu.coeff * &iv.coeff);
    }

    #[test]
    fn tau_reverses_level_one_words(w in common::yword(1, 6)) {
        let t = tau(&w, 1).unwrap();
        prop_assert_eq!(t.word.clone(), w.reversed());
        prop_assert_eq!(t.word.weight(), w.weight());
        let back = tau(&t.word, 1).unwrap();
        prop_assert!((&t.coeff * &back.coeff).is_one());
    }

    #[test]
    fn non_admissible_words_start_with_the_divergent_letter(w in common::nonempty_yword(3, 6)) {
        if !w.is_admissible() {
            let l = w.letters()[0];
            prop_assert_eq!((l.s, l.e), (1, 0));
        } else {
            let l = w.letters()[0];
            prop_assert!((l.s, l.e) != (1, 0));
        }
    }
}
