use cmzv_core::relations::{
    basis_words, gen_homogeneous, GenerationOptions, RankMode, RelationMatrix, RelationSystem,
};
use cmzv_core::{DualVerifier, FcvEvaluator, Precision, ScvEngine};

fn system(level: u32, max_weight: u32) -> (FcvEvaluator, RelationSystem) {
    let ev = FcvEvaluator::with_default_primes(level).unwrap();
    let sys = RelationSystem::generate(level, max_weight, Some(&ev), &GenerationOptions::with_discovery(level)).unwrap();
    (ev, sys)
}

#[test]
fn bounds_are_powers_of_two() {
    for level in [3, 4] {
        let (_, sys) = system(level, 3);
        for s in &sys.stages {
            assert_eq!(s.report.dim_upper_bound, 1 << (s.weight - 1), "N={level} w={}", s.weight);
            assert!(s.verdicts.iter().all(|v| *v == Some(true)));
        }
    }
}

#[test]
fn conjectured_basis_generates() {
    for level in [3, 4] {
        let (_, sys) = system(level, 4);
        for w in 1..=4 {
            let b = sys.basis_check(w, RankMode::Auto).unwrap();
            assert!(b.spans, "N={level} w={w} unreached {:?}", b.unreached);
        }
    }
}

#[test]
fn basis_check_is_idempotent() {
    // Reordering columns to put the basis last leaves the bound unchanged.
    let (_, sys) = system(3, 2);
    let s = sys.stage(2).unwrap();
    let b = sys.basis_check(2, RankMode::Exact).unwrap();
    assert_eq!(b.dim_upper_bound, s.report.dim_upper_bound);
    assert_eq!(basis_words(2, 3).len(), b.dim_upper_bound);
}

#[test]
fn bound_is_independent_of_row_order() {
    let (_, sys) = system(4, 2);
    let s = sys.stage(2).unwrap();
    let m = s.matrix(4);
    let mut rev = m.rows.clone();
    rev.reverse();
    let a = cmzv_core::relations::rank_and_bound(&m, RankMode::Exact).unwrap();
    let b = cmzv_core::relations::rank_and_bound(&RelationMatrix::new(4, 2, rev), RankMode::Exact).unwrap();
    assert_eq!(a.rank, b.rank);
    assert_eq!(a.quotient_words, b.quotient_words);
    let modular = cmzv_core::relations::rank_and_bound(&m, RankMode::Modular).unwrap();
    assert_eq!(modular.rank, a.rank);
}

#[test]
fn homogeneous_rows_alone() {
    let m = RelationMatrix::new(3, 2, gen_homogeneous(2, 3));
    let r = cmzv_core::relations::rank_and_bound(&m, RankMode::Exact).unwrap();
    assert_eq!(r.rank, 2);
}

#[test]
fn dual_verification_weight_two() {
    for level in [3, 4] {
        let (ev, sys) = system(level, 2);
        let eng = ScvEngine::new(level, Precision { digits: 40 });
        let dv = DualVerifier::new(&ev, &eng, &sys.quotient_words(), 2).unwrap();
        for s in &sys.stages {
            for r in s.usable() {
                let v = dv.verify(&r).unwrap();
                assert!(v.fcv_verdict);
                assert!(v.scv_residual < 1e-20, "N={level} {} {:e}", r.combo, v.scv_residual);
            }
        }
    }
}
