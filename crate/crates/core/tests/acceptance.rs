//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` are expected to fail for reasons printed with the line; the
//! process exits non-zero only when some criterion's outcome differs from its expectation.

use std::collections::BTreeMap;
use std::time::Instant;

use cmzv_core::catalog::{check_identity, find_identity};
use cmzv_core::cyclotomic::{embed_cyc, CycNumber, EmbedMode, ModCycNumber, PrimeContext};
use cmzv_core::fcv::{bernoulli_mod_p, fermat_quotient, FcvEvaluator};
use cmzv_core::hopfalg::{shuffle_y, stuffle};
use cmzv_core::relations::{basis_words, GenerationOptions};
use cmzv_core::scv::{AssociatorTruncation, BigComplex, Precision, ScvEngine};
use cmzv_core::words::{all_ywords, p_map, q_map, tau};
use cmzv_core::{DualVerifier, LinComb, Product, RankMode, RelationSystem, YWord};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const DIGITS: u32 = 60;
const LEVELS: [u32; 2] = [3, 4];
const VALUE_TOL: f64 = 1e-10;
const ASSOCIATOR_TOL: f64 = 1e-8;
const PROJECTION_TOL: f64 = 1e-6;
const CORRECTION_TOL: f64 = 1e-8;
const RANDOM_PAIRS: usize = 200;

const KNOWN_RED: &[(u32, &str)] = &[
    (
        1,
        "ζ(1;1) = 1 at p = 2 and ζ({s}^d;{1}^d) of weight 4 is nonzero at p = 5: power sums Σ k^{-w} \
         do not vanish when p − 1 divides w. The identity holds in A(3), where finitely many primes are ignored.",
    ),
    (3, "the level-4 weight-2 relation fails at p = 3 = w + 1 only, for the same power-sum reason; it holds in A(4)."),
    (
        6,
        "the stated forms of ζ*^S(1;i) and ζ*^S(1;−i) carry π/2 where −log(1−i) − i log(1+i) gives π/4; \
         the computed values match the π/4 forms.",
    ),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn at_level(s: &[u32], e: &[i64], n: u32) -> YWord {
    YWord::from_index(s, e, n)
}

fn constant_at(c: &CycNumber, p: u64, n: u32) -> ModCycNumber {
    embed_cyc(c, &PrimeContext::new(p, n).unwrap(), EmbedMode::Strict).unwrap()
}

fn criterion_1() -> Outcome {
    let n = 3;
    let ev = FcvEvaluator::with_default_primes(n).unwrap();
    let mut failures: BTreeMap<String, Vec<u64>> = BTreeMap::new();
    let mut cases = 0;
    for s in 1..=4u32 {
        for d in 1..=(4 / s) {
            cases += 1;
            let w = at_level(&vec![s; d as usize], &vec![0; d as usize], n);
            let vals = ev.word(&w);
            let bad: Vec<u64> =
                ev.primes().iter().zip(vals.iter()).filter(|(_, v)| !v.is_zero_cyclotomic()).map(|(p, _)| *p).collect();
            if !bad.is_empty() {
                failures.insert(format!("({s}^{d})"), bad);
            }
        }
    }
    let pass = failures.is_empty();
    let detail = if pass {
        format!("{cases} words zero at {} primes", ev.primes().len())
    } else {
        let list: Vec<String> = failures.iter().map(|(k, v)| format!("{k} at p ∈ {v:?}")).collect();
        format!("{cases} words, nonzero: {}", list.join(", "))
    };
    outcome(pass, detail)
}

fn criterion_2() -> Outcome {
    let n = 4;
    let ev = FcvEvaluator::with_default_primes(n).unwrap();
    let minus1 = ev.word(&at_level(&[1], &[2], n));
    let plus_i = ev.word(&at_level(&[1], &[1], n));
    let minus_i = ev.word(&at_level(&[1], &[3], n));
    let cube = ev.word(&at_level(&[3], &[2], n));
    let mut bad = Vec::new();
    let mut bernoulli_checked = 0;
    for (k, &p) in ev.primes().iter().enumerate() {
        let q2 = fermat_quotient(p).unwrap();
        let expect = constant_at(&CycNumber::from_integer(n, -2), p, n).scale(q2);
        if !minus1[k].eq_cyclotomic(&expect) {
            bad.push(format!("q_2 at {p}"));
        }
        let sum = plus_i[k].add(&minus_i[k]).scale(2);
        if !minus1[k].eq_cyclotomic(&sum) {
            bad.push(format!("2ζ(1;i)+2ζ(1;−i) at {p}"));
        }
        if p < 200 {
            bernoulli_checked += 1;
            // −2(1 − 2^{−2})B_{p−3}/3 = −B_{p−3}/2.
            let b = bernoulli_mod_p(p - 3, p).unwrap();
            let expect = constant_at(&CycNumber::from_fraction(n, -1, 2), p, n).scale(b);
            if !cube[k].eq_cyclotomic(&expect) {
                bad.push(format!("B_(p−3) at {p}"));
            }
        }
    }
    let detail =
        format!("{} primes for depth-one identities, {bernoulli_checked} for the Bernoulli oracle", ev.primes().len());
    if bad.is_empty() {
        outcome(true, detail)
    } else {
        outcome(false, format!("{detail}; failing: {}", bad.join(", ")))
    }
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for id in ["level3-weight2", "level4-weight2", "level3-weight3", "level4-weight3"] {
        let k = find_identity(id).unwrap();
        let r = check_identity(&k, &FcvEvaluator::with_default_primes(k.level).unwrap(), None).unwrap();
        pass &= r.fcv_exact;
        if r.fcv_exact {
            parts.push(format!("{id}: exact at {} primes", r.checked_primes.len()));
        } else {
            parts.push(format!("{id}: fails at {:?} (holds in A: {})", r.failing_primes, r.fcv_holds));
        }
    }
    outcome(pass, parts.join("; "))
}

fn random_word(rng: &mut StdRng, n: u32, max_weight: u32, level_one: bool) -> YWord {
    let target = rng.gen_range(1..=max_weight);
    let (mut s, mut e) = (Vec::new(), Vec::new());
    let mut w = 0;
    while w < target {
        let a = rng.gen_range(1..=target - w);
        w += a;
        s.push(a);
        e.push(if level_one { 0 } else { rng.gen_range(0..n as i64) });
    }
    at_level(&s, &e, n)
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for n in LEVELS {
        let ev = FcvEvaluator::with_default_primes(n).unwrap();
        for _ in 0..RANDOM_PAIRS {
            let u = random_word(&mut rng, n, 3, false);
            let v = random_word(&mut rng, n, 5 - u.weight(), false);
            let weight = (u.weight() + v.weight()) as u64;
            let prod = stuffle(&LinComb::word(n, u.clone()), &LinComb::word(n, v.clone())).unwrap();
            let vals = ev.combination(&prod, EmbedMode::Strict).unwrap();
            let (a, b) = (ev.word(&u), ev.word(&v));
            for (k, &p) in ev.primes().iter().enumerate() {
                if p <= weight {
                    continue;
                }
                checks += 1;
                if !vals.components[&p].eq_cyclotomic(&a[k].mul(&b[k])) {
                    failures.push(format!("N={n} stuffle {u} * {v} at {p}"));
                }
            }

            let u1 = random_word(&mut rng, n, 3, true);
            let v1 = random_word(&mut rng, n, 5 - u1.weight(), false);
            let weight = (u1.weight() + v1.weight()) as u64;
            let sh = shuffle_y(&LinComb::word(n, u1.clone()), &LinComb::word(n, v1.clone())).unwrap();
            let mut lhs = LinComb::zero(n);
            for (w, c) in sh.iter() {
                lhs.add_term(q_map(w, n), c);
            }
            let t = tau(&u1, n).unwrap();
            let rhs = LinComb::term(n, q_map(&t.word.concat(&v1), n), t.coeff);
            let r = ev.verify(&lhs.sub(&rhs)).unwrap();
            checks += r.checked.iter().filter(|&&p| p > weight).count();
            if let Some(p) = r.failing.iter().find(|&&p| p > weight) {
                failures.push(format!("N={n} linear shuffle {u1} ⧢ {v1} at {p}"));
            }
        }
    }
    let detail = format!("{} pairs per level per product, {checks} prime checks", RANDOM_PAIRS);
    if failures.is_empty() {
        outcome(true, detail)
    } else {
        outcome(false, format!("{detail}; {} failures, first: {}", failures.len(), failures[0]))
    }
}

fn reversal_coeff(w: &YWord, n: u32) -> CycNumber {
    let sign: i64 = if w.weight().is_multiple_of(2) { 1 } else { -1 };
    CycNumber::root(n, -w.exponent_sum()).scale(&BigRational::from_integer(sign.into()))
}

fn criterion_5() -> Outcome {
    let mut exact_bad = Vec::new();
    let mut worst = 0.0f64;
    let mut words = 0;
    for n in LEVELS {
        let ev = FcvEvaluator::with_default_primes(n).unwrap();
        let e = ScvEngine::new(n, Precision::digits(DIGITS));
        for weight in 1..=4 {
            for w in all_ywords(weight, n) {
                words += 1;
                let c = reversal_coeff(&w, n);
                let (a, b) = (ev.word(&w.reversed()), ev.word(&w.conjugated(n)));
                for (k, &p) in ev.primes().iter().enumerate() {
                    if !a[k].eq_cyclotomic(&constant_at(&c, p, n).mul(&b[k])) {
                        exact_bad.push(format!("N={n} {w} at {p}"));
                    }
                }
                for version in [Product::Stuffle, Product::Shuffle] {
                    let lhs = e.scv(&w.reversed(), version).unwrap();
                    let rhs = e.cyc(&c).mul(&e.scv(&w.conjugated(n), version).unwrap());
                    worst = worst.max(lhs.distance(&rhs));
                }
            }
        }
    }
    let pass = exact_bad.is_empty() && worst < VALUE_TOL;
    let mut detail = format!("{words} words exact, symmetrized max deviation {worst:.1e}");
    if let Some(f) = exact_bad.first() {
        detail.push_str(&format!("; finite failures {}, first {f}", exact_bad.len()));
    }
    outcome(pass, detail)
}

fn criterion_6() -> Outcome {
    let e = ScvEngine::new(4, Precision::digits(DIGITS));
    let k = e.constants().clone();
    let bits = e.bits();
    let half = BigRational::new(1.into(), 2.into());
    let quarter = BigRational::new(1.into(), 4.into());
    let i = BigComplex::i(bits);
    let l2 = k.log2.clone();
    let pi = k.pi.clone();
    // −½log2 + c·πi − (i/2)log2 + c·π
    let form = |c: &BigRational| {
        l2.scale_rational(&half).neg().add(&pi.scale_rational(c).mul(&i)).sub(&l2.scale_rational(&half).mul(&i)).add(&pi.scale_rational(c))
    };
    let minus1 = e.scv(&at_level(&[1], &[2], 4), Product::Stuffle).unwrap();
    let plus_i = e.scv(&at_level(&[1], &[1], 4), Product::Stuffle).unwrap();
    let minus_i = e.scv(&at_level(&[1], &[3], 4), Product::Stuffle).unwrap();
    let d1 = minus1.distance(&l2.scale_rational(&BigRational::from_integer((-2).into())));
    let stated = form(&half);
    let (d2, d3) = (plus_i.distance(&stated), minus_i.distance(&stated.conj()));
    let true_form = form(&quarter);
    let (t2, t3) = (plus_i.distance(&true_form), minus_i.distance(&true_form.conj()));
    let pass = d1 < VALUE_TOL && d2 < VALUE_TOL && d3 < VALUE_TOL;
    outcome(
        pass,
        format!(
            "ζ*^S(1;−1) vs −2log2: {d1:.1e}; ζ*^S(1;i) vs stated: {d2:.1e}; ζ*^S(1;−i) vs stated: {d3:.1e}; \
             with π/4 in place of π/2: {t2:.1e}, {t3:.1e}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut worst_t = 0.0f64;
    let mut worst_rho = 0.0f64;
    let mut words = 0;
    for n in LEVELS {
        let e = ScvEngine::new(n, Precision::digits(DIGITS));
        for weight in 1..=4 {
            for w in all_ywords(weight, n) {
                words += 1;
                for version in [Product::Stuffle, Product::Shuffle] {
                    worst_t = worst_t.max(e.scv_poly(&w, version).unwrap().max_positive_degree().1);
                }
                let lhs = e.reg_value(&p_map(&w, n), Product::Shuffle).unwrap();
                let rhs = e.rho_apply(&e.reg_value(&w, Product::Stuffle).unwrap()).unwrap();
                for j in 0..=lhs.degree().max(rhs.degree()) {
                    worst_rho = worst_rho.max(lhs.coeff(j).distance(&rhs.coeff(j)));
                }
            }
        }
    }
    outcome(
        worst_t < VALUE_TOL && worst_rho < VALUE_TOL,
        format!("{words} words; max |T^j coefficient| {worst_t:.1e}; max ρ-duality deviation {worst_rho:.1e}"),
    )
}

fn criterion_8() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for n in LEVELS {
        let e = ScvEngine::new(n, Precision::digits(DIGITS));
        let a = AssociatorTruncation::build(&e, 4).unwrap();
        let (g, _, _) = a.group_like_defect().unwrap();
        let mut worst = 0.0f64;
        for weight in 1..=3 {
            for w in all_ywords(weight, n) {
                let via = a.scv_via_phi(&w, &e).unwrap();
                worst = worst.max(via.distance(&e.scv_word_shuffle(&w).unwrap()));
            }
        }
        pass &= worst < ASSOCIATOR_TOL && g < VALUE_TOL;
        parts.push(format!("N={n}: {} coefficients, via Φ {worst:.1e}, group-like {g:.1e}", a.len()));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_9(systems: &BTreeMap<u32, RelationSystem>) -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (&n, sys) in systems {
        let bounds: Vec<usize> = (1..=3).map(|w| sys.stage(w).unwrap().report.dim_upper_bound).collect();
        let expected: Vec<usize> = (1..=3).map(|w| 1usize << (w - 1)).collect();
        pass &= bounds == expected;
        let mut spans = Vec::new();
        for w in 1..=4 {
            let b = sys.basis_check(w, RankMode::Auto).unwrap();
            pass &= b.spans && b.basis.len() == basis_words(w, n).len();
            spans.push(format!("w{w}:{}", if b.spans { "spans" } else { "short" }));
        }
        parts.push(format!("N={n}: bounds {bounds:?}, basis {}", spans.join(" ")));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_10(systems: &BTreeMap<u32, RelationSystem>) -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (&n, sys) in systems {
        let fcv = FcvEvaluator::with_default_primes(n).unwrap();
        let scv = ScvEngine::new(n, Precision::digits(DIGITS));
        let dual = DualVerifier::new(&fcv, &scv, &sys.quotient_words(), 3).unwrap();
        let (mut total, mut fcv_false, mut literal, mut corrected) = (0, 0, 0, 0);
        let mut worst = 0.0f64;
        for w in 1..=3 {
            for r in sys.stage(w).unwrap().usable() {
                let v = dual.verify(&r).unwrap();
                total += 1;
                fcv_false += usize::from(!v.fcv_verdict);
                literal += usize::from(!v.failing_primes.is_empty());
                corrected += usize::from(!v.corrections.is_empty());
                if v.projected {
                    worst = worst.max(v.scv_residual);
                } else {
                    worst = f64::INFINITY;
                }
            }
        }
        pass &= fcv_false == 0 && worst < PROJECTION_TOL;
        parts.push(format!(
            "N={n}: {total} relations, {fcv_false} refuted, {literal} with exceptional primes p ≤ w+1, \
             {corrected} need 2πi terms, worst residual {worst:.1e}"
        ));
    }
    for id in ["level3-weight2", "level4-weight2", "level3-weight3", "level4-weight3"] {
        let k = find_identity(id).unwrap();
        let fcv = FcvEvaluator::with_default_primes(k.level).unwrap();
        let scv = ScvEngine::new(k.level, Precision::digits(DIGITS));
        let r = check_identity(&k, &fcv, Some(&scv)).unwrap();
        let d = r.scv_difference.unwrap();
        pass &= d < CORRECTION_TOL;
        parts.push(format!("{id} correction {d:.1e}"));
    }
    outcome(pass, parts.join("; "))
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(u32, &str, Outcome, f64)> = Vec::new();
    let mut run = |id: u32, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = f();
        results.push((id, name, o, t.elapsed().as_secs_f64()));
        let (id, name, o, secs) = results.last().unwrap();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {id:>2} [{secs:7.2}s] {name}: {}", o.detail);
        if let Some((_, why)) = KNOWN_RED.iter().find(|(k, _)| k == id) {
            if !o.pass {
                println!("     expected: {why}");
            }
        }
    };
    run(1, "homogeneous vanishing", &mut criterion_1);
    run(2, "level-4 depth-one identities", &mut criterion_2);
    run(3, "worked finite relations", &mut criterion_3);
    run(4, "double shuffle on random pairs", &mut criterion_4);
    run(5, "reversal", &mut criterion_5);
    run(6, "symmetrized closed forms", &mut criterion_6);
    run(7, "T-independence and ρ-duality", &mut criterion_7);
    run(8, "associator cross-check", &mut criterion_8);
    let mut systems = BTreeMap::new();
    run(9, "dimension bounds and basis", &mut || {
        for n in LEVELS {
            let fcv = FcvEvaluator::with_default_primes(n).unwrap();
            let sys = RelationSystem::generate(n, 4, Some(&fcv), &GenerationOptions::with_discovery(n)).unwrap();
            systems.insert(n, sys);
        }
        criterion_9(&systems)
    });
    run(10, "dual verification", &mut || criterion_10(&systems));

    let unexpected: Vec<u32> = results
        .iter()
        .filter(|(id, _, o, _)| o.pass == KNOWN_RED.iter().any(|(k, _)| k == id))
        .map(|(id, _, _, _)| *id)
        .collect();
    let passed = results.iter().filter(|r| r.2.pass).count();
    println!(
        "acceptance: {passed}/{} PASS, {} FAIL, {:.1}s total",
        results.len(),
        results.len() - passed,
        start.elapsed().as_secs_f64()
    );
    if !unexpected.is_empty() {
        println!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
