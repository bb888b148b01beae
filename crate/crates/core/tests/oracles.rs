mod common;

use critset::bounds::{
    binomial, factorial, latin_lower_bound, ln_biguint, ln_factorial, partial_upper_bound, sauer_shelah,
    vc_threshold, vc_lower_closed_form, LogValue,
};
use critset::completion::{
    all_latin_squares, completions, count_completions, enumerate_partial, partial_latin_counts,
};
use critset::decomposition::{count_k3_decompositions, leave_graph, k3_decompose};
use critset::dimensions::{
    latin_concept_class, rtd, shattered_sets, teaching_dims, vc_dimension, ConceptClass,
};
use critset::isotopy::{canonical_form, isotopy_representatives};
use critset::teaching::{back_circulant, is_critical_set, min_teaching_set, quarter_pattern, scs};
use critset::{Cap, LatinSquare, Limits, PartialLatinSquare};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn latin_square_sets_match_row_by_row_enumeration() {
    for n in 1..=4 {
        let mut dlx: Vec<Vec<u8>> = all_latin_squares(n).unwrap().iter().map(|l| l.cells().to_vec()).collect();
        let mut brute = common::latin_squares_rowwise(n);
        dlx.sort();
        brute.sort();
        assert_eq!(dlx, brute, "n = {n}");
    }
}

#[test]
fn partial_square_counts_match_brute_force() {
    let lim = Limits::default();
    for n in 1..=4 {
        let dp = partial_latin_counts(n, &lim).unwrap();
        assert_eq!(dp, common::partial_counts_bruteforce(n), "n = {n}");
    }
    assert_eq!(partial_latin_counts(2, &lim).unwrap(), vec![1, 8, 16, 8, 2]);
    assert_eq!(
        partial_latin_counts(3, &lim).unwrap(),
        vec![1, 27, 270, 1278, 3078, 3834, 2412, 756, 108, 12]
    );
    let four = partial_latin_counts(4, &lim).unwrap();
    assert_eq!(four.iter().sum::<u128>(), 127_545_137);
    assert_eq!(four[16], 576);
    assert_eq!(enumerate_partial(3, 4, &lim).unwrap(), 3078);
    assert!(partial_latin_counts(5, &lim).unwrap_err().is_guard());
}

#[test]
fn completions_match_filtering_all_squares() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 3..=4 {
        let all = common::latin_squares_rowwise(n);
        for _ in 0..150 {
            let attempts = rng.random_range(0..n * n);
            let p = common::random_partial(n, attempts, &mut rng);
            let mut got: Vec<Vec<u8>> = completions(&p, Cap::Unbounded).iter().map(|l| l.cells().to_vec()).collect();
            got.sort();
            let want: Vec<Vec<u8>> = common::extensions(&p, &all).into_iter().cloned().collect();
            assert_eq!(got, want, "partial\n{p}");
            assert_eq!(count_completions(&p, Cap::UNIQUENESS), want.len().min(2) as u64);
        }
    }
}

#[test]
fn min_teaching_sets_match_subset_search() {
    let lim = Limits::default();
    let all = common::latin_squares_rowwise(3);
    for cells in all.iter().take(4) {
        let l = LatinSquare::from_cells(3, cells.clone()).unwrap();
        let m = min_teaching_set(&l, &lim).unwrap();
        let brute = (0..=9)
            .find(|&k| {
                common::subsets_of_size(9, k).iter().any(|&s| {
                    let pos: Vec<(usize, usize)> = (0..9).filter(|i| s >> i & 1 == 1).map(|i| (i / 3, i % 3)).collect();
                    common::extensions(&l.restrict(&pos).unwrap(), &all).len() == 1
                })
            })
            .unwrap();
        assert_eq!(m.size, brute);
        assert!(is_critical_set(&m.set, &l).unwrap());
    }
}

#[test]
fn scs_values_for_small_orders() {
    let lim = Limits::default();
    let got: Vec<usize> = (1..=4).map(|n| scs(n, &lim).unwrap().scs).collect();
    assert_eq!(got, vec![0, 1, 2, 4]);
    for (n, &s) in (1..=4).zip(&got) {
        // prior lower bound ⌊(4n−8)/3⌋
        assert!(s as i64 >= (4 * n as i64 - 8).div_euclid(3));
    }
    assert!(scs(6, &lim).unwrap_err().is_guard());
}

#[test]
fn order_four_isotopy_classes() {
    let reps = isotopy_representatives(4).unwrap();
    assert_eq!(reps.len(), 2);
    let mut classes: Vec<LatinSquare> = all_latin_squares(4).unwrap().iter().map(canonical_form).collect();
    classes.sort();
    classes.dedup();
    assert_eq!(classes, reps);
}

#[test]
fn quarter_pattern_is_critical_up_to_eight() {
    for n in 2..=8 {
        let set = quarter_pattern(n).unwrap();
        assert_eq!(set.len(), n * n / 4);
        assert!(is_critical_set(&set, &back_circulant(n).unwrap()).unwrap(), "n = {n}");
    }
}

#[test]
fn dimensions_match_brute_force_on_latin_classes() {
    let lim = Limits::default();
    let two = latin_concept_class(2, &lim).unwrap();
    assert_eq!(two.len(), 2);
    assert_eq!(two.universe_len(), 8);
    assert_eq!(vc_dimension(&two, &lim).unwrap(), common::vc_bruteforce(8, two.concepts()));
    assert_eq!(
        shattered_sets(&two, None, &lim).unwrap().len(),
        common::shattered_count_bruteforce(8, two.concepts())
    );
    let three = latin_concept_class(3, &lim).unwrap();
    assert_eq!(vc_dimension(&three, &lim).unwrap(), 3);
    for (i, td) in teaching_dims(&three).into_iter().enumerate() {
        assert_eq!(td, common::td_bruteforce(27, three.concepts(), i));
    }
    let r = rtd(&three, &lim);
    assert!(!r.discrepancy);
    assert_eq!(Some(r.canonical), r.brute_force);
}

#[test]
fn random_classes_match_brute_force() {
    let lim = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let u = rng.random_range(1..=7);
        let concepts = common::random_class(u, 12, &mut rng);
        let class = ConceptClass::unlabelled(u, concepts.clone()).unwrap();
        assert_eq!(vc_dimension(&class, &lim).unwrap(), common::vc_bruteforce(u, &concepts));
        assert_eq!(
            shattered_sets(&class, None, &lim).unwrap().len(),
            common::shattered_count_bruteforce(u, &concepts)
        );
        let tds = teaching_dims(&class);
        for (i, &t) in tds.iter().enumerate() {
            assert_eq!(t, common::td_bruteforce(u, &concepts, i));
        }
        if concepts.len() <= 8 {
            assert_eq!(rtd(&class, &lim).canonical, common::rtd_bruteforce(u, &concepts));
        }
    }
}

#[test]
fn triangle_decompositions_biject_with_completions() {
    let lim = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 2..=4 {
        let all = common::latin_squares_rowwise(n);
        for _ in 0..40 {
            let p = common::random_partial(n, rng.random_range(0..n * n), &mut rng);
            let g = leave_graph(&p);
            let expected = common::extensions(&p, &all).len() as u64;
            assert_eq!(count_k3_decompositions(&g, Cap::Unbounded, &lim).unwrap(), expected);
            if let Some(d) = k3_decompose(&g, &lim).unwrap() {
                assert!(d.verify(&g));
            }
        }
    }
}

#[test]
fn log_values_match_big_integers() {
    for n in [1u64, 2, 5, 17, 120, 200] {
        let exact = ln_factorial(n);
        assert!(exact.exact);
        assert!((exact.ln - common::ln_factorial_sum(n)).abs() <= 1e-9 * exact.ln.max(1.0));
    }
    // exp round-trips for small values
    for v in [1u128, 12, 576, 161_280] {
        assert!((LogValue::of_count(v).exp() - v as f64).abs() <= 1e-9 * v as f64);
    }
    let n = 4u64;
    let direct = BigUint::from(24u32).pow(8);
    let lb = latin_lower_bound(n).unwrap();
    assert!((lb.ln - (ln_biguint(&direct) - 16.0 * 4f64.ln())).abs() < 1e-12);
    assert!((ln_biguint(&factorial(60)) - common::ln_factorial_sum(60)).abs() < 1e-9);
    let b = binomial(100, 50);
    assert!((ln_biguint(&b) - (common::ln_factorial_sum(100) - 2.0 * common::ln_factorial_sum(50))).abs() < 1e-9);
}

#[test]
fn lower_bound_brackets_latin_counts() {
    for (n, count) in [(1u64, 1f64), (2, 2.0), (3, 12.0), (4, 576.0), (5, 161_280.0)] {
        assert!(latin_lower_bound(n).unwrap().ln <= count.ln() + 1e-9);
    }
}

#[test]
fn upper_bound_brackets_partial_counts() {
    let lim = Limits::default();
    for n in 1..=4u64 {
        for (k, c) in partial_latin_counts(n as usize, &lim).unwrap().into_iter().enumerate() {
            assert!(partial_upper_bound(n, k as u64).unwrap().ln >= (c as f64).ln() - 1e-9, "n={n} k={k}");
        }
    }
}

#[test]
fn sauer_shelah_and_sum_of_partials_cover_latin_counts() {
    let lim = Limits::default();
    for n in 2..=3usize {
        let class = latin_concept_class(n, &lim).unwrap();
        let d = vc_dimension(&class, &lim).unwrap();
        let ln_l = (class.len() as f64).ln();
        assert!(ln_l <= sauer_shelah((n * n * n) as u64, d as u64).unwrap().ln + 1e-12);
        let counts = partial_latin_counts(n, &lim).unwrap();
        let sum = LogValue::sum(counts[..=d.min(n * n)].iter().map(|&c| LogValue::of_count(c)));
        assert!(sum.ln >= ln_l - 1e-12);
    }
}

#[test]
fn vc_threshold_scan() {
    let small = vc_threshold(2).unwrap();
    assert!(small.closed_form < 0.0);
    assert!(!small.regime_reached);
    let t = vc_threshold(100).unwrap();
    assert!((t.closed_form - (1e4 - 1.1f64.exp() * 100f64.powf(5.0 / 3.0))).abs() < 1e-9);
    assert!(t.regime_reached && t.covers_closed_form);
    let k = t.k_star.unwrap();
    let target = latin_lower_bound(100).unwrap().ln - 2.0 * 100f64.ln();
    assert!(partial_upper_bound(100, k).unwrap().ln < target);
    assert!(k == 10_000 || partial_upper_bound(100, k + 1).unwrap().ln >= target);
    assert!(vc_threshold(1000).unwrap().covers_closed_form);
    assert!(vc_lower_closed_form(1000.0) > 0.0);
}

#[test]
fn empty_partial_square_has_every_completion() {
    for (n, count) in [(1, 1), (2, 2), (3, 12), (4, 576)] {
        assert_eq!(count_completions(&PartialLatinSquare::empty(n).unwrap(), Cap::Unbounded), count);
    }
}
