mod common;

use common::*;
use lipfree::{Element, Operator};
use num_complex::Complex;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random operator between spaces of the given sizes; half of the draws use
/// real weights, and a few weights are zeroed to exercise `coz(w)`.
fn operator(seed: u64, m: usize, n: usize, real: bool) -> Operator {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let (dm, dn) = (random_space(&mut r, m), random_space(&mut r, n));
    let f: Vec<usize> = (0..m).map(|_| r.gen_range(0..n)).collect();
    let mut w: Vec<Complex<f64>> = (0..m)
        .map(|_| {
            if r.gen_bool(0.15) {
                Complex::default()
            } else if real {
                Complex::new(r.gen_range(-3.0..3.0), 0.0)
            } else {
                Complex::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0))
            }
        })
        .collect();
    if f[0] != 0 {
        w[0] = Complex::default();
    }
    Operator::new(dm, dn, f, w).unwrap()
}

proptest! {
    #[test]
    fn pair_statistic_chains(seed in any::<u64>(), m in 2usize..7, n in 1usize..7, real in any::<bool>()) {
        let op = operator(seed, m, n, real);
        for x in 0..m {
            for y in 0..m {
                if x == y {
                    continue;
                }
                let s = op.pair_stats(x, y).unwrap();
                let bmax = s.b_xy.max(s.b_yx);
                let tol = 1e-12 * (1.0 + s.a + bmax + s.sigma + s.tau);
                prop_assert!(s.sigma <= 2.0 * (s.a + bmax) + tol);
                prop_assert!(s.tau <= s.a + s.sigma + tol);
                prop_assert!(s.a <= s.sigma + s.tau + tol);
                prop_assert!(bmax <= s.a + 2.0 * s.sigma + tol);
                // Triangle-inequality domination by the N1 and N2 summands.
                prop_assert!(s.a <= (s.n1_x + s.n2_y).min(s.n1_y + s.n2_x) + tol);
                prop_assert!(s.b_xy <= s.n2_x + s.n1_y + tol);
                prop_assert!(s.s_xy || s.s_yx);
            }
        }
    }

    #[test]
    fn real_operator_norm_is_pair_maximum(seed in any::<u64>(), m in 2usize..6, n in 1usize..5) {
        let op = operator(seed, m, n, true);
        let rep = op.boundedness_report();
        let norm = op.operator_norm(64).unwrap();
        prop_assert!(norm.bracket.is_exact());
        let target = rep.a.value.max(rep.b.value);
        prop_assert!((norm.bracket.hi - target).abs() <= 1e-9 * (1.0 + target));
        let by_vertices = lip0_operator_norm_by_vertices(&op);
        prop_assert!((norm.bracket.hi - by_vertices).abs() <= 1e-9 * (1.0 + target));
    }

    #[test]
    fn complex_operator_norm_within_sound_bounds(seed in any::<u64>(), m in 2usize..5, n in 2usize..5) {
        let op = operator(seed, m, n, false);
        let rep = op.boundedness_report();
        let norm = op.operator_norm(32).unwrap().bracket;
        let t = rep.a.value.max(rep.b.value);
        let tol = 1e-9 * (1.0 + t);
        prop_assert!(norm.lo <= norm.hi);
        prop_assert!(norm.lo >= t - tol && norm.hi <= 2.0 * t + tol, "{:?} vs {}", norm, t);
    }

    #[test]
    fn adjoint_identity(seed in any::<u64>(), m in 2usize..7, n in 2usize..7, real in any::<bool>(), g in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 6)) {
        let op = operator(seed, m, n, real);
        let mat = op.composition_matrix();
        let coords: Vec<Complex<f64>> = (0..n - 1).map(|i| Complex::new(g[i].0, g[i].1)).collect();
        let image = mat.mul_vec(&coords);
        // g as a function on N vanishing at the base point.
        let full = |z: usize| if z == 0 { Complex::default() } else { coords[z - 1] };
        let composed = op.compose(&(0..n).map(full).collect::<Vec<_>>());
        for x in 1..m {
            prop_assert!((image[x - 1] - composed[x]).norm() <= 1e-12);
            let delta = Element::delta(op.domain(), x).unwrap();
            let lhs = delta.pair_with(|p| if p == 0 { Complex::default() } else { image[p - 1] });
            let rhs = op.apply(&delta).unwrap().pair_with(full);
            prop_assert!((lhs - rhs).norm() <= 1e-12);
        }
    }

    #[test]
    fn injectivity_and_surjectivity_agree_with_rank(seed in any::<u64>(), m in 1usize..6, n in 1usize..6, real in any::<bool>()) {
        let op = operator(seed, m, n, real);
        let rows: Vec<Vec<Complex<f64>>> = (1..m)
            .map(|x| (1..n).map(|z| if op.f()[x] == z { op.w()[x] } else { Complex::default() }).collect())
            .collect();
        let rank = complex_rank(rows);
        let inj = op.injectivity_report();
        let sur = op.surjectivity_report();
        prop_assert!(inj.rank_agrees && sur.rank_agrees);
        prop_assert_eq!(inj.injective, rank == n - 1);
        prop_assert_eq!(sur.surjective, rank == m - 1);
    }

    #[test]
    fn inverse_norm_from_surjectivity_sups(seed in any::<u64>(), n in 2usize..6, w in prop::collection::vec(0.2f64..3.0, 6), signs in prop::collection::vec(any::<bool>(), 6)) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (dm, dn) = (random_space(&mut r, n), random_space(&mut r, n));
        let mut perm: Vec<usize> = (1..n).collect();
        for i in (1..perm.len()).rev() {
            perm.swap(i, r.gen_range(0..=i));
        }
        let f: Vec<usize> = std::iter::once(0).chain(perm).collect();
        let weights: Vec<Complex<f64>> = (0..n)
            .map(|x| Complex::new(if signs[x] { w[x] } else { -w[x] }, 0.0))
            .collect();
        let op = Operator::new(dm.clone(), dn.clone(), f.clone(), weights.clone()).unwrap();
        let sur = op.surjectivity_report();
        prop_assert!(sur.surjective);
        let expected = sur.sup_first.unwrap().max(sur.sup_second.unwrap());
        // Inverse: δ(f(x)) ↦ δ(x)/w(x), with 1/w(0) read as 0.
        let mut g = vec![0; n];
        let mut v = vec![Complex::default(); n];
        for x in 0..n {
            g[f[x]] = x;
            if x != 0 {
                v[f[x]] = Complex::new(1.0 / weights[x].re, 0.0);
            }
        }
        let inverse = Operator::new(dn, dm, g, v).unwrap();
        let actual = inverse.operator_norm(64).unwrap().bracket.hi;
        prop_assert!((actual - expected).abs() <= 1e-9 * (1.0 + actual), "{} vs {}", actual, expected);
    }
}

#[test]
fn f32_matches_f64() {
    let mut r = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let op = {
            let seed = r.gen();
            operator(seed, 4, 4, true)
        };
        let single = lipfree::Operator32::new(
            std::sync::Arc::new(op.domain().cast()),
            std::sync::Arc::new(op.codomain().cast()),
            op.f().to_vec(),
            op.w().iter().map(|c| Complex::new(c.re as f32, c.im as f32)).collect(),
        )
        .unwrap();
        let (a, b) = (
            op.operator_norm(16).unwrap().bracket.hi,
            single.operator_norm(16).unwrap().bracket.hi as f64,
        );
        assert!((a - b).abs() <= 1e-4 * (1.0 + a), "{a} vs {b}");
    }
}
