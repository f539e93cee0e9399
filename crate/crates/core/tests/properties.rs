use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use ratlimit::numerics::{self, AxisLine};
use ratlimit::witness::{certificate_bound, child_exponents};
use ratlimit::{
    build_certificate, check_certificate, decide, expr, find_nonexistence_witness, generalize,
    royal_path, sigma, weights, Certificate, GeneralizedProfile, NonexistenceWitness, Profile,
    Verdict,
};

fn rational() -> impl Strategy<Value = BigRational> {
    (1i64..=20, 1i64..=20).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn profile(n: std::ops::RangeInclusive<usize>, max_m: u32, max_a: u32) -> impl Strategy<Value = Profile> {
    n.prop_flat_map(move |n| {
        (
            prop::collection::vec(0..=max_a, n),
            prop::collection::vec(1..=max_m, n),
            prop::collection::vec(rational(), n),
        )
    })
    .prop_map(|(a, m, c)| Profile::new(a, m, c).unwrap())
}

/// Independent fraction sum: common denominator prod(2m_i) in i128, reduced by gcd.
fn sigma_oracle(a: &[u32], m: &[u32]) -> (i128, i128) {
    let den: i128 = m.iter().map(|&mi| 2 * mi as i128).product();
    let num: i128 = a
        .iter()
        .zip(m)
        .map(|(&ai, &mi)| ai as i128 * (den / (2 * mi as i128)))
        .sum();
    let g = num.gcd(&den);
    (num / g, den / g)
}

fn unit_profile(gp: &GeneralizedProfile) -> Profile {
    Profile::with_unit_coefficients(gp.integer_exponents().unwrap(), gp.m().to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sigma_matches_independent_fractions(p in profile(1..=5, 6, 12)) {
        let (num, den) = sigma_oracle(p.a(), p.m());
        let s = decide(&p).sigma;
        prop_assert_eq!(s.numer().to_i128().unwrap(), num);
        prop_assert_eq!(s.denom().to_i128().unwrap(), den);
        prop_assert_eq!(&sigma(&generalize(&p)), &s);
    }

    #[test]
    fn verdict_ignores_coefficients(p in profile(1..=4, 5, 12), c in prop::collection::vec(rational(), 4)) {
        let replaced = p.with_coefficients(c[..p.n()].to_vec()).unwrap();
        let (d0, d1) = (decide(&p), decide(&replaced));
        prop_assert_eq!(&d0.sigma, &d1.sigma);
        prop_assert_eq!(d0.verdict, d1.verdict);
        prop_assert_eq!(d0.limit_value.is_some(), d1.limit_value.is_some());
        if d1.verdict == Verdict::LimitOne {
            prop_assert_eq!(d1.limit_value.unwrap() * &replaced.c()[0], BigRational::one());
        }
    }

    #[test]
    fn path_exponent_sign_matches_criterion(p in profile(1..=4, 5, 12)) {
        let gp = generalize(&p);
        let w = weights(&gp);
        for (pi, &mi) in w.p_vec.iter().zip(p.m()) {
            prop_assert_eq!(pi * mi, w.p.clone());
        }
        let path = royal_path(&gp, &vec![BigRational::one(); p.n()]).unwrap();
        let s = sigma(&gp);
        // e = 2p(sigma - 1)
        let two_p = BigRational::from_integer(BigInt::from(w.p.clone()) * 2);
        prop_assert_eq!(BigRational::from_integer(path.e.clone()), two_p * (&s - BigRational::one()));
        prop_assert_eq!(path.e.signum(), (s.clone() - BigRational::one()).signum().to_integer());
    }

    #[test]
    fn single_variable_trichotomy(a in 0u32..20, m in 1u32..6) {
        let p = Profile::with_unit_coefficients(vec![a], vec![m]).unwrap();
        let expected = match a.cmp(&(2 * m)) {
            std::cmp::Ordering::Less => Verdict::NoLimit,
            std::cmp::Ordering::Equal => Verdict::LimitOne,
            std::cmp::Ordering::Greater => Verdict::LimitZero,
        };
        prop_assert_eq!(decide(&p).verdict, expected);
    }

    #[test]
    fn rescaling_recovers_coefficients(p in profile(1..=4, 4, 5)) {
        let beta = ratlimit::rescale_factors::<f64>(&p);
        for ((b, ci), &mi) in beta.iter().zip(p.c()).zip(p.m()) {
            let c = ci.to_f64().unwrap();
            prop_assert!((b.powi(2 * mi as i32) - c).abs() <= 1e-12, "beta {} c {}", b, c);
        }
    }

    #[test]
    fn royal_path_identity(p in profile(2..=3, 4, 10), lam in prop::collection::vec(rational(), 3)) {
        let gp = generalize(&p);
        let unit = unit_profile(&gp);
        let path = royal_path(&gp, &lam[..p.n()]).unwrap();
        let g = path.g_lambda.to_f64().unwrap();
        let e = path.e.to_i32().unwrap();
        for k in 0..=20 {
            let t = 0.5f64.powi(k);
            let along: f64 = numerics::eval_along_path(&unit, &path, t).unwrap();
            let expected = g * t.powi(e);
            if !expected.is_normal() {
                continue;
            }
            prop_assert!(((along - expected) / expected).abs() <= 1e-9, "t {} got {} expected {}", t, along, expected);
        }
    }

    #[test]
    fn existence_evidence_is_complete(p in profile(2..=4, 4, 10)) {
        let gp = generalize(&p);
        let exists = sigma(&gp) > BigRational::one();
        prop_assert_eq!(build_certificate(&gp).is_ok(), exists);
        prop_assert_eq!(find_nonexistence_witness(&gp).is_ok(), !exists);
    }

    #[test]
    fn witnesses_are_sound(p in profile(2..=3, 4, 4)) {
        let gp = generalize(&p);
        prop_assume!(sigma(&gp) <= BigRational::one());
        let unit = unit_profile(&gp);
        match find_nonexistence_witness(&gp).unwrap() {
            NonexistenceWitness::Divergent { path } => {
                prop_assert!(path.e.is_negative());
                prop_assert!(path.g_lambda.is_positive());
                let mut last = 0.0f64;
                for k in 0..12 {
                    let v: f64 = numerics::eval_along_path(&unit, &path, 0.5f64.powi(k)).unwrap();
                    if v.is_infinite() {
                        break;
                    }
                    prop_assert!(v > last);
                    last = v;
                }
            }
            NonexistenceWitness::PathDependent { path_a, path_b, value_a, value_b } => {
                prop_assert!(path_a.e.is_zero() && path_b.e.is_zero());
                prop_assert_eq!(&path_a.weights, &path_b.weights);
                prop_assert_ne!(&value_a, &value_b);
                prop_assert_eq!(&value_a, &path_a.g_lambda);
                prop_assert_eq!(&value_b, &path_b.g_lambda);
            }
        }
    }

    #[test]
    fn certificates_check_and_bound(p in profile(1..=4, 4, 10), xs in prop::collection::vec(prop::collection::vec(1e-6f64..=1.0, 4), 50)) {
        let gp = generalize(&p);
        prop_assume!(sigma(&gp) > BigRational::one());
        let cert = build_certificate(&gp).unwrap();
        prop_assert!(cert.depth() <= gp.n());
        prop_assert_eq!(check_certificate(&gp, &cert), Ok(()));
        for x in xs {
            let x = &x[..gp.n()];
            let f: f64 = numerics::eval_generalized(&gp, x).unwrap();
            let bound: f64 = certificate_bound(&gp, &cert, x).unwrap();
            prop_assert!(f.abs() <= bound + 1e-12, "x {:?} f {} bound {}", x, f, bound);
        }
    }

    #[test]
    fn inductive_children_keep_the_criterion(p in profile(2..=4, 4, 10)) {
        let gp = generalize(&p);
        prop_assume!(sigma(&gp) > BigRational::one());
        if let Certificate::Inductive { j, child_d, .. } = build_certificate(&gp).unwrap() {
            prop_assert_eq!(&child_d, &child_exponents(&gp, j));
            let rest: BigRational = gp
                .d()
                .iter()
                .zip(gp.m())
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, (di, &mi))| di / BigRational::from_integer((2 * mi).into()))
                .fold(BigRational::zero(), |acc, x| acc + x);
            let shrink = BigRational::one() - &gp.d()[j] / gp.degree(j);
            let child_sigma: BigRational = child_d
                .iter()
                .zip(gp.m().iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &mi)| mi))
                .map(|(di, mi)| di / BigRational::from_integer((2 * mi).into()))
                .fold(BigRational::zero(), |acc, x| acc + x);
            prop_assert_eq!(&child_sigma, &(rest / shrink));
            prop_assert!(child_sigma > BigRational::one());
        }
    }

    #[test]
    fn closed_form_line_maximum(p in profile(2..=3, 4, 7), rest in prop::collection::vec(0.05f64..=2.0, 2)) {
        let gp = generalize(&p);
        let Some(j) = (0..gp.n()).find(|&j| gp.d()[j].is_positive() && gp.d()[j] < gp.degree(j)) else {
            return Ok(());
        };
        let x_rest = &rest[..gp.n() - 1];
        let t_star: f64 = numerics::line_max_point(&gp, j, x_rest).unwrap();
        let value: f64 = numerics::line_max_value(&gp, j, x_rest).unwrap();
        let line = AxisLine::new(&gp, j, x_rest).unwrap();
        prop_assert!(((line.phi(t_star) - value) / value).abs() <= 1e-12);
        let eps = 1e-6;
        prop_assert!(line.phi(t_star + eps) <= value * (1.0 + 1e-14));
        prop_assert!(line.phi((t_star - eps).max(0.0)) <= value * (1.0 + 1e-14));
        // dense grid in [0, 4 t*]
        let grid_max = (0..=20_000)
            .map(|k| line.phi(4.0 * t_star * k as f64 / 20_000.0))
            .fold(0.0f64, f64::max);
        prop_assert!(grid_max <= value * (1.0 + 1e-12));
        prop_assert!((value - grid_max) / value <= 1e-6);
        prop_assert_eq!(line.phi(0.0), 0.0);
        prop_assert!(line.phi(1e6) < value);
    }

    #[test]
    fn derivative_bound_holds(p in profile(2..=3, 4, 8), x in prop::collection::vec(-1.0f64..=1.0, 3)) {
        prop_assume!(p.a().iter().all(|&ai| ai >= 1));
        let x = &x[..p.n()];
        prop_assume!(x.iter().any(|xi| xi.abs() > 1e-3));
        for j in 0..p.n() {
            let d: f64 = numerics::partial_derivative(&p, j, x).unwrap();
            let b: f64 = numerics::partial_derivative_bound(&p, j, x).unwrap();
            prop_assert!(d.abs() <= b + 1e-12, "j {} d {} b {}", j, d, b);
        }
    }

    #[test]
    fn analytic_and_numeric_gradients_agree(p in profile(2..=3, 3, 6), x in prop::collection::vec(0.2f64..=1.0, 3), signs in prop::collection::vec(any::<bool>(), 3)) {
        let x: Vec<f64> = x.iter().zip(&signs).take(p.n()).map(|(v, &s)| if s { *v } else { -v }).collect();
        let numeric = numerics::numeric_gradient(&p, &x, 1e-5).unwrap();
        let analytic: Vec<f64> = (0..p.n()).map(|j| numerics::partial_derivative(&p, j, &x).unwrap()).collect();
        let scale = analytic.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        prop_assume!(scale > 1e-8);
        for (a, n) in analytic.iter().zip(&numeric) {
            prop_assert!((a - n).abs() <= 1e-5 * scale, "analytic {:?} numeric {:?}", analytic, numeric);
        }
    }

    #[test]
    fn format_then_parse_is_identity(p in profile(1..=6, 8, 12)) {
        let text = expr::format(&p);
        prop_assert_eq!(expr::parse(&text).unwrap(), p);
    }

    #[test]
    fn spaces_do_not_matter(p in profile(1..=4, 5, 6)) {
        let text = expr::format(&p);
        let squeezed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let spread = squeezed
            .replace('*', " * ")
            .replace('+', "  +  ")
            .replace('(', " ( ")
            .replace(')', " ) ")
            .replace('^', " ^ ");
        prop_assert_eq!(expr::parse(&squeezed).unwrap(), expr::parse(&spread).unwrap());
    }
}

#[test]
fn probe_agrees_with_decision_on_small_profiles() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let radii = numerics::geometric_radii(1e-1, 1e-6, 11);
    let cfg = ratlimit::ProbeConfig::default();
    for _ in 0..40 {
        let n = rng.gen_range(2..=3);
        let a = (0..n).map(|_| rng.gen_range(0..=10)).collect();
        let m = (0..n).map(|_| rng.gen_range(1..=4)).collect();
        let p = Profile::with_unit_coefficients(a, m).unwrap();
        let rep = numerics::limit_probe(&p, &radii, 512, 42, &cfg).unwrap();
        let verdict = decide(&p).verdict;
        use ratlimit::Trend::*;
        match rep.trend_verdict {
            TendsToZero => assert_eq!(verdict, Verdict::LimitZero, "{p:?}"),
            Diverges | BoundedAway => assert_eq!(verdict, Verdict::NoLimit, "{p:?}"),
            Inconclusive => {}
        }
    }
}

#[test]
fn probe_is_deterministic() {
    let p = expr::parse("x^3*y^2*z/(x^4 + y^12 + z^14)").unwrap();
    let radii = numerics::geometric_radii(1e-1, 1e-6, 11);
    let cfg = ratlimit::ProbeConfig::default();
    let a = numerics::limit_probe(&p, &radii, 300, 9, &cfg).unwrap();
    let b = numerics::limit_probe(&p, &radii, 300, 9, &cfg).unwrap();
    assert_eq!(a, b);
    let sampled_only = ratlimit::ProbeConfig {
        inject_royal_path: false,
        ..cfg
    };
    let c = numerics::limit_probe(&p, &radii, 300, 9, &sampled_only).unwrap();
    let d = numerics::limit_probe(&p, &radii, 300, 10, &sampled_only).unwrap();
    assert_ne!(c.sup_estimates, d.sup_estimates);
}

#[test]
fn single_precision_evaluation() {
    let p = expr::parse("x*y^3/(x^2 + y^4)").unwrap();
    let v: f32 = numerics::eval_f(&p, &[0.25f32, 0.5]).unwrap();
    assert!((v - 0.25).abs() < 1e-6);
    let gp = generalize(&p);
    let t: f32 = numerics::line_max_point(&gp, 0, &[0.5f32]).unwrap();
    assert!((t - 0.25).abs() < 1e-6);
    let cert = build_certificate(&gp).unwrap();
    let b: f32 = certificate_bound(&gp, &cert, &[0.25f32, 0.5]).unwrap();
    assert!((b - 0.25).abs() < 1e-6);
}
