use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wrapeffect::affine::aff_mat_vec_add;
use wrapeffect::interval::next_up;
use wrapeffect::{toy, AffineForm, AffineVector, Interval, IntervalVector, Matrix};

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn ulp(x: f64) -> f64 {
    next_up(x.abs()) - x.abs()
}

fn contains(iv: Interval, v: &BigRational) -> bool {
    rat(iv.lo()) <= *v && *v <= rat(iv.hi())
}

/// Exact value of `f` for the symbol assignment `eps` (error term at 0).
fn exact_value(f: &AffineForm, eps: &[f64]) -> BigRational {
    f.terms().iter().fold(rat(f.center()), |acc, &(s, c)| {
        acc + rat(c) * rat(eps[s as usize])
    })
}

fn random_box(rng: &mut ChaCha8Rng, d: usize) -> IntervalVector {
    (0..d)
        .map(|_| {
            let lo: f64 = rng.random_range(-20.0..20.0);
            Interval::new(lo, lo + rng.random_range(0.0..3.0)).unwrap()
        })
        .collect()
}

#[test]
fn lifting_the_toy_box() {
    let x = AffineVector::from_box(&toy::x0()).unwrap();
    let f = x.forms();
    assert_eq!(f[0].center(), 0.0);
    assert!(f[0].terms().is_empty());
    assert_eq!(f[1].center(), 1.05);
    assert_eq!(f[1].terms().len(), 1);
    assert_eq!(f[1].terms()[0].0, 0);
    assert!((f[1].terms()[0].1 - 0.05).abs() <= f64::EPSILON);
    assert!(f[1].err() <= ulp(1.1));
}

#[test]
fn lifting_a_degenerate_box() {
    let x = AffineVector::from_box(&IntervalVector::from_points(&[3.0, -0.7]).unwrap()).unwrap();
    for f in x.forms() {
        assert!(f.terms().is_empty());
        assert!(f.err() <= ulp(f.center()));
    }
    assert_eq!(x.symbol_count(), 0);
}

#[test]
fn lifting_rejects_unbounded_boxes() {
    let x = IntervalVector::from_bounds(&[(0.0, f64::INFINITY)]).unwrap();
    assert!(AffineVector::from_box(&x).is_err());
}

#[test]
fn boxes_of_simple_forms() {
    let f = AffineForm::new(14.1, [(0, 0.0705)], 0.0).unwrap();
    let iv = f.to_interval();
    assert!(iv.lo() <= 14.0295 && iv.hi() >= 14.1705);
    let z = AffineForm::constant(0.0).to_interval();
    assert_eq!((z.lo(), z.hi()), (0.0, 0.0));
}

#[test]
fn identity_step_keeps_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let d = 4;
    let x = AffineVector::from_box(&random_box(&mut rng, d)).unwrap();
    let zero =
        AffineVector::from_box(&IntervalVector::from_points(&vec![0.0; d]).unwrap()).unwrap();
    let y = aff_mat_vec_add(&Matrix::identity(d), &x, &zero).unwrap();
    for (fx, fy) in x.forms().iter().zip(y.forms()) {
        assert_eq!(fx.center(), fy.center());
        assert_eq!(fx.terms(), fy.terms());
        assert!(fy.err() - fx.err() <= d as f64 * ulp(fx.radius() + fx.center().abs()));
    }
}

#[test]
fn one_toy_step_covers_the_corners() {
    let x = AffineVector::from_box(&toy::x0()).unwrap();
    let b = AffineVector::from_box_after(&toy::b(), x.next_symbol()).unwrap();
    let a = toy::matrix();
    let out = aff_mat_vec_add(&a, &x, &b).unwrap().to_box();
    let (x0, bb) = (toy::x0(), toy::b());
    // every corner of x0 × b, pushed through the exact map
    for mask in 0..16u32 {
        let pick = |iv: Interval, bit: u32| {
            if mask >> bit & 1 == 1 {
                iv.hi()
            } else {
                iv.lo()
            }
        };
        let xs = [pick(x0[0], 0), pick(x0[1], 1)];
        let bs = [pick(bb[0], 2), pick(bb[1], 3)];
        for i in 0..2 {
            let v = rat(a[(i, 0)]) * rat(xs[0]) + rat(a[(i, 1)]) * rat(xs[1]) + rat(bs[i]);
            assert!(contains(out[i], &v), "component {i}, corner {mask}");
        }
    }
    assert!(out[0].lo() <= 1.0 && out[0].hi() >= 1.1);
}

#[test]
fn condense_extremes() {
    let f = AffineForm::new(2.0, [(0, 0.5), (1, -0.25), (2, 0.125)], 0.01).unwrap();
    let x = AffineVector::from_forms(vec![f.clone()]).unwrap();
    assert_eq!(x.condense(None), x);
    let c = f.condense(0);
    assert!(c.terms().is_empty());
    assert_eq!(c.err(), 0.01 + 0.5 + 0.25 + 0.125);
    let c = f.condense(1);
    assert_eq!(c.terms(), &[(0, 0.5)]);
    assert!(f.to_interval().subset(c.to_interval()));
}

#[test]
fn error_terms_become_symbols() {
    let f = AffineForm::new(1.0, [(0, 0.5)], 0.125).unwrap();
    let g = AffineForm::new(0.0, [(1, 0.25)], 0.0).unwrap();
    let x = AffineVector::from_forms(vec![f, g]).unwrap();
    let y = x.errors_to_symbols();
    assert_eq!(y.forms()[0].err(), 0.0);
    assert_eq!(y.forms()[0].terms(), &[(0, 0.5), (2, 0.125)]);
    assert_eq!(y.forms()[1], x.forms()[1]);
    assert_eq!(y.next_symbol(), 3);
    assert_eq!(y.to_box(), x.to_box());
}

#[test]
fn symbol_count_is_constant_without_fresh_symbols() {
    let x0 = AffineVector::from_box(&toy::x0()).unwrap();
    let b = AffineVector::from_box_after(&toy::b(), x0.next_symbol()).unwrap();
    let a = toy::matrix();
    let expected = x0.symbol_count() + b.symbol_count();
    let mut x = aff_mat_vec_add(&a, &x0, &b).unwrap();
    for _ in 0..200 {
        assert_eq!(x.symbol_count(), expected);
        x = aff_mat_vec_add(&a, &x, &b).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn lifted_boxes_cover_the_input(seed in any::<u64>(), d in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_box(&mut rng, d);
        let back = AffineVector::from_box(&x).unwrap().to_box();
        for (orig, got) in x.iter().zip(back.iter()) {
            prop_assert!(orig.subset(*got));
            let slack = 2.0 * ulp(orig.lo().abs().max(orig.hi().abs()));
            prop_assert!(got.rad() - orig.rad() <= slack);
        }
    }

    /// Small-integer data make every float operation exact, so the
    /// coefficients must equal the rational product `A · C` and `err` stays 0.
    #[test]
    fn coefficients_follow_the_linear_map(seed in any::<u64>(), d in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Matrix::from_fn(d, d, |_, _| rng.random_range(-4..=4) as f64);
        let forms: Vec<AffineForm> = (0..d)
            .map(|_| {
                let terms: Vec<(u32, f64)> = (0..d as u32)
                    .map(|s| (s, rng.random_range(-8..=8) as f64))
                    .collect();
                AffineForm::new(rng.random_range(-8..=8) as f64, terms, 0.0).unwrap()
            })
            .collect();
        let x = AffineVector::from_forms(forms).unwrap();
        let b = AffineVector::from_box(&IntervalVector::from_points(&vec![0.0; d]).unwrap()).unwrap();
        let y = aff_mat_vec_add(&a, &x, &b).unwrap();
        for i in 0..d {
            let coef = |f: &AffineForm, s: u32| {
                f.terms().iter().find(|t| t.0 == s).map_or(0.0, |t| t.1)
            };
            for s in 0..d as u32 {
                let want = (0..d).fold(BigRational::zero(), |acc, j| {
                    acc + rat(a[(i, j)]) * rat(coef(&x.forms()[j], s))
                });
                prop_assert_eq!(rat(coef(&y.forms()[i], s)), want);
            }
            prop_assert_eq!(y.forms()[i].err(), 0.0);
        }
    }

    /// Real trajectories of `x ← A x + b`, started from sampled symbol values,
    /// stay inside every intermediate box, with or without condensation and
    /// error-to-symbol conversion.
    #[test]
    fn iterates_contain_real_trajectories(seed in any::<u64>(), d in 1usize..5, keep in 0usize..4, fresh in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Matrix::from_fn(d, d, |_, _| rng.random_range(-0.6..0.6));
        let x0 = AffineVector::from_box(&random_box(&mut rng, d)).unwrap();
        let b = AffineVector::from_box_after(&random_box(&mut rng, d), x0.next_symbol()).unwrap();
        let nsym = b.next_symbol() as usize;
        let samples: Vec<Vec<f64>> = (0..20)
            .map(|_| (0..nsym).map(|_| rng.random_range(-1.0..=1.0)).collect())
            .collect();
        let mut states: Vec<Vec<BigRational>> = samples
            .iter()
            .map(|eps| x0.forms().iter().map(|f| exact_value(f, eps)).collect())
            .collect();
        let bvals: Vec<Vec<BigRational>> = samples
            .iter()
            .map(|eps| b.forms().iter().map(|f| exact_value(f, eps)).collect())
            .collect();
        let mut x = x0;
        for _ in 0..15 {
            x = aff_mat_vec_add(&a, &x, &b).unwrap();
            if fresh {
                x = x.errors_to_symbols();
            }
            x = x.condense(Some(keep + 1));
            let bx = x.to_box();
            for (state, bv) in states.iter_mut().zip(&bvals) {
                let next: Vec<BigRational> = (0..d)
                    .map(|i| {
                        (0..d).fold(bv[i].clone(), |acc, j| acc + rat(a[(i, j)]) * &state[j])
                    })
                    .collect();
                *state = next;
                for i in 0..d {
                    prop_assert!(contains(bx[i], &state[i]));
                }
            }
        }
    }

    #[test]
    fn condensed_forms_cover_sampled_points(seed in any::<u64>(), keep in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let terms: Vec<(u32, f64)> = (0..6).map(|s| (s, rng.random_range(-2.0..2.0))).collect();
        let f = AffineForm::new(rng.random_range(-5.0..5.0), terms, rng.random_range(0.0..0.1)).unwrap();
        let c = f.condense(keep).to_interval();
        for _ in 0..200 {
            let eps: Vec<f64> = (0..6).map(|_| rng.random_range(-1.0..=1.0)).collect();
            let delta: f64 = rng.random_range(-1.0..=1.0);
            let v = exact_value(&f, &eps) + rat(delta) * rat(f.err());
            prop_assert!(contains(c, &v));
        }
    }
}
