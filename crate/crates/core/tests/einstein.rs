use superwarp::bundled;
use superwarp::einstein::*;
use superwarp::scalar::{parse_expr, DEFAULT_SEED};
use superwarp::warped::build_warped;
use superwarp::{Connection, RatFunc, SuperScalar, VectorField};

use BaseKind::{R10, R12};
use ConnectionChoice::{LeviCivita as Lc, SemiSymmetric as Ssnm};

fn ratfunc(src: &str) -> RatFunc {
    parse_expr(src).unwrap().to_ratfunc()
}

fn check(p: &EinsteinProblem, f: &SolutionFamily) -> superwarp::report::VerificationReport {
    residual_check(p, f, DEFAULT_SEED).unwrap()
}

#[test]
fn unit_difference_with_large_lambda0_is_trigonometric() {
    let c = classify(&EinsteinProblem::new(R10, Ssnm, 1).with_lambda0(2)).unwrap();
    assert_eq!(c.families.len(), 1);
    let f = &c.families[0];
    assert_eq!(f.tag, FamilyTag::Trigonometric);
    assert_eq!(f.h.to_ratfunc(), ratfunc("c1*cos(t) + c2*sin(t)"));
    assert!(f.side_conditions.iter().any(|s| s.contains("h h' - h^2")));
}

#[test]
fn unit_difference_with_lambda0_one_is_linear() {
    let c = classify(&EinsteinProblem::new(R10, Ssnm, 1).with_lambda0(1)).unwrap();
    assert_eq!(c.families.len(), 1);
    assert_eq!(c.families[0].tag, FamilyTag::Linear);
    assert_eq!(c.families[0].h.to_ratfunc(), ratfunc("c1 + c2*t"));
}

#[test]
fn unit_difference_families_solve_both_governing_equations() {
    let p = EinsteinProblem::new(R10, Ssnm, 1);
    let c = classify(&p).unwrap();
    assert_eq!(c.families.len(), 3);
    for f in &c.families {
        let r = check(&p, f);
        for rec in r.records.iter().filter(|r| r.check_id.contains("governing")) {
            assert!(rec.pass, "{} {}", rec.check_id, rec.residual);
        }
    }
}

#[test]
fn hh_prime_minus_h_squared_is_not_constant_on_generic_families() {
    let p = EinsteinProblem::new(R10, Ssnm, 1).with_lambda0(0);
    let f = &classify(&p).unwrap().families[0];
    let r = check(&p, f);
    let rec = r.records.iter().find(|r| r.check_id.ends_with("fiber-constant")).unwrap();
    assert!(!rec.pass);
    assert_eq!(f.kappa().diff("t"), ratfunc("4*c2^2*exp(-2*t)"));
}

#[test]
fn perturbed_family_fails() {
    let p = EinsteinProblem::new(R10, Ssnm, 1).with_lambda0(0);
    let mut f = classify(&p).unwrap().families[0].clone();
    f.h = parse_expr("c1*exp(2*t)").unwrap();
    let r = check(&p, &f);
    let tt = r.records.iter().find(|r| r.check_id.ends_with("governing-tt")).unwrap();
    assert!(!tt.pass);
    assert!(r.records.iter().any(|r| r.check_id.ends_with("einstein") && !r.pass));
}

#[test]
fn other_differences_give_exponential_and_constant_families() {
    for l in [2, 3, -1] {
        let p = EinsteinProblem::new(R10, Ssnm, l);
        let c = classify(&p).unwrap();
        let tags: Vec<_> = c.families.iter().map(|f| f.tag).collect();
        assert_eq!(tags, [FamilyTag::Exponential, FamilyTag::Constant], "l = {l}");
        assert_eq!(c.families[0].h.to_ratfunc(), ratfunc("c1*exp(t)"));
        assert_eq!(
            c.families[1].h.to_ratfunc(),
            RatFunc::sqrt(&ratfunc(&format!("lambdaN/({l})")))
        );
        for f in &c.families {
            let r = check(&p, f);
            assert!(r.all_pass(), "l = {l}: {:?}", r.failures().next());
        }
    }
}

#[test]
fn exponential_family_at_zero_lambda0() {
    let c = classify(&EinsteinProblem::new(R10, Ssnm, 3).with_lambda0(0)).unwrap();
    assert_eq!(c.families.len(), 1);
    assert_eq!(c.families[0].tag, FamilyTag::Exponential);
    assert!(c.families[0].fiber_constant.to_ratfunc().is_zero());
}

#[test]
fn equal_dimensions_force_zero_lambda0() {
    let p = EinsteinProblem::new(R10, Ssnm, 0);
    let c = classify(&p).unwrap();
    assert_eq!(c.families.len(), 1);
    assert!(check(&p, &c.families[0]).all_pass());
    assert!(classify(&p.clone().with_lambda0(1)).unwrap().families.is_empty());
    let with_c0 = p.with_c0(3);
    let f = &classify(&with_c0).unwrap().families[0];
    assert!(check(&with_c0, f).all_pass());
}

#[test]
fn levi_civita_on_r12_covers_three_cases() {
    let c0 = classify(&EinsteinProblem::new(R12, Lc, 0).with_lambda0(0)).unwrap();
    assert_eq!(c0.families.len(), 1);
    assert!(c0.families[0].side_conditions.iter().any(|s| s == "h h'' - h'^2 = c0"));

    let c1 = classify(&EinsteinProblem::new(R12, Lc, 1)).unwrap();
    assert_eq!(c1.families[0].h.to_ratfunc(), ratfunc("c1*t + c2"));

    let c3 = classify(&EinsteinProblem::new(R12, Lc, 3)).unwrap();
    assert_eq!(c3.families.len(), 2);
    assert_eq!(c3.families[0].h.to_ratfunc(), ratfunc("sqrt(c0/2)*t + c2"));

    for l in [0, 1, 2, 3, -1] {
        let p = EinsteinProblem::new(R12, Lc, l);
        for f in &classify(&p).unwrap().families {
            let r = check(&p, f);
            assert!(r.all_pass(), "l = {l} {}: {:?}", f.case, r.failures().next());
        }
    }
}

#[test]
fn levi_civita_on_r12_with_hyperbolic_fiber() {
    let p = EinsteinProblem::new(R12, Lc, 2).with_c0(1);
    let c = classify(&p).unwrap();
    assert_eq!(c.families.len(), 2);
    for f in &c.families {
        assert!(matches!(test_fiber(2, &f.kappa()), TestFiber::Concrete(_)));
        assert!(check(&p, f).all_pass());
    }
    assert!(classify(&EinsteinProblem::new(R12, Lc, 2).with_c0(-1)).unwrap().families.is_empty());
    assert!(classify(&EinsteinProblem::new(R12, Lc, 2).with_lambda0(1)).unwrap().families.is_empty());
}

#[test]
fn semi_symmetric_on_r12_has_only_the_constant_family() {
    for l in [1, 2, 3, 5, -1, -3] {
        let c = classify(&EinsteinProblem::new(R12, Ssnm, l)).unwrap();
        assert!(c.families.is_empty(), "l = {l}");
        assert!(c.notes.iter().any(|n| n == "q - n + 2 != 0"));
    }
    let c = classify(&EinsteinProblem::new(R12, Ssnm, -2)).unwrap();
    assert_eq!(c.families.len(), 1);
    let f = &c.families[0];
    assert_eq!(f.tag, FamilyTag::Constant);
    assert!(f.lambda.to_ratfunc().is_zero());
    assert!(f.fiber_constant.to_ratfunc().is_zero());
}

#[test]
fn semi_symmetric_r12_constant_family_leaves_a_time_residual() {
    let p = EinsteinProblem::new(R12, Ssnm, -2);
    let f = &classify(&p).unwrap().families[0];
    let r = check(&p, f);
    let failures: Vec<_> = r.failures().collect();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0].tuple, "(d_t, d_t)");
    assert_eq!(failures[0].residual, "-4");
}

#[test]
fn degenerate_and_unsupported_parameters() {
    assert!(matches!(
        classify(&EinsteinProblem::new(R12, Ssnm, 0)),
        Err(superwarp::Error::Degenerate(_))
    ));
    assert!(matches!(
        classify(&EinsteinProblem::new(R10, Lc, 2)),
        Err(superwarp::Error::Unsupported(_))
    ));
}

#[test]
fn einstein_residual_on_r12_semi_symmetric() {
    let m = bundled::manifold("r12").unwrap().build().unwrap();
    let p = VectorField::frame(m.chart(), 0);
    let conn = Connection::semi_symmetric(&m, &p).unwrap();
    let res = einstein_residual(&m, &conn, &RatFunc::zero());
    for (i, row) in res.iter().enumerate() {
        for (j, r) in row.iter().enumerate() {
            if (i, j) == (0, 0) {
                assert_eq!(r, &SuperScalar::int(-2));
            } else {
                assert!(r.is_zero());
            }
        }
    }
}

#[test]
fn einstein_residual_of_flat_space_vanishes() {
    let m = bundled::manifold("flat22").unwrap().build().unwrap();
    let lc = Connection::levi_civita(&m).unwrap();
    assert!(einstein_residual(&m, &lc, &RatFunc::zero()).iter().flatten().all(SuperScalar::is_zero));
}

#[test]
fn r10_ricci_formulas_hold_on_bundled_products() {
    for name in ["r10_flat20", "r10_flat42", "r10_odd02", "r10_curved12"] {
        let w = build_warped(&bundled::warped(name).unwrap()).unwrap();
        if w.p().unwrap().factor.component(0) != &SuperScalar::one() {
            assert!(r10_ricci_check(&w, DEFAULT_SEED).is_err());
            continue;
        }
        let r = r10_ricci_check(&w, DEFAULT_SEED).unwrap();
        assert!(r.total() > 0);
        assert!(r.all_pass(), "{name}: {:?}", r.failures().next());
    }
}

#[test]
fn polynomial_warpings_are_never_einstein() {
    let f = polynomial_falsification(2, 0, 50, DEFAULT_SEED).unwrap();
    assert_eq!((f.samples, f.nonzero), (50, 50));
}

#[test]
fn square_root_constant_solves_the_reduced_equation() {
    for l in [2, 3, -1] {
        let ln = RatFunc::var("lambdaN");
        let h = RatFunc::sqrt(&ln.div(&RatFunc::int(l)));
        assert!(reduced_fiber_residual(l, &RatFunc::int(l), &ln, &h).is_zero());
    }
}

#[test]
fn elimination_system_has_only_the_trivial_solution() {
    for k in [0.3, 1.0, 1.7, -0.9, -2.5] {
        let out = elimination_check(k, false);
        assert!(out.unique_zero(1e-9), "{out:?}");
    }
}

#[test]
fn space_form_fibers_are_einstein() {
    for k in [-2, -1, 1, 3] {
        let TestFiber::Concrete(spec) = test_fiber(2, &RatFunc::int(k)) else {
            panic!("expected a concrete fiber for kappa = {k}");
        };
        let m = spec.build().unwrap();
        let lc = Connection::levi_civita(&m).unwrap();
        let res = einstein_residual(&m, &lc, &RatFunc::int(k));
        assert!(res.iter().flatten().all(SuperScalar::is_zero), "kappa = {k}");
    }
}

#[test]
fn literal_elimination_matrix_is_also_nonsingular() {
    for k in [0.3, 1.0, 1.7, -0.9, -2.5] {
        let out = elimination_check(k, true);
        assert!(out.unique_zero(1e-9), "{out:?}");
    }
}
