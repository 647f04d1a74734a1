use superwarp::bundled;
use superwarp::scalar::DEFAULT_SEED;
use superwarp::warped::{build_warped, closed_form, direct, verify_statement, Arg, Statement, Value, WarpedProduct};
use superwarp::{Error, RatFunc, SuperScalar, VectorField};

fn product(name: &str) -> WarpedProduct {
    build_warped(&bundled::warped(name).unwrap()).unwrap()
}

fn base_frame(w: &WarpedProduct, i: usize) -> Arg {
    Arg::Base(VectorField::frame(w.base().chart(), i))
}

fn fiber_frame(w: &WarpedProduct, i: usize) -> Arg {
    Arg::Fiber(VectorField::frame(w.fiber().chart(), i))
}

#[test]
fn every_statement_holds_with_p_on_the_base() {
    let mut distinct = std::collections::BTreeSet::new();
    for name in ["r10_flat20", "r10_flat42", "r10_odd02", "r12_mixed12", "r10_curved12"] {
        let w = product(name);
        distinct.insert(w.fiber_dims());
        for stmt in Statement::ALL {
            if stmt.check_hypotheses(&w).is_err() {
                assert!(matches!(stmt, Statement::SsnmConnectionFiber | Statement::SsnmCurvatureFiber));
                continue;
            }
            let r = verify_statement(&w, stmt, DEFAULT_SEED).unwrap();
            assert!(r.total() > 0, "{name} {}", stmt.id());
            assert!(r.all_pass(), "{name} {}: {:?}", stmt.id(), r.failures().next());
        }
    }
    assert!(distinct.len() >= 3);
}

#[test]
fn levi_civita_statements_hold_with_p_on_the_fiber() {
    for name in ["r10_flat20_pfiber", "r10_curved12_pfiber"] {
        let w = product(name);
        for stmt in [Statement::LcConnection, Statement::LcCurvature, Statement::LcRicci] {
            let r = verify_statement(&w, stmt, DEFAULT_SEED).unwrap();
            assert!(r.all_pass(), "{name} {}: {:?}", stmt.id(), r.failures().next());
        }
    }
}

#[test]
fn fiber_p_connection_differs_by_the_metric_term() {
    let w = product("r10_flat20_pfiber");
    let t = base_frame(&w, 0);
    let lhs = direct(&w, Statement::SsnmConnectionFiber, "1", &[t.clone(), t.clone()]).unwrap();
    let rhs = closed_form(&w, Statement::SsnmConnectionFiber, "1", &[t.clone(), t]).unwrap();
    let (Value::Field(a), Value::Field(b)) = (lhs, rhs) else {
        panic!("connection items are fields");
    };
    let g_tt = w.total().entry(0, 0).clone();
    let p = &w.p().unwrap().total;
    assert_eq!(a.sub(&b), p.scale_left(&g_tt, superwarp::Parity::Even));
}

#[test]
fn base_statement_rejects_fiber_p() {
    let w = product("r10_flat20_pfiber");
    let err = verify_statement(&w, Statement::SsnmCurvatureBase, DEFAULT_SEED).unwrap_err();
    match err {
        Error::Hypothesis { requirement, .. } => assert!(requirement.contains("base"), "{requirement}"),
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn slots_are_checked() {
    let w = product("r10_flat20");
    let u = fiber_frame(&w, 0);
    let err = closed_form(&w, Statement::LcConnection, "1", &[u.clone(), u]).unwrap_err();
    assert!(matches!(err, Error::WrongBlock(_)), "{err}");
    let t = base_frame(&w, 0);
    assert!(closed_form(&w, Statement::LcConnection, "1", &[t]).is_err());
}

#[test]
fn mixed_levi_civita_term_is_the_log_derivative() {
    let w = product("r10_flat20");
    let t = base_frame(&w, 0);
    let u = fiber_frame(&w, 1);
    let v = closed_form(&w, Statement::LcConnection, "2", &[t, u]).unwrap();
    let h = RatFunc::func("h", "t", 0);
    let ratio = SuperScalar::even(RatFunc::func("h", "t", 1).div(&h));
    let y2 = VectorField::frame(w.total().chart(), 2);
    assert_eq!(v, Value::Field(y2.scale_left(&ratio, superwarp::Parity::Even)));
}

#[test]
fn ricci_of_the_time_direction_depends_only_on_the_dimension_difference() {
    let a = product("r10_flat20");
    let b = product("r10_flat42");
    assert_eq!(a.fiber_dims().0 as i64 - a.fiber_dims().1 as i64, 2);
    assert_eq!(b.fiber_dims().0 as i64 - b.fiber_dims().1 as i64, 2);
    for ssnm in [false, true] {
        assert_eq!(
            a.ricci_table(ssnm).unwrap().get(0, 0),
            b.ricci_table(ssnm).unwrap().get(0, 0)
        );
    }
    let c = product("r10_odd02");
    assert_ne!(a.ricci_table(true).unwrap().get(0, 0), c.ricci_table(true).unwrap().get(0, 0));
}
