use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use superwarp::bundled;
use superwarp::parity::koszul;
use superwarp::scalar::{expr_equal, Atom, DEFAULT_SEED};
use superwarp::{
    Assumptions, Chart, Connection, Manifold, OddMonomial, Parity, RatFunc, ScalarExpr,
    SuperScalar, VectorField,
};

pub type Outcome = Result<(), String>;

pub const SEED: [u8; 32] = *b"graded-algebra-property-suites!!";

/// A runner with a fixed seed and no failure persistence.
pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

pub const SUITES: &[(&str, fn(&mut TestRunner) -> Outcome)] = &[
    ("graded_commutativity", graded_commutativity),
    ("associativity", associativity),
    (
        "odd_derivative_is_a_graded_derivation",
        odd_derivative_is_a_graded_derivation,
    ),
    (
        "even_derivative_is_a_derivation",
        even_derivative_is_a_derivation,
    ),
    (
        "odd_derivatives_anticommute_and_square_to_zero",
        odd_derivatives_anticommute_and_square_to_zero,
    ),
    (
        "expression_sums_and_products_commute",
        expression_sums_and_products_commute,
    ),
    ("canonicalize_is_idempotent", canonicalize_is_idempotent),
    (
        "differentiation_obeys_the_product_rule",
        differentiation_obeys_the_product_rule,
    ),
    (
        "derivative_matches_finite_differences",
        derivative_matches_finite_differences,
    ),
    (
        "curvature_is_graded_antisymmetric",
        curvature_is_graded_antisymmetric,
    ),
    ("ricci_is_graded_symmetric", ricci_is_graded_symmetric),
    ("hessian_is_tensorial", hessian_is_tensorial),
    (
        "levi_civita_is_torsion_free_and_metric_on_random_fields",
        levi_civita_is_torsion_free_and_metric_on_random_fields,
    ),
    (
        "perturbed_connection_breaks_an_axiom",
        perturbed_connection_breaks_an_axiom,
    ),
];

fn parity(odd: bool) -> Parity {
    if odd {
        Parity::Odd
    } else {
        Parity::Even
    }
}

fn poly(cs: &[i64], x: &RatFunc) -> RatFunc {
    let mut out = RatFunc::zero();
    let mut pw = RatFunc::one();
    for c in cs {
        out = out.add(&pw.scale_int(*c));
        pw = pw.mul(x);
    }
    out
}

type Terms = Vec<(u32, Vec<i64>)>;

fn terms(n_odd: u32) -> impl Strategy<Value = Terms> {
    prop::collection::vec(
        (0u32..(1 << n_odd), prop::collection::vec(-3i64..=3, 1..4)),
        0..5,
    )
}

/// Keeps only the monomials of parity `p`, so the result is homogeneous.
fn superscalar(ts: &Terms, p: Parity, x: &RatFunc) -> SuperScalar {
    let mut out = SuperScalar::zero();
    for (bits, cs) in ts {
        let m = OddMonomial::from_bits(*bits);
        if m.parity() == p {
            out = out.add(&SuperScalar::term(m, poly(cs, x)));
        }
    }
    out
}

fn ordinary_h() -> RatFunc {
    RatFunc::func("h", "t", 0)
}

fn coefficient_var() -> RatFunc {
    RatFunc::var("t").add(&ordinary_h())
}

fn field(chart: &Chart, comps: &[Terms], p: Parity, x: &RatFunc) -> VectorField {
    let coeffs: Vec<SuperScalar> = (0..chart.dim())
        .map(|i| superscalar(&comps[i], p + chart.parity(i), x))
        .collect();
    let f = VectorField::new(chart, coeffs).unwrap();
    if f.is_zero() {
        VectorField::zero_with_parity(chart, p)
    } else {
        f
    }
}

fn manifold(name: &str) -> (Manifold, VectorField) {
    let spec = bundled::manifold(name).unwrap();
    let m = spec.build().unwrap();
    let p = spec.p_field(m.chart()).unwrap().unwrap();
    (m, p)
}

fn zero_scalar(m: &Manifold, f: &SuperScalar) -> bool {
    f.zero_test(m.assumptions(), DEFAULT_SEED).is_equal()
}

fn zero_field(m: &Manifold, f: &VectorField) -> bool {
    f.coeffs().iter().all(|c| zero_scalar(m, c))
}

fn fields3(
    n: usize,
) -> impl Strategy<Value = (Vec<Terms>, bool, Vec<Terms>, bool, Vec<Terms>, bool)> {
    let comps = || prop::collection::vec(terms(2), n);
    (
        comps(),
        any::<bool>(),
        comps(),
        any::<bool>(),
        comps(),
        any::<bool>(),
    )
}

fn geometry_names() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["r12", "mixed12", "curved12"])
}

pub fn graded_commutativity(r: &mut TestRunner) -> Outcome {
    r.run(
        &(terms(3), any::<bool>(), terms(3), any::<bool>()),
        |(a, pa, b, pb)| {
            let x = coefficient_var();
            let (pa, pb) = (parity(pa), parity(pb));
            let (a, b) = (superscalar(&a, pa, &x), superscalar(&b, pb, &x));
            prop_assert_eq!(a.mul(&b), b.mul(&a).signed(koszul(pa, pb)));
            Ok(())
        },
    )
    .map_err(|e| e.to_string())
}

pub fn associativity(r: &mut TestRunner) -> Outcome {
    r.run(
        &(
            terms(3),
            terms(3),
            terms(3),
            any::<bool>(),
            any::<bool>(),
            any::<bool>(),
        ),
        |(a, b, c, pa, pb, pc)| {
            let x = coefficient_var();
            let a = superscalar(&a, parity(pa), &x);
            let b = superscalar(&b, parity(pb), &x);
            let c = superscalar(&c, parity(pc), &x);
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            Ok(())
        },
    )
    .map_err(|e| e.to_string())
}

pub fn odd_derivative_is_a_graded_derivation(r: &mut TestRunner) -> Outcome {
    r.run(
        &(terms(3), terms(3), any::<bool>(), any::<bool>(), 0usize..3),
        |(a, b, pa, pb, k)| {
            let x = coefficient_var();
            let pa = parity(pa);
            let a = superscalar(&a, pa, &x);
            let b = superscalar(&b, parity(pb), &x);
            let lhs = a.mul(&b).diff_odd(k);
            let rhs = a
                .diff_odd(k)
                .mul(&b)
                .add(&a.mul(&b.diff_odd(k)).signed(koszul(Parity::Odd, pa)));
            prop_assert_eq!(lhs, rhs);
            Ok(())
        },
    )
    .map_err(|e| e.to_string())
}

pub fn even_derivative_is_a_derivation(r: &mut TestRunner) -> Outcome {
    r.run(
        &(terms(3), terms(3), any::<bool>(), any::<bool>()),
        |(a, b, pa, pb)| {
            let x = coefficient_var();
            let a = superscalar(&a, parity(pa), &x);
            let b = superscalar(&b, parity(pb), &x);
            let lhs = a.mul(&b).diff_even("t");
            let rhs = a.diff_even("t").mul(&b).add(&a.mul(&b.diff_even("t")));
            prop_assert_eq!(lhs, rhs);
            Ok(())
        },
    )
    .map_err(|e| e.to_string())
}

pub fn odd_derivatives_anticommute_and_square_to_zero(r: &mut TestRunner) -> Outcome {
    r.run(
        &(terms(3), any::<bool>(), 0usize..3, 0usize..3),
        |(a, pa, j, k)| {
            let a = superscalar(&a, parity(pa), &coefficient_var());
            prop_assert!(a.diff_odd(k).diff_odd(k).is_zero());
            prop_assert_eq!(a.diff_odd(j).diff_odd(k), a.diff_odd(k).diff_odd(j).neg());
            Ok(())
        },
    )
    .map_err(|e| e.to_string())
}

pub fn expression_sums_and_products_commute(r: &mut TestRunner) -> Outcome {
    r.run(&(tree(), tree()), |(a, b)| {
        let assume = Assumptions::new();
        prop_assert!(expr_equal(
            &(a.clone() + b.clone()),
            &(b.clone() + a.clone()),
            &assume,
            DEFAULT_SEED
        )
        .is_equal());
        prop_assert!(
            expr_equal(&(a.clone() * b.clone()), &(b * a), &assume, DEFAULT_SEED).is_equal()
        );
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub fn canonicalize_is_idempotent(r: &mut TestRunner) -> Outcome {
    r.run(&(tree(),), |(a,)| {
        let c = a.canonicalize();
        prop_assert_eq!(c.canonicalize(), c);
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub fn differentiation_obeys_the_product_rule(r: &mut TestRunner) -> Outcome {
    r.run(&(tree(), tree()), |(a, b)| {
        let lhs = (a.clone() * b.clone()).differentiate("t");
        let rhs = a.differentiate("t") * b.clone() + a * b.differentiate("t");
        prop_assert!(expr_equal(&lhs, &rhs, &Assumptions::new(), DEFAULT_SEED).is_equal());
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub fn derivative_matches_finite_differences(r: &mut TestRunner) -> Outcome {
    r.run(&(numeric_tree(), 0.5f64..2.0, 0.5f64..2.0), |(a, t, x)| {
        let d = a.differentiate("t");
        let at = |tv: f64| {
            move |atom: &Atom| match atom {
                Atom::Var(s) if &**s == "t" => Some(tv),
                Atom::Var(s) if &**s == "x" => Some(x),
                _ => None,
            }
        };
        let step = 1e-5;
        let fd = (a.eval(&at(t + step)) - a.eval(&at(t - step))) / (2.0 * step);
        let exact = d.eval(&at(t));
        prop_assume!(exact.is_finite() && fd.is_finite());
        prop_assert!(
            (exact - fd).abs() <= 1e-4 * (1.0 + exact.abs()),
            "{} vs {}",
            exact,
            fd
        );
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub fn curvature_is_graded_antisymmetric(r: &mut TestRunner) -> Outcome {
    r.run(
        &(geometry_names(), fields3(3), any::<bool>()),
        |(name, (x, px, y, py, z, pz), ssnm)| {
            let (m, p) = manifold(name);
            let s = RatFunc::var(m.chart().name(0));
            let chart = m.chart();
            let conn = if ssnm {
                Connection::semi_symmetric(&m, &p).unwrap()
            } else {
                Connection::levi_civita(&m).unwrap()
            };
            let (x, y, z) = (
                field(chart, &x, parity(px), &s),
                field(chart, &y, parity(py), &s),
                field(chart, &z, parity(pz), &s),
            );
            let swapped = conn.riemann(&y, &x, &z);
            let swapped = if koszul(x.parity(), y.parity()).is_minus() {
                swapped.neg()
            } else {
                swapped
            };
            prop_assert!(zero_field(&m, &conn.riemann(&x, &y, &z).add(&swapped)));
            Ok(())
        },
    )
    .map_err(|e| e.to_string())
}

pub fn ricci_is_graded_symmetric(r: &mut TestRunner) -> Outcome {
    r.run(
        &(geometry_names(), fields3(3), any::<bool>()),
        |(name, (x, px, y, py, _z, _pz), ssnm)| {
            let (m, p) = manifold(name);
            let s = RatFunc::var(m.chart().name(0));
            let chart = m.chart();
            let conn = if ssnm {
                Connection::semi_symmetric(&m, &p).unwrap()
            } else {
                Connection::levi_civita(&m).unwrap()
            };
            let (x, y) = (
                field(chart, &x, parity(px), &s),
                field(chart, &y, parity(py), &s),
            );
            let d = conn
                .ricci(&x, &y)
                .sub(&conn.ricci(&y, &x).signed(koszul(x.parity(), y.parity())));
            prop_assert!(zero_scalar(&m, &d));
            Ok(())
        },
    )
    .map_err(|e| e.to_string())
}

pub fn hessian_is_tensorial(r: &mut TestRunner) -> Outcome {
    r.run(
        &(
            geometry_names(),
            fields3(3),
            terms(2),
            terms(2),
            any::<bool>(),
            any::<bool>(),
        ),
        |(name, (x, px, y, py, _z, _pz), f, phi, pphi, ssnm)| {
            let (m, p) = manifold(name);
            let s = RatFunc::var(m.chart().name(0));
            let chart = m.chart();
            let conn = if ssnm {
                Connection::semi_symmetric(&m, &p).unwrap()
            } else {
                Connection::levi_civita(&m).unwrap()
            };
            let (x, y) = (
                field(chart, &x, parity(px), &s),
                field(chart, &y, parity(py), &s),
            );
            let f = superscalar(&f, Parity::Even, &s);
            let pphi = parity(pphi);
            let phi = superscalar(&phi, pphi, &s);
            let h = conn.hessian(&f, &x, &y);
            let left = conn
                .hessian(&f, &x.scale_left(&phi, pphi), &y)
                .sub(&phi.mul(&h));
            prop_assert!(zero_scalar(&m, &left));
            let right = conn
                .hessian(&f, &x, &y.scale_left(&phi, pphi))
                .sub(&phi.mul(&h).signed(koszul(x.parity(), pphi)));
            prop_assert!(zero_scalar(&m, &right));
            Ok(())
        },
    )
    .map_err(|e| e.to_string())
}

pub fn levi_civita_is_torsion_free_and_metric_on_random_fields(r: &mut TestRunner) -> Outcome {
    r.run(
        &(geometry_names(), fields3(3)),
        |(name, (x, px, y, py, z, pz))| {
            let (m, _) = manifold(name);
            let s = RatFunc::var(m.chart().name(0));
            let chart = m.chart();
            let lc = Connection::levi_civita(&m).unwrap();
            let (x, y, z) = (
                field(chart, &x, parity(px), &s),
                field(chart, &y, parity(py), &s),
                field(chart, &z, parity(pz), &s),
            );
            prop_assert!(zero_field(&m, &lc.torsion(&x, &y)));
            prop_assert!(zero_scalar(&m, &lc.nonmetricity(&m, &x, &y, &z)));
            Ok(())
        },
    )
    .map_err(|e| e.to_string())
}

pub fn perturbed_connection_breaks_an_axiom(r: &mut TestRunner) -> Outcome {
    r.run(
        &(
            geometry_names(),
            0usize..3,
            0usize..3,
            0usize..3,
            prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]),
        ),
        |(name, i, j, k, c)| {
            let (m, _) = manifold(name);
            let chart = m.chart();
            let valid: Vec<usize> = (0..chart.dim())
                .filter(|&a| chart.parity(a) == chart.parity(i) + chart.parity(j))
                .collect();
            let k = valid[k % valid.len()];
            let lc = Connection::levi_civita(&m).unwrap();
            let mut gamma = lc.gamma_table().to_vec();
            let bump = VectorField::frame(chart, k).scale_left(&SuperScalar::int(c), Parity::Even);
            gamma[i][j] = gamma[i][j].add(&bump);
            let bad = Connection::custom(chart, gamma).unwrap();
            let e = VectorField::frames(chart);
            let n = e.len();
            let torsion_free =
                (0..n).all(|a| (0..n).all(|b| zero_field(&m, &bad.torsion(&e[a], &e[b]))));
            let metric = (0..n).all(|a| {
                (0..n).all(|b| {
                    (0..n).all(|d| zero_scalar(&m, &bad.nonmetricity(&m, &e[a], &e[b], &e[d])))
                })
            });
            prop_assert!(!(torsion_free && metric));
            Ok(())
        },
    )
    .map_err(|e| e.to_string())
}

fn leaf(with_h: bool) -> BoxedStrategy<ScalarExpr> {
    let mut options = vec![
        Just(ScalarExpr::sym("t")).boxed(),
        Just(ScalarExpr::sym("x")).boxed(),
        (-3i64..=3).prop_map(ScalarExpr::int).boxed(),
    ];
    if with_h {
        options.push(
            (0u32..3)
                .prop_map(|k| ScalarExpr::func("h", "t", k))
                .boxed(),
        );
    }
    prop::strategy::Union::new(options).boxed()
}

fn grow(leaves: BoxedStrategy<ScalarExpr>) -> impl Strategy<Value = ScalarExpr> {
    leaves.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            inner
                .clone()
                .prop_map(|a| a / (ScalarExpr::sym("t").pow(2) + ScalarExpr::int(1))),
            inner.clone().prop_map(|a| a.pow(2)),
            inner.clone().prop_map(|a| -a),
            inner
                .clone()
                .prop_map(|a| (a.sin() * ScalarExpr::sym("t")).exp()),
            inner.clone().prop_map(ScalarExpr::sin),
            inner.prop_map(ScalarExpr::cos),
        ]
    })
}

fn tree() -> impl Strategy<Value = ScalarExpr> {
    grow(leaf(true))
}

fn numeric_tree() -> impl Strategy<Value = ScalarExpr> {
    grow(leaf(false))
}
