mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use superwarp::bundled;
use superwarp::checks::{bundled_instances, connection_axioms, curvature_identities};
use superwarp::curvature::{RicciTable, RiemannTable};
use superwarp::einstein::*;
use superwarp::scalar::{parse_expr, DEFAULT_SEED};
use superwarp::warped::{build_warped, verify_statement, Statement};
use superwarp::{Connection, RatFunc, SuperScalar, VectorField};

use BaseKind::{R10, R12};
use ConnectionChoice::{LeviCivita as Lc, SemiSymmetric as Ssnm};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn within(limit: Duration, elapsed: Duration) -> (bool, String) {
    (elapsed < limit, format!("{:.3}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()))
}

fn flatness() -> Outcome {
    let start = Instant::now();
    let m = bundled::manifold("r12").unwrap().build().unwrap();
    let lc = Connection::levi_civita(&m).unwrap();
    let gamma = lc.gamma_table().iter().flatten().all(VectorField::is_zero);
    let riemann = RiemannTable::compute(&lc).is_zero();
    let ricci = RicciTable::compute(&lc).is_zero();
    let (fast, time) = within(Duration::from_secs(1), start.elapsed());
    Outcome::new(
        gamma && riemann && ricci && fast,
        format!("Christoffel zero: {gamma}, Riemann zero: {riemann}, Ricci zero: {ricci}, {time}"),
    )
}

fn semi_symmetric_golden() -> Outcome {
    let start = Instant::now();
    let m = bundled::manifold("r12").unwrap().build().unwrap();
    let e = VectorField::frames(m.chart());
    let ssnm = Connection::semi_symmetric(&m, &e[0]).unwrap();
    let curvature = ssnm.riemann(&e[0], &e[1], &e[0]) == e[1].neg()
        && ssnm.riemann(&e[0], &e[2], &e[0]) == e[2].neg()
        && ssnm.riemann(&e[1], &e[0], &e[0]) == e[1]
        && ssnm.riemann(&e[2], &e[0], &e[0]) == e[2]
        && RiemannTable::compute(&ssnm).nonzero().len() == 4;
    let ric = RicciTable::compute(&ssnm);
    let tt = ric.get(0, 0).clone();
    let others = (0..3).all(|i| (0..3).all(|j| (i, j) == (0, 0) || ric.get(i, j).is_zero()));
    let (fast, time) = within(Duration::from_secs(1), start.elapsed());
    let ricci = tt == SuperScalar::int(2) && others;
    Outcome::new(
        curvature && ricci && fast,
        format!("four curvature components: {curvature}, Ric(d_t,d_t) = {tt} (expected 2), other Ricci entries zero: {others}, {time}"),
    )
}

fn connection_axiom_suite() -> Outcome {
    let insts = bundled_instances().unwrap();
    let (mut total, mut failed, mut with_p) = (0, Vec::new(), 0);
    for inst in &insts {
        with_p += inst.p.is_some() as usize;
        let r = connection_axioms(inst, DEFAULT_SEED).unwrap();
        total += r.total();
        failed.extend(r.failures().take(1).map(|f| format!("{} {}", f.check_id, f.tuple)));
    }
    Outcome::new(
        failed.is_empty() && total > 0,
        format!("{} instances ({with_p} with P), {total} checks, failures: {failed:?}", insts.len()),
    )
}

fn curvature_comparison() -> Outcome {
    let (mut instances, mut total, mut failed) = (0, 0, Vec::new());
    for inst in bundled_instances().unwrap().iter().filter(|i| i.p.is_some()) {
        let r = curvature_identities(inst, DEFAULT_SEED).unwrap();
        let recs: Vec<_> = r.records.iter().filter(|r| r.check_id.ends_with("ssnm-curvature-comparison")).collect();
        instances += 1;
        total += recs.len();
        failed.extend(recs.iter().filter(|r| !r.pass).map(|r| format!("{} {}", r.check_id, r.tuple)));
    }
    Outcome::new(
        instances >= 3 && failed.is_empty(),
        format!("{instances} (g, P) instances, {total} frame triples, failures: {failed:?}"),
    )
}

fn warped_statements() -> Outcome {
    let start = Instant::now();
    let mut dims = std::collections::BTreeSet::new();
    let (mut total, mut failed) = (0, Vec::new());
    for spec in bundled::warped_all().unwrap() {
        let w = build_warped(&spec).unwrap();
        dims.insert(w.fiber_dims());
        for stmt in Statement::ALL {
            if stmt.check_hypotheses(&w).is_err() {
                continue;
            }
            let r = verify_statement(&w, stmt, DEFAULT_SEED).unwrap();
            total += r.total();
            if r.failed() > 0 {
                failed.push(format!("{}:{} ({} failed)", spec.name, stmt.id(), r.failed()));
            }
        }
    }
    let diffs: std::collections::BTreeMap<i64, usize> = dims.iter().fold(Default::default(), |mut acc, (q, n)| {
        *acc.entry(*q as i64 - *n as i64).or_insert(0) += 1;
        acc
    });
    let coverage = diffs.values().any(|&c| c >= 2) && diffs.len() >= 2;
    let (fast, time) = within(Duration::from_secs(30), start.elapsed());
    Outcome::new(
        failed.is_empty() && coverage && fast,
        format!("fibers {dims:?}, {total} checks, failing: {failed:?}, {time}"),
    )
}

fn r10_ricci() -> Outcome {
    let (mut total, mut failed) = (0, Vec::new());
    for name in ["r10_flat20", "r10_flat42", "r10_odd02"] {
        let w = build_warped(&bundled::warped(name).unwrap()).unwrap();
        let r = r10_ricci_check(&w, DEFAULT_SEED).unwrap();
        total += r.total();
        failed.extend(r.failures().map(|f| format!("{name} {} {}", f.check_id, f.tuple)));
    }
    Outcome::new(failed.is_empty() && total > 0, format!("{total} checks, failures: {failed:?}"))
}

fn unit_difference_families() -> Outcome {
    let p = EinsteinProblem::new(R10, Ssnm, 1);
    let c = classify(&p).unwrap();
    let mut failed = Vec::new();
    for f in &c.families {
        let r = residual_check(&p, f, DEFAULT_SEED).unwrap();
        failed.extend(r.failures().map(|x| format!("{} {} residual {}", x.check_id, x.tuple, x.residual)));
    }
    let mut bad = c.families[0].clone();
    bad.h = parse_expr("c1*exp(2*t)").unwrap();
    let perturbed_fails = !residual_check(&p, &bad, DEFAULT_SEED).unwrap().all_pass();
    Outcome::new(
        c.families.len() == 3 && failed.is_empty() && perturbed_fails,
        format!("{} cases, perturbed family fails: {perturbed_fails}, failures: {failed:?}", c.families.len()),
    )
}

fn exponential_and_constant() -> Outcome {
    let mut problems = Vec::new();
    for l in [2i64, 3, -1] {
        let p = EinsteinProblem::new(R10, Ssnm, l);
        let c = classify(&p).unwrap();
        let tags: Vec<_> = c.families.iter().map(|f| f.tag).collect();
        if tags != [FamilyTag::Exponential, FamilyTag::Constant] {
            problems.push(format!("l = {l}: families {tags:?}"));
            continue;
        }
        let sqrt_form = RatFunc::sqrt(&RatFunc::var("lambdaN").div(&RatFunc::int(l)));
        if c.families[0].h.to_ratfunc() != parse_expr("c1*exp(t)").unwrap().to_ratfunc()
            || c.families[1].h.to_ratfunc() != sqrt_form
        {
            problems.push(format!("l = {l}: unexpected h"));
        }
        for f in &c.families {
            let r = residual_check(&p, f, DEFAULT_SEED).unwrap();
            problems.extend(r.failures().take(1).map(|x| format!("{} {}", x.check_id, x.tuple)));
        }
        if !reduced_fiber_residual(l, &RatFunc::int(l), &RatFunc::var("lambdaN"), &sqrt_form).is_zero() {
            problems.push(format!("l = {l}: square-root form misses the reduced equation"));
        }
    }
    let fals = polynomial_falsification(2, 0, 50, DEFAULT_SEED).unwrap();
    if fals.nonzero != 50 || fals.samples != 50 {
        problems.push(format!("polynomials: {}/{} nonzero", fals.nonzero, fals.samples));
    }
    Outcome::new(
        problems.is_empty(),
        format!("l in {{2, 3, -1}}, polynomials {}/{} nonzero, problems: {problems:?}", fals.nonzero, fals.samples),
    )
}

fn levi_civita_r12() -> Outcome {
    let mut problems = Vec::new();
    let mut count = 0;
    for l in [0i64, 1, 2] {
        let p = EinsteinProblem::new(R12, Lc, l).with_lambda0(0);
        let c = classify(&p).unwrap();
        if c.families.is_empty() {
            problems.push(format!("l = {l}: no family"));
        }
        for f in &c.families {
            count += 1;
            if l != 0 && !f.h.to_ratfunc().diff("t").diff("t").is_zero() {
                problems.push(format!("l = {l}: h is not linear"));
            }
            if !f.lambda.to_ratfunc().is_zero() {
                problems.push(format!("l = {l}: lambda = {}", f.lambda));
            }
            let r = residual_check(&p, f, DEFAULT_SEED).unwrap();
            problems.extend(r.failures().take(1).map(|x| format!("{} {}", x.check_id, x.tuple)));
        }
    }
    Outcome::new(
        problems.is_empty(),
        format!("{count} families over q - n in {{0, 1, 2}} (q = n on a (2,2) fiber), problems: {problems:?}"),
    )
}

fn semi_symmetric_r12() -> Outcome {
    let mut problems = Vec::new();
    for l in [1i64, 2, 3, -1, -3] {
        if !classify(&EinsteinProblem::new(R12, Ssnm, l)).unwrap().families.is_empty() {
            problems.push(format!("l = {l} not empty"));
        }
    }
    let c = classify(&EinsteinProblem::new(R12, Ssnm, -2).with_c0(0)).unwrap();
    let constant = c.families.len() == 1
        && c.families[0].tag == FamilyTag::Constant
        && c.families[0].lambda.to_ratfunc().is_zero()
        && c.families[0].kappa().is_zero();
    if !constant {
        problems.push("l = -2 does not give the constant family".into());
    }
    let mut rng = StdRng::seed_from_u64(DEFAULT_SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let mut k: f64 = 0.0;
        while k.abs() < 0.1 {
            k = rng.random_range(-3.0..3.0);
        }
        let out = elimination_check(k, false);
        worst = worst.max(out.residual);
        if !out.unique_zero(1e-9) || out.residual >= 1e-9 {
            problems.push(format!("k = {k}: {out:?}"));
        }
    }
    Outcome::new(
        problems.is_empty(),
        format!("10 random k, worst residual {worst:.1e}, problems: {problems:?}"),
    )
}

fn property_suites() -> Outcome {
    let mut failed = Vec::new();
    for (name, suite) in support::SUITES {
        if let Err(e) = suite(&mut support::runner(100)) {
            failed.push(format!("{name}: {e}"));
        }
    }
    Outcome::new(
        failed.is_empty(),
        format!("{} suites x 100 seeded cases, failures: {failed:?}", support::SUITES.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("flatness golden", flatness),
        ("semi-symmetric golden", semi_symmetric_golden),
        ("connection axioms", connection_axiom_suite),
        ("semi-symmetric curvature comparison", curvature_comparison),
        ("warped product statements", warped_statements),
        ("symbolic Ricci of R10 products", r10_ricci),
        ("R10 semi-symmetric, q - n = 1", unit_difference_families),
        ("R10 semi-symmetric, other q - n", exponential_and_constant),
        ("R12 Levi-Civita", levi_civita_r12),
        ("R12 semi-symmetric", semi_symmetric_r12),
        ("property suites", property_suites),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        failures += !out.pass as usize;
        println!("{} {:>2} {name}: {}", if out.pass { "PASS" } else { "FAIL" }, i + 1, out.detail);
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
