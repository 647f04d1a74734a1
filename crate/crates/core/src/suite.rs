//! Named verification scopes and coefficient tables.

use std::fmt::Write;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bundled;
use crate::checks::{bundled_instances, connection_axioms, curvature_identities, Instance};
use crate::connection::Connection;
use crate::curvature::{RicciTable, RiemannTable};
use crate::einstein::{
    classify, elimination_check, polynomial_falsification, r10_ricci_check, reduced_fiber_residual, residual_check,
    BaseKind, ConnectionChoice, EinsteinProblem, FamilyTag,
};
use crate::error::{Error, Result};
use crate::geometry::{Manifold, VectorField};
use crate::report::{VerificationReport, VERSION};
use crate::scalar::RatFunc;
use crate::specfile::{AnySpec, ManifoldSpec, WarpedSpec};
use crate::warped::{build_warped, verify_statement, Statement};

pub const CONNECTION_AXIOMS: &str = "connection-axioms";
pub const CURVATURE_IDENTITIES: &str = "curvature-identities";
pub const RICCI_R10: &str = "ricci-r10-ssnm";
pub const EINSTEIN_R10_SSNM: &str = "einstein-r10-ssnm";
pub const EINSTEIN_R12_LC: &str = "einstein-r12-lc";
pub const EINSTEIN_R12_SSNM: &str = "einstein-r12-ssnm";
pub const ALL: &str = "all";

/// Every accepted scope name.
pub fn scopes() -> Vec<&'static str> {
    let mut out: Vec<&str> = Statement::ALL.iter().map(|s| s.id()).collect();
    out.extend([
        CONNECTION_AXIOMS,
        CURVATURE_IDENTITIES,
        RICCI_R10,
        EINSTEIN_R10_SSNM,
        EINSTEIN_R12_LC,
        EINSTEIN_R12_SSNM,
        ALL,
    ]);
    out
}

/// A manifold spec with its structure field, or a warped product seen as
/// its total space.
pub fn instance(spec: &AnySpec, p_override: Option<&VectorField>) -> Result<Instance> {
    match spec {
        AnySpec::Manifold(m) => manifold_instance(m, p_override),
        AnySpec::Warped(w) => {
            let wp = build_warped(w)?;
            Ok(Instance {
                name: w.name.clone(),
                manifold: wp.total().clone(),
                p: p_override.cloned().or_else(|| wp.p().map(|p| p.total.clone())),
            })
        }
    }
}

fn manifold_instance(spec: &ManifoldSpec, p_override: Option<&VectorField>) -> Result<Instance> {
    let manifold = spec.build()?;
    let p = match p_override {
        Some(p) => Some(p.clone()),
        None => spec.p_field(manifold.chart())?,
    };
    Ok(Instance {
        name: spec.name.clone(),
        manifold,
        p,
    })
}

/// Runs `scope` on `spec`, or on the bundled specs when `spec` is `None`.
pub fn run(scope: &str, spec: Option<&AnySpec>, p_override: Option<&VectorField>, seed: u64) -> Result<VerificationReport> {
    if let Some(stmt) = Statement::from_id(scope) {
        return statement_scope(stmt, spec, seed);
    }
    match scope {
        CONNECTION_AXIOMS | CURVATURE_IDENTITIES => {
            let insts = match spec {
                Some(s) => vec![instance(s, p_override)?],
                None => bundled_instances()?,
            };
            let mut report = VerificationReport::new(scope);
            for inst in &insts {
                report.extend(if scope == CONNECTION_AXIOMS {
                    connection_axioms(inst, seed)?
                } else {
                    curvature_identities(inst, seed)?
                });
            }
            Ok(report)
        }
        RICCI_R10 => {
            let mut report = VerificationReport::new(scope);
            match spec {
                Some(s) => report.extend(r10_ricci_check(&build_warped(warped_spec(s, scope)?)?, seed)?),
                None => {
                    for name in ["r10_flat20", "r10_flat42", "r10_odd02"] {
                        report.extend(r10_ricci_check(&build_warped(&bundled::warped(name)?)?, seed)?);
                    }
                }
            }
            Ok(report)
        }
        EINSTEIN_R10_SSNM => einstein_r10_ssnm(seed),
        EINSTEIN_R12_LC => einstein_r12_lc(seed),
        EINSTEIN_R12_SSNM => einstein_r12_ssnm(seed),
        ALL => {
            let mut report = VerificationReport::new(ALL);
            for s in scopes().into_iter().filter(|s| *s != ALL) {
                report.extend(run(s, None, None, seed)?);
            }
            Ok(report)
        }
        other => Err(Error::SpecFormat(format!(
            "unknown scope '{other}' (expected one of {})",
            scopes().join(", ")
        ))),
    }
}

fn warped_spec<'a>(spec: &'a AnySpec, scope: &str) -> Result<&'a WarpedSpec> {
    match spec {
        AnySpec::Warped(w) => Ok(w),
        AnySpec::Manifold(_) => Err(Error::SpecFormat(format!("scope '{scope}' needs a warped product spec"))),
    }
}

fn statement_scope(stmt: Statement, spec: Option<&AnySpec>, seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(stmt.id());
    match spec {
        Some(s) => {
            let w = build_warped(warped_spec(s, stmt.id())?)?;
            report.extend(verify_statement(&w, stmt, seed)?);
        }
        None => {
            for spec in bundled::warped_all()? {
                let w = build_warped(&spec)?;
                if stmt.check_hypotheses(&w).is_ok() {
                    report.extend(verify_statement(&w, stmt, seed)?);
                }
            }
        }
    }
    Ok(report)
}

fn push_check(report: &mut VerificationReport, id: &str, anchor: &str, ok: bool, failure: impl FnOnce() -> String) {
    let residual = if ok { "0".to_string() } else { failure() };
    report.push(id, anchor, "-", residual);
}

fn families(report: &mut VerificationReport, problem: &EinsteinProblem, seed: u64) -> Result<Vec<FamilyTag>> {
    let c = classify(problem)?;
    for n in &c.notes {
        report.note(n.clone());
    }
    for f in &c.families {
        report.extend(residual_check(problem, f, seed)?);
    }
    Ok(c.families.iter().map(|f| f.tag).collect())
}

fn einstein_r10_ssnm(seed: u64) -> Result<VerificationReport> {
    let scope = EINSTEIN_R10_SSNM;
    let mut report = VerificationReport::new(scope);
    use BaseKind::R10;
    use ConnectionChoice::SemiSymmetric;
    for l in [1, 0, 2, 3, -1] {
        let p = EinsteinProblem::new(R10, SemiSymmetric, l);
        let tags = families(&mut report, &p, seed)?;
        let expected = match l {
            1 => vec![FamilyTag::Exponential, FamilyTag::Linear, FamilyTag::Trigonometric],
            0 => vec![FamilyTag::None],
            _ => vec![FamilyTag::Exponential, FamilyTag::Constant],
        };
        push_check(
            &mut report,
            &format!("{scope}/l={l}/classification"),
            "families of the classification",
            tags == expected,
            || format!("{tags:?}"),
        );
    }
    for l in [2, 3, -1] {
        let ln = RatFunc::var("lambdaN");
        let h = RatFunc::sqrt(&ln.div(&RatFunc::int(l)));
        let r = reduced_fiber_residual(l, &RatFunc::int(l), &ln, &h);
        push_check(
            &mut report,
            &format!("{scope}/l={l}/square-root-constant"),
            "constant warping solves the reduced fiber equation",
            r.is_zero(),
            || r.to_string(),
        );
    }
    let f = polynomial_falsification(2, 0, 50, seed)?;
    push_check(
        &mut report,
        &format!("{scope}/l=2/polynomial-falsification"),
        "polynomial warpings are not Einstein",
        f.nonzero == f.samples,
        || format!("{} of {} samples vanish", f.samples - f.nonzero, f.samples),
    );
    Ok(report)
}

fn einstein_r12_lc(seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(EINSTEIN_R12_LC);
    for l in [0, 1, 2, 3, -1] {
        let p = EinsteinProblem::new(BaseKind::R12, ConnectionChoice::LeviCivita, l).with_lambda0(0);
        let tags = families(&mut report, &p, seed)?;
        push_check(
            &mut report,
            &format!("{EINSTEIN_R12_LC}/l={l}/classification"),
            "families of the classification",
            !tags.is_empty(),
            || "no family".into(),
        );
    }
    Ok(report)
}

fn einstein_r12_ssnm(seed: u64) -> Result<VerificationReport> {
    let scope = EINSTEIN_R12_SSNM;
    let mut report = VerificationReport::new(scope);
    for l in [1, 2, 3, 5, -1, -3, -2] {
        let mut p = EinsteinProblem::new(BaseKind::R12, ConnectionChoice::SemiSymmetric, l);
        if l == -2 {
            p = p.with_c0(0);
        }
        let tags = families(&mut report, &p, seed)?;
        let expected = if l == -2 { vec![FamilyTag::Constant] } else { vec![] };
        push_check(
            &mut report,
            &format!("{scope}/l={l}/classification"),
            "families of the classification",
            tags == expected,
            || format!("{tags:?}"),
        );
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..10 {
        let mut k: f64 = 0.0;
        while k.abs() < 0.1 {
            k = rng.random_range(-3.0..3.0);
        }
        let out = elimination_check(k, false);
        push_check(
            &mut report,
            &format!("{scope}/elimination/k={k:.6}"),
            "characteristic system has only the trivial solution",
            out.unique_zero(1e-9),
            || format!("rank {} residual {:e}", out.rank, out.residual),
        );
    }
    Ok(report)
}

/// Nonzero Christoffel, curvature and Ricci entries of `conn` in the
/// coordinate frame.
pub fn tables(m: &Manifold, conn: &Connection, label: &str) -> String {
    let chart = m.chart();
    let n = chart.dim();
    let name = |idx: &[usize]| {
        let parts: Vec<String> = idx.iter().map(|i| format!("d_{}", chart.name(*i))).collect();
        format!("({})", parts.join(", "))
    };
    let mut out = String::new();
    let _ = writeln!(out, "connection\t{label}");
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let g = conn.gamma(i, j);
            if !g.is_zero() {
                rows.push(format!("{}\t{}", name(&[i, j]), g.display_with(chart)));
            }
        }
    }
    section(&mut out, "christoffel", &rows);
    let riem = RiemannTable::compute(conn);
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = riem.get(i, j, k);
                if !r.is_zero() {
                    rows.push(format!("{}\t{}", name(&[i, j, k]), r.display_with(chart)));
                }
            }
        }
    }
    section(&mut out, "riemann", &rows);
    let ric = RicciTable::from_riemann(chart, &riem);
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let r = ric.get(i, j);
            if !r.is_zero() {
                rows.push(format!("{}\t{}", name(&[i, j]), r.display_with(chart.odd_names())));
            }
        }
    }
    section(&mut out, "ricci", &rows);
    out
}

fn section(out: &mut String, title: &str, rows: &[String]) {
    let _ = writeln!(out, "[{title}]");
    let _ = writeln!(out, "nonzero\t{}", rows.len());
    for r in rows {
        let _ = writeln!(out, "{r}");
    }
}

/// Table header followed by the tables of each requested connection.
pub fn compute(inst: &Instance, connections: &[ConnectionChoice], checksum: &str) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "# superwarp tables");
    let _ = writeln!(out, "version\t{VERSION}");
    let _ = writeln!(out, "spec\t{}", inst.name);
    let _ = writeln!(out, "checksum\t{checksum}");
    for c in connections {
        let conn = match c {
            ConnectionChoice::LeviCivita => Connection::levi_civita(&inst.manifold)?,
            ConnectionChoice::SemiSymmetric => {
                let p = inst.p.as_ref().ok_or_else(|| Error::Hypothesis {
                    statement: "semi-symmetric connection".into(),
                    requirement: "a structure field P (--P or a [P] section)".into(),
                })?;
                Connection::semi_symmetric(&inst.manifold, p)?
            }
        };
        out.push_str(&tables(&inst.manifold, &conn, &c.to_string()));
    }
    Ok(out)
}
