//! Frame-wise checks of the connection axioms and curvature identities.

use crate::bundled;
use crate::connection::{expected_nonmetricity, expected_torsion, semi_symmetric_direct, Connection};
use crate::curvature::{semi_symmetric_curvature_residual, RicciTable, RiemannTable};
use crate::error::Result;
use crate::geometry::{Manifold, VectorField};
use crate::parity::koszul;
use crate::report::{field_residual, scalar_residual, VerificationReport};
use crate::warped::build_warped;

/// A metric with an optional structure field `P`.
#[derive(Debug)]
pub struct Instance {
    pub name: String,
    pub manifold: Manifold,
    pub p: Option<VectorField>,
}

/// Every bundled manifold and every bundled warped product (as a single
/// manifold with its lifted `P`).
pub fn bundled_instances() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (name, _) in bundled::MANIFOLDS {
        let spec = bundled::manifold(name)?;
        let manifold = spec.build()?;
        let p = spec.p_field(manifold.chart())?;
        out.push(Instance {
            name: name.to_string(),
            manifold,
            p,
        });
    }
    for spec in bundled::warped_all()? {
        let w = build_warped(&spec)?;
        out.push(Instance {
            name: format!("warped_{}", spec.name),
            manifold: w.total().clone(),
            p: w.p().map(|p| p.total.clone()),
        });
    }
    Ok(out)
}

fn names(m: &Manifold, idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| format!("d_{}", m.chart().name(*i))).collect();
    format!("({})", parts.join(", "))
}

/// Levi-Civita: zero torsion and metric compatibility. Semi-symmetric
/// connection of `P`: its defining formula, its torsion and its
/// non-metricity, on all frame pairs and triples.
pub fn connection_axioms(inst: &Instance, seed: u64) -> Result<VerificationReport> {
    let m = &inst.manifold;
    let (chart, assume) = (m.chart(), m.assumptions());
    let e = VectorField::frames(chart);
    let n = e.len();
    let mut r = VerificationReport::new("connection-axioms");
    let id = |what: &str| format!("{}/connection-axioms/{what}", inst.name);
    let lc = Connection::levi_civita(m)?;
    for i in 0..n {
        for j in 0..n {
            let t = lc.torsion(&e[i], &e[j]);
            r.push(&id("lc-torsion"), "Levi-Civita is torsion-free", &names(m, &[i, j]), field_residual(&t, chart, assume, seed));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let q = lc.nonmetricity(m, &e[i], &e[j], &e[k]);
                r.push(
                    &id("lc-metric"),
                    "Levi-Civita is metric",
                    &names(m, &[i, j, k]),
                    scalar_residual(&q, chart, assume, seed),
                );
            }
        }
    }
    let Some(p) = &inst.p else {
        return Ok(r);
    };
    let ssnm = Connection::semi_symmetric(m, p)?;
    for i in 0..n {
        for j in 0..n {
            let d = ssnm
                .covariant(&e[i], &e[j])
                .sub(&semi_symmetric_direct(m, &lc, p, &e[i], &e[j]));
            r.push(
                &id("ssnm-definition"),
                "semi-symmetric connection formula",
                &names(m, &[i, j]),
                field_residual(&d, chart, assume, seed),
            );
            let t = ssnm
                .torsion(&e[i], &e[j])
                .sub(&expected_torsion(m, p, &e[i], &e[j]));
            r.push(
                &id("ssnm-torsion"),
                "semi-symmetric torsion",
                &names(m, &[i, j]),
                field_residual(&t, chart, assume, seed),
            );
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let q = ssnm
                    .nonmetricity(m, &e[i], &e[j], &e[k])
                    .sub(&expected_nonmetricity(m, p, &e[i], &e[j], &e[k]));
                r.push(
                    &id("ssnm-nonmetricity"),
                    "semi-symmetric non-metricity",
                    &names(m, &[i, j, k]),
                    scalar_residual(&q, chart, assume, seed),
                );
            }
        }
    }
    Ok(r)
}

/// Graded antisymmetry of the curvature in its first two slots, graded
/// symmetry of Ricci (both connections), and the comparison of the
/// semi-symmetric curvature with the Levi-Civita one.
pub fn curvature_identities(inst: &Instance, seed: u64) -> Result<VerificationReport> {
    let m = &inst.manifold;
    let (chart, assume) = (m.chart(), m.assumptions());
    let e = VectorField::frames(chart);
    let n = e.len();
    let mut r = VerificationReport::new("curvature-identities");
    let id = |what: &str| format!("{}/curvature-identities/{what}", inst.name);
    let lc = Connection::levi_civita(m)?;
    let mut conns = vec![("lc", lc.clone())];
    if let Some(p) = &inst.p {
        conns.push(("ssnm", Connection::semi_symmetric(m, p)?));
    }
    for (tag, conn) in &conns {
        let riem = RiemannTable::compute(conn);
        for i in 0..n {
            for j in 0..n {
                let s = koszul(chart.parity(i), chart.parity(j));
                for k in 0..n {
                    let swapped = riem.get(j, i, k);
                    let swapped = if s.is_minus() { swapped.neg() } else { swapped.clone() };
                    let d = riem.get(i, j, k).add(&swapped);
                    r.push(
                        &id(&format!("{tag}-antisymmetry")),
                        "curvature is graded antisymmetric",
                        &names(m, &[i, j, k]),
                        field_residual(&d, chart, assume, seed),
                    );
                }
            }
        }
        let ric = RicciTable::from_riemann(chart, &riem);
        for i in 0..n {
            for j in 0..n {
                let d = ric
                    .get(i, j)
                    .sub(&ric.get(j, i).signed(koszul(chart.parity(i), chart.parity(j))));
                r.push(
                    &id(&format!("{tag}-ricci-symmetry")),
                    "Ricci is graded symmetric",
                    &names(m, &[i, j]),
                    scalar_residual(&d, chart, assume, seed),
                );
            }
        }
    }
    if let (Some(p), Some((_, ssnm))) = (&inst.p, conns.get(1)) {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = semi_symmetric_curvature_residual(m, &lc, ssnm, p, &e[i], &e[j], &e[k]);
                    r.push(
                        &id("ssnm-curvature-comparison"),
                        "semi-symmetric curvature in terms of the Levi-Civita curvature",
                        &names(m, &[i, j, k]),
                        field_residual(&d, chart, assume, seed),
                    );
                }
            }
        }
    }
    Ok(r)
}
