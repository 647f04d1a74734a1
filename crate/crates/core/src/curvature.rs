//! Curvature tables on coordinate fields and the curvature comparison
//! between the semi-symmetric and Levi-Civita connections.

use crate::connection::{one_form, Connection};
use crate::geometry::{Chart, Manifold, VectorField};
use crate::graded::SuperScalar;
use crate::parity::koszul;
use crate::scalar::RatFunc;

/// `R(∂_i, ∂_j)∂_k` for all coordinate triples.
#[derive(Clone, Debug)]
pub struct RiemannTable {
    entries: Vec<Vec<Vec<VectorField>>>,
}

impl RiemannTable {
    pub fn compute(conn: &Connection) -> Self {
        let chart = conn.chart();
        let frames = VectorField::frames(chart);
        let entries = frames
            .iter()
            .map(|x| {
                frames
                    .iter()
                    .map(|y| frames.iter().map(|z| conn.riemann(x, y, z)).collect())
                    .collect()
            })
            .collect();
        RiemannTable { entries }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &VectorField {
        &self.entries[i][j][k]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().flatten().all(VectorField::is_zero)
    }

    /// Nonzero components as `(i, j, k, l, value)`.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, usize, SuperScalar)> {
        let mut out = Vec::new();
        for (i, a) in self.entries.iter().enumerate() {
            for (j, b) in a.iter().enumerate() {
                for (k, f) in b.iter().enumerate() {
                    for (l, c) in f.coeffs().iter().enumerate() {
                        if !c.is_zero() {
                            out.push((i, j, k, l, c.clone()));
                        }
                    }
                }
            }
        }
        out
    }
}

/// `Ric(∂_i, ∂_j)` for all coordinate pairs.
#[derive(Clone, Debug)]
pub struct RicciTable {
    entries: Vec<Vec<SuperScalar>>,
}

impl RicciTable {
    pub fn compute(conn: &Connection) -> Self {
        let frames = VectorField::frames(conn.chart());
        let entries = frames
            .iter()
            .map(|x| frames.iter().map(|y| conn.ricci(x, y)).collect())
            .collect();
        RicciTable { entries }
    }

    /// Contracts a precomputed curvature table with the trace formula of
    /// [`Connection::ricci`].
    pub fn from_riemann(chart: &Chart, r: &RiemannTable) -> Self {
        let n = chart.dim();
        let entries = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let (pa, pb) = (chart.parity(a), chart.parity(b));
                        let sab = koszul(pa, pb);
                        let mut out = SuperScalar::zero();
                        for i in 0..n {
                            let comp = r.get(i, a, b).component(i).add(&r.get(i, b, a).component(i).signed(sab));
                            let s = koszul(chart.parity(i), chart.parity(i) + pa + pb);
                            out = out.add(&comp.signed(s));
                        }
                        out.scale(&RatFunc::ratio(1, 2))
                    })
                    .collect()
            })
            .collect();
        RicciTable { entries }
    }

    pub fn get(&self, i: usize, j: usize) -> &SuperScalar {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<SuperScalar>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(SuperScalar::is_zero)
    }
}

/// Right-hand side of the curvature comparison for the semi-symmetric
/// connection of `P`:
/// `R^L(X,Y)Z + (-1)^{(|X|+|Y|)|Z|} [g(Z, ∇_X P) Y - (-1)^{|X||Y|} g(Z, ∇_Y P) X]
/// + (-1)^{(|X|+|Y|)|Z|} π(Z) [(-1)^{|X||Y|} π(Y) X - π(X) Y]`.
pub fn semi_symmetric_curvature_rhs(
    m: &Manifold,
    lc: &Connection,
    p: &VectorField,
    x: &VectorField,
    y: &VectorField,
    z: &VectorField,
) -> VectorField {
    let (px, py, pz) = (x.parity(), y.parity(), z.parity());
    let outer = koszul(px + py, pz);
    let sxy = koszul(px, py);
    let pg = m.parity() + p.parity();

    let gx = m.eval(z, &lc.covariant(x, p));
    let gy = m.eval(z, &lc.covariant(y, p));
    let t1 = y
        .scale_left(&gx, pz + px + pg)
        .sub(&x.scale_left(&gy.signed(sxy), pz + py + pg));

    let pi_z = one_form(m, p, z);
    let pi_y = one_form(m, p, y);
    let pi_x = one_form(m, p, x);
    let t2 = x
        .scale_left(&pi_z.mul(&pi_y).signed(sxy), pz + py)
        .sub(&y.scale_left(&pi_z.mul(&pi_x), pz + px));

    let sum = t1.add(&t2);
    let sum = if outer.is_minus() { sum.neg() } else { sum };
    lc.riemann(x, y, z).add(&sum)
}

/// `R_∇̂(X,Y)Z` minus [`semi_symmetric_curvature_rhs`].
pub fn semi_symmetric_curvature_residual(
    m: &Manifold,
    lc: &Connection,
    ssnm: &Connection,
    p: &VectorField,
    x: &VectorField,
    y: &VectorField,
    z: &VectorField,
) -> VectorField {
    ssnm.riemann(x, y, z)
        .sub(&semi_symmetric_curvature_rhs(m, lc, p, x, y, z))
}
