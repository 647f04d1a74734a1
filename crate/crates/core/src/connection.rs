//! Affine connections given by Christoffel fields `∇_{∂_i} ∂_j`.

use crate::error::{Error, Result};
use crate::geometry::{Chart, Manifold, VectorField};
use crate::graded::SuperScalar;
use crate::parity::{koszul, Parity};
use crate::scalar::RatFunc;

#[derive(Clone, Debug, PartialEq)]
pub enum ConnectionKind {
    LeviCivita,
    /// Semi-symmetric non-metric connection built from the field `P`.
    SemiSymmetric { p: VectorField },
    Custom,
}

#[derive(Clone, Debug)]
pub struct Connection {
    chart: Chart,
    gamma: Vec<Vec<VectorField>>,
    kind: ConnectionKind,
}

fn half() -> RatFunc {
    RatFunc::ratio(1, 2)
}

impl Connection {
    /// Levi-Civita connection from the Koszul formula on coordinate fields:
    /// `2⟨∇_{∂i}∂j, ∂k⟩ = ∂_i g_jk + (-1)^{|i|(|j|+|k|)} ∂_j g_ki
    /// - (-1)^{|k|(|i|+|j|)} ∂_k g_ij`.
    pub fn levi_civita(m: &Manifold) -> Result<Connection> {
        let chart = m.chart();
        let n = chart.dim();
        let inv = m.inverse()?;
        let p = |i: usize| chart.parity(i);
        let mut gamma = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let k_low: Vec<SuperScalar> = (0..n)
                    .map(|k| {
                        let a = chart.partial(i, m.entry(j, k));
                        let b = chart
                            .partial(j, m.entry(k, i))
                            .signed(koszul(p(i), p(j) + p(k)));
                        let c = chart
                            .partial(k, m.entry(i, j))
                            .signed(koszul(p(k), p(i) + p(j)));
                        a.add(&b).sub(&c).scale(&half())
                    })
                    .collect();
                let coeffs = (0..n)
                    .map(|l| {
                        let mut acc = SuperScalar::zero();
                        for (k, kk) in k_low.iter().enumerate() {
                            if !kk.is_zero() {
                                acc = acc.add(&kk.mul(inv.entry(k, l)));
                            }
                        }
                        acc
                    })
                    .collect();
                row.push(homogeneous_field(chart, coeffs, p(i) + p(j))?);
            }
            gamma.push(row);
        }
        Ok(Connection {
            chart: chart.clone(),
            gamma,
            kind: ConnectionKind::LeviCivita,
        })
    }

    /// `∇̂_X Y = ∇_X Y + X · g(Y, P)` on top of the Levi-Civita connection.
    pub fn semi_symmetric(m: &Manifold, p: &VectorField) -> Result<Connection> {
        if !p.is_zero() && m.parity() + p.parity() != Parity::Even {
            return Err(Error::ParityConstraint {
                metric: m.parity(),
                field: p.parity(),
            });
        }
        let lc = Connection::levi_civita(m)?;
        let chart = m.chart();
        let n = chart.dim();
        let mut gamma = lc.gamma.clone();
        for j in 0..n {
            let pi_j = m.eval(&VectorField::frame(chart, j), p);
            if pi_j.is_zero() {
                continue;
            }
            for (i, row) in gamma.iter_mut().enumerate() {
                let correction = VectorField::frame(chart, i).scale_right(&pi_j, chart.parity(j));
                row[j] = row[j].add(&correction);
            }
        }
        Ok(Connection {
            chart: chart.clone(),
            gamma,
            kind: ConnectionKind::SemiSymmetric { p: p.clone() },
        })
    }

    /// Connection with arbitrary Christoffel fields `gamma[i][j] = ∇_{∂i}∂j`.
    pub fn custom(chart: &Chart, gamma: Vec<Vec<VectorField>>) -> Result<Connection> {
        let n = chart.dim();
        if gamma.len() != n || gamma.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: gamma.len(),
            });
        }
        for (i, row) in gamma.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                if !f.is_zero() && f.parity() != chart.parity(i) + chart.parity(j) {
                    return Err(Error::Inhomogeneous {
                        what: format!(
                            "Christoffel field ({}, {}) (must preserve degree)",
                            chart.name(i),
                            chart.name(j)
                        ),
                    });
                }
            }
        }
        Ok(Connection {
            chart: chart.clone(),
            gamma,
            kind: ConnectionKind::Custom,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn kind(&self) -> &ConnectionKind {
        &self.kind
    }

    pub fn gamma(&self, i: usize, j: usize) -> &VectorField {
        &self.gamma[i][j]
    }

    pub fn gamma_table(&self) -> &[Vec<VectorField>] {
        &self.gamma
    }

    /// `∇_X Y`, extended from the Christoffel fields by linearity in `X`
    /// and the graded Leibniz rule in `Y`.
    pub fn covariant(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let chart = &self.chart;
        let n = chart.dim();
        let mut out = VectorField::zero_with_parity(chart, x.parity() + y.parity());
        for i in 0..n {
            let xi = x.component(i);
            if xi.is_zero() {
                continue;
            }
            let mut d = vec![SuperScalar::zero(); n];
            for j in 0..n {
                let yj = y.component(j);
                if yj.is_zero() {
                    continue;
                }
                d[j] = d[j].add(&chart.partial(i, yj));
                let g = &self.gamma[i][j];
                if g.is_zero() {
                    continue;
                }
                let s = koszul(chart.parity(i), y.parity() + chart.parity(j));
                let f = yj.signed(s);
                for (k, dk) in d.iter_mut().enumerate() {
                    let gk = g.component(k);
                    if !gk.is_zero() {
                        *dk = dk.add(&f.mul(gk));
                    }
                }
            }
            let coeffs = d.iter().map(|c| xi.mul(c)).collect();
            let term = homogeneous_field(chart, coeffs, x.parity() + y.parity())
                .expect("covariant derivative preserves degree");
            out = out.add(&term);
        }
        out
    }

    /// `T(X, Y) = ∇_X Y - (-1)^{|X||Y|} ∇_Y X - [X, Y]`.
    pub fn torsion(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let s = koszul(x.parity(), y.parity());
        let yx = self.covariant(y, x);
        let yx = if s.is_minus() { yx.neg() } else { yx };
        self.covariant(x, y)
            .sub(&yx)
            .sub(&x.bracket(&self.chart, y))
    }

    /// `X⟨Y,Z⟩ - ⟨∇_X Y, Z⟩ - (-1)^{|X||Y|} ⟨Y, ∇_X Z⟩`.
    pub fn nonmetricity(&self, m: &Manifold, x: &VectorField, y: &VectorField, z: &VectorField) -> SuperScalar {
        let s = koszul(x.parity(), y.parity());
        x.apply(&self.chart, &m.eval(y, z))
            .sub(&m.eval(&self.covariant(x, y), z))
            .sub(&m.eval(y, &self.covariant(x, z)).signed(s))
    }

    /// `(∇_X Y)(f)` subtracted from `X(Y(f))`.
    pub fn hessian(&self, f: &SuperScalar, x: &VectorField, y: &VectorField) -> SuperScalar {
        let chart = &self.chart;
        x.apply(chart, &y.apply(chart, f))
            .sub(&self.covariant(x, y).apply(chart, f))
    }

    /// `Σ_i (-1)^{|i|(|i|+|X|)} (∇_{∂i} X)^i`.
    pub fn divergence(&self, x: &VectorField) -> SuperScalar {
        let chart = &self.chart;
        let mut out = SuperScalar::zero();
        for i in 0..chart.dim() {
            let d = self.covariant(&VectorField::frame(chart, i), x);
            let s = koszul(chart.parity(i), chart.parity(i) + x.parity());
            out = out.add(&d.component(i).signed(s));
        }
        out
    }

    /// `R(X,Y)Z = ∇_X∇_Y Z - (-1)^{|X||Y|} ∇_Y∇_X Z - ∇_{[X,Y]} Z`.
    pub fn riemann(&self, x: &VectorField, y: &VectorField, z: &VectorField) -> VectorField {
        let s = koszul(x.parity(), y.parity());
        let a = self.covariant(x, &self.covariant(y, z));
        let b = self.covariant(y, &self.covariant(x, z));
        let b = if s.is_minus() { b.neg() } else { b };
        let br = x.bracket(&self.chart, y);
        let c = if br.is_zero() {
            VectorField::zero_with_parity(&self.chart, a.parity())
        } else {
            self.covariant(&br, z)
        };
        a.sub(&b).sub(&c)
    }

    /// `Σ_i (-1)^{|i|(|i|+|X|+|Y|)} ½ [R(∂_i,X)Y + (-1)^{|X||Y|} R(∂_i,Y)X]^i`.
    pub fn ricci(&self, x: &VectorField, y: &VectorField) -> SuperScalar {
        let chart = &self.chart;
        let sxy = koszul(x.parity(), y.parity());
        let mut out = SuperScalar::zero();
        for i in 0..chart.dim() {
            let e = VectorField::frame(chart, i);
            let a = self.riemann(&e, x, y);
            let b = self.riemann(&e, y, x);
            let comp = a.component(i).add(&b.component(i).signed(sxy));
            let s = koszul(chart.parity(i), chart.parity(i) + x.parity() + y.parity());
            out = out.add(&comp.signed(s));
        }
        out.scale(&half())
    }
}

fn homogeneous_field(chart: &Chart, coeffs: Vec<SuperScalar>, parity: Parity) -> Result<VectorField> {
    let f = VectorField::new(chart, coeffs)?;
    if f.is_zero() {
        Ok(VectorField::zero_with_parity(chart, parity))
    } else if f.parity() != parity {
        Err(Error::Inhomogeneous {
            what: "connection output".into(),
        })
    } else {
        Ok(f)
    }
}

/// The gradient of `f` followed by the Levi-Civita divergence.
pub fn laplacian(m: &Manifold, lc: &Connection, f: &SuperScalar) -> Result<SuperScalar> {
    Ok(lc.divergence(&m.gradient(f)?))
}

/// `π(Z) = ⟨Z, P⟩`.
pub fn one_form(m: &Manifold, p: &VectorField, z: &VectorField) -> SuperScalar {
    m.eval(z, p)
}

/// The torsion the semi-symmetric connection must have:
/// `X·g(Y,P) - (-1)^{|X||Y|} Y·g(X,P)`.
pub fn expected_torsion(m: &Manifold, p: &VectorField, x: &VectorField, y: &VectorField) -> VectorField {
    let a = x.scale_right(&one_form(m, p, y), y.parity() + m.parity() + p.parity());
    let b = y.scale_right(&one_form(m, p, x), x.parity() + m.parity() + p.parity());
    let b = if koszul(x.parity(), y.parity()).is_minus() { b.neg() } else { b };
    a.sub(&b)
}

/// The non-metricity the semi-symmetric connection must have, in the sign
/// convention of [`Connection::nonmetricity`]:
/// `-[(-1)^{|Y||X|} g(Y,P) g(X,Z) + (-1)^{|X||Y|} (-1)^{|Z|(|X|+|Y|)} g(Z,P) g(Y,X)]`.
pub fn expected_nonmetricity(
    m: &Manifold,
    p: &VectorField,
    x: &VectorField,
    y: &VectorField,
    z: &VectorField,
) -> SuperScalar {
    let (px, py, pz) = (x.parity(), y.parity(), z.parity());
    let a = one_form(m, p, y).mul(&m.eval(x, z)).signed(koszul(py, px));
    let b = one_form(m, p, z)
        .mul(&m.eval(y, x))
        .signed(koszul(px, py) * koszul(pz, px + py));
    a.add(&b).neg()
}

/// `∇^L_X Y + (-1)^{|X||Y|} g(Y,P) X`, evaluated directly.
pub fn semi_symmetric_direct(
    m: &Manifold,
    lc: &Connection,
    p: &VectorField,
    x: &VectorField,
    y: &VectorField,
) -> VectorField {
    let pi = one_form(m, p, y);
    let pf = y.parity() + m.parity() + p.parity();
    lc.covariant(x, y).add(&x.scale_right(&pi, pf))
}
