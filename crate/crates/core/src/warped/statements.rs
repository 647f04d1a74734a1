use crate::connection::laplacian;
use crate::error::{Error, Result};
use crate::geometry::{Chart, VectorField};
use crate::graded::SuperScalar;
use crate::parity::{koszul, Parity, Sign};
use crate::report::{field_residual, scalar_residual, VerificationReport};
use crate::scalar::RatFunc;
use crate::specfile::PLocation;

use super::WarpedProduct;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    Base,
    Fiber,
}

/// A field on one factor, identified with its lift to the product.
#[derive(Clone, Debug, PartialEq)]
pub enum Arg {
    Base(VectorField),
    Fiber(VectorField),
}

impl Arg {
    fn block(&self) -> Block {
        match self {
            Arg::Base(_) => Block::Base,
            Arg::Fiber(_) => Block::Fiber,
        }
    }

    fn field(&self) -> &VectorField {
        match self {
            Arg::Base(v) | Arg::Fiber(v) => v,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Field(VectorField),
    Scalar(SuperScalar),
}

#[derive(Clone, Copy, Debug)]
pub struct Item {
    pub label: &'static str,
    pub slots: &'static [Block],
    /// Only stated for an even metric and an even `P`.
    pub even_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statement {
    /// Levi-Civita connection of the product in base/fiber blocks.
    LcConnection,
    /// Semi-symmetric connection with `P` on the base.
    SsnmConnectionBase,
    /// Semi-symmetric connection with `P` on the fiber.
    SsnmConnectionFiber,
    LcCurvature,
    SsnmCurvatureBase,
    SsnmCurvatureFiber,
    LcRicci,
    SsnmRicciBase,
}

use Block::{Base as B, Fiber as F};

const fn item(label: &'static str, slots: &'static [Block]) -> Item {
    Item {
        label,
        slots,
        even_only: false,
    }
}

const fn even_item(label: &'static str, slots: &'static [Block]) -> Item {
    Item {
        label,
        slots,
        even_only: true,
    }
}

const CONNECTION_ITEMS: &[Item] = &[
    item("1", &[B, B]),
    item("2", &[B, F]),
    item("3", &[F, B]),
    item("4", &[F, F]),
];

const CURVATURE_ITEMS: &[Item] = &[
    item("1", &[B, B, B]),
    item("2", &[F, B, B]),
    item("3", &[B, B, F]),
    item("4", &[F, F, B]),
    item("5", &[B, F, F]),
    item("6", &[F, F, F]),
];

const SSNM_BASE_CURVATURE_ITEMS: &[Item] = &[
    item("1", &[B, B, B]),
    item("2", &[F, B, B]),
    item("3", &[B, B, F]),
    item("4", &[F, F, B]),
    item("5", &[B, F, F]),
    even_item("5-even", &[B, F, F]),
    item("6", &[F, F, F]),
    even_item("6-even", &[F, F, F]),
];

const LC_RICCI_ITEMS: &[Item] = &[
    item("1", &[B, B]),
    item("2", &[B, F]),
    item("2-swapped", &[F, B]),
    item("3", &[F, F]),
];

const SSNM_RICCI_ITEMS: &[Item] = &[
    item("1", &[B, B]),
    item("2", &[B, F]),
    item("2-swapped", &[F, B]),
    even_item("3", &[F, F]),
];

impl Statement {
    pub const ALL: [Statement; 8] = [
        Statement::LcConnection,
        Statement::SsnmConnectionBase,
        Statement::SsnmConnectionFiber,
        Statement::LcCurvature,
        Statement::SsnmCurvatureBase,
        Statement::SsnmCurvatureFiber,
        Statement::LcRicci,
        Statement::SsnmRicciBase,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Statement::LcConnection => "lc-connection",
            Statement::SsnmConnectionBase => "ssnm-connection-base",
            Statement::SsnmConnectionFiber => "ssnm-connection-fiber",
            Statement::LcCurvature => "lc-curvature",
            Statement::SsnmCurvatureBase => "ssnm-curvature-base",
            Statement::SsnmCurvatureFiber => "ssnm-curvature-fiber",
            Statement::LcRicci => "lc-ricci",
            Statement::SsnmRicciBase => "ssnm-ricci-base",
        }
    }

    pub fn from_id(id: &str) -> Option<Statement> {
        Statement::ALL.into_iter().find(|s| s.id() == id)
    }

    pub fn description(self) -> &'static str {
        match self {
            Statement::LcConnection => "Levi-Civita connection of the warped product",
            Statement::SsnmConnectionBase => "semi-symmetric connection, P on the base",
            Statement::SsnmConnectionFiber => "semi-symmetric connection, P on the fiber",
            Statement::LcCurvature => "Levi-Civita curvature of the warped product",
            Statement::SsnmCurvatureBase => "semi-symmetric curvature, P on the base",
            Statement::SsnmCurvatureFiber => "semi-symmetric curvature, P on the fiber",
            Statement::LcRicci => "Levi-Civita Ricci tensor of the warped product",
            Statement::SsnmRicciBase => "semi-symmetric Ricci tensor, P on the base",
        }
    }

    /// Where the statement needs `P`, if it uses `P` at all.
    pub fn requires(self) -> Option<PLocation> {
        match self {
            Statement::SsnmConnectionBase | Statement::SsnmCurvatureBase | Statement::SsnmRicciBase => {
                Some(PLocation::Base)
            }
            Statement::SsnmConnectionFiber | Statement::SsnmCurvatureFiber => Some(PLocation::Fiber),
            _ => None,
        }
    }

    pub fn items(self) -> &'static [Item] {
        match self {
            Statement::LcConnection | Statement::SsnmConnectionBase | Statement::SsnmConnectionFiber => {
                CONNECTION_ITEMS
            }
            Statement::LcCurvature | Statement::SsnmCurvatureFiber => CURVATURE_ITEMS,
            Statement::SsnmCurvatureBase => SSNM_BASE_CURVATURE_ITEMS,
            Statement::LcRicci => LC_RICCI_ITEMS,
            Statement::SsnmRicciBase => SSNM_RICCI_ITEMS,
        }
    }

    fn item(self, label: &str) -> Result<Item> {
        self.items()
            .iter()
            .find(|i| i.label == label)
            .copied()
            .ok_or_else(|| Error::Unsupported(format!("{} has no item '{label}'", self.id())))
    }

    fn kind(self) -> Kind {
        match self {
            Statement::LcConnection | Statement::SsnmConnectionBase | Statement::SsnmConnectionFiber => {
                Kind::Connection
            }
            Statement::LcCurvature | Statement::SsnmCurvatureBase | Statement::SsnmCurvatureFiber => {
                Kind::Curvature
            }
            Statement::LcRicci | Statement::SsnmRicciBase => Kind::Ricci,
        }
    }

    fn ssnm(self) -> bool {
        self.requires().is_some()
    }

    pub fn check_hypotheses(self, w: &WarpedProduct) -> Result<()> {
        if let Some(loc) = self.requires() {
            let ok = w.p().map(|p| p.location) == Some(loc);
            if !ok {
                let requirement = match loc {
                    PLocation::Base => "P must be a vector field on the base (P ∈ Vect(M1))",
                    PLocation::Fiber => "P must be a vector field on the fiber (P ∈ Vect(M2))",
                };
                return Err(Error::Hypothesis {
                    statement: self.id().into(),
                    requirement: requirement.into(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Connection,
    Curvature,
    Ricci,
}

fn signed(v: VectorField, s: Sign) -> VectorField {
    if s.is_minus() {
        v.neg()
    } else {
        v
    }
}

fn times(f: &SuperScalar, v: &VectorField) -> VectorField {
    let pf = f.parity().expect("homogeneous coefficient");
    v.scale_left(f, pf)
}

fn half() -> RatFunc {
    RatFunc::ratio(1, 2)
}

fn int(n: i64) -> SuperScalar {
    SuperScalar::int(n)
}

/// Intrinsic quantities of the factors, lifted to the product.
struct Ev<'a> {
    w: &'a WarpedProduct,
    hinv: SuperScalar,
}

impl<'a> Ev<'a> {
    fn new(w: &'a WarpedProduct) -> Result<Self> {
        let hinv = w
            .h()
            .inverse()
            .ok_or_else(|| Error::DivisionByZero("warping function".into()))?;
        Ok(Ev { w, hinv })
    }

    fn bchart(&self) -> &Chart {
        self.w.base().chart()
    }

    fn g_par(&self) -> Parity {
        self.w.metric_parity()
    }

    fn h(&self) -> &SuperScalar {
        self.w.h()
    }

    fn lb(&self, x: &VectorField) -> VectorField {
        self.w.lift_base(x)
    }

    fn lf(&self, u: &VectorField) -> VectorField {
        self.w.lift_fiber(u)
    }

    fn zero(&self, p: Parity) -> VectorField {
        VectorField::zero_with_parity(self.w.total().chart(), p)
    }

    /// `X(h)`.
    fn xh(&self, x: &VectorField) -> SuperScalar {
        x.apply(self.bchart(), self.h())
    }

    fn g1(&self, x: &VectorField, y: &VectorField) -> SuperScalar {
        self.w.base().eval(x, y)
    }

    fn g2(&self, u: &VectorField, v: &VectorField) -> SuperScalar {
        self.w.lift_fiber_scalar(&self.w.fiber().eval(u, v))
    }

    /// `g_μ(U, V) = h² g₂(U, V)` for fiber fields.
    fn gmu(&self, u: &VectorField, v: &VectorField) -> SuperScalar {
        self.h().mul(self.h()).mul(&self.g2(u, v))
    }

    fn grad_h(&self) -> Result<VectorField> {
        self.w.base().gradient(self.h())
    }

    /// `(grad h)(h)`.
    fn grad_h_h(&self) -> Result<SuperScalar> {
        Ok(self.grad_h()?.apply(self.bchart(), self.h()))
    }

    fn lap_h(&self) -> Result<SuperScalar> {
        laplacian(self.w.base(), self.w.base_lc(), self.h())
    }

    fn hess(&self, x: &VectorField, y: &VectorField) -> SuperScalar {
        self.w.base_lc().hessian(self.h(), x, y)
    }

    fn p_factor(&self) -> Result<&VectorField> {
        self.w
            .p()
            .map(|p| &p.factor)
            .ok_or_else(|| Error::Hypothesis {
                statement: self.w.name().into(),
                requirement: "a structure field P".into(),
            })
    }

    fn p_par(&self) -> Parity {
        self.w.p().map(|p| p.factor.parity()).unwrap_or(Parity::Even)
    }

    fn p_total(&self) -> Result<VectorField> {
        Ok(self.w.p().ok_or_else(|| Error::Unsupported("no structure field".into()))?.total.clone())
    }

    /// `π(X) = g₁(X, P)` for base `P`.
    fn pi_b(&self, x: &VectorField) -> Result<SuperScalar> {
        Ok(self.g1(x, self.p_factor()?))
    }

    /// `π(V) = g_μ(V, P)` for fiber `P`.
    fn pi_f(&self, v: &VectorField) -> Result<SuperScalar> {
        Ok(self.gmu(v, self.p_factor()?))
    }

    /// `P(h)` for base `P`.
    fn p_h(&self) -> Result<SuperScalar> {
        Ok(self.p_factor()?.apply(self.bchart(), self.h()))
    }

    fn q_minus_n(&self) -> i64 {
        let (q, n) = self.w.fiber_dims();
        q as i64 - n as i64
    }

    fn p_minus_m(&self) -> i64 {
        let (p, m) = self.w.base_dims();
        p as i64 - m as i64
    }

    /// `-h g₂(U,W) grad h + ∇^{M₂}_U W`.
    fn lc_fiber_fiber(&self, u: &VectorField, wf: &VectorField) -> Result<VectorField> {
        let coeff = self.h().mul(&self.g2(u, wf)).neg();
        Ok(times(&coeff, &self.lb(&self.grad_h()?)).add(&self.lf(&self.w.fiber_lc().covariant(u, wf))))
    }

    fn connection(&self, stmt: Statement, label: &str, a: &VectorField, b: &VectorField) -> Result<VectorField> {
        let (pa, pb) = (a.parity(), b.parity());
        let ratio = |x: &VectorField| self.xh(x).mul(&self.hinv);
        Ok(match (stmt, label) {
            (Statement::LcConnection, "1") => {
                self.lb(&self.w.base_lc().covariant(a, b))
            }
            (Statement::SsnmConnectionBase, "1") => {
                let c = self.w.base_ssnm().expect("base connection present");
                self.lb(&c.covariant(a, b))
            }
            (Statement::SsnmConnectionFiber, "1") => {
                let p = self.p_total()?;
                self.lb(&self.w.base_lc().covariant(a, b))
                    .sub(&times(&self.g1(a, b), &p))
            }
            (Statement::LcConnection | Statement::SsnmConnectionBase, "2") => times(&ratio(a), &self.lf(b)),
            (Statement::SsnmConnectionFiber, "2") => {
                let pi = self.pi_f(b)?;
                let ppi = pi.parity().unwrap_or(Parity::Even);
                times(&ratio(a), &self.lf(b)).add(&self.lb(a).scale_right(&pi, ppi))
            }
            (Statement::LcConnection | Statement::SsnmConnectionFiber, "3") => {
                signed(times(&ratio(b), &self.lf(a)), koszul(pa, pb))
            }
            (Statement::SsnmConnectionBase, "3") => {
                let c = ratio(b).add(&self.pi_b(b)?);
                signed(times(&c, &self.lf(a)), koszul(pa, pb))
            }
            (Statement::LcConnection | Statement::SsnmConnectionBase, "4") => self.lc_fiber_fiber(a, b)?,
            (Statement::SsnmConnectionFiber, "4") => {
                let pi = self.pi_f(b)?;
                let ppi = pi.parity().unwrap_or(Parity::Even);
                self.lc_fiber_fiber(a, b)?.add(&self.lf(a).scale_right(&pi, ppi))
            }
            _ => unreachable!("item labels are validated"),
        })
    }

    fn curvature(&self, stmt: Statement, label: &str, a: &VectorField, b: &VectorField, c: &VectorField) -> Result<VectorField> {
        let (pa, pb, pc) = (a.parity(), b.parity(), c.parity());
        let out_par = pa + pb + pc;
        let g = self.g_par();
        let hinv = &self.hinv;
        Ok(match (stmt, label) {
            // Base triple.
            (Statement::LcCurvature | Statement::SsnmCurvatureFiber, "1") => {
                self.lb(&self.w.base_lc().riemann(a, b, c))
            }
            (Statement::SsnmCurvatureBase, "1") => {
                let conn = self.w.base_ssnm().expect("base connection present");
                self.lb(&conn.riemann(a, b, c))
            }
            // R(V, X)Y.
            (Statement::LcCurvature, "2") => {
                let (v, x, y) = (a, b, c);
                let coeff = self.hess(x, y).mul(hinv);
                signed(times(&coeff, &self.lf(v)), -koszul(v.parity(), x.parity() + y.parity()))
            }
            (Statement::SsnmCurvatureBase, "2") => {
                let (v, x, y) = (a, b, c);
                let p = self.p_factor()?;
                let nabla_p = self.w.base_lc().covariant(x, p);
                let coeff = self
                    .hess(x, y)
                    .mul(hinv)
                    .add(&self.g1(y, &nabla_p).signed(koszul(x.parity(), y.parity())))
                    .sub(&self.pi_b(x)?.mul(&self.pi_b(y)?));
                signed(times(&coeff, &self.lf(v)), -koszul(v.parity(), x.parity() + y.parity()))
            }
            (Statement::SsnmCurvatureFiber, "2") => {
                let (v, x, y) = (a, b, c);
                let (pv, px, py) = (v.parity(), x.parity(), y.parity());
                let p = self.p_factor()?;
                let grad = self.grad_h()?;
                let t1 = signed(times(&self.hess(x, y).mul(hinv), &self.lf(v)), -koszul(pv, px + py));
                let k2 = self.h().mul(&self.g2(v, p)).mul(&self.g1(y, &grad));
                let t2 = signed(times(&k2, &self.lb(x)), -koszul(px, py));
                let inner = self
                    .lf(&self.w.fiber_lc().covariant(v, p))
                    .sub(&times(&self.h().mul(&self.g2(v, p)), &self.lb(&grad)));
                let t3 = signed(times(&self.g1(x, y), &inner), -koszul(px + py + g, pv));
                t1.add(&t2).add(&t3)
            }
            // R(X, Y)V.
            (Statement::LcCurvature | Statement::SsnmCurvatureBase, "3") => self.zero(out_par),
            (Statement::SsnmCurvatureFiber, "3") => {
                let (x, y, v) = (a, b, c);
                let (px, py, pv) = (x.parity(), y.parity(), v.parity());
                let bracket = times(&self.xh(x).mul(hinv), &self.lb(y))
                    .sub(&signed(times(&self.xh(y).mul(hinv), &self.lb(x)), koszul(px, py)));
                signed(times(&self.pi_f(v)?, &bracket), koszul(px + py, pv))
            }
            // R(V, W)X.
            (Statement::LcCurvature | Statement::SsnmCurvatureBase, "4") => self.zero(out_par),
            (Statement::SsnmCurvatureFiber, "4") => {
                let (v, wf, x) = (a, b, c);
                let (pv, pw, px) = (v.parity(), wf.parity(), x.parity());
                let p = self.p_factor()?;
                let gx = self.g1(x, &self.grad_h()?);
                let t1 = signed(
                    times(&self.h().mul(&self.g2(v, p)).mul(&gx), &self.lf(wf)),
                    -koszul(px, pw),
                );
                let t2 = signed(
                    times(&self.h().mul(&self.g2(wf, p)).mul(&gx), &self.lf(v)),
                    koszul(pv + px, pw),
                );
                t1.add(&t2)
            }
            // R(X, V)W.
            (Statement::LcCurvature, "5") => {
                let (x, v, wf) = (a, b, c);
                let coeff = self.gmu(v, wf).mul(hinv);
                let d = self.lb(&self.w.base_lc().covariant(x, &self.grad_h()?));
                signed(times(&coeff, &d), -koszul(x.parity(), v.parity() + wf.parity() + g))
            }
            (Statement::SsnmCurvatureBase, "5") | (Statement::SsnmCurvatureBase, "5-even") => {
                let (x, v, wf) = (a, b, c);
                let (px, pv, pw) = (x.parity(), v.parity(), wf.parity());
                let general = label == "5";
                let d = times(hinv, &self.lb(&self.w.base_lc().covariant(x, &self.grad_h()?)));
                let ph = self.p_h()?.mul(hinv);
                let ph = if general { ph.signed(koszul(px + self.p_par(), g)) } else { ph };
                let bracket = d.add(&times(&ph, &self.lb(x)));
                let outer = if general { koszul(px, pv + pw + g) } else { koszul(px, pv + pw) };
                signed(times(&self.gmu(v, wf), &bracket), -outer)
            }
            (Statement::SsnmCurvatureFiber, "5") => {
                let (x, v, wf) = (a, b, c);
                let (px, pv, pw) = (x.parity(), v.parity(), wf.parity());
                let p = self.p_factor()?;
                let d = self.lb(&self.w.base_lc().covariant(x, &self.grad_h()?));
                let t1 = signed(times(&self.gmu(v, wf).mul(hinv), &d), -koszul(px, pv + pw + g));
                let i1 = signed(
                    times(&self.xh(x).mul(hinv).mul(&self.gmu(wf, p)), &self.lf(v)),
                    koszul(px, pw),
                );
                let nabla_vp = self.w.fiber_lc().covariant(v, p);
                let i2 = signed(times(&self.gmu(wf, &nabla_vp), &self.lb(x)), koszul(px, pv));
                let t2 = signed(i1.sub(&i2), koszul(px + pv, pw));
                let t3 = signed(
                    times(&self.pi_f(wf)?.mul(&self.pi_f(v)?), &self.lb(x)),
                    koszul(px + pv, pw) * koszul(px, pv),
                );
                t1.add(&t2).add(&t3)
            }
            // Fiber triple.
            (Statement::LcCurvature, "6") => {
                let (v, wf, u) = (a, b, c);
                let (pv, pw, pu) = (v.parity(), wf.parity(), u.parity());
                let gh = self.grad_h_h()?;
                let r = self.lf(&self.w.fiber_lc().riemann(v, wf, u));
                let t1 = signed(times(&self.g2(wf, u).mul(&gh), &self.lf(v)), -koszul(pv, pw + pu));
                let t2 = signed(times(&self.g2(v, u).mul(&gh), &self.lf(wf)), koszul(pw, pu));
                r.add(&t1).add(&t2)
            }
            (Statement::SsnmCurvatureBase, "6") | (Statement::SsnmCurvatureBase, "6-even") => {
                let (u, v, wf) = (a, b, c);
                let (pu, pv, pw) = (u.parity(), v.parity(), wf.parity());
                let general = label == "6";
                let pp = self.p_par();
                let h2inv = hinv.mul(hinv);
                let gh = self.grad_h_h()?.mul(&h2inv);
                let ph = self.p_h()?.mul(hinv);
                let (s1, s2, s3, s4) = if general {
                    (koszul(g, pw + g), koszul(pp, pw + g), koszul(pp, pu), koszul(pp, pv))
                } else {
                    (Sign::PLUS, Sign::PLUS, Sign::PLUS, Sign::PLUS)
                };
                let coeff = gh.signed(s1).add(&ph.signed(s2));
                let b1 = signed(times(&self.gmu(u, wf), &self.lf(v)), koszul(pv, pw) * s3);
                let b2 = signed(times(&self.gmu(v, wf), &self.lf(u)), koszul(pu, pv + pw) * s4);
                let r = self.lf(&self.w.fiber_lc().riemann(u, v, wf));
                r.add(&times(&coeff, &b1.sub(&b2)))
            }
            (Statement::SsnmCurvatureFiber, "6") => {
                let (u, v, wf) = (a, b, c);
                let (pu, pv, pw) = (u.parity(), v.parity(), wf.parity());
                let p = self.p_factor()?;
                let gh = self.grad_h_h()?;
                let r = self.lf(&self.w.fiber_lc().riemann(u, v, wf));
                let t1 = signed(times(&self.g2(v, wf).mul(&gh), &self.lf(u)), -koszul(pu, pv + pw));
                let t2 = signed(times(&self.g2(u, wf).mul(&gh), &self.lf(v)), koszul(pv, pw));
                let nu = self.w.fiber_lc().covariant(u, p);
                let nv = self.w.fiber_lc().covariant(v, p);
                let i1 = times(&self.gmu(wf, &nu), &self.lf(v));
                let i2 = signed(times(&self.gmu(wf, &nv), &self.lf(u)), koszul(pu, pv));
                let t3 = signed(i1.sub(&i2), koszul(pu + pv, pw));
                let j1 = signed(times(&self.pi_f(v)?, &self.lf(u)), koszul(pu, pv));
                let j2 = times(&self.pi_f(u)?, &self.lf(v));
                let t4 = signed(times(&self.pi_f(wf)?, &j1.sub(&j2)), koszul(pu + pv, pw));
                r.add(&t1).add(&t2).add(&t3).add(&t4)
            }
            _ => unreachable!("item labels are validated"),
        })
    }

    fn ricci(&self, stmt: Statement, label: &str, a: &VectorField, b: &VectorField) -> Result<SuperScalar> {
        let qn = RatFunc::int(self.q_minus_n());
        let hinv = &self.hinv;
        Ok(match (stmt, label) {
            (Statement::LcRicci, "1") => {
                let r = self.w.base_lc().ricci(a, b);
                r.sub(&self.hess(a, b).mul(hinv).scale(&qn))
            }
            (Statement::SsnmRicciBase, "1") => {
                let conn = self.w.base_ssnm().expect("base connection present");
                let p = self.p_factor()?;
                let (pa, pb) = (a.parity(), b.parity());
                let na = self.w.base_lc().covariant(a, p);
                let nb = self.w.base_lc().covariant(b, p);
                let bracket = self
                    .hess(a, b)
                    .mul(hinv)
                    .sub(&self.pi_b(a)?.mul(&self.pi_b(b)?))
                    .add(&self.g1(b, &na).signed(koszul(pa, pb)).scale(&half()))
                    .add(&self.g1(a, &nb).scale(&half()));
                conn.ricci(a, b).sub(&bracket.scale(&qn))
            }
            (_, "2") | (_, "2-swapped") => int(0),
            (Statement::LcRicci, "3") | (Statement::SsnmRicciBase, "3") => {
                let r = self.w.lift_fiber_scalar(&self.w.fiber_lc().ricci(a, b));
                let h2inv = hinv.mul(hinv);
                let mut bracket = self
                    .lap_h()?
                    .mul(hinv)
                    .add(&self.grad_h_h()?.mul(&h2inv).scale(&RatFunc::int(self.q_minus_n() - 1)));
                if stmt == Statement::SsnmRicciBase {
                    let k = self.q_minus_n() - 1 + self.p_minus_m();
                    bracket = bracket.add(&self.p_h()?.mul(hinv).scale(&RatFunc::int(k)));
                }
                r.sub(&self.gmu(a, b).mul(&bracket))
            }
            _ => unreachable!("item labels are validated"),
        })
    }
}

fn check_slots(stmt: Statement, item: &Item, args: &[Arg]) -> Result<()> {
    if args.len() != item.slots.len() {
        return Err(Error::DimensionMismatch {
            expected: item.slots.len(),
            found: args.len(),
        });
    }
    for (k, (arg, want)) in args.iter().zip(item.slots).enumerate() {
        if arg.block() != *want {
            return Err(Error::WrongBlock(format!(
                "{}({}) argument {} must be a {} field",
                stmt.id(),
                item.label,
                k + 1,
                match want {
                    Block::Base => "base",
                    Block::Fiber => "fiber",
                }
            )));
        }
    }
    Ok(())
}

/// The statement's right-hand side, built from base- and fiber-intrinsic
/// quantities only.
pub fn closed_form(w: &WarpedProduct, stmt: Statement, label: &str, args: &[Arg]) -> Result<Value> {
    let item = stmt.item(label)?;
    check_slots(stmt, &item, args)?;
    stmt.check_hypotheses(w)?;
    let ev = Ev::new(w)?;
    let f: Vec<&VectorField> = args.iter().map(Arg::field).collect();
    Ok(match stmt.kind() {
        Kind::Connection => Value::Field(ev.connection(stmt, label, f[0], f[1])?),
        Kind::Curvature => Value::Field(ev.curvature(stmt, label, f[0], f[1], f[2])?),
        Kind::Ricci => Value::Scalar(ev.ricci(stmt, label, f[0], f[1])?),
    })
}

fn lift(w: &WarpedProduct, a: &Arg) -> VectorField {
    match a {
        Arg::Base(x) => w.lift_base(x),
        Arg::Fiber(u) => w.lift_fiber(u),
    }
}

/// The statement's left-hand side, computed on the assembled product.
pub fn direct(w: &WarpedProduct, stmt: Statement, label: &str, args: &[Arg]) -> Result<Value> {
    let item = stmt.item(label)?;
    check_slots(stmt, &item, args)?;
    stmt.check_hypotheses(w)?;
    let conn = if stmt.ssnm() {
        w.total_ssnm().expect("hypotheses checked")
    } else {
        w.total_lc()
    };
    let f: Vec<VectorField> = args.iter().map(|a| lift(w, a)).collect();
    Ok(match stmt.kind() {
        Kind::Connection => Value::Field(conn.covariant(&f[0], &f[1])),
        Kind::Curvature => Value::Field(conn.riemann(&f[0], &f[1], &f[2])),
        Kind::Ricci => Value::Scalar(conn.ricci(&f[0], &f[1])),
    })
}

fn tuple_label(w: &WarpedProduct, args: &[(Block, usize)]) -> String {
    let names: Vec<String> = args
        .iter()
        .map(|(b, i)| match b {
            Block::Base => format!("d_{}", w.base().chart().name(*i)),
            Block::Fiber => format!("d_{}", w.fiber().chart().name(*i)),
        })
        .collect();
    format!("({})", names.join(", "))
}

fn frame_tuples(w: &WarpedProduct, slots: &[Block]) -> Vec<Vec<(Block, usize)>> {
    let mut out: Vec<Vec<(Block, usize)>> = vec![Vec::new()];
    for b in slots {
        let n = match b {
            Block::Base => w.base().dim(),
            Block::Fiber => w.fiber().dim(),
        };
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push((*b, i));
                    t
                })
            })
            .collect();
    }
    out
}

fn frame_arg(w: &WarpedProduct, (b, i): (Block, usize)) -> Arg {
    match b {
        Block::Base => Arg::Base(VectorField::frame(w.base().chart(), i)),
        Block::Fiber => Arg::Fiber(VectorField::frame(w.fiber().chart(), i)),
    }
}

fn total_index(w: &WarpedProduct, (b, i): (Block, usize)) -> usize {
    match b {
        Block::Base => i,
        Block::Fiber => w.base().dim() + i,
    }
}

/// Compares both sides of every item of `stmt` on all frame tuples.
pub fn verify_statement(w: &WarpedProduct, stmt: Statement, seed: u64) -> Result<VerificationReport> {
    stmt.check_hypotheses(w)?;
    let mut report = VerificationReport::new(stmt.id());
    let even = w.metric_parity() == Parity::Even
        && w.p().map(|p| p.factor.parity()).unwrap_or(Parity::Even) == Parity::Even;
    let chart = w.total().chart();
    let assume = w.total().assumptions();
    for item in stmt.items() {
        if item.even_only && !even {
            report.note(format!(
                "{}({}) skipped on {}: stated only for an even metric and an even P",
                stmt.id(),
                item.label,
                w.name()
            ));
            continue;
        }
        let check_id = format!("{}/{}/{}", w.name(), stmt.id(), item.label);
        let anchor = format!("{} ({})", stmt.description(), item.label);
        for tuple in frame_tuples(w, item.slots) {
            let args: Vec<Arg> = tuple.iter().map(|t| frame_arg(w, *t)).collect();
            let rhs = closed_form(w, stmt, item.label, &args)?;
            let idx: Vec<usize> = tuple.iter().map(|t| total_index(w, *t)).collect();
            let residual = match (stmt.kind(), rhs) {
                (Kind::Curvature, Value::Field(r)) => {
                    let lhs = w.riemann_table(stmt.ssnm())?.get(idx[0], idx[1], idx[2]);
                    field_difference(lhs, &r, chart, assume, seed)
                }
                (Kind::Ricci, Value::Scalar(r)) => {
                    let lhs = w.ricci_table(stmt.ssnm())?.get(idx[0], idx[1]);
                    scalar_residual(&lhs.sub(&r), chart, assume, seed)
                }
                (_, rhs) => match (direct(w, stmt, item.label, &args)?, rhs) {
                    (Value::Field(l), Value::Field(r)) => field_difference(&l, &r, chart, assume, seed),
                    (Value::Scalar(l), Value::Scalar(r)) => scalar_residual(&l.sub(&r), chart, assume, seed),
                    _ => "type mismatch".into(),
                },
            };
            report.push(&check_id, &anchor, &tuple_label(w, &tuple), residual);
        }
    }
    Ok(report)
}

fn field_difference(
    l: &VectorField,
    r: &VectorField,
    chart: &Chart,
    assume: &crate::scalar::Assumptions,
    seed: u64,
) -> String {
    if !l.is_zero() && !r.is_zero() && l.parity() != r.parity() {
        return format!(
            "parity mismatch: {} vs {}",
            l.display_with(chart),
            r.display_with(chart)
        );
    }
    field_residual(&l.sub(r), chart, assume, seed)
}
