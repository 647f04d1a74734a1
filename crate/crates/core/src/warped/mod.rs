//! Super warped products `M₁ ×_μ M₂` with `μ = h²` and their block
//! formulas.

mod statements;

use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::connection::Connection;
use crate::curvature::{RicciTable, RiemannTable};
use crate::error::{Error, Result};
use crate::geometry::{Manifold, VectorField};
use crate::graded::SuperScalar;
use crate::parity::Parity;
use crate::scalar::{leaves_of, parse_expr, Atom, RatFunc, ScalarExpr, DEFAULT_SEED};
use crate::specfile::{field_from_map, PLocation, WarpedSpec};

pub use statements::{closed_form, direct, verify_statement, Arg, Block, Item, Statement, Value};

/// The structure field `P` on the factor it lives on and lifted to the
/// product.
#[derive(Clone, Debug)]
pub struct StructureField {
    pub location: PLocation,
    pub factor: VectorField,
    pub total: VectorField,
}

#[derive(Debug)]
pub struct WarpedProduct {
    name: String,
    base: Manifold,
    fiber: Manifold,
    total: Manifold,
    h_expr: ScalarExpr,
    h: SuperScalar,
    p: Option<StructureField>,
    base_lc: Connection,
    fiber_lc: Connection,
    total_lc: Connection,
    base_ssnm: Option<Connection>,
    total_ssnm: Option<Connection>,
    lc_riemann: OnceLock<RiemannTable>,
    ssnm_riemann: OnceLock<RiemannTable>,
    lc_ricci: OnceLock<RicciTable>,
    ssnm_ricci: OnceLock<RicciTable>,
}

fn warping_positive(h: &RatFunc, total: &Manifold) -> Result<()> {
    let leaves = leaves_of(h);
    let mut rng = StdRng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..32 {
        let point = total.assumptions().sample(&leaves, &mut rng);
        let v = h.eval(&|a: &Atom| point.get(a).copied());
        if v.is_finite() && v <= 0.0 {
            return Err(Error::NotPositive(format!("{h} takes the value {v} at an admissible point")));
        }
    }
    Ok(())
}

/// Assembles `g₁ ⊕ h²g₂` on the base coordinates followed by the fiber's.
pub fn build_warped(spec: &WarpedSpec) -> Result<WarpedProduct> {
    let base_spec = spec.base.resolve()?;
    let fiber_spec = spec.fiber.resolve()?;
    let base = base_spec.build()?;
    let fiber = fiber_spec.build()?;
    if base.parity() != fiber.parity() {
        return Err(Error::MetricParityMismatch {
            base: base.parity(),
            fiber: fiber.parity(),
        });
    }

    let h_expr = parse_expr(&spec.h)?;
    let h = base.chart().lift_expr(&h_expr)?;
    if !h.is_body_only() {
        return Err(Error::NotEven {
            name: "h".into(),
            found: spec.h.clone(),
        });
    }
    let hb = h.body();
    if hb.is_zero() {
        return Err(Error::NotPositive(spec.h.clone()));
    }
    let mut assumptions = base.assumptions().clone();
    assumptions.merge(fiber.assumptions());
    for atom in leaves_of(&hb) {
        match &atom {
            Atom::Var(v) | Atom::Func { arg: v, .. } => {
                if fiber.chart().index(v).is_ok() {
                    return Err(Error::WrongBlock(format!("warping function depends on fiber coordinate '{v}'")));
                }
            }
            _ => {}
        }
        if let Atom::Func { name, order: 0, .. } = &atom {
            assumptions.positive(name);
        }
    }

    let chart = base.chart().product(fiber.chart())?;
    let (nb, nf) = (base.dim(), fiber.dim());
    let shift = base.chart().dimension_pair().1;
    let h2 = h.mul(&h);
    let mut g = vec![vec![SuperScalar::zero(); nb + nf]; nb + nf];
    for i in 0..nb {
        for j in 0..nb {
            g[i][j] = base.entry(i, j).clone();
        }
    }
    for i in 0..nf {
        for j in 0..nf {
            g[nb + i][nb + j] = h2.mul(&fiber.entry(i, j).shift_odd(shift));
        }
    }
    let total = Manifold::new(chart, g, base.parity(), assumptions)?;
    warping_positive(&hb, &total)?;

    let p = match &spec.p {
        None => None,
        Some(ps) => {
            let (factor_chart, offset) = match ps.location {
                PLocation::Base => (base.chart(), 0),
                PLocation::Fiber => (fiber.chart(), nb),
            };
            let factor = field_from_map(factor_chart, &ps.coefficients)?;
            let s = if offset == 0 { 0 } else { shift };
            let lifted = factor.embed(offset, nb + nf, |c| c.shift_odd(s));
            Some(StructureField {
                location: ps.location,
                factor,
                total: lifted,
            })
        }
    };

    let base_lc = Connection::levi_civita(&base)?;
    let fiber_lc = Connection::levi_civita(&fiber)?;
    let total_lc = Connection::levi_civita(&total)?;
    let (base_ssnm, total_ssnm) = match &p {
        None => (None, None),
        Some(sf) => {
            let b = match sf.location {
                PLocation::Base => Some(Connection::semi_symmetric(&base, &sf.factor)?),
                PLocation::Fiber => None,
            };
            (b, Some(Connection::semi_symmetric(&total, &sf.total)?))
        }
    };

    Ok(WarpedProduct {
        name: spec.name.clone(),
        base,
        fiber,
        total,
        h_expr,
        h,
        p,
        base_lc,
        fiber_lc,
        total_lc,
        base_ssnm,
        total_ssnm,
        lc_riemann: OnceLock::new(),
        ssnm_riemann: OnceLock::new(),
        lc_ricci: OnceLock::new(),
        ssnm_ricci: OnceLock::new(),
    })
}

impl WarpedProduct {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Manifold {
        &self.base
    }

    pub fn fiber(&self) -> &Manifold {
        &self.fiber
    }

    pub fn total(&self) -> &Manifold {
        &self.total
    }

    pub fn h_expr(&self) -> &ScalarExpr {
        &self.h_expr
    }

    /// The warping function as a function on the base (and on the product).
    pub fn h(&self) -> &SuperScalar {
        &self.h
    }

    pub fn p(&self) -> Option<&StructureField> {
        self.p.as_ref()
    }

    pub fn metric_parity(&self) -> Parity {
        self.total.parity()
    }

    pub fn base_lc(&self) -> &Connection {
        &self.base_lc
    }

    pub fn fiber_lc(&self) -> &Connection {
        &self.fiber_lc
    }

    pub fn total_lc(&self) -> &Connection {
        &self.total_lc
    }

    pub fn base_ssnm(&self) -> Option<&Connection> {
        self.base_ssnm.as_ref()
    }

    pub fn total_ssnm(&self) -> Option<&Connection> {
        self.total_ssnm.as_ref()
    }

    /// `(p, m)` of the base.
    pub fn base_dims(&self) -> (usize, usize) {
        self.base.chart().dimension_pair()
    }

    /// `(q, n)` of the fiber.
    pub fn fiber_dims(&self) -> (usize, usize) {
        self.fiber.chart().dimension_pair()
    }

    fn odd_shift(&self) -> usize {
        self.base_dims().1
    }

    pub fn lift_base(&self, x: &VectorField) -> VectorField {
        x.embed(0, self.total.dim(), SuperScalar::clone)
    }

    pub fn lift_fiber(&self, u: &VectorField) -> VectorField {
        let s = self.odd_shift();
        u.embed(self.base.dim(), self.total.dim(), |c| c.shift_odd(s))
    }

    pub fn lift_fiber_scalar(&self, f: &SuperScalar) -> SuperScalar {
        f.shift_odd(self.odd_shift())
    }

    pub fn riemann_table(&self, ssnm: bool) -> Result<&RiemannTable> {
        if ssnm {
            let conn = self.ssnm_or_err()?;
            Ok(self.ssnm_riemann.get_or_init(|| RiemannTable::compute(conn)))
        } else {
            Ok(self.lc_riemann.get_or_init(|| RiemannTable::compute(&self.total_lc)))
        }
    }

    pub fn ricci_table(&self, ssnm: bool) -> Result<&RicciTable> {
        let r = self.riemann_table(ssnm)?;
        let cell = if ssnm { &self.ssnm_ricci } else { &self.lc_ricci };
        Ok(cell.get_or_init(|| RicciTable::from_riemann(self.total.chart(), r)))
    }

    fn ssnm_or_err(&self) -> Result<&Connection> {
        self.total_ssnm.as_ref().ok_or_else(|| Error::Hypothesis {
            statement: self.name.clone(),
            requirement: "a structure field P".into(),
        })
    }
}
