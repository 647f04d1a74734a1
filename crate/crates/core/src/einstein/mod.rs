//! Einstein conditions on `ℝ^{(1,0)} ×_μ M₂` and `ℝ^{(1,2)} ×_μ M₂` and the
//! closed-form classification of their warping functions.
//!
//! Internally the Einstein constant of the product is `λ` and the fiber
//! satisfies `Ric^{M₂} = κ g₂`. Problem descriptors carry `λ0 = -λ` and the
//! fiber constant `c0`; which of `κ = c0` or `κ = -c0` applies depends on the
//! family and is resolved by [`classify`].

mod classify;
mod elimination;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::connection::Connection;
use crate::curvature::RicciTable;
use crate::error::{Error, Result};
use crate::geometry::{Coord, Manifold};
use crate::graded::SuperScalar;
use crate::report::{scalar_residual, VerificationReport};
use crate::scalar::{parse_expr, Assumptions, RatFunc, ScalarExpr};
use crate::specfile::{FactorSpec, IntervalSpec, ManifoldSpec, PLocation, PSpec, WarpedSpec};
use crate::warped::{build_warped, WarpedProduct};

pub use classify::{classify, Classification};
pub use elimination::{elimination_check, elimination_matrix, reduced_fiber_residual, EliminationOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    /// `ℝ^{(1,0)}` with `g₁ = -dt⊗dt`.
    R10,
    /// `ℝ^{(1,2)}` with `g₁(∂t,∂t) = -1`, `g₁(∂ξ,∂η) = -1`.
    R12,
}

impl BaseKind {
    pub fn spec_name(self) -> &'static str {
        match self {
            BaseKind::R10 => "r10",
            BaseKind::R12 => "r12",
        }
    }
}

impl FromStr for BaseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r10" => Ok(BaseKind::R10),
            "r12" => Ok(BaseKind::R12),
            _ => Err(Error::SpecFormat(format!("unknown base '{s}' (expected R10 or R12)"))),
        }
    }
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseKind::R10 => "R10",
            BaseKind::R12 => "R12",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectionChoice {
    LeviCivita,
    /// Semi-symmetric non-metric connection with `P = ∂t`.
    SemiSymmetric,
}

impl FromStr for ConnectionChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lc" | "levi_civita" | "levi-civita" => Ok(ConnectionChoice::LeviCivita),
            "ssnm" => Ok(ConnectionChoice::SemiSymmetric),
            _ => Err(Error::SpecFormat(format!("unknown connection '{s}' (expected lc or ssnm)"))),
        }
    }
}

impl fmt::Display for ConnectionChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConnectionChoice::LeviCivita => "lc",
            ConnectionChoice::SemiSymmetric => "ssnm",
        })
    }
}

/// `None` in `lambda0` or `c0` leaves the constant symbolic.
#[derive(Clone, Debug, PartialEq)]
pub struct EinsteinProblem {
    pub base: BaseKind,
    pub connection: ConnectionChoice,
    /// `l = q - n` of the fiber.
    pub l: i64,
    pub lambda0: Option<BigRational>,
    pub c0: Option<BigRational>,
}

impl EinsteinProblem {
    pub fn new(base: BaseKind, connection: ConnectionChoice, l: i64) -> Self {
        EinsteinProblem {
            base,
            connection,
            l,
            lambda0: None,
            c0: None,
        }
    }

    pub fn with_lambda0(mut self, v: i64) -> Self {
        self.lambda0 = Some(BigRational::from_integer(v.into()));
        self
    }

    pub fn with_c0(mut self, v: i64) -> Self {
        self.c0 = Some(BigRational::from_integer(v.into()));
        self
    }

    /// The Einstein constant `λ = -λ0`, when `λ0` is known.
    pub fn lambda(&self) -> Option<BigRational> {
        self.lambda0.as_ref().map(|v| -v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    Exponential,
    Linear,
    Trigonometric,
    Constant,
    None,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyTag::Exponential => "exponential",
            FamilyTag::Linear => "linear",
            FamilyTag::Trigonometric => "trigonometric",
            FamilyTag::Constant => "constant",
            FamilyTag::None => "none",
        })
    }
}

/// A family of warping functions. `h` is an expression in `t` and the free
/// constants; implicit families keep `h = h(t)` and carry an explicit
/// `representative` used for residual checks.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionFamily {
    pub tag: FamilyTag,
    pub case: String,
    pub constants: Vec<String>,
    pub h: ScalarExpr,
    pub representative: Option<ScalarExpr>,
    /// Einstein constant `λ` of the product.
    pub lambda: ScalarExpr,
    /// `κ` with `Ric^{M₂} = κ g₂`; may involve `h(t)` for implicit families.
    pub fiber_constant: ScalarExpr,
    pub side_conditions: Vec<String>,
    /// Sampling intervals for `t` and the free constants.
    pub assumptions: Vec<(String, f64, f64)>,
}

impl SolutionFamily {
    /// The explicit warping function substituted in residual checks.
    pub fn explicit_h(&self) -> &ScalarExpr {
        self.representative.as_ref().unwrap_or(&self.h)
    }

    fn h_ratfunc(&self) -> RatFunc {
        self.explicit_h().to_ratfunc()
    }

    /// `κ` with `h` replaced by the explicit warping function.
    pub fn kappa(&self) -> RatFunc {
        self.fiber_constant.to_ratfunc().subst_func("h", &self.h_ratfunc())
    }

    pub fn sampling(&self) -> Assumptions {
        let mut a = Assumptions::new();
        for (name, lo, hi) in &self.assumptions {
            a.declare(name, *lo, *hi);
        }
        a
    }
}

impl fmt::Display for SolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family\t{}\t{}", self.tag, self.case)?;
        writeln!(f, "  h(t) = {}", self.h)?;
        if let Some(r) = &self.representative {
            writeln!(f, "  representative h(t) = {r}")?;
        }
        writeln!(f, "  lambda = {}", self.lambda)?;
        writeln!(f, "  fiber Einstein constant = {}", self.fiber_constant)?;
        if !self.constants.is_empty() {
            writeln!(f, "  free constants: {}", self.constants.join(", "))?;
        }
        for c in &self.side_conditions {
            writeln!(f, "  side condition: {c}")?;
        }
        Ok(())
    }
}

fn h_atoms() -> [RatFunc; 3] {
    [0, 1, 2].map(|k| RatFunc::func("h", "t", k))
}

/// The two scalar equations that reduce the Einstein condition for `(base,
/// connection)`: the `(∂t,∂t)` equation and the fiber-block equation, in
/// terms of a symbolic `h(t)`, `λ` and `κ`. Each vanishes on solutions.
pub fn governing_equations(
    base: BaseKind,
    connection: ConnectionChoice,
    l: i64,
    lambda: &RatFunc,
    kappa: &RatFunc,
) -> Result<[RatFunc; 2]> {
    let [h, h1, h2] = h_atoms();
    let lr = RatFunc::int(l);
    let lm1 = RatFunc::int(l - 1);
    let hh2 = h.mul(&h2);
    let h1sq = h1.mul(&h1);
    let hh1 = h.mul(&h1);
    let hsq = h.mul(&h);
    let ratio = h2.div(&h).sub(&RatFunc::one());
    match (base, connection) {
        (BaseKind::R10, ConnectionChoice::SemiSymmetric) => Ok([
            lr.mul(&ratio).sub(lambda),
            lambda
                .mul(&hsq)
                .sub(&hh2)
                .sub(&lm1.mul(&h1sq))
                .add(&lr.mul(&hh1))
                .sub(kappa),
        ]),
        (BaseKind::R12, ConnectionChoice::LeviCivita) => Ok([
            lambda.sub(&lr.mul(&h2).div(&h)),
            kappa.add(&hh2).add(&lm1.mul(&h1sq)).sub(&lambda.mul(&hsq)),
        ]),
        (BaseKind::R12, ConnectionChoice::SemiSymmetric) => Ok([
            RatFunc::int(2).sub(&lr.mul(&ratio)).add(lambda),
            lambda
                .mul(&hsq)
                .sub(&hh2)
                .sub(&lm1.mul(&h1sq))
                .add(&RatFunc::int(l - 2).mul(&hh1))
                .sub(kappa),
        ]),
        (BaseKind::R10, ConnectionChoice::LeviCivita) => Err(unsupported(base, connection)),
    }
}

pub(crate) fn unsupported(base: BaseKind, connection: ConnectionChoice) -> Error {
    Error::Unsupported(format!(
        "no classification covers base {base} with connection {connection}"
    ))
}

/// `Ric_IJ - λ g_IJ` over all frame pairs.
pub fn einstein_residual(m: &Manifold, conn: &Connection, lambda: &RatFunc) -> Vec<Vec<SuperScalar>> {
    residual_from_table(m, &RicciTable::compute(conn), lambda)
}

fn residual_from_table(m: &Manifold, ric: &RicciTable, lambda: &RatFunc) -> Vec<Vec<SuperScalar>> {
    let n = m.dim();
    (0..n)
        .map(|i| (0..n).map(|j| ric.get(i, j).sub(&m.entry(i, j).scale(lambda))).collect())
        .collect()
}

/// A fiber of super-dimension difference `l` whose Ricci tensor is `κ g₂`.
/// `Formal` fibers are flat and the term `κ g₂` is added to the fiber block
/// of the product's Ricci tensor by hand.
#[derive(Clone, Debug)]
pub enum TestFiber {
    Concrete(ManifoldSpec),
    Formal { flat: ManifoldSpec, kappa: RatFunc },
}

impl TestFiber {
    pub fn spec(&self) -> &ManifoldSpec {
        match self {
            TestFiber::Concrete(s) | TestFiber::Formal { flat: s, .. } => s,
        }
    }

    pub fn describe(&self) -> String {
        let s = self.spec();
        match self {
            TestFiber::Concrete(_) => format!("fiber {}", s.name),
            TestFiber::Formal { kappa, .. } => {
                format!("fiber {} with Ric = ({kappa}) g2 imposed formally", s.name)
            }
        }
    }
}

fn even_name(i: usize) -> String {
    format!("y{i}")
}

/// Flat fiber with `q - n = l`: `(l, 0)` for `l > 0`, `(2, 2)` for `l = 0`,
/// and `(l + n, n)` with the least even `n ≥ -l` otherwise.
pub fn flat_fiber(l: i64) -> ManifoldSpec {
    let (q, n) = if l > 0 {
        (l as usize, 0)
    } else if l == 0 {
        (2, 2)
    } else {
        let n = (-l + 1) / 2 * 2;
        ((l + n) as usize, n as usize)
    };
    let mut coordinates = Vec::new();
    let mut metric = BTreeMap::new();
    for i in 1..=q {
        coordinates.push(Coord::even(&even_name(i)));
        metric.insert(format!("y{i},y{i}"), "1".to_string());
    }
    for k in 1..=n {
        coordinates.push(Coord::odd(&format!("z{k}")));
    }
    for k in (1..=n).step_by(2) {
        metric.insert(format!("z{},z{}", k, k + 1), "1".to_string());
    }
    ManifoldSpec {
        name: format!("flat{q}{n}"),
        metric_parity: Default::default(),
        coordinates,
        metric,
        assumptions: BTreeMap::new(),
        p: None,
    }
}

/// Two-dimensional space form with `Ric = κ g` for rational `κ ≠ 0`.
fn space_form(kappa: &BigRational) -> ManifoldSpec {
    let mut metric = BTreeMap::new();
    let mut assumptions = BTreeMap::new();
    let k = format!("({}/{})", kappa.numer(), kappa.denom());
    let (name, entry) = if kappa > &BigRational::from_integer(0.into()) {
        ("sphere2", format!("4/({k}*(1 + x^2 + y^2)^2)"))
    } else {
        assumptions.insert("y".to_string(), IntervalSpec { gt: Some(0.0), lt: None });
        ("hyperbolic2", format!("-1/({k}*y^2)"))
    };
    metric.insert("x,x".to_string(), entry.clone());
    metric.insert("y,y".to_string(), entry);
    ManifoldSpec {
        name: name.into(),
        metric_parity: Default::default(),
        coordinates: vec![Coord::even("x"), Coord::even("y")],
        metric,
        assumptions,
        p: None,
    }
}

/// Picks a genuine Einstein fiber when one is available (flat for `κ = 0`,
/// a space form for rational `κ` and `l = 2`), else a formal one.
pub fn test_fiber(l: i64, kappa: &RatFunc) -> TestFiber {
    if kappa.is_zero() {
        return TestFiber::Concrete(flat_fiber(l));
    }
    if let (2, Some(k)) = (l, kappa.as_constant()) {
        return TestFiber::Concrete(space_form(&k));
    }
    TestFiber::Formal {
        flat: flat_fiber(l),
        kappa: kappa.clone(),
    }
}

/// The warped product carrying the family, with `P = ∂t` for the
/// semi-symmetric connection.
pub fn family_product(problem: &EinsteinProblem, family: &SolutionFamily, fiber: &TestFiber) -> Result<WarpedProduct> {
    let mut base = crate::bundled::manifold(problem.base.spec_name())?;
    for (name, lo, hi) in &family.assumptions {
        base.assumptions.insert(
            name.clone(),
            IntervalSpec {
                gt: Some(*lo),
                lt: Some(*hi),
            },
        );
    }
    let p = match problem.connection {
        ConnectionChoice::SemiSymmetric => Some(PSpec {
            location: PLocation::Base,
            coefficients: BTreeMap::from([("t".to_string(), "1".to_string())]),
        }),
        ConnectionChoice::LeviCivita => None,
    };
    let spec = WarpedSpec {
        name: format!("{}_{}", problem.base.spec_name(), fiber.spec().name),
        base: FactorSpec::Inline(Box::new(base)),
        fiber: FactorSpec::Inline(Box::new(fiber.spec().clone())),
        h: family.explicit_h().to_string(),
        p,
    };
    build_warped(&spec)
}

/// `Ric - λ g_μ` on a product with the given test fiber, including the
/// formal `κ g₂` term.
pub fn product_residual(
    w: &WarpedProduct,
    connection: ConnectionChoice,
    fiber: &TestFiber,
    lambda: &RatFunc,
) -> Result<Vec<Vec<SuperScalar>>> {
    let ric = w.ricci_table(connection == ConnectionChoice::SemiSymmetric)?;
    let mut out = residual_from_table(w.total(), ric, lambda);
    if let TestFiber::Formal { kappa, .. } = fiber {
        let nb = w.base().dim();
        for i in 0..w.fiber().dim() {
            for j in 0..w.fiber().dim() {
                let g2 = w.lift_fiber_scalar(w.fiber().entry(i, j));
                out[nb + i][nb + j] = out[nb + i][nb + j].add(&g2.scale(kappa));
            }
        }
    }
    Ok(out)
}

fn family_note(family: &SolutionFamily) -> Vec<String> {
    let mut notes = Vec::new();
    if family.representative.is_some() {
        notes.push(format!(
            "implicit family checked on the representative h(t) = {}",
            family.explicit_h()
        ));
    }
    notes
}

/// Substitutes the family into the governing equations and into the full
/// Einstein residual on a product with an Einstein test fiber. Failures are
/// recorded, not raised; only construction errors propagate.
pub fn residual_check(problem: &EinsteinProblem, family: &SolutionFamily, seed: u64) -> Result<VerificationReport> {
    let scope = format!("einstein-{}-{}", problem.base.spec_name(), problem.connection);
    let mut report = VerificationReport::new(scope.clone());
    let h = family.h_ratfunc();
    let lambda = family.lambda.to_ratfunc().subst_func("h", &h);
    let kappa = family.kappa();
    let mut assume = family.sampling();
    assume.merge(&crate::bundled::manifold(problem.base.spec_name())?.assumptions());
    let id = |what: &str| format!("{scope}/l={}/{}/{what}", problem.l, family.tag);
    let anchor = format!("{} ({})", family.case, family.tag);
    let chart = crate::bundled::manifold(problem.base.spec_name())?.chart()?;
    let render = |r: &RatFunc| scalar_residual(&SuperScalar::even(r.clone()), &chart, &assume, seed);

    let eqs = governing_equations(problem.base, problem.connection, problem.l, &lambda, &kappa)?;
    for (k, e) in eqs.iter().enumerate() {
        let r = e.subst_func("h", &h);
        let what = if k == 0 { "governing-tt" } else { "governing-fiber" };
        report.push(&id(what), &anchor, "(h)", render(&r));
    }
    report.push(&id("lambda-constant"), &anchor, "(d/dt lambda)", render(&lambda.diff("t")));
    report.push(&id("fiber-constant"), &anchor, "(d/dt kappa)", render(&kappa.diff("t")));

    let fiber = test_fiber(problem.l, &kappa);
    report.note(format!("{}: {}", id("einstein"), fiber.describe()));
    for n in family_note(family) {
        report.note(n);
    }
    let w = family_product(problem, family, &fiber)?;
    let res = product_residual(&w, problem.connection, &fiber, &lambda)?;
    let tchart = w.total().chart();
    let tassume = w.total().assumptions();
    for (i, row) in res.iter().enumerate() {
        for (j, r) in row.iter().enumerate() {
            report.push(
                &id("einstein"),
                &anchor,
                &format!("(d_{}, d_{})", tchart.name(i), tchart.name(j)),
                scalar_residual(r, tchart, tassume, seed),
            );
        }
    }
    Ok(report)
}

/// Checks the three Ricci formulas on `ℝ^{(1,0)} ×_μ M₂` with `P = ∂t` and
/// symbolic `h(t)`: `Ric(∂t,∂t) = -l(h''/h - 1)`, vanishing mixed blocks and
/// the fiber-block formula with the fiber's own Ricci tensor.
pub fn r10_ricci_check(w: &WarpedProduct, seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("ricci-r10-ssnm");
    let base_ok = w.base().dim() == 1 && w.base().chart().name(0) == "t";
    let p_ok = w
        .p()
        .is_some_and(|p| p.location == PLocation::Base && p.factor.component(0) == &SuperScalar::one());
    if !base_ok || !p_ok {
        return Err(Error::Hypothesis {
            statement: "ricci-r10-ssnm".into(),
            requirement: "base R10 with P = d_t".into(),
        });
    }
    let (q, n) = w.fiber_dims();
    let l = q as i64 - n as i64;
    let ric = w.ricci_table(true)?;
    let fiber_ric = RicciTable::compute(w.fiber_lc());
    let chart = w.total().chart();
    let assume = w.total().assumptions();
    let nb = w.base().dim();
    let h = w.h().body();
    let (h1, h2) = (h.diff("t"), h.diff("t").diff("t"));
    let lr = RatFunc::int(l);
    let id = |item: &str| format!("{}/ricci-r10-ssnm/{item}", w.name());
    let tuple = |i: usize, j: usize| format!("(d_{}, d_{})", chart.name(i), chart.name(j));

    let tt = lr.mul(&h2.div(&h).sub(&RatFunc::one())).neg();
    let r = ric.get(0, 0).sub(&SuperScalar::even(tt));
    report.push(&id("1"), "Ricci of the time direction (1)", &tuple(0, 0), scalar_residual(&r, chart, assume, seed));

    let bracket = h2
        .div(&h)
        .neg()
        .sub(&RatFunc::int(l - 1).mul(&h1.mul(&h1)).div(&h.mul(&h)))
        .add(&lr.mul(&h1).div(&h));
    for j in nb..w.total().dim() {
        for (a, b) in [(0, j), (j, 0)] {
            report.push(
                &id("2"),
                "mixed Ricci entries vanish (2)",
                &tuple(a, b),
                scalar_residual(ric.get(a, b), chart, assume, seed),
            );
        }
    }
    for i in nb..w.total().dim() {
        for j in nb..w.total().dim() {
            let expected = w
                .lift_fiber_scalar(fiber_ric.get(i - nb, j - nb))
                .sub(&w.total().entry(i, j).scale(&bracket));
            let r = ric.get(i, j).sub(&expected);
            report.push(&id("3"), "fiber-block Ricci (3)", &tuple(i, j), scalar_residual(&r, chart, assume, seed));
        }
    }
    Ok(report)
}

pub(crate) fn expr(src: &str) -> ScalarExpr {
    parse_expr(src).unwrap_or_else(|e| panic!("internal expression '{src}': {e}"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Falsification {
    pub samples: usize,
    /// Samples whose Einstein residual has a provably nonzero entry.
    pub nonzero: usize,
    pub polynomials: Vec<String>,
}

/// Draws random polynomials of degree at most 3 with positive integer
/// coefficients that violate the `(∂t,∂t)` equation on `ℝ^{(1,0)}` with
/// `P = ∂t`, and counts how many give a nonzero Einstein residual with
/// `λ = -λ0` on a flat fiber with `q - n = l`.
pub fn polynomial_falsification(l: i64, lambda0: i64, samples: usize, seed: u64) -> Result<Falsification> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let problem = EinsteinProblem::new(BaseKind::R10, ConnectionChoice::SemiSymmetric, l).with_lambda0(lambda0);
    let lambda = RatFunc::int(-lambda0);
    let fiber = TestFiber::Concrete(flat_fiber(l));
    let [tt, _] = governing_equations(problem.base, problem.connection, l, &lambda, &RatFunc::zero())?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Falsification {
        samples: 0,
        nonzero: 0,
        polynomials: Vec::new(),
    };
    while out.samples < samples {
        let degree = rng.random_range(0..=3);
        let terms: Vec<String> = (0..=degree)
            .map(|k| format!("{}*t^{k}", rng.random_range(1..=5)))
            .collect();
        let text = terms.join(" + ");
        let h = expr(&text).to_ratfunc();
        if tt.subst_func("h", &h).is_zero() {
            continue;
        }
        let mut fam = SolutionFamily {
            tag: FamilyTag::None,
            case: "random polynomial".into(),
            constants: Vec::new(),
            h: expr(&text),
            representative: None,
            lambda: ScalarExpr::int(-lambda0),
            fiber_constant: ScalarExpr::int(0),
            side_conditions: Vec::new(),
            assumptions: Vec::new(),
        };
        fam.assumptions.push(("t".into(), 0.5, 2.0));
        let w = family_product(&problem, &fam, &fiber)?;
        let res = product_residual(&w, problem.connection, &fiber, &lambda)?;
        let assume = w.total().assumptions();
        let hit = res
            .iter()
            .flatten()
            .any(|r| r.zero_test(assume, seed) == crate::scalar::Equality::Unequal);
        out.samples += 1;
        if hit {
            out.nonzero += 1;
        }
        out.polynomials.push(text);
    }
    Ok(out)
}
