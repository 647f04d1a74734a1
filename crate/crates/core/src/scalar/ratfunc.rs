//! Normal form for even functions: a polynomial numerator over a factored
//! denominator.
//!
//! Denominator factors are either single atoms or multi-term polynomials
//! with unit leading coefficient and no monomial content. Every arithmetic
//! operation cancels denominator factors that divide the numerator exactly
//! and rewrites `sqrt(x)^2` as `x`. Zero is the empty numerator over the
//! empty denominator.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::expr::ScalarExpr;
use super::poly::{term_cmp, Atom, Monomial, Poly};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Vec<(Poly, u32)>,
}

fn is_atom_factor(f: &Poly) -> Option<&Atom> {
    let (m, _) = f.single_term()?;
    match m.factors() {
        [(a, 1)] if m.exp_part().is_zero() => Some(a),
        _ => None,
    }
}

/// Splits a nonzero polynomial `p` as `c * exp(e) * prod(factors)` where the
/// factors are in denominator normal form.
fn split_factors(p: &Poly) -> (BigRational, Poly, Vec<(Poly, u32)>) {
    if let Some((m, c)) = p.single_term() {
        let factors = m
            .factors()
            .iter()
            .map(|(a, k)| (Poly::atom(a.clone()), *k))
            .collect();
        return (c.clone(), m.exp_part().clone(), factors);
    }
    let content = p.monomial_content();
    let mut rest = if content.is_one() {
        p.clone()
    } else {
        let mut r = Poly::zero();
        for (m, c) in p.terms() {
            r = r.add(&Poly::term(m.div(&content).unwrap(), c.clone()));
        }
        r
    };
    let mut exp = Poly::zero();
    let first = rest.terms().next().unwrap().0.exp_part().clone();
    if !first.is_zero() && rest.terms().all(|(m, _)| *m.exp_part() == first) {
        let shift = Monomial::exponential(first.neg());
        rest = rest.mul_term(&shift, &BigRational::one());
        exp = first;
    }
    let lc = rest.leading().map(|(_, c)| c.clone()).unwrap();
    let rest = rest.scale(&lc.recip());
    let mut factors: Vec<(Poly, u32)> = content
        .factors()
        .iter()
        .map(|(a, k)| (Poly::atom(a.clone()), *k))
        .collect();
    factors.push((rest, 1));
    (lc, exp, factors)
}

fn den_product(den: &[(Poly, u32)]) -> Poly {
    let mut out = Poly::one();
    for (f, k) in den {
        out = out.mul(&f.pow(*k));
    }
    out
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc::default()
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        RatFunc::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        RatFunc::constant(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc {
            num,
            den: Vec::new(),
        }
    }

    pub fn atom(a: Atom) -> Self {
        RatFunc::from_poly(Poly::atom(a))
    }

    pub fn var(name: &str) -> Self {
        RatFunc::atom(Atom::var(name))
    }

    pub fn func(name: &str, arg: &str, order: u32) -> Self {
        RatFunc::atom(Atom::func(name, arg, order))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &[(Poly, u32)] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num == Poly::one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn from_parts(num: Poly, den: BTreeMap<Poly, u32>) -> RatFunc {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let mut num = num;
        let mut kept = Vec::with_capacity(den.len());
        for (f, mut k) in den {
            if let Some(a) = is_atom_factor(&f) {
                let avail = num
                    .terms()
                    .map(|(m, _)| m.power_of(a))
                    .min()
                    .unwrap_or(0);
                let c = avail.min(k);
                if c > 0 {
                    let d = Monomial::atom(a.clone(), c);
                    let mut q = Poly::zero();
                    for (m, coef) in num.terms() {
                        q = q.add(&Poly::term(m.div(&d).unwrap(), coef.clone()));
                    }
                    num = q;
                    k -= c;
                }
            } else {
                while k > 0 {
                    match num.div_exact(&f) {
                        Some(q) => {
                            num = q;
                            k -= 1;
                        }
                        None => break,
                    }
                }
            }
            if k > 0 {
                kept.push((f, k));
            }
        }
        let out = RatFunc { num, den: kept };
        if out.needs_sqrt_reduction() {
            out.reduce_sqrt()
        } else {
            out
        }
    }

    fn den_map(&self) -> BTreeMap<Poly, u32> {
        self.den.iter().cloned().collect()
    }

    fn needs_sqrt_reduction(&self) -> bool {
        let num_hit = self.num.terms().any(|(m, _)| {
            m.factors()
                .iter()
                .any(|(a, k)| *k >= 2 && matches!(a, Atom::Sqrt(_)))
        });
        num_hit
            || self.den.iter().any(|(f, k)| {
                *k >= 2 && matches!(is_atom_factor(f), Some(Atom::Sqrt(_)))
            })
    }

    fn reduce_sqrt(&self) -> RatFunc {
        let mut num = RatFunc::zero();
        for (m, c) in self.num.terms() {
            let mut mono = m.clone();
            let mut extra = RatFunc::one();
            for (a, k) in m.factors() {
                if let Atom::Sqrt(x) = a {
                    if *k >= 2 {
                        mono = mono.with_power(a, k % 2);
                        extra = extra.mul(&x.pow((k / 2) as i64));
                    }
                }
            }
            num = num.add(&RatFunc::from_poly(Poly::term(mono, c.clone())).mul(&extra));
        }
        let mut den = BTreeMap::new();
        let mut den_extra = RatFunc::one();
        for (f, k) in &self.den {
            match is_atom_factor(f) {
                Some(Atom::Sqrt(x)) if *k >= 2 => {
                    if k % 2 == 1 {
                        den.insert(f.clone(), 1);
                    }
                    den_extra = den_extra.mul(&x.pow((k / 2) as i64));
                }
                _ => {
                    den.insert(f.clone(), *k);
                }
            }
        }
        let inv_den = RatFunc {
            num: Poly::one(),
            den: den.into_iter().collect(),
        };
        num.mul(&inv_den).div(&den_extra)
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            return RatFunc::from_parts(num, self.den_map());
        }
        let mut lcm = self.den_map();
        for (f, k) in &other.den {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(*k);
        }
        let cofactor = |den: &[(Poly, u32)]| {
            let have: BTreeMap<&Poly, u32> = den.iter().map(|(f, k)| (f, *k)).collect();
            let mut out = Poly::one();
            for (f, k) in &lcm {
                let missing = k - have.get(f).copied().unwrap_or(0);
                if missing > 0 {
                    out = out.mul(&f.pow(missing));
                }
            }
            out
        };
        let num = self
            .num
            .mul(&cofactor(&self.den))
            .add(&other.num.mul(&cofactor(&other.den)));
        RatFunc::from_parts(num, lcm)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> RatFunc {
        if k.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn scale_int(&self, k: i64) -> RatFunc {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let num = self.num.mul(&other.num);
        let mut den = self.den_map();
        for (f, k) in &other.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        RatFunc::from_parts(num, den)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn checked_inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        let (c, exp, factors) = split_factors(&self.num);
        let mut num = den_product(&self.den).scale(&c.recip());
        if !exp.is_zero() {
            num = num.mul_term(&Monomial::exponential(exp.neg()), &BigRational::one());
        }
        let mut den = BTreeMap::new();
        for (f, k) in factors {
            *den.entry(f).or_insert(0) += k;
        }
        Some(RatFunc::from_parts(num, den))
    }

    /// # Panics
    /// On division by the zero function.
    pub fn inv(&self) -> RatFunc {
        self.checked_inv().expect("division by zero")
    }

    pub fn checked_div(&self, other: &RatFunc) -> Option<RatFunc> {
        Some(self.mul(&other.checked_inv()?))
    }

    /// # Panics
    /// On division by the zero function.
    pub fn div(&self, other: &RatFunc) -> RatFunc {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> RatFunc {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut out = RatFunc::one();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn exp(arg: &RatFunc) -> RatFunc {
        if arg.is_zero() {
            return RatFunc::one();
        }
        if arg.den.is_empty() {
            RatFunc::from_poly(Poly::term(
                Monomial::exponential(arg.num.clone()),
                BigRational::one(),
            ))
        } else {
            RatFunc::atom(Atom::Exp(Box::new(arg.clone())))
        }
    }

    pub fn sin(arg: &RatFunc) -> RatFunc {
        if arg.is_zero() {
            RatFunc::zero()
        } else {
            RatFunc::atom(Atom::Sin(Box::new(arg.clone())))
        }
    }

    pub fn cos(arg: &RatFunc) -> RatFunc {
        if arg.is_zero() {
            RatFunc::one()
        } else {
            RatFunc::atom(Atom::Cos(Box::new(arg.clone())))
        }
    }

    pub fn sqrt(arg: &RatFunc) -> RatFunc {
        if arg.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = arg.as_constant() {
            if !c.is_negative() {
                let (n, d) = (c.numer(), c.denom());
                let (rn, rd) = (n.sqrt(), d.sqrt());
                if &(&rn * &rn) == n && &(&rd * &rd) == d {
                    return RatFunc::constant(BigRational::new(rn, rd));
                }
            }
        }
        RatFunc::atom(Atom::Sqrt(Box::new(arg.clone())))
    }

    /// Derivative with respect to the even coordinate `x`.
    pub fn diff(&self, x: &str) -> RatFunc {
        let inv_den = RatFunc {
            num: Poly::one(),
            den: self.den.clone(),
        };
        let mut out = poly_diff(&self.num, x).mul(&inv_den);
        let mut log_deriv = RatFunc::zero();
        for (f, k) in &self.den {
            let df = poly_diff(f, x);
            if df.is_zero() {
                continue;
            }
            let inv_f = RatFunc {
                num: Poly::one(),
                den: vec![(f.clone(), 1)],
            };
            log_deriv = log_deriv.add(&df.mul(&inv_f).scale_int(*k as i64));
        }
        if !log_deriv.is_zero() {
            out = out.sub(&self.mul(&log_deriv));
        }
        out
    }

    /// Replaces atoms by the images returned from `f`; atoms mapped to `None`
    /// are kept (with substitution applied inside opaque arguments).
    pub fn subst(&self, f: &dyn Fn(&Atom) -> Option<RatFunc>) -> RatFunc {
        let mut cache: HashMap<Atom, RatFunc> = HashMap::new();
        let num = subst_poly(&self.num, f, &mut cache);
        let mut den = RatFunc::one();
        for (p, k) in &self.den {
            den = den.mul(&subst_poly(p, f, &mut cache).pow(*k as i64));
        }
        num.div(&den)
    }

    /// Substitutes a named function by an explicit expression in its
    /// argument; derivative atoms map to derivatives of the replacement.
    pub fn subst_func(&self, name: &str, replacement: &RatFunc) -> RatFunc {
        let mut derivs: Vec<RatFunc> = vec![replacement.clone()];
        let max_order = {
            let mut m = 0;
            self.for_each_atom(&mut |a| {
                if let Atom::Func { name: n, order, .. } = a {
                    if &**n == name {
                        m = m.max(*order);
                    }
                }
            });
            m
        };
        let mut arg_name: Option<String> = None;
        self.for_each_atom(&mut |a| {
            if let Atom::Func { name: n, arg, .. } = a {
                if &**n == name {
                    arg_name = Some(arg.to_string());
                }
            }
        });
        let Some(arg) = arg_name else {
            return self.clone();
        };
        for k in 1..=max_order as usize {
            let next = derivs[k - 1].diff(&arg);
            derivs.push(next);
        }
        self.subst(&|a| match a {
            Atom::Func { name: n, order, .. } if &**n == name => {
                Some(derivs[*order as usize].clone())
            }
            _ => None,
        })
    }

    pub fn subst_var(&self, name: &str, value: &RatFunc) -> RatFunc {
        self.subst(&|a| match a {
            Atom::Var(v) if &**v == name => Some(value.clone()),
            _ => None,
        })
    }

    pub fn for_each_atom(&self, f: &mut dyn FnMut(&Atom)) {
        let mut visit = |a: &Atom| {
            f(a);
            match a {
                Atom::Exp(x) | Atom::Sin(x) | Atom::Cos(x) | Atom::Sqrt(x) => {
                    x.for_each_atom(&mut |b| f(b))
                }
                _ => {}
            }
        };
        self.num.for_each_atom(&mut visit);
        for (p, _) in &self.den {
            p.for_each_atom(&mut visit);
        }
    }

    /// True when the normal form involves atoms whose algebraic relations
    /// are not fully captured (trigonometric, square roots, opaque exp).
    pub fn has_opaque(&self) -> bool {
        let mut hit = false;
        self.for_each_atom(&mut |a| hit |= a.is_opaque());
        hit
    }

    pub fn depends_on(&self, x: &str) -> bool {
        let mut hit = false;
        self.for_each_atom(&mut |a| match a {
            Atom::Var(v) => hit |= &**v == x,
            Atom::Func { arg, .. } => hit |= &**arg == x,
            _ => {}
        });
        hit
    }

    /// Numeric value, with leaf atoms supplied by `env`. Returns NaN when a
    /// leaf is missing.
    pub fn eval(&self, env: &dyn Fn(&Atom) -> Option<f64>) -> f64 {
        let mut v = eval_poly(&self.num, env);
        for (p, k) in &self.den {
            v /= eval_poly(p, env).powi(*k as i32);
        }
        v
    }

    pub fn to_expr(&self) -> ScalarExpr {
        let num = poly_to_expr(&self.num);
        if self.den.is_empty() {
            return num;
        }
        let mut den: Option<ScalarExpr> = None;
        for (f, k) in &self.den {
            let base = poly_to_expr(f);
            let factor = if *k == 1 {
                base
            } else {
                ScalarExpr::Pow(Box::new(base), *k as i32)
            };
            den = Some(match den {
                None => factor,
                Some(d) => ScalarExpr::Mul(Box::new(d), Box::new(factor)),
            });
        }
        ScalarExpr::Div(Box::new(num), Box::new(den.unwrap()))
    }
}

fn atom_diff(a: &Atom, x: &str) -> RatFunc {
    match a {
        Atom::Var(v) => {
            if &**v == x {
                RatFunc::one()
            } else {
                RatFunc::zero()
            }
        }
        Atom::Func { name, arg, order } => {
            if &**arg == x {
                RatFunc::func(name, arg, order + 1)
            } else {
                RatFunc::zero()
            }
        }
        Atom::Exp(u) => RatFunc::exp(u).mul(&u.diff(x)),
        Atom::Sin(u) => RatFunc::cos(u).mul(&u.diff(x)),
        Atom::Cos(u) => RatFunc::sin(u).mul(&u.diff(x)).neg(),
        Atom::Sqrt(u) => u
            .diff(x)
            .div(&RatFunc::sqrt(u).scale_int(2)),
    }
}

fn poly_diff(p: &Poly, x: &str) -> RatFunc {
    let mut out = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut dm = RatFunc::zero();
        for (a, k) in m.factors() {
            let da = atom_diff(a, x);
            if da.is_zero() {
                continue;
            }
            let rest = RatFunc::from_poly(Poly::term(
                m.with_power(a, k - 1),
                BigRational::from_integer(BigInt::from(*k)),
            ));
            dm = dm.add(&rest.mul(&da));
        }
        if !m.exp_part().is_zero() {
            let de = poly_diff(m.exp_part(), x);
            if !de.is_zero() {
                dm = dm.add(&RatFunc::from_poly(Poly::term(m.clone(), BigRational::one())).mul(&de));
            }
        }
        out = out.add(&dm.scale(c));
    }
    out
}

fn subst_atom(
    a: &Atom,
    f: &dyn Fn(&Atom) -> Option<RatFunc>,
    cache: &mut HashMap<Atom, RatFunc>,
) -> RatFunc {
    if let Some(v) = cache.get(a) {
        return v.clone();
    }
    let v = match f(a) {
        Some(v) => v,
        None => match a {
            Atom::Exp(u) => RatFunc::exp(&u.subst(f)),
            Atom::Sin(u) => RatFunc::sin(&u.subst(f)),
            Atom::Cos(u) => RatFunc::cos(&u.subst(f)),
            Atom::Sqrt(u) => RatFunc::sqrt(&u.subst(f)),
            _ => RatFunc::atom(a.clone()),
        },
    };
    cache.insert(a.clone(), v.clone());
    v
}

fn subst_poly(
    p: &Poly,
    f: &dyn Fn(&Atom) -> Option<RatFunc>,
    cache: &mut HashMap<Atom, RatFunc>,
) -> RatFunc {
    let mut out = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut t = RatFunc::constant(c.clone());
        for (a, k) in m.factors() {
            t = t.mul(&subst_atom(a, f, cache).pow(*k as i64));
        }
        if !m.exp_part().is_zero() {
            let e = subst_poly(m.exp_part(), f, cache);
            t = t.mul(&RatFunc::exp(&e));
        }
        out = out.add(&t);
    }
    out
}

fn eval_atom(a: &Atom, env: &dyn Fn(&Atom) -> Option<f64>) -> f64 {
    match a {
        Atom::Var(_) | Atom::Func { .. } => env(a).unwrap_or(f64::NAN),
        Atom::Exp(u) => u.eval(env).exp(),
        Atom::Sin(u) => u.eval(env).sin(),
        Atom::Cos(u) => u.eval(env).cos(),
        Atom::Sqrt(u) => u.eval(env).sqrt(),
    }
}

pub(crate) fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN)
    })
}

fn eval_poly(p: &Poly, env: &dyn Fn(&Atom) -> Option<f64>) -> f64 {
    let mut total = 0.0;
    for (m, c) in p.terms() {
        let mut t = rational_to_f64(c);
        for (a, k) in m.factors() {
            t *= eval_atom(a, env).powi(*k as i32);
        }
        if !m.exp_part().is_zero() {
            t *= eval_poly(m.exp_part(), env).exp();
        }
        total += t;
    }
    total
}

fn atom_to_expr(a: &Atom) -> ScalarExpr {
    match a {
        Atom::Var(v) => ScalarExpr::Sym(v.clone()),
        Atom::Func { name, arg, order } => ScalarExpr::Func {
            name: name.clone(),
            arg: arg.clone(),
            order: *order,
        },
        Atom::Exp(u) => ScalarExpr::Exp(Box::new(u.to_expr())),
        Atom::Sin(u) => ScalarExpr::Sin(Box::new(u.to_expr())),
        Atom::Cos(u) => ScalarExpr::Cos(Box::new(u.to_expr())),
        Atom::Sqrt(u) => ScalarExpr::Sqrt(Box::new(u.to_expr())),
    }
}

fn monomial_to_expr(m: &Monomial) -> Option<ScalarExpr> {
    let mut out: Option<ScalarExpr> = None;
    let push = |out: Option<ScalarExpr>, e: ScalarExpr| match out {
        None => Some(e),
        Some(prev) => Some(ScalarExpr::Mul(Box::new(prev), Box::new(e))),
    };
    for (a, k) in m.factors() {
        let base = atom_to_expr(a);
        let f = if *k == 1 {
            base
        } else {
            ScalarExpr::Pow(Box::new(base), *k as i32)
        };
        out = push(out, f);
    }
    if !m.exp_part().is_zero() {
        out = push(out, ScalarExpr::Exp(Box::new(poly_to_expr(m.exp_part()))));
    }
    out
}

fn poly_to_expr(p: &Poly) -> ScalarExpr {
    let mut terms: Vec<(&Monomial, &BigRational)> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| term_cmp(b, a));
    let mut out: Option<ScalarExpr> = None;
    for (m, c) in terms {
        let negative = c.is_negative();
        let mag = c.abs();
        let body = match monomial_to_expr(m) {
            None => ScalarExpr::Num(mag),
            Some(e) if mag.is_one() => e,
            Some(e) => ScalarExpr::Mul(Box::new(ScalarExpr::Num(mag)), Box::new(e)),
        };
        out = Some(match out {
            None if negative => ScalarExpr::Neg(Box::new(body)),
            None => body,
            Some(prev) if negative => ScalarExpr::Sub(Box::new(prev), Box::new(body)),
            Some(prev) => ScalarExpr::Add(Box::new(prev), Box::new(body)),
        });
    }
    out.unwrap_or_else(|| ScalarExpr::Num(BigRational::zero()))
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::int(n)
    }
}

impl From<BigRational> for RatFunc {
    fn from(c: BigRational) -> Self {
        RatFunc::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_expr;

    fn rf(src: &str) -> RatFunc {
        parse_expr(src).unwrap().to_ratfunc()
    }

    #[test]
    fn cancels_polynomial_factors() {
        assert_eq!(rf("(h(t)^2 - 1)/(h(t) - 1)"), rf("h(t) + 1"));
        assert_eq!(rf("(x*y + x)/(y + 1)"), rf("x"));
        assert!(rf("1/(x+1) - 1/(1+x)").is_zero());
    }

    #[test]
    fn quotient_rule_normal_form() {
        let d = rf("h'(t)^2/h(t)^2").diff("t");
        assert_eq!(d, rf("(2*h'(t)*h''(t)*h(t) - 2*h'(t)^3)/h(t)^3"));
    }

    #[test]
    fn exponentials_combine() {
        assert!(rf("exp(t)*exp(-t) - 1").is_zero());
        assert_eq!(rf("exp(2*t)"), rf("exp(t)^2"));
        assert_eq!(rf("c1*exp(t)").diff("t"), rf("c1*exp(t)"));
        assert_eq!(rf("exp(0)"), RatFunc::one());
        assert!(rf("1/(exp(t) + exp(2*t)) - exp(-t)/(1 + exp(t))").is_zero());
    }

    #[test]
    fn sqrt_squares_reduce() {
        assert_eq!(rf("sqrt(1 - l)^2"), rf("1 - l"));
        assert_eq!(rf("1/sqrt(k)^2"), rf("1/k"));
        assert_eq!(rf("sqrt(9/4)"), rf("3/2"));
        assert!(rf("sin(0)").is_zero());
        assert_eq!(rf("cos(0)"), RatFunc::one());
    }

    #[test]
    fn substitution_of_warping_function() {
        let eq = rf("h''(t)/h(t) - (1 - l)");
        let h = rf("c1*exp(sqrt(1 - l)*t) + c2*exp(-sqrt(1 - l)*t)");
        assert!(eq.subst_func("h", &h).is_zero());
    }

    #[test]
    fn evaluation_matches_expression() {
        let e = parse_expr("(x^2 + exp(x))/(1 + x*y)").unwrap();
        let env = |a: &Atom| match a {
            Atom::Var(v) if &**v == "x" => Some(0.7),
            Atom::Var(v) if &**v == "y" => Some(1.3),
            _ => None,
        };
        let a = e.eval(&env);
        let b = e.to_ratfunc().eval(&env);
        assert!((a - b).abs() < 1e-12);
    }
}
