//! Expression trees for even functions.

use std::fmt;
use std::ops;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Atom;
use super::ratfunc::{rational_to_f64, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ScalarExpr {
    Num(BigRational),
    Sym(Arc<str>),
    /// `name` differentiated `order` times with respect to `arg`, as a
    /// function of the single even coordinate `arg`.
    Func {
        name: Arc<str>,
        arg: Arc<str>,
        order: u32,
    },
    Add(Box<ScalarExpr>, Box<ScalarExpr>),
    Sub(Box<ScalarExpr>, Box<ScalarExpr>),
    Mul(Box<ScalarExpr>, Box<ScalarExpr>),
    Div(Box<ScalarExpr>, Box<ScalarExpr>),
    Neg(Box<ScalarExpr>),
    Pow(Box<ScalarExpr>, i32),
    Exp(Box<ScalarExpr>),
    Sin(Box<ScalarExpr>),
    Cos(Box<ScalarExpr>),
    Sqrt(Box<ScalarExpr>),
}

use ScalarExpr as E;

fn bx(e: ScalarExpr) -> Box<ScalarExpr> {
    Box::new(e)
}

impl ScalarExpr {
    pub fn int(n: i64) -> Self {
        E::Num(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn sym(name: &str) -> Self {
        E::Sym(Arc::from(name))
    }

    pub fn func(name: &str, arg: &str, order: u32) -> Self {
        E::Func {
            name: Arc::from(name),
            arg: Arc::from(arg),
            order,
        }
    }

    pub fn pow(self, k: i32) -> Self {
        E::Pow(bx(self), k)
    }

    pub fn exp(self) -> Self {
        E::Exp(bx(self))
    }

    pub fn sin(self) -> Self {
        E::Sin(bx(self))
    }

    pub fn cos(self) -> Self {
        E::Cos(bx(self))
    }

    pub fn sqrt(self) -> Self {
        E::Sqrt(bx(self))
    }

    pub fn is_zero_literal(&self) -> bool {
        matches!(self, E::Num(c) if c.is_zero())
    }

    /// Converts to the rational normal form, or `None` on division by an
    /// expression that normalizes to zero.
    pub fn try_to_ratfunc(&self) -> Option<RatFunc> {
        Some(match self {
            E::Num(c) => RatFunc::constant(c.clone()),
            E::Sym(s) => RatFunc::atom(Atom::Var(s.clone())),
            E::Func { name, arg, order } => RatFunc::atom(Atom::Func {
                name: name.clone(),
                arg: arg.clone(),
                order: *order,
            }),
            E::Add(a, b) => a.try_to_ratfunc()?.add(&b.try_to_ratfunc()?),
            E::Sub(a, b) => a.try_to_ratfunc()?.sub(&b.try_to_ratfunc()?),
            E::Mul(a, b) => a.try_to_ratfunc()?.mul(&b.try_to_ratfunc()?),
            E::Div(a, b) => a.try_to_ratfunc()?.mul(&b.try_inverse()?),
            E::Neg(a) => a.try_to_ratfunc()?.neg(),
            E::Pow(a, k) => {
                let base = a.try_to_ratfunc()?;
                if *k < 0 && base.is_zero() {
                    return None;
                }
                base.pow(*k as i64)
            }
            E::Exp(a) => RatFunc::exp(&a.try_to_ratfunc()?),
            E::Sin(a) => RatFunc::sin(&a.try_to_ratfunc()?),
            E::Cos(a) => RatFunc::cos(&a.try_to_ratfunc()?),
            E::Sqrt(a) => RatFunc::sqrt(&a.try_to_ratfunc()?),
        })
    }

    /// Inverts products and powers factor by factor so that a factored
    /// denominator keeps its factors.
    fn try_inverse(&self) -> Option<RatFunc> {
        match self {
            E::Mul(a, b) => Some(a.try_inverse()?.mul(&b.try_inverse()?)),
            E::Pow(a, k) if *k > 0 => Some(a.try_inverse()?.pow(*k as i64)),
            _ => self.try_to_ratfunc()?.checked_inv(),
        }
    }

    /// # Panics
    /// When the expression divides by zero.
    pub fn to_ratfunc(&self) -> RatFunc {
        self.try_to_ratfunc().expect("division by zero in expression")
    }

    pub fn canonicalize(&self) -> ScalarExpr {
        self.to_ratfunc().to_expr()
    }

    /// Tree-level derivative with respect to the even coordinate `x`.
    pub fn differentiate(&self, x: &str) -> ScalarExpr {
        match self {
            E::Num(_) => E::int(0),
            E::Sym(s) => E::int(i64::from(&**s == x)),
            E::Func { name, arg, order } => {
                if &**arg == x {
                    E::Func {
                        name: name.clone(),
                        arg: arg.clone(),
                        order: order + 1,
                    }
                } else {
                    E::int(0)
                }
            }
            E::Add(a, b) => E::Add(bx(a.differentiate(x)), bx(b.differentiate(x))),
            E::Sub(a, b) => E::Sub(bx(a.differentiate(x)), bx(b.differentiate(x))),
            E::Mul(a, b) => E::Add(
                bx(E::Mul(bx(a.differentiate(x)), b.clone())),
                bx(E::Mul(a.clone(), bx(b.differentiate(x)))),
            ),
            E::Div(a, b) => E::Div(
                bx(E::Sub(
                    bx(E::Mul(bx(a.differentiate(x)), b.clone())),
                    bx(E::Mul(a.clone(), bx(b.differentiate(x)))),
                )),
                bx(E::Pow(b.clone(), 2)),
            ),
            E::Neg(a) => E::Neg(bx(a.differentiate(x))),
            E::Pow(a, k) => {
                if *k == 0 {
                    return E::int(0);
                }
                E::Mul(
                    bx(E::Mul(bx(E::int(*k as i64)), bx(E::Pow(a.clone(), k - 1)))),
                    bx(a.differentiate(x)),
                )
            }
            E::Exp(a) => E::Mul(bx(self.clone()), bx(a.differentiate(x))),
            E::Sin(a) => E::Mul(bx(E::Cos(a.clone())), bx(a.differentiate(x))),
            E::Cos(a) => E::Neg(bx(E::Mul(bx(E::Sin(a.clone())), bx(a.differentiate(x))))),
            E::Sqrt(a) => E::Div(
                bx(a.differentiate(x)),
                bx(E::Mul(bx(E::int(2)), bx(self.clone()))),
            ),
        }
    }

    /// Floating-point value with leaves supplied by `env`; NaN when a leaf
    /// is missing.
    pub fn eval(&self, env: &dyn Fn(&Atom) -> Option<f64>) -> f64 {
        match self {
            E::Num(c) => rational_to_f64(c),
            E::Sym(s) => env(&Atom::Var(s.clone())).unwrap_or(f64::NAN),
            E::Func { name, arg, order } => env(&Atom::Func {
                name: name.clone(),
                arg: arg.clone(),
                order: *order,
            })
            .unwrap_or(f64::NAN),
            E::Add(a, b) => a.eval(env) + b.eval(env),
            E::Sub(a, b) => a.eval(env) - b.eval(env),
            E::Mul(a, b) => a.eval(env) * b.eval(env),
            E::Div(a, b) => a.eval(env) / b.eval(env),
            E::Neg(a) => -a.eval(env),
            E::Pow(a, k) => a.eval(env).powi(*k),
            E::Exp(a) => a.eval(env).exp(),
            E::Sin(a) => a.eval(env).sin(),
            E::Cos(a) => a.eval(env).cos(),
            E::Sqrt(a) => a.eval(env).sqrt(),
        }
    }

    /// Visits every symbol and named-function leaf.
    pub fn for_each_leaf(&self, f: &mut dyn FnMut(&ScalarExpr)) {
        match self {
            E::Num(_) => {}
            E::Sym(_) | E::Func { .. } => f(self),
            E::Add(a, b) | E::Sub(a, b) | E::Mul(a, b) | E::Div(a, b) => {
                a.for_each_leaf(f);
                b.for_each_leaf(f);
            }
            E::Neg(a) | E::Pow(a, _) | E::Exp(a) | E::Sin(a) | E::Cos(a) | E::Sqrt(a) => {
                a.for_each_leaf(f)
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            E::Add(..) | E::Sub(..) => 1,
            E::Mul(..) | E::Div(..) => 2,
            E::Neg(_) => 3,
            E::Num(c) if c.is_negative() => 3,
            E::Num(c) if !c.is_integer() => 2,
            E::Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.fmt_inner(f)?;
            write!(f, ")")
        } else {
            self.fmt_inner(f)
        }
    }

    fn fmt_inner(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            E::Num(c) => {
                if c.is_integer() {
                    write!(f, "{}", c.numer())
                } else {
                    write!(f, "{}/{}", c.numer(), c.denom())
                }
            }
            E::Sym(s) => write!(f, "{s}"),
            E::Func { name, arg, order } => {
                write!(f, "{name}{}({arg})", "'".repeat(*order as usize))
            }
            E::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 2)
            }
            E::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 2)
            }
            E::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*")?;
                b.fmt_prec(f, 3)
            }
            E::Div(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "/")?;
                b.fmt_prec(f, 4)
            }
            E::Neg(a) => {
                write!(f, "-")?;
                a.fmt_prec(f, 3)
            }
            E::Pow(a, k) => {
                a.fmt_prec(f, 5)?;
                if *k < 0 {
                    write!(f, "^({k})")
                } else {
                    write!(f, "^{k}")
                }
            }
            E::Exp(a) => write!(f, "exp({a})"),
            E::Sin(a) => write!(f, "sin({a})"),
            E::Cos(a) => write!(f, "cos({a})"),
            E::Sqrt(a) => write!(f, "sqrt({a})"),
        }
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_inner(f)
    }
}

impl From<i64> for ScalarExpr {
    fn from(n: i64) -> Self {
        ScalarExpr::int(n)
    }
}

impl From<BigRational> for ScalarExpr {
    fn from(c: BigRational) -> Self {
        ScalarExpr::Num(c)
    }
}

impl Default for ScalarExpr {
    fn default() -> Self {
        ScalarExpr::Num(BigRational::zero())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl ops::$tr for ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: ScalarExpr) -> ScalarExpr {
                ScalarExpr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl ops::Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr::Neg(Box::new(self))
    }
}

impl ScalarExpr {
    pub fn one() -> Self {
        ScalarExpr::Num(BigRational::one())
    }
}
