//! Sparse multivariate polynomials over exact rationals.
//!
//! Variables are [`Atom`]s: coordinate and parameter symbols, named functions
//! with a derivative order, and opaque elementary-function applications.
//! Every monomial additionally carries an exponential part `exp(E)` with `E`
//! itself a polynomial, so that `exp(a) * exp(b) = exp(a + b)` holds
//! structurally.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ratfunc::RatFunc;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// Coordinate or free parameter.
    Var(Arc<str>),
    /// Named function of one even coordinate, differentiated `order` times.
    Func {
        name: Arc<str>,
        arg: Arc<str>,
        order: u32,
    },
    /// `exp` of a non-polynomial argument.
    Exp(Box<RatFunc>),
    Sin(Box<RatFunc>),
    Cos(Box<RatFunc>),
    Sqrt(Box<RatFunc>),
}

impl Atom {
    pub fn var(name: &str) -> Self {
        Atom::Var(Arc::from(name))
    }

    pub fn func(name: &str, arg: &str, order: u32) -> Self {
        Atom::Func {
            name: Arc::from(name),
            arg: Arc::from(arg),
            order,
        }
    }

    /// Atoms whose algebraic relations are not captured by the normal form.
    pub fn is_opaque(&self) -> bool {
        matches!(
            self,
            Atom::Exp(_) | Atom::Sin(_) | Atom::Cos(_) | Atom::Sqrt(_)
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    /// Sorted by atom, all powers positive.
    pub(crate) factors: Vec<(Atom, u32)>,
    /// Exponent of the exponential part; the zero polynomial means no factor.
    pub(crate) exp: Poly,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn atom(a: Atom, power: u32) -> Self {
        if power == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: vec![(a, power)],
            exp: Poly::zero(),
        }
    }

    pub fn exponential(e: Poly) -> Self {
        Monomial {
            factors: Vec::new(),
            exp: e,
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.exp.is_zero()
    }

    pub fn factors(&self) -> &[(Atom, u32)] {
        &self.factors
    }

    pub fn exp_part(&self) -> &Poly {
        &self.exp
    }

    pub fn power_of(&self, a: &Atom) -> u32 {
        self.factors
            .binary_search_by(|(x, _)| x.cmp(a))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].0.cmp(&other.factors[j].0) {
                Ordering::Less => {
                    factors.push(self.factors[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push(other.factors[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    factors.push((self.factors[i].0.clone(), self.factors[i].1 + other.factors[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        let exp = if other.exp.is_zero() {
            self.exp.clone()
        } else if self.exp.is_zero() {
            other.exp.clone()
        } else {
            self.exp.add(&other.exp)
        };
        Monomial { factors, exp }
    }

    /// `self / other` when every atom power of `other` is covered.
    /// Exponential parts always divide.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut factors = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for (a, k) in &self.factors {
            if j < other.factors.len() && other.factors[j].0 < *a {
                return None;
            }
            if j < other.factors.len() && other.factors[j].0 == *a {
                let d = other.factors[j].1;
                if d > *k {
                    return None;
                }
                if d < *k {
                    factors.push((a.clone(), k - d));
                }
                j += 1;
            } else {
                factors.push((a.clone(), *k));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial {
            factors,
            exp: self.exp.sub(&other.exp),
        })
    }

    /// Removes the given atom entirely, returning its former power.
    pub fn without(&self, a: &Atom) -> (Monomial, u32) {
        let mut m = self.clone();
        match m.factors.binary_search_by(|(x, _)| x.cmp(a)) {
            Ok(i) => {
                let (_, k) = m.factors.remove(i);
                (m, k)
            }
            Err(_) => (m, 0),
        }
    }

    pub fn with_power(&self, a: &Atom, power: u32) -> Monomial {
        let (mut m, _) = self.without(a);
        if power > 0 {
            let pos = m.factors.binary_search_by(|(x, _)| x.cmp(a)).unwrap_err();
            m.factors.insert(pos, (a.clone(), power));
        }
        m
    }
}

/// Lexicographic term order: the smallest atom is the most significant
/// variable; ties on all atoms are broken by the exponential part, ordered
/// by the sign of the leading coefficient of the exponent difference.
/// Compatible with multiplication.
pub fn term_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.factors.get(i), b.factors.get(j)) {
            (None, None) => break,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some((x, kx)), Some((y, ky))) => match x.cmp(y) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    if kx != ky {
                        return kx.cmp(ky);
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
    if a.exp == b.exp {
        return Ordering::Equal;
    }
    let diff = a.exp.sub(&b.exp);
    match diff.leading() {
        Some((_, c)) if c.is_positive() => Ordering::Greater,
        Some(_) => Ordering::Less,
        None => Ordering::Equal,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    pub(crate) terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn atom(a: Atom) -> Self {
        Poly::term(Monomial::atom(a, 1), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn single_term(&self) -> Option<(&Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| term_cmp(a, b))
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut out, src) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &src.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (mm, c) in &self.terms {
            out.add_term(mm.mul(m), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// (or the division does not terminate within a bounded number of steps,
    /// which can happen through the exponential parts).
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut r = self.clone();
        let mut q = Poly::zero();
        let limit = 64 + 8 * (self.len() + d.len());
        for _ in 0..limit {
            let Some((rm, rc)) = r.leading() else {
                return Some(q);
            };
            let m = rm.div(&lm)?;
            let c = rc / &lc;
            r = r.sub(&d.mul_term(&m, &c));
            q.add_term(m, c);
        }
        None
    }

    /// Greatest common monomial of all terms (atoms only).
    pub fn monomial_content(&self) -> Monomial {
        let mut iter = self.terms.keys();
        let Some(first) = iter.next() else {
            return Monomial::one();
        };
        let mut factors: Vec<(Atom, u32)> = first.factors.clone();
        for m in iter {
            factors = factors
                .into_iter()
                .filter_map(|(a, k)| {
                    let p = m.power_of(&a).min(k);
                    (p > 0).then_some((a, p))
                })
                .collect();
            if factors.is_empty() {
                break;
            }
        }
        Monomial {
            factors,
            exp: Poly::zero(),
        }
    }

    /// Visits every atom, including those inside exponential parts.
    pub fn for_each_atom(&self, f: &mut dyn FnMut(&Atom)) {
        for m in self.terms.keys() {
            for (a, _) in &m.factors {
                f(a);
            }
            m.exp.for_each_atom(f);
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", RatFunc::from_poly(self.clone()))
    }
}
