//! The graded-commutative algebra of functions on a chart: even functions
//! tensored with the Grassmann algebra of the odd coordinates.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::parity::{Parity, Sign};
use crate::scalar::{zero_test, Assumptions, Equality, RatFunc, ScalarExpr};

/// Product of distinct odd coordinates in increasing index order, stored as
/// a bit set over the chart's odd coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddMonomial(u32);

impl OddMonomial {
    pub const ONE: OddMonomial = OddMonomial(0);

    pub fn from_bits(bits: u32) -> Self {
        OddMonomial(bits)
    }

    pub fn generator(a: usize) -> Self {
        OddMonomial(1 << a)
    }

    /// `None` when an index repeats.
    pub fn from_indices(indices: &[usize]) -> Option<(Sign, Self)> {
        let mut out = (Sign::PLUS, OddMonomial::ONE);
        for &a in indices {
            let (s, m) = out.1.mul(OddMonomial::generator(a))?;
            out = (out.0 * s, m);
        }
        Some(out)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn parity(self) -> Parity {
        Parity::from_bit(self.degree())
    }

    pub fn contains(self, a: usize) -> bool {
        self.0 & (1 << a) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |a| self.contains(*a))
    }

    /// Product `self * other` with the sign of sorting the concatenated
    /// generator list, or `None` when a generator repeats.
    pub fn mul(self, other: OddMonomial) -> Option<(Sign, OddMonomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0;
        for b in other.indices() {
            inversions += (self.0 >> (b + 1)).count_ones();
        }
        Some((Sign::pow(Parity::from_bit(inversions)), OddMonomial(self.0 | other.0)))
    }

    /// Left derivative by generator `a`: move it to the front, then drop it.
    pub fn left_derivative(self, a: usize) -> Option<(Sign, OddMonomial)> {
        if !self.contains(a) {
            return None;
        }
        let before = (self.0 & ((1 << a) - 1)).count_ones();
        Some((Sign::pow(Parity::from_bit(before)), OddMonomial(self.0 & !(1 << a))))
    }
}

/// A function on the chart: a finite sum of even coefficients times odd
/// monomials. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperScalar {
    terms: BTreeMap<OddMonomial, RatFunc>,
}

impl SuperScalar {
    pub fn zero() -> Self {
        SuperScalar::default()
    }

    pub fn one() -> Self {
        SuperScalar::even(RatFunc::one())
    }

    pub fn int(n: i64) -> Self {
        SuperScalar::even(RatFunc::int(n))
    }

    pub fn even(f: RatFunc) -> Self {
        SuperScalar::term(OddMonomial::ONE, f)
    }

    pub fn term(m: OddMonomial, f: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(m, f);
        }
        SuperScalar { terms }
    }

    pub fn generator(a: usize) -> Self {
        SuperScalar::term(OddMonomial::generator(a), RatFunc::one())
    }

    pub fn from_expr(e: &ScalarExpr) -> Self {
        SuperScalar::even(e.to_ratfunc())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OddMonomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: OddMonomial) -> RatFunc {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// The Grassmann-degree-0 part.
    pub fn body(&self) -> RatFunc {
        self.coeff(OddMonomial::ONE)
    }

    pub fn is_body_only(&self) -> bool {
        self.terms.keys().all(|m| *m == OddMonomial::ONE)
    }

    /// The common parity of all terms; zero counts as even, a mixed sum
    /// has none.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// True when every term has parity `p` (vacuously for zero).
    pub fn has_parity(&self, p: Parity) -> bool {
        self.terms.keys().all(|m| m.parity() == p)
    }

    /// Splits into (even part, odd part).
    pub fn split_parity(&self) -> (SuperScalar, SuperScalar) {
        let mut even = SuperScalar::zero();
        let mut odd = SuperScalar::zero();
        for (m, c) in &self.terms {
            let dst = if m.parity().is_odd() { &mut odd } else { &mut even };
            dst.terms.insert(*m, c.clone());
        }
        (even, odd)
    }

    fn add_term(&mut self, m: OddMonomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &SuperScalar) -> SuperScalar {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SuperScalar) -> SuperScalar {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.neg());
        }
        out
    }

    pub fn neg(&self) -> SuperScalar {
        SuperScalar {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn signed(&self, s: Sign) -> SuperScalar {
        if s.is_minus() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Multiplies by an even function.
    pub fn scale(&self, f: &RatFunc) -> SuperScalar {
        if f.is_zero() {
            return SuperScalar::zero();
        }
        let mut out = SuperScalar::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.mul(f));
        }
        out
    }

    pub fn scale_rational(&self, k: &BigRational) -> SuperScalar {
        SuperScalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.scale(k)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, other: &SuperScalar) -> SuperScalar {
        let mut out = SuperScalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((s, m)) = m1.mul(*m2) {
                    let c = c1.mul(c2);
                    out.add_term(m, if s.is_minus() { c.neg() } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> SuperScalar {
        let mut out = SuperScalar::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Inverse of a function with nonvanishing body, via the finite
    /// geometric series in its nilpotent part.
    pub fn inverse(&self) -> Option<SuperScalar> {
        let b = self.body();
        let b_inv = b.checked_inv()?;
        let mut n = self.clone();
        n.terms.remove(&OddMonomial::ONE);
        let x = n.scale(&b_inv.neg());
        let mut out = SuperScalar::one();
        let mut power = SuperScalar::one();
        loop {
            power = power.mul(&x);
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Some(out.scale(&b_inv))
    }

    /// Derivative by an even coordinate.
    pub fn diff_even(&self, coord: &str) -> SuperScalar {
        let mut out = SuperScalar::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.diff(coord));
        }
        out
    }

    /// Left derivative by the odd generator `a`.
    pub fn diff_odd(&self, a: usize) -> SuperScalar {
        let mut out = SuperScalar::zero();
        for (m, c) in &self.terms {
            if let Some((s, rest)) = m.left_derivative(a) {
                out.add_term(rest, if s.is_minus() { c.neg() } else { c.clone() });
            }
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> SuperScalar {
        let mut out = SuperScalar::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// Renumbers every odd generator `a` as `a + k`.
    pub fn shift_odd(&self, k: usize) -> SuperScalar {
        let mut out = SuperScalar::zero();
        for (m, c) in &self.terms {
            out.add_term(OddMonomial::from_bits(m.bits() << k), c.clone());
        }
        out
    }

    pub fn subst_func(&self, name: &str, replacement: &RatFunc) -> SuperScalar {
        self.map_coeffs(|c| c.subst_func(name, replacement))
    }

    /// Exact zero test with numeric fallback per coefficient.
    pub fn zero_test(&self, assume: &Assumptions, seed: u64) -> Equality {
        let mut result = Equality::Equal;
        for c in self.terms.values() {
            match zero_test(c, &RatFunc::zero(), assume, seed) {
                Equality::Equal => {}
                Equality::Unequal => return Equality::Unequal,
                Equality::Undecided => result = Equality::Undecided,
            }
        }
        result
    }

    /// Renders with the given odd-coordinate names (`θ0, θ1, …` when absent).
    pub fn display_with<'a>(&'a self, odd_names: &'a [String]) -> SuperDisplay<'a> {
        SuperDisplay {
            value: self,
            names: odd_names,
        }
    }
}

impl From<RatFunc> for SuperScalar {
    fn from(f: RatFunc) -> Self {
        SuperScalar::even(f)
    }
}

pub struct SuperDisplay<'a> {
    value: &'a SuperScalar,
    names: &'a [String],
}

impl fmt::Display for SuperDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<&OddMonomial> = self.value.terms.keys().collect();
        keys.sort_by_key(|m| (m.degree(), m.bits().reverse_bits()));
        for (i, m) in keys.into_iter().enumerate() {
            let c = &self.value.terms[m];
            let name = |a: usize| {
                self.names
                    .get(a)
                    .cloned()
                    .unwrap_or_else(|| format!("θ{a}"))
            };
            let mono: Vec<String> = m.indices().map(name).collect();
            let coeff = c.to_string();
            let (neg, body) = match coeff.strip_prefix('-') {
                Some(rest) if !coeff_is_sum(rest) => (true, rest.to_string()),
                _ => (false, coeff.clone()),
            };
            let body = if coeff_is_sum(&body) && !mono.is_empty() {
                format!("({body})")
            } else {
                body
            };
            if i > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            if mono.is_empty() {
                f.write_str(&body)?;
            } else if body == "1" {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{}*{}", body, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

fn coeff_is_sum(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

impl fmt::Display for SuperScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}
