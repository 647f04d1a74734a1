//! Assumption registry and equality testing with a numeric fallback.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::expr::ScalarExpr;
use super::poly::Atom;
use super::ratfunc::RatFunc;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const DEFAULT_INTERVAL: (f64, f64) = (0.5, 2.0);
const MIN_SAMPLES: usize = 8;
const MAX_ATTEMPTS: usize = 64;
const REL_TOL: f64 = 1e-9;

/// Open-interval constraints on symbols and named functions.
///
/// A constraint on a named function `h` applies to `h` itself; its
/// derivatives are sampled from the default interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Assumptions {
    intervals: BTreeMap<String, (f64, f64)>,
    default: (f64, f64),
}

impl Default for Assumptions {
    fn default() -> Self {
        Assumptions {
            intervals: BTreeMap::new(),
            default: DEFAULT_INTERVAL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equality {
    Equal,
    Unequal,
    Undecided,
}

impl Equality {
    pub fn is_equal(self) -> bool {
        self == Equality::Equal
    }
}

impl Assumptions {
    pub fn new() -> Self {
        Assumptions::default()
    }

    /// Registers `lo < name < hi`; either bound may be infinite.
    pub fn declare(&mut self, name: &str, lo: f64, hi: f64) {
        self.intervals.insert(name.to_string(), (lo, hi));
    }

    pub fn positive(&mut self, name: &str) {
        self.declare(name, 0.0, f64::INFINITY);
    }

    pub fn merge(&mut self, other: &Assumptions) {
        for (k, v) in &other.intervals {
            self.intervals.insert(k.clone(), *v);
        }
    }

    pub fn interval(&self, name: &str) -> Option<(f64, f64)> {
        self.intervals.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, (f64, f64))> {
        self.intervals.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Sampling range: the declared interval clipped to the default range
    /// when they overlap, otherwise a unit window inside the declared one.
    fn sample_range(&self, atom: &Atom) -> (f64, f64) {
        let key = match atom {
            Atom::Var(v) => Some(&**v),
            Atom::Func { name, order: 0, .. } => Some(&**name),
            _ => None,
        };
        let Some((lo, hi)) = key.and_then(|k| self.intervals.get(k)).copied() else {
            return self.default;
        };
        let (dlo, dhi) = self.default;
        let (a, b) = (lo.max(dlo), hi.min(dhi));
        if a < b {
            (a, b)
        } else if lo.is_finite() && hi.is_finite() {
            (lo + 0.25 * (hi - lo), hi - 0.25 * (hi - lo))
        } else if lo.is_finite() {
            (lo + 0.5, lo + 2.0)
        } else {
            (hi - 2.0, hi - 0.5)
        }
    }

    /// Draws one sample point for the given leaves.
    pub fn sample(&self, leaves: &[Atom], rng: &mut StdRng) -> BTreeMap<Atom, f64> {
        leaves
            .iter()
            .map(|a| {
                let (lo, hi) = self.sample_range(a);
                (a.clone(), rng.random_range(lo..hi))
            })
            .collect()
    }
}

pub fn leaves_of(f: &RatFunc) -> Vec<Atom> {
    let mut out = Vec::new();
    f.for_each_atom(&mut |a| {
        if matches!(a, Atom::Var(_) | Atom::Func { .. }) && !out.contains(a) {
            out.push(a.clone());
        }
    });
    out.sort();
    out
}

/// Decides whether `diff` is the zero function. Exact when the normal form
/// has no opaque atoms; otherwise evaluates `diff` and `scale` at random
/// admissible points.
pub fn zero_test(diff: &RatFunc, scale: &RatFunc, assume: &Assumptions, seed: u64) -> Equality {
    if diff.is_zero() {
        return Equality::Equal;
    }
    if !diff.has_opaque() {
        return Equality::Unequal;
    }
    let mut leaves = leaves_of(diff);
    for a in leaves_of(scale) {
        if !leaves.contains(&a) {
            leaves.push(a);
        }
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut good = 0;
    for _ in 0..MAX_ATTEMPTS {
        let point = assume.sample(&leaves, &mut rng);
        let env = |a: &Atom| point.get(a).copied();
        let d = diff.eval(&env);
        let s = scale.eval(&env);
        if !d.is_finite() || !s.is_finite() {
            continue;
        }
        if d.abs() >= REL_TOL * (1.0 + s.abs()) {
            return Equality::Unequal;
        }
        good += 1;
        if good >= MIN_SAMPLES {
            return Equality::Equal;
        }
    }
    if good == 0 {
        Equality::Undecided
    } else {
        Equality::Equal
    }
}

pub fn ratfunc_equal(a: &RatFunc, b: &RatFunc, assume: &Assumptions, seed: u64) -> Equality {
    zero_test(&a.sub(b), a, assume, seed)
}

pub fn expr_equal(a: &ScalarExpr, b: &ScalarExpr, assume: &Assumptions, seed: u64) -> Equality {
    match (a.try_to_ratfunc(), b.try_to_ratfunc()) {
        (Some(x), Some(y)) => ratfunc_equal(&x, &y, assume, seed),
        _ => Equality::Undecided,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_expr;

    fn eq(a: &str, b: &str) -> Equality {
        expr_equal(
            &parse_expr(a).unwrap(),
            &parse_expr(b).unwrap(),
            &Assumptions::default(),
            DEFAULT_SEED,
        )
    }

    #[test]
    fn exact_cases() {
        assert_eq!(eq("h'(t)*h(t)/h(t)", "h'(t)"), Equality::Equal);
        assert_eq!(eq("h''(t)", "h'(t)"), Equality::Unequal);
        assert_eq!(eq("h(t)*h'(t) - h'(t)*h(t)", "0"), Equality::Equal);
    }

    #[test]
    fn trig_identity_needs_fallback() {
        let lhs = parse_expr("sin(k*t)^2 + cos(k*t)^2").unwrap().to_ratfunc();
        assert!(!lhs.sub(&RatFunc::one()).is_zero());
        assert_eq!(eq("sin(k*t)^2 + cos(k*t)^2", "1"), Equality::Equal);
        assert_eq!(eq("sin(k*t)^2", "1"), Equality::Unequal);
    }

    #[test]
    fn undecided_when_every_sample_is_inadmissible() {
        let mut assume = Assumptions::default();
        assume.declare("x", -2.0, -1.0);
        let a = parse_expr("sqrt(x) + sin(x)").unwrap();
        let b = parse_expr("sin(x)").unwrap();
        assert_eq!(expr_equal(&a, &b, &assume, 1), Equality::Undecided);
    }

    #[test]
    fn samples_respect_intervals() {
        let mut assume = Assumptions::default();
        assume.declare("x", 3.0, 4.0);
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let p = assume.sample(&[Atom::var("x")], &mut rng);
            let v = p[&Atom::var("x")];
            assert!(v > 3.0 && v < 4.0);
        }
    }
}
