use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::SuperScalar;
use crate::parity::Parity;
use crate::scalar::{RatFunc, ScalarExpr};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coord {
    pub name: String,
    pub parity: Parity,
}

impl Coord {
    pub fn even(name: &str) -> Self {
        Coord {
            name: name.to_string(),
            parity: Parity::Even,
        }
    }

    pub fn odd(name: &str) -> Self {
        Coord {
            name: name.to_string(),
            parity: Parity::Odd,
        }
    }
}

/// A single global coordinate chart. Odd coordinates are numbered in
/// declaration order; that order fixes the Grassmann monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    coords: Vec<Coord>,
    odd_slot: Vec<Option<usize>>,
    odd_names: Vec<String>,
}

impl Chart {
    pub fn new(coords: Vec<Coord>) -> Result<Self> {
        let mut odd_slot = Vec::with_capacity(coords.len());
        let mut odd_names = Vec::new();
        for (i, c) in coords.iter().enumerate() {
            if coords[..i].iter().any(|d| d.name == c.name) {
                return Err(Error::DuplicateCoordinate(c.name.clone()));
            }
            if c.parity.is_odd() {
                odd_slot.push(Some(odd_names.len()));
                odd_names.push(c.name.clone());
            } else {
                odd_slot.push(None);
            }
        }
        if odd_names.len() > 32 {
            return Err(Error::TooManyOdd(odd_names.len()));
        }
        Ok(Chart {
            coords,
            odd_slot,
            odd_names,
        })
    }

    /// Chart from `(name, parity)` pairs.
    pub fn from_pairs(pairs: &[(&str, Parity)]) -> Result<Self> {
        Chart::new(
            pairs
                .iter()
                .map(|(n, p)| Coord {
                    name: n.to_string(),
                    parity: *p,
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `(#even, #odd)`.
    pub fn dimension_pair(&self) -> (usize, usize) {
        let m = self.odd_names.len();
        (self.dim() - m, m)
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn name(&self, i: usize) -> &str {
        &self.coords[i].name
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.coords[i].parity
    }

    pub fn odd_names(&self) -> &[String] {
        &self.odd_names
    }

    pub fn odd_slot(&self, i: usize) -> Option<usize> {
        self.odd_slot[i]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.coords
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownCoordinate(name.to_string()))
    }

    /// `∂_i f`, the left derivative for odd coordinates.
    pub fn partial(&self, i: usize, f: &SuperScalar) -> SuperScalar {
        match self.odd_slot[i] {
            Some(a) => f.diff_odd(a),
            None => f.diff_even(&self.coords[i].name),
        }
    }

    /// The coordinate function `x^i`.
    pub fn coordinate(&self, i: usize) -> SuperScalar {
        match self.odd_slot[i] {
            Some(a) => SuperScalar::generator(a),
            None => SuperScalar::even(RatFunc::var(&self.coords[i].name)),
        }
    }

    /// Concatenation, with the second chart's odd generators numbered after
    /// the first's.
    pub fn product(&self, other: &Chart) -> Result<Chart> {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        Chart::new(coords)
    }

    /// Interprets an expression on this chart: symbols naming odd
    /// coordinates become Grassmann generators, everything else is even.
    pub fn lift_expr(&self, e: &ScalarExpr) -> Result<SuperScalar> {
        if !self.mentions_odd(e) {
            return e
                .try_to_ratfunc()
                .map(SuperScalar::even)
                .ok_or_else(|| Error::DivisionByZero(e.to_string()));
        }
        use ScalarExpr as E;
        Ok(match e {
            E::Sym(s) => {
                let i = self.index(s)?;
                self.coordinate(i)
            }
            E::Add(a, b) => self.lift_expr(a)?.add(&self.lift_expr(b)?),
            E::Sub(a, b) => self.lift_expr(a)?.sub(&self.lift_expr(b)?),
            E::Mul(a, b) => self.lift_expr(a)?.mul(&self.lift_expr(b)?),
            E::Neg(a) => self.lift_expr(a)?.neg(),
            E::Div(a, b) => {
                let den = self
                    .lift_expr(b)?
                    .inverse()
                    .ok_or_else(|| Error::DivisionByZero(b.to_string()))?;
                self.lift_expr(a)?.mul(&den)
            }
            E::Pow(a, k) => {
                let base = self.lift_expr(a)?;
                if *k >= 0 {
                    base.pow(*k as u32)
                } else {
                    base.inverse()
                        .ok_or_else(|| Error::DivisionByZero(a.to_string()))?
                        .pow(k.unsigned_abs())
                }
            }
            E::Num(_) | E::Func { .. } => unreachable!("leaf without odd symbols"),
            E::Exp(a) | E::Sin(a) | E::Cos(a) | E::Sqrt(a) => {
                return Err(Error::NotEven {
                    name: "argument of an elementary function".into(),
                    found: a.to_string(),
                })
            }
        })
    }

    fn mentions_odd(&self, e: &ScalarExpr) -> bool {
        let mut hit = false;
        e.for_each_leaf(&mut |leaf| {
            if let ScalarExpr::Sym(s) = leaf {
                hit |= self.odd_names.iter().any(|n| **n == **s);
            }
        });
        hit
    }
}
