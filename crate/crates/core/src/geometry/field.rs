use crate::error::{Error, Result};
use crate::graded::SuperScalar;
use crate::parity::{koszul, Parity};

use super::chart::Chart;

/// A homogeneous vector field `X = Σ X^i ∂_i`, coefficients on the left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorField {
    coeffs: Vec<SuperScalar>,
    parity: Parity,
}

impl VectorField {
    /// Infers the parity from the coefficients; the zero field is even.
    pub fn new(chart: &Chart, coeffs: Vec<SuperScalar>) -> Result<Self> {
        if coeffs.len() != chart.dim() {
            return Err(Error::DimensionMismatch {
                expected: chart.dim(),
                found: coeffs.len(),
            });
        }
        let mut parity = None;
        for (i, c) in coeffs.iter().enumerate() {
            for (m, _) in c.terms() {
                let p = m.parity() + chart.parity(i);
                match parity {
                    None => parity = Some(p),
                    Some(q) if q != p => {
                        return Err(Error::Inhomogeneous {
                            what: "vector field".into(),
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(VectorField {
            coeffs,
            parity: parity.unwrap_or(Parity::Even),
        })
    }

    pub fn zero(chart: &Chart) -> Self {
        VectorField {
            coeffs: vec![SuperScalar::zero(); chart.dim()],
            parity: Parity::Even,
        }
    }

    /// The zero field, declared with the given parity.
    pub fn zero_with_parity(chart: &Chart, parity: Parity) -> Self {
        VectorField {
            coeffs: vec![SuperScalar::zero(); chart.dim()],
            parity,
        }
    }

    /// The coordinate field `∂_i`.
    pub fn frame(chart: &Chart, i: usize) -> Self {
        let mut coeffs = vec![SuperScalar::zero(); chart.dim()];
        coeffs[i] = SuperScalar::one();
        VectorField {
            coeffs,
            parity: chart.parity(i),
        }
    }

    pub fn frames(chart: &Chart) -> Vec<VectorField> {
        (0..chart.dim()).map(|i| VectorField::frame(chart, i)).collect()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[SuperScalar] {
        &self.coeffs
    }

    /// `[X]^i`, the coefficient of `∂_i`.
    pub fn component(&self, i: usize) -> &SuperScalar {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SuperScalar::is_zero)
    }

    fn combine_parity(&self, other: &VectorField) -> Parity {
        if self.is_zero() {
            other.parity
        } else {
            self.parity
        }
    }

    /// # Panics
    /// When both fields are nonzero and of different parity.
    pub fn add(&self, other: &VectorField) -> VectorField {
        assert!(
            self.is_zero() || other.is_zero() || self.parity == other.parity,
            "adding vector fields of different parity"
        );
        VectorField {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
            parity: self.combine_parity(other),
        }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> VectorField {
        VectorField {
            coeffs: self.coeffs.iter().map(SuperScalar::neg).collect(),
            parity: self.parity,
        }
    }

    /// `f X` for homogeneous `f` of parity `pf`.
    pub fn scale_left(&self, f: &SuperScalar, pf: Parity) -> VectorField {
        debug_assert!(f.has_parity(pf));
        VectorField {
            coeffs: self.coeffs.iter().map(|c| f.mul(c)).collect(),
            parity: self.parity + pf,
        }
    }

    /// `X · f = (-1)^{|X||f|} f X`.
    pub fn scale_right(&self, f: &SuperScalar, pf: Parity) -> VectorField {
        self.scale_left(f, pf)
            .signed_by(koszul(self.parity, pf).is_minus())
    }

    fn signed_by(self, minus: bool) -> VectorField {
        if minus {
            self.neg()
        } else {
            self
        }
    }

    /// `X(f) = Σ X^i ∂_i f`.
    pub fn apply(&self, chart: &Chart, f: &SuperScalar) -> SuperScalar {
        let mut out = SuperScalar::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&c.mul(&chart.partial(i, f)));
        }
        out
    }

    /// Graded commutator `[X, Y]^j = X(Y^j) - (-1)^{|X||Y|} Y(X^j)`.
    pub fn bracket(&self, chart: &Chart, other: &VectorField) -> VectorField {
        let s = koszul(self.parity, other.parity);
        let coeffs = (0..self.dim())
            .map(|j| {
                let a = self.apply(chart, &other.coeffs[j]);
                let b = other.apply(chart, &self.coeffs[j]).signed(s);
                a.sub(&b)
            })
            .collect();
        VectorField {
            coeffs,
            parity: self.parity + other.parity,
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&SuperScalar) -> SuperScalar) -> VectorField {
        VectorField {
            coeffs: self.coeffs.iter().map(f).collect(),
            parity: self.parity,
        }
    }

    /// Pads with zero coefficients: `offset` leading and up to `dim` total.
    pub fn embed(&self, offset: usize, dim: usize, remap: impl Fn(&SuperScalar) -> SuperScalar) -> VectorField {
        let mut coeffs = vec![SuperScalar::zero(); dim];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[offset + i] = remap(c);
        }
        VectorField {
            coeffs,
            parity: self.parity,
        }
    }

    pub fn display_with(&self, chart: &Chart) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let s = c.display_with(chart.odd_names()).to_string();
                let s = if c.len() > 1 || s.contains(" + ") || s.contains(" - ") {
                    format!("({s})")
                } else {
                    s
                };
                match s.as_str() {
                    "1" => format!("d_{}", chart.name(i)),
                    "-1" => format!("-d_{}", chart.name(i)),
                    _ => format!("{s}*d_{}", chart.name(i)),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
