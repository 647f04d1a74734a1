use std::sync::OnceLock;

use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::graded::{OddMonomial, SuperScalar};
use crate::parity::{koszul, Parity};
use crate::scalar::{leaves_of, Assumptions, Atom, RatFunc, DEFAULT_SEED};

use super::chart::Chart;
use super::field::VectorField;

pub type Matrix = Vec<Vec<SuperScalar>>;

/// A chart with a homogeneous graded metric `g_ij = ⟨∂_i, ∂_j⟩`.
#[derive(Clone, Debug)]
pub struct Manifold {
    chart: Chart,
    g: Matrix,
    parity: Parity,
    assumptions: Assumptions,
    inverse: OnceLock<InverseMetric>,
}

/// `g^{ij}` with `Σ_k g_ik g^kj = δ_i^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct InverseMetric {
    entries: Matrix,
}

impl InverseMetric {
    pub fn entry(&self, i: usize, j: usize) -> &SuperScalar {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![SuperScalar::zero(); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut acc = SuperScalar::zero();
            for k in 0..n {
                if a[i][k].is_zero() || b[k][j].is_zero() {
                    continue;
                }
                acc = acc.add(&a[i][k].mul(&b[k][j]));
            }
            *cell = acc;
        }
    }
    out
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { SuperScalar::one() } else { SuperScalar::zero() })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse of a matrix of even functions; `None` when an
/// elimination step finds no nonzero pivot.
pub fn invert_even(m: &[Vec<RatFunc>]) -> Option<Vec<Vec<RatFunc>>> {
    let n = m.len();
    let mut a: Vec<Vec<RatFunc>> = m.to_vec();
    let mut inv: Vec<Vec<RatFunc>> = (0..n)
        .map(|i| (0..n).map(|j| RatFunc::int(i64::from(i == j))).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| (a[r][col].as_constant().is_none(), r))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].inv();
        for j in 0..n {
            a[col][j] = a[col][j].mul(&p);
            inv[col][j] = inv[col][j].mul(&p);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let da = factor.mul(&a[col][j]);
                let di = factor.mul(&inv[col][j]);
                a[r][j] = a[r][j].sub(&da);
                inv[r][j] = inv[r][j].sub(&di);
            }
        }
    }
    Some(inv)
}

impl Manifold {
    /// Builds and checks graded symmetry, parity homogeneity and body
    /// nondegeneracy.
    pub fn new(chart: Chart, g: Matrix, parity: Parity, assumptions: Assumptions) -> Result<Self> {
        let n = chart.dim();
        if g.len() != n || g.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.len(),
            });
        }
        let m = Manifold {
            chart,
            g,
            parity,
            assumptions,
            inverse: OnceLock::new(),
        };
        m.check_parity_homogeneity()?;
        m.check_graded_symmetry()?;
        m.check_body_nondegenerate(DEFAULT_SEED)?;
        Ok(m)
    }

    /// Skips the invariant checks; used to exercise the checks themselves.
    pub fn new_unchecked(chart: Chart, g: Matrix, parity: Parity, assumptions: Assumptions) -> Self {
        Manifold {
            chart,
            g,
            parity,
            assumptions,
            inverse: OnceLock::new(),
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn assumptions(&self) -> &Assumptions {
        &self.assumptions
    }

    pub fn entry(&self, i: usize, j: usize) -> &SuperScalar {
        &self.g[i][j]
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn check_parity_homogeneity(&self) -> Result<()> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let want = self.parity + self.chart.parity(i) + self.chart.parity(j);
                if !self.g[i][j].has_parity(want) {
                    return Err(Error::ParityHomogeneity {
                        i: self.chart.name(i).into(),
                        j: self.chart.name(j).into(),
                        parity: self.parity,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn check_graded_symmetry(&self) -> Result<()> {
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let s = koszul(self.chart.parity(i), self.chart.parity(j));
                let r = self.g[i][j].sub(&self.g[j][i].signed(s));
                if !r.zero_test(&self.assumptions, DEFAULT_SEED).is_equal() {
                    return Err(Error::GradedSymmetry {
                        i: self.chart.name(i).into(),
                        j: self.chart.name(j).into(),
                        residual: r.display_with(self.chart.odd_names()).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Evaluates the body matrix at a random admissible point and requires
    /// a finite condition number.
    pub fn check_body_nondegenerate(&self, seed: u64) -> Result<()> {
        let n = self.dim();
        if n == 0 {
            return Ok(());
        }
        let body: Vec<Vec<RatFunc>> = self
            .g
            .iter()
            .map(|row| row.iter().map(SuperScalar::body).collect())
            .collect();
        let mut leaves: Vec<Atom> = Vec::new();
        for f in body.iter().flatten() {
            for a in leaves_of(f) {
                if !leaves.contains(&a) {
                    leaves.push(a);
                }
            }
        }
        let mut rng = StdRng::seed_from_u64(seed);
        let point = self.assumptions.sample(&leaves, &mut rng);
        let env = |a: &Atom| point.get(a).copied();
        let mat = DMatrix::from_fn(n, n, |i, j| body[i][j].eval(&env));
        if mat.iter().any(|v| !v.is_finite()) {
            return Err(Error::SingularBody("body matrix not finite at the sample point".into()));
        }
        let sv = mat.singular_values();
        let max = sv.max();
        let min = sv.min();
        if max == 0.0 || min / max < 1e-12 {
            return Err(Error::SingularBody(format!(
                "condition number of the body matrix is {:e}",
                if min == 0.0 { f64::INFINITY } else { max / min }
            )));
        }
        Ok(())
    }

    /// `(Σ_k (-G₀⁻¹N)^k) G₀⁻¹` with `G₀` the body and `N` the nilpotent part.
    pub fn inverse(&self) -> Result<&InverseMetric> {
        if let Some(inv) = self.inverse.get() {
            return Ok(inv);
        }
        let inv = self.compute_inverse()?;
        Ok(self.inverse.get_or_init(|| inv))
    }

    fn compute_inverse(&self) -> Result<InverseMetric> {
        let n = self.dim();
        let body: Vec<Vec<RatFunc>> = self
            .g
            .iter()
            .map(|row| row.iter().map(SuperScalar::body).collect())
            .collect();
        let b_inv = invert_even(&body)
            .ok_or_else(|| Error::SingularBody("elimination found an identically zero pivot".into()))?;
        let b_inv: Matrix = b_inv
            .into_iter()
            .map(|row| row.into_iter().map(SuperScalar::even).collect())
            .collect();
        let nil: Matrix = self
            .g
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.sub(&SuperScalar::term(OddMonomial::ONE, e.body())))
                    .collect()
            })
            .collect();
        let a: Matrix = mat_mul(&b_inv, &nil)
            .into_iter()
            .map(|row| row.iter().map(SuperScalar::neg).collect())
            .collect();
        let mut sum = identity(n);
        let mut power = identity(n);
        loop {
            power = mat_mul(&power, &a);
            if power.iter().flatten().all(SuperScalar::is_zero) {
                break;
            }
            for i in 0..n {
                for j in 0..n {
                    sum[i][j] = sum[i][j].add(&power[i][j]);
                }
            }
        }
        Ok(InverseMetric {
            entries: mat_mul(&sum, &b_inv),
        })
    }

    /// `⟨X, Y⟩ = Σ X^i (-1)^{|∂_i||Y^j|} Y^j g_ij`.
    pub fn eval(&self, x: &VectorField, y: &VectorField) -> SuperScalar {
        let mut out = SuperScalar::zero();
        for i in 0..self.dim() {
            let xi = x.component(i);
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim() {
                let yj = y.component(j);
                if yj.is_zero() || self.g[i][j].is_zero() {
                    continue;
                }
                let s = koszul(self.chart.parity(i), y.parity() + self.chart.parity(j));
                out = out.add(&xi.mul(&yj.signed(s)).mul(&self.g[i][j]));
            }
        }
        out
    }

    /// The field with `X(f) = (-1)^{|f||g|} ⟨X, grad f⟩` for all `X`.
    pub fn gradient(&self, f: &SuperScalar) -> Result<VectorField> {
        let pf = f.parity().ok_or_else(|| Error::Inhomogeneous {
            what: "function passed to gradient".into(),
        })?;
        let inv = self.inverse()?;
        let py = pf + self.parity;
        let n = self.dim();
        let c: Vec<SuperScalar> = (0..n)
            .map(|i| {
                let s = koszul(self.chart.parity(i), py) * koszul(pf, self.parity);
                self.chart.partial(i, f).signed(s)
            })
            .collect();
        let coeffs = (0..n)
            .map(|j| {
                let mut acc = SuperScalar::zero();
                for (i, ci) in c.iter().enumerate() {
                    if !ci.is_zero() {
                        acc = acc.add(&ci.mul(inv.entry(i, j)));
                    }
                }
                acc
            })
            .collect();
        let field = VectorField::new(&self.chart, coeffs)?;
        Ok(if field.is_zero() {
            VectorField::zero_with_parity(&self.chart, py)
        } else {
            field
        })
    }

    /// Replaces a named function in every metric entry.
    pub fn subst_func(&self, name: &str, replacement: &RatFunc) -> Result<Manifold> {
        let g = self
            .g
            .iter()
            .map(|row| row.iter().map(|e| e.subst_func(name, replacement)).collect())
            .collect();
        Manifold::new(self.chart.clone(), g, self.parity, self.assumptions.clone())
    }
}
