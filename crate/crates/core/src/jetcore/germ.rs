//! Polynomial map germs and their JSON form.

use crate::error::{Error, Result};
use crate::linalg;
use serde::{Deserialize, Serialize};

/// Coefficient as written in the input: a JSON number or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Num(f64),
    Text(String),
}

impl Coeff {
    pub fn value(&self) -> Result<f64> {
        let v = match self {
            Coeff::Num(x) => *x,
            Coeff::Text(s) => parse_rational(s)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Schema(format!("non-finite coefficient {self:?}")))
        }
    }
}

fn parse_rational(s: &str) -> Result<f64> {
    let bad = || Error::Schema(format!("invalid coefficient {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(p as f64 / q as f64)
        }
        None => s.parse::<f64>().map_err(|_| bad()),
    }
}

/// One monomial `coeff * x^exp`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub exp: Vec<u32>,
    pub coeff: Coeff,
}

/// Polynomial map germ `(R^n, 0) -> (R^(n+k), 0)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyMapGerm {
    pub n: usize,
    pub k: usize,
    pub components: Vec<Vec<Term>>,
}

impl PolyMapGerm {
    /// Builds a germ from `(exponent, coefficient)` lists without validation.
    pub fn from_terms(n: usize, k: usize, comps: Vec<Vec<(Vec<u32>, f64)>>) -> Self {
        let components = comps
            .into_iter()
            .map(|c| c.into_iter().map(|(exp, v)| Term { exp, coeff: Coeff::Num(v) }).collect())
            .collect();
        PolyMapGerm { n, k, components }
    }

    /// Evaluates every component at `x`.
    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|t| {
                        let v = t.coeff.value().unwrap_or(f64::NAN);
                        t.exp.iter().zip(x).fold(v, |acc, (&e, &xi)| acc * xi.powi(e as i32))
                    })
                    .sum()
            })
            .collect()
    }

    /// Sum of the coefficients of component `m` with exponent `exp`.
    pub fn coeff_of(&self, m: usize, exp: &[u32]) -> f64 {
        self.components[m]
            .iter()
            .filter(|t| t.exp == exp)
            .map(|t| t.coeff.value().unwrap_or(f64::NAN))
            .sum()
    }
}

/// Parses and validates a germ from JSON text.
pub fn parse_germ(text: &str) -> Result<PolyMapGerm> {
    let g: PolyMapGerm = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    validate(&g)?;
    Ok(g)
}

/// Checks shape, coefficients, the zero constant term and corank one.
pub fn validate(g: &PolyMapGerm) -> Result<()> {
    if g.n == 0 || g.k == 0 {
        return Err(Error::Schema(format!("need n >= 1 and k >= 1, got n={} k={}", g.n, g.k)));
    }
    if g.components.len() != g.n + g.k {
        return Err(Error::Schema(format!(
            "expected {} components, got {}",
            g.n + g.k,
            g.components.len()
        )));
    }
    for (m, comp) in g.components.iter().enumerate() {
        for t in comp {
            if t.exp.len() != g.n {
                return Err(Error::Schema(format!(
                    "component {m}: exponent {:?} has length {}, expected {}",
                    t.exp,
                    t.exp.len(),
                    g.n
                )));
            }
            t.coeff.value()?;
        }
        let c0 = g.coeff_of(m, &vec![0; g.n]);
        if c0 != 0.0 {
            return Err(Error::NotGerm { component: m, value: c0 });
        }
    }
    let j = super::jet::jet2(g);
    let r = linalg::rank(&j.linear, crate::tol::DEFAULT_TOL, 0.0);
    if r != g.n - 1 {
        return Err(Error::Corank { rank: r, expected: g.n - 1 });
    }
    Ok(())
}
