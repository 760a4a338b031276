//! Axial curvatures: closed forms checked against a brute-force oracle.

pub mod closed;
pub mod form;
pub mod oracle;
pub mod slice;

pub use closed::{closed_n2, closed_n3, formula_m3_case_split, primary_closed_n3, ClosedValues};
pub use form::{normal_curvature_function, NormalCurvatureForm};
pub use oracle::{axial_oracle, CriticalKind, CriticalValue};
pub use slice::{curve_curvature, curve_curvature_along, principal_curvatures, regular_slice};

use crate::classify::Classification;
use crate::error::Result;
use crate::frames::AdaptedFrame;
use crate::jetcore::{reduce_lemma_change, MongeJet};
use crate::locus::TangentParam;
use crate::tol::{Tol, CLOSED_VS_ORACLE};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Oracle,
    Both,
}

/// Critical values of `K_{v_a^i}` for one frame vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxialCurvatureReport {
    pub i: usize,
    /// Oracle-confirmed critical values, ascending.
    pub values: Vec<f64>,
    pub method: Method,
    /// Every closed-form value was found by the oracle.
    pub agree: Option<bool>,
    pub params: Vec<TangentParam>,
    pub kinds: Vec<CriticalKind>,
    pub closed_form: Option<Vec<f64>>,
    pub formula: Option<String>,
}

/// Closed values all present among the oracle values.
pub fn closed_within(closed: &[f64], oracle: &[f64]) -> bool {
    closed
        .iter()
        .all(|c| oracle.iter().any(|o| (c - o).abs() <= CLOSED_VS_ORACLE * c.abs().max(1.0)))
}

pub fn same_multiset(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * x.abs().max(1.0))
}

/// Oracle and closed-form values for every frame vector.
pub fn axial_curvatures(
    m: &MongeJet,
    class: &Classification,
    frame: &AdaptedFrame,
    tol: Tol,
) -> Result<Vec<AxialCurvatureReport>> {
    let closed = if class.near_degenerate {
        vec![None; frame.vectors.len()]
    } else if m.n == 2 {
        closed_n2(m, frame, class.orbit)
    } else {
        closed_n3(m, frame, class.orbit, tol)
    };
    frame
        .vectors
        .iter()
        .zip(closed)
        .enumerate()
        .map(|(i, (v, cf))| {
            let pts = axial_oracle(&normal_curvature_function(m, v), tol)?;
            let values = oracle::values(&pts);
            let agree = cf.as_ref().map(|c| closed_within(&c.values, &values));
            Ok(AxialCurvatureReport {
                i: i + 1,
                method: if cf.is_some() { Method::Both } else { Method::Oracle },
                agree,
                params: pts.iter().map(|p| p.param).collect(),
                kinds: pts.iter().map(|p| p.kind).collect(),
                closed_form: cf.as_ref().map(|c| c.values.clone()),
                formula: cf.map(|c| c.formula.to_string()),
                values,
            })
        })
        .collect()
}

/// Principal curvatures of the regular slice along each frame vector;
/// `coincide` holds when every axial value is one of them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrincipalComparison {
    pub i: usize,
    pub principal: Vec<f64>,
    pub coincide: bool,
}

/// Compares axial values with slice principal curvatures. The slice is taken
/// in the reduced coordinates when `a_002` does not vanish.
pub fn principal_comparison(
    m: &MongeJet,
    frame: &AdaptedFrame,
    axial: &[AxialCurvatureReport],
    tol: Tol,
) -> Vec<PrincipalComparison> {
    if m.n != 3 {
        return vec![];
    }
    let lemma = reduce_lemma_change(m, tol).ok();
    let (jet, map): (&MongeJet, Box<dyn Fn(&nalgebra::DVector<f64>) -> nalgebra::DVector<f64>>) = match &lemma {
        Some(r) => (&r.jet, Box::new(|v| r.to_reduced(v))),
        None => (m, Box::new(|v| v.clone())),
    };
    let s = regular_slice(jet);
    frame
        .vectors
        .iter()
        .zip(axial)
        .map(|(v, ax)| {
            let mut principal = principal_curvatures(&s, &map(v));
            principal.dedup_by(|a, b| oracle::same_value(*a, *b));
            let coincide = closed_within(&ax.values, &principal);
            PrincipalComparison { i: ax.i, principal, coincide }
        })
        .collect()
}
