//! Serializable analysis report.

use crate::analysis::Analysis;
use crate::classify::Orbit;
use crate::curvatures::{
    formula_m3_case_split, normal_curvature_function, principal_comparison, same_multiset, AxialCurvatureReport,
    NormalCurvatureForm, PrincipalComparison,
};
use crate::jetcore::PolyMapGerm;
use crate::locus::{affine_span, axial_space, boundedness, AxialKind, Boundedness, LocusShape};
use crate::tol::CLOSED_VS_ORACLE;
use crate::verify::{run_all, CheckResult, CheckStatus};
use nalgebra::DVector;
use serde::{Deserialize, Serialize};

fn plain(v: &DVector<f64>) -> Vec<f64> {
    v.iter().copied().collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffReport {
    pub dim: usize,
    pub base: Vec<f64>,
    pub dirs: Vec<Vec<f64>>,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxialSpaceReport {
    pub l: usize,
    pub kind: AxialKind,
    pub basis: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub vectors: Vec<Vec<f64>>,
    pub case: String,
    pub unique: bool,
    pub free: Vec<usize>,
    pub extended: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: PolyMapGerm,
    pub n: usize,
    pub k: usize,
    pub tol: f64,
    pub monge: Vec<Vec<Vec<f64>>>,
    pub orbit: Orbit,
    pub rank_a: Option<usize>,
    pub near_degenerate: bool,
    pub locus_shape: LocusShape,
    pub aff: AffReport,
    pub axial_space: AxialSpaceReport,
    pub frame: FrameReport,
    pub axial: Vec<AxialCurvatureReport>,
    pub umbilic: Option<f64>,
    pub principal: Vec<PrincipalComparison>,
    pub checks: Vec<CheckResult>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn new(a: &Analysis) -> Self {
        let aff = affine_span(&a.monge, a.tol);
        let ax = axial_space(&a.monge, a.tol);
        let principal = principal_comparison(&a.monge, &a.frame, &a.axial, a.tol);
        let checks = run_all(a);
        let warnings = warnings(a, &principal, &checks);
        AnalysisReport {
            input: a.germ.clone(),
            n: a.monge.n,
            k: a.monge.k,
            tol: a.tol.0,
            monge: a.monge.to_nested(),
            orbit: a.class.orbit,
            rank_a: a.class.rank_a,
            near_degenerate: a.class.near_degenerate,
            locus_shape: a.shape.clone(),
            aff: AffReport {
                dim: aff.dim(),
                base: plain(&aff.base),
                dirs: aff.dirs.iter().map(plain).collect(),
                distance: aff.closest_point().norm(),
            },
            axial_space: AxialSpaceReport { l: ax.l, kind: ax.kind, basis: ax.basis.iter().map(plain).collect() },
            frame: FrameReport {
                vectors: a.frame.vectors.iter().map(plain).collect(),
                case: a.frame.case.clone(),
                unique: a.frame.unique,
                free: a.frame.free.clone(),
                extended: a.frame.extended.as_ref().map(|e| plain(&e.vector)),
            },
            axial: a.axial.clone(),
            umbilic: a.umbilic,
            principal,
            checks,
            warnings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report values are finite")
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    /// Plain-text summary.
    pub fn table(&self) -> String {
        let mut s = format!("germ        R^{} -> R^{}\norbit       {}\n", self.n, self.n + self.k, self.orbit);
        s += &format!("locus       {:?}\n", self.locus_shape);
        s += &format!("Aff         dim {}, distance {:.12}\n", self.aff.dim, self.aff.distance);
        s += &format!("frame       {} ({})\n", self.frame.case, if self.frame.unique { "unique" } else { "not unique" });
        for (v, ax) in self.frame.vectors.iter().zip(&self.axial) {
            let vals: Vec<String> = ax.values.iter().map(|x| format!("{x:.12}")).collect();
            s += &format!("  v{} = {:.9?}  kappa_a{} = {{{}}}\n", ax.i, v, ax.i, vals.join(", "));
        }
        match self.umbilic {
            Some(u) => s += &format!("umbilic     {u:.12}\n"),
            None => s += "umbilic     undefined\n",
        }
        s += &checks_table(&self.checks);
        for w in &self.warnings {
            s += &format!("warning: {w}\n");
        }
        s
    }
}

pub fn checks_table(checks: &[CheckResult]) -> String {
    let mut s = String::new();
    for c in checks {
        let tag = match c.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::NotApplicable => "n/a ",
        };
        s += &format!("  [{tag}] {:<20} {}\n", c.name, c.detail);
    }
    s
}

fn warnings(a: &Analysis, principal: &[PrincipalComparison], checks: &[CheckResult]) -> Vec<String> {
    let mut w = vec![];
    if a.class.near_degenerate {
        w.push("jet is close to a stratum boundary; closed forms skipped, oracle values reported".into());
    }
    for ax in &a.axial {
        if ax.agree == Some(false) {
            w.push(format!("v{}: closed form {:?} disagrees with the oracle {:?}", ax.i, ax.closed_form, ax.values));
        }
    }
    for p in principal {
        if !p.coincide {
            w.push(format!(
                "v{}: axial curvatures {:?} do not coincide with the slice principal curvatures {:?}",
                p.i,
                a.axial[p.i - 1].values,
                p.principal
            ));
        }
    }
    if a.monge.n == 3 {
        for (v, ax) in a.frame.vectors.iter().zip(&a.axial) {
            if boundedness(&a.monge, v, a.tol) != Boundedness::BoundedBoth {
                continue;
            }
            if let NormalCurvatureForm::Solid { a200, a110, a020, .. } = normal_curvature_function(&a.monge, v) {
                let split = formula_m3_case_split(a200, a110, a020, a.tol);
                if !same_multiset(&split, &ax.values, CLOSED_VS_ORACLE) {
                    w.push(format!(
                        "v{}: published trigonometric case split gives {split:?}, critical values are {:?}",
                        ax.i, ax.values
                    ));
                }
            }
        }
    }
    for c in checks.iter().filter(|c| c.status == CheckStatus::Fail) {
        w.push(format!("check {} failed: {}", c.name, c.detail));
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcore::MongeJet;
    use crate::tol::Tol;

    #[test]
    fn json_round_trip() {
        let m = MongeJet::from_nested(
            3,
            1,
            &[
                vec![vec![1.0, 0.0, 0.0], vec![0.0, 7.0, 0.0], vec![0.0, 0.0, 0.0]],
                vec![vec![3.0, 1.0, 0.0], vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
            ],
        );
        let r = AnalysisReport::new(&Analysis::from_monge(&m, Tol::default()).unwrap());
        let text = serde_json::to_string(&r).unwrap();
        let back: AnalysisReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
