//! Named example germs shipped with the crate, each with expected values.

use crate::analysis::Analysis;
use crate::classify::Orbit;
use crate::curvatures::same_multiset;
use crate::error::{Error, Result};
use crate::jetcore::{parse_germ, PolyMapGerm};
use serde::Deserialize;

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub germ: &'static str,
    pub expected: &'static str,
}

/// Expected invariants of a fixture.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Expected {
    pub orbit: Orbit,
    pub locus_shape: String,
    #[serde(default)]
    pub frame_case: Option<String>,
    /// Frame vectors, compared componentwise.
    #[serde(default)]
    pub frame: Option<Vec<Vec<f64>>>,
    pub axial: Vec<Vec<f64>>,
    pub umbilic: Option<f64>,
    pub tol: f64,
}

macro_rules! fixture {
    ($name:literal) => {
        Fixture {
            name: $name,
            germ: include_str!(concat!("../fixtures/", $name, ".json")),
            expected: include_str!(concat!("../fixtures/", $name, ".expected.json")),
        }
    };
}

pub const CORPUS: &[Fixture] = &[
    fixture!("cuspidal_edge"),
    fixture!("ex3var4_i"),
    fixture!("ex3var4_ii"),
    fixture!("ex3var4_iii"),
    fixture!("ex3var4_iv"),
    fixture!("ex3var4_v"),
    fixture!("ex3var5_i"),
    fixture!("ex3var5_ii"),
    fixture!("ex3var5_iii"),
    fixture!("frontal_i"),
    fixture!("frontal_ii"),
    fixture!("plane_locus"),
    fixture!("surface_halfline"),
    fixture!("surface_line"),
    fixture!("surface_parabola"),
    fixture!("surface_point"),
    fixture!("swapped_coordinates"),
    fixture!("worked_r4"),
    fixture!("worked_r5"),
    fixture!("zero_jet"),
];

pub fn find(name: &str) -> Option<&'static Fixture> {
    CORPUS.iter().find(|f| f.name == name)
}

impl Fixture {
    pub fn parse(&self) -> Result<PolyMapGerm> {
        parse_germ(self.germ)
    }

    pub fn expected(&self) -> Result<Expected> {
        serde_json::from_str(self.expected).map_err(|e| Error::Schema(format!("{}: {e}", self.name)))
    }
}

fn shape_tag(a: &Analysis) -> String {
    serde_json::to_value(&a.shape)
        .ok()
        .and_then(|v| v.get("shape").and_then(|s| s.as_str()).map(str::to_owned))
        .unwrap_or_default()
}

/// Differences between an analysis and its expected values; empty when everything matches.
pub fn compare(a: &Analysis, e: &Expected) -> Vec<String> {
    let mut out = vec![];
    if a.class.orbit != e.orbit {
        out.push(format!("orbit {} != {}", a.class.orbit, e.orbit));
    }
    let shape = shape_tag(a);
    if shape != e.locus_shape {
        out.push(format!("locus shape {shape} != {}", e.locus_shape));
    }
    if let Some(case) = &e.frame_case {
        if &a.frame.case != case {
            out.push(format!("frame case {} != {case}", a.frame.case));
        }
    }
    if let Some(frame) = &e.frame {
        for (i, (v, w)) in a.frame.vectors.iter().zip(frame).enumerate() {
            let d = v.iter().zip(w).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            if d > e.tol {
                out.push(format!("v{} = {:?} != {w:?}", i + 1, v.as_slice()));
            }
        }
    }
    if a.axial.len() != e.axial.len() {
        out.push(format!("{} frame vectors, expected {}", a.axial.len(), e.axial.len()));
    }
    for (ax, want) in a.axial.iter().zip(&e.axial) {
        let mut want = want.clone();
        want.sort_by(f64::total_cmp);
        if !same_multiset(&ax.values, &want, e.tol) {
            out.push(format!("kappa_a{} = {:?} != {want:?}", ax.i, ax.values));
        }
    }
    match (a.umbilic, e.umbilic) {
        (Some(x), Some(y)) if (x - y).abs() <= e.tol * y.abs().max(1.0) => {}
        (None, None) => {}
        (x, y) => out.push(format!("umbilic {x:?} != {y:?}")),
    }
    out
}
