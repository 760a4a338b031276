//! End-to-end pipeline from a germ to axial curvatures.

use crate::classify::{classify, Classification};
use crate::curvatures::{axial_curvatures, AxialCurvatureReport};
use crate::error::{Error, Result};
use crate::frames::{adapted_frame, AdaptedFrame};
use crate::jetcore::{jet2, monge_normalize, Jet2, MongeJet, PolyMapGerm, TransformRecord};
use crate::locus::{self, LocusShape};
use crate::tol::Tol;

/// Everything derived from one germ.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub germ: PolyMapGerm,
    pub jet: Jet2,
    pub monge: MongeJet,
    pub record: TransformRecord,
    pub class: Classification,
    pub shape: LocusShape,
    pub frame: AdaptedFrame,
    pub axial: Vec<AxialCurvatureReport>,
    pub umbilic: Option<f64>,
    pub tol: Tol,
}

pub fn supported(n: usize, k: usize) -> bool {
    k >= 1 && (n == 2 || (n == 3 && (k == 1 || k == 2)))
}

impl Analysis {
    pub fn new(germ: &PolyMapGerm, tol: Tol) -> Result<Self> {
        if !supported(germ.n, germ.k) {
            return Err(Error::Unsupported { n: germ.n, k: germ.k });
        }
        let jet = jet2(germ);
        let (monge, record) = monge_normalize(&jet)?;
        let class = classify(&monge, tol)?;
        let shape = locus::locus_shape(&monge, class.orbit, tol);
        let frame = adapted_frame(&monge, &class, tol)?;
        let axial = axial_curvatures(&monge, &class, &frame, tol)?;
        let umbilic = locus::umbilic_curvature(&monge, tol).ok();
        Ok(Analysis { germ: germ.clone(), jet, monge, record, class, shape, frame, axial, umbilic, tol })
    }

    /// Analysis of the Monge germ with the given 2-jet.
    pub fn from_monge(m: &MongeJet, tol: Tol) -> Result<Self> {
        Analysis::new(&m.to_germ(), tol)
    }

    /// Values for frame vector `i` (one-based).
    pub fn values(&self, i: usize) -> &[f64] {
        &self.axial[i - 1].values
    }
}
