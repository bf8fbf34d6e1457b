use std::sync::{Arc, OnceLock};

use super::TwistedComplex;
use crate::error::Result;
use crate::flat::{FlatModel, PolySectionSpace};
use crate::homology::{ChainComplexData, FormTables};
use crate::lie::{build_representation, GradedAlgebra, RepExpr, RepresentationData};

/// Flat BGG data for one coefficient module: chains, polynomial sections up to degree `D`,
/// the primal twisted complex and, on demand, the dual one.
pub struct BggContext {
    model: FlatModel,
    primal: TwistedComplex,
    dual: OnceLock<TwistedComplex>,
}

impl std::fmt::Debug for BggContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BggContext").field("rep", &self.rep().name()).field("primal", &self.primal).finish()
    }
}

impl BggContext {
    pub fn new(ga: Arc<GradedAlgebra>, rep: Arc<RepresentationData>, max_degree: usize) -> Result<Self> {
        let cx = Arc::new(ChainComplexData::new(ga, rep)?);
        let model = FlatModel::new(cx, max_degree)?;
        let primal = TwistedComplex::primal(&model)?;
        Ok(BggContext { model, primal, dual: OnceLock::new() })
    }

    /// Context for a representation expression such as `ext(standard,2)`.
    pub fn from_expr(ga: Arc<GradedAlgebra>, expr: &str, max_degree: usize) -> Result<Self> {
        let rep = build_representation(&RepExpr::parse(expr)?, &ga)?;
        Self::new(ga, Arc::new(rep), max_degree)
    }

    pub fn model(&self) -> &FlatModel {
        &self.model
    }

    pub fn chains(&self) -> &Arc<ChainComplexData> {
        self.model.chains()
    }

    pub fn graded_algebra(&self) -> &Arc<GradedAlgebra> {
        self.chains().graded_algebra()
    }

    pub fn rep(&self) -> &Arc<RepresentationData> {
        self.chains().rep()
    }

    pub fn forms(&self) -> &Arc<FormTables> {
        self.chains().forms()
    }

    pub fn n(&self) -> usize {
        self.model.n()
    }

    pub fn max_degree(&self) -> usize {
        self.model.max_degree()
    }

    pub fn primal(&self) -> &TwistedComplex {
        &self.primal
    }

    pub fn dual(&self) -> Result<&TwistedComplex> {
        if let Some(d) = self.dual.get() {
            return Ok(d);
        }
        let d = TwistedComplex::dual(&self.model)?;
        Ok(self.dual.get_or_init(|| d))
    }

    /// `C_k`-sections.
    pub fn chain_sections(&self, k: usize) -> &Arc<PolySectionSpace> {
        self.primal.section_space(k)
    }

    /// `H_k`-sections.
    pub fn homology_sections(&self, k: usize) -> &Arc<PolySectionSpace> {
        self.primal.harmonic_space(k)
    }
}
