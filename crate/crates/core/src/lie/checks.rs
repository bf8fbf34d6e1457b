//! Structural identities of graded algebras and their representations.

use super::{build_lie_algebra, validate_representation, weight_decomposition, GradedAlgebra, RepresentationData};
use crate::exact::{elim, SparseMatrix};
use crate::homology::checks::CheckResult;

/// Re-validates antisymmetry and Jacobi from the stored structure constants.
pub fn jacobi(ga: &GradedAlgebra) -> CheckResult {
    let alg = &ga.algebra;
    build_lie_algebra((**alg.basis()).clone(), &alg.structure_constants()).map(|_| ()).map_err(|e| e.to_string())
}

/// `[g_a, g_b] ⊆ g_{a+b}`.
pub fn layers_bracket(ga: &GradedAlgebra) -> CheckResult {
    let alg = &ga.algebra;
    let w = ga.grading.weights();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let target = &w[i] + &w[j];
            if let Some((k, _)) = alg.bracket_basis(i, j).entries().iter().find(|(k, _)| w[*k] != target) {
                return Err(format!("[{}, {}] has a component on {}", alg.label(i), alg.label(j), alg.label(*k)));
            }
        }
    }
    Ok(())
}

/// The Killing pairing between `m` and the negative layers is nondegenerate.
pub fn killing_nondegenerate(ga: &GradedAlgebra) -> CheckResult {
    let g = &ga.grading;
    let rows: Vec<Vec<_>> = g
        .negative_basis()
        .iter()
        .map(|&a| g.m_basis().iter().map(|&j| ga.algebra.killing(a, j).clone()).collect())
        .collect();
    let r = g.m_basis().len();
    if r == 0 || elim::rank(&SparseMatrix::from_dense(&rows)) == r {
        Ok(())
    } else {
        Err("Killing form degenerate on m × m*".into())
    }
}

/// Representation axioms, plus strict weight lowering by every `ρ(ξ)`, `ξ ∈ m*`.
pub fn representation_lowers_weight(rep: &RepresentationData, ga: &GradedAlgebra) -> CheckResult {
    let v = validate_representation(rep, ga);
    if !v.is_valid() {
        return Err(format!("bracket not preserved on {}", v.violations.join(", ")));
    }
    let wd = weight_decomposition(rep, ga).map_err(|e| e.to_string())?;
    if wd.lowering {
        Ok(())
    } else {
        Err(format!("some ρ(ξ) does not lower weights on {}", rep.name()))
    }
}
