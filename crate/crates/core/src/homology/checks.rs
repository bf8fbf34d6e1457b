//! Exact identity checks on chain complexes. Each returns `Err` with a description of the
//! first failing instance.

use super::{homology_dim, homology_module, ChainComplexData};
use crate::exact::{SparseMatrix, SparseVec};

pub type CheckResult = std::result::Result<(), String>;

pub fn delta_squared_zero(cx: &ChainComplexData) -> CheckResult {
    for k in 2..=cx.n() {
        let r = cx.delta(k - 1).mul(cx.delta(k));
        if !r.is_zero() {
            return Err(format!("δ∘δ ≠ 0 on C_{k} ({} nonzero entries)", r.nnz()));
        }
    }
    Ok(())
}

pub fn d_squared_zero(cx: &ChainComplexData) -> CheckResult {
    for k in 0..cx.n().saturating_sub(1) {
        let r = cx.d(k + 1).map_err(|e| e.to_string())?.mul(cx.d(k).map_err(|e| e.to_string())?);
        if !r.is_zero() {
            return Err(format!("d∘d ≠ 0 on C_{k} ({} nonzero entries)", r.nnz()));
        }
    }
    Ok(())
}

/// `δ(α∧c) + α∧δc = α·c` for every `α = ε^i` and every degree.
pub fn cartan_identity(cx: &ChainComplexData) -> CheckResult {
    let n = cx.n();
    for i in 0..n {
        let alpha = &cx.graded_algebra().grading.m_dual()[i];
        for k in 0..=n {
            let mut lhs = SparseMatrix::zeros(cx.dim(k), cx.dim(k));
            if k < n {
                lhs = lhs.add(&cx.delta(k + 1).mul(&cx.wedge_chain(k, i)));
            }
            if k > 0 {
                lhs = lhs.add(&cx.wedge_chain(k - 1, i).mul(cx.delta(k)));
            }
            let rhs = cx.p_action_matrix(alpha, k).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("Cartan identity fails for ε^{} on C_{k}", i + 1));
            }
        }
    }
    Ok(())
}

/// `δ(ξ·c) = ξ·δc` for every basis `ξ ∈ p`.
pub fn p_equivariance(cx: &ChainComplexData) -> CheckResult {
    let ga = cx.graded_algebra();
    for &b in ga.grading.p_basis() {
        let xi = SparseVec::unit(ga.algebra.dim(), b);
        for k in 1..=cx.n() {
            let top = cx.p_action_matrix(&xi, k).map_err(|e| e.to_string())?;
            let bot = cx.p_action_matrix(&xi, k - 1).map_err(|e| e.to_string())?;
            if cx.delta(k).mul(&top) != bot.mul(cx.delta(k)) {
                return Err(format!("δ is not equivariant for {} on C_{k}", ga.algebra.label(b)));
            }
        }
    }
    Ok(())
}

/// `m*` maps harmonic representatives into `im δ`, so it acts by zero on homology.
pub fn m_star_trivial_on_homology(cx: &ChainComplexData) -> CheckResult {
    let ga = cx.graded_algebra();
    for k in 0..=cx.n() {
        let h = homology_module(cx, k).map_err(|e| e.to_string())?;
        let embed = h.hodge.embed_harmonic();
        for &b in ga.grading.negative_basis() {
            let xi = SparseVec::unit(ga.algebra.dim(), b);
            let act = cx.p_action_matrix(&xi, k).map_err(|e| e.to_string())?;
            let image = act.mul(&embed);
            if !h.project_matrix.mul(&image).is_zero() {
                return Err(format!("{} acts nontrivially on H_{k}", ga.algebra.label(b)));
            }
            if k < cx.n() {
                let range = SparseMatrix::from_columns(cx.dim(k), h.hodge.im_a.clone());
                for v in image.columns() {
                    if crate::exact::elim::solve(&range, &v).is_none() {
                        return Err(format!("{} maps a cycle of C_{k} outside im δ", ga.algebra.label(b)));
                    }
                }
            } else if !image.is_zero() {
                return Err(format!("{} maps a cycle of C_{k} outside im δ", ga.algebra.label(b)));
            }
        }
    }
    Ok(())
}

/// Homology dimensions in every degree.
pub fn homology_dims(cx: &ChainComplexData) -> Vec<usize> {
    (0..=cx.n()).map(|k| homology_dim(cx, k)).collect()
}

pub fn euler_characteristic(dims: &[usize]) -> i64 {
    dims.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
}

/// `dim H_k(W) = dim H_{n-k}(W*)`.
pub fn poincare_duality(cx: &ChainComplexData, dual: &ChainComplexData) -> CheckResult {
    let a = homology_dims(cx);
    let b = homology_dims(dual);
    let n = cx.n();
    for k in 0..=n {
        if a[k] != b[n - k] {
            return Err(format!("dim H_{k}(W) = {} but dim H_{}(W*) = {}", a[k], n - k, b[n - k]));
        }
    }
    Ok(())
}
