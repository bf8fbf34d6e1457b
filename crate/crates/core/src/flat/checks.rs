//! Identities of the flat calculus, checked on symbols (equivalently, on the truncated matrices).

use super::FlatModel;
use crate::homology::checks::CheckResult;

fn err(e: crate::Error) -> String {
    e.to_string()
}

/// `d^g ∘ d^g = 0` in every degree.
pub fn twisted_de_rham_squared_zero(model: &FlatModel) -> CheckResult {
    for k in 0..model.n().saturating_sub(1) {
        let sq = model.twisted_de_rham(k + 1).map_err(err)?.compose(&model.twisted_de_rham(k).map_err(err)?).map_err(err)?;
        if !sq.is_zero() {
            return Err(format!("d^g∘d^g ≠ 0 on C_{k}-sections"));
        }
    }
    Ok(())
}

/// `δ ∘ δ = 0` for the lifted codifferential.
pub fn lifted_delta_squared_zero(model: &FlatModel) -> CheckResult {
    for k in 2..=model.n() {
        if !model.delta(k - 1).map_err(err)?.compose(&model.delta(k).map_err(err)?).map_err(err)?.is_zero() {
            return Err(format!("lifted δ∘δ ≠ 0 on C_{k}-sections"));
        }
    }
    Ok(())
}

/// `δ∘d_coord + d_coord∘δ = Σ_i ρ(ε^i) ∂_i`.
pub fn lifted_cartan_identity(model: &FlatModel) -> CheckResult {
    let n = model.n();
    for k in 0..=n {
        let mut lhs = crate::flat::FlatOperator::zero(model.section_space(k).clone(), model.section_space(k).clone());
        if k < n {
            let t = model.delta(k + 1).map_err(err)?.compose(&model.coordinate_exterior_derivative(k).map_err(err)?);
            lhs = lhs.add(&t.map_err(err)?).map_err(err)?;
        }
        if k > 0 {
            let t = model.coordinate_exterior_derivative(k - 1).map_err(err)?.compose(&model.delta(k).map_err(err)?);
            lhs = lhs.add(&t.map_err(err)?).map_err(err)?;
        }
        if lhs != model.epsilon_derivative(k).map_err(err)? {
            return Err(format!("lifted Cartan identity fails on C_{k}-sections"));
        }
    }
    Ok(())
}

/// `d_coord` is homogeneous of order one and fiberwise lifts are of order zero, so the first
/// strictly lowers polynomial degree and the second preserves it.
pub fn degree_filtration(model: &FlatModel) -> CheckResult {
    for k in 0..model.n() {
        let d = model.coordinate_exterior_derivative(k).map_err(err)?;
        if !d.orders().iter().all(|&o| o == 1) {
            return Err(format!("d_coord on C_{k}-sections has orders {:?}", d.orders()));
        }
        let dm = model.lift(k, k + 1, model.chains().d(k).map_err(err)?).map_err(err)?;
        if !dm.orders().iter().all(|&o| o == 0) {
            return Err(format!("lifted d_m on C_{k}-sections is not fiberwise"));
        }
    }
    Ok(())
}
