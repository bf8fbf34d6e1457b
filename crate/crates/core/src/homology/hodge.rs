use std::collections::BTreeMap;

use super::ChainComplexData;
use crate::error::{Error, Result};
use crate::exact::{elim, Rational, SparseMatrix, SparseVec, SubspaceBasis};

/// Splitting `C_k = im(b) ⊕ ker(L) ⊕ im(a)` for a pair of fiber differentials with
/// Laplacian `L = ab + ba`, together with the inverse of `L` on the two images.
///
/// For chains `b = d`, `a = δ` and `L = □`.
#[derive(Clone, Debug)]
pub struct FiberHodge {
    pub dim: usize,
    /// Basis of `im b`, `ker L`, `im a` (columns of the change of basis `T`).
    pub im_b: Vec<SparseVec>,
    pub harmonic: Vec<SparseVec>,
    pub im_a: Vec<SparseVec>,
    t: SparseMatrix,
    t_inv: SparseMatrix,
    /// `L` restricted to `im b` / `im a`, inverted, in the coordinates of those bases.
    inv_b: SparseMatrix,
    inv_a: SparseMatrix,
    green: SparseMatrix,
}

impl FiberHodge {
    /// `incoming_b`: map into this space whose image is the first summand, likewise for `incoming_a`.
    pub fn new(laplacian: &SparseMatrix, incoming_b: Option<&SparseMatrix>, incoming_a: Option<&SparseMatrix>) -> Result<Self> {
        let dim = laplacian.nrows();
        let im_b = incoming_b.map(elim::image).unwrap_or_default();
        let im_a = incoming_a.map(elim::image).unwrap_or_default();
        let harmonic = elim::kernel(laplacian);
        let (nb, nh, na) = (im_b.len(), harmonic.len(), im_a.len());
        if nb + nh + na != dim {
            return Err(Error::Invariant(format!("Hodge summands {nb} + {nh} + {na} != {dim}")));
        }
        let cols: Vec<SparseVec> = im_b.iter().chain(&harmonic).chain(&im_a).cloned().collect();
        let t = SparseMatrix::from_columns(dim, cols);
        let t_inv = elim::inverse(&t).map_err(|_| Error::Invariant("Hodge summands are not independent".into()))?;
        let block = t_inv.mul(&laplacian.mul(&t));
        let range = |a: usize, b: usize| (a..b).collect::<Vec<_>>();
        let pick = |m: &SparseMatrix, rows: &[usize], cols: &[usize]| -> SparseMatrix {
            m.select_columns(cols).transpose().select_columns(rows).transpose()
        };
        let (rb, rh, ra) = (range(0, nb), range(nb, nb + nh), range(nb + nh, dim));
        for (r, c) in [(&rh, &rb), (&ra, &rb), (&rb, &ra), (&rh, &ra), (&rb, &rh), (&ra, &rh), (&rh, &rh)] {
            if !pick(&block, r, c).is_zero() {
                return Err(Error::Invariant("Laplacian does not preserve the Hodge summands".into()));
            }
        }
        let inv_b = elim::inverse(&pick(&block, &rb, &rb))
            .map_err(|_| Error::Invariant("Laplacian singular on the first image".into()))?;
        let inv_a = elim::inverse(&pick(&block, &ra, &ra))
            .map_err(|_| Error::Invariant("Laplacian singular on the second image".into()))?;
        let mut diag = Vec::new();
        for (j, col) in (0..nb).map(|j| (j, inv_b.col(j))) {
            for (i, v) in col {
                diag.push((*i, j, v.clone()));
            }
        }
        for j in 0..na {
            for (i, v) in inv_a.col(j) {
                diag.push((nb + nh + i, nb + nh + j, v.clone()));
            }
        }
        let gdiag = SparseMatrix::from_triplets(dim, dim, diag);
        let green = t.mul(&gdiag.mul(&t_inv));
        Ok(FiberHodge { dim, im_b, harmonic, im_a, t, t_inv, inv_b, inv_a, green })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.im_b.len(), self.harmonic.len(), self.im_a.len())
    }

    fn rows(&self, from: usize, to: usize) -> SparseMatrix {
        self.t_inv.transpose().select_columns(&(from..to).collect::<Vec<_>>()).transpose()
    }

    fn cols(&self, from: usize, to: usize) -> SparseMatrix {
        self.t.select_columns(&(from..to).collect::<Vec<_>>())
    }

    /// Projection onto harmonic coordinates along `im b ⊕ im a`.
    pub fn project_harmonic(&self) -> SparseMatrix {
        let (nb, nh, _) = self.dims();
        self.rows(nb, nb + nh)
    }

    /// Projection onto `im b` coordinates along `ker L ⊕ im a`.
    pub fn project_im_b(&self) -> SparseMatrix {
        let (nb, _, _) = self.dims();
        self.rows(0, nb)
    }

    /// Harmonic coordinates to ambient vectors.
    pub fn embed_harmonic(&self) -> SparseMatrix {
        let (nb, nh, _) = self.dims();
        self.cols(nb, nb + nh)
    }

    pub fn embed_im_b(&self) -> SparseMatrix {
        let (nb, _, _) = self.dims();
        self.cols(0, nb)
    }

    /// `L^{-1}` on `im b ⊕ im a`, zero on harmonics.
    pub fn green(&self) -> &SparseMatrix {
        &self.green
    }

    pub fn inverse_on_im_b(&self) -> &SparseMatrix {
        &self.inv_b
    }

    pub fn inverse_on_im_a(&self) -> &SparseMatrix {
        &self.inv_a
    }
}

/// Homology in one degree via the harmonic transversal.
#[derive(Clone, Debug)]
pub struct HomologyModule {
    pub k: usize,
    pub hodge: FiberHodge,
    pub harmonic_basis: SubspaceBasis,
    /// `(g0 label, action on harmonic coordinates)`.
    pub g0_action: Vec<(String, SparseMatrix)>,
    /// Chain coordinates to harmonic coordinates; its kernel on `ker δ` is `im δ`.
    pub project_matrix: SparseMatrix,
    /// Weights of the harmonic basis vectors.
    pub weights: Vec<Rational>,
}

impl HomologyModule {
    pub fn dim(&self) -> usize {
        self.harmonic_basis.dim()
    }

    pub fn weight_multiset(&self) -> BTreeMap<Rational, usize> {
        let mut m = BTreeMap::new();
        for w in &self.weights {
            *m.entry(w.clone()).or_insert(0) += 1;
        }
        m
    }
}

/// Subspace bases of the Hodge splitting `im d ⊕ ker □ ⊕ im δ` of `C_k`.
#[derive(Clone, Debug)]
pub struct HodgeSplit {
    pub im_d: SubspaceBasis,
    pub harmonic: SubspaceBasis,
    pub im_delta: SubspaceBasis,
}

impl HodgeSplit {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.im_d.dim(), self.harmonic.dim(), self.im_delta.dim())
    }
}

pub fn fiber_hodge(cx: &ChainComplexData, k: usize) -> Result<FiberHodge> {
    cx.check_degree(k)?;
    let n = cx.n();
    let q = cx.quabla(k)?;
    let b = if k > 0 { Some(cx.d(k - 1)?) } else { None };
    let a = if k < n { Some(cx.delta(k + 1)) } else { None };
    FiberHodge::new(q, b, a)
}

pub fn hodge_split(cx: &ChainComplexData, k: usize) -> Result<HodgeSplit> {
    let h = fiber_hodge(cx, k)?;
    verify_harmonic_identification(cx, k, &h)?;
    let sp = cx.space(k).clone();
    Ok(HodgeSplit {
        im_d: SubspaceBasis::new(sp.clone(), h.im_b.clone())?,
        harmonic: SubspaceBasis::new(sp.clone(), h.harmonic.clone())?,
        im_delta: SubspaceBasis::new(sp, h.im_a.clone())?,
    })
}

/// Checks `ker d ∩ ker δ = ker □` on `C_k`.
pub fn verify_harmonic_identification(cx: &ChainComplexData, k: usize, h: &FiberHodge) -> Result<()> {
    let d = cx.d(k)?;
    let delta = cx.delta(k);
    for v in &h.harmonic {
        if !d.apply(v).is_zero() || !delta.apply(v).is_zero() {
            return Err(Error::Invariant(format!("harmonic vector outside ker d ∩ ker δ in degree {k}")));
        }
    }
    let both = elim::kernel(&d.vstack(delta));
    if both.len() != h.harmonic.len() {
        return Err(Error::Invariant(format!(
            "dim(ker d ∩ ker δ) = {} but dim ker □ = {} in degree {k}",
            both.len(),
            h.harmonic.len()
        )));
    }
    Ok(())
}

pub fn homology_module(cx: &ChainComplexData, k: usize) -> Result<HomologyModule> {
    let hodge = fiber_hodge(cx, k)?;
    let harmonic_basis = SubspaceBasis::new(cx.space(k).clone(), hodge.harmonic.clone())?;
    let project_matrix = hodge.project_harmonic();
    let embed = hodge.embed_harmonic();
    let ga = cx.graded_algebra();
    let mut g0_action = Vec::new();
    for &i in ga.grading.g0_basis() {
        let xi = SparseVec::unit(ga.algebra.dim(), i);
        let act = project_matrix.mul(&cx.p_action_matrix(&xi, k)?.mul(&embed));
        g0_action.push((ga.algebra.label(i).to_string(), act));
    }
    let weights = hodge
        .harmonic
        .iter()
        .map(|v| {
            let ws: Vec<&Rational> = v.entries().iter().map(|(i, _)| cx.space(k).weight(*i)).collect();
            if ws.windows(2).all(|p| p[0] == p[1]) {
                Ok(ws.first().map_or(Rational::zero(), |w| (*w).clone()))
            } else {
                Err(Error::Invariant("harmonic basis vector is not weight-homogeneous".into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomologyModule { k, hodge, harmonic_basis, g0_action, project_matrix, weights })
}

/// Homology dimension `dim ker δ_k − dim im δ_{k+1}`, valid also for p-modules.
pub fn homology_dim(cx: &ChainComplexData, k: usize) -> usize {
    let ker = cx.dim(k) - elim::rank(cx.delta(k));
    let im = if k < cx.n() { elim::rank(cx.delta(k + 1)) } else { 0 };
    ker - im
}
