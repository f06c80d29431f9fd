//! Built-in algebras used by tests, examples and the CLI.

use crate::algebra::{Algebra, Coproduct, LinearMap};
use crate::error::Result;
use crate::group::{fun_qha, group_algebra, FiniteGroup, ThreeCocycle};
use crate::quasi_hopf::{QuasiHopf, QuasiTriangular};
use crate::scalar::{re, Scalar, ONE, ZERO};
use crate::tensor::Tensor;

pub fn cz2() -> QuasiTriangular {
    group_algebra(&FiniteGroup::cyclic(2)).trivially_braided().unwrap()
}

pub fn cs3() -> QuasiTriangular {
    group_algebra(&FiniteGroup::symmetric3()).trivially_braided().unwrap()
}

/// Fun(Z₂) with ω(x,x,x) = −1.
pub fn fun_z2_omega() -> QuasiHopf {
    let g = FiniteGroup::cyclic(2);
    fun_qha(&g, &ThreeCocycle::cyclic_standard(&g, 1).unwrap()).unwrap()
}

pub fn fun_zn_omega(n: usize, p: usize) -> Result<QuasiHopf> {
    let g = FiniteGroup::cyclic(n);
    fun_qha(&g, &ThreeCocycle::cyclic_standard(&g, p)?)
}

/// Fun(S₃) with the Z₂ cocycle pulled back along the sign map.
pub fn fun_s3_sign_omega() -> QuasiHopf {
    let g = FiniteGroup::symmetric3();
    let z2 = FiniteGroup::cyclic(2);
    let w = ThreeCocycle::cyclic_standard(&z2, 1).unwrap().pullback(&g, &z2, &FiniteGroup::s3_sign()).unwrap();
    fun_qha(&g, &w).unwrap()
}

/// Sweedler's four-dimensional Hopf algebra on the basis 1, g, x, gx, with
/// the R-matrix family
/// R_λ = ½(1⊗1 + 1⊗g + g⊗1 − g⊗g) + ½λ(x⊗x − x⊗gx + gx⊗x + gx⊗gx)
/// (for Δ(x) = x⊗1 + g⊗x).
pub fn sweedler(lambda: f64) -> QuasiTriangular {
    let (one, g, x, gx) = (0, 1, 2, 3);
    let m = |i: usize, j: usize| -> Vec<(usize, Scalar)> {
        match (i, j) {
            (0, k) | (k, 0) => vec![(k, ONE)],
            (1, 1) => vec![(one, ONE)],
            (1, 2) => vec![(gx, ONE)],
            (1, 3) => vec![(x, ONE)],
            (2, 1) => vec![(gx, -ONE)],
            (3, 1) => vec![(x, -ONE)],
            _ => vec![],
        }
    };
    let table = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| m(i, j)).collect();
    let a = Algebra::from_table("H4", 4, table, vec![(one, ONE)]).unwrap();
    let cop = Coproduct::new(
        a.clone(),
        vec![
            vec![(one, one, ONE)],
            vec![(g, g, ONE)],
            vec![(x, one, ONE), (g, x, ONE)],
            vec![(gx, g, ONE), (one, gx, ONE)],
        ],
    )
    .unwrap();
    let s = LinearMap::new(a.clone(), a.clone(), vec![vec![(one, ONE)], vec![(g, ONE)], vec![(gx, -ONE)], vec![(x, ONE)]]).unwrap();
    let phi = Tensor::unit(&vec![a.clone(); 3]).unwrap();
    let h = QuasiHopf::new("H4", a.clone(), cop, vec![ONE, ONE, ZERO, ZERO], phi.clone(), Some(phi), s, vec![(one, ONE)], vec![(one, ONE)])
        .unwrap();
    let half = re(0.5);
    let l = re(lambda / 2.0);
    let r = Tensor::from_entries(
        &h.sig(2),
        vec![
            (vec![one, one], half),
            (vec![one, g], half),
            (vec![g, one], half),
            (vec![g, g], -half),
            (vec![x, x], l),
            (vec![x, gx], -l),
            (vec![gx, x], l),
            (vec![gx, gx], l),
        ],
    )
    .unwrap();
    h.with_r(r, None).unwrap()
}
