use crate::algebra::{Coproduct, LinearMap, Space};
use crate::error::Result;
use crate::tensor::Tensor;

use super::{QuasiBialgebra, QuasiHopf, QuasiTriangular};

/// `H_op`, `H^cop`, `H_op^cop`, with their R-matrices `R⁻¹`, `R²¹`, `(R⁻¹)²¹` when braided.
#[derive(Clone, Debug)]
pub struct Variants {
    pub op: QuasiHopf,
    pub cop: QuasiHopf,
    pub op_cop: QuasiHopf,
    pub braided: Option<[QuasiTriangular; 3]>,
}

fn retag(t: &Tensor, a: &Space) -> Result<Tensor> {
    t.retag(&vec![a.clone(); t.rank()])
}

#[allow(clippy::too_many_arguments)]
fn build(
    h: &QuasiHopf,
    suffix: &str,
    a: Space,
    cop: &Coproduct,
    phi: &Tensor,
    phi_inv: &Tensor,
    s: &LinearMap,
    s_inv: &LinearMap,
    alpha: Vec<(usize, crate::scalar::Scalar)>,
    beta: Vec<(usize, crate::scalar::Scalar)>,
) -> Result<QuasiHopf> {
    Ok(QuasiHopf {
        name: format!("{}{suffix}", h.name),
        base: QuasiBialgebra {
            algebra: a.clone(),
            coproduct: cop.retarget(a.clone())?,
            counit: h.counit.clone(),
            phi: retag(phi, &a)?,
            phi_inv: retag(phi_inv, &a)?,
        },
        s: s.retarget(a.clone(), a.clone())?,
        s_inv: s_inv.retarget(a.clone(), a.clone())?,
        alpha,
        beta,
    })
}

pub fn variants(h: &QuasiHopf, r: Option<(&Tensor, &Tensor)>) -> Result<Variants> {
    let a = h.space();
    let a_op = a.opposite(&format!("{}_op", a.name()));
    let a_cop = a.renamed(&format!("{}^cop", a.name()));
    let a_opcop = a.opposite(&format!("{}_op^cop", a.name()));
    let dop = h.coproduct.opposite();
    let rev = [2, 1, 0];

    let op = build(
        h, "_op", a_op.clone(), &h.coproduct, &h.phi_inv, &h.phi, &h.s_inv, &h.s,
        h.s_inv.apply(&h.beta), h.s_inv.apply(&h.alpha),
    )?;
    let cop = build(
        h, "^cop", a_cop.clone(), &dop, &h.phi_inv.permute(&rev)?, &h.phi.permute(&rev)?, &h.s_inv, &h.s,
        h.s_inv.apply(&h.alpha), h.s_inv.apply(&h.beta),
    )?;
    let op_cop = build(
        h, "_op^cop", a_opcop.clone(), &dop, &h.phi.permute(&rev)?, &h.phi_inv.permute(&rev)?, &h.s, &h.s_inv,
        h.beta.clone(), h.alpha.clone(),
    )?;
    let braided = match r {
        None => None,
        Some((r, ri)) => Some([
            QuasiTriangular { qha: op.clone(), r: retag(ri, &a_op)?, r_inv: retag(r, &a_op)? },
            QuasiTriangular { qha: cop.clone(), r: retag(&r.permute(&[1, 0])?, &a_cop)?, r_inv: retag(&ri.permute(&[1, 0])?, &a_cop)? },
            QuasiTriangular {
                qha: op_cop.clone(),
                r: retag(&ri.permute(&[1, 0])?, &a_opcop)?,
                r_inv: retag(&r.permute(&[1, 0])?, &a_opcop)?,
            },
        ]),
    };
    Ok(Variants { op, cop, op_cop, braided })
}
