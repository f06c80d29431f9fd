use rand::Rng;

use crate::algebra::Coproduct;
use crate::error::{Error, Result};
use crate::tensor::{konst, leg, mapped, Slot, Tensor};
use crate::scalar::{c, Scalar, ONE};

use super::{QuasiHopf, QuasiTriangular};

/// `(1⊗F)(id⊗Δ)(F) φ (Δ⊗id)(F⁻¹)(F⁻¹⊗1)`
pub fn twisted_phi(h: &QuasiHopf, f: &Tensor, f_inv: &Tensor) -> Result<Tensor> {
    Tensor::product(&[
        &h.sup(f, &[1, 2], 3)?,
        &h.delta_at(f, 1)?,
        &h.phi,
        &h.delta_at(f_inv, 0)?,
        &h.sup(f_inv, &[0, 1], 3)?,
    ])
}

/// `(F⊗1)(Δ⊗id)(F) φ⁻¹ (id⊗Δ)(F⁻¹)(1⊗F⁻¹)`
pub fn twisted_phi_inv(h: &QuasiHopf, f: &Tensor, f_inv: &Tensor) -> Result<Tensor> {
    Tensor::product(&[
        &h.sup(f, &[0, 1], 3)?,
        &h.delta_at(f, 0)?,
        &h.phi_inv,
        &h.delta_at(f_inv, 1)?,
        &h.sup(f_inv, &[1, 2], 3)?,
    ])
}

fn check_twist(h: &QuasiHopf, f: &Tensor, f_inv: &Tensor) -> Result<()> {
    let one1 = h.one(1);
    let norm = h.eps_at(f, 0)?.diff(&one1)?.max(h.eps_at(f, 1)?.diff(&one1)?);
    if norm > 1e-9 {
        return Err(Error::Precondition(format!("twist violates (ε⊗id)(F) = (id⊗ε)(F) = 1 by {norm:e}")));
    }
    let one2 = h.one(2);
    let inv = f.mul(f_inv)?.diff(&one2)?.max(f_inv.mul(f)?.diff(&one2)?);
    if inv > 1e-8 {
        return Err(Error::Singular(format!("F⁻¹ is not an inverse of F (residual {inv:e})")));
    }
    Ok(())
}

pub fn apply_twist(h: &QuasiHopf, f: &Tensor, f_inv: &Tensor) -> Result<QuasiHopf> {
    check_twist(h, f, f_inv)?;
    let a = h.space();
    let mut images = Vec::with_capacity(h.dim());
    for i in 0..h.dim() {
        let d = Tensor::product(&[f, &h.delta(&h.basis(i))?, f_inv])?;
        images.push(d.entries().into_iter().map(|(k, v)| (k[0], k[1], v)).collect());
    }
    let coproduct = Coproduct::new(a.clone(), images)?;
    let phi = twisted_phi(h, f, f_inv)?;
    let phi_inv = twisted_phi_inv(h, f, f_inv)?;
    let alpha = f_inv.contract(&[Slot::new(a, vec![mapped(0, &h.s), konst(&h.alpha), leg(1)])])?.as_vec();
    let beta = f.contract(&[Slot::new(a, vec![leg(0), konst(&h.beta), mapped(1, &h.s)])])?.as_vec();
    Ok(QuasiHopf {
        name: format!("{}_F", h.name),
        base: super::QuasiBialgebra { algebra: a.clone(), coproduct, counit: h.counit.clone(), phi, phi_inv },
        s: h.s.clone(),
        s_inv: h.s_inv.clone(),
        alpha,
        beta,
    })
}

/// Twist including `R_F = F²¹ R F⁻¹`.
pub fn apply_twist_qt(q: &QuasiTriangular, f: &Tensor, f_inv: &Tensor) -> Result<QuasiTriangular> {
    let qha = apply_twist(q, f, f_inv)?;
    let r = Tensor::product(&[&f.permute(&[1, 0])?, &q.r, f_inv])?;
    let r_inv = Tensor::product(&[f, &q.r_inv, &f_inv.permute(&[1, 0])?])?;
    Ok(QuasiTriangular { qha, r, r_inv })
}

/// Seeded sample `F = 1⊗1 + Σ c_ij v_i⊗v_j` with `v_i` spanning ker ε, redrawn until invertible.
pub fn random_twist<R: Rng>(h: &QuasiHopf, rng: &mut R, scale: f64) -> Result<(Tensor, Tensor)> {
    let n = h.dim();
    let i0 = (0..n)
        .max_by(|&x, &y| h.counit[x].norm().partial_cmp(&h.counit[y].norm()).unwrap())
        .ok_or_else(|| Error::Precondition("empty algebra".into()))?;
    if h.counit[i0].norm() == 0.0 {
        return Err(Error::Precondition("counit vanishes".into()));
    }
    let ker: Vec<Vec<(usize, Scalar)>> = (0..n)
        .filter(|&i| i != i0)
        .map(|i| vec![(i, ONE), (i0, -h.counit[i] / h.counit[i0])])
        .collect();
    for _ in 0..64 {
        let mut f = h.one(2);
        for u in &ker {
            for v in &ker {
                let coef = c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale));
                let mut t = Tensor::zero(&h.sig(2))?;
                for &(i, x) in u {
                    for &(j, y) in v {
                        t.add_entry(&[i, j], coef * x * y)?;
                    }
                }
                f = f.add(&t)?;
            }
        }
        if let Ok(fi) = f.inverse() {
            return Ok((f, fi));
        }
    }
    Err(Error::Singular("no invertible twist drawn".into()))
}
