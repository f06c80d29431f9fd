use crate::error::{Error, Result};
use crate::quasi_hopf::{DerivedElements, QuasiHopf, VerifyOptions};
use crate::report::Report;
use crate::tensor::Tensor;

/// δ = (Δ⊗id)∘Δ with its 5-leg reassociator Φ.
#[derive(Clone, Debug)]
pub struct TwoSidedCoaction {
    pub phi: Tensor,
    pub phi_inv: Tensor,
}

/// Ω for the left and Ω_R for the right diagonal crossed product.
#[derive(Clone, Debug)]
pub struct OmegaElements {
    pub omega: Tensor,
    pub omega_r: Tensor,
}

/// `δ(t)` on one leg: the leg becomes three adjacent legs.
pub fn coact_at(h: &QuasiHopf, t: &Tensor, leg: usize) -> Result<Tensor> {
    h.delta_at(&h.delta_at(t, leg)?, leg)
}

pub fn two_sided_coaction(h: &QuasiHopf, opts: VerifyOptions) -> Result<(TwoSidedCoaction, Report)> {
    // Φ = [(id⊗Δ⊗id)(φ)⊗1][φ⊗1⊗1][(δ⊗id⊗id)(φ⁻¹)]
    let phi = Tensor::product(&[
        &h.sup(&h.delta_at(&h.phi, 1)?, &[0, 1, 2, 3], 5)?,
        &h.sup(&h.phi, &[0, 1, 2], 5)?,
        &coact_at(h, &h.phi_inv, 0)?,
    ])?;
    let phi_inv = Tensor::product(&[
        &coact_at(h, &h.phi, 0)?,
        &h.sup(&h.phi_inv, &[0, 1, 2], 5)?,
        &h.sup(&h.delta_at(&h.phi_inv, 1)?, &[0, 1, 2, 3], 5)?,
    ])?;
    let c = TwoSidedCoaction { phi, phi_inv };
    let mut rep = Report::new(&h.name, opts.tol);
    let n = h.dim();
    let a = h.space();

    rep.record_result(
        "coaction_unital",
        "δ(1) = 1⊗1⊗1",
        (|| coact_at(h, &h.one(1), 0)?.diff(&h.one(3)))(),
    );
    rep.record_result(
        "coaction_multiplicative",
        "δ(ab) = δ(a)δ(b)",
        (|| {
            let ds: Vec<Tensor> = (0..n).map(|i| coact_at(h, &h.basis(i), 0)).collect::<Result<_>>()?;
            let mut w: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let l = coact_at(h, &h.el(&a.basis_product(i, j)), 0)?;
                    w = w.max(l.diff(&ds[i].mul(&ds[j])?)?);
                }
            }
            Ok(w)
        })(),
    );
    rep.record_result(
        "coaction_counit",
        "(ε⊗id⊗ε)∘δ = id",
        (|| {
            let mut w: f64 = 0.0;
            for i in 0..n {
                let d = coact_at(h, &h.basis(i), 0)?;
                w = w.max(h.eps_at(&h.eps_at(&d, 2)?, 0)?.diff(&h.basis(i))?);
            }
            Ok(w)
        })(),
    );
    rep.record_result(
        "coaction_phi_invertible",
        "ΦΦ⁻¹ = Φ⁻¹Φ = 1⊗1⊗1⊗1⊗1",
        (|| {
            let one = h.one(5);
            Ok(c.phi.mul(&c.phi_inv)?.diff(&one)?.max(c.phi_inv.mul(&c.phi)?.diff(&one)?))
        })(),
    );
    rep.record_result(
        "coaction_intertwines",
        "(id⊗δ⊗id)(δ(a))Φ = Φ(Δ⊗id⊗Δ)(δ(a))",
        (|| {
            let mut w: f64 = 0.0;
            for i in 0..n {
                let d = coact_at(h, &h.basis(i), 0)?;
                let l = coact_at(h, &d, 1)?.mul(&c.phi)?;
                let r = c.phi.mul(&h.delta_at(&h.delta_at(&d, 2)?, 0)?)?;
                w = w.max(l.diff(&r)?);
            }
            Ok(w)
        })(),
    );
    rep.record_result(
        "coaction_phi_counit",
        "(id⊗ε⊗id⊗ε⊗id)(Φ) = (ε⊗id⊗id⊗id⊗ε)(Φ) = 1⊗1⊗1",
        (|| {
            let one = h.one(3);
            let inner = h.eps_at(&h.eps_at(&c.phi, 3)?, 1)?;
            let outer = h.eps_at(&h.eps_at(&c.phi, 4)?, 0)?;
            Ok(inner.diff(&one)?.max(outer.diff(&one)?))
        })(),
    );
    const COHERENCE: &str =
        "(1⊗Φ⊗1)(id⊗Δ⊗id⊗Δ⊗id)(Φ)(φ⊗1⊗φ⁻¹) = (id⊗id⊗δ⊗id⊗id)(Φ)(Δ⊗id⊗id⊗id⊗Δ)(Φ)";
    if n <= 8 || opts.deep {
        rep.record_result("coaction_coherence", COHERENCE, coherence_residual(h, &c));
    } else {
        rep.skip("coaction_coherence", COHERENCE, "dimension gate (dim > 8)");
    }
    Ok((c, rep))
}

fn coherence_residual(h: &QuasiHopf, c: &TwoSidedCoaction) -> Result<f64> {
    let lhs = Tensor::product(&[
        &h.sup(&c.phi, &[1, 2, 3, 4, 5], 7)?,
        &h.delta_at(&h.delta_at(&c.phi, 3)?, 1)?,
        &h.sup(&h.phi, &[0, 1, 2], 7)?,
        &h.sup(&h.phi_inv, &[4, 5, 6], 7)?,
    ])?;
    let rhs = coact_at(h, &c.phi, 2)?.mul(&h.delta_at(&h.delta_at(&c.phi, 4)?, 0)?)?;
    lhs.diff(&rhs)
}

pub fn omega_elements(h: &QuasiHopf, c: &TwoSidedCoaction, d: &DerivedElements, opts: VerifyOptions) -> Result<(OmegaElements, Report)> {
    let legs_s_inv = |t: &Tensor, a: usize, b: usize| -> Result<Tensor> { h.s_inv_at(&h.s_inv_at(t, a)?, b) };
    // Ω = (id³⊗S⁻¹⊗S⁻¹)(f⁴⁵Φ⁻¹) = (id³⊗S⁻¹⊗S⁻¹)(Φ⁻¹)h⁵⁴
    let f_form = legs_s_inv(&h.sup(&d.f, &[3, 4], 5)?.mul(&c.phi_inv)?, 3, 4)?;
    let h_form = legs_s_inv(&c.phi_inv, 3, 4)?.mul(&h.sup(&d.h, &[4, 3], 5)?)?;
    // Ω_R = (h⁻¹)²¹(S⁻¹⊗S⁻¹⊗id³)(Φ)
    let omega_r = h.sup(&d.h_inv, &[1, 0], 5)?.mul(&legs_s_inv(&c.phi, 0, 1)?)?;
    let mut rep = Report::new(&h.name, opts.tol);
    let agree = f_form.diff(&h_form)?;
    rep.record("omega_forms_agree", "(id³⊗S⁻¹⊗S⁻¹)(f⁴⁵Φ⁻¹) = (id³⊗S⁻¹⊗S⁻¹)(Φ⁻¹)h⁵⁴", agree);
    if agree > opts.tol {
        return Err(Error::Structural(format!("the two forms of Ω disagree by {agree:e}")));
    }
    rep.record_result(
        "omega_counit",
        "(id⊗id⊗id⊗ε⊗ε)(Ω) = φ⁻¹",
        (|| h.eps_at(&h.eps_at(&f_form, 4)?, 3)?.diff(&h.phi_inv))(),
    );
    Ok((OmegaElements { omega: f_form, omega_r }, rep))
}
