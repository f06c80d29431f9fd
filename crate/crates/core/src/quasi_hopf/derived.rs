use crate::error::{Error, Result};
use crate::report::Report;
use crate::tensor::{konst, leg, mapped, Slot, Tensor};

use super::twist::{twisted_phi, twisted_phi_inv};
use super::verify::VerifyOptions;
use super::QuasiHopf;

/// The elements γ, δ, the Drinfeld twist f with f⁻¹, h = (S⁻¹⊗S⁻¹)(f²¹) with h⁻¹,
/// and the four p/q elements.
#[derive(Clone, Debug)]
pub struct DerivedElements {
    pub gamma: Tensor,
    pub delta_el: Tensor,
    pub f: Tensor,
    pub f_inv: Tensor,
    pub h: Tensor,
    pub h_inv: Tensor,
    pub p_lambda: Tensor,
    pub p_rho: Tensor,
    pub q_lambda: Tensor,
    pub q_rho: Tensor,
}

impl DerivedElements {
    pub fn compute(h: &QuasiHopf) -> Result<Self> {
        let a = h.space();
        let s_inv_alpha = h.s_inv.apply(&h.alpha);
        let s_inv_beta = h.s_inv.apply(&h.beta);

        // T⊗U⊗V⊗W = (1⊗φ⁻¹)(id⊗id⊗Δ)(φ)
        let tuvw = h.sup(&h.phi_inv, &[1, 2, 3], 4)?.mul(&h.delta_at(&h.phi, 2)?)?;
        let gamma = tuvw.contract(&[
            Slot::new(a, vec![mapped(1, &h.s), konst(&h.alpha), leg(2)]),
            Slot::new(a, vec![mapped(0, &h.s), konst(&h.alpha), leg(3)]),
        ])?;
        // K⊗L⊗M⊗N = (Δ⊗id⊗id)(φ)(φ⁻¹⊗1)
        let klmn = h.delta_at(&h.phi, 0)?.mul(&h.sup(&h.phi_inv, &[0, 1, 2], 4)?)?;
        let delta_el = klmn.contract(&[
            Slot::new(a, vec![leg(0), konst(&h.beta), mapped(3, &h.s)]),
            Slot::new(a, vec![leg(1), konst(&h.beta), mapped(2, &h.s)]),
        ])?;

        // f = (S⊗S)(Δ^op(P)) γ Δ(QβS(R))
        let pq = h.phi_inv.contract(&[Slot::new(a, vec![leg(0)]), Slot::new(a, vec![leg(1), konst(&h.beta), mapped(2, &h.s)])])?;
        let t = h.delta_at(&h.delta_at(&pq, 0)?, 2)?.otimes(&gamma)?;
        let f = t.contract(&[
            Slot::new(a, vec![mapped(1, &h.s), leg(4), leg(2)]),
            Slot::new(a, vec![mapped(0, &h.s), leg(5), leg(3)]),
        ])?;
        // f⁻¹ = Δ(S(P)αQ) δ (S⊗S)(Δ^op(R))
        let sq = h.phi_inv.contract(&[Slot::new(a, vec![mapped(0, &h.s), konst(&h.alpha), leg(1)]), Slot::new(a, vec![leg(2)])])?;
        let t = h.delta_at(&h.delta_at(&sq, 0)?, 2)?.otimes(&delta_el)?;
        let f_inv = t.contract(&[
            Slot::new(a, vec![leg(0), leg(4), mapped(3, &h.s)]),
            Slot::new(a, vec![leg(1), leg(5), mapped(2, &h.s)]),
        ])?;

        let flip_sinv = |x: &Tensor| -> Result<Tensor> { h.s_inv_at(&h.s_inv_at(&x.permute(&[1, 0])?, 0)?, 1) };
        let hh = flip_sinv(&f)?;
        let hh_inv = flip_sinv(&f_inv)?;

        let p_lambda = h.phi.contract(&[
            Slot::new(a, vec![leg(1), konst(&s_inv_beta), mapped(0, &h.s_inv)]),
            Slot::new(a, vec![leg(2)]),
        ])?;
        let p_rho = h.phi_inv.contract(&[
            Slot::new(a, vec![leg(0)]),
            Slot::new(a, vec![leg(1), konst(&h.beta), mapped(2, &h.s)]),
        ])?;
        let q_lambda = h.phi_inv.contract(&[
            Slot::new(a, vec![mapped(0, &h.s), konst(&h.alpha), leg(1)]),
            Slot::new(a, vec![leg(2)]),
        ])?;
        let q_rho = h.phi.contract(&[
            Slot::new(a, vec![leg(0)]),
            Slot::new(a, vec![mapped(2, &h.s_inv), konst(&s_inv_alpha), leg(1)]),
        ])?;
        let out = DerivedElements {
            gamma,
            delta_el,
            f,
            f_inv,
            h: hh,
            h_inv: hh_inv,
            p_lambda,
            p_rho,
            q_lambda,
            q_rho,
        };
        let one = h.one(2);
        if out.f.mul(&out.f_inv)?.diff(&one)? > 1e-8 {
            return Err(Error::Structural("Drinfeld twist f is not invertible with the computed f⁻¹".into()));
        }
        Ok(out)
    }
}

/// `(S⊗S)Δ^op(x)` for a one-leg `x`.
fn ss_delta_op(h: &QuasiHopf, x: &Tensor, s: &crate::algebra::LinearMap) -> Result<Tensor> {
    let d = h.delta_op_at(x, 0)?;
    d.map_leg(0, s)?.map_leg(1, s)
}

pub fn derived_twists(h: &QuasiHopf, opts: VerifyOptions) -> Result<(DerivedElements, Report)> {
    let d = DerivedElements::compute(h)?;
    let mut rep = Report::new(&h.name, opts.tol);
    let n = h.dim();
    let one = h.one(2);
    rep.record_result(
        "twist_inverse",
        "f f⁻¹ = f⁻¹ f = 1⊗1, h h⁻¹ = h⁻¹ h = 1⊗1",
        (|| {
            Ok(d.f.mul(&d.f_inv)?
                .diff(&one)?
                .max(d.f_inv.mul(&d.f)?.diff(&one)?)
                .max(d.h.mul(&d.h_inv)?.diff(&one)?)
                .max(d.h_inv.mul(&d.h)?.diff(&one)?))
        })(),
    );
    rep.record_result(
        "twist_conjugation",
        "f Δ(a) f⁻¹ = (S⊗S)Δ^op(S⁻¹(a))",
        (|| {
            let mut w: f64 = 0.0;
            for i in 0..n {
                let a = h.basis(i);
                let l = Tensor::product(&[&d.f, &h.delta(&a)?, &d.f_inv])?;
                let r = ss_delta_op(h, &h.s_inv_at(&a, 0)?, &h.s)?;
                w = w.max(l.diff(&r)?);
            }
            Ok(w)
        })(),
    );
    rep.record_result(
        "twist_gamma",
        "f Δ(α) = γ",
        (|| d.f.mul(&h.delta(&h.alpha_t())?)?.diff(&d.gamma))(),
    );
    rep.record_result(
        "twist_delta",
        "Δ(β) f⁻¹ = δ",
        (|| h.delta(&h.beta_t())?.mul(&d.f_inv)?.diff(&d.delta_el))(),
    );
    rep.record_result(
        "twist_associator",
        "φ_f = (S⊗S⊗S)(φ³²¹)",
        (|| {
            let pf = twisted_phi(h, &d.f, &d.f_inv)?;
            let rhs = h.phi.permute(&[2, 1, 0])?.map_leg(0, &h.s)?.map_leg(1, &h.s)?.map_leg(2, &h.s)?;
            pf.diff(&rhs)
        })(),
    );
    rep.record_result(
        "twist_h_conjugation",
        "h Δ(a) h⁻¹ = (S⁻¹⊗S⁻¹)Δ^op(S(a))",
        (|| {
            let mut w: f64 = 0.0;
            for i in 0..n {
                let a = h.basis(i);
                let l = Tensor::product(&[&d.h, &h.delta(&a)?, &d.h_inv])?;
                let r = ss_delta_op(h, &h.s_at(&a, 0)?, &h.s_inv)?;
                w = w.max(l.diff(&r)?);
            }
            Ok(w)
        })(),
    );
    rep.record_result(
        "twist_h_associator",
        "φ_h = (S⁻¹⊗S⁻¹⊗S⁻¹)(φ³²¹)",
        (|| {
            let ph = twisted_phi(h, &d.h, &d.h_inv)?;
            let ph_inv = twisted_phi_inv(h, &d.h, &d.h_inv)?;
            let rhs = h.phi.permute(&[2, 1, 0])?.map_leg(0, &h.s_inv)?.map_leg(1, &h.s_inv)?.map_leg(2, &h.s_inv)?;
            Ok(ph.diff(&rhs)?.max(ph.mul(&ph_inv)?.diff(&h.one(3))?))
        })(),
    );
    Ok((d, rep))
}

pub fn pq_elements(h: &QuasiHopf, d: &DerivedElements, opts: VerifyOptions) -> Report {
    let mut rep = Report::new(&h.name, opts.tol);
    let a = h.space();
    let n = h.dim();
    let (pl, pr, ql, qr) = (&d.p_lambda, &d.p_rho, &d.q_lambda, &d.q_rho);
    let each = |f: &dyn Fn(&Tensor, &Tensor) -> Result<f64>| -> Result<f64> {
        let mut w: f64 = 0.0;
        for i in 0..n {
            let x = h.basis(i);
            w = w.max(f(&x, &h.delta(&x)?)?);
        }
        Ok(w)
    };
    let right = |x: &Tensor, p: &Tensor, first: bool| -> Result<Tensor> {
        let e = h.sup(x, &[if first { 0 } else { 1 }], 2)?;
        p.mul(&e)
    };
    let left = |x: &Tensor, p: &Tensor, first: bool| -> Result<Tensor> {
        let e = h.sup(x, &[if first { 0 } else { 1 }], 2)?;
        e.mul(p)
    };
    rep.record_result(
        "p_lambda_commutation",
        "Δ(a₂) p_λ [S⁻¹(a₁)⊗1] = p_λ [1⊗a]",
        each(&|x, dx| {
            let t = h.delta_at(&dx.otimes(pl)?, 1)?;
            let l = t.contract(&[Slot::new(a, vec![leg(1), leg(3), mapped(0, &h.s_inv)]), Slot::new(a, vec![leg(2), leg(4)])])?;
            l.diff(&right(x, pl, false)?)
        }),
    );
    rep.record_result(
        "p_rho_commutation",
        "Δ(a₁) p_ρ [1⊗S(a₂)] = p_ρ [a⊗1]",
        each(&|x, dx| {
            let t = h.delta_at(&dx.otimes(pr)?, 0)?;
            let l = t.contract(&[Slot::new(a, vec![leg(0), leg(3)]), Slot::new(a, vec![leg(1), leg(4), mapped(2, &h.s)])])?;
            l.diff(&right(x, pr, true)?)
        }),
    );
    rep.record_result(
        "q_lambda_commutation",
        "[S(a₁)⊗1] q_λ Δ(a₂) = [1⊗a] q_λ",
        each(&|x, dx| {
            let t = h.delta_at(&dx.otimes(ql)?, 1)?;
            let l = t.contract(&[Slot::new(a, vec![mapped(0, &h.s), leg(3), leg(1)]), Slot::new(a, vec![leg(4), leg(2)])])?;
            l.diff(&left(x, ql, false)?)
        }),
    );
    rep.record_result(
        "q_rho_commutation",
        "[1⊗S⁻¹(a₂)] q_ρ Δ(a₁) = [a⊗1] q_ρ",
        each(&|x, dx| {
            let t = h.delta_at(&dx.otimes(qr)?, 0)?;
            let l = t.contract(&[Slot::new(a, vec![leg(3), leg(0)]), Slot::new(a, vec![mapped(2, &h.s_inv), leg(4), leg(1)])])?;
            l.diff(&left(x, qr, true)?)
        }),
    );
    let one = h.one(2);
    rep.record_result(
        "pq_lambda_contraction",
        "[S(p_λ¹)⊗1] q_λ Δ(p_λ²) = 1⊗1",
        (|| {
            let t = h.delta_at(&pl.otimes(ql)?, 1)?;
            t.contract(&[Slot::new(a, vec![mapped(0, &h.s), leg(3), leg(1)]), Slot::new(a, vec![leg(4), leg(2)])])?.diff(&one)
        })(),
    );
    rep.record_result(
        "pq_rho_contraction",
        "[1⊗S⁻¹(p_ρ²)] q_ρ Δ(p_ρ¹) = 1⊗1",
        (|| {
            let t = h.delta_at(&pr.otimes(qr)?, 0)?;
            t.contract(&[Slot::new(a, vec![leg(3), leg(0)]), Slot::new(a, vec![mapped(2, &h.s_inv), leg(4), leg(1)])])?.diff(&one)
        })(),
    );
    rep.record_result(
        "qp_lambda_contraction",
        "Δ(q_λ²) p_λ [S⁻¹(q_λ¹)⊗1] = 1⊗1",
        (|| {
            let t = h.delta_at(&ql.otimes(pl)?, 1)?;
            t.contract(&[Slot::new(a, vec![leg(1), leg(3), mapped(0, &h.s_inv)]), Slot::new(a, vec![leg(2), leg(4)])])?.diff(&one)
        })(),
    );
    rep.record_result(
        "qp_rho_contraction",
        "Δ(q_ρ¹) p_ρ [1⊗S(q_ρ²)] = 1⊗1",
        (|| {
            let t = h.delta_at(&qr.otimes(pr)?, 0)?;
            t.contract(&[Slot::new(a, vec![leg(0), leg(3)]), Slot::new(a, vec![leg(1), leg(4), mapped(2, &h.s)])])?.diff(&one)
        })(),
    );
    rep
}
