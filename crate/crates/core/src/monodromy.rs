//! The monodromy matrix M = (id⊗i_D)(R^op)·D ∈ G⊗D(G) of a quasitriangular
//! G, the element R̂ = φ²¹³R¹²φ⁻¹ ∈ G⊗G⊗D(G) and the relations they obey.

use crate::algebra::SparseVec;
use crate::double::{lift_with, DoubleAlgebra};
use crate::error::{Error, Result};
use crate::quasi_hopf::VerifyOptions;
use crate::report::Report;
use crate::tensor::Tensor;

#[derive(Clone, Debug)]
pub struct MonodromyData {
    /// M over G⊗D(G).
    pub m: Tensor,
    /// R̂ over G⊗G⊗D(G).
    pub r_hat: Tensor,
}

pub const EXCHANGE: &str = "M¹³R̂M²³ = R̂φ(Δ⊗id)(M)φ⁻¹";

/// M and R̂ for R ∈ G⊗G.
pub fn monodromy_matrix(dbl: &DoubleAlgebra, r: &Tensor) -> Result<MonodromyData> {
    let g = dbl.g_space();
    if r.rank() != 2 || r.space(0).id() != g.id() || r.space(1).id() != g.id() {
        return Err(Error::Signature("R must live in G⊗G".into()));
    }
    let gd = [g.clone(), dbl.d_space().clone()];
    let m = dbl.lift(&r.permute(&[1, 0])?, &[0, 1], &gd)?.mul(&dbl.d)?;
    let ggd = [g.clone(), g.clone(), dbl.d_space().clone()];
    let r_hat = Tensor::product(&[&dbl.lift(&dbl.g.phi, &[1, 0, 2], &ggd)?, &r.embed(&[0, 1], &ggd)?, &dbl.lift(&dbl.g.phi_inv, &[0, 1, 2], &ggd)?])?;
    Ok(MonodromyData { m, r_hat })
}

/// (ε⊗id)(M) = 1, Δ(a)M = MΔ(a), the exchange relation and bijectivity of
/// φ⊗a ↦ (i_D⊗φ₍₁₎)(q_ρ)·M(φ₍₂₎)·i_D(a).
pub fn verify_monodromy(dbl: &DoubleAlgebra, md: &MonodromyData, opts: VerifyOptions) -> Report {
    let mut rep = Report::new(&dbl.name, opts.tol);
    let h = &dbl.g;
    let g = dbl.g_space();
    let dsp = dbl.d_space();
    let gd = [g.clone(), dsp.clone()];
    rep.record_result(
        "monodromy_normal",
        "(ε⊗id)(M) = 1",
        (|| h.eps_at(&md.m, 0)?.diff(&Tensor::unit(&[dsp.clone()])?))(),
    );
    rep.record_result(
        "monodromy_commutes",
        "Δ(a)M = MΔ(a)",
        (|| {
            let mut w: f64 = 0.0;
            for a in 0..h.dim() {
                let d = dbl.lift(&h.delta(&h.basis(a))?, &[0, 1], &gd)?;
                w = w.max(d.mul(&md.m)?.diff(&md.m.mul(&d)?)?);
            }
            Ok(w)
        })(),
    );
    rep.record_result("monodromy_exchange", EXCHANGE, exchange_residual(dbl, md));
    // Bijectivity of the generator map built on M.
    let n = dbl.n();
    let mut m = nalgebra::DMatrix::zeros(n * n, n * n);
    for mu in 0..n {
        for (c, q, beta) in dbl.factor_terms(mu) {
            let mb: SparseVec = md.m.slice(0, beta).map(|t| t.as_vec()).unwrap_or_default();
            let head = dsp.mul_vec(&dbl.embed(&q), &mb);
            for i in 0..n {
                for (k, v) in dsp.mul_vec(&head, &dbl.i_d.cols[i]) {
                    m[(k, dbl.index(mu, i))] += c * v;
                }
            }
        }
    }
    let rank = crate::linalg::rank(&m, crate::scalar::SINGULAR);
    rep.record("monodromy_generators_bijective", "φ⊗a ↦ (i_D⊗φ₍₁₎)(q_ρ)(φ₍₂₎⊗id)(M)i_D(a) has rank dim(G)²", (n * n - rank) as f64).detail =
        Some(format!("rank {rank} of {}", n * n));
    rep
}

pub fn exchange_residual(dbl: &DoubleAlgebra, md: &MonodromyData) -> Result<f64> {
    let h = &dbl.g;
    let g = dbl.g_space();
    let ggd = [g.clone(), g.clone(), dbl.d_space().clone()];
    let lhs = Tensor::product(&[&md.m.embed(&[0, 2], &ggd)?, &md.r_hat, &md.m.embed(&[1, 2], &ggd)?])?;
    let rhs = Tensor::product(&[
        &md.r_hat,
        &lift_with(&dbl.i_d, &h.phi, &[0, 1, 2], &ggd)?,
        &h.delta_at(&md.m, 0)?,
        &lift_with(&dbl.i_d, &h.phi_inv, &[0, 1, 2], &ggd)?,
    ])?;
    lhs.diff(&rhs)
}
