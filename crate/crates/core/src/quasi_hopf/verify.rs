use crate::algebra::sparse_diff;
use crate::error::Result;
use crate::report::Report;
use crate::scalar::{Scalar, ONE};
use crate::tensor::{konst, leg, mapped, Slot, Tensor};

use super::{QuasiHopf, QuasiTriangular};

pub const WEAK: &str = "Δ(1) ≠ 1⊗1: weak quasi-Hopf structures are not supported";

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub tol: f64,
    /// Run the pentagon (costly on large algebras).
    pub pentagon: bool,
    /// Lift the dimension gates on the deepest coherence checks.
    pub deep: bool,
    /// Seed for the randomized checks.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { tol: crate::scalar::DEFAULT_TOL, pentagon: true, deep: false, seed: 0 }
    }
}

impl VerifyOptions {
    pub fn tol(tol: f64) -> Self {
        VerifyOptions { tol, ..Default::default() }
    }
}

fn over_basis(n: usize, mut f: impl FnMut(usize) -> Result<f64>) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..n {
        worst = worst.max(f(i)?);
    }
    Ok(worst)
}

pub fn verify_quasi_hopf(h: &QuasiHopf, opts: VerifyOptions) -> Report {
    let mut rep = Report::new(&h.name, opts.tol);
    let a = h.space().clone();
    let n = h.dim();

    rep.record("algebra_unit", "1·a = a = a·1", a.unit_residual());
    rep.record("algebra_associative", "(ab)c = a(bc)", a.associativity_residual());

    let unital = (|| h.delta(&h.one(1))?.diff(&h.one(2)))();
    rep.record_result("coproduct_unital", "Δ(1) = 1⊗1", unital);
    if let Some(c) = rep.checks.last_mut() {
        if !c.passed() {
            c.detail = Some(WEAK.to_string());
        }
    }
    rep.record_result(
        "coproduct_multiplicative",
        "Δ(ab) = Δ(a)Δ(b)",
        (|| {
            let deltas: Vec<Tensor> = (0..n).map(|i| h.delta(&h.basis(i))).collect::<Result<_>>()?;
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let lhs = h.delta(&h.el(&a.basis_product(i, j)))?;
                    worst = worst.max(lhs.diff(&deltas[i].mul(&deltas[j])?)?);
                }
            }
            Ok(worst)
        })(),
    );
    let mut w: f64 = (h.eps(a.unit()) - ONE).norm();
    for i in 0..n {
        for j in 0..n {
            w = w.max((h.eps(&a.basis_product(i, j)) - h.counit[i] * h.counit[j]).norm());
        }
    }
    rep.record("counit_multiplicative", "ε(ab) = ε(a)ε(b), ε(1) = 1", w);

    let mut w: f64 = 0.0;
    for i in 0..n {
        w = w.max(sparse_diff(&h.s_inv.apply(&h.s.cols[i]), &[(i, ONE)]));
        w = w.max(sparse_diff(&h.s.apply(&h.s_inv.cols[i]), &[(i, ONE)]));
    }
    rep.record("antipode_invertible", "S⁻¹S = SS⁻¹ = id", w);
    let mut w: f64 = sparse_diff(&h.s.apply(a.unit()), a.unit());
    for i in 0..n {
        for j in 0..n {
            let lhs = h.s.apply(&a.basis_product(i, j));
            let rhs = a.mul_vec(&h.s.cols[j], &h.s.cols[i]);
            w = w.max(sparse_diff(&lhs, &rhs));
        }
    }
    rep.record("antipode_antimultiplicative", "S(ab) = S(b)S(a), S(1) = 1", w);

    rep.record_result(
        "phi_invertible",
        "φφ⁻¹ = φ⁻¹φ = 1⊗1⊗1",
        (|| {
            let one = h.one(3);
            Ok(h.phi.mul(&h.phi_inv)?.diff(&one)?.max(h.phi_inv.mul(&h.phi)?.diff(&one)?))
        })(),
    );

    rep.record_result(
        "quasi_coassociativity",
        "(id⊗Δ)Δ(a)·φ = φ·(Δ⊗id)Δ(a)",
        over_basis(n, |i| {
            let d = h.delta(&h.basis(i))?;
            let l = h.delta_at(&d, 1)?.mul(&h.phi)?;
            let r = h.phi.mul(&h.delta_at(&d, 0)?)?;
            l.diff(&r)
        }),
    );

    if opts.pentagon {
        rep.record_result("pentagon", "(id⊗id⊗Δ)(φ)(Δ⊗id⊗id)(φ) = (1⊗φ)(id⊗Δ⊗id)(φ)(φ⊗1)", pentagon_residual(h));
    } else {
        rep.skip("pentagon", "(id⊗id⊗Δ)(φ)(Δ⊗id⊗id)(φ) = (1⊗φ)(id⊗Δ⊗id)(φ)(φ⊗1)", "dimension gate");
    }

    rep.record_result(
        "counit_axiom",
        "(ε⊗id)Δ(a) = a = (id⊗ε)Δ(a)",
        over_basis(n, |i| {
            let a1 = h.basis(i);
            let d = h.delta(&a1)?;
            Ok(h.eps_at(&d, 0)?.diff(&a1)?.max(h.eps_at(&d, 1)?.diff(&a1)?))
        }),
    );
    rep.record_result(
        "phi_normalized_middle",
        "(id⊗ε⊗id)(φ) = 1⊗1",
        (|| h.eps_at(&h.phi, 1)?.diff(&h.one(2)))(),
    );
    rep.record_result(
        "phi_normalized_outer",
        "(ε⊗id⊗id)(φ) = (id⊗id⊗ε)(φ) = 1⊗1",
        (|| Ok(h.eps_at(&h.phi, 0)?.diff(&h.one(2))?.max(h.eps_at(&h.phi, 2)?.diff(&h.one(2))?)))(),
    );

    rep.record_result(
        "antipode_alpha",
        "S(a₁)αa₂ = ε(a)α",
        over_basis(n, |i| {
            let d = h.delta(&h.basis(i))?;
            let l = d.contract(&[Slot::new(&a, vec![mapped(0, &h.s), konst(&h.alpha), leg(1)])])?;
            l.diff(&h.alpha_t().scale(h.counit[i]))
        }),
    );
    rep.record_result(
        "antipode_beta",
        "a₁βS(a₂) = ε(a)β",
        over_basis(n, |i| {
            let d = h.delta(&h.basis(i))?;
            let l = d.contract(&[Slot::new(&a, vec![leg(0), konst(&h.beta), mapped(1, &h.s)])])?;
            l.diff(&h.beta_t().scale(h.counit[i]))
        }),
    );
    rep.record_result(
        "zigzag_phi",
        "X β S(Y) α Z = 1",
        (|| {
            let l = h.phi.contract(&[Slot::new(&a, vec![leg(0), konst(&h.beta), mapped(1, &h.s), konst(&h.alpha), leg(2)])])?;
            l.diff(&h.one(1))
        })(),
    );
    rep.record_result(
        "zigzag_phi_inv",
        "S(P) α Q β S(R) = 1",
        (|| {
            let l = h.phi_inv.contract(&[Slot::new(&a, vec![mapped(0, &h.s), konst(&h.alpha), leg(1), konst(&h.beta), mapped(2, &h.s)])])?;
            l.diff(&h.one(1))
        })(),
    );
    let ea: Scalar = h.eps_alpha();
    let eb: Scalar = h.eps_beta();
    rep.record("counit_alpha_beta", "ε(α)ε(β) = 1", (ea * eb - ONE).norm()).detail =
        Some(format!("ε(α) = {} {:+}i", ea.re, ea.im));
    rep
}

pub fn pentagon_residual(h: &QuasiHopf) -> Result<f64> {
    let p = &h.phi;
    let l = h.delta_at(p, 2)?.mul(&h.delta_at(p, 0)?)?;
    let r = Tensor::product(&[&h.sup(p, &[1, 2, 3], 4)?, &h.delta_at(p, 1)?, &h.sup(p, &[0, 1, 2], 4)?])?;
    l.diff(&r)
}

pub fn verify_quasitriangular(q: &QuasiTriangular, opts: VerifyOptions) -> Report {
    let mut rep = Report::new(&q.name, opts.tol);
    let h: &QuasiHopf = q;
    let n = h.dim();
    let (r, ri) = (&q.r, &q.r_inv);
    rep.record_result(
        "r_invertible",
        "RR⁻¹ = R⁻¹R = 1⊗1",
        (|| {
            let one = h.one(2);
            Ok(r.mul(ri)?.diff(&one)?.max(ri.mul(r)?.diff(&one)?))
        })(),
    );
    rep.record_result(
        "r_intertwines",
        "Δ^op(a)R = RΔ(a)",
        over_basis(n, |i| {
            let d = h.delta(&h.basis(i))?;
            let dop = d.permute(&[1, 0])?;
            dop.mul(r)?.diff(&r.mul(&d)?)
        }),
    );
    rep.record_result(
        "r_hexagon_left",
        "(Δ⊗id)(R) = φ³¹²R¹³(φ⁻¹)¹³²R²³φ",
        (|| {
            let rhs = Tensor::product(&[
                &h.sup(&h.phi, &[2, 0, 1], 3)?,
                &h.sup(r, &[0, 2], 3)?,
                &h.sup(&h.phi_inv, &[0, 2, 1], 3)?,
                &h.sup(r, &[1, 2], 3)?,
                &h.phi,
            ])?;
            h.delta_at(r, 0)?.diff(&rhs)
        })(),
    );
    rep.record_result(
        "r_hexagon_right",
        "(id⊗Δ)(R) = (φ⁻¹)²³¹R¹³φ²¹³R¹²φ⁻¹",
        (|| {
            let rhs = Tensor::product(&[
                &h.sup(&h.phi_inv, &[1, 2, 0], 3)?,
                &h.sup(r, &[0, 2], 3)?,
                &h.sup(&h.phi, &[1, 0, 2], 3)?,
                &h.sup(r, &[0, 1], 3)?,
                &h.phi_inv,
            ])?;
            h.delta_at(r, 1)?.diff(&rhs)
        })(),
    );
    rep.record_result("quasi_yang_baxter", "R¹²φ³¹²R¹³(φ⁻¹)¹³²R²³φ = φ³²¹R²³(φ⁻¹)²³¹R¹³φ²¹³R¹²", qybe_residual(q));
    rep.record_result(
        "r_counit",
        "(ε⊗id)(R) = (id⊗ε)(R) = 1",
        (|| Ok(h.eps_at(r, 0)?.diff(&h.one(1))?.max(h.eps_at(r, 1)?.diff(&h.one(1))?)))(),
    );
    rep
}

pub fn qybe_residual(q: &QuasiTriangular) -> Result<f64> {
    let h: &QuasiHopf = q;
    let r = &q.r;
    let lhs = Tensor::product(&[
        &h.sup(r, &[0, 1], 3)?,
        &h.sup(&h.phi, &[2, 0, 1], 3)?,
        &h.sup(r, &[0, 2], 3)?,
        &h.sup(&h.phi_inv, &[0, 2, 1], 3)?,
        &h.sup(r, &[1, 2], 3)?,
        &h.phi,
    ])?;
    let rhs = Tensor::product(&[
        &h.sup(&h.phi, &[2, 1, 0], 3)?,
        &h.sup(r, &[1, 2], 3)?,
        &h.sup(&h.phi_inv, &[1, 2, 0], 3)?,
        &h.sup(r, &[0, 2], 3)?,
        &h.sup(&h.phi, &[1, 0, 2], 3)?,
        &h.sup(r, &[0, 1], 3)?,
    ])?;
    lhs.diff(&rhs)
}
