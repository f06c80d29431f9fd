use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{sparse_add, sparse_diff, LinearMap, Space, SparseVec};
use crate::error::{Error, Result};
use crate::quasi_hopf::VerifyOptions;
use crate::report::Report;
use crate::scalar::{Scalar, ONE, ZERO};
use crate::tensor::{konst, leg, mapped, Slot, Tensor};

use super::{right_product, DoubleAlgebra};

/// The right crossed product G⋈Ĝ with the algebra maps to and from Ĝ⋈G.
#[derive(Clone, Debug)]
pub struct LeftRightIso {
    pub right: Space,
    /// V = S(Φ̄¹)αΦ̄² ⊗ Φ̄³ ⊗ S⁻¹(αΦ̄⁵)Φ̄⁴
    pub v: Tensor,
    /// W = Φ²S⁻¹(Φ¹β) ⊗ Φ³ ⊗ Φ⁴βS(Φ⁵)
    pub w: Tensor,
    pub to_right: LinearMap,
    pub to_left: LinearMap,
}

/// Coefficient of e_μ in x·e_λ·y, for every λ.
fn sandwich(g: &Space, x: &[(usize, Scalar)], y: &[(usize, Scalar)], mu: usize) -> Vec<(usize, Scalar)> {
    (0..g.dim())
        .filter_map(|lam| {
            let v: Scalar = g.mul_vec(&g.mul_vec(x, &[(lam, ONE)]), y).iter().filter(|p| p.0 == mu).map(|p| p.1).sum();
            (v != ZERO).then_some((lam, v))
        })
        .collect()
}

fn random_vec(rng: &mut ChaCha8Rng, dim: usize) -> SparseVec {
    (0..dim).map(|k| (k, Scalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))).collect()
}

pub fn left_right_iso(dbl: &DoubleAlgebra, opts: VerifyOptions) -> Result<(LeftRightIso, Report)> {
    let h = &dbl.g;
    let g = h.space();
    let n = g.dim();
    let dsp = dbl.d_space();
    let phi = &dbl.coaction.phi;
    let phi_inv = &dbl.coaction.phi_inv;
    let mut rep = Report::new(&dbl.name, opts.tol);

    let right = right_product(h, &dbl.omega.omega_r)?;
    let assoc = right.associativity_residual();
    rep.record("right_associative", "(xy)z = x(yz) on G⋈Ĝ", assoc);
    rep.record("right_unit", "(1⋈ε̂)x = x = x(1⋈ε̂)", right.unit_residual());
    if !(assoc <= opts.tol) {
        return Err(Error::Structural(format!("right crossed product not associative (residual {assoc:e})")));
    }

    let s_inv_alpha = h.s_inv.apply(&h.alpha);
    let s_inv_beta = h.s_inv.apply(&h.beta);
    let v = phi_inv.contract(&[
        Slot::new(g, vec![mapped(0, &h.s), konst(&h.alpha), leg(1)]),
        Slot::new(g, vec![leg(2)]),
        Slot::new(g, vec![mapped(4, &h.s_inv), konst(&s_inv_alpha), leg(3)]),
    ])?;
    let w = phi.contract(&[
        Slot::new(g, vec![leg(1), konst(&s_inv_beta), mapped(0, &h.s_inv)]),
        Slot::new(g, vec![leg(2)]),
        Slot::new(g, vec![leg(3), konst(&h.beta), mapped(4, &h.s)]),
    ])?;

    // a⋈ε̂ in the right product
    let eps_r = |i: usize| -> SparseVec { h.counit.iter().enumerate().filter(|p| *p.1 != ZERO).map(|(lam, &e)| (i * n + lam, e)).collect() };

    // e^μ⋈e_i ↦ Σ_V (V²⋈ψ_V)(e_i⋈ε̂), ψ_V(λ) = ⟨e^μ|V³e_λS⁻¹(V¹)⟩
    let v_entries = v.entries();
    let mut to_right_cols = vec![Vec::new(); n * n];
    for mu in 0..n {
        let mut head: SparseVec = Vec::new();
        for (k, c) in &v_entries {
            let s = h.s_inv.cols[k[0]].clone();
            for (lam, x) in sandwich(g, &[(k[2], ONE)], &s, mu) {
                head = sparse_add(&head, &[(k[1] * n + lam, x)], *c);
            }
        }
        for i in 0..n {
            to_right_cols[dbl.index(mu, i)] = right.mul_vec(&head, &eps_r(i));
        }
    }
    let to_right = LinearMap::new(dsp.clone(), right.clone(), to_right_cols)?;

    // e_i⋈e^μ ↦ i_D(e_i)·Σ_W (ψ_W⋈W²), ψ_W(λ) = ⟨e^μ|S⁻¹(W³)e_λW¹⟩
    let w_entries = w.entries();
    let mut to_left_cols = vec![Vec::new(); n * n];
    for mu in 0..n {
        let mut tail: SparseVec = Vec::new();
        for (k, c) in &w_entries {
            let s = h.s_inv.cols[k[2]].clone();
            for (lam, x) in sandwich(g, &s, &[(k[0], ONE)], mu) {
                tail = sparse_add(&tail, &[(dbl.index(lam, k[1]), x)], *c);
            }
        }
        for i in 0..n {
            to_left_cols[i * n + mu] = dsp.mul_vec(&dbl.i_d.cols[i], &tail);
        }
    }
    let to_left = LinearMap::new(right.clone(), dsp.clone(), to_left_cols)?;

    let mut rl: f64 = 0.0;
    let mut lr: f64 = 0.0;
    for k in 0..n * n {
        rl = rl.max(sparse_diff(&to_left.apply(&to_right.cols[k]), &[(k, ONE)]));
        lr = lr.max(sparse_diff(&to_right.apply(&to_left.cols[k]), &[(k, ONE)]));
    }
    rep.record("iso_left_round_trip", "Φ_RL∘Φ_LR = id on Ĝ⋈G", rl);
    rep.record("iso_right_round_trip", "Φ_LR∘Φ_RL = id on G⋈Ĝ", lr);
    let mut on_g: f64 = 0.0;
    for i in 0..n {
        on_g = on_g.max(sparse_diff(&to_right.apply(&dbl.i_d.cols[i]), &eps_r(i)));
    }
    rep.record("iso_identity_on_g", "ε̂⋈a ↦ a⋈ε̂", on_g);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut ml: f64 = 0.0;
    let mut mr: f64 = 0.0;
    for _ in 0..50 {
        let (x, y) = (random_vec(&mut rng, n * n), random_vec(&mut rng, n * n));
        ml = ml.max(sparse_diff(&to_right.apply(&dsp.mul_vec(&x, &y)), &right.mul_vec(&to_right.apply(&x), &to_right.apply(&y))));
        mr = mr.max(sparse_diff(&to_left.apply(&right.mul_vec(&x, &y)), &dsp.mul_vec(&to_left.apply(&x), &to_left.apply(&y))));
    }
    rep.record("iso_to_right_multiplicative", "Φ_LR(xy) = Φ_LR(x)Φ_LR(y), 50 seeded pairs", ml);
    rep.record("iso_to_left_multiplicative", "Φ_RL(xy) = Φ_RL(x)Φ_RL(y), 50 seeded pairs", mr);
    Ok((LeftRightIso { right, v, w, to_right, to_left }, rep))
}
