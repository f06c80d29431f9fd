//! Structure constants of the left (Ĝ⋈G) and right (G⋈Ĝ) diagonal crossed
//! products. Left basis e^μ⋈e_i sits at μ·n+i, right basis e_i⋈e^μ at i·n+μ.

use rustc_hash::FxHashMap;

use crate::algebra::{Algebra, Space, SparseVec};
use crate::error::Result;
use crate::quasi_hopf::QuasiHopf;
use crate::scalar::{Scalar, ONE, ZERO};
use crate::tensor::{leg, Slot, Tensor};

type Triples = Vec<Vec<(usize, usize, usize, Scalar)>>;

/// Coefficient of e_ν in e_α e_β e_γ, grouped by ν.
fn triple_products(a: &Space) -> Triples {
    let n = a.dim();
    let mut out = vec![Vec::new(); n];
    for x in 0..n {
        for y in 0..n {
            let xy = a.basis_product(x, y);
            if xy.is_empty() {
                continue;
            }
            for z in 0..n {
                for (nu, c) in a.mul_vec(&xy, &[(z, ONE)]) {
                    out[nu].push((x, y, z, c));
                }
            }
        }
    }
    out
}

/// Σ_λ e_λ ⊗ e_λ, a carrier for basis-indexed tensors.
fn carrier(h: &QuasiHopf) -> Result<Tensor> {
    Tensor::from_entries(&h.sig(2), (0..h.dim()).map(|l| (vec![l, l], ONE)))
}

/// Σ_i e_i ⊗ δ(e_i) with the last or first δ-leg under S⁻¹, keyed by
/// (i, first index, last index).
fn coaction_table(h: &QuasiHopf, s_inv_leg: usize) -> Result<FxHashMap<(usize, usize, usize), SparseVec>> {
    let t = super::coaction::coact_at(h, &carrier(h)?, 1)?;
    let t = h.s_inv_at(&t, s_inv_leg)?;
    let mut m: FxHashMap<(usize, usize, usize), SparseVec> = FxHashMap::default();
    for (k, v) in t.entries() {
        m.entry((k[0], k[1], k[3])).or_default().push((k[2], v));
    }
    Ok(m)
}

/// Contract `w ⊗ Σ_λ e_λ⊗Δ(e_λ)` so that the two Ĝ-slots read
/// w^{a}x₁w^{b} and w^{c}x₂w^{d}; keyed by the pair of slot indices, values (λ, middle leg, coefficient).
fn dual_part(h: &QuasiHopf, w: &Tensor, s1: (usize, usize), s2: (usize, usize), mid: usize) -> Result<FxHashMap<(usize, usize), Vec<(usize, usize, Scalar)>>> {
    let a = h.space();
    let t = w.otimes(&h.delta_at(&carrier(h)?, 1)?)?;
    let z = t.contract(&[
        Slot::new(a, vec![leg(5)]),
        Slot::new(a, vec![leg(s1.0), leg(6), leg(s1.1)]),
        Slot::new(a, vec![leg(s2.0), leg(7), leg(s2.1)]),
        Slot::new(a, vec![leg(mid)]),
    ])?;
    let mut m: FxHashMap<(usize, usize), Vec<(usize, usize, Scalar)>> = FxHashMap::default();
    for (k, v) in z.entries() {
        m.entry((k[1], k[2])).or_default().push((k[0], k[3], v));
    }
    Ok(m)
}

fn accumulate(acc: &mut FxHashMap<usize, Scalar>, v: &[(usize, Scalar)], scale: Scalar, map: impl Fn(usize) -> usize) {
    for &(k, c) in v {
        *acc.entry(map(k)).or_insert(ZERO) += scale * c;
    }
}

fn finish(acc: FxHashMap<usize, Scalar>) -> SparseVec {
    let mut v: SparseVec = acc.into_iter().collect();
    v.sort_by_key(|p| p.0);
    crate::algebra::clean(v)
}

/// (φ⋈a)(ψ⋈b) = [(Ω¹⇀φ↼Ω⁵)(Ω²⇀ψ₍₂₎↼Ω⁴)] ⋈ [Ω³(Ŝ⁻¹(ψ₍₁₎)⇀a↼ψ₍₃₎)b]
pub fn left_product(h: &QuasiHopf, omega: &Tensor) -> Result<Space> {
    let g = h.space();
    let n = g.dim();
    let m3 = triple_products(g);
    let amap = coaction_table(h, 3)?;
    // ⟨e^μ|Ω⁵x₁Ω¹⟩⟨e^β|Ω⁴x₂Ω²⟩ with Ω³ carried along
    let z = dual_part(h, omega, (4, 0), (3, 1), 2)?;
    let mut table = Vec::with_capacity(n.pow(4));
    for mu in 0..n {
        for i in 0..n {
            for nu in 0..n {
                for j in 0..n {
                    let mut acc: FxHashMap<usize, Scalar> = FxHashMap::default();
                    for &(al, be, ga, c) in &m3[nu] {
                        let Some(av) = amap.get(&(i, ga, al)) else { continue };
                        let Some(zs) = z.get(&(mu, be)) else { continue };
                        let avj = g.mul_vec(av, &[(j, ONE)]);
                        if avj.is_empty() {
                            continue;
                        }
                        for &(lam, k, zv) in zs {
                            let v = g.mul_vec(&[(k, ONE)], &avj);
                            accumulate(&mut acc, &v, c * zv, |x| lam * n + x);
                        }
                    }
                    table.push(finish(acc));
                }
            }
        }
    }
    let unit = pair_unit(h, |mu, i| mu * n + i);
    Algebra::from_table(&format!("D({})", g.name()), n * n, table, unit)
}

/// (a⋈φ)(b⋈ψ) = [a(φ₍₁₎⇀b↼Ŝ⁻¹(φ₍₃₎))Ω_R³] ⋈ [(Ω_R²⇀φ₍₂₎↼Ω_R⁴)(Ω_R¹⇀ψ↼Ω_R⁵)]
pub fn right_product(h: &QuasiHopf, omega_r: &Tensor) -> Result<Space> {
    let g = h.space();
    let n = g.dim();
    let m3 = triple_products(g);
    let bmap = coaction_table(h, 1)?;
    // ⟨e^β|Ω_R⁴x₁Ω_R²⟩⟨e^ν|Ω_R⁵x₂Ω_R¹⟩ with Ω_R³ carried along
    let z = dual_part(h, omega_r, (3, 1), (4, 0), 2)?;
    let mut table = Vec::with_capacity(n.pow(4));
    for i in 0..n {
        for mu in 0..n {
            for j in 0..n {
                for nu in 0..n {
                    let mut acc: FxHashMap<usize, Scalar> = FxHashMap::default();
                    for &(al, be, ga, c) in &m3[mu] {
                        // key (j, S⁻¹-leg index γ, last leg α)
                        let Some(bv) = bmap.get(&(j, ga, al)) else { continue };
                        let Some(zs) = z.get(&(be, nu)) else { continue };
                        let ib = g.mul_vec(&[(i, ONE)], bv);
                        if ib.is_empty() {
                            continue;
                        }
                        for &(lam, k, zv) in zs {
                            let v = g.mul_vec(&ib, &[(k, ONE)]);
                            accumulate(&mut acc, &v, c * zv, |x| x * n + lam);
                        }
                    }
                    table.push(finish(acc));
                }
            }
        }
    }
    let unit = pair_unit(h, |mu, i| i * n + mu);
    Algebra::from_table(&format!("D_R({})", g.name()), n * n, table, unit)
}

/// ε̂ ⊗ 1 placed by `index(μ, i)`.
fn pair_unit(h: &QuasiHopf, index: impl Fn(usize, usize) -> usize) -> SparseVec {
    let mut u = Vec::new();
    for (mu, &e) in h.counit.iter().enumerate() {
        if e == ZERO {
            continue;
        }
        for &(i, v) in h.space().unit() {
            u.push((index(mu, i), e * v));
        }
    }
    u.sort_by_key(|p| p.0);
    crate::algebra::clean(u)
}
