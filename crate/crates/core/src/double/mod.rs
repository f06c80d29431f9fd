//! The quantum double D(G) = Ĝ⋈G as a diagonal crossed product, its
//! universal Δ-flip D and the quasitriangular quasi-Hopf structure.

use std::ops::Deref;

use crate::algebra::{Coproduct, LinearMap, Space, SparseVec};
use crate::error::{Error, Result};
use crate::quasi_hopf::{DerivedElements, QuasiHopf, QuasiTriangular, VerifyOptions};
use crate::report::Report;
use crate::scalar::{Scalar, ONE, ZERO};
use crate::tensor::{konst, leg, mapped, Slot, Tensor};

mod checks;
mod coaction;
mod iso;
mod product;

pub use checks::{d_inverse_report, d_matrix_report, flip_residuals, hopf_case_report, implementer_residuals, lt_report, lt_transform, mu_map, mu_matrix, mu_report, tl_transform, verify_double, FLIP, FLIP_COHERENCE};
pub use coaction::{coact_at, omega_elements, two_sided_coaction, OmegaElements, TwoSidedCoaction};
pub use iso::{left_right_iso, LeftRightIso};
pub use product::{left_product, right_product};

/// D(G) with the data it was built from.
#[derive(Clone, Debug)]
pub struct DoubleAlgebra {
    /// The underlying G.
    pub g: QuasiHopf,
    pub derived: DerivedElements,
    pub coaction: TwoSidedCoaction,
    pub omega: OmegaElements,
    /// D(G) with R_D = (i_D⊗id)(D).
    pub qt: QuasiTriangular,
    /// a ↦ ε̂⋈a
    pub i_d: LinearMap,
    /// The universal Δ-flip in G⊗D(G).
    pub d: Tensor,
    pub d_inv: Tensor,
    /// Checks run while building (coaction, Ω, associativity).
    pub build_report: Report,
}

impl Deref for DoubleAlgebra {
    type Target = QuasiTriangular;
    fn deref(&self) -> &QuasiTriangular {
        &self.qt
    }
}

/// Coefficient of e_μ in e_α e_β, grouped by μ: the dual coproduct Δ̂(e^μ).
pub(crate) fn pair_products(a: &Space) -> Vec<Vec<(usize, usize, Scalar)>> {
    let n = a.dim();
    let mut out = vec![Vec::new(); n];
    for x in 0..n {
        for y in 0..n {
            for (mu, c) in a.basis_product(x, y) {
                out[mu].push((x, y, c));
            }
        }
    }
    out
}

/// e_k ↦ e^μ⋈e_k
pub(crate) fn j_map(g: &Space, dsp: &Space, mu: usize) -> LinearMap {
    let n = g.dim();
    LinearMap::new(g.clone(), dsp.clone(), (0..n).map(|k| vec![(mu * n + k, ONE)]).collect()).expect("in range")
}

impl DoubleAlgebra {
    pub fn n(&self) -> usize {
        self.g.dim()
    }
    pub fn g_space(&self) -> &Space {
        self.g.space()
    }
    pub fn d_space(&self) -> &Space {
        self.qt.space()
    }
    /// Index of e^μ⋈e_i.
    pub fn index(&self, mu: usize, i: usize) -> usize {
        mu * self.n() + i
    }
    /// Embed a G-tensor along `positions` into `target`, sending legs that land
    /// on D(G) through i_D.
    pub fn lift(&self, t: &Tensor, positions: &[usize], target: &[Space]) -> Result<Tensor> {
        lift_with(&self.i_d, t, positions, target)
    }
    /// D(φ) = (φ⊗id)(D) for φ = e^β.
    pub fn d_of(&self, beta: usize) -> SparseVec {
        self.d.slice(0, beta).expect("in range").as_vec()
    }
    /// (φ⊗id)(D) for an arbitrary functional on G.
    pub fn d_of_functional(&self, phi: &[Scalar]) -> SparseVec {
        self.d.eval_leg(0, phi).expect("dimension matches").as_vec()
    }
    pub fn embed(&self, a: &[(usize, Scalar)]) -> SparseVec {
        self.i_d.apply(a)
    }
    /// The generator factorization e^μ⋈e_i = Σ i_D(Q_α) D(e^β) i_D(e_i),
    /// Q_α = (id⊗e^α)(q_ρ), as (coefficient, Q_α, β) terms for e^μ.
    pub fn factor_terms(&self, mu: usize) -> Vec<(Scalar, SparseVec, usize)> {
        factor_terms(self.g_space(), &self.derived.q_rho, mu)
    }
}

fn factor_terms(g: &Space, q_rho: &Tensor, mu: usize) -> Vec<(Scalar, SparseVec, usize)> {
    let mut out = Vec::new();
    for (al, be, c) in pair_products(g).swap_remove(mu) {
        let q = q_rho.slice(1, al).expect("in range").as_vec();
        if !q.is_empty() {
            out.push((c, q, be));
        }
    }
    out
}

pub fn lift_with(i_d: &LinearMap, t: &Tensor, positions: &[usize], target: &[Space]) -> Result<Tensor> {
    let mut t = t.clone();
    for (k, &p) in positions.iter().enumerate() {
        if p >= target.len() {
            return Err(Error::Leg { leg: p, rank: target.len() });
        }
        if target[p].id() != t.space(k).id() && target[p].id() == i_d.codomain.id() {
            t = t.map_leg(k, i_d)?;
        }
    }
    t.embed(positions, target)
}

/// Build D(G) and its quasitriangular quasi-Hopf structure.
pub fn build_double(h: &QuasiHopf, opts: VerifyOptions) -> Result<DoubleAlgebra> {
    let eps_alpha = h.eps_alpha();
    if (eps_alpha - ONE).norm() > opts.tol {
        return Err(Error::Precondition(format!(
            "ε(α) = {} {:+}i; the generator factorization of the double needs ε(α) = 1",
            eps_alpha.re, eps_alpha.im
        )));
    }
    let g = h.space().clone();
    let n = g.dim();
    let derived = DerivedElements::compute(h)?;
    let mut build_report = Report::new(&format!("D({})", h.name), opts.tol);
    let (coaction, rep) = two_sided_coaction(h, opts)?;
    build_report.absorb("", rep);
    let (omega, rep) = omega_elements(h, &coaction, &derived, opts)?;
    build_report.absorb("", rep);

    let dsp = left_product(h, &omega.omega)?;
    let assoc = dsp.associativity_residual();
    build_report.record("double_associative", "(xy)z = x(yz) on Ĝ⋈G", assoc);
    build_report.record("double_unit", "(ε̂⋈1)x = x = x(ε̂⋈1)", dsp.unit_residual());
    if !(assoc <= opts.tol) {
        return Err(Error::Structural(format!("diagonal crossed product not associative (residual {assoc:e})")));
    }

    // i_D(e_i) = ε̂⋈e_i
    let i_d = LinearMap::new(
        g.clone(),
        dsp.clone(),
        (0..n).map(|i| h.counit.iter().enumerate().filter(|p| *p.1 != ZERO).map(|(mu, &e)| (mu * n + i, e)).collect()).collect(),
    )?;
    let gd = [g.clone(), dsp.clone()];
    let lift = |t: &Tensor, pos: &[usize], target: &[Space]| lift_with(&i_d, t, pos, target);

    // D = Σ_μ S⁻¹(p_ρ²) e_μ p_ρ¹₍₁₎ ⊗ (e^μ⋈p_ρ¹₍₂₎)
    let p = h.delta_at(&derived.p_rho, 0)?;
    let mut d = Tensor::zero(&gd)?;
    for mu in 0..n {
        let e_mu = [(mu, ONE)];
        let j = j_map(&g, &dsp, mu);
        let part = p.contract(&[
            Slot::new(&g, vec![mapped(2, &h.s_inv), konst(&e_mu), leg(0)]),
            Slot::new(&dsp, vec![mapped(1, &j)]),
        ])?;
        d = d.add(&part)?;
    }

    // D⁻¹ = [XβS(PY)⊗1]·[(S⊗id)(q_ρ^op D)]·[(R⊗Q)Δ^op(Z)]
    let m = h.s_at(&lift(&derived.q_rho, &[1, 0], &gd)?.mul(&d)?, 0)?;
    let d_inv = crate::quasi_hopf::first_form_inverse(h, &m, Some(&i_d))?;

    let ddd = [g.clone(), dsp.clone(), dsp.clone()];
    // (id⊗Δ_D)(D) = (φ⁻¹)²³¹D¹³φ²¹³D¹²φ⁻¹
    let y = Tensor::product(&[
        &lift(&h.phi_inv, &[1, 2, 0], &ddd)?,
        &d.embed(&[0, 2], &ddd)?,
        &lift(&h.phi, &[1, 0, 2], &ddd)?,
        &d.embed(&[0, 1], &ddd)?,
        &lift(&h.phi_inv, &[0, 1, 2], &ddd)?,
    ])?;
    // (id⊗S_D)(D) = (S⁻¹⊗id)[f²¹ D f⁻¹]
    let sd = h.s_inv_at(&Tensor::product(&[&lift(&derived.f, &[1, 0], &gd)?, &d, &lift(&derived.f_inv, &[0, 1], &gd)?])?, 0)?;

    let dsig2 = [dsp.clone(), dsp.clone()];
    let delta_i = |x: &[(usize, Scalar)]| -> Result<Tensor> { lift(&h.delta(&h.el(x))?, &[0, 1], &dsig2) };
    let e = |i: usize| vec![(i, ONE)];
    let unit_g = crate::algebra::sparse_to_dense(g.unit(), n);

    let mut images = Vec::with_capacity(n * n);
    let mut counit = Vec::with_capacity(n * n);
    let mut s_cols = Vec::with_capacity(n * n);
    let delta_e: Vec<Tensor> = (0..n).map(|i| delta_i(&e(i))).collect::<Result<_>>()?;
    let y_slices: Vec<Tensor> = (0..n).map(|b| y.slice(0, b)).collect::<Result<_>>()?;
    let sd_slices: Vec<SparseVec> = (0..n).map(|b| sd.slice(0, b).map(|t| t.as_vec())).collect::<Result<_>>()?;
    for mu in 0..n {
        let terms = factor_terms(&g, &derived.q_rho, mu);
        let lifted: Vec<(Scalar, Tensor, SparseVec, usize)> = terms
            .iter()
            .map(|(c, q, b)| Ok((*c, delta_i(q)?, i_d.apply(&h.s.apply(q)), *b)))
            .collect::<Result<_>>()?;
        for i in 0..n {
            let mut img = Tensor::zero(&dsig2)?;
            let mut eps = ZERO;
            let mut s_img: SparseVec = Vec::new();
            let si = i_d.apply(&h.s.cols[i]);
            for ((c, q, beta), (_, dq, sq, _)) in terms.iter().zip(&lifted) {
                img = img.add(&Tensor::product(&[dq, &y_slices[*beta], &delta_e[i]])?.scale(*c))?;
                eps += *c * h.eps(q) * unit_g[*beta] * h.counit[i];
                let s = dsp.mul_vec(&dsp.mul_vec(&si, &sd_slices[*beta]), sq);
                s_img = crate::algebra::sparse_add(&s_img, &s, *c);
            }
            images.push(img.entries().into_iter().map(|(k, v)| (k[0], k[1], v)).collect());
            counit.push(eps);
            s_cols.push(s_img);
        }
    }
    let coproduct = Coproduct::new(dsp.clone(), images)?;
    let s_d = LinearMap::new(dsp.clone(), dsp.clone(), s_cols)?;
    let d3 = [dsp.clone(), dsp.clone(), dsp.clone()];
    let phi_d = lift(&h.phi, &[0, 1, 2], &d3)?;
    let phi_d_inv = lift(&h.phi_inv, &[0, 1, 2], &d3)?;
    let name = format!("D({})", h.name);
    let qha = QuasiHopf::new(
        &name,
        dsp.clone(),
        coproduct,
        counit,
        phi_d,
        Some(phi_d_inv),
        s_d,
        i_d.apply(&h.alpha),
        i_d.apply(&h.beta),
    )?;
    let r_d = d.map_leg(0, &i_d)?;
    let r_d_inv = d_inv.map_leg(0, &i_d)?;
    let qt = qha.with_r(r_d, Some(r_d_inv))?;
    Ok(DoubleAlgebra { g: h.clone(), derived, coaction, omega, qt, i_d, d, d_inv, build_report })
}

/// The pentagon of φ_D runs in D(G)^⊗4; gate it to dim(G) ≤ 6 unless deep.
pub fn pentagon_gate(n: usize, opts: VerifyOptions) -> VerifyOptions {
    VerifyOptions { pentagon: opts.pentagon && (n <= 6 || opts.deep), ..opts }
}
