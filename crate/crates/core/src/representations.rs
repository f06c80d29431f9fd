//! G-modules, normal coherent Δ-flips D_V ∈ G⊗End(V), the extension to a
//! D(G)-module and the equivalent conditions on β_V(v) = D_V(1⊗v).
//! End(V) uses matrix units E_ij at index i·dim+j.

use nalgebra::DMatrix;

use crate::algebra::{Algebra, LinearMap, Space};
use crate::double::{flip_residuals, DoubleAlgebra, FLIP, FLIP_COHERENCE};
use crate::error::{Error, Result};
use crate::quasi_hopf::{QuasiHopf, VerifyOptions};
use crate::report::Report;
use crate::scalar::{Scalar, ONE, ZERO};
use crate::tensor::{leg, Slot, Tensor};

#[derive(Clone, Debug)]
pub struct GModule {
    pub name: String,
    pub dim: usize,
    /// V as a bare vector space.
    pub vspace: Space,
    pub end: Space,
    /// π: G → End(V).
    pub pi: LinearMap,
}

#[derive(Clone, Debug)]
pub struct DeltaFlip {
    /// D_V over G⊗End(V).
    pub t: Tensor,
}

/// A representation of D(G) on V, one matrix per basis element.
#[derive(Clone, Debug)]
pub struct DModule {
    pub dim: usize,
    pub mats: Vec<DMatrix<Scalar>>,
}

fn flatten(m: &DMatrix<Scalar>) -> Vec<(usize, Scalar)> {
    let d = m.nrows();
    let mut v = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if m[(i, j)] != ZERO {
                v.push((i * d + j, m[(i, j)]));
            }
        }
    }
    v
}

fn unflatten(v: &[(usize, Scalar)], d: usize) -> DMatrix<Scalar> {
    let mut m = DMatrix::zeros(d, d);
    for &(k, x) in v {
        m[(k / d, k % d)] += x;
    }
    m
}

fn max_abs(m: &DMatrix<Scalar>) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

impl GModule {
    /// Build from π(e_i); verifies unitality and multiplicativity on basis products.
    pub fn new(name: &str, h: &QuasiHopf, mats: Vec<DMatrix<Scalar>>, tol: f64) -> Result<Self> {
        let n = h.dim();
        if mats.len() != n {
            return Err(Error::Signature(format!("{} matrices for an algebra of dimension {n}", mats.len())));
        }
        let d = mats.first().map(|m| m.nrows()).unwrap_or(0);
        if mats.iter().any(|m| m.nrows() != d || m.ncols() != d) {
            return Err(Error::Signature("representation matrices must be square of one size".into()));
        }
        let vspace = Algebra::idempotents(name, d);
        let end = Algebra::matrix_units(&format!("End({name})"), d);
        let pi = LinearMap::new(h.space().clone(), end.clone(), mats.iter().map(flatten).collect())?;
        let m = GModule { name: name.to_string(), dim: d, vspace, end, pi };
        let u = m.matrix(h.space().unit());
        let mut worst = max_abs(&(u - DMatrix::identity(d, d)));
        for i in 0..n {
            for j in 0..n {
                let ij = m.matrix(&h.space().basis_product(i, j));
                worst = worst.max(max_abs(&(ij - &mats[i] * &mats[j])));
            }
        }
        if worst > tol {
            return Err(Error::Structural(format!("π is not a unital algebra morphism (residual {worst:e})")));
        }
        Ok(m)
    }

    pub fn matrix(&self, a: &[(usize, Scalar)]) -> DMatrix<Scalar> {
        unflatten(&self.pi.apply(a), self.dim)
    }

    /// The one-dimensional module π = ε.
    pub fn trivial(h: &QuasiHopf) -> Result<Self> {
        let mats = h.counit.iter().map(|&e| DMatrix::from_element(1, 1, e)).collect();
        GModule::new("triv", h, mats, crate::scalar::DEFAULT_TOL)
    }

    /// The left regular representation of G.
    pub fn regular(h: &QuasiHopf) -> Result<Self> {
        let mats = (0..h.dim()).map(|i| h.space().left_matrix(&[(i, ONE)])).collect();
        GModule::new(&format!("reg({})", h.name), h, mats, crate::scalar::DEFAULT_TOL)
    }
}

impl DeltaFlip {
    /// D_V = 1⊗id_V
    pub fn unit(h: &QuasiHopf, v: &GModule) -> Result<Self> {
        Ok(DeltaFlip { t: Tensor::unit(&[h.space().clone(), v.end.clone()])? })
    }
    /// (e^g⊗id)(D_V) as a matrix.
    pub fn slice(&self, v: &GModule, g: usize) -> Result<DMatrix<Scalar>> {
        Ok(unflatten(&self.t.slice(0, g)?.as_vec(), v.dim))
    }
}

/// D(G) acting on itself from the left, restricted to G through i_D, with
/// D_V = (id⊗π)(D).
pub fn regular_double_module(dbl: &DoubleAlgebra) -> Result<(GModule, DeltaFlip)> {
    let dsp = dbl.d_space();
    let mats: Vec<DMatrix<Scalar>> = (0..dbl.n()).map(|i| dsp.left_matrix(&dbl.i_d.cols[i])).collect();
    let v = GModule::new(&format!("reg({})", dbl.name), &dbl.g, mats, crate::scalar::DEFAULT_TOL)?;
    let left = LinearMap::new(dsp.clone(), v.end.clone(), (0..dsp.dim()).map(|k| flatten(&dsp.left_matrix(&[(k, ONE)]))).collect())?;
    let t = dbl.d.map_leg(1, &left)?;
    Ok((v, DeltaFlip { t }))
}

/// Conditions (i)–(iii) on D_V.
pub fn check_flip(h: &QuasiHopf, v: &GModule, dv: &DeltaFlip, opts: VerifyOptions) -> Report {
    let mut rep = Report::new(&v.name, opts.tol);
    match flip_residuals(h, &v.pi, &dv.t) {
        Ok([normal, flip, coh]) => {
            rep.record("flip_normal", "(ε⊗id)(D_V) = id_V", normal);
            rep.record("flip_relation", FLIP, flip);
            rep.record("flip_coherence", FLIP_COHERENCE, coh);
        }
        Err(e) => rep.fail("flip_relation", FLIP, &e.to_string()),
    }
    rep
}

/// π^D(e^μ⋈e_i) = Σ π(Q_α)·(e^β⊗id)(D_V)·π(e_i).
pub fn extend_rep(dbl: &DoubleAlgebra, v: &GModule, dv: &DeltaFlip, opts: VerifyOptions) -> Result<DModule> {
    let rep = check_flip(&dbl.g, v, dv, opts);
    if !rep.passed() {
        let names: Vec<&str> = rep.failures().iter().map(|c| c.name.as_str()).collect();
        return Err(Error::Precondition(format!("D_V is not a normal coherent Δ-flip: {}", names.join(", "))));
    }
    let n = dbl.n();
    let slices: Vec<DMatrix<Scalar>> = (0..n).map(|b| dv.slice(v, b)).collect::<Result<_>>()?;
    let gens: Vec<DMatrix<Scalar>> = (0..n).map(|i| v.matrix(&[(i, ONE)])).collect();
    let mut mats = vec![DMatrix::zeros(v.dim, v.dim); n * n];
    for mu in 0..n {
        for (c, q, beta) in dbl.factor_terms(mu) {
            let head = v.matrix(&q) * &slices[beta] * c;
            for i in 0..n {
                mats[dbl.index(mu, i)] += &head * &gens[i];
            }
        }
    }
    Ok(DModule { dim: v.dim, mats })
}

/// Unitality, multiplicativity on all basis pairs and the two generator rules.
pub fn extension_report(dbl: &DoubleAlgebra, v: &GModule, dv: &DeltaFlip, ext: &DModule, opts: VerifyOptions) -> Report {
    let mut rep = Report::new(&v.name, opts.tol);
    let dsp = dbl.d_space();
    let act = |x: &[(usize, Scalar)]| -> DMatrix<Scalar> {
        let mut m = DMatrix::zeros(ext.dim, ext.dim);
        for &(k, c) in x {
            m += &ext.mats[k] * c;
        }
        m
    };
    rep.record("extension_unital", "π^D(1) = id_V", max_abs(&(act(dsp.unit()) - DMatrix::identity(ext.dim, ext.dim))));
    let mut w: f64 = 0.0;
    for a in 0..dsp.dim() {
        for b in 0..dsp.dim() {
            w = w.max(max_abs(&(act(&dsp.basis_product(a, b)) - &ext.mats[a] * &ext.mats[b])));
        }
    }
    rep.record("extension_multiplicative", "π^D(xy) = π^D(x)π^D(y) on all basis pairs", w);
    let mut wg: f64 = 0.0;
    let mut wd: f64 = 0.0;
    for i in 0..dbl.n() {
        wg = wg.max(max_abs(&(act(&dbl.i_d.cols[i]) - v.matrix(&[(i, ONE)]))));
        match dv.slice(v, i) {
            Ok(s) => wd = wd.max(max_abs(&(act(&dbl.d_of(i)) - s))),
            Err(_) => wd = f64::INFINITY,
        }
    }
    rep.record("extension_on_g", "π^D(i_D(a)) = π(a)", wg);
    rep.record("extension_on_d", "π^D(D(φ)) = (φ⊗id)(D_V)", wd);
    rep
}

/// Apply π(e_g) on the V-leg, consuming the G-leg.
fn act_at(v: &GModule, t: &Tensor, g_leg: usize, v_leg: usize) -> Result<Tensor> {
    let legs: Vec<Space> = t.legs().iter().enumerate().filter(|p| p.0 != g_leg).map(|p| p.1.clone()).collect();
    let vpos = if v_leg > g_leg { v_leg - 1 } else { v_leg };
    let mut out = Tensor::zero(&legs)?;
    for (k, c) in t.entries() {
        let col = &v.pi.cols[k[g_leg]];
        let mut idx: Vec<usize> = k.iter().enumerate().filter(|p| p.0 != g_leg).map(|p| *p.1).collect();
        for &(e, x) in col {
            if e % v.dim == k[v_leg] {
                idx[vpos] = e / v.dim;
                out.add_entry(&idx, c * x)?;
            }
        }
    }
    out.prune();
    Ok(out)
}

/// β_V on the V-leg: e_j ↦ Σ D_V¹ ⊗ D_V² e_j, the new G-leg placed just before it.
fn beta_at(v: &GModule, dv: &DeltaFlip, t: &Tensor, v_leg: usize, g: &Space) -> Result<Tensor> {
    let mut legs = t.legs().to_vec();
    legs.insert(v_leg, g.clone());
    let mut out = Tensor::zero(&legs)?;
    let dentries = dv.t.entries();
    for (k, c) in t.entries() {
        for (dk, x) in &dentries {
            let (i, j) = (dk[1] / v.dim, dk[1] % v.dim);
            if j != k[v_leg] {
                continue;
            }
            let mut idx = k.clone();
            idx[v_leg] = i;
            idx.insert(v_leg, dk[0]);
            out.add_entry(&idx, c * x)?;
        }
    }
    out.prune();
    Ok(out)
}

/// Conditions (i′)–(iii′) on β_V, evaluated on a basis of V.
pub fn majid_conditions(h: &QuasiHopf, v: &GModule, dv: &DeltaFlip, opts: VerifyOptions) -> Report {
    let mut rep = Report::new(&v.name, opts.tol);
    let g = h.space();
    let vs = &v.vspace;
    let r = (|| -> Result<[f64; 3]> {
        let mut w = [0.0f64; 3];
        for j in 0..v.dim {
            let ev = Tensor::basis(vs, j);
            // (i′) (ε⊗id)∘β_V = id
            w[0] = w[0].max(h.eps_at(&beta_at(v, dv, &ev, 0, g)?, 0)?.diff(&ev)?);
            // (ii′) (a₂·v)^(1̄)a₁ ⊗ (a₂·v)^(2̄) = a₂v^(1̄) ⊗ a₁·v^(2̄)
            for a in 0..h.dim() {
                let x = act_at(v, &h.delta(&h.basis(a))?.otimes(&ev)?, 1, 2)?;
                let lhs = beta_at(v, dv, &x, 1, g)?.contract(&[Slot::new(g, vec![leg(1), leg(0)]), Slot::new(vs, vec![leg(2)])])?;
                let y = act_at(v, &beta_at(v, dv, &ev, 0, g)?.otimes(&h.delta(&h.basis(a))?)?, 2, 1)?;
                let rhs = y.contract(&[Slot::new(g, vec![leg(2), leg(0)]), Slot::new(vs, vec![leg(1)])])?;
                w[1] = w[1].max(lhs.diff(&rhs)?);
            }
            // (iii′) with P⊗Q⊗R = φ⁻¹
            let t = h.phi_inv.otimes(&ev)?;
            let l = beta_at(v, dv, &t, 3, g)?;
            let l = act_at(v, &l, 1, 4)?;
            let l = beta_at(v, dv, &l, 3, g)?;
            let lhs = l.contract(&[Slot::new(g, vec![leg(1), leg(2)]), Slot::new(g, vec![leg(3), leg(0)]), Slot::new(vs, vec![leg(4)])])?;
            let r = act_at(v, &t, 2, 3)?;
            let r = h.delta_at(&beta_at(v, dv, &r, 2, g)?, 2)?;
            let r = r.contract(&[Slot::new(g, vec![leg(3), leg(1)]), Slot::new(g, vec![leg(2), leg(0)]), Slot::new(vs, vec![leg(4)])])?;
            // (φ⁻¹)³²¹ = R′⊗Q′⊗P′ on the left, P′ acting on V
            let r = act_at(v, &h.phi_inv.otimes(&r)?, 0, 5)?;
            let rhs = r.contract(&[Slot::new(g, vec![leg(1), leg(2)]), Slot::new(g, vec![leg(0), leg(3)]), Slot::new(vs, vec![leg(4)])])?;
            w[2] = w[2].max(lhs.diff(&rhs)?);
        }
        Ok(w)
    })();
    const I: &str = "(ε⊗id_V)∘β_V = id_V";
    const II: &str = "(a₍₂₎·v)^(1̄)a₍₁₎ ⊗ (a₍₂₎·v)^(2̄) = a₍₂₎v^(1̄) ⊗ a₍₁₎·v^(2̄)";
    const III: &str = "Rv^(1̄) ⊗ (Q·v^(2̄))^(1̄)P ⊗ (Q·v^(2̄))^(2̄) = (φ⁻¹)³²¹·[(R·v)^(1̄)₍₂₎Q ⊗ (R·v)^(1̄)₍₁₎P ⊗ (R·v)^(2̄)]";
    match r {
        Ok([a, b, c]) => {
            rep.record("majid_normal", I, a);
            rep.record("majid_flip", II, b);
            rep.record("majid_coherence", III, c);
        }
        Err(e) => rep.fail("majid_flip", II, &e.to_string()),
    }
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomVerdict {
    /// t·π_V(a) = π_W(a)·t
    pub g_intertwiner: bool,
    /// D_W(1⊗t) = (1⊗t)D_V
    pub flip_intertwiner: bool,
    /// t intertwines the extended D(G)-actions.
    pub extended: bool,
}

impl HomVerdict {
    pub fn verdict(&self) -> bool {
        self.g_intertwiner && self.flip_intertwiner
    }
}

pub fn hom_check(
    dbl: &DoubleAlgebra,
    v: &GModule,
    dv: &DeltaFlip,
    w: &GModule,
    dw: &DeltaFlip,
    t: &DMatrix<Scalar>,
    opts: VerifyOptions,
) -> Result<HomVerdict> {
    if t.nrows() != w.dim || t.ncols() != v.dim {
        return Err(Error::Signature(format!("t is {}×{}, want {}×{}", t.nrows(), t.ncols(), w.dim, v.dim)));
    }
    let n = dbl.n();
    let mut gi: f64 = 0.0;
    let mut fi: f64 = 0.0;
    for a in 0..n {
        gi = gi.max(max_abs(&(t * v.matrix(&[(a, ONE)]) - w.matrix(&[(a, ONE)]) * t)));
        fi = fi.max(max_abs(&(dw.slice(w, a)? * t - t * dv.slice(v, a)?)));
    }
    let ev = extend_rep(dbl, v, dv, opts)?;
    let ew = extend_rep(dbl, w, dw, opts)?;
    let mut ei: f64 = 0.0;
    for k in 0..dbl.d_space().dim() {
        ei = ei.max(max_abs(&(t * &ev.mats[k] - &ew.mats[k] * t)));
    }
    Ok(HomVerdict { g_intertwiner: gi <= opts.tol, flip_intertwiner: fi <= opts.tol, extended: ei <= opts.tol })
}
