//! The linear dual Ĝ: coalgebra dual to the product, product dual to Δ
//! (non-associative in general), arrow actions and Ŝ.

use crate::algebra::{sparse_diff, Algebra, Coproduct, LinearMap, Space, SparseVec};
use crate::error::Result;
use crate::quasi_hopf::QuasiHopf;
use crate::report::Report;
use crate::scalar::{Scalar, ONE};
use crate::tensor::Tensor;

#[derive(Clone, Debug)]
pub struct DualStructure {
    /// Ĝ with the product dual to Δ and unit ε.
    pub space: Space,
    /// Δ̂(e^μ) = Σ c^μ_{νλ} e^ν ⊗ e^λ
    pub coproduct: Coproduct,
    /// ε̂(e^μ) = ⟨e^μ | 1⟩
    pub counit: Vec<Scalar>,
    pub s_hat: LinearMap,
    pub s_hat_inv: LinearMap,
    /// Structure constants of G, kept for the arrow actions.
    base: Space,
}

pub fn dual_of(h: &QuasiHopf) -> Result<DualStructure> {
    let g = h.space();
    let n = g.dim();
    let mut table = vec![Vec::new(); n * n];
    for (lam, im) in h.coproduct.images.iter().enumerate() {
        for &(mu, nu, v) in im {
            table[mu * n + nu].push((lam, v));
        }
    }
    let unit: SparseVec = h.counit.iter().cloned().enumerate().collect();
    let space = Algebra::from_table(&format!("{}^", g.name()), n, table, unit)?;
    let space = (*space).clone().mark_dual(g);
    let mut images = vec![Vec::new(); n];
    for (i, j, k, v) in g.structure_constants() {
        images[k].push((i, j, v));
    }
    let coproduct = Coproduct::new(space.clone(), images)?;
    let counit = crate::algebra::sparse_to_dense(g.unit(), n);
    let transpose = |m: &LinearMap| -> Result<LinearMap> {
        let mut cols = vec![Vec::new(); n];
        for (j, col) in m.cols.iter().enumerate() {
            for &(i, v) in col {
                cols[i].push((j, v));
            }
        }
        LinearMap::new(space.clone(), space.clone(), cols)
    };
    let s_hat = transpose(&h.s)?;
    let s_hat_inv = transpose(&h.s_inv)?;
    Ok(DualStructure { space, coproduct, counit, s_hat, s_hat_inv, base: g.clone() })
}

impl DualStructure {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `a ⇀ φ`, with ⟨a⇀φ | x⟩ = ⟨φ | x a⟩.
    pub fn left_arrow(&self, a: &[(usize, Scalar)], phi: &[(usize, Scalar)]) -> SparseVec {
        self.two_sided(a, phi, &[], true)
    }

    /// `a ⇀ φ ↼ b`, with ⟨a⇀φ↼b | x⟩ = ⟨φ | b x a⟩. When `skip_b`, b is the unit.
    fn two_sided(&self, a: &[(usize, Scalar)], phi: &[(usize, Scalar)], b: &[(usize, Scalar)], skip_b: bool) -> SparseVec {
        let n = self.dim();
        let mut out = Vec::new();
        for x in 0..n {
            let xa = self.base.mul_vec(&[(x, ONE)], a);
            let bxa = if skip_b { xa } else { self.base.mul_vec(b, &xa) };
            let v: Scalar = bxa.iter().map(|&(k, c)| c * phi.iter().filter(|p| p.0 == k).map(|p| p.1).sum::<Scalar>()).sum();
            out.push((x, v));
        }
        crate::algebra::clean(out)
    }

    /// `φ ↼ a`, with ⟨φ↼a | x⟩ = ⟨φ | a x⟩.
    pub fn right_arrow(&self, phi: &[(usize, Scalar)], a: &[(usize, Scalar)]) -> SparseVec {
        self.two_sided(self.base.unit(), phi, a, false)
    }

    pub fn arrows(&self, a: &[(usize, Scalar)], b: &[(usize, Scalar)], phi: &[(usize, Scalar)]) -> SparseVec {
        self.two_sided(a, phi, b, false)
    }

    pub fn mul(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        self.space.mul_vec(x, y)
    }
}

/// Structural checks of Ĝ and the arrow actions.
pub fn verify_dual(h: &QuasiHopf, d: &DualStructure, tol: f64) -> Result<Report> {
    let mut rep = Report::new(&format!("{}^", h.name), tol);
    let n = d.dim();
    let e = |i: usize| vec![(i, ONE)];
    let eps_hat: SparseVec = d.space.unit().clone();
    let mut w: f64 = 0.0;
    for i in 0..n {
        w = w.max(sparse_diff(&d.mul(&eps_hat, &e(i)), &e(i))).max(sparse_diff(&d.mul(&e(i), &eps_hat), &e(i)));
    }
    rep.record("dual_unit", "ε̂φ = φε̂ = φ", w);

    let cop = |x: &[(usize, Scalar)]| -> Result<Tensor> { Tensor::element(&d.space, x).split_leg(0, &d.coproduct) };
    let mut w: f64 = 0.0;
    let mut wc: f64 = 0.0;
    for i in 0..n {
        let di = cop(&e(i))?;
        wc = wc.max(di.split_leg(0, &d.coproduct)?.diff(&di.split_leg(1, &d.coproduct)?)?);
        for j in 0..n {
            let dj = cop(&e(j))?;
            w = w.max(cop(&d.mul(&e(i), &e(j)))?.diff(&di.mul(&dj)?)?);
        }
    }
    rep.record("dual_coproduct_multiplicative", "Δ̂(φψ) = Δ̂(φ)Δ̂(ψ)", w);
    rep.record("dual_coassociative", "(Δ̂⊗id)Δ̂ = (id⊗Δ̂)Δ̂", wc);

    let mut w: f64 = 0.0;
    for mu in 0..n {
        for a in 0..n {
            let lhs: Scalar = d.s_hat.cols[mu].iter().filter(|p| p.0 == a).map(|p| p.1).sum();
            let rhs: Scalar = h.s.cols[a].iter().filter(|p| p.0 == mu).map(|p| p.1).sum();
            w = w.max((lhs - rhs).norm());
        }
    }
    rep.record("dual_antipode_pairing", "⟨Ŝφ | a⟩ = ⟨φ | S(a)⟩", w);

    // arrow actions on basis triples
    let mut wl: f64 = 0.0;
    let mut wr: f64 = 0.0;
    let mut wcomm: f64 = 0.0;
    for a in 0..n {
        let da = h.delta(&h.basis(a))?.entries();
        for p in 0..n {
            for q in 0..n {
                let pq = d.mul(&e(p), &e(q));
                let lhs = d.left_arrow(&e(a), &pq);
                let mut rhs = Vec::new();
                for (k, v) in &da {
                    let t = d.mul(&d.left_arrow(&e(k[0]), &e(p)), &d.left_arrow(&e(k[1]), &e(q)));
                    rhs.extend(t.into_iter().map(|(i, x)| (i, x * v)));
                }
                wl = wl.max(sparse_diff(&lhs, &crate::algebra::clean(rhs)));
                let lhs = d.right_arrow(&pq, &e(a));
                let mut rhs = Vec::new();
                for (k, v) in &da {
                    let t = d.mul(&d.right_arrow(&e(p), &e(k[0])), &d.right_arrow(&e(q), &e(k[1])));
                    rhs.extend(t.into_iter().map(|(i, x)| (i, x * v)));
                }
                wr = wr.max(sparse_diff(&lhs, &crate::algebra::clean(rhs)));
            }
            for b in 0..n {
                let l = d.right_arrow(&d.left_arrow(&e(a), &e(p)), &e(b));
                let r = d.left_arrow(&e(a), &d.right_arrow(&e(p), &e(b)));
                wcomm = wcomm.max(sparse_diff(&l, &r));
            }
        }
    }
    rep.record("left_arrow_module_algebra", "a⇀(φψ) = (a₁⇀φ)(a₂⇀ψ)", wl);
    rep.record("right_arrow_module_algebra", "(φψ)↼a = (φ↼a₁)(ψ↼a₂)", wr);
    rep.record("arrows_commute", "(a⇀φ)↼b = a⇀(φ↼b)", wcomm);

    // non-associativity of Ĝ is conjugation by φ:
    // ⟨φ(ψχ) | a⟩ = ⟨φ⊗ψ⊗χ | Φ (Δ⊗id)Δ(a) Φ⁻¹⟩
    let mut w: f64 = 0.0;
    let mut assoc: f64 = 0.0;
    for a in 0..n {
        let d1 = h.delta(&h.basis(a))?;
        let left = h.delta_at(&d1, 0)?;
        let conj = Tensor::product(&[&h.phi, &left, &h.phi_inv])?;
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let nested = d.mul(&e(p), &d.mul(&e(q), &e(r)));
                    let lhs: Scalar = nested.iter().filter(|x| x.0 == a).map(|x| x.1).sum();
                    let flat = d.mul(&d.mul(&e(p), &e(q)), &e(r));
                    let lhs2: Scalar = flat.iter().filter(|x| x.0 == a).map(|x| x.1).sum();
                    w = w.max((lhs - conj.get(&[p, q, r])).norm());
                    assoc = assoc.max((lhs - lhs2).norm());
                }
            }
        }
    }
    rep.record("dual_associator", "⟨φ(ψχ) | a⟩ = ⟨φ⊗ψ⊗χ | φ·(Δ⊗id)Δ(a)·φ⁻¹⟩", w);
    rep.note("dual_associativity_defect", "max |⟨(φψ)χ − φ(ψχ) | a⟩|", format!("{assoc:e}"));
    Ok(rep)
}
