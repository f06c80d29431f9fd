use crate::algebra::{sparse_diff, Algebra, Coproduct, LinearMap, Space, SparseVec};
use crate::double::{build_double, DoubleAlgebra};
use crate::error::Result;
use crate::quasi_hopf::VerifyOptions;
use crate::report::Report;
use crate::scalar::{Scalar, ONE, ZERO};
use crate::tensor::Tensor;

use super::{fun_qha, FiniteGroup, ThreeCocycle};

/// D^ω(G) on the basis h⊗δ_g, stored at index h·n+g.
#[derive(Clone, Debug)]
pub struct DprDouble {
    pub group: FiniteGroup,
    pub cocycle: ThreeCocycle,
    pub space: Space,
    pub coproduct: Coproduct,
    pub counit: Vec<Scalar>,
}

impl DprDouble {
    pub fn index(&self, h: usize, g: usize) -> usize {
        h * self.group.order() + g
    }
    /// h⊗1 = Σ_g h⊗δ_g
    pub fn group_element(&self, h: usize) -> SparseVec {
        (0..self.group.order()).map(|g| (self.index(h, g), ONE)).collect()
    }
}

/// c(x,y,t) = ω(x,yty⁻¹,y) / (ω(xyt(xy)⁻¹,x,y)·ω(x,y,t))
fn product_coefficient(g: &FiniteGroup, w: &ThreeCocycle, x: usize, y: usize, t: usize) -> Scalar {
    let yty = g.mul(g.mul(y, t), g.inv(y));
    let xy = g.mul(x, y);
    let conj = g.mul(g.mul(xy, t), g.inv(xy));
    w.get(x, yty, y) / (w.get(conj, x, y) * w.get(x, y, t))
}

/// c′(x,r,s) = ω(xrx⁻¹,x,s) / (ω(x,r,s)·ω(xrx⁻¹,xsx⁻¹,x))
fn coproduct_coefficient(g: &FiniteGroup, w: &ThreeCocycle, x: usize, r: usize, s: usize) -> Scalar {
    let xr = g.mul(g.mul(x, r), g.inv(x));
    let xs = g.mul(g.mul(x, s), g.inv(x));
    w.get(xr, x, s) / (w.get(x, r, s) * w.get(xr, xs, x))
}

/// (h⊗δ_g)(y⊗δ_k) = δ_{y⁻¹gy,k}·c(h,y,k)·(hy⊗δ_k) and
/// Δ(h⊗δ_g) = Σ_{rs=g} c′(h,r,s)·(h⊗δ_r)⊗(h⊗δ_s).
pub fn dpr_double(g: &FiniteGroup, w: &ThreeCocycle) -> Result<DprDouble> {
    let n = g.order();
    let mut table = Vec::with_capacity(n.pow(4));
    for h in 0..n {
        for gg in 0..n {
            for y in 0..n {
                for k in 0..n {
                    table.push(if g.conj(y, gg) == k { vec![(g.mul(h, y) * n + k, product_coefficient(g, w, h, y, k))] } else { Vec::new() });
                }
            }
        }
    }
    let unit = (0..n).map(|k| (g.identity * n + k, ONE)).collect();
    let space = Algebra::from_table(&format!("D^{}({})", w.name, g.name), n * n, table, unit)?;
    let images = (0..n)
        .flat_map(|h| (0..n).map(move |gg| (h, gg)))
        .map(|(h, gg)| {
            (0..n)
                .map(|r| {
                    let s = g.mul(g.inv(r), gg);
                    (h * n + r, h * n + s, coproduct_coefficient(g, w, h, r, s))
                })
                .collect()
        })
        .collect();
    let coproduct = Coproduct::new(space.clone(), images)?;
    let mut counit = vec![ZERO; n * n];
    for h in 0..n {
        counit[h * n + g.identity] = ONE;
    }
    Ok(DprDouble { group: g.clone(), cocycle: w.clone(), space, coproduct, counit })
}

/// σ(h⊗δ_g) = D(e^h)·i_D(δ_g), with e^h the evaluation at h.
pub fn sigma_map(dpr: &DprDouble, dbl: &DoubleAlgebra) -> Result<LinearMap> {
    let n = dpr.group.order();
    let dsp = dbl.d_space();
    let mut cols = vec![Vec::new(); n * n];
    for h in 0..n {
        let dh = dbl.d_of(h);
        for gg in 0..n {
            cols[dpr.index(h, gg)] = dsp.mul_vec(&dh, &dbl.i_d.cols[gg]);
        }
    }
    LinearMap::new(dpr.space.clone(), dsp.clone(), cols)
}

/// Compare the explicit D^ω(G) with the generic double of Fun(G)^ω through σ.
pub fn sigma_check(g: &FiniteGroup, w: &ThreeCocycle, opts: VerifyOptions) -> Result<(DprDouble, Report)> {
    let h = fun_qha(g, w)?;
    let dbl = build_double(&h, opts)?;
    let dpr = dpr_double(g, w)?;
    let n = g.order();
    let mut rep = Report::new(dpr.space.name(), opts.tol);
    rep.record("dpr_associative", "(ab)c = a(bc) on h⊗δ_g", dpr.space.associativity_residual());
    rep.record("dpr_unit", "(e⊗1)a = a = a(e⊗1)", dpr.space.unit_residual());

    let sigma = sigma_map(&dpr, &dbl)?;
    let rank = crate::linalg::rank(&sigma.to_dense(), crate::scalar::SINGULAR);
    rep.record("sigma_bijective", "σ(φ⊗a) = D(φ)·i_D(a) is a linear bijection", (n * n - rank) as f64).detail =
        Some(format!("rank {rank} of {}", n * n));

    let dsp = dbl.d_space();
    let mut worst = (0.0f64, (0, 0));
    for a in 0..n * n {
        for b in 0..n * n {
            let lhs = sigma.apply(&dpr.space.basis_product(a, b));
            let r = sparse_diff(&lhs, &dsp.mul_vec(&sigma.cols[a], &sigma.cols[b]));
            if r > worst.0 {
                worst = (r, (a, b));
            }
        }
    }
    let label = |k: usize| format!("{}⊗δ_{}", k / n, k % n);
    let c = rep.record("sigma_product", "σ(ab) = σ(a)σ(b) on all basis pairs", worst.0);
    if worst.0 > opts.tol {
        c.detail = Some(format!("worst pair ({}, {})", label(worst.1 .0), label(worst.1 .1)));
    }

    let dd = [dsp.clone(), dsp.clone()];
    let mut worst = (0.0f64, 0);
    for a in 0..n * n {
        let lhs = Tensor::element(&dpr.space, &[(a, ONE)]).split_leg(0, &dpr.coproduct)?.map_leg(0, &sigma)?.map_leg(1, &sigma)?;
        let rhs = Tensor::element(dsp, &sigma.cols[a]).split_leg(0, &dbl.coproduct)?;
        let r = lhs.retag(&dd)?.diff(&rhs)?;
        if r > worst.0 {
            worst = (r, a);
        }
    }
    let c = rep.record("sigma_coproduct", "(σ⊗σ)(Δ(a)) = Δ_D(σ(a)) on all basis elements", worst.0);
    if worst.0 > opts.tol {
        c.detail = Some(format!("worst element {}", label(worst.1)));
    }
    let mut we: f64 = 0.0;
    for a in 0..n * n {
        we = we.max((crate::algebra::evaluate(&dbl.counit, &sigma.cols[a]) - dpr.counit[a]).norm());
    }
    rep.record("sigma_counit", "ε_D(σ(a)) = ε(a)", we);
    Ok((dpr, rep))
}

/// Coefficient of e⊗δ_t in (x⊗1)², for each t.
pub fn square_coefficients(dpr: &DprDouble, x: usize) -> Vec<Scalar> {
    let n = dpr.group.order();
    let v = dpr.group_element(x);
    let sq = dpr.space.mul_vec(&v, &v);
    let e = dpr.group.identity;
    (0..n).map(|t| sq.iter().filter(|p| p.0 == dpr.index(e, t)).map(|p| p.1).sum()).collect()
}
