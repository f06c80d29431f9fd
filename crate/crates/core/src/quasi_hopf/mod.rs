//! Quasi-Hopf algebras: structure, axiom checks, derived elements, twists.

use std::ops::Deref;

use crate::algebra::{Coproduct, LinearMap, Space, SparseVec, evaluate};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, ONE};
use crate::tensor::Tensor;

mod derived;
mod r_matrix;
mod twist;
mod variants;
mod verify;

pub use derived::{derived_twists, pq_elements, DerivedElements};
pub use r_matrix::{antipode_image_check, first_form_inverse, r_inverse_formula, r_inverse_report};
pub use twist::{apply_twist, apply_twist_qt, random_twist, twisted_phi, twisted_phi_inv};
pub use variants::{variants, Variants};
pub use verify::{verify_quasi_hopf, verify_quasitriangular, VerifyOptions};

/// Algebra, coproduct, counit and reassociator.
#[derive(Clone, Debug)]
pub struct QuasiBialgebra {
    pub algebra: Space,
    pub coproduct: Coproduct,
    pub counit: Vec<Scalar>,
    pub phi: Tensor,
    pub phi_inv: Tensor,
}

#[derive(Clone, Debug)]
pub struct QuasiHopf {
    pub name: String,
    pub base: QuasiBialgebra,
    pub s: LinearMap,
    pub s_inv: LinearMap,
    pub alpha: SparseVec,
    pub beta: SparseVec,
}

#[derive(Clone, Debug)]
pub struct QuasiTriangular {
    pub qha: QuasiHopf,
    pub r: Tensor,
    pub r_inv: Tensor,
}

impl Deref for QuasiHopf {
    type Target = QuasiBialgebra;
    fn deref(&self) -> &QuasiBialgebra {
        &self.base
    }
}

impl Deref for QuasiTriangular {
    type Target = QuasiHopf;
    fn deref(&self) -> &QuasiHopf {
        &self.qha
    }
}

impl QuasiBialgebra {
    pub fn space(&self) -> &Space {
        &self.algebra
    }
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
    /// `k` copies of the algebra.
    pub fn sig(&self, k: usize) -> Vec<Space> {
        vec![self.algebra.clone(); k]
    }
    pub fn one(&self, k: usize) -> Tensor {
        Tensor::unit(&self.sig(k)).expect("small signature")
    }
    pub fn el(&self, v: &[(usize, Scalar)]) -> Tensor {
        Tensor::element(&self.algebra, v)
    }
    pub fn basis(&self, i: usize) -> Tensor {
        Tensor::basis(&self.algebra, i)
    }
    pub fn delta_at(&self, t: &Tensor, leg: usize) -> Result<Tensor> {
        t.split_leg(leg, &self.coproduct)
    }
    pub fn delta_op_at(&self, t: &Tensor, leg: usize) -> Result<Tensor> {
        let d = t.split_leg(leg, &self.coproduct)?;
        let mut order: Vec<usize> = (0..d.rank()).collect();
        order.swap(leg, leg + 1);
        d.permute(&order)
    }
    pub fn eps_at(&self, t: &Tensor, leg: usize) -> Result<Tensor> {
        t.eval_leg(leg, &self.counit)
    }
    pub fn delta(&self, a: &Tensor) -> Result<Tensor> {
        self.delta_at(a, 0)
    }
    pub fn eps(&self, v: &[(usize, Scalar)]) -> Scalar {
        evaluate(&self.counit, v)
    }
    /// Embed `t` along `positions` into `k` copies of the algebra.
    pub fn sup(&self, t: &Tensor, positions: &[usize], k: usize) -> Result<Tensor> {
        t.embed(positions, &self.sig(k))
    }
}

impl QuasiHopf {
    /// Assemble and derive `S⁻¹` (and `φ⁻¹` when not given).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        algebra: Space,
        coproduct: Coproduct,
        counit: Vec<Scalar>,
        phi: Tensor,
        phi_inv: Option<Tensor>,
        s: LinearMap,
        alpha: SparseVec,
        beta: SparseVec,
    ) -> Result<QuasiHopf> {
        let d = algebra.dim();
        if counit.len() != d {
            return Err(Error::Signature("counit length".into()));
        }
        if coproduct.space.id() != algebra.id() || s.domain.id() != algebra.id() || s.codomain.id() != algebra.id() {
            return Err(Error::Signature("structure maps must live on the algebra".into()));
        }
        let sig = vec![algebra.clone(); 3];
        if phi.legs().iter().zip(&sig).any(|(a, b)| a.id() != b.id()) || phi.rank() != 3 {
            return Err(Error::Signature("φ must lie in A⊗A⊗A".into()));
        }
        let phi_inv = match phi_inv {
            Some(p) => p,
            None => phi.inverse()?,
        };
        let s_inv = s.inverse()?;
        Ok(QuasiHopf {
            name: name.to_string(),
            base: QuasiBialgebra { algebra, coproduct, counit, phi, phi_inv },
            s,
            s_inv,
            alpha,
            beta,
        })
    }

    pub fn s_at(&self, t: &Tensor, leg: usize) -> Result<Tensor> {
        t.map_leg(leg, &self.s)
    }
    pub fn s_inv_at(&self, t: &Tensor, leg: usize) -> Result<Tensor> {
        t.map_leg(leg, &self.s_inv)
    }
    pub fn alpha_t(&self) -> Tensor {
        self.el(&self.alpha)
    }
    pub fn beta_t(&self) -> Tensor {
        self.el(&self.beta)
    }
    pub fn eps_alpha(&self) -> Scalar {
        self.eps(&self.alpha)
    }
    pub fn eps_beta(&self) -> Scalar {
        self.eps(&self.beta)
    }
    pub fn with_r(self, r: Tensor, r_inv: Option<Tensor>) -> Result<QuasiTriangular> {
        let r_inv = match r_inv {
            Some(x) => x,
            None => r.inverse()?,
        };
        Ok(QuasiTriangular { qha: self, r, r_inv })
    }
    pub fn trivially_braided(self) -> Result<QuasiTriangular> {
        let one = self.one(2);
        self.with_r(one.clone(), Some(one))
    }
}

impl Tensor {
    /// Two-sided inverse in the product algebra, by a dense linear solve.
    pub fn inverse(&self) -> Result<Tensor> {
        use nalgebra::{DMatrix, DVector};
        let legs = self.legs().to_vec();
        let n: usize = legs.iter().map(|l| l.dim()).product();
        if n > 2048 {
            return Err(Error::Precondition(format!("dense inverse over dimension {n} refused")));
        }
        let dims: Vec<usize> = legs.iter().map(|l| l.dim()).collect();
        let flat = |idx: &[usize]| idx.iter().zip(&dims).fold(0usize, |acc, (&i, &d)| acc * d + i);
        let mut m = DMatrix::<Scalar>::zeros(n, n);
        let mut idx = vec![0usize; legs.len()];
        for col in 0..n {
            let mut c = col;
            for l in (0..legs.len()).rev() {
                idx[l] = c % dims[l];
                c /= dims[l];
            }
            let b = Tensor::from_entries(&legs, [(idx.clone(), ONE)])?;
            for (k, v) in self.mul(&b)?.entries() {
                m[(flat(&k), col)] += v;
            }
        }
        let one = Tensor::unit(&legs)?;
        let mut rhs = DVector::zeros(n);
        for (k, v) in one.entries() {
            rhs[flat(&k)] += v;
        }
        let sol = crate::linalg::solve(&m, &rhs).ok_or_else(|| Error::Singular("tensor not invertible".into()))?;
        let mut out = Tensor::zero(&legs)?;
        for (col, v) in sol.iter().enumerate() {
            if v.norm() < crate::scalar::PRUNE {
                continue;
            }
            let mut c = col;
            for l in (0..legs.len()).rev() {
                idx[l] = c % dims[l];
                c /= dims[l];
            }
            out.add_entry(&idx, *v)?;
        }
        out.prune();
        if out.mul(self)?.diff(&one)? > 1e-8 {
            return Err(Error::Singular("tensor has no two-sided inverse".into()));
        }
        Ok(out)
    }
}
