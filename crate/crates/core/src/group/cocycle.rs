use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::{root_of_unity, Scalar, ONE};

use super::FiniteGroup;

#[derive(Clone, Debug)]
pub struct ThreeCocycle {
    pub name: String,
    n: usize,
    values: Vec<Scalar>,
}

impl ThreeCocycle {
    /// Dense table indexed `g·n² + h·n + k`. Checks unit modulus and normalization.
    pub fn from_values(name: &str, g: &FiniteGroup, values: Vec<Scalar>) -> Result<Self> {
        let n = g.order();
        if values.len() != n * n * n {
            return Err(Error::Parse(format!("cocycle table has {} values, want {}", values.len(), n * n * n)));
        }
        let w = ThreeCocycle { name: name.to_string(), n, values };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = w.get(a, b, c);
                    if (v.norm() - 1.0).abs() > 1e-9 {
                        return Err(Error::Parse(format!("ω({a},{b},{c}) is not of unit modulus")));
                    }
                    let e = g.identity;
                    if (a == e || b == e || c == e) && (v - ONE).norm() > 1e-9 {
                        return Err(Error::Parse(format!("ω({a},{b},{c}) ≠ 1 although an argument is the identity")));
                    }
                }
            }
        }
        Ok(w)
    }

    /// Table without load-time validation (for negative controls).
    pub fn unchecked(name: &str, n: usize, values: Vec<Scalar>) -> Self {
        assert_eq!(values.len(), n * n * n);
        ThreeCocycle { name: name.to_string(), n, values }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        let n = g.order();
        ThreeCocycle { name: "1".into(), n, values: vec![ONE; n * n * n] }
    }

    /// ω_p(a,b,c) = exp(2πi·p·a·⌊(b+c)/n⌋/n) on Z_n.
    pub fn cyclic_standard(g: &FiniteGroup, p: usize) -> Result<Self> {
        if !g.is_standard_cyclic() {
            return Err(Error::Precondition("standard family needs Z_n with additive labels".into()));
        }
        let n = g.order();
        let mut values = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let carry = (b + c) / n;
                    values.push(root_of_unity((p * a * carry) as f64 / n as f64));
                }
            }
        }
        Self::from_values(&format!("w{p}"), g, values)
    }

    /// ω ∘ (f×f×f) for a homomorphism f: G → H.
    pub fn pullback(&self, g: &FiniteGroup, target: &FiniteGroup, f: &[usize]) -> Result<Self> {
        if !g.is_homomorphism(target, f) {
            return Err(Error::Precondition("pullback along a non-homomorphism".into()));
        }
        let n = g.order();
        let mut values = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    values.push(self.get(f[a], f[b], f[c]));
                }
            }
        }
        Self::from_values(&format!("{}∘f", self.name), g, values)
    }

    pub fn order(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> Scalar {
        self.values[(a * self.n + b) * self.n + c]
    }
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }
    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| (v - ONE).norm() < 1e-12)
    }
}

pub fn verify_cocycle(g: &FiniteGroup, w: &ThreeCocycle, tol: f64) -> Report {
    let mut rep = Report::new(&format!("{} on {}", w.name, g.name), tol);
    let n = g.order();
    let anchor = "ω(x,y,z) ω(g,xy,z) ω(g,x,y) = ω(gx,y,z) ω(g,x,yz)";
    if w.order() != n {
        rep.fail("cocycle_identity", anchor, "order mismatch");
        return rep;
    }
    let e = g.identity;
    let mut norm: f64 = 0.0;
    let mut modulus: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let v = w.get(a, b, c);
                modulus = modulus.max((v.norm() - 1.0).abs());
                if a == e || b == e || c == e {
                    norm = norm.max((v - ONE).norm());
                }
            }
        }
    }
    rep.record("cocycle_unit_modulus", "|ω(g,h,k)| = 1", modulus);
    rep.record("cocycle_normalized", "ω(g,h,k) = 1 if g, h or k = e", norm);
    let mut worst: f64 = 0.0;
    let mut first: Option<(usize, usize, usize, usize)> = None;
    for p in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let l = w.get(x, y, z) * w.get(p, g.mul(x, y), z) * w.get(p, x, y);
                    let r = w.get(g.mul(p, x), y, z) * w.get(p, x, g.mul(y, z));
                    let d = (l - r).norm();
                    if d > tol && first.is_none() {
                        first = Some((p, x, y, z));
                    }
                    worst = worst.max(d);
                }
            }
        }
    }
    let c = rep.record("cocycle_identity", anchor, worst);
    if let Some((p, x, y, z)) = first {
        c.detail = Some(format!("first violation at (g,x,y,z) = ({p},{x},{y},{z})"));
    }
    rep
}
