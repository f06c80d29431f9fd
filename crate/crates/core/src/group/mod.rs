//! Finite groups, normalized 3-cocycles, Fun(G)^ω and the explicit twisted double.

mod cocycle;
mod dpr;

pub use cocycle::{verify_cocycle, ThreeCocycle};
pub use dpr::{dpr_double, sigma_check, sigma_map, square_coefficients, DprDouble};

use crate::algebra::{Algebra, Coproduct, LinearMap};
use crate::error::{Error, Result};
use crate::quasi_hopf::QuasiHopf;
use crate::scalar::{ONE, ZERO};
use crate::tensor::Tensor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validate a multiplication table; reports the first broken law.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("group table must be square and nonempty".into()));
        }
        if let Some((a, b)) = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| table[a][b] >= n) {
            return Err(Error::Parse(format!("table entry ({a},{b}) out of range")));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Parse(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Parse("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::Parse(format!("element {a} has no inverse")))?;
        }
        Ok(FiniteGroup { name: name.to_string(), table, identity, inverse })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(&format!("Z{n}"), table).expect("cyclic group")
    }

    /// S₃ with elements listed as permutations of {0,1,2} in lexicographic order.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Self::from_table("S3", table).expect("S3")
    }

    /// Sign of each element of [`FiniteGroup::symmetric3`], as indices into Z₂.
    pub fn s3_sign() -> Vec<usize> {
        vec![0, 1, 1, 0, 0, 1]
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
    pub fn conj(&self, x: usize, g: usize) -> usize {
        // x⁻¹ g x
        self.mul(self.mul(self.inv(x), g), x)
    }

    /// Element labels agree with Z_n addition.
    pub fn is_standard_cyclic(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == (a + b) % n))
    }

    pub fn is_homomorphism(&self, to: &FiniteGroup, f: &[usize]) -> bool {
        f.len() == self.order()
            && (0..self.order()).all(|a| (0..self.order()).all(|b| f[self.mul(a, b)] == to.mul(f[a], f[b])))
    }
}

/// ℂ[G] with R = 1⊗1 available through [`QuasiHopf::trivially_braided`].
pub fn group_algebra(g: &FiniteGroup) -> QuasiHopf {
    let n = g.order();
    let table = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| vec![(g.mul(a, b), ONE)]).collect();
    let space = Algebra::from_table(&format!("C[{}]", g.name), n, table, vec![(g.identity, ONE)]).expect("group table");
    let cop = Coproduct::new(space.clone(), (0..n).map(|a| vec![(a, a, ONE)]).collect()).unwrap();
    let s = LinearMap::new(space.clone(), space.clone(), (0..n).map(|a| vec![(g.inv(a), ONE)]).collect()).unwrap();
    let phi = Tensor::unit(&vec![space.clone(); 3]).unwrap();
    let unit = space.unit().clone();
    QuasiHopf::new(&format!("C[{}]", g.name), space, cop, vec![ONE; n], phi.clone(), Some(phi), s, unit.clone(), unit)
        .expect("group algebra")
}

/// Fun(G) with φ = Σ ω(g,h,k) δ_g⊗δ_h⊗δ_k, α = 1, β = Σ ω(g⁻¹,g,g⁻¹) δ_g.
pub fn fun_qha(g: &FiniteGroup, w: &ThreeCocycle) -> Result<QuasiHopf> {
    let n = g.order();
    if w.order() != n {
        return Err(Error::Signature("cocycle and group orders differ".into()));
    }
    let space = Algebra::idempotents(&format!("Fun({})", g.name), n);
    let images = (0..n).map(|x| (0..n).map(|k| (k, g.mul(g.inv(k), x), ONE)).collect()).collect();
    let cop = Coproduct::new(space.clone(), images)?;
    let mut counit = vec![ZERO; n];
    counit[g.identity] = ONE;
    let s = LinearMap::new(space.clone(), space.clone(), (0..n).map(|x| vec![(g.inv(x), ONE)]).collect())?;
    let sig = vec![space.clone(); 3];
    let mut entries = Vec::new();
    let mut inv_entries = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let v = w.get(a, b, c);
                entries.push((vec![a, b, c], v));
                inv_entries.push((vec![a, b, c], ONE / v));
            }
        }
    }
    let phi = Tensor::from_entries(&sig, entries)?;
    let phi_inv = Tensor::from_entries(&sig, inv_entries)?;
    let beta = (0..n).map(|x| (x, w.get(g.inv(x), x, g.inv(x)))).collect();
    let name = if w.is_trivial() { format!("Fun({})", g.name) } else { format!("Fun({})^{}", g.name, w.name) };
    QuasiHopf::new(&name, space.clone(), cop, counit, phi, Some(phi_inv), s, space.unit().clone(), beta)
}
