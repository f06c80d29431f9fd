//! Finite-dimensional algebras given by structure constants, plus the
//! linear maps and coproducts that act on single tensor legs.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use nalgebra::DMatrix;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{Scalar, ONE, PRUNE, ZERO};

pub type SparseVec = Vec<(usize, Scalar)>;
pub type Space = Arc<Algebra>;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

#[derive(Clone, Debug)]
pub enum Mult {
    /// `table[i * dim + j]` is the product `e_i e_j`.
    Table(Vec<SparseVec>),
    /// `e_i e_j = δ_ij e_i`
    Idempotent,
    /// Matrix units `E_rc` of `End(C^n)`, index `r * n + c`.
    MatrixUnits(usize),
}

#[derive(Clone)]
pub struct Algebra {
    id: u64,
    name: String,
    dim: usize,
    mult: Mult,
    unit: SparseVec,
    dual_of: Option<u64>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({} #{} dim {})", self.name, self.id, self.dim)
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Algebra {
    pub fn from_table(name: &str, dim: usize, table: Vec<SparseVec>, unit: SparseVec) -> Result<Space> {
        if table.len() != dim * dim {
            return Err(Error::Signature(format!("table has {} entries, want {}", table.len(), dim * dim)));
        }
        Ok(Arc::new(Algebra {
            id: fresh_id(),
            name: name.to_string(),
            dim,
            mult: Mult::Table(table.into_iter().map(clean).collect()),
            unit: clean(unit),
            dual_of: None,
        }))
    }

    /// Build from `(i, j, k, c)` meaning `e_i e_j` has coefficient `c` at `e_k`.
    pub fn from_constants(name: &str, dim: usize, sc: &[(usize, usize, usize, Scalar)], unit: SparseVec) -> Result<Space> {
        let mut table = vec![Vec::new(); dim * dim];
        for &(i, j, k, v) in sc {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Parse(format!("structure constant index ({i},{j},{k}) out of range")));
            }
            table[i * dim + j].push((k, v));
        }
        Self::from_table(name, dim, table, unit)
    }

    /// Commutative algebra of orthogonal idempotents summing to one.
    pub fn idempotents(name: &str, dim: usize) -> Space {
        Arc::new(Algebra {
            id: fresh_id(),
            name: name.to_string(),
            dim,
            mult: Mult::Idempotent,
            unit: (0..dim).map(|i| (i, ONE)).collect(),
            dual_of: None,
        })
    }

    pub fn matrix_units(name: &str, n: usize) -> Space {
        Arc::new(Algebra {
            id: fresh_id(),
            name: name.to_string(),
            dim: n * n,
            mult: Mult::MatrixUnits(n),
            unit: (0..n).map(|i| (i * n + i, ONE)).collect(),
            dual_of: None,
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn mult(&self) -> &Mult {
        &self.mult
    }
    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }
    pub fn dual_of(&self) -> Option<u64> {
        self.dual_of
    }
    pub fn is_idempotent_basis(&self) -> bool {
        matches!(self.mult, Mult::Idempotent)
    }

    /// Copy with a fresh identity, marked as the linear dual of `of`.
    pub fn mark_dual(mut self, of: &Algebra) -> Space {
        self.id = fresh_id();
        self.dual_of = Some(of.id);
        Arc::new(self)
    }

    pub fn renamed(&self, name: &str) -> Space {
        let mut a = self.clone();
        a.id = fresh_id();
        a.name = name.to_string();
        Arc::new(a)
    }

    /// Visit the nonzero coefficients of `e_i e_j`.
    #[inline]
    pub fn for_product(&self, i: usize, j: usize, mut f: impl FnMut(usize, Scalar)) {
        match &self.mult {
            Mult::Table(t) => {
                for &(k, v) in &t[i * self.dim + j] {
                    f(k, v)
                }
            }
            Mult::Idempotent => {
                if i == j {
                    f(i, ONE)
                }
            }
            Mult::MatrixUnits(n) => {
                let (r, c1) = (i / n, i % n);
                let (r2, c2) = (j / n, j % n);
                if c1 == r2 {
                    f(r * n + c2, ONE)
                }
            }
        }
    }

    pub fn mul_vec(&self, a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: FxHashMap<usize, Scalar> = FxHashMap::default();
        for &(i, x) in a {
            for &(j, y) in b {
                let xy = x * y;
                self.for_product(i, j, |k, v| *acc.entry(k).or_insert(ZERO) += xy * v);
            }
        }
        finish(acc)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> SparseVec {
        let mut out = Vec::new();
        self.for_product(i, j, |k, v| out.push((k, v)));
        out
    }

    /// All products, as `(i, j, k, c)`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                self.for_product(i, j, |k, v| out.push((i, j, k, v)));
            }
        }
        out
    }

    /// Opposite multiplication on the same basis, as a new space.
    pub fn opposite(&self, name: &str) -> Space {
        let d = self.dim;
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                table.push(self.basis_product(j, i));
            }
        }
        Arc::new(Algebra {
            id: fresh_id(),
            name: name.to_string(),
            dim: d,
            mult: Mult::Table(table),
            unit: self.unit.clone(),
            dual_of: None,
        })
    }

    /// Largest associator entry over all basis triples.
    pub fn associativity_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let l = self.mul_vec(&ij, &[(k, ONE)]);
                    let jk = self.mul_vec(&[(j, ONE)], &[(k, ONE)]);
                    let r = self.mul_vec(&[(i, ONE)], &jk);
                    worst = worst.max(sparse_diff(&l, &r));
                }
            }
        }
        worst
    }

    /// Largest deviation from `1·x = x = x·1` over basis vectors.
    pub fn unit_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            let e = vec![(i, ONE)];
            worst = worst.max(sparse_diff(&self.mul_vec(&self.unit, &e), &e));
            worst = worst.max(sparse_diff(&self.mul_vec(&e, &self.unit), &e));
        }
        worst
    }

    /// Left-regular matrix of `x`: column `j` is `x e_j`.
    pub fn left_matrix(&self, x: &[(usize, Scalar)]) -> DMatrix<Scalar> {
        let d = self.dim;
        let mut m = DMatrix::zeros(d, d);
        for j in 0..d {
            for (k, v) in self.mul_vec(x, &[(j, ONE)]) {
                m[(k, j)] += v;
            }
        }
        m
    }

    pub fn inverse_of(&self, x: &[(usize, Scalar)]) -> Result<SparseVec> {
        let m = self.left_matrix(x);
        let mut u = nalgebra::DVector::zeros(self.dim);
        for &(i, v) in &self.unit {
            u[i] += v;
        }
        let sol = linalg::solve(&m, &u).ok_or_else(|| Error::Singular(format!("element of {} not invertible", self.name)))?;
        let y: SparseVec = clean(sol.iter().cloned().enumerate().collect());
        let check = self.mul_vec(&y, x);
        if sparse_diff(&check, &self.unit) > 1e-8 {
            return Err(Error::Singular(format!("element of {} has no two-sided inverse", self.name)));
        }
        Ok(y)
    }
}

pub fn clean(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|p| p.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|p| p.1.norm() >= PRUNE);
    out
}

pub(crate) fn finish(acc: FxHashMap<usize, Scalar>) -> SparseVec {
    let mut v: SparseVec = acc.into_iter().filter(|p| p.1.norm() >= PRUNE).collect();
    v.sort_by_key(|p| p.0);
    v
}

pub fn sparse_diff(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> f64 {
    let mut acc: FxHashMap<usize, Scalar> = FxHashMap::default();
    for &(i, x) in a {
        *acc.entry(i).or_insert(ZERO) += x;
    }
    for &(i, x) in b {
        *acc.entry(i).or_insert(ZERO) -= x;
    }
    acc.values().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn sparse_add(a: &[(usize, Scalar)], b: &[(usize, Scalar)], s: Scalar) -> SparseVec {
    let mut v: SparseVec = a.to_vec();
    v.extend(b.iter().map(|&(i, x)| (i, x * s)));
    clean(v)
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    clean(v.iter().cloned().enumerate().collect())
}

pub fn sparse_to_dense(v: &[(usize, Scalar)], dim: usize) -> Vec<Scalar> {
    let mut out = vec![ZERO; dim];
    for &(i, x) in v {
        out[i] += x;
    }
    out
}

/// Evaluate a functional (dense coefficients) on a sparse vector.
pub fn evaluate(f: &[Scalar], v: &[(usize, Scalar)]) -> Scalar {
    v.iter().map(|&(i, x)| f[i] * x).sum()
}

/// A linear map between algebras, stored by the images of basis vectors.
#[derive(Clone, Debug)]
pub struct LinearMap {
    pub domain: Space,
    pub codomain: Space,
    pub cols: Vec<SparseVec>,
}

impl LinearMap {
    pub fn new(domain: Space, codomain: Space, cols: Vec<SparseVec>) -> Result<Self> {
        if cols.len() != domain.dim() {
            return Err(Error::Signature(format!("linear map has {} columns, domain dim {}", cols.len(), domain.dim())));
        }
        if cols.iter().flatten().any(|p| p.0 >= codomain.dim()) {
            return Err(Error::Signature("linear map image index out of range".into()));
        }
        Ok(LinearMap { domain, codomain, cols: cols.into_iter().map(clean).collect() })
    }

    pub fn identity(s: &Space) -> Self {
        LinearMap { domain: s.clone(), codomain: s.clone(), cols: (0..s.dim()).map(|i| vec![(i, ONE)]).collect() }
    }

    pub fn apply(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: FxHashMap<usize, Scalar> = FxHashMap::default();
        for &(i, x) in v {
            for &(k, y) in &self.cols[i] {
                *acc.entry(k).or_insert(ZERO) += x * y;
            }
        }
        finish(acc)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &LinearMap) -> Result<LinearMap> {
        if other.domain.id() != self.codomain.id() {
            return Err(Error::Signature("composition of incompatible maps".into()));
        }
        Ok(LinearMap {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            cols: self.cols.iter().map(|c| other.apply(c)).collect(),
        })
    }

    pub fn to_dense(&self) -> DMatrix<Scalar> {
        let mut m = DMatrix::zeros(self.codomain.dim(), self.domain.dim());
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                m[(i, j)] += v;
            }
        }
        m
    }

    pub fn from_dense(domain: Space, codomain: Space, m: &DMatrix<Scalar>) -> Result<Self> {
        let cols = (0..m.ncols()).map(|j| dense_to_sparse(&m.column(j).iter().cloned().collect::<Vec<_>>())).collect();
        Self::new(domain, codomain, cols)
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        if self.domain.dim() != self.codomain.dim() {
            return Err(Error::Singular("non-square linear map".into()));
        }
        let inv = linalg::inverse(&self.to_dense()).ok_or_else(|| Error::Singular("linear map not invertible".into()))?;
        Self::from_dense(self.codomain.clone(), self.domain.clone(), &inv)
    }

    pub fn retarget(&self, domain: Space, codomain: Space) -> Result<LinearMap> {
        Self::new(domain, codomain, self.cols.clone())
    }
}

/// A coproduct-like map `A → A ⊗ A`, stored as `Δ(e_i) = Σ c e_j ⊗ e_k`.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub space: Space,
    pub images: Vec<Vec<(usize, usize, Scalar)>>,
}

impl Coproduct {
    pub fn new(space: Space, images: Vec<Vec<(usize, usize, Scalar)>>) -> Result<Self> {
        let d = space.dim();
        if images.len() != d || images.iter().flatten().any(|&(j, k, _)| j >= d || k >= d) {
            return Err(Error::Signature("coproduct does not match algebra dimension".into()));
        }
        let images = images
            .into_iter()
            .map(|im| {
                let mut acc: FxHashMap<(usize, usize), Scalar> = FxHashMap::default();
                for (j, k, v) in im {
                    *acc.entry((j, k)).or_insert(ZERO) += v;
                }
                let mut v: Vec<_> = acc.into_iter().filter(|p| p.1.norm() >= PRUNE).map(|((j, k), v)| (j, k, v)).collect();
                v.sort_by_key(|p| (p.0, p.1));
                v
            })
            .collect();
        Ok(Coproduct { space, images })
    }

    pub fn opposite(&self) -> Coproduct {
        Coproduct {
            space: self.space.clone(),
            images: self.images.iter().map(|im| im.iter().map(|&(j, k, v)| (k, j, v)).collect()).collect(),
        }
    }

    pub fn retarget(&self, space: Space) -> Result<Coproduct> {
        Coproduct::new(space, self.images.clone())
    }
}
