//! Sparse tensors over ordered products of algebras.
//!
//! Each leg carries its algebra. Multi-indices are packed row-major into a
//! `u64` key.

use rustc_hash::FxHashMap;

use crate::algebra::{LinearMap, Coproduct, Mult, Space, SparseVec};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, ONE, PRUNE, ZERO};

#[derive(Clone, Debug)]
pub struct Tensor {
    legs: Vec<Space>,
    strides: Vec<u64>,
    entries: FxHashMap<u64, Scalar>,
}

/// What `apply_to_leg` does to one leg.
pub enum LegMap<'a> {
    Linear(&'a LinearMap),
    /// Splits the leg into two adjacent legs.
    Coproduct(&'a Coproduct),
    /// Removes the leg by evaluating a functional on it.
    Functional(&'a [Scalar]),
}

/// A factor of one output slot of [`Tensor::contract`].
#[derive(Clone, Copy)]
pub enum Factor<'a> {
    Leg(usize),
    Map(usize, &'a LinearMap),
    Elem(&'a [(usize, Scalar)]),
}

/// One output leg of a contraction: the ordered product of its factors.
pub struct Slot<'a> {
    pub space: Space,
    pub factors: Vec<Factor<'a>>,
}

impl<'a> Slot<'a> {
    pub fn new(space: &Space, factors: Vec<Factor<'a>>) -> Self {
        Slot { space: space.clone(), factors }
    }
}

fn strides_for(legs: &[Space]) -> Result<Vec<u64>> {
    let mut strides = vec![1u64; legs.len()];
    let mut acc: u64 = 1;
    for k in (0..legs.len()).rev() {
        strides[k] = acc;
        acc = acc.checked_mul(legs[k].dim() as u64).ok_or(Error::Overflow(legs.len()))?;
    }
    Ok(strides)
}

fn same_signature(a: &[Space], b: &[Space]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.id() == y.id())
}

fn sig_string(legs: &[Space]) -> String {
    legs.iter().map(|l| l.name().to_string()).collect::<Vec<_>>().join("⊗")
}

impl Tensor {
    pub fn zero(legs: &[Space]) -> Result<Tensor> {
        Ok(Tensor { legs: legs.to_vec(), strides: strides_for(legs)?, entries: FxHashMap::default() })
    }

    pub fn scalar(v: Scalar) -> Tensor {
        let mut entries = FxHashMap::default();
        if v.norm() >= PRUNE {
            entries.insert(0, v);
        }
        Tensor { legs: vec![], strides: vec![], entries }
    }

    pub fn from_entries<I, V>(legs: &[Space], it: I) -> Result<Tensor>
    where
        I: IntoIterator<Item = (V, Scalar)>,
        V: AsRef<[usize]>,
    {
        let mut t = Tensor::zero(legs)?;
        for (idx, v) in it {
            t.add_entry(idx.as_ref(), v)?;
        }
        t.prune();
        Ok(t)
    }

    pub fn element(space: &Space, v: &[(usize, Scalar)]) -> Tensor {
        let mut t = Tensor::zero(std::slice::from_ref(space)).expect("one leg always encodes");
        for &(i, x) in v {
            assert!(i < space.dim(), "element index out of range");
            *t.entries.entry(i as u64).or_insert(ZERO) += x;
        }
        t.prune();
        t
    }

    pub fn basis(space: &Space, i: usize) -> Tensor {
        Tensor::element(space, &[(i, ONE)])
    }

    pub fn unit(legs: &[Space]) -> Result<Tensor> {
        let mut t = Tensor::scalar(ONE);
        for l in legs {
            t = t.otimes(&Tensor::element(l, l.unit()))?;
        }
        Ok(t)
    }

    pub fn legs(&self) -> &[Space] {
        &self.legs
    }
    pub fn rank(&self) -> usize {
        self.legs.len()
    }
    pub fn space(&self, k: usize) -> &Space {
        &self.legs[k]
    }
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn key(&self, idx: &[usize]) -> Result<u64> {
        if idx.len() != self.rank() {
            return Err(Error::Signature(format!("index of length {} for rank {}", idx.len(), self.rank())));
        }
        let mut k = 0u64;
        for (l, &i) in idx.iter().enumerate() {
            if i >= self.legs[l].dim() {
                return Err(Error::Signature(format!("index {i} out of range on leg {l}")));
            }
            k += i as u64 * self.strides[l];
        }
        Ok(k)
    }

    #[inline]
    fn decode_into(&self, key: u64, out: &mut [usize]) {
        for l in 0..self.legs.len() {
            out[l] = ((key / self.strides[l]) % self.legs[l].dim() as u64) as usize;
        }
    }

    pub fn decode(&self, key: u64) -> Vec<usize> {
        let mut v = vec![0; self.rank()];
        self.decode_into(key, &mut v);
        v
    }

    pub fn add_entry(&mut self, idx: &[usize], v: Scalar) -> Result<()> {
        let k = self.key(idx)?;
        *self.entries.entry(k).or_insert(ZERO) += v;
        Ok(())
    }

    pub fn get(&self, idx: &[usize]) -> Scalar {
        self.key(idx).ok().and_then(|k| self.entries.get(&k).cloned()).unwrap_or(ZERO)
    }

    /// Entries in key order.
    pub fn entries(&self) -> Vec<(Vec<usize>, Scalar)> {
        let mut keys: Vec<_> = self.entries.iter().map(|(&k, &v)| (k, v)).collect();
        keys.sort_by_key(|p| p.0);
        keys.into_iter().map(|(k, v)| (self.decode(k), v)).collect()
    }

    fn raw_sorted(&self) -> Vec<(u64, Scalar)> {
        let mut keys: Vec<_> = self.entries.iter().map(|(&k, &v)| (k, v)).collect();
        keys.sort_by_key(|p| p.0);
        keys
    }

    /// Coefficients of a one-leg tensor.
    pub fn as_vec(&self) -> SparseVec {
        assert_eq!(self.rank(), 1, "as_vec needs a one-leg tensor");
        self.raw_sorted().into_iter().map(|(k, v)| (k as usize, v)).collect()
    }

    pub fn scalar_value(&self) -> Scalar {
        assert_eq!(self.rank(), 0, "scalar_value needs a rank-zero tensor");
        self.entries.get(&0).cloned().unwrap_or(ZERO)
    }

    pub fn prune(&mut self) {
        self.entries.retain(|_, v| v.norm() >= PRUNE);
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    fn check_same(&self, other: &Tensor, what: &str) -> Result<()> {
        if !same_signature(&self.legs, &other.legs) {
            return Err(Error::Signature(format!("{what}: {} vs {}", sig_string(&self.legs), sig_string(&other.legs))));
        }
        Ok(())
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same(other, "add")?;
        let mut out = self.clone();
        for (&k, &v) in &other.entries {
            *out.entries.entry(k).or_insert(ZERO) += v;
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.add(&other.scale(-ONE))
    }

    pub fn scale(&self, s: Scalar) -> Tensor {
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            *v *= s;
        }
        out.prune();
        out
    }

    /// Max-abs entrywise difference.
    pub fn diff(&self, other: &Tensor) -> Result<f64> {
        self.check_same(other, "compare")?;
        let mut worst: f64 = 0.0;
        for (k, v) in &self.entries {
            let w = other.entries.get(k).cloned().unwrap_or(ZERO);
            worst = worst.max((v - w).norm());
        }
        for (k, w) in &other.entries {
            if !self.entries.contains_key(k) {
                worst = worst.max(w.norm());
            }
        }
        Ok(worst)
    }

    pub fn otimes(&self, other: &Tensor) -> Result<Tensor> {
        let mut legs = self.legs.clone();
        legs.extend(other.legs.iter().cloned());
        let mut out = Tensor::zero(&legs)?;
        let shift: u64 = other.legs.iter().map(|l| l.dim() as u64).product();
        out.entries.reserve(self.nnz() * other.nnz());
        for (&ka, &va) in &self.entries {
            for (&kb, &vb) in &other.entries {
                *out.entries.entry(ka * shift + kb).or_insert(ZERO) += va * vb;
            }
        }
        out.prune();
        Ok(out)
    }

    /// Leg-wise product in the tensor product algebra.
    pub fn mul(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same(other, "multiply")?;
        let r = self.rank();
        let mut out = Tensor::zero(&self.legs)?;
        if r == 0 {
            let v = self.entries.get(&0).cloned().unwrap_or(ZERO) * other.entries.get(&0).cloned().unwrap_or(ZERO);
            return Ok(Tensor::scalar(v));
        }
        // Join on the coordinates that must agree for a nonzero product.
        let mut jradix = vec![0u64; r];
        let mut jr = 1u64;
        let mut any_join = false;
        for l in (0..r).rev() {
            let sz = match self.legs[l].mult() {
                Mult::Idempotent => self.legs[l].dim() as u64,
                Mult::MatrixUnits(n) => *n as u64,
                Mult::Table(_) => 0,
            };
            if sz > 0 {
                any_join = true;
                jradix[l] = jr;
                jr = jr.saturating_mul(sz);
            }
        }
        let left_j = |idx: &[usize]| -> u64 {
            let mut k = 0;
            for l in 0..r {
                match self.legs[l].mult() {
                    Mult::Idempotent => k += idx[l] as u64 * jradix[l],
                    Mult::MatrixUnits(n) => k += (idx[l] % n) as u64 * jradix[l],
                    Mult::Table(_) => {}
                }
            }
            k
        };
        let right_j = |idx: &[usize]| -> u64 {
            let mut k = 0;
            for l in 0..r {
                match self.legs[l].mult() {
                    Mult::Idempotent => k += idx[l] as u64 * jradix[l],
                    Mult::MatrixUnits(n) => k += (idx[l] / n) as u64 * jradix[l],
                    Mult::Table(_) => {}
                }
            }
            k
        };
        let a = self.raw_sorted();
        let b = other.raw_sorted();
        let mut bdec = vec![0usize; b.len() * r];
        for (n, (k, _)) in b.iter().enumerate() {
            other.decode_into(*k, &mut bdec[n * r..(n + 1) * r]);
        }
        let mut groups: FxHashMap<u64, Vec<usize>> = FxHashMap::default();
        for n in 0..b.len() {
            let key = if any_join { right_j(&bdec[n * r..(n + 1) * r]) } else { 0 };
            groups.entry(key).or_default().push(n);
        }
        let mut ia = vec![0usize; r];
        let mut prods: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); r];
        let mut pos = vec![0usize; r];
        for &(ka, va) in &a {
            self.decode_into(ka, &mut ia);
            let key = if any_join { left_j(&ia) } else { 0 };
            let Some(list) = groups.get(&key) else { continue };
            'pairs: for &n in list {
                let ib = &bdec[n * r..(n + 1) * r];
                let vb = b[n].1;
                for l in 0..r {
                    prods[l].clear();
                    let p = &mut prods[l];
                    self.legs[l].for_product(ia[l], ib[l], |k, v| p.push((k, v)));
                    if prods[l].is_empty() {
                        continue 'pairs;
                    }
                }
                let base = va * vb;
                pos.iter_mut().for_each(|p| *p = 0);
                'odo: loop {
                    let mut key = 0u64;
                    let mut coef = base;
                    for l in 0..r {
                        let (k, v) = prods[l][pos[l]];
                        key += k as u64 * out.strides[l];
                        coef *= v;
                    }
                    *out.entries.entry(key).or_insert(ZERO) += coef;
                    let mut l = r;
                    while l > 0 {
                        l -= 1;
                        pos[l] += 1;
                        if pos[l] < prods[l].len() {
                            continue 'odo;
                        }
                        pos[l] = 0;
                    }
                    break;
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// Product of several tensors, left to right.
    pub fn product(factors: &[&Tensor]) -> Result<Tensor> {
        let mut it = factors.iter();
        let first = it.next().ok_or_else(|| Error::Precondition("empty product".into()))?;
        let mut acc = (*first).clone();
        for f in it {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }

    /// Reorder legs: leg `k` of the result is leg `order[k]` of `self`.
    pub fn permute(&self, order: &[usize]) -> Result<Tensor> {
        let r = self.rank();
        let mut seen = vec![false; r];
        if order.len() != r {
            return Err(Error::Signature("permutation length".into()));
        }
        for &o in order {
            if o >= r || seen[o] {
                return Err(Error::Signature(format!("not a permutation: {order:?}")));
            }
            seen[o] = true;
        }
        let legs: Vec<Space> = order.iter().map(|&o| self.legs[o].clone()).collect();
        let mut out = Tensor::zero(&legs)?;
        let mut idx = vec![0; r];
        for (&k, &v) in &self.entries {
            self.decode_into(k, &mut idx);
            let mut key = 0;
            for (n, &o) in order.iter().enumerate() {
                key += idx[o] as u64 * out.strides[n];
            }
            out.entries.insert(key, v);
        }
        Ok(out)
    }

    /// Place leg `k` at `positions[k]` of a tensor over `target`, with units elsewhere.
    pub fn embed(&self, positions: &[usize], target: &[Space]) -> Result<Tensor> {
        let r = self.rank();
        if positions.len() != r {
            return Err(Error::Signature("embed positions length".into()));
        }
        let mut used = vec![false; target.len()];
        for (k, &p) in positions.iter().enumerate() {
            if p >= target.len() || used[p] {
                return Err(Error::Signature(format!("bad embedding positions {positions:?}")));
            }
            if target[p].id() != self.legs[k].id() {
                return Err(Error::Signature(format!(
                    "embedding leg {k} ({}) into slot {p} ({})",
                    self.legs[k].name(),
                    target[p].name()
                )));
            }
            used[p] = true;
        }
        let rest: Vec<usize> = (0..target.len()).filter(|p| !used[*p]).collect();
        let units = Tensor::unit(&rest.iter().map(|&p| target[p].clone()).collect::<Vec<_>>())?;
        let big = self.otimes(&units)?;
        let mut order = vec![0; target.len()];
        for (k, &p) in positions.iter().enumerate() {
            order[p] = k;
        }
        for (n, &p) in rest.iter().enumerate() {
            order[p] = r + n;
        }
        big.permute(&order)
    }

    /// Swap in new spaces of the same dimensions.
    pub fn retag(&self, legs: &[Space]) -> Result<Tensor> {
        if legs.len() != self.rank() || legs.iter().zip(&self.legs).any(|(a, b)| a.dim() != b.dim()) {
            return Err(Error::Signature("retag dimensions".into()));
        }
        Ok(Tensor { legs: legs.to_vec(), strides: self.strides.clone(), entries: self.entries.clone() })
    }

    fn check_leg(&self, leg: usize) -> Result<()> {
        if leg >= self.rank() {
            return Err(Error::Leg { leg, rank: self.rank() });
        }
        Ok(())
    }

    pub fn apply_to_leg(&self, leg: usize, map: LegMap<'_>) -> Result<Tensor> {
        match map {
            LegMap::Linear(m) => self.map_leg(leg, m),
            LegMap::Coproduct(c) => self.split_leg(leg, c),
            LegMap::Functional(f) => self.eval_leg(leg, f),
        }
    }

    pub fn map_leg(&self, leg: usize, m: &LinearMap) -> Result<Tensor> {
        self.check_leg(leg)?;
        if m.domain.id() != self.legs[leg].id() {
            return Err(Error::Signature(format!("map from {} applied to leg {}", m.domain.name(), self.legs[leg].name())));
        }
        let mut legs = self.legs.clone();
        legs[leg] = m.codomain.clone();
        let mut out = Tensor::zero(&legs)?;
        let mut idx = vec![0; self.rank()];
        for (&k, &v) in &self.entries {
            self.decode_into(k, &mut idx);
            let base = k - idx[leg] as u64 * self.strides[leg];
            let base = rekey(base, &self.strides, &out.strides, &idx, leg);
            for &(j, w) in &m.cols[idx[leg]] {
                *out.entries.entry(base + j as u64 * out.strides[leg]).or_insert(ZERO) += v * w;
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn split_leg(&self, leg: usize, c: &Coproduct) -> Result<Tensor> {
        self.check_leg(leg)?;
        if c.space.id() != self.legs[leg].id() {
            return Err(Error::Signature(format!("coproduct of {} applied to leg {}", c.space.name(), self.legs[leg].name())));
        }
        let mut legs = self.legs.clone();
        legs.insert(leg + 1, c.space.clone());
        let mut out = Tensor::zero(&legs)?;
        let r = self.rank();
        let mut idx = vec![0; r];
        for (&k, &v) in &self.entries {
            self.decode_into(k, &mut idx);
            let mut base = 0u64;
            for l in 0..r {
                if l < leg {
                    base += idx[l] as u64 * out.strides[l];
                } else if l > leg {
                    base += idx[l] as u64 * out.strides[l + 1];
                }
            }
            for &(j1, j2, w) in &c.images[idx[leg]] {
                let key = base + j1 as u64 * out.strides[leg] + j2 as u64 * out.strides[leg + 1];
                *out.entries.entry(key).or_insert(ZERO) += v * w;
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn eval_leg(&self, leg: usize, f: &[Scalar]) -> Result<Tensor> {
        self.check_leg(leg)?;
        if f.len() != self.legs[leg].dim() {
            return Err(Error::Signature("functional length".into()));
        }
        let mut legs = self.legs.clone();
        legs.remove(leg);
        let mut out = Tensor::zero(&legs)?;
        let r = self.rank();
        let mut idx = vec![0; r];
        for (&k, &v) in &self.entries {
            self.decode_into(k, &mut idx);
            let w = f[idx[leg]];
            if w == ZERO {
                continue;
            }
            let mut key = 0u64;
            for l in 0..r {
                if l < leg {
                    key += idx[l] as u64 * out.strides[l];
                } else if l > leg {
                    key += idx[l] as u64 * out.strides[l - 1];
                }
            }
            *out.entries.entry(key).or_insert(ZERO) += v * w;
        }
        out.prune();
        Ok(out)
    }

    /// Coefficient slice at basis index `i` of `leg`.
    pub fn slice(&self, leg: usize, i: usize) -> Result<Tensor> {
        self.check_leg(leg)?;
        let mut f = vec![ZERO; self.legs[leg].dim()];
        f[i] = ONE;
        self.eval_leg(leg, &f)
    }

    /// Duality pairing with a tensor over the dual spaces.
    pub fn pair(&self, other: &Tensor) -> Result<Scalar> {
        if self.rank() != other.rank() {
            return Err(Error::Signature("pairing rank".into()));
        }
        for (a, b) in self.legs.iter().zip(&other.legs) {
            let ok = a.dim() == b.dim() && (a.dual_of() == Some(b.id()) || b.dual_of() == Some(a.id()));
            if !ok {
                return Err(Error::Signature(format!("cannot pair {} with {}", a.name(), b.name())));
            }
        }
        let mut s = ZERO;
        for (k, v) in self.raw_sorted() {
            if let Some(w) = other.entries.get(&k) {
                s += v * w;
            }
        }
        Ok(s)
    }

    /// Multilinear contraction. Every leg of `self` is consumed exactly once;
    /// each slot multiplies its factors in order inside its own algebra.
    pub fn contract(&self, slots: &[Slot<'_>]) -> Result<Tensor> {
        let r = self.rank();
        let mut used = vec![false; r];
        for (s, slot) in slots.iter().enumerate() {
            for f in &slot.factors {
                let (leg, dom, cod) = match f {
                    Factor::Leg(l) => (Some(*l), None, slot.space.clone()),
                    Factor::Map(l, m) => (Some(*l), Some(m.domain.clone()), m.codomain.clone()),
                    Factor::Elem(v) => {
                        if v.iter().any(|p| p.0 >= slot.space.dim()) {
                            return Err(Error::Signature(format!("constant out of range in slot {s}")));
                        }
                        (None, None, slot.space.clone())
                    }
                };
                if cod.id() != slot.space.id() {
                    return Err(Error::Signature(format!("slot {s}: factor lands in {}, slot is {}", cod.name(), slot.space.name())));
                }
                if let Some(l) = leg {
                    self.check_leg(l)?;
                    if used[l] {
                        return Err(Error::Signature(format!("leg {l} used twice")));
                    }
                    used[l] = true;
                    let want = dom.unwrap_or_else(|| slot.space.clone());
                    if want.id() != self.legs[l].id() {
                        return Err(Error::Signature(format!(
                            "slot {s}: leg {l} is {}, factor expects {}",
                            self.legs[l].name(),
                            want.name()
                        )));
                    }
                }
            }
        }
        if let Some(l) = used.iter().position(|u| !u) {
            return Err(Error::Signature(format!("leg {l} not consumed")));
        }
        let legs: Vec<Space> = slots.iter().map(|s| s.space.clone()).collect();
        let mut out = Tensor::zero(&legs)?;
        let slot_legs: Vec<Vec<usize>> = slots
            .iter()
            .map(|s| {
                s.factors
                    .iter()
                    .filter_map(|f| match f {
                        Factor::Leg(l) | Factor::Map(l, _) => Some(*l),
                        Factor::Elem(_) => None,
                    })
                    .collect()
            })
            .collect();
        let mut caches: Vec<FxHashMap<u64, SparseVec>> = vec![FxHashMap::default(); slots.len()];
        let mut idx = vec![0; r];
        let mut vecs: Vec<SparseVec> = vec![Vec::new(); slots.len()];
        let mut pos = vec![0usize; slots.len()];
        let ns = slots.len();
        for (k, v) in self.raw_sorted() {
            self.decode_into(k, &mut idx);
            let mut empty = false;
            for s in 0..ns {
                let ck = slot_legs[s].iter().fold(0u64, |acc, &l| acc * self.legs[l].dim() as u64 + idx[l] as u64);
                let vec = caches[s].entry(ck).or_insert_with(|| {
                    let sp = &slots[s].space;
                    let mut acc: SparseVec = sp.unit().clone();
                    for f in &slots[s].factors {
                        let fv: SparseVec = match f {
                            Factor::Leg(l) => vec![(idx[*l], ONE)],
                            Factor::Map(l, m) => m.cols[idx[*l]].clone(),
                            Factor::Elem(e) => e.to_vec(),
                        };
                        acc = sp.mul_vec(&acc, &fv);
                        if acc.is_empty() {
                            break;
                        }
                    }
                    acc
                });
                if vec.is_empty() {
                    empty = true;
                    break;
                }
                vecs[s] = vec.clone();
            }
            if empty {
                continue;
            }
            if ns == 0 {
                *out.entries.entry(0).or_insert(ZERO) += v;
                continue;
            }
            pos.iter_mut().for_each(|p| *p = 0);
            'odo: loop {
                let mut key = 0u64;
                let mut coef = v;
                for s in 0..ns {
                    let (j, w) = vecs[s][pos[s]];
                    key += j as u64 * out.strides[s];
                    coef *= w;
                }
                *out.entries.entry(key).or_insert(ZERO) += coef;
                let mut s = ns;
                while s > 0 {
                    s -= 1;
                    pos[s] += 1;
                    if pos[s] < vecs[s].len() {
                        continue 'odo;
                    }
                    pos[s] = 0;
                }
                break;
            }
        }
        out.prune();
        Ok(out)
    }
}

fn rekey(base: u64, old: &[u64], new: &[u64], idx: &[usize], skip: usize) -> u64 {
    if old == new {
        return base;
    }
    let mut k = 0;
    for l in 0..idx.len() {
        if l != skip {
            k += idx[l] as u64 * new[l];
        }
    }
    k
}

/// Shorthand for building contraction slots.
pub fn leg<'a>(l: usize) -> Factor<'a> {
    Factor::Leg(l)
}
pub fn mapped(l: usize, m: &LinearMap) -> Factor<'_> {
    Factor::Map(l, m)
}
pub fn konst(v: &[(usize, Scalar)]) -> Factor<'_> {
    Factor::Elem(v)
}
