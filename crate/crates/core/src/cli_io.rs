//! File formats, fixture lookup and the pipelines behind the CLI commands.
//! Sparse records are `(i, j, k, re, im)` tuples; dense complex vectors are
//! `{re, im}` objects.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Coproduct, LinearMap, SparseVec};
use crate::double::{build_double, verify_double, DoubleAlgebra};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::group::{fun_qha, sigma_check, square_coefficients, verify_cocycle, DprDouble, FiniteGroup, ThreeCocycle};
use crate::monodromy::{monodromy_matrix, verify_monodromy};
use crate::quasi_hopf::{
    antipode_image_check, derived_twists, pq_elements, r_inverse_report, verify_quasi_hopf, verify_quasitriangular, QuasiHopf, QuasiTriangular,
    VerifyOptions,
};
use crate::report::Report;
use crate::scalar::{Scalar, DEFAULT_TOL};
use crate::tensor::Tensor;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Scalar> for Cx {
    fn from(c: Scalar) -> Self {
        Cx { re: c.re, im: c.im }
    }
}

impl From<Cx> for Scalar {
    fn from(c: Cx) -> Self {
        Scalar::new(c.re, c.im)
    }
}

pub type Rec1 = (usize, f64, f64);
pub type Rec2 = (usize, usize, f64, f64);
pub type Rec3 = (usize, usize, usize, f64, f64);

/// A quasi-Hopf algebra on a fixed basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraSpecFile {
    pub name: String,
    pub dimension: usize,
    /// e_i e_j has coefficient c at e_k.
    pub structure: Vec<Rec3>,
    pub unit: Vec<Rec1>,
    /// Δ(e_i) has coefficient c at e_j⊗e_k.
    pub coproduct: Vec<Rec3>,
    pub counit: Vec<Cx>,
    pub phi: Vec<Rec3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_inv: Option<Vec<Rec3>>,
    /// S(e_i) has coefficient c at e_j.
    pub antipode: Vec<Rec2>,
    pub alpha: Vec<Rec1>,
    pub beta: Vec<Rec1>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<Rec2>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_inv: Option<Vec<Rec2>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSpecFile {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleFamily {
    pub name: String,
    #[serde(default)]
    pub parameters: Vec<usize>,
}

/// Either a dense table ω(g,h,k) at g·n²+h·n+k, or a named family.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleSpecFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Cx>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<CocycleFamily>,
}

/// A loaded algebra with its R-matrix when one is given.
#[derive(Clone, Debug)]
pub struct LoadedAlgebra {
    pub qha: QuasiHopf,
    pub qt: Option<QuasiTriangular>,
}

impl From<QuasiTriangular> for LoadedAlgebra {
    fn from(q: QuasiTriangular) -> Self {
        LoadedAlgebra { qha: q.qha.clone(), qt: Some(q) }
    }
}

impl From<QuasiHopf> for LoadedAlgebra {
    fn from(h: QuasiHopf) -> Self {
        LoadedAlgebra { qha: h, qt: None }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let s = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&s)?)
}

fn check_range(what: &str, idx: &[usize], dim: usize) -> Result<()> {
    if let Some(i) = idx.iter().find(|&&i| i >= dim) {
        return Err(Error::Parse(format!("{what}: index {i} out of range for dimension {dim} (record {idx:?})")));
    }
    Ok(())
}

fn vec1(what: &str, recs: &[Rec1], dim: usize) -> Result<SparseVec> {
    recs.iter()
        .map(|&(i, re, im)| {
            check_range(what, &[i], dim)?;
            Ok((i, Scalar::new(re, im)))
        })
        .collect()
}

impl AlgebraSpecFile {
    /// Build the algebra; indices are range checked and the product must be
    /// associative and unital. The remaining axioms are left to the reports.
    pub fn build(&self) -> Result<LoadedAlgebra> {
        let d = self.dimension;
        let mut table = vec![Vec::new(); d * d];
        for &(i, j, k, re, im) in &self.structure {
            check_range("structure", &[i, j, k], d)?;
            table[i * d + j].push((k, Scalar::new(re, im)));
        }
        let unit = vec1("unit", &self.unit, d)?;
        let space = Algebra::from_table(&self.name, d, table, unit)?;
        let assoc = space.associativity_residual();
        if !(assoc <= DEFAULT_TOL) {
            return Err(Error::Parse(format!("product is not associative (residual {assoc:e})")));
        }
        let ur = space.unit_residual();
        if !(ur <= DEFAULT_TOL) {
            return Err(Error::Parse(format!("unit is not a two-sided unit (residual {ur:e})")));
        }
        let mut images = vec![Vec::new(); d];
        for &(i, j, k, re, im) in &self.coproduct {
            check_range("coproduct", &[i, j, k], d)?;
            images[i].push((j, k, Scalar::new(re, im)));
        }
        let coproduct = Coproduct::new(space.clone(), images)?;
        if self.counit.len() != d {
            return Err(Error::Parse(format!("counit has {} entries, want {d}", self.counit.len())));
        }
        let counit = self.counit.iter().map(|&c| c.into()).collect();
        let sig3 = vec![space.clone(); 3];
        let t3 = |what: &str, recs: &[Rec3]| -> Result<Tensor> {
            for r in recs {
                check_range(what, &[r.0, r.1, r.2], d)?;
            }
            Tensor::from_entries(&sig3, recs.iter().map(|&(i, j, k, re, im)| (vec![i, j, k], Scalar::new(re, im))))
        };
        let phi = t3("phi", &self.phi)?;
        let phi_inv = self.phi_inv.as_deref().map(|r| t3("phi_inv", r)).transpose()?;
        let mut cols = vec![Vec::new(); d];
        for &(i, j, re, im) in &self.antipode {
            check_range("antipode", &[i, j], d)?;
            cols[i].push((j, Scalar::new(re, im)));
        }
        let s = LinearMap::new(space.clone(), space.clone(), cols)?;
        let alpha = vec1("alpha", &self.alpha, d)?;
        let beta = vec1("beta", &self.beta, d)?;
        let qha = QuasiHopf::new(&self.name, space.clone(), coproduct, counit, phi, phi_inv, s, alpha, beta)?;
        let sig2 = vec![space.clone(); 2];
        let t2 = |what: &str, recs: &[Rec2]| -> Result<Tensor> {
            for r in recs {
                check_range(what, &[r.0, r.1], d)?;
            }
            Tensor::from_entries(&sig2, recs.iter().map(|&(i, j, re, im)| (vec![i, j], Scalar::new(re, im))))
        };
        let qt = match &self.r {
            Some(r) => {
                let r = t2("r", r)?;
                let r_inv = self.r_inv.as_deref().map(|x| t2("r_inv", x)).transpose()?;
                Some(qha.clone().with_r(r, r_inv)?)
            }
            None => None,
        };
        Ok(LoadedAlgebra { qha, qt })
    }

    /// Structure constants of a built algebra.
    pub fn export(h: &QuasiHopf, r: Option<(&Tensor, &Tensor)>) -> Self {
        let rec1 = |v: &SparseVec| v.iter().map(|&(i, c)| (i, c.re, c.im)).collect();
        let rec3 = |t: &Tensor| t.entries().into_iter().map(|(k, c)| (k[0], k[1], k[2], c.re, c.im)).collect();
        let rec2 = |t: &Tensor| t.entries().into_iter().map(|(k, c)| (k[0], k[1], c.re, c.im)).collect();
        let entries2 = |t: &Tensor| -> Vec<Rec2> {
            let mut v: Vec<Rec2> = rec2(t);
            v.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
            v
        };
        let sort3 = |mut v: Vec<Rec3>| {
            v.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
            v
        };
        AlgebraSpecFile {
            name: h.name.clone(),
            dimension: h.dim(),
            structure: h.space().structure_constants().into_iter().map(|(i, j, k, c)| (i, j, k, c.re, c.im)).collect(),
            unit: rec1(h.space().unit()),
            coproduct: h.coproduct.images.iter().enumerate().flat_map(|(i, im)| im.iter().map(move |&(j, k, c)| (i, j, k, c.re, c.im))).collect(),
            counit: h.counit.iter().map(|&c| c.into()).collect(),
            phi: sort3(rec3(&h.phi)),
            phi_inv: Some(sort3(rec3(&h.phi_inv))),
            antipode: h.s.cols.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&(j, v)| (i, j, v.re, v.im))).collect(),
            alpha: rec1(&h.alpha),
            beta: rec1(&h.beta),
            r: r.map(|(r, _)| entries2(r)),
            r_inv: r.map(|(_, ri)| entries2(ri)),
        }
    }
}

impl GroupSpecFile {
    pub fn build(&self) -> Result<FiniteGroup> {
        if self.table.len() != self.order {
            return Err(Error::Parse(format!("order {} but {} table rows", self.order, self.table.len())));
        }
        FiniteGroup::from_table(&self.name, self.table.clone())
    }
}

impl CocycleSpecFile {
    pub fn build(&self, g: &FiniteGroup) -> Result<ThreeCocycle> {
        match (&self.values, &self.family) {
            (Some(v), None) => ThreeCocycle::from_values(&self.name, g, v.iter().map(|&c| c.into()).collect()),
            (None, Some(f)) => family(g, &f.name, &f.parameters),
            _ => Err(Error::Parse("cocycle file needs exactly one of `values` or `family`".into())),
        }
    }
}

fn family(g: &FiniteGroup, name: &str, params: &[usize]) -> Result<ThreeCocycle> {
    match (name, params) {
        ("trivial", []) => Ok(ThreeCocycle::trivial(g)),
        ("cyclic_standard", [p]) => ThreeCocycle::cyclic_standard(g, *p),
        _ => Err(Error::Parse(format!("unknown cocycle family {name} with parameters {params:?}"))),
    }
}

/// Directory of the bundled fixture files.
pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn lookup(name: &str) -> Option<PathBuf> {
    let p = Path::new(name);
    if p.exists() {
        return Some(p.to_path_buf());
    }
    let f = fixture_dir().join(format!("{name}.json"));
    f.exists().then_some(f)
}

pub const BUILTIN_ALGEBRAS: &[&str] = &["cz2", "cs3", "h4", "fun_z2_omega", "fun_z4_omega", "fun_s3_omega"];

pub fn builtin_algebra(name: &str) -> Option<LoadedAlgebra> {
    Some(match name {
        "cz2" => fixtures::cz2().into(),
        "cs3" => fixtures::cs3().into(),
        "h4" => fixtures::sweedler(1.0).into(),
        "fun_z2_omega" => fixtures::fun_z2_omega().into(),
        "fun_z4_omega" => fixtures::fun_zn_omega(4, 1).ok()?.into(),
        "fun_s3_omega" => fixtures::fun_s3_sign_omega().into(),
        _ => return None,
    })
}

/// A built-in name, a bundled fixture name or a path to an algebra file.
pub fn load_algebra(name: &str) -> Result<LoadedAlgebra> {
    if let Some(p) = lookup(name) {
        return read_json::<AlgebraSpecFile>(&p)?.build();
    }
    builtin_algebra(name).ok_or_else(|| Error::Parse(format!("unknown algebra {name}; built-ins are {}", BUILTIN_ALGEBRAS.join(", "))))
}

/// `z2`, `z4`, `s3`, `zN`, a bundled fixture name or a path.
pub fn load_group(name: &str) -> Result<FiniteGroup> {
    if let Some(p) = lookup(name) {
        return read_json::<GroupSpecFile>(&p)?.build();
    }
    match name {
        "s3" => Ok(FiniteGroup::symmetric3()),
        _ => name
            .strip_prefix('z')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n > 0)
            .map(FiniteGroup::cyclic)
            .ok_or_else(|| Error::Parse(format!("unknown group {name}"))),
    }
}

/// `trivial`, `standard:p`, a bundled fixture name or a path.
pub fn load_cocycle(name: &str, g: &FiniteGroup) -> Result<ThreeCocycle> {
    if let Some(p) = lookup(name) {
        return read_json::<CocycleSpecFile>(&p)?.build(g);
    }
    if name == "trivial" {
        return Ok(ThreeCocycle::trivial(g));
    }
    match name.strip_prefix("standard:").and_then(|p| p.parse::<usize>().ok()) {
        Some(p) => ThreeCocycle::cyclic_standard(g, p),
        None => Err(Error::Parse(format!("unknown cocycle {name}"))),
    }
}

pub fn write_json<T: Serialize>(path: &Path, v: &T) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(v)?)?;
    Ok(())
}

/// The quasi-Hopf suite, the derived elements and, when R is given, the
/// quasitriangular suite with both forms of R⁻¹ and the antipode images of R.
pub fn verify_algebra(a: &LoadedAlgebra, opts: VerifyOptions) -> Report {
    let h = &a.qha;
    let mut rep = Report::new(&h.name, opts.tol);
    rep.absorb("qhopf", verify_quasi_hopf(h, opts));
    match derived_twists(h, opts) {
        Ok((d, r)) => {
            rep.absorb("derived", r);
            rep.absorb("pq", pq_elements(h, &d, opts));
            if let Some(q) = &a.qt {
                rep.absorb("qtri", verify_quasitriangular(q, opts));
                rep.absorb("r_inverse", r_inverse_report(q, &d, opts));
                rep.absorb("antipode_image", antipode_image_check(q, &d, opts));
            }
        }
        Err(e) => rep.fail("derived", "γ, δ, f, f⁻¹", &e.to_string()),
    }
    rep
}

/// Base suite, construction and the double's suite. A construction failure
/// is recorded in the report, which keeps the base checks that explain it.
pub fn double_pipeline(a: &LoadedAlgebra, opts: VerifyOptions) -> (Option<DoubleAlgebra>, Report) {
    let mut rep = Report::new(&format!("D({})", a.qha.name), opts.tol);
    rep.absorb("base", verify_quasi_hopf(&a.qha, opts));
    match build_double(&a.qha, opts) {
        Ok(d) => {
            rep.absorb("", verify_double(&d, opts));
            (Some(d), rep)
        }
        Err(e) => {
            rep.fail("build", "D(G) = Ĝ⋈G with Δ_D, ε_D, φ_D, S_D, α_D, β_D, R_D", &e.to_string());
            (None, rep)
        }
    }
}

/// Element labels for reports: `e` for the identity, `x` in a group of
/// order two, `g{i}` otherwise.
pub fn element_label(g: &FiniteGroup, i: usize) -> String {
    if i == g.identity {
        "e".into()
    } else if g.order() == 2 {
        "x".into()
    } else {
        format!("g{i}")
    }
}

pub fn twisted_pipeline(g: &FiniteGroup, w: &ThreeCocycle, opts: VerifyOptions) -> Result<(DprDouble, Report)> {
    let mut rep = Report::new(&format!("D^{}({})", w.name, g.name), opts.tol);
    let cocycle = verify_cocycle(g, w, opts.tol);
    let ok = cocycle.passed();
    rep.absorb("cocycle", cocycle);
    if !ok {
        return Err(Error::Precondition(format!("ω = {} is not a normalized 3-cocycle on {}", w.name, g.name)));
    }
    rep.absorb("base", verify_quasi_hopf(&fun_qha(g, w)?, opts));
    let (dpr, r) = sigma_check(g, w, opts)?;
    rep.absorb("", r);
    for x in (0..g.order()).filter(|&x| x != g.identity) {
        for (t, c) in square_coefficients(&dpr, x).into_iter().enumerate() {
            if c.norm() > opts.tol {
                let (lx, lt) = (element_label(g, x), element_label(g, t));
                let v = if c.im.abs() <= opts.tol { format!("{}", c.re) } else { format!("{} {:+}i", c.re, c.im) };
                rep.note(
                    &format!("square_{lx}_{lt}"),
                    "(x⊗1)² = Σ_t c(x,x,t)·(x²⊗δ_t)",
                    format!("({lx}⊗1)² coefficient at δ_{lt} = {}", v.replace('-', "−")),
                );
            }
        }
    }
    Ok((dpr, rep))
}

/// Monodromy relations for a base with an R-matrix; a base without one is
/// reported as skipped.
pub fn monodromy_pipeline(a: &LoadedAlgebra, opts: VerifyOptions) -> Result<Report> {
    let mut rep = Report::new(&a.qha.name, opts.tol);
    let Some(q) = &a.qt else {
        rep.skip("monodromy", "M = (id⊗i_D)(R^op)·D", "the base carries no R-matrix");
        return Ok(rep);
    };
    let d = build_double(&a.qha, opts)?;
    let md = monodromy_matrix(&d, &q.r)?;
    rep.absorb("", verify_monodromy(&d, &md, opts));
    Ok(rep)
}

/// Exit code for a pipeline outcome: 0 pass, 1 check failure, 2 I/O or parse error.
pub fn exit_code(r: &Result<Report>) -> i32 {
    match r {
        Ok(rep) if rep.passed() => 0,
        Ok(_) => 1,
        Err(Error::Io(_) | Error::Json(_) | Error::Parse(_)) => 2,
        Err(_) => 1,
    }
}
