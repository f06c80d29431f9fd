use proptest::prelude::*;

use quasi_double::algebra::{Algebra, LinearMap, Space};
use quasi_double::dual::dual_of;
use quasi_double::fixtures::{cs3, cz2, fun_z2_omega, sweedler};
use quasi_double::scalar::{c, Scalar, ONE, PRUNE, ZERO};
use quasi_double::tensor::{LegMap, Tensor};

fn fun(n: usize) -> Space {
    Algebra::idempotents("Fun", n)
}

#[test]
fn unit_tensor_product_has_one_entry_per_unit_support() {
    let g = cz2().qha.space().clone();
    let u = Tensor::unit(&[g.clone()]).unwrap();
    let uu = u.otimes(&u).unwrap();
    assert_eq!(uu.nnz(), g.unit().len().pow(2));
    assert_eq!(uu.diff(&Tensor::unit(&[g.clone(), g]).unwrap()).unwrap(), 0.0);
    // Fun(Z₂) has unit δ_e + δ_x, so four entries
    let f = fun(2);
    let uf = Tensor::unit(&[f.clone(), f]).unwrap();
    assert_eq!(uf.nnz(), 4);
}

#[test]
fn basis_tensor_product() {
    let f = fun(2);
    let t = Tensor::basis(&f, 0).otimes(&Tensor::basis(&f, 1)).unwrap();
    assert_eq!(t.entries(), vec![(vec![0, 1], ONE)]);
}

#[test]
fn sparse_product_counts_all_pairs() {
    let f = fun(4);
    let a = Tensor::element(&f, &[(0, ONE), (1, c(2.0, 0.0)), (3, c(0.0, 1.0))]);
    let b = Tensor::element(&f, &[(1, ONE), (2, c(-1.0, 0.0))]);
    let t = a.otimes(&b).unwrap();
    assert_eq!(t.nnz(), 6);
    assert_eq!(t.get(&[3, 2]), c(0.0, -1.0));
}

#[test]
fn multiply_examples() {
    let g = cz2().qha.space().clone();
    let sig = [g.clone(), g.clone()];
    let t = Tensor::from_entries(&sig, vec![(vec![0, 1], c(2.0, 1.0)), (vec![1, 1], c(-3.0, 0.0))]).unwrap();
    assert_eq!(Tensor::unit(&sig).unwrap().mul(&t).unwrap().diff(&t).unwrap(), 0.0);
    let xx = Tensor::from_entries(&sig, vec![(vec![1, 1], ONE)]).unwrap();
    assert_eq!(xx.mul(&xx).unwrap().entries(), vec![(vec![0, 0], ONE)]);
    let f = fun(2);
    assert!(Tensor::basis(&f, 0).mul(&Tensor::basis(&f, 1)).unwrap().is_zero());
}

#[test]
fn multiply_rejects_mismatched_signatures() {
    let g = cz2().qha.space().clone();
    let f = fun(2);
    assert!(Tensor::basis(&g, 0).mul(&Tensor::basis(&f, 0)).is_err());
}

#[test]
fn embed_examples() {
    let f = fun(3);
    let sig3 = vec![f.clone(); 3];
    // R¹³
    let r = Tensor::basis(&f, 1).otimes(&Tensor::basis(&f, 2)).unwrap();
    let r13 = r.embed(&[0, 2], &sig3).unwrap();
    let want: Vec<(Vec<usize>, Scalar)> = (0..3).map(|m| (vec![1, m, 2], ONE)).collect();
    let mut got = r13.entries();
    got.sort_by(|a, b| a.0.cmp(&b.0));
    assert_eq!(got, want);
    // ψ³¹²: leg 1 in slot 3, leg 2 in slot 1, leg 3 in slot 2
    let psi = Tensor::from_entries(&sig3, vec![(vec![0, 1, 2], ONE)]).unwrap();
    let p = psi.embed(&[2, 0, 1], &sig3).unwrap();
    assert_eq!(p.entries(), vec![(vec![1, 2, 0], ONE)]);
    // scalar goes to the unit
    let s = Tensor::scalar(ONE).embed(&[], &sig3).unwrap();
    assert_eq!(s.diff(&Tensor::unit(&sig3).unwrap()).unwrap(), 0.0);
}

#[test]
fn embed_rejects_bad_positions() {
    let f = fun(2);
    let sig3 = vec![f.clone(); 3];
    let r = Tensor::unit(&[f.clone(), f.clone()]).unwrap();
    assert!(r.embed(&[0, 0], &sig3).is_err());
    assert!(r.embed(&[0, 3], &sig3).is_err());
}

#[test]
fn leg_maps() {
    let q = sweedler(0.5);
    let h = &q.qha;
    // (ε⊗id)(R) = 1
    let e = q.r.apply_to_leg(0, LegMap::Functional(&h.counit)).unwrap();
    assert!(e.diff(&h.one(1)).unwrap() < 1e-15);
    // Δ(1) = 1⊗1
    let d = h.one(1).apply_to_leg(0, LegMap::Coproduct(&h.coproduct)).unwrap();
    assert_eq!(d.diff(&h.one(2)).unwrap(), 0.0);
    let id = LinearMap::identity(h.space());
    assert_eq!(q.r.apply_to_leg(1, LegMap::Linear(&id)).unwrap().diff(&q.r).unwrap(), 0.0);
}

#[test]
fn pairing_examples() {
    for h in [cz2().qha, cs3().qha, fun_z2_omega()] {
        let d = dual_of(&h).unwrap();
        let n = h.dim();
        for mu in 0..n {
            for nu in 0..n {
                let p = Tensor::basis(&d.space, mu).pair(&h.basis(nu)).unwrap();
                assert_eq!(p, if mu == nu { ONE } else { ZERO });
            }
        }
        // ⟨ε̂ | a⟩ = ε(a)
        let eps_hat = Tensor::element(&d.space, d.space.unit());
        for a in 0..n {
            assert_eq!(eps_hat.pair(&h.basis(a)).unwrap(), h.counit[a]);
        }
    }
}

fn entries_strategy(dims: Vec<usize>) -> impl Strategy<Value = Vec<(Vec<usize>, (f64, f64))>> {
    let idx = dims.iter().map(|&d| 0..d).collect::<Vec<_>>();
    prop::collection::vec((idx, (-2.0f64..2.0, -2.0f64..2.0)), 0..8)
}

fn tensor(sig: &[Space], e: &[(Vec<usize>, (f64, f64))]) -> Tensor {
    Tensor::from_entries(sig, e.iter().map(|(i, (a, b))| (i.clone(), c(*a, *b)))).unwrap()
}

fn two_leg() -> Vec<Space> {
    vec![cs3().qha.space().clone(), sweedler(0.3).qha.space().clone()]
}

/// Product over a two-leg signature through basis products only.
fn dense_product(sig: &[Space], a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::zero(sig).unwrap();
    for (i, x) in a.entries() {
        for (j, y) in b.entries() {
            for (k0, u) in sig[0].basis_product(i[0], j[0]) {
                for (k1, v) in sig[1].basis_product(i[1], j[1]) {
                    out.add_entry(&[k0, k1], x * y * u * v).unwrap();
                }
            }
        }
    }
    out
}

proptest! {
    #[test]
    fn multiply_matches_basis_products(a in entries_strategy(vec![6, 4]), b in entries_strategy(vec![6, 4])) {
        let sig = two_leg();
        let (ta, tb) = (tensor(&sig, &a), tensor(&sig, &b));
        prop_assert!(ta.mul(&tb).unwrap().diff(&dense_product(&sig, &ta, &tb)).unwrap() < 1e-12);
    }

    #[test]
    fn multiply_is_associative(a in entries_strategy(vec![6, 4]), b in entries_strategy(vec![6, 4]), x in entries_strategy(vec![6, 4])) {
        let sig = two_leg();
        let (ta, tb, tx) = (tensor(&sig, &a), tensor(&sig, &b), tensor(&sig, &x));
        let l = ta.mul(&tb).unwrap().mul(&tx).unwrap();
        let r = ta.mul(&tb.mul(&tx).unwrap()).unwrap();
        prop_assert!(l.diff(&r).unwrap() < 1e-10);
    }

    #[test]
    fn disjoint_embeddings_commute(a in entries_strategy(vec![6, 6]), b in entries_strategy(vec![6])) {
        let g = cs3().qha.space().clone();
        let sig3 = vec![g.clone(); 3];
        let ta = tensor(&[g.clone(), g.clone()], &a).embed(&[2, 0], &sig3).unwrap();
        let tb = tensor(&[g.clone()], &b).embed(&[1], &sig3).unwrap();
        prop_assert!(ta.mul(&tb).unwrap().diff(&tb.mul(&ta).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn coproduct_then_counit_is_identity(a in entries_strategy(vec![4, 4])) {
        let q = sweedler(0.3);
        let h = &q.qha;
        let t = tensor(&h.sig(2), &a);
        let d = h.delta_at(&t, 1).unwrap();
        prop_assert!(h.eps_at(&d, 1).unwrap().diff(&t).unwrap() < 1e-12);
        prop_assert!(h.eps_at(&d, 2).unwrap().diff(&t).unwrap() < 1e-12);
    }

    #[test]
    fn no_entry_below_prune(a in entries_strategy(vec![6, 4]), b in entries_strategy(vec![6, 4])) {
        let sig = two_leg();
        let p = tensor(&sig, &a).mul(&tensor(&sig, &b)).unwrap();
        let s = p.sub(&p).unwrap();
        prop_assert!(s.is_zero());
        prop_assert!(p.entries().iter().all(|(_, v)| v.norm() >= PRUNE));
    }
}
