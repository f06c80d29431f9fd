use quasi_double::double::{build_double, verify_double};
use quasi_double::group::*;
use quasi_double::quasi_hopf::{verify_quasi_hopf, VerifyOptions};
use quasi_double::report::{Report, Verdict};
use quasi_double::scalar::{c, root_of_unity, Scalar, ONE};
use quasi_double::Error;

const TOL: f64 = 1e-9;

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn assert_pass(rep: &Report) {
    let bad: Vec<String> = rep.failures().iter().map(|c| format!("{} ({:?}) {:?}", c.name, c.residual, c.detail)).collect();
    assert!(bad.is_empty(), "{}: {bad:?}", rep.subject);
}

fn z2_with(w_xxx: Scalar) -> ThreeCocycle {
    let mut v = vec![ONE; 8];
    v[7] = w_xxx;
    ThreeCocycle::unchecked("w", 2, v)
}

/// δω over all quadruples, evaluated from the definition.
fn coboundary_defect(g: &FiniteGroup, w: &ThreeCocycle) -> f64 {
    let n = g.order();
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let v = w.get(a, x, y) / w.get(g.mul(a, x), y, z) * w.get(a, g.mul(x, y), z) / w.get(a, x, g.mul(y, z)) * w.get(x, y, z);
                    worst = worst.max((v - ONE).norm());
                }
            }
        }
    }
    worst
}

#[test]
fn cocycle_examples() {
    let z2 = FiniteGroup::cyclic(2);
    assert_pass(&verify_cocycle(&z2, &ThreeCocycle::trivial(&z2), TOL));
    let minus = z2_with(-ONE);
    assert_eq!(coboundary_defect(&z2, &minus), 0.0);
    assert_pass(&verify_cocycle(&z2, &minus, TOL));
    let bad = z2_with(c(0.0, 1.0));
    assert!(coboundary_defect(&z2, &bad) > 0.5);
    let rep = verify_cocycle(&z2, &bad, TOL);
    let chk = rep.get("cocycle_identity").unwrap();
    assert_eq!(chk.verdict, Verdict::Fail);
    assert!(chk.detail.as_ref().unwrap().starts_with("first violation at (g,x,y,z) = "));
    assert!(chk.anchor.contains("ω(g,xy,z)"));
}

#[test]
fn standard_family_is_a_cocycle_for_small_orders() {
    for n in 1..=6 {
        let g = FiniteGroup::cyclic(n);
        for p in 0..n {
            let w = ThreeCocycle::cyclic_standard(&g, p).unwrap();
            assert_pass(&verify_cocycle(&g, &w, TOL));
            assert!(coboundary_defect(&g, &w) < 1e-12);
        }
    }
}

#[test]
fn fun_qha_examples() {
    let z2 = FiniteGroup::cyclic(2);
    let h = fun_qha(&z2, &ThreeCocycle::trivial(&z2)).unwrap();
    assert!(h.beta_t().diff(&h.one(1)).unwrap() < 1e-15);
    assert_pass(&verify_quasi_hopf(&h, opts()));
    let h = fun_qha(&z2, &ThreeCocycle::cyclic_standard(&z2, 1).unwrap()).unwrap();
    assert!(h.beta_t().diff(&h.el(&[(0, ONE), (1, -ONE)])).unwrap() < 1e-15);
    let z4 = FiniteGroup::cyclic(4);
    for p in 0..4 {
        let rep = verify_quasi_hopf(&fun_qha(&z4, &ThreeCocycle::cyclic_standard(&z4, p).unwrap()).unwrap(), opts());
        assert_pass(&rep);
        assert!(rep.get("pentagon").unwrap().residual.unwrap() < 1e-12);
    }
}

fn perm_index(p: [usize; 3]) -> usize {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]].iter().position(|q| *q == p).unwrap()
}

#[test]
fn dpr_commutation_on_s3() {
    // (e⊗δ_g)(x⊗1) = x⊗δ_{x⁻¹gx}, g = (01), x = (012)
    let s3 = FiniteGroup::symmetric3();
    let (g, x) = (perm_index([1, 0, 2]), perm_index([1, 2, 0]));
    let xinv = perm_index([2, 0, 1]);
    let comp = |a: [usize; 3], b: [usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
    let conj = perm_index(comp(comp([2, 0, 1], [1, 0, 2]), [1, 2, 0]));
    assert_eq!(s3.mul(s3.mul(xinv, g), x), conj);
    for w in [ThreeCocycle::trivial(&s3), ThreeCocycle::cyclic_standard(&FiniteGroup::cyclic(2), 1).unwrap().pullback(&s3, &FiniteGroup::cyclic(2), &FiniteGroup::s3_sign()).unwrap()] {
        let d = dpr_double(&s3, &w).unwrap();
        let lhs = d.space.mul_vec(&[(d.index(s3.identity, g), ONE)], &d.group_element(x));
        assert_eq!(lhs.len(), 1);
        assert_eq!(lhs[0].0, d.index(x, conj));
        assert!((lhs[0].1 - ONE).norm() < 1e-15);
    }
}

#[test]
fn dpr_square_on_z2() {
    let z2 = FiniteGroup::cyclic(2);
    let w = ThreeCocycle::cyclic_standard(&z2, 1).unwrap();
    let d = dpr_double(&z2, &w).unwrap();
    // c(x,x,t) = ω(x,xtx⁻¹,x) / (ω(x²t x⁻², x, x)·ω(x,x,t)) = 1 at t = e, −1 at t = x
    let want = [ONE, -ONE];
    let sq = square_coefficients(&d, 1);
    for t in 0..2 {
        let oracle = w.get(1, t, 1) / (w.get(t, 1, 1) * w.get(1, 1, t));
        assert!((oracle - want[t]).norm() < 1e-12);
        assert!((sq[t] - want[t]).norm() < 1e-12);
    }
    let v = d.group_element(1);
    let mut p = d.space.mul_vec(&v, &v);
    p.sort_by_key(|q| q.0);
    assert_eq!(p.len(), 2);
    assert_eq!((p[0].0, p[1].0), (d.index(0, 0), d.index(0, 1)));
    assert!((p[0].1 - ONE).norm() < 1e-12 && (p[1].1 + ONE).norm() < 1e-12);
}

#[test]
fn dpr_trivial_cocycle_group_like() {
    let z2 = FiniteGroup::cyclic(2);
    let d = dpr_double(&z2, &ThreeCocycle::trivial(&z2)).unwrap();
    let x = quasi_double::tensor::Tensor::element(&d.space, &d.group_element(1));
    let dx = x.split_leg(0, &d.coproduct).unwrap();
    assert!(dx.diff(&x.otimes(&x).unwrap()).unwrap() < 1e-15);
}

#[test]
fn sigma_check_agrees() {
    let z2 = FiniteGroup::cyclic(2);
    let z4 = FiniteGroup::cyclic(4);
    let s3 = FiniteGroup::symmetric3();
    let cases = vec![
        (z2.clone(), ThreeCocycle::trivial(&z2)),
        (z2.clone(), ThreeCocycle::cyclic_standard(&z2, 1).unwrap()),
        (z4.clone(), ThreeCocycle::cyclic_standard(&z4, 1).unwrap()),
        (z4.clone(), ThreeCocycle::cyclic_standard(&z4, 2).unwrap()),
        (s3.clone(), ThreeCocycle::cyclic_standard(&z2, 1).unwrap().pullback(&s3, &z2, &FiniteGroup::s3_sign()).unwrap()),
    ];
    for (g, w) in cases {
        let (_, rep) = sigma_check(&g, &w, opts()).unwrap();
        assert_pass(&rep);
        for n in ["sigma_product", "sigma_coproduct", "sigma_counit", "dpr_associative"] {
            assert!(rep.get(n).unwrap().residual.unwrap() <= TOL, "{n}");
        }
    }
}

#[test]
fn coboundary_changed_cocycle_still_passes() {
    // ω′ = ω·∂c for the 2-cochain c(x,x) = i
    let z2 = FiniteGroup::cyclic(2);
    let w = ThreeCocycle::cyclic_standard(&z2, 1).unwrap();
    let cc = |a: usize, b: usize| if a == 1 && b == 1 { c(0.0, 1.0) } else { ONE };
    let mut vals = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for k in 0..2 {
                let d = cc(b, k) * cc(a, (b + k) % 2) / (cc((a + b) % 2, k) * cc(a, b));
                vals.push(w.get(a, b, k) * d);
            }
        }
    }
    let w2 = ThreeCocycle::from_values("w'", &z2, vals).unwrap();
    assert_pass(&verify_cocycle(&z2, &w2, TOL));
    for om in [&w, &w2] {
        let h = fun_qha(&z2, om).unwrap();
        assert_pass(&verify_quasi_hopf(&h, opts()));
        assert_pass(&verify_double(&build_double(&h, opts()).unwrap(), opts()));
        let (_, rep) = sigma_check(&z2, om, opts()).unwrap();
        assert_pass(&rep);
    }
}

#[test]
fn broken_group_tables_are_rejected() {
    // a Latin square that is not associative
    let t = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
    match FiniteGroup::from_table("bad", t) {
        Err(Error::Parse(m)) => assert!(m.starts_with("associativity fails at ("), "{m}"),
        other => panic!("{other:?}"),
    }
    assert!(FiniteGroup::from_table("bad", vec![vec![0, 1], vec![1]]).is_err());
    assert!(ThreeCocycle::from_values("w", &FiniteGroup::cyclic(2), vec![root_of_unity(0.25); 8]).is_err());
}
