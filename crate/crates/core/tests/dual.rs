use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quasi_double::dual::{dual_of, verify_dual};
use quasi_double::fixtures::{cs3, cz2, fun_s3_sign_omega, fun_z2_omega, sweedler};
use quasi_double::quasi_hopf::{apply_twist, random_twist, QuasiHopf};
use quasi_double::scalar::{Scalar, ONE};
use quasi_double::tensor::Tensor;

fn e(i: usize) -> Vec<(usize, Scalar)> {
    vec![(i, ONE)]
}

fn fixtures() -> Vec<QuasiHopf> {
    vec![cz2().qha, cs3().qha, fun_z2_omega(), fun_s3_sign_omega(), sweedler(0.3).qha]
}

#[test]
fn verify_dual_passes_on_fixtures() {
    for h in fixtures() {
        let d = dual_of(&h).unwrap();
        let rep = verify_dual(&h, &d, 1e-9).unwrap();
        assert!(rep.passed(), "{}: {:?}", h.name, rep.failures());
    }
}

#[test]
fn evaluation_functionals_of_fun_g_are_grouplike() {
    let h = fun_s3_sign_omega();
    let d = dual_of(&h).unwrap();
    for g in 0..h.dim() {
        let dg = Tensor::basis(&d.space, g).split_leg(0, &d.coproduct).unwrap();
        assert_eq!(dg.entries(), vec![(vec![g, g], ONE)]);
    }
}

#[test]
fn dual_product_of_fun_z2_omega_is_the_group_law() {
    // Δ(δ_g) = Σ_k δ_k⊗δ_{k⁻¹g} carries no cocycle factor
    let h = fun_z2_omega();
    let d = dual_of(&h).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(d.mul(&e(a), &e(b)), e((a + b) % 2));
        }
    }
}

#[test]
fn dual_antipode_pairs_with_s() {
    let h = cz2().qha;
    let d = dual_of(&h).unwrap();
    for mu in 0..2 {
        for a in 0..2 {
            let l = Tensor::element(&d.space, &d.s_hat.apply(&e(mu))).pair(&h.basis(a)).unwrap();
            let r = Tensor::basis(&d.space, mu).pair(&h.el(&h.s.apply(&e(a)))).unwrap();
            assert_eq!(l, r);
        }
    }
}

#[test]
fn arrow_examples() {
    let h = fun_z2_omega();
    let d = dual_of(&h).unwrap();
    let one = h.space().unit().clone();
    for mu in 0..2 {
        assert_eq!(d.left_arrow(&one, &e(mu)), e(mu));
        assert_eq!(d.right_arrow(&e(mu), &one), e(mu));
    }
    // δ_x ⇀ e^x = e^x ⟨e^x | δ_x⟩
    assert_eq!(d.left_arrow(&e(1), &e(1)), e(1));
    assert!(d.left_arrow(&e(0), &e(1)).is_empty());
}

#[test]
fn twisted_coproduct_gives_nonassociative_dual() {
    // on a commutative algebra F Δ F⁻¹ = Δ, so the example needs ℂ[S₃]
    let h = cs3().qha;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (f, fi) = random_twist(&h, &mut rng, 0.5).unwrap();
    let t = apply_twist(&h, &f, &fi).unwrap();
    let d = dual_of(&t).unwrap();
    let rep = verify_dual(&t, &d, 1e-9).unwrap();
    assert!(rep.passed(), "{:?}", rep.failures());
    let defect: f64 = rep.get("dual_associativity_defect").unwrap().detail.as_ref().unwrap().parse().unwrap();
    assert!(defect > 1e-6);
    // the untwisted dual, and that of the commutative Fun(Z₂)^ω, are associative
    let d0 = dual_of(&h).unwrap();
    let rep0 = verify_dual(&h, &d0, 1e-9).unwrap();
    let defect0: f64 = rep0.get("dual_associativity_defect").unwrap().detail.as_ref().unwrap().parse().unwrap();
    assert_eq!(defect0, 0.0);
    let z = fun_z2_omega();
    let (f, fi) = random_twist(&z, &mut rng, 0.5).unwrap();
    let tz = apply_twist(&z, &f, &fi).unwrap();
    let rz = verify_dual(&tz, &dual_of(&tz).unwrap(), 1e-9).unwrap();
    assert!(rz.passed());
    let dz: f64 = rz.get("dual_associativity_defect").unwrap().detail.as_ref().unwrap().parse().unwrap();
    assert!(dz < 1e-12);
}
