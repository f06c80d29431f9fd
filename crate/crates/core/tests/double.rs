use quasi_double::double::*;
use quasi_double::error::Error;
use quasi_double::fixtures::{cs3, cz2, fun_s3_sign_omega, fun_z2_omega, fun_zn_omega, sweedler};
use quasi_double::group::{fun_qha, FiniteGroup, ThreeCocycle};
use quasi_double::quasi_hopf::{QuasiHopf, VerifyOptions};
use quasi_double::report::{Report, Verdict};
use quasi_double::scalar::{c, Scalar, ONE};
use quasi_double::tensor::Tensor;

const TOL: f64 = 1e-9;

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn assert_pass(rep: &Report) {
    let bad: Vec<String> = rep.failures().iter().map(|c| format!("{} ({:?}) {:?}", c.name, c.residual, c.detail)).collect();
    assert!(bad.is_empty(), "{}: {bad:?}", rep.subject);
}

fn residual(rep: &Report, name: &str) -> f64 {
    rep.get(name).unwrap_or_else(|| panic!("no check {name}")).residual.unwrap()
}

#[test]
fn every_fixture_double_passes_the_full_suite() {
    let bases: Vec<QuasiHopf> =
        vec![cz2().qha, cs3().qha, fun_z2_omega(), fun_zn_omega(4, 1).unwrap(), fun_s3_sign_omega(), sweedler(0.7).qha];
    for h in bases {
        let d = build_double(&h, opts()).unwrap();
        assert_eq!(d.d_space().dim(), h.dim() * h.dim());
        let rep = verify_double(&d, opts());
        assert_pass(&rep);
        // pentagon of φ_D and the quasi-YBE are evaluated, not skipped
        for n in ["qhopf.pentagon", "qtri.quasi_yang_baxter", "qtri.r_intertwines"] {
            assert_eq!(rep.get(n).unwrap().verdict, Verdict::Pass, "{n} on {}", h.name);
        }
    }
}

#[test]
fn group_double_has_the_classical_product() {
    // (e^μ⋈g)(e^ν⋈h) = δ_{μ, gνg⁻¹} e^μ⋈gh
    let g = FiniteGroup::symmetric3();
    let d = build_double(&cs3().qha, opts()).unwrap();
    let n = g.order();
    for (mu, a, nu, b) in (0..n.pow(4)).map(|k| (k / n.pow(3), (k / n.pow(2)) % n, (k / n) % n, k % n)) {
        let got = d.d_space().basis_product(d.index(mu, a), d.index(nu, b));
        let want: Vec<(usize, Scalar)> = if mu == g.mul(g.mul(a, nu), g.inv(a)) { vec![(d.index(mu, g.mul(a, b)), ONE)] } else { vec![] };
        assert_eq!(got, want, "({mu},{a})({nu},{b})");
    }
}

#[test]
fn double_of_fun_z2_with_trivial_cocycle() {
    // (e^x⋈1)² = ε̂⋈1, with 1 = δ_e + δ_x and ε̂ = e^e
    let d = build_double(&fun_zn_omega(2, 0).unwrap(), opts()).unwrap();
    let dsp = d.d_space();
    let ex: Vec<(usize, Scalar)> = (0..2).map(|i| (d.index(1, i), ONE)).collect();
    let want: Vec<(usize, Scalar)> = (0..2).map(|i| (d.index(0, i), ONE)).collect();
    let mut sq = dsp.mul_vec(&ex, &ex);
    sq.sort_by_key(|p| p.0);
    assert_eq!(sq, want);
    // commutative, like ℂ[Z₂×Z₂]
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(dsp.basis_product(a, b), dsp.basis_product(b, a));
        }
    }
}

#[test]
fn embedding_is_a_unital_subalgebra() {
    for h in [cs3().qha, fun_z2_omega(), sweedler(0.2).qha] {
        let d = build_double(&h, opts()).unwrap();
        let dsp = d.d_space();
        assert_eq!(d.embed(h.space().unit()), *dsp.unit());
        for a in 0..h.dim() {
            for b in 0..h.dim() {
                let l = dsp.mul_vec(&d.embed(&[(a, ONE)]), &d.embed(&[(b, ONE)]));
                let r = d.embed(&h.space().basis_product(a, b));
                assert!(quasi_double::algebra::sparse_diff(&l, &r) < 1e-15);
            }
        }
    }
}

#[test]
fn hopf_case_flip_and_inverse() {
    let h = cs3().qha;
    let d = build_double(&h, opts()).unwrap();
    // D = Σ e_μ ⊗ (e^μ⋈1)
    let mut want = Tensor::zero(&[h.space().clone(), d.d_space().clone()]).unwrap();
    for mu in 0..h.dim() {
        want.add_entry(&[mu, d.index(mu, 0)], ONE).unwrap();
    }
    assert_eq!(d.d.diff(&want).unwrap(), 0.0);
    // D⁻¹ = (S⊗id)(D)
    assert!(d.d_inv.diff(&h.s_at(&d.d, 0).unwrap()).unwrap() < TOL);
    assert_pass(&hopf_case_report(&d, opts()));
}

#[test]
fn twisted_double_structure_elements() {
    let h = fun_z2_omega();
    let d = build_double(&h, opts()).unwrap();
    let d3 = vec![d.d_space().clone(); 3];
    assert_eq!(d.qt.phi.diff(&d.lift(&h.phi, &[0, 1, 2], &d3).unwrap()).unwrap(), 0.0);
    // (ε⊗id)(D) = 1
    let e = h.eps_at(&d.d, 0).unwrap();
    assert!(e.diff(&Tensor::unit(&[d.d_space().clone()]).unwrap()).unwrap() < TOL);
    let flip = d_matrix_report(&d, opts());
    assert_pass(&flip);
    for n in ["d_normal", "d_flip", "d_coherence"] {
        assert!(residual(&flip, n) < TOL);
    }
    let inv = d_inverse_report(&d, opts());
    assert_pass(&inv);
    assert!(residual(&inv, "d_inverse") < TOL);
}

#[test]
fn eq_s1_on_double_of_s3() {
    let d = build_double(&cs3().qha, opts()).unwrap();
    let r = d_inverse_report(&d, opts());
    assert_pass(&r);
    assert!(residual(&r, "antipode_flip_alpha") < TOL);
}

#[test]
fn mu_is_a_bijection() {
    let d = build_double(&fun_z2_omega(), opts()).unwrap();
    let m = mu_matrix(&d);
    assert_eq!(m.nrows(), 4);
    assert_eq!(quasi_double::linalg::rank(&m, 1e-10), 4);
    let d4 = build_double(&fun_zn_omega(4, 1).unwrap(), opts()).unwrap();
    assert_eq!(quasi_double::linalg::rank(&mu_matrix(&d4), 1e-10), 16);
    let rep = mu_report(&d, opts());
    assert_pass(&rep);
    assert_eq!(rep.get("mu_unit").unwrap().detail.as_deref(), Some("ε(α) = 1 +0i"));
    // Hopf case: μ(e^μ⊗a) = D(e^μ)i_D(a)
    let d = build_double(&cs3().qha, opts()).unwrap();
    for mu in 0..6 {
        for a in 0..6 {
            let want = d.d_space().mul_vec(&d.d_of(mu), &d.embed(&[(a, ONE)]));
            assert_eq!(mu_map(&d, mu, &[(a, ONE)]), want);
        }
    }
}

#[test]
fn l_and_t_round_trip() {
    for h in [cs3().qha, fun_z2_omega(), fun_zn_omega(4, 1).unwrap()] {
        let d = build_double(&h, opts()).unwrap();
        let rep = lt_report(&d, opts());
        assert_pass(&rep);
        assert!(residual(&rep, "lt_round_trip") <= 1e-12);
        assert!(residual(&rep, "lt_equals_d") <= TOL);
    }
    // Hopf case: L = T
    let h = cz2().qha;
    let d = build_double(&h, opts()).unwrap();
    let l = lt_transform(&h, &d.derived, &d.i_d, &d.d).unwrap();
    assert_eq!(l.diff(&d.d).unwrap(), 0.0);
}

#[test]
fn left_right_isomorphism() {
    for h in [cz2().qha, fun_z2_omega(), cs3().qha, fun_zn_omega(4, 1).unwrap()] {
        let d = build_double(&h, opts()).unwrap();
        let (iso, rep) = left_right_iso(&d, opts()).unwrap();
        assert_pass(&rep);
        for n in ["iso_left_round_trip", "iso_right_round_trip"] {
            assert!(residual(&rep, n) <= 1e-12, "{n} on {}", h.name);
        }
        assert!(residual(&rep, "right_associative") <= TOL);
        assert_eq!(iso.right.dim(), d.d_space().dim());
    }
}

#[test]
fn hopf_case_coaction_and_omega_are_trivial() {
    let h = cs3().qha;
    let (c, rep) = two_sided_coaction(&h, opts()).unwrap();
    assert_pass(&rep);
    assert_eq!(c.phi.diff(&h.one(5)).unwrap(), 0.0);
    let derived = quasi_double::quasi_hopf::DerivedElements::compute(&h).unwrap();
    let (o, _) = omega_elements(&h, &c, &derived, opts()).unwrap();
    assert_eq!(o.omega.diff(&h.one(5)).unwrap(), 0.0);
    assert_eq!(o.omega_r.diff(&h.one(5)).unwrap(), 0.0);
}

#[test]
fn fun_z2_coaction_has_sign_entries() {
    let h = fun_z2_omega();
    let (c, rep) = two_sided_coaction(&h, opts()).unwrap();
    assert_pass(&rep);
    assert!(rep.get("coaction_coherence").unwrap().verdict == Verdict::Pass);
    let entries = c.phi.entries();
    assert!(entries.iter().all(|(_, v)| (v - ONE).norm() < 1e-12 || (v + ONE).norm() < 1e-12));
    assert!(entries.iter().any(|(_, v)| (v + ONE).norm() < 1e-12));
    let derived = quasi_double::quasi_hopf::DerivedElements::compute(&h).unwrap();
    let (_, rep) = omega_elements(&h, &c, &derived, opts()).unwrap();
    assert_pass(&rep);
    assert_eq!(residual(&rep, "omega_forms_agree"), 0.0);
}

#[test]
fn counit_of_alpha_must_be_one() {
    // (S, 2α, β/2) is still a valid antipode on ℂ[Z₂]
    let mut h = cz2().qha;
    h.alpha = vec![(0, c(2.0, 0.0))];
    h.beta = vec![(0, c(0.5, 0.0))];
    assert_pass(&quasi_double::quasi_hopf::verify_quasi_hopf(&h, opts()));
    match build_double(&h, opts()) {
        Err(Error::Precondition(m)) => assert!(m.contains("ε(α)")),
        other => panic!("expected a precondition error, got {:?}", other.map(|_| ())),
    }
}

#[test]
fn generic_flip_checks_reject_a_bad_candidate() {
    // T = 1⊗1 flips Δ only when Δ is cocommutative
    let g = FiniteGroup::symmetric3();
    let h = fun_qha(&g, &ThreeCocycle::trivial(&g)).unwrap();
    let d = build_double(&h, opts()).unwrap();
    let t = Tensor::unit(&[h.space().clone(), d.d_space().clone()]).unwrap();
    let [normal, flip, _] = flip_residuals(&h, &d.i_d, &t).unwrap();
    assert!(normal < TOL);
    assert!(flip > 0.5);
    let c3 = cs3().qha;
    let dc = build_double(&c3, opts()).unwrap();
    let t = Tensor::unit(&[c3.space().clone(), dc.d_space().clone()]).unwrap();
    assert!(flip_residuals(&c3, &dc.i_d, &t).unwrap().iter().all(|r| *r < TOL));
}
