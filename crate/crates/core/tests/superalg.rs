use num_traits::{One, Zero};
use proptest::prelude::*;
use superdirac::linalg::{q, q_frac, Q};
use superdirac::superalg::ops::{check_central, weyl_action_matrix};
use superdirac::superalg::structure::table_matrix;
use superdirac::superalg::*;

fn unit(g: usize) -> LinComb {
    LinComb::from([(g, Q::one())])
}

#[test]
fn jacobi_and_invariance_up_to_rank_three() {
    for n in 1..=3 {
        let s = build_structure(n).unwrap();
        for a in 0..s.dim() {
            for b in 0..s.dim() {
                for c in 0..s.dim() {
                    assert!(s.jacobi_residual(a, b, c).is_empty());
                }
            }
        }
    }
}

#[test]
fn alpha_is_a_homomorphism() {
    for n in 1..=2 {
        let s = build_structure(n).unwrap();
        let even: Vec<usize> = s.even_indices().collect();
        for &a in &even {
            for &b in &even {
                let lhs = alpha(&s, s.bracket(a, b)).unwrap();
                let rhs = alpha(&s, &unit(a)).unwrap().commutator(&alpha(&s, &unit(b)).unwrap());
                assert_eq!(lhs, rhs, "n={n} {} {}", s.generator(a).name, s.generator(b).name);
            }
        }
    }
}

#[test]
fn correspondence_table_round_trips() {
    for n in 1..=3 {
        let s = build_structure(n).unwrap();
        for g in s.even_indices().collect::<Vec<_>>() {
            let w = alpha(&s, &unit(g)).unwrap();
            let m = weyl_action_matrix(&w).expect("degree one action");
            assert_eq!(m, table_matrix(n, s.generator(g).kind));
            assert_eq!(m, s.nu(&unit(g)).unwrap());
        }
    }
}

#[test]
fn casimir_is_central_and_basis_independent() {
    for n in 1..=2 {
        let s = build_structure(n).unwrap();
        let alg = TensorAlgebra::new(&s);
        let omega = casimir(&alg).unwrap();
        // a rescaled and mixed homogeneous basis
        let even: Vec<usize> = s.even_indices().collect();
        let odd: Vec<usize> = s.odd_indices().collect();
        let mut basis = Vec::new();
        for (k, &g) in even.iter().enumerate() {
            let mut b = LinComb::from([(g, q(k as i64 + 2))]);
            if k + 1 < even.len() {
                b.insert(even[k + 1], q_frac(1, 3));
            }
            basis.push(b);
        }
        for (k, &g) in odd.iter().enumerate().rev() {
            let mut b = LinComb::from([(g, q_frac(-3, k as i64 + 1))]);
            if k > 0 {
                b.insert(odd[0], q(1));
            }
            basis.push(b);
        }
        let other = casimir_with_basis(&alg, &basis).unwrap();
        assert_eq!(omega, other, "n={n}");
    }
}

#[test]
fn casimir_rank_one_explicit() {
    // Ω = 2H² − NP − PN + 2(x∂ − ∂x), normal ordered
    let s = build_structure(1).unwrap();
    let alg = TensorAlgebra::new(&s);
    let omega = casimir(&alg).unwrap();
    let h = alg.gen(s.cartan(0));
    let p = alg.gen(s.find("P11").unwrap());
    let nn = alg.gen(s.find("N11").unwrap());
    let d = alg.gen(s.del(0));
    let x = alg.gen(s.x(0));
    let expected = alg
        .mul(&h, &h)
        .scale(&q(2))
        .sub(&alg.mul(&nn, &p))
        .sub(&alg.mul(&p, &nn))
        .add(&alg.mul(&x, &d).scale(&q(2)))
        .sub(&alg.mul(&d, &x).scale(&q(2)));
    assert_eq!(omega, expected);
}

#[test]
fn non_central_elements_are_rejected() {
    let s = build_structure(1).unwrap();
    let alg = TensorAlgebra::new(&s);
    let h = alg.gen(s.cartan(0));
    assert!(check_central(&alg, &h).is_err());
    assert!(hc_image(&s, &h).is_err());
}

#[test]
fn kostant_constant_is_scalar_and_matches_trace() {
    let k1 = kostant_constant(&build_structure(1).unwrap()).unwrap();
    assert!(k1.agree);
    assert_eq!(k1.value, "-3/2");
    let k2 = kostant_constant(&build_structure(2).unwrap()).unwrap();
    assert!(k2.agree);
}

#[test]
fn kostant_constant_forced_by_trivial_module() {
    // D acts by 0 on 1 ⊗ M, so Ω_{g0Δ} must act there by C.
    let s = build_structure(1).unwrap();
    let alg = TensorAlgebra::new(&s);
    let od = casimir_even_diagonal(&alg).unwrap();
    let w_only: TensorElement = {
        let mut t = TensorElement::zero(1);
        for ((u, w), c) in od.terms() {
            if u.is_empty() {
                t.add_term(u.clone(), w.clone(), c.clone());
            }
        }
        t
    };
    let c = kostant_constant(&s).unwrap().exact;
    assert_eq!(w_only.as_scalar(), Some(c));
}

#[test]
fn dirac_square_rank_one() {
    let s = build_structure(1).unwrap();
    let alg = TensorAlgebra::new(&s);
    let out = verify_dirac_square_with(&alg).unwrap();
    assert!(out.certificate.pass, "{:?}", out.certificate.residual_terms);
    assert!(out.invariance.pass, "{:?}", out.invariance.residual_terms);
}

#[test]
fn dirac_square_rank_two() {
    assert!(verify_dirac_square(2).unwrap());
}

#[test]
fn dirac_square_fails_with_koszul_signs() {
    let s = build_structure(1).unwrap();
    let koszul = TensorAlgebra::with_order(&s, PbwOrder::standard(&s), true);
    let out = verify_dirac_square_with(&koszul).unwrap();
    assert!(!out.certificate.pass);
    // there D² = Ω_g ⊗ 1 − Ω_{g0Δ} + C instead
    let d = dirac_operator(&koszul).unwrap();
    let c = kostant_constant(&s).unwrap().exact;
    let rhs = casimir(&koszul)
        .unwrap()
        .sub(&casimir_even_diagonal(&koszul).unwrap())
        .add(&TensorElement::scalar(1, c));
    assert_eq!(koszul.mul(&d, &d), rhs);
}

#[test]
fn dirac_operator_basis_independent() {
    let s = build_structure(2).unwrap();
    let alg = TensorAlgebra::new(&s);
    let d = dirac_operator(&alg).unwrap();
    let odd: Vec<usize> = s.odd_indices().collect();
    let basis: Vec<LinComb> = odd
        .iter()
        .enumerate()
        .map(|(k, &g)| {
            let mut b = LinComb::from([(g, q(k as i64 + 1))]);
            b.insert(odd[(k + 1) % odd.len()], q_frac(1, 2));
            b
        })
        .collect();
    assert_eq!(dirac_operator_with_basis(&alg, &basis).unwrap(), d);
    // explicit form 2Σ(∂_i ⊗ x_i − x_i ⊗ ∂_i)
    let mut expected = TensorElement::zero(2);
    for i in 0..2 {
        let a = alg.mul(&alg.gen(s.del(i)), &alg.weyl_of_odd(s.x(i)));
        let b = alg.mul(&alg.gen(s.x(i)), &alg.weyl_of_odd(s.del(i)));
        expected = expected.add(&a.sub(&b).scale(&q(2)));
    }
    assert_eq!(d, expected);
}

#[test]
fn harish_chandra_image_rank_one() {
    let s = build_structure(1).unwrap();
    let alg = TensorAlgebra::new(&s);
    assert_eq!(hc_image(&s, &TensorElement::one(1)).unwrap(), Polynomial::new(vec![Q::one()]));
    // ⟨λ,λ⟩ − ⟨ρ,ρ⟩ with ⟨λ,λ⟩ = B(H,H)⁻¹λ² = 2λ²
    let g = hc_image(&s, &casimir(&alg).unwrap()).unwrap();
    assert_eq!(g, Polynomial::new(vec![q_frac(-1, 2), q(0), q(2)]));
    for m in 0..5u32 {
        let v = build_module(&s, m).unwrap();
        let scalar = v.scalar_of(&casimir(&alg).unwrap()).unwrap().unwrap();
        assert_eq!(g.eval(&(q(m as i64) + q_frac(1, 2))), scalar);
    }
}

#[test]
fn modules_up_to_four() {
    let s = build_structure(1).unwrap();
    for m in 0..=4u32 {
        let v = build_module(&s, m).unwrap();
        assert_eq!(v.dim(), 2 * m as usize + 1);
        let r = dirac_cohomology(&v, 2 * v.dim() + 4).unwrap();
        assert!(r.euler_ok, "m={m}");
        assert!(r.kernel_scalar_ok, "m={m}");
        let mm = q(m as i64);
        assert_eq!(r.kernel_scalar, q(2) * &mm * &mm + q(2) * &mm - q_frac(3, 2));
    }
}

#[test]
fn cohomology_m_one_order_twelve() {
    let s = build_structure(1).unwrap();
    let v = build_module(&s, 1).unwrap();
    let r = dirac_cohomology(&v, 12).unwrap();
    assert!(r.euler_ok);
    assert_eq!(r.euler, r.expected_euler);
    // H_D is concentrated in even M-degree and is nonzero
    assert!(!r.hplus.is_empty());
}

fn random_element(alg: &TensorAlgebra, picks: &[(usize, usize, i64)]) -> TensorElement {
    let s = alg.structure();
    let mut out = TensorElement::zero(s.rank());
    for &(g1, g2, c) in picks {
        let a = alg.gen(g1 % s.dim());
        let b = if g2 % 3 == 0 {
            alg.weyl_of_odd(s.del(0))
        } else if g2 % 3 == 1 {
            alg.weyl_of_odd(s.x(0))
        } else {
            alg.gen(g2 % s.dim())
        };
        out = out.add(&alg.mul(&a, &b).scale(&q(c)));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_associative(
        a in prop::collection::vec((0usize..5, 0usize..6, -3i64..4), 1..3),
        b in prop::collection::vec((0usize..5, 0usize..6, -3i64..4), 1..3),
        c in prop::collection::vec((0usize..5, 0usize..6, -3i64..4), 1..3),
    ) {
        let s = build_structure(1).unwrap();
        let alg = TensorAlgebra::new(&s);
        let (x, y, z) = (random_element(&alg, &a), random_element(&alg, &b), random_element(&alg, &c));
        prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
    }

    #[test]
    fn normal_form_is_idempotent(a in prop::collection::vec((0usize..5, 0usize..6, -3i64..4), 1..4)) {
        let s = build_structure(1).unwrap();
        let alg = TensorAlgebra::new(&s);
        let x = random_element(&alg, &a);
        let once = alg.normal_form(&x);
        prop_assert_eq!(&once, &x);
        prop_assert_eq!(alg.normal_form(&once), once);
    }

    #[test]
    fn triangular_order_round_trip(a in prop::collection::vec((0usize..5, 0usize..6, -3i64..4), 1..4)) {
        let s = build_structure(1).unwrap();
        let alg = TensorAlgebra::new(&s);
        let tri = TensorAlgebra::with_order(&s, PbwOrder::triangular(&s), true);
        let x = random_element(&alg, &a);
        prop_assert_eq!(alg.normal_form(&tri.normal_form(&x)), x);
    }
}

#[test]
fn scalar_helpers() {
    assert!(TensorElement::zero(1).as_scalar().unwrap().is_zero());
}
