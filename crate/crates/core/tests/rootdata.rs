use proptest::prelude::*;
use superdirac::rootdata::*;

fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

/// ρ from the closed forms: B gives n−i+½, C gives n−i+1, OSP gives n−i+½
/// as well (ρ₀ − ρ₁), all for 1-based i.
fn rho_closed(kind: Kind, n: usize) -> Weight {
    Weight::from_doubled(
        (1..=n as i64)
            .map(|i| {
                let n = n as i64;
                match kind {
                    Kind::B | Kind::Osp => 2 * (n - i) + 1,
                    Kind::C => 2 * (n - i + 1),
                }
            })
            .collect(),
    )
}

#[test]
fn rho_matches_closed_forms() {
    for n in 1..=4 {
        for kind in [Kind::B, Kind::C, Kind::Osp] {
            assert_eq!(rho(kind, n).unwrap(), rho_closed(kind, n), "{kind} n={n}");
        }
        assert_eq!(rho(Kind::Osp, n).unwrap(), &rho0(n).unwrap() - &rho1(n).unwrap());
    }
}

#[test]
fn root_counts() {
    for n in 1..=4 {
        let b = positive_roots(Kind::B, n).unwrap();
        assert_eq!(b.even_positive_roots.len(), n * n);
        let o = positive_roots(Kind::Osp, n).unwrap();
        assert_eq!(o.odd_positive_roots.len(), n);
        assert_eq!(o.all_positive_roots().len(), n * n + n);
    }
}

#[test]
fn weyl_group_order_and_signs() {
    for n in 1..=4 {
        let all: Vec<_> = weyl_iter(n).unwrap().collect();
        let order: usize = (1..=n).product::<usize>() << n;
        assert_eq!(all.len(), order);
        assert_eq!(all.iter().map(|(_, s)| *s as i64).sum::<i64>(), 0);
        for (g, s) in &all {
            assert_eq!(g.sgn(), *s);
        }
    }
}

#[test]
fn fundamental_weights_dual_to_coroots() {
    for n in 1..=4 {
        let om = fundamental_weights(n).unwrap();
        let simple = positive_roots(Kind::B, n).unwrap().simple_roots();
        for (i, o) in om.iter().enumerate() {
            for (j, a) in simple.iter().enumerate() {
                // ⟨ω, 2α/⟨α,α⟩⟩ with inner4 = 4⟨·,·⟩
                let pairing = 2 * o.inner4(a) / a.inner4(a);
                assert_eq!(pairing, i64::from(i == j), "n={n} i={i} j={j}");
            }
        }
    }
}

#[test]
fn make_dominant_examples() {
    let (g, d) = make_dominant(&w("-2,3")).unwrap();
    assert_eq!(d, w("3,2"));
    assert_eq!(g.act(&w("-2,3")), d);
    assert!(make_dominant(&w("1,-1")).is_err());
}

fn weyl_element(n: usize) -> impl Strategy<Value = WeylElement> {
    (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), prop::collection::vec(prop::bool::ANY, n))
        .prop_map(|(perm, s)| WeylElement::new(perm, s.into_iter().map(|b| if b { -1 } else { 1 }).collect()).unwrap())
}

fn regular_dominant(n: usize) -> impl Strategy<Value = Weight> {
    prop::collection::btree_set(1i64..12, n).prop_map(|s| Weight::from_doubled(s.into_iter().rev().map(|x| 2 * x).collect()))
}

proptest! {
    #[test]
    fn matrix_is_a_homomorphism(a in weyl_element(3), b in weyl_element(3)) {
        let ab = a.compose(&b);
        let (ma, mb) = (a.matrix(), b.matrix());
        let mut prod = vec![vec![0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                prod[i][j] = (0..3).map(|k| ma[i][k] * mb[k][j]).sum();
            }
        }
        prop_assert_eq!(ab.matrix(), prod);
        prop_assert_eq!(ab.sgn(), a.sgn() * b.sgn());
        prop_assert_eq!(a.compose(&a.inverse()), WeylElement::identity(3));
    }

    #[test]
    fn make_dominant_recovers_dominant(g in weyl_element(3), lam in regular_dominant(3)) {
        let moved = g.act(&lam);
        let (h, d) = make_dominant(&moved).unwrap();
        prop_assert_eq!(&d, &lam);
        prop_assert_eq!(h.act(&moved), lam);
    }

    #[test]
    fn action_preserves_inner_product(g in weyl_element(3), a in prop::collection::vec(-6i64..7, 3), b in prop::collection::vec(-6i64..7, 3)) {
        let (a, b) = (Weight::from_doubled(a), Weight::from_doubled(b));
        prop_assert_eq!(g.act(&a).inner4(&g.act(&b)), a.inner4(&b));
    }

    #[test]
    fn weight_text_round_trip(d in prop::collection::vec(-9i64..10, 1..5)) {
        let x = Weight::from_doubled(d);
        prop_assert_eq!(x.to_string().parse::<Weight>().unwrap(), x);
    }
}
