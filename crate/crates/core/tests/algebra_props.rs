use cubicwa_core::form::fermat_cubic;
use cubicwa_core::*;
use proptest::prelude::*;

fn gf(p: u64, m: u32) -> Gf {
    make_field(p, m).unwrap()
}

fn elem(k: &Gf) -> impl Strategy<Value = Fe> {
    (0..k.order()).prop_map(Fe)
}

fn poly(k: &Gf, max_len: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(elem(k), 0..max_len).prop_map(Poly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in 0u32..343, b in 0u32..343, c in 0u32..343) {
        let k = gf(7, 3);
        let (a, b, c) = (Fe(a), Fe(b), Fe(c));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.add(a, k.neg(a)), Fe::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(k.mul(a, k.inv(a)), Fe::ONE);
        }
        // Frobenius of order 7^3 is the identity; of order 7 it is additive.
        prop_assert_eq!(k.frobenius(a, 343), a);
        prop_assert_eq!(k.frobenius(k.add(a, b), 7), k.add(k.frobenius(a, 7), k.frobenius(b, 7)));
    }

    #[test]
    fn embeddings_are_homomorphisms(a in 0u32..121, b in 0u32..121) {
        let k = gf(11, 2);
        let big = gf(11, 6);
        let e = Embedding::canonical(&k, &big).unwrap();
        let (a, b) = (Fe(a), Fe(b));
        prop_assert_eq!(e.apply(k.add(a, b)), big.add(e.apply(a), e.apply(b)));
        prop_assert_eq!(e.apply(k.mul(a, b)), big.mul(e.apply(a), e.apply(b)));
        prop_assert_eq!(e.restrict(e.apply(a)), Some(a));
        // Image is the fixed field of the order-121 Frobenius.
        let x = e.apply(a);
        prop_assert_eq!(big.frobenius(x, 121), x);
    }

    #[test]
    fn division_with_remainder(a in poly(&gf(13, 1), 9), d in poly(&gf(13, 1), 5)) {
        let k = gf(13, 1);
        prop_assume!(!d.is_zero());
        let (q, r) = a.divrem(&d, &k);
        prop_assert_eq!(q.mul(&d, &k).add(&r, &k), a);
        prop_assert!(r.deg() < d.deg());
    }

    #[test]
    fn roots_match_exhaustive_evaluation(f in poly(&gf(13, 1), 7)) {
        let k = gf(13, 1);
        prop_assume!(!f.is_zero());
        let roots = f.roots(&k);
        let brute: Vec<Fe> = k.elements().filter(|&x| f.eval(&k, x).is_zero()).collect();
        let mut sorted = roots.clone();
        sorted.sort();
        prop_assert_eq!(sorted, brute);
    }

    #[test]
    fn binary_form_roots_match_exhaustive(c in proptest::collection::vec(0u32..9, 4)) {
        let k = gf(3, 2);
        let b = BinaryForm::new(c.into_iter().map(Fe).collect());
        prop_assume!(!b.is_zero());
        let found: Vec<(Fe, Fe)> = b.roots(&k).into_iter().map(|(r, _)| r).collect();
        let brute: Vec<ProjPoint> = ProjSpace::new(1, &k, 100)
            .unwrap()
            .iter()
            .filter(|p| b.eval(&k, p.coords()[0], p.coords()[1]).is_zero())
            .collect();
        prop_assert_eq!(found.len(), brute.len());
        for (s, u) in found {
            prop_assert!(brute.contains(&ProjPoint::new(&k, vec![s, u]).unwrap()));
        }
    }
}

#[test]
fn point_counts_match_formula() {
    for (p, m, n) in [(2u64, 1u32, 3usize), (3, 2, 2), (5, 1, 4)] {
        let k = gf(p, m);
        let q = k.order() as u64;
        let expect: u64 = (0..=n as u32).map(|i| q.pow(i)).sum();
        assert_eq!(enumerate_points(n, &k, u64::MAX).unwrap().count() as u64, expect);
    }
}

#[test]
fn subspace_counts_are_gaussian_binomials() {
    let k = gf(3, 1);
    // Lines of P^3(GF(3)): (3^4-1)(3^4-3) / ((3^2-1)(3^2-3)) = 130.
    assert_eq!(proj::subspaces(3, 1, &k, u64::MAX).unwrap().count(), 130);
    assert_eq!(proj::subspace_count(3, 1, 3), 130);
}

#[test]
fn fermat_point_count_oracle() {
    // Over GF(q) with 3 ∤ q - 1, cubing is a bijection and the Fermat cubic in
    // P^3 has as many points as a plane: q^2 + q + 1.
    let k = gf(11, 1);
    let x = CubicHypersurface::new(fermat_cubic(&k, 4)).unwrap();
    assert_eq!(x.points(&k, u64::MAX).unwrap().len(), 133);
}
