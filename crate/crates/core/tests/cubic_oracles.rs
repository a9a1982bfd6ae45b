use cubicwa_core::form::fermat_cubic;
use cubicwa_core::sample::random_nodal_cubic;
use cubicwa_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gf(p: u64, m: u32) -> Gf {
    make_field(p, m).unwrap()
}

#[test]
fn nodal_map_vanishes_pointwise_over_an_extension() {
    // Independent of the symbolic composition: evaluate the map at points of
    // P^(n-1) over GF(q^2) and evaluate F there.
    let k = gf(7, 1);
    let k2 = gf(7, 2);
    let e = Embedding::canonical(&k, &k2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for nvars in [4, 5] {
        let v = random_nodal_cubic(&k, nvars, &mut rng).unwrap();
        let mut origin = vec![Fe::ZERO; nvars];
        origin[0] = Fe::ONE;
        let phi = nodal_parametrization(&v, &ProjPoint::new(&k, origin).unwrap()).unwrap();
        let f2 = v.form().embed(&e);
        let map: Vec<Form<Gf>> = phi.map.iter().map(|m| m.embed(&e)).collect();
        for s in ProjSpace::new(nvars - 2, &k2, u64::MAX).unwrap().iter().step_by(7) {
            let img: Vec<Fe> = map.iter().map(|m| m.eval(s.coords())).collect();
            assert!(f2.eval(&img).is_zero());
        }
    }
}

#[test]
fn third_intersection_vieta_and_symmetry() {
    let k = gf(5, 1);
    let x = CubicHypersurface::new(fermat_cubic(&k, 4).add(&Form::monomial(&k, vec![1, 1, 1, 0], Fe::ONE))).unwrap();
    let pts = x.points(&k, u64::MAX).unwrap();
    let mut checked = 0;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let Ok(z) = x.third_intersection(a, b) else {
                continue;
            };
            assert_eq!(x.third_intersection(b, a).unwrap(), z);
            // Oracle: the rational points of the line on the cubic, found by
            // evaluating at every point of the line.
            let line = LinearSubspace::span_points(&k, &[a, b]).unwrap();
            let on: Vec<ProjPoint> = line.points(&k).filter(|p| x.contains(p)).collect();
            assert!(on.contains(&z));
            let restricted = x.restrict_to_line(a.coords(), b.coords());
            let mult: usize = restricted.roots(&k).iter().map(|r| r.1).sum();
            assert_eq!(mult, 3);
            if z != *a && z != *b {
                assert_eq!(on.len(), 3);
            }
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn third_intersection_is_galois_equivariant() {
    let k = gf(5, 1);
    let k2 = gf(5, 2);
    let e = Embedding::canonical(&k, &k2).unwrap();
    let x = CubicHypersurface::new(fermat_cubic(&k, 4).add(&Form::monomial(&k, vec![0, 1, 1, 1], Fe::ONE))).unwrap();
    let x2 = x.embed(&e);
    let pts = x2.points(&k2, u64::MAX).unwrap();
    for (a, b) in pts.iter().zip(pts.iter().skip(17)).step_by(11) {
        let Ok(z) = x2.third_intersection(a, b) else {
            continue;
        };
        let fz = x2.third_intersection(&a.frobenius(&k2, 5), &b.frobenius(&k2, 5)).unwrap();
        assert_eq!(fz, z.frobenius(&k2, 5));
    }
}

#[test]
fn conjugate_pair_lines_on_fermat_surface_everywhere() {
    let k = gf(11, 1);
    let k2 = gf(11, 2);
    let e = Embedding::canonical(&k, &k2).unwrap();
    let x = CubicHypersurface::new(fermat_cubic(&k, 4)).unwrap();
    let x2 = x.embed(&e);
    for p in x.points(&k, u64::MAX).unwrap() {
        let r = x.find_conjugate_pair_line(&p, u64::MAX).unwrap();
        // Oracle: the line has one rational point on X and three over GF(121).
        let on1 = r.line.points(&k).filter(|q| x.contains(q)).count();
        let line2 = r.line.embed(&e);
        let on2: Vec<ProjPoint> = line2.points(&k2).filter(|q| x2.contains(q)).collect();
        assert_eq!(on1, 1);
        assert_eq!(on2.len(), 3);
        assert!(on2.contains(&r.y) && on2.contains(&r.y_conj));
    }
}

#[test]
fn connect_points_on_fermat_cubic_threefold() {
    let k = gf(11, 1);
    let x = CubicHypersurface::new(fermat_cubic(&k, 5)).unwrap();
    let lim = Limits::default();
    let pts = x.points(&k, lim.budget).unwrap();
    let mut ok = 0;
    for i in (0..pts.len()).step_by(101).take(4) {
        let j = (i * 7 + 13) % pts.len();
        let Ok(c) = x.connect_points(&pts[i], &pts[j], &lim) else {
            continue;
        };
        // Oracle: evaluate the curve at every parameter in P^1(GF(11)).
        for t in ProjSpace::new(1, &k, 100).unwrap().iter() {
            let p = c.curve.eval(&k, t.coords()[0], t.coords()[1]).unwrap();
            assert!(x.contains(&p));
        }
        assert_eq!(c.curve.eval(&k, Fe::ONE, Fe::ZERO).unwrap(), pts[i]);
        assert_eq!(c.curve.eval(&k, Fe::ZERO, Fe::ONE).unwrap(), pts[j]);
        ok += 1;
    }
    assert!(ok >= 2);
}

#[test]
fn line_through_two_points_on_a_line_of_x_is_rejected() {
    let k = gf(7, 1);
    let x = CubicHypersurface::new(fermat_cubic(&k, 4)).unwrap();
    let a = ProjPoint::from_i64(&k, &[1, -1, 0, 0]).unwrap();
    let b = ProjPoint::from_i64(&k, &[0, 0, 1, -1]).unwrap();
    assert_eq!(x.third_intersection(&a, &b), Err(Error::LineContainedInX));
}
