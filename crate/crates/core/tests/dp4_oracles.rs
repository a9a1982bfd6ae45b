use cubicwa_core::dense::{is_geometrically_integral, TernaryCubic};
use cubicwa_core::dp4::{classify_lines, find_inert_line, find_split_dp4, HyperplaneKind};
use cubicwa_core::sample::{random_form, random_integral_plane_cubic, random_smooth_dp4};
use cubicwa_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gf(p: u64, m: u32) -> Gf {
    make_field(p, m).unwrap()
}

/// A plane cubic is geometrically reducible iff it contains a line, and any
/// line component is defined over GF(q^2) or GF(q^3).
fn has_line_component_brute(f: &Form<Gf>) -> bool {
    let k = f.field();
    [2u32, 3].iter().any(|&d| {
        let big = k.extension(d).unwrap();
        let e = Embedding::canonical(k, &big).unwrap();
        let g = f.embed(&e);
        proj::subspaces(2, 1, &big, u64::MAX)
            .unwrap()
            .any(|l| l.restrict_form(&g).unwrap().is_zero())
    })
}

#[test]
fn integrality_matches_line_scan() {
    let k = gf(3, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut reducible = 0;
    for _ in 0..60 {
        let f = random_form(&k, 3, 3, &mut rng);
        if f.is_zero() {
            continue;
        }
        let fast = is_geometrically_integral(&k, &TernaryCubic::from_form(&f)).unwrap();
        let brute = !has_line_component_brute(&f);
        assert_eq!(fast, brute, "{f:?}");
        reducible += !brute as usize;
    }
    // Products of a line and a conic exercise the other branch.
    for _ in 0..15 {
        let l = random_form(&k, 3, 1, &mut rng);
        let q = random_form(&k, 3, 2, &mut rng);
        let f = l.mul(&q);
        if f.is_zero() {
            continue;
        }
        assert!(!is_geometrically_integral(&k, &TernaryCubic::from_form(&f)).unwrap());
        reducible += 1;
    }
    assert!(reducible > 10);
}

#[test]
fn plane_cubic_census_matches_point_counts() {
    let k = gf(7, 1);
    let k2 = gf(7, 2);
    let e = Embedding::canonical(&k, &k2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..5 {
        let f = random_integral_plane_cubic(&k, &mut rng).unwrap();
        let c = classify_lines(&f).unwrap();
        let n = enumerate_points(2, &k, u64::MAX).unwrap().filter(|p| f.eval(p.coords()).is_zero()).count();
        let f2 = f.embed(&e);
        let m = enumerate_points(2, &k2, u64::MAX).unwrap().filter(|p| f2.eval(p.coords()).is_zero()).count();
        assert_eq!((c.n, c.m), (n as u64, m as u64));
        assert_eq!(c.total(), 57);
    }
}

#[test]
fn inert_lines_have_no_points_below_degree_three() {
    let k = gf(13, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let f = random_integral_plane_cubic(&k, &mut rng).unwrap();
        let found = find_inert_line(&f, u64::MAX).unwrap();
        for d in [1u32, 2] {
            let big = k.extension(d).unwrap();
            let e = Embedding::canonical(&k, &big).unwrap();
            let g = f.embed(&e);
            assert_eq!(found.line.embed(&e).points(&big).filter(|p| g.eval(p.coords()).is_zero()).count(), 0);
        }
        let k3 = k.extension(3).unwrap();
        let e3 = Embedding::canonical(&k, &k3).unwrap();
        let g = f.embed(&e3);
        assert_eq!(found.line.embed(&e3).points(&k3).filter(|p| g.eval(p.coords()).is_zero()).count(), 3);
    }
}

#[test]
fn tangent_hyperplanes_contain_the_tangent_plane() {
    let k = gf(5, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let s = random_smooth_dp4(&k, &mut rng).unwrap();
    let pts = s.smooth_points(u64::MAX).unwrap();
    let x = &pts[0];
    let grads: Vec<Vec<Fe>> = s.quadrics().iter().map(|q| q.gradient().iter().map(|g| g.eval(x.coords())).collect()).collect();
    let span = LinearSubspace::span(&k, &grads).unwrap();
    let mut tangent = 0;
    for a in proj::hyperplanes_through(x, &k, u64::MAX).unwrap() {
        let kind = s.classify_hyperplane(x, &a).unwrap();
        // Oracle: tangent iff the normal lies in the span of the two gradients.
        assert_eq!(kind == HyperplaneKind::Tangent, span.contains(&k, &a));
        tangent += (kind == HyperplaneKind::Tangent) as u64;
    }
    assert_eq!(tangent, 6);
    let census = s.hyperplane_census(x, u64::MAX).unwrap();
    assert_eq!(census.total, 5u64.pow(3) + 25 + 5 + 1);
    assert_eq!(census.tangent, 6);
}

#[test]
fn hyperplanes_containing_a_rational_line_are_counted() {
    // Oracle: a rational line through x lies in q^2 + q + 1 hyperplanes
    // through x; a rational line not through x lies in q + 1 of them.
    let k = gf(7, 1);
    let s = find_split_dp4(&k, u64::MAX).unwrap();
    let lines = s.rational_lines(&k, u64::MAX).unwrap();
    let x = s.smooth_points(u64::MAX).unwrap().into_iter().next().unwrap();
    let census = s.hyperplane_census(&x, u64::MAX).unwrap();
    let mut with_line = 0u64;
    for a in proj::hyperplanes_through(&x, &k, u64::MAX).unwrap() {
        let h = LinearSubspace::hyperplane(&k, &a).unwrap();
        let tangent = s.classify_hyperplane(&x, &a).unwrap() == HyperplaneKind::Tangent;
        let contains = lines.iter().any(|l| l.basis().iter().all(|v| h.contains(&k, v)));
        if contains && !tangent {
            with_line += 1;
        }
    }
    assert!(census.contains_line >= with_line);
}

fn smooth_conic(k: &Gf, f: &Form<Gf>) -> bool {
    let c = |e: [u16; 3]| f.coeff(&e);
    let two = k.from_i64(2);
    let m = [
        [k.mul(two, c([2, 0, 0])), c([1, 1, 0]), c([1, 0, 1])],
        [c([1, 1, 0]), k.mul(two, c([0, 2, 0])), c([0, 1, 1])],
        [c([1, 0, 1]), c([0, 1, 1]), k.mul(two, c([0, 0, 2]))],
    ];
    let minor = |a: Fe, b: Fe, c: Fe, d: Fe| k.sub(k.mul(a, d), k.mul(b, c));
    let det = k.add(
        k.sub(k.mul(m[0][0], minor(m[1][1], m[1][2], m[2][1], m[2][2])), k.mul(m[0][1], minor(m[1][0], m[1][2], m[2][0], m[2][2]))),
        k.mul(m[0][2], minor(m[1][0], m[1][1], m[2][0], m[2][1])),
    );
    !det.is_zero()
}

#[test]
fn conic_hyperplanes_match_planes_of_conics_through_the_point() {
    // Oracle: every non-tangent hyperplane whose section holds a conic also
    // holds a rational conic through x, so it contains a plane through x
    // meeting the surface in a smooth conic.
    let k = gf(13, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    rng.set_stream(5);
    let s = random_smooth_dp4(&k, &mut rng).unwrap();
    let x = ProjPoint::from_i64(&k, &[1, 0, 1, 6, 10]).unwrap();
    assert!(s.is_smooth_point(&x));
    let grads: Vec<Vec<Fe>> = s.quadrics().iter().map(|q| q.gradient().iter().map(|g| g.eval(x.coords())).collect()).collect();
    let tangent = LinearSubspace::span(&k, &grads).unwrap();
    let complement: Vec<Vec<Fe>> = (1..5)
        .map(|j| {
            let mut e = vec![Fe::ZERO; 5];
            e[j] = Fe::ONE;
            e
        })
        .collect();
    let lift = |v: &[Fe]| (0..5).map(|i| (0..4).fold(Fe::ZERO, |acc, j| k.add(acc, k.mul(v[j], complement[j][i])))).collect::<Vec<Fe>>();
    let mut normals = std::collections::BTreeSet::new();
    let mut conic_planes = 0;
    for l in proj::subspaces(3, 1, &k, u64::MAX).unwrap() {
        let b = l.basis();
        let plane = LinearSubspace::span(&k, &[x.coords().to_vec(), lift(&b[0]), lift(&b[1])]).unwrap();
        let r: Vec<Form<Gf>> = s.quadrics().iter().map(|q| plane.restrict_form(q).unwrap()).collect();
        let rows: Vec<Vec<Fe>> = r.iter().map(|f| [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]].iter().map(|e| f.coeff(e)).collect()).collect();
        if cubicwa_core::linalg::rank(&k, &rows) != 1 {
            continue;
        }
        let conic = r.iter().find(|f| !f.is_zero()).unwrap();
        if !smooth_conic(&k, conic) {
            continue;
        }
        conic_planes += 1;
        let ann = LinearSubspace::from_equations(&k, 5, plane.basis()).unwrap();
        for a in ann.points(&k) {
            if !tangent.contains(&k, a.coords()) {
                normals.insert(a);
            }
        }
    }
    let census = s.hyperplane_census(&x, u64::MAX).unwrap();
    assert_eq!(census.contains_line, 0);
    for a in &normals {
        assert_eq!(s.classify_hyperplane(&x, a.coords()).unwrap(), HyperplaneKind::ContainsConic);
    }
    assert_eq!(normals.len() as u64, census.contains_conic);
    // Three rational pairs of conic classes, 2q hyperplanes each: above 5(q+1).
    assert_eq!(conic_planes, 6);
    assert_eq!(census.contains_conic, 6 * 13);
    assert!(census.contains_conic > census.conic_bound());
}
