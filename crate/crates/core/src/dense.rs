//! Dense quadratic forms and ternary cubics for the hot loops of the surface
//! censuses.

use crate::error::Result;
use crate::field::{Embedding, Fe, Gf};
use crate::form::{BinaryForm, Form};
use crate::linalg::Matrix;

/// `sum_{i <= j} a_ij X_i X_j`, upper triangle stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadForm {
    n: usize,
    a: Vec<Fe>,
}

impl QuadForm {
    fn idx(n: usize, i: usize, j: usize) -> usize {
        i * n - i * (i + 1) / 2 + j
    }

    pub fn from_form(f: &Form<Gf>) -> QuadForm {
        assert_eq!(f.degree(), 2, "not a quadratic form");
        let n = f.nvars();
        let mut a = vec![Fe::ZERO; n * (n + 1) / 2];
        for (e, &c) in f.terms() {
            let idx: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
            let (i, j) = match idx.as_slice() {
                [i] => (*i, *i),
                [i, j] => (*i, *j),
                _ => unreachable!("quadratic monomial"),
            };
            a[Self::idx(n, i, j)] = c;
        }
        QuadForm { n, a }
    }

    pub fn to_form(&self, k: &Gf) -> Form<Gf> {
        let n = self.n;
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut e = vec![0u16; n];
                e[i] += 1;
                e[j] += 1;
                terms.push((e, self.a[Self::idx(n, i, j)]));
            }
        }
        Form::from_terms(k, n, 2, terms).expect("well-formed")
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn coeff(&self, i: usize, j: usize) -> Fe {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.a[Self::idx(self.n, i, j)]
    }

    pub fn eval(&self, k: &Gf, v: &[Fe]) -> Fe {
        let mut acc = Fe::ZERO;
        let mut t = 0;
        for i in 0..self.n {
            if v[i].is_zero() {
                t += self.n - i;
                continue;
            }
            let mut row = Fe::ZERO;
            for j in i..self.n {
                row = k.add(row, k.mul(self.a[t], v[j]));
                t += 1;
            }
            acc = k.add(acc, k.mul(row, v[i]));
        }
        acc
    }

    /// `q(v + w) - q(v) - q(w)`.
    pub fn polar(&self, k: &Gf, v: &[Fe], w: &[Fe]) -> Fe {
        let mut acc = Fe::ZERO;
        let mut t = 0;
        for i in 0..self.n {
            for j in i..self.n {
                let c = self.a[t];
                t += 1;
                if c.is_zero() {
                    continue;
                }
                let s = if i == j {
                    k.add(k.mul(v[i], w[i]), k.mul(v[i], w[i]))
                } else {
                    k.add(k.mul(v[i], w[j]), k.mul(v[j], w[i]))
                };
                acc = k.add(acc, k.mul(c, s));
            }
        }
        acc
    }

    /// The vector `g` with `g . w = polar(v, w)` for all `w`.
    pub fn gradient(&self, k: &Gf, v: &[Fe]) -> Vec<Fe> {
        (0..self.n)
            .map(|i| {
                let mut s = Fe::ZERO;
                for j in 0..self.n {
                    let c = self.coeff(i, j);
                    let c = if i == j { k.add(c, c) } else { c };
                    s = k.add(s, k.mul(c, v[j]));
                }
                s
            })
            .collect()
    }

    /// Symmetric matrix with doubled diagonal, so that `polar(v, w) = v^T M w`.
    pub fn matrix(&self, k: &Gf) -> Matrix {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let c = self.coeff(i, j);
                        if i == j {
                            k.add(c, c)
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Restriction `(s, u) -> q(s p + u r)`: coefficients of `s^2, s u, u^2`.
    pub fn on_line(&self, k: &Gf, p: &[Fe], r: &[Fe]) -> [Fe; 3] {
        [self.eval(k, p), self.polar(k, p, r), self.eval(k, r)]
    }

    /// Restriction to the span of `basis` in those coordinates.
    pub fn restrict(&self, k: &Gf, basis: &[Vec<Fe>]) -> QuadForm {
        let m = basis.len();
        let mut a = vec![Fe::ZERO; m * (m + 1) / 2];
        for i in 0..m {
            for j in i..m {
                a[Self::idx(m, i, j)] = if i == j {
                    self.eval(k, &basis[i])
                } else {
                    self.polar(k, &basis[i], &basis[j])
                };
            }
        }
        QuadForm { n: m, a }
    }

    pub fn embed(&self, e: &Embedding) -> QuadForm {
        QuadForm {
            n: self.n,
            a: self.a.iter().map(|&c| e.apply(c)).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|c| c.is_zero())
    }
}

const CUBIC_MONOS: [[u8; 3]; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

fn cubic_index(e: [u8; 3]) -> usize {
    CUBIC_MONOS.iter().position(|&m| m == e).unwrap()
}

/// A ternary cubic with all ten coefficients stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TernaryCubic {
    pub c: [Fe; 10],
}

impl TernaryCubic {
    pub fn from_form(f: &Form<Gf>) -> TernaryCubic {
        assert!(f.nvars() == 3 && f.degree() == 3, "not a ternary cubic");
        let mut c = [Fe::ZERO; 10];
        for (e, &v) in f.terms() {
            c[cubic_index([e[0] as u8, e[1] as u8, e[2] as u8])] = v;
        }
        TernaryCubic { c }
    }

    pub fn to_form(&self, k: &Gf) -> Form<Gf> {
        Form::from_terms(
            k,
            3,
            3,
            CUBIC_MONOS
                .iter()
                .zip(&self.c)
                .map(|(m, &v)| (m.iter().map(|&x| x as u16).collect(), v)),
        )
        .expect("well-formed")
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }

    /// `l * q` for a linear form `l` and a ternary quadratic in `QuadForm` layout.
    pub fn lin_times_quad(k: &Gf, l: &[Fe; 3], q: &QuadForm) -> TernaryCubic {
        let mut c = [Fe::ZERO; 10];
        for (i, &li) in l.iter().enumerate() {
            if li.is_zero() {
                continue;
            }
            for a in 0..3 {
                for b in a..3 {
                    let qc = q.coeff(a, b);
                    if qc.is_zero() {
                        continue;
                    }
                    let mut e = [0u8; 3];
                    e[i] += 1;
                    e[a] += 1;
                    e[b] += 1;
                    let t = cubic_index(e);
                    c[t] = k.add(c[t], k.mul(li, qc));
                }
            }
        }
        TernaryCubic { c }
    }

    pub fn sub(&self, k: &Gf, other: &TernaryCubic) -> TernaryCubic {
        let mut c = self.c;
        for (a, &b) in c.iter_mut().zip(&other.c) {
            *a = k.sub(*a, b);
        }
        TernaryCubic { c }
    }

    pub fn eval(&self, k: &Gf, p: &[Fe]) -> Fe {
        let pw: [[Fe; 4]; 3] = std::array::from_fn(|i| {
            let x = p[i];
            let x2 = k.mul(x, x);
            [Fe::ONE, x, x2, k.mul(x2, x)]
        });
        let mut acc = Fe::ZERO;
        for (m, &c) in CUBIC_MONOS.iter().zip(&self.c) {
            if c.is_zero() {
                continue;
            }
            let t = k.mul(k.mul(pw[0][m[0] as usize], pw[1][m[1] as usize]), pw[2][m[2] as usize]);
            acc = k.add(acc, k.mul(c, t));
        }
        acc
    }

    /// Gradient at `p`.
    pub fn gradient(&self, k: &Gf, p: &[Fe]) -> [Fe; 3] {
        let mut g = [Fe::ZERO; 3];
        for (m, &c) in CUBIC_MONOS.iter().zip(&self.c) {
            if c.is_zero() {
                continue;
            }
            for i in 0..3 {
                if m[i] == 0 {
                    continue;
                }
                let mut t = k.mul(c, k.from_i64(m[i] as i64));
                for j in 0..3 {
                    let e = if j == i { m[j] - 1 } else { m[j] };
                    if e > 0 {
                        t = k.mul(t, k.pow(p[j], e as u64));
                    }
                }
                g[i] = k.add(g[i], t);
            }
        }
        g
    }

    /// `(s, u) -> E(s p + u r)` as a binary cubic.
    pub fn on_line(&self, k: &Gf, p: &[Fe], r: &[Fe]) -> BinaryForm {
        // Powers of the linear binary forms p_i s + r_i u.
        let pw: [[[Fe; 4]; 4]; 3] = std::array::from_fn(|i| {
            let mut out = [[Fe::ZERO; 4]; 4];
            out[0][0] = Fe::ONE;
            for e in 1..4 {
                for t in 0..=e {
                    let mut v = Fe::ZERO;
                    if t < e {
                        v = k.add(v, k.mul(out[e - 1][t], p[i]));
                    }
                    if t > 0 {
                        v = k.add(v, k.mul(out[e - 1][t - 1], r[i]));
                    }
                    out[e][t] = v;
                }
            }
            out
        });
        let mut acc = [Fe::ZERO; 4];
        for (m, &c) in CUBIC_MONOS.iter().zip(&self.c) {
            if c.is_zero() {
                continue;
            }
            let (a, b, d) = (m[0] as usize, m[1] as usize, m[2] as usize);
            for i in 0..=a {
                let x = pw[0][a][i];
                if x.is_zero() {
                    continue;
                }
                for j in 0..=b {
                    let y = pw[1][b][j];
                    if y.is_zero() {
                        continue;
                    }
                    let xy = k.mul(k.mul(x, y), c);
                    for l in 0..=d {
                        let z = pw[2][d][l];
                        acc[i + j + l] = k.add(acc[i + j + l], k.mul(xy, z));
                    }
                }
            }
        }
        BinaryForm::new(acc.to_vec())
    }

    /// The quadratic form `sum_i r_i dE/dX_i`.
    pub fn polar_quad(&self, k: &Gf, r: &[Fe]) -> QuadForm {
        let mut a = vec![Fe::ZERO; 6];
        for (m, &c) in CUBIC_MONOS.iter().zip(&self.c) {
            if c.is_zero() {
                continue;
            }
            for i in 0..3 {
                if m[i] == 0 || r[i].is_zero() {
                    continue;
                }
                let mut e = *m;
                e[i] -= 1;
                let idx: Vec<usize> = (0..3).flat_map(|j| std::iter::repeat(j).take(e[j] as usize)).collect();
                let t = QuadForm::idx(3, idx[0], idx[1]);
                let v = k.mul(k.mul(c, k.from_i64(m[i] as i64)), r[i]);
                a[t] = k.add(a[t], v);
            }
        }
        QuadForm { n: 3, a }
    }

    /// `(s, u) -> sum_i r_i dE/dX_i (s p + u q)`, a binary quadratic.
    pub fn polar_on_line(&self, k: &Gf, r: &[Fe], p: &[Fe], q: &[Fe]) -> BinaryForm {
        BinaryForm::new(self.polar_quad(k, r).on_line(k, p, q).to_vec())
    }

    pub fn embed(&self, e: &Embedding) -> TernaryCubic {
        TernaryCubic {
            c: self.c.map(|x| e.apply(x)),
        }
    }
}

/// A line component of a plane cubic, spanned by two points over `field`.
#[derive(Clone, Debug)]
pub struct LineComponent {
    pub field: Gf,
    pub p: [Fe; 3],
    pub q: [Fe; 3],
}

/// Candidate probe lines: the three coordinate lines, then `X_0 = a X_1 + b X_2`.
fn probe_lines(k: &Gf) -> impl Iterator<Item = ([Fe; 3], [Fe; 3])> + '_ {
    let (o, z) = (Fe::ONE, Fe::ZERO);
    let coordinate = [([z, o, z], [z, z, o]), ([o, z, z], [z, z, o]), ([o, z, z], [z, o, z])];
    let elems: Vec<Fe> = k.elements().collect();
    let general = elems
        .clone()
        .into_iter()
        .flat_map(move |a| elems.clone().into_iter().map(move |b| ([a, o, z], [b, z, o])));
    coordinate.into_iter().chain(general)
}

const PROBES: usize = 12;

/// Line components of a ternary cubic over the algebraic closure, at least
/// one per Galois orbit (each listed over a field where it is defined).
/// With `first_only` the search stops at the first component found.
pub fn line_components(k: &Gf, e: &TernaryCubic, first_only: bool) -> Result<Vec<LineComponent>> {
    let mut out = Vec::new();
    let mut probe = None;
    let mut fallback = None;
    // A probe line not inside E; preferably one where E has a rational point,
    // so that no cubic extension is needed for the root representatives.
    for (p, q) in probe_lines(k).take(PROBES) {
        let b = e.on_line(k, &p, &q);
        if b.is_zero() {
            out.push(LineComponent { field: k.clone(), p, q });
            if first_only {
                return Ok(out);
            }
        } else if !b.roots(k).is_empty() {
            probe = Some((p, q));
            break;
        } else if fallback.is_none() {
            fallback = Some((p, q));
        }
    }
    let (mp, mq) = match probe.or(fallback) {
        Some(m) => m,
        None => probe_lines(k)
            .find(|(p, q)| !e.on_line(k, p, q).is_zero())
            .expect("a nonzero cubic contains at most three lines"),
    };
    let b = e.on_line(k, &mp, &mq);
    // Galois orbit representatives of the roots of E on the probe line.
    let mut reps: Vec<(Gf, Fe, Fe)> = Vec::new();
    let mut rest = b.clone();
    for ((s, u), mult) in b.roots(k) {
        reps.push((k.clone(), s, u));
        let lin = BinaryForm::new(vec![k.neg(u), s]);
        for _ in 0..mult {
            rest = rest.div_exact(&lin, k).expect("root divides");
        }
    }
    if rest.degree() >= 2 {
        let j = rest.degree() as u32;
        let kj = k.extension(j)?;
        let emb = crate::field::Embedding::canonical(k, &kj)?;
        let rj = rest.map_coeffs(|c| emb.apply(c));
        if let Some(&((s, u), _)) = rj.roots(&kj).first() {
            reps.push((kj, s, u));
        }
    }
    for (kj, s, u) in reps {
        let emb = crate::field::Embedding::canonical(k, &kj)?;
        let ej = e.embed(&emb);
        let (mpj, mqj) = (mp.map(|c| emb.apply(c)), mq.map(|c| emb.apply(c)));
        let r: [Fe; 3] = std::array::from_fn(|i| kj.add(kj.mul(s, mpj[i]), kj.mul(u, mqj[i])));
        let piv = (0..3).find(|&i| !r[i].is_zero()).unwrap();
        // A coordinate line through neither r: X_piv = 0.
        let mut a = [Fe::ZERO; 3];
        let mut c = [Fe::ZERO; 3];
        let others: Vec<usize> = (0..3).filter(|&i| i != piv).collect();
        a[others[0]] = Fe::ONE;
        c[others[1]] = Fe::ONE;
        let g = ej.gradient(&kj, &r);
        let lin = BinaryForm::new(vec![
            (0..3).fold(Fe::ZERO, |acc, i| kj.add(acc, kj.mul(g[i], a[i]))),
            (0..3).fold(Fe::ZERO, |acc, i| kj.add(acc, kj.mul(g[i], c[i]))),
        ]);
        let quad = ej.polar_on_line(&kj, &r, &a, &c);
        let cub = ej.on_line(&kj, &a, &c);
        let mut gcd: Option<BinaryForm> = None;
        for f in [&lin, &quad, &cub] {
            gcd = match gcd {
                None => (!f.is_zero()).then(|| f.normalized(&kj)),
                Some(g) => g.gcd(f, &kj),
            };
        }
        let Some(gcd) = gcd else {
            // The whole pencil through r lies on E: impossible for a nonzero cubic.
            continue;
        };
        if gcd.degree() == 0 {
            continue;
        }
        // Lines through a rational r may be defined over an extension of degree
        // up to 3; through a non-rational r they are defined over kj itself.
        let max_ext = if kj == *k { 3 } else { 1 };
        for ext in 1..=max_ext {
            let kk = kj.extension(ext)?;
            let emb2 = crate::field::Embedding::canonical(&kj, &kk)?;
            let gg = gcd.map_coeffs(|x| emb2.apply(x));
            let rr = r.map(|x| emb2.apply(x));
            for ((s0, u0), _) in gg.roots(&kk) {
                let d: [Fe; 3] = std::array::from_fn(|i| {
                    kk.add(kk.mul(s0, emb2.apply(a[i])), kk.mul(u0, emb2.apply(c[i])))
                });
                out.push(LineComponent { field: kk.clone(), p: rr, q: d });
                if first_only {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// Whether a nonzero ternary cubic is geometrically integral.
pub fn is_geometrically_integral(k: &Gf, e: &TernaryCubic) -> Result<bool> {
    if e.is_zero() {
        return Ok(false);
    }
    Ok(line_components(k, e, true)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn cubic(k: &Gf, terms: &[(Vec<u16>, i64)]) -> TernaryCubic {
        TernaryCubic::from_form(&Form::from_i64_terms(k, 3, 3, terms).unwrap())
    }

    #[test]
    fn round_trips_and_restriction() {
        let k = make_field(13, 1).unwrap();
        let f = Form::from_i64_terms(&k, 3, 3, &[(vec![3, 0, 0], 1), (vec![0, 2, 1], -1), (vec![1, 1, 1], 4)]).unwrap();
        let t = TernaryCubic::from_form(&f);
        assert_eq!(t.to_form(&k), f);
        let p = [Fe(1), Fe(2), Fe(3)];
        let q = [Fe(0), Fe(5), Fe(7)];
        assert_eq!(t.on_line(&k, &p, &q), f.restrict_to_line(&p, &q).unwrap());
        assert_eq!(t.eval(&k, &p), f.eval(&p));
        let r = [Fe(4), Fe(0), Fe(9)];
        let polar = t.polar_on_line(&k, &r, &p, &q);
        for (s, u) in [(1, 0), (0, 1), (1, 1), (3, 5)] {
            let (s, u) = (Fe(s), Fe(u));
            let x: Vec<Fe> = (0..3).map(|i| k.add(k.mul(s, p[i]), k.mul(u, q[i]))).collect();
            let g = t.gradient(&k, &x);
            let expect = (0..3).fold(Fe::ZERO, |acc, i| k.add(acc, k.mul(g[i], r[i])));
            assert_eq!(polar.eval(&k, s, u), expect);
        }
        let quad = QuadForm::from_form(&Form::from_i64_terms(&k, 3, 2, &[(vec![2, 0, 0], 3), (vec![0, 1, 1], 1)]).unwrap());
        assert_eq!(quad.to_form(&k).eval(&p), quad.eval(&k, &p));
    }

    #[test]
    fn smooth_cubic_is_integral() {
        let k = make_field(13, 1).unwrap();
        let e = cubic(&k, &[(vec![3, 0, 0], 1), (vec![0, 3, 0], 1), (vec![0, 0, 3], 1)]);
        assert!(is_geometrically_integral(&k, &e).unwrap());
        // Nodal y^2 z = x^3 + x^2 z.
        let nodal = cubic(&k, &[(vec![0, 2, 1], 1), (vec![3, 0, 0], -1), (vec![2, 0, 1], -1)]);
        assert!(is_geometrically_integral(&k, &nodal).unwrap());
    }

    #[test]
    fn reducible_cubics_are_detected() {
        let k = make_field(13, 1).unwrap();
        // x (x^2 + y^2 - z^2): line times conic.
        let e = cubic(&k, &[(vec![3, 0, 0], 1), (vec![1, 2, 0], 1), (vec![1, 0, 2], -1)]);
        assert!(!is_geometrically_integral(&k, &e).unwrap());
        // x^3 + y^3 + ... a product of three conjugate lines: x^3 - 2 y^3 (2 not a cube mod 13).
        let e = cubic(&k, &[(vec![3, 0, 0], 1), (vec![0, 3, 0], -2)]);
        assert!(!is_geometrically_integral(&k, &e).unwrap());
        let comps = line_components(&k, &e, false).unwrap();
        assert!(!comps.is_empty());
        for c in comps {
            let emb = Embedding::canonical(&k, &c.field).unwrap();
            assert!(e.embed(&emb).on_line(&c.field, &c.p, &c.q).is_zero());
        }
        // (x^2 - 2 y^2) z: conjugate lines over GF(169) and a rational one.
        let e = cubic(&k, &[(vec![2, 0, 1], 1), (vec![0, 2, 1], -2)]);
        assert!(!is_geometrically_integral(&k, &e).unwrap());
        // A conic through the probe roots plus a line component elsewhere.
        let e = cubic(&k, &[(vec![2, 1, 0], 1), (vec![0, 3, 0], 1), (vec![0, 1, 2], -1)]);
        assert!(!is_geometrically_integral(&k, &e).unwrap());
    }
}
