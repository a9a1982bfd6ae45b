//! Truncated power series `κ[π]/π^(N+1)` and jets of points.

use crate::error::{Error, Result};
use crate::field::{Embedding, Fe, Gf};
use crate::form::Form;
use crate::poly::Poly;
use crate::proj::ProjPoint;
use crate::ring::Ring;

/// `κ[π]/π^(N+1)`; elements are coefficient vectors of length `N + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetRing {
    field: Gf,
    order: usize,
}

pub type Jet = Vec<Fe>;

impl JetRing {
    pub fn new(field: &Gf, order: usize) -> JetRing {
        JetRing {
            field: field.clone(),
            order,
        }
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    /// The truncation order `N`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn constant(&self, c: Fe) -> Jet {
        let mut v = vec![Fe::ZERO; self.order + 1];
        v[0] = c;
        v
    }

    pub fn pi(&self) -> Jet {
        let mut v = vec![Fe::ZERO; self.order + 1];
        if self.order > 0 {
            v[1] = Fe::ONE;
        }
        v
    }

    /// Pads or truncates a coefficient list.
    pub fn from_coeffs(&self, c: &[Fe]) -> Jet {
        let mut v = c.to_vec();
        v.resize(self.order + 1, Fe::ZERO);
        v
    }

    pub fn residue(&self, a: &Jet) -> Fe {
        a[0]
    }

    pub fn is_unit(&self, a: &Jet) -> bool {
        !a[0].is_zero()
    }

    pub fn scale(&self, a: &Jet, c: Fe) -> Jet {
        a.iter().map(|&x| self.field.mul(x, c)).collect()
    }

    pub fn inv(&self, a: &Jet) -> Option<Jet> {
        let k = &self.field;
        let a0 = k.try_inv(a[0])?;
        let mut b = vec![Fe::ZERO; self.order + 1];
        b[0] = a0;
        for i in 1..=self.order {
            let mut s = Fe::ZERO;
            for j in 1..=i {
                s = k.add(s, k.mul(a[j], b[i - j]));
            }
            b[i] = k.neg(k.mul(s, a0));
        }
        Some(b)
    }

    /// The ring of order `k <= N` and the truncation map into it.
    pub fn truncated(&self, k: usize) -> JetRing {
        assert!(k <= self.order, "truncation order exceeds ring order");
        JetRing::new(&self.field, k)
    }

    pub fn truncate(a: &Jet, k: usize) -> Jet {
        a[..=k].to_vec()
    }

    /// The same order over a bigger field.
    pub fn extended(&self, e: &Embedding) -> JetRing {
        JetRing::new(e.big(), self.order)
    }

    pub fn embed(a: &Jet, e: &Embedding) -> Jet {
        a.iter().map(|&c| e.apply(c)).collect()
    }

    /// Coefficientwise `x -> x^base_order`.
    pub fn frobenius(&self, a: &Jet, base_order: u32) -> Jet {
        a.iter().map(|&c| self.field.frobenius(c, base_order)).collect()
    }

    /// `f(x)` for a polynomial with jet coefficients, constant term first.
    pub fn eval_poly(&self, f: &[Jet], x: &Jet) -> Jet {
        f.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// `f(x)` for a polynomial over `κ` (or a subfield embedded by `e`).
    pub fn eval_field_poly(&self, f: &Poly, x: &Jet, e: Option<&Embedding>) -> Jet {
        f.coeffs().iter().rev().fold(self.zero(), |acc, &c| {
            let c = e.map_or(c, |e| e.apply(c));
            self.add(&self.mul(&acc, x), &self.constant(c))
        })
    }

    /// Lifts a form over `κ` (or an embedded subfield) to constant jets.
    pub fn lift_form(&self, f: &Form<Gf>, e: Option<&Embedding>) -> Form<JetRing> {
        f.map_coeffs(self, |&c| self.constant(e.map_or(c, |e| e.apply(c))))
    }
}

impl Ring for JetRing {
    type Elem = Jet;

    fn zero(&self) -> Jet {
        vec![Fe::ZERO; self.order + 1]
    }
    fn one(&self) -> Jet {
        self.constant(Fe::ONE)
    }
    fn add(&self, a: &Jet, b: &Jet) -> Jet {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }
    fn neg(&self, a: &Jet) -> Jet {
        a.iter().map(|&x| self.field.neg(x)).collect()
    }
    fn sub(&self, a: &Jet, b: &Jet) -> Jet {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }
    fn mul(&self, a: &Jet, b: &Jet) -> Jet {
        let k = &self.field;
        let n = self.order + 1;
        let mut out = vec![Fe::ZERO; n];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b[..n - i].iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(x, y));
            }
        }
        out
    }
    fn is_zero(&self, a: &Jet) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    fn from_i64(&self, n: i64) -> Jet {
        self.constant(self.field.from_i64(n))
    }
}

/// The unique root of `f` (jet coefficients, constant term first) reducing to
/// the simple residue root `a0`.
pub fn hensel_lift(ring: &JetRing, f: &[Jet], a0: Fe) -> Result<Jet> {
    let k = ring.field();
    let residue = Poly::new(f.iter().map(|c| c[0]).collect());
    if residue.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !residue.eval(k, a0).is_zero() {
        return Err(Error::invalid("not a root of the residue polynomial"));
    }
    if residue.derivative(k).eval(k, a0).is_zero() {
        return Err(Error::MultipleRoot);
    }
    let df: Vec<Jet> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ring.mul(c, &ring.from_i64(i as i64)))
        .collect();
    let mut a = ring.constant(a0);
    // Each Newton step at least doubles the precision.
    let mut prec = 1;
    while prec <= ring.order() {
        let fa = ring.eval_poly(f, &a);
        let dfa = ring.eval_poly(&df, &a);
        let inv = ring.inv(&dfa).expect("unit derivative");
        a = ring.sub(&a, &ring.mul(&fa, &inv));
        prec *= 2;
    }
    debug_assert!(ring.is_zero(&ring.eval_poly(f, &a)));
    Ok(a)
}

/// A projective point over a jet ring, normalized so that its first unit
/// coordinate is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetPoint {
    ring: JetRing,
    coords: Vec<Jet>,
}

impl JetPoint {
    pub fn new(ring: &JetRing, coords: Vec<Jet>) -> Result<JetPoint> {
        if coords.iter().any(|c| c.len() != ring.order() + 1) {
            return Err(Error::invalid("jet coordinate of the wrong length"));
        }
        let p = coords
            .iter()
            .position(|c| ring.is_unit(c))
            .ok_or_else(|| Error::invalid("jet point without a unit coordinate"))?;
        let inv = ring.inv(&coords[p]).unwrap();
        let coords = coords.iter().map(|c| ring.mul(c, &inv)).collect();
        Ok(JetPoint {
            ring: ring.clone(),
            coords,
        })
    }

    pub fn ring(&self) -> &JetRing {
        &self.ring
    }

    pub fn coords(&self) -> &[Jet] {
        &self.coords
    }

    /// Index of the first unit coordinate (which equals one).
    pub fn pivot(&self) -> usize {
        self.coords.iter().position(|c| self.ring.is_unit(c)).unwrap()
    }

    pub fn residue(&self) -> ProjPoint {
        ProjPoint::new(self.ring.field(), self.coords.iter().map(|c| c[0]).collect()).expect("unit coordinate")
    }

    pub fn truncate(&self, k: usize) -> JetPoint {
        JetPoint {
            ring: self.ring.truncated(k),
            coords: self.coords.iter().map(|c| JetRing::truncate(c, k)).collect(),
        }
    }

    pub fn embed(&self, e: &Embedding) -> JetPoint {
        JetPoint {
            ring: self.ring.extended(e),
            coords: self.coords.iter().map(|c| JetRing::embed(c, e)).collect(),
        }
    }

    pub fn restrict(&self, e: &Embedding) -> Option<JetPoint> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.iter().map(|&x| e.restrict(x)).collect::<Option<Jet>>())
            .collect::<Option<Vec<Jet>>>()?;
        Some(JetPoint {
            ring: JetRing::new(e.small(), self.ring.order()),
            coords,
        })
    }

    pub fn frobenius(&self, base_order: u32) -> JetPoint {
        JetPoint {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| self.ring.frobenius(c, base_order)).collect(),
        }
    }

    pub fn lies_on(&self, f: &Form<JetRing>) -> bool {
        self.ring.is_zero(&f.eval(&self.coords))
    }
}

/// The jet line through `ŝ` with a constant direction, and its two residual
/// intersection points with the cubic over the quadratic extension.
#[derive(Clone, Debug)]
pub struct JetLine {
    pub base: JetPoint,
    pub direction: Vec<Fe>,
    /// `F(ρ ŝ + v) = c1 ρ^2 + c2 ρ + c3` up to the factor at `ŝ`.
    pub residual: [Jet; 3],
    pub roots: [Jet; 2],
    pub points: [JetPoint; 2],
}

/// Restricts `F(ŝ + σ v)` to a cubic polynomial in `σ` by interpolation at
/// four residue-field nodes.
fn restrict_to_jet_line(cubic: &Form<JetRing>, s: &[Jet], v: &[Jet]) -> Result<[Jet; 4]> {
    let ring = cubic.ring();
    let k = ring.field();
    let nodes: Vec<Fe> = k.elements().take(4).collect();
    if nodes.len() < 4 {
        return Err(Error::invalid("residue field too small to interpolate a cubic"));
    }
    let values: Vec<Jet> = nodes
        .iter()
        .map(|&t| {
            let x: Vec<Jet> = s.iter().zip(v).map(|(a, b)| ring.add(a, &ring.scale(b, t))).collect();
            cubic.eval(&x)
        })
        .collect();
    // Lagrange interpolation with constant nodes.
    let mut out: [Jet; 4] = std::array::from_fn(|_| ring.zero());
    for i in 0..4 {
        let mut basis = Poly::one();
        let mut denom = Fe::ONE;
        for j in 0..4 {
            if i != j {
                basis = basis.mul(&Poly::linear(k, nodes[j]), k);
                denom = k.mul(denom, k.sub(nodes[i], nodes[j]));
            }
        }
        let w = k.inv(denom);
        for (d, slot) in out.iter_mut().enumerate() {
            let c = k.mul(basis.coeff(d), w);
            *slot = ring.add(slot, &ring.scale(&values[i], c));
        }
    }
    Ok(out)
}

/// Intersects the jet line `ρ ŝ + v` with the jet cubic and Hensel-lifts the
/// two conjugate residual roots over `κ₂`, where `phi: κ -> κ₂`.
pub fn jet_line_third_points(cubic: &Form<JetRing>, s: &JetPoint, direction: &[Fe], phi: &Embedding) -> Result<JetLine> {
    let ring = cubic.ring();
    let k = ring.field();
    if s.ring() != ring || phi.small() != k {
        return Err(Error::mismatch("jet point, cubic and embedding disagree"));
    }
    if !s.lies_on(cubic) {
        return Err(Error::PointNotOnX);
    }
    let v: Vec<Jet> = direction.iter().map(|&c| ring.constant(c)).collect();
    let [_, c1, c2, c3] = restrict_to_jet_line(cubic, s.coords(), &v)?;
    // F(ŝ + σ v) = c1 σ + c2 σ^2 + c3 σ^3; with ρ = 1/σ the residual is c1 ρ^2 + c2 ρ + c3.
    if !ring.is_unit(&c1) {
        return Err(Error::invalid("the line is tangent at the base point"));
    }
    let k2 = phi.big().clone();
    let ring2 = ring.extended(phi);
    let res2: Vec<Jet> = [&c3, &c2, &c1].iter().map(|c| JetRing::embed(c, phi)).collect();
    let residue = Poly::new(res2.iter().map(|c| c[0]).collect());
    let roots0 = residue.roots_with_multiplicity(&k2);
    if roots0.iter().any(|&(_, m)| m > 1) {
        return Err(Error::MultipleRoot);
    }
    if roots0.len() != 2 || roots0.iter().any(|&(r, _)| phi.restrict(r).is_some()) {
        return Err(Error::invalid("residual roots are not a conjugate pair"));
    }
    let a = roots0[0].0;
    let b = k2.frobenius(a, k.order());
    let ra = hensel_lift(&ring2, &res2, a)?;
    let rb = hensel_lift(&ring2, &res2, b)?;
    let s2 = s.embed(phi);
    let v2: Vec<Jet> = v.iter().map(|c| JetRing::embed(c, phi)).collect();
    let point = |r: &Jet| {
        let coords = s2.coords().iter().zip(&v2).map(|(x, d)| ring2.add(&ring2.mul(r, x), d)).collect();
        JetPoint::new(&ring2, coords)
    };
    let pa = point(&ra)?;
    let pb = point(&rb)?;
    Ok(JetLine {
        base: s.clone(),
        direction: direction.to_vec(),
        residual: [c1, c2, c3],
        roots: [ra, rb],
        points: [pa, pb],
    })
}

impl JetLine {
    /// Vieta: `c1 (ρ' + ρ'') = -c2` and `c1 ρ' ρ'' = c3` in the jet ring.
    pub fn vieta_holds(&self, phi: &Embedding) -> bool {
        let ring2 = self.base.ring().extended(phi);
        let [c1, c2, c3] = self.residual.clone().map(|c| JetRing::embed(&c, phi));
        let sum = ring2.add(&self.roots[0], &self.roots[1]);
        let prod = ring2.mul(&self.roots[0], &self.roots[1]);
        ring2.mul(&c1, &sum) == ring2.neg(&c2) && ring2.mul(&c1, &prod) == c3
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn jet(k: &Gf, c: &[i64]) -> Jet {
        c.iter().map(|&x| k.from_i64(x)).collect()
    }

    #[test]
    fn square_root_of_one_plus_pi() {
        let k = make_field(7, 1).unwrap();
        let r = JetRing::new(&k, 2);
        let f = vec![jet(&k, &[-1, -1, 0]), r.zero(), r.one()];
        let a = hensel_lift(&r, &f, Fe::ONE).unwrap();
        assert_eq!(a, jet(&k, &[1, 4, 6]));
        assert_eq!(r.mul(&a, &a), jet(&k, &[1, 1, 0]));
        let g = vec![r.zero(), r.zero(), r.one()];
        assert_eq!(hensel_lift(&r, &g, Fe::ZERO), Err(Error::MultipleRoot));
    }

    #[test]
    fn inverse_and_normalization() {
        let k = make_field(11, 1).unwrap();
        let r = JetRing::new(&k, 3);
        let a = jet(&k, &[3, 1, 4, 1]);
        assert_eq!(r.mul(&a, &r.inv(&a).unwrap()), r.one());
        assert!(r.inv(&r.pi()).is_none());
        let p = JetPoint::new(&r, vec![r.pi(), a.clone(), r.one()]).unwrap();
        assert_eq!(p.pivot(), 1);
        assert_eq!(p.coords()[1], r.one());
        assert_eq!(p.truncate(1).coords()[1], jet(&k, &[1, 0]));
    }

    #[test]
    fn fermat_jet_line() {
        let k = make_field(11, 1).unwrap();
        let k2 = k.extension(2).unwrap();
        let phi = Embedding::canonical(&k, &k2).unwrap();
        let r = JetRing::new(&k, 2);
        let f = r.lift_form(&crate::form::fermat_cubic(&k, 4), None);
        // ŝ = [1 : -1 : π : -π] lies on the Fermat surface to all orders.
        let s = JetPoint::new(&r, vec![r.one(), r.neg(&r.one()), r.pi(), r.neg(&r.pi())]).unwrap();
        assert!(s.lies_on(&f));
        let line = jet_line_third_points(&f, &s, &[Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO], &phi).unwrap();
        let f2 = line.points[0].ring().lift_form(&crate::form::fermat_cubic(&k, 4), Some(&phi));
        for p in &line.points {
            assert!(p.lies_on(&f2));
        }
        assert_eq!(line.points[0].frobenius(11), line.points[1]);
        assert!(line.vieta_holds(&phi));
    }
}
