//! Quartic del Pezzo surfaces: intersections of two quadrics in `P^4`.

use std::collections::BTreeSet;

use crate::dense::{line_components, QuadForm, TernaryCubic};
use crate::error::{Error, Result};
use crate::field::{Embedding, Fe, Gf};
use crate::form::{BinaryForm, Form};
use crate::linalg::{self, Matrix};
use crate::proj::{self, common_zeros, hyperplanes_through, subspaces, LinearSubspace, ProjPoint, ProjSpace};

/// `{q1 = q2 = 0}` in `P^4`.
#[derive(Clone, Debug)]
pub struct DelPezzo4 {
    field: Gf,
    quadrics: [Form<Gf>; 2],
    dense: [QuadForm; 2],
    discriminant: Option<BinaryForm>,
}

/// Discriminant certificate of a pencil of quadrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dp4Smoothness {
    pub smooth: bool,
    pub discriminant: BinaryForm,
    /// Degrees of the irreducible factors of the discriminant (a root at
    /// infinity counts as a factor of degree 1), with multiplicity.
    pub factor_degrees: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HyperplaneKind {
    Tangent,
    ContainsLine,
    ContainsConic,
    Good,
}

impl HyperplaneKind {
    pub fn name(self) -> &'static str {
        match self {
            HyperplaneKind::Tangent => "tangent",
            HyperplaneKind::ContainsLine => "contains-line",
            HyperplaneKind::ContainsConic => "contains-conic",
            HyperplaneKind::Good => "good",
        }
    }
}

/// Classification of every hyperplane through a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneCensus {
    pub q: u64,
    pub total: u64,
    pub tangent: u64,
    pub contains_line: u64,
    pub contains_conic: u64,
    pub good: u64,
    pub first_good: Option<Vec<Fe>>,
}

impl HyperplaneCensus {
    pub fn line_bound(&self) -> u64 {
        16 * (self.q + 1)
    }

    pub fn conic_bound(&self) -> u64 {
        5 * (self.q + 1)
    }

    pub fn expected_total(&self) -> u64 {
        let q = self.q;
        q * q * q + q * q + q + 1
    }

    /// Names of the counting bounds this census violates.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.contains_line > self.line_bound() {
            v.push("contains-line");
        }
        if self.contains_conic > self.conic_bound() {
            v.push("contains-conic");
        }
        if self.tangent != self.q + 1 {
            v.push("tangent");
        }
        if self.total != self.expected_total() {
            v.push("total");
        }
        v
    }
}

/// The projection of `H ∩ S` from `x` to a plane cubic.
///
/// Coordinates on `H` are `y0 x + y1 h1 + y2 h2 + y3 h3`; the restricted
/// quadrics read `y0 l_k(y') + r_k(y')` and the cubic is `l2 r1 - l1 r2`.
#[derive(Clone, Debug)]
pub struct PlaneProjection {
    pub frame: Matrix,
    pub l: [[Fe; 3]; 2],
    pub r: [QuadForm; 2],
    pub cubic: TernaryCubic,
}

impl PlaneProjection {
    fn build(k: &Gf, dense: &[QuadForm; 2], grads: &[Vec<Fe>; 2], frame: Matrix) -> PlaneProjection {
        let h = &frame[1..];
        let l: [[Fe; 3]; 2] = std::array::from_fn(|j| std::array::from_fn(|i| linalg::dot(k, &grads[j], &h[i])));
        let r: [QuadForm; 2] = std::array::from_fn(|j| dense[j].restrict(k, h));
        let cubic = TernaryCubic::lin_times_quad(k, &l[1], &r[0]).sub(k, &TernaryCubic::lin_times_quad(k, &l[0], &r[1]));
        PlaneProjection { frame, l, r, cubic }
    }

    pub fn cubic_form(&self, k: &Gf) -> Form<Gf> {
        self.cubic.to_form(k)
    }

    /// Whether `l1` and `l2` are dependent, i.e. `H` is tangent at `x`.
    pub fn is_tangent(&self, k: &Gf) -> bool {
        cross(k, &self.l[0], &self.l[1]).iter().all(|c| c.is_zero())
    }

    /// The image of `x` itself: the common zero of `l1` and `l2`.
    pub fn image_of_base(&self, k: &Gf) -> [Fe; 3] {
        cross(k, &self.l[0], &self.l[1])
    }

    /// Projects a point of `H` other than `x`.
    pub fn project(&self, k: &Gf, p: &ProjPoint) -> Result<ProjPoint> {
        let c = solve_in_frame(k, &self.frame, p.coords()).ok_or_else(|| Error::invalid("point not in the hyperplane"))?;
        ProjPoint::new(k, c[1..].to_vec()).map_err(|_| Error::invalid("cannot project the base point"))
    }

    /// Lifts a point `t` of the cubic (over `big`, an extension of `k`) back to
    /// `H ∩ S`. `None` at the image of `x`.
    pub fn lift(&self, k: &Gf, big: &Gf, t: &[Fe]) -> Result<Option<Vec<Fe>>> {
        let e = Embedding::canonical(k, big)?;
        for j in 0..2 {
            let l: Vec<Fe> = self.l[j].iter().map(|&c| e.apply(c)).collect();
            let lt = linalg::dot(big, &l, t);
            if lt.is_zero() {
                continue;
            }
            let rt = self.r[j].embed(&e).eval(big, t);
            let y0 = big.neg(big.div(rt, lt));
            let mut v: Vec<Fe> = self.frame[0].iter().map(|&c| big.mul(y0, e.apply(c))).collect();
            for i in 0..3 {
                let h: Vec<Fe> = self.frame[i + 1].iter().map(|&c| e.apply(c)).collect();
                v = linalg::axpy(big, t[i], &h, &v);
            }
            return Ok(Some(v));
        }
        Ok(None)
    }
}

/// A line of the plane on which a cubic has no rational point, with its
/// three conjugate intersection points.
#[derive(Clone, Debug)]
pub struct InertLine {
    pub line: LinearSubspace,
    pub cubic_field: Gf,
    pub points: Vec<ProjPoint>,
}

/// The output of the plane construction at a point.
#[derive(Clone, Debug)]
pub struct PlaneThroughPoint {
    pub hyperplane: LinearSubspace,
    pub plane: LinearSubspace,
    pub cubic_field: Gf,
    pub residual: Vec<ProjPoint>,
}

fn cross(k: &Gf, a: &[Fe; 3], b: &[Fe; 3]) -> [Fe; 3] {
    [
        k.sub(k.mul(a[1], b[2]), k.mul(a[2], b[1])),
        k.sub(k.mul(a[2], b[0]), k.mul(a[0], b[2])),
        k.sub(k.mul(a[0], b[1]), k.mul(a[1], b[0])),
    ]
}

/// Coordinates of `v` in the basis `frame` (rows), if `v` lies in their span.
fn solve_in_frame(k: &Gf, frame: &Matrix, v: &[Fe]) -> Option<Vec<Fe>> {
    let n = frame.len();
    let mut aug: Matrix = linalg::transpose(frame);
    for (row, &x) in aug.iter_mut().zip(v) {
        row.push(x);
    }
    let pivots = linalg::rref(k, &mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut c = vec![Fe::ZERO; n];
    for (row, &p) in aug.iter().zip(&pivots) {
        c[p] = row[n];
    }
    Some(c)
}

/// `x` followed by three rows of `basis` completing it to a basis of `H`.
fn frame_from(k: &Gf, basis: &Matrix, x: &[Fe]) -> Matrix {
    let c = solve_in_frame(k, basis, x).expect("x lies in H");
    let drop = c.iter().position(|v| !v.is_zero()).expect("x is nonzero");
    let mut frame = vec![x.to_vec()];
    frame.extend(basis.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, r)| r.clone()));
    frame
}

/// Basis of the hyperplane `a . v = 0` adapted to a point on it: `x`, then
/// `e_i - (a_i / a_j) e_j` for the coordinates `i != j` except the first one
/// where `x` is nonzero.
fn hyperplane_frame(k: &Gf, a: &[Fe], x: &[Fe]) -> Matrix {
    let j = a.iter().position(|c| !c.is_zero()).expect("nonzero normal");
    let inv = k.inv(a[j]);
    let drop = (0..a.len()).find(|&i| i != j && !x[i].is_zero()).expect("x spans with the basis");
    let mut frame = vec![x.to_vec()];
    for i in (0..a.len()).filter(|&i| i != j && i != drop) {
        let mut v = vec![Fe::ZERO; a.len()];
        v[i] = Fe::ONE;
        v[j] = k.neg(k.mul(a[i], inv));
        frame.push(v);
    }
    frame
}

impl DelPezzo4 {
    pub fn new(q1: Form<Gf>, q2: Form<Gf>) -> Result<DelPezzo4> {
        for q in [&q1, &q2] {
            if q.nvars() != 5 {
                return Err(Error::ArityMismatch {
                    expected: 5,
                    got: q.nvars(),
                });
            }
            if q.degree() != 2 {
                return Err(Error::DegreeMismatch(format!("expected quadrics, got degree {}", q.degree())));
            }
        }
        if q1.field() != q2.field() {
            return Err(Error::mismatch("quadrics over different fields"));
        }
        let field = q1.field().clone();
        let dense = [QuadForm::from_form(&q1), QuadForm::from_form(&q2)];
        let rows: Matrix = dense.iter().map(|d| d.coeffs().to_vec()).collect();
        if linalg::rank(&field, &rows) < 2 {
            return Err(Error::invalid("the quadrics are proportional"));
        }
        let discriminant = (field.p() != 2).then(|| pencil_determinant(&field, &dense));
        Ok(DelPezzo4 {
            field,
            quadrics: [q1, q2],
            dense,
            discriminant,
        })
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn quadrics(&self) -> &[Form<Gf>; 2] {
        &self.quadrics
    }

    pub fn dense(&self) -> &[QuadForm; 2] {
        &self.dense
    }

    /// `det(s A + u B)` for the Gram matrices of the quadrics (char != 2).
    pub fn discriminant(&self) -> Option<&BinaryForm> {
        self.discriminant.as_ref()
    }

    pub fn contains(&self, p: &[Fe]) -> bool {
        self.dense.iter().all(|d| d.eval(&self.field, p).is_zero())
    }

    fn gradients(&self, k: &Gf, dense: &[QuadForm; 2], v: &[Fe]) -> [Vec<Fe>; 2] {
        [dense[0].gradient(k, v), dense[1].gradient(k, v)]
    }

    /// Whether `p` (over the base field) is a smooth point of the surface.
    pub fn is_smooth_point(&self, p: &ProjPoint) -> bool {
        let v = p.coords();
        self.contains(v) && linalg::rank(&self.field, &self.gradients(&self.field, &self.dense, v).to_vec()) == 2
    }

    fn check_smooth_point(&self, x: &ProjPoint) -> Result<()> {
        if x.n() != 4 {
            return Err(Error::ArityMismatch {
                expected: 5,
                got: x.n() + 1,
            });
        }
        if !self.contains(x.coords()) {
            return Err(Error::PointNotOnX);
        }
        if !self.is_smooth_point(x) {
            return Err(Error::SingularPoint);
        }
        Ok(())
    }

    pub fn smoothness(&self) -> Result<Dp4Smoothness> {
        let disc = self.discriminant.clone().ok_or(Error::CharTwoUnsupported)?;
        let k = &self.field;
        let f = disc.to_poly();
        let at_infinity = disc.degree() - f.degree().unwrap_or(0);
        let mut factor_degrees = Vec::new();
        let smooth = if disc.is_zero() {
            false
        } else {
            let mut sqfree_part = f.clone();
            // Factor degrees with multiplicity: peel repeated factors by gcd.
            while !sqfree_part.is_constant() {
                let d = sqfree_part.derivative(k);
                let g = sqfree_part.gcd(&d, k);
                let core = sqfree_part.div_exact(&g, k).expect("gcd divides");
                if core.is_constant() {
                    // Inseparable remainder: a p-th power, only possible for p <= 5.
                    factor_degrees.push(sqfree_part.degree().unwrap());
                    break;
                }
                factor_degrees.extend(core.factor_degrees(k));
                sqfree_part = g;
            }
            factor_degrees.extend(std::iter::repeat(1).take(at_infinity));
            factor_degrees.sort_unstable();
            f.is_squarefree(k) && at_infinity <= 1
        };
        Ok(Dp4Smoothness {
            smooth,
            discriminant: disc,
            factor_degrees,
        })
    }

    pub fn is_smooth(&self) -> Result<bool> {
        Ok(self.smoothness()?.smooth)
    }

    pub fn embed(&self, e: &Embedding) -> DelPezzo4 {
        DelPezzo4::new(self.quadrics[0].embed(e), self.quadrics[1].embed(e)).expect("embedding preserves shape")
    }

    fn over(&self, k: &Gf) -> Result<DelPezzo4> {
        if k == &self.field {
            Ok(self.clone())
        } else {
            Ok(self.embed(&Embedding::canonical(&self.field, k)?))
        }
    }

    /// Points of the surface over `k`, in enumeration order.
    pub fn points(&self, k: &Gf, budget: u64) -> Result<Vec<ProjPoint>> {
        let s = self.over(k)?;
        common_zeros(&s.quadrics, k, budget)
    }

    /// Singular points over `k` by an exhaustive Jacobian-rank scan.
    pub fn singular_points(&self, k: &Gf, budget: u64) -> Result<Vec<ProjPoint>> {
        let s = self.over(k)?;
        Ok(s.points(k, budget)?
            .into_iter()
            .filter(|p| linalg::rank(k, &s.gradients(k, &s.dense, p.coords()).to_vec()) < 2)
            .collect())
    }

    /// Smooth rational points.
    pub fn smooth_points(&self, budget: u64) -> Result<Vec<ProjPoint>> {
        Ok(self
            .points(&self.field, budget)?
            .into_iter()
            .filter(|p| self.is_smooth_point(p))
            .collect())
    }

    /// Every `k`-line on the surface, found through its `k`-points: at a
    /// smooth point the lines lie in the tangent plane, a pencil of `q + 1`.
    pub fn rational_lines(&self, k: &Gf, budget: u64) -> Result<Vec<LinearSubspace>> {
        let s = self.over(k)?;
        let mut out = BTreeSet::new();
        for x in s.points(k, budget)? {
            let xv = x.coords();
            let g = s.gradients(k, &s.dense, xv);
            if linalg::rank(k, &g.to_vec()) < 2 {
                // Singular point: every direction in the cone must be tried.
                for v in proj::directions_through(&x, k, budget)? {
                    if s.dense.iter().all(|d| d.eval(k, &v).is_zero() && d.polar(k, xv, &v).is_zero()) {
                        out.insert(LinearSubspace::span(k, &[xv.to_vec(), v])?);
                    }
                }
                continue;
            }
            let ker = linalg::kernel(k, &g.to_vec(), 5);
            let frame = frame_from(k, &ker, xv);
            let (a, b) = (&frame[1], &frame[2]);
            for i in 0..=k.order() as u64 {
                let (su, uu) = if i == 0 {
                    (Fe::ZERO, Fe::ONE)
                } else {
                    (Fe::ONE, k.elements().nth(i as usize - 1).unwrap())
                };
                let v = linalg::combine(k, su, a, uu, b);
                if s.dense.iter().all(|d| d.eval(k, &v).is_zero()) {
                    out.insert(LinearSubspace::span(k, &[xv.to_vec(), v])?);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Every `k`-line on the surface by a scan of the whole Grassmannian.
    pub fn rational_lines_scan(&self, k: &Gf, budget: u64) -> Result<Vec<LinearSubspace>> {
        let s = self.over(k)?;
        Ok(subspaces(4, 1, k, budget)?
            .filter(|l| {
                let b = l.basis();
                s.dense.iter().all(|d| d.on_line(k, &b[0], &b[1]).iter().all(|c| c.is_zero()))
            })
            .collect())
    }

    fn classify_frame(&self, grads: &[Vec<Fe>; 2], frame: Matrix) -> Result<HyperplaneKind> {
        let k = &self.field;
        let proj = PlaneProjection::build(k, &self.dense, grads, frame);
        if proj.is_tangent(k) {
            return Ok(HyperplaneKind::Tangent);
        }
        let d = proj.image_of_base(k);
        if proj.r.iter().all(|r| r.eval(k, &d).is_zero()) {
            return Ok(HyperplaneKind::ContainsLine);
        }
        if proj.cubic.is_zero() {
            return Ok(HyperplaneKind::ContainsLine);
        }
        let comps = line_components(k, &proj.cubic, false)?;
        let mut kind = HyperplaneKind::Good;
        for c in comps {
            let big = &c.field;
            let e = Embedding::canonical(k, big)?;
            let lift = |y: &[Fe; 3]| -> Vec<Fe> {
                let mut v = vec![Fe::ZERO; 5];
                for i in 0..3 {
                    let h: Vec<Fe> = proj.frame[i + 1].iter().map(|&c| e.apply(c)).collect();
                    v = linalg::axpy(big, y[i], &h, &v);
                }
                v
            };
            let x: Vec<Fe> = proj.frame[0].iter().map(|&c| e.apply(c)).collect();
            let plane = [x, lift(&c.p), lift(&c.q)];
            let conics: Vec<QuadForm> = self.dense.iter().map(|d| d.embed(&e).restrict(big, &plane)).collect();
            let rows: Matrix = conics.iter().map(|c| c.coeffs().to_vec()).collect();
            if linalg::rank(big, &rows) < 2 {
                let conic = conics.iter().find(|c| !c.is_zero()).expect("plane not inside both quadrics");
                if linalg::rank(big, &conic.matrix(big)) == 3 {
                    kind = kind.min(HyperplaneKind::ContainsConic);
                    continue;
                }
            }
            return Ok(HyperplaneKind::ContainsLine);
        }
        Ok(kind)
    }

    /// Classifies the hyperplane with normal `a` through the smooth point `x`.
    pub fn classify_hyperplane(&self, x: &ProjPoint, a: &[Fe]) -> Result<HyperplaneKind> {
        self.check_smooth_point(x)?;
        let k = &self.field;
        if !linalg::dot(k, a, x.coords()).is_zero() {
            return Err(Error::invalid("hyperplane does not contain the point"));
        }
        let grads = self.gradients(k, &self.dense, x.coords());
        self.classify_frame(&grads, hyperplane_frame(k, a, x.coords()))
    }

    /// Classifies every hyperplane through `x`.
    pub fn hyperplane_census(&self, x: &ProjPoint, budget: u64) -> Result<HyperplaneCensus> {
        self.check_smooth_point(x)?;
        let k = &self.field;
        let grads = self.gradients(k, &self.dense, x.coords());
        let mut c = HyperplaneCensus {
            q: k.order() as u64,
            total: 0,
            tangent: 0,
            contains_line: 0,
            contains_conic: 0,
            good: 0,
            first_good: None,
        };
        for a in hyperplanes_through(x, k, budget)? {
            c.total += 1;
            match self.classify_frame(&grads, hyperplane_frame(k, &a, x.coords()))? {
                HyperplaneKind::Tangent => c.tangent += 1,
                HyperplaneKind::ContainsLine => c.contains_line += 1,
                HyperplaneKind::ContainsConic => c.contains_conic += 1,
                HyperplaneKind::Good => {
                    c.good += 1;
                    if c.first_good.is_none() {
                        c.first_good = Some(a);
                    }
                }
            }
        }
        Ok(c)
    }

    /// The first hyperplane through `x` that is not tangent there and meets
    /// the surface in a geometrically integral curve.
    pub fn good_hyperplane(&self, x: &ProjPoint, budget: u64) -> Result<LinearSubspace> {
        self.check_smooth_point(x)?;
        let k = &self.field;
        let grads = self.gradients(k, &self.dense, x.coords());
        for a in hyperplanes_through(x, k, budget)? {
            if self.classify_frame(&grads, hyperplane_frame(k, &a, x.coords()))? == HyperplaneKind::Good {
                return LinearSubspace::hyperplane(k, &a);
            }
        }
        Err(Error::not_found("hyperplane"))
    }

    /// Projects `H ∩ S` from `x` into the plane.
    pub fn project_from_point(&self, h: &LinearSubspace, x: &ProjPoint) -> Result<PlaneProjection> {
        if !self.contains(x.coords()) {
            return Err(Error::PointNotOnX);
        }
        let k = &self.field;
        if h.ambient() != 4 || h.dim() != 3 || !h.contains_point(k, x) {
            return Err(Error::invalid("expected a hyperplane of P^4 through the point"));
        }
        let grads = self.gradients(k, &self.dense, x.coords());
        let proj = PlaneProjection::build(k, &self.dense, &grads, frame_from(k, h.basis(), x.coords()));
        if proj.is_tangent(k) || proj.cubic.is_zero() {
            return Err(Error::DegenerateSection);
        }
        Ok(proj)
    }

    /// A plane through `x` meeting the surface in `x` and one Galois orbit of
    /// three points over the cubic extension.
    pub fn find_plane(&self, x: &ProjPoint, budget: u64) -> Result<PlaneThroughPoint> {
        let k = &self.field;
        let h = self.good_hyperplane(x, budget)?;
        let proj = self
            .project_from_point(&h, x)
            .map_err(|_| Error::not_found("projection"))?;
        let cubic = proj.cubic_form(k);
        let inert = find_inert_line(&cubic, budget)?;
        let k3 = inert.cubic_field.clone();
        let lb = inert.line.basis();
        let lift_rational = |y: &[Fe]| {
            (0..3).fold(vec![Fe::ZERO; 5], |acc, i| linalg::axpy(k, y[i], &proj.frame[i + 1], &acc))
        };
        let plane = LinearSubspace::span(k, &[x.coords().to_vec(), lift_rational(&lb[0]), lift_rational(&lb[1])])?;
        let mut residual = Vec::new();
        for t in &inert.points {
            let v = proj.lift(k, &k3, t.coords())?.ok_or_else(|| Error::not_found("plane"))?;
            residual.push(ProjPoint::new(&k3, v).map_err(|_| Error::not_found("plane"))?);
        }
        self.verify_plane(x, &plane, &k3, &residual)?;
        Ok(PlaneThroughPoint {
            hyperplane: h,
            plane,
            cubic_field: k3,
            residual,
        })
    }

    /// Checks that `plane ∩ S` is `x` plus the three residual points as a
    /// scheme: the conics cut on the plane meet transversally at `x` and at
    /// three distinct conjugate non-rational points.
    pub fn verify_plane(&self, x: &ProjPoint, plane: &LinearSubspace, k3: &Gf, residual: &[ProjPoint]) -> Result<()> {
        let k = &self.field;
        let fail = || Error::not_found("plane");
        let e = Embedding::canonical(k, k3)?;
        let s3 = self.embed(&e);
        let plane3 = plane.embed(&e);
        if residual.len() != 3 {
            return Err(fail());
        }
        for p in residual {
            if !s3.contains(p.coords()) || !plane3.contains_point(k3, p) || p.restrict(&e).is_some() {
                return Err(fail());
            }
        }
        let distinct: BTreeSet<&ProjPoint> = residual.iter().collect();
        if distinct.len() != 3 || residual[0].frobenius(k3, k.order()) != residual[1] && residual[0].frobenius(k3, k.order()) != residual[2] {
            return Err(fail());
        }
        let frame = frame_from(k, plane.basis(), x.coords());
        let conics: Vec<QuadForm> = self.dense.iter().map(|d| d.restrict(k, &frame)).collect();
        let origin = [Fe::ONE, Fe::ZERO, Fe::ZERO];
        let grads: Matrix = conics.iter().map(|c| c.gradient(k, &origin)).collect();
        if conics.iter().any(|c| !c.eval(k, &origin).is_zero()) || linalg::rank(k, &grads) < 2 {
            return Err(fail());
        }
        Ok(())
    }
}

/// `det(s A + u B)` by the Leibniz expansion.
fn pencil_determinant(k: &Gf, dense: &[QuadForm; 2]) -> BinaryForm {
    let a = dense[0].matrix(k);
    let b = dense[1].matrix(k);
    let n = a.len();
    let mut total = BinaryForm::zero(n);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = true;
    // Heap's algorithm, tracking the parity of each swap.
    let mut c = vec![0usize; n];
    let add = |perm: &[usize], sign: bool, total: &mut BinaryForm| {
        let mut t = BinaryForm::new(vec![Fe::ONE]);
        for (i, &j) in perm.iter().enumerate() {
            t = t.mul(&BinaryForm::new(vec![a[i][j], b[i][j]]), k);
            if t.is_zero() {
                return;
            }
        }
        *total = if sign { total.add(&t, k) } else { total.sub(&t, k) };
    };
    add(&perm, sign, &mut total);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = !sign;
            add(&perm, sign, &mut total);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

/// Line classification of a plane cubic over its field of definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCubicCensus {
    pub q: u64,
    pub characteristic: u64,
    /// Points over the base field and its quadratic extension.
    pub n: u64,
    pub m: u64,
    pub singular_points: Vec<ProjPoint>,
    pub integral: bool,
    pub tangent: u64,
    pub through_singular: u64,
    pub split: u64,
    pub mixed: u64,
    pub inert: u64,
    pub contained: u64,
}

impl PlaneCubicCensus {
    pub fn total(&self) -> u64 {
        self.tangent + self.through_singular + self.split + self.mixed + self.inert + self.contained
    }

    pub fn is_smooth(&self) -> bool {
        self.integral && self.singular_points.is_empty()
    }

    /// Lines meeting the curve in a rational point.
    pub fn avoided(&self) -> u64 {
        self.tangent + self.split + self.mixed
    }

    /// Names of the counting bounds violated by this census. Only smooth and
    /// integral singular cubics carry bounds.
    pub fn violations(&self) -> Vec<&'static str> {
        let q = self.q;
        let (n, m) = (self.n, self.m);
        let mut v = Vec::new();
        if self.total() != q * q + q + 1 {
            v.push("partition");
        }
        if n > m {
            v.push("n<=m");
        }
        if self.is_smooth() {
            let dn = n as i64 - (q as i64 + 1);
            if (dn * dn) as u64 > 4 * q {
                v.push("hasse-weil");
            }
            if m > 1 + q * q + 2 * q {
                v.push("m-bound");
            }
            if self.tangent != n && self.characteristic != 3 {
                v.push("tangent=n");
            }
            if 2 * self.mixed > m - n {
                v.push("mixed");
            }
            if self.split > n * n.saturating_sub(1) / 6 {
                v.push("split");
            }
            if 6 * self.avoided() > n * (n + 2) + 3 * m {
                v.push("avoid-total");
            }
        } else if self.integral {
            let (n1, m1) = (n - 1, m - 1);
            if !(q - 1..=q + 1).contains(&n1) {
                v.push("singular-n");
            }
            if m1 != q * q && m1 != q * q - 1 {
                v.push("singular-m");
            }
            if self.through_singular != q + 1 {
                v.push("singular-pencil");
            }
        }
        v
    }

    /// Whether the tangent tally differs from `n` (possible only in char 3).
    pub fn tangent_gap(&self) -> bool {
        self.is_smooth() && self.tangent != self.n
    }
}

fn plane_points(k: &Gf) -> impl Iterator<Item = ProjPoint> {
    let space = ProjSpace::new(2, k, u64::MAX).expect("small plane");
    (0..space.count()).map(move |i| space.point_at(i))
}

/// Classifies every rational line of the plane against a cubic.
pub fn classify_lines(cubic: &Form<Gf>) -> Result<PlaneCubicCensus> {
    if cubic.nvars() != 3 || cubic.degree() != 3 {
        return Err(Error::invalid("expected a ternary cubic"));
    }
    if cubic.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let k = cubic.field();
    let e = TernaryCubic::from_form(cubic);
    let integral = crate::dense::is_geometrically_integral(k, &e)?;
    let mut n = 0;
    let mut singular_points = Vec::new();
    for p in plane_points(k) {
        if e.eval(k, p.coords()).is_zero() {
            n += 1;
            if e.gradient(k, p.coords()).iter().all(|c| c.is_zero()) {
                singular_points.push(p);
            }
        }
    }
    let k2 = k.extension(2)?;
    let e2 = e.embed(&Embedding::canonical(k, &k2)?);
    let m = plane_points(&k2).filter(|p| e2.eval(&k2, p.coords()).is_zero()).count() as u64;
    let mut c = PlaneCubicCensus {
        q: k.order() as u64,
        characteristic: k.p() as u64,
        n,
        m,
        singular_points,
        integral,
        tangent: 0,
        through_singular: 0,
        split: 0,
        mixed: 0,
        inert: 0,
        contained: 0,
    };
    for line in subspaces(2, 1, k, u64::MAX)? {
        let b = line.basis();
        let r = e.on_line(k, &b[0], &b[1]);
        if r.is_zero() {
            c.contained += 1;
            continue;
        }
        if c.singular_points.iter().any(|p| line.contains_point(k, p)) {
            c.through_singular += 1;
            continue;
        }
        let roots = r.roots(k);
        if roots.iter().any(|&(_, mult)| mult >= 2) {
            c.tangent += 1;
        } else {
            match roots.len() {
                3 => c.split += 1,
                1 => c.mixed += 1,
                _ => c.inert += 1,
            }
        }
    }
    Ok(c)
}

/// The first rational line on which the cubic has no rational point.
pub fn find_inert_line(cubic: &Form<Gf>, budget: u64) -> Result<InertLine> {
    if cubic.nvars() != 3 || cubic.degree() != 3 {
        return Err(Error::invalid("expected a ternary cubic"));
    }
    let k = cubic.field();
    let e = TernaryCubic::from_form(cubic);
    for line in subspaces(2, 1, k, budget)? {
        let b = line.basis();
        let r = e.on_line(k, &b[0], &b[1]);
        if r.is_zero() || !r.roots(k).is_empty() {
            continue;
        }
        let k3 = k.extension(3)?;
        let emb = Embedding::canonical(k, &k3)?;
        let r3 = r.map_coeffs(|c| emb.apply(c));
        let (p, q): (Vec<Fe>, Vec<Fe>) = (
            b[0].iter().map(|&c| emb.apply(c)).collect(),
            b[1].iter().map(|&c| emb.apply(c)).collect(),
        );
        let points = r3
            .roots(&k3)
            .into_iter()
            .map(|((s, u), _)| ProjPoint::new(&k3, linalg::combine(&k3, s, &p, u, &q)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(InertLine {
            line,
            cubic_field: k3,
            points,
        });
    }
    Err(Error::not_found("inert-line"))
}

/// Searches diagonal pencils `sum b_i X_i^2`, `sum a_i b_i X_i^2` over `k`,
/// `a` strictly increasing and `b_i` in `{1, c}` for the least non-square
/// `c`, for a smooth surface all of whose lines are rational.
pub fn find_split_dp4(k: &Gf, budget: u64) -> Result<DelPezzo4> {
    if k.p() == 2 {
        return Err(Error::CharTwoUnsupported);
    }
    let elems: Vec<Fe> = k.elements().collect();
    let nonsquare = elems
        .iter()
        .copied()
        .find(|&c| !c.is_zero() && !k.is_square(c))
        .expect("odd characteristic has non-squares");
    let q = elems.len();
    let mut a_idx = vec![0usize; 5];
    fn next_combination(idx: &mut [usize], n: usize) -> bool {
        let r = idx.len();
        for i in (0..r).rev() {
            if idx[i] < n - r + i {
                idx[i] += 1;
                for j in i + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
    for (i, v) in a_idx.iter_mut().enumerate() {
        *v = i;
    }
    if q < 5 {
        return Err(Error::not_found("split-dp4"));
    }
    loop {
        let a: Vec<Fe> = a_idx.iter().map(|&i| elems[i]).collect();
        for mask in 0u32..16 {
            let b: Vec<Fe> = (0..5)
                .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { nonsquare } else { Fe::ONE })
                .collect();
            let s = diagonal_pair(k, &b, &a)?;
            if s.rational_lines(k, budget)?.len() == 16 {
                return Ok(s);
            }
        }
        if !next_combination(&mut a_idx, q) {
            break;
        }
    }
    Err(Error::not_found("split-dp4"))
}

/// `sum b_i X_i^2 = sum a_i b_i X_i^2 = 0`.
pub fn diagonal_pair(k: &Gf, b: &[Fe], a: &[Fe]) -> Result<DelPezzo4> {
    let sq = |i: usize| {
        let mut e = vec![0u16; 5];
        e[i] = 2;
        e
    };
    let q1 = Form::from_terms(k, 5, 2, (0..5).map(|i| (sq(i), b[i])))?;
    let q2 = Form::from_terms(k, 5, 2, (0..5).map(|i| (sq(i), k.mul(a[i], b[i]))))?;
    DelPezzo4::new(q1, q2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn diag(k: &Gf, a: &[i64]) -> DelPezzo4 {
        let b = vec![Fe::ONE; 5];
        let a: Vec<Fe> = a.iter().map(|&x| k.from_i64(x)).collect();
        diagonal_pair(k, &b, &a).unwrap()
    }

    #[test]
    fn diagonal_smoothness() {
        let k = make_field(13, 1).unwrap();
        let s = diag(&k, &[0, 1, 2, 3, 4]);
        let c = s.smoothness().unwrap();
        assert!(c.smooth);
        assert_eq!(c.factor_degrees, vec![1, 1, 1, 1, 1]);
        let t = diag(&k, &[1, 1, 2, 3, 4]);
        assert!(!t.is_smooth().unwrap());
        // The cone point of the repeated member is singular.
        assert!(!t.singular_points(&k, 1 << 30).unwrap().is_empty());
        let k2 = make_field(2, 1).unwrap();
        let x = Form::from_i64_terms(&k2, 5, 2, &[(vec![2, 0, 0, 0, 0], 1), (vec![0, 1, 1, 0, 0], 1)]).unwrap();
        let y = Form::from_i64_terms(&k2, 5, 2, &[(vec![0, 0, 0, 2, 0], 1), (vec![0, 0, 0, 1, 1], 1)]).unwrap();
        assert!(matches!(DelPezzo4::new(x, y).unwrap().smoothness(), Err(Error::CharTwoUnsupported)));
    }

    #[test]
    fn determinant_matches_diagonal_product() {
        let k = make_field(7, 1).unwrap();
        let s = diag(&k, &[0, 1, 2, 3, 5]);
        // det(s A + u B) = prod (2 s + 2 a_i u).
        let mut expect = BinaryForm::new(vec![Fe::ONE]);
        for a in [0, 1, 2, 3, 5] {
            expect = expect.mul(&BinaryForm::from_i64(&k, &[2, 2 * a]), &k);
        }
        assert_eq!(s.discriminant().unwrap(), &expect);
    }

    #[test]
    fn lines_agree_with_grassmannian_scan() {
        let k = make_field(5, 1).unwrap();
        for a in [[0, 1, 2, 3, 4], [0, 1, 2, 4, 3]] {
            let s = diag(&k, &a);
            let fast = s.rational_lines(&k, 1 << 30).unwrap();
            let scan = s.rational_lines_scan(&k, 1 << 30).unwrap();
            assert_eq!(fast, scan);
            assert!(fast.len() <= 16);
        }
    }

    #[test]
    fn census_partition_and_good_hyperplane() {
        let k = make_field(7, 1).unwrap();
        let s = diag(&k, &[0, 1, 2, 3, 5]);
        let pts = s.smooth_points(1 << 30).unwrap();
        assert!(!pts.is_empty());
        let x = &pts[0];
        let c = s.hyperplane_census(x, 1 << 30).unwrap();
        assert_eq!(c.total, 7 * 7 * 7 + 7 * 7 + 7 + 1);
        assert_eq!(c.tangent, 8);
        assert_eq!(c.total, c.tangent + c.contains_line + c.contains_conic + c.good);
        let h = s.good_hyperplane(x, 1 << 30).unwrap();
        let proj = s.project_from_point(&h, x).unwrap();
        let cubic = proj.cubic_form(&k);
        assert!(classify_lines(&cubic).unwrap().integral);
        for p in &pts {
            if p != x && h.contains_point(&k, p) {
                let img = proj.project(&k, p).unwrap();
                assert!(cubic.eval(img.coords()).is_zero());
            }
        }
    }

    #[test]
    fn plane_cubic_census_fermat() {
        let k = make_field(13, 1).unwrap();
        let f = crate::form::fermat_cubic(&k, 3);
        let c = classify_lines(&f).unwrap();
        assert!(c.is_smooth());
        assert_eq!(c.total(), 183);
        assert!(c.violations().is_empty(), "{:?}", c.violations());
        let inert = find_inert_line(&f, 1 << 20).unwrap();
        assert_eq!(inert.points.len(), 3);
    }

    #[test]
    fn plane_construction() {
        let k = make_field(13, 1).unwrap();
        let s = diag(&k, &[0, 1, 2, 3, 5]);
        let x = &s.smooth_points(1 << 30).unwrap()[0];
        let res = s.find_plane(x, 1 << 30).unwrap();
        assert!(res.plane.contains_point(&k, x));
        assert_eq!(res.residual.len(), 3);
    }
}
