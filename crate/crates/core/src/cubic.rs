//! Cubic hypersurfaces: smoothness, nodes, third points on lines, the nodal
//! parametrization and rational curves joining two points.

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::field::{Embedding, Fe, Gf};
use crate::form::{BinaryForm, Form};
use crate::linalg::{self, Matrix};
use crate::poly::Poly;
use crate::proj::{self, LinearSubspace, ProjPoint, ProjSpace};

#[derive(Clone, Debug, PartialEq)]
pub struct CubicHypersurface {
    form: Form<Gf>,
    grad: Vec<Form<Gf>>,
}

/// How a line meets the cubic at its first point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contact {
    /// Both given points lie on the cubic.
    Transversal,
    /// The line is tangent at the first point; the second point spans it.
    Tangent,
}

/// Singular points found over each checked extension degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smoothness {
    /// `(extension degree, number of singular points over it)`.
    pub singular_counts: Vec<(u32, usize)>,
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        self.singular_counts.iter().all(|&(_, c)| c == 0)
    }

    /// Largest extension degree over which no singular point was found.
    pub fn certified_degree(&self) -> u32 {
        self.singular_counts
            .iter()
            .take_while(|&&(_, c)| c == 0)
            .map(|&(d, _)| d)
            .last()
            .unwrap_or(0)
    }
}

impl CubicHypersurface {
    pub fn new(form: Form<Gf>) -> Result<Self> {
        if form.degree() != 3 {
            return Err(Error::DegreeMismatch(format!("expected a cubic, got degree {}", form.degree())));
        }
        if form.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if form.nvars() < 3 {
            return Err(Error::invalid("a cubic hypersurface needs at least three variables"));
        }
        let grad = form.gradient();
        Ok(CubicHypersurface { form, grad })
    }

    pub fn form(&self) -> &Form<Gf> {
        &self.form
    }

    pub fn field(&self) -> &Gf {
        self.form.field()
    }

    /// Ambient dimension `n` (the form has `n + 1` variables).
    pub fn n(&self) -> usize {
        self.form.nvars() - 1
    }

    pub fn gradient(&self) -> &[Form<Gf>] {
        &self.grad
    }

    pub fn eval(&self, p: &[Fe]) -> Fe {
        self.form.eval(p)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.form.eval(p.coords()).is_zero()
    }

    pub fn gradient_at(&self, p: &[Fe]) -> Vec<Fe> {
        self.grad.iter().map(|g| g.eval(p)).collect()
    }

    pub fn is_smooth_point(&self, p: &ProjPoint) -> bool {
        self.contains(p) && self.gradient_at(p.coords()).iter().any(|c| !c.is_zero())
    }

    pub fn embed(&self, e: &Embedding) -> CubicHypersurface {
        CubicHypersurface::new(self.form.embed(e)).expect("embedding preserves the cubic")
    }

    fn over(&self, k: &Gf) -> Result<CubicHypersurface> {
        if k == self.field() {
            Ok(self.clone())
        } else {
            Ok(self.embed(&Embedding::canonical(self.field(), k)?))
        }
    }

    /// Points of `P^n(k)` where the form and all partials vanish.
    pub fn singular_points(&self, k: &Gf, budget: u64) -> Result<Vec<ProjPoint>> {
        let x = self.over(k)?;
        let mut forms = x.grad.clone();
        forms.push(x.form.clone());
        proj::common_zeros(&forms, k, budget)
    }

    pub fn has_singular_point(&self, k: &Gf, budget: u64) -> Result<bool> {
        let x = self.over(k)?;
        let mut forms = x.grad.clone();
        forms.push(x.form.clone());
        proj::has_common_zero(&forms, k, budget)
    }

    /// Singular point census over the extensions of degree `1..=limits.ext_depth`.
    pub fn smoothness(&self, limits: &Limits) -> Result<Smoothness> {
        let mut singular_counts = Vec::new();
        for d in 1..=limits.ext_depth {
            let k = self.field().extension(d)?;
            let c = self.singular_points(&k, limits.budget)?.len();
            singular_counts.push((d, c));
        }
        Ok(Smoothness { singular_counts })
    }

    /// Like [`smoothness`](Self::smoothness) but stops at the first singular point.
    pub fn is_smooth(&self, limits: &Limits) -> Result<bool> {
        for d in 1..=limits.ext_depth {
            let k = self.field().extension(d)?;
            if self.has_singular_point(&k, limits.budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `k`-points of the cubic, in enumeration order.
    pub fn points(&self, k: &Gf, budget: u64) -> Result<Vec<ProjPoint>> {
        let x = self.over(k)?;
        proj::common_zeros(&[x.form], k, budget)
    }

    /// Writes the cubic in a frame sending `p` to `[1:0:..:0]`.
    pub fn node_frame(&self, p: &ProjPoint) -> Result<NodeFrame> {
        let k = self.field();
        if k.p() == 2 {
            return Err(Error::CharTwoUnsupported);
        }
        if !self.contains(p) {
            return Err(Error::PointNotOnX);
        }
        let n = self.n();
        let j = p.pivot();
        // Columns: p, then the standard basis vectors other than e_j.
        let mut cols: Vec<Vec<Fe>> = vec![p.coords().to_vec()];
        for i in 0..=n {
            if i != j {
                let mut e = vec![Fe::ZERO; n + 1];
                e[i] = Fe::ONE;
                cols.push(e);
            }
        }
        let m = linalg::transpose(&cols);
        let g = self.form.linear_substitute(&m)?;
        let parts = g.split_by_var(0);
        let l = parts[2].remove_var(0);
        let q = parts[1].remove_var(0);
        let c = parts[0].remove_var(0);
        Ok(NodeFrame { change: m, l, q, c })
    }

    /// Whether `p` is a node: singular with a nondegenerate tangent cone.
    pub fn is_ordinary_double_point(&self, p: &ProjPoint) -> Result<bool> {
        let fr = self.node_frame(p)?;
        Ok(fr.l.is_zero() && fr.q_rank() == self.n())
    }

    pub fn restrict_to_line(&self, p: &[Fe], q: &[Fe]) -> BinaryForm {
        self.form.restrict_to_line(p, q).expect("arity checked")
    }

    /// The residual point on the line through `x` and `y`.
    ///
    /// With [`Contact::Transversal`] both points lie on the cubic and the
    /// result is `-a1 x + a2 y` where `s u (a2 s + a1 u)` is the restriction to
    /// `s x + u y`. With [`Contact::Tangent`] the line is tangent at `x` and the
    /// result is `-a0 x + a1 y` for the restriction `u^2 (a1 s + a0 u)`.
    pub fn third_point(&self, x: &ProjPoint, y: &ProjPoint, contact: Contact) -> Result<ProjPoint> {
        let k = self.field();
        if x == y {
            return Err(Error::DegeneratePair);
        }
        let b = self.restrict_to_line(x.coords(), y.coords());
        let c = b.coeffs();
        let (ca, cb) = match contact {
            Contact::Transversal => {
                if !c[0].is_zero() || !c[3].is_zero() {
                    return Err(Error::PointsNotOnX);
                }
                (c[2], c[1])
            }
            Contact::Tangent => {
                if !c[0].is_zero() {
                    return Err(Error::PointNotOnX);
                }
                if !c[1].is_zero() {
                    return Err(Error::invalid("line is not tangent at the first point"));
                }
                (c[3], c[2])
            }
        };
        if ca.is_zero() && cb.is_zero() {
            return Err(Error::LineContainedInX);
        }
        ProjPoint::new(k, linalg::combine(k, k.neg(ca), x.coords(), cb, y.coords()))
    }

    pub fn third_intersection(&self, x: &ProjPoint, y: &ProjPoint) -> Result<ProjPoint> {
        self.third_point(x, y, Contact::Transversal)
    }

    /// Normal vector of the tangent hyperplane at `x`.
    pub fn tangent_normal(&self, x: &ProjPoint) -> Result<Vec<Fe>> {
        let g = self.gradient_at(x.coords());
        if g.iter().all(|c| c.is_zero()) {
            return Err(Error::SingularPoint);
        }
        Ok(g)
    }

    pub fn tangent_hyperplane(&self, x: &ProjPoint) -> Result<LinearSubspace> {
        let g = self.tangent_normal(x)?;
        let h = LinearSubspace::hyperplane(self.field(), &g)?;
        debug_assert!(h.contains_point(self.field(), x));
        Ok(h)
    }

    /// `t_x(p)`: the third point on the line through `x` and `p`.
    pub fn tangent_involution(&self, x: &ProjPoint, p: &ProjPoint) -> Result<ProjPoint> {
        if x == p {
            return Err(Error::UndefinedAtBasePoint);
        }
        self.third_intersection(x, p)
    }

    /// Lines through `x` defined over `k` and contained in the cubic.
    pub fn lines_on_through(&self, x: &ProjPoint, k: &Gf, budget: u64) -> Result<Vec<LinearSubspace>> {
        let xk = self.over(k)?;
        if !xk.contains(x) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for v in proj::directions_through(x, k, budget)? {
            if xk.restrict_to_line(x.coords(), &v).is_zero() {
                out.push(LinearSubspace::span(k, &[x.coords().to_vec(), v])?);
            }
        }
        Ok(out)
    }

    /// The first line through `x` meeting the cubic in `x` and a conjugate
    /// pair of points over the quadratic extension.
    pub fn find_conjugate_pair_line(&self, x: &ProjPoint, budget: u64) -> Result<ConjugatePairLine> {
        let k = self.field();
        if !self.contains(x) {
            return Err(Error::PointNotOnX);
        }
        self.tangent_normal(x)?;
        let k2 = k.extension(2)?;
        let emb = Embedding::canonical(k, &k2)?;
        for v in proj::directions_through(x, k, budget)? {
            let b = self.restrict_to_line(x.coords(), &v);
            let c = b.coeffs();
            // f(s x + u v) = u (c1 s^2 + c2 s u + c3 u^2).
            if c[1].is_zero() {
                continue;
            }
            let residual = Poly::new(vec![c[3], c[2], c[1]]);
            if residual.count_distinct_roots(k) > 0 {
                continue;
            }
            let roots = residual.embed(&emb).roots(&k2);
            debug_assert_eq!(roots.len(), 2);
            let xe = x.embed(&emb).into_coords();
            let ve: Vec<Fe> = v.iter().map(|&a| emb.apply(a)).collect();
            let y = ProjPoint::new(&k2, linalg::combine(&k2, roots[0], &xe, Fe::ONE, &ve))?;
            let y_conj = y.frobenius(&k2, k.order());
            return Ok(ConjugatePairLine {
                line: LinearSubspace::span(k, &[x.coords().to_vec(), v.clone()])?,
                x: x.clone(),
                direction: v,
                residual: BinaryForm::new(vec![c[1], c[2], c[3]]),
                y,
                y_conj,
            });
        }
        Err(Error::not_found("conjugate-pair line"))
    }

    /// A rational curve of degree at most 6 through `x` and `y`.
    pub fn connect_points(&self, x: &ProjPoint, y: &ProjPoint, limits: &Limits) -> Result<Connection> {
        connect_points(self, x, y, limits)
    }
}

/// The cubic written as `Y0^2 L + Y0 Q + C` after a coordinate change sending
/// the base point to `[1:0:..:0]`; `L`, `Q`, `C` are forms in `Y1..Yn`.
#[derive(Clone, Debug)]
pub struct NodeFrame {
    /// `X = change * Y`; column 0 is the base point.
    pub change: Matrix,
    pub l: Form<Gf>,
    pub q: Form<Gf>,
    pub c: Form<Gf>,
}

impl NodeFrame {
    /// Symmetric matrix of `Q` with doubled diagonal.
    pub fn q_matrix(&self) -> Matrix {
        let k = self.q.field();
        let n = self.q.nvars();
        let mut b = vec![vec![Fe::ZERO; n]; n];
        for (e, &c) in self.q.terms() {
            let idx: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
            match idx.as_slice() {
                [i] => b[*i][*i] = k.mul(c, k.from_i64(2)),
                [i, j] => {
                    b[*i][*j] = c;
                    b[*j][*i] = c;
                }
                _ => unreachable!("quadratic monomial"),
            }
        }
        b
    }

    pub fn q_rank(&self) -> usize {
        linalg::rank(self.q.field(), &self.q_matrix())
    }
}

/// `phi = change * (-C, Y1 Q, .., Yn Q)`, a map from `P^(n-1)` to the cubic.
#[derive(Clone, Debug)]
pub struct NodalParametrization {
    pub frame: NodeFrame,
    pub map: Vec<Form<Gf>>,
}

impl NodalParametrization {
    /// Image of a point, or `None` where every coordinate vanishes.
    pub fn eval(&self, s: &[Fe]) -> Option<ProjPoint> {
        let k = self.frame.q.field();
        let v: Vec<Fe> = self.map.iter().map(|f| f.eval(s)).collect();
        ProjPoint::new(k, v).ok()
    }
}

pub fn nodal_parametrization(v: &CubicHypersurface, p: &ProjPoint) -> Result<NodalParametrization> {
    let frame = v.node_frame(p)?;
    if !frame.l.is_zero() || frame.q_rank() != v.n() {
        return Err(Error::NotOrdinaryDoublePoint);
    }
    let k = v.field();
    let n = v.n();
    let mut inner = vec![frame.c.neg()];
    for i in 0..n {
        inner.push(Form::var(k, n, i).mul(&frame.q));
    }
    let map: Vec<Form<Gf>> = frame
        .change
        .iter()
        .map(|row| {
            row.iter()
                .zip(&inner)
                .fold(Form::zero(k, n, 3), |acc, (&a, g)| acc.add(&g.scale(&a)))
        })
        .collect();
    Ok(NodalParametrization { frame, map })
}

#[derive(Clone, Debug)]
pub struct ConjugatePairLine {
    pub line: LinearSubspace,
    pub x: ProjPoint,
    /// Direction `v` with the line parametrized as `s x + u v`.
    pub direction: Vec<Fe>,
    /// Residual binary quadratic `c1 s^2 + c2 s u + c3 u^2`.
    pub residual: BinaryForm,
    /// A residual point over the quadratic extension, and its conjugate.
    pub y: ProjPoint,
    pub y_conj: ProjPoint,
}

/// A map `P^1 -> P^n` given by binary forms of common degree without common factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamCurve {
    coords: Vec<BinaryForm>,
}

impl ParamCurve {
    /// Divides out the common factor and scales canonically.
    pub fn new(k: &Gf, coords: Vec<BinaryForm>) -> Result<ParamCurve> {
        let d = coords.first().map(|c| c.degree()).ok_or_else(|| Error::invalid("empty curve"))?;
        if coords.iter().any(|c| c.degree() != d) {
            return Err(Error::DegreeMismatch("curve coordinates of different degrees".into()));
        }
        let mut g: Option<BinaryForm> = None;
        for c in &coords {
            g = match g {
                None => (!c.is_zero()).then(|| c.normalized(k)),
                Some(g) => g.gcd(c, k),
            };
        }
        let g = g.ok_or(Error::DegenerateSection)?;
        let mut coords: Vec<BinaryForm> = coords
            .iter()
            .map(|c| c.div_exact(&g, k).expect("gcd divides"))
            .collect();
        let lead = coords
            .iter()
            .flat_map(|c| c.coeffs().iter())
            .find(|c| !c.is_zero())
            .copied()
            .unwrap();
        let inv = k.inv(lead);
        for c in coords.iter_mut() {
            *c = c.scale(inv, k);
        }
        Ok(ParamCurve { coords })
    }

    pub fn coords(&self) -> &[BinaryForm] {
        &self.coords
    }

    pub fn degree(&self) -> usize {
        self.coords[0].degree()
    }

    pub fn eval(&self, k: &Gf, s: Fe, u: Fe) -> Option<ProjPoint> {
        ProjPoint::new(k, self.coords.iter().map(|c| c.eval(k, s, u)).collect()).ok()
    }

    /// `F(c(s, u))` as a binary form.
    pub fn pullback(&self, k: &Gf, f: &Form<Gf>) -> Result<Form<Gf>> {
        let g: Vec<Form<Gf>> = self.coords.iter().map(|c| c.to_form(k)).collect();
        f.compose(&g)
    }

    pub fn swap(&self) -> ParamCurve {
        ParamCurve {
            coords: self.coords.iter().map(|c| c.swap()).collect(),
        }
    }
}

/// Output of [`connect_points`] with the intermediate choices.
#[derive(Clone, Debug)]
pub struct Connection {
    pub curve: ParamCurve,
    pub z: ProjPoint,
    pub u: ProjPoint,
    /// Points of `H_x ∩ H_z ∩ X` skipped before `u`.
    pub skipped: usize,
    /// Largest extension degree over which `H_x ∩ H_z ∩ X` was checked smooth.
    pub smooth_degree: u32,
}

/// Basis of `h` with `first` as its first vector.
fn frame_with(k: &Gf, first: &[Fe], h: &LinearSubspace) -> Matrix {
    let mut out: Matrix = vec![first.to_vec()];
    for row in h.basis() {
        let mut trial = out.clone();
        trial.push(row.clone());
        if linalg::rank(k, &trial) == trial.len() {
            out = trial;
        }
    }
    out
}

/// Coordinates of `v` in the frame (rows are basis vectors), if `v` lies in its span.
fn frame_coords(k: &Gf, frame: &Matrix, v: &[Fe]) -> Option<Vec<Fe>> {
    let r = frame.len();
    let mut aug: Matrix = linalg::transpose(frame);
    for (row, &vi) in aug.iter_mut().zip(v) {
        row.push(vi);
    }
    let pivots = linalg::rref(k, &mut aug);
    if pivots.contains(&r) {
        return None;
    }
    let mut c = vec![Fe::ZERO; r];
    for (row, &pc) in aug.iter().zip(&pivots) {
        c[pc] = row[r];
    }
    Some(c)
}

fn restrict_to_frame(f: &Form<Gf>, frame: &Matrix) -> Result<Form<Gf>> {
    f.linear_substitute(&linalg::transpose(frame))
}

fn check_endpoints(x: &CubicHypersurface, a: &ProjPoint, b: &ProjPoint) -> Result<()> {
    if !x.contains(a) || !x.contains(b) {
        return Err(Error::PointsNotOnX);
    }
    if a == b {
        return Err(Error::DegeneratePair);
    }
    x.tangent_normal(a)?;
    x.tangent_normal(b)?;
    Ok(())
}

pub fn connect_points(x_: &CubicHypersurface, x: &ProjPoint, y: &ProjPoint, limits: &Limits) -> Result<Connection> {
    let k = x_.field().clone();
    let f = x_.form();
    check_endpoints(x_, x, y)?;
    let z = x_.third_intersection(x, y)?;
    if &z == x || &z == y {
        return Err(Error::hypothesis("z distinct from x and y", "third-point"));
    }
    let hz_normal = x_
        .tangent_normal(&z)
        .map_err(|_| Error::hypothesis("(2) z is a node of H_z ∩ X", "tangent-hyperplane"))?;
    let hx_normal = x_.tangent_normal(x)?;
    let hz = LinearSubspace::hyperplane(&k, &hz_normal)?;
    let hx = LinearSubspace::hyperplane(&k, &hx_normal)?;

    // V = X ∩ H_z in a frame whose first vector is z.
    let vframe = frame_with(&k, z.coords(), &hz);
    let v = CubicHypersurface::new(restrict_to_frame(f, &vframe)?)
        .map_err(|_| Error::hypothesis("(2) z is a node of H_z ∩ X", "nodal-section"))?;
    let mut e0 = vec![Fe::ZERO; v.n() + 1];
    e0[0] = Fe::ONE;
    let e0 = ProjPoint::new(&k, e0)?;
    let phi = match nodal_parametrization(&v, &e0) {
        Ok(phi) => phi,
        Err(Error::NotOrdinaryDoublePoint) => {
            return Err(Error::hypothesis("(2) z is a node of H_z ∩ X", "nodal-section"))
        }
        Err(e) => return Err(e),
    };
    let q = &phi.frame.q;
    let c = &phi.frame.c;

    // W = H_x ∩ H_z ∩ X must be a smooth cubic in P^(n-2).
    let plane = hx
        .intersect(&k, &hz)
        .filter(|p| p.dim() + 2 == x_.n())
        .ok_or_else(|| Error::hypothesis("(3) H_x ∩ H_z ∩ X is a smooth cubic", "tangent-hyperplanes-coincide"))?;
    let wform = restrict_to_frame(f, plane.basis())?;
    let w = CubicHypersurface::new(wform)
        .map_err(|_| Error::hypothesis("(3) H_x ∩ H_z ∩ X is a smooth cubic", "contained-in-X"))?;
    if !w.is_smooth(limits)? {
        return Err(Error::hypothesis("(3) H_x ∩ H_z ∩ X is a smooth cubic", "smoothness"));
    }

    // S: a point with Q(S) = 0 and C(S) != 0, so phi(S) = z.
    let sspace = ProjSpace::new(q.nvars() - 1, &k, limits.budget)?;
    let s_pt = sspace
        .iter()
        .find(|s| q.eval(s.coords()).is_zero() && !c.eval(s.coords()).is_zero())
        .ok_or(Error::NoAuxiliaryPoint)?;

    let mut candidates: Vec<ProjPoint> = w
        .points(&k, limits.budget)?
        .into_iter()
        .map(|p| ProjPoint::new(&k, plane.combination(&k, p.coords())).unwrap())
        .collect();
    candidates.sort();
    let grad_x = x_.gradient_at(x.coords());
    for (skipped, u) in candidates.iter().enumerate() {
        if let Some(curve) = curve_through(x_, &k, x, y, &z, u, &vframe, &phi, &s_pt, &grad_x) {
            return Ok(Connection {
                curve,
                z,
                u: u.clone(),
                skipped,
                smooth_degree: limits.ext_depth,
            });
        }
    }
    Err(Error::NoAuxiliaryPoint)
}

#[allow(clippy::too_many_arguments)]
fn curve_through(
    x_: &CubicHypersurface,
    k: &Gf,
    x: &ProjPoint,
    y: &ProjPoint,
    z: &ProjPoint,
    u: &ProjPoint,
    vframe: &Matrix,
    phi: &NodalParametrization,
    s_pt: &ProjPoint,
    grad_x: &[Fe],
) -> Option<ParamCurve> {
    if u == z {
        return None;
    }
    // B(u) = sum x_i dF/dX_i(u) must not vanish, so that t_x(u) = x.
    let b_u = linalg::dot(k, &x_.gradient_at(u.coords()), x.coords());
    if b_u.is_zero() {
        return None;
    }
    let uc = frame_coords(k, vframe, u.coords())?;
    let r = &uc[1..];
    if r.iter().all(|c| c.is_zero()) || phi.frame.q.eval(r).is_zero() {
        return None;
    }
    if ProjPoint::new(k, r.to_vec()).ok()? == *s_pt {
        return None;
    }
    // Gamma(s, w) = frame^T phi(s S + w r), a cubic curve from z to u.
    let line: Vec<Form<Gf>> = s_pt
        .coords()
        .iter()
        .zip(r)
        .map(|(&a, &b)| Form::linear(k, &[a, b]))
        .collect();
    let inner: Vec<Form<Gf>> = phi.map.iter().map(|g| g.compose(&line).unwrap()).collect();
    let gamma: Vec<BinaryForm> = (0..=x_.n())
        .map(|i| {
            let f = vframe
                .iter()
                .zip(&inner)
                .fold(Form::zero(k, 2, 3), |acc, (row, g)| acc.add(&g.scale(&row[i])));
            BinaryForm::from_form(&f)
        })
        .collect();
    let gamma = ParamCurve::new(k, gamma).ok()?;
    let gforms: Vec<Form<Gf>> = gamma.coords().iter().map(|c| c.to_form(k)).collect();
    // t_x along the curve: c = -B x + A Gamma.
    let a = Form::linear(k, grad_x).compose(&gforms).ok()?;
    let b = x_
        .gradient()
        .iter()
        .zip(x.coords())
        .fold(Form::zero(k, x_.n() + 1, 2), |acc, (g, &xi)| acc.add(&g.scale(&xi)))
        .compose(&gforms)
        .ok()?;
    let d = b.degree();
    let coords: Vec<BinaryForm> = (0..=x_.n())
        .map(|i| {
            let term = a.mul(&gforms[i]).sub(&b.scale(&x.coords()[i]));
            let mut f = BinaryForm::from_form(&term);
            if f.degree() != d as usize {
                f = BinaryForm::zero(d as usize);
            }
            f
        })
        .collect();
    let curve = ParamCurve::new(k, coords).ok()?.swap();
    let ok = curve.pullback(k, x_.form()).ok()?.is_zero()
        && curve.eval(k, Fe::ONE, Fe::ZERO).as_ref() == Some(x)
        && curve.eval(k, Fe::ZERO, Fe::ONE).as_ref() == Some(y);
    ok.then_some(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::form::fermat_cubic;

    fn pt(k: &Gf, v: &[i64]) -> ProjPoint {
        ProjPoint::from_i64(k, v).unwrap()
    }

    fn nodal_example(k: &Gf) -> CubicHypersurface {
        // X0 (X1 X2 - X3^2) + X1^3 + X2^3 + X3^3
        let f = Form::from_i64_terms(
            k,
            4,
            3,
            &[
                (vec![1, 1, 1, 0], 1),
                (vec![1, 0, 0, 2], -1),
                (vec![0, 3, 0, 0], 1),
                (vec![0, 0, 3, 0], 1),
                (vec![0, 0, 0, 3], 1),
            ],
        )
        .unwrap();
        CubicHypersurface::new(f).unwrap()
    }

    #[test]
    fn fermat_third_point() {
        let k = make_field(7, 1).unwrap();
        let x = CubicHypersurface::new(fermat_cubic(&k, 4)).unwrap();
        let a = pt(&k, &[1, -1, 0, 0]);
        let b = pt(&k, &[1, 0, -1, 0]);
        let z = x.third_intersection(&a, &b).unwrap();
        assert_eq!(z, pt(&k, &[0, 1, -1, 0]));
        assert_eq!(x.third_intersection(&b, &a).unwrap(), z);
        assert_eq!(x.tangent_involution(&a, &b).unwrap(), z);
        assert_eq!(x.tangent_involution(&a, &z).unwrap(), b);
        assert_eq!(
            x.third_intersection(&a, &pt(&k, &[0, 0, 1, -1])),
            Err(Error::LineContainedInX)
        );
        assert_eq!(x.tangent_involution(&a, &a), Err(Error::UndefinedAtBasePoint));
    }

    #[test]
    fn fermat_tangent_hyperplane() {
        let k = make_field(7, 1).unwrap();
        let x = CubicHypersurface::new(fermat_cubic(&k, 4)).unwrap();
        let h = x.tangent_hyperplane(&pt(&k, &[1, -1, 0, 0])).unwrap();
        let expect = LinearSubspace::hyperplane(&k, &[Fe(1), Fe(1), Fe(0), Fe(0)]).unwrap();
        assert_eq!(h, expect);
    }

    #[test]
    fn flex_tangent_returns_the_flex() {
        // On X0^3 + X1^3 + X2^3 the point [1:-1:0] is a flex with tangent X0 + X1 = 0.
        let k = make_field(7, 1).unwrap();
        let x = CubicHypersurface::new(fermat_cubic(&k, 3)).unwrap();
        let p = pt(&k, &[1, -1, 0]);
        let q = pt(&k, &[0, 0, 1]);
        assert!(x.tangent_hyperplane(&p).unwrap().contains_point(&k, &q));
        assert_eq!(x.third_point(&p, &q, Contact::Tangent).unwrap(), p);
    }

    #[test]
    fn singular_points_examples() {
        let k = make_field(7, 1).unwrap();
        let fermat = CubicHypersurface::new(fermat_cubic(&k, 4)).unwrap();
        let lim = Limits::default();
        assert!(fermat.smoothness(&lim).unwrap().is_smooth());
        let nodal = nodal_example(&k);
        assert_eq!(nodal.singular_points(&k, lim.budget).unwrap(), vec![pt(&k, &[1, 0, 0, 0])]);
        // The cube of a linear form is singular along its zero locus.
        let l = Form::linear(&k, &[Fe(1), Fe(2), Fe(0), Fe(3)]);
        let cube = CubicHypersurface::new(l.pow(3)).unwrap();
        let sing = cube.singular_points(&k, lim.budget).unwrap();
        assert_eq!(sing, cube.points(&k, lim.budget).unwrap());
        assert_eq!(sing.len(), 57);
    }

    #[test]
    fn ordinary_double_point_examples() {
        let k = make_field(7, 1).unwrap();
        let p = pt(&k, &[1, 0, 0, 0]);
        assert!(nodal_example(&k).is_ordinary_double_point(&p).unwrap());
        let f = Form::from_i64_terms(
            &k,
            4,
            3,
            &[(vec![1, 2, 0, 0], 1), (vec![0, 3, 0, 0], 1), (vec![0, 0, 3, 0], 1), (vec![0, 0, 0, 3], 1)],
        )
        .unwrap();
        assert!(!CubicHypersurface::new(f).unwrap().is_ordinary_double_point(&p).unwrap());
        let fermat = CubicHypersurface::new(fermat_cubic(&k, 4)).unwrap();
        assert!(!fermat.is_ordinary_double_point(&pt(&k, &[1, -1, 0, 0])).unwrap());
        let k2 = make_field(2, 1).unwrap();
        let f2 = CubicHypersurface::new(fermat_cubic(&k2, 4)).unwrap();
        assert_eq!(
            f2.is_ordinary_double_point(&pt(&k2, &[1, 1, 0, 0])),
            Err(Error::CharTwoUnsupported)
        );
    }

    #[test]
    fn nodal_map_example() {
        let k = make_field(7, 1).unwrap();
        let v = nodal_example(&k);
        let phi = nodal_parametrization(&v, &pt(&k, &[1, 0, 0, 0])).unwrap();
        let comp = v.form().compose(&phi.map).unwrap();
        assert!(comp.is_zero());
        assert_eq!(phi.eval(&[Fe(1), Fe(0), Fe(0)]).unwrap(), pt(&k, &[1, 0, 0, 0]));
        // phi is undefined exactly where Q and C both vanish; such S exist over GF(343).
        let k2 = make_field(7, 3).unwrap();
        let e = Embedding::canonical(&k, &k2).unwrap();
        let map: Vec<Form<Gf>> = phi.map.iter().map(|f| f.embed(&e)).collect();
        let (q, c) = (phi.frame.q.embed(&e), phi.frame.c.embed(&e));
        let mut undefined = 0;
        for s in ProjSpace::new(2, &k2, u64::MAX).unwrap().iter() {
            let img: Vec<Fe> = map.iter().map(|f| f.eval(s.coords())).collect();
            let both = q.eval(s.coords()).is_zero() && c.eval(s.coords()).is_zero();
            assert_eq!(img.iter().all(|a| a.is_zero()), both);
            undefined += both as usize;
        }
        assert!(undefined > 0);
    }

    #[test]
    fn conjugate_pair_on_fermat_surface() {
        let k = make_field(11, 1).unwrap();
        let x = CubicHypersurface::new(fermat_cubic(&k, 4)).unwrap();
        let p = pt(&k, &[1, -1, 0, 0]);
        let res = x.find_conjugate_pair_line(&p, u64::MAX).unwrap();
        let k2 = make_field(11, 2).unwrap();
        let x2 = x.embed(&Embedding::canonical(&k, &k2).unwrap());
        assert!(x2.contains(&res.y) && x2.contains(&res.y_conj));
        assert_ne!(res.y, res.y_conj);
        assert_eq!(res.y_conj.frobenius(&k2, 11), res.y);
    }

    #[test]
    fn lines_through_point_of_fermat_surface() {
        let k = make_field(7, 1).unwrap();
        let x = CubicHypersurface::new(fermat_cubic(&k, 4)).unwrap();
        let p = pt(&k, &[1, -1, 0, 0]);
        let lines = x.lines_on_through(&p, &k, u64::MAX).unwrap();
        let expect = LinearSubspace::span_points(&k, &[&p, &pt(&k, &[0, 0, 1, -1])]).unwrap();
        assert!(lines.contains(&expect));
        assert!(lines.len() <= 27);
        assert!(x.lines_on_through(&pt(&k, &[1, 0, 0, 0]), &k, u64::MAX).unwrap().is_empty());
    }

    #[test]
    fn connect_on_fermat_threefold() {
        let k = make_field(11, 1).unwrap();
        let x = CubicHypersurface::new(fermat_cubic(&k, 5)).unwrap();
        let lim = Limits::default();
        let pts = x.points(&k, lim.budget).unwrap();
        let mut done = 0;
        for i in (0..pts.len()).step_by(37) {
            for j in (i + 1..pts.len()).step_by(53).take(2) {
                if let Ok(c) = x.connect_points(&pts[i], &pts[j], &lim) {
                    assert!(c.curve.pullback(&k, x.form()).unwrap().is_zero());
                    assert_eq!(c.curve.eval(&k, Fe(1), Fe(0)).unwrap(), pts[i]);
                    assert_eq!(c.curve.eval(&k, Fe(0), Fe(1)).unwrap(), pts[j]);
                    assert!(c.curve.degree() <= 6);
                    done += 1;
                }
            }
            if done >= 3 {
                break;
            }
        }
        assert!(done >= 3);
    }
}
