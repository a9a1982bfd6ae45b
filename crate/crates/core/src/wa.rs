//! Cubic models over the projective line: places, reductions, sections and
//! their jets, bounded-degree section search, and descent from the quadratic
//! extension of the constant field.

use std::fmt;

use crate::config::Limits;
use crate::cubic::{ConjugatePairLine, CubicHypersurface};
use crate::error::{Error, Result};
use crate::field::{Embedding, Fe, Gf};
use crate::form::Form;
use crate::jets::{jet_line_third_points, Jet, JetLine, JetPoint, JetRing};
use crate::linalg;
use crate::poly::Poly;
use crate::proj::{self, ProjPoint, ProjSpace};
use crate::ring::{PolyRing, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceKind {
    /// A monic irreducible polynomial in `t`.
    Finite(Poly),
    Infinity,
}

/// A closed point of the projective `t`-line over `base`.
#[derive(Clone, Debug)]
pub struct Place {
    base: Gf,
    kind: PlaceKind,
    residue: Gf,
    to_residue: Embedding,
    /// Image of `t` in the residue field (zero at infinity, where `u = 1/t`).
    theta: Fe,
}

impl PartialEq for Place {
    fn eq(&self, other: &Place) -> bool {
        self.base == other.base && self.kind == other.kind
    }
}

impl Eq for Place {}

impl Place {
    pub fn finite(base: &Gf, p: &Poly) -> Result<Place> {
        if p.deg() < 1 {
            return Err(Error::invalid("a place needs a polynomial of positive degree"));
        }
        let p = p.monic(base);
        if !p.is_irreducible(base) {
            return Err(Error::invalid(format!("{} is not irreducible", poly_name(base, &p))));
        }
        let residue = base.extension(p.deg() as u32)?;
        let to_residue = Embedding::canonical(base, &residue)?;
        let theta = p.embed(&to_residue).roots(&residue)[0];
        Ok(Place {
            base: base.clone(),
            kind: PlaceKind::Finite(p),
            residue,
            to_residue,
            theta,
        })
    }

    /// The place `t = a`.
    pub fn linear(base: &Gf, a: Fe) -> Place {
        Place::finite(base, &Poly::linear(base, a)).expect("linear polynomials are irreducible")
    }

    pub fn infinity(base: &Gf) -> Place {
        Place {
            base: base.clone(),
            kind: PlaceKind::Infinity,
            residue: base.clone(),
            to_residue: Embedding::identity(base),
            theta: Fe::ZERO,
        }
    }

    pub fn base(&self) -> &Gf {
        &self.base
    }

    pub fn kind(&self) -> &PlaceKind {
        &self.kind
    }

    pub fn residue_field(&self) -> &Gf {
        &self.residue
    }

    pub fn to_residue(&self) -> &Embedding {
        &self.to_residue
    }

    pub fn theta(&self) -> Fe {
        self.theta
    }

    pub fn degree(&self) -> u32 {
        match &self.kind {
            PlaceKind::Finite(p) => p.deg() as u32,
            PlaceKind::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.kind == PlaceKind::Infinity
    }

    pub fn name(&self) -> String {
        match &self.kind {
            PlaceKind::Finite(p) => poly_name(&self.base, p),
            PlaceKind::Infinity => "inf".to_string(),
        }
    }

    pub fn jet_ring(&self, order: usize) -> JetRing {
        JetRing::new(&self.residue, order)
    }

    /// `t` as a power series in the uniformizer `π = P(t)`.
    fn t_series(&self, p: &Poly, order: usize) -> Jet {
        let ring = self.jet_ring(order);
        let mut f: Vec<Jet> = p.coeffs().iter().map(|&c| ring.constant(self.to_residue.apply(c))).collect();
        f[0] = ring.sub(&f[0], &ring.pi());
        crate::jets::hensel_lift(&ring, &f, self.theta).expect("separable place polynomial")
    }

    /// Expansion of `f` to the given order; at infinity `f` is first reversed
    /// relative to `degree`.
    pub fn expand(&self, f: &Poly, degree: usize, order: usize) -> Jet {
        let ring = self.jet_ring(order);
        match &self.kind {
            PlaceKind::Finite(p) => {
                let t = self.t_series(p, order);
                ring.eval_field_poly(f, &t, Some(&self.to_residue))
            }
            PlaceKind::Infinity => {
                let r = f.reverse(degree);
                ring.from_coeffs(&r.coeffs()[..r.coeffs().len().min(order + 1)])
            }
        }
    }

    /// Expansions of `1, t, .., t^degree` (reversed at infinity).
    fn monomial_expansions(&self, degree: usize, order: usize) -> Vec<Jet> {
        let ring = self.jet_ring(order);
        match &self.kind {
            PlaceKind::Finite(p) => {
                let t = self.t_series(p, order);
                let mut out = vec![ring.one()];
                for j in 0..degree {
                    out.push(ring.mul(&out[j], &t));
                }
                out
            }
            PlaceKind::Infinity => (0..=degree)
                .map(|j| {
                    let mut v = ring.zero();
                    if degree - j <= order {
                        v[degree - j] = Fe::ONE;
                    }
                    v
                })
                .collect(),
        }
    }

    /// The same place over an extension of odd relative degree, together with
    /// the induced embedding of residue fields.
    pub fn embed(&self, big: &Gf) -> Result<(Place, Embedding)> {
        let e = Embedding::canonical(&self.base, big)?;
        match &self.kind {
            PlaceKind::Infinity => Ok((Place::infinity(big), e)),
            PlaceKind::Finite(p) => {
                let d = p.deg() as u32;
                let rel = big.degree() / self.base.degree();
                if d > 1 && rel % 2 == 0 {
                    return Err(Error::invalid(format!(
                        "place {} splits over {big:?}",
                        self.name()
                    )));
                }
                let residue = big.extension(d)?;
                let phi = Embedding::canonical(&self.residue, &residue)?;
                let to_residue = Embedding::compatible(big, &residue, &e, &self.to_residue.then(&phi)?)?;
                Ok((
                    Place {
                        base: big.clone(),
                        kind: PlaceKind::Finite(p.embed(&e)),
                        residue,
                        to_residue,
                        theta: phi.apply(self.theta),
                    },
                    phi,
                ))
            }
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `t^2+3t+1` style rendering; coefficients in the canonical element encoding,
/// bracketed over extension fields.
pub fn poly_name(k: &Gf, p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let coeff = |c: Fe| {
        if k.degree() == 1 {
            k.encode(c)
        } else {
            format!("[{}]", k.encode(c))
        }
    };
    let mut parts = Vec::new();
    for (i, &c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        };
        parts.push(match (i, c == Fe::ONE) {
            (0, _) => coeff(c),
            (_, true) => mono,
            _ => format!("{}{mono}", coeff(c)),
        });
    }
    parts.join("+")
}

/// Finite places of degree `1..=max_degree` in order of degree then
/// coefficients, followed by the place at infinity.
pub fn places_up_to(k: &Gf, max_degree: u32, budget: u64) -> Result<Vec<Place>> {
    let q = k.order() as u64;
    let mut out = Vec::new();
    for d in 1..=max_degree {
        let count = q.checked_pow(d).filter(|&c| c <= budget).ok_or(Error::SizeExceeded {
            what: "monic polynomials",
            size: (q as u128).pow(d),
            budget: budget as u128,
        })?;
        for idx in 0..count {
            let mut c = Vec::with_capacity(d as usize + 1);
            let mut r = idx;
            for _ in 0..d {
                c.push(Fe((r % q) as u32));
                r /= q;
            }
            c.push(Fe::ONE);
            let p = Poly::new(c);
            if p.is_irreducible(k) {
                out.push(Place::finite(k, &p)?);
            }
        }
    }
    out.push(Place::infinity(k));
    Ok(out)
}

/// A cubic form over `k[t]`.
#[derive(Clone, Debug)]
pub struct ModelX {
    field: Gf,
    form: Form<PolyRing>,
    coeff_degree: usize,
    degree_bound: u32,
    statuses: Vec<PlaceStatus>,
}

/// Reduction type of the model at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceStatus {
    pub place: Place,
    pub smooth: bool,
    /// The reduction is zero or has no smooth point over the residue field.
    pub degenerate: bool,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub cubic: CubicHypersurface,
    pub smooth: bool,
    pub degenerate: bool,
}

impl ModelX {
    /// Builds the model and classifies every place of degree at most
    /// `degree_bound`, and the place at infinity.
    pub fn new(form: Form<PolyRing>, degree_bound: u32, limits: &Limits) -> Result<ModelX> {
        if form.degree() != 3 {
            return Err(Error::DegreeMismatch(format!("expected a cubic, got degree {}", form.degree())));
        }
        if form.nvars() < 3 {
            return Err(Error::invalid("a cubic model needs at least three variables"));
        }
        if form.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let field = form.ring().field.clone();
        let coeff_degree = form.terms().map(|(_, c)| c.deg().max(0) as usize).max().unwrap_or(0);
        let mut model = ModelX {
            field,
            form,
            coeff_degree,
            degree_bound,
            statuses: Vec::new(),
        };
        for place in places_up_to(&model.field, degree_bound, limits.budget)? {
            let status = match model.reduce_at_place(&place, limits) {
                Ok(r) => PlaceStatus {
                    place,
                    smooth: r.smooth,
                    degenerate: r.degenerate,
                },
                Err(Error::DegenerateReduction) => PlaceStatus {
                    place,
                    smooth: false,
                    degenerate: true,
                },
                Err(e) => return Err(e),
            };
            model.statuses.push(status);
        }
        Ok(model)
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn form(&self) -> &Form<PolyRing> {
        &self.form
    }

    pub fn nvars(&self) -> usize {
        self.form.nvars()
    }

    pub fn coeff_degree(&self) -> usize {
        self.coeff_degree
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn statuses(&self) -> &[PlaceStatus] {
        &self.statuses
    }

    pub fn bad_places(&self) -> impl Iterator<Item = &PlaceStatus> {
        self.statuses.iter().filter(|s| !s.smooth)
    }

    pub fn status(&self, place: &Place) -> Option<&PlaceStatus> {
        self.statuses.iter().find(|s| &s.place == place)
    }

    /// Good reduction at `place`, from the precomputed table when possible;
    /// otherwise certified over residue extensions of degree up to
    /// `ext_depth / deg(place)`.
    pub fn has_good_reduction(&self, place: &Place, limits: &Limits) -> Result<bool> {
        if let Some(s) = self.status(place) {
            return Ok(s.smooth);
        }
        let scaled = Limits {
            ext_depth: (limits.ext_depth / place.degree()).max(1),
            ..*limits
        };
        match self.reduce_at_place(place, &scaled) {
            Ok(r) => Ok(r.smooth),
            Err(Error::DegenerateReduction) => Ok(false),
            Err(e) => Err(e),
        }
    }

    fn check_place(&self, place: &Place) -> Result<()> {
        if place.base() != &self.field {
            return Err(Error::mismatch(format!(
                "place over {:?}, model over {:?}",
                place.base(),
                self.field
            )));
        }
        Ok(())
    }

    /// The model's form over the completed local ring, to order `order`.
    pub fn jet_form(&self, place: &Place, order: usize) -> Result<Form<JetRing>> {
        self.check_place(place)?;
        let ring = place.jet_ring(order);
        Ok(self.form.map_coeffs(&ring, |c| place.expand(c, self.coeff_degree, order)))
    }

    /// The reduced form over the residue field (possibly zero).
    pub fn fiber_form(&self, place: &Place) -> Result<Form<Gf>> {
        self.check_place(place)?;
        let k = place.residue_field();
        Ok(self
            .form
            .map_coeffs(k, |c| place.expand(c, self.coeff_degree, 0)[0]))
    }

    /// The fiber over `t = a`.
    pub fn specialize(&self, a: Fe) -> Form<Gf> {
        self.form.map_coeffs(&self.field, |c| c.eval(&self.field, a))
    }

    pub fn reduce_at_place(&self, place: &Place, limits: &Limits) -> Result<Reduction> {
        let f = self.fiber_form(place)?;
        if f.is_zero() {
            return Err(Error::DegenerateReduction);
        }
        let cubic = CubicHypersurface::new(f)?;
        let smooth = cubic.is_smooth(limits)?;
        let degenerate = !smooth && {
            let k = place.residue_field();
            !cubic
                .points(k, limits.budget)?
                .iter()
                .any(|p| cubic.is_smooth_point(p))
        };
        Ok(Reduction {
            cubic,
            smooth,
            degenerate,
        })
    }

    pub fn contains_section(&self, s: &Section) -> bool {
        s.field() == &self.field && s.nvars() == self.nvars() && self.form.eval(s.coords()).is_zero()
    }

    /// The model with constant field extended to `big`; place classifications
    /// carry over for places that stay irreducible.
    pub fn embed(&self, big: &Gf) -> Result<ModelX> {
        let e = Embedding::canonical(&self.field, big)?;
        let ring = PolyRing::new(big.clone());
        let form = self.form.map_coeffs(&ring, |c| c.embed(&e));
        let statuses = self
            .statuses
            .iter()
            .filter_map(|s| {
                s.place.embed(big).ok().map(|(place, _)| PlaceStatus {
                    place,
                    smooth: s.smooth,
                    degenerate: s.degenerate,
                })
            })
            .collect();
        Ok(ModelX {
            field: big.clone(),
            form,
            coeff_degree: self.coeff_degree,
            degree_bound: self.degree_bound,
            statuses,
        })
    }

    /// Whether the section passes through a smooth point of every singular,
    /// non-degenerate classified fiber.
    pub fn meets_smooth_locus(&self, s: &Section) -> bool {
        self.statuses.iter().filter(|st| !st.smooth && !st.degenerate).all(|st| {
            let Ok(f) = self.fiber_form(&st.place) else {
                return false;
            };
            let x = section_jet(s, &st.place, 0).residue();
            f.gradient().iter().any(|g| !g.eval(x.coords()).is_zero())
        })
    }
}

/// A tuple of coprime polynomials, scaled so the first nonzero coordinate is monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    field: Gf,
    coords: Vec<Poly>,
}

impl Section {
    pub fn new(field: &Gf, coords: Vec<Poly>) -> Result<Section> {
        let g = coords.iter().fold(Poly::zero(), |g, c| g.gcd(c, field));
        if g.is_zero() {
            return Err(Error::invalid("all section coordinates vanish"));
        }
        let mut coords: Vec<Poly> = coords.iter().map(|c| c.div_exact(&g, field).unwrap()).collect();
        let lead = coords.iter().find(|c| !c.is_zero()).unwrap().lead();
        let inv = field.inv(lead);
        for c in &mut coords {
            *c = c.scale(inv, field);
        }
        Ok(Section {
            field: field.clone(),
            coords,
        })
    }

    pub fn from_i64(field: &Gf, coords: &[&[i64]]) -> Result<Section> {
        Section::new(field, coords.iter().map(|c| Poly::from_i64(field, c)).collect())
    }

    /// A section with constant coordinates.
    pub fn constant_over(field: &Gf, point: &[Fe]) -> Result<Section> {
        Section::new(field, point.iter().map(|&c| Poly::constant(c)).collect())
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    pub fn degree(&self) -> usize {
        self.coords.iter().map(|c| c.deg().max(0) as usize).max().unwrap()
    }

    pub fn eval(&self, a: Fe) -> ProjPoint {
        let v = self.coords.iter().map(|c| c.eval(&self.field, a)).collect();
        ProjPoint::new(&self.field, v).expect("coprime coordinates")
    }

    pub fn embed(&self, big: &Gf) -> Result<Section> {
        let e = Embedding::canonical(&self.field, big)?;
        Ok(Section {
            field: big.clone(),
            coords: self.coords.iter().map(|c| c.embed(&e)).collect(),
        })
    }

    /// The same section over `small`, if its coefficients lie there.
    pub fn restrict(&self, small: &Gf) -> Option<Section> {
        let e = Embedding::canonical(small, &self.field).ok()?;
        let coords = self.coords.iter().map(|c| c.restrict(&e)).collect::<Option<Vec<_>>>()?;
        Some(Section {
            field: small.clone(),
            coords,
        })
    }

    /// Coefficientwise `x -> x^base_order`.
    pub fn frobenius(&self, base_order: u32) -> Section {
        let k = &self.field;
        Section::new(
            k,
            self.coords
                .iter()
                .map(|c| c.map_coeffs(|x| k.frobenius(x, base_order)))
                .collect(),
        )
        .expect("nonzero")
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| poly_name(&self.field, c)).collect();
        format!("[{}]", parts.join(" : "))
    }
}

/// Taylor expansion of the section at `place` to order `order`.
pub fn section_jet(s: &Section, place: &Place, order: usize) -> JetPoint {
    assert!(s.field() == place.base(), "section and place over different fields");
    let d = s.degree();
    let coords = s.coords().iter().map(|c| place.expand(c, d, order)).collect();
    JetPoint::new(&place.jet_ring(order), coords).expect("coprime sections have a unit coordinate")
}

/// Whether `s` agrees with `jet` modulo `π^(N+1)`, with `N` the jet's order.
pub fn congruence_check(s: &Section, jet: &JetPoint, place: &Place) -> bool {
    s.field() == place.base()
        && jet.ring() == &place.jet_ring(jet.ring().order())
        && &section_jet(s, place, jet.ring().order()) == jet
}

/// Jets prescribed at distinct places of good reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct JData {
    order: usize,
    places: Vec<Place>,
    jets: Vec<JetPoint>,
}

impl JData {
    pub fn new(model: &ModelX, order: usize, places: Vec<Place>, jets: Vec<JetPoint>, limits: &Limits) -> Result<JData> {
        if places.len() != jets.len() {
            return Err(Error::ArityMismatch {
                expected: places.len(),
                got: jets.len(),
            });
        }
        for (i, (b, jet)) in places.iter().zip(&jets).enumerate() {
            model.check_place(b)?;
            if places[..i].contains(b) {
                return Err(Error::invalid(format!("place {b} repeated")));
            }
            if jet.ring() != &b.jet_ring(order) || jet.coords().len() != model.nvars() {
                return Err(Error::mismatch(format!("jet at {b} has the wrong ring or arity")));
            }
            if !model.has_good_reduction(b, limits)? {
                return Err(Error::BadPlaceInJData(b.name()));
            }
            if !jet.lies_on(&model.jet_form(b, order)?) {
                return Err(Error::PointNotOnX);
            }
        }
        Ok(JData { order, places, jets })
    }

    /// The jets of a section at the given places.
    pub fn from_section(model: &ModelX, s: &Section, order: usize, places: Vec<Place>, limits: &Limits) -> Result<JData> {
        let jets = places.iter().map(|b| section_jet(s, b, order)).collect();
        JData::new(model, order, places, jets, limits)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn jets(&self) -> &[JetPoint] {
        &self.jets
    }

    /// Sum of the residue degrees.
    pub fn total_degree(&self) -> u32 {
        self.places.iter().map(|b| b.degree()).sum()
    }

    pub fn is_satisfied_by(&self, s: &Section) -> bool {
        self.places.iter().zip(&self.jets).all(|(b, j)| congruence_check(s, j, b))
    }
}

/// Per-degree size of the linearized search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLevel {
    pub degree: usize,
    pub unknowns: usize,
    pub kernel_dim: usize,
    pub candidates: u64,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub section: Option<Section>,
    pub levels: Vec<SearchLevel>,
}

struct Checker<'a> {
    model: &'a ModelX,
    jdata: &'a JData,
    probes: Vec<(Fe, Form<Gf>)>,
}

impl<'a> Checker<'a> {
    fn new(model: &'a ModelX, jdata: &'a JData) -> Checker<'a> {
        let probes = model
            .field()
            .elements()
            .take(4)
            .map(|a| (a, model.specialize(a)))
            .collect();
        Checker { model, jdata, probes }
    }

    fn accept(&self, coords: Vec<Poly>) -> Option<Section> {
        let k = self.model.field();
        if coords.iter().all(|c| c.is_zero()) {
            return None;
        }
        for (a, f) in &self.probes {
            let x: Vec<Fe> = coords.iter().map(|c| c.eval(k, *a)).collect();
            if !f.eval(&x).is_zero() {
                return None;
            }
        }
        let g = coords.iter().fold(Poly::zero(), |g, c| g.gcd(c, k));
        if !g.is_constant() {
            return None;
        }
        let s = Section::new(k, coords).ok()?;
        (self.model.contains_section(&s) && self.jdata.is_satisfied_by(&s) && self.model.meets_smooth_locus(&s))
            .then_some(s)
    }
}

fn trace(big: &Gf, small_order: u32, degree: u32, a: Fe) -> Fe {
    let mut acc = Fe::ZERO;
    let mut x = a;
    for _ in 0..degree {
        acc = big.add(acc, x);
        x = big.frobenius(x, small_order);
    }
    acc
}

/// Linear conditions on the coefficients of a degree-`d` tuple expressing
/// congruence with every jet of `jdata`.
fn congruence_rows(model: &ModelX, jdata: &JData, d: usize) -> linalg::Matrix {
    let k = model.field();
    let nv = model.nvars();
    let n = jdata.order();
    let mut rows = Vec::new();
    for (b, jet) in jdata.places().iter().zip(jdata.jets()) {
        let kappa = b.residue_field();
        let ring = b.jet_ring(n);
        let basis = b.monomial_expansions(d, n);
        let p = jet.pivot();
        for i in (0..nv).filter(|&i| i != p) {
            let scaled: Vec<Jet> = basis.iter().map(|bj| ring.mul(&jet.coords()[i], bj)).collect();
            for r in 0..=n {
                let mut row = vec![Fe::ZERO; nv * (d + 1)];
                for j in 0..=d {
                    row[i * (d + 1) + j] = basis[j][r];
                    row[p * (d + 1) + j] = kappa.neg(scaled[j][r]);
                }
                let deg = b.degree();
                let mut w = Fe::ONE;
                for _ in 0..deg {
                    rows.push(
                        row.iter()
                            .map(|&c| {
                                let t = trace(kappa, k.order(), deg, kappa.mul(w, c));
                                b.to_residue().restrict(t).expect("traces lie in the base field")
                            })
                            .collect(),
                    );
                    w = kappa.mul(w, b.theta());
                }
            }
        }
    }
    rows
}

/// Exhaustive search over sections of degree `0..=d_max`, returning the first
/// verified section in (degree, kernel enumeration) order.
pub fn search_section_report(model: &ModelX, jdata: &JData, d_max: usize, limits: &Limits) -> Result<SearchOutcome> {
    for b in jdata.places() {
        model.check_place(b)?;
        if !model.has_good_reduction(b, limits)? {
            return Err(Error::BadPlaceInJData(b.name()));
        }
    }
    let k = model.field();
    let nv = model.nvars();
    let checker = Checker::new(model, jdata);
    let mut levels = Vec::new();
    for d in 0..=d_max {
        let unknowns = nv * (d + 1);
        let rows = congruence_rows(model, jdata, d);
        let kernel = if rows.is_empty() {
            (0..unknowns)
                .map(|i| {
                    let mut v = vec![Fe::ZERO; unknowns];
                    v[i] = Fe::ONE;
                    v
                })
                .collect()
        } else {
            linalg::kernel(k, &rows, unknowns)
        };
        let w = kernel.len();
        if w == 0 {
            levels.push(SearchLevel {
                degree: d,
                unknowns,
                kernel_dim: 0,
                candidates: 0,
            });
            continue;
        }
        let space = ProjSpace::new(w - 1, k, limits.budget)?;
        levels.push(SearchLevel {
            degree: d,
            unknowns,
            kernel_dim: w,
            candidates: space.count(),
        });
        let found = space.find_first(|pt| {
            let mut a = vec![Fe::ZERO; unknowns];
            for (c, v) in pt.coords().iter().zip(&kernel) {
                if !c.is_zero() {
                    a = linalg::axpy(k, *c, v, &a);
                }
            }
            let coords = a.chunks(d + 1).map(|c| Poly::new(c.to_vec())).collect();
            checker.accept(coords)
        });
        if let Some(s) = found {
            return Ok(SearchOutcome {
                section: Some(s),
                levels,
            });
        }
    }
    Ok(SearchOutcome { section: None, levels })
}

pub fn search_section(model: &ModelX, jdata: &JData, d_max: usize, limits: &Limits) -> Result<Section> {
    search_section_report(model, jdata, d_max, limits)?
        .section
        .ok_or_else(|| Error::not_found("search"))
}

/// Every coprime section of degree at most `d_max` meeting the constraints,
/// found by enumerating all coefficient tuples.
pub fn brute_force_sections(model: &ModelX, jdata: &JData, d_max: usize, limits: &Limits) -> Result<Vec<Section>> {
    let k = model.field();
    let nv = model.nvars();
    let checker = Checker::new(model, jdata);
    let space = ProjSpace::new(nv * (d_max + 1) - 1, k, limits.budget)?;
    let mut out: Vec<Section> = Vec::new();
    for pt in space.iter() {
        let coords = pt.coords().chunks(d_max + 1).map(|c| Poly::new(c.to_vec())).collect();
        if let Some(s) = checker.accept(coords) {
            out.push(s);
        }
    }
    Ok(out)
}

/// The jet data transported to the quadratic extension of the constant field.
#[derive(Clone, Debug)]
pub struct QuadraticLift {
    pub model: ModelX,
    pub residue_lines: Vec<ConjugatePairLine>,
    pub lines: Vec<JetLine>,
    /// Residue embeddings `κ(b) -> κ(b) ⊗ GF(q^2)`.
    pub embeddings: Vec<Embedding>,
    pub first: JData,
    pub second: JData,
}

pub fn lift_jdata_to_quadratic(model: &ModelX, jdata: &JData, limits: &Limits) -> Result<QuadraticLift> {
    let k2 = model.field().extension(2)?;
    let model2 = model.embed(&k2)?;
    let n = jdata.order();
    let mut residue_lines = Vec::new();
    let mut lines = Vec::new();
    let mut embeddings = Vec::new();
    let mut places2 = Vec::new();
    let (mut first, mut second) = (Vec::new(), Vec::new());
    for (b, jet) in jdata.places().iter().zip(jdata.jets()) {
        let fiber = CubicHypersurface::new(model.fiber_form(b)?)?;
        let cpl = fiber.find_conjugate_pair_line(&jet.residue(), limits.budget)?;
        let (b2, phi) = b.embed(&k2)?;
        let line = jet_line_third_points(&model.jet_form(b, n)?, jet, &cpl.direction, &phi)?;
        first.push(line.points[0].clone());
        second.push(line.points[1].clone());
        places2.push(b2);
        residue_lines.push(cpl);
        lines.push(line);
        embeddings.push(phi);
    }
    let first = JData::new(&model2, n, places2.clone(), first, limits)?;
    let second = JData::new(&model2, n, places2, second, limits)?;
    Ok(QuadraticLift {
        model: model2,
        residue_lines,
        lines,
        embeddings,
        first,
        second,
    })
}

/// `F(λ a + μ b) = λ μ (c1 λ + c2 μ)` when `a, b` lie on `F`; returns `(c1, c2)`.
fn pencil_coefficients<R: Ring>(f: &Form<R>, a: &[R::Elem], b: &[R::Elem]) -> (R::Elem, R::Elem) {
    let r = f.ring();
    let grad = f.gradient();
    let pair = |x: &[R::Elem], y: &[R::Elem]| {
        grad.iter()
            .zip(y)
            .fold(r.zero(), |acc, (g, yi)| r.add(&acc, &r.mul(&g.eval(x), yi)))
    };
    (pair(a, b), pair(b, a))
}

/// Third point `c2 a − c1 b` of the pencil through two points of `F`.
fn pencil_third<R: Ring>(f: &Form<R>, a: &[R::Elem], b: &[R::Elem]) -> (R::Elem, R::Elem, Vec<R::Elem>) {
    let r = f.ring();
    let (c1, c2) = pencil_coefficients(f, a, b);
    let w = a
        .iter()
        .zip(b)
        .map(|(x, y)| r.sub(&r.mul(&c2, x), &r.mul(&c1, y)))
        .collect();
    (c1, c2, w)
}

#[derive(Clone, Debug)]
pub struct Descent {
    pub conjugate: Section,
    /// `F(λ s' + μ s'') = λ μ (c1 λ + c2 μ)`.
    pub pencil: [Poly; 2],
    pub section: Section,
}

/// The third intersection of the model with the line through `s'` and its
/// Frobenius conjugate; defined over the base field.
pub fn descend_section(model: &ModelX, s_prime: &Section) -> Result<Descent> {
    let k = model.field();
    let k2 = k.extension(2)?;
    if s_prime.field() != &k2 {
        return Err(Error::mismatch("descent expects a section over the quadratic extension"));
    }
    let model2 = model.form.map_coeffs(&PolyRing::new(k2.clone()), {
        let e = Embedding::canonical(k, &k2)?;
        move |c| c.embed(&e)
    });
    if !model2.eval(s_prime.coords()).is_zero() {
        return Err(Error::PointNotOnX);
    }
    let conj = s_prime.frobenius(k.order());
    if &conj == s_prime {
        return Err(Error::ConjugateFixed);
    }
    let (c1, c2, w) = pencil_third(&model2, s_prime.coords(), conj.coords());
    if c1.is_zero() && c2.is_zero() {
        return Err(Error::LineInFibers);
    }
    let third = Section::new(&k2, w)?;
    let section = third
        .restrict(k)
        .ok_or_else(|| Error::hypothesis("Galois invariance of the third point", "descent"))?;
    Ok(Descent {
        conjugate: conj,
        pencil: [c1, c2],
        section,
    })
}

/// Jet-level counterpart of [`descend_section`]: the third point of `F` on the
/// jet line through `a` and `b`.
pub fn descend_jets(f: &Form<JetRing>, a: &JetPoint, b: &JetPoint) -> Result<JetPoint> {
    if !a.lies_on(f) || !b.lies_on(f) {
        return Err(Error::PointNotOnX);
    }
    let (_, _, w) = pencil_third(f, a.coords(), b.coords());
    JetPoint::new(f.ring(), w)
}

/// Lifts a jet form over `κ` to `κ₂` along `phi`.
pub fn embed_jet_form(f: &Form<JetRing>, phi: &Embedding) -> Form<JetRing> {
    let ring = f.ring().extended(phi);
    f.map_coeffs(&ring, |c| JetRing::embed(c, phi))
}

/// Exact recheck of a candidate answer: on the model, congruent to every jet,
/// and through smooth points of the classified bad fibers.
pub fn verify_section(model: &ModelX, jdata: &JData, s: &Section) -> Result<()> {
    if !model.contains_section(s) {
        return Err(Error::hypothesis("section lies on the model", "verify"));
    }
    if !jdata.is_satisfied_by(s) {
        return Err(Error::hypothesis("congruence with every jet", "verify"));
    }
    if !model.meets_smooth_locus(s) {
        return Err(Error::hypothesis("section meets the smooth locus", "verify"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: &'static str,
    pub status: String,
}

#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub stages: Vec<StageRecord>,
    pub lift: Option<QuadraticLift>,
    pub search: Option<SearchOutcome>,
    pub descent: Option<Descent>,
    pub outcome: Result<Section>,
}

fn tagged(e: Error, stage: &str) -> Error {
    match e {
        Error::NotFound { .. } => Error::not_found(stage),
        other => other,
    }
}

/// Lift to the quadratic extension, search there, descend, verify.
pub fn wa_pipeline(model: &ModelX, jdata: &JData, d_max: usize, limits: &Limits) -> PipelineRun {
    let mut run = PipelineRun {
        stages: Vec::new(),
        lift: None,
        search: None,
        descent: None,
        outcome: Err(Error::not_found("lift")),
    };
    let fail = |run: &mut PipelineRun, stage: &'static str, e: Error| {
        let e = tagged(e, stage);
        run.stages.push(StageRecord {
            stage,
            status: format!("failed: {e}"),
        });
        run.outcome = Err(e);
    };
    let lift = match lift_jdata_to_quadratic(model, jdata, limits) {
        Ok(l) => l,
        Err(e) => {
            fail(&mut run, "lift", e);
            return run;
        }
    };
    run.stages.push(StageRecord {
        stage: "lift",
        status: format!("ok: {} jet lines", lift.lines.len()),
    });
    let search = match search_section_report(&lift.model, &lift.first, d_max, limits) {
        Ok(s) => s,
        Err(e) => {
            run.lift = Some(lift);
            fail(&mut run, "search", e);
            return run;
        }
    };
    run.lift = Some(lift);
    let Some(s_prime) = search.section.clone() else {
        run.search = Some(search);
        fail(&mut run, "search", Error::not_found("search"));
        return run;
    };
    run.stages.push(StageRecord {
        stage: "search",
        status: format!("ok: degree {}", s_prime.degree()),
    });
    run.search = Some(search);
    let descent = match descend_section(model, &s_prime) {
        Ok(d) => d,
        Err(e) => {
            fail(&mut run, "descend", e);
            return run;
        }
    };
    run.stages.push(StageRecord {
        stage: "descend",
        status: format!("ok: degree {}", descent.section.degree()),
    });
    let section = descent.section.clone();
    run.descent = Some(descent);
    match verify_section(model, jdata, &section) {
        Ok(()) => {
            run.stages.push(StageRecord {
                stage: "verify",
                status: "ok".into(),
            });
            run.outcome = Ok(section);
        }
        Err(e) => fail(&mut run, "verify", e),
    }
    run
}

/// `X_0^3 + .. + X_{n-2}^3 + t X_{n-1}^3`.
pub fn diagonal_model(k: &Gf, nvars: usize, degree_bound: u32, limits: &Limits) -> Result<ModelX> {
    let ring = PolyRing::new(k.clone());
    let terms = (0..nvars).map(|i| {
        let mut e = vec![0u16; nvars];
        e[i] = 3;
        let c = if i + 1 == nvars { Poly::x() } else { Poly::one() };
        (e, c)
    });
    ModelX::new(Form::from_terms(&ring, nvars, 3, terms.collect::<Vec<_>>())?, degree_bound, limits)
}

/// Points of `P^n(k)` whose coordinates form a constant section of the model.
pub fn constant_sections(model: &ModelX, budget: u64) -> Result<Vec<Section>> {
    let k = model.field();
    Ok(proj::enumerate_points(model.nvars() - 1, k, budget)?
        .filter_map(|p| {
            let s = Section::constant_over(k, p.coords()).ok()?;
            model.contains_section(&s).then_some(s)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn setup() -> (Gf, ModelX, Limits) {
        static MODEL: std::sync::OnceLock<ModelX> = std::sync::OnceLock::new();
        let k = make_field(11, 1).unwrap();
        let limits = Limits::default();
        let m = MODEL.get_or_init(|| diagonal_model(&k, 4, 1, &limits).unwrap());
        (k, m.clone(), limits)
    }

    #[test]
    fn reductions_of_the_diagonal_model() {
        let (k, m, limits) = setup();
        let bad: Vec<String> = m.bad_places().map(|s| s.place.name()).collect();
        assert_eq!(bad, ["t", "inf"]);
        let at2 = m.reduce_at_place(&Place::linear(&k, k.from_i64(2)), &limits).unwrap();
        assert!(at2.smooth);
        let at0 = m.reduce_at_place(&Place::linear(&k, Fe::ZERO), &limits).unwrap();
        assert!(!at0.smooth && !at0.degenerate);
        let inf = m.status(&Place::infinity(&k)).unwrap();
        assert!(!inf.smooth && inf.degenerate);
    }

    #[test]
    fn section_jets_and_search() {
        let (k, m, limits) = setup();
        let s = Section::from_i64(&k, &[&[3, -1], &[8, -1], &[0, 7], &[10]]).unwrap();
        assert!(m.contains_section(&s));
        let b = Place::linear(&k, k.from_i64(2));
        let jd = JData::from_section(&m, &s, 1, vec![b.clone()], &limits).unwrap();
        let found = search_section(&m, &jd, 3, &limits).unwrap();
        verify_section(&m, &jd, &found).unwrap();
        assert!(matches!(search_section(&m, &jd, 0, &limits), Err(Error::NotFound { .. })));
        assert!(brute_force_sections(&m, &jd, 0, &limits).unwrap().is_empty());
        assert_eq!(b.expand(&Poly::x(), 1, 1), vec![k.from_i64(2), Fe::ONE]);
        let t = Section::from_i64(&k, &[&[0, 1], &[1], &[0], &[0]]).unwrap();
        let jet = section_jet(&t, &b, 1);
        let ring = b.jet_ring(1);
        assert_eq!(jet.coords()[1], ring.inv(&vec![k.from_i64(2), Fe::ONE]).unwrap());
    }

    #[test]
    fn omega_descent() {
        let (k, m, _) = setup();
        let k2 = k.extension(2).unwrap();
        let omega = k2.exp(40);
        let sp = Section::constant_over(&k2, &[Fe::ONE, k2.neg(omega), Fe::ZERO, Fe::ZERO]).unwrap();
        let d = descend_section(&m, &sp).unwrap();
        assert_eq!(d.section, Section::from_i64(&k, &[&[1], &[-1], &[0], &[0]]).unwrap());
        assert!(m.contains_section(&d.section));
    }

    #[test]
    fn pipeline_on_a_constant_section() {
        let (k, m, limits) = setup();
        let s = Section::from_i64(&k, &[&[1], &[-1], &[0], &[0]]).unwrap();
        let jd = JData::from_section(&m, &s, 1, vec![Place::linear(&k, k.from_i64(2))], &limits).unwrap();
        let run = wa_pipeline(&m, &jd, 2, &limits);
        let out = run.outcome.unwrap();
        verify_section(&m, &jd, &out).unwrap();
        let stages: Vec<&str> = run.stages.iter().map(|r| r.stage).collect();
        assert_eq!(stages, ["lift", "search", "descend", "verify"]);
    }

    #[test]
    fn places_and_infinity() {
        let k = make_field(3, 1).unwrap();
        let ps = places_up_to(&k, 2, 1000).unwrap();
        // 3 linear, 3 irreducible quadratics, infinity.
        assert_eq!(ps.len(), 7);
        let b = &ps[3];
        assert_eq!(b.degree(), 2);
        let f = Poly::from_i64(&k, &[1, 2, 0, 1]);
        // Expansion to order 0 is evaluation at the residue of t.
        assert_eq!(b.expand(&f, 3, 0)[0], f.embed(b.to_residue()).eval(b.residue_field(), b.theta()));
        let inf = Place::infinity(&k);
        assert_eq!(inf.expand(&f, 3, 1), vec![Fe::ONE, Fe::ZERO]);
    }
}
