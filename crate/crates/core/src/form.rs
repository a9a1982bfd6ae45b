//! Sparse homogeneous forms and binary forms.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Embedding, Fe, Gf};
use crate::poly::Poly;
use crate::ring::Ring;

/// A homogeneous polynomial of fixed degree in `nvars` variables.
///
/// Exponent vectors are the map keys; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<R: Ring> {
    ring: R,
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u16>, R::Elem>,
}

impl<R: Ring> Form<R> {
    pub fn zero(ring: &R, nvars: usize, degree: u32) -> Self {
        Form {
            ring: ring.clone(),
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        ring: &R,
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Vec<u16>, R::Elem)>,
    ) -> Result<Self> {
        let mut f = Form::zero(ring, nvars, degree);
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: exp.len(),
                });
            }
            let s: u32 = exp.iter().map(|&e| e as u32).sum();
            if s != degree {
                return Err(Error::DegreeMismatch(format!(
                    "monomial {exp:?} has degree {s}, expected {degree}"
                )));
            }
            f.add_term(exp, c);
        }
        Ok(f)
    }

    pub fn monomial(ring: &R, exp: Vec<u16>, c: R::Elem) -> Self {
        let degree = exp.iter().map(|&e| e as u32).sum();
        let mut f = Form::zero(ring, exp.len(), degree);
        f.add_term(exp, c);
        f
    }

    pub fn var(ring: &R, nvars: usize, i: usize) -> Self {
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        Form::monomial(ring, exp, ring.one())
    }

    pub fn constant(ring: &R, nvars: usize, c: R::Elem) -> Self {
        Form::monomial(ring, vec![0; nvars], c)
    }

    /// The linear form `sum a_i X_i`.
    pub fn linear(ring: &R, a: &[R::Elem]) -> Self {
        let mut f = Form::zero(ring, a.len(), 1);
        for (i, c) in a.iter().enumerate() {
            let mut exp = vec![0; a.len()];
            exp[i] = 1;
            f.add_term(exp, c.clone());
        }
        f
    }

    pub(crate) fn add_term(&mut self, exp: Vec<u16>, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(old) => {
                let s = self.ring.add(old, &c);
                if self.ring.is_zero(&s) {
                    self.terms.remove(&exp);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u16]) -> R::Elem {
        self.terms.get(exp).cloned().unwrap_or_else(|| self.ring.zero())
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "forms in different variable sets");
        assert!(
            self.degree == other.degree || self.is_zero() || other.is_zero(),
            "adding forms of different degrees"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = if self.is_zero() && !other.is_zero() {
            Form::zero(&self.ring, self.nvars, other.degree)
        } else {
            Form::zero(&self.ring, self.nvars, self.degree)
        };
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_same(|c| self.ring.neg(c))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map_same(|a| self.ring.mul(a, c))
    }

    fn map_same(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        let mut out = Form::zero(&self.ring, self.nvars, self.degree);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "forms in different variable sets");
        let mut out = Form::zero(&self.ring, self.nvars, self.degree + other.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, self.ring.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Form::constant(&self.ring, self.nvars, self.ring.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &[R::Elem]) -> R::Elem {
        assert_eq!(x.len(), self.nvars, "evaluation point has wrong arity");
        let d = self.degree as usize;
        let pows: Vec<Vec<R::Elem>> = x
            .iter()
            .map(|xi| {
                let mut v = Vec::with_capacity(d + 1);
                v.push(self.ring.one());
                for k in 0..d {
                    let next = self.ring.mul(&v[k], xi);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = self.ring.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t = self.ring.mul(&t, &pows[i][ei as usize]);
                }
            }
            acc = self.ring.add(&acc, &t);
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Form::zero(&self.ring, self.nvars, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, self.ring.mul(c, &self.ring.from_i64(e[i] as i64)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// `self(g_0, .., g_n)`.
    pub fn compose(&self, g: &[Form<R>]) -> Result<Self> {
        if g.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: g.len(),
            });
        }
        let Some(first) = g.first() else {
            return Ok(self.clone());
        };
        let (m, e) = (first.nvars, first.degree);
        if let Some(bad) = g.iter().find(|gi| gi.nvars != m || gi.degree != e) {
            return Err(Error::DegreeMismatch(format!(
                "substituted forms must share degree {e} in {m} variables, found degree {} in {}",
                bad.degree, bad.nvars
            )));
        }
        let d = self.degree;
        let mut pows: Vec<Vec<Option<Form<R>>>> = vec![vec![None; d as usize + 1]; self.nvars];
        let mut out = Form::zero(&self.ring, m, d * e);
        for (exp, c) in &self.terms {
            let mut t = Form::constant(&self.ring, m, c.clone());
            for (i, &ei) in exp.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                if pows[i][ei as usize].is_none() {
                    pows[i][ei as usize] = Some(g[i].pow(ei as u32));
                }
                t = t.mul(pows[i][ei as usize].as_ref().unwrap());
            }
            out = out.add(&t);
        }
        out.degree = d * e;
        Ok(out)
    }

    /// Substitutes `X_i -> sum_j m[i][j] Y_j`.
    pub fn linear_substitute(&self, m: &[Vec<R::Elem>]) -> Result<Self> {
        let lin: Vec<Form<R>> = m.iter().map(|row| Form::linear(&self.ring, row)).collect();
        self.compose(&lin)
    }

    pub fn map_coeffs<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> Form<S> {
        let mut out = Form::zero(target, self.nvars, self.degree);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Writes `self = sum_k c_k * X_i^k`, returning the forms `c_k` (which no
    /// longer involve `X_i`, though they keep the same variable set).
    pub fn split_by_var(&self, i: usize) -> Vec<Form<R>> {
        let d = self.degree as usize;
        let mut out: Vec<Form<R>> = (0..=d)
            .map(|k| Form::zero(&self.ring, self.nvars, (d - k) as u32))
            .collect();
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut ne = e.clone();
            ne[i] = 0;
            out[k].add_term(ne, c.clone());
        }
        out
    }

    /// Drops variable `i`, which must not occur.
    pub fn remove_var(&self, i: usize) -> Self {
        let mut out = Form::zero(&self.ring, self.nvars - 1, self.degree);
        for (e, c) in &self.terms {
            assert_eq!(e[i], 0, "variable still occurs");
            let mut ne = e.clone();
            ne.remove(i);
            out.add_term(ne, c.clone());
        }
        out
    }
}

impl Form<Gf> {
    pub fn field(&self) -> &Gf {
        &self.ring
    }

    pub fn from_i64_terms(k: &Gf, nvars: usize, degree: u32, terms: &[(Vec<u16>, i64)]) -> Result<Self> {
        Form::from_terms(k, nvars, degree, terms.iter().map(|(e, c)| (e.clone(), k.from_i64(*c))))
    }

    /// `f(sP + uQ)` as a binary form in `(s : u)`.
    pub fn restrict_to_line(&self, p: &[Fe], q: &[Fe]) -> Result<BinaryForm> {
        if p.len() != self.nvars || q.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: p.len().min(q.len()),
            });
        }
        let k = &self.ring;
        let d = self.degree as usize;
        let mut pows: Vec<Vec<BinaryForm>> = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            let lin = BinaryForm::new(vec![p[i], q[i]]);
            let mut v = vec![BinaryForm::new(vec![Fe::ONE])];
            for e in 0..d {
                let next = v[e].mul(&lin, k);
                v.push(next);
            }
            pows.push(v);
        }
        let mut acc = vec![Fe::ZERO; d + 1];
        for (e, &c) in &self.terms {
            let mut t = BinaryForm::new(vec![c]);
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t = t.mul(&pows[i][ei as usize], k);
                }
            }
            for (a, b) in acc.iter_mut().zip(&t.coeffs) {
                *a = k.add(*a, *b);
            }
        }
        Ok(BinaryForm::new(acc))
    }

    pub fn embed(&self, e: &Embedding) -> Form<Gf> {
        self.map_coeffs(e.big(), |&c| e.apply(c))
    }

    /// Coefficientwise preimage under `e`, if every coefficient lies in the subfield.
    pub fn restrict_coeffs(&self, e: &Embedding) -> Option<Form<Gf>> {
        let mut out = Form::zero(e.small(), self.nvars, self.degree);
        for (exp, &c) in &self.terms {
            out.add_term(exp.clone(), e.restrict(c)?);
        }
        Some(out)
    }

    /// Univariate polynomials `f(a_0, .., a_{n-1}, t)` for a fixed prefix `a`.
    pub fn fiber_poly(&self, a: &[Fe]) -> Poly {
        let k = &self.ring;
        let n = self.nvars - 1;
        let d = self.degree as usize;
        let mut coeffs = vec![Fe::ZERO; d + 1];
        for (e, &c) in &self.terms {
            let mut t = c;
            for i in 0..n {
                if e[i] > 0 {
                    t = k.mul(t, k.pow(a[i], e[i] as u64));
                    if t.is_zero() {
                        break;
                    }
                }
            }
            let j = e[n] as usize;
            coeffs[j] = k.add(coeffs[j], t);
        }
        Poly::new(coeffs)
    }
}

/// A binary form `sum_k c_k s^(d-k) u^k` of fixed degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Fe>,
}

impl BinaryForm {
    /// Coefficients of `s^d, s^(d-1) u, .., u^d`; the degree is `len - 1`.
    pub fn new(coeffs: Vec<Fe>) -> BinaryForm {
        assert!(!coeffs.is_empty(), "binary form needs a degree");
        BinaryForm { coeffs }
    }

    pub fn zero(degree: usize) -> BinaryForm {
        BinaryForm::new(vec![Fe::ZERO; degree + 1])
    }

    pub fn from_i64(k: &Gf, coeffs: &[i64]) -> BinaryForm {
        BinaryForm::new(coeffs.iter().map(|&c| k.from_i64(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of `s^(d-k) u^k`.
    pub fn coeff(&self, k: usize) -> Fe {
        self.coeffs.get(k).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, k: &Gf, s: Fe, u: Fe) -> Fe {
        let d = self.degree();
        let mut acc = Fe::ZERO;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = k.add(acc, k.mul(c, k.mul(k.pow(s, (d - i) as u64), k.pow(u, i as u64))));
        }
        acc
    }

    pub fn add(&self, other: &BinaryForm, k: &Gf) -> BinaryForm {
        assert_eq!(self.degree(), other.degree(), "adding binary forms of different degrees");
        BinaryForm::new(self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| k.add(a, b)).collect())
    }

    pub fn sub(&self, other: &BinaryForm, k: &Gf) -> BinaryForm {
        assert_eq!(self.degree(), other.degree(), "subtracting binary forms of different degrees");
        BinaryForm::new(self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| k.sub(a, b)).collect())
    }

    pub fn scale(&self, c: Fe, k: &Gf) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &BinaryForm, k: &Gf) -> BinaryForm {
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        BinaryForm::new(out)
    }

    /// Dehomogenization at `s = 1`, as a polynomial in `u`.
    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    /// Homogenizes a polynomial in `u` to degree `d`.
    pub fn from_poly(p: &Poly, d: usize) -> BinaryForm {
        assert!(p.deg() <= d as isize, "polynomial degree exceeds form degree");
        let mut c = p.coeffs().to_vec();
        c.resize(d + 1, Fe::ZERO);
        BinaryForm::new(c)
    }

    /// Multiplicity of the root `(0 : 1)`, i.e. the power of `s` dividing the form.
    fn s_order(&self) -> usize {
        self.degree() - self.to_poly().degree().unwrap_or(0)
    }

    /// Monic-normalized gcd of binary forms (`None` if both are zero).
    pub fn gcd(&self, other: &BinaryForm, k: &Gf) -> Option<BinaryForm> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return None,
            (true, false) => return Some(other.normalized(k)),
            (false, true) => return Some(self.normalized(k)),
            _ => {}
        }
        let g = self.to_poly().gcd(&other.to_poly(), k);
        let so = self.s_order().min(other.s_order());
        Some(BinaryForm::from_poly(&g, g.degree().unwrap() + so))
    }

    /// Scales so the last nonzero coefficient (the leading `u`-coefficient) is one.
    pub fn normalized(&self, k: &Gf) -> BinaryForm {
        match self.coeffs.iter().rev().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(&c) => self.scale(k.inv(c), k),
        }
    }

    /// Exact quotient by `d`, or `None`.
    pub fn div_exact(&self, d: &BinaryForm, k: &Gf) -> Option<BinaryForm> {
        if d.degree() > self.degree() {
            return None;
        }
        let nd = self.degree() - d.degree();
        if self.is_zero() {
            return Some(BinaryForm::zero(nd));
        }
        if d.is_zero() {
            return None;
        }
        if self.s_order() < d.s_order() {
            return None;
        }
        let q = self.to_poly().div_exact(&d.to_poly(), k)?;
        Some(BinaryForm::from_poly(&q, nd))
    }

    /// Swaps the roles of `s` and `u`.
    pub fn swap(&self) -> BinaryForm {
        let mut c = self.coeffs.clone();
        c.reverse();
        BinaryForm::new(c)
    }

    /// Projective roots over `k` with multiplicity; `(0:1)` sorts last.
    pub fn roots(&self, k: &Gf) -> Vec<((Fe, Fe), usize)> {
        assert!(!self.is_zero(), "roots of the zero binary form");
        let mut out: Vec<((Fe, Fe), usize)> = self
            .to_poly()
            .roots_with_multiplicity(k)
            .into_iter()
            .map(|(t, m)| ((Fe::ONE, t), m))
            .collect();
        let so = self.s_order();
        if so > 0 {
            out.push(((Fe::ZERO, Fe::ONE), so));
        }
        out
    }

    pub fn to_form(&self, k: &Gf) -> Form<Gf> {
        let d = self.degree();
        let mut f = Form::zero(k, 2, d as u32);
        for (i, &c) in self.coeffs.iter().enumerate() {
            f.add_term(vec![(d - i) as u16, i as u16], c);
        }
        f
    }

    pub fn from_form(f: &Form<Gf>) -> BinaryForm {
        assert_eq!(f.nvars(), 2, "not a binary form");
        let d = f.degree() as usize;
        let mut c = vec![Fe::ZERO; d + 1];
        for (e, &v) in f.terms() {
            c[e[1] as usize] = v;
        }
        BinaryForm::new(c)
    }

    pub fn map_coeffs(&self, f: impl Fn(Fe) -> Fe) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|&c| f(c)).collect())
    }
}

/// The Fermat form `sum X_i^3` in `nvars` variables.
pub fn fermat_cubic(k: &Gf, nvars: usize) -> Form<Gf> {
    let mut f = Form::zero(k, nvars, 3);
    for i in 0..nvars {
        let mut e = vec![0; nvars];
        e[i] = 3;
        f.add_term(e, Fe::ONE);
    }
    f
}
