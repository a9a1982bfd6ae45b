//! Points and linear subspaces of projective spaces over finite fields, and
//! their deterministic enumeration.
//!
//! Point order: by position of the first nonzero coordinate, then
//! lexicographically on the remaining coordinates in element order. Subspaces
//! are ordered by their pivot columns, then by the free entries of their
//! reduced row-echelon basis read row by row.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Embedding, Fe, Gf};
use crate::form::Form;
use crate::linalg::{self, Matrix};
use crate::poly::Poly;

/// A normalized point of `P^n`: the first nonzero coordinate is one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<Fe>,
}

impl ProjPoint {
    pub fn new(k: &Gf, coords: Vec<Fe>) -> Result<ProjPoint> {
        if coords.iter().any(|&c| !k.contains(c)) {
            return Err(Error::mismatch(format!("coordinate outside {k}")));
        }
        let Some(piv) = coords.iter().position(|c| !c.is_zero()) else {
            return Err(Error::invalid("the zero vector is not a projective point"));
        };
        let inv = k.inv(coords[piv]);
        Ok(ProjPoint {
            coords: coords.into_iter().map(|c| k.mul(c, inv)).collect(),
        })
    }

    pub fn from_i64(k: &Gf, coords: &[i64]) -> Result<ProjPoint> {
        ProjPoint::new(k, coords.iter().map(|&c| k.from_i64(c)).collect())
    }

    /// Wraps an already normalized vector.
    pub(crate) fn normalized_unchecked(coords: Vec<Fe>) -> ProjPoint {
        debug_assert!(coords.iter().find(|c| !c.is_zero()) == Some(&Fe::ONE));
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[Fe] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Fe> {
        self.coords
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn pivot(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).unwrap()
    }

    pub fn embed(&self, e: &Embedding) -> ProjPoint {
        ProjPoint {
            coords: self.coords.iter().map(|&c| e.apply(c)).collect(),
        }
    }

    /// The point over the subfield, if all coordinates lie in it.
    pub fn restrict(&self, e: &Embedding) -> Option<ProjPoint> {
        let c: Option<Vec<Fe>> = self.coords.iter().map(|&c| e.restrict(c)).collect();
        c.map(|coords| ProjPoint { coords })
    }

    /// Coordinatewise `a -> a^Q` for a subfield of order `Q`.
    pub fn frobenius(&self, k: &Gf, base_order: u32) -> ProjPoint {
        ProjPoint {
            coords: self.coords.iter().map(|&c| k.frobenius(c, base_order)).collect(),
        }
    }

    pub fn display(&self, k: &Gf) -> String {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|&c| {
                if k.degree() == 1 {
                    c.0.to_string()
                } else {
                    format!("({})", k.encode(c))
                }
            })
            .collect();
        format!("[{}]", parts.join(":"))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.0.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.pivot(), &self.coords).cmp(&(other.pivot(), &other.coords))
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn checked_count(what: &'static str, count: u128, budget: u64) -> Result<u64> {
    if count > budget as u128 {
        return Err(Error::SizeExceeded {
            what,
            size: count,
            budget: budget as u128,
        });
    }
    Ok(count as u64)
}

/// `P^n` over a field of order `q`, indexable in enumeration order.
#[derive(Clone, Copy, Debug)]
pub struct ProjSpace {
    n: usize,
    q: u64,
    count: u64,
}

impl ProjSpace {
    pub fn new(n: usize, k: &Gf, budget: u64) -> Result<ProjSpace> {
        let q = k.order() as u128;
        let count = (0..=n as u32).map(|i| q.pow(i)).sum::<u128>();
        Ok(ProjSpace {
            n,
            q: q as u64,
            count: checked_count("projective space points", count, budget)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn point_at(&self, mut idx: u64) -> ProjPoint {
        assert!(idx < self.count, "point index out of range");
        let mut pivot = 0;
        let mut block = self.q.pow(self.n as u32);
        while idx >= block {
            idx -= block;
            pivot += 1;
            block /= self.q;
        }
        let mut coords = vec![Fe::ZERO; self.n + 1];
        coords[pivot] = Fe::ONE;
        for i in (pivot + 1..=self.n).rev() {
            coords[i] = Fe((idx % self.q) as u32);
            idx /= self.q;
        }
        ProjPoint { coords }
    }

    pub fn iter(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        (0..self.count).map(move |i| self.point_at(i))
    }

    /// First index (in enumeration order) whose point satisfies `f`, scanned in parallel.
    pub fn find_first<T: Send>(&self, f: impl Fn(ProjPoint) -> Option<T> + Sync + Send) -> Option<T> {
        (0..self.count)
            .into_par_iter()
            .find_map_first(|i| f(self.point_at(i)))
    }
}

/// Enumerates `P^n(k)` in the documented order.
pub fn enumerate_points(n: usize, k: &Gf, budget: u64) -> Result<impl Iterator<Item = ProjPoint>> {
    let space = ProjSpace::new(n, k, budget)?;
    Ok((0..space.count).map(move |i| space.point_at(i)))
}

/// Directions `v` with `v[pivot(x)] = 0`: every line through `x` is `span(x, v)`
/// for exactly one of them.
pub fn directions_through(x: &ProjPoint, k: &Gf, budget: u64) -> Result<impl Iterator<Item = Vec<Fe>>> {
    let j = x.pivot();
    let space = ProjSpace::new(x.n() - 1, k, budget)?;
    Ok((0..space.count).map(move |i| {
        let mut v = space.point_at(i).into_coords();
        v.insert(j, Fe::ZERO);
        v
    }))
}

/// Every line through `x`, each once.
pub fn lines_through(x: &ProjPoint, k: &Gf, budget: u64) -> Result<impl Iterator<Item = LinearSubspace>> {
    let x = x.clone();
    let k = k.clone();
    Ok(directions_through(&x, &k, budget)?.map(move |v| {
        LinearSubspace::span(&k, &[x.coords().to_vec(), v]).expect("independent")
    }))
}

/// Normal vectors of every hyperplane through `x`, each once.
pub fn hyperplanes_through(x: &ProjPoint, k: &Gf, budget: u64) -> Result<impl Iterator<Item = Vec<Fe>>> {
    let j = x.pivot();
    let xc = x.coords().to_vec();
    let k = k.clone();
    let space = ProjSpace::new(x.n() - 1, &k, budget)?;
    Ok((0..space.count).map(move |i| {
        let mut a = space.point_at(i).into_coords();
        a.insert(j, Fe::ZERO);
        let s = linalg::dot(&k, &a, &xc);
        a[j] = k.neg(s);
        a
    }))
}

/// A projective linear subspace, stored by its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LinearSubspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl LinearSubspace {
    pub fn span(k: &Gf, vectors: &[Vec<Fe>]) -> Result<LinearSubspace> {
        let mut m: Matrix = vectors.to_vec();
        let pivots = linalg::rref(k, &mut m);
        if pivots.is_empty() {
            return Err(Error::invalid("empty span"));
        }
        Ok(LinearSubspace { basis: m, pivots })
    }

    pub fn span_points(k: &Gf, points: &[&ProjPoint]) -> Result<LinearSubspace> {
        let v: Vec<Vec<Fe>> = points.iter().map(|p| p.coords().to_vec()).collect();
        LinearSubspace::span(k, &v)
    }

    /// The common zero set of linear forms given by their coefficient rows.
    pub fn from_equations(k: &Gf, ncols: usize, equations: &[Vec<Fe>]) -> Result<LinearSubspace> {
        let ker = linalg::kernel(k, &equations.to_vec(), ncols);
        LinearSubspace::span(k, &ker)
    }

    pub fn hyperplane(k: &Gf, normal: &[Fe]) -> Result<LinearSubspace> {
        LinearSubspace::from_equations(k, normal.len(), &[normal.to_vec()])
    }

    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn ambient(&self) -> usize {
        self.basis[0].len() - 1
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, k: &Gf, v: &[Fe]) -> bool {
        let mut r = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = r[pc];
            if !c.is_zero() {
                for (x, &y) in r.iter_mut().zip(row) {
                    *x = k.sub(*x, k.mul(c, y));
                }
            }
        }
        r.iter().all(|x| x.is_zero())
    }

    pub fn contains_point(&self, k: &Gf, p: &ProjPoint) -> bool {
        self.contains(k, p.coords())
    }

    /// `sum c_i b_i` for basis rows `b_i`.
    pub fn combination(&self, k: &Gf, c: &[Fe]) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.ambient() + 1];
        for (ci, row) in c.iter().zip(&self.basis) {
            if !ci.is_zero() {
                v = linalg::axpy(k, *ci, row, &v);
            }
        }
        v
    }

    pub fn points(&self, k: &Gf) -> impl Iterator<Item = ProjPoint> + '_ {
        let space = ProjSpace::new(self.dim(), k, u64::MAX).unwrap();
        let k = k.clone();
        (0..space.count).map(move |i| {
            let c = space.point_at(i);
            ProjPoint::new(&k, self.combination(&k, c.coords())).unwrap()
        })
    }

    /// Coefficient rows of linear forms cutting out the subspace.
    pub fn equations(&self, k: &Gf) -> Matrix {
        linalg::kernel(k, &self.basis, self.ambient() + 1)
    }

    pub fn intersect(&self, k: &Gf, other: &LinearSubspace) -> Option<LinearSubspace> {
        let mut eqs = self.equations(k);
        eqs.extend(other.equations(k));
        LinearSubspace::from_equations(k, self.ambient() + 1, &eqs).ok()
    }

    pub fn embed(&self, e: &Embedding) -> LinearSubspace {
        LinearSubspace {
            basis: self
                .basis
                .iter()
                .map(|r| r.iter().map(|&c| e.apply(c)).collect())
                .collect(),
            pivots: self.pivots.clone(),
        }
    }

    /// Restriction of a form to the subspace in its basis coordinates.
    pub fn restrict_form(&self, f: &Form<Gf>) -> Result<Form<Gf>> {
        let k = f.field().clone();
        let t = linalg::transpose(&self.basis);
        f.linear_substitute(&t).map(|g| {
            let _ = &k;
            g
        })
    }
}

/// Gaussian binomial: number of `dim`-subspaces of `P^n` over a field of order `q`.
pub fn subspace_count(n: usize, dim: usize, q: u64) -> u128 {
    let (nn, kk) = (n as u32 + 1, dim as u32 + 1);
    if kk > nn {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..kk {
        num *= q.pow(nn - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Every `dim`-dimensional subspace of `P^n(k)`, in canonical order.
pub fn subspaces(n: usize, dim: usize, k: &Gf, budget: u64) -> Result<impl Iterator<Item = LinearSubspace>> {
    let q = k.order() as u64;
    checked_count("linear subspaces", subspace_count(n, dim, q), budget)?;
    let cols = n + 1;
    let rows = dim + 1;
    let tuples = combinations(cols, rows);
    Ok(tuples.into_iter().flat_map(move |pivots| {
        let free: Vec<(usize, usize)> = (0..rows)
            .flat_map(|r| {
                let pv = pivots.clone();
                (pv[r] + 1..cols).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let total = q.pow(free.len() as u32);
        (0..total).map(move |mut idx| {
            let mut basis = vec![vec![Fe::ZERO; cols]; rows];
            for (r, &c) in pivots.iter().enumerate() {
                basis[r][c] = Fe::ONE;
            }
            for &(r, c) in free.iter().rev() {
                basis[r][c] = Fe((idx % q) as u32);
                idx /= q;
            }
            LinearSubspace {
                basis,
                pivots: pivots.clone(),
            }
        })
    }))
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// The fiber decomposition used to find zeros: every point of `P^n` is either
/// `[a : t]` with `a` a point of `P^(n-1)` or the point `[0 : .. : 0 : 1]`.
fn fiber_gcd(forms: &[Form<Gf>], a: &[Fe], k: &Gf) -> Poly {
    let mut g = Poly::zero();
    for f in forms {
        let p = f.fiber_poly(a);
        g = if g.is_zero() { p.monic(k) } else { g.gcd(&p, k) };
        if g.deg() == 0 {
            break;
        }
    }
    g
}

fn check_forms(forms: &[Form<Gf>], k: &Gf) -> Result<usize> {
    let Some(first) = forms.first() else {
        return Err(Error::invalid("no forms given"));
    };
    let nv = first.nvars();
    for f in forms {
        if f.field() != k {
            return Err(Error::mismatch(format!("form over {} evaluated over {k}", f.field())));
        }
        if f.nvars() != nv {
            return Err(Error::ArityMismatch {
                expected: nv,
                got: f.nvars(),
            });
        }
    }
    if nv < 2 {
        return Err(Error::invalid("need at least two variables"));
    }
    Ok(nv - 1)
}

/// All `k`-points where every form vanishes, sorted in enumeration order.
/// The forms must have coefficients in `k`.
pub fn common_zeros(forms: &[Form<Gf>], k: &Gf, budget: u64) -> Result<Vec<ProjPoint>> {
    let n = check_forms(forms, k)?;
    let base = ProjSpace::new(n - 1, k, budget)?;
    let mut out: Vec<ProjPoint> = (0..base.count())
        .into_par_iter()
        .flat_map_iter(|i| {
            let a = base.point_at(i).into_coords();
            let g = fiber_gcd(forms, &a, k);
            let ts: Vec<Fe> = if g.is_zero() {
                k.elements().collect()
            } else {
                g.roots(k)
            };
            ts.into_iter()
                .map(|t| {
                    let mut c = a.clone();
                    c.push(t);
                    ProjPoint::normalized_unchecked(c)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut last = vec![Fe::ZERO; n + 1];
    last[n] = Fe::ONE;
    if forms.iter().all(|f| f.eval(&last).is_zero()) {
        out.push(ProjPoint::normalized_unchecked(last));
    }
    out.sort();
    Ok(out)
}

/// Whether the forms have a common `k`-zero (stops at the first one found).
pub fn has_common_zero(forms: &[Form<Gf>], k: &Gf, budget: u64) -> Result<bool> {
    let n = check_forms(forms, k)?;
    let mut last = vec![Fe::ZERO; n + 1];
    last[n] = Fe::ONE;
    if forms.iter().all(|f| f.eval(&last).is_zero()) {
        return Ok(true);
    }
    let base = ProjSpace::new(n - 1, k, budget)?;
    Ok((0..base.count()).into_par_iter().any(|i| {
        let a = base.point_at(i).into_coords();
        let g = fiber_gcd(forms, &a, k);
        g.is_zero() || g.count_distinct_roots(k) > 0
    }))
}

/// Number of `k`-points on the zero locus of the forms.
pub fn count_common_zeros(forms: &[Form<Gf>], k: &Gf, budget: u64) -> Result<u64> {
    let n = check_forms(forms, k)?;
    let base = ProjSpace::new(n - 1, k, budget)?;
    let mut total: u64 = (0..base.count())
        .into_par_iter()
        .map(|i| {
            let a = base.point_at(i).into_coords();
            let g = fiber_gcd(forms, &a, k);
            if g.is_zero() {
                k.order() as u64
            } else {
                g.count_distinct_roots(k) as u64
            }
        })
        .sum();
    let mut last = vec![Fe::ZERO; n + 1];
    last[n] = Fe::ONE;
    if forms.iter().all(|f| f.eval(&last).is_zero()) {
        total += 1;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use std::collections::BTreeSet;

    const B: u64 = 100_000_000;

    fn count(n: usize, p: u64, m: u32) -> usize {
        let k = make_field(p, m).unwrap();
        let pts: Vec<ProjPoint> = enumerate_points(n, &k, B).unwrap().collect();
        let set: BTreeSet<ProjPoint> = pts.iter().cloned().collect();
        assert_eq!(set.len(), pts.len());
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(sorted, pts, "enumeration order is the point order");
        for p in &pts {
            assert_eq!(&ProjPoint::new(&k, p.coords().to_vec()).unwrap(), p);
        }
        pts.len()
    }

    #[test]
    fn point_counts() {
        assert_eq!(count(2, 3, 1), 13);
        assert_eq!(count(4, 2, 1), 31);
        assert_eq!(count(1, 11, 1), 12);
        assert_eq!(count(3, 2, 2), 85);
    }

    #[test]
    fn budget_is_enforced() {
        let k = make_field(13, 1).unwrap();
        assert!(matches!(enumerate_points(4, &k, 1000), Err(Error::SizeExceeded { .. })));
    }

    #[test]
    fn normalization_is_idempotent() {
        let k = make_field(7, 1).unwrap();
        let p = ProjPoint::from_i64(&k, &[0, 3, 2, 5]).unwrap();
        assert_eq!(p.coords()[1], Fe::ONE);
        assert_eq!(ProjPoint::new(&k, p.coords().to_vec()).unwrap(), p);
        assert_eq!(ProjPoint::from_i64(&k, &[0, 6, 4, 3]).unwrap(), p);
    }

    #[test]
    fn lines_through_counts_and_distinctness() {
        for (n, p, expect) in [(4usize, 3u64, 27 + 9 + 3 + 1), (2, 13, 14), (3, 11, 133)] {
            let k = make_field(p, 1).unwrap();
            let x = ProjSpace::new(n, &k, B).unwrap().point_at(5);
            let lines: Vec<LinearSubspace> = lines_through(&x, &k, B).unwrap().collect();
            assert_eq!(lines.len(), expect);
            let set: BTreeSet<_> = lines.iter().cloned().collect();
            assert_eq!(set.len(), expect);
            assert!(lines.iter().all(|l| l.contains_point(&k, &x) && l.dim() == 1));
        }
    }

    #[test]
    fn hyperplanes_through_contain_point() {
        let k = make_field(5, 1).unwrap();
        let x = ProjPoint::from_i64(&k, &[0, 1, 2, 3, 4]).unwrap();
        let hs: BTreeSet<LinearSubspace> = hyperplanes_through(&x, &k, B)
            .unwrap()
            .map(|a| LinearSubspace::hyperplane(&k, &a).unwrap())
            .collect();
        assert_eq!(hs.len(), 125 + 25 + 5 + 1);
        assert!(hs.iter().all(|h| h.contains_point(&k, &x) && h.dim() == 3));
    }

    #[test]
    fn grassmannian_counts() {
        let k = make_field(3, 1).unwrap();
        for (n, d) in [(2, 1), (3, 1), (4, 1), (4, 2), (3, 2)] {
            let all: Vec<LinearSubspace> = subspaces(n, d, &k, B).unwrap().collect();
            assert_eq!(all.len() as u128, subspace_count(n, d, 3));
            let set: BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
            for s in &all {
                assert_eq!(&LinearSubspace::span(&k, s.basis()).unwrap(), s);
            }
        }
        assert_eq!(subspace_count(2, 1, 13), 183);
    }

    #[test]
    fn common_zeros_match_brute_force() {
        let k = make_field(5, 1).unwrap();
        let f = crate::form::fermat_cubic(&k, 4);
        let zeros = common_zeros(&[f.clone()], &k, B).unwrap();
        let brute: Vec<ProjPoint> = enumerate_points(3, &k, B)
            .unwrap()
            .filter(|p| f.eval(p.coords()).is_zero())
            .collect();
        assert_eq!(zeros, brute);
        assert_eq!(count_common_zeros(&[f.clone()], &k, B).unwrap(), brute.len() as u64);
        // A cone over the Fermat plane cubic: whole fibers vanish.
        let g = crate::form::fermat_cubic(&k, 3);
        let g4 = g.map_coeffs(&k, |&c| c);
        let g4 = Form::from_terms(&k, 4, 3, g4.terms().map(|(e, &c)| {
            let mut e = e.clone();
            e.push(0);
            (e, c)
        }))
        .unwrap();
        let brute: Vec<ProjPoint> = enumerate_points(3, &k, B)
            .unwrap()
            .filter(|p| g4.eval(p.coords()).is_zero())
            .collect();
        assert_eq!(common_zeros(&[g4], &k, B).unwrap(), brute);
    }
}
