//! Dense univariate polynomials over a finite field.
//!
//! Coefficients are stored constant term first with no trailing zeros, so the
//! zero polynomial is the empty vector. The field is passed to every
//! arithmetic call.

use crate::error::{Error, Result};
use crate::field::{Embedding, Fe, Gf};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Fe::ONE)
    }

    pub fn constant(c: Fe) -> Poly {
        Poly::new(vec![c])
    }

    /// The variable.
    pub fn x() -> Poly {
        Poly::new(vec![Fe::ZERO, Fe::ONE])
    }

    pub fn monomial(c: Fe, d: usize) -> Poly {
        let mut v = vec![Fe::ZERO; d + 1];
        v[d] = c;
        Poly::new(v)
    }

    /// `x - a`.
    pub fn linear(k: &Gf, a: Fe) -> Poly {
        Poly::new(vec![k.neg(a), Fe::ONE])
    }

    pub fn from_i64(k: &Gf, coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| k.from_i64(c)).collect())
    }

    #[inline]
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fe::ONE
    }

    pub fn eval(&self, k: &Gf, x: Fe) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
    }

    pub fn add(&self, other: &Poly, k: &Gf) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| k.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, k: &Gf) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| k.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, k: &Gf) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| k.neg(c)).collect())
    }

    pub fn scale(&self, c: Fe, k: &Gf) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, k: &Gf) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32, k: &Gf) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self, k);
        }
        acc
    }

    /// Multiplies by `x^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Fe::ZERO; n];
        v.extend_from_slice(&self.coeffs);
        Poly { coeffs: v }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly, k: &Gf) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let inv_lead = k.inv(d.lead());
        let mut r = self.coeffs.clone();
        let mut q = vec![Fe::ZERO; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = k.mul(r[i + dd], inv_lead);
            if c.is_zero() {
                continue;
            }
            q[i] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[i + j] = k.sub(r[i + j], k.mul(c, b));
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly, k: &Gf) -> Poly {
        self.divrem(d, k).1
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly, k: &Gf) -> Option<Poly> {
        let (q, r) = self.divrem(d, k);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self, k: &Gf) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(k.inv(self.lead()), k)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly, k: &Gf) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    pub fn derivative(&self, k: &Gf) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| k.mul(k.from_i64(i as i64), c))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Poly, k: &Gf) -> Poly {
        let mut base = self.rem(m, k);
        let mut acc = Poly::one().rem(m, k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k).rem(m, k);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, k).rem(m, k);
            }
        }
        acc
    }

    /// `g(self)`.
    pub fn compose(&self, g: &Poly, k: &Gf) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| acc.mul(g, k).add(&Poly::constant(c), k))
    }

    pub fn map_coeffs(&self, f: impl Fn(Fe) -> Fe) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| f(c)).collect())
    }

    pub fn embed(&self, e: &Embedding) -> Poly {
        self.map_coeffs(|c| e.apply(c))
    }

    /// Coefficientwise preimage, if every coefficient lies in the subfield.
    pub fn restrict(&self, e: &Embedding) -> Option<Poly> {
        let c: Option<Vec<Fe>> = self.coeffs.iter().map(|&c| e.restrict(c)).collect();
        c.map(Poly::new)
    }

    /// Reverses the coefficient vector relative to degree `d`: `x^d f(1/x)`.
    pub fn reverse(&self, d: usize) -> Poly {
        let mut v = vec![Fe::ZERO; d + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[d - i] = c;
        }
        Poly::new(v)
    }

    pub fn is_squarefree(&self, k: &Gf) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative(k);
                !d.is_zero() && self.gcd(&d, k).is_constant()
            }
        }
    }

    /// `x^(Q^i) mod self` for `i = 0..=n`, where `Q = |k|`.
    fn frobenius_powers(&self, n: usize, k: &Gf) -> Vec<Poly> {
        let q = k.order() as u64;
        let mut out = vec![Poly::x().rem(self, k)];
        for _ in 0..n {
            let prev = out.last().unwrap();
            out.push(prev.powmod(q, self, k));
        }
        out
    }

    /// Rabin's irreducibility test over `k`.
    pub fn is_irreducible(&self, k: &Gf) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let pw = self.frobenius_powers(n, k);
        let x = Poly::x();
        if !pw[n].sub(&x, k).is_zero() {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|r| {
            let h = pw[n / r as usize].sub(&x, k);
            self.gcd(&h, k).is_constant()
        })
    }

    /// Degrees of the irreducible factors of a squarefree polynomial, ascending.
    pub fn factor_degrees(&self, k: &Gf) -> Vec<usize> {
        let mut out = Vec::new();
        let mut rest = self.monic(k);
        let q = k.order() as u64;
        let mut h = Poly::x();
        let mut i = 0;
        while rest.deg() >= 2 * (i as isize + 1) {
            i += 1;
            h = h.powmod(q, &rest, k);
            let g = rest.gcd(&h.sub(&Poly::x(), k), k);
            if let Some(dg) = g.degree().filter(|&d| d > 0) {
                out.extend(std::iter::repeat(i).take(dg / i));
                rest = rest.div_exact(&g, k).unwrap();
                h = h.rem(&rest, k);
            }
        }
        if let Some(d) = rest.degree().filter(|&d| d > 0) {
            out.push(d);
        }
        out
    }

    /// Product of the distinct linear factors over `k`: `gcd(self, x^Q - x)`.
    pub fn split_part(&self, k: &Gf) -> Poly {
        if self.deg() <= 0 {
            return Poly::one();
        }
        let xq = Poly::x().powmod(k.order() as u64, self, k);
        self.gcd(&xq.sub(&Poly::x(), k), k)
    }

    pub fn count_distinct_roots(&self, k: &Gf) -> usize {
        if self.is_zero() {
            return k.order() as usize;
        }
        self.split_part(k).degree().unwrap_or(0)
    }

    /// Distinct roots in `k` (coefficients must already live in `k`), ascending.
    pub fn roots(&self, k: &Gf) -> Vec<Fe> {
        let d = match self.degree() {
            None | Some(0) => return Vec::new(),
            Some(d) => d,
        };
        if d == 1 {
            return vec![k.neg(k.div(self.coeffs[0], self.coeffs[1]))];
        }
        if d == 2 && k.p() != 2 {
            let (c, b, a) = (self.coeffs[0], self.coeffs[1], self.coeffs[2]);
            let disc = k.sub(k.mul(b, b), k.mul(k.from_i64(4), k.mul(a, c)));
            let mut out = match k.sqrt(disc) {
                None => Vec::new(),
                Some(r) => {
                    let inv2a = k.inv(k.mul(k.from_i64(2), a));
                    let r1 = k.mul(k.sub(r, b), inv2a);
                    let r2 = k.mul(k.sub(k.neg(r), b), inv2a);
                    if r1 == r2 {
                        vec![r1]
                    } else {
                        vec![r1, r2]
                    }
                }
            };
            out.sort();
            return out;
        }
        if (k.order() as usize) <= 8 * d + 32 {
            return k.elements().filter(|&a| self.eval(k, a).is_zero()).collect();
        }
        let g = self.split_part(k);
        let mut out = Vec::new();
        split_linear(&g, k, &mut out);
        out.sort();
        out
    }

    /// Roots in `k` with multiplicities, ascending by root.
    pub fn roots_with_multiplicity(&self, k: &Gf) -> Vec<(Fe, usize)> {
        self.roots(k)
            .into_iter()
            .map(|r| {
                let lin = Poly::linear(k, r);
                let mut m = 0;
                let mut cur = self.clone();
                while let Some(q) = cur.div_exact(&lin, k) {
                    m += 1;
                    cur = q;
                }
                (r, m)
            })
            .collect()
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Equal-degree splitting of a monic product of distinct linear factors.
fn split_linear(g: &Poly, k: &Gf, out: &mut Vec<Fe>) {
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            out.push(k.neg(g.coeffs[0]));
            return;
        }
        _ => {}
    }
    let q = k.order() as u64;
    for a in k.elements().skip(if k.p() == 2 { 1 } else { 0 }) {
        let h = if k.p() == 2 {
            // Absolute trace of a*x.
            let m = k.degree() as usize;
            let mut t = Poly::new(vec![Fe::ZERO, a]).rem(g, k);
            let mut acc = t.clone();
            for _ in 1..m {
                t = t.mul(&t, k).rem(g, k);
                acc = acc.add(&t, k);
            }
            acc
        } else {
            let base = Poly::new(vec![a, Fe::ONE]);
            base.powmod((q - 1) / 2, g, k).sub(&Poly::one(), k)
        };
        let f = g.gcd(&h, k);
        let df = f.deg();
        if df > 0 && df < g.deg() {
            let other = g.div_exact(&f, k).unwrap();
            split_linear(&f, k, out);
            split_linear(&other, k, out);
            return;
        }
    }
    unreachable!("equal-degree splitting failed to separate distinct roots");
}

/// Roots with multiplicities of `f` (over `base`) inside the extension `target`.
pub fn univariate_roots(f: &Poly, base: &Gf, target: &Gf) -> Result<Vec<(Fe, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let e = Embedding::canonical(base, target)?;
    Ok(f.embed(&e).roots_with_multiplicity(target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;

    fn gf(p: u64, m: u32) -> Gf {
        make_field(p, m).unwrap()
    }

    #[test]
    fn cube_roots_of_unity_mod_7() {
        let k = gf(7, 1);
        let f = Poly::from_i64(&k, &[-1, 0, 0, 1]);
        let r = univariate_roots(&f, &k, &k).unwrap();
        assert_eq!(r, vec![(Fe(1), 1), (Fe(2), 1), (Fe(4), 1)]);
        for a in k.elements() {
            assert_eq!(f.eval(&k, a).is_zero(), r.iter().any(|&(x, _)| x == a));
        }
    }

    #[test]
    fn no_square_root_of_minus_one_mod_11() {
        let k = gf(11, 1);
        let f = Poly::from_i64(&k, &[1, 0, 1]);
        assert!(univariate_roots(&f, &k, &k).unwrap().is_empty());
        assert!(k.elements().all(|a| !f.eval(&k, a).is_zero()));
    }

    #[test]
    fn double_root_at_zero() {
        for (p, m) in [(2, 1), (5, 1), (3, 3)] {
            let k = gf(p, m);
            let f = Poly::monomial(Fe::ONE, 2);
            assert_eq!(univariate_roots(&f, &k, &k).unwrap(), vec![(Fe(0), 2)]);
        }
        let k = gf(3, 1);
        assert_eq!(univariate_roots(&Poly::zero(), &k, &k), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn roots_in_extension() {
        let k = gf(11, 1);
        let k2 = gf(11, 2);
        let f = Poly::from_i64(&k, &[1, 0, 1]);
        let r = univariate_roots(&f, &k, &k2).unwrap();
        assert_eq!(r.len(), 2);
        let e = Embedding::canonical(&k, &k2).unwrap();
        for (x, _) in r {
            assert!(f.embed(&e).eval(&k2, x).is_zero());
        }
    }

    #[test]
    fn factor_degrees_of_known_products() {
        let k = gf(13, 1);
        // (x^2 - 2)(x - 1)(x^3 - 2): 2 is a non-square and a non-cube mod 13.
        let f = Poly::from_i64(&k, &[-2, 0, 1])
            .mul(&Poly::from_i64(&k, &[-1, 1]), &k)
            .mul(&Poly::from_i64(&k, &[-2, 0, 0, 1]), &k);
        assert!(f.is_squarefree(&k));
        assert_eq!(f.factor_degrees(&k), vec![1, 2, 3]);
    }

    #[test]
    fn large_field_roots_match_brute_force() {
        let k = gf(2, 10);
        let f = Poly::new(vec![Fe(5), Fe(17), Fe(0), Fe(900), Fe(3), Fe(1)]);
        let brute: Vec<Fe> = k.elements().filter(|&a| f.eval(&k, a).is_zero()).collect();
        assert_eq!(f.roots(&k), brute);
        let k = gf(3, 7);
        let f = Poly::new(vec![Fe(2), Fe(1), Fe(0), Fe(1)])
            .mul(&Poly::linear(&k, Fe(100)), &k)
            .mul(&Poly::linear(&k, Fe(1000)), &k);
        let brute: Vec<Fe> = k.elements().filter(|&a| f.eval(&k, a).is_zero()).collect();
        assert_eq!(f.roots(&k), brute);
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(a in prop::collection::vec(0u32..13, 0..8), b in prop::collection::vec(0u32..13, 1..5)) {
            let k = gf(13, 1);
            let a = Poly::new(a.into_iter().map(Fe).collect());
            let b = Poly::new(b.into_iter().map(Fe).collect());
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b, &k);
            prop_assert_eq!(q.mul(&b, &k).add(&r, &k), a);
            prop_assert!(r.deg() < b.deg());
        }

        #[test]
        fn roots_agree_with_evaluation(c in prop::collection::vec(0u32..49, 2..7)) {
            let k = gf(7, 2);
            let f = Poly::new(c.into_iter().map(Fe).collect());
            prop_assume!(f.deg() >= 1);
            let brute: Vec<Fe> = k.elements().filter(|&a| f.eval(&k, a).is_zero()).collect();
            prop_assert_eq!(f.roots(&k), brute);
            let total: usize = f.roots_with_multiplicity(&k).iter().map(|r| r.1).sum();
            prop_assert!(total <= f.deg() as usize);
        }

        #[test]
        fn irreducible_iff_single_factor(c in prop::collection::vec(0u32..5, 4)) {
            let k = gf(5, 1);
            let mut c: Vec<Fe> = c.into_iter().map(Fe).collect();
            c.push(Fe::ONE);
            let f = Poly::new(c);
            if f.is_squarefree(&k) {
                let degs = f.factor_degrees(&k);
                prop_assert_eq!(degs.iter().sum::<usize>(), 4);
                prop_assert_eq!(f.is_irreducible(&k), degs == vec![4]);
            }
        }
    }
}
