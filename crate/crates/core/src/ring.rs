//! Coefficient rings for homogeneous forms.

use std::fmt::Debug;
use std::hash::Hash;

use crate::field::{Fe, Gf};
use crate::poly::Poly;

/// A commutative ring handle whose elements are plain values.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

impl Ring for Gf {
    type Elem = Fe;

    fn zero(&self) -> Fe {
        Fe::ZERO
    }
    fn one(&self) -> Fe {
        Fe::ONE
    }
    #[inline]
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        Gf::add(self, *a, *b)
    }
    #[inline]
    fn neg(&self, a: &Fe) -> Fe {
        Gf::neg(self, *a)
    }
    #[inline]
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        Gf::mul(self, *a, *b)
    }
    #[inline]
    fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        Gf::sub(self, *a, *b)
    }
    fn is_zero(&self, a: &Fe) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> Fe {
        Gf::from_i64(self, n)
    }
    fn pow(&self, a: &Fe, e: u32) -> Fe {
        Gf::pow(self, *a, e as u64)
    }
}

/// The polynomial ring `k[t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing {
    pub field: Gf,
}

impl PolyRing {
    pub fn new(field: Gf) -> Self {
        PolyRing { field }
    }
}

impl Ring for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::one()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b, &self.field)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg(&self.field)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b, &self.field)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b, &self.field)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> Poly {
        Poly::constant(self.field.from_i64(n))
    }
}
