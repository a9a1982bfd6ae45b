//! Finite fields `GF(p^m)` and embeddings between them.
//!
//! An element is stored as its coefficient vector over `GF(p)` packed in base
//! `p`, constant term least significant, so `Fe(0)` is zero, `Fe(1)` is one and
//! the integer order on `Fe` is the element order used by every enumeration.
//! Arithmetic goes through the owning [`Gf`] handle, which keeps exponential,
//! logarithm and Zech tables relative to its smallest primitive element.
//!
//! The defining polynomial of `GF(p^m)` is the monic irreducible of degree `m`
//! whose coefficient vector `(c_0, .., c_{m-1})` is lexicographically smallest.
//! Fields are interned: `make_field(p, m)` always returns the same handle.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

const NONE: u32 = u32::MAX;

/// A field element, interpreted by the [`Gf`] it came from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldData {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

/// Handle to an interned finite field.
#[derive(Clone)]
pub struct Gf(Arc<FieldData>);

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.m == other.0.m)
    }
}

impl Eq for Gf {}

impl std::hash::Hash for Gf {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.m.hash(state);
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.m)
        }
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^m` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut m = 0u32;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), Gf>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), Gf>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns `GF(p^m)` with its canonical defining polynomial.
pub fn make_field(p: u64, m: u32) -> Result<Gf> {
    if !is_prime(p) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    if m == 0 {
        return Err(Error::invalid("extension degree must be at least 1"));
    }
    let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
    if q > MAX_FIELD_ORDER as u128 {
        return Err(Error::SizeExceeded {
            what: "field order",
            size: q,
            budget: MAX_FIELD_ORDER as u128,
        });
    }
    let key = (p as u32, m);
    if let Some(k) = registry().lock().unwrap().get(&key) {
        return Ok(k.clone());
    }
    let modulus = if m == 1 {
        vec![0, 1]
    } else {
        canonical_modulus(p as u32, m)?
    };
    let built = Gf(Arc::new(FieldData::build(p as u32, m, modulus)));
    let mut reg = registry().lock().unwrap();
    Ok(reg.entry(key).or_insert(built).clone())
}

/// Smallest monic irreducible of degree `m` over `GF(p)`, constant term first.
fn canonical_modulus(p: u32, m: u32) -> Result<Vec<u32>> {
    let fp = make_field(p as u64, 1)?;
    let total = (p as u64).pow(m);
    for idx in 0..total {
        // c_0 is the most significant digit of the enumeration index.
        let mut coeffs = vec![0u32; m as usize + 1];
        let mut rest = idx;
        for i in (0..m as usize).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[m as usize] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        let f = Poly::new(coeffs.iter().map(|&c| Fe(c)).collect());
        if f.is_irreducible(&fp) {
            return Ok(coeffs);
        }
    }
    Err(Error::invalid(format!("no irreducible of degree {m} over GF({p})")))
}

impl FieldData {
    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(m);
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![NONE; q as usize];
        let mut generator = 1;
        for cand in 1..q {
            let mut cur = 1u32;
            let mut ok = true;
            for k in 0..n {
                if k > 0 && cur == 1 {
                    ok = false;
                    break;
                }
                exp[k] = cur;
                cur = mul_digits(cur, cand, p, m, &modulus);
            }
            if ok && cur == 1 {
                generator = cand;
                break;
            }
        }
        for k in 0..n {
            exp[k + n] = exp[k];
            log[exp[k] as usize] = k as u32;
        }
        let mut zech = vec![NONE; n.max(1)];
        for k in 0..n {
            let s = add_digits(1, exp[k], p, m);
            zech[k] = if s == 0 { NONE } else { log[s as usize] };
        }
        FieldData {
            p,
            m,
            q,
            modulus,
            generator,
            exp,
            log,
            zech,
        }
    }
}

fn to_digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    let mut d = vec![0; m as usize];
    for x in d.iter_mut() {
        *x = v % p;
        v /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn add_digits(a: u32, b: u32, p: u32, m: u32) -> u32 {
    let da = to_digits(a, p, m);
    let db = to_digits(b, p, m);
    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    from_digits(&s, p)
}

fn mul_digits(a: u32, b: u32, p: u32, m: u32, modulus: &[u32]) -> u32 {
    let m = m as usize;
    let da = to_digits(a, p, m as u32);
    let db = to_digits(b, p, m as u32);
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * m - 1];
    for i in 0..m {
        for j in 0..m {
            prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p64;
        }
    }
    for top in (m..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for i in 0..m {
            let sub = c * modulus[i] as u64 % p64;
            let idx = top - m + i;
            prod[idx] = (prod[idx] + p64 - sub) % p64;
        }
    }
    let r: Vec<u32> = prod[..m].iter().map(|&x| x as u32).collect();
    from_digits(&r, p)
}

impl Gf {
    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Extension degree over the prime field.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.m
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn generator(&self) -> Fe {
        Fe(self.0.generator)
    }

    /// The class of the variable in `GF(p)[x]/(modulus)`.
    pub fn canonical_generator(&self) -> Fe {
        if self.0.m == 1 {
            Fe(1)
        } else {
            Fe(self.0.p)
        }
    }

    pub fn prime_field(&self) -> Gf {
        make_field(self.0.p as u64, 1).expect("prime field")
    }

    /// Whether `self` is (canonically isomorphic to) a subfield of `big`.
    pub fn is_subfield_of(&self, big: &Gf) -> bool {
        self.0.p == big.0.p && big.0.m % self.0.m == 0
    }

    pub fn extension(&self, k: u32) -> Result<Gf> {
        make_field(self.0.p as u64, self.0.m * k)
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    #[inline]
    pub fn one(&self) -> Fe {
        Fe(1)
    }

    #[inline]
    pub fn from_i64(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.0.q).map(Fe)
    }

    pub fn digits(&self, a: Fe) -> Vec<u32> {
        to_digits(a.0, self.0.p, self.0.m)
    }

    pub fn from_digits(&self, d: &[u32]) -> Result<Fe> {
        if d.len() > self.0.m as usize || d.iter().any(|&x| x >= self.0.p) {
            return Err(Error::invalid(format!("bad digit vector {d:?} for {self}")));
        }
        Ok(Fe(from_digits(d, self.0.p)))
    }

    #[inline]
    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.0.q
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let d = &*self.0;
        if d.m == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= d.p { s - d.p } else { s });
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let la = d.log[a.0 as usize];
        let lb = d.log[b.0 as usize];
        let diff = if lb >= la { lb - la } else { lb + d.q - 1 - la };
        let z = d.zech[diff as usize];
        if z == NONE {
            Fe(0)
        } else {
            Fe(d.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let d = &*self.0;
        if a.0 == 0 {
            return a;
        }
        if d.m == 1 {
            return Fe(d.p - a.0);
        }
        if d.p == 2 {
            return a;
        }
        Fe(d.exp[(d.log[a.0 as usize] + (d.q - 1) / 2) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let d = &*self.0;
        if d.m == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % d.p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        Fe(d.exp[(d.log[a.0 as usize] + d.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        self.try_inv(a).expect("inverse of zero")
    }

    #[inline]
    pub fn try_inv(&self, a: Fe) -> Option<Fe> {
        let d = &*self.0;
        if a.0 == 0 {
            return None;
        }
        let n = d.q - 1;
        let l = d.log[a.0 as usize];
        Some(Fe(d.exp[((n - l) % n.max(1)) as usize]))
    }

    #[inline]
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe(1);
        }
        if a.0 == 0 {
            return Fe(0);
        }
        let d = &*self.0;
        let n = (d.q - 1) as u64;
        let l = d.log[a.0 as usize] as u64;
        Fe(d.exp[((l * (e % n)) % n) as usize])
    }

    /// Discrete logarithm to the base [`Gf::generator`].
    pub fn log(&self, a: Fe) -> Option<u32> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize])
    }

    pub fn exp(&self, k: u64) -> Fe {
        let n = (self.0.q - 1) as u64;
        Fe(self.0.exp[(k % n) as usize])
    }

    /// `a^Q` where `Q` is the order of a subfield.
    #[inline]
    pub fn frobenius(&self, a: Fe, base_order: u32) -> Fe {
        self.pow(a, base_order as u64)
    }

    pub fn is_square(&self, a: Fe) -> bool {
        if a.0 == 0 || self.0.p == 2 {
            return true;
        }
        self.0.log[a.0 as usize] % 2 == 0
    }

    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return Some(a);
        }
        let n = self.0.q - 1;
        let l = self.0.log[a.0 as usize];
        if self.0.p == 2 {
            // Squaring is a bijection; the inverse is a^(q/2).
            return Some(self.pow(a, (self.0.q / 2) as u64));
        }
        (l % 2 == 0).then(|| Fe(self.0.exp[((l / 2) % n) as usize]))
    }

    /// Canonical coefficient string: comma-separated digits, constant first.
    pub fn encode(&self, a: Fe) -> String {
        self.digits(a)
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn decode(&self, s: &str) -> Result<Fe> {
        let digits: std::result::Result<Vec<i64>, _> =
            s.split(',').map(|t| t.trim().parse::<i64>()).collect();
        let digits = digits.map_err(|e| Error::parse(s, e.to_string()))?;
        let p = self.0.p as i64;
        let d: Vec<u32> = digits.iter().map(|x| x.rem_euclid(p) as u32).collect();
        self.from_digits(&d)
    }
}

/// The orbit `[a, a^q, a^{q^2}, ..]` of `a` under the Frobenius of `base`.
pub fn frobenius_orbit(field: &Gf, a: Fe, base: &Gf) -> Result<Vec<Fe>> {
    if !base.is_subfield_of(field) {
        return Err(Error::mismatch(format!("{base} is not a subfield of {field}")));
    }
    let mut orbit = vec![a];
    let mut cur = field.frobenius(a, base.order());
    while cur != a {
        orbit.push(cur);
        cur = field.frobenius(cur, base.order());
    }
    Ok(orbit)
}

/// A field embedding `small -> big`.
///
/// Stored multiplicatively: the generator of `small` maps to `g_big^mult`.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: Gf,
    big: Gf,
    mult: u64,
    ratio: u64,
    r_inv: u64,
}

fn embedding_cache() -> &'static Mutex<HashMap<(u32, u32, u32), Embedding>> {
    static C: OnceLock<Mutex<HashMap<(u32, u32, u32), Embedding>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let qt = r / new_r;
        (t, new_t) = (new_t, t - qt * new_t);
        (r, new_r) = (new_r, r - qt * new_r);
    }
    (r == 1).then(|| t.rem_euclid(n as i128) as u64)
}

impl Embedding {
    pub fn identity(k: &Gf) -> Embedding {
        Embedding {
            small: k.clone(),
            big: k.clone(),
            mult: 1,
            ratio: 1,
            r_inv: 1,
        }
    }

    fn from_image_of_canonical(small: &Gf, big: &Gf, theta: Fe) -> Result<Embedding> {
        // Image of small's generator g = sum d_i x^i is sum d_i theta^i.
        let digits = small.digits(small.generator());
        let mut img = Fe(0);
        let mut pw = Fe(1);
        for d in digits {
            img = big.add(img, big.mul(big.from_i64(d as i64), pw));
            pw = big.mul(pw, theta);
        }
        let mult = big.log(img).ok_or_else(|| Error::invalid("generator mapped to 0"))? as u64;
        Self::from_mult(small, big, mult)
    }

    fn from_mult(small: &Gf, big: &Gf, mult: u64) -> Result<Embedding> {
        let ns = (small.order() - 1) as u64;
        let nb = (big.order() - 1) as u64;
        let ratio = nb / ns;
        if mult % ratio != 0 {
            return Err(Error::invalid("not a subgroup embedding"));
        }
        let r = mult / ratio;
        let r_inv = inv_mod(r % ns.max(1), ns).ok_or_else(|| Error::invalid("non-injective"))?;
        Ok(Embedding {
            small: small.clone(),
            big: big.clone(),
            mult,
            ratio,
            r_inv,
        })
    }

    /// Candidate embeddings, one per root of `small`'s modulus in `big`, in root order.
    fn candidates(small: &Gf, big: &Gf) -> Result<Vec<Embedding>> {
        if !small.is_subfield_of(big) {
            return Err(Error::mismatch(format!("{small} does not embed in {big}")));
        }
        let f = Poly::new(small.modulus().iter().map(|&c| Fe(c)).collect());
        let roots = f.roots(big);
        roots
            .into_iter()
            .map(|theta| Self::from_image_of_canonical(small, big, theta))
            .collect()
    }

    /// The canonical embedding: the canonical generator of `small` goes to the
    /// first root (element order) of its defining polynomial in `big`.
    pub fn canonical(small: &Gf, big: &Gf) -> Result<Embedding> {
        if small == big {
            return Ok(Embedding::identity(small));
        }
        let key = (small.p(), small.degree(), big.degree());
        if let Some(e) = embedding_cache().lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let e = Self::candidates(small, big)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::mismatch("no root of the defining polynomial"))?;
        embedding_cache().lock().unwrap().insert(key, e.clone());
        Ok(e)
    }

    /// First embedding `small -> big` (in root order) whose restriction to `base`
    /// agrees with `base_to_big`, given `base_to_small`.
    pub fn compatible(
        small: &Gf,
        big: &Gf,
        base_to_small: &Embedding,
        base_to_big: &Embedding,
    ) -> Result<Embedding> {
        if small == big {
            return Ok(Embedding::identity(small));
        }
        let base = base_to_small.small();
        let g = base.generator();
        let target = base_to_big.apply(g);
        let via = base_to_small.apply(g);
        Self::candidates(small, big)?
            .into_iter()
            .find(|e| e.apply(via) == target)
            .ok_or_else(|| Error::mismatch("no compatible embedding"))
    }

    pub fn small(&self) -> &Gf {
        &self.small
    }

    pub fn big(&self) -> &Gf {
        &self.big
    }

    #[inline]
    pub fn apply(&self, a: Fe) -> Fe {
        if a.0 == 0 {
            return a;
        }
        let l = self.small.log(a).unwrap() as u64;
        self.big.exp(l * self.mult)
    }

    /// Preimage of `b` if it lies in the image.
    pub fn restrict(&self, b: Fe) -> Option<Fe> {
        if b.0 == 0 {
            return Some(b);
        }
        let l = self.big.log(b)? as u64;
        if l % self.ratio != 0 {
            return None;
        }
        let ns = (self.small.order() - 1) as u64;
        let j = ((l / self.ratio) % ns.max(1)) * self.r_inv % ns.max(1);
        Some(self.small.exp(j))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Embedding) -> Result<Embedding> {
        if self.big != next.small {
            return Err(Error::mismatch("embeddings do not compose"));
        }
        let nc = (next.big.order() - 1) as u64;
        let mult = ((self.mult as u128 * next.mult as u128) % nc.max(1) as u128) as u64;
        Self::from_mult(&self.small, &next.big, mult)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_cyclic_of_order_three() {
        let k = make_field(2, 2).unwrap();
        assert_eq!(k.order(), 4);
        let g = k.generator();
        assert_ne!(k.pow(g, 1), Fe(1));
        assert_eq!(k.pow(g, 3), Fe(1));
        // x^2 + x + 1 is the only irreducible quadratic over GF(2).
        assert_eq!(k.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn prime_field_frobenius_is_identity() {
        let k = make_field(11, 1).unwrap();
        for a in k.elements() {
            assert_eq!(k.frobenius(a, 11), a);
        }
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NonPrimeCharacteristic(4));
        assert!(matches!(make_field(2, 30), Err(Error::SizeExceeded { .. })));
    }

    #[test]
    fn canonical_moduli_are_lexicographically_smallest() {
        // Vectors (c0, .., c_{m-1}) with c0 = 0 are divisible by x.
        // GF(9): x^2 + 1, vector (1, 0).
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        // GF(8): x^3 + x^2 + 1 has vector (1, 0, 1) < (1, 1, 0) for x^3 + x + 1.
        assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        // GF(49): -1 is a non-square mod 7.
        assert_eq!(make_field(7, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 2), (7, 2), (2, 6)] {
            let k = make_field(p, m).unwrap();
            let els: Vec<Fe> = k.elements().collect();
            for &a in &els {
                assert_eq!(k.add(a, Fe(0)), a);
                assert_eq!(k.mul(a, Fe(1)), a);
                assert_eq!(k.add(a, k.neg(a)), Fe(0));
                if !a.is_zero() {
                    assert_eq!(k.mul(a, k.inv(a)), Fe(1));
                }
                for &b in &els {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for &c in els.iter().step_by(3) {
                        assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
                        assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn gf4_generator_orbit() {
        let f2 = make_field(2, 1).unwrap();
        let k = make_field(2, 2).unwrap();
        let g = k.canonical_generator();
        // g^2 = g + 1 in GF(2)[x]/(x^2+x+1).
        let orbit = frobenius_orbit(&k, g, &f2).unwrap();
        assert_eq!(orbit, vec![g, k.add(g, Fe(1))]);
    }

    #[test]
    fn gf8_orbits_have_length_three() {
        let f2 = make_field(2, 1).unwrap();
        let k = make_field(2, 3).unwrap();
        for a in k.elements().skip(2) {
            assert_eq!(frobenius_orbit(&k, a, &f2).unwrap().len(), 3);
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_subfield() {
        for (p, ms, mb) in [(2u64, 1u32, 4u32), (3, 1, 2), (2, 2, 4), (3, 2, 4), (11, 1, 2), (13, 1, 3)] {
            let small = make_field(p, ms).unwrap();
            let big = make_field(p, mb).unwrap();
            let e = Embedding::canonical(&small, &big).unwrap();
            let image: std::collections::HashSet<Fe> = small.elements().map(|a| e.apply(a)).collect();
            for b in big.elements() {
                let fixed = big.frobenius(b, small.order()) == b;
                assert_eq!(fixed, image.contains(&b));
                assert_eq!(fixed, e.restrict(b).is_some());
            }
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let small = make_field(3, 2).unwrap();
        let big = make_field(3, 4).unwrap();
        let e = Embedding::canonical(&small, &big).unwrap();
        for a in small.elements() {
            assert_eq!(e.restrict(e.apply(a)), Some(a));
            for b in small.elements() {
                assert_eq!(e.apply(small.add(a, b)), big.add(e.apply(a), e.apply(b)));
                assert_eq!(e.apply(small.mul(a, b)), big.mul(e.apply(a), e.apply(b)));
            }
        }
        // Canonical generator goes to a root of the defining polynomial.
        let theta = e.apply(small.canonical_generator());
        let f = Poly::new(small.modulus().iter().map(|&c| Fe(c)).collect());
        assert_eq!(f.eval(&big, theta), Fe(0));
    }

    #[test]
    fn compatible_embedding_commutes() {
        let f = make_field(2, 2).unwrap();
        let f2 = make_field(2, 4).unwrap();
        let kappa = make_field(2, 6).unwrap();
        let kappa2 = make_field(2, 12).unwrap();
        let e_f_f2 = Embedding::canonical(&f, &f2).unwrap();
        let e_f_k = Embedding::canonical(&f, &kappa).unwrap();
        let e_k_k2 = Embedding::canonical(&kappa, &kappa2).unwrap();
        let path = e_f_k.then(&e_k_k2).unwrap();
        let e_f2_k2 = Embedding::compatible(&f2, &kappa2, &e_f_f2, &path).unwrap();
        for a in f.elements() {
            assert_eq!(e_f2_k2.apply(e_f_f2.apply(a)), path.apply(a));
        }
    }

    #[test]
    fn encode_decode() {
        let k = make_field(5, 3).unwrap();
        for a in k.elements().step_by(7) {
            assert_eq!(k.decode(&k.encode(a)).unwrap(), a);
        }
        assert_eq!(k.encode(Fe(1)), "1,0,0");
        assert_eq!(k.decode("2").unwrap(), Fe(2));
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(121), Some((11, 2)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
    }
}
