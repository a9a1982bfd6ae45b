//! Seeded random instances.

use rand::Rng;

use crate::cubic::CubicHypersurface;
use crate::dp4::DelPezzo4;
use crate::error::Result;
use crate::field::{Fe, Gf};
use crate::form::Form;

pub fn random_element<R: Rng>(k: &Gf, rng: &mut R) -> Fe {
    Fe(rng.gen_range(0..k.order()))
}

pub fn random_nonzero<R: Rng>(k: &Gf, rng: &mut R) -> Fe {
    Fe(rng.gen_range(1..k.order()))
}

fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u16>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, degree, &mut vec![0; nvars], &mut out);
    out
}

/// A form with independent uniform coefficients.
pub fn random_form<R: Rng>(k: &Gf, nvars: usize, degree: u32, rng: &mut R) -> Form<Gf> {
    let terms: Vec<(Vec<u16>, Fe)> = monomials(nvars, degree)
        .into_iter()
        .map(|e| (e, random_element(k, rng)))
        .collect();
    Form::from_terms(k, nvars, degree, terms).expect("well-formed")
}

/// A random quadric pair passing the discriminant test.
pub fn random_smooth_dp4<R: Rng>(k: &Gf, rng: &mut R) -> Result<DelPezzo4> {
    loop {
        let q1 = random_form(k, 5, 2, rng);
        let q2 = random_form(k, 5, 2, rng);
        let Ok(s) = DelPezzo4::new(q1, q2) else {
            continue;
        };
        if s.is_smooth()? {
            return Ok(s);
        }
    }
}

/// `X_0 Q + C` with `Q, C` random in `X_1 .. X_n`, so `[1:0:..:0]` is singular;
/// redrawn until that point is an ordinary double point.
pub fn random_nodal_cubic<R: Rng>(k: &Gf, nvars: usize, rng: &mut R) -> Result<CubicHypersurface> {
    let origin = {
        let mut v = vec![Fe::ZERO; nvars];
        v[0] = Fe::ONE;
        crate::proj::ProjPoint::new(k, v)?
    };
    loop {
        let q = random_form(k, nvars - 1, 2, rng);
        let c = random_form(k, nvars - 1, 3, rng);
        let lift = |f: &Form<Gf>, extra: u16| {
            let terms: Vec<(Vec<u16>, Fe)> = f
                .terms()
                .map(|(e, &v)| {
                    let mut e2 = vec![extra];
                    e2.extend(e);
                    (e2, v)
                })
                .collect();
            Form::from_terms(k, nvars, 3, terms)
        };
        let f = lift(&q, 1)?.add(&lift(&c, 0)?);
        if f.is_zero() {
            continue;
        }
        let Ok(v) = CubicHypersurface::new(f) else {
            continue;
        };
        if v.is_ordinary_double_point(&origin)? {
            return Ok(v);
        }
    }
}

/// A random ternary cubic that is geometrically integral.
pub fn random_integral_plane_cubic<R: Rng>(k: &Gf, rng: &mut R) -> Result<Form<Gf>> {
    loop {
        let f = random_form(k, 3, 3, rng);
        if f.is_zero() {
            continue;
        }
        let e = crate::dense::TernaryCubic::from_form(&f);
        if crate::dense::is_geometrically_integral(k, &e)? {
            return Ok(f);
        }
    }
}
