//! JSON documents for forms, curves, quadric pairs, models over `k[t]`,
//! jet data and sections.

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::config::Limits;
use crate::cubic::ParamCurve;
use crate::dp4::DelPezzo4;
use crate::error::{Error, Result};
use crate::field::{make_field, Fe, Gf};
use crate::form::Form;
use crate::jets::JetPoint;
use crate::poly::Poly;
use crate::ring::PolyRing;
use crate::wa::{JData, ModelX, Place, PlaceKind, Section};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub p: u64,
    pub m: u32,
}

impl FieldDoc {
    pub fn of(k: &Gf) -> FieldDoc {
        FieldDoc {
            p: k.p() as u64,
            m: k.degree(),
        }
    }

    pub fn field(&self) -> Result<Gf> {
        make_field(self.p, self.m)
    }
}

/// A field element written either as an integer (prime fields) or as the
/// canonical digit string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Digits(String),
}

impl Coeff {
    pub fn of(k: &Gf, a: Fe) -> Coeff {
        Coeff::Digits(k.encode(a))
    }

    pub fn value(&self, k: &Gf) -> Result<Fe> {
        match self {
            Coeff::Int(n) => Ok(k.from_i64(*n)),
            Coeff::Digits(s) => k.decode(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialDoc {
    pub exp: Vec<u16>,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDoc {
    pub field: FieldDoc,
    pub vars: usize,
    pub degree: u32,
    pub monomials: Vec<MonomialDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveBody {
    pub degree: usize,
    /// Each coordinate lists the coefficients of `s^(d-k) u^k`, `k = 0..=d`.
    pub coords: Vec<Vec<Coeff>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDoc {
    pub field: FieldDoc,
    pub curve: CurveBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dp4Doc {
    pub quadrics: Vec<FormDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelTermDoc {
    pub exp: Vec<u16>,
    pub coeff_poly_t: Vec<Coeff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDoc {
    pub field: FieldDoc,
    pub vars: usize,
    pub cubic_t: Vec<ModelTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlaceDoc {
    Finite { poly_t: Vec<Coeff> },
    Infinity { infinity: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetDoc {
    pub place: PlaceDoc,
    #[serde(rename = "N")]
    pub order: usize,
    pub coords: Vec<Vec<Coeff>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JDataDoc {
    #[serde(rename = "N")]
    pub order: usize,
    pub places: Vec<PlaceDoc>,
    pub jets: Vec<JetDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionDoc {
    pub field: FieldDoc,
    /// Coefficients of each coordinate polynomial, constant term first.
    pub coords: Vec<Vec<Coeff>>,
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

fn poly_doc(k: &Gf, p: &Poly) -> Vec<Coeff> {
    p.coeffs().iter().map(|&c| Coeff::of(k, c)).collect()
}

fn poly_from(k: &Gf, c: &[Coeff]) -> Result<Poly> {
    Ok(Poly::new(c.iter().map(|x| x.value(k)).collect::<Result<_>>()?))
}

impl FormDoc {
    pub fn of(f: &Form<Gf>) -> FormDoc {
        let k = f.field();
        FormDoc {
            field: FieldDoc::of(k),
            vars: f.nvars(),
            degree: f.degree(),
            monomials: f
                .terms()
                .map(|(e, &c)| MonomialDoc {
                    exp: e.clone(),
                    coeff: Coeff::of(k, c),
                })
                .collect(),
        }
    }

    pub fn form(&self) -> Result<Form<Gf>> {
        let k = self.field.field()?;
        let terms = self
            .monomials
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let c = m
                    .coeff
                    .value(&k)
                    .map_err(|e| Error::parse(format!("monomials[{i}].coeff"), e.to_string()))?;
                Ok((m.exp.clone(), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Form::from_terms(&k, self.vars, self.degree, terms)
    }
}

pub fn parse_form(text: &str) -> Result<Form<Gf>> {
    from_json::<FormDoc>(text)?.form()
}

impl CurveDoc {
    pub fn of(k: &Gf, c: &ParamCurve) -> CurveDoc {
        CurveDoc {
            field: FieldDoc::of(k),
            curve: CurveBody {
                degree: c.degree(),
                coords: c
                    .coords()
                    .iter()
                    .map(|b| b.coeffs().iter().map(|&x| Coeff::of(k, x)).collect())
                    .collect(),
            },
        }
    }
}

impl Dp4Doc {
    pub fn of(s: &DelPezzo4) -> Dp4Doc {
        Dp4Doc {
            quadrics: s.quadrics().iter().map(FormDoc::of).collect(),
        }
    }

    pub fn surface(&self) -> Result<DelPezzo4> {
        let [a, b] = self.quadrics.as_slice() else {
            return Err(Error::parse("quadrics", "expected exactly two quadrics"));
        };
        DelPezzo4::new(a.form()?, b.form()?)
    }
}

impl ModelDoc {
    pub fn of(m: &ModelX) -> ModelDoc {
        let k = m.field();
        ModelDoc {
            field: FieldDoc::of(k),
            vars: m.nvars(),
            cubic_t: m
                .form()
                .terms()
                .map(|(e, c)| ModelTermDoc {
                    exp: e.clone(),
                    coeff_poly_t: poly_doc(k, c),
                })
                .collect(),
        }
    }

    pub fn model(&self, degree_bound: u32, limits: &Limits) -> Result<ModelX> {
        let k = self.field.field()?;
        let ring = PolyRing::new(k.clone());
        let terms = self
            .cubic_t
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let c = poly_from(&k, &t.coeff_poly_t)
                    .map_err(|e| Error::parse(format!("cubic_t[{i}].coeff_poly_t"), e.to_string()))?;
                Ok((t.exp.clone(), c))
            })
            .collect::<Result<Vec<_>>>()?;
        ModelX::new(Form::from_terms(&ring, self.vars, 3, terms)?, degree_bound, limits)
    }
}

impl PlaceDoc {
    pub fn of(b: &Place) -> PlaceDoc {
        match b.kind() {
            PlaceKind::Finite(p) => PlaceDoc::Finite {
                poly_t: poly_doc(b.base(), p),
            },
            PlaceKind::Infinity => PlaceDoc::Infinity { infinity: true },
        }
    }

    pub fn place(&self, k: &Gf) -> Result<Place> {
        match self {
            PlaceDoc::Finite { poly_t } => Place::finite(k, &poly_from(k, poly_t)?),
            PlaceDoc::Infinity { infinity: true } => Ok(Place::infinity(k)),
            PlaceDoc::Infinity { infinity: false } => Err(Error::parse("place", "infinity must be true")),
        }
    }
}

impl JetDoc {
    pub fn of(b: &Place, jet: &JetPoint) -> JetDoc {
        let kappa = b.residue_field();
        JetDoc {
            place: PlaceDoc::of(b),
            order: jet.ring().order(),
            coords: jet
                .coords()
                .iter()
                .map(|c| c.iter().map(|&x| Coeff::of(kappa, x)).collect())
                .collect(),
        }
    }

    pub fn jet(&self, b: &Place) -> Result<JetPoint> {
        let kappa = b.residue_field();
        let ring = b.jet_ring(self.order);
        let coords = self
            .coords
            .iter()
            .map(|c| {
                let v = c.iter().map(|x| x.value(kappa)).collect::<Result<Vec<_>>>()?;
                if v.len() > self.order + 1 {
                    return Err(Error::parse("jets.coords", "more coefficients than the order allows"));
                }
                Ok(ring.from_coeffs(&v))
            })
            .collect::<Result<Vec<_>>>()?;
        JetPoint::new(&ring, coords)
    }
}

impl JDataDoc {
    pub fn of(j: &JData) -> JDataDoc {
        JDataDoc {
            order: j.order(),
            places: j.places().iter().map(PlaceDoc::of).collect(),
            jets: j.places().iter().zip(j.jets()).map(|(b, s)| JetDoc::of(b, s)).collect(),
        }
    }

    pub fn jdata(&self, model: &ModelX, limits: &Limits) -> Result<JData> {
        let k = model.field();
        let places = self
            .places
            .iter()
            .enumerate()
            .map(|(i, p)| p.place(k).map_err(|e| Error::parse(format!("places[{i}]"), e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if self.jets.len() != places.len() {
            return Err(Error::parse("jets", "one jet per place required"));
        }
        let mut jets = Vec::new();
        for (i, (doc, b)) in self.jets.iter().zip(&places).enumerate() {
            if doc.order != self.order || doc.place.place(k)? != *b {
                return Err(Error::parse(format!("jets[{i}]"), "jet order or place disagrees with the header"));
            }
            jets.push(doc.jet(b)?);
        }
        JData::new(model, self.order, places, jets, limits)
    }
}

impl SectionDoc {
    pub fn of(s: &Section) -> SectionDoc {
        SectionDoc {
            field: FieldDoc::of(s.field()),
            coords: s.coords().iter().map(|c| poly_doc(s.field(), c)).collect(),
        }
    }

    pub fn section(&self) -> Result<Section> {
        let k = self.field.field()?;
        let coords = self.coords.iter().map(|c| poly_from(&k, c)).collect::<Result<Vec<_>>>()?;
        Section::new(&k, coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::fermat_cubic;

    #[test]
    fn form_round_trip() {
        let k = make_field(3, 2).unwrap();
        let f = fermat_cubic(&k, 3).add(&Form::monomial(&k, vec![1, 1, 1], k.generator()));
        let text = to_json(&FormDoc::of(&f));
        assert_eq!(parse_form(&text).unwrap(), f);
        assert!(matches!(parse_form("{\"field\": 3}"), Err(Error::Parse { .. })));
    }

    #[test]
    fn prime_field_integers_accepted() {
        let text = r#"{"field":{"p":7,"m":1},"vars":2,"degree":1,"monomials":[{"exp":[1,0],"coeff":-1},{"exp":[0,1],"coeff":"3"}]}"#;
        let f = parse_form(text).unwrap();
        let k = make_field(7, 1).unwrap();
        assert_eq!(f.eval(&[Fe::ONE, Fe::ONE]), k.from_i64(2));
    }
}
