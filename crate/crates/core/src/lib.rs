//! Exact computational geometry over finite fields for cubic hypersurfaces,
//! quartic del Pezzo surfaces and sections of models over the projective line.

pub mod config;
pub mod cubic;
pub mod dense;
pub mod dp4;
pub mod error;
pub mod field;
pub mod form;
pub mod interchange;
pub mod jets;
pub mod linalg;
pub mod poly;
pub mod proj;
pub mod ring;
pub mod sample;
pub mod wa;

pub use error::{Error, Result};
pub use field::{frobenius_orbit, make_field, Embedding, Fe, Gf};
pub use form::{BinaryForm, Form};
pub use poly::{univariate_roots, Poly};
pub use proj::{enumerate_points, lines_through, LinearSubspace, ProjPoint, ProjSpace};
pub use ring::{PolyRing, Ring};
pub use config::Limits;
pub use cubic::{connect_points, nodal_parametrization, Contact, CubicHypersurface, ParamCurve};
pub use jets::{hensel_lift, jet_line_third_points, JetLine, JetPoint, JetRing};
pub use wa::{descend_section, lift_jdata_to_quadratic, search_section, section_jet, wa_pipeline, JData, ModelX, Place, Section};
