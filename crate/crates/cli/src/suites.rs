//! Verification suites and censuses behind each command.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};
use std::time::Duration;

use cubicwa_core::dense::{is_geometrically_integral, TernaryCubic};
use cubicwa_core::dp4::{classify_lines, find_inert_line, find_split_dp4, DelPezzo4, HyperplaneKind, PlaneCubicCensus};
use cubicwa_core::form::fermat_cubic;
use cubicwa_core::interchange::{from_json, parse_form, Dp4Doc, FormDoc, JDataDoc, ModelDoc, SectionDoc};
use cubicwa_core::sample::{random_form, random_integral_plane_cubic, random_nodal_cubic, random_smooth_dp4};
use cubicwa_core::wa::{brute_force_sections, congruence_check, descend_jets, diagonal_model, search_section_report, verify_section};
use cubicwa_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{field_from, read_input, CliError, CliResult, Options, Report, RunConfig};

/// Independent random stream for item `index`, so parallel runs stay deterministic.
pub fn item_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn input_file<T: serde::de::DeserializeOwned>(path: &std::path::PathBuf) -> CliResult<T> {
    from_json::<T>(&read_input(path)?).map_err(CliError::input)
}

fn gf(p: u64, m: u32) -> Gf {
    make_field(p, m).expect("built-in field")
}

// ---------------------------------------------------------------- nodal cubics

pub fn nodal_identity(cfg: &RunConfig, fields: &[u64], dims: &[usize], per_cell: usize) -> CliResult<Report> {
    let mut r = Report::new("cubic-census", &["q", "nvars", "index", "identity", "pointwise_checked", "pointwise_ok"]);
    cfg.echo(&mut r);
    r.config("fields", format!("{fields:?}"))
        .config("nvars", format!("{dims:?}"))
        .config("per_cell", per_cell);
    let items: Vec<(u64, usize, usize)> = fields
        .iter()
        .flat_map(|&q| dims.iter().flat_map(move |&n| (0..per_cell).map(move |i| (q, n, i))))
        .collect();
    let rows = items
        .par_iter()
        .enumerate()
        .map(|(idx, &(q, nvars, i))| -> CliResult<(bool, u64, bool)> {
            let k = field_from(&Options { q: Some(q), ..Options::default() }, q)?;
            let mut rng = item_rng(cfg.seed, idx as u64);
            let v = random_nodal_cubic(&k, nvars, &mut rng)?;
            let mut origin = vec![Fe::ZERO; nvars];
            origin[0] = Fe::ONE;
            let phi = nodal_parametrization(&v, &ProjPoint::new(&k, origin)?)?;
            let identity = v.form().compose(&phi.map)?.is_zero();
            // Recheck by evaluation on a spread of parameter points.
            let space = ProjSpace::new(nvars - 2, &k, cfg.limits.budget)?;
            let step = (space.count() / 500).max(1) as usize;
            let mut checked = 0u64;
            let mut ok = true;
            for s in space.iter().step_by(step) {
                let img: Vec<Fe> = phi.map.iter().map(|m| m.eval(s.coords())).collect();
                ok &= v.eval(&img).is_zero();
                checked += 1;
            }
            let _ = i;
            Ok((identity, checked, ok))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut by_cell: BTreeMap<(u64, usize), (usize, usize)> = BTreeMap::new();
    for (&(q, n, i), &(id, checked, ok)) in items.iter().zip(&rows) {
        r.record(vec![q.to_string(), n.to_string(), i.to_string(), yes(id), checked.to_string(), yes(ok)]);
        let cell = by_cell.entry((q, n)).or_default();
        cell.0 += 1;
        cell.1 += id as usize;
    }
    for ((q, n), (total, ok)) in &by_cell {
        r.tally(&format!("q{q}_nvars{n}"), format!("{ok}/{total}"));
    }
    let total = rows.len();
    let identities = rows.iter().filter(|x| x.0).count();
    let pointwise = rows.iter().filter(|x| x.2).count();
    r.tally("cubics", total);
    r.verdict("identity", identities == total, format!("F(phi) = 0 as a form for {identities}/{total} cubics"));
    r.verdict("pointwise", pointwise == total, format!("F(phi(s)) = 0 at sampled points for {pointwise}/{total} cubics"));
    Ok(r)
}

pub fn cubic_census(o: &Options, cfg: &RunConfig) -> CliResult<Report> {
    let fields: Vec<u64> = match (o.q, o.p) {
        (None, None) => vec![7, 11, 13],
        _ => vec![field_from(o, 7)?.order() as u64],
    };
    nodal_identity(cfg, &fields, &[4, 5, 6], o.samples.unwrap_or(12))
}

// ------------------------------------------------------------ connect_points

enum PairOutcome {
    Connected { degree: usize, checked: usize, ok: bool },
    Inadmissible(Error),
    Failed(Error),
}

fn check_connection(k: &Gf, x: &CubicHypersurface, a: &ProjPoint, b: &ProjPoint, limits: &Limits) -> PairOutcome {
    match x.connect_points(a, b, limits) {
        Ok(c) => {
            let identity = c.curve.pullback(k, x.form()).map(|f| f.is_zero()).unwrap_or(false);
            let mut ok = identity;
            let mut checked = 0;
            for t in ProjSpace::new(1, k, u64::MAX).expect("projective line").iter() {
                ok &= c.curve.eval(k, t.coords()[0], t.coords()[1]).is_some_and(|p| x.contains(&p));
                checked += 1;
            }
            ok &= c.curve.eval(k, Fe::ONE, Fe::ZERO).as_ref() == Some(a);
            ok &= c.curve.eval(k, Fe::ZERO, Fe::ONE).as_ref() == Some(b);
            PairOutcome::Connected {
                degree: c.curve.degree(),
                checked,
                ok,
            }
        }
        Err(e @ (Error::LineContainedInX | Error::DegeneratePair | Error::HypothesisFailure { .. })) => PairOutcome::Inadmissible(e),
        Err(Error::NoAuxiliaryPoint) if tangent_section_is_cone(k, x, a) => {
            PairOutcome::Inadmissible(Error::hypothesis("(1) lines through x", "tangent section is a cone over x"))
        }
        Err(e) => PairOutcome::Failed(e),
    }
}

/// Whether every rational point of `H_x ∩ X` lies on a line of `X` through `x`,
/// which leaves the tangent involution undefined on the whole section.
fn tangent_section_is_cone(k: &Gf, x: &CubicHypersurface, a: &ProjPoint) -> bool {
    let Ok(hx) = x.tangent_hyperplane(a) else {
        return false;
    };
    let cone = hx
        .points(k)
        .filter(|u| u != a && x.contains(u))
        .all(|u| x.restrict_to_line(a.coords(), u.coords()).is_zero());
    cone
}

pub fn connect_suite(cfg: &RunConfig, x: &CubicHypersurface, target: usize, max_attempts: usize) -> CliResult<Report> {
    let k = x.field().clone();
    let mut r = Report::new("connect", &["attempt", "x", "y", "outcome", "degree", "params_checked", "recheck"]);
    cfg.echo(&mut r);
    r.config("q", k.order()).config("nvars", x.n() + 1).config("target", target);
    let pts = x.points(&k, cfg.limits.budget)?;
    if pts.len() < 2 {
        return Err(CliError::input(Error::invalid("fewer than two rational points")));
    }
    let mut rng = item_rng(cfg.seed, 0);
    let pairs: Vec<(usize, usize)> = (0..max_attempts)
        .map(|_| {
            let i = rng.gen_range(0..pts.len());
            let j = (i + rng.gen_range(1..pts.len())) % pts.len();
            (i, j)
        })
        .collect();
    let (mut connected, mut inadmissible, mut failed, mut bad_recheck) = (0usize, 0usize, 0usize, 0usize);
    let batch = rayon::current_num_threads().max(1) * 2;
    'outer: for (chunk_idx, chunk) in pairs.chunks(batch).enumerate() {
        let outcomes: Vec<PairOutcome> = chunk
            .par_iter()
            .map(|&(i, j)| check_connection(&k, x, &pts[i], &pts[j], &cfg.limits))
            .collect();
        for (off, (&(i, j), out)) in chunk.iter().zip(outcomes).enumerate() {
            let attempt = (chunk_idx * batch + off).to_string();
            let (xs, ys) = (pts[i].display(&k), pts[j].display(&k));
            match out {
                PairOutcome::Connected { degree, checked, ok } => {
                    connected += 1;
                    bad_recheck += !ok as usize;
                    r.record(vec![attempt, xs, ys, "connected".into(), degree.to_string(), checked.to_string(), yes(ok)]);
                }
                PairOutcome::Inadmissible(e) => {
                    inadmissible += 1;
                    r.record(vec![attempt, xs, ys, format!("inadmissible: {e}"), String::new(), String::new(), String::new()]);
                }
                PairOutcome::Failed(e) => {
                    failed += 1;
                    r.record(vec![attempt, xs, ys, format!("failed: {e}"), String::new(), String::new(), String::new()]);
                }
            }
            if connected == target {
                break 'outer;
            }
        }
    }
    r.tally("connected", connected);
    r.tally("inadmissible", inadmissible);
    r.tally("failed", failed);
    r.verdict("connected", connected >= target, format!("{connected} admissible pairs connected, target {target}"));
    r.verdict("failures", failed == 0, format!("{failed} admissible pairs failed"));
    r.verdict(
        "recheck",
        bad_recheck == 0,
        format!("F(c) = 0 exactly, every parameter on X and both endpoints hit for {}/{connected} curves", connected - bad_recheck),
    );
    Ok(r)
}

fn cubic_from_options(o: &Options, k: &Gf, nvars: usize) -> CliResult<CubicHypersurface> {
    let form = match (&o.input, o.surface.as_deref()) {
        (Some(path), _) => parse_form(&read_input(path)?).map_err(CliError::input)?,
        (None, None | Some("fermat")) => fermat_cubic(k, nvars),
        (None, Some(path)) => parse_form(&read_input(&path.into())?).map_err(CliError::input)?,
    };
    CubicHypersurface::new(form).map_err(CliError::input)
}

pub fn connect(o: &Options, cfg: &RunConfig) -> CliResult<Report> {
    let k = field_from(o, 11)?;
    let x = cubic_from_options(o, &k, 5)?;
    let target = o.samples.unwrap_or(50);
    connect_suite(cfg, &x, target, target * 20)
}

// --------------------------------------------------------------- plane cubics

struct PlaneCubicItem {
    census: PlaneCubicCensus,
    inert: Option<bool>,
}

/// Census plus inert-line search; `inert` is `Some(recheck)` when a line was found.
fn analyze_plane_cubic(f: &Form<Gf>, budget: u64) -> CliResult<PlaneCubicItem> {
    let census = classify_lines(f)?;
    let inert = match find_inert_line(f, budget) {
        Ok(found) => Some(recheck_inert(f, &found)?),
        Err(Error::NotFound { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(PlaneCubicItem { census, inert })
}

/// No point of the line over GF(q) or GF(q^2) lies on the curve, and over
/// GF(q^3) exactly the three reported points do, forming one Frobenius orbit.
fn recheck_inert(f: &Form<Gf>, found: &cubicwa_core::dp4::InertLine) -> CliResult<bool> {
    let k = f.field();
    for d in [1u32, 2] {
        let big = k.extension(d)?;
        let e = Embedding::canonical(k, &big)?;
        let g = f.embed(&e);
        if found.line.embed(&e).points(&big).any(|p| g.eval(p.coords()).is_zero()) {
            return Ok(false);
        }
    }
    let k3 = &found.cubic_field;
    let e3 = Embedding::canonical(k, k3)?;
    let g = f.embed(&e3);
    let mut on: Vec<ProjPoint> = found.line.embed(&e3).points(k3).filter(|p| g.eval(p.coords()).is_zero()).collect();
    let mut reported = found.points.clone();
    on.sort();
    reported.sort();
    let p0 = &found.points[0];
    let mut orbit = vec![p0.clone(), p0.frobenius(k3, k.order()), p0.frobenius(k3, k.order()).frobenius(k3, k.order())];
    orbit.sort();
    Ok(on == reported && orbit == reported && on.len() == 3)
}

struct BoundTracker {
    formula: &'static str,
    measure: &'static str,
    worst: Option<(i64, i64, usize)>,
}

impl BoundTracker {
    fn new(measure: &'static str, formula: &'static str) -> Self {
        BoundTracker { formula, measure, worst: None }
    }

    /// Tracks the item with the largest `value - bound`.
    fn observe(&mut self, value: i64, bound: i64, index: usize) {
        if self.worst.is_none_or(|(v, b, _)| value - bound > v - b) {
            self.worst = Some((value, bound, index));
        }
    }

    fn verdict(&self, r: &mut Report, name: &str) {
        let (pass, detail) = match self.worst {
            Some((v, b, i)) => (v <= b, format!("worst {} = {v}, bound {} = {b} (item {i})", self.measure, self.formula)),
            None => (true, format!("no items for {}", self.formula)),
        };
        r.verdict(name, pass, detail);
    }
}

fn plane_cubic_bounds(r: &mut Report, items: &[PlaneCubicItem]) {
    let mut mixed = BoundTracker::new("2 mixed", "m - n");
    let mut split = BoundTracker::new("split", "floor(C(n,2)/3)");
    let mut hasse = BoundTracker::new("(n-(q+1))^2", "4q");
    let mut tangent_mismatch = 0usize;
    let mut smooth = 0usize;
    let mut violating = 0usize;
    for (i, it) in items.iter().enumerate() {
        let c = &it.census;
        if !c.integral {
            continue;
        }
        let (n, m, q) = (c.n as i64, c.m as i64, c.q as i64);
        mixed.observe(2 * c.mixed as i64, m - n, i);
        split.observe(c.split as i64, n * (n - 1) / 6, i);
        hasse.observe((n - q - 1).pow(2), 4 * q, i);
        if c.is_smooth() {
            smooth += 1;
            if c.characteristic != 3 && c.tangent != c.n {
                tangent_mismatch += 1;
            }
        }
        violating += !c.violations().is_empty() as usize;
    }
    r.verdict(
        "tangent=n",
        tangent_mismatch == 0,
        format!("tangent tally = n on smooth cubics (char != 3): {tangent_mismatch} mismatches over {smooth}"),
    );
    mixed.verdict(r, "mixed");
    split.verdict(r, "split");
    hasse.verdict(r, "hasse-weil");
    r.verdict("census", violating == 0, format!("{violating} cubics violate a census identity"));
}

pub fn plane_cubic_samples(cfg: &RunConfig, k: &Gf, samples: usize, census_only: bool) -> CliResult<Report> {
    let mut r = Report::new(
        "plane-cubic-census",
        &["index", "n", "m", "smooth", "tangent", "split", "mixed", "inert", "inert_line", "violations"],
    );
    cfg.echo(&mut r);
    r.config("q", k.order()).config("samples", samples);
    r.census_only = census_only;
    let items = (0..samples)
        .into_par_iter()
        .map(|i| {
            let f = random_integral_plane_cubic(k, &mut item_rng(cfg.seed, i as u64))?;
            analyze_plane_cubic(&f, cfg.limits.budget)
        })
        .collect::<CliResult<Vec<_>>>()?;
    for (i, it) in items.iter().enumerate() {
        let c = &it.census;
        let inert = match it.inert {
            Some(true) => "found",
            Some(false) => "recheck-failed",
            None => "none",
        };
        r.record(vec![
            i.to_string(),
            c.n.to_string(),
            c.m.to_string(),
            yes(c.is_smooth()),
            c.tangent.to_string(),
            c.split.to_string(),
            c.mixed.to_string(),
            c.inert.to_string(),
            inert.into(),
            c.violations().join(";"),
        ]);
    }
    let found = items.iter().filter(|i| i.inert.is_some()).count();
    let rechecked = items.iter().filter(|i| i.inert == Some(true)).count();
    r.tally("samples", samples);
    r.tally("smooth", items.iter().filter(|i| i.census.is_smooth()).count());
    r.tally("inert_line_found", found);
    r.verdict("inert-line", found == samples, format!("inert line found for {found}/{samples} cubics"));
    r.verdict("inert-recheck", rechecked == found, format!("{rechecked}/{found} inert lines rechecked over GF(q), GF(q^2), GF(q^3)"));
    plane_cubic_bounds(&mut r, &items);
    Ok(r)
}

fn ternary_cubic_monomials() -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    for a in (0..=3u16).rev() {
        for b in (0..=3 - a).rev() {
            out.push(vec![a, b, 3 - a - b]);
        }
    }
    out
}

/// Every plane cubic over `k` up to scaling; census data only.
pub fn plane_cubic_exhaustive(cfg: &RunConfig, k: &Gf) -> CliResult<Report> {
    let mut r = Report::new("plane-cubic-census", &["form", "n", "m", "smooth"]);
    cfg.echo(&mut r);
    r.config("q", k.order()).config("exhaustive", true);
    r.census_only = true;
    let monomials = ternary_cubic_monomials();
    let space = ProjSpace::new(9, k, cfg.limits.budget)?;
    let chunks: Vec<u64> = (0..space.count()).step_by(4096).collect();
    #[derive(Default)]
    struct Tally {
        integral: u64,
        smooth: u64,
        no_inert: Vec<(Form<Gf>, PlaneCubicCensus)>,
        no_inert_count: u64,
        smooth_no_inert: u64,
        violations: BTreeMap<&'static str, u64>,
        items: Vec<PlaneCubicItem>,
    }
    let parts = chunks
        .par_iter()
        .map(|&start| -> CliResult<Tally> {
            let mut t = Tally::default();
            for idx in start..(start + 4096).min(space.count()) {
                let c = space.point_at(idx);
                let f = Form::from_terms(k, 3, 3, monomials.iter().cloned().zip(c.coords().iter().copied()))?;
                if !is_geometrically_integral(k, &TernaryCubic::from_form(&f))? {
                    continue;
                }
                t.integral += 1;
                let it = analyze_plane_cubic(&f, cfg.limits.budget)?;
                let smooth = it.census.is_smooth();
                t.smooth += smooth as u64;
                for v in it.census.violations() {
                    *t.violations.entry(v).or_default() += 1;
                }
                if it.inert.is_none() {
                    t.no_inert_count += 1;
                    t.smooth_no_inert += smooth as u64;
                    if t.no_inert.len() < 5 {
                        t.no_inert.push((f, it.census.clone()));
                    }
                }
                t.items.push(PlaneCubicItem { census: it.census, inert: it.inert });
            }
            Ok(t)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut all = Tally::default();
    for t in parts {
        all.integral += t.integral;
        all.smooth += t.smooth;
        all.no_inert_count += t.no_inert_count;
        all.smooth_no_inert += t.smooth_no_inert;
        for (v, c) in t.violations {
            *all.violations.entry(v).or_default() += c;
        }
        for x in t.no_inert {
            if all.no_inert.len() < 20 {
                all.no_inert.push(x);
            }
        }
        all.items.extend(t.items);
    }
    for (f, c) in &all.no_inert {
        let text = serde_json::to_string(&FormDoc::of(f)).expect("serializable");
        r.record(vec![text, c.n.to_string(), c.m.to_string(), yes(c.is_smooth())]);
    }
    r.tally("forms", space.count());
    r.tally("integral", all.integral);
    r.tally("smooth", all.smooth);
    r.tally("without_inert_line", all.no_inert_count);
    r.tally("smooth_without_inert_line", all.smooth_no_inert);
    for (v, c) in &all.violations {
        r.tally(&format!("violations.{v}"), c);
    }
    r.verdict(
        "inert-line",
        all.no_inert_count == 0,
        format!("{} of {} integral cubics have no inert line", all.no_inert_count, all.integral),
    );
    plane_cubic_bounds(&mut r, &all.items);
    Ok(r)
}

pub fn plane_cubic_census(o: &Options, cfg: &RunConfig) -> CliResult<Report> {
    let k = field_from(o, 13)?;
    let census_only = k.order() < 13;
    if o.exhaustive {
        return plane_cubic_exhaustive(cfg, &k);
    }
    if let Some(path) = &o.input {
        let f = parse_form(&read_input(path)?).map_err(CliError::input)?;
        let it = analyze_plane_cubic(&f, cfg.limits.budget)?;
        let mut r = Report::new("plane-cubic-census", &["n", "m", "smooth", "inert_line"]);
        cfg.echo(&mut r);
        r.census_only = census_only;
        let c = &it.census;
        r.record(vec![c.n.to_string(), c.m.to_string(), yes(c.is_smooth()), yes(it.inert == Some(true))]);
        r.verdict("inert-line", it.inert == Some(true), "inert line found and rechecked");
        plane_cubic_bounds(&mut r, &[it]);
        return Ok(r);
    }
    plane_cubic_samples(cfg, &k, o.samples.unwrap_or(1000), census_only)
}

// ---------------------------------------------------------- quartic del Pezzo

struct PointCensus {
    surface: usize,
    point: String,
    census: cubicwa_core::dp4::HyperplaneCensus,
    good_ok: bool,
}

pub fn dp4_census_suite(cfg: &RunConfig, k: &Gf, surfaces: &[DelPezzo4], census_only: bool) -> CliResult<Report> {
    let mut r = Report::new("dp4-census", &["surface", "point", "total", "tangent", "contains_line", "contains_conic", "good", "good_hyperplane"]);
    cfg.echo(&mut r);
    r.config("q", k.order()).config("surfaces", surfaces.len());
    r.census_only = census_only;
    let budget = cfg.limits.budget;
    let points: Vec<(usize, ProjPoint)> = surfaces
        .iter()
        .enumerate()
        .map(|(i, s)| Ok(s.smooth_points(budget)?.into_iter().map(move |p| (i, p))))
        .collect::<cubicwa_core::Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let rows = points
        .par_iter()
        .map(|(i, x)| -> CliResult<PointCensus> {
            let s = &surfaces[*i];
            let census = s.hyperplane_census(x, budget)?;
            let good_ok = match (&census.first_good, s.good_hyperplane(x, budget)) {
                (Some(a), Ok(h)) => {
                    s.classify_hyperplane(x, a)? == HyperplaneKind::Good && h == LinearSubspace::hyperplane(k, a)?
                }
                _ => false,
            };
            Ok(PointCensus {
                surface: *i,
                point: x.display(k),
                census,
                good_ok,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let q = k.order() as i64;
    let mut line = BoundTracker::new("contains_line", "16(q+1)");
    let mut conic = BoundTracker::new("contains_conic", "5(q+1)");
    let mut tangent = BoundTracker::new("|tangent - (q+1)|", "0");
    let mut total = BoundTracker::new("|total - (q^3+q^2+q+1)|", "0");
    let mut line_exceed = 0usize;
    for (idx, p) in rows.iter().enumerate() {
        let c = &p.census;
        r.record(vec![
            p.surface.to_string(),
            p.point.clone(),
            c.total.to_string(),
            c.tangent.to_string(),
            c.contains_line.to_string(),
            c.contains_conic.to_string(),
            c.good.to_string(),
            yes(p.good_ok),
        ]);
        line.observe(c.contains_line as i64, 16 * (q + 1), idx);
        conic.observe(c.contains_conic as i64, 5 * (q + 1), idx);
        tangent.observe((c.tangent as i64 - (q + 1)).abs(), 0, idx);
        total.observe((c.total as i64 - (q * q * q + q * q + q + 1)).abs(), 0, idx);
        line_exceed += (c.contains_line as i64 > 16 * (q + 1)) as usize;
    }
    let good = rows.iter().filter(|p| p.good_ok).count();
    r.tally("points", rows.len());
    r.tally("contains_line_over_bound", line_exceed);
    r.verdict("good-hyperplane", good == rows.len(), format!("good hyperplane found and rechecked at {good}/{} points", rows.len()));
    line.verdict(&mut r, "contains-line");
    conic.verdict(&mut r, "contains-conic");
    tangent.verdict(&mut r, "tangent");
    total.verdict(&mut r, "total");
    Ok(r)
}

pub fn seeded_dp4s(cfg: &RunConfig, k: &Gf, count: usize) -> CliResult<Vec<DelPezzo4>> {
    (0..count)
        .into_par_iter()
        .map(|i| Ok(random_smooth_dp4(k, &mut item_rng(cfg.seed, i as u64))?))
        .collect()
}

pub fn dp4_census(o: &Options, cfg: &RunConfig) -> CliResult<Report> {
    let k = field_from(o, 13)?;
    let surfaces = match &o.input {
        Some(path) => vec![input_file::<Dp4Doc>(path)?.surface().map_err(CliError::input)?],
        None => seeded_dp4s(cfg, &k, o.samples.unwrap_or(20))?,
    };
    let k = surfaces[0].field().clone();
    dp4_census_suite(cfg, &k, &surfaces, k.order() < 5)
}

pub fn dp4_plane_suite(cfg: &RunConfig, s: &DelPezzo4, expect_lines: Option<usize>) -> CliResult<Report> {
    let k = s.field().clone();
    let mut r = Report::new("dp4-plane", &["point", "plane", "residual", "recheck"]);
    cfg.echo(&mut r);
    r.config("q", k.order());
    let budget = cfg.limits.budget;
    let scanned = s.rational_lines_scan(&k, budget)?;
    let lines = s.rational_lines(&k, budget)?;
    r.tally("lines_scan", scanned.len());
    r.tally("lines", lines.len());
    if let Some(n) = expect_lines {
        r.verdict(
            "lines",
            scanned.len() == n && lines.len() == n,
            format!("Grassmannian scan finds {} rational lines, expected {n}", scanned.len()),
        );
    }
    let pts = s.smooth_points(budget)?;
    let rows = pts
        .par_iter()
        .map(|x| -> CliResult<(String, String, String, bool)> {
            match s.find_plane(x, budget) {
                Ok(pl) => {
                    let k3 = &pl.cubic_field;
                    let mut orbit = vec![pl.residual[0].clone()];
                    for _ in 0..2 {
                        orbit.push(orbit.last().unwrap().frobenius(k3, k.order()));
                    }
                    let mut a = orbit.clone();
                    let mut b = pl.residual.clone();
                    a.sort();
                    b.sort();
                    a.dedup();
                    let ok = a == b && a.len() == 3 && s.verify_plane(x, &pl.plane, k3, &pl.residual).is_ok();
                    let plane = pl.plane.basis().iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(" ");
                    let residual = pl.residual.iter().map(|p| p.display(k3)).collect::<Vec<_>>().join(" ");
                    Ok((x.display(&k), plane, residual, ok))
                }
                Err(e @ Error::NotFound { .. }) => Ok((x.display(&k), String::new(), format!("{e}"), false)),
                Err(e) => Err(e.into()),
            }
        })
        .collect::<CliResult<Vec<_>>>()?;
    let ok = rows.iter().filter(|x| x.3).count();
    for (x, plane, residual, good) in rows {
        r.record(vec![x, plane, residual, yes(good)]);
    }
    r.tally("points", pts.len());
    r.verdict(
        "find-plane",
        ok == pts.len(),
        format!("plane with a size-3 Frobenius orbit as residual at {ok}/{} smooth points", pts.len()),
    );
    Ok(r)
}

pub fn dp4_plane(o: &Options, cfg: &RunConfig) -> CliResult<Report> {
    match &o.input {
        Some(path) => {
            let s = input_file::<Dp4Doc>(path)?.surface().map_err(CliError::input)?;
            dp4_plane_suite(cfg, &s, None)
        }
        None => {
            let k = field_from(o, 13)?;
            let s = find_split_dp4(&k, cfg.limits.budget)?;
            dp4_plane_suite(cfg, &s, Some(16))
        }
    }
}

// ------------------------------------------------------- conjugate-pair lines

pub fn seeded_smooth_cubic_surfaces(cfg: &RunConfig, k: &Gf, count: usize) -> CliResult<Vec<CubicHypersurface>> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = item_rng(cfg.seed, i as u64);
            loop {
                let f = random_form(k, 4, 3, &mut rng);
                let Ok(x) = CubicHypersurface::new(f) else {
                    continue;
                };
                if x.is_smooth(&cfg.limits)? {
                    return Ok(x);
                }
            }
        })
        .collect()
}

pub fn conjline_suite(cfg: &RunConfig, surfaces: &[(String, CubicHypersurface)], exhaustive: bool, census_only: bool) -> CliResult<Report> {
    let k = surfaces[0].1.field().clone();
    let k2 = k.extension(2)?;
    let e = Embedding::canonical(&k, &k2)?;
    let mut r = Report::new("conjline", &["surface", "point", "direction", "y", "recheck"]);
    cfg.echo(&mut r);
    r.config("q", k.order()).config("exhaustive", exhaustive);
    r.census_only = census_only;
    let mut work = Vec::new();
    for (i, (_, x)) in surfaces.iter().enumerate() {
        let pts = x.points(&k, cfg.limits.budget)?;
        let step = if exhaustive { 1 } else { (pts.len() / 20).max(1) };
        work.extend(pts.into_iter().step_by(step).map(|p| (i, p)));
    }
    let rows = work
        .par_iter()
        .map(|(i, p)| -> CliResult<(Option<(String, String)>, bool)> {
            let x = &surfaces[*i].1;
            match x.find_conjugate_pair_line(p, cfg.limits.budget) {
                Ok(c) => {
                    let x2 = x.embed(&e);
                    let on_line = c.line.embed(&e);
                    let rational_on = c.line.points(&k).filter(|z| x.contains(z)).count();
                    let ok = x2.contains(&c.y)
                        && x2.contains(&c.y_conj)
                        && c.y != c.y_conj
                        && c.y.frobenius(&k2, k.order()) == c.y_conj
                        && on_line.contains_point(&k2, &c.y)
                        && c.line.contains_point(&k, p)
                        && rational_on == 1;
                    Ok((Some((format!("{:?}", c.direction), c.y.display(&k2))), ok))
                }
                Err(Error::NotFound { .. }) => Ok((None, false)),
                Err(e) => Err(e.into()),
            }
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut per_surface: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for ((i, p), (found, ok)) in work.iter().zip(&rows) {
        let (dir, y) = found.clone().unwrap_or_else(|| ("none".into(), String::new()));
        r.record(vec![surfaces[*i].0.clone(), p.display(&k), dir, y, yes(*ok)]);
        let s = per_surface.entry(*i).or_default();
        s.0 += 1;
        s.1 += *ok as usize;
    }
    for (i, (total, ok)) in per_surface {
        r.tally(&surfaces[i].0, format!("{ok}/{total}"));
    }
    let ok = rows.iter().filter(|x| x.1).count();
    let missing = rows.iter().filter(|x| x.0.is_none()).count();
    r.tally("points", rows.len());
    r.tally("not_found", missing);
    r.verdict(
        "conjugate-pair-line",
        ok == rows.len(),
        format!("line with one rational point and a conjugate pair found and rechecked at {ok}/{} points", rows.len()),
    );
    Ok(r)
}

pub fn conjline_surfaces(cfg: &RunConfig, k: &Gf, random: usize) -> CliResult<Vec<(String, CubicHypersurface)>> {
    let mut out = vec![("fermat".to_string(), CubicHypersurface::new(fermat_cubic(k, 4))?)];
    for (i, x) in seeded_smooth_cubic_surfaces(cfg, k, random)?.into_iter().enumerate() {
        out.push((format!("random{i}"), x));
    }
    Ok(out)
}

pub fn conjline(o: &Options, cfg: &RunConfig) -> CliResult<Report> {
    let k = field_from(o, 11)?;
    let surfaces = match (o.surface.as_deref(), &o.input) {
        (Some("fermat"), None) => vec![("fermat".to_string(), CubicHypersurface::new(fermat_cubic(&k, 4))?)],
        (None | Some("random"), None) => conjline_surfaces(cfg, &k, o.samples.unwrap_or(5).saturating_sub(1))?,
        _ => {
            let x = cubic_from_options(o, &k, 4)?;
            vec![("input".to_string(), x)]
        }
    };
    let census_only = surfaces[0].1.field().order() < 11;
    conjline_suite(cfg, &surfaces, o.exhaustive, census_only)
}

// ------------------------------------------------------------------ jet layer

/// `f = (x - a0) g + pi h`; `None` when `a0` is a root of `g`.
pub fn hensel_instance<R: Rng>(k: &Gf, ring: &JetRing, rng: &mut R) -> Option<(Vec<Vec<Fe>>, Fe)> {
    let a0 = Fe(rng.gen_range(0..k.order()));
    let glen = rng.gen_range(1..4);
    let g = Poly::new((0..glen).map(|_| Fe(rng.gen_range(0..k.order()))).collect());
    let mut f: Vec<Vec<Fe>> = Poly::linear(k, a0).mul(&g, k).coeffs().iter().map(|&c| ring.constant(c)).collect();
    for c in f.iter_mut() {
        let mut h = vec![Fe::ZERO];
        h.extend((0..ring.order()).map(|_| Fe(rng.gen_range(0..k.order()))));
        *c = ring.add(c, &ring.from_coeffs(&h));
    }
    if g.eval(k, a0).is_zero() {
        return None;
    }
    Some((f, a0))
}

pub fn jets_suite(cfg: &RunConfig, instances: usize) -> CliResult<Report> {
    let k = gf(7, 1);
    let ring = JetRing::new(&k, 2);
    let mut r = Report::new("jets", &["index", "a0", "lift", "truncation", "unique"]);
    cfg.echo(&mut r);
    r.config("q", 7).config("instances", instances);
    // s^2 - (1 + pi) from s = 1.
    let f = vec![ring.from_coeffs(&[k.from_i64(-1), k.from_i64(-1)]), ring.zero(), ring.one()];
    let root = hensel_lift(&ring, &f, Fe::ONE)?;
    let squares = ring.mul(&root, &root) == ring.from_coeffs(&[Fe::ONE, Fe::ONE]);
    let digits: Vec<String> = root.iter().map(|c| c.0.to_string()).collect();
    r.tally("sqrt(1+pi)", digits.join(","));
    r.verdict(
        "square-root",
        root == vec![Fe(1), Fe(4), Fe(6)] && squares,
        format!("lift = {} (expected 1,4,6), square = 1 + pi: {}", digits.join(","), yes(squares)),
    );
    let big = JetRing::new(&k, 3);
    let rows = (0..instances)
        .into_par_iter()
        .map(|i| -> CliResult<(Fe, String, bool, bool)> {
            let mut rng = item_rng(cfg.seed, i as u64);
            let (f, a0) = std::iter::repeat_with(|| hensel_instance(&k, &big, &mut rng)).flatten().next().unwrap();
            let a = hensel_lift(&big, &f, a0)?;
            let mut trunc = big.is_zero(&big.eval_poly(&f, &a));
            for order in 0..3 {
                let small = big.truncated(order);
                let ft: Vec<Vec<Fe>> = f.iter().map(|c| JetRing::truncate(c, order)).collect();
                trunc &= hensel_lift(&small, &ft, a0)? == JetRing::truncate(&a, order);
            }
            // Uniqueness: every order-2 jet above a0, by brute force.
            let r2 = big.truncated(2);
            let f2: Vec<Vec<Fe>> = f.iter().map(|c| JetRing::truncate(c, 2)).collect();
            let roots: Vec<Vec<Fe>> = (0..49u32)
                .map(|j| vec![a0, Fe(j % 7), Fe(j / 7)])
                .filter(|x| r2.is_zero(&r2.eval_poly(&f2, x)))
                .collect();
            let unique = roots == vec![JetRing::truncate(&a, 2)];
            let text = a.iter().map(|c| c.0.to_string()).collect::<Vec<_>>().join(",");
            Ok((a0, text, trunc, unique))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let used = rows.len();
    let (mut trunc_ok, mut unique_ok) = (0, 0);
    for (i, (a0, lift, t, u)) in rows.iter().enumerate() {
        trunc_ok += *t as usize;
        unique_ok += *u as usize;
        r.record(vec![i.to_string(), a0.0.to_string(), lift.clone(), yes(*t), yes(*u)]);
    }
    r.tally("instances", used);
    r.verdict("truncation", trunc_ok == used, format!("lift commutes with truncation for {trunc_ok}/{used} instances"));
    r.verdict("uniqueness", unique_ok == used, format!("unique order-2 root above a0 for {unique_ok}/{used} instances"));
    Ok(r)
}

// ---------------------------------------------------------- weak approximation

fn shared_diagonal_model(p: u64, limits: &Limits) -> CliResult<ModelX> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64, u32), ModelX>>> = OnceLock::new();
    let key = (p, limits.budget, limits.ext_depth);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().unwrap().get(&key) {
        return Ok(m.clone());
    }
    let m = diagonal_model(&gf(p, 1), 4, 1, limits)?;
    cache.lock().unwrap().insert(key, m.clone());
    Ok(m)
}

/// `[3 - t : 8 - t : 7t : 10]` on `X0^3 + X1^3 + X2^3 + t X3^3` over GF(11).
pub fn known_section(k: &Gf) -> Section {
    Section::from_i64(k, &[&[3, -1], &[8, -1], &[0, 7], &[10]]).expect("coprime")
}

fn search_report(r: &mut Report, label: &str, model: &ModelX, jdata: &JData, d_max: usize, limits: &Limits) -> CliResult<Option<Section>> {
    let out = search_section_report(model, jdata, d_max, limits)?;
    for lvl in &out.levels {
        r.record(vec![
            label.into(),
            lvl.degree.to_string(),
            lvl.unknowns.to_string(),
            lvl.kernel_dim.to_string(),
            lvl.candidates.to_string(),
        ]);
    }
    Ok(out.section)
}

const SEARCH_COLUMNS: [&str; 5] = ["run", "degree", "unknowns", "kernel_dim", "candidates"];

pub fn wa_roundtrip(cfg: &RunConfig, order: usize) -> CliResult<Report> {
    let model = shared_diagonal_model(11, &cfg.limits)?;
    let k = model.field().clone();
    let mut r = Report::new("wa-search", &SEARCH_COLUMNS);
    cfg.echo(&mut r);
    let s = known_section(&k);
    let place = Place::linear(&k, k.from_i64(2));
    let d_max = s.degree() + 2;
    r.config("section", s.display()).config("place", place.name()).config("N", order).config("dmax", d_max);
    let good = model.has_good_reduction(&place, &cfg.limits)?;
    let jd = JData::from_section(&model, &s, order, vec![place.clone()], &cfg.limits)?;
    let found = search_report(&mut r, "roundtrip", &model, &jd, d_max, &cfg.limits)?;
    match &found {
        Some(t) => {
            let verified = verify_section(&model, &jd, t).is_ok();
            let exact = model.contains_section(t)
                && jd.places().iter().zip(jd.jets()).all(|(b, j)| congruence_check(t, j, b));
            r.tally("found", t.display());
            r.verdict(
                "roundtrip",
                verified && exact && t.degree() <= d_max,
                format!("section {} of degree {} <= dmax {d_max}, on M and congruent mod pi^{}", t.display(), t.degree(), order + 1),
            );
        }
        None => r.verdict("roundtrip", false, format!("{}", Error::not_found("search"))),
    }
    r.verdict("good-place", good, format!("{} has good reduction", place.name()));
    // Control: jets of a degree-one section cannot be met by constants.
    let control = search_report(&mut r, "control", &model, &jd, 0, &cfg.limits)?;
    let brute = brute_force_sections(&model, &jd, 0, &cfg.limits)?;
    let candidates = proj::ProjSpace::new(3, &k, u64::MAX)?.count();
    r.tally("control_brute_force_candidates", candidates);
    r.tally("control_brute_force_matches", brute.len());
    r.verdict(
        "control-not-found",
        control.is_none() && brute.is_empty(),
        format!(
            "dmax 0: search {}, brute force over {candidates} constant tuples finds {}",
            if control.is_none() { "NotFound" } else { "found a section" },
            brute.len()
        ),
    );
    Ok(r)
}

pub fn wa_search(o: &Options, cfg: &RunConfig) -> CliResult<Report> {
    let (Some(mp), Some(jp)) = (&o.model, &o.jdata) else {
        return wa_roundtrip(cfg, o.order.unwrap_or(1));
    };
    let model = input_file::<ModelDoc>(mp)?.model(1, &cfg.limits).map_err(CliError::input)?;
    let jd = input_file::<JDataDoc>(jp)?.jdata(&model, &cfg.limits).map_err(CliError::input)?;
    let d_max = o.dmax.unwrap_or(2);
    let mut r = Report::new("wa-search", &SEARCH_COLUMNS);
    cfg.echo(&mut r);
    r.config("dmax", d_max);
    match search_report(&mut r, "search", &model, &jd, d_max, &cfg.limits)? {
        Some(t) => {
            let verified = verify_section(&model, &jd, &t);
            r.tally("found", t.display());
            r.verdict("search", verified.is_ok(), format!("section {}: {}", t.display(), verified.err().map_or("verified".into(), |e| e.to_string())));
        }
        None => r.verdict("search", false, format!("{}", Error::not_found("search"))),
    }
    Ok(r)
}

pub fn wa_descent_suite(cfg: &RunConfig) -> CliResult<Report> {
    let model = shared_diagonal_model(11, &cfg.limits)?;
    let k = model.field().clone();
    let k2 = k.extension(2)?;
    let mut r = Report::new("wa-descend", &["step", "value"]);
    cfg.echo(&mut r);
    let omega = k2.exp(40);
    let sp = Section::constant_over(&k2, &[Fe::ONE, k2.neg(omega), Fe::ZERO, Fe::ZERO])?;
    r.config("section", sp.display());
    let d = descend_section(&model, &sp)?;
    r.record(vec!["conjugate".into(), d.conjugate.display()]);
    r.record(vec!["descended".into(), d.section.display()]);
    let fixed = d.section.embed(&k2)?.frobenius(k.order()) == d.section.embed(&k2)?;
    let on_m = model.contains_section(&d.section);
    r.verdict(
        "descent",
        d.section.restrict(&k).is_some() && on_m && fixed && d.conjugate == sp.frobenius(k.order()),
        format!("descends to {} with Frobenius-fixed coefficients, on M: {}", d.section.display(), yes(on_m)),
    );
    // Jet level: the third point of the lifted jet pair is the original jet.
    let place = Place::linear(&k, k.from_i64(2));
    let jd = JData::from_section(&model, &known_section(&k), 2, vec![place], &cfg.limits)?;
    let lift = lift_jdata_to_quadratic(&model, &jd, &cfg.limits)?;
    let b2 = &lift.first.places()[0];
    let f2 = lift.model.jet_form(b2, 2)?;
    let third = descend_jets(&f2, &lift.first.jets()[0], &lift.second.jets()[0])?;
    let inherited = third == jd.jets()[0].embed(&lift.embeddings[0]);
    let conj = lift.first.jets()[0].frobenius(k.order()) == lift.second.jets()[0];
    r.record(vec!["jet-third-point".into(), format!("{:?}", third.residue())]);
    r.verdict(
        "jet-inheritance",
        inherited && conj,
        format!("third point of the conjugate jet pair equals the input jet: {}, pair conjugate: {}", yes(inherited), yes(conj)),
    );
    Ok(r)
}

pub fn wa_descend(o: &Options, cfg: &RunConfig) -> CliResult<Report> {
    let (Some(mp), Some(sp)) = (&o.model, &o.section) else {
        return wa_descent_suite(cfg);
    };
    let model = input_file::<ModelDoc>(mp)?.model(1, &cfg.limits).map_err(CliError::input)?;
    let s = input_file::<SectionDoc>(sp)?.section().map_err(CliError::input)?;
    let mut r = Report::new("wa-descend", &["step", "value"]);
    cfg.echo(&mut r);
    let d = descend_section(&model, &s)?;
    r.record(vec!["conjugate".into(), d.conjugate.display()]);
    r.record(vec!["descended".into(), d.section.display()]);
    let on_m = model.contains_section(&d.section);
    r.verdict("descent", on_m && d.section.restrict(model.field()).is_some(), format!("descended section {} on M: {}", d.section.display(), yes(on_m)));
    Ok(r)
}

fn pipeline_report(cfg: &RunConfig, model: &ModelX, jd: &JData, d_max: usize) -> CliResult<Report> {
    let mut r = Report::new("wa-pipeline", &["stage", "status"]);
    cfg.echo(&mut r);
    r.config("dmax", d_max);
    let run = cubicwa_core::wa_pipeline(model, jd, d_max, &cfg.limits);
    for s in &run.stages {
        r.record(vec![s.stage.into(), s.status.clone()]);
    }
    match &run.outcome {
        Ok(s) => {
            let ok = verify_section(model, jd, s).is_ok();
            r.tally("section", s.display());
            r.verdict("pipeline", ok, format!("section {} verified against the jets", s.display()));
        }
        Err(Error::SizeExceeded { .. }) => return Err(CliError::run(run.outcome.unwrap_err())),
        Err(e) => r.verdict("pipeline", false, e.to_string()),
    }
    Ok(r)
}

pub fn wa_pipeline(o: &Options, cfg: &RunConfig) -> CliResult<Report> {
    let d_max = o.dmax.unwrap_or(1);
    match (&o.model, &o.jdata) {
        (Some(mp), Some(jp)) => {
            let model = input_file::<ModelDoc>(mp)?.model(1, &cfg.limits).map_err(CliError::input)?;
            let jd = input_file::<JDataDoc>(jp)?.jdata(&model, &cfg.limits).map_err(CliError::input)?;
            pipeline_report(cfg, &model, &jd, d_max)
        }
        _ => {
            let model = shared_diagonal_model(11, &cfg.limits)?;
            let k = model.field().clone();
            let s = Section::from_i64(&k, &[&[1], &[-1], &[0], &[0]])?;
            let jd = JData::from_section(&model, &s, o.order.unwrap_or(1), vec![Place::linear(&k, k.from_i64(2))], &cfg.limits)?;
            pipeline_report(cfg, &model, &jd, d_max)
        }
    }
}

// ----------------------------------------------------------------- criteria

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub limit: Duration,
}

pub const CRITERIA: [Criterion; 9] = [
    Criterion { id: 1, title: "nodal identity F(phi) = 0", limit: Duration::from_secs(60) },
    Criterion { id: 2, title: "connect_points on the Fermat cubic threefold", limit: Duration::from_secs(300) },
    Criterion { id: 3, title: "plane cubic inert lines and line bounds", limit: Duration::from_secs(600) },
    Criterion { id: 4, title: "quartic del Pezzo hyperplane bounds", limit: Duration::from_secs(1200) },
    Criterion { id: 5, title: "conjugate-pair lines on cubic surfaces", limit: Duration::from_secs(600) },
    Criterion { id: 6, title: "planes on a split quartic del Pezzo", limit: Duration::from_secs(900) },
    Criterion { id: 7, title: "Hensel lifting", limit: Duration::from_secs(60) },
    Criterion { id: 8, title: "section search round trip", limit: Duration::from_secs(600) },
    Criterion { id: 9, title: "quadratic descent", limit: Duration::from_secs(60) },
];

fn merged(name: &str, cfg: &RunConfig, parts: Vec<Report>) -> Report {
    let mut r = Report::new(name, &[]);
    cfg.echo(&mut r);
    for p in parts {
        r.absorb(p);
    }
    r
}

/// Runs acceptance criterion `id` at full size; the report keeps every record.
pub fn criterion(id: u32, cfg: &RunConfig) -> CliResult<Vec<Report>> {
    Ok(match id {
        1 => vec![nodal_identity(cfg, &[7, 11, 13], &[4, 5, 6], 12)?],
        2 => {
            let k = gf(11, 1);
            vec![connect_suite(cfg, &CubicHypersurface::new(fermat_cubic(&k, 5))?, 50, 1000)?]
        }
        3 => {
            let mut out = vec![plane_cubic_samples(cfg, &gf(13, 1), 1000, false)?];
            for (p, m) in [(2, 1), (3, 1), (2, 2)] {
                out.push(plane_cubic_exhaustive(cfg, &gf(p, m))?);
            }
            out
        }
        4 => [5u64, 7, 13]
            .iter()
            .map(|&q| {
                let k = gf(q, 1);
                dp4_census_suite(cfg, &k, &seeded_dp4s(cfg, &k, 20)?, false)
            })
            .collect::<CliResult<Vec<_>>>()?,
        5 => [11u64, 13]
            .iter()
            .map(|&q| {
                let k = gf(q, 1);
                conjline_suite(cfg, &conjline_surfaces(cfg, &k, 4)?, true, false)
            })
            .collect::<CliResult<Vec<_>>>()?,
        6 => {
            let k = gf(13, 1);
            vec![dp4_plane_suite(cfg, &find_split_dp4(&k, cfg.limits.budget)?, Some(16))?]
        }
        7 => vec![jets_suite(cfg, 1000)?],
        8 => vec![wa_roundtrip(cfg, 1)?],
        9 => vec![wa_descent_suite(cfg)?],
        _ => return Err(CliError::input(Error::invalid(format!("no criterion {id}")))),
    })
}

pub fn verify_suite(cfg: &RunConfig) -> CliResult<Report> {
    let mut parts = Vec::new();
    for c in &CRITERIA {
        let started = std::time::Instant::now();
        let reports = criterion(c.id, cfg)?;
        eprintln!("criterion {}: {:.2?}", c.id, started.elapsed());
        for (i, mut r) in reports.into_iter().enumerate() {
            r.command = format!("criterion{}.{}{}", c.id, r.command, if i > 0 { format!(".{i}") } else { String::new() });
            parts.push(r);
        }
    }
    Ok(merged("verify-suite", cfg, parts))
}
