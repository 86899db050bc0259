//! One function per subcommand. Each returns a [`Report`] or a domain error.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use domekit::annulus;
use domekit::bounds::{self, Bound, BoundReport};
use domekit::crescents::{self, AngleScaling};
use domekit::dome::{self, build_hull, Carrier, DomePoint, HullPolyhedron, IdealConfiguration};
use domekit::hyperbolic::ExtComplex;
use domekit::laminations::{sampled_roundness, FiniteLamination};
use domekit::pleating::ComplexEarthquake;
use domekit::qc;

use crate::output::{Cell, Report, Table};

/// A failure inside a library module, reported with the module's error type and variant.
#[derive(Debug)]
pub struct DomainError {
    pub kind: &'static str,
    pub variant: String,
    pub message: String,
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}::{}: {}", self.kind, self.variant, self.message)
    }
}

fn variant_name<E: fmt::Debug>(e: &E) -> String {
    let d = format!("{e:?}");
    d.split(|c: char| !c.is_alphanumeric() && c != '_').next().unwrap_or_default().to_string()
}

macro_rules! domain_error {
    ($($ty:path => $name:literal),* $(,)?) => {
        $(impl From<$ty> for DomainError {
            fn from(e: $ty) -> Self {
                DomainError { kind: $name, variant: variant_name(&e), message: e.to_string() }
            }
        })*
    };
}

domain_error! {
    bounds::BoundsError => "BoundsError",
    annulus::AnnulusError => "AnnulusError",
    dome::DomeError => "DomeError",
    domekit::laminations::LaminationError => "LaminationError",
    crescents::CrescentError => "CrescentError",
    qc::QcError => "QcError",
}

impl From<std::io::Error> for DomainError {
    fn from(e: std::io::Error) -> Self {
        DomainError { kind: "IoError", variant: format!("{:?}", e.kind()), message: e.to_string() }
    }
}

type Result<T> = std::result::Result<T, DomainError>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| DomainError {
        kind: "IoError",
        variant: format!("{:?}", e.kind()),
        message: format!("{}: {e}", path.display()),
    })
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

fn bound_cells(b: Option<Bound>) -> [Cell; 2] {
    [b.map(|b| b.value).into(), b.map(|b| b.relaxed).into()]
}

pub fn bounds_eval(nu: Option<f64>, nu_hat: Option<f64>) -> Result<Report> {
    let r = BoundReport::new(nu, nu_hat)?;
    let mut json = r.to_json();
    let reason = nu.and_then(|nu| bounds::lower_bound_k(nu).err()).map(|e| e.to_string());
    json["lower_bound_k_reason"] = reason.clone().map_or(Value::Null, Value::from);
    json["all_hold"] = r.all_hold().into();
    let mut table = Table::new(&[
        "nu",
        "nu_hat",
        "g",
        "roundness_domain",
        "roundness_domain_relaxed",
        "m",
        "m_relaxed",
        "lipschitz",
        "lower_bound_k",
        "lower_bound_k_reason",
        "g_inverse_nu_hat",
        "roundness_dome",
        "roundness_dome_relaxed",
        "n",
        "all_hold",
    ]);
    let [rd, rdr] = bound_cells(r.roundness_domain);
    let [m, mr] = bound_cells(r.m);
    let [ro, ror] = bound_cells(r.roundness_dome);
    table.push(vec![
        nu.into(),
        nu_hat.into(),
        r.g.into(),
        rd,
        rdr,
        m,
        mr,
        r.lipschitz.into(),
        r.lower_bound_k.into(),
        reason.map_or(Cell::Empty, Cell::Text),
        r.g_inverse_nu_hat.into(),
        ro,
        ror,
        r.n.into(),
        r.all_hold().into(),
    ]);
    Ok(Report { command: "bounds eval", json, table })
}

pub fn grid(min: f64, max: f64, points: usize, log: bool) -> Vec<f64> {
    if log {
        annulus::s_grid(min.ln(), max.ln(), points).into_iter().map(f64::exp).collect()
    } else {
        annulus::s_grid(min, max, points)
    }
}

/// Bounds as functions of a single radius `x`, used both as `ν` and as `ν̂`.
pub fn bounds_table(min: f64, max: f64, points: usize, log: bool) -> Result<Report> {
    let xs = grid(min, max, points, log);
    let rows: Vec<(f64, BoundReport, BoundReport)> = xs
        .par_iter()
        .map(|&x| Ok((x, BoundReport::new(Some(x), None)?, BoundReport::new(None, Some(x))?)))
        .collect::<Result<_>>()?;
    let mut table = Table::new(&[
        "x",
        "g",
        "roundness_domain",
        "m",
        "m_relaxed",
        "lipschitz",
        "lower_bound_k",
        "g_inverse",
        "roundness_dome",
        "roundness_dome_relaxed",
        "n",
        "all_hold",
    ]);
    let mut json_rows = Vec::new();
    for (x, a, b) in &rows {
        let [m, mr] = bound_cells(a.m);
        let [ro, ror] = bound_cells(b.roundness_dome);
        table.push(vec![
            (*x).into(),
            a.g.into(),
            a.roundness_domain.map(|b| b.value).into(),
            m,
            mr,
            a.lipschitz.into(),
            a.lower_bound_k.into(),
            b.g_inverse_nu_hat.into(),
            ro,
            ror,
            b.n.into(),
            (a.all_hold() && b.all_hold()).into(),
        ]);
        json_rows.push(json!({ "x": x, "as_nu": a.to_json(), "as_nu_hat": b.to_json() }));
    }
    let all_hold = rows.iter().all(|(_, a, b)| a.all_hold() && b.all_hold());
    Ok(Report { command: "bounds table", json: json!({ "rows": json_rows, "all_hold": all_hold }), table })
}

pub fn annulus_table(min: f64, max: f64, points: usize) -> Result<Report> {
    let reports: Vec<annulus::AnnulusBoundsReport> =
        annulus::s_grid(min, max, points).par_iter().map(|&s| annulus::verify_bounds(s)).collect::<std::result::Result<_, _>>()?;
    let mut table = Table::new(&[
        "s",
        "modulus",
        "core_length",
        "nu",
        "dome_modulus",
        "dome_core_length",
        "nu_hat",
        "k",
        "m",
        "n",
        "lower_bound_k",
        "k_le_m",
        "k_le_n",
        "lower_le_k",
    ]);
    for r in &reports {
        let g = r.geometry;
        table.push(vec![
            g.s.into(),
            g.modulus.into(),
            g.core_length.into(),
            g.nu.into(),
            g.dome_modulus.into(),
            g.dome_core_length.into(),
            g.nu_hat.into(),
            g.k.into(),
            r.m.into(),
            r.n.into(),
            r.lower_bound_k.into(),
            r.k_le_m.into(),
            r.k_le_n.into(),
            r.lower_le_k.into(),
        ]);
    }
    let all_hold = reports.iter().all(|r| r.all_hold());
    Ok(Report { command: "annulus table", json: json!({ "rows": value(&reports), "all_hold": all_hold }), table })
}

fn load_hull(path: &Path) -> Result<HullPolyhedron> {
    let cfg = IdealConfiguration::from_json(&read(path)?)?;
    Ok(build_hull(&cfg)?)
}

pub fn dome_build(input: &Path, obj: Option<&Path>, level: usize) -> Result<Report> {
    let h = load_hull(input)?;
    if let Some(path) = obj {
        std::fs::write(path, h.to_obj(level))?;
    }
    let mut json = h.to_json();
    json["bending_lamination"] = value(&dome::bending_lamination(&h).iter().map(|l| json!({ "edge": l.edge, "weight": l.weight })).collect::<Vec<_>>());
    json["convexity_defect"] = h.convexity_defect().into();
    let mut table = Table::new(&["edge", "end0", "end1", "face0", "face1", "exterior_angle", "doubled"]);
    for (k, e) in h.edges.iter().enumerate() {
        table.push(vec![k.into(), e.ends.0.into(), e.ends.1.into(), e.faces.0.into(), e.faces.1.into(), e.exterior_angle.into(), h.doubled.into()]);
    }
    Ok(Report { command: "dome build", json, table })
}

fn point_cells(z: ExtComplex) -> [Cell; 2] {
    match z {
        ExtComplex::Infinity => [Cell::Text("inf".into()), Cell::Text("inf".into())],
        ExtComplex::Finite(w) => [w.re.into(), w.im.into()],
    }
}

fn point_json(z: ExtComplex) -> Value {
    z.finite().map_or(json!("inf"), |w| json!([w.re, w.im]))
}

fn carrier(c: Carrier) -> (&'static str, usize) {
    match c {
        Carrier::Face(f) => ("face", f),
        Carrier::Edge(e) => ("edge", e),
    }
}

pub fn dome_retract(input: &Path, zs: &[ExtComplex]) -> Result<Report> {
    let h = load_hull(input)?;
    let results = zs.par_iter().map(|&z| dome::retract(&h, z)).collect::<std::result::Result<Vec<_>, _>>()?;
    let mut table = Table::new(&["z_re", "z_im", "x", "y", "t", "carrier", "carrier_index", "busemann"]);
    let mut rows = Vec::new();
    for (z, r) in zs.iter().zip(&results) {
        let [zr, zi] = point_cells(*z);
        let (kind, index) = carrier(r.carrier);
        table.push(vec![zr, zi, r.point.x.into(), r.point.y.into(), r.point.t.into(), kind.into(), index.into(), r.busemann.into()]);
        rows.push(json!({
            "z": point_json(*z),
            "point": [r.point.x, r.point.y, r.point.t],
            "carrier": { "kind": kind, "index": index },
            "busemann": r.busemann,
        }));
    }
    Ok(Report { command: "dome retract", json: json!({ "results": rows }), table })
}

pub fn dome_inj_radius(input: &Path, zs: &[ExtComplex], depth: usize) -> Result<Report> {
    let h = load_hull(input)?;
    let results = zs
        .par_iter()
        .map(|&z| {
            let p = DomePoint::from_retraction(&h, &dome::retract(&h, z)?);
            Ok((p, dome::dome_injectivity_radius(&h, &p, depth)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&["z_re", "z_im", "face", "radius", "loop_length", "exact", "explored", "depth"]);
    let mut rows = Vec::new();
    for (z, (p, e)) in zs.iter().zip(&results) {
        let [zr, zi] = point_cells(*z);
        table.push(vec![zr, zi, p.face.into(), e.radius.into(), e.loop_length.into(), e.exact.into(), e.explored.into(), e.depth.into()]);
        rows.push(json!({ "z": point_json(*z), "face": p.face, "point": [p.point.x, p.point.y, p.point.t], "estimate": value(e) }));
    }
    Ok(Report { command: "dome inj-radius", json: json!({ "results": rows }), table })
}

fn load_lamination(path: &Path) -> Result<FiniteLamination> {
    Ok(FiniteLamination::from_json(&read(path)?)?)
}

pub fn lamination_roundness(input: &Path, samples: usize, radius: f64, seed: u64) -> Result<Report> {
    let lam = load_lamination(input)?;
    let witness = lam.roundness_witness()?;
    let exact = witness.as_ref().map_or(0.0, |w| w.value);
    let sampled = (samples > 0).then(|| sampled_roundness(&lam, samples, radius, seed));
    let json = json!({
        "leaves": lam.len(),
        "roundness": exact,
        "witness": witness.as_ref().map(|w| json!({ "ends": [w.ends.0, w.ends.1], "leaves": w.leaves })),
        "sampled": sampled.map(|s| json!({ "value": s, "samples": samples, "radius": radius, "seed": seed, "within_exact": s <= exact + 1e-12 })),
    });
    let mut table = Table::new(&["leaves", "roundness", "sampled", "samples", "seed"]);
    table.push(vec![lam.len().into(), exact.into(), sampled.into(), samples.into(), Cell::Int(seed as i64)]);
    Ok(Report { command: "lamination roundness", json, table })
}

pub fn lamination_validate(input: &Path) -> Result<Report> {
    let lam = load_lamination(input)?;
    let total: f64 = lam.weights().iter().sum();
    let mut table = Table::new(&["valid", "leaves", "total_weight"]);
    table.push(vec![true.into(), lam.len().into(), total.into()]);
    Ok(Report { command: "lamination validate", json: json!({ "valid": true, "leaves": lam.len(), "total_weight": total }), table })
}

pub fn earthquake_trace(input: &Path, z: Complex64, base: Option<usize>, points: usize) -> Result<Report> {
    let lam = load_lamination(input)?;
    let gaps = domekit::laminations::Gaps::new(&lam);
    let base = match base {
        Some(b) => {
            gaps.check(b)?;
            b
        }
        None => gaps.gap_of(&lam, Complex64::new(0.0, 0.0)),
    };
    let ce = ComplexEarthquake::new(&lam, base, z)?;
    let rows = ce.trace(points);
    let mut table = Table::new(&["angle", "re", "im"]);
    for r in &rows {
        let [re, im] = match r.image {
            Some([re, im]) => [re.into(), im.into()],
            None => [Cell::Text("inf".into()), Cell::Text("inf".into())],
        };
        table.push(vec![r.angle.into(), re, im]);
    }
    let json = json!({
        "z": [z.re, z.im],
        "base_gap": base,
        "trace": rows.iter().map(|r| json!({ "angle": r.angle, "image": r.image.map_or(json!("inf"), |w| json!(w)) })).collect::<Vec<_>>(),
        "faces": ce.bending().faces_json(),
    });
    Ok(Report { command: "earthquake trace", json, table })
}

pub fn crescent_dilatation(w: Complex64, theta: f64, grid: Option<usize>) -> Result<Report> {
    let s = AngleScaling::new(w, theta)?;
    let k = crescents::scaling_dilatation(&s)?;
    let mu = s.beltrami_constant();
    let estimate = grid.map(|n| qc::verify_scaling_dilatation(w, theta, n)).transpose()?;
    let mut json = json!({
        "w": [w.re, w.im],
        "theta": theta,
        "image_angle": s.image_angle(),
        "beltrami_constant": [mu.re, mu.im],
        "dilatation": k,
    });
    if let Some(e) = &estimate {
        json["estimate"] = value(e);
    }
    let mut table = Table::new(&["w_re", "w_im", "theta", "image_angle", "mu_re", "mu_im", "dilatation", "estimated_sup", "max_deviation"]);
    table.push(vec![
        w.re.into(),
        w.im.into(),
        theta.into(),
        s.image_angle().into(),
        mu.re.into(),
        mu.im.into(),
        k.into(),
        estimate.as_ref().map(|e| e.stats.sup).into(),
        estimate.as_ref().map(|e| e.max_deviation).into(),
    ]);
    Ok(Report { command: "crescent dilatation", json, table })
}

/// `Ok(None)` for an unknown fixture name.
pub fn qc_estimate(fixture: &str, n: usize) -> Result<Option<Report>> {
    let Some(sample) = qc::fixture(fixture, n) else { return Ok(None) };
    let field = qc::beltrami_estimate(&sample?);
    let stats = qc::dilatation_stats(&field)?;
    let mut table = Table::new(&["x", "y", "mu_re", "mu_im", "k"]);
    for (i, j, z, m) in field.valid_cells() {
        table.push(vec![z.re.into(), z.im.into(), m.re.into(), m.im.into(), field.k(i, j).into()]);
    }
    let json = json!({ "fixture": fixture, "grid": n, "stats": value(&stats) });
    Ok(Some(Report { command: "qc estimate", json, table }))
}

/// `re,im` or `inf`.
pub fn parse_point(s: &str) -> std::result::Result<ExtComplex, String> {
    if s.trim() == "inf" {
        return Ok(ExtComplex::Infinity);
    }
    parse_complex(s).map(ExtComplex::Finite)
}

pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [re, im] = parts[..] else { return Err(format!("expected re,im but got {s:?}")) };
    let num = |x: &str| x.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| format!("not a finite number: {x:?}"));
    Ok(Complex64::new(num(re)?, num(im)?))
}
