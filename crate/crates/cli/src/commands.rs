//! The four subcommands. Each returns its artifacts in memory.

use limitshape::envelope::{fortress_boundary, sample_arctic, sample_surface, SurfaceSample};
use limitshape::fourvertex::{fourvertex_arctic, lozenge_facets, unshear3d, Hexagon};
use limitshape::models::{FortressField, ModelKind};
use limitshape::regions::FacetPlane;
use limitshape::solver::{
    fv_hexagon_feasible, octagon_feasible, solve_fv_hexagon, solve_octagon, solve_parameters, SolvedShape, SolverOptions,
};
use limitshape::{ExtReal, Extended};
use serde::Serialize;

use crate::config::{ModelConfig, RunConfig};
use crate::plot::Figure;
use crate::table::{csv, num};
use crate::{Artifact, CliError, VERSION};

/// Distance below which two inner boundary points count as one fortress sample.
const FORTRESS_INSET: f64 = 1e-4;

#[derive(Serialize)]
struct SolvedJson<'a> {
    version: &'static str,
    #[serde(flatten)]
    model: &'a ModelConfig,
    degree: usize,
    /// Decreasing order, the point at infinity last.
    anchors: Vec<ExtReal>,
    b: f64,
    residual_norm: f64,
    iterations: usize,
    critical_points: Vec<[f64; 2]>,
    critical_residuals: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

#[derive(Serialize)]
struct FortressJson<'a> {
    version: &'static str,
    #[serde(flatten)]
    model: &'a ModelConfig,
    omega1: f64,
    omega3_im: f64,
    nome: f64,
    legendre_residual: f64,
    note: &'static str,
}

#[derive(Serialize)]
struct FourVertexJson<'a> {
    version: &'static str,
    #[serde(flatten)]
    model: &'a ModelConfig,
    ellipse: [[f64; 3]; 3],
    center: [f64; 2],
    semi_axes: [f64; 2],
    tangency: [[f64; 2]; 6],
    facets: Vec<FacetPlane>,
}

pub fn solve_shape(config: &RunConfig) -> Result<SolvedShape, CliError> {
    let region = config.region()?.ok_or_else(|| unsupported(config, "solve_shape"))?;
    let init = config.initial_guess()?;
    let opts = SolverOptions::default();
    match config.model {
        ModelConfig::Octagon { m1, m2 } if init.is_none() || !octagon_feasible(m1, m2) => {
            return Ok(solve_octagon(m1, m2, &opts)?);
        }
        ModelConfig::FvHexagon { m, r } if init.is_none() || !fv_hexagon_feasible(m, r) => {
            return Ok(solve_fv_hexagon(m, r, &opts)?);
        }
        _ => {}
    }
    Ok(solve_parameters(&region, init.as_ref(), &opts)?)
}

fn unsupported(config: &RunConfig, what: &str) -> CliError {
    CliError::Unsupported(format!("{what} is not available for {}", config.describe()))
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn hexagon(config: &RunConfig) -> Result<Option<Hexagon>, CliError> {
    match config.model {
        ModelConfig::Fourvertex { a, b, c } => Ok(Some(Hexagon::new(a, b, c)?)),
        _ => Ok(None),
    }
}

/// Writes `solved.json`.
pub fn cmd_solve(config: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let contents = match &config.model {
        ModelConfig::Fortress => {
            let field = FortressField::new();
            let l = field.lattice();
            json(&FortressJson {
                version: VERSION,
                model: &config.model,
                omega1: l.omega1(),
                omega3_im: l.omega3().im,
                nome: l.nome(),
                legendre_residual: l.legendre_residual(),
                note: "fixed elliptic parametrization on the annulus; no anchors to solve for",
            })?
        }
        ModelConfig::Fourvertex { .. } => return fourvertex_json(config).map(|c| vec![artifact("solved.json", c)]),
        _ => {
            let shape = solve_shape(config)?;
            let degree = shape.map.degree();
            json(&SolvedJson {
                version: VERSION,
                model: &config.model,
                degree,
                anchors: shape.descending_anchors(),
                b: shape.map.b,
                residual_norm: shape.residual_norm,
                iterations: shape.iterations,
                critical_points: shape.critical_points().iter().map(|c| [c.re, c.im]).collect(),
                critical_residuals: shape.critical_residuals()?,
                note: (degree <= 1).then_some("degree-one map z = u: anchors are the transition values, nothing to solve"),
            })?
        }
    };
    Ok(vec![artifact("solved.json", contents)])
}

/// Writes `surface.csv`, one row per grid point in grid order.
pub fn cmd_surface(config: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let n = config.grid();
    let sample = match &config.model {
        ModelConfig::Fortress => sample_surface(&FortressField::new(), n),
        ModelConfig::Fourvertex { .. } => return Err(unsupported(config, "surface sampling")),
        _ => sample_surface(&solve_shape(config)?, n),
    };
    let SurfaceSample { points, skipped, .. } = &sample;
    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|p| {
            let mut r: Vec<String> = [p.u.re, p.u.im, p.x, p.y, p.h, p.s, p.t, p.c].into_iter().map(num).collect();
            r.push(u8::from(p.facet_adjacent).to_string());
            r
        })
        .collect();
    let comments = header(config, &format!("grid {n}x{n}, {} points, {} skipped", points.len(), skipped.len()));
    let text = csv(&comments, &["u_re", "u_im", "x", "y", "h", "s", "t", "c", "facet_adjacent"], &rows)?;
    Ok(vec![artifact("surface.csv", text)])
}

/// Writes `arctic.svg` and `arctic.csv`.
pub fn cmd_arctic(config: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let n = config.arc_samples();
    match &config.model {
        ModelConfig::Fourvertex { .. } => Err(CliError::Unsupported(
            "the four-vertex hexagon has its own subcommand: fourvertex".into(),
        )),
        ModelConfig::Fortress => {
            let rows_by_side = fortress_boundary(&FortressField::new(), n, FORTRESS_INSET);
            let mut rows = Vec::new();
            let mut figure = Figure { title: title(config), ..Figure::default() };
            for (side, pts) in rows_by_side.iter().enumerate() {
                for p in pts {
                    rows.push(vec![side.to_string(), num(p.u.re), num(p.u.im), num(p.x), num(p.y), num(p.h)]);
                }
                let mut curve: Vec<[f64; 2]> = pts.iter().map(|p| [p.x, p.y]).collect();
                curve.extend(curve.first().copied());
                figure.curves.push((curve, side));
            }
            let comments = header(config, &format!("{n} samples per boundary row, inset {FORTRESS_INSET}"));
            let text = csv(&comments, &["boundary", "u_re", "u_im", "x", "y", "h"], &rows)?;
            Ok(vec![artifact("arctic.svg", figure.render()), artifact("arctic.csv", text)])
        }
        _ => {
            let shape = solve_shape(config)?;
            let curve = sample_arctic(&shape, n)?;
            let slopes = shape.region().model().facet_slopes();
            let mut rows = Vec::new();
            let mut figure = Figure {
                title: title(config),
                outline: Some(shape.region().corners().to_vec()),
                markers: curve.tangency.clone(),
                ..Figure::default()
            };
            for (k, arc) in curve.arcs.iter().enumerate() {
                for p in &arc.points {
                    let u = match p.u {
                        Extended::Finite(u) => num(u),
                        Extended::Infinity => "inf".into(),
                    };
                    rows.push(vec![
                        k.to_string(),
                        arc.interval.to_string(),
                        u,
                        num(p.x),
                        num(p.y),
                        num(p.h),
                        num(arc.facet.slope[0]),
                        num(arc.facet.slope[1]),
                    ]);
                }
                let color = slopes.iter().position(|s| close(*s, arc.facet.slope)).unwrap_or(k);
                figure.curves.push((arc.points.iter().map(|p| [p.x, p.y]).collect(), color));
            }
            let mut comments = header(config, &format!("{n} samples per arc, {} arcs", curve.arcs.len()));
            comments.push(format!("tangency {}", points(&curve.tangency)));
            let text = csv(&comments, &["arc", "interval", "u", "x", "y", "h", "facet_s", "facet_t"], &rows)?;
            Ok(vec![artifact("arctic.svg", figure.render()), artifact("arctic.csv", text)])
        }
    }
}

/// Writes `fourvertex.json`, `fourvertex.csv` and `fourvertex.svg`.
pub fn cmd_fourvertex(config: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let hex = hexagon(config)?.ok_or_else(|| unsupported(config, "the fourvertex subcommand"))?;
    let n = config.arc_samples();
    let curve = fourvertex_arctic(&hex, n)?;
    let planes = lozenge_facets(&hex)?;
    let corners = hex.region().corners();
    let outline = corners
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let p = unshear3d([c[0], c[1], planes[(k + 1) % 6].height(c[0], c[1])]);
            [p[0], p[1]]
        })
        .collect();
    let slopes = ModelKind::Lozenge.facet_slopes();
    let mut figure = Figure { title: title(config), outline: Some(outline), ..Figure::default() };
    let mut rows = Vec::new();
    for (k, arc) in curve.arcs.iter().enumerate() {
        for (l, f) in arc.lozenge.iter().zip(&arc.four_vertex) {
            let mut r = vec![k.to_string(), num(arc.facet.slope[0]), num(arc.facet.slope[1])];
            r.extend(l.iter().chain(f).map(|&v| num(v)));
            rows.push(r);
        }
        let color = slopes.iter().position(|s| close(*s, arc.facet.slope)).unwrap_or(k);
        figure.curves.push((arc.four_vertex.iter().map(|p| [p[0], p[1]]).collect(), color));
        figure.markers.push([arc.four_vertex[0][0], arc.four_vertex[0][1]]);
    }
    let comments = header(config, &format!("{n} samples per arc; lozenge coordinates then four-vertex coordinates"));
    let header_row = ["arc", "facet_s", "facet_t", "lozenge_x", "lozenge_y", "lozenge_h", "x", "y", "h"];
    Ok(vec![
        artifact("fourvertex.json", fourvertex_json(config)?),
        artifact("fourvertex.csv", csv(&comments, &header_row, &rows)?),
        artifact("fourvertex.svg", figure.render()),
    ])
}

fn fourvertex_json(config: &RunConfig) -> Result<String, CliError> {
    let hex = hexagon(config)?.ok_or_else(|| unsupported(config, "the inscribed ellipse"))?;
    let curve = fourvertex_arctic(&hex, 2)?;
    let (semi_axes, _) = curve.ellipse.axes();
    json(&FourVertexJson {
        version: VERSION,
        model: &config.model,
        ellipse: curve.ellipse.matrix,
        center: curve.ellipse.center(),
        semi_axes,
        tangency: curve.tangency,
        facets: lozenge_facets(&hex)?,
    })
}

fn artifact(name: &str, contents: String) -> Artifact {
    Artifact { name: name.into(), contents }
}

fn title(config: &RunConfig) -> String {
    format!("limitshape {VERSION}: {}", config.describe())
}

fn header(config: &RunConfig, extra: &str) -> Vec<String> {
    vec![format!("limitshape {VERSION}"), format!("model {}", config.describe()), extra.to_string()]
}

fn points(ps: &[[f64; 2]]) -> String {
    let parts: Vec<String> = ps.iter().map(|p| format!("({} {})", num(p[0]), num(p[1]))).collect();
    parts.join(" ")
}

fn close(a: [f64; 2], b: [f64; 2]) -> bool {
    (a[0] - b[0]).abs() < 1e-9 && (a[1] - b[1]).abs() < 1e-9
}
