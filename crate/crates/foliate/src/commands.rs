//! Subcommand implementations. Each returns the JSON printed on stdout and
//! the exit code; failures that prevent a report are `CliError`s.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use foliate_core::analysis::{branch_report, cs_check, strongly_presentable};
use foliate_core::blowup::{reduce, ReduceOptions, ReductionTree};
use foliate_core::localtypes::{classify, saddle_node_direction, separatrix_jet, Direction, JetOrder, SingClass};
use foliate_core::numerics::beam::{beam_verify, BeamModel, BeamSpec};
use foliate_core::numerics::cycles::{gamma_c_check, psi_cycle_verify};
use foliate_core::numerics::lift::{circle_grid, LiftSample};
use foliate_core::numerics::{
    holonomy, lift_path, sigma_domain, CForm, CPath, CPoly, LiftOptions, LiftStatus, Piece, Roughness,
    SigmaOptions, C64,
};
use foliate_core::{DiffForm, Rational};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::cases::{parse_complex, parse_rational, Case, CaseParams};
use crate::cli::{Along, Command, Source};
use crate::document::{class_doc, cs_doc, dot, branch_doc, rational_string, ExactValue, TreeDocument};
use crate::error::{CliError, CliResult};
use crate::parse::{parse_form, parse_poly, render};
use crate::suite::run_case;

pub const JET_ORDER_VAR: &str = "FOLIATION_JET_ORDER";

#[derive(Debug)]
pub struct Outcome {
    pub json: Value,
    pub code: i32,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Self { json, code: 0 }
    }

    fn check(json: Value, passed: bool) -> Self {
        Self { json, code: if passed { 0 } else { 1 } }
    }
}

/// Jet order policy, with the initial order taken from `FOLIATION_JET_ORDER`
/// when set.
pub fn jet_order() -> CliResult<JetOrder> {
    let mut jets = JetOrder::default();
    if let Ok(v) = std::env::var(JET_ORDER_VAR) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("{JET_ORDER_VAR}={v} is not a positive integer")))?;
        jets.initial = n;
        jets.cap = jets.cap.max(n);
    }
    Ok(jets)
}

fn c(z: C64) -> Value {
    json!([z.re, z.im])
}

fn roughness_json(r: Roughness) -> Value {
    match r {
        Roughness::Finite(v) => json!(v),
        Roughness::Infinite => json!("infinite"),
    }
}

impl Source {
    fn params(&self) -> CaseParams {
        CaseParams {
            lambda: self.lambda.clone(),
            k: self.k,
            mu: self.mu.clone(),
            n: self.n,
            ns: self.ns.clone(),
        }
    }

    fn case(&self) -> CliResult<Option<Case>> {
        self.case.as_deref().map(|s| Case::resolve(s, &self.params())).transpose()
    }

    fn form_or(&self, default: Option<&str>) -> CliResult<DiffForm> {
        if let Some(text) = &self.form {
            return Ok(parse_form(text)?);
        }
        match (self.case()?, default) {
            (Some(case), _) => case.require_form(),
            (None, Some(d)) => Case::resolve(d, &CaseParams::default())?.require_form(),
            (None, None) => Err(CliError::Usage("one of --form or --case is required".into())),
        }
    }

    fn form(&self) -> CliResult<DiffForm> {
        self.form_or(None)
    }

    fn tree(&self, jets: JetOrder, force: bool) -> CliResult<ReductionTree> {
        if let Some(text) = &self.form {
            let w = parse_form(text)?;
            let opts = ReduceOptions { jets, force_initial_blowup: force, ..ReduceOptions::default() };
            return Ok(reduce(&w, &opts)?);
        }
        match self.case()? {
            Some(Case::Hub(ns)) => Case::Hub(ns).tree(jets),
            Some(case) => {
                let mut opts = case.reduce_options(jets);
                opts.force_initial_blowup |= force;
                Ok(reduce(&case.require_form()?, &opts)?)
            }
            None => Err(CliError::Usage("one of --form or --case is required".into())),
        }
    }
}

fn numeric(w: &DiffForm, along: Along) -> CliResult<CForm> {
    let f = CForm::from_form(w)?;
    Ok(match along {
        Along::YAxis => f,
        Along::XAxis => f.swap(),
    })
}

fn along_json(along: Along) -> Value {
    match along {
        Along::YAxis => json!({ "separatrix": "y=0", "path_plane": "x", "transversal": "y" }),
        Along::XAxis => json!({ "separatrix": "x=0", "path_plane": "y", "transversal": "x" }),
    }
}

fn jet_json(w: &DiffForm, tangent: &[foliate_core::FieldElem; 2], order: usize) -> CliResult<Value> {
    let j = separatrix_jet(w, tangent, order)?;
    let var = if j.over_y { "y" } else { "x" };
    let coeffs: Vec<ExactValue> = j.jet.coeffs().iter().map(ExactValue::of).collect();
    let rational: Option<Vec<Rational>> = j.jet.coeffs().iter().map(|e| e.as_rational()).collect();
    let text = rational.map(|qs| {
        let mut parts = Vec::new();
        for (i, q) in qs.iter().enumerate() {
            if q.numer() == &0.into() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let s = rational_string(q);
            parts.push(match (mono.is_empty(), s.as_str()) {
                (true, _) => s,
                (false, "1") => mono,
                (false, "-1") => format!("-{mono}"),
                _ => format!("{s} {mono}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    });
    Ok(json!({
        "tangent": [ExactValue::of(&j.tangent[0]), ExactValue::of(&j.tangent[1])],
        "graph_over": var,
        "order": j.order,
        "coefficients": coeffs,
        "text": text,
    }))
}

fn classify_cmd(src: &Source, jet: usize) -> CliResult<Outcome> {
    let w = src.form()?;
    let class = classify(&w, jet_order()?)?;
    let (name, data) = class_doc(&class);
    let mut out = json!({ "form": render(&w), "class": name, "data": data });
    if let SingClass::SaddleNode { .. } = class {
        let l = w.linear_part()?;
        for (key, d) in [("strong_jet", Direction::Strong), ("weak_jet", Direction::Weak)] {
            out[key] = jet_json(&w, &saddle_node_direction(&l, d)?, jet)?;
        }
    }
    Ok(Outcome::ok(out))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text)?;
    Ok(())
}

fn reduce_cmd(src: &Source, out: Option<&Path>, dot_path: Option<&Path>, force: bool) -> CliResult<Outcome> {
    let tree = src.tree(jet_order()?, force)?;
    let doc = TreeDocument::build(&tree)?;
    let text = serde_json::to_string_pretty(&doc)? + "\n";
    if let Some(p) = out {
        write_file(p, &text)?;
    }
    if let Some(p) = dot_path {
        write_file(p, &dot(&doc))?;
    }
    Ok(Outcome::ok(serde_json::to_value(&doc)?))
}

fn cs_check_cmd(src: &Source) -> CliResult<Outcome> {
    let tree = src.tree(jet_order()?, false)?;
    let r = cs_check(&tree)?;
    Ok(Outcome::check(serde_json::to_value(cs_doc(&r))?, r.passed()))
}

fn branches_cmd(src: &Source) -> CliResult<Outcome> {
    let tree = src.tree(jet_order()?, false)?;
    let r = branch_report(&tree);
    Ok(Outcome::ok(json!({
        "branches": r.branches.iter().map(branch_doc).collect::<Vec<_>>(),
        "initial_components": r.initial_components,
        "dicritical_contacts": r.dicritical_contacts,
    })))
}

fn presentability_cmd(src: &Source) -> CliResult<Outcome> {
    let tree = src.tree(jet_order()?, false)?;
    let v = strongly_presentable(&tree);
    let witnesses: Vec<Value> = v
        .witnesses
        .iter()
        .map(|w| {
            let hosts: Vec<Value> = w
                .hosts
                .iter()
                .map(|(c, d)| {
                    let sep = d.map(|d| match d {
                        Direction::Strong => "strong",
                        Direction::Weak => "weak",
                    });
                    json!({ "component": c, "separatrix": sep })
                })
                .collect();
            json!({ "point": w.point, "corner": w.corner, "hosts": hosts })
        })
        .collect();
    Ok(Outcome::ok(json!({ "strongly_presentable": v.strongly_presentable, "saddle_nodes": witnesses })))
}

/// Writes lift samples with columns `t, Re x, Im x, Re y, Im y`.
pub fn write_samples_csv(path: &Path, samples: &[LiftSample]) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["t", "Re x", "Im x", "Re y", "Im y"])?;
    for s in samples {
        w.serialize((s.t, s.x.re, s.x.im, s.y.re, s.y.im))?;
    }
    w.flush()?;
    Ok(())
}

pub struct LiftArgs<'a> {
    pub y0: &'a str,
    pub radius: Option<f64>,
    pub turns: i32,
    pub start_angle: f64,
    pub from: Option<&'a str>,
    pub to: Option<&'a str>,
    pub y_bound: Option<f64>,
    pub csv: Option<&'a Path>,
    pub along: Along,
}

fn lift_cmd(src: &Source, a: LiftArgs<'_>) -> CliResult<Outcome> {
    let form = numeric(&src.form()?, a.along)?;
    let path = match (a.radius, a.from, a.to) {
        (Some(r), None, None) => CPath::circle(r, a.start_angle, a.turns),
        (None, Some(f), Some(t)) => CPath::new(vec![Piece::Segment { from: parse_complex(f)?, to: parse_complex(t)? }]),
        _ => return Err(CliError::Usage("give either --radius or both --from and --to".into())),
    };
    let y0 = parse_complex(a.y0)?;
    let opts = LiftOptions { y_bound: a.y_bound, record: true, ..LiftOptions::default() };
    let r = lift_path(&form, &path, y0, &opts);
    if let Some(p) = a.csv {
        write_samples_csv(p, &r.samples)?;
    }
    let x_end = path.eval(r.final_t).0;
    Ok(Outcome::ok(json!({
        "along": along_json(a.along),
        "status": r.status.as_str(),
        "start": { "x": c(path.start()), "y": c(y0) },
        "end": { "t": r.final_t, "x": c(x_end), "y": c(r.final_y) },
        "samples": r.samples.len(),
        "max_form_residual": r.max_form_residual,
        "error_estimate": r.error_estimate,
    })))
}

fn holonomy_cmd(src: &Source, radius: f64, grid_radius: f64, points: usize, along: Along) -> CliResult<Outcome> {
    let form = numeric(&src.form()?, along)?;
    let grid = circle_grid(grid_radius, points);
    let h = holonomy(&form, &CPath::circle(radius, 0.0, 1), &grid, &LiftOptions::default());
    let pts: Vec<Value> = h
        .iter()
        .map(|p| json!({ "y0": c(p.y0), "y1": c(p.y1), "status": p.status.as_str(), "error_estimate": p.error_estimate }))
        .collect();
    let complete = h.iter().all(|p| p.status == LiftStatus::Complete);
    Ok(Outcome::check(
        json!({ "along": along_json(along), "radius": radius, "grid_radius": grid_radius, "points": pts }),
        complete,
    ))
}

pub struct BeamArgs<'a> {
    pub case: &'a str,
    pub lambda: Option<&'a str>,
    pub k: Option<u32>,
    pub mu: Option<&'a str>,
    pub perturbation: Option<&'a str>,
    pub delta: Option<f64>,
    pub rays: usize,
    pub t_max: f64,
    pub z_star: Option<&'a str>,
    pub y_star: &'a str,
    pub rho: f64,
    pub r: f64,
}

fn beam_cmd(a: BeamArgs<'_>) -> CliResult<Outcome> {
    let mut r = match a.perturbation {
        Some(p) => CPoly::from_poly2(&parse_poly(p)?)?,
        None => CPoly::default(),
    };
    let (model, default_delta) = match a.case {
        "linear" => {
            let lambda = parse_complex(a.lambda.unwrap_or("-1"))?;
            let m = r.sup_on_polydisk(a.rho, a.r);
            (BeamModel::NonDegenerate { lambda, r }, m.min(1.0).acos())
        }
        "model_sn" => {
            let k = a.k.unwrap_or(1);
            if k == 0 {
                return Err(CliError::Usage("model_sn needs k >= 1".into()));
            }
            let mu = parse_rational(a.mu.unwrap_or("0"))?.to_f64().unwrap_or(f64::NAN);
            if mu != 0.0 {
                let mut terms = r.terms.clone();
                terms.push((k, 0, C64::new(mu, 0.0)));
                r = CPoly::new(terms);
            }
            let m = r.sup_on_polydisk(a.rho, a.r);
            (BeamModel::SaddleNode { k, r }, m.min(1.0).acos().min(PI / 3.0))
        }
        other => return Err(CliError::Usage(format!("beam-check supports linear and model_sn, not '{other}'"))),
    };
    let z_star = match a.z_star {
        Some(z) => parse_complex(z)?,
        None => C64::new(0.3f64.ln(), 0.0),
    };
    let spec = BeamSpec {
        model,
        z_star,
        y_star: parse_complex(a.y_star)?,
        delta: a.delta.unwrap_or(default_delta),
        n_rays: a.rays,
        t_max: a.t_max,
        rho: a.rho,
        r: a.r,
    };
    let rep = beam_verify(&spec, &LiftOptions::default())?;
    let violations: Vec<Value> = rep
        .violations
        .iter()
        .map(|v| json!({ "ray": v.ray, "t": v.t, "before": v.before, "after": v.after }))
        .collect();
    let mut exits = std::collections::BTreeMap::<&str, usize>::new();
    for ray in &rep.rays {
        *exits.entry(ray.exit.as_str()).or_default() += 1;
    }
    Ok(Outcome::check(
        json!({
            "delta": rep.delta,
            "m": rep.m,
            "rays": rep.rays.len(),
            "monotone_rays": rep.rays.iter().filter(|r| r.monotone).count(),
            "exits": exits,
            "violations": violations,
        }),
        rep.violations.is_empty(),
    ))
}

fn cycles_cmd(cc: f64, samples: usize, psi_samples: usize, xs: f64, ys: f64) -> CliResult<Outcome> {
    let g = gamma_c_check(cc, samples, xs, ys)?;
    let g_ok = g.endpoint_error < 1e-12 && g.max_residual < 1e-9 && g.max_h0_deviation < 1e-9;
    let p = psi_cycle_verify(cc, psi_samples, &LiftOptions::default())?;
    let p_ok = p.lift_status == LiftStatus::Complete
        && p.closure_error < 1e-6
        && [p.winding_x0, p.winding_y_plus1, p.winding_y_minus1].iter().all(|w| *w == Some(0));
    Ok(Outcome::check(
        json!({
            "gamma_c": {
                "c": g.c,
                "x_scale": xs,
                "y_scale": ys,
                "start": [c(g.start.0), c(g.start.1)],
                "end": [c(g.end.0), c(g.end.1)],
                "endpoint_error": g.endpoint_error,
                "max_residual": g.max_residual,
                "max_h0_deviation": g.max_h0_deviation,
                "samples": g.samples,
                "passed": g_ok,
            },
            "psi": {
                "c": p.c,
                "curve_gap": p.curve_gap,
                "max_residual": p.max_residual,
                "lift_status": p.lift_status.as_str(),
                "closure_error": p.closure_error,
                "winding": {
                    "x=0": p.winding_x0,
                    "y=1": p.winding_y_plus1,
                    "y=-1": p.winding_y_minus1,
                    "y=0": p.winding_y0,
                },
                "samples": p.samples,
                "passed": p_ok,
            },
        }),
        g_ok && p_ok,
    ))
}

pub struct SigmaArgs<'a> {
    pub rho: f64,
    pub r: f64,
    pub grid: usize,
    pub directions: usize,
    pub boundary_csv: Option<&'a Path>,
}

fn sigma_cmd(src: &Source, a: SigmaArgs<'_>) -> CliResult<Outcome> {
    let w = src.form_or(Some("model_sn k=1 mu=0"))?;
    let form = CForm::from_form(&w)?;
    let opts = SigmaOptions { grid: a.grid, directions: a.directions, ..SigmaOptions::default() };
    let rep = sigma_domain(&form, a.rho, a.r, &opts)?;
    if let Some(p) = a.boundary_csv {
        let mut wr = csv::Writer::from_path(p)?;
        wr.write_record(["direction", "Re y", "Im y"])?;
        for (j, z) in rep.boundary.iter().enumerate() {
            wr.serialize((j, z.re, z.im))?;
        }
        wr.flush()?;
    }
    let members = rep.grid.iter().filter(|&&m| m).count();
    let radii: Vec<f64> = rep.boundary.iter().map(|z| z.norm()).collect();
    let (rmin, rmax) = radii.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    Ok(Outcome::ok(json!({
        "form": render(&w),
        "rho": rep.rho,
        "r": rep.r,
        "grid": rep.n,
        "extent": rep.extent,
        "members": members,
        "contains_zero": rep.contains_zero,
        "components": rep.components,
        "boundary_points": rep.boundary.len(),
        "boundary_radius": [rmin, rmax],
        "roughness": roughness_json(rep.roughness),
    })))
}

fn corpus_cmd(src: &Source) -> CliResult<Outcome> {
    if src.form.is_some() {
        return Err(CliError::Usage("corpus takes --case, not --form".into()));
    }
    let cases = match src.case()? {
        Some(c) => vec![c],
        None => Case::catalog(),
    };
    let jets = jet_order()?;
    let mut out = Vec::new();
    for case in &cases {
        out.push(run_case(case, jets)?);
    }
    let passed = out.iter().all(|c| c.passed);
    let failed: Vec<&str> = out.iter().filter(|c| !c.passed).map(|c| c.case.as_str()).collect();
    Ok(Outcome::check(
        json!({ "passed": passed, "cases": out.len(), "failed": failed, "results": out }),
        passed,
    ))
}

pub fn run(cmd: &Command) -> CliResult<Outcome> {
    match cmd {
        Command::Classify { src, jet } => classify_cmd(src, *jet),
        Command::Reduce { src, out, dot, force_blowup } => {
            reduce_cmd(src, out.as_deref(), dot.as_deref(), *force_blowup)
        }
        Command::CsCheck { src } => cs_check_cmd(src),
        Command::Branches { src } => branches_cmd(src),
        Command::Presentability { src } => presentability_cmd(src),
        Command::Lift { src, y0, radius, turns, start_angle, from, to, y_bound, csv, along } => lift_cmd(
            src,
            LiftArgs {
                y0,
                radius: *radius,
                turns: *turns,
                start_angle: *start_angle,
                from: from.as_deref(),
                to: to.as_deref(),
                y_bound: *y_bound,
                csv: csv.as_deref(),
                along: *along,
            },
        ),
        Command::Holonomy { src, radius, grid_radius, points, along } => {
            holonomy_cmd(src, *radius, *grid_radius, *points, *along)
        }
        Command::BeamCheck {
            case,
            lambda,
            k,
            mu,
            perturbation,
            delta,
            rays,
            t_max,
            z_star,
            y_star,
            rho,
            r,
        } => beam_cmd(BeamArgs {
            case: case.split_whitespace().next().unwrap_or(""),
            lambda: lambda.as_deref(),
            k: *k,
            mu: mu.as_deref(),
            perturbation: perturbation.as_deref(),
            delta: *delta,
            rays: *rays,
            t_max: *t_max,
            z_star: z_star.as_deref(),
            y_star,
            rho: *rho,
            r: *r,
        }),
        Command::Cycles { c, samples, psi_samples, x_scale, y_scale } => {
            cycles_cmd(*c, *samples, *psi_samples, *x_scale, *y_scale)
        }
        Command::Sigma { src, rho, r, grid, directions, boundary_csv } => sigma_cmd(
            src,
            SigmaArgs { rho: *rho, r: *r, grid: *grid, directions: *directions, boundary_csv: boundary_csv.as_deref() },
        ),
        Command::Corpus { src } => corpus_cmd(src),
    }
}
