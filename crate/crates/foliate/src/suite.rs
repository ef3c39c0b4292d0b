//! Checks run by `corpus`: each case is reduced or integrated and compared
//! against values known in closed form.

use std::f64::consts::PI;

use foliate_core::analysis::{branch_report, cs_check, strongly_presentable};
use foliate_core::blowup::ReductionTree;
use foliate_core::localtypes::{
    classify, saddle_node_direction, separatrix_jet, Direction, JetOrder, RatioValue, SingClass,
};
use foliate_core::numerics::beam::{beam_verify, BeamModel, BeamSpec};
use foliate_core::numerics::cycles::{gamma_c_verify, psi_cycle_verify};
use foliate_core::numerics::lift::circle_grid;
use foliate_core::numerics::{holonomy, CPath, CPoly, LiftOptions, LiftStatus, C64};
use foliate_core::{rat, Rational, UPoly};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cases::Case;
use crate::error::CliResult;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct CaseSummary {
    pub case: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), passed, detail: detail.into() });
    }
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Largest `|h(y0) - expected(y0)|` over a holonomy grid; infinite if a lift
/// did not complete.
pub fn holonomy_error(
    form: &foliate_core::numerics::CForm,
    radius: f64,
    grid: &[C64],
    expected: impl Fn(C64) -> C64,
) -> f64 {
    holonomy(form, &CPath::circle(radius, 0.0, 1), grid, &LiftOptions::default())
        .iter()
        .map(|h| match h.status {
            LiftStatus::Complete => (h.y1 - expected(h.y0)).norm(),
            _ => f64::INFINITY,
        })
        .fold(0.0, f64::max)
}

fn tree_checks(c: &mut Checks, tree: &ReductionTree) -> CliResult<()> {
    c.add("tree", tree.is_tree(), format!("{} components, {} corners", tree.components.len(), tree.corners.len()));
    let cs = cs_check(tree)?;
    c.add("cs_check", cs.passed(), format!("{} components checked", cs.components.len()));
    Ok(())
}

fn saddle_node(tree: &ReductionTree) -> Vec<(u32, Option<Rational>)> {
    tree.points
        .iter()
        .filter_map(|p| match &p.class {
            SingClass::SaddleNode { k, mu } => Some((*k, mu.as_rational())),
            _ => None,
        })
        .collect()
}

fn omega_n_checks(c: &mut Checks, tree: &ReductionTree, n: u32) {
    c.add("blowups", tree.steps.len() == n as usize, format!("{} blow-ups", tree.steps.len()));
    let mut comps = tree.components.clone();
    comps.sort_by_key(|k| k.birth_step);
    let chern: Vec<i64> = comps.iter().map(|k| k.self_intersection).collect();
    let mut expect = vec![-2; n as usize - 1];
    expect.push(-1);
    c.add("chern", chern == expect, format!("{chern:?}"));
    let chain = (1..comps.len()).all(|i| tree.neighbours(comps[i - 1].id).contains(&comps[i].id));
    c.add("chain", chain && tree.corners.len() + 1 == comps.len(), format!("corners {:?}", tree.corners));
    let rank = |id: usize| comps.iter().position(|k| k.id == id).map_or(0, |i| i + 1);
    let mut corner_ok = tree.corners.len() + 1 == comps.len();
    if let Ok(cs) = cs_check(tree) {
        for p in tree.points.iter().filter(|p| p.is_corner()) {
            let (a, b) = (p.hosts[0].component, p.hosts[1].component);
            let (later, j) = if rank(a) > rank(b) { (a, rank(b)) } else { (b, rank(a)) };
            let v = cs
                .components
                .iter()
                .find(|e| e.component == later)
                .and_then(|e| e.entries.iter().find(|e| e.point == p.id))
                .and_then(|e| e.cs.as_rational());
            corner_ok &= v == Some(rat(-(j as i64), j as i64 + 1));
        }
    }
    c.add("corner_cs", corner_ok, "CS = -j/(j+1) along the later component");
    let sn = saddle_node(tree);
    c.add("terminal_mu", sn == vec![(1, Some(rat(-1, n as i64)))], format!("{sn:?}"));
    let r = branch_report(tree);
    c.add("dead_branches", r.branches.len() == 1, format!("{}", r.branches.len()));
    c.add("initial_components", r.initial_components.is_empty(), format!("{:?}", r.initial_components));
    c.add("strongly_presentable", strongly_presentable(tree).strongly_presentable, "");
}

pub fn run_case(case: &Case, jets: JetOrder) -> CliResult<CaseSummary> {
    let mut c = Checks(Vec::new());
    let form = case.form()?;
    let singular = match &form {
        Some(w) => w.is_singular_at_origin()?,
        None => true,
    };
    let tree = if singular { Some(case.tree(jets)?) } else { None };
    if let Some(t) = &tree {
        tree_checks(&mut c, t)?;
    }
    let grid = circle_grid(0.05, 10);
    match case {
        Case::Omega1 => {
            let t = tree.as_ref().expect("singular");
            c.add("blowups", t.steps.len() == 1, format!("{}", t.steps.len()));
            c.add("chern", t.components.len() == 1 && t.components[0].self_intersection == -1, "");
            let sn = saddle_node(t);
            c.add("saddle_node", sn == vec![(1, Some(rat(-1, 1)))] && t.points.len() == 1, format!("{sn:?}"));
        }
        Case::OmegaN(n) => omega_n_checks(&mut c, tree.as_ref().expect("singular"), *n),
        Case::Linear(l) => {
            let w = case.numeric_form()?.swap();
            let lf = to_f64(l);
            let err = holonomy_error(&w, 0.5, &grid, |y| y * C64::from_polar(1.0, 2.0 * PI * lf));
            c.add("holonomy", err < 1e-8, format!("max error {err:.3e} against exp(2 pi i lambda)"));
            if lf < 0.0 {
                let spec = BeamSpec {
                    model: BeamModel::NonDegenerate { lambda: C64::new(lf, 0.0), r: CPoly::default() },
                    z_star: C64::new(-0.7, 0.0),
                    y_star: C64::new(0.5, 0.2),
                    delta: PI / 2.0 - 0.01,
                    n_rays: 100,
                    t_max: 10.0,
                    rho: 1.0,
                    r: 1.0,
                };
                let b = beam_verify(&spec, &LiftOptions::default())?;
                c.add("beam", b.violations.is_empty(), format!("{} violations", b.violations.len()));
            }
        }
        Case::ModelSn { k, mu } => {
            let w = form.as_ref().expect("form");
            let class = classify(w, jets)?;
            let ok = matches!(&class, SingClass::SaddleNode { k: kk, mu: m } if kk == k && m.as_rational().as_ref() == Some(mu));
            c.add("classify", ok, format!("{class:?}"));
            let muf = to_f64(mu);
            let err = holonomy_error(&case.numeric_form()?, 0.3, &grid, |y| y * C64::from_polar(1.0, 2.0 * PI * muf));
            c.add("holonomy", err < 1e-8, format!("max error {err:.3e} against exp(2 pi i mu)"));
            let rho = 0.5;
            let r_poly = CPoly::from_real(&[(*k, 0, muf)]);
            let m = r_poly.sup_on_polydisk(rho, 1.0);
            if m < 1.0 {
                let spec = BeamSpec {
                    model: BeamModel::SaddleNode { k: *k, r: r_poly },
                    z_star: C64::new(0.3f64.ln(), 0.0),
                    y_star: C64::new(0.5, 0.2),
                    delta: (PI / 3.0).min(m.acos()),
                    n_rays: 100,
                    t_max: 10.0,
                    rho,
                    r: 1.0,
                };
                let b = beam_verify(&spec, &LiftOptions::default())?;
                c.add("beam", b.violations.is_empty(), format!("{} violations, delta {:.4}", b.violations.len(), spec.delta));
            }
        }
        Case::Euler => {
            let w = form.as_ref().expect("form");
            let class = classify(w, jets)?;
            let ok = matches!(&class, SingClass::SaddleNode { k: 1, mu } if mu.is_zero());
            c.add("classify", ok, format!("{class:?}"));
            let weak = saddle_node_direction(&w.linear_part()?, Direction::Weak)?;
            let jet = separatrix_jet(w, &weak, 4)?;
            let f = w.field();
            let expect = UPoly::new([0, -1, -1, -2, -6].iter().map(|&v| f.from_int(v)).collect());
            c.add("weak_jet", jet.jet == expect, "-x - x^2 - 2x^3 - 6x^4");
            let shift = C64::new(0.0, 2.0 * PI * (-5.0f64).exp());
            let err = holonomy_error(&case.numeric_form()?, 0.2, &circle_grid(0.01, 10), |y| y + shift);
            c.add("holonomy", err < 1e-6, format!("max error {err:.3e} against y + 2 pi i e^-5"));
        }
        Case::PsiPullback => {
            let g = gamma_c_verify(0.5, 1000)?;
            let ok = g.endpoint_error < 1e-12 && g.max_h0_deviation < 1e-9 && g.max_residual < 1e-9;
            c.add("gamma_c", ok, format!("H0 deviation {:.3e}", g.max_h0_deviation));
            let p = psi_cycle_verify(0.5, 2001, &LiftOptions::default())?;
            let ok = p.lift_status == LiftStatus::Complete
                && p.closure_error < 1e-6
                && p.winding_x0 == Some(0)
                && p.winding_y_plus1 == Some(0)
                && p.winding_y_minus1 == Some(0);
            c.add("psi_cycle", ok, format!("closure {:.3e}", p.closure_error));
        }
        Case::Radial => {
            let t = tree.as_ref().expect("singular");
            c.add("dicritical", t.components.len() == 1 && t.components[0].dicritical, "");
        }
        Case::BlownSn => {
            let t = tree.as_ref().expect("singular");
            c.add("not_strongly_presentable", !strongly_presentable(t).strongly_presentable, "");
            let ratio = t.points.iter().any(|p| {
                matches!(&p.class, SingClass::ReducedNonDegenerate { ratio, .. }
                    if ratio.value == RatioValue::Rational(rat(-1, 1), rat(-1, 1)))
            });
            c.add("saddle_ratio", ratio, "ratio -1 at the other point");
        }
        Case::Sqrt2 => {
            let t = tree.as_ref().expect("singular");
            let ext = t.points.iter().any(|p| !p.field().is_rational());
            c.add("extension_points", ext, "points over Q(sqrt 2)");
        }
        Case::Hub(ns) => {
            let t = tree.as_ref().expect("tree");
            let r = branch_report(t);
            c.add("dead_branches", r.branches.len() == ns.len(), format!("{}", r.branches.len()));
            let initial = if ns.len() >= 2 { vec![1] } else { vec![] };
            c.add("initial_components", r.initial_components == initial, format!("{:?}", r.initial_components));
        }
        Case::Split | Case::Cusp => {}
    }
    let passed = c.0.iter().all(|k| k.passed);
    Ok(CaseSummary { case: case.to_string(), passed, checks: c.0 })
}
