//! Point blow-ups and the reduction driver.
//!
//! Charts: `(x, y) = (x, x v)` and `(x, y) = (u w, w)`. A point that is not
//! reduced is blown up; every point of the new divisor where the transformed
//! form is singular (or, on a dicritical divisor, tangent) is queued. Points
//! over number fields stand for all their conjugates at once.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::field::{FieldElem, FieldRef, NumberField};
use crate::algebra::poly2::{Poly2, XPoly};
use crate::algebra::primitive::adjoin_roots;
use crate::algebra::rational::{int, Rational};
use crate::algebra::upoly::{rational_roots, UPoly};
use crate::error::{Error, Result};
use crate::form::DiffForm;
use crate::localtypes::{
    classify, cs_along_axis, parallel, saddle_node_direction, Axis, Direction, JetOrder, SingClass,
};

#[derive(Clone, Debug, PartialEq)]
pub struct BlowupCharts {
    pub chart_x: DiffForm,
    pub chart_y: DiffForm,
    pub dicritical: bool,
    pub nu: u32,
}

/// Blow up the origin. The pullback is divided by `x^nu` (`w^nu`), or by one
/// more power when the divisor is dicritical.
pub fn blowup_point(w: &DiffForm) -> Result<BlowupCharts> {
    if !w.is_singular_at_origin()? {
        return Err(Error::RegularPoint);
    }
    let nu = w.multiplicity();
    let f = w.field();
    let x = Poly2::x(f);
    let y = Poly2::y(f);
    let radial = &(&x * w.a()) + &(&y * w.b());
    let mut dicritical = true;
    for (_, c) in radial.homogeneous_part(nu + 1).terms() {
        if !c.test_zero()? {
            dicritical = false;
            break;
        }
    }
    let e = if dicritical { nu + 1 } else { nu };
    let xv = &x * &y;
    let chart_x = w
        .pullback(&x, &xv)
        .div_monomial(e, 0)
        .ok_or_else(|| Error::Unsupported("chart x division".into()))?;
    let chart_y = w
        .pullback(&xv, &y)
        .div_monomial(0, e)
        .ok_or_else(|| Error::Unsupported("chart y division".into()))?;
    Ok(BlowupCharts {
        chart_x: chart_x.normalize_primitive()?.0,
        chart_y: chart_y.normalize_primitive()?.0,
        dicritical,
        nu,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    X,
    Y,
}

/// Where a point sits: on the divisor created at `step`, at `coordinate`
/// (`v` in chart x, `u = 0` in chart y).
#[derive(Clone, Debug, PartialEq)]
pub struct Location {
    pub step: usize,
    pub chart: Chart,
    pub coordinate: FieldElem,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorComponent {
    pub id: usize,
    pub birth_step: usize,
    pub self_intersection: i64,
    pub dicritical: bool,
    /// Conjugate copies of the component are indexed by this field.
    pub field: FieldRef,
}

/// A divisor component through a point, as the coordinate axis it occupies in
/// the point's chart. `generator_image` embeds the component's field into the
/// point's field.
#[derive(Clone, Debug, PartialEq)]
pub struct Host {
    pub component: usize,
    pub axis: Axis,
    pub generator_image: FieldElem,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HostData {
    /// Camacho-Sad index along the host; `None` on a dicritical host.
    pub cs: Option<FieldElem>,
    /// For saddle-nodes, which separatrix the host realizes.
    pub separatrix: Option<Direction>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint {
    pub id: usize,
    pub hosts: Vec<Host>,
    pub host_data: Vec<HostData>,
    pub location: Option<Location>,
    pub local_form: DiffForm,
    pub class: SingClass,
}

impl SingularPoint {
    /// Classify `local_form` and compute the per-host data.
    pub fn new(
        id: usize,
        hosts: Vec<Host>,
        location: Option<Location>,
        local_form: DiffForm,
        dicritical: &dyn Fn(usize) -> bool,
        jets: JetOrder,
    ) -> Result<Self> {
        let class = classify(&local_form, jets)?;
        let host_data = host_data(&local_form, &class, &hosts, dicritical)?;
        Ok(Self {
            id,
            hosts,
            host_data,
            location,
            local_form,
            class,
        })
    }

    pub fn field(&self) -> &FieldRef {
        self.local_form.field()
    }

    pub fn is_corner(&self) -> bool {
        self.hosts.len() == 2
    }

    pub fn host_index(&self, component: usize) -> Option<usize> {
        self.hosts.iter().position(|h| h.component == component)
    }
}

fn host_data(
    w: &DiffForm,
    class: &SingClass,
    hosts: &[Host],
    dicritical: &dyn Fn(usize) -> bool,
) -> Result<Vec<HostData>> {
    let mut out = Vec::with_capacity(hosts.len());
    let dirs = match class {
        SingClass::SaddleNode { .. } => {
            let l = w.linear_part()?;
            Some((
                saddle_node_direction(&l, Direction::Strong)?,
                saddle_node_direction(&l, Direction::Weak)?,
            ))
        }
        _ => None,
    };
    for h in hosts {
        let tangent = h.axis.tangent(w);
        let separatrix = match &dirs {
            Some((s, wk)) => {
                if parallel(&tangent, s)? {
                    Some(Direction::Strong)
                } else if parallel(&tangent, wk)? {
                    Some(Direction::Weak)
                } else {
                    None
                }
            }
            None => None,
        };
        let cs = if dicritical(h.component) {
            None
        } else {
            Some(cs_along_axis(w, h.axis)?)
        };
        out.push(HostData { cs, separatrix });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlowupStep {
    pub step: usize,
    pub component: usize,
    /// Components through the centre.
    pub center_hosts: Vec<usize>,
    pub center: Option<Location>,
    pub multiplicity: u32,
    pub dicritical: bool,
    /// Number of conjugate centres blown up at once.
    pub conjugates: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TraceEnd {
    Singular(usize),
    /// Leaves the divisor through a regular point of the component born at
    /// this step.
    Regular(usize),
}

/// Where the strict transform of a tracked invariant curve ends up.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatrixTrace {
    pub label: String,
    pub ends: Vec<TraceEnd>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TreeFlag {
    /// A singular point at a corner with a dicritical component.
    DicriticalCorner(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionTree {
    pub components: Vec<DivisorComponent>,
    pub corners: Vec<(usize, usize)>,
    pub points: Vec<SingularPoint>,
    pub steps: Vec<BlowupStep>,
    pub separatrices: Vec<SeparatrixTrace>,
    pub flags: Vec<TreeFlag>,
    pub jets: JetOrder,
}

impl ReductionTree {
    /// Assemble a tree from parts, e.g. for synthetic configurations.
    pub fn from_parts(
        components: Vec<DivisorComponent>,
        corners: Vec<(usize, usize)>,
        points: Vec<SingularPoint>,
    ) -> Self {
        let mut corners: Vec<(usize, usize)> =
            corners.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        corners.sort();
        Self {
            components,
            corners,
            points,
            steps: Vec::new(),
            separatrices: Vec::new(),
            flags: Vec::new(),
            jets: JetOrder::default(),
        }
    }

    pub fn component(&self, id: usize) -> Option<&DivisorComponent> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn neighbours(&self, id: usize) -> Vec<usize> {
        self.corners
            .iter()
            .filter_map(|&(a, b)| {
                if a == id {
                    Some(b)
                } else if b == id {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn points_on(&self, id: usize) -> impl Iterator<Item = &SingularPoint> {
        self.points.iter().filter(move |p| p.host_index(id).is_some())
    }

    /// Connected and acyclic on component families.
    pub fn is_tree(&self) -> bool {
        let n = self.components.len();
        if n == 0 {
            return self.corners.is_empty();
        }
        if self.corners.len() != n - 1 {
            return false;
        }
        let mut seen = alloc::vec![self.components[0].id];
        let mut stack = alloc::vec![self.components[0].id];
        while let Some(c) = stack.pop() {
            for d in self.neighbours(c) {
                if !seen.contains(&d) {
                    seen.push(d);
                    stack.push(d);
                }
            }
        }
        seen.len() == n
    }
}

#[derive(Clone, Debug)]
pub struct ReduceOptions {
    pub max_steps: usize,
    pub jets: JetOrder,
    /// Extra invariant curves whose strict transforms are tracked.
    pub curves: Vec<(String, Poly2)>,
    /// Blow up the origin even if it is already reduced.
    pub force_initial_blowup: bool,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        Self {
            max_steps: 64,
            jets: JetOrder::default(),
            curves: Vec::new(),
            force_initial_blowup: false,
        }
    }
}

#[derive(Clone, Debug)]
struct Work {
    form: DiffForm,
    hosts: Vec<Host>,
    location: Option<Location>,
    curves: Vec<(usize, Poly2)>,
    first: bool,
}

impl Work {
    fn field(&self) -> &FieldRef {
        self.form.field()
    }

    fn branch(&self, ev: &crate::algebra::field::SplitEvent) -> Result<(Work, Work)> {
        if ev.parent != *self.field().modulus() {
            return Err(Error::Split(ev.clone()));
        }
        let (fa, fb) = self.field().branch(ev);
        let mk = |f: &FieldRef| Work {
            form: self.form.reduce_into(f),
            hosts: self
                .hosts
                .iter()
                .map(|h| Host {
                    component: h.component,
                    axis: h.axis,
                    generator_image: h.generator_image.reduce_into(f),
                })
                .collect(),
            location: self.location.as_ref().map(|l| Location {
                step: l.step,
                chart: l.chart,
                coordinate: l.coordinate.reduce_into(f),
            }),
            curves: self.curves.iter().map(|(i, c)| (*i, c.reduce_into(f))).collect(),
            first: self.first,
        };
        Ok((mk(&fa), mk(&fb)))
    }
}

enum Outcome {
    Final(SingularPoint),
    Regular(Vec<usize>),
    Blowup(Plan),
}

struct Plan {
    nu: u32,
    dicritical: bool,
    decrements: Vec<(usize, i64)>,
    conjugates: usize,
    children: Vec<Work>,
}

struct State {
    components: Vec<DivisorComponent>,
    corners: Vec<(usize, usize)>,
    points: Vec<SingularPoint>,
    steps: Vec<BlowupStep>,
    traces: Vec<SeparatrixTrace>,
    flags: Vec<TreeFlag>,
}

impl State {
    fn is_dicritical(&self, id: usize) -> bool {
        self.components.iter().any(|c| c.id == id && c.dicritical)
    }

    fn tree(&self, jets: JetOrder) -> ReductionTree {
        let mut corners = self.corners.clone();
        corners.sort();
        ReductionTree {
            components: self.components.clone(),
            corners,
            points: self.points.clone(),
            steps: self.steps.clone(),
            separatrices: self.traces.clone(),
            flags: self.flags.clone(),
            jets,
        }
    }
}

/// Minimal reduction: blow up every point that is not reduced, and every
/// point of a dicritical component where the foliation is tangent to it.
/// The axes `{x = 0}` and `{y = 0}` are tracked when invariant.
pub fn reduce(w: &DiffForm, opts: &ReduceOptions) -> Result<ReductionTree> {
    let (w0, _) = w.normalize_primitive()?;
    if !w0.is_singular_at_origin()? {
        return Err(Error::RegularPoint);
    }
    let f = w0.field().clone();
    let mut traces = Vec::new();
    let mut curves = Vec::new();
    let mut candidates: Vec<(String, Poly2)> = alloc::vec![
        ("x=0".into(), Poly2::x(&f)),
        ("y=0".into(), Poly2::y(&f)),
    ];
    candidates.extend(opts.curves.iter().cloned());
    for (label, c) in candidates {
        let explicit = !(label == "x=0" || label == "y=0") || opts.curves.iter().any(|(l, _)| *l == label);
        if w0.is_invariant_curve(&c)? {
            curves.push((traces.len(), c));
            traces.push(SeparatrixTrace {
                label,
                ends: Vec::new(),
            });
        } else if explicit {
            return Err(Error::NotInvariant);
        }
    }
    let mut st = State {
        components: Vec::new(),
        corners: Vec::new(),
        points: Vec::new(),
        steps: Vec::new(),
        traces,
        flags: Vec::new(),
    };
    let mut queue = VecDeque::new();
    queue.push_back(Work {
        form: w0,
        hosts: Vec::new(),
        location: None,
        curves,
        first: true,
    });
    while let Some(work) = queue.pop_front() {
        let next_id = st.components.len() + 1;
        let outcome = process(&work, next_id, &st, opts);
        match outcome {
            Err(Error::Split(ev)) => {
                let (a, b) = work.branch(&ev)?;
                queue.push_front(b);
                queue.push_front(a);
            }
            Err(e) => return Err(e),
            Ok(Outcome::Final(mut pt)) => {
                pt.id = st.points.len();
                for (ci, _) in &work.curves {
                    st.traces[*ci].ends.push(TraceEnd::Singular(pt.id));
                }
                if pt.hosts.len() == 2 && pt.hosts.iter().any(|h| st.is_dicritical(h.component)) {
                    st.flags.push(TreeFlag::DicriticalCorner(pt.id));
                }
                st.points.push(pt);
            }
            Ok(Outcome::Regular(cs)) => {
                let step = work.location.as_ref().map(|l| l.step).unwrap_or(0);
                for ci in cs {
                    st.traces[ci].ends.push(TraceEnd::Regular(step));
                }
            }
            Ok(Outcome::Blowup(plan)) => {
                if st.steps.len() >= opts.max_steps {
                    let steps = st.steps.len();
                    return Err(Error::MaxStepsExceeded {
                        steps,
                        partial: Box::new(st.tree(opts.jets)),
                    });
                }
                let step = st.steps.len() + 1;
                for (c, d) in &plan.decrements {
                    if let Some(comp) = st.components.iter_mut().find(|x| x.id == *c) {
                        comp.self_intersection -= d;
                    }
                }
                let hosts: Vec<usize> = work.hosts.iter().map(|h| h.component).collect();
                if hosts.len() == 2 {
                    let pair = (hosts[0].min(hosts[1]), hosts[0].max(hosts[1]));
                    st.corners.retain(|p| *p != pair);
                }
                for h in &hosts {
                    st.corners.push(((*h).min(next_id), (*h).max(next_id)));
                }
                st.components.push(DivisorComponent {
                    id: next_id,
                    birth_step: step,
                    self_intersection: -1,
                    dicritical: plan.dicritical,
                    field: work.field().clone(),
                });
                st.steps.push(BlowupStep {
                    step,
                    component: next_id,
                    center_hosts: hosts,
                    center: work.location.clone(),
                    multiplicity: plan.nu,
                    dicritical: plan.dicritical,
                    conjugates: plan.conjugates,
                });
                for c in plan.children {
                    queue.push_back(c);
                }
            }
        }
    }
    Ok(st.tree(opts.jets))
}

fn process(work: &Work, next_id: usize, st: &State, opts: &ReduceOptions) -> Result<Outcome> {
    let w = &work.form;
    let singular = w.is_singular_at_origin()?;
    let force = work.first && opts.force_initial_blowup;
    if !singular && !force {
        let mut tangent = false;
        for h in &work.hosts {
            if st.is_dicritical(h.component) {
                let c = match h.axis {
                    Axis::X => w.b().constant_term(),
                    Axis::Y => w.a().constant_term(),
                };
                if c.test_zero()? {
                    tangent = true;
                }
            }
        }
        if !tangent {
            return Ok(Outcome::Regular(work.curves.iter().map(|c| c.0).collect()));
        }
    } else if singular && !force {
        let is_dicritical = |id: usize| st.is_dicritical(id);
        let pt = SingularPoint::new(
            0,
            work.hosts.clone(),
            work.location.clone(),
            w.clone(),
            &is_dicritical,
            opts.jets,
        )?;
        if pt.class.is_reduced() {
            return Ok(Outcome::Final(pt));
        }
    }
    plan_blowup(work, next_id, st)
}

fn plan_blowup(work: &Work, next_id: usize, st: &State) -> Result<Outcome> {
    let w = &work.form;
    let k = w.field().clone();
    let bu = if w.is_singular_at_origin()? {
        blowup_point(w)?
    } else {
        regular_blowup(w)?
    };
    let step = st.steps.len() + 1;
    let mut decrements = Vec::new();
    for h in &work.hosts {
        let fc = &st
            .components
            .iter()
            .find(|c| c.id == h.component)
            .expect("host exists")
            .field;
        decrements.push((h.component, relative_degree(&h.generator_image, fc)?));
    }
    let old_x = work.hosts.iter().find(|h| h.axis == Axis::X);
    let old_y = work.hosts.iter().find(|h| h.axis == Axis::Y);
    let mut children = Vec::new();

    let edge = if bu.dicritical {
        bu.chart_x.b().at_x0()
    } else {
        bu.chart_x.a().at_x0()
    };
    for r in divisor_roots(&edge)? {
        let l = r.field.clone();
        let form = if NumberField::same(&l, &k) {
            bu.chart_x.clone()
        } else {
            bu.chart_x.map_generator(&r.generator_image)
        }
        .translate_origin(&l.zero(), &r.root);
        let mut hosts = alloc::vec![Host {
            component: next_id,
            axis: Axis::X,
            generator_image: r.generator_image.clone(),
        }];
        if r.is_zero {
            if let Some(h) = old_y {
                hosts.push(Host {
                    component: h.component,
                    axis: Axis::Y,
                    generator_image: h.generator_image.map_generator(&r.generator_image),
                });
            }
        }
        let mut curves = Vec::new();
        for (ci, c) in &work.curves {
            let st_c = strict_transform(c, Chart::X);
            let st_c = if NumberField::same(&l, &k) {
                st_c
            } else {
                st_c.map_generator(&r.generator_image)
            }
            .translate(&l.zero(), &r.root);
            if st_c.constant_term().test_zero()? {
                curves.push((*ci, st_c));
            }
        }
        children.push(Work {
            form,
            hosts,
            location: Some(Location {
                step,
                chart: Chart::X,
                coordinate: r.root.clone(),
            }),
            curves,
            first: false,
        });
    }

    let at_u0 = if bu.dicritical {
        bu.chart_y.a().constant_term().test_zero()?
    } else {
        bu.chart_y.is_singular_at_origin()?
    };
    if at_u0 {
        let mut hosts = alloc::vec![Host {
            component: next_id,
            axis: Axis::Y,
            generator_image: k.generator(),
        }];
        if let Some(h) = old_x {
            hosts.push(h.clone());
        }
        let mut curves = Vec::new();
        for (ci, c) in &work.curves {
            let st_c = strict_transform(c, Chart::Y);
            if st_c.constant_term().test_zero()? {
                curves.push((*ci, st_c));
            }
        }
        children.push(Work {
            form: bu.chart_y.clone(),
            hosts,
            location: Some(Location {
                step,
                chart: Chart::Y,
                coordinate: k.zero(),
            }),
            curves,
            first: false,
        });
    }
    Ok(Outcome::Blowup(Plan {
        nu: bu.nu,
        dicritical: bu.dicritical,
        decrements,
        conjugates: k.degree(),
        children,
    }))
}

/// The chart y form rewritten through `(u, w) = (1/v, x v)` agrees with the
/// chart x form up to a monomial and a constant.
pub fn charts_coherent(b: &BlowupCharts) -> Result<bool> {
    let cy = &b.chart_y;
    let k = cy.field().clone();
    let m = cy
        .a()
        .terms()
        .chain(cy.b().terms())
        .map(|(&(i, _), _)| i)
        .max()
        .unwrap_or(0)
        + 2;
    // v^e p(1/v, x v) with e - i >= 0 for every term
    let sub = |p: &Poly2, e: u32| -> Poly2 {
        let mut acc = Poly2::zero(&k);
        for (&(i, j), c) in p.terms() {
            acc = &acc + &Poly2::monomial(c.clone(), j, e + j - i);
        }
        acc
    };
    let x = Poly2::x(&k);
    let a_dx = sub(cy.b(), m + 1);
    let a_dv = &(&x * &sub(cy.b(), m)) - &sub(cy.a(), m - 2);
    let (l, _) = DiffForm::new(a_dx, a_dv)?.normalize_primitive()?;
    let (r, _) = b.chart_x.normalize_primitive()?;
    let (l, r) = (strip_monomial(&l), strip_monomial(&r));
    let lead = |w: &DiffForm| -> FieldElem {
        let p = if w.a().is_zero() { w.b() } else { w.a() };
        p.terms().next_back().map(|t| t.1.clone()).expect("nonzero")
    };
    let (cl, cr) = (lead(&l), lead(&r));
    Ok(l.a().scale(&cr) == r.a().scale(&cl) && l.b().scale(&cr) == r.b().scale(&cl))
}

fn strip_monomial(w: &DiffForm) -> DiffForm {
    let (a1, b1) = w.a().monomial_content();
    let (a2, b2) = w.b().monomial_content();
    let (i, j) = match (w.a().is_zero(), w.b().is_zero()) {
        (true, _) => (a2, b2),
        (_, true) => (a1, b1),
        _ => (a1.min(a2), b1.min(b2)),
    };
    w.div_monomial(i, j).expect("content")
}

/// Blow-up of a regular point, used for tangencies with a dicritical divisor.
fn regular_blowup(w: &DiffForm) -> Result<BlowupCharts> {
    let f = w.field();
    let x = Poly2::x(f);
    let y = Poly2::y(f);
    let xv = &x * &y;
    let chart_x = w.pullback(&x, &xv);
    let chart_y = w.pullback(&xv, &y);
    Ok(BlowupCharts {
        chart_x: chart_x.normalize_primitive()?.0,
        chart_y: chart_y.normalize_primitive()?.0,
        dicritical: false,
        nu: 0,
    })
}

pub fn strict_transform(c: &Poly2, chart: Chart) -> Poly2 {
    let f = c.field();
    let x = Poly2::x(f);
    let y = Poly2::y(f);
    let m = c.ord().unwrap_or(0);
    match chart {
        Chart::X => c.subst(&x, &(&x * &y)).div_monomial(m, 0),
        Chart::Y => c.subst(&(&x * &y), &y).div_monomial(0, m),
    }
    .expect("order divides")
}

/// Number of conjugates of a point lying on one copy of a host component,
/// checked to be the same for every copy.
fn relative_degree(image: &FieldElem, fc: &FieldRef) -> Result<i64> {
    let kp = image.field();
    let (dk, dc) = (kp.degree(), fc.degree());
    let heterogeneous = || {
        Error::Unsupported(alloc::format!(
            "conjugate family over ({}) is not homogeneous over ({})",
            kp.modulus(),
            fc.modulus()
        ))
    };
    if dk % dc != 0 {
        return Err(heterogeneous());
    }
    let r = (dk / dc) as i64;
    let mut pw = kp.one();
    let mut base = fc.one();
    let t = fc.generator();
    for _ in 0..dc {
        if pw.trace() != base.trace() * int(r) {
            return Err(heterogeneous());
        }
        pw = &pw * image;
        base = &base * &t;
    }
    Ok(r)
}

#[derive(Clone, Debug)]
struct DivisorRoot {
    field: FieldRef,
    generator_image: FieldElem,
    root: FieldElem,
    is_zero: bool,
}

/// Roots of a polynomial over `K`, each in a field containing an image of `K`.
fn divisor_roots(g: &XPoly) -> Result<Vec<DivisorRoot>> {
    let g = g.normalized()?;
    let Some(lead) = g.lead() else {
        return Err(Error::Unsupported("divisor made of singular points".into()));
    };
    let k = lead.field().clone();
    let mut out = Vec::new();
    let mut e = 0;
    for c in g.coeffs() {
        if c.test_zero()? {
            e += 1;
        } else {
            break;
        }
    }
    let rest = UPoly::new(g.coeffs()[e..].to_vec());
    if e > 0 {
        out.push(DivisorRoot {
            field: k.clone(),
            generator_image: k.generator(),
            root: k.zero(),
            is_zero: true,
        });
    }
    if rest.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let rational: Option<Vec<Rational>> = rest.coeffs().iter().map(|c| c.as_rational()).collect();
    let residual: XPoly = match rational {
        Some(q) => {
            let split = rational_roots(&UPoly::new(q))?;
            for (r, _) in split.roots {
                out.push(DivisorRoot {
                    field: k.clone(),
                    generator_image: k.generator(),
                    root: k.from_rational(r),
                    is_zero: false,
                });
            }
            split.residual.map(|c| k.from_rational(c.clone()))
        }
        None => rest.squarefree_part()?,
    };
    if residual.degree().unwrap_or(0) > 0 {
        for a in adjoin_roots(&residual)? {
            out.push(DivisorRoot {
                field: a.field,
                generator_image: a.generator_image,
                root: a.root,
                is_zero: false,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn q() -> FieldRef {
        NumberField::rationals()
    }

    fn p(t: &[(u32, u32, i64)]) -> Poly2 {
        Poly2::from_int_terms(&q(), t)
    }

    fn form(a: &[(u32, u32, i64)], b: &[(u32, u32, i64)]) -> DiffForm {
        DiffForm::new(p(a), p(b)).unwrap()
    }

    fn omega1() -> DiffForm {
        form(&[(1, 0, 1), (0, 1, -1)], &[(1, 0, 1)])
    }

    /// (x/n - y^n) dx + n x y^{n-1} dy
    fn omega_n(n: u32) -> DiffForm {
        let k = q();
        let a = Poly2::from_terms(&k, [(1, 0, rat(1, n as i64)), (0, n, rat(-1, 1))]);
        let b = Poly2::from_terms(&k, [(1, n - 1, rat(n as i64, 1))]);
        DiffForm::new(a, b).unwrap()
    }

    #[test]
    fn charts_of_omega1() {
        let b = blowup_point(&omega1()).unwrap();
        assert!(!b.dicritical);
        assert_eq!(b.nu, 1);
        assert_eq!(b.chart_y, form(&[(1, 1, 1), (0, 1, -1)], &[(2, 0, 1)]));
    }

    #[test]
    fn charts_of_model_saddle_node() {
        let w0 = form(&[(0, 1, -1)], &[(2, 0, 1)]);
        let b = blowup_point(&w0).unwrap();
        assert!(!b.dicritical);
        assert_eq!(b.chart_x, form(&[(1, 1, 1), (0, 1, -1)], &[(2, 0, 1)]));
    }

    #[test]
    fn radial_is_dicritical() {
        let r = form(&[(0, 1, -1)], &[(1, 0, 1)]);
        let b = blowup_point(&r).unwrap();
        assert!(b.dicritical);
        assert_eq!(b.chart_x, form(&[], &[(0, 0, 1)]));
        let t = reduce(&r, &ReduceOptions::default()).unwrap();
        assert_eq!(t.components.len(), 1);
        assert!(t.components[0].dicritical);
        assert!(t.points.is_empty());
    }

    #[test]
    fn reduce_omega1() {
        let t = reduce(&omega1(), &ReduceOptions::default()).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.components.len(), 1);
        assert_eq!(t.components[0].self_intersection, -1);
        assert_eq!(t.points.len(), 1);
        assert_eq!(t.points[0].class, SingClass::SaddleNode { k: 1, mu: q().from_int(-1) });
        assert_eq!(t.points[0].host_data[0].separatrix, Some(Direction::Weak));
        let sx = t.separatrices.iter().find(|s| s.label == "x=0").unwrap();
        assert_eq!(sx.ends, [TraceEnd::Singular(0)]);
    }

    #[test]
    fn reduce_omega_n_chain() {
        for n in 1..=5u32 {
            let t = reduce(&omega_n(n), &ReduceOptions::default()).unwrap();
            assert_eq!(t.steps.len(), n as usize, "n = {n}");
            let chern: Vec<i64> = t.components.iter().map(|c| c.self_intersection).collect();
            let mut expect = alloc::vec![-2; n as usize - 1];
            expect.push(-1);
            assert_eq!(chern, expect, "n = {n}");
            assert!(t.is_tree());
            let sn: Vec<&SingularPoint> = t
                .points
                .iter()
                .filter(|p| matches!(p.class, SingClass::SaddleNode { .. }))
                .collect();
            assert_eq!(sn.len(), 1);
            assert_eq!(
                sn[0].class,
                SingClass::SaddleNode { k: 1, mu: q().from_rational(rat(-1, n as i64)) }
            );
        }
    }

    #[test]
    fn forced_blowup_of_model_saddle_node() {
        let w0 = form(&[(0, 1, -1)], &[(2, 0, 1)]);
        assert!(reduce(&w0, &ReduceOptions::default()).unwrap().steps.is_empty());
        let opts = ReduceOptions {
            force_initial_blowup: true,
            ..Default::default()
        };
        let t = reduce(&w0, &opts).unwrap();
        assert_eq!(t.points.len(), 2);
        let sn = t.points.iter().find(|p| matches!(p.class, SingClass::SaddleNode { .. })).unwrap();
        assert_eq!(sn.host_data[0].separatrix, Some(Direction::Strong));
        assert_eq!(sn.host_data[0].cs, Some(q().zero()));
    }

    #[test]
    fn quadratic_points() {
        // d(x (y^2 - 2 x^2))
        let w = form(&[(0, 2, 1), (2, 0, -6)], &[(1, 1, 2)]);
        let t = reduce(&w, &ReduceOptions::default()).unwrap();
        assert_eq!(t.steps.len(), 1);
        let degs: Vec<usize> = t.points.iter().map(|p| p.field().degree()).collect();
        assert_eq!(degs.iter().sum::<usize>(), 3);
        for p in &t.points {
            let cs = p.host_data[0].cs.clone().unwrap();
            assert_eq!(cs.as_rational(), Some(rat(-1, 3)));
        }
    }

    #[test]
    fn split_fields() {
        // (y^2 - 2x^2)(y^2 - 3x^2)^2 as a first integral, divided by y^2 - 3x^2
        let g = p(&[(0, 2, 1), (2, 0, -2)]);
        let h = p(&[(0, 2, 1), (2, 0, -3)]);
        let a = &(&h * &g.dx()) + &(&g * &h.dx()).scale_rational(&rat(2, 1));
        let b = &(&h * &g.dy()) + &(&g * &h.dy()).scale_rational(&rat(2, 1));
        let w = DiffForm::new(a, b).unwrap();
        let t = reduce(&w, &ReduceOptions::default()).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert!(t.points.iter().any(|p| !p.field().history().is_empty()));
        let mut cs: Vec<Rational> = t
            .points
            .iter()
            .map(|p| p.host_data[0].cs.clone().unwrap().as_rational().unwrap())
            .collect();
        cs.sort();
        assert_eq!(cs, [rat(-1, 3), rat(-1, 6)]);
    }

    #[test]
    fn cusp() {
        // d(y^2 - x^3)
        let w = form(&[(2, 0, -3)], &[(0, 1, 2)]);
        let t = reduce(&w, &ReduceOptions::default()).unwrap();
        assert_eq!(t.steps.len(), 3);
        let chern: Vec<i64> = t.components.iter().map(|c| c.self_intersection).collect();
        assert_eq!(chern, [-3, -2, -1]);
        assert!(t.is_tree());
    }

    #[test]
    fn chart_transition() {
        for w in [omega1(), omega_n(3), form(&[(0, 1, -1)], &[(2, 0, 1)])] {
            let b = blowup_point(&w).unwrap();
            assert!(charts_coherent(&b).unwrap());
        }
        let mut wrong = blowup_point(&omega1()).unwrap();
        wrong.chart_x = blowup_point(&omega_n(2)).unwrap().chart_x;
        assert!(!charts_coherent(&wrong).unwrap());
    }
}
