//! JSON and DOT views of a reduction tree. Field elements are written
//! exactly: a rational as the string `"p/q"`, an element of `Q[t]/(m)` as its
//! coefficient vector together with `m`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use foliate_core::algebra::rational::Rational;
use foliate_core::analysis::{
    branch_report, cs_check, strongly_presentable, BranchReport, CsReport, CsStatus, DeadBranch,
};
use foliate_core::blowup::{Chart, ReductionTree, SingularPoint, TreeFlag};
use foliate_core::localtypes::{Axis, CsPair, Direction, RatioKind, RatioValue, SingClass};
use foliate_core::{FieldElem, FieldRef, UPoly};
use num_traits::One;
use serde::Serialize;

pub fn rational_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn upoly_string(p: &UPoly<Rational>) -> String {
    let mut parts = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c == &Rational::from_integer(0.into()) {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        };
        let c = rational_string(c);
        parts.push(match (mono.is_empty(), c.as_str()) {
            (true, _) => c,
            (false, "1") => mono,
            (false, "-1") => format!("-{mono}"),
            _ => format!("{c} {mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ExactValue {
    Rational(String),
    Algebraic { modulus: String, coefficients: Vec<String> },
}

impl ExactValue {
    pub fn of(e: &FieldElem) -> Self {
        match e.as_rational() {
            Some(q) => ExactValue::Rational(rational_string(&q)),
            None => ExactValue::Algebraic {
                modulus: upoly_string(e.field().modulus()),
                coefficients: e.coeff_vec().iter().map(rational_string).collect(),
            },
        }
    }
}

fn field_string(f: &FieldRef) -> String {
    if f.is_rational() {
        "Q".into()
    } else {
        format!("Q[t]/({})", upoly_string(f.modulus()))
    }
}

#[derive(Debug, Serialize)]
pub struct ComponentDoc {
    pub id: usize,
    pub chern: i64,
    pub dicritical: bool,
    pub birth_step: usize,
    /// Conjugate copies are indexed by this field.
    pub field: String,
}

#[derive(Debug, Serialize)]
pub struct LocationDoc {
    pub step: usize,
    pub chart: &'static str,
    pub field: String,
    pub coordinate: ExactValue,
}

#[derive(Debug, Serialize)]
pub struct HostDoc {
    pub component: usize,
    pub axis: &'static str,
}

#[derive(Debug, Serialize)]
pub struct SingularityDoc {
    pub id: usize,
    pub hosts: Vec<HostDoc>,
    pub chart: Option<&'static str>,
    pub location: Option<LocationDoc>,
    pub class: &'static str,
    pub data: BTreeMap<&'static str, serde_json::Value>,
    pub cs: BTreeMap<String, Option<ExactValue>>,
    pub separatrix: BTreeMap<String, &'static str>,
}

#[derive(Debug, Serialize)]
pub struct BranchDoc {
    pub chain: Vec<usize>,
    pub extremity: usize,
    pub attaching_component: usize,
    pub attachment_point: usize,
    pub attached_to: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct CsComponentDoc {
    pub component: usize,
    pub sum: Option<ExactValue>,
    pub self_intersection: i64,
    pub status: &'static str,
}

#[derive(Debug, Serialize)]
pub struct CsCheckDoc {
    pub passed: bool,
    pub components: Vec<CsComponentDoc>,
}

#[derive(Debug, Serialize)]
pub struct TreeDocument {
    pub blowups: usize,
    pub components: Vec<ComponentDoc>,
    pub corners: Vec<[usize; 2]>,
    pub singularities: Vec<SingularityDoc>,
    pub branches: Vec<BranchDoc>,
    pub initial_components: Vec<usize>,
    pub dicritical_contacts: Vec<usize>,
    pub strongly_presentable: bool,
    pub cs_check: CsCheckDoc,
    pub flags: Vec<String>,
}

fn chart_name(c: Chart) -> &'static str {
    match c {
        Chart::X => "x",
        Chart::Y => "y",
    }
}

fn kind_name(k: RatioKind) -> &'static str {
    match k {
        RatioKind::RationalPositive => "rational-positive",
        RatioKind::RationalNegative => "rational-negative",
        RatioKind::IrrationalRealPositive => "irrational-real-positive",
        RatioKind::IrrationalRealNegative => "irrational-real-negative",
        RatioKind::NonReal => "non-real",
        RatioKind::AlgebraicConjugates => "algebraic-conjugates",
    }
}

pub fn class_doc(class: &SingClass) -> (&'static str, BTreeMap<&'static str, serde_json::Value>) {
    let mut data = BTreeMap::new();
    let j = |e: &FieldElem| serde_json::to_value(ExactValue::of(e)).expect("serializable");
    let name = match class {
        SingClass::Regular => "regular",
        SingClass::ReducedNonDegenerate { ratio, cs } => {
            data.insert("s", j(&ratio.s));
            data.insert("kind", kind_name(ratio.kind).into());
            if let RatioValue::Rational(l, m) = &ratio.value {
                data.insert("lambda", serde_json::json!([rational_string(l), rational_string(m)]));
            }
            data.insert("linearizability_undecided", ratio.linearizability_undecided.into());
            if let CsPair::Named(pair) = cs {
                data.insert("cs_pair", serde_json::Value::Array(pair.iter().map(|p| j(&p.cs)).collect()));
            }
            "non-degenerate"
        }
        SingClass::SaddleNode { k, mu } => {
            data.insert("k", (*k).into());
            data.insert("mu", j(mu));
            "saddle-node"
        }
        SingClass::NonReduced { reason } => {
            data.insert("reason", format!("{reason:?}").into());
            "non-reduced"
        }
    };
    (name, data)
}

fn singularity(p: &SingularPoint) -> SingularityDoc {
    let (class, data) = class_doc(&p.class);
    let mut cs = BTreeMap::new();
    let mut separatrix = BTreeMap::new();
    for (h, d) in p.hosts.iter().zip(&p.host_data) {
        cs.insert(h.component.to_string(), d.cs.as_ref().map(ExactValue::of));
        if let Some(s) = d.separatrix {
            separatrix.insert(
                h.component.to_string(),
                match s {
                    Direction::Strong => "strong",
                    Direction::Weak => "weak",
                },
            );
        }
    }
    SingularityDoc {
        id: p.id,
        hosts: p
            .hosts
            .iter()
            .map(|h| HostDoc {
                component: h.component,
                axis: match h.axis {
                    Axis::X => "x=0",
                    Axis::Y => "y=0",
                },
            })
            .collect(),
        chart: p.location.as_ref().map(|l| chart_name(l.chart)),
        location: p.location.as_ref().map(|l| LocationDoc {
            step: l.step,
            chart: chart_name(l.chart),
            field: field_string(l.coordinate.field()),
            coordinate: ExactValue::of(&l.coordinate),
        }),
        class,
        data,
        cs,
        separatrix,
    }
}

pub fn branch_doc(b: &DeadBranch) -> BranchDoc {
    BranchDoc {
        chain: b.chain.clone(),
        extremity: b.extremity,
        attaching_component: b.attaching_component,
        attachment_point: b.attachment_point,
        attached_to: b.attached_to,
    }
}

pub fn cs_doc(r: &CsReport) -> CsCheckDoc {
    CsCheckDoc {
        passed: r.passed(),
        components: r
            .components
            .iter()
            .map(|c| CsComponentDoc {
                component: c.component,
                sum: c.sum.as_ref().map(ExactValue::of),
                self_intersection: c.self_intersection,
                status: match c.status {
                    CsStatus::Pass => "pass",
                    CsStatus::Fail => "fail",
                    CsStatus::SkippedDicritical => "skipped-dicritical",
                },
            })
            .collect(),
    }
}

impl TreeDocument {
    pub fn build(tree: &ReductionTree) -> foliate_core::Result<Self> {
        let cs = cs_check(tree)?;
        let BranchReport { branches, initial_components, dicritical_contacts } = branch_report(tree);
        let mut components: Vec<ComponentDoc> = tree
            .components
            .iter()
            .map(|c| ComponentDoc {
                id: c.id,
                chern: c.self_intersection,
                dicritical: c.dicritical,
                birth_step: c.birth_step,
                field: field_string(&c.field),
            })
            .collect();
        components.sort_by_key(|c| c.id);
        let mut singularities: Vec<SingularityDoc> = tree.points.iter().map(singularity).collect();
        singularities.sort_by_key(|s| s.id);
        Ok(Self {
            blowups: tree.steps.len(),
            components,
            corners: tree.corners.iter().map(|&(a, b)| [a, b]).collect(),
            singularities,
            branches: branches.iter().map(branch_doc).collect(),
            initial_components,
            dicritical_contacts,
            strongly_presentable: strongly_presentable(tree).strongly_presentable,
            cs_check: cs_doc(&cs),
            flags: tree
                .flags
                .iter()
                .map(|f| match f {
                    TreeFlag::DicriticalCorner(p) => format!("dicritical-corner:{p}"),
                })
                .collect(),
        })
    }
}

fn exact_text(v: &Option<ExactValue>) -> String {
    match v {
        None => "-".into(),
        Some(ExactValue::Rational(s)) => s.clone(),
        Some(ExactValue::Algebraic { modulus, coefficients }) => {
            format!("[{}] mod {}", coefficients.join(", "), modulus)
        }
    }
}

/// Dual graph: one node per component family labelled with its Chern class,
/// one edge per corner; dicritical components are boxes. Singular points
/// are listed in the label of their components.
pub fn dot(doc: &TreeDocument) -> String {
    let mut out = String::from("graph reduction {\n  node [fontname=\"Helvetica\"];\n");
    for c in &doc.components {
        let mut label = format!("E{} ({})", c.id, c.chern);
        if c.field != "Q" {
            let _ = write!(label, "\\nover {}", c.field);
        }
        for s in &doc.singularities {
            if let Some(v) = s.cs.get(&c.id.to_string()) {
                let _ = write!(label, "\\np{} {} cs={}", s.id, s.class, exact_text(v));
            }
        }
        let shape = if c.dicritical { "box" } else { "ellipse" };
        let _ = writeln!(out, "  c{} [label=\"{}\", shape={}];", c.id, label, shape);
    }
    for [a, b] in &doc.corners {
        let _ = writeln!(out, "  c{a} -- c{b};");
    }
    out.push_str("}\n");
    out
}
