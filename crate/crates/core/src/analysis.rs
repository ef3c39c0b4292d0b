//! Global checks on a reduction tree.
//!
//! A component family over a field `F` stands for `[F : Q]` conjugate
//! components; a point family over `K` on it contributes `[K : F]` points to
//! each copy. Counts below are per copy.

use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::field::{FieldElem, FieldRef};
use crate::algebra::linalg::{self, Matrix};
use crate::algebra::rational::{int, Rational};
use crate::algebra::upoly::UPoly;
use crate::blowup::{ReductionTree, SingularPoint};
use crate::error::Result;
use crate::localtypes::{cs_along_axis, cs_from_linear_part, Direction, RatioKind, SingClass};

#[derive(Clone, Debug, PartialEq)]
pub struct CsEntry {
    pub point: usize,
    pub cs: FieldElem,
    /// The same index recomputed from the eigenvalues (or `mu`).
    pub from_linear_part: Option<FieldElem>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CsStatus {
    Pass,
    Fail,
    SkippedDicritical,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentCs {
    pub component: usize,
    pub entries: Vec<CsEntry>,
    /// Sum over one copy of the component, as an element of its field.
    pub sum: Option<FieldElem>,
    pub self_intersection: i64,
    pub status: CsStatus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CsReport {
    pub components: Vec<ComponentCs>,
}

impl CsReport {
    pub fn passed(&self) -> bool {
        self.components.iter().all(|c| c.status != CsStatus::Fail)
    }
}

/// Recompute every Camacho-Sad index along every non-dicritical component and
/// compare the sums with the self-intersections.
pub fn cs_check(tree: &ReductionTree) -> Result<CsReport> {
    let mut out = Vec::new();
    for c in &tree.components {
        if c.dicritical {
            out.push(ComponentCs {
                component: c.id,
                entries: Vec::new(),
                sum: None,
                self_intersection: c.self_intersection,
                status: CsStatus::SkippedDicritical,
            });
            continue;
        }
        let mut entries = Vec::new();
        let mut parts = Vec::new();
        for p in tree.points_on(c.id) {
            let h = &p.hosts[p.host_index(c.id).unwrap()];
            let cs = cs_along_axis(&p.local_form, h.axis)?;
            let lin = if p.class.is_reduced() {
                Some(cs_from_linear_part(&p.local_form, h.axis, tree.jets)?)
            } else {
                None
            };
            parts.push((cs.clone(), h.generator_image.clone()));
            entries.push(CsEntry { point: p.id, cs, from_linear_part: lin });
        }
        let sum = relative_trace_sum(&c.field, &parts)?;
        let agree = entries
            .iter()
            .all(|e| e.from_linear_part.as_ref().map_or(true, |l| *l == e.cs));
        let ok = agree && sum == c.field.from_int(c.self_intersection);
        out.push(ComponentCs {
            component: c.id,
            entries,
            sum: Some(sum),
            self_intersection: c.self_intersection,
            status: if ok { CsStatus::Pass } else { CsStatus::Fail },
        });
    }
    Ok(CsReport { components: out })
}

/// `sum_P Tr_{K_P/F}(v_P)` where `image_P` is the generator of `F` inside `K_P`.
/// Solved from `Tr_F(s t^i) = sum_P Tr_{K_P}(v_P image_P^i)`.
pub fn relative_trace_sum(f: &FieldRef, parts: &[(FieldElem, FieldElem)]) -> Result<FieldElem> {
    let d = f.degree();
    if d == 1 {
        let total = parts.iter().fold(int(0), |acc, (v, _)| acc + v.trace());
        return Ok(f.from_rational(total));
    }
    let t = f.generator();
    let m: Matrix = (0..d)
        .map(|i| (0..d).map(|j| t.pow((i + j) as u32).trace()).collect())
        .collect();
    let rhs: Vec<Rational> = (0..d)
        .map(|i| {
            parts
                .iter()
                .fold(int(0), |acc, (v, g)| acc + (v * &g.pow(i as u32)).trace())
        })
        .collect();
    let s = linalg::solve(&m, &rhs)?;
    Ok(f.elem(UPoly::new(s)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeadBranch {
    /// From the extremity to the attaching component.
    pub chain: Vec<usize>,
    pub extremity: usize,
    pub attaching_component: usize,
    pub attachment_point: usize,
    /// The component on the other side of the attachment point, if it is a
    /// corner.
    pub attached_to: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BranchReport {
    pub branches: Vec<DeadBranch>,
    pub initial_components: Vec<usize>,
    /// Chains stopped at a dicritical component.
    pub dicritical_contacts: Vec<usize>,
}

struct Incidence {
    point: usize,
    count: usize,
    other: Option<usize>,
}

fn incidences(tree: &ReductionTree, c: usize) -> Vec<Incidence> {
    let fc = tree.component(c).map_or(1, |k| k.field.degree());
    tree.points_on(c)
        .map(|p: &SingularPoint| Incidence {
            point: p.id,
            count: (p.field().degree() / fc).max(1),
            other: p.hosts.iter().map(|h| h.component).find(|&k| k != c),
        })
        .collect()
}

/// Singular points on one copy of the component.
pub fn singularity_count(tree: &ReductionTree, c: usize) -> usize {
    incidences(tree, c).iter().map(|i| i.count).sum()
}

fn is_dicritical(tree: &ReductionTree, c: usize) -> bool {
    tree.component(c).map_or(false, |k| k.dicritical)
}

/// Maximal chains with one extremity and one attaching component.
pub fn detect_dead_branches(tree: &ReductionTree) -> BranchReport {
    let mut report = BranchReport::default();
    for start in &tree.components {
        if start.dicritical || singularity_count(tree, start.id) != 1 {
            continue;
        }
        let mut chain = alloc::vec![start.id];
        let mut cur = start.id;
        let mut via = incidences(tree, start.id).remove(0);
        let branch = loop {
            let Some(x) = via.other else {
                break Some((via.point, None));
            };
            if is_dicritical(tree, x) {
                report.dicritical_contacts.push(start.id);
                break Some((via.point, Some(x)));
            }
            match singularity_count(tree, x) {
                1 => break None,
                2 => {
                    let next = incidences(tree, x).into_iter().find(|i| i.point != via.point);
                    match next {
                        Some(n) if n.count == 1 && !chain.contains(&x) => {
                            chain.push(x);
                            cur = x;
                            via = n;
                        }
                        _ => break Some((via.point, Some(x))),
                    }
                }
                _ => break Some((via.point, Some(x))),
            }
        };
        if let Some((point, attached_to)) = branch {
            report.branches.push(DeadBranch {
                chain,
                extremity: start.id,
                attaching_component: cur,
                attachment_point: point,
                attached_to,
            });
        }
    }
    report
}

/// Non-dicritical components with at least two dead branches attached and
/// exactly one other singular point.
pub fn detect_initial_components(tree: &ReductionTree, branches: &[DeadBranch]) -> Vec<usize> {
    tree.components
        .iter()
        .filter(|c| !c.dicritical)
        .filter_map(|c| {
            let attached = branches.iter().filter(|b| b.attached_to == Some(c.id)).count();
            let s = singularity_count(tree, c.id);
            (attached >= 2 && s == attached + 1).then_some(c.id)
        })
        .collect()
}

/// Dead branches together with initial components.
pub fn branch_report(tree: &ReductionTree) -> BranchReport {
    let mut r = detect_dead_branches(tree);
    r.initial_components = detect_initial_components(tree, &r.branches);
    r
}

#[derive(Clone, Debug, PartialEq)]
pub struct SaddleNodeWitness {
    pub point: usize,
    /// Host components and the separatrix each one realizes.
    pub hosts: Vec<(usize, Option<Direction>)>,
    pub corner: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PresentabilityVerdict {
    pub strongly_presentable: bool,
    pub witnesses: Vec<SaddleNodeWitness>,
}

/// False iff the strong separatrix of some saddle-node lies in the divisor.
pub fn strongly_presentable(tree: &ReductionTree) -> PresentabilityVerdict {
    let mut ok = true;
    let mut witnesses = Vec::new();
    for p in &tree.points {
        if !matches!(p.class, SingClass::SaddleNode { .. }) {
            continue;
        }
        let hosts: Vec<(usize, Option<Direction>)> = p
            .hosts
            .iter()
            .zip(&p.host_data)
            .map(|(h, d)| (h.component, d.separatrix))
            .collect();
        if hosts.iter().any(|(_, d)| *d == Some(Direction::Strong)) {
            ok = false;
        }
        witnesses.push(SaddleNodeWitness { point: p.id, hosts, corner: p.is_corner() });
    }
    PresentabilityVerdict { strongly_presentable: ok, witnesses }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AuditStatus {
    Pass,
    Fail(Vec<String>),
    /// The tree is not strongly presentable.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub status: AuditStatus,
    pub initial_components: Vec<usize>,
    pub attached_branches: Vec<DeadBranch>,
    /// Chain corners are only checked to be saddles with a rational ratio;
    /// linearizability is not decided.
    pub linearizability_checked: bool,
}

/// Check the structure forced on initial components of strongly presentable
/// trees.
pub fn initial_component_audit(tree: &ReductionTree) -> AuditReport {
    let report = branch_report(tree);
    let mut out = AuditReport {
        status: AuditStatus::Pass,
        initial_components: report.initial_components.clone(),
        attached_branches: Vec::new(),
        linearizability_checked: false,
    };
    if !strongly_presentable(tree).strongly_presentable {
        out.status = AuditStatus::NotApplicable;
        return out;
    }
    let mut fails = Vec::new();
    if report.initial_components.len() > 1 {
        fails.push(alloc::format!(
            "{} initial components",
            report.initial_components.len()
        ));
    }
    if let Some(&c) = report.initial_components.first() {
        let attached: Vec<DeadBranch> = report
            .branches
            .iter()
            .filter(|b| b.attached_to == Some(c))
            .cloned()
            .collect();
        if attached.len() != 2 {
            fails.push(alloc::format!("{} branches attached to {c}", attached.len()));
        }
        for b in &attached {
            for p in tree.points.iter().filter(|p| p.id != b.attachment_point) {
                let inside = p.is_corner() && p.hosts.iter().all(|h| b.chain.contains(&h.component));
                if inside && !rational_saddle(&p.class) {
                    fails.push(alloc::format!("corner point {} is not a rational saddle", p.id));
                }
            }
        }
        let first = attached.iter().any(|b| {
            tree.component(b.extremity).map_or(false, |k| k.birth_step == 1)
        });
        if !first {
            fails.push("no branch extremity born at the first blow-up".into());
        }
        out.attached_branches = attached;
    }
    if !fails.is_empty() {
        out.status = AuditStatus::Fail(fails);
    }
    out
}

fn rational_saddle(c: &SingClass) -> bool {
    matches!(
        c,
        SingClass::ReducedNonDegenerate { ratio, .. } if ratio.kind == RatioKind::RationalNegative
    )
}
