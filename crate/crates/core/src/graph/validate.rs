use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::AnnotationGraph;
use crate::id::Id;
use crate::offset::Offset;
use crate::report::{ValidationReport, Violation, ViolationKind};

pub(super) fn validate(g: &AnnotationGraph) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_references(g, &mut report);
    check_orphans(g, &mut report);
    let order = topological_order(g, &mut report);
    check_time_order(g, &order, &mut report);
    report.extend(resolve_xrefs(g));
    report
}

pub(super) fn resolve_xrefs(g: &AnnotationGraph) -> ValidationReport {
    let mut report = ValidationReport::default();
    for arc in g.arcs.values() {
        for target in arc.content.xrefs() {
            if !g.arcs.contains_key(target) {
                report.push(Violation::new(
                    ViolationKind::DanglingReference,
                    vec![target.clone(), arc.id.clone()],
                    format!("referenced by {}", arc.id),
                ));
            }
        }
    }
    report
}

fn check_references(g: &AnnotationGraph, report: &mut ValidationReport) {
    for n in g.nodes.values() {
        if g.timelines.contains_key(&n.id) {
            report.push(Violation::new(
                ViolationKind::DuplicateId,
                vec![n.id.clone()],
                "node id also names a timeline",
            ));
        }
        if !g.timelines.contains_key(&n.timeline) {
            report.push(Violation::new(
                ViolationKind::DanglingReference,
                vec![n.timeline.clone(), n.id.clone()],
                format!("timeline of node {}", n.id),
            ));
        }
    }
    for a in g.arcs.values() {
        if g.nodes.contains_key(&a.id) || g.timelines.contains_key(&a.id) {
            report.push(Violation::new(
                ViolationKind::DuplicateId,
                vec![a.id.clone()],
                "arc id also names a node or timeline",
            ));
        }
        for end in [&a.start, &a.end] {
            if !g.nodes.contains_key(end) {
                report.push(Violation::new(
                    ViolationKind::DanglingReference,
                    vec![end.clone(), a.id.clone()],
                    format!("endpoint of arc {}", a.id),
                ));
            }
        }
    }
}

fn check_orphans(g: &AnnotationGraph, report: &mut ValidationReport) {
    let touched: BTreeSet<&Id> = g.arcs.values().flat_map(|a| [&a.start, &a.end]).collect();
    for id in g.nodes.keys() {
        if !touched.contains(id) {
            report.push(Violation::new(
                ViolationKind::OrphanNode,
                vec![id.clone()],
                "node has no arcs",
            ));
        }
    }
}

/// Kahn's algorithm. Returns the nodes it could order; if some remain, the
/// ones still caught after also trimming sinks lie on or between cycles and
/// are reported as one `Cycle` violation.
fn topological_order<'g>(g: &'g AnnotationGraph, report: &mut ValidationReport) -> Vec<&'g Id> {
    let mut indeg: BTreeMap<&Id, usize> = g.nodes.keys().map(|k| (k, 0)).collect();
    let mut outdeg = indeg.clone();
    let mut succ: BTreeMap<&Id, Vec<&Id>> = BTreeMap::new();
    let mut pred: BTreeMap<&Id, Vec<&Id>> = BTreeMap::new();
    for a in g.arcs.values() {
        if !(g.nodes.contains_key(&a.start) && g.nodes.contains_key(&a.end)) {
            continue;
        }
        *indeg.get_mut(&a.end).unwrap() += 1;
        *outdeg.get_mut(&a.start).unwrap() += 1;
        succ.entry(&a.start).or_default().push(&a.end);
        pred.entry(&a.end).or_default().push(&a.start);
    }

    let mut order = Vec::with_capacity(indeg.len());
    let mut queue: VecDeque<&Id> = indeg
        .iter()
        .filter(|(_, d)| **d == 0)
        .map(|(k, _)| *k)
        .collect();
    while let Some(n) = queue.pop_front() {
        order.push(n);
        for &s in succ.get(n).into_iter().flatten() {
            let d = indeg.get_mut(s).unwrap();
            *d -= 1;
            if *d == 0 {
                queue.push_back(s);
            }
        }
    }
    if order.len() == indeg.len() {
        return order;
    }

    let ordered: BTreeSet<&Id> = order.iter().copied().collect();
    let mut stuck: BTreeSet<&Id> = indeg
        .keys()
        .filter(|k| !ordered.contains(*k))
        .copied()
        .collect();
    for &n in &stuck {
        outdeg.insert(
            n,
            succ.get(n)
                .into_iter()
                .flatten()
                .filter(|s| stuck.contains(*s))
                .count(),
        );
    }
    let mut sinks: VecDeque<&Id> = stuck.iter().filter(|n| outdeg[*n] == 0).copied().collect();
    while let Some(n) = sinks.pop_front() {
        stuck.remove(n);
        for &p in pred.get(n).into_iter().flatten() {
            if stuck.contains(p) {
                let d = outdeg.get_mut(p).unwrap();
                *d -= 1;
                if *d == 0 {
                    sinks.push_back(p);
                }
            }
        }
    }
    report.push(Violation::new(
        ViolationKind::Cycle,
        stuck.into_iter().cloned().collect(),
        "nodes on a directed cycle",
    ));
    order
}

/// Walks nodes in topological order carrying, per timeline, the latest
/// anchored offset seen on any path into the node. A node anchored before
/// that offset is out of order.
fn check_time_order(g: &AnnotationGraph, order: &[&Id], report: &mut ValidationReport) {
    type Latest<'g> = BTreeMap<&'g Id, (&'g Offset, &'g Id)>;
    let mut latest: BTreeMap<&Id, Latest> = BTreeMap::new();
    let mut preds: BTreeMap<&Id, Vec<&Id>> = BTreeMap::new();
    for a in g.arcs.values() {
        preds.entry(&a.end).or_default().push(&a.start);
    }

    for &id in order {
        let mut incoming: Latest = BTreeMap::new();
        for p in preds.get(id).into_iter().flatten() {
            let Some(from) = latest.get(p) else { continue };
            for (&tl, &(o, who)) in from {
                let slot = incoming.entry(tl).or_insert((o, who));
                if o > slot.0 {
                    *slot = (o, who);
                }
            }
        }
        let node = &g.nodes[id];
        if let Some(o) = &node.offset {
            if let Some(&(prev, who)) = incoming.get(&node.timeline) {
                if prev > o {
                    report.push(Violation::new(
                        ViolationKind::TimeOrderViolation,
                        vec![who.clone(), id.clone()],
                        format!("offset {prev} precedes {o} on timeline {}", node.timeline),
                    ));
                }
            }
            let slot = incoming.entry(&node.timeline).or_insert((o, id));
            if o >= slot.0 {
                *slot = (o, id);
            }
        }
        latest.insert(id, incoming);
    }
}
