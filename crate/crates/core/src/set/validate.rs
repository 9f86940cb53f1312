use std::collections::BTreeSet;

use super::{AnnotationSet, RegionKind};
use crate::id::Id;
use crate::report::{ValidationReport, Violation, ViolationKind};

pub(super) fn validate(set: &AnnotationSet) -> ValidationReport {
    let mut report = ValidationReport::default();

    for a in set.anchors.values() {
        match set.signal_groups.get(&a.signal_group) {
            None => report.push(Violation::new(
                ViolationKind::UnknownSignalGroup,
                vec![a.signal_group.clone(), a.id.clone()],
                format!("signal group of anchor {}", a.id),
            )),
            Some(g) => {
                if let Some(o) = &a.offsets {
                    if o.len() != g.dimensionality() {
                        report.push(Violation::new(
                            ViolationKind::DimensionMismatch,
                            vec![a.id.clone()],
                            format!(
                                "{} offsets in {}-dimensional group {}",
                                o.len(),
                                g.dimensionality(),
                                g.id
                            ),
                        ));
                    }
                }
            }
        }
    }

    for ann in set.annotations.values() {
        let region = &ann.region;
        let missing: Vec<&Id> = region
            .anchors
            .iter()
            .filter(|id| !set.anchors.contains_key(*id))
            .collect();
        for id in &missing {
            report.push(Violation::new(
                ViolationKind::UnknownAnchor,
                vec![(*id).clone(), ann.id.clone()],
                format!("anchor of annotation {}", ann.id),
            ));
        }
        if region.anchors.is_empty() {
            report.push(Violation::new(
                ViolationKind::InvalidRegion,
                vec![ann.id.clone()],
                "region has no anchors",
            ));
            continue;
        }
        if !missing.is_empty() {
            continue;
        }

        let groups: BTreeSet<&Id> = region
            .anchors
            .iter()
            .map(|id| &set.anchors[id].signal_group)
            .collect();
        if groups.len() > 1 {
            report.push(Violation::new(
                ViolationKind::InvalidRegion,
                vec![ann.id.clone()],
                "anchors span several signal groups",
            ));
        } else if let Some(g) = groups.first().and_then(|g| set.signal_groups.get(*g)) {
            if let Err(msg) = region
                .kind
                .check_shape(region.anchors.len(), g.dimensionality())
            {
                report.push(Violation::new(
                    ViolationKind::InvalidRegion,
                    vec![ann.id.clone()],
                    msg,
                ));
            }
        }

        if region.kind == RegionKind::Interval && region.anchors.len() == 2 {
            let start = &set.anchors[region.start()];
            let end = &set.anchors[region.end()];
            if let (Some(s), Some(e)) = (&start.offsets, &end.offsets) {
                if s.len() == 1 && e.len() == 1 && s[0] > e[0] {
                    report.push(Violation::new(
                        ViolationKind::ReversedInterval,
                        vec![ann.id.clone()],
                        format!("starts at {} after it ends at {}", s[0], e[0]),
                    ));
                }
            }
        }
    }

    for ann in set.annotations.values() {
        for target in ann.content.xrefs() {
            if !set.annotations.contains_key(target) {
                report.push(Violation::new(
                    ViolationKind::DanglingReference,
                    vec![target.clone(), ann.id.clone()],
                    format!("referenced by {}", ann.id),
                ));
            }
        }
    }
    report
}
