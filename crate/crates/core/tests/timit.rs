mod common;

use std::collections::BTreeSet;

use atlas::convert::{
    build_graph, extract_tier, parse_tier, serialize_tier, ColumnTier, ConvertError, TierRow,
};
use atlas::{AnnotationSet, Content, Criterion, Offset};
use common::*;
use proptest::prelude::*;

fn sa1() -> Vec<ColumnTier> {
    let wrd = String::from_utf8(read_data("sa1.wrd")).unwrap();
    let phn = String::from_utf8(read_data("sa1.phn")).unwrap();
    vec![
        parse_tier(&wrd, "W").unwrap(),
        parse_tier(&phn, "P").unwrap(),
    ]
}

fn tier_strategy(arc_type: &'static str) -> impl Strategy<Value = ColumnTier> {
    prop::collection::vec((0u64..2000, 1u64..300, "[a-z#]{1,4}"), 0..12).prop_map(move |rows| {
        let mut tier = ColumnTier::new(arc_type);
        tier.rows = rows
            .into_iter()
            .map(|(start, len, label)| TierRow {
                start,
                end: start + len,
                label,
            })
            .collect();
        tier
    })
}

#[test]
fn tiers_survive_the_graph() {
    let tiers = sa1();
    let g = build_graph(&tiers, "sa1").unwrap();
    assert_eq!(extract_tier(&g, "W").unwrap().rows, tiers[0].rows);
    assert_eq!(extract_tier(&g, "P").unwrap().rows, tiers[1].rows);
    assert_eq!(
        serialize_tier(&g, "W").unwrap(),
        String::from_utf8(read_data("sa1.wrd")).unwrap()
    );
}

#[test]
fn words_and_phones_share_boundaries() {
    let g = build_graph(&sa1(), "sa1").unwrap();
    let set = AnnotationSet::from_graph(&g);
    let at = |o: u64| set.anchors_at_offset(&[Offset::from(o)]);
    for boundary in [2360u64, 5200, 9680, 11077] {
        let anchors = at(boundary);
        assert_eq!(anchors.len(), 1, "{boundary}");
        let types: BTreeSet<String> = set
            .incoming(anchors[0].as_str())
            .unwrap()
            .into_iter()
            .chain(set.outgoing(anchors[0].as_str()).unwrap())
            .map(|id| set.annotation(id.as_str()).unwrap().ann_type.clone())
            .collect();
        assert_eq!(
            types,
            BTreeSet::from(["W".to_owned(), "P".to_owned()]),
            "{boundary}"
        );
    }
    assert!(
        at(36150).len() == 1 && at(36720).len() == 1,
        "gap before \"water\" keeps both ends"
    );
    let water = set
        .select(&Criterion::by_type("W"))
        .into_iter()
        .find(|id| set.annotation(id.as_str()).unwrap().content == Content::literal("water"))
        .unwrap();
    assert_eq!(set.start(water.as_str()).unwrap(), &at(36720)[0]);
}

#[test]
fn malformed_rows_are_rejected() {
    assert_eq!(
        parse_tier("0 1 a\n2360 5200\n", "W"),
        Err(ConvertError::MalformedLine { line: 2 })
    );
    assert_eq!(
        parse_tier("2360\n", "W"),
        Err(ConvertError::MalformedLine { line: 1 })
    );
    assert!(matches!(
        parse_tier("0 1 a\n2.5 3 b\n", "W"),
        Err(ConvertError::NonIntegerOffset { line: 2, .. })
    ));
    assert!(matches!(
        parse_tier("5200 2360 she\n", "W"),
        Err(ConvertError::ReversedInterval {
            line: 1,
            start: 5200,
            end: 2360
        })
    ));
}

#[test]
fn mixed_units_are_rejected() {
    let a = parse_tier("0 1 a\n", "W").unwrap();
    let b = parse_tier("0 1 b\n", "P").unwrap().with_units("Frames");
    assert!(matches!(
        build_graph(&[a, b], "t"),
        Err(ConvertError::UnitsMismatch(..))
    ));
}

proptest! {
    #[test]
    fn random_tiers_build_valid_graphs(w in tier_strategy("W"), p in tier_strategy("P")) {
        let g = build_graph(&[w.clone(), p.clone()], "t").unwrap();
        prop_assert!(g.validate().is_empty(), "{}", g.validate());
        let offsets: BTreeSet<u64> = w.rows.iter().chain(&p.rows).flat_map(|r| [r.start, r.end]).collect();
        prop_assert_eq!(g.node_count(), offsets.len());
        prop_assert_eq!(g.arc_count(), w.rows.len() + p.rows.len());
        let mut sorted = w.rows.clone();
        sorted.sort_by_key(|r| (r.start, r.end));
        let back: Vec<(u64, u64)> = extract_tier(&g, "W").unwrap().rows.iter().map(|r| (r.start, r.end)).collect();
        let want: Vec<(u64, u64)> = sorted.iter().map(|r| (r.start, r.end)).collect();
        prop_assert_eq!(back, want);
    }
}
