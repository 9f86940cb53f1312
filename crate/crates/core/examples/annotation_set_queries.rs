// Views a transcription graph as an annotation set and queries it by type,
// by feature and by position.

use std::error::Error;

use atlas::convert::{build_graph, parse_tier};
use atlas::{AnnotationSet, Content, Criterion, Offset};

const WORDS: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/sa1.wrd"));
const PHONES: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/sa1.phn"));

pub fn run_example() -> Result<AnnotationSet, Box<dyn Error>> {
    let g = build_graph(&[parse_tier(WORDS, "W")?, parse_tier(PHONES, "P")?], "sa1")?;
    let mut set = AnnotationSet::from_graph(&g);

    let words = set.select(&Criterion::by_type("W"));
    println!(
        "{} words, {} phones",
        words.len(),
        set.select(&Criterion::by_type("P")).len()
    );

    let boundary = set.anchors_at_offset(&[Offset::parse("5200.0")?]);
    for anchor in &boundary {
        for id in set.incoming(anchor.as_str())? {
            println!(
                "ends at 5200: {}",
                set.annotation(id.as_str()).ok_or("missing")?.content
            );
        }
    }

    for id in &words {
        let label = set
            .annotation(id.as_str())
            .ok_or("missing")?
            .content
            .to_string();
        if ["dark", "suit", "water"].contains(&label.as_str()) {
            set.set_feature(id.as_str(), "stressed", Content::literal("yes"))?;
        }
    }
    let stressed = set.select_all(&[
        Criterion::by_type("W"),
        Criterion::by_feature("stressed", Content::literal("yes")),
    ]);
    for id in &stressed {
        println!(
            "stressed: {}",
            set.annotation(id.as_str()).ok_or("missing")?.content
        );
    }

    let back = set.to_graph()?;
    println!("back to a graph with {} arcs", back.arc_count());
    Ok(set)
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
