// Builds a small two-timeline annotation graph by hand: a sign language
// video track and a text narrative, with a part-of-speech arc on the text
// and a transcription arc that cross-references it.

use std::error::Error;

use atlas::{AnnotationGraph, Content, GraphError, Node, Offset, SignalDescriptor, Timeline};

pub fn run_example() -> Result<AnnotationGraph, Box<dyn Error>> {
    let mut g = AnnotationGraph::new();
    g.add_signal(
        SignalDescriptor::new("S1")
            .with_format("video:mpeg-1")
            .with_arc_types("ASL")
            .with_location("file:bill.signing.mpeg"),
    )?;
    g.add_timeline(Timeline::new("S1", "Seconds"))?;
    g.add_timeline(Timeline::new("S2", "Characters"))?;

    for (id, timeline, offset) in [
        ("V0", "S1", "382.520"),
        ("V1", "S1", "383.922"),
        ("V2", "S1", "384.731"),
        ("V3", "S2", "78"),
        ("V4", "S2", "85"),
    ] {
        g.add_node(Node::new(id, timeline, Some(Offset::parse(offset)?)))?;
    }

    g.insert_arc(
        "V0",
        "V1",
        "ASL",
        Content::features([("sign", Content::literal("e"))]),
    )?;
    let pos = g.insert_arc("V3", "V4", "Part-of-Speech", Content::literal("VBD"))?;
    g.insert_arc(
        "V0",
        "V2",
        "Transcription",
        Content::features([("AG_Arc", Content::xref(pos.clone()))]),
    )?;

    // an arc running backwards in time is refused and changes nothing
    match g.insert_arc("V2", "V1", "ASL", Content::empty()) {
        Err(GraphError::TimeOrderViolation { earlier, later }) => {
            println!("refused V2 -> V1: {earlier} would precede {later} with a larger offset")
        }
        other => return Err(format!("expected a time-order refusal, got {other:?}").into()),
    }

    println!("{} nodes, {} arcs", g.node_count(), g.arc_count());
    for arc in g.arcs() {
        println!(
            "  {} {} {} -> {}  {}",
            arc.id, arc.arc_type, arc.start, arc.end, arc.content
        );
    }
    let report = g.validate();
    println!("valid: {}", report.is_empty());
    Ok(g)
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
