// Splits the word "she" at an unknown boundary, then places that boundary
// once it is known. Offsets outside the enclosing interval are refused.

use std::error::Error;

use atlas::convert::{build_graph, parse_tier};
use atlas::{AnnotationGraph, Offset};

const WORDS: &str = "2360 5200 she\n5200 9680 had\n";

pub fn run_example() -> Result<AnnotationGraph, Box<dyn Error>> {
    let mut g = build_graph(&[parse_tier(WORDS, "W")?], "sa1")?;
    let she = g
        .arcs()
        .find(|a| a.content.to_string() == "she")
        .map(|a| a.id.clone())
        .ok_or("no arc labelled she")?;

    let (first, second, mid) = g.split_arc(she.as_str())?;
    println!("split {she} into {first} and {second} through unanchored node {mid}");

    for attempt in ["9999", "1000", "3720"] {
        match g.anchor_node(mid.as_str(), Offset::parse(attempt)?) {
            Ok(()) => println!("anchored {mid} at {attempt}"),
            Err(e) => println!("refused {attempt}: {e}"),
        }
    }

    for arc in g.arcs() {
        let at = |n: &atlas::Id| {
            g.node(n.as_str())
                .and_then(|n| n.offset.as_ref())
                .map_or("?".to_owned(), |o| o.to_string())
        };
        println!(
            "  {} {}..{} {}",
            arc.id,
            at(&arc.start),
            at(&arc.end),
            arc.content
        );
    }
    Ok(g)
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
