// Merges a word tier and a phone tier into one graph. Shared boundaries
// become shared nodes, so a word and its first phone start at one node.

use std::error::Error;

use atlas::aif::serialize_aif;
use atlas::convert::{build_graph, parse_tier};

const WORDS: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/sa1.wrd"));
const PHONES: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/sa1.phn"));

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let tiers = [parse_tier(WORDS, "W")?, parse_tier(PHONES, "P")?];
    let g = build_graph(&tiers, "sa1")?;
    println!(
        "{} nodes, {} arcs, valid: {}",
        g.node_count(),
        g.arc_count(),
        g.validate().is_empty()
    );

    for node in g.nodes().filter(|n| g.degree(n.id.as_str()) > 2) {
        let labels: Vec<String> = g
            .incoming(node.id.as_str())
            .chain(g.outgoing(node.id.as_str()))
            .map(|a| format!("{}:{}", a.arc_type, a.content))
            .collect();
        println!("  {} joins {}", node.id, labels.join(" "));
    }

    let xml = String::from_utf8(serialize_aif(&g)?)?;
    println!("{} bytes of AIF", xml.len());
    Ok(xml)
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
