// Reads an AIF document, follows its cross-reference and writes it back in
// canonical form. Serializing the canonical form again gives the same bytes.

use std::error::Error;

use atlas::aif::{parse_aif, serialize_aif};

const DOCUMENT: &str = include_str!(concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/tests/data/fig_aif.xml"
));

pub fn run_example() -> Result<Vec<u8>, Box<dyn Error>> {
    let g = parse_aif(DOCUMENT.as_bytes())?;
    for arc in g.arcs() {
        for target in arc.content.xrefs() {
            let referenced = g.arc(target.as_str()).ok_or("unresolved reference")?;
            println!("{} refers to {} ({})", arc.id, target, referenced.content);
        }
    }

    let canonical = serialize_aif(&g)?;
    print!("{}", String::from_utf8_lossy(&canonical));
    let again = serialize_aif(&parse_aif(&canonical)?)?;
    assert_eq!(again, canonical);
    Ok(canonical)
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
