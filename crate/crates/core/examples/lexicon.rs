// Loads a bilingual lexicon and looks up every sense of one lexeme,
// including its nested idiom structure.

use std::error::Error;

use atlas::aif::{parse_lexicon, serialize_lexicon, Lexicon};
use atlas::Content;

const DOCUMENT: &str = include_str!(concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/tests/data/fig_lexicon.xml"
));

pub fn run_example() -> Result<Lexicon, Box<dyn Error>> {
    let lex = parse_lexicon(DOCUMENT.as_bytes())?;
    if let Some(signal) = &lex.signal {
        println!(
            "{} ({})",
            signal.id,
            signal.comment.as_deref().unwrap_or("no comment")
        );
    }

    for entry in lex.lookup("reichen") {
        let pos: Vec<String> = entry
            .content
            .feature_values("PartOfSpeech")
            .map(Content::to_string)
            .collect();
        let synonyms: Vec<String> = entry
            .content
            .feature_values("Synonym")
            .map(Content::to_string)
            .collect();
        println!("{} [{}] {}", entry.id, pos.join(","), synonyms.join(", "));
        for idiom in entry.content.feature_values("Idiom") {
            let part = |f| {
                idiom
                    .feature_values(f)
                    .map(Content::to_string)
                    .collect::<Vec<_>>()
                    .join("")
            };
            println!("  idiom: {} = {}", part("Source"), part("Target"));
        }
    }

    let canonical = serialize_lexicon(&lex)?;
    assert_eq!(parse_lexicon(&canonical)?, lex);
    Ok(lex)
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
