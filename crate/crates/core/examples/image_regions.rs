// Annotates regions of a still image. Two-dimensional anchors carry
// `(x, y)` offsets; boxes and polygons select areas of the picture.

use std::error::Error;

use atlas::{
    AnnotationSet, Content, Criterion, NewAnnotation, Offset, Region, SetError, SignalGroup,
};

pub fn run_example() -> Result<AnnotationSet, Box<dyn Error>> {
    let mut set = AnnotationSet::new("photo-notes");
    set.add_signal_group(SignalGroup::new("img", ["px", "px"]).with_signal("photo.png"))?;

    let mut point =
        |x: u64, y: u64| set.create_anchor("img", Some(vec![Offset::from(x), Offset::from(y)]));
    let (top_left, bottom_right) = (point(120, 40)?, point(220, 180)?);
    let triangle = [point(10, 300)?, point(90, 300)?, point(50, 240)?];

    set.add_annotation(NewAnnotation::new(
        "face",
        Region::bounding_box(top_left, bottom_right),
        Content::features([("person", Content::literal("Bill"))]),
    ))?;
    let sign = set.add_annotation(NewAnnotation::new(
        "road-sign",
        Region::polygon(triangle),
        Content::literal("yield"),
    ))?;

    for id in set.select(&Criterion::by_signal_group("img")) {
        let ann = set.annotation(id.as_str()).ok_or("missing")?;
        println!(
            "{} {} over {} anchors: {}",
            ann.id,
            ann.region.kind.as_str(),
            ann.region.anchors.len(),
            ann.content
        );
    }

    match set.split_annotation(sign.as_str()) {
        Err(SetError::UnsupportedRegionKind(id)) => {
            println!("{id} is not an interval and cannot be split")
        }
        other => return Err(format!("unexpected split result {other:?}").into()),
    }
    println!("valid: {}", set.validate().is_empty());
    Ok(set)
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
