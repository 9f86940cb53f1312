#![allow(dead_code)]
//! Random document generators and brute-force oracles shared by the
//! integration tests. Oracles only read graphs through public accessors and
//! never call the library's own checking code.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use atlas::{
    Anchor, AnnotationGraph, AnnotationSet, Arc, Content, Field, Id, NewAnnotation, Node, Offset,
    Region, SignalDescriptor, SignalGroup, Timeline,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

pub fn read_data(name: &str) -> Vec<u8> {
    std::fs::read(data_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

const WORDS: &[&str] = &[
    "she", "had", "your", "dark", "suit", "h#", "a b", "x&y", "<q>", "'\"", "ü",
];
const FEATURES: &[&str] = &["sign", "pos", "Synonym", "Idiom", "conf"];
const TYPES: &[&str] = &["W", "P", "ASL", "Part-of-Speech"];

fn pick<'a, R: Rng>(rng: &mut R, from: &[&'a str]) -> &'a str {
    from.choose(rng).unwrap()
}

/// Random content tree, at most `depth` feature-set levels deep. Xrefs
/// point at `targets`.
pub fn random_content<R: Rng>(rng: &mut R, depth: usize, targets: &[Id]) -> Content {
    let roll = rng.gen_range(0..10);
    if roll < 3 {
        return Content::literal(pick(rng, WORDS));
    }
    if roll < 4 && !targets.is_empty() {
        return Content::Xref(targets.choose(rng).unwrap().clone());
    }
    if depth == 0 {
        return Content::literal(pick(rng, WORDS));
    }
    let n = rng.gen_range(0..4);
    Content::Features(
        (0..n)
            .map(|_| Field::new(pick(rng, FEATURES), random_content(rng, depth - 1, targets)))
            .collect(),
    )
}

/// `millis / 1000` written one of three numerically equal ways.
fn random_offset<R: Rng>(rng: &mut R, millis: u64) -> Offset {
    let (int, frac) = (millis / 1000, millis % 1000);
    let text = match rng.gen_range(0..3) {
        0 => format!("{int}.{frac:03}"),
        1 if frac == 0 => format!("{int}"),
        1 => format!("{int}.{frac:03}").trim_end_matches('0').to_owned(),
        _ => format!("{int}.{frac:03}0"),
    };
    Offset::parse(&text).unwrap()
}

/// A well-formed random graph on one or two timelines.
///
/// Nodes get a random topological rank; arcs only run from lower to higher
/// rank and offsets grow with rank, so every path is acyclic and ordered.
/// Leftover orphans are joined to a neighbour.
pub fn random_graph<R: Rng>(rng: &mut R, max_nodes: usize, max_arcs: usize) -> AnnotationGraph {
    let mut g = AnnotationGraph::new();
    let two = rng.gen_bool(0.5);
    g.add_timeline(Timeline::new("T1", "Seconds")).unwrap();
    if two {
        g.add_timeline(Timeline::new("T2", "Characters")).unwrap();
        if rng.gen_bool(0.5) {
            g.add_signal(
                SignalDescriptor::new("T2")
                    .with_format("text:ascii")
                    .with_location("file:x.txt"),
            )
            .unwrap();
        }
    }
    let n = rng.gen_range(0..=max_nodes);
    if n < 2 {
        return g;
    }
    let mut ranked = Vec::with_capacity(n);
    let mut time = 0u64;
    for i in 0..n {
        time += rng.gen_range(0..5000);
        let tl = if two && rng.gen_bool(0.4) { "T2" } else { "T1" };
        let offset = rng.gen_bool(0.7).then(|| random_offset(rng, time));
        let id = Id::new(format!("N{i}"));
        g.add_node(Node::new(id.clone(), tl, offset)).unwrap();
        ranked.push(id);
    }
    let mut arcs: Vec<Id> = Vec::new();
    let want = rng.gen_range(1..=max_arcs.max(1));
    for k in 0..want {
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        add_random_arc(rng, &mut g, &ranked[i], &ranked[j], k, &mut arcs);
    }
    for i in 0..n {
        if g.degree(ranked[i].as_str()) == 0 {
            let (a, b) = if i + 1 < n { (i, i + 1) } else { (i - 1, i) };
            let k = arcs.len() + 1000;
            add_random_arc(rng, &mut g, &ranked[a], &ranked[b], k, &mut arcs);
        }
    }
    g
}

fn add_random_arc<R: Rng>(
    rng: &mut R,
    g: &mut AnnotationGraph,
    a: &Id,
    b: &Id,
    k: usize,
    arcs: &mut Vec<Id>,
) {
    let content = random_content(rng, 3, arcs);
    let id = Id::new(format!("A{k}"));
    g.insert_arc_with_id(Arc {
        id: id.clone(),
        start: a.clone(),
        end: b.clone(),
        arc_type: pick(rng, TYPES).to_owned(),
        content,
    })
    .expect("generator only makes forward, ordered arcs");
    arcs.push(id);
}

/// Applies one random structural mutation, possibly breaking the graph.
pub fn mutate<R: Rng>(rng: &mut R, g: &mut AnnotationGraph) -> &'static str {
    let nodes: Vec<Id> = g.nodes().map(|n| n.id.clone()).collect();
    let arcs: Vec<Id> = g.arcs().map(|a| a.id.clone()).collect();
    let fresh = |g: &AnnotationGraph, p: &str| {
        (0..)
            .map(|i| format!("{p}{i}"))
            .find(|s| !g.contains_id(s))
            .unwrap()
    };
    match rng.gen_range(0..8) {
        0 if !arcs.is_empty() => {
            let a = g.detach_arc(arcs.choose(rng).unwrap().as_str()).unwrap();
            let id = Id::new(fresh(g, "R"));
            g.push_arc_unchecked(Arc {
                id,
                start: a.end,
                end: a.start,
                ..a
            })
            .unwrap();
            "edge reversal"
        }
        1 if nodes.len() >= 2 => {
            let a = nodes.choose(rng).unwrap().clone();
            let b = nodes.choose(rng).unwrap().clone();
            let id = Id::new(fresh(g, "C"));
            g.push_arc_unchecked(Arc {
                id,
                start: a,
                end: b,
                arc_type: "X".into(),
                content: Content::empty(),
            })
            .unwrap();
            "random arc (may close a cycle)"
        }
        2 if nodes.len() >= 2 => {
            let a = nodes.choose(rng).unwrap().as_str();
            let b = nodes.choose(rng).unwrap().as_str();
            let (oa, ob) = (
                g.node(a).unwrap().offset.clone(),
                g.node(b).unwrap().offset.clone(),
            );
            g.set_offset_unchecked(a, ob).unwrap();
            g.set_offset_unchecked(b, oa).unwrap();
            "offset swap"
        }
        3 if !nodes.is_empty() => {
            let a = nodes.choose(rng).unwrap().as_str();
            let o = Offset::from(rng.gen_range(0..400u64));
            g.set_offset_unchecked(a, Some(o)).unwrap();
            "offset overwrite"
        }
        4 if !arcs.is_empty() => {
            g.detach_arc(arcs.choose(rng).unwrap().as_str()).unwrap();
            "arc detached (may orphan)"
        }
        5 => {
            let tl = g.timelines().next().map(|t| t.id.clone());
            if let Some(tl) = tl {
                let id = Id::new(fresh(g, "O"));
                g.add_node(Node::new(id, tl, None)).unwrap();
            }
            "orphan node"
        }
        6 if !arcs.is_empty() => {
            g.remove_arc(arcs.choose(rng).unwrap().as_str()).unwrap();
            "checked removal"
        }
        _ => "no-op",
    }
}

/// Brute-force well-formedness: recursive DFS for cycles, degree count for
/// orphans, Floyd-Warshall closure for path-level time order, and a scan
/// for unresolved references. Returns one message per problem found.
pub fn brute_force_problems(g: &AnnotationGraph) -> Vec<String> {
    let ids: Vec<Id> = g.nodes().map(|n| n.id.clone()).collect();
    let index: BTreeMap<&Id, usize> = ids.iter().enumerate().map(|(i, id)| (id, i)).collect();
    let n = ids.len();
    let mut problems = Vec::new();
    let mut adj = vec![Vec::new(); n];
    let mut degree = vec![0usize; n];
    let arc_ids: BTreeSet<&Id> = g.arcs().map(|a| &a.id).collect();
    for a in g.arcs() {
        match (index.get(&a.start), index.get(&a.end)) {
            (Some(&s), Some(&e)) => {
                adj[s].push(e);
                degree[s] += 1;
                degree[e] += 1;
            }
            _ => problems.push(format!("arc {} has a missing endpoint", a.id)),
        }
        for x in a.content.xrefs() {
            if !arc_ids.contains(x) {
                problems.push(format!("dangling xref {x}"));
            }
        }
    }
    for n in g.nodes() {
        if g.timeline(n.timeline.as_str()).is_none() {
            problems.push(format!("node {} has no timeline", n.id));
        }
    }

    // 0 = white, 1 = grey, 2 = black
    fn dfs(v: usize, adj: &[Vec<usize>], color: &mut [u8]) -> bool {
        color[v] = 1;
        for &w in &adj[v] {
            if color[w] == 1 || (color[w] == 0 && dfs(w, adj, color)) {
                return true;
            }
        }
        color[v] = 2;
        false
    }
    let mut color = vec![0u8; n];
    if (0..n).any(|v| color[v] == 0 && dfs(v, &adj, &mut color)) {
        problems.push("cycle".into());
    }

    for (i, d) in degree.iter().enumerate() {
        if *d == 0 {
            problems.push(format!("orphan {}", ids[i]));
        }
    }

    let mut reach = vec![vec![false; n]; n];
    for (s, outs) in adj.iter().enumerate() {
        for &e in outs {
            reach[s][e] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                let via = reach[k].clone();
                for (to, reachable) in reach[i].iter_mut().zip(via) {
                    *to |= reachable;
                }
            }
        }
    }
    let nodes: Vec<&Node> = ids.iter().map(|id| g.node(id.as_str()).unwrap()).collect();
    for i in 0..n {
        for j in 0..n {
            if i == j || !reach[i][j] || nodes[i].timeline != nodes[j].timeline {
                continue;
            }
            if let (Some(a), Some(b)) = (&nodes[i].offset, &nodes[j].offset) {
                if decimal_key(a.as_str()) > decimal_key(b.as_str()) {
                    problems.push(format!("time order {} > {}", ids[i], ids[j]));
                }
            }
        }
    }
    problems
}

/// Sort key for a plain decimal string, computed without the library's
/// decimal type: (sign, integer digits, fraction digits) normalised so that
/// lexicographic comparison is numeric comparison for non-negative values.
pub fn decimal_key(s: &str) -> (bool, usize, String, String) {
    assert!(
        !s.starts_with('-'),
        "generators only make non-negative offsets"
    );
    let s = s.strip_prefix('+').unwrap_or(s);
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let int = int.trim_start_matches('0').to_owned();
    let frac = frac.trim_end_matches('0').to_owned();
    let nonzero = !int.is_empty() || !frac.is_empty();
    (nonzero, int.len(), int, frac)
}

/// Anchors the offsets an independent scan says are admissible for `node`:
/// true when no anchored ancestor on its timeline is later and no anchored
/// descendant on its timeline is earlier. Uses plain DFS reachability.
pub fn brute_force_anchor_ok(g: &AnnotationGraph, node: &str, offset: &Offset) -> bool {
    let succ = |v: &str| -> Vec<Id> {
        g.arcs()
            .filter(|a| a.start.as_str() == v)
            .map(|a| a.end.clone())
            .collect()
    };
    let reaches = |from: &str, to: &str| -> bool {
        let mut stack = vec![Id::from(from)];
        let mut seen = BTreeSet::new();
        while let Some(v) = stack.pop() {
            for w in succ(v.as_str()) {
                if w.as_str() == to {
                    return true;
                }
                if seen.insert(w.clone()) {
                    stack.push(w);
                }
            }
        }
        false
    };
    let me = g.node(node).unwrap();
    let key = decimal_key(offset.as_str());
    g.nodes().all(|other| {
        if other.id.as_str() == node || other.timeline != me.timeline {
            return true;
        }
        let Some(o) = &other.offset else { return true };
        let ok_before = !reaches(other.id.as_str(), node) || decimal_key(o.as_str()) <= key;
        let ok_after = !reaches(node, other.id.as_str()) || key <= decimal_key(o.as_str());
        ok_before && ok_after
    })
}

/// Renames ids throughout a graph, including xref targets.
pub fn rename_graph(g: &AnnotationGraph, map: &BTreeMap<Id, Id>) -> AnnotationGraph {
    let r = |id: &Id| map.get(id).cloned().unwrap_or_else(|| id.clone());
    fn content(c: &Content, r: &dyn Fn(&Id) -> Id) -> Content {
        match c {
            Content::Xref(id) => Content::Xref(r(id)),
            Content::Literal(s) => Content::Literal(s.clone()),
            Content::Features(fs) => Content::Features(
                fs.iter()
                    .map(|f| Field::new(f.feature.clone(), content(&f.value, r)))
                    .collect(),
            ),
        }
    }
    let mut out = AnnotationGraph::new();
    for s in g.signals() {
        out.add_signal(s.clone()).unwrap();
    }
    for t in g.timelines() {
        out.add_timeline(Timeline {
            id: r(&t.id),
            ..t.clone()
        })
        .unwrap();
    }
    for n in g.nodes() {
        out.add_node(Node::new(r(&n.id), r(&n.timeline), n.offset.clone()))
            .unwrap();
    }
    for a in g.arcs() {
        out.push_arc_unchecked(Arc {
            id: r(&a.id),
            start: r(&a.start),
            end: r(&a.end),
            arc_type: a.arc_type.clone(),
            content: content(&a.content, &r),
        })
        .unwrap();
    }
    out
}

pub fn id_map<const N: usize>(from: [&Id; N], to: [&str; N]) -> BTreeMap<Id, Id> {
    from.into_iter()
        .zip(to)
        .map(|(a, b)| (a.clone(), Id::from(b)))
        .collect()
}

/// A random annotation set mixing a 1-D timeline with a 2-D image plane.
/// Offsets come from a small pool so that equal offsets recur.
pub fn random_set<R: Rng>(rng: &mut R, max_anchors: usize, max_anns: usize) -> AnnotationSet {
    const POOL: &[&str] = &["0", "5", "5.0", "10", "10.50", "10.5", "20", "382.520"];
    let mut s = AnnotationSet::new("rand");
    s.add_signal_group(SignalGroup::new("T", ["Samples"]))
        .unwrap();
    s.add_signal_group(SignalGroup::new("I", ["px", "px"]))
        .unwrap();
    let mut t_anchors = Vec::new();
    let mut i_anchors = Vec::new();
    for k in 0..rng.gen_range(0..=max_anchors) {
        let id = Id::new(format!("a{k}"));
        let placed = rng.gen_bool(0.8);
        if rng.gen_bool(0.6) {
            let off = placed.then(|| vec![Offset::parse(pick(rng, POOL)).unwrap()]);
            s.add_anchor(Anchor::new(id.clone(), "T", off)).unwrap();
            t_anchors.push(id);
        } else {
            let off = placed.then(|| {
                vec![
                    Offset::parse(pick(rng, POOL)).unwrap(),
                    Offset::parse(pick(rng, POOL)).unwrap(),
                ]
            });
            s.add_anchor(Anchor::new(id.clone(), "I", off)).unwrap();
            i_anchors.push(id);
        }
    }
    let mut ann_ids: Vec<Id> = Vec::new();
    for k in 0..rng.gen_range(0..=max_anns) {
        let region = match rng.gen_range(0..3) {
            0 if i_anchors.len() >= 3 => {
                Region::polygon(i_anchors.choose_multiple(rng, 3).cloned())
            }
            1 if i_anchors.len() >= 2 => {
                let v: Vec<_> = i_anchors.choose_multiple(rng, 2).cloned().collect();
                Region::bounding_box(v[0].clone(), v[1].clone())
            }
            _ if t_anchors.len() >= 2 => {
                let v: Vec<_> = t_anchors.choose_multiple(rng, 2).cloned().collect();
                Region::interval(v[0].clone(), v[1].clone())
            }
            _ => continue,
        };
        let content = random_content(rng, 2, &ann_ids);
        let id = s
            .add_annotation(
                NewAnnotation::new(pick(rng, TYPES), region, content).with_id(format!("x{k}")),
            )
            .unwrap();
        ann_ids.push(id);
    }
    s
}
