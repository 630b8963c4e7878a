//! Acceptance blocks runnable from the command line. The rewriting oracle here is
//! deliberately separate from the normal form it checks.

use std::collections::HashMap;

use artin_core::coset_tree::{CosetTree, CosetVertex, TreeBall, TreeVertex, DEFAULT_BUDGET};
use artin_core::deligne::{empty_link, link, two_pi, DefiningGraph, Dimension, DomainComplex, LinkOptions};
use artin_core::dihedral::{lower_slope, DihedralGroup, GarsideForm, SearchCaps, SyllableSearch};
use artin_core::freeword::{parse, Letter, SignedLetter, Word};
use artin_core::witness::{admissible, classify_cases, run_witness, CrossingKind, Situation, DEFAULT_TOLERANCE};
use petgraph::unionfind::UnionFind;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const SUITES: [&str; 5] = ["garside", "syllabic", "tree", "links", "witness"];

pub struct Item {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn item(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Item {
    Item { name: name.into(), pass, detail: detail.into() }
}

pub fn run(suite: &str, seed: u64) -> Option<Vec<Item>> {
    let mut rng = StdRng::seed_from_u64(seed);
    Some(match suite {
        "garside" => garside(&mut rng),
        "syllabic" => syllabic(&mut rng),
        "tree" => tree(&mut rng),
        "links" => links(&mut rng),
        "witness" => witness(&mut rng),
        _ => return None,
    })
}

type Raw = Vec<i8>;

fn to_word(raw: &[i8]) -> Word {
    Word::from_letters(raw.iter().map(|&x| {
        SignedLetter::new(if x.abs() == 1 { Letter::A } else { Letter::B }, x > 0)
    }))
}

fn free_reduce(raw: &[i8]) -> Raw {
    let mut out = Raw::new();
    for &x in raw {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn invert(raw: &[i8]) -> Raw {
    raw.iter().rev().map(|&x| -x).collect()
}

fn reduced_words(len: usize) -> Vec<Raw> {
    let mut all = vec![Raw::new()];
    let mut layer = vec![Raw::new()];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w| {
                [1i8, -1, 2, -2].into_iter().filter(|&x| w.last() != Some(&-x)).map(|x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

fn alternating(start: i8, k: usize) -> Raw {
    (0..k).map(|i| if i % 2 == 0 { start } else { 3 - start }).collect()
}

/// Union-find classes of reduced words up to `cap` letters under relator substitution.
fn rewrite_classes(m: usize, cap: usize) -> (HashMap<Raw, usize>, Vec<usize>) {
    let words = reduced_words(cap);
    let index: HashMap<Raw, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut uf = UnionFind::<usize>::new(words.len());
    let rel: Raw = alternating(1, m).into_iter().chain(invert(&alternating(2, m))).collect();
    let conjugates: Vec<Raw> = [rel.clone(), invert(&rel)]
        .iter()
        .flat_map(|r| (0..r.len()).map(move |k| [&r[k..], &r[..k]].concat()))
        .collect();
    for (i, w) in words.iter().enumerate() {
        for pos in 0..=w.len() {
            for r in &conjugates {
                for k in 0..=r.len() {
                    if k > 0 && (pos + k > w.len() || w[pos + k - 1] != r[k - 1]) {
                        break;
                    }
                    let v = free_reduce(&[&w[..pos], &invert(&r[k..])[..], &w[pos + k..]].concat());
                    if let Some(&j) = index.get(&v) {
                        uf.union(i, j);
                    }
                }
            }
        }
    }
    (index, uf.into_labeling())
}

fn census(m: u32, len: usize, cap: usize) -> Item {
    let g = DihedralGroup::new(m).expect("m >= 3");
    let (index, labels) = rewrite_classes(m as usize, cap);
    let mut by_form = HashMap::<GarsideForm, usize>::new();
    let mut by_class = HashMap::<usize, GarsideForm>::new();
    let words = reduced_words(len);
    let mut bad = 0;
    for raw in &words {
        let form = g.normal_form(&to_word(raw));
        let class = labels[index[raw]];
        bad += usize::from(*by_form.entry(form.clone()).or_insert(class) != class);
        bad += usize::from(*by_class.entry(class).or_insert_with(|| form.clone()) != form);
    }
    item(
        format!("census m={m}"),
        bad == 0,
        format!("{} reduced words up to {len} letters, {} classes, {bad} mismatches", words.len(), by_form.len()),
    )
}

fn random_raw(rng: &mut StdRng, len: usize) -> Raw {
    free_reduce(&(0..len).map(|_| [1i8, -1, 2, -2][rng.gen_range(0..4)]).collect::<Vec<_>>())
}

fn garside(rng: &mut StdRng) -> Vec<Item> {
    let g = DihedralGroup::new(3).expect("m = 3");
    let u = parse("a b a^2 b^-1 a^-1 b a b a^2 b^4 a b").expect("word");
    let form = g.normal_form(&u);
    let atoms: Vec<String> = form.atoms.iter().map(|a| a.to_string()).collect();
    let stages: Vec<String> = g.staged_trace(&u).stages.iter().map(|s| s.to_string()).collect();
    let mut items = vec![
        item(
            "worked example",
            atoms == ["b", "b", "b", "ba", "a", "a"] && form.delta_exp == 2,
            format!("{form}"),
        ),
        item(
            "staged trace",
            stages == ["b a^-1 b^-1 a^2 b^3 Δ_a Δ_b Δ_a", "b^4 a^3 Δ_b Δ_a"],
            stages.join(" | "),
        ),
        census(3, 6, 10),
        census(4, 6, 10),
    ];
    let mut bad = 0;
    for _ in 0..200 {
        let m = rng.gen_range(3..=7u32);
        let g = DihedralGroup::new(m).expect("m >= 3");
        let w = random_raw(rng, 10);
        let rel: Raw = alternating(1, m as usize).into_iter().chain(invert(&alternating(2, m as usize))).collect();
        let pos = rng.gen_range(0..=w.len());
        let v = [&w[..pos], &rel[..], &w[pos..]].concat();
        bad += usize::from(!g.equal(&to_word(&w), &to_word(&v)));
    }
    items.push(item("relator insertion", bad == 0, format!("200 random words, {bad} unequal")));
    let g = DihedralGroup::new(3).expect("m = 3");
    let hits: Vec<Raw> = reduced_words(8)
        .into_iter()
        .filter(|r| matches!(g.delta_power(&to_word(r)), Some(n) if n != 0 && n.abs() <= 2))
        .collect();
    let missing = hits.iter().filter(|r| !to_word(r).contains_delta_subword(3)).count();
    items.push(item(
        "Δ subwords",
        missing == 0,
        format!("{} reduced words up to 8 letters equal Δ^±1 or Δ^±2, {missing} without a Δ_x subword", hits.len()),
    ));
    items
}

fn syllabic(rng: &mut StdRng) -> Vec<Item> {
    let mut items = Vec::new();
    for m in [3u32, 4, 5] {
        let g = DihedralGroup::new(m).expect("m >= 3");
        let search = SyllableSearch::new(g, SearchCaps::default());
        let ok = (-3i64..=3).all(|n| {
            let w = g.delta_word().pow(n);
            let bound = (i64::from(m) - 2) * n.abs();
            search.bounds(&w).lower as i64 >= bound
                && search.search(&g.normal_form(&w), 0).is_none_or(|s| s as i64 >= bound)
        });
        items.push(item(format!("Δ^n lower bound m={m}"), ok, "|n| <= 3"));
    }
    let g = DihedralGroup::new(3).expect("m = 3");
    let caps = SearchCaps::default();
    let elliptic = g.growth_table(&parse("a b a^-1").expect("word"), 15, caps);
    let max_upper = elliptic.iter().map(|r| r.upper).max().unwrap_or(0);
    items.push(item("elliptic growth", max_upper <= 3, format!("a b a^-1: max upper {max_upper}")));
    for w in ["a b", "a b^-1"] {
        let s = lower_slope(&g.growth_table(&parse(w).expect("word"), 15, caps));
        items.push(item(format!("loxodromic growth {w}"), s > 0.1, format!("slope {s:.3}")));
    }
    let mut bad = 0;
    for _ in 0..50 {
        let w = to_word(&random_raw(rng, 10));
        let b = g.syllabic_bounds(&w, caps);
        bad += usize::from(b.lower > b.upper || b.upper > w.syllable_count() as u64);
    }
    items.push(item("random bounds", bad == 0, format!("50 words, {bad} inconsistent")));
    items
}

fn tree(rng: &mut StdRng) -> Vec<Item> {
    let g = DihedralGroup::new(3).expect("m = 3");
    let ball = TreeBall::build(g, 8, DEFAULT_BUDGET).expect("ball");
    let valences: Vec<usize> = ball.interior_valences().into_iter().collect();
    let mut items = vec![
        item("ball is a tree", ball.is_acyclic(), format!("radius 8, {} vertices", ball.vertices().len())),
        item("valences", valences == [2, 3], format!("{valences:?}")),
    ];
    let t = CosetTree::new(g);
    let base = TreeVertex::Coset(CosetVertex::base());
    let (mut checked, mut bad) = (0, 0);
    while checked < 100 {
        let w = to_word(&random_raw(rng, 8));
        let form = g.normal_form(&w);
        if form.atom_count() > 4 {
            continue;
        }
        let image = TreeVertex::Coset(t.act(&w, &CosetVertex::base()));
        bad += usize::from(ball.distance(&base, &image).ok() != Some(2 * form.atom_count() as u64));
        checked += 1;
    }
    items.push(item("distance is twice the atom count", bad == 0, format!("100 words, {bad} mismatches")));
    let ball = TreeBall::build(g, 10, DEFAULT_BUDGET).expect("ball");
    let cosets: Vec<CosetVertex> = ball.cosets().cloned().collect();
    let mut bad = 0;
    for _ in 0..50 {
        let x = &cosets[rng.gen_range(0..cosets.len())];
        let y = &cosets[rng.gen_range(0..cosets.len())];
        let bfs = ball.coned_bfs_distance(&TreeVertex::Coset(x.clone()), &TreeVertex::Coset(y.clone()));
        bad += usize::from(bfs.ok() != Some(t.dhat(x, y).upper));
    }
    items.push(item("cone-off distance", bad == 0, format!("50 pairs, {bad} differ from the coned search")));
    items
}

fn random_graph(rng: &mut StdRng) -> DefiningGraph {
    let names = ["a", "b", "c", "d", "e"];
    let k = rng.gen_range(3..=5);
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if rng.gen_bool(0.7) {
                edges.push((names[i], names[j], rng.gen_range(2..=7)));
            }
        }
    }
    DefiningGraph::from_edges(&names[..k], &edges).expect("graph")
}

fn links(rng: &mut StdRng) -> Vec<Item> {
    let mut items = Vec::new();
    for m in [3u32, 4, 5] {
        let g = DefiningGraph::from_edges(&["a", "b", "c"], &[("a", "b", m), ("b", "c", 3)]).expect("graph");
        let l = link(&g, "v_ab", LinkOptions::with_radius(2 * m)).expect("link");
        items.push(item(
            format!("dihedral link m={m}"),
            l.girth() == Some(4 * m as usize) && l.systole() == Some(two_pi()),
            format!("girth {:?}", l.girth()),
        ));
    }
    let mut agree = 0;
    for _ in 0..200 {
        let g = random_graph(rng);
        let ok = empty_link(&g).systole().is_none_or(|s| s >= two_pi());
        agree += usize::from(ok == !matches!(g.dimension(), Dimension::Spherical { .. }));
    }
    items.push(item("v_∅ link condition", agree == 200, format!("{agree}/200 random graphs agree")));
    let g = DefiningGraph::from_edges(&["a", "b", "c"], &[("a", "b", 3), ("a", "c", 3)]).expect("graph");
    let dc = DomainComplex::augmented(&g.augment(1, 2), 1, 2);
    let l = dc.link(dc.parse_vertex("v_bc").expect("vertex"), LinkOptions::with_radius(6)).expect("link");
    items.push(item("augmented free-pair link", l.is_forest(), format!("{} vertices", l.vertex_count())));
    items
}

fn witness(rng: &mut StdRng) -> Vec<Item> {
    let triangle =
        DefiningGraph::from_edges(&["a", "b", "c"], &[("a", "b", 3), ("a", "c", 3), ("b", "c", 3)]).expect("graph");
    let path = DefiningGraph::from_edges(&["a", "b", "c"], &[("a", "b", 3), ("a", "c", 3)]).expect("graph");
    let square =
        DefiningGraph::from_edges(&["a", "b", "c", "d"], &[("a", "b", 3), ("b", "c", 2), ("c", "d", 2), ("a", "d", 2)])
            .expect("graph");
    let mut items = Vec::new();
    for (label, g, expected) in [("(3,3,3)", &triangle, Situation::S1), ("path", &path, Situation::S2), ("square", &square, Situation::S4)] {
        let s = classify_cases(g).map(|c| c.situation);
        items.push(item(format!("classify {label}"), s == Ok(expected), format!("{s:?}")));
    }
    let (mut tried, mut verified) = (0, 0);
    while tried < 100 {
        let g = random_graph(rng);
        if admissible(&g).is_err() {
            continue;
        }
        tried += 1;
        verified += usize::from(classify_cases(&g).is_ok_and(|c| c.verify(&g)));
    }
    items.push(item("random classification", verified == 100, format!("{verified}/100 re-verified")));
    for (label, g, word) in [("(3,3,3)", &triangle, "c"), ("square", &square, "cd")] {
        match run_witness(g, DEFAULT_TOLERANCE) {
            Ok(run) => {
                let c = &run.certificate;
                items.push(item(format!("witness {label}"), c.witness_word == word, c.witness_word.clone()));
                if label == "(3,3,3)" {
                    items.push(item(
                        "open-triangle crossing (3,3,3)",
                        c.crossing.kind == CrossingKind::OpenTriangle,
                        format!("{:?} with clearance {:.3}", c.crossing.kind, c.crossing.clearance),
                    ));
                }
            }
            Err(e) => items.push(item(format!("witness {label}"), false, e.to_string())),
        }
    }
    items
}
