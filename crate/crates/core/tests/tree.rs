mod common;

use artin_core::coset_tree::{CosetTree, CosetVertex, TreeBall, TreeVertex, DEFAULT_BUDGET};
use artin_core::dihedral::DihedralGroup;
use artin_core::freeword::{Letter, Word};
use common::{bfs, random_word, reduced_words_up_to, to_word};
use rand::{Rng, SeedableRng};

#[test]
fn radius_eight_ball_is_a_tree() {
    let g = DihedralGroup::new(3).unwrap();
    let ball = TreeBall::build(g, 8, DEFAULT_BUDGET).unwrap();
    assert!(ball.is_acyclic());
    assert_eq!(ball.edge_count() + 1, ball.vertices().len());
    assert_eq!(ball.interior_valences().into_iter().collect::<Vec<_>>(), vec![2, 3]);
}

#[test]
fn tree_distance_is_twice_the_atom_count() {
    let g = DihedralGroup::new(3).unwrap();
    let ball = TreeBall::build(g, 8, DEFAULT_BUDGET).unwrap();
    let base = TreeVertex::Coset(CosetVertex::base());
    let dist = bfs(&ball, &base, false);
    let tree = CosetTree::new(g);
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 100 {
        let w = random_word(&mut rng, 8);
        let form = g.normal_form(&w);
        if form.atom_count() > 4 {
            continue;
        }
        let image = TreeVertex::Coset(tree.act(&w, &CosetVertex::base()));
        assert_eq!(dist[&image], 2 * form.atom_count() as u64, "{w}");
        assert_eq!(tree.distance(&base, &image), dist[&image]);
        checked += 1;
    }
}

#[test]
fn edge_stabiliser_is_the_centre() {
    let g = DihedralGroup::new(3).unwrap();
    let tree = CosetTree::new(g);
    let base = CosetVertex::base();
    let simplex = tree.simplices_at(&base)[0].clone();
    let (a, b) = (Word::generator(Letter::A), Word::generator(Letter::B));
    for raw in reduced_words_up_to(4) {
        let w = to_word(&raw);
        let f = g.normal_form(&w);
        let central = g.normal_form(&w.concat(&a)) == g.normal_form(&a.concat(&w))
            && g.normal_form(&w.concat(&b)) == g.normal_form(&b.concat(&w));
        let fixes = tree.act_form(&f, &base) == base && tree.act_simplex(&f, &simplex) == simplex;
        assert_eq!(fixes, central, "{w}");
    }
}

#[test]
fn dhat_dp_matches_coned_bfs() {
    let g = DihedralGroup::new(3).unwrap();
    let ball = TreeBall::build(g, 10, DEFAULT_BUDGET).unwrap();
    let tree = ball.tree();
    let cosets: Vec<CosetVertex> = ball.cosets().cloned().collect();
    let mut rng = rand::rngs::StdRng::seed_from_u64(13);
    for _ in 0..50 {
        let x = &cosets[rng.gen_range(0..cosets.len())];
        let y = &cosets[rng.gen_range(0..cosets.len())];
        let dist = bfs(&ball, &TreeVertex::Coset(x.clone()), true);
        let d = tree.dhat(x, y);
        assert_eq!(d.upper, dist[&TreeVertex::Coset(y.clone())], "{x} -> {y}");
        assert!(d.lower <= d.upper);
    }
}

#[test]
fn dhat_is_at_most_twice_the_syllable_count() {
    let g = DihedralGroup::new(3).unwrap();
    let tree = CosetTree::new(g);
    let mut rng = rand::rngs::StdRng::seed_from_u64(17);
    for _ in 0..100 {
        let w = random_word(&mut rng, 12);
        let image = tree.act(&w, &CosetVertex::base());
        let d = tree.dhat(&CosetVertex::base(), &image);
        assert!(d.upper <= 2 * w.syllable_count() as u64, "{w}");
    }
}
