//! Randomized invariants of the triangulation and cusp modules.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use tribound::constructions::{builtin, BuiltinName};
use tribound::construct::cone;
use tribound::cusp::{
    classify_shape, pairing_obstruction_3d, parse_modulus, reduce_modulus, unoriented_canonical, Modulus,
    ShapeClass, DEFAULT_EPSILON,
};
use tribound::cycles::ridge_cycles;
use tribound::faces::face_classes;
use tribound::format::{parse, serialize};
use tribound::iso::{isomorphism, relabel};
use tribound::links::vertex_links;
use tribound::orient::{orient, Orientation};
use tribound::triangulation::extend_gluing;
use tribound::Triangulation;

use common::{corpus, parity, random_exact_modulus, random_relabeling, random_word, rng};

fn sample(index: usize) -> (String, Triangulation) {
    let corpus = corpus();
    corpus[index % corpus.len()].clone()
}

fn closed_sample(index: usize) -> (String, Triangulation) {
    let closed: Vec<_> = corpus().into_iter().filter(|(_, t)| !t.is_partial()).collect();
    closed[index % closed.len()].clone()
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn link_sizes(t: &Triangulation) -> Vec<usize> {
    sorted(vertex_links(t).unwrap().iter().map(|l| l.link.simplex_count()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn relabeling_preserves_invariants(index in 0usize..1000, seed in any::<u64>()) {
        let (name, t) = closed_sample(index);
        let (map, labels) = random_relabeling(&mut rng(seed), &t);
        let u = relabel(&t, &map, &labels);

        prop_assert_eq!(t.validate().valid, u.validate().valid, "{}", name);
        for k in 0..t.dimension() {
            prop_assert_eq!(face_classes(&t, k).unwrap().count(), face_classes(&u, k).unwrap().count());
        }
        if t.dimension() < 2 {
            return Ok(());
        }
        let lengths = |t: &Triangulation| sorted(ridge_cycles(t).unwrap().iter().map(|c| c.length).collect::<Vec<_>>());
        prop_assert_eq!(lengths(&t), lengths(&u));
        prop_assert_eq!(link_sizes(&t), link_sizes(&u));

        match (orient(&t).unwrap(), orient(&u).unwrap()) {
            (Orientation::Orientable(a), Orientation::Orientable(b)) => {
                // transport the old signs: a relabeling contributes its own parity
                let moved: Vec<i8> = {
                    let mut s = vec![0i8; t.simplex_count()];
                    for (old, &new) in map.iter().enumerate() {
                        s[new] = a.signs[old] * parity(&labels[old]);
                    }
                    s
                };
                let flipped: Vec<i8> = moved.iter().map(|x| -x).collect();
                prop_assert!(
                    b.signs == moved || b.signs == flipped || disconnected(&t),
                    "{}: {:?} vs {:?}", name, b.signs, moved
                );
            }
            (Orientation::NotOrientable(_), Orientation::NotOrientable(_)) => {}
            _ => prop_assert!(false, "{}: orientability changed", name),
        }
    }

    #[test]
    fn isomorphism_reflexive_symmetric_and_finds_shuffles(index in 0usize..1000, seed in any::<u64>()) {
        let (name, t) = sample(index);
        let (map, labels) = random_relabeling(&mut rng(seed), &t);
        let u = relabel(&t, &map, &labels);
        let id = isomorphism(&t, &t).unwrap();
        prop_assert!(id.is_some_and(|w| w.verify(&t, &t)), "{}", name);
        let forward = isomorphism(&t, &u).unwrap();
        prop_assert!(forward.is_some_and(|w| w.verify(&t, &u)), "{}", name);
        let backward = isomorphism(&u, &t).unwrap();
        prop_assert!(backward.is_some_and(|w| w.verify(&u, &t)), "{}", name);
    }

    #[test]
    fn extended_gluing_inverts(index in 0usize..1000) {
        let (_, t) = sample(index);
        for g in t.gluings() {
            let there = extend_gluing(g, t.dimension()).unwrap();
            let back = extend_gluing(&g.inverse(), t.dimension()).unwrap();
            prop_assert!(back.map.compose(&there.map).is_identity());
            prop_assert!(there.map.compose(&back.map).is_identity());
        }
    }

    #[test]
    fn ridge_cycles_partition_ridge_incidences(index in 0usize..1000) {
        let (name, t) = closed_sample(index);
        if t.dimension() < 2 {
            return Ok(());
        }
        let traces = ridge_cycles(&t).unwrap();
        let n = t.dimension();
        let per_simplex = (n + 1) * n / 2;
        let total: usize = traces.iter().map(|c| c.length).sum();
        prop_assert_eq!(total, t.simplex_count() * per_simplex, "{}", name);
        let mut seen = BTreeSet::new();
        for c in &traces {
            prop_assert_eq!(c.steps.len(), c.length);
            for step in &c.steps {
                prop_assert!(seen.insert((step.simplex, sorted(step.vertices.clone()))), "{}: repeated ridge", name);
            }
        }
    }

    #[test]
    fn text_format_round_trips(index in 0usize..1000) {
        let (name, t) = sample(index);
        let text = serialize(&t);
        prop_assert_eq!(parse(&text).unwrap(), t, "{}", name);
    }

    #[test]
    fn sl2z_action_preserves_reduction(seed in any::<u64>()) {
        let mut r = rng(seed);
        let z = random_exact_modulus(&mut r);
        let w = random_word(&mut r, 20);
        let moved = Modulus::Exact(w.apply(&z));
        let z = Modulus::Exact(z);
        let reduced = reduce_modulus(&z).unwrap();
        prop_assert_eq!(&reduce_modulus(&moved).unwrap().modulus, &reduced.modulus);
        prop_assert_eq!(&reduce_modulus(&reduced.modulus).unwrap().modulus, &reduced.modulus);
        prop_assert_eq!(classify_shape(&moved).unwrap(), classify_shape(&z).unwrap());
        // the recorded word really carries the input to the canonical point
        prop_assert_eq!(Modulus::Exact(reduced.word.apply(z.exact().unwrap())), reduced.modulus.clone());
    }

    #[test]
    fn mirror_has_same_unoriented_form(seed in any::<u64>()) {
        let z = random_exact_modulus(&mut rng(seed));
        let m = Modulus::Exact(z.mirror());
        let z = Modulus::Exact(z);
        prop_assert_eq!(unoriented_canonical(&z).unwrap(), unoriented_canonical(&m).unwrap());
        prop_assert_eq!(classify_shape(&z).unwrap(), classify_shape(&m).unwrap());
    }

    #[test]
    fn float_path_agrees_away_from_boundary(seed in any::<u64>()) {
        let z = Modulus::Exact(random_exact_modulus(&mut rng(seed)));
        let exact_class = classify_shape(&z).unwrap();
        let reduced = reduce_modulus(&z).unwrap().modulus;
        let (x, y) = reduced.approx();
        let margin = 100.0 * DEFAULT_EPSILON;
        let distances = [x.abs(), (x.abs() - 0.5).abs(), (x * x + y * y - 1.0).abs()];
        let clear = distances.iter().all(|&d| d > margin);
        let float = z.to_float(DEFAULT_EPSILON).unwrap();
        // exactly on a boundary curve the float path lands within epsilon of it
        if clear || exact_class != ShapeClass::Generic {
            prop_assert_eq!(classify_shape(&float).unwrap(), exact_class);
        }
    }

    #[test]
    fn pairing_verdict_ignores_order_and_rectangular_cusps(
        picks in proptest::collection::vec(0usize..POOL.len(), 1..7),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        let moduli: Vec<Modulus> = picks.iter().map(|&i| parse_modulus(POOL[i], None).unwrap()).collect();
        let verdict = pairing_obstruction_3d(&moduli).unwrap();
        let mut shuffled = moduli.clone();
        shuffled.shuffle(&mut rng(seed));
        let again = pairing_obstruction_3d(&shuffled).unwrap();
        prop_assert_eq!((again.tag, again.rule), (verdict.tag, verdict.rule));
        let mut more = moduli;
        more.push(parse_modulus("2*i", None).unwrap());
        more.push(parse_modulus("1/2*i", None).unwrap());
        prop_assert_eq!(pairing_obstruction_3d(&more).unwrap().tag, verdict.tag);
    }
}

const POOL: [&str; 7] = [
    "-1/2+1/2*sqrt(3)*i",
    "1/2+1/2*sqrt(3)*i",
    "i",
    "7+i",
    "1/5+3/2*i",
    "-1/5+3/2*i",
    "(1+sqrt(2))*i",
];

fn disconnected(t: &Triangulation) -> bool {
    face_classes(t, t.dimension() - 1).is_ok() && {
        let mut reach = vec![false; t.simplex_count()];
        reach[0] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for g in t.gluings() {
                if reach[g.from_simplex] != reach[g.to_simplex] {
                    reach[g.from_simplex] = true;
                    reach[g.to_simplex] = true;
                    changed = true;
                }
            }
        }
        reach.contains(&false)
    }
}

#[test]
fn cone_then_apex_link_recovers_input() {
    for (base, coned) in [(BuiltinName::Fig8, BuiltinName::ConeY), (BuiltinName::Sibling, BuiltinName::ConeXZ)] {
        let t = builtin(base).data;
        let c = cone(&t).unwrap();
        assert_eq!(c, builtin(coned).data);
        let apex = (t.dimension() + 2) as u8;
        let links = vertex_links(&c).unwrap();
        let link = links
            .iter()
            .find(|l| l.incidences.iter().all(|i| i.vertices == [apex]))
            .expect("apex link");
        assert!(isomorphism(&link.link, &t).unwrap().is_some(), "{base:?}");
    }
}
