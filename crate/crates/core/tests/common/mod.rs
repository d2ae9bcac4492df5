//! Shared fixtures: a small triangulation corpus, random generators and
//! brute-force oracles written independently of the library internals.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tribound::constructions::{builtin, BuiltinName};
use tribound::cusp::{ExactModulus, Generator, QuadraticReal, Word};
use tribound::iso::relabel;
use tribound::{FacetGluing, Triangulation};

pub const SEED: u64 = 0x7269_6275_6e64;

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ stream)
}

/// Sorted `size`-subsets of `1..=n+1`.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<u8>> {
    let labels = n + 1;
    (0u32..1 << labels)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..labels as u8).filter(|b| m >> b & 1 == 1).map(|b| b + 1).collect())
        .collect()
}

/// Glues every facet of `count` n-simplices, pairing facets at random with
/// random correspondences. `count * (n+1)` must be even.
pub fn random_closed(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Triangulation {
    let mut facets: Vec<(usize, Vec<u8>)> = (0..count)
        .flat_map(|s| subsets(n, n).into_iter().map(move |f| (s, f)))
        .collect();
    facets.shuffle(rng);
    let gluings = facets
        .chunks(2)
        .map(|pair| {
            let mut to = pair[1].1.clone();
            to.shuffle(rng);
            FacetGluing::new(pair[0].0, pair[0].1.clone(), pair[1].0, to)
        })
        .collect();
    Triangulation::new(n, count, gluings, false)
}

/// Random simplex permutation and per-simplex relabelings.
pub fn random_relabeling(rng: &mut ChaCha8Rng, t: &Triangulation) -> (Vec<usize>, Vec<Vec<u8>>) {
    let mut map: Vec<usize> = (0..t.simplex_count()).collect();
    map.shuffle(rng);
    let labels: Vec<Vec<u8>> = (0..t.simplex_count())
        .map(|_| {
            let mut l: Vec<u8> = (1..=t.dimension() as u8 + 1).collect();
            l.shuffle(rng);
            l
        })
        .collect();
    (map, labels)
}

/// One random edit that keeps the triangulation valid: re-twist a gluing,
/// drop a gluing (making it partial), or relabel.
pub fn mutate(rng: &mut ChaCha8Rng, t: &Triangulation) -> Triangulation {
    let mut gluings = t.gluings().to_vec();
    match rng.gen_range(0..3) {
        0 if !gluings.is_empty() => {
            let i = rng.gen_range(0..gluings.len());
            let g = &mut gluings[i];
            loop {
                g.to_vertices.shuffle(rng);
                // a facet glued to itself must not become the identity
                let self_glued = g.from_simplex == g.to_simplex
                    && g.from_vertices.iter().copied().collect::<BTreeSet<_>>()
                        == g.to_vertices.iter().copied().collect::<BTreeSet<_>>();
                if !(self_glued && g.from_vertices == g.to_vertices) {
                    break;
                }
            }
            Triangulation::new(t.dimension(), t.simplex_count(), gluings, t.is_partial())
        }
        1 if !gluings.is_empty() => {
            gluings.remove(rng.gen_range(0..gluings.len()));
            Triangulation::new(t.dimension(), t.simplex_count(), gluings, true)
        }
        _ => {
            let (map, labels) = random_relabeling(rng, t);
            relabel(t, &map, &labels)
        }
    }
}

/// Every builtin, a few hand-made small cases, random closed triangulations
/// and 100 random mutations, all with at most 6 simplices.
pub fn corpus() -> Vec<(String, Triangulation)> {
    let mut out: Vec<(String, Triangulation)> = BuiltinName::ALL
        .iter()
        .map(|&b| (b.as_str().to_string(), builtin(b).data))
        .collect();
    let g = FacetGluing::new;
    out.push(("circle".into(), Triangulation::new(1, 1, vec![g(0, vec![1], 0, vec![2])], false)));
    out.push((
        "sphere2".into(),
        Triangulation::new(
            2,
            2,
            vec![g(0, vec![1, 2], 1, vec![1, 2]), g(0, vec![2, 3], 1, vec![2, 3]), g(0, vec![1, 3], 1, vec![1, 3])],
            false,
        ),
    ));
    out.push((
        "projective_plane".into(),
        Triangulation::new(
            2,
            2,
            vec![g(0, vec![1, 2], 1, vec![1, 2]), g(0, vec![2, 3], 1, vec![2, 3]), g(0, vec![1, 3], 1, vec![3, 1])],
            false,
        ),
    ));
    out.push(("lone_simplex".into(), Triangulation::new(3, 1, vec![], true)));
    let double4: Vec<FacetGluing> = subsets(4, 4).into_iter().map(|f| g(0, f.clone(), 1, f)).collect();
    out.push(("double_4_simplex".into(), Triangulation::new(4, 2, double4, false)));

    let mut r = rng(1);
    for i in 0..20 {
        let (n, count) = [(2, 2), (2, 4), (3, 2), (3, 4), (3, 6), (4, 2), (4, 4), (4, 6)][i % 8];
        out.push((format!("random_{i}"), random_closed(&mut r, n, count)));
    }
    let bases: Vec<Triangulation> = out.iter().map(|(_, t)| t.clone()).collect();
    for i in 0..100 {
        let base = &bases[i % bases.len()];
        let mut t = mutate(&mut r, base);
        if r.gen_bool(0.5) {
            t = mutate(&mut r, &t);
        }
        out.push((format!("mutation_{i}"), t));
    }
    out
}

/// Full vertex map of a gluing as 1-based images, computed from scratch.
pub fn full_map(g: &FacetGluing, n: usize) -> Vec<u8> {
    let mut images = vec![0u8; n + 1];
    for (&a, &b) in g.from_vertices.iter().zip(&g.to_vertices) {
        images[(a - 1) as usize] = b;
    }
    let missing_from = (1..=n as u8 + 1).find(|l| !g.from_vertices.contains(l)).unwrap();
    let missing_to = (1..=n as u8 + 1).find(|l| !g.to_vertices.contains(l)).unwrap();
    images[(missing_from - 1) as usize] = missing_to;
    images
}

/// Sign by counting inversions.
pub fn parity(images: &[u8]) -> i8 {
    let mut inversions = 0;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub type Partition = BTreeSet<BTreeSet<(usize, Vec<u8>)>>;

/// k-face classes by Warshall transitive closure of the gluing relation.
pub fn oracle_face_classes(t: &Triangulation, k: usize) -> Partition {
    let n = t.dimension();
    let items: Vec<(usize, Vec<u8>)> = (0..t.simplex_count())
        .flat_map(|s| subsets(n, k + 1).into_iter().map(move |f| (s, f)))
        .collect();
    let index = |s: usize, f: &[u8]| items.iter().position(|(a, b)| *a == s && b == f).unwrap();
    let m = items.len();
    let mut reach = vec![vec![false; m]; m];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for g in t.gluings() {
        let images = full_map(g, n);
        for (s, f) in items.iter().filter(|(s, _)| *s == g.from_simplex) {
            if !f.iter().all(|l| g.from_vertices.contains(l)) {
                continue;
            }
            let mut image: Vec<u8> = f.iter().map(|&l| images[(l - 1) as usize]).collect();
            image.sort();
            let (a, b) = (index(*s, f), index(g.to_simplex, &image));
            reach[a][b] = true;
            reach[b][a] = true;
        }
    }
    for via in 0..m {
        let through = reach[via].clone();
        for row in reach.iter_mut().filter(|row| row[via]) {
            for (cell, &step) in row.iter_mut().zip(&through) {
                *cell |= step;
            }
        }
    }
    (0..m)
        .map(|a| (0..m).filter(|&b| reach[a][b]).map(|b| items[b].clone()).collect())
        .collect()
}

/// Whether some sign vector makes every gluing orientation-reversing,
/// by trying all of them.
pub fn oracle_orientable(t: &Triangulation) -> bool {
    let count = t.simplex_count();
    let parities: Vec<i8> = t.gluings().iter().map(|g| parity(&full_map(g, t.dimension()))).collect();
    (0u32..1 << count).any(|mask| {
        let sign = |s: usize| if mask >> s & 1 == 1 { -1i8 } else { 1 };
        t.gluings()
            .iter()
            .zip(&parities)
            .all(|(g, &p)| sign(g.from_simplex) * sign(g.to_simplex) * p == -1)
    })
}

pub fn as_partition(classes: &[Vec<tribound::faces::FaceIncidence>]) -> Partition {
    classes
        .iter()
        .map(|c| c.iter().map(|i| (i.simplex, i.vertices.clone())).collect())
        .collect()
}

fn small_ratio(rng: &mut ChaCha8Rng, num: i64, den: i64) -> BigRational {
    BigRational::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into())
}

/// A random exact point of the upper half-plane in Q or Q(√d).
pub fn random_exact_modulus(rng: &mut ChaCha8Rng) -> ExactModulus {
    let d = *[1u64, 2, 3, 5, 6, 7].choose(rng).unwrap();
    let re = QuadraticReal::new(small_ratio(rng, 30, 9), small_ratio(rng, 4, 5), d).unwrap();
    loop {
        let im = QuadraticReal::new(small_ratio(rng, 12, 7), small_ratio(rng, 3, 4), d).unwrap();
        if im.signum() > 0 {
            return ExactModulus::new(re, im).unwrap();
        }
    }
}

/// A word of at most `max_len` letters from T, T^-1 and S.
pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| match rng.gen_range(0..3) {
                0 => Generator::T(1.into()),
                1 => Generator::T((-1).into()),
                _ => Generator::S,
            })
            .collect(),
    )
}
