#![allow(dead_code)]

use std::collections::BTreeMap;

use camring::arrangement::{Arrangement, FlatId, IntersectionPoset};
use camring::exactlin::{rat, Rational, RationalMatrix};
use camring::monoid::Letter;
use camring::reflection::ReflectionGroup;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub struct Fixture {
    pub name: &'static str,
    pub group: ReflectionGroup,
    pub poset: IntersectionPoset,
}

pub fn fixture(name: &'static str, group: ReflectionGroup) -> Fixture {
    let poset = IntersectionPoset::new(group.mirror_arrangement().clone());
    Fixture { name, group, poset }
}

pub fn sigma(n: usize) -> Fixture {
    let name = ["", "S1", "S2", "S3", "S4", "S5"][n];
    fixture(name, ReflectionGroup::symmetric(n).unwrap())
}

pub fn b(n: usize) -> Fixture {
    fixture(["", "B1", "B2", "B3"][n], ReflectionGroup::signed_permutation(n).unwrap())
}

/// The built-in groups of order at most 120.
pub fn small_builtins() -> Vec<Fixture> {
    vec![sigma(2), sigma(3), sigma(4), sigma(5), b(2), b(3)]
}

pub fn rank_of(vectors: &[&Vec<Rational>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = vectors.iter().map(|v| (*v).clone()).collect();
    RationalMatrix::from_rows(&rows, dim).unwrap().rank()
}

/// Components from separators: `S` separates iff `r(S) + r(E∖S) = r(E)`;
/// the component of `e` is the intersection of all separators containing it.
pub fn separator_components(dim: usize, vectors: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    let n = vectors.len();
    let full = rank_of(&vectors.iter().collect::<Vec<_>>(), dim);
    let mut separators = Vec::new();
    for mask in 1u32..(1 << n) {
        let inside: Vec<&Vec<Rational>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &vectors[i]).collect();
        let outside: Vec<&Vec<Rational>> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| &vectors[i]).collect();
        if rank_of(&inside, dim) + rank_of(&outside, dim) == full {
            separators.push(mask);
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for e in 0..n {
        let m = separators.iter().filter(|&&s| s >> e & 1 == 1).fold(u32::MAX, |a, &s| a & s);
        let c: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
        if !comps.contains(&c) {
            comps.push(c);
        }
    }
    comps.sort();
    comps
}

/// Random central arrangement with small integer normals, some of them
/// forced into linear dependence so that components are nontrivial.
pub fn random_arrangement(rng: &mut StdRng) -> Arrangement {
    let dim = rng.gen_range(1..=5);
    let target = rng.gen_range(1..=10);
    let mut normals: Vec<Vec<Rational>> = Vec::new();
    let mut tries = 0;
    while normals.len() < target && tries < 200 {
        tries += 1;
        let v: Vec<Rational> = if normals.len() >= 2 && rng.gen_bool(0.4) {
            let i = rng.gen_range(0..normals.len());
            let j = rng.gen_range(0..normals.len());
            let (a, b) = (rat(rng.gen_range(-2..=2)), rat(rng.gen_range(-2..=2)));
            normals[i].iter().zip(&normals[j]).map(|(x, y)| x * &a + y * &b).collect()
        } else {
            // sparse rows keep the arrangement from being one big component
            (0..dim).map(|_| if rng.gen_bool(0.5) { rat(0) } else { rat(rng.gen_range(-2..=2)) }).collect()
        };
        if v.iter().all(|x| x == &rat(0)) {
            continue;
        }
        let parallel = normals.iter().any(|w| rank_of(&[w, &v], dim) == 1);
        if !parallel {
            normals.push(v);
        }
    }
    Arrangement::new(dim, normals, None).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Normal form by grouping: with `Y` the meet of all letters, one letter per
/// irreducible component `B` of `A_Y`, carrying the flat cut out by `B` and
/// the total weight of the letters lying in `B`.
pub fn grouped_normal_form(poset: &IntersectionPoset, letters: &[Letter]) -> Vec<Letter> {
    if letters.is_empty() {
        return Vec::new();
    }
    let mut all: Vec<usize> = letters.iter().flat_map(|l| poset.flat(l.flat).hyperplanes.clone()).collect();
    all.sort_unstable();
    all.dedup();
    let y = poset.closure(&all);
    let comps = poset.arrangement().components_of(&poset.flat(y).hyperplanes);
    let mut weights: BTreeMap<usize, u32> = BTreeMap::new();
    for l in letters {
        let h = poset.flat(l.flat).hyperplanes[0];
        let b = comps.iter().position(|c| c.contains(&h)).unwrap();
        *weights.entry(b).or_default() += l.mu;
    }
    let mut out: Vec<Letter> = weights
        .into_iter()
        .map(|(b, mu)| Letter { flat: poset.flat_of_hyperplanes(&comps[b]).unwrap_or_else(|| poset.closure(&comps[b])), mu })
        .collect();
    out.sort_unstable();
    out
}

pub fn flat_with_hyperplanes(poset: &IntersectionPoset, labels: &[&str]) -> FlatId {
    let arr = poset.arrangement();
    let hs: Vec<usize> = labels.iter().map(|l| arr.labels().iter().position(|x| x == l).unwrap()).collect();
    poset.closure(&hs)
}
