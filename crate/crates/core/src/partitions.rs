//! Weighted decompositions and partitions: the monoid of `(S_n, Q^n)` and
//! its orbits in combinatorial form, with structure constants counted by
//! graph covers.
//!
//! Vertices are `0..n`. A non-singleton block of size `s` carries a weight
//! `μ ≥ s - 1`; singletons carry weight 0 and are left implicit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::arrangement::IntersectionPoset;
use crate::error::{Error, Result};
use crate::monoid::{Letter, Monoid, MonoidElement};

/// A set partition of `0..n` with weights on its non-singleton blocks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedDecomposition {
    n: usize,
    /// Non-singleton blocks (each sorted) with weights, sorted.
    blocks: Vec<(Vec<usize>, u32)>,
}

impl WeightedDecomposition {
    pub fn new(n: usize, blocks: Vec<(Vec<usize>, u32)>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for (mut b, mu) in blocks {
            b.sort_unstable();
            for &v in &b {
                if v >= n || seen[v] {
                    return Err(Error::InvalidPartition(format!("vertex {v} repeated or out of range")));
                }
                seen[v] = true;
            }
            match b.len() {
                0 => return Err(Error::InvalidPartition("empty block".into())),
                1 if mu != 0 => return Err(Error::InvalidPartition("singleton with nonzero weight".into())),
                1 => {}
                s if (mu as usize) < s - 1 => {
                    return Err(Error::InvalidPartition(format!("block of size {s} with weight {mu}")))
                }
                _ => out.push((b, mu)),
            }
        }
        out.sort();
        Ok(WeightedDecomposition { n, blocks: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[(Vec<usize>, u32)] {
        &self.blocks
    }

    pub fn weight(&self) -> u32 {
        self.blocks.iter().map(|b| b.1).sum()
    }

    pub fn partition(&self) -> WeightedPartition {
        WeightedPartition::from_parts(self.blocks.iter().map(|(b, mu)| (b.len(), *mu)).collect())
            .expect("decompositions have valid weights")
    }
}

/// A multiset of `(size, weight)` pairs; singletons `(1, 0)` are implicit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedPartition {
    /// Non-singleton parts, sorted in decreasing order.
    parts: Vec<(usize, u32)>,
}

impl WeightedPartition {
    pub fn from_parts(parts: Vec<(usize, u32)>) -> Result<Self> {
        let mut out = Vec::new();
        for (s, mu) in parts {
            match s {
                0 => return Err(Error::InvalidPartition("part of size 0".into())),
                1 if mu != 0 => return Err(Error::InvalidPartition("singleton with nonzero weight".into())),
                1 => {}
                _ if (mu as usize) < s - 1 => {
                    return Err(Error::InvalidPartition(format!("part of size {s} with weight {mu}")))
                }
                _ => out.push((s, mu)),
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(WeightedPartition { parts: out })
    }

    pub fn empty() -> Self {
        WeightedPartition { parts: vec![] }
    }

    pub fn parts(&self) -> &[(usize, u32)] {
        &self.parts
    }

    /// Vertices used by non-singleton parts.
    pub fn support_size(&self) -> usize {
        self.parts.iter().map(|p| p.0).sum()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().map(|p| p.1).sum()
    }

    /// All parts including the singletons needed to make up `n` vertices.
    pub fn padded(&self, n: usize) -> Result<Vec<(usize, u32)>> {
        let used = self.support_size();
        if used > n {
            return Err(Error::InvalidPartition(format!("needs {used} vertices, only {n} available")));
        }
        let mut out = self.parts.clone();
        out.extend(std::iter::repeat_n((1, 0), n - used));
        Ok(out)
    }

    /// The decomposition placing parts (largest first) on consecutive
    /// vertices.
    pub fn canonical_decomposition(&self, n: usize) -> Result<WeightedDecomposition> {
        self.padded(n)?;
        let mut next = 0;
        let blocks = self
            .parts
            .iter()
            .map(|&(s, mu)| {
                let b: Vec<usize> = (next..next + s).collect();
                next += s;
                (b, mu)
            })
            .collect();
        WeightedDecomposition::new(n, blocks)
    }
}

impl fmt::Display for WeightedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.parts.iter().map(|(s, mu)| format!("({s},{mu})")).collect();
        write!(f, "{{{}}}", ps.join(","))
    }
}

/// Bridge between decompositions and the monoid of the `S_n` mirror
/// arrangement on `Q^n`.
pub struct SymmetricMonoid<'a> {
    poset: &'a IntersectionPoset,
    n: usize,
    /// Hyperplane ↦ the pair `(i, j)` with normal `e_i - e_j`.
    pairs: Vec<(usize, usize)>,
    by_pair: BTreeMap<(usize, usize), usize>,
}

impl<'a> SymmetricMonoid<'a> {
    pub fn new(poset: &'a IntersectionPoset) -> Result<Self> {
        let arr = poset.arrangement();
        let n = arr.ambient_dim();
        let mut pairs = Vec::new();
        for h in 0..arr.len() {
            let nz: Vec<usize> = (0..n).filter(|&i| !arr.normal(h)[i].is_zero()).collect();
            let ok = nz.len() == 2 && arr.normal(h)[nz[0]] == -arr.normal(h)[nz[1]].clone();
            if !ok {
                return Err(Error::Invalid("not the braid arrangement".into()));
            }
            pairs.push((nz[0], nz[1]));
        }
        if pairs.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::Invalid("not the full braid arrangement".into()));
        }
        let by_pair = pairs.iter().enumerate().map(|(h, &p)| (p, h)).collect();
        Ok(SymmetricMonoid { poset, n, pairs, by_pair })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn to_monoid(&self, d: &WeightedDecomposition) -> Result<MonoidElement> {
        if d.n != self.n {
            return Err(Error::InvalidPartition(format!("decomposition of {} in S_{}", d.n, self.n)));
        }
        let letters: Vec<Letter> = d
            .blocks
            .iter()
            .map(|(b, mu)| {
                let mut hs = Vec::new();
                for (k, &i) in b.iter().enumerate() {
                    for &j in &b[k + 1..] {
                        hs.push(self.by_pair[&(i, j)]);
                    }
                }
                Letter { flat: self.poset.closure(&hs), mu: *mu }
            })
            .collect();
        Monoid::new(self.poset).element(&letters)
    }

    pub fn to_decomposition(&self, e: &MonoidElement) -> Result<WeightedDecomposition> {
        let blocks = e
            .letters()
            .iter()
            .map(|l| {
                let vs: BTreeSet<usize> = self.poset.flat(l.flat).hyperplanes.iter().flat_map(|&h| {
                    let (i, j) = self.pairs[h];
                    [i, j]
                }).collect();
                (vs.into_iter().collect(), l.mu)
            })
            .collect();
        WeightedDecomposition::new(self.n, blocks)
    }

    /// The class of an orbit, read off any of its members.
    pub fn orbit_to_partition(&self, orbit: &[MonoidElement]) -> Result<WeightedPartition> {
        let first = orbit.first().ok_or(Error::InvalidPartition("empty orbit".into()))?;
        Ok(self.to_decomposition(first)?.partition())
    }

    /// Canonical representative of the orbit of `λ`.
    pub fn partition_to_element(&self, lambda: &WeightedPartition) -> Result<MonoidElement> {
        self.to_monoid(&lambda.canonical_decomposition(self.n)?)
    }

    /// All decompositions of type `λ`: the orbit, without using the group.
    pub fn placements(&self, lambda: &WeightedPartition) -> Result<Vec<WeightedDecomposition>> {
        lambda.padded(self.n)?;
        let mut out = BTreeSet::new();
        place(&lambda.parts, self.n, &mut vec![false; self.n], &mut Vec::new(), &mut out);
        Ok(out.into_iter().collect())
    }
}

fn place(
    parts: &[(usize, u32)],
    n: usize,
    used: &mut Vec<bool>,
    acc: &mut Vec<(Vec<usize>, u32)>,
    out: &mut BTreeSet<WeightedDecomposition>,
) {
    let Some(&(s, mu)) = parts.first() else {
        out.insert(WeightedDecomposition::new(n, acc.clone()).expect("placement is valid"));
        return;
    };
    let free: Vec<usize> = (0..n).filter(|&v| !used[v]).collect();
    for block in subsets(&free, s) {
        for &v in &block {
            used[v] = true;
        }
        acc.push((block.clone(), mu));
        place(&parts[1..], n, used, acc, out);
        acc.pop();
        for &v in &block {
            used[v] = false;
        }
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    items.iter().copied().combinations(k).collect()
}

/// Weighted partitions of total weight `d` using at most `n` vertices.
pub fn weighted_partitions(n: usize, d: u32) -> Vec<WeightedPartition> {
    let mut out = BTreeSet::new();
    fn go(max_size: usize, room: usize, d: u32, acc: &mut Vec<(usize, u32)>, out: &mut BTreeSet<WeightedPartition>) {
        if d == 0 {
            out.insert(WeightedPartition::from_parts(acc.clone()).expect("valid"));
            return;
        }
        for s in (2..=max_size.min(room)).rev() {
            for mu in (s as u32 - 1)..=d {
                // keep parts in decreasing (size, weight) order
                if acc.last().is_some_and(|&last| (s, mu) > last) {
                    continue;
                }
                acc.push((s, mu));
                go(s, room - s, d - mu, acc, out);
                acc.pop();
            }
        }
    }
    go(n, n, d, &mut Vec::new(), &mut out);
    out.into_iter().collect()
}

/// Images of an embedding of the complete-graph union of `λ` into `K_n`:
/// sets of disjoint weighted blocks of the right shape. Counting images
/// is counting embeddings modulo automorphisms of the source.
fn images(lambda: &WeightedPartition, n: usize) -> Vec<Vec<(Vec<usize>, u32)>> {
    let mut out = BTreeSet::new();
    place(&lambda.parts, n, &mut vec![false; n], &mut Vec::new(), &mut out);
    out.into_iter().map(|d| d.blocks).collect()
}

/// `N^λ_{λ1,λ2}`: pairs of images of `λ1` and `λ2` in the graph `G_λ`
/// such that every block lies inside one component of `G_λ`, the blocks
/// inside each non-singleton component cover it and overlap in a
/// connected pattern, and their weights add up to the component's weight.
pub fn structure_constant(
    l1: &WeightedPartition,
    l2: &WeightedPartition,
    lambda: &WeightedPartition,
    n: usize,
) -> Result<usize> {
    for l in [l1, l2, lambda] {
        l.padded(n)?;
    }
    if l1.weight() + l2.weight() != lambda.weight() {
        return Ok(0);
    }
    let g = lambda.canonical_decomposition(n)?;
    let mut component = vec![None; n];
    for (c, (b, _)) in g.blocks.iter().enumerate() {
        for &v in b {
            component[v] = Some(c);
        }
    }
    let inside = |img: &Vec<(Vec<usize>, u32)>| {
        img.iter().all(|(b, _)| {
            let c = component[b[0]];
            c.is_some() && b.iter().all(|&v| component[v] == c)
        })
    };
    let i1: Vec<_> = images(l1, n).into_iter().filter(inside).collect();
    let i2: Vec<_> = images(l2, n).into_iter().filter(inside).collect();
    let mut count = 0;
    for a in &i1 {
        for b in &i2 {
            if covers(&g, a, b) {
                count += 1;
            }
        }
    }
    Ok(count)
}

fn covers(g: &WeightedDecomposition, a: &[(Vec<usize>, u32)], b: &[(Vec<usize>, u32)]) -> bool {
    g.blocks.iter().all(|(comp, mu)| {
        let mine: Vec<&(Vec<usize>, u32)> = a.iter().chain(b).filter(|(blk, _)| comp.contains(&blk[0])).collect();
        let weight: u32 = mine.iter().map(|x| x.1).sum();
        if weight != *mu {
            return false;
        }
        // connectivity of the overlap pattern, and coverage
        let mut reached: BTreeSet<usize> = mine.first().map(|x| x.0.iter().copied().collect()).unwrap_or_default();
        let mut used = vec![false; mine.len()];
        if !mine.is_empty() {
            used[0] = true;
        }
        loop {
            let mut grew = false;
            for (k, (blk, _)) in mine.iter().map(|x| (&x.0, x.1)).enumerate() {
                if !used[k] && blk.iter().any(|v| reached.contains(v)) {
                    used[k] = true;
                    reached.extend(blk.iter().copied());
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        used.iter().all(|&u| u) && reached.len() == comp.len()
    })
}

/// `[λ1]·[λ2] = Σ N^λ [λ]`, listing only nonzero terms.
pub fn multiply_partitions(
    l1: &WeightedPartition,
    l2: &WeightedPartition,
    n: usize,
) -> Result<Vec<(WeightedPartition, usize)>> {
    let mut out = Vec::new();
    for lambda in weighted_partitions(n, l1.weight() + l2.weight()) {
        let c = structure_constant(l1, l2, &lambda, n)?;
        if c > 0 {
            out.push((lambda, c));
        }
    }
    Ok(out)
}
