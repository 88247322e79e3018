//! Central hyperplane arrangements, their intersection posets and
//! irreducible decompositions.
//!
//! Flats are ordered by *reverse* inclusion: `X ≤ Y` iff `X ⊇ Y`, which for
//! flats is the same as `A_X ⊆ A_Y`. The whole space `t` is the bottom.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{dot, normalize_direction, Rational, RationalMatrix, Subspace};

pub type FlatId = usize;

/// A finite central arrangement in `Q^n`, given by normal covectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ambient_dim: usize,
    normals: Vec<Vec<Rational>>,
    labels: Vec<String>,
}

impl Arrangement {
    pub fn new(ambient_dim: usize, normals: Vec<Vec<Rational>>, labels: Option<Vec<String>>) -> Result<Self> {
        for (i, n) in normals.iter().enumerate() {
            if n.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "normal {i} has length {} in dimension {ambient_dim}",
                    n.len()
                )));
            }
            if n.iter().all(Zero::is_zero) {
                return Err(Error::ZeroNormal(i));
            }
        }
        let mut seen: HashMap<Vec<Rational>, usize> = HashMap::new();
        for (i, n) in normals.iter().enumerate() {
            let key = normalize_direction(n).expect("nonzero");
            if let Some(&j) = seen.get(&key) {
                return Err(Error::DuplicateHyperplane(j, i));
            }
            seen.insert(key, i);
        }
        let labels = match labels {
            Some(l) if l.len() != normals.len() => return Err(Error::LabelCount(l.len(), normals.len())),
            Some(l) => l,
            None => (0..normals.len()).map(|i| format!("H{i}")).collect(),
        };
        Ok(Arrangement { ambient_dim, normals, labels })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normal(&self, i: usize) -> &[Rational] {
        &self.normals[i]
    }

    pub fn normals(&self) -> &[Vec<Rational>] {
        &self.normals
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn hyperplane(&self, i: usize) -> Subspace {
        Subspace::cut_out_by(self.ambient_dim, &self.normals[i..=i]).expect("normal has ambient length")
    }

    /// Intersection of all hyperplanes.
    pub fn center(&self) -> Subspace {
        Subspace::cut_out_by(self.ambient_dim, &self.normals).expect("normals have ambient length")
    }

    pub fn rank(&self) -> usize {
        self.ambient_dim - self.center().dim()
    }

    /// Hyperplanes containing `x`.
    pub fn hyperplanes_containing(&self, x: &Subspace) -> Vec<usize> {
        let basis = x.basis_vectors();
        (0..self.len())
            .filter(|&i| basis.iter().all(|b| dot(&self.normals[i], b).is_zero()))
            .collect()
    }

    pub fn sub_arrangement(&self, indices: &[usize]) -> Arrangement {
        Arrangement {
            ambient_dim: self.ambient_dim,
            normals: indices.iter().map(|&i| self.normals[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }

    /// Irreducible components (as sorted index sets, ordered by least
    /// element) of the subarrangement `indices`. An empty subset has none.
    pub fn components_of(&self, indices: &[usize]) -> Vec<Vec<usize>> {
        let sub: Vec<Vec<Rational>> = indices.iter().map(|&i| self.normals[i].clone()).collect();
        let mut comps: Vec<Vec<usize>> = matroid_components(self.ambient_dim, &sub)
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|k| indices[k]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        comps.sort();
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_of(&(0..self.len()).collect::<Vec<_>>())
    }

    pub fn is_irreducible(&self) -> bool {
        self.components().len() == 1
    }

    /// Quotient by the center. The returned arrangement lives in
    /// `Q^rank`; `quotient` maps the old coordinates onto the new ones and
    /// every normal factors through it.
    pub fn essentialize(&self) -> Essentialization {
        let span = Subspace::span(self.ambient_dim, &self.normals).expect("normals have ambient length");
        let basis = span.basis();
        let r = basis.rows();
        // Covector n equals c · basis; c are the new coordinates of n.
        let normals: Vec<Vec<Rational>> = self
            .normals
            .iter()
            .map(|n| basis.solve_left(n).expect("normal lies in the span of normals"))
            .collect();
        let quotient = basis.clone();
        Essentialization {
            arrangement: Arrangement { ambient_dim: r, normals, labels: self.labels.clone() },
            quotient,
        }
    }
}

/// Result of [`Arrangement::essentialize`].
#[derive(Clone, Debug)]
pub struct Essentialization {
    pub arrangement: Arrangement,
    /// `rank × n` matrix whose rows span the normals.
    pub quotient: RationalMatrix,
}

/// Connected components of the linear matroid on `vectors`, as index sets.
///
/// Two elements lie in the same component iff they lie on a common circuit;
/// the fundamental circuits of one basis already connect every component.
pub fn matroid_components(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    let m = vectors.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut basis: Vec<usize> = Vec::new();
    let mut span = Subspace::zero(ambient_dim);
    let mut dependent = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if span.contains_vector(v) {
            dependent.push(i);
        } else {
            basis.push(i);
            span = span.sum(&Subspace::span(ambient_dim, &[v.clone()]).expect("length")).expect("ambient");
        }
    }
    if !dependent.is_empty() {
        let rows: Vec<Vec<Rational>> = basis.iter().map(|&b| vectors[b].clone()).collect();
        let bm = RationalMatrix::from_rows(&rows, ambient_dim).expect("length");
        for &j in &dependent {
            let c = bm.solve_left(&vectors[j]).expect("dependent vector lies in the span");
            for (k, ck) in c.iter().enumerate() {
                if !ck.is_zero() {
                    let (a, b) = (find(&mut parent, j), find(&mut parent, basis[k]));
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..m {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// An element of the intersection poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub subspace: Subspace,
    /// `A_X`, sorted.
    pub hyperplanes: Vec<usize>,
    /// Irreducible components of `A_X`, ordered by least element.
    pub components: Vec<Vec<usize>>,
}

impl Flat {
    pub fn codim(&self) -> usize {
        self.subspace.codim()
    }

    /// Flats with exactly one irreducible component. The whole space has
    /// none and is not counted as irreducible.
    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }
}

/// The poset `L(A)` of all intersections of hyperplanes.
///
/// Flat ids are positions in a canonical order (see [`Subspace`]'s `Ord`),
/// so `t` is always flat 0.
#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    arrangement: Arrangement,
    flats: Vec<Flat>,
    by_hyperplanes: HashMap<Vec<usize>, FlatId>,
    by_subspace: HashMap<Subspace, FlatId>,
    /// For flat `X` and hyperplane `h ∈ A_X`, the index of the component of
    /// `A_X` containing `h`.
    component_index: Vec<Vec<Option<u32>>>,
    /// For flat `X`, the flats `Z_B` cut out by each component `B`.
    component_flats: Vec<Vec<FlatId>>,
    hyperplane_flats: Vec<FlatId>,
}

impl IntersectionPoset {
    pub fn new(arrangement: Arrangement) -> Self {
        let n = arrangement.ambient_dim();
        let mut seen: HashSet<Subspace> = HashSet::new();
        let mut queue = VecDeque::new();
        let root = Subspace::zero(n);
        seen.insert(root.clone());
        queue.push_back(root);
        // Work with annihilators: adding a normal is a sum of subspaces.
        while let Some(ann) = queue.pop_front() {
            for h in 0..arrangement.len() {
                let nh = arrangement.normal(h);
                if ann.contains_vector(nh) {
                    continue;
                }
                let next = ann.sum(&Subspace::span(n, &[nh.to_vec()]).expect("length")).expect("ambient");
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut subspaces: Vec<Subspace> = seen.into_iter().map(|a| a.annihilator()).collect();
        subspaces.sort();
        let flats: Vec<Flat> = subspaces
            .into_iter()
            .map(|s| {
                let hyperplanes = arrangement.hyperplanes_containing(&s);
                let components = arrangement.components_of(&hyperplanes);
                Flat { subspace: s, hyperplanes, components }
            })
            .collect();
        let by_hyperplanes = flats.iter().enumerate().map(|(i, f)| (f.hyperplanes.clone(), i)).collect();
        let by_subspace: HashMap<Subspace, FlatId> =
            flats.iter().enumerate().map(|(i, f)| (f.subspace.clone(), i)).collect();
        let m = arrangement.len();
        let component_index = flats
            .iter()
            .map(|f| {
                let mut t = vec![None; m];
                for (ci, c) in f.components.iter().enumerate() {
                    for &h in c {
                        t[h] = Some(ci as u32);
                    }
                }
                t
            })
            .collect();
        let mut poset = IntersectionPoset {
            arrangement,
            flats,
            by_hyperplanes,
            by_subspace,
            component_index,
            component_flats: vec![],
            hyperplane_flats: vec![],
        };
        poset.component_flats = (0..poset.flats.len())
            .map(|x| {
                poset.flats[x]
                    .components
                    .iter()
                    .map(|c| *poset.by_hyperplanes.get(c).expect("a component of a flat is closed"))
                    .collect()
            })
            .collect();
        poset.hyperplane_flats =
            (0..m).map(|h| *poset.by_hyperplanes.get(&vec![h]).expect("hyperplanes are flats")).collect();
        poset
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, x: FlatId) -> &Flat {
        &self.flats[x]
    }

    pub fn check(&self, x: FlatId) -> Result<&Flat> {
        self.flats.get(x).ok_or(Error::UnknownFlat(x))
    }

    /// The bottom element `t`.
    pub fn top_space(&self) -> FlatId {
        0
    }

    pub fn flat_of_subspace(&self, s: &Subspace) -> Result<FlatId> {
        self.by_subspace.get(s).copied().ok_or(Error::NotAFlat)
    }

    pub fn flat_of_hyperplanes(&self, a: &[usize]) -> Option<FlatId> {
        self.by_hyperplanes.get(a).copied()
    }

    /// The flat cut out by an arbitrary set of hyperplanes.
    pub fn closure(&self, hyperplanes: &[usize]) -> FlatId {
        let normals: Vec<Vec<Rational>> = hyperplanes.iter().map(|&h| self.arrangement.normal(h).to_vec()).collect();
        let s = Subspace::cut_out_by(self.arrangement.ambient_dim(), &normals).expect("length");
        self.by_subspace[&s]
    }

    pub fn hyperplane_flat(&self, h: usize) -> FlatId {
        self.hyperplane_flats[h]
    }

    /// `X ≤ Y` iff `X ⊇ Y`.
    pub fn leq(&self, x: FlatId, y: FlatId) -> bool {
        is_subset(&self.flats[x].hyperplanes, &self.flats[y].hyperplanes)
    }

    /// Least upper bound: the intersection `X ∩ Y`.
    pub fn join(&self, x: FlatId, y: FlatId) -> FlatId {
        if self.leq(x, y) {
            return y;
        }
        if self.leq(y, x) {
            return x;
        }
        let s = self.flats[x].subspace.intersect(&self.flats[y].subspace).expect("same ambient");
        self.by_subspace[&s]
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = FlatId>) -> FlatId {
        xs.into_iter().fold(self.top_space(), |acc, x| self.join(acc, x))
    }

    pub fn is_irreducible(&self, x: FlatId) -> bool {
        self.flats[x].is_irreducible()
    }

    pub fn irreducible_flats(&self) -> Vec<FlatId> {
        (0..self.len()).filter(|&x| self.is_irreducible(x)).collect()
    }

    /// `#irr(A_X)`.
    pub fn component_count(&self, x: FlatId) -> usize {
        self.flats[x].components.len()
    }

    /// The flats `Z_B` for the components `B` of `A_X`.
    pub fn component_flats(&self, x: FlatId) -> &[FlatId] {
        &self.component_flats[x]
    }

    /// For an irreducible flat `z ≤ y`, the component of `A_Y` that
    /// contains `A_Z`.
    pub fn component_containing(&self, y: FlatId, z: FlatId) -> Option<usize> {
        let hs = &self.flats[z].hyperplanes;
        let first = self.component_index[y][*hs.first()?]?;
        hs.iter().all(|&h| self.component_index[y][h] == Some(first)).then_some(first as usize)
    }

    /// Component of `A_Y` containing hyperplane `h`, if `h ∈ A_Y`.
    pub fn component_of_hyperplane(&self, y: FlatId, h: usize) -> Option<usize> {
        self.component_index[y][h].map(|c| c as usize)
    }

    pub fn flats_of_codim(&self, k: usize) -> impl Iterator<Item = FlatId> + '_ {
        (0..self.len()).filter(move |&x| self.flats[x].codim() == k)
    }

    /// The poset of the subarrangement `A_X`, i.e. the interval `[t, X]`,
    /// together with the embedding of its flats into this poset.
    pub fn localize(&self, x: FlatId) -> (IntersectionPoset, Vec<FlatId>) {
        let sub = IntersectionPoset::new(self.arrangement.sub_arrangement(&self.flats[x].hyperplanes));
        let map = sub.flats.iter().map(|f| self.by_subspace[&f.subspace]).collect();
        (sub, map)
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}
