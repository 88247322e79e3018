//! Finite rational reflection groups, their mirror arrangements and their
//! action on flats.
//!
//! Elements act on column vectors, `w·v = M_w v`; on covectors this means
//! `w·ξ = ξ M_w^{-1}`, so `w(H_ξ) = H_{w·ξ}`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{One, Zero};

use crate::arrangement::{Arrangement, FlatId, IntersectionPoset};
use crate::error::{Error, Result};
use crate::exactlin::{normalize_direction, rat, Rational, RationalMatrix, Subspace};

pub type ElementId = usize;

pub const DEFAULT_MAX_GROUP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    dim: usize,
    elements: Vec<RationalMatrix>,
    index: HashMap<RationalMatrix, ElementId>,
    inverse: Vec<ElementId>,
    generators: Vec<ElementId>,
    reflections: Vec<ElementId>,
    mirrors: Arrangement,
    /// Reflection ↦ index of its mirror in [`Self::mirror_arrangement`].
    mirror_map: BTreeMap<ElementId, usize>,
    generated_by_reflections: bool,
}

impl ReflectionGroup {
    /// Close a set of generators under multiplication, refusing to go past
    /// `bound` elements.
    pub fn generate(generators: &[RationalMatrix], bound: usize) -> Result<Self> {
        let dim = match generators.first() {
            Some(g) => g.rows(),
            None => return Err(Error::Invalid("no generators; use generate_in to give the dimension".into())),
        };
        Self::generate_in(dim, generators, bound)
    }

    pub fn generate_in(dim: usize, generators: &[RationalMatrix], bound: usize) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch(format!("generator {i} is not {dim}x{dim}")));
            }
            if g.inverse().is_err() {
                return Err(Error::Singular);
            }
        }
        let id = RationalMatrix::identity(dim);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for g in generators {
                let p = elements[e].mul(g).expect("square");
                if index.contains_key(&p) {
                    continue;
                }
                if elements.len() >= bound {
                    return Err(Error::GroupBoundExceeded(bound));
                }
                index.insert(p.clone(), elements.len());
                elements.push(p);
                queue.push_back(elements.len() - 1);
            }
        }
        let inverse = elements
            .iter()
            .map(|m| index[&m.inverse().expect("group elements are invertible")])
            .collect();
        let gen_ids = generators.iter().map(|g| index[g]).collect();

        // Mirrors sorted by (support, normalized normal), so that for S_n
        // they come out as a12, a13, ..., a23, ...
        let mut by_normal: BTreeMap<(Vec<usize>, Vec<Rational>), Vec<ElementId>> = BTreeMap::new();
        for (e, m) in elements.iter().enumerate() {
            if let Some(n) = reflection_normal(m) {
                let support = n.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect();
                by_normal.entry((support, n)).or_default().push(e);
            }
        }
        let mut normals = Vec::new();
        let mut mirror_map = BTreeMap::new();
        for (h, ((_, n), es)) in by_normal.into_iter().enumerate() {
            normals.push(n);
            for e in es {
                mirror_map.insert(e, h);
            }
        }
        let labels = normals.iter().enumerate().map(|(k, n)| mirror_label(k, n)).collect();
        let mirrors = Arrangement::new(dim, normals, Some(labels))?;
        let reflections: Vec<ElementId> = mirror_map.keys().copied().collect();
        let mut group = ReflectionGroup {
            dim,
            elements,
            index,
            inverse,
            generators: gen_ids,
            reflections,
            mirrors,
            mirror_map,
            generated_by_reflections: false,
        };
        group.generated_by_reflections = group.subgroup_generated(&group.reflections).len() == group.order();
        Ok(group)
    }

    /// `S_n` permuting coordinates of `Q^n` (Weyl group of type `A_{n-1}`).
    pub fn symmetric(n: usize) -> Result<Self> {
        Self::generate_in(n, &transpositions(n), DEFAULT_MAX_GROUP)
    }

    /// Signed permutations of `Q^n` (type `B_n`).
    pub fn signed_permutation(n: usize) -> Result<Self> {
        Self::signed_permutation_bounded(n, DEFAULT_MAX_GROUP)
    }

    pub fn signed_permutation_bounded(n: usize, bound: usize) -> Result<Self> {
        let mut gens = transpositions(n);
        if n > 0 {
            let mut flip = RationalMatrix::identity(n);
            flip.set(n - 1, n - 1, rat(-1));
            gens.push(flip);
        }
        Self::generate_in(n, &gens, bound)
    }

    /// Signed permutations with an even number of sign changes (type `D_n`).
    pub fn even_signed(n: usize) -> Result<Self> {
        Self::even_signed_bounded(n, DEFAULT_MAX_GROUP)
    }

    pub fn even_signed_bounded(n: usize, bound: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("type D needs rank at least 2".into()));
        }
        let mut gens = transpositions(n);
        let mut g = RationalMatrix::identity(n);
        g.set(n - 2, n - 2, rat(0));
        g.set(n - 1, n - 1, rat(0));
        g.set(n - 2, n - 1, rat(-1));
        g.set(n - 1, n - 2, rat(-1));
        gens.push(g);
        Self::generate_in(n, &gens, bound)
    }

    pub fn symmetric_bounded(n: usize, bound: usize) -> Result<Self> {
        Self::generate_in(n, &transpositions(n), bound)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, w: ElementId) -> &RationalMatrix {
        &self.elements[w]
    }

    pub fn elements(&self) -> &[RationalMatrix] {
        &self.elements
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    pub fn inverse(&self, w: ElementId) -> ElementId {
        self.inverse[w]
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn reflections(&self) -> &[ElementId] {
        &self.reflections
    }

    pub fn id_of(&self, m: &RationalMatrix) -> Option<ElementId> {
        self.index.get(m).copied()
    }

    /// `a · b` (apply `b` first).
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.index[&self.elements[a].mul(&self.elements[b]).expect("square")]
    }

    pub fn mirror_arrangement(&self) -> &Arrangement {
        &self.mirrors
    }

    /// Mirror of a reflection, as a hyperplane index.
    pub fn mirror_of(&self, r: ElementId) -> Option<usize> {
        self.mirror_map.get(&r).copied()
    }

    /// Reflections with mirror `h`.
    pub fn reflections_in(&self, h: usize) -> Vec<ElementId> {
        self.mirror_map.iter().filter(|(_, &m)| m == h).map(|(&e, _)| e).collect()
    }

    /// False for bare matrix groups that are not reflection groups; the
    /// Steinberg check in [`GroupAction::pointwise_stabilizer`] will then
    /// typically fail.
    pub fn generated_by_reflections(&self) -> bool {
        self.generated_by_reflections
    }

    /// Subgroup generated by `gens`, as a sorted list of element ids.
    pub fn subgroup_generated(&self, gens: &[ElementId]) -> Vec<ElementId> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0]);
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let p = self.mul(e, g);
                if !seen[p] {
                    seen[p] = true;
                    out.push(p);
                    queue.push_back(p);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Elements fixing `x` pointwise.
    pub fn fixer(&self, x: &Subspace) -> Vec<ElementId> {
        let basis = x.basis_vectors();
        (0..self.order())
            .filter(|&w| basis.iter().all(|v| &self.elements[w].apply(v) == v))
            .collect()
    }

    pub fn fixed_space(&self, w: ElementId) -> Subspace {
        let m = &self.elements[w];
        let mut d = m.clone();
        for i in 0..self.dim {
            d.set(i, i, m.get(i, i) - Rational::one());
        }
        Subspace::span(self.dim, &d.kernel()).expect("length")
    }

    /// Image of a covector under `w`: `ξ ↦ ξ M_w^{-1}`.
    pub fn act_covector(&self, w: ElementId, xi: &[Rational]) -> Vec<Rational> {
        self.elements[self.inverse[w]].apply_left(xi)
    }
}

fn transpositions(n: usize) -> Vec<RationalMatrix> {
    (0..n.saturating_sub(1))
        .map(|i| {
            let mut m = RationalMatrix::identity(n);
            m.set(i, i, rat(0));
            m.set(i + 1, i + 1, rat(0));
            m.set(i, i + 1, rat(1));
            m.set(i + 1, i, rat(1));
            m
        })
        .collect()
}

/// Normalized normal of the mirror if `m` fixes exactly a hyperplane.
fn reflection_normal(m: &RationalMatrix) -> Option<Vec<Rational>> {
    let n = m.rows();
    let mut d = m.clone();
    for i in 0..n {
        d.set(i, i, m.get(i, i) - Rational::one());
    }
    let (r, _) = d.rref_with_pivots();
    if r.rows() != 1 {
        return None;
    }
    // The row space of M - I is the annihilator of the fixed space.
    normalize_direction(r.row(0))
}

fn mirror_label(k: usize, n: &[Rational]) -> String {
    let nz: Vec<(usize, &Rational)> = n.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
    if nz.len() == 2 && nz[0].1.is_one() && *nz[1].1 == -Rational::one() {
        let (i, j) = (nz[0].0 + 1, nz[1].0 + 1);
        return if i < 10 && j < 10 { format!("a{i}{j}") } else { format!("a{i}_{j}") };
    }
    format!("H{k}")
}

/// A reflection group acting on an arrangement it preserves, with the
/// induced permutation action on hyperplanes and flats.
#[derive(Clone, Debug)]
pub struct GroupAction<'a> {
    group: &'a ReflectionGroup,
    poset: &'a IntersectionPoset,
    /// `perm[w][h]` is the hyperplane `w(H_h)`.
    perm: Vec<Vec<u32>>,
}

impl<'a> GroupAction<'a> {
    pub fn new(group: &'a ReflectionGroup, poset: &'a IntersectionPoset) -> Result<Self> {
        let arr = poset.arrangement();
        if arr.ambient_dim() != group.dim() {
            return Err(Error::DimensionMismatch("group and arrangement live in different spaces".into()));
        }
        let mut lookup = HashMap::new();
        for h in 0..arr.len() {
            lookup.insert(normalize_direction(arr.normal(h)).expect("nonzero"), h as u32);
        }
        let perm = (0..group.order())
            .map(|w| {
                (0..arr.len())
                    .map(|h| {
                        let img = normalize_direction(&group.act_covector(w, arr.normal(h))).expect("nonzero");
                        lookup.get(&img).copied().ok_or(Error::NotPreserved)
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupAction { group, poset, perm })
    }

    pub fn group(&self) -> &'a ReflectionGroup {
        self.group
    }

    pub fn poset(&self) -> &'a IntersectionPoset {
        self.poset
    }

    pub fn act_hyperplane(&self, w: ElementId, h: usize) -> usize {
        self.perm[w][h] as usize
    }

    /// The flat `w(X)`.
    pub fn act_flat(&self, w: ElementId, x: FlatId) -> FlatId {
        let mut hs: Vec<usize> = self.poset.flat(x).hyperplanes.iter().map(|&h| self.act_hyperplane(w, h)).collect();
        hs.sort_unstable();
        self.poset.flat_of_hyperplanes(&hs).expect("the action preserves flats")
    }

    /// Pointwise stabilizer `W_X`, checked against the subgroup generated
    /// by reflections in hyperplanes of `A_X`.
    pub fn pointwise_stabilizer(&self, x: FlatId) -> Result<Vec<ElementId>> {
        let sub = &self.poset.flat(x).subspace;
        let fix = self.group.fixer(sub);
        let refl: Vec<ElementId> = self
            .group
            .reflections()
            .iter()
            .copied()
            .filter(|&r| self.group.fixed_space(r).contains(sub))
            .collect();
        let gen = self.group.subgroup_generated(&refl);
        if gen != fix {
            return Err(Error::SteinbergMismatch(x));
        }
        let mut fixed = Subspace::whole(self.group.dim());
        for &w in &fix {
            fixed = fixed.intersect(&self.group.fixed_space(w)).expect("same ambient");
        }
        if &fixed != sub {
            return Err(Error::SteinbergMismatch(x));
        }
        Ok(fix)
    }

    /// Setwise stabilizer `{w : w(X) = X}`.
    pub fn setwise_stabilizer(&self, x: FlatId) -> Vec<ElementId> {
        (0..self.group.order()).filter(|&w| self.act_flat(w, x) == x).collect()
    }

    /// Normalizer of `W_X` in `W`.
    pub fn normalizer(&self, x: FlatId) -> Result<Vec<ElementId>> {
        let wx = self.pointwise_stabilizer(x)?;
        let set: std::collections::HashSet<ElementId> = wx.iter().copied().collect();
        Ok((0..self.group.order())
            .filter(|&g| {
                let gi = self.group.inverse(g);
                wx.iter().all(|&h| set.contains(&self.group.mul(self.group.mul(g, h), gi)))
            })
            .collect())
    }

    /// `W`-orbits on flats; each orbit sorted, orbits ordered by least
    /// element.
    pub fn flat_orbits(&self) -> Vec<Vec<FlatId>> {
        let n = self.poset.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut out: Vec<Vec<FlatId>> = Vec::new();
        for x in 0..n {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut orbit = vec![x];
            orbit_of[x] = id;
            let mut i = 0;
            while i < orbit.len() {
                let y = orbit[i];
                for &g in self.group.generators() {
                    let z = self.act_flat(g, y);
                    if orbit_of[z] == usize::MAX {
                        orbit_of[z] = id;
                        orbit.push(z);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// For each flat, the index of its orbit in [`Self::flat_orbits`].
    pub fn orbit_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.poset.len()];
        for (i, o) in self.flat_orbits().iter().enumerate() {
            for &x in o {
                idx[x] = i;
            }
        }
        idx
    }

    /// Permutation of the components of `A_X` induced by `w ∈ stab(X)`:
    /// component `i` is sent to component `result[i]`.
    pub fn component_permutation(&self, w: ElementId, x: FlatId) -> Vec<usize> {
        self.poset
            .flat(x)
            .components
            .iter()
            .map(|c| {
                self.poset
                    .component_of_hyperplane(x, self.act_hyperplane(w, c[0]))
                    .expect("w stabilizes X")
            })
            .collect()
    }
}
