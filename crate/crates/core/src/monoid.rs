//! The graded monoid `L^μ(A)`.
//!
//! Generators are letters `(X, μ)` with `X ≠ t` an irreducible flat and
//! `μ ≥ codim X`; a family of letters multiplies to a single letter
//! `(∩X_i, Σμ_i)` whenever the intersection is irreducible. Elements are
//! stored fully merged: no sub-multiset of letters has an irreducible
//! intersection.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::arrangement::{FlatId, IntersectionPoset};
use crate::error::{Error, Result};
use crate::reflection::{ElementId, GroupAction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub flat: FlatId,
    pub mu: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonoidElement {
    letters: Vec<Letter>,
}

impl MonoidElement {
    pub fn identity() -> Self {
        MonoidElement { letters: vec![] }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// `Σ μ`; the cohomological degree is twice this.
    pub fn weight(&self) -> u32 {
        self.letters.iter().map(|l| l.mu).sum()
    }

    pub fn degree(&self) -> u32 {
        2 * self.weight()
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "(X{},{})", l.flat, l.mu)?;
        }
        Ok(())
    }
}

/// A word in the presentation on all flats: `a^k X ...`, stored as
/// flat ↦ multiplicity. `t` never appears.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LchWord {
    pub letters: BTreeMap<FlatId, u32>,
}

impl LchWord {
    pub fn push(&mut self, flat: FlatId, k: u32) {
        if k > 0 && flat != 0 {
            *self.letters.entry(flat).or_insert(0) += k;
        }
    }
}

/// The monoid of an intersection poset.
#[derive(Clone, Copy, Debug)]
pub struct Monoid<'a> {
    poset: &'a IntersectionPoset,
}

impl<'a> Monoid<'a> {
    pub fn new(poset: &'a IntersectionPoset) -> Self {
        Monoid { poset }
    }

    pub fn poset(&self) -> &'a IntersectionPoset {
        self.poset
    }

    pub fn check_letter(&self, l: Letter) -> Result<()> {
        let f = self.poset.check(l.flat)?;
        if l.flat == self.poset.top_space() || !f.is_irreducible() {
            return Err(Error::ReducibleFlat(l.flat));
        }
        if (l.mu as usize) < f.codim() || l.mu == 0 {
            return Err(Error::WeightTooSmall { flat: l.flat, mu: l.mu });
        }
        Ok(())
    }

    pub fn letter(&self, flat: FlatId, mu: u32) -> Result<MonoidElement> {
        let l = Letter { flat, mu };
        self.check_letter(l)?;
        Ok(MonoidElement { letters: vec![l] })
    }

    /// Validate and normalize an arbitrary word.
    pub fn element(&self, letters: &[Letter]) -> Result<MonoidElement> {
        for &l in letters {
            self.check_letter(l)?;
        }
        Ok(self.normalize(letters.to_vec()))
    }

    pub fn multiply(&self, a: &MonoidElement, b: &MonoidElement) -> MonoidElement {
        if a.is_identity() {
            return b.clone();
        }
        if b.is_identity() {
            return a.clone();
        }
        let mut letters = a.letters.clone();
        letters.extend_from_slice(&b.letters);
        self.normalize(letters)
    }

    pub fn product<'b>(&self, es: impl IntoIterator<Item = &'b MonoidElement>) -> MonoidElement {
        let mut letters = Vec::new();
        for e in es {
            letters.extend_from_slice(&e.letters);
        }
        self.normalize(letters)
    }

    /// Merge to a fixpoint: pairs first, scanned in canonical order, then
    /// larger sub-multisets (needed when every pairwise intersection is
    /// reducible but a larger one is not).
    pub fn normalize(&self, mut letters: Vec<Letter>) -> MonoidElement {
        letters.sort_unstable();
        'outer: loop {
            for i in 0..letters.len() {
                for j in i + 1..letters.len() {
                    let z = self.poset.join(letters[i].flat, letters[j].flat);
                    if self.poset.is_irreducible(z) {
                        let merged = Letter { flat: z, mu: letters[i].mu + letters[j].mu };
                        letters.remove(j);
                        letters[i] = merged;
                        letters.sort_unstable();
                        continue 'outer;
                    }
                }
            }
            for size in 3..=letters.len() {
                for subset in (0..letters.len()).combinations(size) {
                    let z = self.poset.join_all(subset.iter().map(|&k| letters[k].flat));
                    if self.poset.is_irreducible(z) {
                        let mu = subset.iter().map(|&k| letters[k].mu).sum();
                        for &k in subset.iter().rev() {
                            letters.remove(k);
                        }
                        letters.push(Letter { flat: z, mu });
                        letters.sort_unstable();
                        continue 'outer;
                    }
                }
            }
            return MonoidElement { letters };
        }
    }

    pub fn is_normal(&self, e: &MonoidElement) -> bool {
        (2..=e.letters.len()).all(|size| {
            e.letters
                .iter()
                .combinations(size)
                .all(|s| !self.poset.is_irreducible(self.poset.join_all(s.iter().map(|l| l.flat))))
        })
    }

    /// `|e|`: the intersection of the letters' flats.
    pub fn support(&self, e: &MonoidElement) -> FlatId {
        self.poset.join_all(e.letters.iter().map(|l| l.flat))
    }

    /// Least hyperplane of `A_X`, the one carrying excess weight in `φ`.
    fn least_hyperplane(&self, x: FlatId) -> usize {
        self.poset.flat(x).hyperplanes[0]
    }

    /// `φ(X, μ) = a^{μ - codim X} X` with `a` the least hyperplane of `A_X`.
    pub fn to_lch(&self, e: &MonoidElement) -> LchWord {
        let mut w = LchWord::default();
        for l in &e.letters {
            let excess = l.mu - self.poset.flat(l.flat).codim() as u32;
            let a = self.least_hyperplane(l.flat);
            w.push(self.poset.hyperplane_flat(a), excess);
            w.push(l.flat, 1);
        }
        w
    }

    /// `ψ`: a flat goes to the product of its components, each with weight
    /// equal to its codimension.
    pub fn from_lch(&self, w: &LchWord) -> Result<MonoidElement> {
        let mut letters = Vec::new();
        for (&x, &k) in &w.letters {
            self.poset.check(x)?;
            for _ in 0..k {
                letters.extend(self.flat_letters(x));
            }
        }
        Ok(self.normalize(letters))
    }

    /// `ψ(X)`: one letter `(Z_B, codim Z_B)` per component of `A_X`. This is
    /// the fundamental class of `X` in monoid form.
    pub fn flat_letters(&self, x: FlatId) -> Vec<Letter> {
        self.poset
            .component_flats(x)
            .iter()
            .map(|&z| Letter { flat: z, mu: self.poset.flat(z).codim() as u32 })
            .collect()
    }

    pub fn fundamental(&self, x: FlatId) -> MonoidElement {
        let mut letters = self.flat_letters(x);
        letters.sort_unstable();
        MonoidElement { letters }
    }

    /// All letters of weight at most `max_weight`.
    pub fn letters_up_to(&self, max_weight: u32) -> Vec<Letter> {
        let mut out = Vec::new();
        for x in self.poset.irreducible_flats() {
            let c = self.poset.flat(x).codim() as u32;
            for mu in c..=max_weight {
                out.push(Letter { flat: x, mu });
            }
        }
        out
    }

    /// Every normal form of weight `d`, for `d = 0..=max_weight`, sorted.
    ///
    /// A sub-multiset of a normal form is again normal, so each element of
    /// weight `d` is a normal element of smaller weight times one letter.
    pub fn enumerate(&self, max_weight: u32) -> Vec<Vec<MonoidElement>> {
        let letters = self.letters_up_to(max_weight);
        let mut levels: Vec<BTreeSet<MonoidElement>> = vec![BTreeSet::new(); max_weight as usize + 1];
        levels[0].insert(MonoidElement::identity());
        for d in 1..=max_weight as usize {
            let mut level = BTreeSet::new();
            for l in &letters {
                let mu = l.mu as usize;
                if mu > d {
                    continue;
                }
                for e in &levels[d - mu] {
                    // only extend in canonical order to limit duplicates
                    if e.letters.last().is_some_and(|last| last > l) {
                        continue;
                    }
                    let mut ls = e.letters.clone();
                    ls.push(*l);
                    let cand = MonoidElement { letters: ls };
                    if self.is_normal(&cand) {
                        level.insert(cand);
                    }
                }
            }
            levels[d] = level;
        }
        levels.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// `e·w`: every flat `X` is replaced by `w⁻¹X`. This is a right action:
    /// `(e·v)·w = e·(vw)`.
    pub fn w_act(&self, action: &GroupAction<'_>, w: ElementId, e: &MonoidElement) -> MonoidElement {
        let winv = action.group().inverse(w);
        let mut letters: Vec<Letter> =
            e.letters.iter().map(|l| Letter { flat: action.act_flat(winv, l.flat), mu: l.mu }).collect();
        letters.sort_unstable();
        MonoidElement { letters }
    }

    /// `W`-orbits of normal forms, per weight. Orbits are sorted and listed
    /// by least element.
    pub fn orbit_enumerate(&self, action: &GroupAction<'_>, max_weight: u32) -> Vec<Vec<Vec<MonoidElement>>> {
        self.enumerate(max_weight).into_iter().map(|level| self.orbits_of(action, level)).collect()
    }

    pub fn orbits_of(&self, action: &GroupAction<'_>, level: Vec<MonoidElement>) -> Vec<Vec<MonoidElement>> {
        let mut remaining: BTreeSet<MonoidElement> = level.into_iter().collect();
        let mut out = Vec::new();
        while let Some(first) = remaining.pop_first() {
            let mut orbit = BTreeSet::from([first.clone()]);
            let mut stack = vec![first];
            while let Some(e) = stack.pop() {
                for &g in action.group().generators() {
                    let f = self.w_act(action, g, &e);
                    if orbit.insert(f.clone()) {
                        remaining.remove(&f);
                        stack.push(f);
                    }
                }
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }
}
