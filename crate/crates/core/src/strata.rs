//! The cohomology ring of the stack of cameral covers as the monoid ring
//! `κ[L^μ(A)]`, modelled faithfully by restriction to strata.
//!
//! The stratum of a flat `Y` contributes a polynomial ring with one variable
//! `u_B` per irreducible component `B` of `A_Y`. A letter `(X, μ)` restricts
//! to `u_B^μ` on `Y` when `A_X ⊆ A_Y` (with `B` the component containing
//! `A_X`) and to zero otherwise; a monoid element restricts to the product
//! of its letters' restrictions.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::{is_subset, FlatId, IntersectionPoset};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, rat, Rational, RationalMatrix};
use crate::monoid::{Letter, Monoid, MonoidElement};
use crate::poly::{monomials_of_degree, Exponents, Poly};
use crate::reflection::{ElementId, GroupAction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Coefficients {
    #[default]
    Q,
    Z,
}

/// Exponent vector of the restriction of `e` to the stratum `y`, or `None`
/// if the restriction vanishes.
pub fn restrict_basis(poset: &IntersectionPoset, e: &MonoidElement, y: FlatId) -> Option<Exponents> {
    let mut exps = vec![0; poset.component_count(y)];
    for l in e.letters() {
        let c = poset.component_containing(y, l.flat)?;
        exps[c] += l.mu;
    }
    Some(exps)
}

/// An element of `κ[L^μ(A)]` together with its restriction vector.
///
/// Equality is equality of restriction vectors, which is faithful.
#[derive(Clone, Debug)]
pub struct RingElement {
    coefficients: Coefficients,
    terms: BTreeMap<MonoidElement, Rational>,
    restriction: Vec<Poly>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.coefficients == other.coefficients && self.restriction == other.restriction
    }
}

impl Eq for RingElement {}

impl RingElement {
    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn terms(&self) -> &BTreeMap<MonoidElement, Rational> {
        &self.terms
    }

    /// Per-flat polynomials, indexed by flat id.
    pub fn restriction(&self) -> &[Poly] {
        &self.restriction
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common weight of all terms, if homogeneous and nonzero.
    pub fn weight(&self) -> Option<u32> {
        let ws: BTreeSet<u32> = self.terms.keys().map(MonoidElement::weight).collect();
        (ws.len() == 1).then(|| *ws.iter().next().expect("one weight"))
    }

    pub fn coefficient(&self, e: &MonoidElement) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }
}

/// `H*(C, κ)` (and, with a group attached, `H*(M, κ)` as its invariants).
#[derive(Clone, Copy, Debug)]
pub struct CohomologyRing<'a> {
    poset: &'a IntersectionPoset,
    monoid: Monoid<'a>,
    action: Option<&'a GroupAction<'a>>,
    coefficients: Coefficients,
}

impl<'a> CohomologyRing<'a> {
    pub fn new(poset: &'a IntersectionPoset, coefficients: Coefficients) -> Self {
        CohomologyRing { poset, monoid: Monoid::new(poset), action: None, coefficients }
    }

    pub fn with_group(action: &'a GroupAction<'a>, coefficients: Coefficients) -> Self {
        let poset = action.poset();
        CohomologyRing { poset, monoid: Monoid::new(poset), action: Some(action), coefficients }
    }

    pub fn poset(&self) -> &'a IntersectionPoset {
        self.poset
    }

    pub fn monoid(&self) -> &Monoid<'a> {
        &self.monoid
    }

    pub fn action(&self) -> Result<&'a GroupAction<'a>> {
        self.action.ok_or(Error::MissingGroup)
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    fn restriction_of(&self, terms: &BTreeMap<MonoidElement, Rational>) -> Vec<Poly> {
        (0..self.poset.len())
            .map(|y| {
                let mut p = Poly::zero(self.poset.component_count(y));
                for (e, c) in terms {
                    if let Some(exps) = restrict_basis(self.poset, e, y) {
                        p.add_term(exps, c.clone());
                    }
                }
                p
            })
            .collect()
    }

    fn check_coefficient(&self, c: &Rational) -> Result<()> {
        if self.coefficients == Coefficients::Z && !c.is_integer() {
            return Err(Error::NonIntegralCoefficient(format_rational(c)));
        }
        Ok(())
    }

    /// Build an element from (not necessarily normal) monoid words.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (MonoidElement, Rational)>) -> Result<RingElement> {
        let mut map: BTreeMap<MonoidElement, Rational> = BTreeMap::new();
        for (e, c) in terms {
            self.check_coefficient(&c)?;
            for &l in e.letters() {
                self.monoid.check_letter(l)?;
            }
            let e = self.monoid.normalize(e.letters().to_vec());
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let restriction = self.restriction_of(&map);
        Ok(RingElement { coefficients: self.coefficients, terms: map, restriction })
    }

    pub fn basis_element(&self, e: &MonoidElement) -> RingElement {
        self.from_terms([(e.clone(), Rational::one())]).expect("monoid elements are valid")
    }

    pub fn zero(&self) -> RingElement {
        self.from_terms([]).expect("empty")
    }

    pub fn one(&self) -> RingElement {
        self.basis_element(&MonoidElement::identity())
    }

    fn same_ring(&self, x: &RingElement) -> Result<()> {
        if x.coefficients != self.coefficients {
            return Err(Error::CoefficientMismatch);
        }
        if x.restriction.len() != self.poset.len() {
            return Err(Error::DimensionMismatch("element of a different ring".into()));
        }
        Ok(())
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.same_ring(x)?;
        self.same_ring(y)?;
        self.from_terms(x.terms.iter().chain(&y.terms).map(|(e, c)| (e.clone(), c.clone())))
    }

    pub fn sub(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.add(x, &self.scale(y, &-Rational::one())?)
    }

    pub fn scale(&self, x: &RingElement, c: &Rational) -> Result<RingElement> {
        self.same_ring(x)?;
        self.check_coefficient(c)?;
        self.from_terms(x.terms.iter().map(|(e, v)| (e.clone(), v * c)))
    }

    pub fn sum<'b>(&self, xs: impl IntoIterator<Item = &'b RingElement>) -> Result<RingElement> {
        let mut acc = self.zero();
        for x in xs {
            acc = self.add(&acc, x)?;
        }
        Ok(acc)
    }

    /// Product through the monoid, checked against the stratum-wise product
    /// of restriction vectors.
    pub fn multiply(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.same_ring(x)?;
        self.same_ring(y)?;
        let mut terms = Vec::with_capacity(x.terms.len() * y.terms.len());
        for (e, c) in &x.terms {
            for (f, d) in &y.terms {
                terms.push((self.monoid.multiply(e, f), c * d));
            }
        }
        let out = self.from_terms(terms)?;
        for (k, (p, q)) in x.restriction.iter().zip(&y.restriction).enumerate() {
            if out.restriction[k] != p.mul(q) {
                return Err(Error::Consistency(format!("monoid product disagrees with strata on flat {k}")));
            }
        }
        Ok(out)
    }

    pub fn power(&self, x: &RingElement, k: u32) -> Result<RingElement> {
        let mut out = self.one();
        for _ in 0..k {
            out = self.multiply(&out, x)?;
        }
        Ok(out)
    }

    /// `c(a)`.
    pub fn class_of_hyperplane(&self, a: usize) -> Result<RingElement> {
        if a >= self.poset.arrangement().len() {
            return Err(Error::Invalid(format!("no hyperplane {a}")));
        }
        Ok(self.basis_element(&self.monoid.letter(self.poset.hyperplane_flat(a), 1)?))
    }

    /// Lexicographically first independent subset of `A_X`; it cuts out `X`.
    pub fn minimal_hyperplane_set(&self, x: FlatId) -> Vec<usize> {
        let arr = self.poset.arrangement();
        let mut chosen: Vec<usize> = Vec::new();
        let mut rank = 0;
        for &h in &self.poset.flat(x).hyperplanes {
            let mut rows: Vec<Vec<Rational>> = chosen.iter().map(|&c| arr.normal(c).to_vec()).collect();
            rows.push(arr.normal(h).to_vec());
            let r = RationalMatrix::from_rows(&rows, arr.ambient_dim()).expect("length").rank();
            if r > rank {
                rank = r;
                chosen.push(h);
            }
        }
        chosen
    }

    /// `c(X, μ) = c(a_1)⋯c(a_r) · c(a_1)^{μ-r}` for the minimal set chosen by
    /// [`Self::minimal_hyperplane_set`].
    pub fn class_of(&self, x: FlatId, mu: u32) -> Result<RingElement> {
        let hs = self.minimal_hyperplane_set(x);
        self.class_of_with(x, mu, &hs, hs.first().copied())
    }

    /// `c(X, μ)` for an explicit minimal hyperplane set and excess carrier.
    pub fn class_of_with(&self, x: FlatId, mu: u32, set: &[usize], excess: Option<usize>) -> Result<RingElement> {
        self.monoid.check_letter(Letter { flat: x, mu })?;
        if self.poset.closure(set) != x || set.len() != self.poset.flat(x).codim() {
            return Err(Error::Invalid("hyperplanes do not minimally cut out the flat".into()));
        }
        let mut out = self.one();
        for &h in set {
            out = self.multiply(&out, &self.class_of_hyperplane(h)?)?;
        }
        let extra = mu - set.len() as u32;
        if extra > 0 {
            let a = excess.ok_or(Error::Invalid("no hyperplane for excess weight".into()))?;
            if !self.poset.flat(x).hyperplanes.contains(&a) {
                return Err(Error::Invalid("excess hyperplane does not contain the flat".into()));
            }
            out = self.multiply(&out, &self.power(&self.class_of_hyperplane(a)?, extra)?)?;
        }
        Ok(out)
    }

    /// `c(X)`: the product of `c(Z_B)` over the components of `A_X`.
    pub fn fundamental_class(&self, x: FlatId) -> Result<RingElement> {
        self.poset.check(x)?;
        Ok(self.basis_element(&self.monoid.fundamental(x)))
    }

    /// Dimensions in degrees `0, 2, ..., 2·max_weight` from the stratum
    /// formula `Σ_X C(d - codim X + k - 1, k - 1)`, `k = #irr(A_X)`.
    pub fn betti_c(&self, max_weight: u32) -> Vec<usize> {
        (0..=max_weight)
            .map(|d| {
                (0..self.poset.len())
                    .map(|x| {
                        let c = self.poset.flat(x).codim() as u32;
                        let k = self.poset.component_count(x) as u32;
                        if d < c {
                            0
                        } else if k == 0 {
                            usize::from(d == c)
                        } else {
                            binomial(d - c + k - 1, k - 1)
                        }
                    })
                    .sum()
            })
            .collect()
    }

    /// Invariant dimensions: over orbit representatives `X`, the number of
    /// orbits of `stab(X)` on monomials of degree `d - codim X` in the
    /// component variables of `X`.
    pub fn betti_m(&self, max_weight: u32) -> Result<Vec<usize>> {
        let action = self.action()?;
        let reps: Vec<FlatId> = action.flat_orbits().into_iter().map(|o| o[0]).collect();
        let perms: Vec<Vec<Vec<usize>>> = reps
            .iter()
            .map(|&x| {
                let set: BTreeSet<Vec<usize>> = action
                    .setwise_stabilizer(x)
                    .into_iter()
                    .map(|w| action.component_permutation(w, x))
                    .collect();
                set.into_iter().collect()
            })
            .collect();
        Ok((0..=max_weight)
            .map(|d| {
                reps.iter()
                    .zip(&perms)
                    .map(|(&x, ps)| {
                        let c = self.poset.flat(x).codim() as u32;
                        if d < c {
                            return 0;
                        }
                        let k = self.poset.component_count(x);
                        let orbits: BTreeSet<Exponents> = monomials_of_degree(k, d - c)
                            .into_iter()
                            .map(|m| ps.iter().map(|p| permute_exponents(&m, p)).min().expect("identity"))
                            .collect();
                        orbits.len()
                    })
                    .sum()
            })
            .collect())
    }

    /// `x·w`, acting on every monoid term.
    pub fn act(&self, w: ElementId, x: &RingElement) -> Result<RingElement> {
        let action = self.action()?;
        self.from_terms(x.terms.iter().map(|(e, c)| (self.monoid.w_act(action, w, e), c.clone())))
    }

    pub fn is_invariant(&self, x: &RingElement) -> Result<bool> {
        let action = self.action()?;
        for &g in action.group().generators() {
            if &self.act(g, x)? != x {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Orbit sums of weight-`d` monoid elements: a basis of the invariants.
    /// With `normalized`, each orbit sum is divided by the orbit size.
    pub fn invariant_basis(&self, d: u32, normalized: bool) -> Result<Vec<RingElement>> {
        if self.coefficients == Coefficients::Z {
            return Err(Error::IntegralInvariants);
        }
        let action = self.action()?;
        let level = self.monoid.enumerate(d).pop().expect("level d");
        let mut out = Vec::new();
        for orbit in self.monoid.orbits_of(action, level) {
            let c = if normalized { Rational::new(BigInt::one(), BigInt::from(orbit.len())) } else { Rational::one() };
            let x = self.from_terms(orbit.into_iter().map(|e| (e, c.clone())))?;
            if !self.is_invariant(&x)? {
                return Err(Error::Consistency("orbit sum is not invariant".into()));
            }
            out.push(x);
        }
        Ok(out)
    }

    /// The surjection onto the ring of the sub-arrangement `A_X`.
    pub fn restriction_to_induced(&self, x: FlatId) -> Result<InducedRestriction> {
        self.poset.check(x)?;
        let (target, embedding) = self.poset.localize(x);
        let pullback = embedding.iter().enumerate().map(|(t, &s)| (s, t)).collect();
        Ok(InducedRestriction { flat: x, target, embedding, pullback, coefficients: self.coefficients })
    }

    /// Coefficients of `p(r) = ∏_a (1 + c(a) r)`, lowest power of `r` first.
    pub fn whitney_polynomial(&self) -> Result<Vec<RingElement>> {
        let mut coeffs = vec![self.one()];
        for a in 0..self.poset.arrangement().len() {
            let ca = self.class_of_hyperplane(a)?;
            let mut next = coeffs.clone();
            next.push(self.zero());
            for (k, ck) in coeffs.iter().enumerate() {
                next[k + 1] = self.add(&next[k + 1], &self.multiply(ck, &ca)?)?;
            }
            coeffs = next;
        }
        Ok(coeffs)
    }

    /// Whether `p_{Y∩Z} = p_Y · p_Z` after restricting to the cover induced
    /// from `Y∩Z` and splitting its ring along `A_{Y∩Z} = A_Y ⊔ A_Z`.
    pub fn whitney_check(&self, y: FlatId, z: FlatId) -> Result<bool> {
        let x = self.splitting(y, z)?;
        let ind = self.restriction_to_induced(x)?;
        let ring_x = CohomologyRing::new(&ind.target, self.coefficients);
        let lhs: Vec<RingElement> =
            self.whitney_polynomial()?.iter().map(|c| ind.apply(&ring_x, c)).collect::<Result<_>>()?;

        let factor = |f: FlatId| -> Result<Vec<RingElement>> {
            let (sub, _) = self.poset.localize(f);
            let ring_f = CohomologyRing::new(&sub, self.coefficients);
            ring_f.whitney_polynomial()?.iter().map(|c| transport(&ring_f, &ring_x, c)).collect()
        };
        // every letter of the target ring lives in exactly one factor
        let a_y = &self.poset.flat(y).hyperplanes;
        for zf in ind.target.irreducible_flats() {
            let hs: Vec<usize> = ind.target.flat(zf).hyperplanes.iter().map(|&h| self.poset.flat(x).hyperplanes[h]).collect();
            let in_y = hs.iter().filter(|h| a_y.contains(h)).count();
            if in_y != 0 && in_y != hs.len() {
                return Err(Error::DecompositionHypothesis("an irreducible flat straddles both factors".into()));
            }
        }
        let (py, pz) = (factor(y)?, factor(z)?);
        let mut rhs = vec![ring_x.zero(); py.len() + pz.len() - 1];
        for (i, a) in py.iter().enumerate() {
            for (j, b) in pz.iter().enumerate() {
                rhs[i + j] = ring_x.add(&rhs[i + j], &ring_x.multiply(a, b)?)?;
            }
        }
        let mut lhs = lhs;
        while lhs.len() > rhs.len() && lhs.last().is_some_and(RingElement::is_zero) {
            lhs.pop();
        }
        Ok(lhs == rhs)
    }

    /// `Y ∩ Z` if `A_{Y∩Z} = A_Y ⊔ A_Z` with additive codimension.
    pub fn splitting(&self, y: FlatId, z: FlatId) -> Result<FlatId> {
        self.poset.check(y)?;
        self.poset.check(z)?;
        let x = self.poset.join(y, z);
        let (fy, fz, fx) = (self.poset.flat(y), self.poset.flat(z), self.poset.flat(x));
        let mut union: Vec<usize> = fy.hyperplanes.iter().chain(&fz.hyperplanes).copied().collect();
        union.sort_unstable();
        let disjoint = union.windows(2).all(|w| w[0] != w[1]);
        if !disjoint || union != fx.hyperplanes || fx.codim() != fy.codim() + fz.codim() {
            return Err(Error::DecompositionHypothesis(format!("flats {y} and {z}")));
        }
        Ok(x)
    }

    pub fn stratum_info(&self, x: FlatId) -> Result<StratumInfo> {
        self.poset.check(x)?;
        Ok(StratumInfo {
            flat: x,
            torus_rank: self.poset.component_count(x),
            component_group_order: self.smoothing_obstruction_order(x)?,
            codim: self.poset.flat(x).codim(),
        })
    }

    /// One entry per `W`-orbit on `L(A)`, represented by its least flat.
    pub fn point_classification(&self) -> Result<Vec<StratumInfo>> {
        let action = self.action()?;
        action.flat_orbits().iter().map(|o| self.stratum_info(o[0])).collect()
    }

    /// `#(stab(X)/W_X)`.
    pub fn smoothing_obstruction_order(&self, x: FlatId) -> Result<usize> {
        let action = self.action()?;
        let wx = action.pointwise_stabilizer(x)?.len();
        Ok(action.setwise_stabilizer(x).len() / wx)
    }
}

fn permute_exponents(m: &[u32], p: &[usize]) -> Exponents {
    let mut out = vec![0; m.len()];
    for (i, &k) in m.iter().enumerate() {
        out[p[i]] = k;
    }
    out
}

pub fn binomial(n: u32, k: u32) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

/// Re-express an element of one ring in another whose arrangement shares
/// the relevant flats (matched by subspace).
pub fn transport(from: &CohomologyRing<'_>, to: &CohomologyRing<'_>, x: &RingElement) -> Result<RingElement> {
    let mut terms = Vec::new();
    for (e, c) in x.terms() {
        let letters: Vec<Letter> = e
            .letters()
            .iter()
            .map(|l| {
                let s = &from.poset().flat(l.flat).subspace;
                Ok(Letter { flat: to.poset().flat_of_subspace(s)?, mu: l.mu })
            })
            .collect::<Result<_>>()?;
        terms.push((to.monoid().element(&letters)?, c.clone()));
    }
    to.from_terms(terms)
}

/// The map `H*(C) → H*(C^X)` to the cover induced from `X`.
#[derive(Clone, Debug)]
pub struct InducedRestriction {
    pub flat: FlatId,
    /// Poset of the sub-arrangement `A_X`.
    pub target: IntersectionPoset,
    /// Target flat ↦ source flat.
    pub embedding: Vec<FlatId>,
    pullback: HashMap<FlatId, FlatId>,
    coefficients: Coefficients,
}

impl InducedRestriction {
    /// Image of a basis element: zero unless its support lies in `L(A_X)`.
    pub fn map_element(&self, e: &MonoidElement) -> Option<MonoidElement> {
        let letters: Option<Vec<Letter>> =
            e.letters().iter().map(|l| self.pullback.get(&l.flat).map(|&f| Letter { flat: f, mu: l.mu })).collect();
        let mut letters = letters?;
        letters.sort_unstable();
        Some(Monoid::new(&self.target).normalize(letters))
    }

    pub fn apply(&self, target: &CohomologyRing<'_>, x: &RingElement) -> Result<RingElement> {
        if target.coefficients() != self.coefficients || x.coefficients() != self.coefficients {
            return Err(Error::CoefficientMismatch);
        }
        target.from_terms(x.terms().iter().filter_map(|(e, c)| self.map_element(e).map(|f| (f, c.clone()))))
    }

    /// Source flats outside `L(A_X)`; basis elements supported there form
    /// the kernel.
    pub fn complement(&self, source: &IntersectionPoset) -> Vec<FlatId> {
        (0..source.len()).filter(|f| !self.pullback.contains_key(f)).collect()
    }

    pub fn contains_flat(&self, source: &IntersectionPoset, f: FlatId) -> bool {
        is_subset(&source.flat(f).hyperplanes, &source.flat(self.flat).hyperplanes)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StratumInfo {
    pub flat: FlatId,
    pub torus_rank: usize,
    pub component_group_order: usize,
    pub codim: usize,
}

/// Outcome of checking the assignment `x ↦ -6qc`, `y ↦ 6q²c²` of the
/// degree-2 and degree-4 generators of `H*(M)` for `S_3` against the ring
/// relations among monomials `x^i y^j`, in `Q[c]/(c^{n+1})`.
#[derive(Clone, Debug)]
pub struct DiscriminantCheck {
    pub n: u32,
    pub max_weight: u32,
    /// Relations `Σ coeff · x^i y^j = 0`, as `(i, j, coeff)` triples.
    pub relations: Vec<Vec<(u32, u32, Rational)>>,
    /// Indices into `relations` that the assignment violates.
    pub violated: Vec<usize>,
}

impl DiscriminantCheck {
    pub fn holds(&self) -> bool {
        self.violated.is_empty()
    }
}

/// `x` is the averaged hyperplane class and `y` the fundamental class of
/// the deepest flat.
pub fn discriminant_check(ring: &CohomologyRing<'_>, n: u32, q: &Rational, max_weight: u32) -> Result<DiscriminantCheck> {
    let x = ring.invariant_basis(1, true)?.into_iter().next().ok_or(Error::Invalid("no hyperplanes".into()))?;
    let deepest = ring.poset().len() - 1;
    let y = ring.fundamental_class(deepest)?;
    if y.weight() != Some(2) {
        return Err(Error::Invalid("expected a codimension-2 deepest flat".into()));
    }
    let xv = -rat(6) * q;
    let yv = rat(6) * q * q;
    let mut relations = Vec::new();
    let mut violated = Vec::new();
    for k in 0..=max_weight {
        let monos: Vec<(u32, u32)> = (0..=k / 2).map(|j| (k - 2 * j, j)).collect();
        let elems: Vec<RingElement> = monos
            .iter()
            .map(|&(i, j)| ring.multiply(&ring.power(&x, i)?, &ring.power(&y, j)?))
            .collect::<Result<_>>()?;
        let basis: Vec<MonoidElement> =
            elems.iter().flat_map(|e| e.terms().keys().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
        let rows: Vec<Vec<Rational>> =
            basis.iter().map(|b| elems.iter().map(|e| e.coefficient(b)).collect()).collect();
        let m = RationalMatrix::from_rows(&rows, monos.len())?;
        for rel in m.kernel() {
            let terms: Vec<(u32, u32, Rational)> = monos
                .iter()
                .zip(&rel)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&(i, j), c)| (i, j, c.clone()))
                .collect();
            // every monomial of the relation has c-degree k
            let value: Rational = terms.iter().fold(Rational::zero(), |acc, (i, j, c)| {
                acc + c * pow(&xv, *i) * pow(&yv, *j)
            });
            if k <= n && !value.is_zero() {
                violated.push(relations.len());
            }
            relations.push(terms);
        }
    }
    Ok(DiscriminantCheck { n, max_weight, relations, violated })
}

fn pow(x: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}
