//! Cohomology of the stack of Higgs bundles over the stack of cameral
//! covers, `H*(H_C) ≅ (κ[L^μ] ⊗ Sym t*)/I`, and of its `W`-invariants.
//!
//! Each stratum `X` carries the polynomial ring in the component variables
//! `u_B` and the characters `χ_1..χ_m`, modulo the linear relations
//! `ℓ(χ, w) = χ - χ^w ± s·χ̃_w(χ)|_X` for `w ∈ W_X`. Here `χ^w = χ∘w`,
//! `s` is the pairing scale and the sign is part of the [`Convention`].
//!
//! The twisted class is
//! `χ̃_w(χ) = Σ_{α ∈ Φ_w} ⟨β̌_α, χ⟩ a_α` with `β_α = -w·α`,
//! which agrees with `⟨α̌, χ⟩ a_α` for simple reflections. Pairing with
//! `β̌_α` rather than `α̌` is what makes `w ↦ χ̃_w` a cocycle, so that the
//! twisted action `χ·w = χ^w ∓ s·χ̃_w(χ)` is a right action of `W`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arrangement::{FlatId, IntersectionPoset};
use crate::error::{Error, Result};
use crate::exactlin::{dot, normalize_direction, rat, Rational, RationalMatrix};
use crate::monoid::{Monoid, MonoidElement};
use crate::poly::{monomials_of_degree, Exponents, Poly};
use crate::reflection::{ElementId, GroupAction, ReflectionGroup};
use crate::strata::{restrict_basis, CohomologyRing, RingElement};

const MAX_WEYL: usize = 100_000;
const MAX_ROOT_COEFF: i64 = 6;

/// Sign of `χ̃` in the stratum relations; the twisted action carries the
/// opposite sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationSign {
    Plus,
    Minus,
}

impl RelationSign {
    pub fn factor(self) -> Rational {
        match self {
            RelationSign::Plus => rat(1),
            RelationSign::Minus => rat(-1),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            RelationSign::Plus => "+",
            RelationSign::Minus => "-",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Convention {
    pub pairing_scale: Rational,
    pub sign: RelationSign,
}

impl Default for Convention {
    fn default() -> Self {
        Convention { pairing_scale: rat(1), sign: RelationSign::Plus }
    }
}

impl Convention {
    /// Matches the rank-one worked example: `χ̃_w = 2a`, `w·χ = 2a - χ`,
    /// relation `a² = aχ` on the closed stratum.
    pub fn paper_sl2() -> Self {
        Convention { pairing_scale: rat(2), sign: RelationSign::Minus }
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    dim: usize,
    simple_roots: Vec<Vec<Rational>>,
    simple_coroots: Vec<Vec<Rational>>,
    roots: Vec<Vec<Rational>>,
    coroots: Vec<Vec<Rational>>,
    positive: Vec<bool>,
    group: ReflectionGroup,
    poset: IntersectionPoset,
    root_hyperplane: Vec<usize>,
    convention: Convention,
}

impl RootDatum {
    pub fn sl2(convention: Convention) -> Self {
        Self::new(vec![vec![rat(2)]], vec![vec![rat(1)]], convention).expect("sl2 is valid")
    }

    pub fn sl3(convention: Convention) -> Self {
        Self::new(
            vec![vec![rat(2), rat(-1)], vec![rat(-1), rat(2)]],
            vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
            convention,
        )
        .expect("sl3 is valid")
    }

    /// Simple roots are covectors and simple coroots vectors on `t = Q^m`.
    pub fn new(
        simple_roots: Vec<Vec<Rational>>,
        simple_coroots: Vec<Vec<Rational>>,
        convention: Convention,
    ) -> Result<Self> {
        let r = simple_roots.len();
        if r == 0 || simple_coroots.len() != r {
            return Err(Error::InvalidDatum("need matching nonempty lists of simple roots and coroots".into()));
        }
        let dim = simple_roots[0].len();
        if simple_roots.iter().chain(&simple_coroots).any(|v| v.len() != dim) {
            return Err(Error::InvalidDatum("roots and coroots must have the same length".into()));
        }
        for i in 0..r {
            for j in 0..r {
                let c = dot(&simple_roots[i], &simple_coroots[j]);
                let ok = if i == j { c == rat(2) } else { c.is_integer() && !c.is_positive() };
                if !ok {
                    return Err(Error::InvalidDatum(format!("Cartan entry ({i},{j}) = {c}")));
                }
            }
        }
        if RationalMatrix::from_rows(&simple_roots, dim)?.rank() != r {
            return Err(Error::InvalidDatum("simple roots are linearly dependent".into()));
        }
        if convention.pairing_scale.is_zero() {
            return Err(Error::InvalidDatum("pairing scale must be nonzero".into()));
        }
        // In simple-root coordinates the roots of a finite system have
        // coefficients at most 6 in absolute value (the highest root of E8),
        // so larger coefficients in the orbit mean W is infinite.
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|j| (0..r).map(|i| dot(&simple_roots[j], &simple_coroots[i]).to_integer().try_into().unwrap_or(i64::MIN)).collect())
            .collect();
        let mut orbit: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        orbit.extend(frontier.iter().cloned());
        while let Some(c) = frontier.pop() {
            for i in 0..r {
                let pairing: i64 = (0..r).map(|j| c[j] * cartan[j][i]).sum();
                let mut b = c.clone();
                b[i] -= pairing;
                if b[i].abs() > MAX_ROOT_COEFF {
                    return Err(Error::InvalidDatum("Weyl group closure is infinite".into()));
                }
                if orbit.insert(b.clone()) {
                    frontier.push(b);
                }
            }
        }
        let gens: Vec<RationalMatrix> = (0..r)
            .map(|i| {
                let mut m = RationalMatrix::identity(dim);
                for a in 0..dim {
                    for b in 0..dim {
                        let v = m.get(a, b) - &simple_coroots[i][a] * &simple_roots[i][b];
                        m.set(a, b, v);
                    }
                }
                m
            })
            .collect();
        let group = ReflectionGroup::generate_in(dim, &gens, MAX_WEYL).map_err(|e| match e {
            Error::GroupBoundExceeded(_) => Error::InvalidDatum("Weyl group closure is infinite".into()),
            other => other,
        })?;
        // roots: W-orbit of the simple roots, coroots alongside
        let mut seen: HashMap<Vec<Rational>, usize> = HashMap::new();
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        for w in 0..group.order() {
            for i in 0..r {
                let a = group.act_covector(w, &simple_roots[i]);
                if seen.contains_key(&a) {
                    continue;
                }
                seen.insert(a.clone(), roots.len());
                roots.push(a);
                coroots.push(group.element(w).apply(&simple_coroots[i]));
            }
        }
        let sm = RationalMatrix::from_rows(&simple_roots, dim)?;
        let positive: Vec<bool> = roots
            .iter()
            .map(|a| {
                let c = sm.solve_left(a).expect("roots lie in the root lattice");
                c.iter().all(|x| !x.is_negative())
            })
            .collect();
        let poset = IntersectionPoset::new(group.mirror_arrangement().clone());
        let arr = group.mirror_arrangement();
        let lookup: HashMap<Vec<Rational>, usize> =
            (0..arr.len()).map(|h| (normalize_direction(arr.normal(h)).expect("nonzero"), h)).collect();
        let root_hyperplane = roots
            .iter()
            .map(|a| {
                lookup
                    .get(&normalize_direction(a).expect("nonzero"))
                    .copied()
                    .ok_or(Error::InvalidDatum("a root has no mirror".into()))
            })
            .collect::<Result<_>>()?;
        Ok(RootDatum {
            dim,
            simple_roots,
            simple_coroots,
            roots,
            coroots,
            positive,
            group,
            poset,
            root_hyperplane,
            convention,
        })
    }

    /// Dimension of `t` (and of the character space).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<Rational>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<Rational>] {
        &self.simple_coroots
    }

    pub fn roots(&self) -> &[Vec<Rational>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| self.positive[i]).collect()
    }

    pub fn coroot(&self, i: usize) -> &[Rational] {
        &self.coroots[i]
    }

    pub fn group(&self) -> &ReflectionGroup {
        &self.group
    }

    pub fn poset(&self) -> &IntersectionPoset {
        &self.poset
    }

    pub fn convention(&self) -> &Convention {
        &self.convention
    }

    pub fn root_hyperplane(&self, i: usize) -> usize {
        self.root_hyperplane[i]
    }

    fn root_index(&self, a: &[Rational]) -> usize {
        self.roots.iter().position(|r| r == a).expect("W permutes the roots")
    }

    /// `⟨α̌, χ⟩ = χ(α̌)`.
    pub fn pairing(&self, coroot: &[Rational], chi: &[Rational]) -> Rational {
        dot(chi, coroot)
    }

    /// `Φ_w = {α > 0 : w·α < 0}`, as root indices.
    pub fn inversion_set(&self, w: ElementId) -> Vec<usize> {
        self.positive_roots()
            .into_iter()
            .filter(|&i| !self.positive[self.root_index(&self.group.act_covector(w, &self.roots[i]))])
            .collect()
    }

    /// `Φ^X_w`: inversions whose mirror contains `X`.
    pub fn inversion_set_at(&self, w: ElementId, x: FlatId) -> Vec<usize> {
        let hs = &self.poset.flat(x).hyperplanes;
        self.inversion_set(w).into_iter().filter(|&i| hs.contains(&self.root_hyperplane[i])).collect()
    }

    /// `χ^w = χ∘w`.
    pub fn chi_w(&self, w: ElementId, chi: &[Rational]) -> Vec<Rational> {
        self.group.element(w).apply_left(chi)
    }

    /// `χ̃_w(χ)` as hyperplane ↦ coefficient (scaled by the pairing scale).
    pub fn tilde_chi_terms(&self, w: ElementId, chi: &[Rational]) -> BTreeMap<usize, Rational> {
        let mut out = BTreeMap::new();
        let m = self.group.element(w);
        for i in self.inversion_set(w) {
            // β̌ = -w·α̌
            let beta_check: Vec<Rational> = m.apply(&self.coroots[i]).into_iter().map(|x| -x).collect();
            let c = self.pairing(&beta_check, chi) * &self.convention.pairing_scale;
            if !c.is_zero() {
                *out.entry(self.root_hyperplane[i]).or_insert_with(Rational::zero) += c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `χ̃_w(χ)` as a degree-2 class in the ring of the mirror arrangement.
    pub fn tilde_chi(&self, ring: &CohomologyRing<'_>, w: ElementId, chi: &[Rational]) -> Result<RingElement> {
        let mut acc = ring.zero();
        for (h, c) in self.tilde_chi_terms(w, chi) {
            acc = ring.add(&acc, &ring.scale(&ring.class_of_hyperplane(h)?, &c)?)?;
        }
        Ok(acc)
    }

    /// Restriction of `χ̃_w(χ)` to stratum `X`, as coefficients of the
    /// component variables of `X`.
    pub fn tilde_chi_at(&self, x: FlatId, w: ElementId, chi: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.poset.component_count(x)];
        for (h, c) in self.tilde_chi_terms(w, chi) {
            if let Some(b) = self.poset.component_of_hyperplane(x, h) {
                out[b] += c;
            }
        }
        out
    }

    pub fn character(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }
}

/// One stratum: variables `u_B` (first) and `χ_i`, modulo linear relations.
#[derive(Clone, Debug)]
pub struct HiggsStratumRing {
    pub flat: FlatId,
    pub u_count: usize,
    pub chi_count: usize,
    /// Each relation is a coefficient vector over `[u.., χ..]`.
    pub relations: Vec<Vec<Rational>>,
    /// Variables surviving elimination (indices into `[u.., χ..]`).
    pub complement: Vec<usize>,
    /// Each variable as a linear form in the complement variables.
    substitution: Vec<Poly>,
}

impl HiggsStratumRing {
    pub fn nvars(&self) -> usize {
        self.u_count + self.chi_count
    }

    pub fn relation_rank(&self) -> usize {
        self.nvars() - self.complement.len()
    }

    /// Dimension of the quotient in weight `d`.
    pub fn quotient_dim(&self, d: u32) -> usize {
        monomials_of_degree(self.complement.len(), d).len()
    }

    /// Image of `u^a χ^b` in the quotient.
    pub fn image(&self, u: &[u32], chi: &[u32]) -> Poly {
        let n = self.complement.len();
        let mut out = Poly::one(n);
        for (k, &e) in u.iter().chain(chi).enumerate() {
            if e > 0 {
                out = out.mul(&self.substitution[k].pow(e));
            }
        }
        out
    }

    /// Image of a linear form over `[u.., χ..]`.
    pub fn image_linear(&self, form: &[Rational]) -> Poly {
        let mut out = Poly::zero(self.complement.len());
        for (k, c) in form.iter().enumerate() {
            out = out.add(&self.substitution[k].scale(c));
        }
        out
    }
}

/// Elements of `κ[L^μ] ⊗ Sym(t*)`: `(monoid element, χ-exponents) ↦ coeff`.
pub type Tensor = BTreeMap<(MonoidElement, Exponents), Rational>;

fn tensor_add_term(t: &mut Tensor, k: (MonoidElement, Exponents), c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(k.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        t.remove(&k);
    }
}

/// The full model for a root datum.
pub struct HiggsModel<'a> {
    datum: &'a RootDatum,
    action: GroupAction<'a>,
    strata: Vec<HiggsStratumRing>,
    /// Per element, the action on each basic character.
    chi_action: Vec<Vec<Tensor>>,
}

impl<'a> HiggsModel<'a> {
    pub fn new(datum: &'a RootDatum) -> Result<Self> {
        let action = GroupAction::new(&datum.group, &datum.poset)?;
        let m = datum.dim;
        let eps = datum.convention.sign.factor();
        let mut strata = Vec::new();
        for x in 0..datum.poset.len() {
            let k = datum.poset.component_count(x);
            let mut relations = Vec::new();
            for w in action.pointwise_stabilizer(x)? {
                for i in 0..m {
                    let chi = datum.character(i);
                    let chiw = datum.chi_w(w, &chi);
                    let mut form: Vec<Rational> = datum.tilde_chi_at(x, w, &chi).into_iter().map(|c| c * &eps).collect();
                    form.extend((0..m).map(|j| &chi[j] - &chiw[j]));
                    if form.iter().any(|c| !c.is_zero()) {
                        relations.push(form);
                    }
                }
            }
            strata.push(eliminate(x, k, m, relations));
        }
        let chi_action = (0..datum.group.order())
            .map(|w| (0..m).map(|i| Self::act_character(datum, w, i)).collect())
            .collect();
        Ok(HiggsModel { datum, action, strata, chi_action })
    }

    /// `χ_i·w = χ_i^w ∓ s·χ̃_w(χ_i)` as a tensor.
    fn act_character(datum: &RootDatum, w: ElementId, i: usize) -> Tensor {
        let chi = datum.character(i);
        let chiw = datum.chi_w(w, &chi);
        let eps = datum.convention.sign.factor();
        let mut t = Tensor::new();
        for (j, c) in chiw.into_iter().enumerate() {
            let mut e = vec![0; datum.dim];
            e[j] = 1;
            tensor_add_term(&mut t, (MonoidElement::identity(), e), c);
        }
        let monoid = Monoid::new(&datum.poset);
        for (h, c) in datum.tilde_chi_terms(w, &chi) {
            let a = monoid.letter(datum.poset.hyperplane_flat(h), 1).expect("hyperplane letter");
            tensor_add_term(&mut t, (a, vec![0; datum.dim]), -(c * &eps));
        }
        t
    }

    pub fn datum(&self) -> &RootDatum {
        self.datum
    }

    pub fn action(&self) -> &GroupAction<'a> {
        &self.action
    }

    pub fn monoid(&self) -> Monoid<'a> {
        Monoid::new(&self.datum.poset)
    }

    pub fn stratum(&self, x: FlatId) -> &HiggsStratumRing {
        &self.strata[x]
    }

    pub fn strata(&self) -> &[HiggsStratumRing] {
        &self.strata
    }

    pub fn multiply(&self, a: &Tensor, b: &Tensor) -> Tensor {
        let monoid = self.monoid();
        let mut out = Tensor::new();
        for ((m1, e1), c1) in a {
            for ((m2, e2), c2) in b {
                let e: Exponents = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                tensor_add_term(&mut out, (monoid.multiply(m1, m2), e), c1 * c2);
            }
        }
        out
    }

    pub fn basis_tensor(&self, m: &MonoidElement, e: &[u32]) -> Tensor {
        Tensor::from([((m.clone(), e.to_vec()), Rational::one())])
    }

    /// The twisted right action, extended multiplicatively.
    pub fn twisted_action(&self, w: ElementId, t: &Tensor) -> Tensor {
        let monoid = self.monoid();
        let mut out = Tensor::new();
        for ((m, e), c) in t {
            let mut acc = self.basis_tensor(&monoid.w_act(&self.action, w, m), &vec![0; self.datum.dim]);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    acc = self.multiply(&acc, &self.chi_action[w][i]);
                }
            }
            for (k, v) in acc {
                tensor_add_term(&mut out, k, v * c);
            }
        }
        out
    }

    /// Image in `⊕_X` of the stratum quotients, keyed by (flat, monomial in
    /// that stratum's complement variables).
    pub fn image(&self, t: &Tensor) -> BTreeMap<(FlatId, Exponents), Rational> {
        let mut out: BTreeMap<(FlatId, Exponents), Rational> = BTreeMap::new();
        for (x, s) in self.strata.iter().enumerate() {
            let mut p = Poly::zero(s.complement.len());
            for ((m, e), c) in t {
                if let Some(u) = restrict_basis(&self.datum.poset, m, x) {
                    p = p.add(&s.image(&u, e).scale(c));
                }
            }
            for (mono, c) in p.terms() {
                out.insert((x, mono.clone()), c.clone());
            }
        }
        out
    }

    /// Basis `m ⊗ χ^e` of weight `d` (monoid weight plus χ-degree).
    pub fn source_basis(&self, d: u32) -> Vec<(MonoidElement, Exponents)> {
        let levels = self.monoid().enumerate(d);
        let mut out = Vec::new();
        for (mw, level) in levels.iter().enumerate() {
            let chis = monomials_of_degree(self.datum.dim, d - mw as u32);
            for m in level {
                for e in &chis {
                    out.push((m.clone(), e.clone()));
                }
            }
        }
        out
    }

    fn image_matrix(&self, sources: &[Tensor]) -> RationalMatrix {
        let images: Vec<_> = sources.iter().map(|t| self.image(t)).collect();
        let keys: Vec<(FlatId, Exponents)> =
            images.iter().flat_map(|i| i.keys().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
        let rows: Vec<Vec<Rational>> = images
            .iter()
            .map(|i| keys.iter().map(|k| i.get(k).cloned().unwrap_or_else(Rational::zero)).collect())
            .collect();
        RationalMatrix::from_rows(&rows, keys.len()).expect("rectangular")
    }

    /// Graded dimensions of `H*(H_C)` in degrees `0, 2, ..., 2·max_weight`.
    pub fn hc_betti(&self, max_weight: u32) -> Vec<usize> {
        (0..=max_weight)
            .into_par_iter()
            .map(|d| {
                let sources: Vec<Tensor> = self.source_basis(d).iter().map(|(m, e)| self.basis_tensor(m, e)).collect();
                self.image_matrix(&sources).rank()
            })
            .collect()
    }

    /// Generators `c(X)·ℓ(χ_i, w)` of the ideal `I`, using the full class
    /// `χ̃_w` (not its restriction to `X`).
    pub fn ideal_generators(&self) -> Result<Vec<Tensor>> {
        let monoid = self.monoid();
        let m = self.datum.dim;
        let eps = self.datum.convention.sign.factor();
        let mut out = Vec::new();
        for x in 1..self.datum.poset.len() {
            let fx = monoid.fundamental(x);
            for w in self.action.pointwise_stabilizer(x)? {
                for i in 0..m {
                    let chi = self.datum.character(i);
                    let chiw = self.datum.chi_w(w, &chi);
                    let mut t = Tensor::new();
                    for j in 0..m {
                        let mut e = vec![0; m];
                        e[j] = 1;
                        tensor_add_term(&mut t, (fx.clone(), e), &chi[j] - &chiw[j]);
                    }
                    for (h, c) in self.datum.tilde_chi_terms(w, &chi) {
                        let a = monoid.letter(self.datum.poset.hyperplane_flat(h), 1)?;
                        tensor_add_term(&mut t, (monoid.multiply(&fx, &a), vec![0; m]), c * &eps);
                    }
                    if !t.is_empty() {
                        out.push(t);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `dim (κ[L^μ] ⊗ Sym)_d / I_d`, computed from the presentation alone.
    pub fn presentation_betti(&self, max_weight: u32) -> Result<Vec<usize>> {
        let gens = self.ideal_generators()?;
        let weight_of = |t: &Tensor| -> u32 {
            let ((m, e), _) = t.iter().next().expect("nonzero");
            m.weight() + e.iter().sum::<u32>()
        };
        let mut out = Vec::new();
        for d in 0..=max_weight {
            let basis = self.source_basis(d);
            let index: HashMap<&(MonoidElement, Exponents), usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
            let mut rows: Vec<Vec<Rational>> = Vec::new();
            for g in &gens {
                let gw = weight_of(g);
                if gw > d {
                    continue;
                }
                for (m, e) in self.source_basis(d - gw) {
                    let t = self.multiply(g, &self.basis_tensor(&m, &e));
                    let mut row = vec![Rational::zero(); basis.len()];
                    for (k, c) in t {
                        row[index[&k]] = c;
                    }
                    rows.push(row);
                }
            }
            let rank = RationalMatrix::from_rows(&rows, basis.len())?.rank();
            out.push(basis.len() - rank);
        }
        Ok(out)
    }

    /// Whether every ideal generator maps to zero in every stratum.
    pub fn kernel_property(&self) -> Result<bool> {
        Ok(self.ideal_generators()?.iter().all(|g| self.image(g).is_empty()))
    }

    /// `(t·w1)·w2 = t·(w1 w2)` on the characters for all pairs, and on the
    /// whole source basis up to `max_weight`.
    pub fn group_law_holds(&self, max_weight: u32) -> bool {
        let g = &self.datum.group;
        let mut spanning: Vec<Tensor> = Vec::new();
        for d in 0..=max_weight {
            spanning.extend(self.source_basis(d).iter().map(|(m, e)| self.basis_tensor(m, e)));
        }
        (0..g.order()).all(|w1| {
            (0..g.order()).all(|w2| {
                let w12 = g.mul(w1, w2);
                spanning
                    .iter()
                    .all(|t| self.twisted_action(w2, &self.twisted_action(w1, t)) == self.twisted_action(w12, t))
            })
        })
    }

    /// Dimensions of the `W`-invariants of the image, degrees `0..=2·max`.
    /// Errors if the action does not descend to the image.
    pub fn h_betti(&self, max_weight: u32) -> Result<Vec<usize>> {
        (0..=max_weight).into_par_iter().map(|d| self.invariant_dimension(d)).collect()
    }

    /// Checks that the twisted action descends to the image in weight `d`
    /// and returns the dimension of the invariants there.
    pub fn invariant_dimension(&self, d: u32) -> Result<usize> {
        let sources: Vec<Tensor> = self.source_basis(d).iter().map(|(m, e)| self.basis_tensor(m, e)).collect();
        let p: Vec<_> = sources.iter().map(|t| self.image(t)).collect();
        let q: Vec<Vec<_>> = self
            .datum
            .group
            .generators()
            .iter()
            .map(|&g| sources.iter().map(|s| self.image(&self.twisted_action(g, s))).collect())
            .collect();
        let keys: Vec<(FlatId, Exponents)> = p
            .iter()
            .chain(q.iter().flatten())
            .flat_map(|i| i.keys().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let dense = |v: &BTreeMap<(FlatId, Exponents), Rational>| -> Vec<Rational> {
            keys.iter().map(|k| v.get(k).cloned().unwrap_or_else(Rational::zero)).collect()
        };
        let pm: Vec<Vec<Rational>> = p.iter().map(dense).collect();
        let n = keys.len();
        let rank_p = RationalMatrix::from_rows(&pm, n)?.rank();
        let mut diff: Vec<Vec<Rational>> = vec![Vec::new(); sources.len()];
        for qg in &q {
            let qm: Vec<Vec<Rational>> = qg.iter().map(dense).collect();
            let joined: Vec<Vec<Rational>> = pm.iter().zip(&qm).map(|(a, b)| [a.clone(), b.clone()].concat()).collect();
            if RationalMatrix::from_rows(&joined, 2 * n)?.rank() != rank_p {
                return Err(Error::Consistency(format!("twisted action does not descend in degree {}", 2 * d)));
            }
            for (i, (a, b)) in pm.iter().zip(&qm).enumerate() {
                diff[i].extend(b.iter().zip(a).map(|(x, y)| x - y));
            }
        }
        if sources.is_empty() {
            return Ok(0);
        }
        let width = diff[0].len();
        let fixed = RationalMatrix::from_rows(&diff, width)?.transpose().kernel();
        let invariant_rows: Vec<Vec<Rational>> = fixed
            .iter()
            .map(|c| {
                let mut v = vec![Rational::zero(); n];
                for (ci, row) in c.iter().zip(&pm) {
                    if !ci.is_zero() {
                        for (k, x) in row.iter().enumerate() {
                            v[k] += ci * x;
                        }
                    }
                }
                v
            })
            .collect();
        Ok(RationalMatrix::from_rows(&invariant_rows, n)?.rank())
    }
}

fn eliminate(flat: FlatId, u_count: usize, chi_count: usize, relations: Vec<Vec<Rational>>) -> HiggsStratumRing {
    let n = u_count + chi_count;
    let (rref, pivots) = RationalMatrix::from_rows(&relations, n).expect("relations have full length").rref_with_pivots();
    let complement: Vec<usize> = (0..n).filter(|v| !pivots.contains(v)).collect();
    let nf = complement.len();
    let mut substitution = vec![Poly::zero(nf); n];
    for (k, &v) in complement.iter().enumerate() {
        substitution[v] = Poly::variable(nf, k);
    }
    for (i, &p) in pivots.iter().enumerate() {
        let coeffs: Vec<Rational> = complement.iter().map(|&f| -rref.get(i, f).clone()).collect();
        substitution[p] = Poly::linear(&coeffs);
    }
    HiggsStratumRing { flat, u_count, chi_count, relations, complement, substitution }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_dimensions() {
        for conv in [Convention::default(), Convention::paper_sl2()] {
            let d = RootDatum::sl2(conv);
            let h = HiggsModel::new(&d).unwrap();
            assert_eq!(h.hc_betti(3), vec![1, 2, 2, 2]);
            assert_eq!(h.presentation_betti(3).unwrap(), vec![1, 2, 2, 2]);
            assert_eq!(h.h_betti(4).unwrap(), vec![1, 1, 2, 1, 2]);
            assert!(h.kernel_property().unwrap());
            assert!(h.group_law_holds(3));
        }
    }

    #[test]
    fn paper_convention_action() {
        let d = RootDatum::sl2(Convention::paper_sl2());
        let h = HiggsModel::new(&d).unwrap();
        let s = d.group().generators()[0];
        let chi = h.basis_tensor(&MonoidElement::identity(), &[1]);
        let acted = h.twisted_action(s, &chi);
        let a = h.monoid().letter(d.poset().hyperplane_flat(0), 1).unwrap();
        assert_eq!(acted.get(&(a, vec![0])), Some(&rat(2)));
        assert_eq!(acted.get(&(MonoidElement::identity(), vec![1])), Some(&rat(-1)));
    }

    #[test]
    fn sl3_cocycle_and_kernel() {
        let d = RootDatum::sl3(Convention::default());
        assert_eq!(d.group().order(), 6);
        assert_eq!(d.positive_roots().len(), 3);
        let h = HiggsModel::new(&d).unwrap();
        assert!(h.group_law_holds(1));
        assert!(h.kernel_property().unwrap());
        assert_eq!(h.hc_betti(3), h.presentation_betti(3).unwrap());
    }

    #[test]
    fn rejects_bad_data() {
        let bad = RootDatum::new(vec![vec![rat(2)]], vec![vec![rat(2)]], Convention::default());
        assert!(matches!(bad, Err(Error::InvalidDatum(_))));
        // hyperbolic Cartan matrix: infinite Weyl group
        let aff = RootDatum::new(
            vec![vec![rat(2), rat(-3)], vec![rat(-3), rat(2)]],
            vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
            Convention::default(),
        );
        assert_eq!(aff.unwrap_err(), Error::InvalidDatum("Weyl group closure is infinite".into()));
    }
}
