//! JSON documents. Rationals travel as strings, `"p/q"` or `"p"`.

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, parse_rational, Rational, RationalMatrix};
use crate::higgs::{Convention, RelationSign, RootDatum};
use crate::monoid::Letter;
use crate::reflection::ReflectionGroup;
use crate::strata::{Coefficients, CohomologyRing, RingElement};

/// `at` names the field for diagnostics, e.g. `hyperplanes[2]`.
fn parse_vec(v: &[String], at: &str) -> Result<Vec<Rational>> {
    v.iter()
        .enumerate()
        .map(|(j, s)| parse_rational(s).map_err(|_| Error::BadRational(format!("{s:?} at field `{at}[{j}]`"))))
        .collect()
}

fn parse_at(s: &str, at: &str) -> Result<Rational> {
    parse_rational(s).map_err(|_| Error::BadRational(format!("{s:?} at field `{at}`")))
}

fn format_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementDoc {
    pub ambient_dim: usize,
    pub hyperplanes: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl ArrangementDoc {
    pub fn build(&self) -> Result<Arrangement> {
        let normals = self
            .hyperplanes
            .iter()
            .enumerate()
            .map(|(i, h)| {
                if h.len() != self.ambient_dim {
                    return Err(Error::DimensionMismatch(format!(
                        "hyperplane {i} has {} entries, ambient_dim is {}",
                        h.len(),
                        self.ambient_dim
                    )));
                }
                parse_vec(h, &format!("hyperplanes[{i}]"))
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.ambient_dim, normals, self.labels.clone())
    }

    pub fn from_arrangement(a: &Arrangement) -> Self {
        ArrangementDoc {
            ambient_dim: a.ambient_dim(),
            hyperplanes: a.normals().iter().map(|n| format_vec(n)).collect(),
            labels: Some(a.labels().to_vec()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylSpec {
    pub family: String,
    pub rank: usize,
}

impl WeylSpec {
    /// `"A:2"` and friends.
    pub fn parse(s: &str) -> Result<Self> {
        let (f, n) = s.split_once(':').ok_or_else(|| Error::Invalid(format!("expected FAMILY:RANK, got {s:?}")))?;
        let rank = n.trim().parse().map_err(|_| Error::Invalid(format!("bad rank in {s:?}")))?;
        Ok(WeylSpec { family: f.trim().to_uppercase(), rank })
    }

    /// `A_n` acts on `Q^{n+1}` by permutations, `B_n` by signed
    /// permutations, `D_n` by evenly signed permutations.
    pub fn build(&self, bound: usize) -> Result<ReflectionGroup> {
        let n = self.rank;
        match (self.family.as_str(), n) {
            ("A", 1..) => ReflectionGroup::symmetric_bounded(n + 1, bound),
            ("B", 1..) => ReflectionGroup::signed_permutation_bounded(n, bound),
            ("D", 2..) => ReflectionGroup::even_signed_bounded(n, bound),
            _ => Err(Error::Invalid(format!("unsupported Weyl type {}{}", self.family, n))),
        }
    }
}

/// A matrix either as rows or as a flat row-major list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixDoc {
    Rows(Vec<Vec<String>>),
    Flat(Vec<String>),
}

impl MatrixDoc {
    pub fn build(&self) -> Result<RationalMatrix> {
        match self {
            MatrixDoc::Rows(rows) => {
                let n = rows.len();
                let parsed = rows.iter().enumerate().map(|(i, r)| parse_vec(r, &format!("row {i}"))).collect::<Result<Vec<_>>>()?;
                if parsed.iter().any(|r| r.len() != n) {
                    return Err(Error::DimensionMismatch("generator is not square".into()));
                }
                RationalMatrix::from_rows(&parsed, n)
            }
            MatrixDoc::Flat(entries) => {
                let n = (entries.len() as f64).sqrt().round() as usize;
                if n * n != entries.len() || n == 0 {
                    return Err(Error::DimensionMismatch(format!("{} entries is not a square count", entries.len())));
                }
                let parsed = parse_vec(entries, "generator")?;
                RationalMatrix::from_rows(&parsed.chunks(n).map(|c| c.to_vec()).collect::<Vec<_>>(), n)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl: Option<WeylSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<MatrixDoc>>,
    /// A `W`-stable arrangement; defaults to the mirrors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrangement: Option<ArrangementDoc>,
}

impl GroupDoc {
    pub fn build(&self, bound: usize) -> Result<(ReflectionGroup, Option<Arrangement>)> {
        let group = match (&self.weyl, &self.generators) {
            (Some(w), None) => w.build(bound)?,
            (None, Some(gens)) => {
                if gens.is_empty() {
                    return Err(Error::Invalid("empty generator list".into()));
                }
                let ms = gens.iter().map(MatrixDoc::build).collect::<Result<Vec<_>>>()?;
                ReflectionGroup::generate(&ms, bound)?
            }
            _ => return Err(Error::Invalid("give exactly one of \"weyl\" or \"generators\"".into())),
        };
        let arrangement = self.arrangement.as_ref().map(ArrangementDoc::build).transpose()?;
        Ok((group, arrangement))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumDoc {
    pub simple_roots: Vec<Vec<String>>,
    pub simple_coroots: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing_scale: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<String>,
}

pub fn parse_sign(s: &str) -> Result<RelationSign> {
    match s {
        "+" => Ok(RelationSign::Plus),
        "-" | "−" => Ok(RelationSign::Minus),
        _ => Err(Error::InvalidDatum(format!("sign must be \"+\" or \"-\", got {s:?}"))),
    }
}

impl DatumDoc {
    /// Fields present in the document override `base`.
    pub fn build(&self, base: Convention) -> Result<RootDatum> {
        let mut conv = base;
        if let Some(s) = &self.pairing_scale {
            conv.pairing_scale = parse_at(s, "pairing_scale")?;
        }
        if let Some(s) = &self.sign {
            conv.sign = parse_sign(s)?;
        }
        let roots = self.simple_roots.iter().enumerate().map(|(i, r)| parse_vec(r, &format!("simple_roots[{i}]"))).collect::<Result<Vec<_>>>()?;
        let coroots = self.simple_coroots.iter().enumerate().map(|(i, r)| parse_vec(r, &format!("simple_coroots[{i}]"))).collect::<Result<Vec<_>>>()?;
        RootDatum::new(roots, coroots, conv)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub monoid: Vec<Letter>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingElementDoc {
    pub coefficients: Coefficients,
    pub terms: Vec<TermDoc>,
}

impl RingElementDoc {
    pub fn from_element(x: &RingElement) -> Self {
        RingElementDoc {
            coefficients: x.coefficients(),
            terms: x
                .terms()
                .iter()
                .map(|(m, c)| TermDoc { monoid: m.letters().to_vec(), coeff: format_rational(c) })
                .collect(),
        }
    }

    pub fn build(&self, ring: &CohomologyRing<'_>) -> Result<RingElement> {
        if self.coefficients != ring.coefficients() {
            return Err(Error::CoefficientMismatch);
        }
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| Ok((ring.monoid().element(&t.monoid)?, parse_at(&t.coeff, &format!("terms[{i}].coeff"))?)))
            .collect::<Result<Vec<_>>>()?;
        ring.from_terms(terms)
    }
}

/// Any input document, told apart by its keys.
#[derive(Clone, Debug, PartialEq)]
pub enum InputDoc {
    Arrangement(ArrangementDoc),
    Group(GroupDoc),
    Datum(DatumDoc),
}

impl InputDoc {
    pub fn kind(v: &serde_json::Value) -> Option<&'static str> {
        let o = v.as_object()?;
        if o.contains_key("simple_roots") {
            Some("datum")
        } else if o.contains_key("weyl") || o.contains_key("generators") {
            Some("group")
        } else if o.contains_key("hyperplanes") {
            Some("arrangement")
        } else {
            None
        }
    }
}
