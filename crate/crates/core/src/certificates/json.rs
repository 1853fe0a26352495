//! JSON certificate documents. Deserialization is strict (unknown fields and
//! missing required fields are rejected) and every polynomial is parsed in
//! the declared variables before any verifier runs. The matching JSON Schema
//! is `docs/certificate.schema.json`.

use serde::{Deserialize, Serialize};

use super::{
    AmGmCert, BadPointCert, CertError, ConeObstruction, ConeReduction, DensityWitness, Element, NonMembership,
    ProductSupport, SosCert, SosItem, SosRing, StructNonneg,
};
use crate::groebner::Ideal;
use crate::poly::{parse_poly, ExponentSet, Monomial, Poly, Vars};
use crate::rat::{fmt_rat, parse_rat, GaussRat, Rat};
use crate::series::TruncSeries;

fn one() -> String {
    "1".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDoc {
    pub g: String,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructNonnegDoc {
    #[serde(default = "one")]
    pub scalar: String,
    #[serde(default)]
    pub squares: Vec<String>,
    #[serde(default)]
    pub atoms: Vec<AtomDoc>,
}

impl Default for StructNonnegDoc {
    fn default() -> Self {
        Self { scalar: one(), squares: Vec::new(), atoms: Vec::new() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingDoc {
    Polynomial,
    Truncated(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SosItemDoc {
    #[serde(default)]
    pub scale: StructNonnegDoc,
    pub root: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SosDoc {
    pub vars: Vec<String>,
    pub ring: RingDoc,
    pub target: String,
    pub items: Vec<SosItemDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmGmDoc {
    pub vars: Vec<String>,
    pub terms: Vec<StructNonnegDoc>,
    pub mean: StructNonnegDoc,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonSosDoc {
    pub vars: Vec<String>,
    pub poly: String,
    /// Half of the corner exponent; searched for when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDoc {
    pub i: usize,
    pub j: usize,
    pub support: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDoc {
    pub vars: Vec<String>,
    pub trunc: u32,
    pub gens: Vec<String>,
    pub f: String,
    pub target: Vec<u32>,
    #[serde(default)]
    pub products: Vec<ProductDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CombinationDoc {
    pub i: usize,
    pub j: usize,
    pub cofactor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeReductionDoc {
    pub combination: Vec<CombinationDoc>,
    pub core: String,
    /// Names of the new coordinates.
    pub coordinates: Vec<String>,
    /// Original variables as series in the new coordinates.
    pub images: Vec<String>,
    pub trunc: u32,
    pub target: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case", deny_unknown_fields)]
pub enum NonMembershipDoc {
    Localized,
    OrderBound,
    Cone(ConeReductionDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityDoc {
    pub point: Vec<String>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BadPointDoc {
    pub vars: Vec<String>,
    pub ideal: Vec<String>,
    pub f: String,
    pub point: Vec<String>,
    pub non_membership: NonMembershipDoc,
    pub density: Vec<DensityDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateDoc {
    Sos(SosDoc),
    Amgm(AmGmDoc),
    NonSos(NonSosDoc),
    Cone(ConeDoc),
    BadPoint(BadPointDoc),
}

impl CertificateDoc {
    pub fn kind(&self) -> &'static str {
        match self {
            CertificateDoc::Sos(_) => "sos",
            CertificateDoc::Amgm(_) => "amgm",
            CertificateDoc::NonSos(_) => "non_sos",
            CertificateDoc::Cone(_) => "cone",
            CertificateDoc::BadPoint(_) => "bad_point",
        }
    }
}

/// A parsed, validated certificate.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    Sos(SosCert),
    AmGm(AmGmCert),
    NonSos { poly: Poly, beta: Option<Monomial> },
    Cone { obstruction: ConeObstruction, gens: Vec<TruncSeries>, f: TruncSeries },
    BadPoint(BadPointCert),
}

fn schema(msg: impl Into<String>) -> CertError {
    CertError::Malformed(msg.into())
}

fn vars_of(names: &[String]) -> Result<Vars, CertError> {
    if names.is_empty() {
        return Err(schema("`vars` must not be empty"));
    }
    Ok(Vars::new(names))
}

fn poly(text: &str, vars: &Vars) -> Result<Poly, CertError> {
    parse_poly(text, vars).map_err(|e| schema(format!("polynomial {text:?}: {e}")))
}

fn rat_field(text: &str) -> Result<Rat, CertError> {
    parse_rat(text).ok_or_else(|| schema(format!("not a rational: {text:?}")))
}

fn mono(exps: &[u32], arity: usize) -> Result<Monomial, CertError> {
    if exps.len() != arity {
        return Err(schema(format!("exponent vector {exps:?} has length {}, expected {arity}", exps.len())));
    }
    Ok(Monomial::from_exps(exps))
}

fn struct_nonneg(d: &StructNonnegDoc, vars: &Vars) -> Result<StructNonneg, CertError> {
    let s = StructNonneg {
        scalar: rat_field(&d.scalar)?,
        squares: d.squares.iter().map(|t| poly(t, vars)).collect::<Result<_, _>>()?,
        atoms: d.atoms.iter().map(|a| Ok((poly(&a.g, vars)?, rat_field(&a.c)?))).collect::<Result<_, CertError>>()?,
    };
    Ok(s)
}

fn struct_doc(s: &StructNonneg) -> StructNonnegDoc {
    StructNonnegDoc {
        scalar: fmt_rat(&s.scalar),
        squares: s.squares.iter().map(ToString::to_string).collect(),
        atoms: s.atoms.iter().map(|(g, c)| AtomDoc { g: g.to_string(), c: fmt_rat(c) }).collect(),
    }
}

fn element(text: &str, vars: &Vars, ring: SosRing) -> Result<Element, CertError> {
    let p = poly(text, vars)?;
    Ok(match ring {
        SosRing::Polynomial => Element::Poly(p),
        SosRing::Truncated(n) => Element::Series(TruncSeries::new(&p, n)),
    })
}

fn element_text(e: &Element) -> String {
    match e {
        Element::Poly(p) => p.to_string(),
        Element::Series(s) => s.body().to_string(),
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate, CertError> {
    let doc: CertificateDoc = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    from_doc(&doc)
}

pub fn from_doc(doc: &CertificateDoc) -> Result<Certificate, CertError> {
    Ok(match doc {
        CertificateDoc::Sos(d) => {
            let vars = vars_of(&d.vars)?;
            let ring = match d.ring {
                RingDoc::Polynomial => SosRing::Polynomial,
                RingDoc::Truncated(n) => SosRing::Truncated(n),
            };
            let items = d
                .items
                .iter()
                .map(|it| {
                    Ok(SosItem { scale: struct_nonneg(&it.scale, &vars)?, root: element(&it.root, &vars, ring)? })
                })
                .collect::<Result<_, CertError>>()?;
            Certificate::Sos(SosCert { ring, target: element(&d.target, &vars, ring)?, items })
        }
        CertificateDoc::Amgm(d) => {
            let vars = vars_of(&d.vars)?;
            Certificate::AmGm(AmGmCert {
                terms: d.terms.iter().map(|t| struct_nonneg(t, &vars)).collect::<Result<_, _>>()?,
                mean: struct_nonneg(&d.mean, &vars)?,
                target: poly(&d.target, &vars)?,
            })
        }
        CertificateDoc::NonSos(d) => {
            let vars = vars_of(&d.vars)?;
            let beta = d.beta.as_ref().map(|b| mono(b, vars.len())).transpose()?;
            Certificate::NonSos { poly: poly(&d.poly, &vars)?, beta }
        }
        CertificateDoc::Cone(d) => {
            let vars = vars_of(&d.vars)?;
            let n = vars.len();
            let mut products = Vec::new();
            for p in &d.products {
                let mut support = ExponentSet::new(n);
                for e in &p.support {
                    support.insert(mono(e, n)?);
                }
                products.push(ProductSupport { i: p.i, j: p.j, support });
            }
            Certificate::Cone {
                obstruction: ConeObstruction { target: mono(&d.target, n)?, products },
                gens: d
                    .gens
                    .iter()
                    .map(|g| Ok(TruncSeries::new(&poly(g, &vars)?, d.trunc)))
                    .collect::<Result<_, CertError>>()?,
                f: TruncSeries::new(&poly(&d.f, &vars)?, d.trunc),
            }
        }
        CertificateDoc::BadPoint(d) => {
            let vars = vars_of(&d.vars)?;
            let gens = d.ideal.iter().map(|g| poly(g, &vars)).collect::<Result<Vec<_>, _>>()?;
            let point = d
                .point
                .iter()
                .map(|t| t.parse::<GaussRat>().map_err(|e| schema(format!("point coordinate {t:?}: {}", e.0))))
                .collect::<Result<Vec<_>, _>>()?;
            let non_membership = match &d.non_membership {
                NonMembershipDoc::Localized => NonMembership::Localized,
                NonMembershipDoc::OrderBound => NonMembership::OrderBound,
                NonMembershipDoc::Cone(r) => {
                    let new_vars = vars_of(&r.coordinates)?;
                    NonMembership::Cone(ConeReduction {
                        combination: r
                            .combination
                            .iter()
                            .map(|c| Ok((c.i, c.j, poly(&c.cofactor, &vars)?)))
                            .collect::<Result<_, CertError>>()?,
                        core: poly(&r.core, &vars)?,
                        images: r
                            .images
                            .iter()
                            .map(|t| Ok(TruncSeries::new(&poly(t, &new_vars)?, r.trunc)))
                            .collect::<Result<_, CertError>>()?,
                        target: mono(&r.target, new_vars.len())?,
                    })
                }
            };
            let density = d
                .density
                .iter()
                .map(|w| {
                    Ok(DensityWitness {
                        point: w.point.iter().map(|t| rat_field(t)).collect::<Result<_, _>>()?,
                        rank: w.rank,
                    })
                })
                .collect::<Result<_, CertError>>()?;
            Certificate::BadPoint(BadPointCert {
                ideal: Ideal::new(&vars, gens)?,
                f: poly(&d.f, &vars)?,
                point,
                non_membership,
                density,
            })
        }
    })
}

fn names(v: &Vars) -> Vec<String> {
    v.names().to_vec()
}

pub fn to_doc(c: &Certificate) -> CertificateDoc {
    match c {
        Certificate::Sos(s) => CertificateDoc::Sos(SosDoc {
            vars: names(s.target.vars()),
            ring: match s.ring {
                SosRing::Polynomial => RingDoc::Polynomial,
                SosRing::Truncated(n) => RingDoc::Truncated(n),
            },
            target: element_text(&s.target),
            items: s
                .items
                .iter()
                .map(|it| SosItemDoc { scale: struct_doc(&it.scale), root: element_text(&it.root) })
                .collect(),
        }),
        Certificate::AmGm(a) => CertificateDoc::Amgm(AmGmDoc {
            vars: names(a.target.vars()),
            terms: a.terms.iter().map(struct_doc).collect(),
            mean: struct_doc(&a.mean),
            target: a.target.to_string(),
        }),
        Certificate::NonSos { poly, beta } => CertificateDoc::NonSos(NonSosDoc {
            vars: names(poly.vars()),
            poly: poly.to_string(),
            beta: beta.as_ref().map(|b| b.exps().to_vec()),
        }),
        Certificate::Cone { obstruction, gens, f } => CertificateDoc::Cone(ConeDoc {
            vars: names(f.vars()),
            trunc: f.trunc(),
            gens: gens.iter().map(|g| g.body().to_string()).collect(),
            f: f.body().to_string(),
            target: obstruction.target.exps().to_vec(),
            products: obstruction
                .products
                .iter()
                .map(|p| ProductDoc { i: p.i, j: p.j, support: p.support.to_vecs() })
                .collect(),
        }),
        Certificate::BadPoint(b) => CertificateDoc::BadPoint(BadPointDoc {
            vars: names(b.ideal.vars()),
            ideal: b.ideal.gens().iter().map(ToString::to_string).collect(),
            f: b.f.to_string(),
            point: b.point.iter().map(ToString::to_string).collect(),
            non_membership: match &b.non_membership {
                NonMembership::Localized => NonMembershipDoc::Localized,
                NonMembership::OrderBound => NonMembershipDoc::OrderBound,
                NonMembership::Cone(r) => NonMembershipDoc::Cone(ConeReductionDoc {
                    combination: r
                        .combination
                        .iter()
                        .map(|(i, j, c)| CombinationDoc { i: *i, j: *j, cofactor: c.to_string() })
                        .collect(),
                    core: r.core.to_string(),
                    coordinates: r.images.first().map(|s| names(s.vars())).unwrap_or_default(),
                    images: r.images.iter().map(|s| s.body().to_string()).collect(),
                    trunc: r.images.first().map_or(0, TruncSeries::trunc),
                    target: r.target.exps().to_vec(),
                }),
            },
            density: b
                .density
                .iter()
                .map(|w| DensityDoc { point: w.point.iter().map(fmt_rat).collect(), rank: w.rank })
                .collect(),
        }),
    }
}

pub fn format_certificate(c: &Certificate) -> String {
    let mut s = serde_json::to_string_pretty(&to_doc(c)).expect("documents serialize");
    s.push('\n');
    s
}
