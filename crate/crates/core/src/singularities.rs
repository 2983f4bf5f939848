//! Singular points of a general member of `G'_i`.
//!
//! Everything is read off the generic support. A vertex `p_i` lies on the
//! member when no pure power of `x_i` appears, and its type is read from the
//! tangent monomial `x_i^k x_j`. Points on an edge `p_i p_j` with
//! `gcd(a_i, a_j) > 1` are the roots of the restricted binary form away from
//! the two vertices. The vertex of `w` is the distinguished cAx point.

use num::integer::{gcd, Integer};
use serde::{Serialize, Serializer};
use std::fmt;

use crate::catalog::BasketEntry;
use crate::error::{Error, Result};
use crate::hypersurface::{XPrimeModel, W};
use crate::links::LinkData;
use crate::rational::{self, rat, Rational};

/// A terminal cyclic quotient type `1/r(1, a, r - a)` with `a <= r - a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientType {
    pub r: u64,
    pub a: u64,
}

impl QuotientType {
    pub fn new(r: u64, a: u64) -> Result<QuotientType> {
        normalize_quotient(r, [1, a, r.saturating_sub(a)])
    }

    pub fn weights(&self) -> [u64; 3] {
        [1, self.a, self.r - self.a]
    }
}

impl fmt::Display for QuotientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{},{})", self.r, self.a, self.r - self.a)
    }
}

impl Serialize for QuotientType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn inverse_mod(x: u64, r: u64) -> Option<u64> {
    let e = (x as i64).extended_gcd(&(r as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(r as i64) as u64)
}

/// Brings `1/r(raw)` to the form `1/r(1, a, r - a)`.
///
/// Every entry that is a unit mod `r` is tried as the one scaled to `1`; the
/// smallest resulting `a` is returned.
pub fn normalize_quotient(r: u64, raw: [u64; 3]) -> Result<QuotientType> {
    if r < 2 {
        return Err(Error::Classification(format!(
            "index {r} is not a quotient singularity"
        )));
    }
    let red = raw.map(|x| x % r);
    let mut best: Option<u64> = None;
    for i in 0..3 {
        let Some(inv) = inverse_mod(red[i], r) else {
            continue;
        };
        let mut pair: Vec<u64> = (0..3)
            .filter(|&j| j != i)
            .map(|j| red[j] * inv % r)
            .collect();
        pair.sort_unstable();
        if pair[0] > 0 && pair[0] + pair[1] == r && gcd(pair[0], r) == 1 {
            best = Some(best.map_or(pair[0], |b| b.min(pair[0])));
        }
    }
    best.map(|a| QuotientType { r, a }).ok_or_else(|| {
        Error::Classification(format!(
            "1/{r}({},{},{}) is not terminal",
            raw[0], raw[1], raw[2]
        ))
    })
}

/// The normal form of `1/r(raw)` together with a unit `u` such that
/// `u * raw mod r` is a permutation of `(1, a, r - a)`. The smallest such `u`
/// is returned.
pub fn quotient_with_unit(r: u64, raw: [u64; 3]) -> Result<(QuotientType, u64)> {
    let q = normalize_quotient(r, raw)?;
    let mut target = q.weights();
    target.sort_unstable();
    for u in 1..r {
        if gcd(u, r) != 1 {
            continue;
        }
        let mut scaled = raw.map(|x| u * x % r);
        scaled.sort_unstable();
        if scaled == target {
            return Ok((q, u));
        }
    }
    Err(Error::Classification(format!(
        "no unit brings 1/{r}({},{},{}) to {q}",
        raw[0], raw[1], raw[2]
    )))
}

/// Where a singular point sits: a coordinate vertex or the open edge between two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Locus {
    Vertex(usize),
    Edge(usize, usize),
}

impl Locus {
    pub fn coords(&self) -> Vec<usize> {
        match *self {
            Locus::Vertex(i) => vec![i],
            Locus::Edge(i, j) => vec![i, j],
        }
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::Vertex(i) => write!(f, "p{i}"),
            Locus::Edge(i, j) => write!(f, "p{i}p{j}"),
        }
    }
}

impl Serialize for Locus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointType {
    Quotient(QuotientType),
    /// cAx/2 or cAx/4.
    Cax(u64),
}

impl fmt::Display for PointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointType::Quotient(q) => q.fmt(f),
            PointType::Cax(m) => write!(f, "cAx/{m}"),
        }
    }
}

impl Serialize for PointType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `count` singular points of type `ty` on `locus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasketPoint {
    #[serde(rename = "type")]
    pub ty: PointType,
    pub locus: Locus,
    pub count: u32,
}

impl BasketPoint {
    pub fn quotient(&self) -> Option<QuotientType> {
        match self.ty {
            PointType::Quotient(q) => Some(q),
            PointType::Cax(_) => None,
        }
    }

    pub fn entry(&self) -> BasketEntry {
        BasketEntry {
            kind: self.ty.to_string(),
            count: self.count,
            locus: self.locus.to_string(),
        }
    }
}

impl fmt::Display for BasketPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.count == 1 {
            write!(f, "{} = {}", self.locus, self.ty)
        } else {
            write!(f, "{} = {} × {}", self.locus, self.count, self.ty)
        }
    }
}

fn transverse(model: &XPrimeModel, r: u64, skip: &[usize]) -> Result<QuotientType> {
    let w: Vec<u64> = (0..5)
        .filter(|i| !skip.contains(i))
        .map(|i| model.weight(i))
        .collect();
    normalize_quotient(r, [w[0], w[1], w[2]])
}

/// Vertices of weight at least 2 lying on the member, with their types. The
/// vertex of `w` is reported as the cAx point.
pub fn vertex_singularities(model: &XPrimeModel) -> Result<Vec<BasketPoint>> {
    let mut out = Vec::new();
    for i in 0..5 {
        let r = model.weight(i);
        if r < 2 || model.has_pure_power(i) {
            continue;
        }
        if i == W {
            out.push(BasketPoint {
                ty: PointType::Cax(model.link.subfamily.modulus()),
                locus: Locus::Vertex(W),
                count: 1,
            });
            continue;
        }
        let (_, j) = model.tangent_monomial(i).ok_or(Error::NotQuasismooth {
            id: model.id(),
            vertex: i,
        })?;
        out.push(BasketPoint {
            ty: PointType::Quotient(transverse(model, r, &[i, j])?),
            locus: Locus::Vertex(i),
            count: 1,
        });
    }
    Ok(out)
}

/// Number of roots of the support restricted to the edge, away from both
/// vertices, with the transverse type. `None` when there are no such roots.
pub fn edge_singularities(
    model: &XPrimeModel,
    edge: (usize, usize),
) -> Result<Option<BasketPoint>> {
    let (i, j) = (edge.0.min(edge.1), edge.0.max(edge.1));
    let g = gcd(model.weight(i), model.weight(j));
    if g < 2 {
        return Err(Error::Classification(format!(
            "edge p{i}p{j} has coprime weights and carries no quotient points"
        )));
    }
    let form = model.restricted(&[i, j]);
    if form.is_empty() {
        return Err(Error::NonIsolated {
            id: model.id(),
            edge: (i, j),
        });
    }
    let betas: Vec<u32> = form.iter().map(|m| m.exp(j)).collect();
    let lo = *betas.iter().min().expect("nonempty");
    let hi = *betas.iter().max().expect("nonempty");
    let step = model.weight(i) / g;
    let count = ((hi - lo) as u64 / step) as u32;
    if count == 0 {
        return Ok(None);
    }
    Ok(Some(BasketPoint {
        ty: PointType::Quotient(transverse(model, g, &[i, j])?),
        locus: Locus::Edge(i, j),
        count,
    }))
}

/// Vertex and edge points, sorted by locus name.
pub fn basket(model: &XPrimeModel) -> Result<Vec<BasketPoint>> {
    let mut out = vertex_singularities(model)?;
    for i in 0..5 {
        for j in i + 1..5 {
            if gcd(model.weight(i), model.weight(j)) >= 2 {
                out.extend(edge_singularities(model, (i, j))?);
            }
        }
    }
    out.sort_by_key(|p| p.locus.to_string());
    Ok(out)
}

pub fn basket_entries(model: &XPrimeModel) -> Result<Vec<BasketEntry>> {
    Ok(basket(model)?.iter().map(BasketPoint::entry).collect())
}

/// True when some `x_i^2 x_j` with `j != i` appears, for a coordinate `x_i`
/// through the locus. This is the shape `x_i^2 x_j + x_i f + g` needed for a
/// quadratic involution.
pub fn qi_eligible(model: &XPrimeModel, locus: Locus) -> bool {
    locus.coords().into_iter().any(|i| {
        model.support.iter().any(|m| {
            let vars = m.variables();
            m.exp(i) == 2 && vars.len() == 2 && vars.iter().any(|&j| j != i && m.exp(j) == 1)
        })
    })
}

/// The distinguished cAx point at the vertex of `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaxPoint {
    pub modulus: u64,
    pub square_type: bool,
    pub vertex: usize,
    /// Weight parameter of the extraction, when the extraction weights have
    /// the expected shape.
    pub k: Option<u64>,
}

/// Classifies the cAx point. `f_is_zero` concerns the `w^2 x_0 f` term of the
/// single-prime shape, `g1_is_zero` the vanishing of `(∂g/∂x_1)(0,0,x_2,x_3)`
/// in the double-prime shape.
pub fn cax_classify(model: &XPrimeModel, f_is_zero: bool, g1_is_zero: bool) -> CaxPoint {
    let modulus = model.link.subfamily.modulus();
    let square_type = if model.link.subfamily.is_single_prime() {
        !f_is_zero
    } else {
        !g1_is_zero
    };
    CaxPoint {
        modulus,
        square_type,
        vertex: W,
        k: extraction_parameter(&model.link, modulus, square_type),
    }
}

/// Reads `k` off the extraction weights `(a_4, a_1, a_2, a_3)/b`:
/// `{k, k+1}` (or `{k+1, k+2}` for square type) over `(1, 1)` when `b = 2`,
/// `{2k+1, 2k+3}` (or `{2k+3, 2k+5}`) over `(1, 2)` when `b = 4`.
fn extraction_parameter(link: &LinkData, modulus: u64, square: bool) -> Option<u64> {
    let a = link.std_weights;
    let (lo, hi) = (a[4].min(a[1]), a[4].max(a[1]));
    let mut tail = [a[2], a[3]];
    tail.sort_unstable();
    match modulus {
        2 if hi == lo + 1 && tail == [1, 1] => {
            if square {
                lo.checked_sub(1)
            } else {
                Some(lo)
            }
        }
        4 if hi == lo + 2 && lo % 2 == 1 && tail == [1, 2] => {
            if square {
                lo.checked_sub(3).map(|x| x / 2)
            } else {
                Some((lo - 1) / 2)
            }
        }
        _ => None,
    }
}

/// Divisorial extractions centred at the cAx point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtractionDescriptor {
    pub count: u32,
    #[serde(with = "rational::vec_as_string")]
    pub ambient_weights: Vec<Rational>,
    #[serde(with = "rational::as_string")]
    pub discrepancy: Rational,
}

pub fn extractions_at_cax(p: &CaxPoint, link: &LinkData) -> ExtractionDescriptor {
    ExtractionDescriptor {
        count: if p.square_type { 2 } else { 1 },
        ambient_weights: link.extraction_weights.clone(),
        discrepancy: rat(1, p.modulus as i64),
    }
}
