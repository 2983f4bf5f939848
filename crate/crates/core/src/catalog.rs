//! The catalog of the fourteen codimension-two families `G_i` and their
//! hypersurface counterparts `G'_i`, with golden expectations.
//!
//! The on-disk format is a JSON array with one object per record. Loading
//! checks structure only (ids, kinds, lengths, subfamily membership). Golden
//! values are compared against computed ones by [`crate::report::verify_tables`].

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::wps::WeightSystem;

/// The fourteen family numbers, ascending.
pub const FAMILY_IDS: [u32; 14] = [17, 19, 23, 29, 30, 41, 42, 49, 50, 55, 69, 74, 77, 82];

/// Environment variable naming a catalog file that replaces the shipped one.
pub const CATALOG_ENV: &str = "FANO_WCI_CATALOG";

const SHIPPED: &str = include_str!("../data/catalog.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    /// Codimension two, `X_{d1,d2} ⊂ P(a_0,...,a_5)`.
    #[serde(rename = "G")]
    Codim2,
    /// Hypersurface counterpart `X'_d ⊂ P(a_0,...,a_3,b)`.
    #[serde(rename = "Gprime")]
    Hypersurface,
}

impl Kind {
    fn shape(self) -> (usize, usize) {
        match self {
            Kind::Codim2 => (6, 2),
            Kind::Hypersurface => (5, 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subfamily {
    #[serde(rename = "I'2")]
    PrimeTwo,
    #[serde(rename = "I''2")]
    DoublePrimeTwo,
    #[serde(rename = "I'4")]
    PrimeFour,
    #[serde(rename = "I''4")]
    DoublePrimeFour,
}

impl Subfamily {
    pub const ALL: [Subfamily; 4] = [
        Subfamily::PrimeTwo,
        Subfamily::DoublePrimeTwo,
        Subfamily::PrimeFour,
        Subfamily::DoublePrimeFour,
    ];

    pub fn members(self) -> &'static [u32] {
        match self {
            Subfamily::PrimeTwo => &[19, 30, 42],
            Subfamily::DoublePrimeTwo => &[17, 29, 41, 55, 69, 77],
            Subfamily::PrimeFour => &[23, 50],
            Subfamily::DoublePrimeFour => &[49, 74, 82],
        }
    }

    /// Index of the distinguished cAx point, which equals `b = a_4 - a_0`.
    pub fn modulus(self) -> u64 {
        match self {
            Subfamily::PrimeTwo | Subfamily::DoublePrimeTwo => 2,
            Subfamily::PrimeFour | Subfamily::DoublePrimeFour => 4,
        }
    }

    /// `true` for the single-prime classes, whose equations have the
    /// `w^2 x_0 (x_0 + f) + w g + h` shape.
    pub fn is_single_prime(self) -> bool {
        matches!(self, Subfamily::PrimeTwo | Subfamily::PrimeFour)
    }
}

impl fmt::Display for Subfamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subfamily::PrimeTwo => "I'2",
            Subfamily::DoublePrimeTwo => "I''2",
            Subfamily::PrimeFour => "I'4",
            Subfamily::DoublePrimeFour => "I''4",
        })
    }
}

pub fn subfamily_of(id: u32) -> Result<Subfamily> {
    Subfamily::ALL
        .into_iter()
        .find(|s| s.members().contains(&id))
        .ok_or(Error::UnknownFamily(id))
}

/// Untwisting tag of a center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    #[serde(rename = "none")]
    None,
    QI,
    EI,
    II,
    #[serde(rename = "link")]
    Link,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::None => "none",
            Tag::QI => "QI",
            Tag::EI => "EI",
            Tag::II => "II",
            Tag::Link => "link",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasketEntry {
    #[serde(rename = "type")]
    pub kind: String,
    pub count: u32,
    pub locus: String,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinkEntry {
    pub point: String,
    pub tag: Tag,
    pub condition: String,
}

/// A weighted complete intersection family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub id: u32,
    pub kind: Kind,
    pub weights: WeightSystem,
    pub degrees: Vec<u64>,
    pub subfamily: Subfamily,
}

impl FamilyRecord {
    /// Degree of the single equation of a hypersurface record.
    pub fn degree(&self) -> u64 {
        self.degrees[0]
    }
}

impl fmt::Display for FamilyRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degs: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        let tick = if self.kind == Kind::Hypersurface {
            "'"
        } else {
            ""
        };
        write!(f, "X{tick}_{} ⊂ {}", degs.join(","), self.weights)
    }
}

/// Golden expectations attached to a hypersurface record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub id: u32,
    #[serde(with = "rational::as_string")]
    pub a_cube: Rational,
    pub basket: Vec<BasketEntry>,
    pub link_column: Vec<LinkEntry>,
}

/// One family: the codimension-two record, its counterpart and the golden row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub g: FamilyRecord,
    /// Golden `(A^3)` of the codimension-two model.
    pub g_a_cube: Rational,
    pub gprime: FamilyRecord,
    pub golden: GoldenRow,
}

impl Family {
    pub fn id(&self) -> u32 {
        self.g.id
    }
}

/// One element of the JSON array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub id: u32,
    pub kind: Kind,
    pub weights: Vec<u64>,
    pub degrees: Vec<u64>,
    pub subfamily: Subfamily,
    #[serde(with = "rational::as_string")]
    pub a_cube: Rational,
    #[serde(default)]
    pub basket: Vec<BasketEntry>,
    #[serde(default)]
    pub links: Vec<LinkEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    families: Vec<Family>,
}

impl Catalog {
    /// The catalog compiled into the library.
    pub fn shipped() -> Catalog {
        parse_catalog(SHIPPED).expect("shipped catalog is valid")
    }

    /// The file named by `FANO_WCI_CATALOG` if set, else the shipped catalog.
    pub fn from_env() -> Result<Catalog> {
        match std::env::var_os(CATALOG_ENV) {
            Some(path) => load_catalog(Path::new(&path)),
            None => Ok(Catalog::shipped()),
        }
    }

    /// Families in ascending id order.
    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn family(&self, id: u32) -> Result<&Family> {
        self.families
            .iter()
            .find(|f| f.id() == id)
            .ok_or(Error::UnknownFamily(id))
    }

    pub fn entries(&self) -> Vec<CatalogEntry> {
        let mut out = Vec::with_capacity(2 * self.families.len());
        for f in &self.families {
            out.push(CatalogEntry {
                id: f.g.id,
                kind: Kind::Codim2,
                weights: f.g.weights.weights().to_vec(),
                degrees: f.g.degrees.clone(),
                subfamily: f.g.subfamily,
                a_cube: f.g_a_cube.clone(),
                basket: Vec::new(),
                links: Vec::new(),
            });
            out.push(CatalogEntry {
                id: f.gprime.id,
                kind: Kind::Hypersurface,
                weights: f.gprime.weights.weights().to_vec(),
                degrees: f.gprime.degrees.clone(),
                subfamily: f.gprime.subfamily,
                a_cube: f.golden.a_cube.clone(),
                basket: f.golden.basket.clone(),
                links: f.golden.link_column.clone(),
            });
        }
        out
    }

    /// Serializes back to the on-disk format, one record per line.
    pub fn to_json(&self) -> String {
        let lines: Vec<String> = self
            .entries()
            .iter()
            .map(|e| format!("  {}", serde_json::to_string(e).expect("entries serialize")))
            .collect();
        format!("[\n{}\n]\n", lines.join(",\n"))
    }
}

pub fn load_catalog(path: &Path) -> Result<Catalog> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_catalog(&text)
}

pub fn parse_catalog(text: &str) -> Result<Catalog> {
    let entries: Vec<CatalogEntry> = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    assemble(entries)
}

/// Parses and validates individual records without assembling a catalog.
pub fn parse_entries(text: &str) -> Result<Vec<CatalogEntry>> {
    let entries: Vec<CatalogEntry> = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    for e in &entries {
        check_entry(e)?;
    }
    Ok(entries)
}

fn invalid(id: u32, field: &'static str, reason: impl Into<String>) -> Error {
    Error::Validation {
        id,
        field,
        reason: reason.into(),
    }
}

fn check_entry(e: &CatalogEntry) -> Result<FamilyRecord> {
    let id = e.id;
    let expected =
        subfamily_of(id).map_err(|_| invalid(id, "id", "not one of the fourteen families"))?;
    if e.subfamily != expected {
        return Err(invalid(
            id,
            "subfamily",
            format!(
                "listed as {}, but family {id} belongs to {expected}",
                e.subfamily
            ),
        ));
    }
    let (nw, nd) = e.kind.shape();
    if e.weights.len() != nw {
        return Err(invalid(
            id,
            "weights",
            format!("expected {nw} weights, got {}", e.weights.len()),
        ));
    }
    if e.degrees.len() != nd {
        return Err(invalid(
            id,
            "degrees",
            format!("expected {nd} degrees, got {}", e.degrees.len()),
        ));
    }
    if e.degrees.contains(&0) {
        return Err(invalid(id, "degrees", "degrees must be positive"));
    }
    let weights = WeightSystem::new(e.weights.clone())
        .map_err(|err| invalid(id, "weights", err.to_string()))?;
    if e.kind == Kind::Codim2 && !(e.basket.is_empty() && e.links.is_empty()) {
        return Err(invalid(
            id,
            "basket",
            "codimension-two records carry no basket or links",
        ));
    }
    Ok(FamilyRecord {
        id,
        kind: e.kind,
        weights,
        degrees: e.degrees.clone(),
        subfamily: e.subfamily,
    })
}

fn assemble(entries: Vec<CatalogEntry>) -> Result<Catalog> {
    let mut slots: BTreeMap<u32, (Option<CatalogEntry>, Option<CatalogEntry>)> = BTreeMap::new();
    for e in entries {
        check_entry(&e)?;
        let slot = slots.entry(e.id).or_default();
        let place = match e.kind {
            Kind::Codim2 => &mut slot.0,
            Kind::Hypersurface => &mut slot.1,
        };
        if place.is_some() {
            return Err(invalid(
                e.id,
                "kind",
                format!("duplicate {:?} record", e.kind),
            ));
        }
        *place = Some(e);
    }
    let mut families = Vec::with_capacity(FAMILY_IDS.len());
    for id in FAMILY_IDS {
        let (g, gp) = match slots.remove(&id) {
            Some((Some(g), Some(gp))) => (g, gp),
            Some((None, _)) | None => return Err(invalid(id, "kind", "missing G record")),
            Some((_, None)) => return Err(invalid(id, "kind", "missing Gprime record")),
        };
        families.push(Family {
            g: check_entry(&g)?,
            g_a_cube: g.a_cube,
            gprime: check_entry(&gp)?,
            golden: GoldenRow {
                id,
                a_cube: gp.a_cube,
                basket: gp.basket,
                link_column: gp.links,
            },
        });
    }
    Ok(Catalog { families })
}
