//! Per-family reports and verification of the shipped tables.
//!
//! [`analyze`] runs every center of a family through [`dispatch`] under each
//! of its condition branches. [`verify_tables`] recomputes every golden field
//! of a catalog and lists the disagreements.

use serde::Serialize;
use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::catalog::{BasketEntry, Catalog, CatalogEntry, Family, LinkEntry};
use crate::error::{Error, Result};
use crate::exclusion::{all_centers, dispatch, Center, CenterKind, Certificate, Verdict};
use crate::hypersurface::XPrimeModel;
use crate::links::{build_counterpart, counterpart_inverse, involution_inventory, LinkData};
use crate::numerics::b_cubed;
use crate::rational::{self, int, rat, Rational};
use crate::singularities::{basket, basket_entries, PointType};
use crate::wps::anticanonical_cube;

/// One center under one condition branch.
#[derive(Clone, Debug, Serialize)]
pub struct CenterRow {
    pub center: Center,
    pub condition: String,
    pub certificate: Option<Certificate>,
    pub verdict: Option<Verdict>,
    /// Why the center could not be handled, when it could not.
    pub error: Option<String>,
}

impl CenterRow {
    pub fn resolved(&self) -> bool {
        match (&self.certificate, &self.verdict) {
            (Some(c), Some(v)) => v.excluded || c.untwist_tag().is_some(),
            _ => false,
        }
    }

    fn method_cell(&self) -> String {
        match (&self.certificate, &self.error) {
            (Some(c), _) if c.untwist_tag().is_some() => "untwisted".into(),
            (Some(c), _) => {
                let s = c.summary();
                let mark = if self.resolved() { "" } else { " (fails)" };
                format!("{}: {s}{mark}", c.method())
            }
            (None, Some(e)) => format!("uncovered: {e}"),
            (None, None) => "uncovered".into(),
        }
    }

    fn link_cell(&self) -> String {
        match self.certificate.as_ref().and_then(|c| c.untwist_tag()) {
            Some(t) => t.to_string(),
            None => String::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "cases", rename_all = "kebab-case")]
pub enum BirigidSummary {
    AllCentersResolved,
    UncoveredCases(Vec<String>),
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub family_id: u32,
    /// `X'_d ⊂ P(...)`.
    pub header: String,
    #[serde(with = "rational::as_string")]
    pub a_cube: Rational,
    pub basket: Vec<BasketEntry>,
    pub link_data: LinkData,
    pub centers: Vec<CenterRow>,
    pub birigid_summary: BirigidSummary,
    /// The two catalog records of the family, in catalog schema.
    pub catalog: Vec<CatalogEntry>,
}

pub fn analyze(catalog: &Catalog, id: u32) -> Result<Report> {
    let family = catalog.family(id)?;
    let model = XPrimeModel::new(&family.gprime)?;
    let mut centers = Vec::new();
    for (center, branches) in all_centers(&model)? {
        for flags in branches {
            let row = match dispatch(&model, &center, &flags) {
                Ok((c, v)) => CenterRow {
                    center: center.clone(),
                    condition: flags.to_string(),
                    certificate: Some(c),
                    verdict: Some(v),
                    error: None,
                },
                Err(e) => CenterRow {
                    center: center.clone(),
                    condition: flags.to_string(),
                    certificate: None,
                    verdict: None,
                    error: Some(e.to_string()),
                },
            };
            centers.push(row);
        }
    }
    let uncovered: Vec<String> = centers
        .iter()
        .filter(|r| !r.resolved())
        .map(|r| match r.condition.as_str() {
            "" => r.center.label.clone(),
            c => format!("{} [{c}]", r.center.label),
        })
        .collect();
    let birigid_summary = if uncovered.is_empty() {
        BirigidSummary::AllCentersResolved
    } else {
        BirigidSummary::UncoveredCases(uncovered)
    };
    Ok(Report {
        family_id: id,
        header: family.gprime.to_string(),
        a_cube: model.a_cube.clone(),
        basket: basket_entries(&model)?,
        link_data: model.link.clone(),
        centers,
        birigid_summary,
        catalog: catalog
            .entries()
            .into_iter()
            .filter(|e| e.id == id)
            .collect(),
    })
}

fn escape_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# No. {}: {}, A^3 = {}\n",
            self.family_id, self.header, self.a_cube
        );
        let _ = writeln!(
            out,
            "Link: b = {}, Z = Z_{} ⊂ {}, extraction weights ({})/{}\n",
            self.link_data.b,
            self.link_data.z_degree,
            self.link_data.z_weights,
            self.link_data
                .extraction_weights
                .iter()
                .map(|w| (w * int(self.link_data.b as i64)).to_string())
                .collect::<Vec<_>>()
                .join(","),
            self.link_data.b
        );
        let points: Vec<&CenterRow> = self
            .centers
            .iter()
            .filter(|r| r.center.locus.is_some())
            .collect();
        let others: Vec<&CenterRow> = self
            .centers
            .iter()
            .filter(|r| r.center.locus.is_none())
            .collect();
        out.push_str("| center | method | link |\n|---|---|---|\n");
        let mut i = 0;
        while i < points.len() {
            let label = &points[i].center.label;
            let mut j = i;
            let mut methods = Vec::new();
            let mut links = Vec::new();
            while j < points.len() && points[j].center.label == *label {
                let r = points[j];
                let (m, l) = (r.method_cell(), r.link_cell());
                if r.condition.is_empty() {
                    methods.push(m);
                    links.push(l);
                } else {
                    methods.push(format!("{}: {m}", r.condition));
                    links.push(if l.is_empty() {
                        l
                    } else {
                        format!("{l} ({})", r.condition)
                    });
                }
                j += 1;
            }
            links.retain(|l| !l.is_empty());
            let _ = writeln!(
                out,
                "| {} | {} | {} |",
                escape_cell(label),
                escape_cell(&methods.join("; ")),
                escape_cell(&links.join("; "))
            );
            i = j;
        }
        out.push_str("\n| center | method |\n|---|---|\n");
        for r in others {
            let label = match r.condition.as_str() {
                "" => r.center.label.clone(),
                c => format!("{} [{c}]", r.center.label),
            };
            let _ = writeln!(
                out,
                "| {} | {} |",
                escape_cell(&label),
                escape_cell(&r.method_cell())
            );
        }
        out.push('\n');
        match &self.birigid_summary {
            BirigidSummary::AllCentersResolved => out.push_str("All centers resolved.\n"),
            BirigidSummary::UncoveredCases(cases) => {
                out.push_str("Uncovered cases:\n");
                for c in cases {
                    let _ = writeln!(out, "- {c}");
                }
            }
        }
        out
    }
}

/// One disagreement between a computed value and the expected one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub family: u32,
    pub field: String,
    pub expected: String,
    pub computed: String,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "family {}: {}: expected {}, computed {}",
            self.family, self.field, self.expected, self.computed
        )
    }
}

/// Sign of `(B^3)` at annotated quotient points of the counterparts.
pub const B_CUBE_SIGNS: &[(u32, &str, Ordering)] = &[
    (23, "p2p4", Ordering::Less),
    (29, "p2p4", Ordering::Equal),
    (30, "p2", Ordering::Greater),
    (42, "p2p4", Ordering::Less),
    (49, "p2p4", Ordering::Less),
    (50, "p1p4", Ordering::Less),
    (55, "p2p4", Ordering::Less),
    (55, "p2", Ordering::Greater),
    (69, "p2", Ordering::Greater),
    (74, "p1p4", Ordering::Less),
    (77, "p2p4", Ordering::Less),
    (77, "p2p3", Ordering::Equal),
    (82, "p1p4", Ordering::Less),
    (82, "p2", Ordering::Equal),
];

/// `(family, locus or center label, condition, method, value p/q)`.
pub type WitnessRef = (u32, &'static str, &'static str, &'static str, (i64, i64));

/// Reference witness values. Point centers are named by locus, the others by
/// label.
pub const WITNESSES: &[WitnessRef] = &[
    (50, "p1p4", "not-exists-wci(1,3,4)", "nef-divisor", (-3, 20)),
    (74, "p1p4", "", "nef-divisor", (-1, 4)),
    (82, "p1p4", "", "nef-divisor", (-1, 4)),
    (
        19,
        "curves through the cAx point, deg = 1/2",
        "",
        "curve-gamma",
        (-1, 2),
    ),
    (
        23,
        "curves through the cAx point, deg = 1/4",
        "",
        "curve-gamma",
        (-1, 4),
    ),
];

/// Reference isolation bounds `(family, bound, 4/(A^3))`.
pub const ISOLATION_BOUNDS: &[(u32, u64, (i64, i64))] = &[
    (42, 10, (40, 3)),
    (19, 6, (6, 1)),
    (50, 20, (240, 7)),
    (23, 6, (48, 5)),
];

fn sign_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "negative",
        Ordering::Equal => "zero",
        Ordering::Greater => "positive",
    }
}

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn render_list<T: Serialize>(v: &[T]) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn row_key(r: &CenterRow) -> String {
    r.center
        .locus_name()
        .unwrap_or_else(|| r.center.label.clone())
}

fn verify_family(family: &Family, out: &mut Vec<Mismatch>) -> Result<()> {
    let id = family.id();
    let mut push = |field: &str, expected: String, computed: String| {
        if expected != computed {
            out.push(Mismatch {
                family: id,
                field: field.into(),
                expected,
                computed,
            });
        }
    };

    push(
        "G a_cube",
        family.g_a_cube.to_string(),
        anticanonical_cube(&family.g)?.to_string(),
    );
    push(
        "a_cube",
        family.golden.a_cube.to_string(),
        anticanonical_cube(&family.gprime)?.to_string(),
    );

    let link = build_counterpart(&family.g)?;
    push(
        "counterpart",
        family.gprime.to_string(),
        link.xprime_record().to_string(),
    );
    push(
        "inverse",
        family.g.to_string(),
        counterpart_inverse(&family.gprime)?.to_string(),
    );

    let model = XPrimeModel::new(&family.gprime)?;
    push(
        "basket",
        render_list(&sorted(&family.golden.basket)),
        render_list(&sorted(&basket_entries(&model)?)),
    );
    let tags: Vec<LinkEntry> = involution_inventory(family)?
        .into_iter()
        .map(Into::into)
        .collect();
    push(
        "links",
        render_list(&sorted(&family.golden.link_column)),
        render_list(&sorted(&tags)),
    );

    for p in basket(&model)? {
        let PointType::Quotient(q) = p.ty else {
            continue;
        };
        let locus = p.locus.to_string();
        if let Some((_, _, sign)) = B_CUBE_SIGNS
            .iter()
            .find(|(i, l, _)| *i == id && *l == locus)
        {
            let b3 = b_cubed(&model.a_cube, &q);
            push(
                &format!("B^3 sign at {locus}"),
                sign_name(*sign).into(),
                sign_name(b3.cmp(&int(0))).into(),
            );
        }
    }

    let report_rows = {
        let mut rows = Vec::new();
        for (center, branches) in all_centers(&model)? {
            for flags in branches {
                let res = dispatch(&model, &center, &flags);
                rows.push((center.clone(), flags.to_string(), res));
            }
        }
        rows
    };
    for (center, flags, res) in &report_rows {
        let name = center.locus_name().unwrap_or_else(|| center.label.clone());
        let name = if flags.is_empty() {
            name
        } else {
            format!("{name} [{flags}]")
        };
        match res {
            Ok((c, v)) if v.excluded || c.untwist_tag().is_some() => {}
            Ok((c, _)) => push(
                &format!("center {name}"),
                "resolved".into(),
                format!("{} fails", c.method()),
            ),
            Err(e) => push(&format!("center {name}"), "resolved".into(), e.to_string()),
        }
    }
    for (fid, key, cond, method, (p, q)) in WITNESSES {
        if *fid != id {
            continue;
        }
        let found = report_rows.iter().find(|(c, f, _)| {
            (c.locus_name().as_deref() == Some(*key) || c.label == *key) && f == cond
        });
        let computed = match found {
            Some((_, _, Ok((c, v)))) if c.method() == *method => v
                .witness_value
                .as_ref()
                .map_or("none".into(), |w| w.to_string()),
            Some((_, _, Ok((c, _)))) => format!("method {}", c.method()),
            Some((_, _, Err(e))) => e.to_string(),
            None => "no such center".into(),
        };
        push(
            &format!("{method} witness at {key}"),
            rat(*p, *q).to_string(),
            computed,
        );
    }
    for (fid, bound, (p, q)) in ISOLATION_BOUNDS {
        if *fid != id {
            continue;
        }
        let found = report_rows.iter().find_map(|(c, _, r)| match (&c.kind, r) {
            (
                CenterKind::SmoothPoint { .. },
                Ok((Certificate::Isolation { bound, limit, .. }, _)),
            ) => Some(format!("({bound}, {limit})")),
            _ => None,
        });
        push(
            "isolation bound",
            format!("({bound}, {})", rat(*p, *q)),
            found.unwrap_or_else(|| "no isolation certificate".into()),
        );
    }
    Ok(())
}

/// Recomputes every golden field of `catalog`. An empty list means full
/// agreement.
pub fn verify_tables(catalog: &Catalog) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for family in catalog.families() {
        if let Err(e) = verify_family(family, &mut out) {
            out.push(Mismatch {
                family: family.id(),
                field: "computation".into(),
                expected: "success".into(),
                computed: e.to_string(),
            });
        }
    }
    out
}

/// Report rows sharing a locus or label, for lookups in tests and examples.
pub fn rows_at<'a>(report: &'a Report, key: &str) -> Vec<&'a CenterRow> {
    report
        .centers
        .iter()
        .filter(|r| row_key(r) == key)
        .collect()
}

/// The `(B^3)` value at a quotient point, or an error for other loci.
pub fn b_cube_at(model: &XPrimeModel, locus: &str) -> Result<Rational> {
    for p in basket(model)? {
        if p.locus.to_string() == locus {
            if let PointType::Quotient(q) = p.ty {
                return Ok(b_cubed(&model.a_cube, &q));
            }
        }
    }
    Err(Error::Dispatch {
        id: model.id(),
        reason: format!("no quotient point at {locus}"),
    })
}
