//! Standard forms of the codimension-two models and the numerical data of the
//! link to the hypersurface counterpart.
//!
//! In standard form the six coordinates carry roles `x_0, x_1, x_2, x_3, u, v`
//! with weights `a_0, ..., a_5`. Setting `b = a_4 - a_0`, the counterpart is a
//! hypersurface `X'_d ⊂ P(a_0, a_1, a_2, a_3, b)` and the midpoint of the link
//! is `Z ⊂ P(a_0, a_1, a_2, a_3, a_4)` of degree `d_1 + d_2 - a_5`.

use serde::Serialize;

use crate::catalog::{Family, FamilyRecord, Kind, LinkEntry, Subfamily, Tag};
use crate::error::{Error, Result};
use crate::rational::{self, rat, Rational};
use crate::wps::WeightSystem;

pub const ROLE_NAMES: [&str; 6] = ["x0", "x1", "x2", "x3", "u", "v"];

/// Role assignment of a codimension-two record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardForm {
    pub id: u32,
    pub subfamily: Subfamily,
    /// `role_map[r]` is the index in the record's weight list playing role `r`.
    pub role_map: [usize; 6],
    /// `(a_0, ..., a_5)`.
    pub reordered_weights: WeightSystem,
    pub d1: u64,
    pub d2: u64,
}

impl StandardForm {
    pub fn a(&self, role: usize) -> u64 {
        self.reordered_weights.get(role)
    }

    pub fn b(&self) -> u64 {
        self.a(4) - self.a(0)
    }
}

fn satisfies(subfamily: Subfamily, a: &[u64; 6], d1: u64, d2: u64) -> bool {
    if a[2] > a[3] {
        return false;
    }
    if subfamily.is_single_prime() {
        a[5] == a[4] && d1 == a[0] + a[5] && d1 == 2 * a[1] && d2 == a[4] + a[5]
    } else {
        (0..5).all(|i| a[5] > a[i])
            && d1 == a[0] + a[5]
            && d1 == 2 * a[4]
            && d2 == a[4] + a[5]
            && d2 == 2 * a[1]
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Finds the role assignment satisfying the subfamily's constraints.
///
/// Among assignments with the same weights the lexicographically smallest role
/// map wins, so equal weights keep their input order.
pub fn to_standard_form(record: &FamilyRecord) -> Result<StandardForm> {
    if record.kind != Kind::Codim2 || record.weights.len() != 6 || record.degrees.len() != 2 {
        return Err(Error::StandardFormUnsolvable(record.id));
    }
    let w = record.weights.weights();
    let (d1, d2) = (record.degrees[0], record.degrees[1]);
    let mut best: Option<([usize; 6], [u64; 6])> = None;
    for p in permutations(6) {
        let map: [usize; 6] = p.try_into().expect("six roles");
        let a = map.map(|i| w[i]);
        if !satisfies(record.subfamily, &a, d1, d2) {
            continue;
        }
        match &best {
            // Two different weight assignments: the constraints do not pin
            // the form down.
            Some((_, weights)) if *weights != a => {
                return Err(Error::StandardFormUnsolvable(record.id));
            }
            Some((m, _)) if *m <= map => {}
            _ => best = Some((map, a)),
        }
    }
    let (role_map, a) = best.ok_or(Error::StandardFormUnsolvable(record.id))?;
    Ok(StandardForm {
        id: record.id,
        subfamily: record.subfamily,
        role_map,
        reordered_weights: WeightSystem::new(a.to_vec())?,
        d1,
        d2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EquationShape {
    /// `w^2 x_0 (x_0 + f) + w g + h`.
    #[serde(rename = "I'-shape")]
    SinglePrime,
    /// `w^3 x_0^2 + w^2 x_0 f + w g + h`.
    #[serde(rename = "I''-shape")]
    DoublePrime,
}

/// Numerical data of the link between `X` and `X'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkData {
    pub id: u32,
    pub subfamily: Subfamily,
    /// `(a_0, ..., a_5)` of the standard form.
    pub std_weights: [u64; 6],
    pub d1: u64,
    pub d2: u64,
    pub b: u64,
    /// `(a_0, a_1, a_2, a_3, b)` in role order.
    pub xprime_weights: WeightSystem,
    pub xprime_degree: u64,
    /// `(a_0, a_1, a_2, a_3, a_4)` in role order.
    pub z_weights: WeightSystem,
    pub z_degree: u64,
    pub equation_shape: EquationShape,
    /// Weights `(a_4, a_1, a_2, a_3) / b` of the extraction at the cAx point.
    #[serde(with = "rational::vec_as_string")]
    pub extraction_weights: Vec<Rational>,
}

impl LinkData {
    /// The counterpart as a catalog record. The first four weights are sorted
    /// (stably) and `b` comes last.
    pub fn xprime_record(&self) -> FamilyRecord {
        let mut head = self.xprime_weights.weights()[..4].to_vec();
        head.sort();
        head.push(self.b);
        FamilyRecord {
            id: self.id,
            kind: Kind::Hypersurface,
            weights: WeightSystem::new(head).expect("positive weights"),
            degrees: vec![self.xprime_degree],
            subfamily: self.subfamily,
        }
    }

    /// `1/2` or `1/4`, the discrepancy of the extraction at the cAx point.
    pub fn discrepancy(&self) -> Rational {
        rat(1, self.b as i64)
    }
}

pub fn build_counterpart(record: &FamilyRecord) -> Result<LinkData> {
    let sf = to_standard_form(record)?;
    let a: [u64; 6] = std::array::from_fn(|i| sf.a(i));
    let b = sf.b();
    let bad = |why: &str| Error::Validation {
        id: record.id,
        field: "weights",
        reason: why.to_string(),
    };
    if b == 0 || b != sf.subfamily.modulus() {
        return Err(bad("b = a_4 - a_0 does not match the subfamily modulus"));
    }
    let single = sf.subfamily.is_single_prime();
    let xprime_degree = if single {
        2 * b + 2 * a[0]
    } else {
        3 * b + 2 * a[0]
    };
    let z_degree = sf.d1 + sf.d2 - a[5];
    let z_check = if single { a[4] + sf.d1 } else { 3 * a[4] };
    if z_degree != z_check {
        return Err(bad("midpoint degree is inconsistent"));
    }
    let bi = b as i64;
    Ok(LinkData {
        id: record.id,
        subfamily: sf.subfamily,
        std_weights: a,
        d1: sf.d1,
        d2: sf.d2,
        b,
        xprime_weights: WeightSystem::new(vec![a[0], a[1], a[2], a[3], b])?,
        xprime_degree,
        z_weights: WeightSystem::new(a[..5].to_vec())?,
        z_degree,
        equation_shape: if single {
            EquationShape::SinglePrime
        } else {
            EquationShape::DoublePrime
        },
        extraction_weights: [a[4], a[1], a[2], a[3]]
            .iter()
            .map(|&x| rat(x as i64, bi))
            .collect(),
    })
}

/// Standard weights `(a_0, ..., a_5)` recovered from a hypersurface record.
pub fn std_weights_of(gprime: &FamilyRecord) -> Result<[u64; 6]> {
    let fail = || Error::StandardFormUnsolvable(gprime.id);
    if gprime.kind != Kind::Hypersurface || gprime.weights.len() != 5 || gprime.degrees.len() != 1 {
        return Err(fail());
    }
    let w = gprime.weights.weights();
    let (b, d) = (w[4], gprime.degree());
    let single = gprime.subfamily.is_single_prime();
    let twice_a0 = d
        .checked_sub(if single { 2 * b } else { 3 * b })
        .ok_or_else(fail)?;
    if twice_a0 % 2 != 0 {
        return Err(fail());
    }
    let a0 = twice_a0 / 2;
    let twice_a1 = if single { 2 * a0 + b } else { d };
    if twice_a1 % 2 != 0 {
        return Err(fail());
    }
    let a1 = twice_a1 / 2;
    let mut rest = w[..4].to_vec();
    for x in [a0, a1] {
        let pos = rest.iter().position(|&y| y == x).ok_or_else(fail)?;
        rest.remove(pos);
    }
    rest.sort();
    let a4 = a0 + b;
    let a5 = d.checked_sub(a4).ok_or_else(fail)?;
    Ok([a0, a1, rest[0], rest[1], a4, a5])
}

/// The codimension-two record whose counterpart is `gprime`:
/// `a_4 = a_0 + b`, `a_5 = d - a_4`.
pub fn counterpart_inverse(gprime: &FamilyRecord) -> Result<FamilyRecord> {
    let a = std_weights_of(gprime)?;
    let d1 = a[0] + a[5];
    let d2 = a[4] + a[5];
    let mut weights = a.to_vec();
    weights.sort();
    let mut degrees = vec![d1, d2];
    degrees.sort();
    Ok(FamilyRecord {
        id: gprime.id,
        kind: Kind::Codim2,
        weights: WeightSystem::new(weights)?,
        degrees,
        subfamily: gprime.subfamily,
    })
}

/// Link data computed from the hypersurface side.
pub fn link_data_of(gprime: &FamilyRecord) -> Result<LinkData> {
    build_counterpart(&counterpart_inverse(gprime)?)
}

/// An untwisting tag at one point under one condition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct InvolutionTag {
    pub point: String,
    pub tag: Tag,
    pub condition: String,
}

impl From<InvolutionTag> for LinkEntry {
    fn from(t: InvolutionTag) -> LinkEntry {
        LinkEntry {
            point: t.point,
            tag: t.tag,
            condition: t.condition,
        }
    }
}

/// One tag per basket point and condition branch, plus the link at the cAx
/// point. Tags come from the exclusion engine, which checks quadratic
/// involution eligibility structurally.
pub fn involution_inventory(family: &Family) -> Result<Vec<InvolutionTag>> {
    let model = crate::hypersurface::XPrimeModel::new(&family.gprime)?;
    let basket = crate::singularities::basket(&model)?;
    let computed: Vec<String> = basket.iter().map(|p| p.locus.to_string()).collect();
    let mut out = Vec::new();
    for (center, branches) in crate::exclusion::centers_at_points(&model, &basket)? {
        let locus = center.locus_name().expect("point centers carry a locus");
        if !computed.contains(&locus) {
            return Err(Error::Validation {
                id: family.id(),
                field: "basket",
                reason: format!("no basket point at {locus}"),
            });
        }
        for flags in branches {
            let (cert, _) = crate::exclusion::dispatch(&model, &center, &flags)?;
            out.push(InvolutionTag {
                point: locus.clone(),
                tag: cert.untwist_tag().unwrap_or(Tag::None),
                condition: flags.to_string(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    #[test]
    fn standard_forms() {
        let c = Catalog::shipped();
        let sf = |id| to_standard_form(&c.family(id).unwrap().g).unwrap();
        assert_eq!(sf(17).reordered_weights.weights(), &[1, 4, 1, 1, 3, 5]);
        assert_eq!(sf(19).reordered_weights.weights(), &[2, 3, 1, 1, 4, 4]);
        assert_eq!(sf(82).reordered_weights.weights(), &[5, 11, 1, 2, 9, 13]);
    }

    #[test]
    fn counterparts() {
        let c = Catalog::shipped();
        let l17 = build_counterpart(&c.family(17).unwrap().g).unwrap();
        assert_eq!(l17.b, 2);
        assert_eq!(l17.xprime_record().to_string(), "X'_8 ⊂ P(1,1,1,4,2)");
        let l50 = build_counterpart(&c.family(50).unwrap().g).unwrap();
        assert_eq!(
            (l50.b, l50.xprime_record().to_string()),
            (4, "X'_14 ⊂ P(1,2,3,5,4)".into())
        );
        let l19 = build_counterpart(&c.family(19).unwrap().g).unwrap();
        assert_eq!(l19.z_degree, 10);
        assert_eq!(l19.z_weights.to_string(), "P(2,3,1,1,4)");
    }

    #[test]
    fn inverse() {
        let c = Catalog::shipped();
        let g19 = counterpart_inverse(&c.family(19).unwrap().gprime).unwrap();
        assert_eq!(g19.to_string(), "X_6,8 ⊂ P(1,1,2,3,4,4)");
        let g82 = counterpart_inverse(&c.family(82).unwrap().gprime).unwrap();
        assert_eq!(g82.to_string(), "X_18,22 ⊂ P(1,2,5,9,11,13)");
    }

    #[test]
    fn involution_tags_match_golden() {
        let c = Catalog::shipped();
        for f in c.families() {
            let mut got: Vec<LinkEntry> = involution_inventory(f)
                .unwrap()
                .into_iter()
                .map(Into::into)
                .collect();
            let mut want = f.golden.link_column.clone();
            let key = |e: &LinkEntry| (e.point.clone(), e.condition.clone());
            got.sort_by_key(key);
            want.sort_by_key(key);
            assert_eq!(got, want, "family {}", f.id());
        }
    }
}
