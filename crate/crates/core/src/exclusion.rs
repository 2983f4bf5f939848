//! Exclusion certificates for maximal centers.
//!
//! Each [`Certificate`] records the raw numbers of one exclusion argument, and
//! [`Certificate::verify`] re-derives its [`Verdict`] from them. [`dispatch`]
//! picks the argument used for a center of a given family under a given
//! set of conditions, computes its inputs from the generic support of the
//! member and evaluates it.
//!
//! Centers are curves, nonsingular points, terminal quotient points and the
//! cAx point. Points that are untwisted by a birational involution or by the
//! link to the codimension two model get an [`Certificate::Untwist`], which
//! claims no exclusion.

use num::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::fmt;

use crate::catalog::Tag;
use crate::conditions::{Condition, Flags};
use crate::error::{structural, Error, Result};
use crate::hypersurface::{XPrimeModel, W};
use crate::numerics::{
    b_cubed, nef_bound_check, triple, vanishing_order, AmbientBlowup, BlowupLattice, SectionLift,
};
use crate::rational::{self, from_u64, int, rat, Rational};
use crate::singularities::{
    cax_classify, qi_eligible, quotient_with_unit, BasketPoint, CaxPoint, Locus, PointType,
    QuotientType,
};
use crate::wps::{all_but, max_pair_lcm, weighted_degree, Monomial, MonomialSupport, WeightSystem};

/// Outcome of evaluating a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub excluded: bool,
    pub method: &'static str,
    /// The quantity whose sign decides the test, when there is one.
    #[serde(with = "rational::opt_as_string")]
    pub witness_value: Option<Rational>,
}

impl Verdict {
    fn new(excluded: bool, method: &'static str, witness: Rational) -> Verdict {
        Verdict {
            excluded,
            method,
            witness_value: Some(witness),
        }
    }
}

/// `(A·Γ) >= (A^3)`. The witness is `deg - a_cube`.
pub fn curve_degree_test(deg: &Rational, a_cube: &Rational) -> Verdict {
    Verdict::new(deg >= a_cube, "curve-degree", deg - a_cube)
}

/// `3(A^3) - 2 deg Γ + (Γ^2) <= 0` for a curve on a surface `S ∈ |A|` with
/// `(Γ^2) < 0`.
pub fn curve_gamma_test(a_cube: &Rational, deg: &Rational, gamma_sq: &Rational) -> Verdict {
    let w = int(3) * a_cube - int(2) * deg + gamma_sq;
    Verdict::new(
        w <= Rational::zero() && gamma_sq.is_negative(),
        "curve-gamma",
        w,
    )
}

/// `(Γ·Δ) >= (A·Δ) > 0` for every admissible value of `(Γ·Δ)`. The witness
/// is the smallest margin.
pub fn curve_cycle_test(a_dot_delta: &Rational, gamma_dot_delta: &[Rational]) -> Verdict {
    let margin = gamma_dot_delta
        .iter()
        .map(|g| g - a_dot_delta)
        .min()
        .unwrap_or_else(|| int(-1));
    let ok = !gamma_dot_delta.is_empty() && a_dot_delta.is_positive() && !margin.is_negative();
    Verdict::new(ok, "curve-cycle", margin)
}

/// `lA` isolates the point for `l = max lcm(a_j, a_k)` over the indices other
/// than `dropped`; excluded when `l <= 4/(A^3)`. The witness is `4/(A^3) - l`.
pub fn isolation_test(
    w: &WeightSystem,
    dropped: Option<usize>,
    a_cube: &Rational,
) -> Result<Verdict> {
    let (bound, limit) = isolation_numbers(w, dropped, a_cube)?;
    let b = from_u64(bound);
    Ok(Verdict::new(b <= limit, "isolation", limit - b))
}

fn isolation_numbers(
    w: &WeightSystem,
    dropped: Option<usize>,
    a_cube: &Rational,
) -> Result<(u64, Rational)> {
    if !a_cube.is_positive() {
        return Err(structural("isolation needs (A^3) > 0"));
    }
    Ok((
        max_pair_lcm(w, &all_but(w.len(), dropped))?,
        int(4) / a_cube,
    ))
}

/// Coefficients `[c0, c1, c2]` of
/// `g(γ) = min_δ 4(1 - γ) - (A|_S - γΓ - δΔ)^2`
/// for `A|_S ~ Γ + Δ`, or `None` when the form is not convex in `δ`.
pub fn multiplicity_polynomial(
    a_sq: &Rational,
    deg_gamma: &Rational,
    deg_delta: &Rational,
    gamma_sq: &Rational,
) -> Option<[Rational; 3]> {
    let gd = deg_gamma - gamma_sq;
    let dd = deg_delta - &gd;
    let c2 = -dd;
    if !c2.is_positive() {
        return None;
    }
    Some([
        int(4) - a_sq - deg_delta * deg_delta / &c2,
        int(2) * deg_gamma - int(4) + int(2) * deg_delta * &gd / &c2,
        -gamma_sq.clone() - &gd * &gd / &c2,
    ])
}

fn min_on_unit_interval(p: &[Rational; 3]) -> Rational {
    let eval = |x: &Rational| &p[0] + &p[1] * x + &p[2] * x * x;
    let mut best = eval(&int(0)).min(eval(&int(1)));
    if p[2].is_positive() {
        let v = -&p[1] / (int(2) * &p[2]);
        if v.is_positive() && v < int(1) {
            best = best.min(eval(&v));
        }
    }
    best
}

/// Multiplicity bound on a surface `S ∈ |A|` with `A|_S ~ Γ + Δ`: excluded
/// when `4(1 - γ) - (A|_S - γΓ - δΔ)^2 >= 0` for all `0 <= γ <= 1` and all `δ`.
/// The witness is the minimum over `γ` after minimizing in `δ`.
pub fn surface_multiplicity_test(
    a_sq: &Rational,
    deg_gamma: &Rational,
    deg_delta: &Rational,
    gamma_sq: &Rational,
) -> Verdict {
    match multiplicity_polynomial(a_sq, deg_gamma, deg_delta, gamma_sq) {
        Some(p) => {
            let w = min_on_unit_interval(&p);
            Verdict::new(!w.is_negative(), "surface-multiplicity", w)
        }
        None => Verdict {
            excluded: false,
            method: "surface-multiplicity",
            witness_value: None,
        },
    }
}

/// `(T·Γ) = a_1^2 (B^3) <= 0` for `Γ = S ∩ T`, `S ∈ |B|`, `T ∈ |a_1 B|`.
/// `irreducible` asserts that `Γ` is irreducible and reduced.
pub fn surface_pair_test(
    a1: u64,
    b_cube: &Rational,
    gamma_support: &MonomialSupport,
    irreducible: bool,
) -> Result<Verdict> {
    if !irreducible {
        return Err(Error::NeedsFallback(
            "the curve S ∩ T is not known to be irreducible; use the family-specific certificate"
                .into(),
        ));
    }
    if gamma_support.is_empty() {
        return Err(structural("empty support for the curve S ∩ T"));
    }
    let w = from_u64(a1 * a1) * b_cube;
    Ok(Verdict::new(!w.is_positive(), "surface-pair", w))
}

/// `(B·C) <= 0` and `(E·C) > 0` for a family of curves covering a surface.
pub fn infinite_curves_test(b_dot_c: &Rational, e_dot_c: &Rational) -> Verdict {
    Verdict::new(
        !b_dot_c.is_positive() && e_dot_c.is_positive(),
        "infinite-curves",
        b_dot_c.clone(),
    )
}

/// A 2×2 rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix2(pub [[Rational; 2]; 2]);

impl Matrix2 {
    pub fn det(&self) -> Rational {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    /// `v^T M v`.
    pub fn form(&self, v: [&Rational; 2]) -> Rational {
        let m = &self.0;
        v[0] * v[0] * &m[0][0] + v[0] * v[1] * (&m[0][1] + &m[1][0]) + v[1] * v[1] * &m[1][1]
    }
}

impl Serialize for Matrix2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .0
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

/// True iff the symmetric matrix is negative-definite.
pub fn negdef2(m: &Matrix2) -> Result<bool> {
    if m.0[0][1] != m.0[1][0] {
        return Err(structural("negdef2 needs a symmetric matrix"));
    }
    Ok(m.0[0][0].is_negative() && m.det().is_positive())
}

/// A symmetric 2×2 matrix whose entries are affine in a parameter `m`:
/// entry `(i, j)` is `c0 + c1 m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParametricMatrix(pub [[(Rational, Rational); 2]; 2]);

impl ParametricMatrix {
    /// The intersection matrix of `Γ` and `C` on a surface where
    /// `(Γ + C)·Γ = p`, `(Γ + C)^2 = s` and `m = (Γ·C)`.
    pub fn curve_pair(p: &Rational, s: &Rational) -> ParametricMatrix {
        let one = int(1);
        ParametricMatrix([
            [(p.clone(), -one.clone()), (int(0), one.clone())],
            [(int(0), one.clone()), (s - p, -one)],
        ])
    }

    pub fn at(&self, m: &Rational) -> Matrix2 {
        let e = |i: usize, j: usize| &self.0[i][j].0 + &self.0[i][j].1 * m;
        Matrix2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    /// `det` as `[d0, d1, d2]` in powers of `m`.
    pub fn det_coefficients(&self) -> [Rational; 3] {
        let (a0, a1) = &self.0[0][0];
        let (b0, b1) = &self.0[0][1];
        let (c0, c1) = &self.0[1][0];
        let (d0, d1) = &self.0[1][1];
        [
            a0 * d0 - b0 * c0,
            a0 * d1 + a1 * d0 - b0 * c1 - b1 * c0,
            a1 * d1 - b1 * c1,
        ]
    }

    /// Negative-definite for every rational `m >= floor`: the leading entry is
    /// negative at `floor` and non-increasing, and the determinant is positive
    /// at `floor` and non-decreasing beyond it.
    pub fn negdef_from(&self, floor: &Rational) -> Result<bool> {
        let at = self.at(floor);
        if !negdef2(&at)? || self.0[0][1] != self.0[1][0] {
            return Ok(false);
        }
        let lead_slope = &self.0[0][0].1;
        let [_, d1, d2] = self.det_coefficients();
        let det_slope_at_floor = &d1 + int(2) * &d2 * floor;
        Ok(!lead_slope.is_positive() && !d2.is_negative() && !det_slope_at_floor.is_negative())
    }
}

impl fmt::Display for ParametricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = |(c0, c1): &(Rational, Rational)| -> String {
            let lin = if c1.is_one() {
                "m".to_string()
            } else if *c1 == -int(1) {
                "-m".to_string()
            } else {
                format!("{c1}m")
            };
            match (c0.is_zero(), c1.is_zero()) {
                (_, true) => c0.to_string(),
                (true, false) => lin,
                (false, false) if c1.is_negative() => format!("{c0} - {}", &lin[1..]),
                (false, false) => format!("{c0} + {lin}"),
            }
        };
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            e(&self.0[0][0]),
            e(&self.0[0][1]),
            e(&self.0[1][0]),
            e(&self.0[1][1])
        )
    }
}

impl Serialize for ParametricMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Certificate data, one variant per exclusion argument.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Certificate {
    CurveDegree {
        #[serde(with = "rational::as_string")]
        deg: Rational,
        #[serde(with = "rational::as_string")]
        a_cube: Rational,
    },
    CurveGamma {
        #[serde(with = "rational::as_string")]
        a_cube: Rational,
        #[serde(with = "rational::as_string")]
        deg: Rational,
        #[serde(with = "rational::as_string")]
        gamma_sq: Rational,
    },
    CurveCycle {
        #[serde(with = "rational::as_string")]
        a_dot_delta: Rational,
        #[serde(with = "rational::vec_as_string")]
        gamma_dot_delta: Vec<Rational>,
    },
    Isolation {
        weights: Vec<u64>,
        dropped_vertex: Option<usize>,
        #[serde(with = "rational::as_string")]
        a_cube: Rational,
        bound: u64,
        #[serde(with = "rational::as_string")]
        limit: Rational,
    },
    SurfaceMultiplicity {
        #[serde(with = "rational::as_string")]
        a_sq: Rational,
        #[serde(with = "rational::as_string")]
        deg_gamma: Rational,
        #[serde(with = "rational::as_string")]
        deg_delta: Rational,
        #[serde(with = "rational::as_string")]
        gamma_sq: Rational,
    },
    SurfacePair {
        a1: u64,
        #[serde(with = "rational::as_string")]
        b_cube: Rational,
        gamma_polynomial: String,
        #[serde(skip)]
        gamma_support: MonomialSupport,
        irreducible: bool,
    },
    NefDivisor {
        lifts: Vec<SectionLift>,
        q: QuotientType,
        #[serde(with = "rational::as_string")]
        a_cube: Rational,
        #[serde(with = "rational::as_string")]
        c: Rational,
        /// The lift `M` realizing `c`, printed as `bB + eE`.
        m: String,
        #[serde(with = "rational::as_string")]
        m_b2: Rational,
    },
    NegDefMatrix {
        matrix: ParametricMatrix,
        #[serde(with = "rational::as_string")]
        parameter_floor: Rational,
        entries: Matrix2,
    },
    InfiniteCurves {
        #[serde(with = "rational::as_string")]
        b_dot_c: Rational,
        #[serde(with = "rational::as_string")]
        e_dot_c: Rational,
    },
    Untwist {
        tag: Tag,
    },
}

impl Certificate {
    pub fn method(&self) -> &'static str {
        match self {
            Certificate::CurveDegree { .. } => "curve-degree",
            Certificate::CurveGamma { .. } => "curve-gamma",
            Certificate::CurveCycle { .. } => "curve-cycle",
            Certificate::Isolation { .. } => "isolation",
            Certificate::SurfaceMultiplicity { .. } => "surface-multiplicity",
            Certificate::SurfacePair { .. } => "surface-pair",
            Certificate::NefDivisor { .. } => "nef-divisor",
            Certificate::NegDefMatrix { .. } => "neg-def-matrix",
            Certificate::InfiniteCurves { .. } => "infinite-curves",
            Certificate::Untwist { .. } => "untwist",
        }
    }

    pub fn untwist_tag(&self) -> Option<Tag> {
        match self {
            Certificate::Untwist { tag } => Some(*tag),
            _ => None,
        }
    }

    /// Recomputes the verdict from the stored inputs. Derived fields that no
    /// longer match their inputs are a structural error.
    pub fn verify(&self) -> Result<Verdict> {
        match self {
            Certificate::CurveDegree { deg, a_cube } => Ok(curve_degree_test(deg, a_cube)),
            Certificate::CurveGamma {
                a_cube,
                deg,
                gamma_sq,
            } => Ok(curve_gamma_test(a_cube, deg, gamma_sq)),
            Certificate::CurveCycle {
                a_dot_delta,
                gamma_dot_delta,
            } => Ok(curve_cycle_test(a_dot_delta, gamma_dot_delta)),
            Certificate::Isolation {
                weights,
                dropped_vertex,
                a_cube,
                bound,
                limit,
            } => {
                let w = WeightSystem::new(weights.clone())?;
                let (b, l) = isolation_numbers(&w, *dropped_vertex, a_cube)?;
                if b != *bound || l != *limit {
                    return Err(structural("isolation bound does not match its weights"));
                }
                isolation_test(&w, *dropped_vertex, a_cube)
            }
            Certificate::SurfaceMultiplicity {
                a_sq,
                deg_gamma,
                deg_delta,
                gamma_sq,
            } => Ok(surface_multiplicity_test(
                a_sq, deg_gamma, deg_delta, gamma_sq,
            )),
            Certificate::SurfacePair {
                a1,
                b_cube,
                gamma_support,
                irreducible,
                ..
            } => {
                if *irreducible != is_irreducible_support(gamma_support) {
                    return Err(structural("irreducibility flag does not match the support"));
                }
                surface_pair_test(*a1, b_cube, gamma_support, *irreducible)
            }
            Certificate::NefDivisor {
                lifts,
                q,
                a_cube,
                c,
                m_b2,
                ..
            } => {
                let (c2, certified) = nef_bound_check(lifts, q)?;
                let lattice = BlowupLattice::kawamata(a_cube.clone(), q);
                let m = best_lift(lifts).ok_or_else(|| structural("no lifts"))?;
                let b = lattice.anticanonical();
                let mb2 = triple(&lattice, &m.class(&lattice), &b, &b)?;
                if c2 != *c || mb2 != *m_b2 {
                    return Err(structural("nef certificate does not match its lifts"));
                }
                Ok(Verdict::new(
                    certified && !mb2.is_positive(),
                    "nef-divisor",
                    mb2,
                ))
            }
            Certificate::NegDefMatrix {
                matrix,
                parameter_floor,
                entries,
            } => {
                if matrix.at(parameter_floor) != *entries {
                    return Err(structural(
                        "matrix entries do not match the parametric matrix",
                    ));
                }
                let ok = matrix.negdef_from(parameter_floor)?;
                Ok(Verdict::new(ok, "neg-def-matrix", entries.det()))
            }
            Certificate::InfiniteCurves { b_dot_c, e_dot_c } => {
                Ok(infinite_curves_test(b_dot_c, e_dot_c))
            }
            Certificate::Untwist { .. } => Ok(Verdict {
                excluded: false,
                method: "untwist",
                witness_value: None,
            }),
        }
    }

    /// One-line summary for reports.
    pub fn summary(&self) -> String {
        match self {
            Certificate::CurveDegree { deg, a_cube } => format!("deg {deg} >= A^3 = {a_cube}"),
            Certificate::CurveGamma {
                a_cube,
                deg,
                gamma_sq,
            } => {
                let w = int(3) * a_cube - int(2) * deg + gamma_sq;
                format!("3A^3 - 2deg + Γ^2 = {w} (Γ^2 <= {gamma_sq})")
            }
            Certificate::CurveCycle {
                gamma_dot_delta,
                a_dot_delta,
            } => {
                let v: Vec<String> = gamma_dot_delta.iter().map(|x| x.to_string()).collect();
                format!("Γ·Δ ∈ {{{}}} >= A·Δ = {a_dot_delta}", v.join(", "))
            }
            Certificate::Isolation { bound, limit, .. } => {
                format!("{bound}A isolates, {bound} <= 4/A^3 = {limit}")
            }
            Certificate::SurfaceMultiplicity { .. } => {
                let w = self.verify().ok().and_then(|v| v.witness_value);
                match w {
                    Some(w) => format!("4(1-γ) - (A|S - γΓ - δΔ)^2 >= {w} on 0 <= γ <= 1"),
                    None => "multiplicity bound fails".into(),
                }
            }
            Certificate::SurfacePair { a1, b_cube, .. } => {
                let sign = sign_text(b_cube);
                if *a1 == 1 {
                    format!("B^3 {sign}, T ∈ |B|")
                } else {
                    format!("B^3 {sign}, T ∈ |{a1}B|")
                }
            }
            Certificate::NefDivisor { m, m_b2, .. } => format!("B^3 < 0, {m}, (M·B^2) = {m_b2}"),
            Certificate::NegDefMatrix {
                matrix,
                parameter_floor,
                ..
            } => format!("{matrix} negative-definite for m >= {parameter_floor}"),
            Certificate::InfiniteCurves { b_dot_c, e_dot_c } => {
                format!("B·C = {b_dot_c}, E·C = {e_dot_c}")
            }
            Certificate::Untwist { .. } => String::new(),
        }
    }
}

fn sign_text(x: &Rational) -> &'static str {
    if x.is_negative() {
        "< 0"
    } else if x.is_zero() {
        "= 0"
    } else {
        "> 0"
    }
}

fn best_lift(lifts: &[SectionLift]) -> Option<&SectionLift> {
    let mut best: Option<&SectionLift> = None;
    for l in lifts {
        let better = match best {
            None => true,
            Some(b) => &l.class_e / &l.class_b > &b.class_e / &b.class_b,
        };
        if better {
            best = Some(l);
        }
    }
    best
}

/// Irreducibility surrogate for a curve given by generic coefficients on a
/// support: at least two monomials and no common monomial factor.
pub fn is_irreducible_support(s: &MonomialSupport) -> bool {
    s.len() >= 2 && s.common_factor().is_some_and(|m| m.total_degree() == 0)
}

/// Which nonsingular points a center covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stratum {
    /// Every nonsingular point not covered by another stratum.
    General,
    /// Nonsingular points on the line cut out by three coordinates.
    Line([usize; 3]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CenterKind {
    /// Curves of degree `degree`; with `through_cax` unset, curves in the
    /// nonsingular locus. A degree at least `(A^3)` stands for every larger
    /// degree too.
    Curve {
        #[serde(with = "rational::as_string")]
        degree: Rational,
        through_cax: bool,
        #[serde(with = "rational::opt_as_string")]
        gamma_sq_bound: Option<Rational>,
    },
    SmoothPoint {
        stratum: Stratum,
    },
    QuotientPoint {
        q: QuotientType,
    },
    CaxPoint {
        point: CaxPoint,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Center {
    pub kind: CenterKind,
    pub locus: Option<Locus>,
    pub count: u32,
    pub label: String,
}

impl Center {
    pub fn locus_name(&self) -> Option<String> {
        self.locus.map(|l| l.to_string())
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// A center together with the condition branches it must be checked under.
pub type CenterBranches = (Center, Vec<Flags>);

/// Conditions splitting a point into two cases, as `(locus, condition)`.
const SPLITS: &[(u32, &str, &str)] = &[
    (19, "p2p4", "not-exists-wci(1,1,2)"),
    (23, "p2p4", "not-exists-wci(1,1,4)"),
    (30, "p2", "monomial-present(y^2 z)"),
    (50, "p1p4", "not-exists-wci(1,3,4)"),
    (50, "p2", "monomial-present(z^3 t)"),
];

fn condition(text: &str) -> Condition {
    text.parse().expect("registry conditions parse")
}

/// The condition branches of a point: both sides of a split, or no condition.
pub fn point_branches(id: u32, locus: &str) -> Vec<Flags> {
    match SPLITS.iter().find(|(i, l, _)| *i == id && *l == locus) {
        Some((_, _, c)) => {
            let c = condition(c);
            vec![Flags::single(c.clone()), Flags::single(c.negation())]
        }
        None => vec![Flags::none()],
    }
}

fn quotient_center(model: &XPrimeModel, p: &BasketPoint, q: QuotientType) -> Center {
    let label = if p.count == 1 {
        format!("{} = {q}", p.locus)
    } else {
        format!("{} = {} × {q}", p.locus, p.count)
    };
    let _ = model;
    Center {
        kind: CenterKind::QuotientPoint { q },
        locus: Some(p.locus),
        count: p.count,
        label,
    }
}

/// Point centers from a basket, each with its condition branches.
pub fn centers_at_points(
    model: &XPrimeModel,
    basket: &[BasketPoint],
) -> Result<Vec<CenterBranches>> {
    let mut out = Vec::new();
    for p in basket {
        let locus = p.locus.to_string();
        match p.ty {
            PointType::Quotient(q) => out.push((
                quotient_center(model, p, q),
                point_branches(model.id(), &locus),
            )),
            PointType::Cax(n) => {
                let point = cax_classify(model, false, false);
                out.push((
                    Center {
                        kind: CenterKind::CaxPoint { point },
                        locus: Some(p.locus),
                        count: 1,
                        label: format!("{locus} = cAx/{n}"),
                    },
                    vec![Flags::none()],
                ));
            }
        }
    }
    Ok(out)
}

/// Curves of self-intersection bound `Γ^2 <= value` on the surface cut by
/// the pencil through the curve.
fn gamma_sq_bound(id: u32, degree: &Rational) -> Option<Rational> {
    match id {
        19 if *degree == rat(1, 2) => Some(rat(-3, 2)),
        23 if *degree == rat(1, 4) => Some(int(-1)),
        _ => None,
    }
}

/// Curves in the nonsingular locus (degree at least 1) and curves through
/// the cAx point, whose degree lies in `(1/b)Z`. Degrees below `(A^3)` are
/// listed one by one, followed by the first degree at least `(A^3)`.
pub fn curve_centers(model: &XPrimeModel) -> Vec<CenterBranches> {
    let mut out = vec![(
        Center {
            kind: CenterKind::Curve {
                degree: int(1),
                through_cax: false,
                gamma_sq_bound: None,
            },
            locus: None,
            count: 1,
            label: "curves in the nonsingular locus, deg >= 1".into(),
        },
        vec![Flags::none()],
    )];
    let b = model.b() as i64;
    let mut k = 1;
    loop {
        let degree = rat(k, b);
        let last = degree >= model.a_cube;
        let label = if last {
            format!("curves through the cAx point, deg >= {degree}")
        } else {
            format!("curves through the cAx point, deg = {degree}")
        };
        out.push((
            Center {
                kind: CenterKind::Curve {
                    gamma_sq_bound: gamma_sq_bound(model.id(), &degree),
                    degree,
                    through_cax: true,
                },
                locus: None,
                count: 1,
                label,
            },
            vec![Flags::none()],
        ));
        if last {
            break;
        }
        k += 1;
    }
    out
}

/// Dropped vertex for the isolation bound, and whether dropping it is
/// justified by a pure power of that coordinate in the equation.
fn isolation_drop(id: u32) -> (usize, bool) {
    match id {
        19 | 42 => (2, true),
        50 => (1, true),
        23 => (4, false),
        30 => (3, false),
        _ => (3, true),
    }
}

/// The special line of nonsingular points, with the condition under which
/// it carries nonsingular points.
fn special_line(id: u32) -> Option<([usize; 3], &'static str)> {
    match id {
        30 => Some(([0, 1, W], "monomial-absent(y^2 z)")),
        _ => None,
    }
}

pub fn smooth_centers(model: &XPrimeModel) -> Vec<CenterBranches> {
    let mut out = vec![(
        Center {
            kind: CenterKind::SmoothPoint {
                stratum: Stratum::General,
            },
            locus: None,
            count: 1,
            label: "nonsingular points".into(),
        },
        vec![Flags::none()],
    )];
    if let Some((line, cond)) = special_line(model.id()) {
        let eqs: Vec<String> = line
            .iter()
            .map(|&i| format!("{} = 0", model.names[i]))
            .collect();
        out.push((
            Center {
                kind: CenterKind::SmoothPoint {
                    stratum: Stratum::Line(line),
                },
                locus: None,
                count: 1,
                label: format!("nonsingular points on {}", eqs.join(", ")),
            },
            vec![Flags::single(condition(cond))],
        ));
    }
    out
}

/// Every center of the family: points of the basket, curves and nonsingular
/// points.
pub fn all_centers(model: &XPrimeModel) -> Result<Vec<CenterBranches>> {
    let basket = crate::singularities::basket(model)?;
    let mut out = centers_at_points(model, &basket)?;
    out.extend(curve_centers(model));
    out.extend(smooth_centers(model));
    Ok(out)
}

/// How a quotient point is handled.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Recipe {
    Untwist(Tag),
    QuadraticInvolution,
    SurfacePair {
        anchor: Option<&'static str>,
    },
    Nef {
        anchor: &'static str,
        sections: &'static [&'static str],
    },
    InfiniteCurves {
        anchor: &'static str,
        s: &'static [&'static str],
        t: &'static [&'static str],
        /// A fixed component `Γ` of `S ∩ T`, cut out by three coordinates,
        /// with its multiplicity.
        fixed: Option<([&'static str; 3], u32)>,
    },
    NegDef {
        anchor: &'static str,
        s: &'static [&'static str],
        t: &'static [&'static str],
        gamma: [&'static str; 3],
        floor: (i64, i64),
    },
}

fn point_recipe(id: u32, locus: &str, flags: &Flags) -> Result<Recipe> {
    let branches = point_branches(id, locus);
    if !branches.contains(flags) {
        let expected: Vec<String> = branches.iter().map(|f| format!("`{f}`")).collect();
        return Err(Error::Uncovered {
            id,
            center: locus.to_string(),
            missing: if flags.is_empty() {
                format!("a condition is required, one of {}", expected.join(" or "))
            } else {
                format!(
                    "condition `{flags}` is not one of {}",
                    expected.join(" or ")
                )
            },
        });
    }
    let has = |c: &str| flags.contains(&condition(c));
    Ok(match (id, locus) {
        (19, "p2p4") if has("not-exists-wci(1,1,2)") => Recipe::Untwist(Tag::EI),
        (19, "p2p4") => Recipe::Untwist(Tag::II),
        (19, "p3") | (23, "p3") | (30, "p3") | (41, "p2p3") | (42, "p3") | (50, "p3") => {
            Recipe::QuadraticInvolution
        }
        (23, "p2p4") if has("not-exists-wci(1,1,4)") => Recipe::SurfacePair { anchor: Some("y") },
        (23, "p2p4") => Recipe::InfiniteCurves {
            anchor: "y",
            s: &["x0", "x1"],
            t: &["w", "x0^4"],
            fixed: Some((["x0", "x1", "w"], 1)),
        },
        (30, "p2") if has("monomial-present(y^2 z)") => Recipe::QuadraticInvolution,
        (30, "p2") => Recipe::InfiniteCurves {
            anchor: "y",
            s: &["x0"],
            t: &["w", "x1^2"],
            fixed: Some((["x0", "x1", "w"], 2)),
        },
        (29 | 42 | 49 | 55, "p2p4") | (74 | 77, "p2p3") | (77, "p2p4") | (82, "p2") => {
            Recipe::SurfacePair { anchor: None }
        }
        (50, "p2") if has("monomial-present(z^3 t)") => Recipe::SurfacePair { anchor: None },
        (50, "p2") => Recipe::NegDef {
            anchor: "z",
            s: &["x"],
            t: &["x^2", "y"],
            gamma: ["x", "y", "w"],
            floor: (1, 2),
        },
        (50, "p1p4") if has("not-exists-wci(1,3,4)") => Recipe::Nef {
            anchor: "y",
            sections: &["x", "z", "w"],
        },
        (50, "p1p4") => Recipe::NegDef {
            anchor: "y",
            s: &["x"],
            t: &["z", "x y", "x^3"],
            gamma: ["x", "z", "w"],
            floor: (1, 1),
        },
        (74 | 82, "p1p4") => Recipe::Nef {
            anchor: "y",
            sections: &["x", "z", "w"],
        },
        (55, "p2") => Recipe::InfiniteCurves {
            anchor: "y",
            s: &["x0", "x1"],
            t: &["w"],
            fixed: None,
        },
        (69, "p2") => Recipe::InfiniteCurves {
            anchor: "y",
            s: &["x0"],
            t: &["w", "x1^2"],
            fixed: None,
        },
        _ => {
            return Err(Error::Uncovered {
                id,
                center: locus.to_string(),
                missing: "no exclusion argument or link is registered for this point".into(),
            })
        }
    })
}

/// The Kawamata blowup of a quotient vertex `p_v`, read off the support:
/// `(w_1, ..., w_n)/r` on the coordinates transverse to the tangent monomial
/// `x_v^k x_j`, and the residual order on `x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointBlowup {
    pub vertex: usize,
    pub eliminated: usize,
    pub q: QuotientType,
    /// Vanishing order of every coordinate along `E`; zero at the vertex.
    pub orders: Vec<Rational>,
}

pub fn point_blowup(model: &XPrimeModel, vertex: usize) -> Result<PointBlowup> {
    let r = model.weight(vertex);
    let (_, j) = model
        .tangent_monomial(vertex)
        .ok_or(Error::NotQuasismooth {
            id: model.id(),
            vertex,
        })?;
    let transverse: Vec<usize> = (0..5).filter(|&i| i != vertex && i != j).collect();
    let raw = [
        model.weight(transverse[0]),
        model.weight(transverse[1]),
        model.weight(transverse[2]),
    ];
    let (q, u) = quotient_with_unit(r, raw)?;
    let mut orders = vec![Rational::zero(); 5];
    for &i in &transverse {
        orders[i] = rat((u * model.weight(i) % r) as i64, r as i64);
    }
    orders[j] = vanishing_order(&model.support, &orders, Some(j))?;
    Ok(PointBlowup {
        vertex,
        eliminated: j,
        q,
        orders,
    })
}

impl PointBlowup {
    /// Order along `E` of a monomial.
    pub fn order_of(&self, m: &Monomial) -> Rational {
        m.exponents()
            .iter()
            .zip(&self.orders)
            .map(|(&e, o)| o * int(e as i64))
            .sum()
    }
}

/// The lift of the linear system spanned by `gens` (all of one degree).
pub fn lift_system(model: &XPrimeModel, pb: &PointBlowup, gens: &[&str]) -> Result<SectionLift> {
    let mut degree = None;
    let mut order: Option<Rational> = None;
    for g in gens {
        let m = model.monomial(g)?;
        let d = weighted_degree(&m, model.weights())?;
        if degree.is_some_and(|x| x != d) {
            return Err(structural(format!(
                "generators {gens:?} have different degrees"
            )));
        }
        degree = Some(d);
        let o = pb.order_of(&m);
        order = Some(match order {
            Some(best) if best <= o => best,
            _ => o,
        });
    }
    let degree = degree.ok_or_else(|| structural("empty linear system"))?;
    Ok(SectionLift::new(degree, order.expect("nonempty"), pb.q.r))
}

/// `(B·Γ, E·Γ)` for `Γ` cut out by three coordinates, through the vertex.
pub fn curve_numbers(
    model: &XPrimeModel,
    pb: &PointBlowup,
    coords: [&str; 3],
) -> Result<(Rational, Rational)> {
    let idx = [
        model.index_of(coords[0])?,
        model.index_of(coords[1])?,
        model.index_of(coords[2])?,
    ];
    if idx.contains(&pb.vertex) {
        return Err(structural(
            "the curve must pass through the blown up vertex",
        ));
    }
    AmbientBlowup::new(model.weights(), pb.vertex, pb.orders.clone())?.curve_b_e(idx)
}

fn prepared(model: &XPrimeModel, flags: &Flags, anchor: Option<&str>) -> Result<XPrimeModel> {
    let m = model.with_flags(flags)?;
    match anchor {
        Some(a) => {
            let v = m.index_of(a)?;
            m.anchored_at(v)
        }
        None => Ok(m),
    }
}

fn anchored_blowup(
    model: &XPrimeModel,
    flags: &Flags,
    anchor: &str,
    locus: Locus,
    q: QuotientType,
) -> Result<(XPrimeModel, PointBlowup)> {
    let m = prepared(model, flags, Some(anchor))?;
    let v = m.index_of(anchor)?;
    if !locus.coords().contains(&v) {
        return Err(structural(format!("anchor {anchor} is not on {locus}")));
    }
    let pb = point_blowup(&m, v)?;
    if pb.q != q {
        return Err(Error::Dispatch {
            id: model.id(),
            reason: format!("blowup at {anchor} has type {}, expected {q}", pb.q),
        });
    }
    Ok((m, pb))
}

/// Support of `Γ = (x_0 = x_1 = 0)` in the surface-pair argument for a point.
fn surface_pair_support(
    model: &XPrimeModel,
    flags: &Flags,
    anchor: Option<&str>,
) -> Result<MonomialSupport> {
    Ok(prepared(model, flags, anchor)?.restricted(&[2, 3, W]))
}

fn evaluate_recipe(
    model: &XPrimeModel,
    recipe: &Recipe,
    locus: Locus,
    q: QuotientType,
    flags: &Flags,
) -> Result<Certificate> {
    let lattice = BlowupLattice::kawamata(model.a_cube.clone(), &q);
    let b = lattice.anticanonical();
    let e = lattice.exceptional(0);
    match recipe {
        Recipe::Untwist(tag) => Ok(Certificate::Untwist { tag: *tag }),
        Recipe::QuadraticInvolution => {
            if !qi_eligible(&model.with_flags(flags)?, locus) {
                return Err(Error::Dispatch {
                    id: model.id(),
                    reason: format!("{locus} has no monomial x_i^2 x_j for a quadratic involution"),
                });
            }
            Ok(Certificate::Untwist { tag: Tag::QI })
        }
        Recipe::SurfacePair { anchor } => {
            let support = surface_pair_support(model, flags, *anchor)?;
            Ok(Certificate::SurfacePair {
                a1: model.weight(1),
                b_cube: b_cubed(&model.a_cube, &q),
                gamma_polynomial: model.render_support(&support),
                irreducible: is_irreducible_support(&support),
                gamma_support: support,
            })
        }
        Recipe::Nef { anchor, sections } => {
            let (m, pb) = anchored_blowup(model, flags, anchor, locus, q)?;
            let idx: Vec<usize> = sections
                .iter()
                .map(|s| m.index_of(s))
                .collect::<Result<_>>()?;
            let rest: Vec<usize> = (0..5).filter(|i| !idx.contains(i)).collect();
            if m.restricted(&rest).is_empty() {
                return Err(Error::NeedsFallback(format!(
                    "{} do not isolate the point: the curve they cut lies on the member",
                    sections.join(", ")
                )));
            }
            let lifts: Vec<SectionLift> = sections
                .iter()
                .map(|s| lift_system(&m, &pb, &[s]))
                .collect::<Result<_>>()?;
            let (c, _) = nef_bound_check(&lifts, &q)?;
            let best = best_lift(&lifts).expect("nonempty").clone();
            let m_b2 = triple(&lattice, &best.class(&lattice), &b, &b)?;
            Ok(Certificate::NefDivisor {
                lifts,
                q,
                a_cube: model.a_cube.clone(),
                c,
                m: best.to_string(),
                m_b2,
            })
        }
        Recipe::InfiniteCurves {
            anchor,
            s,
            t,
            fixed,
        } => {
            let (m, pb) = anchored_blowup(model, flags, anchor, locus, q)?;
            let sc = lift_system(&m, &pb, s)?.class(&lattice);
            let tc = lift_system(&m, &pb, t)?.class(&lattice);
            let mut b_dot_c = triple(&lattice, &b, &sc, &tc)?;
            let mut e_dot_c = triple(&lattice, &e, &sc, &tc)?;
            if let Some((coords, mult)) = fixed {
                let (bg, eg) = curve_numbers(&m, &pb, *coords)?;
                let mult = from_u64(*mult as u64);
                b_dot_c -= &mult * bg;
                e_dot_c -= &mult * eg;
            }
            Ok(Certificate::InfiniteCurves { b_dot_c, e_dot_c })
        }
        Recipe::NegDef {
            anchor,
            s,
            t,
            gamma,
            floor,
        } => {
            let (m, pb) = anchored_blowup(model, flags, anchor, locus, q)?;
            let sc = lift_system(&m, &pb, s)?.class(&lattice);
            let tc = lift_system(&m, &pb, t)?.class(&lattice);
            let (p, _) = curve_numbers(&m, &pb, *gamma)?;
            let s_sq = triple(&lattice, &sc, &sc, &tc)?;
            let matrix = ParametricMatrix::curve_pair(&p, &s_sq);
            let parameter_floor = rat(floor.0, floor.1);
            Ok(Certificate::NegDefMatrix {
                entries: matrix.at(&parameter_floor),
                matrix,
                parameter_floor,
            })
        }
    }
}

fn curve_certificate(
    model: &XPrimeModel,
    degree: &Rational,
    gamma_sq_bound: &Option<Rational>,
) -> Result<Certificate> {
    let a = &model.a_cube;
    if degree >= a {
        return Ok(Certificate::CurveDegree {
            deg: degree.clone(),
            a_cube: a.clone(),
        });
    }
    if let Some(g) = gamma_sq_bound {
        return Ok(Certificate::CurveGamma {
            a_cube: a.clone(),
            deg: degree.clone(),
            gamma_sq: g.clone(),
        });
    }
    if model.id() == 17 && *degree == rat(1, 2) {
        // S ∈ |A| through Γ meets a second member in Γ + Δ with deg Δ = A^3 - deg Γ.
        // On the D_m point of S the weighted blowup (3,1,4)/2 gives x_0 order
        // 3/2 or 3 along E_1, and Γ^2 = -2 + ord/2.
        let deg_delta = a - degree;
        let gamma_dot_delta = [rat(3, 2), int(3)]
            .iter()
            .map(|ord| degree - (int(-2) + ord / int(2)))
            .collect();
        return Ok(Certificate::CurveCycle {
            a_dot_delta: deg_delta,
            gamma_dot_delta,
        });
    }
    Err(Error::Uncovered {
        id: model.id(),
        center: format!("curve of degree {degree}"),
        missing: "no exclusion argument below (A^3)".into(),
    })
}

fn smooth_certificate(
    model: &XPrimeModel,
    stratum: &Stratum,
    flags: &Flags,
) -> Result<Certificate> {
    match stratum {
        Stratum::General => {
            if !flags.is_empty() {
                return Err(Error::Uncovered {
                    id: model.id(),
                    center: "nonsingular points".into(),
                    missing: format!("unexpected condition `{flags}`"),
                });
            }
            let (dropped, pure_power) = isolation_drop(model.id());
            if pure_power && !model.has_pure_power(dropped) {
                return Err(Error::Dispatch {
                    id: model.id(),
                    reason: format!(
                        "no pure power of {} to drop its vertex",
                        model.names[dropped]
                    ),
                });
            }
            let (bound, limit) = isolation_numbers(model.weights(), Some(dropped), &model.a_cube)?;
            Ok(Certificate::Isolation {
                weights: model.weights().weights().to_vec(),
                dropped_vertex: Some(dropped),
                a_cube: model.a_cube.clone(),
                bound,
                limit,
            })
        }
        Stratum::Line(line) => {
            let expected = special_line(model.id()).filter(|(l, _)| l == line);
            let Some((_, cond)) = expected else {
                return Err(Error::Uncovered {
                    id: model.id(),
                    center: "nonsingular points on a coordinate line".into(),
                    missing: "no argument registered for this line".into(),
                });
            };
            if *flags != Flags::single(condition(cond)) {
                return Err(Error::Uncovered {
                    id: model.id(),
                    center: "nonsingular points on a coordinate line".into(),
                    missing: format!("requires `{cond}`"),
                });
            }
            let m = model.with_flags(flags)?;
            let rest: Vec<usize> = (0..5).filter(|i| !line.contains(i)).collect();
            if !m.restricted(&rest).is_empty() {
                return Err(structural("the coordinate line does not lie on the member"));
            }
            // Γ is the line, S a general member of |I_Γ(A)|, A|_S ~ Γ + Δ.
            // Γ passes through the two vertices of the line, where S has
            // cyclic points of index a_i contributing (a_i - 1)/a_i.
            let deg_gamma = rest
                .iter()
                .fold(Rational::one(), |acc, &i| acc / from_u64(model.weight(i)));
            let gamma_sq = rest.iter().fold(int(-2), |acc, &i| {
                let a = model.weight(i) as i64;
                acc + rat(a - 1, a)
            });
            Ok(Certificate::SurfaceMultiplicity {
                a_sq: model.a_cube.clone(),
                deg_delta: &model.a_cube - &deg_gamma,
                deg_gamma,
                gamma_sq,
            })
        }
    }
}

/// Selects and evaluates the certificate for `center` under `flags`.
pub fn dispatch(
    model: &XPrimeModel,
    center: &Center,
    flags: &Flags,
) -> Result<(Certificate, Verdict)> {
    let cert = match &center.kind {
        CenterKind::CaxPoint { .. } => {
            if !flags.is_empty() {
                return Err(Error::Uncovered {
                    id: model.id(),
                    center: center.label.clone(),
                    missing: format!("unexpected condition `{flags}`"),
                });
            }
            Certificate::Untwist { tag: Tag::Link }
        }
        CenterKind::QuotientPoint { q } => {
            let locus = center
                .locus
                .ok_or_else(|| structural("quotient point without locus"))?;
            let recipe = point_recipe(model.id(), &locus.to_string(), flags)?;
            evaluate_recipe(model, &recipe, locus, *q, flags)?
        }
        CenterKind::Curve {
            degree,
            gamma_sq_bound,
            ..
        } => {
            if !flags.is_empty() {
                return Err(Error::Uncovered {
                    id: model.id(),
                    center: center.label.clone(),
                    missing: format!("unexpected condition `{flags}`"),
                });
            }
            curve_certificate(model, degree, gamma_sq_bound)?
        }
        CenterKind::SmoothPoint { stratum } => smooth_certificate(model, stratum, flags)?,
    };
    let verdict = cert.verify()?;
    Ok((cert, verdict))
}

/// The support of `G = F(0, 0, x_2, x_3, w)` used by the surface-pair
/// argument of the family, with the normalization of that argument.
pub fn gamma_polynomial(model: &XPrimeModel) -> Result<MonomialSupport> {
    let basket = crate::singularities::basket(model)?;
    for p in &basket {
        let locus = p.locus.to_string();
        for flags in point_branches(model.id(), &locus) {
            if let Ok(Recipe::SurfacePair { anchor }) = point_recipe(model.id(), &locus, &flags) {
                return surface_pair_support(model, &flags, anchor);
            }
        }
    }
    Err(Error::Dispatch {
        id: model.id(),
        reason: "no quotient point is excluded by the surface-pair argument".into(),
    })
}
