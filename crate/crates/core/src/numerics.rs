//! Intersection numbers on weighted blowups.
//!
//! A [`BlowupLattice`] is the numerical divisor lattice of an `n`-fold `V`
//! (usually `n = 3`) blown up at finitely many points, in the pullback basis
//! `{A, E_1, ..., E_k}`. Top products are diagonal: `A^n`, `E_i^n`, and every
//! mixed product vanishes.
//!
//! The weighted blowup of a point with weights `(w_1, ..., w_n)/r` has
//! `E^n = (-1)^(n-1) r^(n-1) / Π w_i`. For a threefold quotient point
//! `1/r(1, a, r - a)` this is the Kawamata blowup with `E^3 = r^2 / (a(r-a))`
//! and discrepancy `1/r`.

use num::{BigInt, One, Signed, Zero};
use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{structural, Error, Result};
use crate::rational::{self, from_u64, int, rat, Rational};
use crate::singularities::QuotientType;
use crate::wps::{MonomialSupport, WeightSystem};

/// `(1/r, r^2 / (a(r-a)))`.
pub fn kawamata_numbers(q: &QuotientType) -> (Rational, Rational) {
    let r = q.r as i64;
    let a = q.a as i64;
    (rat(1, r), rat(r * r, a * (r - a)))
}

/// `(B^3) = (A^3) - 1/(r a (r-a))` for `B = -K` of the Kawamata blowup.
pub fn b_cubed(a_cube: &Rational, q: &QuotientType) -> Rational {
    let r = q.r as i64;
    let a = q.a as i64;
    a_cube - rat(1, r * a * (r - a))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exceptional {
    pub label: String,
    pub r: u64,
    /// `E^n`.
    #[serde(with = "rational::as_string")]
    pub e_top: Rational,
    /// Discrepancy of `K_V` along `E`.
    #[serde(with = "rational::as_string")]
    pub discrepancy: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupLattice {
    pub dim: usize,
    /// `A^n` of the base.
    #[serde(with = "rational::as_string")]
    pub a_top: Rational,
    pub exceptionals: Vec<Exceptional>,
}

/// Coefficient vector over the pullback basis of a lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass(pub Vec<Rational>);

impl DivisorClass {
    pub fn new(coeffs: Vec<Rational>) -> DivisorClass {
        DivisorClass(coeffs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn scale(&self, c: &Rational) -> DivisorClass {
        DivisorClass(self.0.iter().map(|x| x * c).collect())
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&DivisorClass> for &Rational {
    type Output = DivisorClass;
    fn mul(self, c: &DivisorClass) -> DivisorClass {
        c.scale(self)
    }
}

impl BlowupLattice {
    /// An unblown-up `dim`-fold with `A^dim = a_top`.
    pub fn new(dim: usize, a_top: Rational) -> BlowupLattice {
        BlowupLattice {
            dim,
            a_top,
            exceptionals: Vec::new(),
        }
    }

    /// Threefold blown up at one quotient point.
    pub fn kawamata(a_cube: Rational, q: &QuotientType) -> BlowupLattice {
        let mut l = BlowupLattice::new(3, a_cube);
        l.push_kawamata("E", q);
        l
    }

    pub fn push_kawamata(&mut self, label: &str, q: &QuotientType) {
        let (discrepancy, e_top) = kawamata_numbers(q);
        self.exceptionals.push(Exceptional {
            label: label.to_string(),
            r: q.r,
            e_top,
            discrepancy,
        });
    }

    /// Weighted blowup with weights `numerators / r`, one per local coordinate.
    pub fn push_weighted(&mut self, label: &str, r: u64, numerators: &[Rational]) -> Result<()> {
        if numerators.len() != self.dim {
            return Err(structural(format!(
                "a blowup of a {}-fold needs {} weights, got {}",
                self.dim,
                self.dim,
                numerators.len()
            )));
        }
        if numerators.iter().any(|w| !w.is_positive()) {
            return Err(structural("blowup weights must be positive"));
        }
        let prod: Rational = numerators.iter().product();
        let sign = if self.dim % 2 == 1 { int(1) } else { int(-1) };
        let e_top = sign * Rational::from_integer(BigInt::from(r).pow(self.dim as u32 - 1)) / prod;
        let weight_sum: Rational = numerators.iter().sum();
        self.exceptionals.push(Exceptional {
            label: label.to_string(),
            r,
            e_top,
            discrepancy: weight_sum / from_u64(r) - int(1),
        });
        Ok(())
    }

    pub fn rank(&self) -> usize {
        1 + self.exceptionals.len()
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass(vec![Rational::zero(); self.rank()])
    }

    pub fn basis(&self, i: usize) -> DivisorClass {
        let mut c = self.zero();
        c.0[i] = Rational::one();
        c
    }

    /// `φ^*A`.
    pub fn pullback(&self) -> DivisorClass {
        self.basis(0)
    }

    pub fn exceptional(&self, k: usize) -> DivisorClass {
        self.basis(k + 1)
    }

    /// `-K = φ^*A - Σ discrepancy_k E_k`.
    pub fn anticanonical(&self) -> DivisorClass {
        let mut c = self.pullback();
        for (k, e) in self.exceptionals.iter().enumerate() {
            c.0[k + 1] = -e.discrepancy.clone();
        }
        c
    }

    /// `b B + e E` for the first exceptional, as a class in the pullback basis.
    pub fn b_e(&self, b: &Rational, e: &Rational) -> DivisorClass {
        &self.anticanonical().scale(b) + &self.exceptional(0).scale(e)
    }

    /// Intersection of `dim` classes.
    pub fn top_product(&self, classes: &[&DivisorClass]) -> Result<Rational> {
        if classes.len() != self.dim {
            return Err(structural(format!(
                "top product on a {}-fold needs {} classes, got {}",
                self.dim,
                self.dim,
                classes.len()
            )));
        }
        if let Some(c) = classes.iter().find(|c| c.len() != self.rank()) {
            return Err(structural(format!(
                "class of length {} on a lattice of rank {}",
                c.len(),
                self.rank()
            )));
        }
        let mut total: Rational =
            classes.iter().map(|c| c.coeff(0)).product::<Rational>() * &self.a_top;
        for (k, e) in self.exceptionals.iter().enumerate() {
            total += classes.iter().map(|c| c.coeff(k + 1)).product::<Rational>() * &e.e_top;
        }
        Ok(total)
    }
}

/// `(c1 · c2 · c3)` on a threefold lattice.
pub fn triple(
    lattice: &BlowupLattice,
    c1: &DivisorClass,
    c2: &DivisorClass,
    c3: &DivisorClass,
) -> Result<Rational> {
    if lattice.dim != 3 {
        return Err(structural("triple products need a threefold lattice"));
    }
    lattice.top_product(&[c1, c2, c3])
}

/// The proper transform of a section of degree `degree` vanishing to order
/// `vanishing_order` along `E`, as `class_b B + class_e E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionLift {
    pub degree: u64,
    #[serde(with = "rational::as_string")]
    pub vanishing_order: Rational,
    #[serde(with = "rational::as_string")]
    pub class_b: Rational,
    #[serde(with = "rational::as_string")]
    pub class_e: Rational,
}

impl SectionLift {
    /// `class_b = degree`, `class_e = degree/r - vanishing_order`.
    pub fn new(degree: u64, vanishing_order: Rational, r: u64) -> SectionLift {
        let class_b = from_u64(degree);
        let class_e = &class_b / from_u64(r) - &vanishing_order;
        SectionLift {
            degree,
            vanishing_order,
            class_b,
            class_e,
        }
    }

    pub fn class(&self, lattice: &BlowupLattice) -> DivisorClass {
        lattice.b_e(&self.class_b, &self.class_e)
    }
}

impl fmt::Display for SectionLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coef = |c: &Rational, sym: &str| {
            if c.is_one() {
                sym.to_string()
            } else {
                format!("{c}{sym}")
            }
        };
        let b = coef(&self.class_b, "B");
        if self.class_e.is_zero() {
            f.write_str(&b)
        } else if self.class_e.is_negative() {
            write!(f, "{b} - {}", coef(&-self.class_e.clone(), "E"))
        } else {
            write!(f, "{b} + {}", coef(&self.class_e, "E"))
        }
    }
}

/// Minimum weighted order of the support along the exceptional divisor.
///
/// With `eliminated = Some(j)`, monomials involving `x_j` are filtered off and
/// the minimum over the rest is the vanishing order of `x_j` itself.
pub fn vanishing_order(
    support: &MonomialSupport,
    blowup_weights: &[Rational],
    eliminated: Option<usize>,
) -> Result<Rational> {
    let mut best: Option<Rational> = None;
    for m in support.iter() {
        if m.nvars() != blowup_weights.len() {
            return Err(structural("blowup weights do not match the support"));
        }
        if let Some(j) = eliminated {
            if m.exp(j) > 0 {
                continue;
            }
        }
        let ord: Rational = m
            .exponents()
            .iter()
            .zip(blowup_weights)
            .map(|(&e, w)| w * int(e as i64))
            .sum();
        best = Some(match best {
            Some(b) if b <= ord => b,
            _ => ord,
        });
    }
    best.ok_or_else(|| Error::OrderUndefined("no monomial survives the filtering".into()))
}

/// `c = max(class_e / class_b)`, certified nef when `c <= 1/r`.
pub fn nef_bound_check(lifts: &[SectionLift], q: &QuotientType) -> Result<(Rational, bool)> {
    if lifts.is_empty() {
        return Err(structural("nef bound needs at least one lift"));
    }
    if lifts
        .iter()
        .any(|l| !l.class_b.is_positive() || l.class_e.is_negative())
    {
        return Err(structural("nef bound needs class_b > 0 and class_e >= 0"));
    }
    let c = lifts
        .iter()
        .map(|l| &l.class_e / &l.class_b)
        .max()
        .expect("nonempty");
    let ok = c <= rat(1, q.r as i64);
    Ok((c, ok))
}

/// The weighted blowup of the ambient `P(a_0, ..., a_4)` at a coordinate
/// vertex, restricting to the Kawamata blowup of the hypersurface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientBlowup {
    pub lattice: BlowupLattice,
    pub weights: WeightSystem,
    pub vertex: usize,
    pub r: u64,
    /// Vanishing order of each coordinate along `F`, zero at the vertex.
    pub orders: Vec<Rational>,
}

impl AmbientBlowup {
    pub fn new(
        weights: &WeightSystem,
        vertex: usize,
        orders: Vec<Rational>,
    ) -> Result<AmbientBlowup> {
        if orders.len() != weights.len() {
            return Err(structural("one order per coordinate"));
        }
        let r = weights.get(vertex);
        let dim = weights.len() - 1;
        let a_top = Rational::new(BigInt::one(), weights.product());
        let mut lattice = BlowupLattice::new(dim, a_top);
        let numerators: Vec<Rational> = (0..weights.len())
            .filter(|&i| i != vertex)
            .map(|i| &orders[i] * from_u64(r))
            .collect();
        lattice.push_weighted("F", r, &numerators)?;
        Ok(AmbientBlowup {
            lattice,
            weights: weights.clone(),
            vertex,
            r,
            orders,
        })
    }

    /// Proper transform of `(x_i = 0)`: `a_i H - ord_i F`.
    pub fn coordinate_divisor(&self, i: usize) -> DivisorClass {
        DivisorClass(vec![from_u64(self.weights.get(i)), -self.orders[i].clone()])
    }

    /// `(H · Γ, F · Γ)` for the curve cut out by three coordinate divisors.
    pub fn curve_numbers(&self, coords: [usize; 3]) -> Result<(Rational, Rational)> {
        let d: Vec<DivisorClass> = coords.iter().map(|&i| self.coordinate_divisor(i)).collect();
        let h = self.lattice.pullback();
        let f = self.lattice.exceptional(0);
        Ok((
            self.lattice.top_product(&[&h, &d[0], &d[1], &d[2]])?,
            self.lattice.top_product(&[&f, &d[0], &d[1], &d[2]])?,
        ))
    }

    /// `(B · Γ, E · Γ)` with `B = A - E/r` on the hypersurface.
    pub fn curve_b_e(&self, coords: [usize; 3]) -> Result<(Rational, Rational)> {
        let (a, e) = self.curve_numbers(coords)?;
        let b = &a - &e / from_u64(self.r);
        Ok((b, e))
    }
}
