//! Weight systems, monomials and graded monomial enumeration.

use num::integer::lcm;
use num::{BigInt, One};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::catalog::FamilyRecord;
use crate::error::{structural, Error, Result};
use crate::rational::Rational;

/// Positive integer weights `(a_0, ..., a_n)` of a weighted projective space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct WeightSystem(Vec<u64>);

impl WeightSystem {
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        if weights.len() < 3 {
            return Err(structural(format!(
                "a weight system needs at least 3 weights, got {}",
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(structural("weights must be positive"));
        }
        Ok(WeightSystem(weights))
    }

    pub fn weights(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn product(&self) -> BigInt {
        self.0.iter().map(|&a| BigInt::from(a)).product()
    }
}

impl TryFrom<Vec<u64>> for WeightSystem {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        WeightSystem::new(v)
    }
}

impl From<WeightSystem> for Vec<u64> {
    fn from(w: WeightSystem) -> Self {
        w.0
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "P({})", parts.join(","))
    }
}

/// Exponent vector of a monomial, one entry per coordinate.
///
/// Ordering is graded-lexicographic: total degree first, then the exponent
/// vectors lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = power;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Coordinates with a nonzero exponent.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    /// True when every coordinate outside `coords` has exponent zero.
    pub fn lives_on(&self, coords: &[usize]) -> bool {
        (0..self.0.len()).all(|i| self.0[i] == 0 || coords.contains(&i))
    }

    /// Renders as e.g. `y^2 z`, with `names[i]` for coordinate `i`.
    pub fn render(&self, names: &[&str]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].to_string()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }

    /// Inverse of [`Monomial::render`]. Accepts `y^2 z` and `y^2*z`.
    pub fn parse(text: &str, names: &[&str]) -> Result<Monomial> {
        let mut e = vec![0u32; names.len()];
        let cleaned = text.replace('*', " ");
        let tokens: Vec<&str> = cleaned.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(structural(format!("empty monomial `{text}`")));
        }
        if tokens == ["1"] {
            return Ok(Monomial(e));
        }
        for tok in tokens {
            let (name, power) = match tok.split_once('^') {
                Some((n, p)) => (
                    n,
                    p.parse::<u32>()
                        .map_err(|_| structural(format!("bad exponent in `{text}`")))?,
                ),
                None => (tok, 1),
            };
            let i = names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| structural(format!("unknown coordinate `{name}` in `{text}`")))?;
            e[i] += power;
        }
        Ok(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Σ eᵢ·aᵢ.
pub fn weighted_degree(m: &Monomial, w: &WeightSystem) -> Result<u64> {
    if m.nvars() != w.len() {
        return Err(structural(format!(
            "monomial has {} exponents but the weight system has {} weights",
            m.nvars(),
            w.len()
        )));
    }
    Ok(m.0
        .iter()
        .zip(w.weights())
        .map(|(&e, &a)| e as u64 * a)
        .sum())
}

/// The support of a generic weighted homogeneous polynomial of fixed degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialSupport {
    degree: u64,
    monomials: BTreeSet<Monomial>,
}

impl MonomialSupport {
    pub fn empty(degree: u64) -> Self {
        MonomialSupport {
            degree,
            monomials: BTreeSet::new(),
        }
    }

    /// Builds a support, checking that every monomial has weighted degree `degree`.
    pub fn from_monomials(
        degree: u64,
        w: &WeightSystem,
        monomials: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self> {
        let mut s = MonomialSupport::empty(degree);
        for m in monomials {
            let d = weighted_degree(&m, w)?;
            if d != degree {
                return Err(structural(format!(
                    "monomial {:?} has degree {d}, expected {degree}",
                    m.exponents()
                )));
            }
            s.monomials.insert(m);
        }
        Ok(s)
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    /// Monomials in descending graded-lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter().rev()
    }

    pub fn without(&self, m: &Monomial) -> MonomialSupport {
        let mut s = self.clone();
        s.monomials.remove(m);
        s
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> MonomialSupport {
        MonomialSupport {
            degree: self.degree,
            monomials: self.monomials.iter().filter(|m| keep(m)).cloned().collect(),
        }
    }

    /// Monomials involving only the coordinates in `coords`.
    pub fn restrict(&self, coords: &[usize]) -> MonomialSupport {
        self.filter(|m| m.lives_on(coords))
    }

    /// Largest monomial dividing every member (the `gcd` of the support).
    pub fn common_factor(&self) -> Option<Monomial> {
        let mut it = self.monomials.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| {
            Monomial(acc.0.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect())
        }))
    }

    pub fn render(&self, names: &[&str]) -> String {
        let parts: Vec<String> = self.iter().map(|m| m.render(names)).collect();
        parts.join(" + ")
    }
}

/// Every exponent vector of weighted degree `d`.
pub fn monomials_of_degree(d: u64, w: &WeightSystem) -> MonomialSupport {
    fn go(d: u64, w: &[u64], i: usize, cur: &mut Vec<u32>, out: &mut BTreeSet<Monomial>) {
        if i + 1 == w.len() {
            if d.is_multiple_of(w[i]) {
                cur[i] = (d / w[i]) as u32;
                out.insert(Monomial(cur.clone()));
                cur[i] = 0;
            }
            return;
        }
        for e in 0..=d / w[i] {
            cur[i] = e as u32;
            go(d - e * w[i], w, i + 1, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = BTreeSet::new();
    go(d, w.weights(), 0, &mut vec![0; w.len()], &mut out);
    MonomialSupport {
        degree: d,
        monomials: out,
    }
}

/// `(A^3)` of an anticanonically embedded weighted complete intersection:
/// `Π d_j / Π a_i`.
pub fn anticanonical_cube(record: &FamilyRecord) -> Result<Rational> {
    let w = &record.weights;
    let dsum: u64 = record.degrees.iter().sum();
    if w.sum() != dsum + 1 {
        return Err(Error::Validation {
            id: record.id,
            field: "weights",
            reason: format!(
                "{:?} record is not anticanonically embedded: sum of weights {} minus sum of degrees {} is not 1",
                record.kind,
                w.sum(),
                dsum
            ),
        });
    }
    let num: BigInt = record.degrees.iter().map(|&d| BigInt::from(d)).product();
    Ok(Rational::new(num, w.product()))
}

/// max lcm(a_j, a_k) over unordered pairs of distinct indices in `keep`.
pub fn max_pair_lcm(w: &WeightSystem, keep: &[usize]) -> Result<u64> {
    let mut idx: Vec<usize> = keep.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.len() < 2 {
        return Err(structural("max_pair_lcm needs at least two indices"));
    }
    if let Some(&bad) = idx.iter().find(|&&i| i >= w.len()) {
        return Err(structural(format!("index {bad} out of range for {w}")));
    }
    let mut best = 1;
    for (p, &j) in idx.iter().enumerate() {
        for &k in &idx[p + 1..] {
            best = best.max(lcm(w.get(j), w.get(k)));
        }
    }
    Ok(best)
}

/// Indices `0..n` without `dropped`.
pub fn all_but(n: usize, dropped: Option<usize>) -> Vec<usize> {
    (0..n).filter(|&i| Some(i) != dropped).collect()
}

/// `1 / Π a_i`, the top self-intersection of the hyperplane class.
pub fn hyperplane_volume(w: &WeightSystem) -> Rational {
    Rational::new(BigInt::one(), w.product())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(v: &[u64]) -> WeightSystem {
        WeightSystem::new(v.to_vec()).unwrap()
    }

    #[test]
    fn degree_of_monomials() {
        let w = ws(&[1, 1, 2, 3, 2]);
        assert_eq!(
            weighted_degree(&Monomial::new(vec![2, 0, 0, 0, 3]), &w).unwrap(),
            8
        );
        assert_eq!(
            weighted_degree(&Monomial::new(vec![0, 0, 1, 2, 0]), &w).unwrap(),
            8
        );
        assert_eq!(weighted_degree(&Monomial::one(5), &w).unwrap(), 0);
        assert!(weighted_degree(&Monomial::new(vec![1, 1]), &w).is_err());
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(monomials_of_degree(4, &ws(&[1, 1, 2])).len(), 9);
        let zero = monomials_of_degree(0, &ws(&[3, 5, 7]));
        assert_eq!(zero.iter().collect::<Vec<_>>(), vec![&Monomial::one(3)]);
        let names = ["x0", "x1", "y", "z", "w"];
        let two = monomials_of_degree(2, &ws(&[1, 1, 2, 3, 2]));
        let rendered: Vec<String> = two.iter().map(|m| m.render(&names)).collect();
        assert_eq!(rendered, ["x0^2", "x0 x1", "x1^2", "y", "w"]);
    }

    #[test]
    fn pair_lcm() {
        assert_eq!(
            max_pair_lcm(&ws(&[1, 1, 4, 5, 2]), &all_but(5, Some(2))).unwrap(),
            10
        );
        assert_eq!(
            max_pair_lcm(&ws(&[1, 1, 2, 3, 2]), &all_but(5, Some(2))).unwrap(),
            6
        );
        assert_eq!(max_pair_lcm(&ws(&[1, 1, 1]), &[0, 1, 2]).unwrap(), 1);
        assert!(max_pair_lcm(&ws(&[1, 1, 1]), &[0]).is_err());
    }

    #[test]
    fn render_and_parse() {
        let names = ["x", "y", "z", "t", "w"];
        let m = Monomial::parse("z^3 t", &names).unwrap();
        assert_eq!(m.exponents(), &[0, 0, 3, 1, 0]);
        assert_eq!(m.render(&names), "z^3 t");
        assert!(Monomial::parse("q^2", &names).is_err());
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(WeightSystem::new(vec![1, 0, 2]).is_err());
        assert!(WeightSystem::new(vec![1, 2]).is_err());
    }
}
