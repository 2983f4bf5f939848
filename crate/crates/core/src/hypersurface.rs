//! The hypersurface counterpart `X'_d ⊂ P(a_0, a_1, a_2, a_3, b)` as a generic
//! monomial support in catalog coordinate order.
//!
//! Coordinates keep the catalog order with `w` (weight `b`) last. The roles
//! `x_0, ..., x_3` of the standard form are mapped onto catalog indices by
//! weight, first match first. The support is that of
//! `w^2 x_0 (x_0 + f) + w g + h` or `w^3 x_0^2 + w^2 x_0 f + w g + h` with
//! every allowed coefficient nonzero.

use crate::catalog::{FamilyRecord, Kind};
use crate::conditions::Flags;
use crate::error::{structural, Error, Result};
use crate::links::{link_data_of, LinkData};
use crate::rational::Rational;
use crate::wps::{
    anticanonical_cube, monomials_of_degree, Monomial, MonomialSupport, WeightSystem,
};

/// Index of `w` in catalog order.
pub const W: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPrimeModel {
    pub record: FamilyRecord,
    pub link: LinkData,
    /// `roles[r]` is the catalog index of the standard coordinate `x_r`.
    pub roles: [usize; 4],
    pub names: [&'static str; 5],
    pub support: MonomialSupport,
    pub a_cube: Rational,
    /// Vertex moved onto the surface by [`XPrimeModel::anchored_at`].
    pub anchor: Option<usize>,
}

fn role_map(weights: &[u64], std: &[u64; 6]) -> Result<[usize; 4]> {
    let mut used = [false; 4];
    let mut roles = [usize::MAX; 4];
    for r in 0..4 {
        let i = (0..4)
            .find(|&i| !used[i] && weights[i] == std[r])
            .ok_or_else(|| structural(format!("no coordinate of weight {} for x{r}", std[r])))?;
        used[i] = true;
        roles[r] = i;
    }
    Ok(roles)
}

impl XPrimeModel {
    pub fn new(gprime: &FamilyRecord) -> Result<XPrimeModel> {
        if gprime.kind != Kind::Hypersurface {
            return Err(structural(format!(
                "family {} record is not a hypersurface",
                gprime.id
            )));
        }
        let link = link_data_of(gprime)?;
        let w = gprime.weights.weights();
        let roles = role_map(w, &link.std_weights)?;
        let names = if w[0] == 1 && w[1] == 1 {
            ["x0", "x1", "y", "z", "w"]
        } else {
            ["x", "y", "z", "t", "w"]
        };
        let x0 = roles[0];
        let x1 = roles[1];
        let single = gprime.subfamily.is_single_prime();
        let full = monomials_of_degree(gprime.degree(), &gprime.weights);
        let w3x02 = Monomial::var(5, W, 3).mul(&Monomial::var(5, x0, 2));
        let support = full.filter(|m| match m.exp(W) {
            0 | 1 => true,
            2 => m.exp(x0) >= 1 && (!single || m.exp(x1) == 0),
            3 => !single && *m == w3x02,
            _ => false,
        });
        Ok(XPrimeModel {
            record: gprime.clone(),
            link,
            roles,
            names,
            support,
            a_cube: anticanonical_cube(gprime)?,
            anchor: None,
        })
    }

    pub fn id(&self) -> u32 {
        self.record.id
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.record.weights
    }

    pub fn weight(&self, i: usize) -> u64 {
        self.record.weights.get(i)
    }

    pub fn degree(&self) -> u64 {
        self.record.degree()
    }

    pub fn b(&self) -> u64 {
        self.link.b
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| structural(format!("family {} has no coordinate `{name}`", self.id())))
    }

    pub fn monomial(&self, text: &str) -> Result<Monomial> {
        Monomial::parse(text, &self.names)
    }

    pub fn render(&self, m: &Monomial) -> String {
        m.render(&self.names)
    }

    pub fn render_support(&self, s: &MonomialSupport) -> String {
        s.render(&self.names)
    }

    /// True when `x_i^k` is in the support for some `k`.
    pub fn has_pure_power(&self, i: usize) -> bool {
        self.support.iter().any(|m| m.variables() == [i])
    }

    /// The monomial `x_i^k x_j` (`j != i`) in the support, choosing the
    /// smallest weight `a_j` and then the smallest index.
    pub fn tangent_monomial(&self, i: usize) -> Option<(Monomial, usize)> {
        self.support
            .iter()
            .filter_map(|m| {
                let vars = m.variables();
                if vars.len() == 2 && vars.contains(&i) {
                    let j = if vars[0] == i { vars[1] } else { vars[0] };
                    (m.exp(j) == 1).then(|| (m.clone(), j))
                } else {
                    None
                }
            })
            .min_by_key(|(_, j)| (self.weight(*j), *j))
    }

    /// Moves a point of the open edge through `p_v` to the vertex `p_v`:
    /// with tangent monomial `x_v^k x_j`, every other multiple of `x_v^k` is
    /// absorbed into `x_j` by a coordinate change.
    pub fn anchored_at(&self, v: usize) -> Result<XPrimeModel> {
        let (t, j) = self.tangent_monomial(v).ok_or(Error::NotQuasismooth {
            id: self.id(),
            vertex: v,
        })?;
        let k = t.exp(v);
        let mut out = self.clone();
        out.support = self.support.filter(|m| m.exp(v) < k || m.exp(j) > 0);
        out.anchor = Some(v);
        Ok(out)
    }

    /// Applies each condition by keeping or removing its monomial.
    pub fn with_flags(&self, flags: &Flags) -> Result<XPrimeModel> {
        let mut out = self.clone();
        for c in flags.iter() {
            let (text, keep) = c.as_monomial(self.id())?;
            let m = self.monomial(&text)?;
            if !self.support.contains(&m) {
                return Err(Error::Dispatch {
                    id: self.id(),
                    reason: format!(
                        "condition `{c}` names `{text}`, which is not in the generic support"
                    ),
                });
            }
            if !keep {
                out.support = out.support.without(&m);
            }
        }
        Ok(out)
    }

    /// Restriction of the support to the coordinates in `coords`.
    pub fn restricted(&self, coords: &[usize]) -> MonomialSupport {
        self.support.restrict(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    fn model(id: u32) -> XPrimeModel {
        XPrimeModel::new(&Catalog::shipped().family(id).unwrap().gprime).unwrap()
    }

    #[test]
    fn roles_follow_weights() {
        let m = model(19);
        assert_eq!(m.roles, [2, 3, 0, 1]);
        assert_eq!(m.names, ["x0", "x1", "y", "z", "w"]);
        let m = model(50);
        assert_eq!(m.names, ["x", "y", "z", "t", "w"]);
    }

    #[test]
    fn standard_support_shape() {
        let m = model(19);
        let w2y2 = m.monomial("w^2 y^2").unwrap();
        assert!(m.support.contains(&w2y2));
        assert!(!m.support.contains(&m.monomial("w^2 x0^2").unwrap()));
        assert!(!m.support.contains(&m.monomial("w^4").unwrap()));
        let m = model(17);
        assert!(m.support.contains(&m.monomial("w^3 x0^2").unwrap()));
        assert!(!m.support.contains(&m.monomial("w^3 x1^2").unwrap()));
        assert!(!m.support.contains(&m.monomial("w^3 x0 x1").unwrap()));
    }

    #[test]
    fn tangent_prefers_light_coordinates() {
        let m = model(23);
        let z = m.index_of("z").unwrap();
        let (t, j) = m.tangent_monomial(z).unwrap();
        assert_eq!((m.render(&t), j), ("x0 z^3".to_string(), 0));
    }

    #[test]
    fn anchoring_absorbs_multiples() {
        let m = model(23);
        let y = m.index_of("y").unwrap();
        let a = m.anchored_at(y).unwrap();
        assert!(!a.support.contains(&m.monomial("y^5").unwrap()));
        assert!(a.support.contains(&m.monomial("w y^3").unwrap()));
    }
}
