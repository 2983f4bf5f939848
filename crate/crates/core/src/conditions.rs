//! Machine-readable conditions on the coefficients of a member of `G'_i`.
//!
//! `exists-wci(a,b,c)` says the member contains a curve that is a weighted
//! complete intersection of type `(a,b,c)`. For the catalog families this is
//! equivalent to the vanishing of one coefficient, recorded in
//! [`wci_monomial`]. `monomial-present(m)` and `monomial-absent(m)` name that
//! coefficient directly.

use serde::{Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{structural, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    ExistsWci([u64; 3]),
    NotExistsWci([u64; 3]),
    MonomialPresent(String),
    MonomialAbsent(String),
}

impl Condition {
    /// The monomial this condition constrains in family `id`, and whether the
    /// condition keeps it (`true`) or removes it (`false`).
    pub fn as_monomial(&self, id: u32) -> Result<(String, bool)> {
        Ok(match self {
            Condition::ExistsWci(t) => (wci_monomial(id, *t)?.to_string(), false),
            Condition::NotExistsWci(t) => (wci_monomial(id, *t)?.to_string(), true),
            Condition::MonomialPresent(m) => (m.clone(), true),
            Condition::MonomialAbsent(m) => (m.clone(), false),
        })
    }

    pub fn negation(&self) -> Condition {
        match self {
            Condition::ExistsWci(t) => Condition::NotExistsWci(*t),
            Condition::NotExistsWci(t) => Condition::ExistsWci(*t),
            Condition::MonomialPresent(m) => Condition::MonomialAbsent(m.clone()),
            Condition::MonomialAbsent(m) => Condition::MonomialPresent(m.clone()),
        }
    }
}

/// A curve of type `(a,b,c)` lies on the member exactly when this monomial of
/// the defining polynomial has zero coefficient.
pub fn wci_monomial(id: u32, wci: [u64; 3]) -> Result<&'static str> {
    match (id, wci) {
        (19, [1, 1, 2]) => Ok("y z^2"),
        (23, [1, 1, 4]) => Ok("y^2 z^2"),
        (50, [1, 3, 4]) => Ok("y^2 t^2"),
        _ => Err(Error::Dispatch {
            id,
            reason: format!("no known WCI curve of type {wci:?}"),
        }),
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |t: &[u64; 3]| format!("{},{},{}", t[0], t[1], t[2]);
        match self {
            Condition::ExistsWci(w) => write!(f, "exists-wci({})", t(w)),
            Condition::NotExistsWci(w) => write!(f, "not-exists-wci({})", t(w)),
            Condition::MonomialPresent(m) => write!(f, "monomial-present({m})"),
            Condition::MonomialAbsent(m) => write!(f, "monomial-absent({m})"),
        }
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Condition> {
        let s = s.trim();
        let (head, rest) = s
            .split_once('(')
            .ok_or_else(|| structural(format!("bad condition `{s}`")))?;
        let arg = rest
            .strip_suffix(')')
            .ok_or_else(|| structural(format!("bad condition `{s}`")))?
            .trim();
        let triple = || -> Result<[u64; 3]> {
            let v: Vec<u64> = arg
                .split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| structural(format!("bad weight triple in `{s}`")))?;
            v.try_into()
                .map_err(|_| structural(format!("expected three weights in `{s}`")))
        };
        match head {
            "exists-wci" => Ok(Condition::ExistsWci(triple()?)),
            "not-exists-wci" => Ok(Condition::NotExistsWci(triple()?)),
            "monomial-present" => Ok(Condition::MonomialPresent(arg.to_string())),
            "monomial-absent" => Ok(Condition::MonomialAbsent(arg.to_string())),
            _ => Err(structural(format!("unknown condition `{s}`"))),
        }
    }
}

impl Serialize for Condition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A set of conditions, rendered as `a & b`, or the empty string.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flags(BTreeSet<Condition>);

impl Flags {
    pub fn none() -> Flags {
        Flags::default()
    }

    pub fn single(c: Condition) -> Flags {
        Flags(BTreeSet::from([c]))
    }

    pub fn contains(&self, c: &Condition) -> bool {
        self.0.contains(c)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Condition> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, c: Condition) {
        self.0.insert(c);
    }
}

impl FromIterator<Condition> for Flags {
    fn from_iter<I: IntoIterator<Item = Condition>>(iter: I) -> Flags {
        Flags(iter.into_iter().collect())
    }
}

impl fmt::Display for Flags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" & "))
    }
}

impl FromStr for Flags {
    type Err = Error;

    fn from_str(s: &str) -> Result<Flags> {
        s.split('&')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(Condition::from_str)
            .collect()
    }
}

impl Serialize for Flags {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for text in [
            "exists-wci(1,1,2)",
            "not-exists-wci(1,1,4)",
            "monomial-present(y^2 z)",
            "monomial-absent(z^3 t)",
        ] {
            let c: Condition = text.parse().unwrap();
            assert_eq!(c.to_string(), text);
            assert_eq!(c.negation().negation(), c);
        }
        assert!("exists-wci(1,1)".parse::<Condition>().is_err());
        assert!("maybe(y)".parse::<Condition>().is_err());
    }

    #[test]
    fn flags_text() {
        assert_eq!(Flags::none().to_string(), "");
        assert_eq!("".parse::<Flags>().unwrap(), Flags::none());
        let f: Flags = "exists-wci(1,1,2)".parse().unwrap();
        assert!(f.contains(&Condition::ExistsWci([1, 1, 2])));
    }

    #[test]
    fn wci_conditions_name_a_monomial() {
        let (m, keep) = Condition::ExistsWci([1, 1, 4]).as_monomial(23).unwrap();
        assert_eq!((m.as_str(), keep), ("y^2 z^2", false));
        assert!(Condition::ExistsWci([1, 1, 4]).as_monomial(29).is_err());
    }
}
