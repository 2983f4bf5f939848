//! Exact numerics for fourteen families of Fano 3-fold weighted complete
//! intersections of codimension two and their hypersurface counterparts.

pub mod catalog;
pub mod conditions;
pub mod error;
pub mod exclusion;
pub mod hypersurface;
pub mod links;
pub mod numerics;
pub mod rational;
pub mod report;
pub mod singularities;
pub mod wps;

pub use catalog::{Catalog, Family, FamilyRecord, Kind, Subfamily, Tag};
pub use error::{Error, Result};
pub use rational::Rational;
pub use wps::{Monomial, MonomialSupport, WeightSystem};
