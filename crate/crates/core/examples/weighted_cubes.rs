//! Anticanonical degrees and monomial counts for every family.

use fano_wci::wps::{anticanonical_cube, monomials_of_degree};
use fano_wci::Catalog;

fn main() -> fano_wci::Result<()> {
    for f in Catalog::shipped().families() {
        let gp = &f.gprime;
        let n = monomials_of_degree(gp.degree(), &gp.weights).len();
        println!(
            "{:>2}  {}  A^3 = {:<6} {}  A^3 = {:<5} monomials of degree {}: {n}",
            f.id(),
            f.g,
            anticanonical_cube(&f.g)?,
            gp,
            anticanonical_cube(gp)?,
            gp.degree()
        );
    }
    Ok(())
}
