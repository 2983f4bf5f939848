//! Intersection numbers on Kawamata blowups: `(B^3)` at every quotient point,
//! and the anticanonical cube after blowing up two points of family 19.

use fano_wci::hypersurface::XPrimeModel;
use fano_wci::numerics::{b_cubed, kawamata_numbers, triple, BlowupLattice};
use fano_wci::singularities::{basket, QuotientType};
use fano_wci::Catalog;

fn main() -> fano_wci::Result<()> {
    let catalog = Catalog::shipped();
    for f in catalog.families() {
        let model = XPrimeModel::new(&f.gprime)?;
        for p in basket(&model)? {
            if let Some(q) = p.quotient() {
                let (disc, e3) = kawamata_numbers(&q);
                println!(
                    "No. {:>2} {:<5} {q:<11} E^3 = {e3:<6} discrepancy {disc:<4} B^3 = {}",
                    f.id(),
                    p.locus.to_string(),
                    b_cubed(&model.a_cube, &q)
                );
            }
        }
    }

    let g19 = catalog.family(19)?;
    let mut lattice = BlowupLattice::new(3, g19.g_a_cube.clone());
    lattice.push_kawamata("E1", &QuotientType::new(2, 1)?);
    lattice.push_kawamata("E2", &QuotientType::new(4, 1)?);
    let k = lattice.anticanonical();
    println!(
        "(-K_W)^3 after blowing up 1/2(1,1,1) and 1/4(1,1,3) on {}: {}",
        g19.g,
        triple(&lattice, &k, &k, &k)?
    );
    Ok(())
}
