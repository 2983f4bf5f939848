//! Singular points of the general member of each counterpart, with the
//! classification of its cAx point.

use fano_wci::hypersurface::XPrimeModel;
use fano_wci::singularities::{basket, cax_classify, PointType};
use fano_wci::Catalog;

fn main() -> fano_wci::Result<()> {
    for f in Catalog::shipped().families() {
        let model = XPrimeModel::new(&f.gprime)?;
        println!("No. {}: {}", f.id(), f.gprime);
        for p in basket(&model)? {
            match p.ty {
                PointType::Quotient(q) if p.count > 1 => {
                    println!("  {} = {} × {q}", p.locus, p.count)
                }
                PointType::Quotient(q) => println!("  {} = {q}", p.locus),
                PointType::Cax(_) => {
                    let c = cax_classify(&model, false, false);
                    println!(
                        "  {} = cAx/{} (square type: {})",
                        p.locus, c.modulus, c.square_type
                    );
                }
            }
        }
    }
    Ok(())
}
