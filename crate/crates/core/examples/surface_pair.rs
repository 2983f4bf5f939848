//! The curve `Γ = (x_0 = x_1 = 0)` used by the surface-pair argument, for
//! every family that uses it.

use fano_wci::exclusion::{gamma_polynomial, is_irreducible_support};
use fano_wci::hypersurface::XPrimeModel;
use fano_wci::Catalog;

fn main() -> fano_wci::Result<()> {
    for f in Catalog::shipped().families() {
        let model = XPrimeModel::new(&f.gprime)?;
        if let Ok(s) = gamma_polynomial(&model) {
            println!(
                "No. {:>2}: {}   irreducible: {}",
                f.id(),
                model.render_support(&s),
                is_irreducible_support(&s)
            );
        }
    }
    Ok(())
}
