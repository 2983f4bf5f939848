//! Certificates for every quotient point of a family under each condition
//! branch. Pass a family id as the first argument (default 50).

use fano_wci::exclusion::{all_centers, dispatch};
use fano_wci::hypersurface::XPrimeModel;
use fano_wci::Catalog;

fn main() -> fano_wci::Result<()> {
    let id = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(50);
    let catalog = Catalog::shipped();
    let model = XPrimeModel::new(&catalog.family(id)?.gprime)?;
    for (center, branches) in all_centers(&model)? {
        for flags in branches {
            let (cert, verdict) = dispatch(&model, &center, &flags)?;
            println!("{center} [{flags}]");
            println!(
                "  {}",
                serde_json::to_string(&cert).expect("certificates serialize")
            );
            println!(
                "  {}",
                serde_json::to_string(&verdict).expect("verdicts serialize")
            );
        }
    }
    Ok(())
}
