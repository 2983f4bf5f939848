//! Loads a catalog (the file named by `FANO_WCI_CATALOG`, or the shipped one)
//! and writes it back out in the on-disk format.

use fano_wci::catalog::parse_catalog;
use fano_wci::Catalog;

fn main() -> fano_wci::Result<()> {
    let catalog = Catalog::from_env()?;
    let text = catalog.to_json();
    assert_eq!(parse_catalog(&text)?, catalog);
    print!("{text}");
    Ok(())
}
