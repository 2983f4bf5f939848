//! Recomputes every golden field of the shipped catalog, then of a copy with
//! one altered value.

use fano_wci::catalog::parse_catalog;
use fano_wci::report::verify_tables;
use fano_wci::Catalog;

fn main() -> fano_wci::Result<()> {
    let catalog = Catalog::shipped();
    println!(
        "shipped catalog: {} mismatches",
        verify_tables(&catalog).len()
    );
    let altered = catalog
        .to_json()
        .replacen("\"a_cube\":\"2/3\"", "\"a_cube\":\"1/2\"", 1);
    for m in verify_tables(&parse_catalog(&altered)?) {
        println!("altered catalog: {m}");
    }
    Ok(())
}
