//! Markdown report for one family (default 19).

use fano_wci::report::analyze;
use fano_wci::Catalog;

fn main() -> fano_wci::Result<()> {
    let id = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(19);
    print!("{}", analyze(&Catalog::shipped(), id)?.to_markdown());
    Ok(())
}
