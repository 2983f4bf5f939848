//! The link between each codimension-two family and its hypersurface
//! counterpart, with the untwisting tag of every point.

use fano_wci::links::{build_counterpart, counterpart_inverse, involution_inventory};
use fano_wci::Catalog;

fn main() -> fano_wci::Result<()> {
    for f in Catalog::shipped().families() {
        let link = build_counterpart(&f.g)?;
        let back = counterpart_inverse(&link.xprime_record())?;
        println!(
            "No. {:>2}: {} -> {} -> {}   b = {}, Z = Z_{} ⊂ {}",
            f.id(),
            f.g,
            link.xprime_record(),
            back,
            link.b,
            link.z_degree,
            link.z_weights
        );
        for t in involution_inventory(f)? {
            println!("    {:<5} {:<24} {}", t.point, t.condition, t.tag);
        }
    }
    Ok(())
}
