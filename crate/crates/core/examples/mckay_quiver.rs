//! McKay quivers with potential for diagonal cyclic groups and for S₃ ⊂ SL₃,
//! compared with Molien and isotypic series.
//!
//! Run with `cargo run --release --example mckay_quiver`.

use ncpot::mckay::{mckay_check, s3_signed_permutations, GroupData};
use ncpot::Result;

fn main() -> Result<()> {
    let groups = [
        ("trivial", GroupData::trivial()),
        ("Z/3 (1,1,1)", GroupData::cyclic(3, [1, 1, 1])?),
        ("Z/7 (1,2,4)", GroupData::cyclic(7, [1, 2, 4])?),
        ("S3", s3_signed_permutations()),
    ];
    for (name, g) in groups {
        let r = mckay_check(&g, 9)?;
        println!(
            "{name}: {} vertices, {} edges, {} triangles; Molien {} ; pass {}",
            r.vertices,
            r.edges,
            r.triangles,
            r.molien.join(" "),
            r.pass()
        );
    }
    Ok(())
}
