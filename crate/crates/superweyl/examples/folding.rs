//! Folding by the diagram flip: eigenspaces, the fixed subalgebra, its type
//! and the structural checks, followed by the folding table.

use superweyl::classical::{build_osp, build_sl};
use superweyl::cli::emit_folding_table;
use superweyl::equivariant::{identify_type, structural_checks};
use superweyl::mapweyl::Folding;

fn main() -> superweyl::Result<()> {
    for g in [build_sl(3, 2)?, build_osp(2, 2)?] {
        let folding = Folding::from_permutation(&g, "flip")?;
        let fixed = &folding.fixed.algebra;
        println!(
            "{} -> {} (order {}, eigenspaces {:?}, fixed dim {})",
            g.name(),
            identify_type(fixed)?.label_or_unknown(),
            folding.order(),
            folding.decomposition.dims(),
            fixed.dim()
        );
        print!("{}", structural_checks(&g, &folding.automorphism, &folding.decomposition, &folding.fixed)?);
    }
    println!();
    print!("{}", emit_folding_table()?);
    Ok(())
}
