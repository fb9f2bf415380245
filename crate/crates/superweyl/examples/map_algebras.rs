//! Truncated coefficient algebras with a cyclic action, map superalgebras
//! and their equivariant subalgebras.

use superweyl::classical::{build_osp, build_sl};
use superweyl::mapweyl::{build_truncated_algebra, equivariant_map_subalgebra, map_superalgebra, Folding};

fn main() -> superweyl::Result<()> {
    let a = build_truncated_algebra(3, 1)?;
    let g = build_sl(2, 1)?;
    let full = map_superalgebra(&g, &a)?;
    println!("{} (x) {}: dim {}, axioms {}", g.name(), a.describe(), full.dim(), full.check_axioms().passed());

    let twisted = build_truncated_algebra(2, 2)?;
    let g = build_osp(2, 2)?;
    let folding = Folding::from_permutation(&g, "flip")?;
    let eq = equivariant_map_subalgebra(&folding, &twisted)?;
    println!(
        "({} (x) {})^Gamma: dim {}, axioms {}",
        g.name(),
        twisted.describe(),
        eq.dim(),
        eq.algebra.check_axioms().passed()
    );
    for (label, generator) in eq.labels().iter().zip(&eq.generators) {
        println!("  {label:<10} {:?} weight {:?} degree {}", generator.kind, generator.weight, generator.degree);
    }
    Ok(())
}
