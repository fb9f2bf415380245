//! Constructing sl(m|n) and osp(m|2n), checking the axioms exactly and
//! round-tripping the text format.

use superweyl::classical::{build_osp, build_sl};
use superweyl::liesuper::SuperAlgebra;

fn main() -> superweyl::Result<()> {
    for g in [build_sl(2, 1)?, build_sl(3, 2)?, build_osp(1, 2)?, build_osp(2, 2)?, build_osp(3, 2)?] {
        let (even, odd) = g.super_dim();
        let axioms = g.check_axioms();
        let reread = SuperAlgebra::from_text(&g.to_text())?;
        println!(
            "{:<9} dim {:>2} ({even}|{odd})  violations {}  round trip {}",
            g.name(),
            g.dim(),
            axioms.violations.len(),
            reread.same_structure(&g)
        );
    }
    let g = build_osp(1, 2)?;
    let (x, y) = (g.basis_vector(3), g.basis_vector(4));
    println!("[{}, {}] = {:?}", g.label(3), g.label(4), g.bracket(&x, &y)?);
    Ok(())
}
