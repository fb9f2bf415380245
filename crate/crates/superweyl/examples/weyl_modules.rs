//! Global Weyl modules over equivariant map superalgebras, compared with
//! the modules over the fixed algebra alone.

use superweyl::classical::{build_osp, build_sl};
use superweyl::mapweyl::{build_global_weyl, build_truncated_algebra, build_vbar, equivariant_map_subalgebra, Folding};

fn main() -> superweyl::Result<()> {
    let osp12 = build_osp(1, 2)?;
    let folding = Folding::trivial(&osp12)?;
    let eq = equivariant_map_subalgebra(&folding, &build_truncated_algebra(2, 1)?)?;
    for lambda in 0..=2 {
        let w = build_global_weyl(&eq, &[lambda], 12)?;
        println!("osp(1|2) (x) trunc2, lambda {lambda}: dim {}", w.dim());
        print!("{}", w.character_text());
        print!("{}", w.certificate);
    }

    let osp32 = build_osp(3, 2)?;
    let folding = Folding::trivial(&osp32)?;
    let scalars = equivariant_map_subalgebra(&folding, &build_truncated_algebra(1, 1)?)?;
    for lambda in [[-1, 0], [-2, 2], [-3, 0]] {
        let w = build_global_weyl(&scalars, &lambda, 20)?;
        let vbar = build_vbar(&folding, &lambda, 20)?;
        println!(
            "osp(3|2), lambda {lambda:?}: dim W {} dim Vbar {} characters equal {}",
            w.dim(),
            vbar.dim(),
            w.character() == vbar.character()
        );
    }

    let sl21 = build_sl(2, 1)?;
    let folding = Folding::trivial(&sl21)?;
    let eq = equivariant_map_subalgebra(&folding, &build_truncated_algebra(2, 1)?)?;
    let w = build_global_weyl(&eq, &[1, 0], 6)?;
    println!(
        "sl(2|1) (x) trunc2, lambda [1, 0], cap 6: converged {} with {} vectors",
        w.certificate.converged,
        w.dim()
    );
    Ok(())
}
