//! Loop vectors in terms of the highest weight algebra, the finite
//! generation filtration and the universal property.

use superweyl::liesuper::Parity;
use superweyl::mapweyl::{
    build_global_weyl, build_truncated_algebra, check_first_loop_identity, check_universal_surjection,
    equivariant_map_subalgebra, filtration_stabilization, highest_weight_algebra, identity_candidate, osp12_even_sl2,
    random_quotient, reduce_loop_vector, Folding,
};

fn main() -> superweyl::Result<()> {
    let sl2 = osp12_even_sl2()?;
    let folding = Folding::trivial(&sl2)?;
    let eq = equivariant_map_subalgebra(&folding, &build_truncated_algebra(3, 1)?)?;
    let w = build_global_weyl(&eq, &[2], 12)?;
    let algebra = highest_weight_algebra(&w)?;
    let roots = &w.folding;
    for root in
        (0..roots.roots.len()).filter(|&i| roots.base.positive[i] && roots.roots.roots[i].parity == Parity::Even)
    {
        for power in 0..=3 {
            let reduction = reduce_loop_vector(&eq, &w, &algebra, root, power)?;
            println!("(f (x) t^{power}) w: reduced {} with {:?}", reduction.succeeded(), reduction.coefficients);
        }
    }
    let filtration = filtration_stabilization(&w, 12)?;
    println!("filtration {:?}, stable from {}, dim W {}", filtration.dims, filtration.stable_from, w.dim());

    let w1 = build_global_weyl(&eq, &[1], 12)?;
    let root = w1.folding.even_simple_roots()[0];
    println!("lambda 1: (f (x) t) w = (f)(h (x) t) w is {}", check_first_loop_identity(&eq, &w1, root)?);

    println!("W onto itself: {:?}", check_universal_surjection(&w, &identity_candidate(&w))?);
    for seed in 0..3 {
        let quotient = random_quotient(&w, seed, 50)?;
        println!("W onto a quotient of dim {}: {:?}", quotient.dim, check_universal_surjection(&w, &quotient)?);
    }
    Ok(())
}
