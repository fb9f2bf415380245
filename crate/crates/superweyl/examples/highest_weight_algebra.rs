//! The highest weight algebra acting on the top weight space, and the Weyl
//! functor applied to its regular module.

use superweyl::mapweyl::{
    build_global_weyl, build_truncated_algebra, equivariant_map_subalgebra, highest_weight_algebra, osp12_even_sl2,
    weyl_functor_apply, Folding,
};

fn main() -> superweyl::Result<()> {
    let sl2 = osp12_even_sl2()?;
    let folding = Folding::trivial(&sl2)?;
    let eq = equivariant_map_subalgebra(&folding, &build_truncated_algebra(3, 1)?)?;
    for lambda in 1..=2 {
        let w = build_global_weyl(&eq, &[lambda], 12)?;
        let algebra = highest_weight_algebra(&w)?;
        println!("sl2 (x) trunc3, lambda {lambda}: dim W {} dim W_lambda {}", w.dim(), w.highest_weight_space().len());
        print!("{algebra}");
        println!(
            "commutative {} associative {} unital {}",
            algebra.is_commutative(),
            algebra.is_associative(),
            algebra.is_unital()
        );
        let image = weyl_functor_apply(&w, &algebra, &algebra.regular_module())?;
        println!(
            "functor on the regular module: dim {}, same character {}\n",
            image.dim(),
            image.character == w.character()
        );
    }
    Ok(())
}
