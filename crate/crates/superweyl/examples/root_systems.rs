//! Roots, a distinguished base, its Cartan matrix and condition C.

use superweyl::classical::{build_osp, build_sl, distinguished_simple_roots, triangular_decomposition};
use superweyl::equivariant::{check_condition_c, root_data};

fn main() -> superweyl::Result<()> {
    for g in [build_osp(1, 2)?, build_osp(3, 2)?, build_sl(3, 2)?] {
        let (rs, _) = root_data(&g)?;
        let base = distinguished_simple_roots(&g, &rs)?;
        let td = triangular_decomposition(&g, &rs, &base)?;
        println!("{}: {} roots, rank {}", g.name(), rs.len(), td.rank());
        println!("{}", td.cartan_matrix_text());
        let mut positive: Vec<usize> = (0..rs.len()).filter(|&i| base.positive[i]).collect();
        positive.sort_by_key(|&i| base.height(i));
        for i in positive {
            println!("  {:?} {}", base.coefficients[i], rs.roots[i].parity);
        }
        let c = check_condition_c(&g, &rs, &base)?;
        println!("lowest root {:?} ({}), condition C {}\n", c.coefficients, c.parity, c.holds);
    }
    Ok(())
}
