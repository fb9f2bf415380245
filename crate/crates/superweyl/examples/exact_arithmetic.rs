//! Cyclotomic scalars and exact sparse linear algebra.

use superweyl::exactcore::{kernel, rank, ratio, solve, CycScalar, SparseMatrix, SparseVec};

fn main() -> superweyl::Result<()> {
    let zeta = CycScalar::zeta(3);
    let one = CycScalar::one(3);
    let sum = &(&one + &zeta) + &(&zeta * &zeta);
    println!("1 + z + z^2 in Q(z_3) = {}", sum.to_compact_string());
    let half = CycScalar::from_rational(3, ratio(1, 2));
    println!("(1/2 + z)^-1 = {}", (&half + &zeta).inv()?.to_compact_string());

    let m = SparseMatrix::from_integers(1, &[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]])?;
    println!("rank {}", rank(&m)?);
    for v in kernel(&m)? {
        println!("kernel vector {:?}", v.to_dense(3, 1).iter().map(CycScalar::to_compact_string).collect::<Vec<_>>());
    }
    let rhs = SparseVec::from_dense(&[CycScalar::from_int(1, 4), CycScalar::from_int(1, 8), CycScalar::from_int(1, 2)]);
    match solve(&m, &rhs)? {
        Some(x) => {
            println!("solution {:?}", x.to_dense(3, 1).iter().map(CycScalar::to_compact_string).collect::<Vec<_>>())
        }
        None => println!("no solution"),
    }
    Ok(())
}
