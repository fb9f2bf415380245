//! The Garland series and the power identities in U(sl2 (x) A).

use superweyl::mapweyl::{build_truncated_algebra, check_garland, garland_series, osp12_even_sl2, GarlandSetting};

fn main() -> superweyl::Result<()> {
    let sl2 = osp12_even_sl2()?;
    let mut setting = GarlandSetting::new(&sl2, &build_truncated_algebra(4, 1)?, 8)?;
    let labels = setting.envelope.labels();
    for k in 0..=3 {
        println!("p_{k}(t) = {}", garland_series(&mut setting, "t", k)?.render(&labels));
    }
    for a in ["1", "t"] {
        for r in 1..=3 {
            print!("{}", check_garland(&mut setting, a, r, true)?);
        }
    }
    println!("without divided powers:");
    print!("{}", check_garland(&mut setting, "1", 1, false)?);
    Ok(())
}
