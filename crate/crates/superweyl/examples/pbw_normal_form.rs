//! Normal ordering in the universal enveloping algebra by two independent
//! strategies.

use superweyl::classical::build_osp;
use superweyl::mapweyl::{normal_form_by_rewriting, Envelope};

fn main() -> superweyl::Result<()> {
    let g = build_osp(1, 2)?;
    let labels: Vec<String> = (0..g.dim()).map(|i| g.label(i).to_string()).collect();
    println!("basis {labels:?}");
    let mut envelope = Envelope::new(g.clone(), 8);
    for word in [vec![4, 0], vec![3, 3], vec![4, 4, 0, 0], vec![4, 3, 2, 1, 0]] {
        let by_table = envelope.normal_form(&word)?;
        let by_rewriting = normal_form_by_rewriting(&g, &word, 8)?;
        println!("{word:?} -> {}   (strategies agree: {})", by_table.render(&labels), by_table == by_rewriting);
    }
    Ok(())
}
