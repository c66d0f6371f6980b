//! Jacquet modules of a ladder and the geometric lemma for a product.

use multiseg::jacquet::{geometric_lemma_cut, j_upper_product, jacquet_ladder};
use multiseg::width::min_ladder_cover;
use multiseg::Multisegment;

fn main() -> multiseg::Result<()> {
    let m: Multisegment = "[0,2]+[1,3]".parse()?;
    for d in 0..=m.degree() {
        for t in jacquet_ladder(&m, d)? {
            println!("r_{d}(L({m})) ∋ {t}");
        }
    }

    let (m1, m2): (Multisegment, Multisegment) = ("[0,1]".parse()?, "[1,2]".parse()?);
    println!("\nrestriction of L({m1}) × L({m2}) at degree 2:");
    for (t1, t2) in geometric_lemma_cut(&m1, &m2, 2)? {
        println!("  ({t1}) × ({t2})");
    }

    let x: Multisegment = "[0,3]+[1,2]+[1,1]+[2,4]".parse()?;
    let cover = min_ladder_cover(&x);
    println!("\n{x}: cover of {} ladders, j = {}", cover.len(), j_upper_product(&cover.parts)?);
    Ok(())
}
