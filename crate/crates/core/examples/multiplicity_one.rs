//! The multiplicity recursion and the candidate constituents of a product
//! of two ladders.

use multiseg::multiplicity::{composition_candidates, mult_in_jacquet, sigma_tensor, DEFAULT_WIDTH_CAP};
use multiseg::Multisegment;

fn main() -> multiseg::Result<()> {
    let m1: Multisegment = "[0,2]+[1,3]".parse()?;
    let m2: Multisegment = "[1,1]+[2,4]".parse()?;
    let candidates = composition_candidates(&m1, &m2, DEFAULT_WIDTH_CAP)?;
    println!("candidates for L({m1}) × L({m2}):");
    for n in &candidates {
        let factors: Vec<String> = sigma_tensor(n).factors.iter().map(|f| format!("L({f})")).collect();
        println!("  {n}   σ⊗ = {}   m = {}", factors.join(" ⊗ "), mult_in_jacquet(n, &m1, &m2)?);
    }
    Ok(())
}
