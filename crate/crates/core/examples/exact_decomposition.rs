//! Exact decompositions through Kazhdan–Lusztig polynomials: a transition
//! matrix, a product of irreducibles, and the comparison with candidates.

use multiseg::kl::{kl_polynomial, KlOracle, Permutation};
use multiseg::multiplicity::composition_candidates;
use multiseg::{Multisegment, SupportVector};

fn main() -> multiseg::Result<()> {
    let u: Permutation = "1324".parse()?;
    let v: Permutation = "3412".parse()?;
    println!("P_{{{u},{v}}} = {}", kl_polynomial(&u, &v)?);

    let oracle = KlOracle::default();
    let support = SupportVector::from_counts([(0, 1), (1, 2), (2, 1)]);
    let t = oracle.transition_matrix(&support)?;
    println!("\nm(L(n), λ(m)) on {support}:");
    for (m, row) in t.index().iter().zip(t.entries()) {
        println!("  {m:>24}  {row:?}");
    }

    let m1: Multisegment = "[0,2]+[1,3]".parse()?;
    let m2: Multisegment = "[1,2]".parse()?;
    let product = oracle.multiply_irreducibles(&m1, &m2)?;
    println!("\nL({m1}) × L({m2}) = {product}");
    let candidates: Vec<String> = composition_candidates(&m1, &m2, 2)?.iter().map(ToString::to_string).collect();
    println!("candidates: {}", candidates.join(", "));
    Ok(())
}
