//! Width of a multisegment three ways, and a minimal ladder cover.

use multiseg::width::{longest_nested_chain, min_ladder_cover, width_bruteforce, width_chain, BRUTEFORCE_BOUND};
use multiseg::Multisegment;

fn main() -> multiseg::Result<()> {
    for text in ["[0,1]+[0,1]", "[0,3]+[1,2]+[1,4]+[2,2]", "[0,0]+[1,1]+[2,2]", "[0,5]+[1,4]+[2,3]+[3,6]"] {
        let m: Multisegment = text.parse()?;
        let chain = longest_nested_chain(&m);
        let cover = min_ladder_cover(&m);
        println!("{m}");
        println!("  width (chain)       = {}", width_chain(&m));
        println!("  width (brute force) = {}", width_bruteforce(&m, BRUTEFORCE_BOUND)?);
        println!("  nested chain        = {}", Multisegment::new(chain));
        for (i, ladder) in cover.parts.iter().enumerate() {
            println!("  ladder {i}: {ladder}");
        }
    }
    Ok(())
}
