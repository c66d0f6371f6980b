//! Scans the interleaved two-ladder configurations on a small window and
//! reports the verdict of each.

use multiseg::kl::KlOracle;
use multiseg::multiplicity::{conjecture_scan, Verdict};

fn main() -> multiseg::Result<()> {
    let oracle = KlOracle::default();
    let mut holds = 0;
    for a1 in 0..=5 {
        for a2 in a1 + 1..=5 {
            for b1 in a2 + 1..=5 {
                for b2 in b1 + 1..=5 {
                    let r = conjecture_scan(&[a1, a2], &[b1, b2], Some(&oracle))?;
                    println!("a=({a1},{a2}) b=({b1},{b2}): π={} π'={} → {:?}", r.pi, r.pi_prime, r.verdict);
                    holds += matches!(r.verdict, Verdict::Holds) as usize;
                }
            }
        }
    }
    println!("{holds} instances hold");

    let r = conjecture_scan(&[0, 1, 2, 3], &[4, 5, 6, 7], Some(&oracle))?;
    println!("\nk = 2: {} candidates, verdict {:?}", r.candidates.len(), r.verdict);
    Ok(())
}
