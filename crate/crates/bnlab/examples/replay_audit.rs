//! Prints which rule settles each ordered pair of conjectured maximal loci
//! for genus 3..23, followed by the H-preserving refinement of the full
//! sublattice scan.
//!
//! Run with `cargo run --release -p bnlab --example replay_audit`.

use bnlab::{
    conjectured_maximal_loci, distinguish_pair, scan_l2, DistinguishCaps, Strength, Verdict,
};

fn main() {
    for g in 3i64..=23 {
        let loci = conjectured_maximal_loci(g);
        for &a in &loci {
            for &b in &loci {
                if a == b {
                    continue;
                }
                let t = distinguish_pair(g, a, b, DistinguishCaps::default()).unwrap();
                let rule = match t.verdict {
                    Verdict::NonContainmentShown => t
                        .steps
                        .last()
                        .map(|s| s.rule.clone())
                        .unwrap_or_default(),
                    Verdict::Inconclusive => "(open)".to_string(),
                };
                println!(
                    "g={g:2}  ({},{:2}) not in ({},{:2})   {:20} {rule}",
                    a.r,
                    a.d,
                    b.r,
                    b.d,
                    format!("{}", t.verdict),
                );
            }
        }
    }
    let exact = scan_l2(2, 199, Strength::ExactH);
    println!("\nH-preserving sublattice scan, genus 2..199: {} failures", exact.len());
    for f in exact {
        println!(
            "  g={} host=({},{}): {:?}",
            f.g,
            f.host.r,
            f.host.d,
            f.survivors.iter().map(|s| (s.s, s.e)).collect::<Vec<_>>()
        );
    }
}
