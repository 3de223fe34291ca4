//! Run the shipped corpus of printed curves in parallel and print a summary.
//!
//!     cargo run --release --example run_corpus -- 3

use torsion_forge::corpus::{parse_corpus, run_corpus, SHIPPED_CORPUS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let modp: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(2);
    let entries = parse_corpus(SHIPPED_CORPUS)?;
    let report = run_corpus(&entries, modp, 0)?;
    for row in &report.summary {
        let computed = row.computed.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
        let family = match row.family_match {
            Some(true) => "family ok",
            Some(false) => "family MISMATCH",
            None => "",
        };
        println!("{:<14} {:>4} {:>4}  {:<5} {family}", row.name, row.claimed, computed, row.status);
    }
    println!("all pass: {}", report.pass);
    Ok(())
}
