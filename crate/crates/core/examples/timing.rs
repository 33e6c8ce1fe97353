//! Build times over a range of sizes, written as CSV with a log-log fit.
//!
//! cargo run --release --example timing > times.csv

use std::io;

use spherehull::bench::{loglog_slope, mean_times, run_bench, write_csv};

fn main() -> io::Result<()> {
    let sizes: Vec<usize> = (1..=10).map(|k| k * 1000).collect();
    let records = run_bench(&sizes, 3, 42).expect("ball clouds always build");
    write_csv(&mut io::stdout().lock(), &records)?;
    for (n, t) in mean_times(&records) {
        eprintln!("n = {n:>5}: {:>8.3} ms", t / 1e6);
    }
    if let Some(slope) = loglog_slope(&records) {
        eprintln!("log-log slope {slope:.3}");
    }
    Ok(())
}
