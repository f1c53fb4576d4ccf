//! Searches pallet weight capacities that reproduce the most reference
//! lower-bound optima.
//!
//! ```text
//! cargo run --release -p atucp-core --example calibrate -- [LO HI STEP]
//! ```

use atucp_core::forge::{calibrate_capacities, matching_rows, DEFAULT_CAPACITIES};

fn main() {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (lo, hi, step) = match args[..] {
        [lo, hi, step] => (lo, hi, step),
        _ => (200, 3000, 25),
    };
    let starts = [
        DEFAULT_CAPACITIES,
        [1000, 1100, 1200, 1400, 1600, 1700],
        [1000, 1000, 1000, 1000, 1000, 1000],
    ];
    for start in starts {
        let r = calibrate_capacities(start, lo, hi, step, 100.0);
        println!(
            "start {start:?} -> {:?}: {} rows {:?}",
            r.capacities,
            r.rows.len(),
            r.rows
        );
    }
    let shipped = matching_rows(&DEFAULT_CAPACITIES, 100.0);
    println!(
        "shipped {DEFAULT_CAPACITIES:?}: {} rows {shipped:?}",
        shipped.len()
    );
}
