//! Prints the volume and Siegel-Veech expansions for a few orders with
//! their wall-clock cost.
//!
//! ```text
//! cargo run --release -p strata-core --example expansions
//! ```

use std::time::Instant;

use strata_core::asymptotics::{sv_expansion, volume_expansion};
use strata_core::invariants::Normalization;

fn main() {
    for r in [2usize, 4, 6, 8] {
        let t = Instant::now();
        let v = volume_expansion(r, Normalization::Conjecture).expect("volume expansion");
        let s = sv_expansion(r).expect("sv expansion");
        println!("R = {r} ({:?})", t.elapsed());
        println!("  vol: {v}");
        println!("  sv:  {s}");
    }
}
