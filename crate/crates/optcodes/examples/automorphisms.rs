//! Compute automorphism groups: the stated generators of the bundled codes
//! really do generate the full groups (orders 128 and 96), and the Hamming
//! code of length 7 has 2688 automorphisms.
//!
//!     cargo run --release --example automorphisms

use optcodes::code::hamming7;
use optcodes::symmetry::{automorphism_group, closure, OrbitSpec, DEFAULT_CLOSURE_CAP};

fn main() {
    let h = hamming7();
    let aut = automorphism_group(&h).unwrap();
    println!(
        "Hamming(7): |Aut| = {} (complete: {}); 7! 2^7 / |Aut| = {} distinct perfect codes",
        aut.group.order(),
        aut.complete,
        5040 * 128 / aut.group.order()
    );

    for name in ["table1-first.orbit", "table1-second.orbit"] {
        let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
        let spec = OrbitSpec::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
        let closed = closure(&spec.generators).unwrap();
        let (_, code) = spec.expand(DEFAULT_CLOSURE_CAP).unwrap();
        let started = std::time::Instant::now();
        let aut = automorphism_group(&code).unwrap();
        println!(
            "{name}: closure of listed generators = {}, full search = {} (complete: {}) in {:.1?}",
            closed.order(),
            aut.group.order(),
            aut.complete,
            started.elapsed()
        );
        for gen in aut.group.small_generating_set() {
            println!("  gen: {gen}");
        }
    }
}
