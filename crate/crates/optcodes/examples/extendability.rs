//! Extendability to perfect codes: shortened Hamming codes extend back,
//! while the two bundled (13,512,3) codes provably do not reach length 15,
//! and neither do their single shortenings at length 12.
//!
//!     cargo run --release --example extendability

use optcodes::code::hamming7;
use optcodes::lengthening::{count_extensions, is_shortened_perfect};
use optcodes::symmetry::{OrbitSpec, DEFAULT_CLOSURE_CAP};

fn main() {
    // Positive control: a doubly shortened Hamming(7) extends, in exactly
    // two ways under the fixed zero-suffix convention.
    let base = hamming7()
        .shorten(7, false)
        .unwrap()
        .shorten(6, false)
        .unwrap();
    println!("doubly shortened Hamming(7): {}", base.params().unwrap());
    println!(
        "  extends to length 7: {} (E = {})",
        is_shortened_perfect(&base, 2).unwrap(),
        count_extensions(&base, 2).unwrap()
    );

    for name in ["table1-first.orbit", "table1-second.orbit"] {
        let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
        let spec = OrbitSpec::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
        let (_, code) = spec.expand(DEFAULT_CLOSURE_CAP).unwrap();
        let started = std::time::Instant::now();
        let doubly = is_shortened_perfect(&code, 2).unwrap();
        println!(
            "{name}: doubly shortened perfect: {doubly} (decided in {:.1?})",
            started.elapsed()
        );

        let shortened = code.shorten(1, false).unwrap();
        println!(
            "  its (12,256,3) shortening is triply shortened perfect: {}",
            is_shortened_perfect(&shortened, 3).unwrap()
        );
        let doubly_shortened = shortened.shorten(1, false).unwrap();
        println!(
            "  one (11,128,3) double shortening extends to length 15: {}",
            is_shortened_perfect(&doubly_shortened, 4).unwrap()
        );
    }
}
