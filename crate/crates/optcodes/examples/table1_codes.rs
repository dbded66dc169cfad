//! Expand the two bundled (13,512,3) codes from their orbit descriptions
//! and inspect their parameters.
//!
//!     cargo run --release --example table1_codes

use optcodes::symmetry::{expand_orbits, OrbitSpec, DEFAULT_CLOSURE_CAP};

fn data(name: &str) -> String {
    let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("bundled orbit file")
}

fn main() {
    for name in ["table1-first.orbit", "table1-second.orbit"] {
        let spec = OrbitSpec::parse(&data(name)).unwrap();
        let (group, code) = spec.expand(DEFAULT_CLOSURE_CAP).unwrap();
        println!("{name}");
        println!("  group order from {} generators: {}", spec.generators.len(), group.order());
        println!("  expanded code: {}", code.params().unwrap());
        println!("  perfect: {}", code.is_perfect());
        for rep in &spec.representatives {
            let orbit = expand_orbits(&group, std::slice::from_ref(rep)).unwrap();
            println!("  orbit of {rep}: {} words", orbit.size());
        }
        let shortened = code.shorten(1, false).unwrap();
        println!("  one shortening: {}", shortened.params().unwrap());
        println!();
    }
}
