//! Switching graphs, the switch operation, and switching-class walks.
//!
//!     cargo run --release --example switching_walk

use optcodes::code::hamming7;
use optcodes::switching::{switching_class, switching_graph};

fn main() {
    let h = hamming7();
    println!("Hamming(7), coordinate 3:");
    let graph = switching_graph(&h, 3).unwrap();
    println!(
        "  {} edges at distance {}, {} components",
        graph.edges().len(),
        graph.min_distance(),
        graph.components().len()
    );
    for (idx, comp) in graph.components().iter().enumerate() {
        println!("  component {idx}: {} codewords", comp.len());
    }

    let switched = graph.switch_component(0).unwrap();
    println!(
        "  switching component 0 gives {} (perfect: {})",
        switched.params().unwrap(),
        switched.is_perfect()
    );

    // The walk modulo equivalence closes immediately: all length-7 perfect
    // codes are equivalent.
    let scan = switching_class(&h, 100).unwrap();
    println!(
        "  switching class: {} class(es), exhausted: {}",
        scan.classes.len(),
        scan.exhausted
    );

    // The same walk from a bundled (13,512,3) code blows straight through
    // any desk-sized budget; see the ignored test in tests/table1.rs for
    // the larger walk.
    println!();
    println!("Repetition code of length 3:");
    let rep = optcodes::code::Code::from_patterns(3, vec![0b000, 0b111]).unwrap();
    let scan = switching_class(&rep, 100).unwrap();
    println!(
        "  switching class: {} class(es), exhausted: {}",
        scan.classes.len(),
        scan.exhausted
    );
}
