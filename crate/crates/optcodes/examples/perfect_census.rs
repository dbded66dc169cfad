//! Enumerate all 1-perfect codes of lengths 3 and 7 and cross-check the
//! census against the orbit-stabilizer count.
//!
//!     cargo run --release --example perfect_census

use std::collections::BTreeSet;

use optcodes::code::{hamming7, Code};
use optcodes::lengthening::enumerate_perfect;
use optcodes::symmetry::{automorphism_group, canonical_form};

fn main() {
    let small = enumerate_perfect(3).unwrap();
    println!("length 3: {} perfect codes", small.len());
    for code in &small {
        println!("  {:?}", code.words());
    }

    let all = enumerate_perfect(7).unwrap();
    println!("length 7: {} perfect codes", all.len());

    let forms: BTreeSet<Code> = all
        .iter()
        .map(|c| canonical_form(c).unwrap().form)
        .collect();
    println!("equivalence classes: {}", forms.len());

    let aut = automorphism_group(&hamming7()).unwrap();
    println!(
        "orbit-stabilizer check: 7! * 2^7 / {} = {}",
        aut.group.order(),
        5040 * 128 / aut.group.order()
    );
}
